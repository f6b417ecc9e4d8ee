#include <cstdio>

int main() {
  std::puts("hyperkube: subcommands not wired yet");
  return 2;
}
