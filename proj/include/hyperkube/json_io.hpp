#pragma once

// JSON serialization for the three diagram kinds. Readers validate; the
// diagram kind of a file is inferred from which fields are present.

#include <fstream>
#include <string>
#include <variant>

#include "json.hpp"

#include "hyperkube/cube.hpp"
#include "hyperkube/errors.hpp"
#include "hyperkube/grid.hpp"
#include "hyperkube/hmoves.hpp"
#include "hyperkube/hypercube.hpp"

namespace hyperkube {

using nlohmann::json;

inline json grid_to_json(const GridDiagram& g) {
  return json{{"size", g.size},
              {"xCol", g.xCol},
              {"yCol", g.yCol},
              {"axisOrder", to_string(g.axisOrder)}};
}

inline GridDiagram grid_from_json(const json& j) {
  try {
    AxisOrder order = AxisOrder::Standard;
    if (j.contains("axisOrder")) {
      std::string s = j.at("axisOrder").get<std::string>();
      if (s == "xy")
        order = AxisOrder::Standard;
      else if (s == "yx")
        order = AxisOrder::Reversed;
      else
        throw Error(Errc::ParseError, "axisOrder must be \"xy\" or \"yx\"");
    }
    return validate_grid(j.at("size").get<int>(), j.at("xCol").get<Perm>(),
                         j.at("yCol").get<Perm>(), order);
  } catch (const json::exception& e) {
    throw Error(Errc::ParseError, std::string("bad grid JSON: ") + e.what());
  }
}

inline json cube_to_json(const CubeDiagram& c) {
  return json{{"size", c.size}, {"X", c.X}, {"Y", c.Y}, {"Z", c.Z}};
}

inline CubeDiagram cube_from_json(const json& j) {
  try {
    return validate_cube_markings(j.at("size").get<int>(),
                                  j.at("X").get<std::vector<Cell3>>(),
                                  j.at("Y").get<std::vector<Cell3>>(),
                                  j.at("Z").get<std::vector<Cell3>>());
  } catch (const json::exception& e) {
    throw Error(Errc::ParseError, std::string("bad cube JSON: ") + e.what());
  }
}

inline json hyper_to_json(const HypercubeDiagram& h) {
  return json{
      {"size", h.size}, {"W", h.W}, {"X", h.X}, {"Y", h.Y}, {"Z", h.Z}};
}

inline HypercubeDiagram hyper_from_json(const json& j) {
  try {
    return validate_hypercube(j.at("size").get<int>(),
                              j.at("W").get<std::vector<Cell4>>(),
                              j.at("X").get<std::vector<Cell4>>(),
                              j.at("Y").get<std::vector<Cell4>>(),
                              j.at("Z").get<std::vector<Cell4>>());
  } catch (const json::exception& e) {
    throw Error(Errc::ParseError,
                std::string("bad hypercube JSON: ") + e.what());
  }
}

/** The unvalidated marking lists of a hypercube file (for repair work). */
inline HypercubeDiagram raw_hyper_from_json(const json& j) {
  try {
    HypercubeDiagram h;
    h.size = j.at("size").get<int>();
    h.W = j.at("W").get<std::vector<Cell4>>();
    h.X = j.at("X").get<std::vector<Cell4>>();
    h.Y = j.at("Y").get<std::vector<Cell4>>();
    h.Z = j.at("Z").get<std::vector<Cell4>>();
    return h;
  } catch (const json::exception& e) {
    throw Error(Errc::ParseError,
                std::string("bad hypercube JSON: ") + e.what());
  }
}

inline json move_to_json(const Move& m) {
  switch (m.kind) {
    case MoveKind::Stabilize:
      return json{{"kind", "stabilize"},
                  {"family", std::string(1, m.family)},
                  {"index", m.index}};
    case MoveKind::Destabilize:
      return json{{"kind", "destabilize"}, {"index", m.index}};
    case MoveKind::Commute:
      return json{{"kind", "commute"},
                  {"axis", std::string(1, m.axis)},
                  {"level", m.level}};
    case MoveKind::Swap: return json{{"kind", "swap"}};
    case MoveKind::ComponentSwap:
      return json{{"kind", "component-swap"}, {"split", m.split}};
  }
  throw Error(Errc::ParseError, "unknown move kind");
}

inline Move move_from_json(const json& j) {
  try {
    const std::string kind = j.at("kind").get<std::string>();
    Move m;
    if (kind == "stabilize") {
      m.kind = MoveKind::Stabilize;
      const std::string fam = j.value("family", "w");
      if (fam != "w" && fam != "y")
        throw Error(Errc::ParseError, "stabilize family must be w or y");
      m.family = fam[0];
      m.index = j.at("index").get<int>();
    } else if (kind == "destabilize") {
      m.kind = MoveKind::Destabilize;
      m.index = j.at("index").get<int>();
    } else if (kind == "commute") {
      m.kind = MoveKind::Commute;
      const std::string axis = j.at("axis").get<std::string>();
      if (axis.size() != 1 ||
          std::string("wxyz").find(axis[0]) == std::string::npos)
        throw Error(Errc::ParseError, "commute axis must be w, x, y, or z");
      m.axis = axis[0];
      m.level = j.at("level").get<int>();
    } else if (kind == "swap") {
      m.kind = MoveKind::Swap;
    } else if (kind == "component-swap") {
      m.kind = MoveKind::ComponentSwap;
      m.split = j.at("split").get<int>();
    } else {
      throw Error(Errc::ParseError, "unknown move kind \"" + kind + "\"");
    }
    return m;
  } catch (const json::exception& e) {
    throw Error(Errc::ParseError, std::string("bad move JSON: ") + e.what());
  }
}

using AnyDiagram = std::variant<GridDiagram, CubeDiagram, HypercubeDiagram>;

/** Parses whichever diagram kind the fields announce. */
inline AnyDiagram diagram_from_json(const json& j) {
  if (j.contains("W")) return hyper_from_json(j);
  if (j.contains("Z")) return cube_from_json(j);
  if (j.contains("xCol")) return grid_from_json(j);
  throw Error(Errc::ParseError,
              "object is not a grid, cube, or hypercube diagram");
}

inline json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::ParseError, "cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw Error(Errc::ParseError, path + ": " + e.what());
  }
}

inline void save_json_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw Error(Errc::ParseError, "cannot write " + path);
  out << j.dump(2) << '\n';
}

}  // namespace hyperkube
