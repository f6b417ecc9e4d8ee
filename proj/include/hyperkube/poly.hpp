#pragma once

// Multivariable Laurent polynomials with integer coefficients and
// half-integer exponents, stored exactly by doubling every exponent.  Used
// for Poincaré polynomials of graded homology tables and for Euler
// characteristics / Alexander polynomials.

#include <cstdint>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "hyperkube/errors.hpp"

namespace hyperkube {

/**
 * Finitely supported map from exponent vectors to integer coefficients.
 * Exponents are doubled: the vector {1, -2} in a two-variable polynomial
 * stands for t₁^(1/2)·t₂^(-1).  All arithmetic is exact.
 */
class LaurentPoly {
 public:
  using Exponents = std::vector<int>;  // doubled exponents, length = arity

  LaurentPoly() = default;
  explicit LaurentPoly(int arity) : arity_(arity) {}

  static LaurentPoly constant(int arity, std::int64_t c) {
    LaurentPoly p(arity);
    if (c != 0) p.terms_[Exponents(static_cast<std::size_t>(arity), 0)] = c;
    return p;
  }

  static LaurentPoly monomial(Exponents exps, std::int64_t c) {
    LaurentPoly p(static_cast<int>(exps.size()));
    if (c != 0) p.terms_[std::move(exps)] = c;
    return p;
  }

  int arity() const { return arity_; }
  bool zero() const { return terms_.empty(); }
  const std::map<Exponents, std::int64_t>& terms() const { return terms_; }

  std::int64_t coefficient(const Exponents& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? 0 : it->second;
  }

  void add(const Exponents& e, std::int64_t c) {
    checkArity(e);
    auto it = terms_.find(e);
    if (it == terms_.end()) {
      if (c != 0) terms_[e] = c;
    } else if ((it->second += c) == 0) {
      terms_.erase(it);
    }
  }

  LaurentPoly& operator+=(const LaurentPoly& o) {
    for (const auto& [e, c] : o.terms_) add(e, c);
    return *this;
  }
  LaurentPoly& operator-=(const LaurentPoly& o) {
    for (const auto& [e, c] : o.terms_) add(e, -c);
    return *this;
  }
  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) {
    return a += b;
  }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) {
    return a -= b;
  }
  friend LaurentPoly operator-(const LaurentPoly& a) {
    LaurentPoly out(a.arity_);
    for (const auto& [e, c] : a.terms_) out.terms_[e] = -c;
    return out;
  }

  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    LaurentPoly out(a.arity_);
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) {
        Exponents e = ea;
        for (std::size_t i = 0; i < e.size(); ++i) e[i] += eb[i];
        out.add(e, ca * cb);
      }
    return out;
  }
  LaurentPoly& operator*=(const LaurentPoly& o) { return *this = *this * o; }

  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
    return a.arity_ == b.arity_ && a.terms_ == b.terms_;
  }

  /** The substitution sending every variable to its inverse. */
  LaurentPoly inverted() const {
    LaurentPoly out(arity_);
    for (const auto& [e, c] : terms_) {
      Exponents flipped = e;
      for (int& v : flipped) v = -v;
      out.terms_[std::move(flipped)] = c;
    }
    return out;
  }

  LaurentPoly pow(int k) const {
    LaurentPoly out = constant(arity_, 1);
    for (int i = 0; i < k; ++i) out *= *this;
    return out;
  }

  /**
   * Exact division: returns q with *this == q · d.  Throws InexactDivision
   * when no such Laurent polynomial exists (division by zero included).
   */
  LaurentPoly dividedBy(const LaurentPoly& d) const {
    if (d.zero())
      throw Error(Errc::InexactDivision, "division by the zero polynomial");
    if (zero()) return LaurentPoly(arity_);
    // When *this == q · d, the per-coordinate exponent range of q is forced:
    // extreme coordinate slices multiply without vanishing, so range(q) =
    // range(*this) - range(d).  A step outside that box proves the division
    // inexact, and steps inside it terminate because the remainder's leading
    // exponent strictly decreases through a finite set.
    auto box = [](const LaurentPoly& p) {
      Exponents lo = p.terms_.begin()->first, hi = lo;
      for (const auto& [e, c] : p.terms_)
        for (std::size_t i = 0; i < e.size(); ++i) {
          lo[i] = std::min(lo[i], e[i]);
          hi[i] = std::max(hi[i], e[i]);
        }
      return std::pair{lo, hi};
    };
    auto [numLo, numHi] = box(*this);
    auto [denLo, denHi] = box(d);
    LaurentPoly quotient(arity_);
    LaurentPoly rem = *this;
    // Largest exponent vector (the map is lexicographically sorted) is a true
    // leading term: leading terms multiply, so exact quotients peel greedily.
    const auto& lead = *d.terms_.rbegin();
    while (!rem.zero()) {
      const auto& top = *rem.terms_.rbegin();
      if (top.second % lead.second != 0)
        throw Error(Errc::InexactDivision,
                    "leading coefficient does not divide exactly");
      Exponents shift = top.first;
      for (std::size_t i = 0; i < shift.size(); ++i) {
        shift[i] -= lead.first[i];
        if (shift[i] < numLo[i] - denLo[i] || shift[i] > numHi[i] - denHi[i])
          throw Error(Errc::InexactDivision,
                      "quotient support escapes its forced exponent range");
      }
      LaurentPoly step = monomial(std::move(shift), top.second / lead.second);
      rem -= step * d;
      quotient += step;
    }
    return quotient;
  }

  /** Whether p(t) = ±p(1/t). */
  bool symmetricUpToSign() const {
    LaurentPoly flip = inverted();
    return flip == *this || flip == -*this;
  }

  /** Whether a == ±(monomial)·b, i.e. equality up to a Laurent unit. */
  friend bool equal_up_to_unit(const LaurentPoly& a, const LaurentPoly& b) {
    if (a.zero() || b.zero()) return a.zero() == b.zero();
    if (a.terms_.size() != b.terms_.size()) return false;
    const auto& la = *a.terms_.rbegin();
    const auto& lb = *b.terms_.rbegin();
    if (la.second != lb.second && la.second != -lb.second) return false;
    Exponents shift = la.first;
    for (std::size_t i = 0; i < shift.size(); ++i) shift[i] -= lb.first[i];
    std::int64_t sign = la.second == lb.second ? 1 : -1;
    return a == monomial(std::move(shift), sign) * b;
  }

  /**
   * Multiply by the unit ±t^e that centres the support at the origin, so
   * that the result is symmetric under inverting the variables, with a
   * positive coefficient on the largest term.  Throws when the polynomial
   * cannot be centred (support centre off the half-integer lattice or not
   * actually symmetric).
   */
  LaurentPoly normalizedSymmetric() const {
    if (zero()) return *this;
    Exponents lo = terms_.begin()->first, hi = lo;
    for (const auto& [e, c] : terms_)
      for (std::size_t i = 0; i < e.size(); ++i) {
        lo[i] = std::min(lo[i], e[i]);
        hi[i] = std::max(hi[i], e[i]);
      }
    Exponents shift(lo.size());
    for (std::size_t i = 0; i < lo.size(); ++i) {
      if ((lo[i] + hi[i]) % 2 != 0)
        throw Error(Errc::ValidationError,
                    "support cannot be centred on the exponent lattice");
      shift[i] = -(lo[i] + hi[i]) / 2;
    }
    LaurentPoly centred = monomial(std::move(shift), 1) * *this;
    if (!centred.symmetricUpToSign())
      throw Error(Errc::ValidationError,
                  "polynomial is not symmetric under inverting the variables");
    if (centred.terms_.rbegin()->second < 0) centred = -centred;
    return centred;
  }

  /** Render with the given variable names; exponents shown halved. */
  std::string str(const std::vector<std::string>& names) const {
    if (terms_.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      const auto& [e, c] = *it;
      std::int64_t mag = c < 0 ? -c : c;
      out << (first ? (c < 0 ? "-" : "") : (c < 0 ? " - " : " + "));
      first = false;
      bool allZero = true;
      for (int v : e) allZero = allZero && v == 0;
      if (mag != 1 || allZero) out << mag;
      for (std::size_t i = 0; i < e.size(); ++i) {
        if (e[i] == 0) continue;
        out << names[i];
        if (e[i] != 2) {
          out << "^";
          if (e[i] % 2 == 0)
            out << e[i] / 2;
          else
            out << e[i] << "/2";
        }
      }
    }
    return out.str();
  }

 private:
  void checkArity(const Exponents& e) const {
    if (static_cast<int>(e.size()) != arity_)
      throw Error(Errc::ValidationError,
                  "exponent vector length " + std::to_string(e.size()) +
                      " does not match polynomial arity " +
                      std::to_string(arity_));
  }

  int arity_ = 0;
  std::map<Exponents, std::int64_t> terms_;
};

}  // namespace hyperkube
