#pragma once

#include <array>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

#include "pudq/errors.hpp"

namespace pudq {

// The engine works over one fixed variable universe: the Ostrogradsky phase
// space (q, p_q, x, p_x), the diagonalized oscillator frame (X1, P1, X2, P2),
// the equal-frequency frame (Q1, Q2) sharing P1/P2, the deformation parameter
// hbar, time, formal trajectory derivatives, and the radial variables z1/z2.
enum class Var : std::uint8_t {
  q = 0,
  pq,
  x,
  px,
  X1,
  P1,
  X2,
  P2,
  Q1,
  Q2,
  hbar,
  t,
  qdot,
  qddot,
  qdddot,
  z1,
  z2,
  kCount
};

inline constexpr std::size_t kNumVars = static_cast<std::size_t>(Var::kCount);

inline const char* var_name(Var v) {
  static constexpr const char* names[kNumVars] = {
      "q",  "p_q",  "x",    "p_x",    "X1", "P1", "X2", "P2", "Q1",
      "Q2", "hbar", "t",    "qdot",   "qddot", "qdddot", "z1", "z2"};
  return names[static_cast<std::size_t>(v)];
}

inline Var var_from_name(const std::string& s) {
  for (std::size_t i = 0; i < kNumVars; ++i) {
    Var v = static_cast<Var>(i);
    if (s == var_name(v)) return v;
  }
  throw ConfigError("unknown variable name: '" + s + "'");
}

// Exponent vector over the fixed variable universe. Ordered lexicographically
// so polynomial term maps have a canonical iteration order.
struct Monomial {
  std::array<std::uint8_t, kNumVars> e{};

  static Monomial one() { return {}; }

  static Monomial of(Var v, int k = 1) {
    Monomial m;
    m.set(v, k);
    return m;
  }

  int get(Var v) const { return e[static_cast<std::size_t>(v)]; }

  void set(Var v, int k) {
    if (k < 0 || k > 255) throw Error("monomial exponent out of range");
    e[static_cast<std::size_t>(v)] = static_cast<std::uint8_t>(k);
  }

  int degree() const {
    int d = 0;
    for (auto x : e) d += x;
    return d;
  }

  bool depends_on(Var v) const { return get(v) > 0; }

  Monomial times(const Monomial& o) const {
    Monomial m;
    for (std::size_t i = 0; i < kNumVars; ++i) {
      int s = e[i] + o.e[i];
      if (s > 255) throw Error("monomial exponent overflow");
      m.e[i] = static_cast<std::uint8_t>(s);
    }
    return m;
  }

  friend bool operator==(const Monomial& a, const Monomial& b) { return a.e == b.e; }
  friend bool operator<(const Monomial& a, const Monomial& b) { return a.e < b.e; }
};

// Ordered list of (coordinate, momentum) pairs defining a Poisson structure.
// hbar is always admitted as an inert symbol.
class PairSignature {
 public:
  PairSignature(std::initializer_list<std::pair<Var, Var>> pairs) : pairs_(pairs) { validate(); }
  explicit PairSignature(std::vector<std::pair<Var, Var>> pairs) : pairs_(std::move(pairs)) {
    validate();
  }

  const std::vector<std::pair<Var, Var>>& pairs() const { return pairs_; }
  std::size_t size() const { return pairs_.size(); }

  bool knows(Var v) const {
    if (v == Var::hbar) return true;
    for (const auto& [c, p] : pairs_)
      if (v == c || v == p) return true;
    return false;
  }

  // Canonical structure of the Pais-Uhlenbeck phase space.
  static PairSignature pu() { return {{Var::q, Var::pq}, {Var::x, Var::px}}; }
  // Diagonalized two-oscillator frame.
  static PairSignature oscillator() { return {{Var::X1, Var::P1}, {Var::X2, Var::P2}}; }
  // Equal-frequency frame.
  static PairSignature equal_freq() { return {{Var::Q1, Var::P1}, {Var::Q2, Var::P2}}; }

 private:
  void validate() const {
    for (std::size_t i = 0; i < pairs_.size(); ++i) {
      if (pairs_[i].first == pairs_[i].second)
        throw SignatureError("coordinate paired with itself");
      for (std::size_t j = 0; j < pairs_.size(); ++j) {
        if (i == j) continue;
        if (pairs_[i].first == pairs_[j].first || pairs_[i].first == pairs_[j].second ||
            pairs_[i].second == pairs_[j].second)
          throw SignatureError("variable appears twice in pair signature");
      }
    }
  }

  std::vector<std::pair<Var, Var>> pairs_;
};

}  // namespace pudq
