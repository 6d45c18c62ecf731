#pragma once

// Change-of-variable coefficients between the round-bracket modes v(i) and the
// square-bracket modes v[m] of the torus structure Y[v, z] = Y(v, e^z - 1) e^{z wt v}.

#include "orbtrace/qseries.hpp"
#include "orbtrace/rational.hpp"

#include <nlohmann/json.hpp>

#include <map>
#include <string>
#include <vector>

namespace orbtrace::bracket {

/// c(p, i, m) for 0 <= m <= i <= i_max, defined by binom(p - 1 + z, i) = sum_m c(p, i, m) z^m.
class BracketCoeffTable {
 public:
  BracketCoeffTable(int p, int i_max);

  int p() const { return p_; }
  int i_max() const { return i_max_; }
  /// Zero for m > i or out-of-range indices.
  Rational at(int i, int m) const;

 private:
  int p_;
  int i_max_;
  std::vector<std::vector<Rational>> rows_;  // rows_[i][m], m = 0..i
};

inline constexpr int kDefaultIMax = 16;

BracketCoeffTable c_table(int p, int i_max = kDefaultIMax);

/// (log(1+z))^m (1+z)^{p-1} as a power series in z (carried by QSeries with
/// step 1), up to z^order.
QSeries log_pow_series(int m, int p, int order);

/// m! c(wt, i, m) for i = m..i_max; the coefficient of v(i) in v[m].
std::vector<Rational> vbracket_coeffs(int wt, int m, int i_max = kDefaultIMax);

/// (-1)^{n-1}/(n(n+1)) for n = 1..n_max; the coefficient of L(n) in L[0].
std::vector<Rational> l0_bracket_coeffs(int n_max);

/// A symbolic mode label such as v(3), L(-1), omega[-1] or the central term c.
struct ModeLabel {
  std::string symbol;
  int index = 0;
  bool square = false;

  std::string to_string() const;
  friend auto operator<=>(const ModeLabel&, const ModeLabel&) = default;
};

/// Formal rational combination of mode labels.
using ModeCombination = std::map<ModeLabel, Rational>;

/// v[m] in terms of v(i), i = m..i_max.
ModeCombination vbracket_expansion(int wt, int m, int i_max = kDefaultIMax);
/// L[0] = L(0) + sum (-1)^{n-1}/(n(n+1)) L(n), n <= n_max.
ModeCombination l0_expansion(int n_max);
/// L[-1] = L(-1) + L(0).
ModeCombination lm1_expansion();
/// L[-2] = omega[-1] - c/24; the central term carries label "c".
ModeCombination lm2_expansion();

/// Coefficient of the central charge in L[-2].
inline const Rational kLm2CentralShift{-1, 24};

nlohmann::json to_json(const BracketCoeffTable& t);
nlohmann::json to_json(const ModeCombination& c);

}  // namespace orbtrace::bracket
