#include "orbtrace/bracket.hpp"

#include "orbtrace/error.hpp"

namespace orbtrace::bracket {

BracketCoeffTable::BracketCoeffTable(int p, int i_max) : p_(p), i_max_(i_max) {
  if (i_max < 0) throw Error(ErrorKind::InvalidArgument, "i_max must be nonnegative");
  // Running product prod_{t<i} (p - 1 - t + z), as coefficients in z.
  std::vector<Rational> prod{Rational(1)};
  rows_.reserve(static_cast<std::size_t>(i_max) + 1);
  for (int i = 0; i <= i_max; ++i) {
    const Rational inv_fact = 1 / factorial(static_cast<unsigned>(i));
    std::vector<Rational> row(prod.size());
    for (std::size_t m = 0; m < prod.size(); ++m) row[m] = prod[m] * inv_fact;
    rows_.push_back(std::move(row));
    const Rational shift(p - 1 - i);
    std::vector<Rational> next(prod.size() + 1, Rational(0));
    for (std::size_t m = 0; m < prod.size(); ++m) {
      next[m] += prod[m] * shift;
      next[m + 1] += prod[m];
    }
    prod = std::move(next);
  }
}

Rational BracketCoeffTable::at(int i, int m) const {
  if (i < 0 || i > i_max_ || m < 0 || m > i) return Rational(0);
  return rows_[static_cast<std::size_t>(i)][static_cast<std::size_t>(m)];
}

BracketCoeffTable c_table(int p, int i_max) { return BracketCoeffTable(p, i_max); }

QSeries log_pow_series(int m, int p, int order) {
  if (m < 0) throw Error(ErrorKind::InvalidArgument, "log power must be nonnegative");
  if (order < 0) throw Error(ErrorKind::InvalidArgument, "order must be nonnegative");
  const auto n = static_cast<std::size_t>(order) + 1;
  std::vector<CycloScalar> binom(n), log(n);
  for (std::size_t t = 0; t < n; ++t) binom[t] = CycloScalar(binomial(Rational(p - 1), static_cast<unsigned>(t)));
  for (std::size_t t = 1; t < n; ++t) log[t] = CycloScalar(Rational(t % 2 == 1 ? 1 : -1, static_cast<long>(t)));
  QSeries acc(Rational(0), 1, std::move(binom), order);
  const QSeries log_series(Rational(0), 1, std::move(log), order);
  for (int r = 0; r < m; ++r) acc = acc * log_series;
  return acc;
}

std::vector<Rational> vbracket_coeffs(int wt, int m, int i_max) {
  if (m < 0) throw Error(ErrorKind::InvalidArgument, "mode index must be nonnegative");
  const auto table = c_table(wt, i_max);
  const Rational mf = factorial(static_cast<unsigned>(m));
  std::vector<Rational> out;
  for (int i = m; i <= i_max; ++i) out.push_back(mf * table.at(i, m));
  return out;
}

std::vector<Rational> l0_bracket_coeffs(int n_max) {
  if (n_max < 1) throw Error(ErrorKind::InvalidArgument, "n_max must be at least 1");
  std::vector<Rational> out;
  for (int n = 1; n <= n_max; ++n) out.emplace_back(n % 2 == 1 ? 1 : -1, static_cast<long>(n) * (n + 1));
  for (auto& r : out) r.canonicalize();
  return out;
}

std::string ModeLabel::to_string() const {
  if (symbol == "c") return "c";
  return symbol + (square ? "[" : "(") + std::to_string(index) + (square ? "]" : ")");
}

ModeCombination vbracket_expansion(int wt, int m, int i_max) {
  ModeCombination out;
  auto coeffs = vbracket_coeffs(wt, m, i_max);
  for (std::size_t t = 0; t < coeffs.size(); ++t)
    if (coeffs[t] != 0) out[{"v", m + static_cast<int>(t), false}] = coeffs[t];
  return out;
}

ModeCombination l0_expansion(int n_max) {
  ModeCombination out;
  out[{"L", 0, false}] = Rational(1);
  auto coeffs = l0_bracket_coeffs(n_max);
  for (std::size_t t = 0; t < coeffs.size(); ++t) out[{"L", static_cast<int>(t) + 1, false}] = coeffs[t];
  return out;
}

ModeCombination lm1_expansion() {
  return {{{"L", -1, false}, Rational(1)}, {{"L", 0, false}, Rational(1)}};
}

ModeCombination lm2_expansion() {
  return {{{"omega", -1, true}, Rational(1)}, {{"c", 0, false}, kLm2CentralShift}};
}

nlohmann::json to_json(const BracketCoeffTable& t) {
  nlohmann::json rows = nlohmann::json::array();
  for (int i = 0; i <= t.i_max(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (int m = 0; m <= i; ++m) row.push_back(format_rational(t.at(i, m)));
    rows.push_back(std::move(row));
  }
  return {{"object", "bracket-c"}, {"p", t.p()}, {"i_max", t.i_max()}, {"rows", std::move(rows)}};
}

nlohmann::json to_json(const ModeCombination& c) {
  nlohmann::json out = nlohmann::json::object();
  for (const auto& [label, coeff] : c) out[label.to_string()] = format_rational(coeff);
  return out;
}

}  // namespace orbtrace::bracket
