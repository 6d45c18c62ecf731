#pragma once

#include "orbtrace/cyclo.hpp"
#include "orbtrace/rational.hpp"

#include <nlohmann/json.hpp>

#include <complex>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace orbtrace {

/// A point tau of the upper half plane.
class EvalPoint {
 public:
  explicit EvalPoint(std::complex<double> tau);
  EvalPoint(double re, double im) : EvalPoint(std::complex<double>(re, im)) {}

  std::complex<double> tau() const { return tau_; }
  /// e^{2 pi i tau}
  std::complex<double> q() const;

 private:
  std::complex<double> tau_;
};

struct SeriesValue {
  std::complex<double> value;
  double tail_bound = 0.0;
};

/// Truncated formal series  sum_k c_k q^{offset + k/D}  with coefficients in Q(zeta_L).
///
/// Coefficients are known exactly for indices 0..truncation(). A series with
/// truncation() == kExact is a finite sum known to all orders (polynomials,
/// constants, the zero series).
class QSeries {
 public:
  static constexpr std::int64_t kExact = std::numeric_limits<std::int64_t>::max();

  QSeries();  // exact zero

  QSeries(Rational offset, std::int64_t step_denominator, std::vector<CycloScalar> coeffs,
          std::int64_t truncation = kExact);

  static QSeries constant(const CycloScalar& c);
  static QSeries monomial(const CycloScalar& c, const Rational& exponent);

  const Rational& offset() const { return offset_; }
  std::int64_t step_denominator() const { return denom_; }
  std::int64_t level() const { return level_; }
  std::int64_t truncation() const { return truncation_; }
  bool is_exact() const { return truncation_ == kExact; }

  /// Number of stored coefficients; indices past this are zero.
  std::size_t stored() const { return coeffs_.size(); }
  const std::vector<CycloScalar>& coefficients() const { return coeffs_; }

  /// Coefficient at lattice index k (zero when not stored).
  CycloScalar coefficient(std::int64_t k) const;
  /// Coefficient of q^e; zero off the lattice or below the offset.
  CycloScalar coefficient_at(const Rational& exponent) const;

  Rational exponent_of(std::int64_t k) const;
  /// Largest exponent with a known coefficient, or nullopt for exact series.
  std::optional<Rational> precision() const;

  /// Same series on the lattice with step 1/(D * factor).
  QSeries refined(std::int64_t factor) const;
  /// Keeps indices 0..n (no-op if already shorter).
  QSeries truncated(std::int64_t n) const;
  /// Keeps exponents <= e.
  QSeries truncated_at(const Rational& exponent) const;
  /// Multiplies by q^delta (exact shift of the offset).
  QSeries shifted(const Rational& delta) const;
  QSeries scaled(const CycloScalar& c) const;

  /// Lowest index with a nonzero coefficient, or nullopt if all stored are zero.
  std::optional<std::int64_t> valuation_index() const;
  bool is_zero() const;

  SeriesValue evaluate(const EvalPoint& p) const;

  std::string to_text(std::size_t max_terms = 12) const;

  friend QSeries operator+(const QSeries& a, const QSeries& b);
  friend QSeries operator-(const QSeries& a, const QSeries& b);
  friend QSeries operator*(const QSeries& a, const QSeries& b);
  QSeries operator-() const;
  friend bool operator==(const QSeries& a, const QSeries& b);

 private:
  void normalize();

  Rational offset_;
  std::int64_t denom_ = 1;
  std::int64_t level_ = 1;
  std::vector<CycloScalar> coeffs_;
  std::int64_t truncation_ = kExact;
};

QSeries series_add(const QSeries& a, const QSeries& b);
QSeries series_mul(const QSeries& a, const QSeries& b);
/// b with a*b = 1 up to truncation; offset(b) = -offset(a). Requires a
/// nonzero coefficient at index 0 and a finite truncation unless a is a monomial.
QSeries series_invert(const QSeries& a);
SeriesValue series_eval(const QSeries& a, const EvalPoint& p);

/// One factor (1 + scalar * q^exponent) of a product expansion.
struct BinomialFactor {
  CycloScalar scalar;
  Rational exponent;
};

/// prod (1 + scalar_i q^{e_i}) truncated at total exponent `order`; factors
/// with e_i > order are skipped. Throws InvalidFactor for e_i <= 0.
QSeries product_expand(const std::vector<BinomialFactor>& factors, const Rational& order);

nlohmann::json to_json(const QSeries& s);
QSeries series_from_json(const nlohmann::json& j);

}  // namespace orbtrace
