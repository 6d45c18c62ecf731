#pragma once

#include "orbtrace/rational.hpp"

#include <complex>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace orbtrace {

/// Element of the cyclotomic field Q(zeta_L), zeta_L = e^{2 pi i / L}.
///
/// Stored in the power basis 1, zeta, ..., zeta^{phi(L)-1}, reduced eagerly
/// modulo the L-th cyclotomic polynomial, so the representation is canonical
/// at a fixed level. Mixed-level arithmetic lifts both operands to the lcm.
class CycloScalar {
 public:
  CycloScalar();
  CycloScalar(const Rational& r);  // NOLINT: rationals embed implicitly
  CycloScalar(long r);             // NOLINT

  /// zeta_L^j for any integer j.
  static CycloScalar root(std::int64_t j, std::int64_t level);

  /// Sum of c * zeta_L^a over arbitrary (possibly unreduced) exponents a.
  static CycloScalar from_terms(std::int64_t level,
                                const std::vector<std::pair<Rational, std::int64_t>>& terms);

  std::int64_t level() const { return level_; }
  bool is_zero() const;
  bool is_rational() const;
  /// Rational value; only meaningful when is_rational().
  Rational rational_part() const;

  /// Nonzero (coefficient, exponent) pairs of the reduced power-basis form.
  std::vector<std::pair<Rational, std::int64_t>> terms() const;

  /// Same element written at level `target` (must be a multiple of level()).
  CycloScalar lifted(std::int64_t target) const;

  CycloScalar inverse() const;
  std::complex<double> evaluate() const;
  std::string to_string() const;

  CycloScalar& operator+=(const CycloScalar& o);
  CycloScalar& operator-=(const CycloScalar& o);
  CycloScalar& operator*=(const CycloScalar& o);
  CycloScalar& operator*=(const Rational& r);

  friend CycloScalar operator+(CycloScalar a, const CycloScalar& b) { return a += b; }
  friend CycloScalar operator-(CycloScalar a, const CycloScalar& b) { return a -= b; }
  friend CycloScalar operator*(CycloScalar a, const CycloScalar& b) { return a *= b; }
  friend CycloScalar operator/(const CycloScalar& a, const CycloScalar& b) { return a * b.inverse(); }
  CycloScalar operator-() const;

  friend bool operator==(const CycloScalar& a, const CycloScalar& b);

  /// this += r * x, without forming the temporary product.
  void add_scaled(const Rational& r, const CycloScalar& x);

 private:
  CycloScalar(std::int64_t level, std::vector<Rational> coeffs);
  void lift_to(std::int64_t target);

  std::int64_t level_;
  std::vector<Rational> c_;  // size phi(level_)
};

/// Integer coefficients of the L-th cyclotomic polynomial, constant term first.
const std::vector<std::int64_t>& cyclotomic_polynomial(std::int64_t level);
std::int64_t euler_phi(std::int64_t n);

}  // namespace orbtrace
