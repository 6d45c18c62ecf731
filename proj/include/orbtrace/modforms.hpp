#pragma once

#include "orbtrace/qseries.hpp"
#include "orbtrace/report.hpp"

#include <complex>
#include <cstdint>
#include <map>
#include <vector>

namespace orbtrace {

/// e^{2 pi i j / M}, kept in lowest terms with 0 <= j < M.
class RootOfUnity {
 public:
  RootOfUnity() = default;
  RootOfUnity(std::int64_t j, std::int64_t m);
  /// Parses "j/M".
  static RootOfUnity parse(std::string_view text);

  std::int64_t numerator() const { return j_; }
  std::int64_t order() const { return m_; }
  /// j/M as an exact rational in [0, 1).
  Rational fraction() const { return Rational(j_, m_); }
  bool is_one() const { return j_ == 0; }

  RootOfUnity operator*(const RootOfUnity& o) const;
  RootOfUnity pow(std::int64_t e) const;
  RootOfUnity inverse() const { return pow(-1); }

  CycloScalar scalar() const { return CycloScalar::root(j_, m_); }
  std::complex<double> value() const;
  std::string to_string() const;

  friend bool operator==(const RootOfUnity&, const RootOfUnity&) = default;

 private:
  std::int64_t j_ = 0;
  std::int64_t m_ = 1;
};

/// sum c_i x^i with exact rational coefficients; trailing zeros are trimmed.
class RationalPolynomial {
 public:
  RationalPolynomial() = default;
  explicit RationalPolynomial(std::vector<Rational> coeffs);

  const std::vector<Rational>& coefficients() const { return c_; }
  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  Rational coefficient(std::size_t i) const { return i < c_.size() ? c_[i] : Rational(0); }
  Rational operator()(const Rational& x) const;
  /// p(x + a) as a polynomial in x.
  RationalPolynomial shifted(const Rational& a) const;

  friend RationalPolynomial operator-(const RationalPolynomial& a, const RationalPolynomial& b);
  friend bool operator==(const RationalPolynomial&, const RationalPolynomial&) = default;

 private:
  std::vector<Rational> c_;
};

RationalPolynomial bernoulli_polynomial(unsigned r);
/// B_r = B_r(0), with B_1 = -1/2.
Rational bernoulli_number(unsigned r);

/// Normalized E_k = -B_k/k! + 2/(k-1)! sum sigma_{k-1}(n) q^n up to q^order.
/// k even, k >= 2; otherwise InvalidWeight.
QSeries eisenstein_E(int k, std::int64_t order);

/// Truncated lattice sum of G_k over 0 < max(|m1|,|m2|) <= cutoff; k even >= 4.
std::complex<double> eisenstein_G_lattice(int k, const EvalPoint& p, int cutoff);

/// Q_k(mu, lambda, tau) expanded up to q^order, on the lattice (1/ord mu) Z.
QSeries q_series_Q(int k, const RootOfUnity& mu, const RootOfUnity& lambda, std::int64_t order);

/// Finite z-window of Pbar_k(mu, lambda, z, tau): the coefficient of z^n for
/// n in j/M + Z with |n| <= window, each a q-series to q^order.
struct PbarWindow {
  RootOfUnity mu;
  RootOfUnity lambda;
  int k = 0;
  std::int64_t window = 0;
  std::int64_t order = 0;
  /// Keyed by the integer part m of n = m + j/M.
  std::map<std::int64_t, QSeries> entries;

  Rational exponent(std::int64_t m) const { return Rational(m) + mu.fraction(); }
  bool is_zero() const { return entries.empty(); }
};

PbarWindow pbar_window(int k, const RootOfUnity& mu, const RootOfUnity& lambda, std::int64_t window,
                       std::int64_t order);

/// Truncated sum of P_k(mu, lambda, z, tau) over |n| <= cutoff. Requires
/// |q_tau| < |q_z| < 1, i.e. 0 < Im z < Im tau.
std::complex<double> p_eval(int k, const RootOfUnity& mu, const RootOfUnity& lambda, std::complex<double> z,
                            const EvalPoint& p, int cutoff);

/// Exact check of the residue identity expressing Q_k + B_k(1 - m + j/M)/k!
/// through Pbar_k, up to q^order. window must exceed order + |m| + 1.
VerificationReport check_prop_2_3(int k, std::int64_t m, const RootOfUnity& mu, const RootOfUnity& lambda,
                                  std::int64_t window, std::int64_t order);

/// prefactor * prod eta(t tau)^r.
struct EtaQuotientSpec {
  struct Factor {
    Rational scale;
    int power = 0;
  };
  std::vector<Factor> factors;
  CycloScalar prefactor{1L};

  /// sum r t / 24
  Rational q_offset() const;
  /// lcm of the scale denominators.
  std::int64_t lattice_denominator() const;
};

/// eta(tau) = q^{1/24} prod (1 - q^n) up to q^{1/24 + order}.
QSeries eta_series(std::int64_t order);
/// The quotient expanded to q^{offset + order}.
QSeries eta_quotient(const EtaQuotientSpec& spec, std::int64_t order);

/// Numeric checks of the S-law, T-law and the half-shift identity at p.
/// Uses the eta series to q^60; intended for Im tau >= 0.8.
struct EtaLawReports {
  VerificationReport s_law;
  VerificationReport t_law;
  VerificationReport half_shift;
  /// eta((tau+1)/2) * eta(tau/2) eta(2 tau) / eta(tau)^3, reported alongside the half-shift check.
  std::complex<double> half_shift_ratio;
};

EtaLawReports check_eta_laws(const EvalPoint& p, double tol = 1e-10);

}  // namespace orbtrace
