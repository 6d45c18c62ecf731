#pragma once

#include "orbtrace/fock.hpp"
#include "orbtrace/modforms.hpp"
#include "orbtrace/qseries.hpp"
#include "orbtrace/report.hpp"

#include <complex>
#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace orbtrace::sl2 {

class SL2Matrix {
 public:
  /// Throws InvalidArgument unless ad - bc = 1.
  SL2Matrix(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d);

  static SL2Matrix identity() { return {1, 0, 0, 1}; }
  /// (0 -1; 1 0)
  static SL2Matrix S() { return {0, -1, 1, 0}; }
  /// (1 1; 0 1)
  static SL2Matrix T() { return {1, 1, 0, 1}; }

  std::int64_t a() const { return a_; }
  std::int64_t b() const { return b_; }
  std::int64_t c() const { return c_; }
  std::int64_t d() const { return d_; }

  SL2Matrix operator*(const SL2Matrix& o) const;
  SL2Matrix inverse() const { return {d_, -b_, -c_, a_}; }
  /// c tau + d
  std::complex<double> automorphy(std::complex<double> tau) const;
  std::string to_string() const;

  friend bool operator==(const SL2Matrix&, const SL2Matrix&) = default;

 private:
  std::int64_t a_, b_, c_, d_;
};

/// Parses "a,b,c,d".
SL2Matrix parse_matrix(std::string_view text);

EvalPoint mobius(const SL2Matrix& g, const EvalPoint& p);

/// (mu, lambda) g = (mu^a lambda^c, mu^b lambda^d)
std::pair<RootOfUnity, RootOfUnity> act_pair(const RootOfUnity& mu, const RootOfUnity& lambda, const SL2Matrix& g);

/// (g^{i1} h^{j1}, g^{i2} h^{j2}) with g, h commuting of orders order_g, order_h.
struct TwistPair {
  std::int64_t order_g = 1;
  std::int64_t order_h = 1;
  std::int64_t i1 = 0, j1 = 0;
  std::int64_t i2 = 0, j2 = 0;

  /// Reduces exponents into [0, order).
  TwistPair reduced() const;
  friend bool operator==(const TwistPair&, const TwistPair&) = default;
};

/// (x, y) gamma = (x^a y^c, x^b y^d)
TwistPair act_twist(const TwistPair& tp, const SL2Matrix& g);

/// Twist labels as exponents of (g, sigma), both of order 2.
TwistPair to_twist_pair(fock::Twist x, fock::Twist y);
std::pair<fock::Twist, fock::Twist> from_twist_pair(const TwistPair& tp);

/// Gamma(2) union Gamma(2) S.
bool in_gamma_theta(const SL2Matrix& g);
/// a = d = 1 mod lcm(T, T1), b = 0 mod T, c = 0 mod T1.
bool in_gamma_TT1(const SL2Matrix& g, std::int64_t t, std::int64_t t1);

using Function = std::function<std::complex<double>(const EvalPoint&)>;

inline constexpr double kMinSampleSeparation = 1e-3;

/// r(tau) = lhs(g tau) / ((c tau + d)^k rhs(tau)); constant = mean, residual = max |r - mean|.
/// Needs at least three samples pairwise at least 1e-3 apart; DegenerateSample if rhs vanishes.
VerificationReport transform_ratio(const Function& lhs, const Function& rhs, const SL2Matrix& g, int k,
                                   const std::vector<EvalPoint>& samples, double tol, std::string label = {});

std::vector<EvalPoint> default_samples();

/// Evaluation of a fixed q-series, for use as a transform_ratio side.
Function series_function(QSeries s);

/// Trace function T(1, (x, y)) expanded to order and evaluated.
Function trace_function(fock::Twist x, fock::Twist y, int l, std::int64_t order = 60);

/// |Q_k(mu, lambda, g tau) - (c tau + d)^k Q_k((mu, lambda) g, tau)| using series to the given order.
VerificationReport check_q_transform(int k, const RootOfUnity& mu, const RootOfUnity& lambda, const SL2Matrix& g,
                                     const EvalPoint& tau, std::int64_t order = 300, double tol = 1e-8);
/// Same check with both expansions supplied: q_lhs for (mu, lambda), q_rhs for (mu, lambda) g.
VerificationReport check_q_transform(const QSeries& q_lhs, const QSeries& q_rhs, int k, const SL2Matrix& g,
                                     const EvalPoint& tau, double tol, std::string label);

/// |P_k(mu, lambda, z/(c tau + d), g tau) - (c tau + d)^k P_k((mu, lambda) g, z, tau)|.
/// Both sides must lie in the convergence region, else OutsideConvergenceRegion.
VerificationReport check_p_transform(int k, const RootOfUnity& mu, const RootOfUnity& lambda, const SL2Matrix& g,
                                     const EvalPoint& tau, std::complex<double> z, int cutoff = 80,
                                     double tol = 1e-6);

}  // namespace orbtrace::sl2
