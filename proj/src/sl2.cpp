#include "orbtrace/sl2.hpp"

#include "orbtrace/error.hpp"

#include <cmath>
#include <sstream>

namespace orbtrace::sl2 {

namespace {

std::int64_t mod(std::int64_t x, std::int64_t m) {
  std::int64_t r = x % m;
  return r < 0 ? r + m : r;
}

std::complex<double> cpow_int(std::complex<double> x, int k) {
  std::complex<double> out = 1.0;
  for (int t = 0; t < (k < 0 ? -k : k); ++t) out *= x;
  return k < 0 ? 1.0 / out : out;
}

std::string complex_text(std::complex<double> z) {
  std::ostringstream os;
  os.precision(6);
  os << z.real() << (z.imag() < 0 ? "" : "+") << z.imag() << "i";
  return os.str();
}

}  // namespace

SL2Matrix::SL2Matrix(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d) : a_(a), b_(b), c_(c), d_(d) {
  if (a * d - b * c != 1) throw Error(ErrorKind::InvalidArgument, "matrix must have determinant 1");
}

SL2Matrix SL2Matrix::operator*(const SL2Matrix& o) const {
  return {a_ * o.a_ + b_ * o.c_, a_ * o.b_ + b_ * o.d_, c_ * o.a_ + d_ * o.c_, c_ * o.b_ + d_ * o.d_};
}

std::complex<double> SL2Matrix::automorphy(std::complex<double> tau) const {
  return static_cast<double>(c_) * tau + static_cast<double>(d_);
}

std::string SL2Matrix::to_string() const {
  std::ostringstream os;
  os << "(" << a_ << " " << b_ << "; " << c_ << " " << d_ << ")";
  return os.str();
}

SL2Matrix parse_matrix(std::string_view text) {
  std::vector<std::int64_t> v;
  std::string item;
  std::istringstream is{std::string(text)};
  while (std::getline(is, item, ',')) {
    try {
      std::size_t used = 0;
      v.push_back(std::stoll(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw Error(ErrorKind::ParseError, "bad matrix entry '" + item + "'");
    }
  }
  if (v.size() != 4) throw Error(ErrorKind::ParseError, "matrix needs four comma-separated entries a,b,c,d");
  return {v[0], v[1], v[2], v[3]};
}

EvalPoint mobius(const SL2Matrix& g, const EvalPoint& p) {
  const std::complex<double> tau = p.tau();
  return EvalPoint((static_cast<double>(g.a()) * tau + static_cast<double>(g.b())) / g.automorphy(tau));
}

std::pair<RootOfUnity, RootOfUnity> act_pair(const RootOfUnity& mu, const RootOfUnity& lambda, const SL2Matrix& g) {
  return {mu.pow(g.a()) * lambda.pow(g.c()), mu.pow(g.b()) * lambda.pow(g.d())};
}

TwistPair TwistPair::reduced() const {
  TwistPair t = *this;
  t.i1 = mod(i1, order_g);
  t.i2 = mod(i2, order_g);
  t.j1 = mod(j1, order_h);
  t.j2 = mod(j2, order_h);
  return t;
}

TwistPair act_twist(const TwistPair& tp, const SL2Matrix& g) {
  TwistPair out = tp;
  out.i1 = tp.i1 * g.a() + tp.i2 * g.c();
  out.j1 = tp.j1 * g.a() + tp.j2 * g.c();
  out.i2 = tp.i1 * g.b() + tp.i2 * g.d();
  out.j2 = tp.j1 * g.b() + tp.j2 * g.d();
  return out.reduced();
}

namespace {

std::pair<std::int64_t, std::int64_t> exponents(fock::Twist t) {
  switch (t) {
    case fock::Twist::one: return {0, 0};
    case fock::Twist::sigma: return {0, 1};
    case fock::Twist::g: return {1, 0};
    case fock::Twist::g_sigma: return {1, 1};
  }
  return {0, 0};
}

fock::Twist label(std::int64_t i, std::int64_t j) {
  static const fock::Twist table[2][2] = {{fock::Twist::one, fock::Twist::sigma},
                                          {fock::Twist::g, fock::Twist::g_sigma}};
  return table[i][j];
}

}  // namespace

TwistPair to_twist_pair(fock::Twist x, fock::Twist y) {
  auto [i1, j1] = exponents(x);
  auto [i2, j2] = exponents(y);
  return TwistPair{2, 2, i1, j1, i2, j2};
}

std::pair<fock::Twist, fock::Twist> from_twist_pair(const TwistPair& tp) {
  if (tp.order_g != 2 || tp.order_h != 2)
    throw Error(ErrorKind::InvalidArgument, "twist labels need g and sigma of order 2");
  const TwistPair r = tp.reduced();
  return {label(r.i1, r.j1), label(r.i2, r.j2)};
}

bool in_gamma_theta(const SL2Matrix& g) {
  const auto a = mod(g.a(), 2), b = mod(g.b(), 2), c = mod(g.c(), 2), d = mod(g.d(), 2);
  const bool identity = a == 1 && b == 0 && c == 0 && d == 1;
  const bool s_coset = a == 0 && b == 1 && c == 1 && d == 0;
  return identity || s_coset;
}

bool in_gamma_TT1(const SL2Matrix& g, std::int64_t t, std::int64_t t1) {
  if (t < 1 || t1 < 1) throw Error(ErrorKind::InvalidArgument, "orders must be positive");
  const std::int64_t n = lcm64(t, t1);
  return mod(g.a(), n) == mod(1, n) && mod(g.d(), n) == mod(1, n) && mod(g.b(), t) == 0 && mod(g.c(), t1) == 0;
}

VerificationReport transform_ratio(const Function& lhs, const Function& rhs, const SL2Matrix& g, int k,
                                   const std::vector<EvalPoint>& samples, double tol, std::string label) {
  if (samples.size() < 3) throw Error(ErrorKind::InvalidArgument, "need at least three sample points");
  for (std::size_t i = 0; i < samples.size(); ++i)
    for (std::size_t j = i + 1; j < samples.size(); ++j)
      if (std::abs(samples[i].tau() - samples[j].tau()) < kMinSampleSeparation)
        throw Error(ErrorKind::InvalidArgument, "sample points closer than 1e-3");

  std::vector<std::complex<double>> ratios;
  for (const auto& p : samples) {
    const std::complex<double> r = rhs(p);
    if (!(std::abs(r) > 1e-300) || !std::isfinite(std::abs(r)))
      throw Error(ErrorKind::DegenerateSample, "rhs vanishes at tau = " + complex_text(p.tau()));
    ratios.push_back(lhs(mobius(g, p)) / (cpow_int(g.automorphy(p.tau()), k) * r));
  }
  std::complex<double> mean = 0.0;
  for (const auto& r : ratios) mean += r;
  mean /= static_cast<double>(ratios.size());
  double residual = 0.0;
  for (const auto& r : ratios) residual = std::max(residual, std::abs(r - mean));

  VerificationReport rep;
  rep.label = label.empty() ? "transform " + g.to_string() : std::move(label);
  rep.mode = VerificationReport::Mode::numeric;
  rep.constant = mean;
  rep.residual = residual;
  rep.tolerance = tol;
  rep.pass = std::isfinite(residual) && residual < tol;
  for (const auto& p : samples) rep.samples.push_back(p.tau());
  return rep;
}

std::vector<EvalPoint> default_samples() {
  return {EvalPoint(0.0, 2.0), EvalPoint(1.0, 2.0), EvalPoint(0.0, 3.0), EvalPoint(-1.0, 2.5)};
}

Function series_function(QSeries s) {
  return [s = std::move(s)](const EvalPoint& p) { return s.evaluate(p).value; };
}

Function trace_function(fock::Twist x, fock::Twist y, int l, std::int64_t order) {
  return series_function(fock::trace_gh(x, y, l, order));
}

VerificationReport check_q_transform(const QSeries& q_lhs, const QSeries& q_rhs, int k, const SL2Matrix& g,
                                     const EvalPoint& tau, double tol, std::string label) {
  const EvalPoint image = mobius(g, tau);
  const SeriesValue left = q_lhs.evaluate(image);
  const SeriesValue right = q_rhs.evaluate(tau);
  const std::complex<double> factor = cpow_int(g.automorphy(tau.tau()), k);
  VerificationReport rep;
  rep.label = std::move(label);
  rep.mode = VerificationReport::Mode::numeric;
  rep.constant = right.value == 0.0 ? std::complex<double>(1.0) : left.value / (factor * right.value);
  rep.residual = std::abs(left.value - factor * right.value);
  rep.tolerance = tol;
  rep.pass = std::isfinite(rep.residual) && rep.residual < tol;
  rep.samples = {tau.tau()};
  std::ostringstream os;
  os.precision(3);
  os << "tail bounds " << left.tail_bound << ", " << right.tail_bound;
  rep.detail = os.str();
  return rep;
}

VerificationReport check_q_transform(int k, const RootOfUnity& mu, const RootOfUnity& lambda, const SL2Matrix& g,
                                     const EvalPoint& tau, std::int64_t order, double tol) {
  const auto [mu2, lambda2] = act_pair(mu, lambda, g);
  std::ostringstream label;
  label << "Q_" << k << "(" << mu.to_string() << "," << lambda.to_string() << ") under " << g.to_string()
        << " at tau=" << complex_text(tau.tau());
  return check_q_transform(q_series_Q(k, mu, lambda, order), q_series_Q(k, mu2, lambda2, order), k, g, tau, tol,
                           label.str());
}

VerificationReport check_p_transform(int k, const RootOfUnity& mu, const RootOfUnity& lambda, const SL2Matrix& g,
                                     const EvalPoint& tau, std::complex<double> z, int cutoff, double tol) {
  const auto [mu2, lambda2] = act_pair(mu, lambda, g);
  const std::complex<double> j = g.automorphy(tau.tau());
  const std::complex<double> left = p_eval(k, mu, lambda, z / j, mobius(g, tau), cutoff);
  const std::complex<double> right = cpow_int(j, k) * p_eval(k, mu2, lambda2, z, tau, cutoff);
  VerificationReport rep;
  std::ostringstream label;
  label << "P_" << k << "(" << mu.to_string() << "," << lambda.to_string() << ") under " << g.to_string()
        << " at tau=" << complex_text(tau.tau()) << " z=" << complex_text(z);
  rep.label = label.str();
  rep.mode = VerificationReport::Mode::numeric;
  rep.constant = right == 0.0 ? std::complex<double>(1.0) : left / right;
  rep.residual = std::abs(left - right);
  rep.tolerance = tol;
  rep.pass = std::isfinite(rep.residual) && rep.residual < tol;
  rep.samples = {tau.tau()};
  return rep;
}

}  // namespace orbtrace::sl2
