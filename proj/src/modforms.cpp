#include "orbtrace/modforms.hpp"

#include "orbtrace/error.hpp"
#include "orbtrace/kernels.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace orbtrace {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::int64_t floor_div(const Rational& r) {
  Integer fl;
  mpz_fdiv_q(fl.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return to_int64(fl);
}

std::int64_t ceil_div(const Rational& r) {
  Integer cl;
  mpz_cdiv_q(cl.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return to_int64(cl);
}

bool is_trivial_pair(const RootOfUnity& mu, const RootOfUnity& lambda) { return mu.is_one() && lambda.is_one(); }

// x^{k-1} with the convention 0^0 = 1.
Rational power_km1(const Rational& x, int k) { return power(x, static_cast<unsigned>(k - 1)); }

std::vector<CycloScalar> powers_of(const RootOfUnity& r) {
  std::vector<CycloScalar> out;
  out.reserve(static_cast<std::size_t>(r.order()));
  for (std::int64_t s = 0; s < r.order(); ++s) out.push_back(r.pow(s).scalar());
  return out;
}

}  // namespace

// ---------------------------------------------------------------- RootOfUnity

RootOfUnity::RootOfUnity(std::int64_t j, std::int64_t m) {
  if (m < 1) throw Error(ErrorKind::InvalidArgument, "root of unity order must be positive");
  j %= m;
  if (j < 0) j += m;
  std::int64_t g = gcd64(j, m);
  if (g == 0) g = m;
  j_ = j / g;
  m_ = m / g;
}

RootOfUnity RootOfUnity::parse(std::string_view text) {
  auto slash = text.find('/');
  if (slash == std::string_view::npos)
    throw Error(ErrorKind::ParseError, "root of unity must be written j/M, got '" + std::string(text) + "'");
  Rational j = parse_rational(text.substr(0, slash));
  Rational m = parse_rational(text.substr(slash + 1));
  if (j.get_den() != 1 || m.get_den() != 1 || m <= 0)
    throw Error(ErrorKind::ParseError, "bad root of unity '" + std::string(text) + "'");
  return RootOfUnity(to_int64(j.get_num()), to_int64(m.get_num()));
}

RootOfUnity RootOfUnity::operator*(const RootOfUnity& o) const {
  std::int64_t m = lcm64(m_, o.m_);
  return RootOfUnity(j_ * (m / m_) + o.j_ * (m / o.m_), m);
}

RootOfUnity RootOfUnity::pow(std::int64_t e) const {
  std::int64_t r = e % m_;
  if (r < 0) r += m_;
  return RootOfUnity((j_ * r) % m_, m_);
}

std::complex<double> RootOfUnity::value() const {
  return std::polar(1.0, kTwoPi * static_cast<double>(j_) / static_cast<double>(m_));
}

std::string RootOfUnity::to_string() const { return std::to_string(j_) + "/" + std::to_string(m_); }

// --------------------------------------------------------- RationalPolynomial

RationalPolynomial::RationalPolynomial(std::vector<Rational> coeffs) : c_(std::move(coeffs)) {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Rational RationalPolynomial::operator()(const Rational& x) const {
  Rational acc(0);
  for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
  return acc;
}

RationalPolynomial RationalPolynomial::shifted(const Rational& a) const {
  // sum c_i (x + a)^i
  std::vector<Rational> out(c_.size(), Rational(0));
  for (std::size_t i = 0; i < c_.size(); ++i) {
    for (std::size_t t = 0; t <= i; ++t)
      out[t] += c_[i] * binomial(Rational(static_cast<long>(i)), static_cast<unsigned>(t)) *
                power(a, static_cast<unsigned>(i - t));
  }
  return RationalPolynomial(std::move(out));
}

RationalPolynomial operator-(const RationalPolynomial& a, const RationalPolynomial& b) {
  std::vector<Rational> out(std::max(a.c_.size(), b.c_.size()), Rational(0));
  for (std::size_t i = 0; i < a.c_.size(); ++i) out[i] += a.c_[i];
  for (std::size_t i = 0; i < b.c_.size(); ++i) out[i] -= b.c_[i];
  return RationalPolynomial(std::move(out));
}

// ------------------------------------------------------------------ Bernoulli

Rational bernoulli_number(unsigned r) {
  std::vector<Rational> b{Rational(1)};
  for (unsigned n = 1; n <= r; ++n) {
    Rational acc(0);
    for (unsigned k = 0; k < n; ++k) acc += binomial(Rational(n + 1), k) * b[k];
    b.push_back(-acc / (n + 1));
  }
  return b[r];
}

RationalPolynomial bernoulli_polynomial(unsigned r) {
  std::vector<Rational> b{Rational(1)};
  for (unsigned n = 1; n <= r; ++n) {
    Rational acc(0);
    for (unsigned k = 0; k < n; ++k) acc += binomial(Rational(n + 1), k) * b[k];
    b.push_back(-acc / (n + 1));
  }
  // B_r(x) = sum_k binom(r, k) B_k x^{r-k}
  std::vector<Rational> c(r + 1, Rational(0));
  for (unsigned k = 0; k <= r; ++k) c[r - k] = binomial(Rational(r), k) * b[k];
  return RationalPolynomial(std::move(c));
}

// ------------------------------------------------------------------ Eisenstein

QSeries eisenstein_E(int k, std::int64_t order) {
  if (k < 2 || k % 2 != 0) throw Error(ErrorKind::InvalidWeight, "E_k needs even k >= 2, got " + std::to_string(k));
  if (order < 0) throw Error(ErrorKind::InvalidArgument, "order must be nonnegative");
  std::vector<CycloScalar> c(static_cast<std::size_t>(order) + 1);
  c[0] = CycloScalar(-bernoulli_number(static_cast<unsigned>(k)) / factorial(static_cast<unsigned>(k)));
  const Rational scale = Rational(2) / factorial(static_cast<unsigned>(k - 1));
  for (std::int64_t n = 1; n <= order; ++n) {
    Integer sigma = 0;
    for (std::int64_t d = 1; d <= n; ++d) {
      if (n % d != 0) continue;
      Integer p;
      mpz_ui_pow_ui(p.get_mpz_t(), static_cast<unsigned long>(d), static_cast<unsigned long>(k - 1));
      sigma += p;
    }
    c[static_cast<std::size_t>(n)] = CycloScalar(scale * Rational(sigma));
  }
  return QSeries(Rational(0), 1, std::move(c), order);
}

std::complex<double> eisenstein_G_lattice(int k, const EvalPoint& p, int cutoff) {
  if (k == 2) throw Error(ErrorKind::NotAbsolutelyConvergent, "the G_2 lattice sum is not absolutely convergent");
  if (k < 4 || k % 2 != 0) throw Error(ErrorKind::InvalidWeight, "G_k lattice sum needs even k >= 4");
  if (cutoff < 10) throw Error(ErrorKind::InvalidArgument, "lattice cutoff must be at least 10");
  return kernels::lattice_sum(k, p.tau(), cutoff);
}

// ------------------------------------------------------------------------ Q_k

QSeries q_series_Q(int k, const RootOfUnity& mu, const RootOfUnity& lambda, std::int64_t order) {
  if (k < 0) throw Error(ErrorKind::InvalidWeight, "Q_k needs k >= 0");
  if (order < 0) throw Error(ErrorKind::InvalidArgument, "order must be nonnegative");
  const std::int64_t d = mu.order();
  const std::int64_t j = mu.numerator();
  const std::int64_t top = order * d;
  if (k == 0) return QSeries(Rational(0), d, {CycloScalar(-1L)}, top);
  if (is_trivial_pair(mu, lambda))
    throw Error(ErrorKind::UndefinedAtTrivialPair, "Q_k for k >= 1 is undefined at (mu, lambda) = (1, 1)");

  std::vector<CycloScalar> c(static_cast<std::size_t>(top) + 1);
  const auto lam_pow = powers_of(lambda);
  const auto lam_inv_pow = powers_of(lambda.inverse());
  const std::int64_t lam_order = lambda.order();
  const Rational inv_fact = 1 / factorial(static_cast<unsigned>(k - 1));

  // lambda sum_{n>=0} (n + j/M)^{k-1} q^{n+j/M} / (1 - lambda q^{n+j/M})
  for (std::int64_t n = 0;; ++n) {
    const std::int64_t e_idx = n * d + j;
    if (e_idx > top) break;
    const Rational e(e_idx, d);
    if (e_idx == 0) {
      // (n + j/M)^{k-1} = 1 at n = 0, j = 0, k = 1; zero for k >= 2.
      if (k == 1) {
        CycloScalar lam = lambda.scalar();
        c[0] += lam * (CycloScalar(1L) - lam).inverse();
      }
      continue;
    }
    const Rational w = power_km1(e, k) * inv_fact;
    for (std::int64_t s = 1; e_idx * s <= top; ++s)
      c[static_cast<std::size_t>(e_idx * s)].add_scaled(w, lam_pow[static_cast<std::size_t>(s % lam_order)]);
  }
  // (-1)^k lambda^{-1} sum_{n>=1} (n - j/M)^{k-1} q^{n-j/M} / (1 - lambda^{-1} q^{n-j/M})
  const Rational sign = (k % 2 == 0) ? Rational(1) : Rational(-1);
  for (std::int64_t n = 1;; ++n) {
    const std::int64_t e_idx = n * d - j;
    if (e_idx > top) break;
    const Rational e(e_idx, d);
    const Rational w = sign * power_km1(e, k) * inv_fact;
    for (std::int64_t s = 1; e_idx * s <= top; ++s)
      c[static_cast<std::size_t>(e_idx * s)].add_scaled(w, lam_inv_pow[static_cast<std::size_t>(s % lam_order)]);
  }
  c[0] -= CycloScalar(bernoulli_polynomial(static_cast<unsigned>(k))(mu.fraction()) /
                      factorial(static_cast<unsigned>(k)));
  return QSeries(Rational(0), d, std::move(c), top);
}

// ----------------------------------------------------------------------- Pbar

PbarWindow pbar_window(int k, const RootOfUnity& mu, const RootOfUnity& lambda, std::int64_t window,
                       std::int64_t order) {
  if (k < 0) throw Error(ErrorKind::InvalidWeight, "Pbar_k needs k >= 0");
  if (window < 1) throw Error(ErrorKind::InvalidArgument, "window must be positive");
  if (order < 0) throw Error(ErrorKind::InvalidArgument, "order must be nonnegative");
  PbarWindow out{mu, lambda, k, window, order, {}};
  if (k == 0) return out;

  const std::int64_t d = mu.order();
  const std::int64_t top = order * d;
  const auto lam_pow = powers_of(lambda);
  const auto lam_inv_pow = powers_of(lambda.inverse());
  const std::int64_t lam_order = lambda.order();
  const Rational inv_fact = 1 / factorial(static_cast<unsigned>(k - 1));
  const Rational frac = mu.fraction();

  const std::int64_t lo = ceil_div(Rational(-window) - frac);
  const std::int64_t hi = floor_div(Rational(window) - frac);
  for (std::int64_t m = lo; m <= hi; ++m) {
    const Rational n = Rational(m) + frac;
    std::vector<CycloScalar> c(static_cast<std::size_t>(top) + 1);
    if (n == 0) {
      if (is_trivial_pair(mu, lambda)) continue;
      CycloScalar lam = lambda.scalar();
      CycloScalar v = (CycloScalar(1L) - lam).inverse();
      v *= power_km1(n, k) * inv_fact;
      c[0] = v;
    } else if (n > 0) {
      // n^{k-1}/(k-1)! sum_{s>=0} lambda^s q^{ns}
      const Rational w = power_km1(n, k) * inv_fact;
      const std::int64_t n_idx = to_int64(Rational(n * d).get_num());
      for (std::int64_t s = 0; n_idx * s <= top; ++s)
        c[static_cast<std::size_t>(n_idx * s)].add_scaled(w, lam_pow[static_cast<std::size_t>(s % lam_order)]);
    } else {
      // -n^{k-1}/(k-1)! sum_{s>=1} lambda^{-s} q^{-ns}
      const Rational w = -power_km1(n, k) * inv_fact;
      const std::int64_t n_idx = to_int64(Rational(-n * d).get_num());
      for (std::int64_t s = 1; n_idx * s <= top; ++s)
        c[static_cast<std::size_t>(n_idx * s)].add_scaled(w, lam_inv_pow[static_cast<std::size_t>(s % lam_order)]);
    }
    out.entries.emplace(m, QSeries(Rational(0), d, std::move(c), top));
  }
  return out;
}

// ------------------------------------------------------------------------ P_k

std::complex<double> p_eval(int k, const RootOfUnity& mu, const RootOfUnity& lambda, std::complex<double> z,
                            const EvalPoint& p, int cutoff) {
  if (k < 1) throw Error(ErrorKind::InvalidWeight, "P_k needs k >= 1");
  const std::complex<double> tau = p.tau();
  if (!(z.imag() > 0.0 && z.imag() < tau.imag()))
    throw Error(ErrorKind::OutsideConvergenceRegion, "need |q_tau| < |q_z| < 1");
  const std::complex<double> two_pi_i(0.0, kTwoPi);
  const std::complex<double> lam = lambda.value();
  const std::complex<double> lam_inv = 1.0 / lam;
  const double frac = mu.fraction().get_d();
  const bool trivial = is_trivial_pair(mu, lambda);

  std::complex<double> sum = 0.0;
  const std::int64_t lo = ceil_div(Rational(-cutoff) - mu.fraction());
  const std::int64_t hi = floor_div(Rational(cutoff) - mu.fraction());
  for (std::int64_t m = lo; m <= hi; ++m) {
    const double n = static_cast<double>(m) + frac;
    const bool zero = (m == 0 && mu.is_one());
    if (zero) {
      if (trivial) continue;
      if (k == 1) sum += 1.0 / (1.0 - lam);
      continue;
    }
    const double nk = std::pow(n, k - 1);
    if (n > 0) {
      sum += nk * std::exp(two_pi_i * n * z) / (1.0 - lam * std::exp(two_pi_i * n * tau));
    } else {
      // 1/(1 - lambda q^n) = -lambda^{-1} q^{-n} / (1 - lambda^{-1} q^{-n})
      sum += -lam_inv * nk * std::exp(two_pi_i * n * (z - tau)) / (1.0 - lam_inv * std::exp(-two_pi_i * n * tau));
    }
  }
  return sum / std::tgamma(static_cast<double>(k));
}

// ----------------------------------------------------------- residue identity

VerificationReport check_prop_2_3(int k, std::int64_t m, const RootOfUnity& mu, const RootOfUnity& lambda,
                                  std::int64_t window, std::int64_t order) {
  if (is_trivial_pair(mu, lambda))
    throw Error(ErrorKind::UndefinedAtTrivialPair, "the residue identity needs (mu, lambda) != (1, 1)");
  const std::int64_t abs_m = m < 0 ? -m : m;
  if (window <= order + abs_m + 1)
    throw Error(ErrorKind::WindowTooSmall,
                "window " + std::to_string(window) + " must exceed order + |m| + 1 = " + std::to_string(order + abs_m + 1));

  const Rational frac = mu.fraction();
  QSeries lhs = q_series_Q(k, mu, lambda, order) +
                QSeries::constant(CycloScalar(bernoulli_polynomial(static_cast<unsigned>(k))(Rational(1 - m) + frac) /
                                              factorial(static_cast<unsigned>(k))));

  // Res_z of the two expansions picks z^n with n <= j/M - m from Pbar(z1/z)
  // and n > j/M - m, weighted by lambda q^n, from Pbar(z1 q / z).
  const PbarWindow pbar = pbar_window(k, mu, lambda, window, order + abs_m + 1);
  const CycloScalar lam = lambda.scalar();
  QSeries rhs;
  for (const auto& [key, entry] : pbar.entries) {
    if (key <= -m) rhs = rhs + entry;
    else rhs = rhs + entry.scaled(lam).shifted(pbar.exponent(key));
  }
  rhs = rhs.is_exact() ? rhs : rhs.truncated_at(Rational(order));

  VerificationReport report;
  std::ostringstream label;
  label << "prop-2-3 k=" << k << " m=" << m << " mu=" << mu.to_string() << " lambda=" << lambda.to_string();
  report.label = label.str();
  report.mode = VerificationReport::Mode::exact;
  report.pass = (lhs == rhs);
  if (!report.pass) {
    QSeries diff = lhs - rhs;
    if (auto v = diff.valuation_index())
      report.detail = "first mismatch at q^" + format_rational(diff.exponent_of(*v));
  }
  return report;
}

// ------------------------------------------------------------------------ eta

Rational EtaQuotientSpec::q_offset() const {
  Rational total(0);
  for (const auto& f : factors) total += f.scale * f.power / 24;
  return total;
}

std::int64_t EtaQuotientSpec::lattice_denominator() const {
  std::int64_t d = 1;
  for (const auto& f : factors) d = lcm64(d, to_int64(f.scale.get_den()));
  return d;
}

QSeries eta_series(std::int64_t order) {
  EtaQuotientSpec spec;
  spec.factors.push_back({Rational(1), 1});
  return eta_quotient(spec, order);
}

QSeries eta_quotient(const EtaQuotientSpec& spec, std::int64_t order) {
  if (order < 0) throw Error(ErrorKind::InvalidArgument, "order must be nonnegative");
  for (const auto& f : spec.factors)
    if (f.scale <= 0) throw Error(ErrorKind::InvalidFactor, "eta scale must be positive");
  const Rational offset = spec.q_offset();
  if (spec.prefactor.is_zero()) return QSeries(offset, 1, {}, order);

  QSeries acc = QSeries(Rational(0), 1, {spec.prefactor}, order);
  for (const auto& f : spec.factors) {
    if (f.power == 0) continue;
    const int reps = f.power < 0 ? -f.power : f.power;
    std::vector<BinomialFactor> factors;
    for (std::int64_t n = 1; f.scale * n <= order; ++n)
      for (int r = 0; r < reps; ++r) factors.push_back({CycloScalar(-1L), f.scale * n});
    QSeries part = product_expand(factors, Rational(order));
    if (f.power < 0) part = series_invert(part);
    acc = acc * part;
  }
  return acc.shifted(offset);
}

EtaLawReports check_eta_laws(const EvalPoint& p, double tol) {
  const QSeries eta = eta_series(60);
  auto eta_at = [&](std::complex<double> t) { return series_eval(eta, EvalPoint(t)).value; };
  const std::complex<double> tau = p.tau();
  const std::complex<double> i(0.0, 1.0);

  EtaLawReports out;
  auto fill = [&](VerificationReport& r, const std::string& label, std::complex<double> lhs, std::complex<double> rhs) {
    r.label = label;
    r.mode = VerificationReport::Mode::numeric;
    r.constant = lhs / rhs;
    r.residual = std::abs(lhs - rhs);
    r.tolerance = tol;
    r.samples = {tau};
    r.pass = r.residual < tol;
  };

  fill(out.s_law, "eta S-law", eta_at(-1.0 / tau), std::sqrt(-i * tau) * eta_at(tau));
  const std::complex<double> t_ratio = eta_at(tau + 1.0) / eta_at(tau);
  fill(out.t_law, "eta T-law", t_ratio, std::polar(1.0, std::numbers::pi / 12.0));
  out.t_law.constant = t_ratio;

  const std::complex<double> e = eta_at(tau);
  const std::complex<double> half_lhs = eta_at((tau + 1.0) / 2.0);
  const std::complex<double> half_rhs = e * e * e / (eta_at(tau / 2.0) * eta_at(2.0 * tau));
  fill(out.half_shift, "eta half-shift", half_lhs, half_rhs);
  out.half_shift_ratio = half_lhs / half_rhs;
  return out;
}

}  // namespace orbtrace
