#include "orbtrace/qseries.hpp"

#include "orbtrace/error.hpp"
#include "orbtrace/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace orbtrace {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::int64_t den64(const Rational& r) { return to_int64(r.get_den()); }

std::int64_t index_of(const Rational& scaled) {
  if (scaled.get_den() != 1) throw Error(ErrorKind::InvalidArgument, "exponent off the series lattice");
  return to_int64(scaled.get_num());
}

// Saturating index arithmetic for exact (infinite) truncations.
std::int64_t trunc_scale(std::int64_t n, std::int64_t factor) {
  if (n == QSeries::kExact) return n;
  return n * factor;
}

struct Aligned {
  Rational offset;
  std::int64_t denom;
};

Aligned common_lattice(const QSeries& a, const QSeries& b) {
  Rational diff = a.offset() - b.offset();
  std::int64_t d = lcm64(lcm64(a.step_denominator(), b.step_denominator()), den64(diff));
  return {a.offset() < b.offset() ? a.offset() : b.offset(), d};
}

// Re-expresses s on the lattice (offset, denom); offset must be <= s.offset().
std::vector<CycloScalar> place(const QSeries& s, const Rational& offset, std::int64_t denom, std::int64_t& shift,
                               std::int64_t& trunc) {
  const std::int64_t factor = denom / s.step_denominator();
  shift = index_of((s.offset() - offset) * denom);
  trunc = s.is_exact() ? QSeries::kExact : s.truncation() * factor + shift;
  std::vector<CycloScalar> out;
  if (s.stored() == 0) return out;
  out.resize(shift + (s.stored() - 1) * factor + 1);
  for (std::size_t k = 0; k < s.stored(); ++k) out[shift + k * factor] = s.coefficients()[k];
  return out;
}

}  // namespace

EvalPoint::EvalPoint(std::complex<double> tau) : tau_(tau) {
  if (!(tau.imag() > 0.0)) throw Error(ErrorKind::OutsideUpperHalfPlane, "Im(tau) must be positive");
}

std::complex<double> EvalPoint::q() const { return std::exp(std::complex<double>(0.0, kTwoPi) * tau_); }

QSeries::QSeries() : offset_(0) {}

QSeries::QSeries(Rational offset, std::int64_t step_denominator, std::vector<CycloScalar> coeffs,
                 std::int64_t truncation)
    : offset_(std::move(offset)), denom_(step_denominator), coeffs_(std::move(coeffs)), truncation_(truncation) {
  if (denom_ < 1) throw Error(ErrorKind::InvalidArgument, "step denominator must be positive");
  if (truncation_ < 0) throw Error(ErrorKind::InvalidArgument, "truncation must be nonnegative");
  normalize();
}

void QSeries::normalize() {
  if (is_exact()) {
    while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
  } else {
    coeffs_.resize(static_cast<std::size_t>(truncation_) + 1);
  }
  level_ = 1;
  for (const auto& c : coeffs_) level_ = lcm64(level_, c.level());
  for (auto& c : coeffs_)
    if (c.level() != level_) c = c.lifted(level_);
}

QSeries QSeries::constant(const CycloScalar& c) { return QSeries(Rational(0), 1, {c}); }

QSeries QSeries::monomial(const CycloScalar& c, const Rational& exponent) {
  return QSeries(exponent, 1, {c});
}

CycloScalar QSeries::coefficient(std::int64_t k) const {
  if (k < 0 || static_cast<std::size_t>(k) >= coeffs_.size()) return CycloScalar();
  return coeffs_[static_cast<std::size_t>(k)];
}

CycloScalar QSeries::coefficient_at(const Rational& exponent) const {
  Rational scaled = (exponent - offset_) * denom_;
  if (scaled.get_den() != 1 || scaled < 0) return CycloScalar();
  if (!is_exact() && scaled > truncation_)
    throw Error(ErrorKind::InvalidArgument, "exponent beyond truncation");
  return coefficient(to_int64(scaled.get_num()));
}

Rational QSeries::exponent_of(std::int64_t k) const {
  Rational step(k, denom_);
  step.canonicalize();
  return offset_ + step;
}

std::optional<Rational> QSeries::precision() const {
  if (is_exact()) return std::nullopt;
  return exponent_of(truncation_);
}

QSeries QSeries::refined(std::int64_t factor) const {
  if (factor < 1) throw Error(ErrorKind::InvalidArgument, "refinement factor must be positive");
  if (factor == 1) return *this;
  std::vector<CycloScalar> out;
  if (!coeffs_.empty()) {
    out.resize((coeffs_.size() - 1) * factor + 1);
    for (std::size_t k = 0; k < coeffs_.size(); ++k) out[k * factor] = coeffs_[k];
  }
  return QSeries(offset_, denom_ * factor, std::move(out), trunc_scale(truncation_, factor));
}

QSeries QSeries::truncated(std::int64_t n) const {
  if (n >= truncation_) return *this;
  std::vector<CycloScalar> out(coeffs_.begin(), coeffs_.begin() + std::min<std::size_t>(coeffs_.size(), n + 1));
  return QSeries(offset_, denom_, std::move(out), n);
}

QSeries QSeries::truncated_at(const Rational& exponent) const {
  Rational scaled = (exponent - offset_) * denom_;
  if (scaled < 0) throw Error(ErrorKind::InvalidArgument, "truncation exponent below the offset");
  Integer fl;
  mpz_fdiv_q(fl.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
  return truncated(to_int64(fl));
}

QSeries QSeries::shifted(const Rational& delta) const {
  return QSeries(offset_ + delta, denom_, coeffs_, truncation_);
}

QSeries QSeries::scaled(const CycloScalar& c) const {
  std::vector<CycloScalar> out = coeffs_;
  for (auto& x : out) x *= c;
  return QSeries(offset_, denom_, std::move(out), truncation_);
}

std::optional<std::int64_t> QSeries::valuation_index() const {
  for (std::size_t k = 0; k < coeffs_.size(); ++k)
    if (!coeffs_[k].is_zero()) return static_cast<std::int64_t>(k);
  return std::nullopt;
}

bool QSeries::is_zero() const { return !valuation_index().has_value(); }

QSeries operator+(const QSeries& a, const QSeries& b) {
  auto [offset, denom] = common_lattice(a, b);
  std::int64_t sa = 0, sb = 0, ta = 0, tb = 0;
  auto ca = place(a, offset, denom, sa, ta);
  auto cb = place(b, offset, denom, sb, tb);
  std::int64_t trunc = std::min(ta, tb);
  std::size_t n = std::max(ca.size(), cb.size());
  if (trunc != QSeries::kExact) n = std::min<std::size_t>(n, trunc + 1);
  std::vector<CycloScalar> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    if (k < ca.size()) out[k] += ca[k];
    if (k < cb.size()) out[k] += cb[k];
  }
  return QSeries(offset, denom, std::move(out), trunc);
}

QSeries QSeries::operator-() const { return scaled(CycloScalar(-1L)); }

QSeries operator-(const QSeries& a, const QSeries& b) { return a + (-b); }

QSeries operator*(const QSeries& a, const QSeries& b) {
  const std::int64_t denom = lcm64(a.step_denominator(), b.step_denominator());
  QSeries ra = a.refined(denom / a.step_denominator());
  QSeries rb = b.refined(denom / b.step_denominator());
  const std::int64_t trunc = std::min(ra.truncation(), rb.truncation());
  std::size_t n = 0;
  if (ra.stored() > 0 && rb.stored() > 0) n = ra.stored() + rb.stored() - 1;
  if (trunc != QSeries::kExact) n = std::min<std::size_t>(n, trunc + 1);
  auto out = kernels::cauchy_product(ra.coefficients(), rb.coefficients(), n);
  return QSeries(a.offset() + b.offset(), denom, std::move(out), trunc);
}

bool operator==(const QSeries& a, const QSeries& b) {
  auto [offset, denom] = common_lattice(a, b);
  std::int64_t sa = 0, sb = 0, ta = 0, tb = 0;
  auto ca = place(a, offset, denom, sa, ta);
  auto cb = place(b, offset, denom, sb, tb);
  std::int64_t trunc = std::min(ta, tb);
  std::size_t n = std::max(ca.size(), cb.size());
  if (trunc != QSeries::kExact) n = std::min<std::size_t>(n, trunc + 1);
  const CycloScalar zero;
  for (std::size_t k = 0; k < n; ++k) {
    const CycloScalar& x = k < ca.size() ? ca[k] : zero;
    const CycloScalar& y = k < cb.size() ? cb[k] : zero;
    if (!(x == y)) return false;
  }
  return true;
}

SeriesValue QSeries::evaluate(const EvalPoint& p) const {
  const std::complex<double> two_pi_i_tau = std::complex<double>(0.0, kTwoPi) * p.tau();
  const double base = offset_.get_d();
  const double step = 1.0 / static_cast<double>(denom_);
  SeriesValue out;
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    if (coeffs_[k].is_zero()) continue;
    double e = base + static_cast<double>(k) * step;
    out.value += coeffs_[k].evaluate() * std::exp(two_pi_i_tau * e);
  }
  if (!is_exact() && !coeffs_.empty()) {
    const double abs_q = std::exp(-kTwoPi * p.tau().imag());
    double c = 0.0;
    std::size_t from = coeffs_.size() - std::max<std::size_t>(1, coeffs_.size() / 4);
    for (std::size_t k = from; k < coeffs_.size(); ++k) c = std::max(c, std::abs(coeffs_[k].evaluate()));
    double next = base + static_cast<double>(truncation_ + 1) * step;
    out.tail_bound = c * std::pow(abs_q, next) / (1.0 - std::pow(abs_q, step));
  }
  return out;
}

std::string QSeries::to_text(std::size_t max_terms) const {
  std::ostringstream os;
  std::size_t shown = 0;
  for (std::size_t k = 0; k < coeffs_.size() && shown < max_terms; ++k) {
    if (coeffs_[k].is_zero()) continue;
    if (shown > 0) os << " + ";
    os << coeffs_[k].to_string();
    Rational e = exponent_of(static_cast<std::int64_t>(k));
    if (e != 0) os << "*q^(" << format_rational(e) << ")";
    ++shown;
  }
  if (shown == 0) os << "0";
  if (!is_exact()) os << " + O(q^(" << format_rational(exponent_of(truncation_ + 1)) << "))";
  else if (shown < static_cast<std::size_t>(std::count_if(coeffs_.begin(), coeffs_.end(),
                                                          [](const CycloScalar& c) { return !c.is_zero(); })))
    os << " + ...";
  return os.str();
}

QSeries series_add(const QSeries& a, const QSeries& b) { return a + b; }

QSeries series_mul(const QSeries& a, const QSeries& b) { return a * b; }

QSeries series_invert(const QSeries& a) {
  if (a.stored() == 0 || a.coefficients()[0].is_zero())
    throw Error(ErrorKind::NotInvertible, "leading coefficient is zero");
  const CycloScalar lead_inv = a.coefficients()[0].inverse();
  if (a.is_exact()) {
    if (a.stored() == 1) return QSeries(-a.offset(), a.step_denominator(), {lead_inv});
    throw Error(ErrorKind::InvalidArgument, "inverting a non-monomial exact series needs a finite truncation");
  }
  const std::size_t n = static_cast<std::size_t>(a.truncation()) + 1;
  const auto& c = a.coefficients();
  std::vector<CycloScalar> b(n);
  b[0] = lead_inv;
  for (std::size_t k = 1; k < n; ++k) {
    CycloScalar acc;
    for (std::size_t i = 1; i <= k && i < c.size(); ++i) {
      if (c[i].is_zero() || b[k - i].is_zero()) continue;
      acc += c[i] * b[k - i];
    }
    b[k] = -(acc * lead_inv);
  }
  return QSeries(-a.offset(), a.step_denominator(), std::move(b), a.truncation());
}

SeriesValue series_eval(const QSeries& a, const EvalPoint& p) { return a.evaluate(p); }

QSeries product_expand(const std::vector<BinomialFactor>& factors, const Rational& order) {
  if (order < 0) throw Error(ErrorKind::InvalidArgument, "order must be nonnegative");
  std::int64_t denom = 1;
  for (const auto& f : factors) {
    if (f.exponent <= 0) throw Error(ErrorKind::InvalidFactor, "factor exponent must be positive");
    if (f.exponent <= order) denom = lcm64(denom, den64(f.exponent));
  }
  Rational top = order * denom;
  Integer fl;
  mpz_fdiv_q(fl.get_mpz_t(), top.get_num_mpz_t(), top.get_den_mpz_t());
  const std::int64_t n = to_int64(fl);
  std::vector<CycloScalar> coeffs(static_cast<std::size_t>(n) + 1);
  coeffs[0] = CycloScalar(1L);
  for (const auto& f : factors) {
    if (f.exponent > order || f.scalar.is_zero()) continue;
    const std::int64_t shift = index_of(f.exponent * denom);
    kernels::multiply_binomial(coeffs, static_cast<std::size_t>(shift), f.scalar);
  }
  return QSeries(Rational(0), denom, std::move(coeffs), n);
}

nlohmann::json to_json(const QSeries& s) {
  nlohmann::json coeffs = nlohmann::json::array();
  for (const auto& c : s.coefficients()) {
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& [r, a] : c.terms())
      terms.push_back({{r.get_num().get_str(), r.get_den().get_str()}, a});
    coeffs.push_back(std::move(terms));
  }
  nlohmann::json j;
  j["offset"] = format_rational(s.offset());
  j["step_denominator"] = s.step_denominator();
  j["level"] = s.level();
  j["coefficients"] = std::move(coeffs);
  if (s.is_exact()) j["truncation"] = "exact";
  else j["truncation"] = s.truncation();
  return j;
}

QSeries series_from_json(const nlohmann::json& j) {
  try {
    Rational offset = parse_rational(j.at("offset").get<std::string>());
    auto denom = j.at("step_denominator").get<std::int64_t>();
    auto level = j.at("level").get<std::int64_t>();
    std::vector<CycloScalar> coeffs;
    for (const auto& c : j.at("coefficients")) {
      std::vector<std::pair<Rational, std::int64_t>> terms;
      for (const auto& t : c) {
        const auto& frac = t.at(0);
        Rational r = parse_rational(frac.at(0).get<std::string>() + "/" + frac.at(1).get<std::string>());
        terms.emplace_back(std::move(r), t.at(1).get<std::int64_t>());
      }
      coeffs.push_back(CycloScalar::from_terms(level, terms));
    }
    std::int64_t trunc = coeffs.empty() ? 0 : static_cast<std::int64_t>(coeffs.size()) - 1;
    if (auto it = j.find("truncation"); it != j.end()) {
      if (it->is_string()) {
        if (it->get<std::string>() != "exact") throw Error(ErrorKind::ParseError, "bad truncation");
        trunc = QSeries::kExact;
      } else {
        trunc = it->get<std::int64_t>();
      }
    } else if (coeffs.empty()) {
      trunc = QSeries::kExact;
    }
    QSeries s(std::move(offset), denom, std::move(coeffs), trunc);
    return s;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::ParseError, e.what());
  }
}

}  // namespace orbtrace
