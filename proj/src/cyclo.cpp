#include "orbtrace/cyclo.hpp"

#include "orbtrace/error.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <sstream>

namespace orbtrace {

namespace {

using Poly = std::vector<Rational>;

void trim(Poly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

// Exact division of integer polynomials with monic divisor.
std::vector<std::int64_t> divide_monic(std::vector<std::int64_t> num, const std::vector<std::int64_t>& den) {
  const std::size_t dn = den.size() - 1;
  std::vector<std::int64_t> quot(num.size() - dn, 0);
  for (std::size_t i = num.size(); i-- > dn;) {
    std::int64_t c = num[i];
    quot[i - dn] = c;
    if (c == 0) continue;
    for (std::size_t t = 0; t <= dn; ++t) num[i - dn + t] -= c * den[t];
  }
  return quot;
}

// Reduces p in place modulo the monic integer polynomial m; result has size deg(m).
void reduce_mod(Poly& p, const std::vector<std::int64_t>& m) {
  const std::size_t d = m.size() - 1;
  for (std::size_t i = p.size(); i-- > d;) {
    if (p[i] == 0) continue;
    Rational c = p[i];
    for (std::size_t t = 0; t <= d; ++t)
      if (m[t] != 0) p[i - d + t] -= c * m[t];
  }
  p.resize(d);
}

void divmod(const Poly& a, const Poly& b, Poly& q, Poly& r) {
  r = a;
  trim(r);
  q.assign(r.size() >= b.size() ? r.size() - b.size() + 1 : 0, Rational(0));
  const Rational& lead = b.back();
  while (!r.empty() && r.size() >= b.size()) {
    std::size_t shift = r.size() - b.size();
    Rational c = r.back() / lead;
    q[shift] = c;
    for (std::size_t t = 0; t < b.size(); ++t) r[shift + t] -= c * b[t];
    trim(r);
  }
}

Poly poly_mul(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly out(a.size() + b.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

Poly poly_sub(Poly a, const Poly& b) {
  if (a.size() < b.size()) a.resize(b.size(), Rational(0));
  for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
  trim(a);
  return a;
}

}  // namespace

std::int64_t euler_phi(std::int64_t n) {
  std::int64_t result = n;
  for (std::int64_t p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    while (n % p == 0) n /= p;
    result -= result / p;
  }
  if (n > 1) result -= result / n;
  return result;
}

const std::vector<std::int64_t>& cyclotomic_polynomial(std::int64_t level) {
  if (level < 1) throw Error(ErrorKind::InvalidArgument, "cyclotomic level must be positive");
  static std::mutex mutex;
  static std::map<std::int64_t, std::unique_ptr<std::vector<std::int64_t>>> cache;
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find(level); it != cache.end()) return *it->second;
  }
  // x^L - 1 divided by Phi_d for every proper divisor d.
  std::vector<std::int64_t> p(static_cast<std::size_t>(level) + 1, 0);
  p[0] = -1;
  p[static_cast<std::size_t>(level)] = 1;
  for (std::int64_t d = 1; d < level; ++d)
    if (level % d == 0) p = divide_monic(p, cyclotomic_polynomial(d));
  std::lock_guard lock(mutex);
  auto& slot = cache[level];
  if (!slot) slot = std::make_unique<std::vector<std::int64_t>>(std::move(p));
  return *slot;
}

CycloScalar::CycloScalar() : level_(1), c_{Rational(0)} {}

CycloScalar::CycloScalar(const Rational& r) : level_(1), c_{r} {}

CycloScalar::CycloScalar(long r) : level_(1), c_{Rational(r)} {}

CycloScalar::CycloScalar(std::int64_t level, std::vector<Rational> coeffs)
    : level_(level), c_(std::move(coeffs)) {}

CycloScalar CycloScalar::root(std::int64_t j, std::int64_t level) {
  return from_terms(level, {{Rational(1), j}});
}

CycloScalar CycloScalar::from_terms(std::int64_t level,
                                    const std::vector<std::pair<Rational, std::int64_t>>& terms) {
  if (level < 1) throw Error(ErrorKind::InvalidArgument, "cyclotomic level must be positive");
  Poly p(static_cast<std::size_t>(level), Rational(0));
  for (const auto& [c, a] : terms) {
    std::int64_t e = ((a % level) + level) % level;
    p[static_cast<std::size_t>(e)] += c;
  }
  reduce_mod(p, cyclotomic_polynomial(level));
  return CycloScalar(level, std::move(p));
}

bool CycloScalar::is_zero() const {
  for (const auto& c : c_)
    if (c != 0) return false;
  return true;
}

bool CycloScalar::is_rational() const {
  for (std::size_t i = 1; i < c_.size(); ++i)
    if (c_[i] != 0) return false;
  return true;
}

Rational CycloScalar::rational_part() const { return c_.empty() ? Rational(0) : c_[0]; }

std::vector<std::pair<Rational, std::int64_t>> CycloScalar::terms() const {
  std::vector<std::pair<Rational, std::int64_t>> out;
  for (std::size_t i = 0; i < c_.size(); ++i)
    if (c_[i] != 0) out.emplace_back(c_[i], static_cast<std::int64_t>(i));
  return out;
}

void CycloScalar::lift_to(std::int64_t target) {
  if (target == level_) return;
  if (target % level_ != 0) throw Error(ErrorKind::InvalidArgument, "lift target must be a multiple of the level");
  const std::int64_t r = target / level_;
  Poly p(static_cast<std::size_t>(target), Rational(0));
  for (std::size_t i = 0; i < c_.size(); ++i)
    p[static_cast<std::size_t>((static_cast<std::int64_t>(i) * r) % target)] += c_[i];
  reduce_mod(p, cyclotomic_polynomial(target));
  level_ = target;
  c_ = std::move(p);
}

CycloScalar CycloScalar::lifted(std::int64_t target) const {
  CycloScalar out = *this;
  out.lift_to(target);
  return out;
}

CycloScalar& CycloScalar::operator+=(const CycloScalar& o) {
  if (o.level_ != level_) {
    std::int64_t l = lcm64(level_, o.level_);
    lift_to(l);
    if (o.level_ != l) return *this += o.lifted(l);
  }
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
  return *this;
}

CycloScalar& CycloScalar::operator-=(const CycloScalar& o) {
  if (o.level_ != level_) {
    std::int64_t l = lcm64(level_, o.level_);
    lift_to(l);
    if (o.level_ != l) return *this -= o.lifted(l);
  }
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
  return *this;
}

void CycloScalar::add_scaled(const Rational& r, const CycloScalar& x) {
  if (x.level_ != level_) {
    std::int64_t l = lcm64(level_, x.level_);
    lift_to(l);
    if (x.level_ != l) {
      add_scaled(r, x.lifted(l));
      return;
    }
  }
  for (std::size_t i = 0; i < c_.size(); ++i)
    if (x.c_[i] != 0) c_[i] += r * x.c_[i];
}

CycloScalar& CycloScalar::operator*=(const Rational& r) {
  for (auto& c : c_) c *= r;
  return *this;
}

CycloScalar& CycloScalar::operator*=(const CycloScalar& o) {
  if (o.level_ != level_) {
    std::int64_t l = lcm64(level_, o.level_);
    lift_to(l);
    if (o.level_ != l) return *this *= o.lifted(l);
  }
  if (c_.size() == 1) {
    c_[0] *= o.c_[0];
    return *this;
  }
  Poly p = poly_mul(c_, o.c_);
  if (p.empty()) p.assign(c_.size(), Rational(0));
  reduce_mod(p, cyclotomic_polynomial(level_));
  c_ = std::move(p);
  return *this;
}

CycloScalar CycloScalar::operator-() const {
  CycloScalar out = *this;
  for (auto& c : out.c_) c = -c;
  return out;
}

CycloScalar CycloScalar::inverse() const {
  if (is_zero()) throw Error(ErrorKind::NotInvertible, "zero has no inverse in Q(zeta)");
  if (c_.size() == 1) return CycloScalar(level_, {1 / c_[0]});
  // Extended Euclid: find u with u * a = 1 mod Phi_L.
  const auto& phi_int = cyclotomic_polynomial(level_);
  Poly m(phi_int.begin(), phi_int.end());
  Poly a = c_;
  trim(a);
  Poly r0 = m, r1 = a;
  Poly s0 = {}, s1 = {Rational(1)};
  while (!(r1.size() == 1)) {
    Poly q, r;
    divmod(r0, r1, q, r);
    Poly s = poly_sub(s0, poly_mul(q, s1));
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s);
  }
  Rational unit = r1[0];
  for (auto& c : s1) c /= unit;
  reduce_mod(s1, phi_int);
  if (s1.size() < c_.size()) s1.resize(c_.size(), Rational(0));
  return CycloScalar(level_, std::move(s1));
}

std::complex<double> CycloScalar::evaluate() const {
  std::complex<double> sum = 0.0;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    double angle = 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(level_);
    sum += c_[i].get_d() * std::polar(1.0, angle);
  }
  return sum;
}

std::string CycloScalar::to_string() const {
  auto t = terms();
  if (t.empty()) return "0";
  if (t.size() == 1 && t[0].second == 0) return format_rational(t[0].first);
  std::ostringstream os;
  os << "(";
  bool first = true;
  for (const auto& [c, a] : t) {
    if (!first) os << (c < 0 ? " - " : " + ");
    else if (c < 0) os << "-";
    Rational mag = abs(c);
    if (a == 0) {
      os << format_rational(mag);
    } else {
      if (mag != 1) os << format_rational(mag) << "*";
      os << "z" << level_;
      if (a != 1) os << "^" << a;
    }
    first = false;
  }
  os << ")";
  return os.str();
}

bool operator==(const CycloScalar& a, const CycloScalar& b) {
  if (a.level_ == b.level_) return a.c_ == b.c_;
  std::int64_t l = lcm64(a.level_, b.level_);
  return a.lifted(l).c_ == b.lifted(l).c_;
}

}  // namespace orbtrace
