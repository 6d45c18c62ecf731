#include "orbtrace/rational.hpp"

#include "orbtrace/error.hpp"

#include <limits>
#include <numeric>

namespace orbtrace {

namespace {

bool is_integer_literal(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i)
    if (s[i] < '0' || s[i] > '9') return false;
  return true;
}

Integer parse_integer(std::string_view s) {
  if (!is_integer_literal(s)) throw Error(ErrorKind::ParseError, "bad integer '" + std::string(s) + "'");
  if (s[0] == '+') s.remove_prefix(1);
  return Integer(std::string(s), 10);
}

}  // namespace

Rational parse_rational(std::string_view text) {
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_integer(text));
  Integer num = parse_integer(text.substr(0, slash));
  Integer den = parse_integer(text.substr(slash + 1));
  if (den == 0) throw Error(ErrorKind::ParseError, "zero denominator in '" + std::string(text) + "'");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

std::string format_rational(const Rational& r) { return r.get_str(); }

std::int64_t to_int64(const Integer& z) {
  if (!z.fits_slong_p()) throw Error(ErrorKind::InvalidArgument, "integer out of range: " + z.get_str());
  return z.get_si();
}

std::int64_t gcd64(std::int64_t a, std::int64_t b) { return std::gcd(a, b); }

std::int64_t lcm64(std::int64_t a, std::int64_t b) {
  if (a == 0 || b == 0) return 0;
  std::int64_t g = std::gcd(a, b);
  std::int64_t q = a / g;
  if (q > std::numeric_limits<std::int64_t>::max() / (b < 0 ? -b : b))
    throw Error(ErrorKind::InvalidArgument, "lcm overflow");
  return std::abs(q * b);
}

Rational power(const Rational& x, unsigned e) {
  Rational out(1);
  mpz_pow_ui(out.get_num_mpz_t(), x.get_num_mpz_t(), e);
  mpz_pow_ui(out.get_den_mpz_t(), x.get_den_mpz_t(), e);
  return out;
}

Rational factorial(unsigned n) {
  Integer f;
  mpz_fac_ui(f.get_mpz_t(), n);
  return Rational(f);
}

Rational binomial(const Rational& top, unsigned k) {
  Rational num(1);
  for (unsigned t = 0; t < k; ++t) num *= top - t;
  return num / factorial(k);
}

}  // namespace orbtrace
