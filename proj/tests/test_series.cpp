#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "orbtrace/cyclo.hpp"
#include "orbtrace/error.hpp"
#include "orbtrace/qseries.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace orbtrace;

namespace {

QSeries poly(std::vector<long> c, std::int64_t trunc = QSeries::kExact, Rational offset = 0, std::int64_t d = 1) {
  std::vector<CycloScalar> v;
  for (long x : c) v.emplace_back(x);
  return QSeries(offset, d, std::move(v), trunc);
}

QSeries geometric(std::int64_t n) { return poly(std::vector<long>(static_cast<std::size_t>(n) + 1, 1), n); }

QSeries random_series(std::mt19937& rng, std::int64_t trunc, std::int64_t level) {
  std::uniform_int_distribution<int> coeff(-4, 4), root(0, static_cast<int>(level) - 1), den(1, 3);
  std::vector<CycloScalar> v;
  for (std::int64_t k = 0; k <= trunc; ++k) {
    Rational r(coeff(rng), den(rng));
    r.canonicalize();
    v.push_back(CycloScalar::root(root(rng), level) * CycloScalar(r));
  }
  Rational offset(coeff(rng), 2);
  offset.canonicalize();
  return QSeries(offset, 2, std::move(v), trunc);
}

}  // namespace

TEST_CASE("cyclotomic relations hold exactly") {
  for (std::int64_t level : {1, 2, 3, 4, 5, 6, 8, 12, 15}) {
    CHECK(CycloScalar::root(level, level) == CycloScalar(1L));
    CHECK(CycloScalar::root(1, level) * CycloScalar::root(level - 1, level) == CycloScalar(1L));
  }
  for (std::int64_t p : {2, 3, 5, 7, 11}) {
    CycloScalar s;
    for (std::int64_t a = 0; a < p; ++a) s += CycloScalar::root(a, p);
    CHECK(s.is_zero());
  }
  // zeta_4 = zeta_8^2 across levels
  CHECK(CycloScalar::root(1, 4) == CycloScalar::root(2, 8));
  CHECK(CycloScalar::root(1, 2) == CycloScalar(-1L));
}

TEST_CASE("cyclotomic inversion and rational round trip") {
  const Rational r(-7, 3);
  CHECK(CycloScalar(r).is_rational());
  CHECK(CycloScalar(r).rational_part() == r);
  const CycloScalar x = CycloScalar(2L) + CycloScalar::root(1, 5) - CycloScalar::root(3, 5) * CycloScalar(Rational(1, 4));
  CHECK(x * x.inverse() == CycloScalar(1L));
  CHECK_THROWS_AS(CycloScalar().inverse(), Error);
  const auto v = CycloScalar::root(1, 12).evaluate();
  CHECK(std::abs(v - std::polar(1.0, std::numbers::pi / 6)) < 1e-14);
}

TEST_CASE("series_add: cancellation, identity, truncation contract") {
  CHECK(poly({1, 1}) + poly({2, -1}) == poly({3}));
  const QSeries f = poly({1, 2, 3}, 5);
  CHECK(QSeries() + f == f);
  const QSeries s = poly({1, 1, 1, 1, 1, 1}, 5) + poly({1, 1, 1, 1}, 3);
  CHECK(s.truncation() == 3);
}

TEST_CASE("series_mul: exponent addition, geometric inverse, partitions") {
  const QSeries half = QSeries::monomial(CycloScalar(1L), Rational(1, 2));
  const QSeries q = half * half;
  CHECK(q == QSeries::monomial(CycloScalar(1L), Rational(1)));
  CHECK(q.offset() == 1);

  CHECK(poly({1, -1}) * geometric(12) == poly({1}, 12));

  std::vector<BinomialFactor> euler;
  for (int n = 1; n <= 5; ++n) euler.push_back({CycloScalar(-1L), Rational(n)});
  const QSeries inv = series_invert(product_expand(euler, Rational(5)));
  for (int n = 0; n <= 5; ++n) CHECK(inv.coefficient(n) == CycloScalar(Rational(oracle::partitions(n))));
}

TEST_CASE("series_invert") {
  CHECK(series_invert(poly({1, -1}, 10)) == geometric(10));
  const QSeries x = QSeries(Rational(0), 2, {CycloScalar(1L), CycloScalar(1L)}, 8);
  const QSeries inv = series_invert(x);
  for (int k = 0; k <= 8; ++k) CHECK(inv.coefficient(k) == CycloScalar(k % 2 == 0 ? 1L : -1L));
  CHECK(inv.step_denominator() == 2);

  const QSeries zero = QSeries(Rational(-1, 24), 1, {CycloScalar(), CycloScalar()}, 5);
  try {
    (void)series_invert(zero);
    FAIL("expected NotInvertible");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotInvertible);
  }
  const QSeries shifted = poly({3, 1, 4}, 6, Rational(1, 3));
  CHECK(series_invert(shifted).offset() == Rational(-1, 3));
}

TEST_CASE("series_eval") {
  const EvalPoint i(0.0, 1.0);
  CHECK(std::abs(QSeries::constant(CycloScalar(Rational(5, 2))).evaluate(i).value - 2.5) < 1e-15);
  CHECK(std::abs(QSeries::monomial(CycloScalar(1L), 1).evaluate(i).value - std::exp(-2 * std::numbers::pi)) < 1e-15);
  const auto g = geometric(40).evaluate(i);
  CHECK(std::abs(g.value - 1.0 / (1.0 - std::exp(-2 * std::numbers::pi))) < 1e-14);
  CHECK(g.tail_bound > 0.0);
  CHECK(g.tail_bound < 1e-100);
  try {
    (void)EvalPoint(1.0, 0.0);
    FAIL("expected OutsideUpperHalfPlane");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::OutsideUpperHalfPlane);
  }
}

TEST_CASE("product_expand") {
  const QSeries single = product_expand({{CycloScalar(1L), Rational(1, 2)}}, Rational(3));
  CHECK(single == (QSeries(Rational(0), 2, {CycloScalar(1L), CycloScalar(1L)}, 6)));

  std::vector<BinomialFactor> minus, plus, even;
  for (int n = 1; n <= 10; ++n) {
    minus.push_back({CycloScalar(-1L), Rational(n)});
    plus.push_back({CycloScalar(1L), Rational(n)});
    even.push_back({CycloScalar(-1L), Rational(2 * n)});
  }
  const QSeries p = product_expand(minus, Rational(10));
  const long pentagonal[] = {1, -1, -1, 0, 0, 1};
  for (int k = 0; k < 6; ++k) CHECK(p.coefficient(k) == CycloScalar(pentagonal[k]));

  // Euler: prod (1 + q^n) = prod (1 - q^{2n}) / prod (1 - q^n); both sides
  // also count partitions into distinct parts.
  const QSeries lhs = product_expand(plus, Rational(10));
  const QSeries rhs = product_expand(even, Rational(10)) * series_invert(p);
  CHECK(lhs == rhs);
  for (int n = 0; n <= 10; ++n)
    CHECK(lhs.coefficient(n) == CycloScalar(Rational(oracle::distinct_partitions_bounded(n, n))));

  try {
    (void)product_expand({{CycloScalar(1L), Rational(0)}}, Rational(3));
    FAIL("expected InvalidFactor");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InvalidFactor);
  }
  // factors beyond the order are ignored
  CHECK(product_expand({{CycloScalar(1L), Rational(7)}}, Rational(3)) == poly({1}, 3));
}

TEST_CASE("ring laws hold on random series") {
  std::mt19937 rng(20240601);
  for (int trial = 0; trial < 20; ++trial) {
    const QSeries a = random_series(rng, 6, 3), b = random_series(rng, 5, 4), c = random_series(rng, 7, 6);
    CHECK(a + b == b + a);
    CHECK(a * b == b * a);
    CHECK((a + b) + c == a + (b + c));
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
  }
}

TEST_CASE("invert is a two-sided inverse") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    QSeries a = random_series(rng, 8, 5);
    if (a.coefficient(0).is_zero()) continue;
    const QSeries one = QSeries::constant(CycloScalar(1L));
    CHECK(a * series_invert(a) == one);
    CHECK(series_invert(a) * a == one);
  }
}

TEST_CASE("refinement is conservative") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 10; ++trial) {
    const QSeries a = random_series(rng, 6, 4);
    const QSeries r = a.refined(3);
    CHECK(r == a);
    CHECK(r.step_denominator() == 3 * a.step_denominator());
    for (std::int64_t k = 0; k <= 6; ++k) CHECK(r.coefficient(3 * k) == a.coefficient(k));
  }
}

TEST_CASE("numeric evaluation is multiplicative on exact series") {
  std::mt19937 rng(3);
  const EvalPoint tau(0.2, 1.1);
  for (int trial = 0; trial < 20; ++trial) {
    const QSeries ta = random_series(rng, 10, 3), tb = random_series(rng, 10, 4);
    const QSeries a(ta.offset(), ta.step_denominator(), ta.coefficients());
    const QSeries b(tb.offset(), tb.step_denominator(), tb.coefficients());
    const auto va = a.evaluate(tau), vb = b.evaluate(tau), vab = (a * b).evaluate(tau);
    CHECK(vab.tail_bound == 0.0);
    CHECK(std::abs(vab.value - va.value * vb.value) <= 1e-12 * (1.0 + std::abs(va.value * vb.value)));
  }
}

TEST_CASE("canonical JSON round trip") {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 5; ++trial) {
    const QSeries a = random_series(rng, 6, 12);
    const QSeries back = series_from_json(to_json(a));
    CHECK(back == a);
    CHECK(back.truncation() == a.truncation());
    CHECK(back.offset() == a.offset());
  }
  const QSeries exact_series = poly({1, 0, -2}, QSeries::kExact, Rational(-1, 48), 2);
  const auto j = to_json(exact_series);
  CHECK(j.at("offset") == "-1/48");
  CHECK(j.at("truncation") == "exact");
  CHECK(series_from_json(j).is_exact());
  CHECK_THROWS_AS(series_from_json(nlohmann::json::parse(R"({"offset": 1})")), Error);
}
