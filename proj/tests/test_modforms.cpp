#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "orbtrace/error.hpp"
#include "orbtrace/modforms.hpp"

#include <cmath>
#include <numbers>

using namespace orbtrace;

namespace {

template <class F>
ErrorKind error_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error raised");
  return ErrorKind::InvalidArgument;
}

const RootOfUnity kOne(0, 1);
const RootOfUnity kMinus(1, 2);

Rational q(long a, long b) {
  Rational r(a, b);
  r.canonicalize();
  return r;
}

}  // namespace

TEST_CASE("RootOfUnity is stored reduced and compares by value") {
  CHECK(RootOfUnity(2, 4) == RootOfUnity(1, 2));
  CHECK(RootOfUnity(-1, 3) == RootOfUnity(2, 3));
  CHECK(RootOfUnity(5, 5).is_one());
  CHECK(RootOfUnity::parse("3/6") == RootOfUnity(1, 2));
  CHECK(RootOfUnity(1, 3) * RootOfUnity(1, 6) == RootOfUnity(1, 2));
  CHECK(RootOfUnity(1, 4).inverse() == RootOfUnity(3, 4));
  CHECK(error_of([] { (void)RootOfUnity::parse("1/0"); }) == ErrorKind::ParseError);
}

TEST_CASE("Bernoulli polynomials") {
  CHECK(bernoulli_polynomial(0) == RationalPolynomial({Rational(1)}));
  CHECK(bernoulli_polynomial(1) == RationalPolynomial({q(-1, 2), Rational(1)}));
  CHECK(bernoulli_polynomial(2) == RationalPolynomial({q(1, 6), Rational(-1), Rational(1)}));
  CHECK(bernoulli_polynomial(3) == RationalPolynomial({Rational(0), q(1, 2), q(-3, 2), Rational(1)}));
  for (unsigned r = 0; r <= 16; ++r) {
    CHECK(bernoulli_polynomial(r) == RationalPolynomial(oracle::bernoulli_polynomial(r)));
    CHECK(bernoulli_polynomial(r).degree() == static_cast<int>(r));
  }
  CHECK(bernoulli_number(4) == q(-1, 30));
  CHECK(bernoulli_number(1) == q(-1, 2));
}

TEST_CASE("Bernoulli difference identity") {
  for (unsigned r = 1; r <= 12; ++r) {
    const auto b = bernoulli_polynomial(r);
    std::vector<Rational> expect(r, Rational(0));
    expect[r - 1] = Rational(static_cast<long>(r));
    CHECK((b.shifted(Rational(1)) - b) == RationalPolynomial(expect));
  }
}

TEST_CASE("Eisenstein series coefficients") {
  const QSeries e2 = eisenstein_E(2, 6);
  CHECK(e2.coefficient(0) == CycloScalar(q(-1, 12)));
  CHECK(e2.coefficient(1) == CycloScalar(2L));
  CHECK(e2.coefficient(2) == CycloScalar(6L));
  CHECK(eisenstein_E(4, 3).coefficient(0) == CycloScalar(q(1, 720)));
  for (int k : {4, 6, 8, 10}) {
    const QSeries e = eisenstein_E(k, 12);
    const Rational lead = 2 / factorial(static_cast<unsigned>(k - 1));
    for (int n = 1; n <= 12; ++n) CHECK(e.coefficient(n) == CycloScalar(lead * Rational(oracle::sigma(k - 1, n))));
  }
  CHECK(error_of([] { (void)eisenstein_E(3, 4); }) == ErrorKind::InvalidWeight);
  CHECK(error_of([] { (void)eisenstein_E(0, 4); }) == ErrorKind::InvalidWeight);
}

TEST_CASE("lattice sums against the q-expansion") {
  const EvalPoint i(0.0, 1.0);
  for (int k : {4, 6, 8}) {
    const auto lattice = eisenstein_G_lattice(k, i, 200);
    const auto series = std::pow(std::complex<double>(0.0, 2 * std::numbers::pi), k) * eisenstein_E(k, 40).evaluate(i).value;
    CHECK(std::abs(lattice - series) < 1e-4);
  }
  // off the symmetric point as well
  const EvalPoint p(0.2, 1.3);
  const auto lattice = eisenstein_G_lattice(4, p, 200);
  const auto series = std::pow(std::complex<double>(0.0, 2 * std::numbers::pi), 4) * eisenstein_E(4, 40).evaluate(p).value;
  CHECK(std::abs(lattice - series) < 1e-4);

  CHECK(error_of([&] { (void)eisenstein_G_lattice(2, i, 50); }) == ErrorKind::NotAbsolutelyConvergent);
  CHECK(error_of([&] { (void)eisenstein_G_lattice(5, i, 50); }) == ErrorKind::InvalidWeight);
  CHECK(error_of([&] { (void)eisenstein_G_lattice(4, i, 5); }) == ErrorKind::InvalidArgument);
}

TEST_CASE("odd-weight lattice sums cancel pairwise") {
  // The library refuses odd k; the symmetry itself is checked on the raw sum.
  std::complex<double> s = 0.0;
  const std::complex<double> tau(0.1, 1.2);
  for (int m1 = -20; m1 <= 20; ++m1)
    for (int m2 = -20; m2 <= 20; ++m2)
      if (m1 != 0 || m2 != 0) s += 1.0 / std::pow(static_cast<double>(m1) * tau + static_cast<double>(m2), 5);
  CHECK(std::abs(s) < 1e-12);
}

TEST_CASE("Q_k examples") {
  CHECK(q_series_Q(0, kOne, kMinus, 4) == QSeries::constant(CycloScalar(-1L)));
  CHECK(q_series_Q(0, RootOfUnity(1, 3), RootOfUnity(1, 5), 4) == QSeries::constant(CycloScalar(-1L)));

  const QSeries q2 = q_series_Q(2, kOne, kMinus, 6);
  CHECK(q2.coefficient(0) == CycloScalar(q(-1, 12)));
  CHECK(q2.coefficient(1) == CycloScalar(-2L));
  CHECK(q2.coefficient(2) == CycloScalar(-2L));
  CHECK(q2.coefficient(3) == CycloScalar(-8L));

  CHECK(error_of([] { (void)q_series_Q(1, kOne, kOne, 4); }) == ErrorKind::UndefinedAtTrivialPair);
  // The two sums of Q_1(1, -1) cancel against the n = 0 term and B_1(0).
  CHECK(q_series_Q(1, kOne, kMinus, 10).is_zero());
}

TEST_CASE("Q_k series against direct summation") {
  struct Case {
    int k, j, m, a, n;
  };
  const Case cases[] = {{1, 0, 1, 1, 2}, {2, 0, 1, 1, 2}, {2, 1, 2, 0, 1}, {3, 1, 2, 1, 2}, {4, 1, 3, 1, 4},
                        {1, 1, 4, 0, 1}, {2, 2, 5, 1, 3}, {5, 1, 2, 1, 3}, {6, 0, 1, 1, 2}};
  for (const EvalPoint tau : {EvalPoint(0.0, 2.0), EvalPoint(0.3, 1.0)}) {
    for (const auto& c : cases) {
      const QSeries s = q_series_Q(c.k, RootOfUnity(c.j, c.m), RootOfUnity(c.a, c.n), 60);
      const auto direct = oracle::q_direct(c.k, c.j, c.m, c.a, c.n, tau.tau(), 50);
      INFO("k=" << c.k << " mu=" << c.j << "/" << c.m << " lambda=" << c.a << "/" << c.n);
      CHECK(std::abs(s.evaluate(tau).value - direct) < 1e-9);
    }
  }
}

TEST_CASE("Q_k coefficients stay in the expected cyclotomic field") {
  const QSeries s = q_series_Q(3, RootOfUnity(1, 3), RootOfUnity(1, 4), 10);
  CHECK(12 % s.level() == 0);
  CHECK(s.step_denominator() == 3);
}

TEST_CASE("Pbar windows") {
  CHECK(pbar_window(0, kOne, kMinus, 5, 5).is_zero());

  const PbarWindow w = pbar_window(1, kOne, kMinus, 4, 6);
  const QSeries& z1 = w.entries.at(1);
  for (int s = 0; s <= 6; ++s) CHECK(z1.coefficient(s) == CycloScalar(s % 2 == 0 ? 1L : -1L));
  CHECK(w.entries.count(0) == 1);

  const PbarWindow trivial = pbar_window(2, kOne, kOne, 4, 6);
  CHECK(trivial.entries.count(0) == 0);
  CHECK(trivial.entries.count(1) == 1);
  CHECK(trivial.entries.count(-1) == 1);

  // n < 0 entries are -n^{k-1}/(k-1)! sum_{s>=1} lambda^{-s} q^{-ns}
  const PbarWindow w3 = pbar_window(3, kOne, RootOfUnity(1, 3), 3, 8);
  const QSeries& neg = w3.entries.at(-2);
  CHECK(neg.coefficient(0).is_zero());
  CHECK(neg.coefficient(2) == CycloScalar::root(2, 3) * CycloScalar(-2L));
  CHECK(neg.coefficient(4) == CycloScalar::root(1, 3) * CycloScalar(-2L));
}

TEST_CASE("P_k evaluation against direct summation") {
  const EvalPoint tau(0.0, 2.0);
  const std::complex<double> z(0.1, 0.9);
  for (int k : {1, 2, 3}) {
    const auto fast = p_eval(k, kOne, kMinus, z, tau, 60);
    const auto direct = oracle::p_direct(k, 0, 1, 1, 2, z, tau.tau(), 40);
    CHECK(std::abs(fast - direct) < 1e-8);
  }
  const auto fast = p_eval(2, RootOfUnity(1, 3), RootOfUnity(1, 4), z, tau, 80);
  CHECK(std::abs(fast - oracle::p_direct(2, 1, 3, 1, 4, z, tau.tau(), 40)) < 1e-8);

  CHECK(error_of([&] { (void)p_eval(1, kOne, kMinus, {0.1, 2.5}, tau, 60); }) == ErrorKind::OutsideConvergenceRegion);
  CHECK(error_of([&] { (void)p_eval(1, kOne, kMinus, {0.1, -0.5}, tau, 60); }) == ErrorKind::OutsideConvergenceRegion);
}

TEST_CASE("residue identity") {
  const auto zero = check_prop_2_3(0, 0, kOne, kMinus, 12, 8);
  CHECK(zero.pass);
  const auto r = check_prop_2_3(2, 0, kOne, kMinus, 12, 8);
  CHECK(r.pass);
  CHECK(r.mode == VerificationReport::Mode::exact);
  for (int k = 0; k <= 4; ++k)
    for (int m = -2; m <= 2; ++m)
      for (const auto& [mu, la] : {std::pair{kOne, kMinus}, std::pair{kMinus, kOne}, std::pair{kMinus, kMinus}})
        CHECK(check_prop_2_3(k, m, mu, la, 8 + std::abs(m) + 2, 8).pass);
  // beyond order-2 roots
  CHECK(check_prop_2_3(3, 1, RootOfUnity(1, 3), RootOfUnity(1, 4), 12, 8).pass);

  CHECK(error_of([] { (void)check_prop_2_3(2, 0, kOne, kOne, 12, 8); }) == ErrorKind::UndefinedAtTrivialPair);
  CHECK(error_of([] { (void)check_prop_2_3(2, 1, kOne, kMinus, 10, 8); }) == ErrorKind::WindowTooSmall);
}

TEST_CASE("eta series and quotients") {
  const QSeries eta = eta_series(10);
  CHECK(eta.offset() == q(1, 24));
  const long expect[] = {1, -1, -1, 0, 0, 1};
  for (int k = 0; k < 6; ++k) CHECK(eta.coefficient(k) == CycloScalar(expect[k]));

  EtaQuotientSpec identity;
  identity.factors = {{Rational(1), 1}};
  CHECK(eta_quotient(identity, 10) == eta);

  // eta(2 tau)/eta(tau) = q^{1/24} prod (1 + q^n)
  EtaQuotientSpec ratio;
  ratio.factors = {{Rational(2), 1}, {Rational(1), -1}};
  const QSeries lhs = eta_quotient(ratio, 10);
  CHECK(lhs.offset() == q(1, 24));
  for (int n = 0; n <= 10; ++n)
    CHECK(lhs.coefficient_at(q(1, 24) + n) == CycloScalar(Rational(oracle::distinct_partitions_bounded(n, n))));
  CHECK(ratio.q_offset() == q(1, 24));

  EtaQuotientSpec bad;
  bad.factors = {{Rational(-1), 1}};
  CHECK(error_of([&] { (void)eta_quotient(bad, 5); }) == ErrorKind::InvalidFactor);
}

TEST_CASE("eta transformation laws") {
  const auto at_i = check_eta_laws(EvalPoint(0.0, 1.0));
  CHECK(at_i.s_law.pass);
  CHECK(std::abs(at_i.s_law.constant - 1.0) < 1e-12);
  for (const EvalPoint tau : {EvalPoint(0.0, 2.0), EvalPoint(0.0, 3.0), EvalPoint(0.4, 1.5)}) {
    const auto laws = check_eta_laws(tau);
    CHECK(laws.s_law.pass);
    CHECK(laws.t_law.pass);
    CHECK(std::abs(laws.t_law.constant - std::polar(1.0, std::numbers::pi / 12)) < 1e-10);
    // The literal half-shift identity is off by a constant phase of e^{i pi/24}.
    CHECK_FALSE(laws.half_shift.pass);
    CHECK(std::abs(laws.half_shift_ratio - std::polar(1.0, std::numbers::pi / 24)) < 1e-10);
  }
}
