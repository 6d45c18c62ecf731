#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "orbtrace/error.hpp"
#include "orbtrace/sl2.hpp"

#include <cmath>
#include <numbers>

using namespace orbtrace;
using namespace orbtrace::sl2;
using fock::Twist;

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

SL2Matrix power(const SL2Matrix& g, int n) {
  SL2Matrix r = SL2Matrix::identity();
  for (int i = 0; i < n; ++i) r = r * g;
  return r;
}

}  // namespace

TEST_CASE("matrices and the Mobius action") {
  CHECK(error_of([] { (void)SL2Matrix(1, 1, 1, 1); }) == ErrorKind::InvalidArgument);
  const SL2Matrix s = SL2Matrix::S(), t = SL2Matrix::T();
  CHECK(power(s, 4) == SL2Matrix::identity());
  CHECK(power(s, 2) == SL2Matrix(-1, 0, 0, -1));
  const SL2Matrix st6 = power(s * t, 6);
  CHECK((st6 == SL2Matrix::identity() || st6 == SL2Matrix(-1, 0, 0, -1)));
  CHECK(t * t.inverse() == SL2Matrix::identity());
  CHECK(parse_matrix("1,-1,1,0") == t * s);
  CHECK(error_of([] { (void)parse_matrix("1,2,3"); }) == ErrorKind::ParseError);
  CHECK(error_of([] { (void)parse_matrix("a,b,c,d"); }) == ErrorKind::ParseError);
  CHECK(s.to_string() == "(0 -1; 1 0)");

  const EvalPoint tau(0.3, 1.7);
  CHECK(std::abs(mobius(s, tau).tau() + 1.0 / tau.tau()) < 1e-14);
  CHECK(std::abs(mobius(t, tau).tau() - (tau.tau() + 1.0)) < 1e-14);
  const SL2Matrix g(2, 1, 5, 3), h(1, -2, 1, -1);
  CHECK(std::abs(mobius(g * h, tau).tau() - mobius(g, mobius(h, tau)).tau()) < 1e-12);
  CHECK(std::abs(s.automorphy(tau.tau()) - tau.tau()) < 1e-15);
}

TEST_CASE("right action on root-of-unity pairs") {
  const RootOfUnity mu(1, 3), lambda(1, 4);
  const auto [a, b] = act_pair(mu, lambda, SL2Matrix::S());
  CHECK(a == lambda);
  CHECK(b == mu.inverse());
  const auto [c, d] = act_pair(mu, lambda, SL2Matrix::T());
  CHECK(c == mu);
  CHECK(d == mu * lambda);
  const SL2Matrix g(2, 1, 5, 3), h(1, -2, 1, -1);
  const auto [x, y] = act_pair(mu, lambda, g);
  CHECK(act_pair(x, y, h) == act_pair(mu, lambda, g * h));
}

TEST_CASE("action on twist pairs") {
  const auto gs = to_twist_pair(Twist::g, Twist::sigma);
  CHECK(from_twist_pair(act_twist(gs, SL2Matrix::T())) == std::pair{Twist::g, Twist::g_sigma});
  CHECK(from_twist_pair(act_twist(gs, SL2Matrix::S())) == std::pair{Twist::sigma, Twist::g});
  CHECK(from_twist_pair(act_twist(to_twist_pair(Twist::one, Twist::sigma), SL2Matrix::S())) ==
        std::pair{Twist::sigma, Twist::one});
  CHECK(from_twist_pair(act_twist(to_twist_pair(Twist::sigma, Twist::sigma), SL2Matrix::S())) ==
        std::pair{Twist::sigma, Twist::sigma});
  for (auto c : fock::supported_cases()) {
    const auto tp = to_twist_pair(c.x, c.y);
    CHECK(from_twist_pair(tp) == std::pair{c.x, c.y});
    CHECK(act_twist(tp, SL2Matrix::identity()) == tp.reduced());
    const SL2Matrix g(2, 1, 5, 3), h(1, -2, 1, -1);
    CHECK(act_twist(act_twist(tp, g), h) == act_twist(tp, g * h));
  }
}

TEST_CASE("congruence subgroup membership") {
  CHECK(in_gamma_theta(SL2Matrix::identity()));
  CHECK(in_gamma_theta(SL2Matrix::S()));
  CHECK_FALSE(in_gamma_theta(SL2Matrix::T()));
  CHECK(in_gamma_theta(power(SL2Matrix::T(), 2)));
  CHECK(in_gamma_theta(SL2Matrix(1, 2, 2, 5)));
  CHECK(in_gamma_TT1(SL2Matrix(1, 4, 0, 1), 4, 3));
  CHECK_FALSE(in_gamma_TT1(SL2Matrix(1, 2, 0, 1), 4, 3));
  CHECK(in_gamma_TT1(SL2Matrix(13, 4, 3, 1), 4, 3));
  CHECK_FALSE(in_gamma_TT1(SL2Matrix::S(), 4, 3));
}

TEST_CASE("transform_ratio on known forms") {
  const Function e4 = series_function(eisenstein_E(4, 60));
  const auto rep = transform_ratio(e4, e4, SL2Matrix::S(), 4, default_samples(), 1e-10, "E4 S");
  CHECK(rep.pass);
  CHECK(std::abs(rep.constant - 1.0) < 1e-10);

  const Function e6 = series_function(eisenstein_E(6, 60));
  CHECK(transform_ratio(e6, e6, SL2Matrix(1, 1, 1, 2), 6, default_samples(), 1e-9).pass);
  // wrong weight: the ratio is not constant
  CHECK_FALSE(transform_ratio(e4, e4, SL2Matrix::S(), 2, default_samples(), 1e-6).pass);

  const Function zero = [](const EvalPoint&) { return std::complex<double>(0.0); };
  CHECK(error_of([&] { (void)transform_ratio(e4, zero, SL2Matrix::S(), 4, default_samples(), 1e-8); }) ==
        ErrorKind::DegenerateSample);
  const std::vector<EvalPoint> two = {EvalPoint(0.0, 2.0), EvalPoint(0.0, 3.0)};
  CHECK(error_of([&] { (void)transform_ratio(e4, e4, SL2Matrix::S(), 4, two, 1e-8); }) ==
        ErrorKind::InvalidArgument);
  const std::vector<EvalPoint> close = {EvalPoint(0.0, 2.0), EvalPoint(0.0, 2.0001), EvalPoint(0.0, 3.0)};
  CHECK(error_of([&] { (void)transform_ratio(e4, e4, SL2Matrix::S(), 4, close, 1e-8); }) ==
        ErrorKind::InvalidArgument);
}

TEST_CASE("Q-series transformation helper") {
  for (int k : {2, 4}) {
    const auto rep = check_q_transform(k, RootOfUnity(1, 2), RootOfUnity(1, 2), SL2Matrix::S(), EvalPoint(0.0, 2.0));
    CHECK(rep.pass);
    CHECK(rep.residual < 1e-8);
    CHECK(check_q_transform(k, RootOfUnity(0, 1), RootOfUnity(1, 2), SL2Matrix::T(), EvalPoint(1.0, 2.0)).pass);
  }
  // pairing with the wrong image pair is detected
  const QSeries a = q_series_Q(2, RootOfUnity(0, 1), RootOfUnity(1, 2), 300);
  CHECK_FALSE(check_q_transform(a, a, 2, SL2Matrix::S(), EvalPoint(0.0, 2.0), 1e-8, "wrong").pass);
}

TEST_CASE("P transformation helper") {
  const auto rep =
      check_p_transform(1, RootOfUnity(0, 1), RootOfUnity(1, 2), SL2Matrix::T(), EvalPoint(0.0, 2.0), {-0.3, 1.2});
  CHECK(rep.pass);
  CHECK(error_of([] {
          (void)check_p_transform(1, RootOfUnity(0, 1), RootOfUnity(1, 2), SL2Matrix::S(), EvalPoint(0.0, 2.0),
                                  {0.1, 1.2});
        }) == ErrorKind::OutsideConvergenceRegion);
}

TEST_CASE("trace functions move between pairs with constant ratios") {
  const auto ratio = [](Twist x, Twist y, Twist x2, Twist y2, const SL2Matrix& g) {
    return transform_ratio(trace_function(x, y, 4), trace_function(x2, y2, 4), g, 0, default_samples(), 1e-8);
  };
  CHECK(ratio(Twist::one, Twist::sigma, Twist::sigma, Twist::one, SL2Matrix::S()).pass);
  CHECK(ratio(Twist::sigma, Twist::sigma, Twist::sigma, Twist::sigma, SL2Matrix::S()).pass);
  CHECK(ratio(Twist::sigma, Twist::one, Twist::sigma, Twist::sigma, SL2Matrix::T()).pass);
  CHECK(ratio(Twist::g, Twist::sigma, Twist::sigma, Twist::g, SL2Matrix::S()).pass);
  CHECK(ratio(Twist::g, Twist::sigma, Twist::g, Twist::g_sigma, SL2Matrix::T()).pass);
  // a pair that is not the image does not give a constant
  CHECK_FALSE(ratio(Twist::one, Twist::sigma, Twist::sigma, Twist::sigma, SL2Matrix::S()).pass);

  const auto t = ratio(Twist::one, Twist::sigma, Twist::one, Twist::sigma, SL2Matrix::T());
  CHECK(t.pass);
  CHECK(std::abs(t.constant - std::polar(1.0, std::numbers::pi / 3)) < 1e-8);
}
