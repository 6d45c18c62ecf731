#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "orbtrace/error.hpp"
#include "orbtrace/kernels.hpp"

#include <random>

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace orbtrace;

namespace {

std::vector<CycloScalar> random_coeffs(std::mt19937& rng, std::size_t n, std::int64_t level) {
  std::uniform_int_distribution<int> c(-9, 9), a(0, static_cast<int>(level) - 1);
  std::vector<CycloScalar> v;
  for (std::size_t i = 0; i < n; ++i) v.push_back(CycloScalar::root(a(rng), level) * CycloScalar(static_cast<long>(c(rng))));
  return v;
}

}  // namespace

TEST_CASE("parallel Cauchy product matches the serial reference") {
#ifdef _OPENMP
  omp_set_num_threads(4);
#endif
  std::mt19937 rng(1);
  for (std::size_t n : {1u, 17u, 300u}) {
    const auto a = random_coeffs(rng, n, 4), b = random_coeffs(rng, n + 3, 4);
    for (std::size_t out : {n, 2 * n + 2}) {
      const auto par = kernels::cauchy_product(a, b, out);
      const auto ser = kernels::serial::cauchy_product(a, b, out);
      REQUIRE(par.size() == ser.size());
      for (std::size_t k = 0; k < par.size(); ++k) CHECK(par[k] == ser[k]);
    }
  }
}

TEST_CASE("parallel binomial multiply matches the serial reference") {
  std::mt19937 rng(2);
  for (std::size_t n : {10u, 5000u}) {
    auto par = random_coeffs(rng, n, 3);
    auto ser = par;
    const CycloScalar s = CycloScalar::root(1, 3) * CycloScalar(-2L);
    for (std::size_t shift : {1u, 7u, 2500u}) {
      kernels::multiply_binomial(par, shift, s);
      kernels::serial::multiply_binomial(ser, shift, s);
    }
    for (std::size_t k = 0; k < n; ++k) CHECK(par[k] == ser[k]);
  }
}

TEST_CASE("parallel lattice sum is deterministic and matches serial") {
  const std::complex<double> tau(0.3, 1.1);
  const auto par = kernels::lattice_sum(4, tau, 60);
  const auto ser = kernels::serial::lattice_sum(4, tau, 60);
  CHECK(std::abs(par - ser) < 1e-12 * std::abs(ser));
  CHECK(par == kernels::lattice_sum(4, tau, 60));
}

TEST_CASE("parallel state enumeration matches serial DFS") {
  std::vector<kernels::ExteriorGenerator> gens;
  for (std::int64_t e = 0; e <= 6; ++e)
    for (std::int64_t g = 0; g < (e == 0 ? 2 : 4); ++g) gens.push_back({e, (e + g) % 4});
  const auto par = kernels::enumerate_states(gens, 6, 4, 10'000'000);
  const auto ser = kernels::serial::enumerate_states(gens, 6, 4, 10'000'000);
  CHECK(par.counts == ser.counts);
  CHECK(par.states == ser.states);

  try {
    (void)kernels::enumerate_states(gens, 6, 4, 100);
    FAIL("expected BudgetExceeded");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::BudgetExceeded);
  }
  try {
    (void)kernels::serial::enumerate_states(gens, 6, 4, 100);
    FAIL("expected BudgetExceeded");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::BudgetExceeded);
  }
}
