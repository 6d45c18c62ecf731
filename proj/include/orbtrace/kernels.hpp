#pragma once

// Data-parallel inner loops. Each kernel has an OpenMP version (namespace
// kernels) and a serial reference (namespace kernels::serial) with the same
// contract; tests check they agree and bench_kernels times them.

#include "orbtrace/cyclo.hpp"

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

namespace orbtrace::kernels {

/// First n_out coefficients of the Cauchy product of a and b.
std::vector<CycloScalar> cauchy_product(std::span<const CycloScalar> a, std::span<const CycloScalar> b,
                                        std::size_t n_out);

/// coeffs <- coeffs * (1 + scalar x^shift), truncated to coeffs.size(). shift > 0.
void multiply_binomial(std::vector<CycloScalar>& coeffs, std::size_t shift, const CycloScalar& scalar);

/// sum' 1/(m1 tau + m2)^k over 0 < max(|m1|,|m2|) <= cutoff. Rows are summed
/// independently and combined in row order, so the result does not depend on
/// the thread count.
std::complex<double> lattice_sum(int k, std::complex<double> tau, int cutoff);

/// A fermionic generator: energy in lattice units and eigenvalue zeta_L^phase.
struct ExteriorGenerator {
  std::int64_t energy = 0;
  std::int64_t phase = 0;
};

/// counts[e * level + a] = number of subsets of distinct generators with total
/// energy e whose eigenvalue product is zeta_level^a, for e <= max_energy.
struct StateCounts {
  std::int64_t max_energy = 0;
  std::int64_t level = 1;
  std::vector<std::int64_t> counts;
  std::uint64_t states = 0;
};

/// Throws BudgetExceeded when more than `budget` states are visited.
/// Generators must be sorted by energy.
StateCounts enumerate_states(std::span<const ExteriorGenerator> gens, std::int64_t max_energy,
                             std::int64_t level, std::uint64_t budget);

namespace serial {

std::vector<CycloScalar> cauchy_product(std::span<const CycloScalar> a, std::span<const CycloScalar> b,
                                        std::size_t n_out);
void multiply_binomial(std::vector<CycloScalar>& coeffs, std::size_t shift, const CycloScalar& scalar);
std::complex<double> lattice_sum(int k, std::complex<double> tau, int cutoff);
StateCounts enumerate_states(std::span<const ExteriorGenerator> gens, std::int64_t max_energy,
                             std::int64_t level, std::uint64_t budget);

}  // namespace serial

/// Threads OpenMP will use (1 when built without OpenMP).
int max_threads();

}  // namespace orbtrace::kernels
