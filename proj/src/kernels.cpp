#include "orbtrace/kernels.hpp"

#include "orbtrace/error.hpp"

#include <atomic>
#include <exception>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace orbtrace::kernels {

namespace {

// Below this many coefficient updates the fork/join cost dominates.
constexpr std::size_t kParallelThreshold = 4096;

}  // namespace

int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

std::vector<CycloScalar> cauchy_product(std::span<const CycloScalar> a, std::span<const CycloScalar> b,
                                        std::size_t n_out) {
  std::vector<CycloScalar> out(n_out);
  const auto n = static_cast<std::int64_t>(n_out);
  const auto na = static_cast<std::int64_t>(a.size());
  const auto nb = static_cast<std::int64_t>(b.size());
  // Each output index is an independent dot product.
#pragma omp parallel for schedule(dynamic, 16) if (n_out * (a.size() < b.size() ? a.size() : b.size()) > kParallelThreshold)
  for (std::int64_t k = 0; k < n; ++k) {
    CycloScalar acc;
    std::int64_t lo = k - nb + 1 > 0 ? k - nb + 1 : 0;
    std::int64_t hi = k < na - 1 ? k : na - 1;
    for (std::int64_t i = lo; i <= hi; ++i) {
      const auto& x = a[static_cast<std::size_t>(i)];
      const auto& y = b[static_cast<std::size_t>(k - i)];
      if (x.is_zero() || y.is_zero()) continue;
      acc += x * y;
    }
    out[static_cast<std::size_t>(k)] = std::move(acc);
  }
  return out;
}

void multiply_binomial(std::vector<CycloScalar>& coeffs, std::size_t shift, const CycloScalar& scalar) {
  if (shift >= coeffs.size()) return;
  if (coeffs.size() < kParallelThreshold) {
    serial::multiply_binomial(coeffs, shift, scalar);
    return;
  }
  const std::vector<CycloScalar> before(coeffs.begin(), coeffs.end() - static_cast<std::ptrdiff_t>(shift));
  const auto n = static_cast<std::int64_t>(coeffs.size());
  const auto s = static_cast<std::int64_t>(shift);
#pragma omp parallel for schedule(static)
  for (std::int64_t i = s; i < n; ++i) {
    const auto& src = before[static_cast<std::size_t>(i - s)];
    if (!src.is_zero()) coeffs[static_cast<std::size_t>(i)] += src * scalar;
  }
}

std::complex<double> lattice_sum(int k, std::complex<double> tau, int cutoff) {
  const int rows = 2 * cutoff + 1;
  std::vector<std::complex<double>> partial(static_cast<std::size_t>(rows));
#pragma omp parallel for schedule(static)
  for (int r = 0; r < rows; ++r) {
    const int m1 = r - cutoff;
    std::complex<double> row = 0.0;
    for (int m2 = -cutoff; m2 <= cutoff; ++m2) {
      if (m1 == 0 && m2 == 0) continue;
      std::complex<double> w = static_cast<double>(m1) * tau + static_cast<double>(m2);
      std::complex<double> p = 1.0;
      for (int t = 0; t < k; ++t) p *= w;
      row += 1.0 / p;
    }
    partial[static_cast<std::size_t>(r)] = row;
  }
  std::complex<double> total = 0.0;
  for (const auto& row : partial) total += row;
  return total;
}

namespace {

struct SharedBudget {
  std::atomic<std::uint64_t> used{0};
  std::uint64_t limit;
  std::atomic<bool> exceeded{false};
};

struct LocalWalker {
  std::span<const ExteriorGenerator> gens;
  std::int64_t max_energy;
  std::int64_t level;
  std::vector<std::int64_t>& counts;
  SharedBudget& budget;
  std::uint64_t pending = 0;

  void charge() {
    if (++pending < 1024) return;
    flush();
  }
  void flush() {
    if (budget.used.fetch_add(pending) + pending > budget.limit) budget.exceeded = true;
    pending = 0;
    if (budget.exceeded) throw Error(ErrorKind::BudgetExceeded, "state enumeration budget exhausted");
  }

  void visit(std::size_t next, std::int64_t energy, std::int64_t phase) {
    charge();
    ++counts[static_cast<std::size_t>(energy * level + phase)];
    for (std::size_t i = next; i < gens.size(); ++i) {
      std::int64_t e = energy + gens[i].energy;
      if (e > max_energy) break;
      visit(i + 1, e, (phase + gens[i].phase) % level);
    }
  }
};

}  // namespace

StateCounts enumerate_states(std::span<const ExteriorGenerator> gens, std::int64_t max_energy,
                             std::int64_t level, std::uint64_t budget) {
  const std::size_t table = static_cast<std::size_t>((max_energy + 1) * level);
  StateCounts out{max_energy, level, std::vector<std::int64_t>(table, 0), 0};
  // The empty state.
  out.counts[0] = 1;
  SharedBudget shared;
  shared.limit = budget;
  shared.used = 1;

  // Split by the lowest chosen generator: subtree i holds every state whose
  // first generator is gens[i].
  const auto n = static_cast<std::int64_t>(gens.size());
  std::vector<std::vector<std::int64_t>> local(gens.size());
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t i = 0; i < n; ++i) {
    const auto& g = gens[static_cast<std::size_t>(i)];
    if (g.energy > max_energy || shared.exceeded) continue;
    try {
      std::vector<std::int64_t> counts(table, 0);
      LocalWalker w{gens, max_energy, level, counts, shared};
      w.visit(static_cast<std::size_t>(i) + 1, g.energy, g.phase % level);
      w.flush();
      local[static_cast<std::size_t>(i)] = std::move(counts);
    } catch (...) {
#pragma omp critical(orbtrace_enumerate_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure || shared.used > budget) throw Error(ErrorKind::BudgetExceeded, "state enumeration budget exhausted");
  for (const auto& counts : local) {
    if (counts.empty()) continue;
    for (std::size_t t = 0; t < table; ++t) out.counts[t] += counts[t];
  }
  out.states = shared.used;
  return out;
}

}  // namespace orbtrace::kernels
