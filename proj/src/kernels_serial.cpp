#include "orbtrace/error.hpp"
#include "orbtrace/kernels.hpp"

namespace orbtrace::kernels::serial {

std::vector<CycloScalar> cauchy_product(std::span<const CycloScalar> a, std::span<const CycloScalar> b,
                                        std::size_t n_out) {
  std::vector<CycloScalar> out(n_out);
  for (std::size_t i = 0; i < a.size() && i < n_out; ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.size() && i + j < n_out; ++j) {
      if (b[j].is_zero()) continue;
      out[i + j] += a[i] * b[j];
    }
  }
  return out;
}

void multiply_binomial(std::vector<CycloScalar>& coeffs, std::size_t shift, const CycloScalar& scalar) {
  // Top-down so every read sees the pre-update value.
  for (std::size_t i = coeffs.size(); i-- > shift;) {
    if (coeffs[i - shift].is_zero()) continue;
    coeffs[i] += coeffs[i - shift] * scalar;
  }
}

std::complex<double> lattice_sum(int k, std::complex<double> tau, int cutoff) {
  std::complex<double> total = 0.0;
  for (int m1 = -cutoff; m1 <= cutoff; ++m1) {
    std::complex<double> row = 0.0;
    for (int m2 = -cutoff; m2 <= cutoff; ++m2) {
      if (m1 == 0 && m2 == 0) continue;
      std::complex<double> w = static_cast<double>(m1) * tau + static_cast<double>(m2);
      std::complex<double> p = 1.0;
      for (int t = 0; t < k; ++t) p *= w;
      row += 1.0 / p;
    }
    total += row;
  }
  return total;
}

namespace {

struct Walker {
  std::span<const ExteriorGenerator> gens;
  StateCounts& out;
  std::uint64_t budget;

  void visit(std::size_t next, std::int64_t energy, std::int64_t phase) {
    if (++out.states > budget) throw Error(ErrorKind::BudgetExceeded, "state enumeration budget exhausted");
    ++out.counts[static_cast<std::size_t>(energy * out.level + phase)];
    for (std::size_t i = next; i < gens.size(); ++i) {
      std::int64_t e = energy + gens[i].energy;
      if (e > out.max_energy) break;
      visit(i + 1, e, (phase + gens[i].phase) % out.level);
    }
  }
};

}  // namespace

StateCounts enumerate_states(std::span<const ExteriorGenerator> gens, std::int64_t max_energy,
                             std::int64_t level, std::uint64_t budget) {
  StateCounts out{max_energy, level, std::vector<std::int64_t>(static_cast<std::size_t>((max_energy + 1) * level), 0), 0};
  Walker{gens, out, budget}.visit(0, 0, 0);
  return out;
}

}  // namespace orbtrace::kernels::serial
