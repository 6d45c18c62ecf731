#pragma once

// Twisted modules of the free-fermion superalgebra V(H, Z + 1/2), dim H = l
// even, described by their fermionic oscillators, and their graded traces
// tr phi(sigma y) q^{L(0) - c/24} on the sigma x-twisted module.

#include "orbtrace/modforms.hpp"
#include "orbtrace/qseries.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace orbtrace::fock {

enum class Automorphism { identity, sigma, g, g_sigma };

std::string_view to_string(Automorphism a);

/// Eigenvalue of each named automorphism on one generator.
using EigenAssignment = std::map<Automorphism, RootOfUnity>;

/// Generators replicated at energies start, start + step, start + 2 step, ...
struct OscillatorFamily {
  Rational start;
  Rational step;
  std::vector<EigenAssignment> generators;
};

struct FockModule {
  std::string name;
  std::vector<OscillatorFamily> families;
  std::vector<EigenAssignment> zero_modes;
  Rational conformal_weight;
  Rational central_charge;

  /// h - c/24
  Rational q_offset() const { return conformal_weight - central_charge / 24; }
};

/// Throws InvalidArgument when a structural invariant fails (nonpositive
/// family energy, empty family, sigma not acting as parity).
void validate(const FockModule& m);

/// The untwisted (Neveu-Schwarz) module V(H, Z + 1/2). g eigenvalues are
/// attached when l >= 4.
FockModule build_ns(int l);
/// V(H, Z), the sigma-twisted module, with l/2 zero modes.
FockModule build_sigma_twisted(int l);
/// The g sigma-twisted module M of conformal weight 1/8 (l >= 4).
FockModule build_g_sigma_twisted(int l);

/// q^{h - c/24} prod_{zero}(1 + e) prod_{levels <= order}(1 + e q^energy).
QSeries graded_trace_product(const FockModule& m, Automorphism aut, std::int64_t order);

inline constexpr std::uint64_t kDefaultStateBudget = 10'000'000;

/// Brute-force trace over all exterior-algebra basis states of energy <= weight.
QSeries graded_trace_enumerate(const FockModule& m, Automorphism aut, const Rational& weight,
                               std::uint64_t budget = kDefaultStateBudget);

/// Twist labels x, y of T(1, (x, y), tau).
enum class Twist { one, sigma, g, g_sigma };

std::string_view to_string(Twist t);
Twist parse_twist(std::string_view text);

struct TraceCase {
  Twist x;
  Twist y;
};

/// The seven supported pairs.
const std::vector<TraceCase>& supported_cases();
bool is_supported(Twist x, Twist y);

/// Module and operator realizing T(1, (x, y)); throws UnsupportedPair or InvalidDimension.
std::pair<FockModule, Automorphism> trace_realization(Twist x, Twist y, int l);

QSeries trace_gh(Twist x, Twist y, int l, std::int64_t order);

/// Closed-form eta quotient of T(1, (x, y)); zero prefactor for (1, 1).
EtaQuotientSpec reference_eta_quotient(Twist x, Twist y, int l);

/// Order of x; the trace is supported on (h - c/24) + (1/ord x) Z.
std::int64_t grading_period(Twist x);

}  // namespace orbtrace::fock
