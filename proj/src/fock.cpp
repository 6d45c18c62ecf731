#include "orbtrace/fock.hpp"

#include "orbtrace/error.hpp"
#include "orbtrace/kernels.hpp"

#include <algorithm>

namespace orbtrace::fock {

namespace {

const RootOfUnity kPlus(0, 1);
const RootOfUnity kMinus(1, 2);

EigenAssignment fermion(RootOfUnity g_value) {
  return {{Automorphism::identity, kPlus},
          {Automorphism::sigma, kMinus},
          {Automorphism::g, g_value},
          {Automorphism::g_sigma, g_value * kMinus}};
}

EigenAssignment parity_only() { return {{Automorphism::identity, kPlus}, {Automorphism::sigma, kMinus}}; }

void require_even(int l, int minimum) {
  if (l < minimum || l % 2 != 0)
    throw Error(ErrorKind::InvalidDimension,
                "dimension l must be even and >= " + std::to_string(minimum) + ", got " + std::to_string(l));
}

const RootOfUnity& eigen(const EigenAssignment& a, Automorphism aut) {
  auto it = a.find(aut);
  if (it == a.end())
    throw Error(ErrorKind::UnknownAutomorphism, "no eigenvalue assigned for " + std::string(to_string(aut)));
  return it->second;
}

std::int64_t floor_int(const Rational& r) {
  Integer fl;
  mpz_fdiv_q(fl.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return to_int64(fl);
}

}  // namespace

std::string_view to_string(Automorphism a) {
  switch (a) {
    case Automorphism::identity: return "identity";
    case Automorphism::sigma: return "sigma";
    case Automorphism::g: return "g";
    case Automorphism::g_sigma: return "gsigma";
  }
  return "?";
}

void validate(const FockModule& m) {
  for (const auto& f : m.families) {
    if (f.start <= 0 || f.step <= 0)
      throw Error(ErrorKind::InvalidArgument, m.name + ": family energies must be positive");
    if (f.generators.empty()) throw Error(ErrorKind::InvalidArgument, m.name + ": empty oscillator family");
  }
  auto check_parity = [&](const EigenAssignment& a) {
    auto id = a.find(Automorphism::identity);
    auto sg = a.find(Automorphism::sigma);
    if (id == a.end() || sg == a.end() || !(sg->second == id->second * kMinus))
      throw Error(ErrorKind::InvalidArgument, m.name + ": sigma must act as -1 times the identity eigenvalue");
  };
  for (const auto& f : m.families)
    for (const auto& a : f.generators) check_parity(a);
  for (const auto& a : m.zero_modes) check_parity(a);
}

FockModule build_ns(int l) {
  require_even(l, 2);
  FockModule m;
  m.name = "V(H,Z+1/2) l=" + std::to_string(l);
  OscillatorFamily fam{Rational(1, 2), Rational(1), {}};
  if (l >= 4) {
    // g sigma = -1 on the two-dimensional H^{1*}, +1 on H^{0*}.
    for (int t = 0; t < 2; ++t) fam.generators.push_back(fermion(kPlus));
    for (int t = 2; t < l; ++t) fam.generators.push_back(fermion(kMinus));
  } else {
    for (int t = 0; t < l; ++t) fam.generators.push_back(parity_only());
  }
  m.families.push_back(std::move(fam));
  m.conformal_weight = 0;
  m.central_charge = Rational(l, 2);
  m.central_charge.canonicalize();
  return m;
}

FockModule build_sigma_twisted(int l) {
  require_even(l, 2);
  FockModule m;
  m.name = "V(H,Z) l=" + std::to_string(l);
  OscillatorFamily fam{Rational(1), Rational(1), {}};
  for (int t = 0; t < l; ++t) fam.generators.push_back(parity_only());
  m.families.push_back(std::move(fam));
  for (int t = 0; t < l / 2; ++t) m.zero_modes.push_back(parity_only());
  m.conformal_weight = Rational(l, 16);
  m.conformal_weight.canonicalize();
  m.central_charge = Rational(l, 2);
  m.central_charge.canonicalize();
  return m;
}

FockModule build_g_sigma_twisted(int l) {
  require_even(l, 4);
  FockModule m;
  m.name = "M(g sigma) l=" + std::to_string(l);
  // (h1 - h2)(-n), n >= 1
  m.families.push_back({Rational(1), Rational(1), {fermion(kPlus)}});
  // (h1* - h2*)(-m), m >= 1; m = 0 is the zero mode below
  m.families.push_back({Rational(1), Rational(1), {fermion(kPlus)}});
  // h(-m - 1/2), h in H^1
  OscillatorFamily half{Rational(1, 2), Rational(1), {}};
  for (int t = 0; t < l - 2; ++t) half.generators.push_back(fermion(kMinus));
  m.families.push_back(std::move(half));
  m.zero_modes.push_back(fermion(kPlus));
  m.conformal_weight = Rational(1, 8);
  m.central_charge = Rational(l, 2);
  m.central_charge.canonicalize();
  return m;
}

QSeries graded_trace_product(const FockModule& m, Automorphism aut, std::int64_t order) {
  if (order < 0) throw Error(ErrorKind::InvalidArgument, "order must be nonnegative");
  CycloScalar zero_factor(1L);
  for (const auto& z : m.zero_modes) zero_factor *= CycloScalar(1L) + eigen(z, aut).scalar();

  std::vector<BinomialFactor> factors;
  for (const auto& f : m.families) {
    for (Rational e = f.start; e <= order; e += f.step)
      for (const auto& gen : f.generators) factors.push_back({eigen(gen, aut).scalar(), e});
  }
  // Energies past the order still need their eigenvalues checked.
  for (const auto& f : m.families)
    for (const auto& gen : f.generators) (void)eigen(gen, aut);

  std::int64_t denom = 1;
  for (const auto& f : m.families)
    denom = lcm64(denom, lcm64(to_int64(f.start.get_den()), to_int64(f.step.get_den())));
  QSeries body = product_expand(factors, Rational(order));
  if (body.step_denominator() != denom) body = body.refined(denom / body.step_denominator());
  return body.scaled(zero_factor).shifted(m.q_offset());
}

QSeries graded_trace_enumerate(const FockModule& m, Automorphism aut, const Rational& weight,
                               std::uint64_t budget) {
  if (weight < 0) throw Error(ErrorKind::InvalidArgument, "weight cutoff must be nonnegative");
  std::int64_t denom = 1;
  std::int64_t level = 1;
  for (const auto& f : m.families) {
    denom = lcm64(denom, lcm64(to_int64(f.start.get_den()), to_int64(f.step.get_den())));
    for (const auto& gen : f.generators) level = lcm64(level, eigen(gen, aut).order());
  }
  for (const auto& z : m.zero_modes) level = lcm64(level, eigen(z, aut).order());

  const std::int64_t max_energy = floor_int(weight * denom);
  std::vector<kernels::ExteriorGenerator> gens;
  auto phase_of = [&](const RootOfUnity& r) { return r.numerator() * (level / r.order()); };
  for (const auto& z : m.zero_modes) gens.push_back({0, phase_of(eigen(z, aut))});
  for (const auto& f : m.families) {
    for (Rational e = f.start; e <= weight; e += f.step) {
      const std::int64_t idx = to_int64(Rational(e * denom).get_num());
      for (const auto& gen : f.generators) gens.push_back({idx, phase_of(eigen(gen, aut))});
    }
  }
  std::stable_sort(gens.begin(), gens.end(), [](const auto& a, const auto& b) { return a.energy < b.energy; });

  const auto counts = kernels::enumerate_states(gens, max_energy, level, budget);
  std::vector<CycloScalar> coeffs(static_cast<std::size_t>(max_energy) + 1);
  for (std::int64_t e = 0; e <= max_energy; ++e) {
    std::vector<std::pair<Rational, std::int64_t>> terms;
    for (std::int64_t a = 0; a < level; ++a) {
      auto n = counts.counts[static_cast<std::size_t>(e * level + a)];
      if (n != 0) terms.emplace_back(Rational(static_cast<long>(n)), a);
    }
    coeffs[static_cast<std::size_t>(e)] = CycloScalar::from_terms(level, terms);
  }
  return QSeries(m.q_offset(), denom, std::move(coeffs), max_energy);
}

std::string_view to_string(Twist t) {
  switch (t) {
    case Twist::one: return "1";
    case Twist::sigma: return "sigma";
    case Twist::g: return "g";
    case Twist::g_sigma: return "gsigma";
  }
  return "?";
}

Twist parse_twist(std::string_view text) {
  if (text == "1") return Twist::one;
  if (text == "sigma") return Twist::sigma;
  if (text == "g") return Twist::g;
  if (text == "gsigma") return Twist::g_sigma;
  throw Error(ErrorKind::ParseError, "unknown twist '" + std::string(text) + "' (expected 1, sigma, g, gsigma)");
}

const std::vector<TraceCase>& supported_cases() {
  static const std::vector<TraceCase> cases = {
      {Twist::one, Twist::one},   {Twist::one, Twist::sigma}, {Twist::sigma, Twist::one},
      {Twist::sigma, Twist::sigma}, {Twist::g, Twist::sigma}, {Twist::sigma, Twist::g},
      {Twist::g, Twist::g_sigma},
  };
  return cases;
}

bool is_supported(Twist x, Twist y) {
  for (const auto& c : supported_cases())
    if (c.x == x && c.y == y) return true;
  return false;
}

namespace {

[[noreturn]] void unsupported(Twist x, Twist y) {
  throw Error(ErrorKind::UnsupportedPair,
              "T(1,(" + std::string(to_string(x)) + "," + std::string(to_string(y)) + ")) is not one of the seven cases");
}

}  // namespace

std::pair<FockModule, Automorphism> trace_realization(Twist x, Twist y, int l) {
  if (!is_supported(x, y)) unsupported(x, y);
  // The module is sigma x-twisted and the operator is phi(sigma y).
  switch (x) {
    case Twist::one:
      return {build_sigma_twisted(l), y == Twist::one ? Automorphism::sigma : Automorphism::identity};
    case Twist::sigma: {
      if (y == Twist::g) {
        require_even(l, 4);
        return {build_ns(l), Automorphism::g_sigma};
      }
      return {build_ns(l), y == Twist::one ? Automorphism::sigma : Automorphism::identity};
    }
    case Twist::g:
      return {build_g_sigma_twisted(l), y == Twist::sigma ? Automorphism::identity : Automorphism::g};
    case Twist::g_sigma: break;
  }
  unsupported(x, y);
}

QSeries trace_gh(Twist x, Twist y, int l, std::int64_t order) {
  auto [module, aut] = trace_realization(x, y, l);
  return graded_trace_product(module, aut, order);
}

EtaQuotientSpec reference_eta_quotient(Twist x, Twist y, int l) {
  if (!is_supported(x, y)) unsupported(x, y);
  const bool g_case = (x == Twist::g || y == Twist::g);
  require_even(l, g_case ? 4 : 2);
  const Rational one(1), two(2), half(1, 2);
  EtaQuotientSpec spec;
  if (x == Twist::one && y == Twist::one) {
    spec.prefactor = CycloScalar(0L);
  } else if (x == Twist::one && y == Twist::sigma) {
    Integer p;
    mpz_ui_pow_ui(p.get_mpz_t(), 2, static_cast<unsigned long>(l / 2));
    spec.prefactor = CycloScalar(Rational(p));
    spec.factors = {{two, l}, {one, -l}};
  } else if (x == Twist::sigma && y == Twist::one) {
    spec.factors = {{half, l}, {one, -l}};
  } else if (x == Twist::sigma && y == Twist::sigma) {
    spec.factors = {{one, 2 * l}, {half, -l}, {two, -l}};
  } else if (x == Twist::g && y == Twist::sigma) {
    spec.prefactor = CycloScalar(2L);
    spec.factors = {{one, 2 * l - 6}, {two, -(l - 4)}, {half, -(l - 2)}};
  } else if (x == Twist::sigma && y == Twist::g) {
    spec.factors = {{one, 2 * l - 6}, {half, -(l - 4)}, {two, -(l - 2)}};
  } else {
    spec.prefactor = CycloScalar(2L);
    spec.factors = {{two, 2}, {half, l - 2}, {one, -l}};
  }
  return spec;
}

std::int64_t grading_period(Twist x) { return x == Twist::one ? 1 : 2; }

}  // namespace orbtrace::fock
