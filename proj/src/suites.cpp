#include "orbtrace/suites.hpp"

#include "orbtrace/bracket.hpp"
#include "orbtrace/error.hpp"
#include "orbtrace/fock.hpp"
#include "orbtrace/modforms.hpp"
#include "orbtrace/sl2.hpp"

#include <chrono>
#include <cmath>
#include <map>
#include <numbers>
#include <sstream>
#include <tuple>

namespace orbtrace::suites {

namespace {

using fock::Twist;

constexpr std::int64_t kExactOrder = 10;
constexpr std::int64_t kNumericOrder = 60;

VerificationReport exact(std::string label, bool pass, std::string detail = {}) {
  VerificationReport r;
  r.label = std::move(label);
  r.mode = VerificationReport::Mode::exact;
  r.pass = pass;
  r.detail = std::move(detail);
  return r;
}

std::string pair_label(Twist x, Twist y) {
  return "T(1,(" + std::string(fock::to_string(x)) + "," + std::string(fock::to_string(y)) + "))";
}

// Exact equality of two series through exponent offset + order, requiring
// both to be known that far.
VerificationReport series_match(std::string label, const QSeries& a, const QSeries& b, const Rational& through) {
  for (const QSeries* s : {&a, &b}) {
    auto prec = s->precision();
    if (prec && *prec < through)
      return exact(std::move(label), false, "expansion stops at q^" + format_rational(*prec));
  }
  const QSeries diff = a - b;
  for (std::int64_t k = 0; k < static_cast<std::int64_t>(diff.stored()); ++k) {
    if (diff.exponent_of(k) > through) break;
    if (!diff.coefficient(k).is_zero())
      return exact(std::move(label), false, "first mismatch at q^" + format_rational(diff.exponent_of(k)));
  }
  return exact(std::move(label), true, "equal through q^" + format_rational(through));
}

// Every nonzero exponent lies in offset + (1/period) Z.
VerificationReport grading_check(std::string label, const QSeries& s, const Rational& offset, std::int64_t period) {
  for (std::int64_t k = 0; k < static_cast<std::int64_t>(s.stored()); ++k) {
    if (s.coefficient(k).is_zero()) continue;
    Rational step = (s.exponent_of(k) - offset) * period;
    if (step.get_den() != 1 || step < 0)
      return exact(std::move(label), false, "exponent q^" + format_rational(s.exponent_of(k)) + " off the lattice");
  }
  return exact(std::move(label), true);
}

std::vector<VerificationReport> trace_examples(const std::vector<fock::TraceCase>& cases, const std::vector<int>& dims) {
  std::vector<VerificationReport> out;
  for (int l : dims) {
    for (const auto& c : cases) {
      const QSeries trace = fock::trace_gh(c.x, c.y, l, kExactOrder);
      const auto spec = fock::reference_eta_quotient(c.x, c.y, l);
      const QSeries closed = eta_quotient(spec, kExactOrder);
      const Rational through = trace.offset() + kExactOrder;
      const std::string label = pair_label(c.x, c.y) + " l=" + std::to_string(l);
      if (spec.prefactor.is_zero()) {
        out.push_back(exact(label + " vanishes", trace.is_zero(), trace.is_zero() ? "" : trace.to_text(4)));
        continue;
      }
      out.push_back(series_match(label + " = eta quotient", trace, closed, through));
      auto [module, aut] = fock::trace_realization(c.x, c.y, l);
      out.push_back(grading_check(label + " grading", trace, module.q_offset(), fock::grading_period(c.x)));
    }
  }
  return out;
}

std::string complex_text(std::complex<double> z) {
  std::ostringstream os;
  os.precision(12);
  os << z.real() << (z.imag() < 0 ? "" : "+") << z.imag() << "i";
  return os.str();
}

}  // namespace

std::size_t SuiteResult::passed() const {
  std::size_t n = 0;
  for (const auto& item : items) n += item.pass ? 1 : 0;
  return n;
}

nlohmann::json to_json(const SuiteResult& r, bool with_timing) {
  nlohmann::json j;
  j["suite"] = r.name;
  j["pass"] = r.pass;
  j["passed"] = r.passed();
  j["total"] = r.items.size();
  nlohmann::json items = nlohmann::json::array();
  for (const auto& item : r.items) items.push_back(orbtrace::to_json(item));
  j["items"] = std::move(items);
  if (with_timing) j["duration_ms"] = r.duration_ms;
  return j;
}

std::string to_text(const SuiteResult& r) {
  std::ostringstream os;
  os << "suite " << r.name << ": " << (r.pass ? "PASS" : "FAIL") << " (" << r.passed() << "/" << r.items.size()
     << ")\n";
  for (const auto& item : r.items) {
    os << "  [" << (item.pass ? "ok  " : "FAIL") << "] " << item.label;
    if (item.mode == VerificationReport::Mode::numeric) {
      os.precision(3);
      os << "  residual=" << std::scientific << item.residual << std::defaultfloat;
      os.precision(10);
      os << " constant=" << complex_text(item.constant);
    }
    if (!item.detail.empty()) os << "  (" << item.detail << ")";
    os << "\n";
  }
  return os.str();
}

std::vector<VerificationReport> sigma_examples() {
  return trace_examples({{Twist::one, Twist::one},
                         {Twist::one, Twist::sigma},
                         {Twist::sigma, Twist::one},
                         {Twist::sigma, Twist::sigma}},
                        {2, 4, 8});
}

std::vector<VerificationReport> g_examples() {
  auto out = trace_examples(
      {{Twist::g, Twist::sigma}, {Twist::sigma, Twist::g}, {Twist::g, Twist::g_sigma}}, {4, 8});
  for (int l : {4, 8}) {
    const auto m = fock::build_g_sigma_twisted(l);
    out.push_back(exact("M conformal weight l=" + std::to_string(l), m.conformal_weight == Rational(1, 8),
                        "h = " + format_rational(m.conformal_weight)));
  }
  return out;
}

std::vector<VerificationReport> enumeration_oracle() {
  std::vector<VerificationReport> out;
  const Rational weight(5);
  auto add = [&](Twist x, Twist y, int l) {
    auto [module, aut] = fock::trace_realization(x, y, l);
    const QSeries product = fock::graded_trace_product(module, aut, 5);
    const QSeries brute = fock::graded_trace_enumerate(module, aut, weight);
    out.push_back(series_match(pair_label(x, y) + " l=" + std::to_string(l) + " product = enumeration", product,
                               brute, module.q_offset() + weight));
  };
  for (int l : {2, 4, 8})
    for (auto [x, y] : std::vector<std::pair<Twist, Twist>>{
             {Twist::one, Twist::one}, {Twist::one, Twist::sigma}, {Twist::sigma, Twist::one}, {Twist::sigma, Twist::sigma}})
      add(x, y, l);
  for (int l : {4, 8})
    for (auto [x, y] : std::vector<std::pair<Twist, Twist>>{
             {Twist::g, Twist::sigma}, {Twist::sigma, Twist::g}, {Twist::g, Twist::g_sigma}})
      add(x, y, l);
  return out;
}

std::vector<VerificationReport> q_transform() {
  const RootOfUnity one(0, 1), minus(1, 2);
  const std::vector<std::pair<RootOfUnity, RootOfUnity>> pairs = {{one, minus}, {minus, one}, {minus, minus}};
  const std::vector<std::pair<std::string, sl2::SL2Matrix>> gammas = {
      {"S", sl2::SL2Matrix::S()}, {"T", sl2::SL2Matrix::T()}, {"TS", sl2::SL2Matrix::T() * sl2::SL2Matrix::S()}};
  const std::vector<EvalPoint> taus = {EvalPoint(0.0, 2.0), EvalPoint(1.0, 2.0)};
  constexpr std::int64_t order = 300;

  std::map<std::tuple<int, std::string, std::string>, QSeries> cache;
  auto expansion = [&](int k, const RootOfUnity& mu, const RootOfUnity& lambda) -> const QSeries& {
    auto key = std::make_tuple(k, mu.to_string(), lambda.to_string());
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, q_series_Q(k, mu, lambda, order)).first;
    return it->second;
  };

  std::vector<VerificationReport> out;
  for (int k : {2, 4, 6})
    for (const auto& [mu, lambda] : pairs)
      for (const auto& [name, g] : gammas)
        for (const auto& tau : taus) {
          const auto [mu2, lambda2] = sl2::act_pair(mu, lambda, g);
          std::ostringstream label;
          label << "Q_" << k << "(" << mu.to_string() << "," << lambda.to_string() << ") under " << name
                << " at tau=" << complex_text(tau.tau());
          out.push_back(sl2::check_q_transform(expansion(k, mu, lambda), expansion(k, mu2, lambda2), k, g, tau, 1e-8,
                                               label.str()));
        }
  return out;
}

std::vector<VerificationReport> p_transform() {
  const RootOfUnity one(0, 1), minus(1, 2);
  struct Sample {
    std::complex<double> tau;
    std::complex<double> z;
  };
  // Each sample keeps both z and z/(c tau + d) inside the convergence strip.
  const std::vector<Sample> samples = {{{0.0, 2.0}, {-0.3, 1.2}}, {{0.0, 2.0}, {-0.4, 0.9}}, {{1.0, 2.0}, {0.3, 1.2}}};
  std::vector<VerificationReport> out;
  for (int k : {1, 2})
    for (const auto& g : {sl2::SL2Matrix::S(), sl2::SL2Matrix::T()})
      for (const auto& s : samples) out.push_back(sl2::check_p_transform(k, one, minus, g, EvalPoint(s.tau), s.z, 80, 1e-6));

  // z = 0.1 + 1.2i at tau = 2i maps to Im(z/tau) < 0 under S: must be refused.
  bool refused = false;
  try {
    (void)sl2::check_p_transform(2, one, minus, sl2::SL2Matrix::S(), EvalPoint(0.0, 2.0), {0.1, 1.2}, 80, 1e-6);
  } catch (const Error& e) {
    refused = e.kind() == ErrorKind::OutsideConvergenceRegion;
  }
  out.push_back(exact("P_2 under S at tau=2i z=0.1+1.2i is outside the convergence region", refused));
  return out;
}

std::vector<VerificationReport> prop_2_3() {
  const RootOfUnity one(0, 1), minus(1, 2);
  const std::vector<std::pair<RootOfUnity, RootOfUnity>> pairs = {{one, minus}, {minus, one}, {minus, minus}};
  constexpr std::int64_t order = 8;
  std::vector<VerificationReport> out;
  for (int k = 0; k <= 4; ++k)
    for (std::int64_t m = -2; m <= 2; ++m)
      for (const auto& [mu, lambda] : pairs)
        out.push_back(check_prop_2_3(k, m, mu, lambda, order + (m < 0 ? -m : m) + 2, order));
  return out;
}

std::vector<VerificationReport> bracket_identities() {
  std::vector<VerificationReport> out;
  constexpr int i_max = 12;
  for (int p = -2; p <= 10; ++p) {
    const auto table = bracket::c_table(p, i_max);
    std::string mismatch;
    for (int m = 0; m <= i_max && mismatch.empty(); ++m) {
      const QSeries oracle = bracket::log_pow_series(m, p, i_max);
      for (int i = m; i <= i_max; ++i) {
        const CycloScalar lhs(factorial(static_cast<unsigned>(m)) * table.at(i, m));
        if (!(lhs == oracle.coefficient(i))) {
          mismatch = "i=" + std::to_string(i) + " m=" + std::to_string(m);
          break;
        }
      }
    }
    out.push_back(exact("m! c(p,i,m) = [z^i] log(1+z)^m (1+z)^(p-1), p=" + std::to_string(p), mismatch.empty(), mismatch));

    bool row_sum = true;
    for (int i = 0; i <= i_max; ++i) {
      Rational s = 0;
      for (int m = 0; m <= i; ++m) s += table.at(i, m);
      row_sum = row_sum && s == binomial(Rational(p), static_cast<unsigned>(i));
    }
    out.push_back(exact("sum_m c(p,i,m) = binom(p,i), p=" + std::to_string(p), row_sum));

    const auto v0 = bracket::vbracket_coeffs(p, 0, i_max);
    bool m0 = v0.size() == static_cast<std::size_t>(i_max + 1);
    for (int i = 0; m0 && i <= i_max; ++i) m0 = v0[static_cast<std::size_t>(i)] == binomial(Rational(p - 1), static_cast<unsigned>(i));
    out.push_back(exact("v[0] = sum binom(wt-1,i) v(i), wt=" + std::to_string(p), m0));
  }

  const auto l0 = bracket::l0_bracket_coeffs(12);
  bool l0_ok = l0.size() == 12 && l0[0] == Rational(1, 2) && l0[1] == Rational(-1, 6) && l0[2] == Rational(1, 12);
  for (int n = 1; l0_ok && n <= 12; ++n) {
    Rational expect(n % 2 == 1 ? 1 : -1, n * (n + 1));
    expect.canonicalize();
    l0_ok = l0[static_cast<std::size_t>(n - 1)] == expect;
  }
  out.push_back(exact("L[0] coefficients 1/2, -1/6, 1/12, ...", l0_ok));

  const auto lm1 = bracket::lm1_expansion();
  out.push_back(exact("L[-1] = L(-1) + L(0)",
                      lm1.size() == 2 && lm1.at({"L", -1, false}) == 1 && lm1.at({"L", 0, false}) == 1));
  const auto lm2 = bracket::lm2_expansion();
  out.push_back(exact("L[-2] = omega[-1] - c/24",
                      lm2.size() == 2 && lm2.at({"omega", -1, true}) == 1 && lm2.at({"c", 0, false}) == Rational(-1, 24)));
  return out;
}

std::vector<VerificationReport> eisenstein_cross() {
  std::vector<VerificationReport> out;
  const EvalPoint i_point(0.0, 1.0);
  for (int k : {4, 6, 8}) {
    const std::complex<double> lattice = eisenstein_G_lattice(k, i_point, 200);
    const std::complex<double> series =
        std::pow(std::complex<double>(0.0, 2.0 * std::numbers::pi), k) * eisenstein_E(k, 60).evaluate(i_point).value;
    VerificationReport r;
    r.label = "G_" + std::to_string(k) + " lattice(R=200) vs (2 pi i)^k E_" + std::to_string(k) + " at tau=i";
    r.mode = VerificationReport::Mode::numeric;
    r.constant = lattice;
    r.residual = std::abs(lattice - series);
    r.tolerance = 1e-4;
    r.pass = r.residual < r.tolerance;
    r.samples = {i_point.tau()};
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<VerificationReport> eta_laws() {
  std::vector<VerificationReport> out;
  for (const auto& tau : {EvalPoint(0.0, 2.0), EvalPoint(0.0, 3.0)}) {
    auto reps = check_eta_laws(tau, 1e-10);
    const std::string at = " at tau=" + complex_text(tau.tau());
    reps.s_law.label += at;
    reps.t_law.label += at;
    reps.half_shift.label += at;
    reps.half_shift.detail = "lhs/rhs = " + complex_text(reps.half_shift_ratio);
    out.push_back(std::move(reps.s_law));
    out.push_back(std::move(reps.t_law));
    out.push_back(std::move(reps.half_shift));
  }
  return out;
}

std::vector<VerificationReport> transform_constants() {
  std::vector<VerificationReport> out;
  const std::vector<EvalPoint> samples = {EvalPoint(0.0, 2.0), EvalPoint(1.0, 2.0), EvalPoint(0.0, 3.0)};
  constexpr double tol = 1e-8;
  for (int l : {4, 8}) {
    const std::string dim = " l=" + std::to_string(l);
    const auto gs = sl2::trace_function(Twist::g, Twist::sigma, l, kNumericOrder);
    const auto sg = sl2::trace_function(Twist::sigma, Twist::g, l, kNumericOrder);
    const auto ggs = sl2::trace_function(Twist::g, Twist::g_sigma, l, kNumericOrder);
    out.push_back(sl2::transform_ratio(gs, sg, sl2::SL2Matrix::S(), 0, samples, tol,
                                       "T(1,(g,sigma), S tau) / T(1,(sigma,g), tau)" + dim));
    auto t_rep = sl2::transform_ratio(gs, ggs, sl2::SL2Matrix::T(), 0, samples, tol,
                                      "T(1,(g,sigma), T tau) / T(1,(g,gsigma), tau)" + dim);
    const std::complex<double> nu = t_rep.constant;
    out.push_back(std::move(t_rep));
    VerificationReport modulus;
    modulus.label = "| |nu| - 1 |" + dim;
    modulus.mode = VerificationReport::Mode::numeric;
    modulus.constant = nu;
    modulus.residual = std::abs(std::abs(nu) - 1.0);
    modulus.tolerance = tol;
    modulus.pass = modulus.residual < tol;
    modulus.samples = {samples[0].tau(), samples[1].tau(), samples[2].tau()};
    out.push_back(std::move(modulus));
  }

  // Sample independence for every S or T move that stays among the supported traces.
  for (const auto& c : fock::supported_cases()) {
    if (c.x == Twist::one && c.y == Twist::one) continue;
    for (const auto& [name, g] : {std::pair{"S", sl2::SL2Matrix::S()}, std::pair{"T", sl2::SL2Matrix::T()}}) {
      const auto [x2, y2] = sl2::from_twist_pair(sl2::act_twist(sl2::to_twist_pair(c.x, c.y), g));
      if (!fock::is_supported(x2, y2) || (x2 == Twist::one && y2 == Twist::one)) continue;
      out.push_back(sl2::transform_ratio(sl2::trace_function(c.x, c.y, 4, kNumericOrder),
                                         sl2::trace_function(x2, y2, 4, kNumericOrder), g, 0, samples, tol,
                                         pair_label(c.x, c.y) + " under " + name + " vs " + pair_label(x2, y2) +
                                             " l=4"));
    }
  }
  return out;
}

std::vector<VerificationReport> bernoulli_difference() {
  std::vector<VerificationReport> out;
  for (unsigned r = 0; r <= 12; ++r) {
    const auto b = bernoulli_polynomial(r);
    std::vector<Rational> expect(r == 0 ? 0 : r, Rational(0));
    if (r > 0) expect[r - 1] = Rational(static_cast<long>(r));
    const bool ok = (b.shifted(Rational(1)) - b) == RationalPolynomial(expect);
    out.push_back(exact("B_" + std::to_string(r) + "(x+1) - B_" + std::to_string(r) + "(x) = " + std::to_string(r) +
                            " x^" + std::to_string(r == 0 ? 0 : r - 1),
                        ok));
  }
  return out;
}

const std::vector<SuiteInfo>& registry() {
  static const std::vector<SuiteInfo> suites = {
      {"sigma-examples", "traces T(1,(sigma^i,sigma^j)) against their eta quotients, l = 2, 4, 8", sigma_examples},
      {"g-examples", "traces involving g against their eta quotients, l = 4, 8", g_examples},
      {"enumeration-oracle", "product formula against basis enumeration to weight 5", enumeration_oracle},
      {"Q-transform", "weight-k transformation of Q_k under S, T, TS with N = 300", q_transform},
      {"P-transform", "transformation of P_k under S, T inside the convergence region", p_transform},
      {"prop-2-3", "residue identity for Q_k, k <= 4, m in -2..2, order 8", prop_2_3},
      {"bracket", "square-bracket coefficients against the log-power oracle", bracket_identities},
      {"eisenstein", "lattice sums G_k against (2 pi i)^k E_k at tau = i", eisenstein_cross},
      {"eta", "eta S-law, T-law and half-shift identity at tau = 2i, 3i", eta_laws},
      {"transform-constants", "S and T constants of the g-twisted traces", transform_constants},
      {"bernoulli", "B_r(x+1) - B_r(x) = r x^(r-1), r <= 12", bernoulli_difference},
  };
  return suites;
}

SuiteResult run_suite(const std::string& name) {
  for (const auto& s : registry()) {
    if (s.name != name) continue;
    const auto start = std::chrono::steady_clock::now();
    SuiteResult r;
    r.name = s.name;
    r.items = s.run();
    r.duration_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    r.pass = !r.items.empty();
    for (const auto& item : r.items) r.pass = r.pass && item.pass;
    return r;
  }
  throw Error(ErrorKind::InvalidArgument, "unknown suite '" + name + "'");
}

}  // namespace orbtrace::suites
