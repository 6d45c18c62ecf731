#include "cli.hpp"

#include "orbtrace/bracket.hpp"
#include "orbtrace/error.hpp"
#include "orbtrace/fock.hpp"
#include "orbtrace/modforms.hpp"
#include "orbtrace/sl2.hpp"
#include "orbtrace/suites.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <sstream>

namespace orbtrace::cli {

namespace {

struct ExpandArgs {
  std::string object;
  int k = 0;
  std::string mu = "0/1";
  std::string lambda = "0/1";
  std::string x, y;
  int l = 2;
  int p = 1;
  int i_max = bracket::kDefaultIMax;
  std::string factors;
  std::string prefactor = "1";
};

struct TransformArgs {
  std::string x, y;
  std::string gamma = "0,-1,1,0";
  int l = 4;
  int weight = 0;
  double tol = 1e-8;
  std::string samples;
};

// "t:r,t:r,..." with rational scale t and integer power r.
EtaQuotientSpec parse_factors(const std::string& text, const std::string& prefactor) {
  EtaQuotientSpec spec;
  spec.prefactor = CycloScalar(parse_rational(prefactor));
  std::istringstream is(text);
  std::string item;
  while (std::getline(is, item, ',')) {
    auto colon = item.find(':');
    if (colon == std::string::npos) throw Error(ErrorKind::ParseError, "factor '" + item + "' must be scale:power");
    int power = 0;
    try {
      std::size_t used = 0;
      power = std::stoi(item.substr(colon + 1), &used);
      if (used != item.size() - colon - 1) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw Error(ErrorKind::ParseError, "bad power in factor '" + item + "'");
    }
    spec.factors.push_back({parse_rational(item.substr(0, colon)), power});
  }
  if (spec.factors.empty()) throw Error(ErrorKind::InvalidArgument, "eta-quotient needs --factors or --x/--y/--l");
  return spec;
}

// "re,im;re,im;..."
std::vector<EvalPoint> parse_samples(const std::string& text) {
  std::vector<EvalPoint> out;
  std::istringstream is(text);
  std::string item;
  while (std::getline(is, item, ';')) {
    auto comma = item.find(',');
    if (comma == std::string::npos) throw Error(ErrorKind::ParseError, "sample '" + item + "' must be re,im");
    try {
      out.emplace_back(std::stod(item.substr(0, comma)), std::stod(item.substr(comma + 1)));
    } catch (const std::invalid_argument&) {
      throw Error(ErrorKind::ParseError, "bad sample '" + item + "'");
    }
  }
  return out;
}

void emit_series(const QSeries& s, const std::string& format, std::ostream& out) {
  if (format == "json") out << to_json(s).dump() << "\n";
  else out << s.to_text(64) << "\n";
}

int do_expand(const ExpandArgs& a, std::int64_t order, const std::string& format, std::ostream& out) {
  if (a.object == "eisenstein") {
    emit_series(eisenstein_E(a.k, order), format, out);
  } else if (a.object == "Q") {
    emit_series(q_series_Q(a.k, RootOfUnity::parse(a.mu), RootOfUnity::parse(a.lambda), order), format, out);
  } else if (a.object == "eta") {
    emit_series(eta_series(order), format, out);
  } else if (a.object == "eta-quotient") {
    const EtaQuotientSpec spec = a.factors.empty()
                                     ? fock::reference_eta_quotient(fock::parse_twist(a.x), fock::parse_twist(a.y), a.l)
                                     : parse_factors(a.factors, a.prefactor);
    emit_series(eta_quotient(spec, order), format, out);
  } else if (a.object == "bracket-c") {
    if (a.i_max < 0) throw Error(ErrorKind::InvalidArgument, "--imax must be nonnegative");
    const auto table = bracket::c_table(a.p, a.i_max);
    if (format == "json") {
      out << bracket::to_json(table).dump() << "\n";
    } else {
      for (int i = 0; i <= a.i_max; ++i) {
        out << "i=" << i << ":";
        for (int m = 0; m <= i; ++m) out << " " << format_rational(table.at(i, m));
        out << "\n";
      }
    }
  } else if (a.object == "trace") {
    emit_series(fock::trace_gh(fock::parse_twist(a.x), fock::parse_twist(a.y), a.l, order), format, out);
  } else {
    throw Error(ErrorKind::InvalidArgument, "unknown object '" + a.object + "'");
  }
  return kPass;
}

int do_verify(const std::string& name, const std::string& format, const std::string& report_path,
              std::ostream& out) {
  const auto result = suites::run_suite(name);
  const auto json = suites::to_json(result);
  if (format == "text") out << suites::to_text(result);
  out << json.dump(2) << "\n";
  if (!report_path.empty()) {
    std::ofstream f(report_path);
    if (!f) throw Error(ErrorKind::InvalidArgument, "cannot write report to " + report_path);
    f << json.dump(2) << "\n";
  }
  return result.pass ? kPass : kVerificationFailed;
}

int do_transform(const TransformArgs& a, std::int64_t order, const std::string& format, std::ostream& out) {
  const auto x = fock::parse_twist(a.x);
  const auto y = fock::parse_twist(a.y);
  const auto g = sl2::parse_matrix(a.gamma);
  const auto [x2, y2] = sl2::from_twist_pair(sl2::act_twist(sl2::to_twist_pair(x, y), g));
  const auto samples = a.samples.empty() ? sl2::default_samples() : parse_samples(a.samples);
  const std::string label = "T(1,(" + a.x + "," + a.y + ")) under " + g.to_string() + " vs T(1,(" +
                            std::string(fock::to_string(x2)) + "," + std::string(fock::to_string(y2)) +
                            ")) l=" + std::to_string(a.l);
  const auto report = sl2::transform_ratio(sl2::trace_function(x, y, a.l, order),
                                           sl2::trace_function(x2, y2, a.l, order), g, a.weight, samples, a.tol, label);
  if (format == "text") {
    suites::SuiteResult r{"transform", {report}, report.pass, 0.0};
    out << suites::to_text(r);
  }
  out << to_json(report).dump(2) << "\n";
  return report.pass ? kPass : kVerificationFailed;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact q-series engine for orbifold trace functions"};
  app.require_subcommand(1);
  std::string format = "text";
  std::int64_t order = 10;
  bool order_given = false;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "text"}));
    sub->add_option_function<std::int64_t>(
           "--order", [&](const std::int64_t& n) { order = n; order_given = true; }, "Truncation order N")
        ->check(CLI::NonNegativeNumber);
  };

  ExpandArgs ea;
  auto* expand = app.add_subcommand("expand", "Print a q-expansion or coefficient table");
  expand->add_option("--object", ea.object, "eisenstein | Q | eta | eta-quotient | bracket-c | trace")->required();
  expand->add_option("--k", ea.k, "Weight");
  expand->add_option("--mu", ea.mu, "Root of unity j/M");
  expand->add_option("--lambda", ea.lambda, "Root of unity j/M");
  expand->add_option("--x", ea.x, "Twist label 1 | sigma | g | gsigma");
  expand->add_option("--y", ea.y, "Twist label 1 | sigma | g | gsigma");
  expand->add_option("--l", ea.l, "Fermion count (even)");
  expand->add_option("--p", ea.p, "Weight parameter of c(p,i,m)");
  expand->add_option("--imax", ea.i_max, "Largest i in the table");
  expand->add_option("--factors", ea.factors, "Eta factors scale:power,...");
  expand->add_option("--prefactor", ea.prefactor, "Rational prefactor of the eta quotient");
  add_common(expand);

  std::string suite;
  std::string report_path;
  auto* verify = app.add_subcommand("verify", "Run a named verification suite");
  verify->add_option("suite", suite, "Suite name")->required();
  verify->add_option("--report", report_path, "Also write the JSON report to this file");
  add_common(verify);

  TransformArgs ta;
  auto* transform = app.add_subcommand("transform", "Estimate the constant relating two trace functions under gamma");
  transform->add_option("--x", ta.x, "Twist label of the first entry")->required();
  transform->add_option("--y", ta.y, "Twist label of the second entry")->required();
  transform->add_option("--gamma", ta.gamma, "Matrix a,b,c,d");
  transform->add_option("--l", ta.l, "Fermion count (even)");
  transform->add_option("--weight", ta.weight, "Weight k");
  transform->add_option("--tol", ta.tol, "Residual tolerance");
  transform->add_option("--samples", ta.samples, "Sample points re,im;re,im;...");
  add_common(transform);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kPass : kUsageError;
  }

  try {
    if (*expand) return do_expand(ea, order, format, out);
    if (*verify) {
      const auto& names = suites::registry();
      if (std::none_of(names.begin(), names.end(), [&](const auto& s) { return s.name == suite; })) {
        err << "unknown suite '" << suite << "'; available:";
        for (const auto& s : names) err << " " << s.name;
        err << "\n";
        return kUsageError;
      }
      return do_verify(suite, format, report_path, out);
    }
    if (*transform) return do_transform(ta, order_given ? order : 60, format, out);
  } catch (const Error& e) {
    err << "error (" << to_string(e.kind()) << "): " << e.what() << "\n";
    return kUsageError;
  }
  return kUsageError;
}

}  // namespace orbtrace::cli
