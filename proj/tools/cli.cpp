// Copyright 2026 The qcerase Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.hpp"

#include "qcerase/json_io.hpp"
#include "qcerase/qcerase.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>

namespace qcerase::cli {

using nlohmann::json;

namespace {

constexpr int kSchemaVersion = 1;
constexpr double kDegree = kPi / 180.0;

const std::map<std::string, Command>& command_table() {
  static const std::map<std::string, Command> table = {
      {"decompose", Command::Decompose},
      {"counter", Command::Counter},
      {"measurement-for", Command::MeasurementFor},
      {"decomposition-for", Command::DecompositionFor},
      {"purify", Command::Purify},
      {"measure", Command::Measure},
      {"distant-check", Command::DistantCheck},
      {"pattern", Command::Pattern},
      {"simulate", Command::Simulate},
      {"verify", Command::Verify},
  };
  return table;
}

// Flags collected by CLI11 before angle conversion.
struct RawFlags {
  Params params;
  std::optional<double> theta_deg, lambda_deg;
  std::string format = "json";
  std::string out_path;
};

void add_output_flags(CLI::App* sub, RawFlags& f) {
  sub->add_option("--format", f.format, "Output format")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
  sub->add_option("--out", f.out_path, "Write the artifact to this file instead of stdout");
}

void add_r(CLI::App* sub, RawFlags& f, bool required = true) {
  auto* opt = sub->add_option("--r", f.params.r, "Smaller eigenvalue of the mixture, in (0, 1/2]");
  if (required) opt->required();
}

void add_theta(CLI::App* sub, RawFlags& f) {
  auto* rad = sub->add_option("--theta", f.params.theta, "Relative phase of |phi> (radians)");
  auto* deg = sub->add_option("--theta-deg", f.theta_deg, "Relative phase of |phi> (degrees)");
  rad->excludes(deg);
}

void add_q_lambda(CLI::App* sub, RawFlags& f, bool required = true) {
  auto* q = sub->add_option("--q", f.params.q, "Measurement parameter q, in [0, 1]");
  if (required) q->required();
  auto* rad = sub->add_option("--lambda", f.params.lambda, "Measurement phase (radians)");
  auto* deg = sub->add_option("--lambda-deg", f.lambda_deg, "Measurement phase (degrees)");
  rad->excludes(deg);
}

void add_screen(CLI::App* sub, RawFlags& f) {
  auto& p = f.params;
  sub->add_option("--x-min", p.x_min, "Screen start")->capture_default_str();
  sub->add_option("--x-max", p.x_max, "Screen end")->capture_default_str();
  sub->add_option("--n", p.n, "Screen sample count")->capture_default_str();
  sub->add_option("--separation", p.separation, "Slit separation")->capture_default_str();
  sub->add_option("--width", p.width, "Gaussian width (std of |psi|^2)")->capture_default_str();
  sub->add_option("--tilt", p.tilt, "Relative phase gradient")->capture_default_str();
}

double require(const std::optional<double>& v, const char* flag) {
  if (!v) throw UsageError(std::string("missing required flag ") + flag);
  return *v;
}

json tolerances() {
  return {{"norm", kNormTol},
          {"identity", kIdentityTol},
          {"radicand_fail", kRadicandFail},
          {"negative_eigenvalue", kNegativeEigenvalue},
          {"grid_norm", kGridNormTol}};
}

json envelope(const RunSpec& spec, json inputs) {
  return {{"command", command_name(spec.command)},
          {"schema_version", kSchemaVersion},
          {"inputs", std::move(inputs)},
          {"tolerances", tolerances()}};
}

std::string number(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

json screen_inputs(const Params& p) {
  return {{"x_min", p.x_min}, {"x_max", p.x_max},   {"n", p.n},
          {"separation", p.separation}, {"width", p.width}, {"tilt", p.tilt}};
}

SlitWavePair make_pair(const Params& p) {
  return gaussian_two_slit(ScreenGrid(p.x_min, p.x_max, p.n), p.separation, p.width, p.tilt);
}

YesNoMeasurement measurement(const Params& p) {
  return YesNoMeasurement(require(p.q, "--q"), p.lambda.value_or(0.0));
}

RangeState range_state(const Params& p) {
  return RangeState(require(p.p, "--p"), p.theta.value_or(0.0));
}

struct Artifact {
  std::string text;
  int exit_code = kExitOk;
};

Artifact json_artifact(const json& j, int code = kExitOk) { return {j.dump(2) + "\n", code}; }

Artifact do_decompose(const RunSpec& spec) {
  const Params& p = spec.params;
  const MinimalMixture rho(require(p.r, "--r"));
  if (p.p.has_value() == p.w.has_value()) throw UsageError("decompose needs exactly one of --p, --w");
  json inputs = {{"r", rho.r()}};
  double pv = 0.0;
  if (p.w) {
    inputs["w"] = *p.w;
    pv = p_for_weight(rho, *p.w);
  } else {
    pv = *p.p;
    inputs["p"] = pv;
  }
  inputs["theta"] = p.theta.value_or(0.0);
  const RangeState rs(pv, p.theta.value_or(0.0));
  const PairDecomposition d = counter_state(rho, rs);
  const double ov = std::abs(inner(d.phi, d.phi_c));
  json out = envelope(spec, inputs);
  out["result"] = {{"range_state", to_json(rs)},
                   {"w", d.w},
                   {"w_complement", 1.0 - d.w},
                   {"phi", to_json(d.phi)},
                   {"phi_c", to_json(d.phi_c)},
                   {"overlap_abs", ov},
                   {"orthogonal", ov <= 1e-9},
                   {"degenerate", rho.degenerate()},
                   {"reconstruction_residual", max_abs_diff(d.matrix(), rho.matrix())}};
  return json_artifact(out);
}

Artifact do_counter(const RunSpec& spec) {
  const Params& p = spec.params;
  const MinimalMixture rho(require(p.r, "--r"));
  const RangeState rs = range_state(p);
  const PairDecomposition d = counter_state(rho, rs);
  const RangeState counter_rs = as_range_state(rho, d.phi_c);
  json out = envelope(spec, {{"r", rho.r()}, {"p", *p.p}, {"theta", p.theta.value_or(0.0)}});
  out["result"] = {{"phi_c", to_json(d.phi_c)},
                   {"counter_range_state", to_json(counter_rs)},
                   {"counter_weight", 1.0 - d.w},
                   {"w", d.w}};
  return json_artifact(out);
}

Artifact do_measurement_for(const RunSpec& spec) {
  const Params& p = spec.params;
  const MinimalMixture rho(require(p.r, "--r"));
  const RangeState rs = range_state(p);
  const YesNoMeasurement m = measurement_for_decomposition(rho, rs);
  json out = envelope(spec, {{"r", rho.r()}, {"p", *p.p}, {"theta", p.theta.value_or(0.0)}});
  out["result"] = {{"q", m.q()}, {"lambda", m.lambda()}, {"w", weight_for(rho, rs)}};
  return json_artifact(out);
}

Artifact do_decomposition_for(const RunSpec& spec) {
  const Params& p = spec.params;
  const MinimalMixture rho(require(p.r, "--r"));
  const YesNoMeasurement m = measurement(p);
  const InducedDecomposition d = decomposition_for_measurement(rho, m);
  json out = envelope(spec, {{"r", rho.r()}, {"q", *p.q}, {"lambda", p.lambda.value_or(0.0)}});
  out["result"] = {{"p", d.range_state.p()}, {"theta", d.range_state.theta()}, {"w", d.w}};
  return json_artifact(out);
}

Artifact do_purify(const RunSpec& spec) {
  const MinimalMixture rho(require(spec.params.r, "--r"));
  const SchmidtState omega = purify(rho);
  json out = envelope(spec, {{"r", rho.r()}});
  out["result"] = {{"composite", to_json(omega.composite())},
                   {"index_order", "2*o + s"},
                   {"reduced_subsystem", to_json(partial_trace_opposite(omega.composite()))},
                   {"reduced_opposite", to_json(partial_trace_subsystem(omega.composite()))}};
  return json_artifact(out);
}

Artifact do_measure(const RunSpec& spec) {
  const Params& p = spec.params;
  const MinimalMixture rho(require(p.r, "--r"));
  const YesNoMeasurement m = measurement(p);
  const SchmidtState omega = purify(rho);
  std::vector<Branch> branches;
  if (p.branch == "mu1" || p.branch == "both") branches.push_back(Branch::Mu1);
  if (p.branch == "mu2" || p.branch == "both") branches.push_back(Branch::Mu2);
  json outcomes = json::array();
  for (Branch b : branches) outcomes.push_back(to_json(luders_select(omega, m, b)));
  const Operator4 after = nonselective_measure(omega, m);
  json out = envelope(spec, {{"r", rho.r()},
                             {"q", *p.q},
                             {"lambda", p.lambda.value_or(0.0)},
                             {"branch", p.branch}});
  out["result"] = {{"mu1", to_json(m.mu1(omega))},
                   {"mu2", to_json(m.mu2(omega))},
                   {"outcomes", outcomes},
                   {"nonselective_state", to_json(after)},
                   {"nonselective_reduced_subsystem", to_json(partial_trace_opposite(after))}};
  return json_artifact(out);
}

Artifact do_distant_check(const RunSpec& spec) {
  const Params& p = spec.params;
  const MinimalMixture rho(require(p.r, "--r"));
  const YesNoMeasurement m = measurement(p);
  const SchmidtState omega = purify(rho);
  const InducedDecomposition induced = decomposition_for_measurement(rho, m);
  const PairDecomposition d = counter_state(rho, induced.range_state);
  json out = envelope(spec, {{"r", rho.r()}, {"q", *p.q}, {"lambda", p.lambda.value_or(0.0)}});
  out["result"] = {{"distant", is_distant_measurement(omega, m)},
                   {"commutator_norm", commutator_norm(omega, m)},
                   {"induced_overlap_abs", std::abs(inner(d.phi, d.phi_c))},
                   {"induced_w", induced.w}};
  return json_artifact(out);
}

Artifact do_pattern(const RunSpec& spec) {
  const Params& p = spec.params;
  const SlitWavePair pair = make_pair(p);
  json inputs = screen_inputs(p);
  PatternSet ps = patterns(pair);
  if (p.q) {
    // Branch densities of a general measurement on the purified mixture.
    const MinimalMixture rho(require(p.r, "--r"));
    const SchmidtState omega = purify(rho);
    const YesNoMeasurement m = measurement(p);
    ps = branch_patterns(pair, rho, luders_select(omega, m, Branch::Mu1).conditional_state,
                         luders_select(omega, m, Branch::Mu2).conditional_state);
    inputs["r"] = rho.r();
    inputs["q"] = m.q();
    inputs["lambda"] = p.lambda.value_or(0.0);
  }
  if (spec.format == OutputFormat::Csv) {
    std::ostringstream os;
    os << "# qcerase pattern v1; overlap_re=" << number(ps.overlap.real())
       << " overlap_im=" << number(ps.overlap.imag()) << "\n";
    os << "x,p_i,p_i_c,p_mix\n";
    for (std::size_t i = 0; i < ps.grid.size(); ++i) {
      os << number(ps.grid.x(i)) << ',' << number(ps.p_interference[i]) << ','
         << number(ps.p_counter[i]) << ',' << number(ps.p_incoherent[i]) << '\n';
    }
    return {os.str(), kExitOk};
  }
  json x = json::array();
  for (std::size_t i = 0; i < ps.grid.size(); ++i) x.push_back(ps.grid.x(i));
  json out = envelope(spec, inputs);
  out["result"] = {{"x", x},
                   {"p_i", ps.p_interference},
                   {"p_i_c", ps.p_counter},
                   {"p_mix", ps.p_incoherent},
                   {"overlap", to_json(ps.overlap)},
                   {"integrals",
                    {{"p_i", integrate(ps.grid, ps.p_interference)},
                     {"p_i_c", integrate(ps.grid, ps.p_counter)},
                     {"p_mix", integrate(ps.grid, ps.p_incoherent)}}}};
  return json_artifact(out);
}

Artifact do_simulate(const RunSpec& spec) {
  const Params& p = spec.params;
  SimConfig config;
  config.seed = p.seed;
  config.n_photons = p.photons;
  config.mixture = MinimalMixture(require(p.r, "--r"));
  config.measurement = measurement(p);
  config.bins = p.bins;
  config.threads = p.threads;
  if (p.screen) config.pair = make_pair(p);
  const SimReport report = run(config);

  if (spec.format == OutputFormat::Csv) {
    if (!report.histograms) throw UsageError("csv output of simulate requires --screen");
    const auto& hs = *report.histogram_spec;
    std::ostringstream os;
    os << "# qcerase histogram v1; seed=" << report.seed << " generator=" << report.generator
       << " n=" << report.n << "\n";
    os << "bin,x_lo,x_hi,mu1,mu2\n";
    for (std::size_t b = 0; b < hs.bins; ++b) {
      const double lo = hs.x_min + static_cast<double>(b) * hs.bin_width();
      const double hi = b + 1 == hs.bins ? hs.x_max : lo + hs.bin_width();
      os << b << ',' << number(lo) << ',' << number(hi) << ',' << (*report.histograms)[0][b] << ','
         << (*report.histograms)[1][b] << '\n';
    }
    return {os.str(), kExitOk};
  }

  json inputs = {{"r", config.mixture.r()},
                 {"q", config.measurement.q()},
                 {"lambda", p.lambda.value_or(0.0)},
                 {"photons", p.photons},
                 {"seed", p.seed},
                 {"screen", p.screen},
                 {"bins", p.bins},
                 {"threads", p.threads}};
  if (p.screen) inputs["screen_grid"] = screen_inputs(p);
  json out = envelope(spec, inputs);
  out.update(to_json(report));
  if (p.screen) {
    const SchmidtState omega = purify(config.mixture);
    const PatternSet analytic = branch_patterns(
        *config.pair, config.mixture,
        luders_select(omega, config.measurement, Branch::Mu1).conditional_state,
        luders_select(omega, config.measurement, Branch::Mu2).conditional_state);
    const ChiSquaredReport chi = chi_squared_against(report, analytic);
    const auto enc = [](const ChiSquared& c) {
      return json{{"statistic", c.statistic}, {"dof", c.dof}, {"per_dof", c.per_dof()}};
    };
    out["chi_squared"] = {{"mu1", enc(chi.mu1)}, {"mu2", enc(chi.mu2)}, {"merged", enc(chi.merged)}};
  }
  return json_artifact(out);
}

Artifact do_verify(const RunSpec& spec) {
  const VerifyReport report = verify_invariants(spec.params.grid_steps);
  json checks = json::array();
  for (const auto& c : report.checks) {
    checks.push_back({{"name", c.name},
                      {"max_residual", c.max_residual},
                      {"threshold", c.threshold},
                      {"cases", c.cases},
                      {"passed", c.passed()}});
  }
  json out = envelope(spec, {{"grid_steps", spec.params.grid_steps}});
  out["result"] = {
      {"passed", report.passed()},
      {"max_reconstruction_residual", report.at("reconstruction").max_residual},
      {"max_roundtrip_residual", std::max(report.at("roundtrip_p_theta").max_residual,
                                          report.at("roundtrip_q_lambda").max_residual)},
      {"checks", checks}};
  return json_artifact(out, report.passed() ? kExitOk : kExitDomain);
}

}  // namespace

std::string command_name(Command c) {
  for (const auto& [name, cmd] : command_table())
    if (cmd == c) return name;
  return "unknown";
}

std::optional<RunSpec> parse(const std::vector<std::string>& args, std::ostream& out) {
  if (!args.empty() && !args[0].empty() && args[0][0] != '-' &&
      !command_table().contains(args[0])) {
    throw UsageError("unknown command: " + args[0]);
  }
  CLI::App app{"Two-term decompositions, distant yes-no measurements and two-slit patterns",
               "qcerase"};
  app.require_subcommand(1, 1);
  RawFlags f;
  std::map<CLI::App*, Command> subs;
  const auto sub = [&](const char* name, const char* help) {
    CLI::App* s = app.add_subcommand(name, help);
    subs[s] = command_table().at(name);
    add_output_flags(s, f);
    return s;
  };

  auto* decompose = sub("decompose", "Unique decomposition containing |phi(p, theta)>");
  add_r(decompose, f);
  auto* p_opt = decompose->add_option("--p", f.params.p, "Range-state parameter p, in [0, 1]");
  auto* w_opt = decompose->add_option("--w", f.params.w, "Target weight w, in [r, 1 - r]");
  p_opt->excludes(w_opt);
  add_theta(decompose, f);

  auto* counter = sub("counter", "Counter state of |phi(p, theta)> and its own (p, theta) label");
  add_r(counter, f);
  counter->add_option("--p", f.params.p, "Range-state parameter p, in [0, 1]")->required();
  add_theta(counter, f);

  auto* mfor = sub("measurement-for", "Yes-no measurement that prepares a decomposition");
  add_r(mfor, f);
  mfor->add_option("--p", f.params.p, "Range-state parameter p, in [0, 1]")->required();
  add_theta(mfor, f);

  auto* dfor = sub("decomposition-for", "Decomposition prepared by a yes-no measurement");
  add_r(dfor, f);
  add_q_lambda(dfor, f);

  auto* pur = sub("purify", "Schmidt-form purification");
  add_r(pur, f);

  auto* meas = sub("measure", "Selective and non-selective measurement on the purification");
  add_r(meas, f);
  add_q_lambda(meas, f);
  meas->add_option("--branch", f.params.branch, "Which selective outcome to report")
      ->check(CLI::IsMember({"mu1", "mu2", "both"}))
      ->capture_default_str();

  auto* distant = sub("distant-check", "Whether a measurement is a distant measurement");
  add_r(distant, f);
  add_q_lambda(distant, f);

  auto* pattern = sub("pattern", "Interference, counter-interference and mixture densities");
  add_screen(pattern, f);
  add_r(pattern, f, false);
  add_q_lambda(pattern, f, false);

  auto* sim = sub("simulate", "Monte Carlo ensemble splitting");
  add_r(sim, f);
  add_q_lambda(sim, f);
  sim->add_option("--photons", f.params.photons, "Number of photons")->capture_default_str();
  sim->add_option("--seed", f.params.seed, "Generator seed")->capture_default_str();
  sim->add_flag("--screen", f.params.screen, "Also sample screen positions");
  sim->add_option("--bins", f.params.bins, "Histogram bins")->capture_default_str();
  sim->add_option("--threads", f.params.threads, "Worker threads")->capture_default_str();
  add_screen(sim, f);

  auto* ver = sub("verify", "Sweep the invariant grid and report max residuals");
  ver->add_option("--grid-steps", f.params.grid_steps, "Grid resolution")->capture_default_str();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return std::nullopt;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return std::nullopt;
  } catch (const CLI::ParseError& e) {
    // Subcommand help is also reported as CallForHelp from the subcommand.
    throw UsageError(e.what());
  }

  RunSpec spec;
  for (const auto& [s, cmd] : subs) {
    if (s->parsed()) spec.command = cmd;
  }
  spec.params = f.params;
  if (f.theta_deg) spec.params.theta = *f.theta_deg * kDegree;
  if (f.lambda_deg) spec.params.lambda = *f.lambda_deg * kDegree;
  spec.format = f.format == "csv" ? OutputFormat::Csv : OutputFormat::Json;
  if (!f.out_path.empty()) spec.out_path = f.out_path;
  if (spec.format == OutputFormat::Csv && spec.command != Command::Pattern &&
      spec.command != Command::Simulate) {
    throw UsageError("--format csv is only available for pattern and simulate");
  }
  if (spec.command == Command::Pattern && spec.params.q && !spec.params.r) {
    throw UsageError("pattern with --q also needs --r");
  }
  return spec;
}

int execute(const RunSpec& spec, std::ostream& out, std::ostream& err) {
  Artifact artifact;
  try {
    switch (spec.command) {
      case Command::Decompose: artifact = do_decompose(spec); break;
      case Command::Counter: artifact = do_counter(spec); break;
      case Command::MeasurementFor: artifact = do_measurement_for(spec); break;
      case Command::DecompositionFor: artifact = do_decomposition_for(spec); break;
      case Command::Purify: artifact = do_purify(spec); break;
      case Command::Measure: artifact = do_measure(spec); break;
      case Command::DistantCheck: artifact = do_distant_check(spec); break;
      case Command::Pattern: artifact = do_pattern(spec); break;
      case Command::Simulate: artifact = do_simulate(spec); break;
      case Command::Verify: artifact = do_verify(spec); break;
    }
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "domain error: " << e.what() << "\n";
    return kExitDomain;
  }

  if (spec.out_path) {
    std::ofstream file(*spec.out_path, std::ios::binary);
    if (!file) {
      err << "error: cannot open " << *spec.out_path << " for writing\n";
      return kExitDomain;
    }
    file << artifact.text;
  } else {
    out << artifact.text;
  }
  if (artifact.exit_code != kExitOk) err << command_name(spec.command) << ": checks failed\n";
  return artifact.exit_code;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::optional<RunSpec> spec;
  try {
    spec = parse(args, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  }
  if (!spec) return kExitOk;
  return execute(*spec, out, err);
}

}  // namespace qcerase::cli
