#include "gframe/cli.hpp"

#include <cmath>
#include <cstdlib>
#include <future>
#include <iomanip>
#include <iostream>
#include <numbers>
#include <sstream>
#include <vector>

#include "gframe/errors.hpp"
#include "gframe/frame_core.hpp"
#include "gframe/io.hpp"
#include "gframe/perturbation.hpp"
#include "gframe/representation.hpp"

namespace gframe::cli {
namespace {

constexpr const char* kCsvVersion = "v1";

// GFRAME_LOG: 0 (default) silent, 1 info, 2 debug.
int log_level() {
  const char* env = std::getenv("GFRAME_LOG");
  if (env == nullptr) return 0;
  return std::atoi(env);
}

void log(std::ostream& err, int level, const std::string& msg) {
  if (log_level() >= level) err << "[gframe] " << msg << '\n';
}

std::string format_double(double x) {
  std::ostringstream os;
  os << std::setprecision(17) << x;
  return os.str();
}

Json report_header(const RunConfig& config) {
  return Json{{"schema_version", kReportSchemaVersion}, {"command", to_string(config.command)}, {"tol", config.tol}};
}

Json load_spec_json(const std::string& spec, int default_depth) {
  Json j = (!spec.empty() && spec.front() == '{') ? parse_json(spec, "--spec") : read_json_file(spec);
  if (j.is_object() && !j.contains("member_count") && !j.contains("trunc")) j["member_count"] = default_depth;
  return j;
}

GFrameFamily load_family(const RunConfig& config) {
  if (config.input_path.has_value() == config.spec.has_value()) {
    throw PreconditionError("exactly one of --input and --spec is required", 0.0);
  }
  if (config.input_path) return read_family(*config.input_path);
  return build_ensemble(spec_from_json(load_spec_json(*config.spec, config.depth)));
}

std::string csv_rows(const std::string& command, const std::vector<std::pair<std::string, std::string>>& rows) {
  std::ostringstream os;
  os << "# gframe " << command << " csv " << kCsvVersion << "\n";
  os << "field,value\n";
  for (const auto& [k, v] : rows) os << k << ',' << v << '\n';
  return os.str();
}

std::string bool_str(bool b) { return b ? "true" : "false"; }

// Unit-norm direction for perturbation sweeps: one Gaussian block per member, each scaled
// to spectral norm 1.
std::vector<Matrix> sweep_direction(const GFrameFamily& base, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Matrix> dir;
  dir.reserve(base.size());
  for (const auto& m : base.members()) {
    Matrix e = random_complex_gaussian(m.cod_dim(), m.dom_dim(), rng);
    e /= Operator(e).norm();
    dir.push_back(std::move(e));
  }
  return dir;
}

GFrameFamily displaced(const GFrameFamily& base, const std::vector<Matrix>& dir, double scale) {
  std::vector<Operator> members;
  members.reserve(base.size());
  for (std::size_t i = 0; i < base.size(); ++i) members.emplace_back(base[i].matrix() + scale * dir[i]);
  return GFrameFamily(std::move(members), base.extent());
}

}  // namespace

std::string to_string(Command c) {
  switch (c) {
    case Command::analyze: return "analyze";
    case Command::fit: return "fit";
    case Command::perturb: return "perturb";
    case Command::demo: return "demo";
    case Command::sweep: return "sweep";
  }
  return "unknown";
}

Command command_from_string(const std::string& name) {
  for (Command c : {Command::analyze, Command::fit, Command::perturb, Command::demo, Command::sweep}) {
    if (to_string(c) == name) return c;
  }
  throw DomainError("unknown command '" + name + "'");
}

OutputFormat format_from_string(const std::string& name) {
  if (name == "json") return OutputFormat::json;
  if (name == "csv") return OutputFormat::csv;
  throw DomainError("unknown format '" + name + "'");
}

std::string cmd_analyze(const RunConfig& config) {
  const GFrameFamily family = load_family(config);
  const Classification c = classify(family, config.tol);

  Json report = report_header(config);
  report["family"] = Json{{"dom_dim", family.dom_dim()}, {"member_count", family.size()}};
  report["classification"] = c;
  report["frame_bounds"] = c.bounds;
  report["riesz_bounds"] = c.riesz;
  std::optional<FrameBounds> dual_bounds;
  if (c.is_g_frame) {
    dual_bounds = frame_bounds(canonical_dual(family, config.tol));
    report["dual_bounds"] = *dual_bounds;
    report["dual_member_norm"] = dual_member_norm_bound(family, config.tol);
  } else {
    report["dual_bounds"] = nullptr;
  }

  if (config.format == OutputFormat::json) return report.dump(2) + "\n";
  std::vector<std::pair<std::string, std::string>> rows{
      {"dom_dim", std::to_string(family.dom_dim())},
      {"member_count", std::to_string(family.size())},
      {"frame_lower", format_double(c.bounds.lower)},
      {"frame_upper", format_double(c.bounds.upper)},
      {"riesz_lower", format_double(c.riesz.lower)},
      {"riesz_upper", format_double(c.riesz.upper)},
      {"is_g_bessel", bool_str(c.is_g_bessel)},
      {"is_g_frame", bool_str(c.is_g_frame)},
      {"is_g_complete", bool_str(c.is_g_complete)},
      {"is_g_riesz_sequence", bool_str(c.is_g_riesz_sequence)},
      {"is_g_riesz_basis", bool_str(c.is_g_riesz_basis)},
      {"is_g_orthonormal", bool_str(c.is_g_orthonormal)},
      {"tolerance_used", format_double(c.tolerance_used)},
      {"dual_lower", dual_bounds ? format_double(dual_bounds->lower) : ""},
      {"dual_upper", dual_bounds ? format_double(dual_bounds->upper) : ""},
  };
  return csv_rows("analyze", rows);
}

std::string cmd_fit(const RunConfig& config) {
  const GFrameFamily family = load_family(config);
  const RepresentationFit fit = fit_representation(family, config.tol);
  const Classification c = classify(family, config.tol);

  Json report = report_header(config);
  report["fit"] = fit;
  report["shift_invariance"] = kernel_shift_invariance(family, config.tol);
  report["frame_bounds"] = c.bounds;

  std::optional<InjectivityReport> inj;
  if (fit.exact.verdict && c.is_g_frame) {
    inj = injectivity_report(family, fit.t_matrix, config.tol);
    report["injectivity"] = *inj;
    report["range_span"] = range_span_identity(family, fit.t_matrix, config.tol);
    report["compactness"] = compactness_dichotomy(family, fit.t_matrix, config.tol);
  } else {
    report["injectivity"] = nullptr;
    report["skipped_reason"] = fit.exact.verdict ? "family is not a g-frame" : "no exact representation";
  }

  std::mt19937_64 rng(config.seed);
  const Vector f = random_complex_gaussian(family.dom_dim(), 1, rng).col(0).normalized();
  const DecayTrace decay = power_decay(fit.t_matrix, f, family[0], config.depth);
  report["decay"] = decay;

  if (config.format == OutputFormat::json) return report.dump(2) + "\n";
  std::vector<std::pair<std::string, std::string>> rows{
      {"max_residual", format_double(fit.max_residual)},
      {"exact", bool_str(fit.exact.verdict)},
      {"unique", bool_str(fit.unique)},
      {"t_norm", format_double(fit.norm_certificate.t_norm)},
      {"certificate_bound", format_double(fit.norm_certificate.bound)},
      {"certificate_satisfied", bool_str(fit.norm_certificate.satisfied.verdict)},
      {"injective", inj ? bool_str(inj->injective) : ""},
      {"cond_ii", inj ? bool_str(inj->cond_ii) : ""},
      {"cond_iii", inj ? bool_str(inj->cond_iii) : ""},
      {"verdicts_agree", inj ? bool_str(inj->verdicts_agree) : ""},
      {"final_decay_norm", format_double(decay.norms.back())},
      {"decay_converged", bool_str(decay.converged.verdict)},
  };
  return csv_rows("fit", rows);
}

std::string cmd_perturb(const RunConfig& config) {
  Json report = report_header(config);
  std::vector<std::pair<std::string, std::string>> rows;

  if (config.generator_path) {
    const Json g = read_json_file(*config.generator_path);
    if (!g.is_object() || !g.contains("lambda1") || !g.contains("t") || !g.contains("theta1") || !g.contains("mu")) {
      throw ParseError(config.generator_path->string() + ": expected fields lambda1, t, theta1, mu");
    }
    const Operator lambda1 = operator_from_json(g.at("lambda1"), "lambda1");
    const Operator t = operator_from_json(g.at("t"), "t");
    const Operator theta1 = operator_from_json(g.at("theta1"), "theta1");
    const double mu = g.at("mu").get<double>();
    const int depth = g.value("depth", config.depth);
    const DecayPerturbationReport r = decay_perturbation(lambda1, t, theta1, mu, depth, config.tol);
    report["mode"] = "decay";
    report["depth"] = depth;
    report["report"] = r;
    rows = {{"mode", "decay"},
            {"h1", bool_str(r.h1)},
            {"h2", bool_str(r.h2.verdict)},
            {"hypothesis_met", bool_str(r.hypothesis_met)},
            {"perturbed_riesz_lower", format_double(r.perturbed_riesz.lower)},
            {"verdict", report["report"]["verdict"].get<std::string>()}};
  } else {
    if (!config.perturbed_path) throw PreconditionError("perturb needs --perturbed or --generator", 0.0);
    const GFrameFamily base = load_family(config);
    const GFrameFamily perturbed = read_family(*config.perturbed_path);
    const PerturbationReport r = riesz_perturbation(base, perturbed, PerturbationOptions{.tol = config.tol});
    report["mode"] = "riesz";
    report["report"] = r;
    rows = {{"mode", "riesz"},
            {"alpha_proof", format_double(r.alpha_proof)},
            {"alpha_statement", format_double(r.alpha_statement)},
            {"beta", format_double(r.beta)},
            {"predicted_lower", format_double(r.predicted_lower)},
            {"predicted_upper", format_double(r.predicted_upper)},
            {"measured_lower", format_double(r.measured.lower)},
            {"measured_upper", format_double(r.measured.upper)},
            {"hypothesis_met", bool_str(r.hypothesis_met)},
            {"envelope_holds", bool_str(r.envelope_holds)}};
  }
  if (config.format == OutputFormat::json) return report.dump(2) + "\n";
  return csv_rows("perturb", rows);
}

std::string cmd_sweep(const RunConfig& config) {
  if (config.sweep_points < 1) throw DomainError("sweep needs at least one point");
  const GFrameFamily base = load_family(config);
  const std::vector<Matrix> dir = sweep_direction(base, config.seed);

  std::vector<double> scales{0.0};
  for (int k = 0; k < config.sweep_points; ++k) {
    const double exponent = config.sweep_points == 1 ? -4.0 : -4.0 + 5.0 * k / (config.sweep_points - 1);
    scales.push_back(std::pow(10.0, exponent));
  }

  // Rows are independent; each runs on its own task.
  std::vector<std::future<PerturbationReport>> tasks;
  tasks.reserve(scales.size());
  for (double s : scales) {
    tasks.push_back(std::async(std::launch::async, [&base, &dir, &config, s] {
      return riesz_perturbation(base, displaced(base, dir, s),
                                PerturbationOptions{.tol = config.tol, .verify_mechanism = false});
    }));
  }
  std::vector<PerturbationReport> reports;
  reports.reserve(tasks.size());
  for (auto& t : tasks) reports.push_back(t.get());

  if (config.format == OutputFormat::json) {
    Json report = report_header(config);
    Json rows = Json::array();
    for (std::size_t k = 0; k < scales.size(); ++k) {
      Json row = reports[k];
      row["scale"] = scales[k];
      rows.push_back(std::move(row));
    }
    report["rows"] = std::move(rows);
    return report.dump(2) + "\n";
  }
  std::ostringstream os;
  os << "# gframe sweep csv " << kCsvVersion << "\n";
  os << "scale,alpha_proof,alpha_statement,beta,predicted_lower,predicted_upper,measured_lower,measured_upper,"
        "hypothesis_met\n";
  for (std::size_t k = 0; k < scales.size(); ++k) {
    const auto& r = reports[k];
    os << format_double(scales[k]) << ',' << format_double(r.alpha_proof) << ',' << format_double(r.alpha_statement)
       << ',' << format_double(r.beta) << ',' << format_double(r.predicted_lower) << ','
       << format_double(r.predicted_upper) << ',' << format_double(r.measured.lower) << ','
       << format_double(r.measured.upper) << ',' << bool_str(r.hypothesis_met) << '\n';
  }
  return os.str();
}

std::string cmd_demo(const RunConfig& config) {
  Json report = report_header(config);

  const auto [compact, compact_t] = build_compact_example(0.5, 4, config.depth);
  report["compact_example"] = Json{{"alpha", 0.5},
                                   {"depth", config.depth},
                                   {"frame_bounds", frame_bounds(compact)},
                                   {"limit_upper", 4.0 / 3.0},
                                   {"compactness", compactness_dichotomy(compact, compact_t, config.tol)}};

  const RieszBridge bridge = build_riesz_bridge_example(4, 0.5, config.seed);
  report["riesz_bridge"] = Json{{"classification", classify(bridge.family, config.tol)},
                                {"injectivity", injectivity_report(bridge.family, bridge.representation, config.tol)}};

  const double angle = 1.0;
  Matrix rot(2, 2);
  rot << std::cos(angle), -std::sin(angle), std::sin(angle), std::cos(angle);
  Matrix proj = Matrix::Zero(2, 2);
  proj(0, 0) = 1.0;
  report["unitary_obstruction"] = unitary_obstruction(Operator(proj), Operator(rot), {32, 64, 128});

  Matrix diag = Matrix::Zero(2, 2);
  diag(0, 0) = 0.5;
  diag(1, 1) = 1.0 / 3.0;
  report["decay_perturbation"] =
      decay_perturbation(Operator::identity(2), Operator(diag), Operator(Complex(0.1) * Matrix::Identity(2, 2)), 0.5, 1,
                         config.tol);

  if (config.format == OutputFormat::json) return report.dump(2) + "\n";
  const FrameBounds cb = frame_bounds(compact);
  return csv_rows("demo", {{"compact_lower", format_double(cb.lower)},
                           {"compact_upper", format_double(cb.upper)},
                           {"bridge_injective", bool_str(report["riesz_bridge"]["injectivity"]["injective"].get<bool>())},
                           {"unitary_obstruction_witnessed",
                            bool_str(report["unitary_obstruction"]["obstruction_witnessed"].get<bool>())}});
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    log(err, 1, "running " + to_string(config.command));
    log(err, 2, "tol=" + format_double(config.tol) + " depth=" + std::to_string(config.depth) +
                    " seed=" + std::to_string(config.seed));
    std::string text;
    switch (config.command) {
      case Command::analyze: text = cmd_analyze(config); break;
      case Command::fit: text = cmd_fit(config); break;
      case Command::perturb: text = cmd_perturb(config); break;
      case Command::sweep: text = cmd_sweep(config); break;
      case Command::demo: text = cmd_demo(config); break;
    }
    if (config.output_path == "-") {
      out << text;
    } else {
      write_text_file(config.output_path, text);
      log(err, 1, "wrote " + config.output_path);
    }
    return kExitOk;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const NumericalError& e) {
    err << "numerical error: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const Error& e) {
    err << "precondition failed: " << e.what() << '\n';
    return kExitPrecondition;
  } catch (const Json::exception& e) {
    err << "error: malformed input: " << e.what() << '\n';
    return kExitInput;
  }
}

}  // namespace gframe::cli
