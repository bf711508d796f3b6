#include "gframe/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "gframe/errors.hpp"

namespace gframe {
namespace {

// Non-finite numbers have no JSON literal; they are written as null.
Json number(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }

const Json& require_field(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(where + ": missing field '" + key + "'");
  return j.at(key);
}

Index require_positive_int(const Json& j, const char* key, const std::string& where) {
  const Json& v = require_field(j, key, where);
  if (!v.is_number_integer() || v.get<long long>() <= 0) {
    throw ParseError(where + ": field '" + key + "' must be a positive integer");
  }
  return static_cast<Index>(v.get<long long>());
}

Json vector_to_json(const std::vector<double>& v) {
  Json out = Json::array();
  for (double x : v) out.push_back(number(x));
  return out;
}

}  // namespace

Json operator_to_json(const Operator& op) {
  Json entries = Json::array();
  const Matrix& m = op.matrix();
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) entries.push_back(Json::array({m(i, j).real(), m(i, j).imag()}));
  }
  return Json{{"rows", m.rows()}, {"cols", m.cols()}, {"entries", std::move(entries)}};
}

Operator operator_from_json(const Json& j, const std::string& where) {
  const Index rows = require_positive_int(j, "rows", where);
  const Index cols = require_positive_int(j, "cols", where);
  const Json& entries = require_field(j, "entries", where);
  if (!entries.is_array() || static_cast<Index>(entries.size()) != rows * cols) {
    throw ParseError(where + ": 'entries' must hold rows*cols = " + std::to_string(rows * cols) + " pairs");
  }
  Matrix m(rows, cols);
  for (Index k = 0; k < rows * cols; ++k) {
    const Json& e = entries[static_cast<std::size_t>(k)];
    if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number()) {
      throw ParseError(where + ": entries[" + std::to_string(k) + "] must be a [re, im] pair of numbers");
    }
    m(k / cols, k % cols) = Complex(e[0].get<double>(), e[1].get<double>());
  }
  if (!m.allFinite()) throw ParseError(where + ": entries must be finite");
  return Operator(std::move(m));
}

Json family_to_json(const GFrameFamily& family) {
  Json members = Json::array();
  for (const auto& m : family.members()) members.push_back(operator_to_json(m));
  return Json{{"dom_dim", family.dom_dim()}, {"members", std::move(members)}};
}

GFrameFamily family_from_json(const Json& j) {
  const Index n = require_positive_int(j, "dom_dim", "family");
  const Json& members = require_field(j, "members", "family");
  if (!members.is_array() || members.empty()) throw ParseError("family: 'members' must be a nonempty array");
  std::vector<Operator> ops;
  ops.reserve(members.size());
  for (std::size_t i = 0; i < members.size(); ++i) {
    const std::string where = "members[" + std::to_string(i) + "]";
    Operator op = operator_from_json(members[i], where);
    if (op.dom_dim() != n) throw ParseError(where + ": cols differs from dom_dim");
    ops.push_back(std::move(op));
  }
  return GFrameFamily(std::move(ops));
}

Json spec_to_json(const EnsembleSpec& spec) {
  Json j{{"kind", to_string(spec.kind)},
         {"dom_dim", spec.dom_dim},
         {"cod_dim", spec.cod_dim},
         {"member_count", spec.member_count},
         {"seed", spec.seed},
         {"alpha", spec.alpha},
         {"lambda1_seed", spec.lambda1_seed},
         {"contraction", spec.contraction}};
  if (!spec.cod_dims.empty()) j["cod_dims"] = spec.cod_dims;
  return j;
}

EnsembleSpec spec_from_json(const Json& j) {
  if (!j.is_object()) throw ParseError("spec: expected a JSON object");
  EnsembleSpec s;
  try {
    s.kind = ensemble_kind_from_string(require_field(j, "kind", "spec").get<std::string>());
    s.dom_dim = require_positive_int(j, "dom_dim", "spec");
    s.cod_dim = j.value("cod_dim", s.kind == EnsembleKind::compact_example ? s.dom_dim : Index{1});
    s.member_count = j.value("member_count", j.value("trunc", s.member_count));
    s.seed = j.value("seed", std::uint64_t{0});
    s.alpha = j.value("alpha", s.alpha);
    s.lambda1_seed = j.value("lambda1_seed", std::uint64_t{0});
    s.contraction = j.value("contraction", s.contraction);
    if (j.contains("cod_dims")) s.cod_dims = j.at("cod_dims").get<std::vector<Index>>();
  } catch (const Json::exception& e) {
    throw ParseError(std::string("spec: ") + e.what());
  } catch (const DomainError& e) {
    throw ParseError(std::string("spec: ") + e.what());
  }
  s.validate();
  return s;
}

Json parse_json(const std::string& text, const std::string& source) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError(source + ": parse error at byte " + std::to_string(e.byte) + ": " + e.what());
  }
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path.string() + ": cannot open file");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_json(buffer.str(), path.string());
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw ParseError(path.string() + ": cannot open file for writing");
  out << text;
  if (!out) throw ParseError(path.string() + ": write failed");
}

GFrameFamily read_family(const std::filesystem::path& path) {
  const Json j = read_json_file(path);
  try {
    return family_from_json(j);
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

void write_family(const std::filesystem::path& path, const GFrameFamily& family) {
  write_text_file(path, family_to_json(family).dump(2) + "\n");
}

void to_json(Json& j, const Check& c) {
  j = Json{{"value", number(c.value)}, {"threshold", number(c.threshold)}, {"verdict", c.verdict}};
}

void to_json(Json& j, const FrameBounds& b) { j = Json{{"lower", number(b.lower)}, {"upper", number(b.upper)}}; }

void to_json(Json& j, const Classification& c) {
  j = Json{{"is_g_bessel", c.is_g_bessel},
           {"is_g_frame", c.is_g_frame},
           {"is_g_complete", c.is_g_complete},
           {"is_g_riesz_sequence", c.is_g_riesz_sequence},
           {"is_g_riesz_basis", c.is_g_riesz_basis},
           {"is_g_orthonormal", c.is_g_orthonormal},
           {"bounds", c.bounds},
           {"riesz_bounds", c.riesz},
           {"gram_defect", number(c.gram_defect)},
           {"parseval_defect", number(c.parseval_defect)},
           {"tolerance_used", c.tolerance_used}};
}

void to_json(Json& j, const NormCertificate& c) {
  j = Json{{"t_norm", number(c.t_norm)}, {"bound", number(c.bound)}, {"applicable", c.applicable}, {"satisfied", c.satisfied}};
}

void to_json(Json& j, const RepresentationFit& f) {
  j = Json{{"t_matrix", operator_to_json(f.t_matrix)},
           {"step_residuals", vector_to_json(f.step_residuals)},
           {"max_residual", number(f.max_residual)},
           {"exact", f.exact},
           {"unique", f.unique},
           {"stacked_rank", f.stacked_rank},
           {"norm_certificate", f.norm_certificate}};
}

void to_json(Json& j, const ShiftInvarianceReport& r) {
  j = Json{{"kernel_dim", r.kernel_dim},
           {"defect", number(r.defect)},
           {"interior_kernel_dim", r.interior_kernel_dim},
           {"interior_defect", number(r.interior_defect)},
           {"edge_effect", r.edge_effect},
           {"invariant", r.invariant},
           {"independent_prefix_length", r.independent_prefix_length},
           {"prefix_independent", r.prefix_independent}};
}

void to_json(Json& j, const RangeSpanReport& r) {
  j = Json{{"rank_range_t_adjoint", r.rank_range_t_adjoint},
           {"rank_span", r.rank_span},
           {"projector_distance", r.projector_distance}};
}

void to_json(Json& j, const InjectivityReport& r) {
  j = Json{{"sigma_min_t", Check{r.sigma_min_t, r.injectivity_threshold, r.injective}},
           {"sufficient_condition",
            Json{{"lambda1_norm", number(r.sufficient_condition.lambda1_norm)},
                 {"sqrt_lower", number(r.sufficient_condition.sqrt_lower)},
                 {"holds", r.sufficient_condition.holds}}},
           {"cond_ii", Check{r.max_principal_cosine, 1.0, r.cond_ii}},
           {"cond_iii", Check{r.range_defect, 0.0, r.cond_iii}},
           {"injective", r.injective},
           {"verdicts_agree", r.verdicts_agree},
           {"sufficient_consistent", r.sufficient_consistent}};
}

void to_json(Json& j, const DecayTrace& d) {
  j = Json{{"norms", vector_to_json(d.norms)},
           {"tail_energies", vector_to_json(d.tail_energies)},
           {"lower_bound", number(d.lower_bound)},
           {"chain", Check{d.chain_margin, 0.0, d.chain_holds}},
           {"converged", d.converged}};
}

void to_json(Json& j, const GrowthRow& g) {
  j = Json{{"depth", g.depth},
           {"bounds", g.bounds},
           {"upper_over_depth", number(g.upper_over_depth)},
           {"witness_energy", number(g.witness_energy)}};
}

void to_json(Json& j, const UnitaryObstructionReport& r) {
  j = Json{{"unitary_defect", number(r.unitary_defect)},
           {"growth", r.growth},
           {"linear_growth", r.linear_growth},
           {"decay_fails", r.decay_fails},
           {"final_witness_norm", number(r.witness_decay.norms.back())},
           {"obstruction_witnessed", r.obstruction_witnessed}};
}

void to_json(Json& j, const MixedObstructionReport& r) {
  j = Json{{"mixed_operator", operator_to_json(r.mixed_operator)},
           {"unitary_defect", number(r.unitary_defect)},
           {"generators", r.generators},
           {"all_obstructed", r.all_obstructed}};
}

void to_json(Json& j, const SimilarityReport& r) {
  j = Json{{"termwise_defect", number(r.termwise_defect)},
           {"sum_defect", number(r.sum_defect)},
           {"lambda_bounds", r.lambda_bounds},
           {"theta_bounds", r.theta_bounds},
           {"same_verdict", r.same_verdict},
           {"v_unique", r.v_unique},
           {"remark_residual", number(r.remark_residual)},
           {"remark_fit_distance", r.remark_fit_distance ? number(*r.remark_fit_distance) : Json(nullptr)},
           {"holds", r.holds}};
}

void to_json(Json& j, const GeneratorBoundReport& r) {
  j = Json{{"lower_bound", number(r.lower_bound)},
           {"candidate_bounds", r.candidate_bounds},
           {"candidate_bounds_doubled", r.candidate_bounds_doubled},
           {"candidate_is_g_frame", r.candidate_is_g_frame},
           {"bounds_stable", r.bounds_stable},
           {"hypothesis_met", r.hypothesis_met},
           {"margin", number(r.margin)},
           {"conclusion_holds", r.conclusion_holds}};
}

void to_json(Json& j, const CompactnessReport& r) {
  j = Json{{"rank_t", r.rank_t},
           {"dom_dim", r.dom_dim},
           {"cod_dim", r.cod_dim},
           {"codomain_finite", r.codomain_finite},
           {"low_rank", r.low_rank},
           {"is_g_frame", r.is_g_frame},
           {"tail_span_rank", r.tail_span_rank},
           {"forced_rank_floor", r.forced_rank_floor},
           {"mechanism_holds", r.mechanism_holds}};
}

void to_json(Json& j, const MechanismCheck& m) {
  j = Json{{"identity_defect", number(m.identity_defect)}, {"contraction", number(m.contraction)}, {"holds", m.holds}};
}

void to_json(Json& j, const PerturbationReport& r) {
  j = Json{{"alpha_statement", number(r.alpha_statement)},
           {"alpha_proof", Check{r.alpha_proof, 1.0, r.hypothesis_met}},
           {"beta", number(r.beta)},
           {"base", r.base},
           {"predicted_lower", number(r.predicted_lower)},
           {"predicted_upper", number(r.predicted_upper)},
           {"measured", r.measured},
           {"hypothesis_met", r.hypothesis_met},
           {"lower_envelope", r.lower_envelope},
           {"upper_envelope", r.upper_envelope},
           {"envelope_holds", r.envelope_holds}};
  if (r.mechanism) j["mechanism"] = *r.mechanism;
}

void to_json(Json& j, const DecayPerturbationReport& r) {
  j = Json{{"mu", r.mu},
           {"theta1_norm", number(r.theta1_norm)},
           {"base_lower", number(r.base_lower)},
           {"h1", Check{r.h1_worst_ratio, 1.0, r.h1}},
           {"h2", r.h2},
           {"beta_sum", number(r.beta_sum)},
           {"beta_bound", number(r.beta_bound)},
           {"alpha_bound", number(r.alpha_bound)},
           {"hypothesis_met", r.hypothesis_met},
           {"perturbed_riesz", r.perturbed_riesz},
           {"verdict", !r.hypothesis_met ? "hypothesis not met"
                       : *r.riesz_preserved ? "g-Riesz preserved"
                                            : "g-Riesz lost"},
           {"envelope", r.envelope}};
}

void to_json(Json& j, const DualNormReport& r) {
  j = Json{{"lower_bound", number(r.lower_bound)}, {"max_ratio", r.within_bound}};
}

}  // namespace gframe
