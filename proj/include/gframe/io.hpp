#pragma once

// JSON serialization of operators, families, ensemble specs and reports.
//
// Family file format:
//   { "dom_dim": n,
//     "members": [ { "rows": m, "cols": n, "entries": [[re, im], ...] }, ... ] }
// entries are row-major. Doubles are written in shortest round-trip form, so
// write/read reproduces every finite double bit for bit.

#include <filesystem>
#include <string>

#include <json.hpp>

#include "gframe/constructions.hpp"
#include "gframe/frame_core.hpp"
#include "gframe/perturbation.hpp"
#include "gframe/representation.hpp"
#include "gframe/types.hpp"

namespace gframe {

using Json = nlohmann::json;

/// Bumped whenever a report field is renamed or removed.
inline constexpr int kReportSchemaVersion = 1;

Json operator_to_json(const Operator& op);
/// `where` names the location for error messages (e.g. "members[3]").
Operator operator_from_json(const Json& j, const std::string& where = "operator");

Json family_to_json(const GFrameFamily& family);
GFrameFamily family_from_json(const Json& j);

Json spec_to_json(const EnsembleSpec& spec);
EnsembleSpec spec_from_json(const Json& j);

/// Parses a JSON document; ParseError names the source and byte position on failure.
Json parse_json(const std::string& text, const std::string& source);
Json read_json_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

GFrameFamily read_family(const std::filesystem::path& path);
void write_family(const std::filesystem::path& path, const GFrameFamily& family);

void to_json(Json& j, const Check& c);
void to_json(Json& j, const FrameBounds& b);
void to_json(Json& j, const Classification& c);
void to_json(Json& j, const NormCertificate& c);
void to_json(Json& j, const RepresentationFit& f);
void to_json(Json& j, const ShiftInvarianceReport& r);
void to_json(Json& j, const RangeSpanReport& r);
void to_json(Json& j, const InjectivityReport& r);
void to_json(Json& j, const DecayTrace& d);
void to_json(Json& j, const GrowthRow& g);
void to_json(Json& j, const UnitaryObstructionReport& r);
void to_json(Json& j, const MixedObstructionReport& r);
void to_json(Json& j, const SimilarityReport& r);
void to_json(Json& j, const GeneratorBoundReport& r);
void to_json(Json& j, const CompactnessReport& r);
void to_json(Json& j, const MechanismCheck& m);
void to_json(Json& j, const PerturbationReport& r);
void to_json(Json& j, const DecayPerturbationReport& r);
void to_json(Json& j, const DualNormReport& r);

}  // namespace gframe
