#pragma once

#include <string>

#include "ppa/reflect.hpp"
#include "ppa/species.hpp"

// Single JSON-compatible text format for all artifacts. Field elements are
// written as strings ("3", "-1/2", prime-field residues as integers in
// [0, p)); rationals never appear as JSON numbers.

#include <json.hpp>

namespace ppa::io {

using json = nlohmann::ordered_json;

json load_file(const std::string& path);
void write_file(const std::string& path, const json& doc);

struct QuiverDoc {
  Quiver quiver;                               // un-doubled
  std::map<std::string, std::string> lambda_raw;  // vertex -> unparsed field element
};

QuiverDoc parse_quiver(const json& doc);
json serialize_quiver(const Quiver& q, const std::map<std::string, std::string>& lambda_raw = {});

LambdaVector realize_lambda(const Quiver& q, const std::map<std::string, std::string>& raw, const FieldSpec& f);
std::map<std::string, std::string> parse_lambda_map(const json& doc);

/// Generators with optional arrow permutations; a missing arrow_perm is
/// inferred when the vertex permutation determines it uniquely.
std::vector<PermPair> parse_generators(const json& doc, const Quiver& q);

Representation parse_rep(const json& doc, const Quiver& doubled, const FieldSpec& f);
json serialize_rep(const Representation& r);

/// Structure files carry the representation plus phi images for generator
/// element indices; the loader extends multiplicatively and validates the
/// family axioms.
SkewStructure parse_skew(const json& doc, const GroupAction& doubled_action, const FieldSpec& f);
json serialize_skew(const SkewStructure& s);

json serialize_qg(const QGData& qg, const EtaXi* par = nullptr);

}  // namespace ppa::io
