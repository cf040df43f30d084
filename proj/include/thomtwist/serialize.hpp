#pragma once
// JSON (de)serialization for algebras, modules, resolutions, and charts.
//
// Every schema is an object carrying {"format": <integer version>, "kind":
// "algebra" | "module" | "resolution" | "chart"}. Matrices and vectors are
// stored sparsely; resolution differentials are (row, col, basis-index, coeff)
// tuples per stage, with the acting algebra element's degree implied by the
// two generators' internal degrees. A resolution save also records an FNV-1a
// content hash of the resolved module (algebra included) so a resume can
// refuse data that belongs to different input.
//
// Structural violations throw SchemaError carrying a JSON-path location
// (e.g. "$.stages[2].generators[0]").

#include <cstdint>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "thomtwist/graded_algebra.hpp"
#include "thomtwist/graded_module.hpp"
#include "thomtwist/presentation.hpp"
#include "thomtwist/resolution.hpp"
#include "thomtwist/twist_builder.hpp"

namespace tt {

using Json = nlohmann::json;

struct SchemaError : std::runtime_error {
    std::string path;
    SchemaError(std::string path_, const std::string& what_arg)
        : std::runtime_error(path_ + ": " + what_arg), path(std::move(path_)) {}
};

Json algebra_to_json(const FiniteGradedAlgebra& a);
FiniteGradedAlgebra algebra_from_json(const Json& j);

Json module_to_json(const GradedModule& m);    // embeds the algebra
GradedModule module_from_json(const Json& j);  // rebuilds the algebra too

// FNV-1a 64 over the canonical (sorted-key) JSON dump of the module.
uint64_t content_hash(const GradedModule& m);

Json resolution_to_json(const Resolution& r);
// Verifies kind/format and that the stored content hash equals
// content_hash(m); shapes every differential against m and its algebra.
ResolutionData resolution_data_from_json(const Json& j, const GradedModule& m);

Json chart_to_json(const ExtChart& c);
ExtChart chart_from_json(const Json& j);

// Cohomology presentations: module-style labels plus the (sparse, nonzero)
// product table and the Steenrod operation tables.
Json cohomology_to_json(const CohomologyPresentation& p);
CohomologyPresentation cohomology_from_json(const Json& j);

// TwistData relative to a presentation: {"target": ..., "classes": {name:
// {"degree": d, "coords": [...]}}}. Class coordinate lengths are shaped
// against the presentation on load.
Json twist_to_json(const TwistData& t);
TwistData twist_from_json(const Json& j, const CohomologyPresentation& pres);

}  // namespace tt
