#pragma once
// The shipped corpus and the scenario runner.
//
// The corpus directory holds an index (index.json) of named presets — finite
// algebras, cohomology presentations, modules, and twist scenarios — each
// pointing at a payload file and carrying expected-results blocks: pinned
// regression constants with a provenance tag. Running a scenario rebuilds the
// whole computation (twisted module, minimal resolution, chart, read-offs)
// and re-verifies every expected block; a mismatch is a reported failure,
// never a silent update of the pinned value.

#include <string>
#include <vector>

#include "thomtwist/resolution.hpp"
#include "thomtwist/serialize.hpp"

namespace tt {

struct ExpectedBlock {
    std::string check;       // "module-dims", "ext-ranks", "read-off", ...
    std::string provenance;  // where the pinned value comes from
    Json value;              // check-specific payload
};

struct Preset {
    std::string name;
    std::string kind;          // "algebra" | "module" | "cohomology" | "twist-scenario"
    std::string payload_file;  // relative to the corpus directory
    std::vector<ExpectedBlock> expected;
};

struct Corpus {
    std::string dir;
    std::vector<Preset> presets;
};

// Reads <dir>/index.json. Throws SchemaError on structural problems and
// std::runtime_error when the directory or a file is missing.
Corpus load_corpus(const std::string& dir = "corpus");
const Preset* find_preset(const Corpus& c, const std::string& name);
Json load_payload(const Corpus& c, const Preset& p);

// Parsed twist-scenario payload. The scenario names its algebra and
// cohomology presets; twist classes are shaped against the presentation.
struct ScenarioPayload {
    std::string name;
    std::string algebra;
    std::string cohomology;
    TwistData twist;
    int s_max = 0, t_max = 0;
};
ScenarioPayload scenario_payload_from_json(const Json& j, const CohomologyPresentation& pres);

struct ScenarioResult {
    std::string name;
    bool ok = true;                       // every expected block verified
    std::vector<std::string> report;      // human-readable outcome lines
    std::vector<std::string> mismatches;  // expected-results violations
    ExtChart chart;
};

// Build just the twisted module of a named scenario (optionally reporting its
// window), without resolving or verifying expected blocks.
GradedModule build_scenario_module(const Corpus& corpus, const std::string& name,
                                   int* s_max = nullptr, int* t_max = nullptr);

// Build the named twist scenario end to end and verify its expected blocks.
// Throws on unknown names, unloadable payloads, or window violations;
// expectation mismatches are reported in the result, not thrown.
ScenarioResult run_scenario(const Corpus& corpus, const std::string& name);

// Run several scenarios; independent resolutions run concurrently when the
// THOMTWIST_THREADS environment variable allows more than one worker.
std::vector<ScenarioResult> run_scenarios(const Corpus& corpus,
                                          const std::vector<std::string>& names);
int thread_budget();  // THOMTWIST_THREADS, default 1, floor 1

// Rebuild a non-scenario preset from its constructors, compare against the
// payload file, and verify its expected blocks. Returns mismatch lines.
std::vector<std::string> verify_preset(const Corpus& corpus, const Preset& p);

// Pretty-print read-off factors as an abelian group ("ℤ", "ℤ²", "ℤ/8", "0").
std::string group_name(const std::vector<GroupFactor>& factors, int prime);

}  // namespace tt
