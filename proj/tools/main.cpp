// thomtwist — command-line front end for the twisted-module Ext engine.
//
// Subcommands: algebra build|info, module validate|sum|tensor|suspend|cyclic,
// twist apply, resolve, chart, readoff, collapse, lescheck, scenario run|list.
//
// Exit codes: 0 success; 1 a computed check failed (module action identities,
// scenario expected-results, LES rank bookkeeping); 2 malformed input (bad
// JSON, schema violations, unknown presets, window violations, usage errors).
// Every failure writes a final machine-readable stderr line of the form
//   thomtwist-error: {"code":...,"kind":"...","message":"..."}

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "thomtwist/chart_io.hpp"
#include "thomtwist/presets.hpp"
#include "thomtwist/scenario.hpp"
#include "thomtwist/serialize.hpp"
#include "thomtwist/twist_builder.hpp"

using namespace tt;

namespace {

// ------------------------------------------------------------- failures ---

struct CliFailure {
    int code;
    std::string kind, message;
};

[[noreturn]] void fail(int code, const std::string& kind, const std::string& message) {
    throw CliFailure{code, kind, message};
}

void trailer(int code, const std::string& kind, const std::string& message) {
    std::cerr << "error: " << message << "\n";
    Json j{{"code", code}, {"kind", kind}, {"message", message}};
    std::cerr << "thomtwist-error: " << j.dump() << "\n";
}

// ------------------------------------------------------------- options ----

struct Opts {
    std::string corpus_dir = "corpus";
    int prime = 0;  // 0 = no cross-check requested
    std::string out;
    std::string format = "ascii";
    std::string products = "h0";
    std::string resume;
    std::string relations_file;
    std::string input, input2;
    std::vector<std::string> inputs;
    std::vector<int> stems;
    int max_s = -1, max_t = -1;  // -1 = not given
    int by = 0;
    int r_max = -1;
    int truncate_at = -1;
    bool raw = false;
};

Opts o;
std::optional<Corpus> g_corpus;

Corpus& corpus() {
    if (!g_corpus) g_corpus = load_corpus(o.corpus_dir);
    return *g_corpus;
}

void check_prime(int got) {
    if (o.prime != 0 && o.prime != got)
        fail(2, "prime-mismatch",
             "loaded object works over F_" + std::to_string(got) + " but --prime " +
                 std::to_string(o.prime) + " was requested");
}

// --------------------------------------------------------------- loading --

Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(2, "io", "cannot open " + path);
    return Json::parse(in);  // throws Json::parse_error -> exit 2
}

bool is_file(const std::string& s) {
    return std::filesystem::exists(s) && !std::filesystem::is_directory(s);
}

AlgebraPtr load_algebra_input(const std::string& in) {
    AlgebraPtr a;
    if (is_file(in))
        a = std::make_shared<FiniteGradedAlgebra>(algebra_from_json(read_json_file(in)));
    else
        a = presets::algebra(in);  // throws std::invalid_argument for unknown names
    check_prime(a->prime);
    return a;
}

// Build the twisted module of a scenario payload, resolving its algebra and
// cohomology preset references against the corpus.
GradedModule module_from_scenario_payload(const Json& pj, int* sw, int* tw) {
    Corpus& c = corpus();
    const Preset* coh = find_preset(c, pj.value("cohomology", std::string()));
    if (!coh || coh->kind != "cohomology")
        fail(2, "unknown-preset", "scenario payload references an unknown cohomology preset");
    const Preset* alg = find_preset(c, pj.value("algebra", std::string()));
    if (!alg || alg->kind != "algebra")
        fail(2, "unknown-preset", "scenario payload references an unknown algebra preset");
    CohomologyPresentation pres = cohomology_from_json(load_payload(c, *coh));
    auto ap = std::make_shared<FiniteGradedAlgebra>(algebra_from_json(load_payload(c, *alg)));
    ScenarioPayload sp = scenario_payload_from_json(pj, pres);
    if (sw) *sw = sp.s_max;
    if (tw) *tw = sp.t_max;
    return build_twisted_module(pres, ap, sp.twist);
}

// A module input is a JSON file (module payload or twist-scenario payload) or
// a corpus preset name of kind "module" or "twist-scenario". Scenario inputs
// report their default window through sw/tw.
GradedModule load_module_input(const std::string& in, int* sw = nullptr, int* tw = nullptr) {
    GradedModule m;
    if (is_file(in)) {
        Json j = read_json_file(in);
        if (j.is_object() && j.value("kind", std::string()) == "twist-scenario")
            m = module_from_scenario_payload(j, sw, tw);
        else
            m = module_from_json(j);
    } else {
        Corpus& c = corpus();
        const Preset* p = find_preset(c, in);
        if (!p)
            fail(2, "unknown-preset",
                 "'" + in + "' is neither a file nor a corpus preset (see scenario list)");
        if (p->kind == "module")
            m = module_from_json(load_payload(c, *p));
        else if (p->kind == "twist-scenario")
            m = build_scenario_module(c, in, sw, tw);
        else
            fail(2, "unknown-preset", "'" + in + "' is a " + p->kind +
                                          " preset; expected a module or twist scenario");
    }
    check_prime(m.prime());
    return m;
}

// ---------------------------------------------------------------- output --

void emit(const std::string& text) {
    if (o.out.empty()) {
        std::cout << text;
        if (text.empty() || text.back() != '\n') std::cout << '\n';
        return;
    }
    std::ofstream f(o.out);
    if (!f) fail(2, "io", "cannot write " + o.out);
    f << text;
    if (text.empty() || text.back() != '\n') f << '\n';
    std::cout << "wrote " << o.out << "\n";
}

std::string dims_line(const GradedModule& m) {
    std::ostringstream os;
    os << "{";
    bool first = true;
    for (int d : m.degrees()) {
        if (!std::exchange(first, false)) os << ", ";
        os << d << ":" << m.dim(d);
    }
    os << "}";
    return os.str();
}

std::vector<std::string> split_csv(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : s) {
        if (ch == ',') {
            if (!cur.empty()) out.push_back(cur);
            cur.clear();
        } else if (!std::isspace(static_cast<unsigned char>(ch))) {
            cur += ch;
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

// ------------------------------------------------------------ resolution --

// Shared by resolve/chart/readoff/collapse: load the input, settle the window
// (scenario default or explicit flags), validate the module, build (or resume)
// the resolution.
Resolution build_resolution(const std::string& in) {
    int sw = -1, tw = -1;
    GradedModule m = load_module_input(in, &sw, &tw);
    int s_max = o.max_s >= 0 ? o.max_s : sw;
    int t_max = o.max_t >= 0 ? o.max_t : tw;
    if (s_max < 0 || t_max < 0)
        fail(2, "usage", "--max-s and --max-t are required for module inputs");

    auto failures = m.validate();
    if (!failures.empty()) {
        for (const auto& f : failures)
            std::cout << "FAIL: zero word combination (word degree " << f.word_degree
                      << ") acts nonzero on degree-" << f.source_degree << " basis element #"
                      << f.witness_input << "\n";
        trailer(1, "validation",
                "module fails " + std::to_string(failures.size()) + " action identities");
        std::exit(1);
    }

    if (!o.resume.empty()) {
        ResolutionData data = resolution_data_from_json(read_json_file(o.resume), m);
        return Resolution(std::move(m), s_max, t_max, data);
    }
    return Resolution(std::move(m), s_max, t_max);
}

std::vector<std::string> parse_products() {
    auto v = split_csv(o.products);
    if (v.empty()) v = {"h0"};
    return v;
}

// ----------------------------------------------------------- subcommands --

int cmd_algebra_build() {
    AlgebraPtr a = load_algebra_input(o.input);
    emit(algebra_to_json(*a).dump(1));
    return 0;
}

int cmd_algebra_info() {
    AlgebraPtr a = load_algebra_input(o.input);
    std::ostringstream os;
    os << "algebra " << a->name << ": p=" << a->prime << ", total dim " << a->total_dim()
       << ", top degree " << a->top_degree << (a->complete ? "" : " (truncated view)") << "\n";
    os << "dims: {";
    bool first = true;
    for (int d = 0; d <= a->top_degree; ++d)
        if (a->dim(d)) {
            if (!std::exchange(first, false)) os << ", ";
            os << d << ":" << a->dim(d);
        }
    os << "}\ngenerators:";
    for (const auto& g : a->generators) os << " " << g.name << "(deg " << g.degree << ")";
    os << "\n";
    emit(os.str());
    return 0;
}

int cmd_module_validate() {
    GradedModule m = load_module_input(o.input);
    auto failures = m.validate();
    if (failures.empty()) {
        std::cout << "validation: ok — dims " << dims_line(m)
                  << (m.truncation ? " (truncated at " + std::to_string(*m.truncation) + ")"
                                   : " (complete)")
                  << "\n";
        return 0;
    }
    for (const auto& f : failures)
        std::cout << "FAIL: zero word combination (word degree " << f.word_degree
                  << ") acts nonzero on degree-" << f.source_degree << " basis element #"
                  << f.witness_input << "\n";
    trailer(1, "validation",
            "module fails " + std::to_string(failures.size()) + " action identities");
    return 1;
}

// Module combinators require one shared algebra instance; inputs loaded from
// separate files carry their own copies, so rebind structurally equal ones.
void unify_algebras(std::vector<GradedModule*> mods) {
    if (mods.size() < 2) return;
    Json ref = algebra_to_json(*mods[0]->alg);
    for (size_t i = 1; i < mods.size(); ++i) {
        if (mods[i]->alg.get() == mods[0]->alg.get()) continue;
        if (algebra_to_json(*mods[i]->alg) != ref)
            fail(2, "invalid-argument", "inputs live over different algebras");
        mods[i]->alg = mods[0]->alg;
    }
}

int cmd_module_sum() {
    std::vector<GradedModule> mods;
    for (const auto& in : o.inputs) mods.push_back(load_module_input(in));
    std::vector<GradedModule*> mptrs;
    for (auto& m : mods) mptrs.push_back(&m);
    unify_algebras(mptrs);
    std::vector<const GradedModule*> ptrs(mptrs.begin(), mptrs.end());
    emit(module_to_json(direct_sum(ptrs)).dump(1));
    return 0;
}

int cmd_module_tensor() {
    GradedModule a = load_module_input(o.input);
    GradedModule b = load_module_input(o.input2);
    unify_algebras({&a, &b});
    emit(module_to_json(tensor_product(a, b)).dump(1));
    return 0;
}

int cmd_module_suspend() {
    GradedModule m = load_module_input(o.input);
    emit(module_to_json(suspend(m, o.by)).dump(1));
    return 0;
}

int cmd_module_cyclic() {
    AlgebraPtr a = load_algebra_input(o.input);
    std::vector<WordRelation> rels;
    if (!o.relations_file.empty()) {
        Json j = read_json_file(o.relations_file);
        const Json* arr = &j;
        if (j.is_object() && j.contains("relations")) arr = &j["relations"];
        if (!arr->is_array())
            fail(2, "schema", o.relations_file + ": expected an array of relations");
        for (const auto& rel : *arr) {
            WordRelation wr;
            if (!rel.is_array()) fail(2, "schema", "each relation must be an array of terms");
            for (const auto& term : rel) {
                if (!term.is_array() || term.size() != 2 || !term[0].is_number_integer() ||
                    !term[1].is_array())
                    fail(2, "schema", "each term must be [coeff, [generator indices]]");
                std::vector<int> word;
                for (const auto& gi : term[1]) {
                    if (!gi.is_number_integer() || gi.get<int>() < 0 ||
                        gi.get<int>() >= static_cast<int>(a->generators.size()))
                        fail(2, "schema", "generator index out of range in relation word");
                    word.push_back(gi.get<int>());
                }
                wr.terms.emplace_back(term[0].get<int>(), std::move(word));
            }
            rels.push_back(std::move(wr));
        }
    }
    std::optional<int> trunc;
    if (o.truncate_at >= 0) trunc = o.truncate_at;
    emit(module_to_json(cyclic_module(a, rels, trunc).module).dump(1));
    return 0;
}

int cmd_twist_apply() {
    GradedModule m;
    if (is_file(o.input))
        m = module_from_scenario_payload(read_json_file(o.input), nullptr, nullptr);
    else
        m = build_scenario_module(corpus(), o.input);
    check_prime(m.prime());
    emit(module_to_json(m).dump(1));
    return 0;
}

int cmd_resolve() {
    Resolution res = build_resolution(o.input);
    if (!res.d2_check() || !res.minimality_check() || !res.exactness_check()) {
        trailer(1, "audit", "resolution failed its internal d^2/minimality/exactness audit");
        return 1;
    }
    std::string json = resolution_to_json(res).dump(1);
    if (!o.out.empty()) {
        int total = 0;
        for (int s = 0; s <= res.s_max(); ++s) total += static_cast<int>(res.stage(s).size());
        std::cout << "resolved through s<=" << res.s_max() << ", t<=" << res.t_max() << ": "
                  << total << " free generators\n";
    }
    emit(json);
    return 0;
}

int cmd_chart() {
    Resolution res = build_resolution(o.input);
    auto products = parse_products();
    std::optional<Resolution> ground;
    for (const auto& p : products)
        if (p == "beta" && !ground) {
            GradedModule triv = trivial_module(std::shared_ptr<const FiniteGradedAlgebra>(
                res.module().alg));
            ground.emplace(std::move(triv), res.s_max(), res.t_max());
        }
    ExtChart chart = ext_chart(res, products, ground ? &*ground : nullptr);
    if (o.format == "ascii")
        emit(emit_ascii(chart));
    else if (o.format == "svg")
        emit(emit_svg(chart));
    else
        emit(chart_to_json(chart).dump(1));
    return 0;
}

int cmd_readoff() {
    Resolution res = build_resolution(o.input);
    std::vector<int> stems = o.stems;
    if (stems.empty())
        for (int n = 0; n <= res.t_max(); ++n) stems.push_back(n);
    std::ostringstream os;
    os << "read-off caveat: assuming collapse and no hidden extensions\n";
    for (int n : stems) {
        ReadOff ro = read_off_groups(res, n);
        if (ro.refused) {
            os << "stem " << n << ": outside window (" << ro.error << ")\n";
            continue;
        }
        os << "stem " << n << ": " << group_name(ro.factors, res.prime());
        if (ro.extrapolated) os << "  [tower extrapolated beyond window]";
        os << "\n";
    }
    emit(os.str());
    return 0;
}

int cmd_collapse() {
    Resolution res = build_resolution(o.input);
    int r_max = o.r_max > 0 ? o.r_max : res.s_max();
    auto cands = collapse_check(res, r_max, !o.raw);
    std::ostringstream os;
    os << "possible differentials (r<=" << r_max << ", "
       << (o.raw ? "raw" : "h0-linearity pruning") << "): ";
    if (cands.empty()) {
        os << "none\n";
    } else {
        os << cands.size() << "\n";
        for (const auto& c : cands)
            os << "  d" << c.r << ": (" << c.s << "," << c.t - c.s << ") -> (" << c.s2 << ","
               << c.t2 - c.s2 << ")  [stem coordinates]\n";
    }
    emit(os.str());
    return 0;
}

int cmd_lescheck() {
    std::vector<std::string> names = o.inputs;
    if (names.size() == 1 && names[0] == "all") names = presets::ses_names();
    bool any_problem = false;
    std::ostringstream os;
    for (const auto& name : names) {
        presets::SesSpec spec = presets::ses(name);
        check_prime(spec.mid.prime());
        int sw = o.max_s >= 0 ? o.max_s : spec.s_max;
        int tw = o.max_t >= 0 ? o.max_t : spec.t_max;
        Resolution sub(spec.sub, sw + 1, tw + 1), mid(spec.mid, sw + 1, tw + 1),
            quot(spec.quot, sw + 1, tw + 1);
        LesReport rep = les_rank_check(sub, mid, quot, spec.inclusion, spec.quotient, sw, tw);
        os << "lescheck " << name << " (s<=" << sw << ", t<=" << tw
           << "): " << (rep.ok ? "exactness bookkeeping ok" : "FAILED") << "\n";
        for (const auto& p : rep.problems) {
            os << "  problem at (s=" << p.s << ", t=" << p.t << "): " << p.kind << " rank "
               << p.got << ", expected " << p.expected << "\n";
            any_problem = true;
        }
        std::vector<std::string> forced;
        for (const auto& [cell, r] : rep.forced_boundary)
            if (r > 0)
                forced.push_back("(" + std::to_string(cell.first) + "," +
                                 std::to_string(cell.second) + "):" + std::to_string(r));
        os << "  forced connecting ranks: ";
        if (forced.empty()) {
            os << "none\n";
        } else {
            for (size_t i = 0; i < forced.size(); ++i) os << (i ? " " : "") << forced[i];
            os << "\n";
        }
    }
    emit(os.str());
    if (any_problem) {
        trailer(1, "les", "long-exact-sequence rank bookkeeping failed");
        return 1;
    }
    return 0;
}

int cmd_scenario_run() {
    Corpus& c = corpus();
    std::vector<std::string> names = o.inputs;
    if (names.size() == 1 && names[0] == "all") {
        names.clear();
        for (const auto& p : c.presets)
            if (p.kind == "twist-scenario") names.push_back(p.name);
    }
    auto results = run_scenarios(c, names);
    std::ostringstream os;
    int bad = 0;
    for (const auto& r : results) {
        for (const auto& line : r.report) os << line << "\n";
        for (const auto& m : r.mismatches) os << "!! " << m << "\n";
        if (!r.ok) ++bad;
        os << "\n";
    }
    os << (static_cast<int>(results.size()) - bad) << "/" << results.size()
       << " scenarios verified\n";
    emit(os.str());
    if (bad) {
        trailer(1, "expected-mismatch",
                std::to_string(bad) + " scenario(s) disagree with their pinned expected results");
        return 1;
    }
    return 0;
}

int cmd_scenario_list() {
    Corpus& c = corpus();
    std::ostringstream os;
    for (const auto& p : c.presets)
        os << p.name << "  (" << p.kind << ", " << p.expected.size() << " expected blocks)\n";
    emit(os.str());
    return 0;
}

void add_common(CLI::App* cmd) {
    cmd->add_option("--corpus", o.corpus_dir, "corpus directory (default: corpus)");
    cmd->add_option("--prime", o.prime, "cross-check the prime of the loaded input")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--out", o.out, "write output to a file instead of stdout");
}

void add_window(CLI::App* cmd) {
    cmd->add_option("--max-s", o.max_s, "filtration bound of the window");
    cmd->add_option("--max-t", o.max_t, "internal-degree bound of the window");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "twisted-module Ext engine: finite Steenrod-type algebras, Thom-twisted "
        "modules, minimal resolutions, Ext charts, and bordism read-offs"};
    app.require_subcommand(1);
    std::function<int()> action;

    // algebra
    auto* alg = app.add_subcommand("algebra", "build or inspect a finite graded algebra");
    alg->require_subcommand(1);
    auto* alg_build = alg->add_subcommand("build", "serialize an algebra preset to JSON");
    alg_build->add_option("name", o.input, "preset name or algebra JSON file")->required();
    add_common(alg_build);
    alg_build->callback([&] { action = cmd_algebra_build; });
    auto* alg_info = alg->add_subcommand("info", "print prime, dimensions, generators");
    alg_info->add_option("name", o.input, "preset name or algebra JSON file")->required();
    add_common(alg_info);
    alg_info->callback([&] { action = cmd_algebra_info; });

    // module
    auto* mod = app.add_subcommand("module", "construct and check graded modules");
    mod->require_subcommand(1);
    auto* mv = mod->add_subcommand("validate", "check every algebra relation on the module");
    mv->add_option("input", o.input, "module/scenario preset or JSON file")->required();
    add_common(mv);
    mv->callback([&] { action = cmd_module_validate; });
    auto* ms = mod->add_subcommand("sum", "direct sum of two or more modules");
    ms->add_option("inputs", o.inputs, "module inputs")->expected(2, -1);
    add_common(ms);
    ms->callback([&] { action = cmd_module_sum; });
    auto* mt = mod->add_subcommand("tensor", "tensor product with the diagonal action");
    mt->add_option("left", o.input, "left factor")->required();
    mt->add_option("right", o.input2, "right factor")->required();
    add_common(mt);
    mt->callback([&] { action = cmd_module_tensor; });
    auto* mu = mod->add_subcommand("suspend", "shift a module up in degree");
    mu->add_option("input", o.input, "module input")->required();
    mu->add_option("--by", o.by, "suspension amount")->required();
    add_common(mu);
    mu->callback([&] { action = cmd_module_suspend; });
    auto* mc = mod->add_subcommand("cyclic", "quotient of the free rank-1 module by word relations");
    mc->add_option("algebra", o.input, "algebra preset name or JSON file")->required();
    mc->add_option("--relations", o.relations_file,
                   "JSON file: [[[coeff,[generator indices]],...],...]");
    mc->add_option("--truncate", o.truncate_at, "truncate the result at this degree");
    add_common(mc);
    mc->callback([&] { action = cmd_module_cyclic; });

    // twist
    auto* tw = app.add_subcommand("twist", "apply twist data to a cohomology presentation");
    tw->require_subcommand(1);
    auto* ta = tw->add_subcommand("apply", "build the twisted module of a scenario");
    ta->add_option("scenario", o.input, "scenario preset name or payload JSON file")->required();
    add_common(ta);
    ta->callback([&] { action = cmd_twist_apply; });

    // resolve
    auto* rs = app.add_subcommand("resolve", "compute a minimal free resolution");
    rs->add_option("input", o.input, "module/scenario preset or JSON file")->required();
    add_window(rs);
    rs->add_option("--resume", o.resume, "resume from a resolution save file");
    add_common(rs);
    rs->callback([&] { action = cmd_resolve; });

    // chart
    auto* ch = app.add_subcommand("chart", "render the Ext chart of a resolution");
    ch->add_option("input", o.input, "module/scenario preset or JSON file")->required();
    add_window(ch);
    ch->add_option("--products", o.products, "comma-separated product classes (default h0)");
    ch->add_option("--format", o.format, "ascii (default), svg, or json")
        ->check(CLI::IsMember({"ascii", "svg", "json"}));
    ch->add_option("--resume", o.resume, "resume from a resolution save file");
    add_common(ch);
    ch->callback([&] { action = cmd_chart; });

    // readoff
    auto* ro = app.add_subcommand("readoff", "read bordism groups off the h0-string structure");
    ro->add_option("input", o.input, "module/scenario preset or JSON file")->required();
    add_window(ro);
    ro->add_option("--stem", o.stems, "stem(s) to read (repeatable; default: all in window)");
    ro->add_option("--resume", o.resume, "resume from a resolution save file");
    add_common(ro);
    ro->callback([&] { action = cmd_readoff; });

    // collapse
    auto* co = app.add_subcommand("collapse", "list bidegree-possible differentials");
    co->add_option("input", o.input, "module/scenario preset or JSON file")->required();
    add_window(co);
    co->add_option("--r-max", o.r_max, "largest differential page to consider");
    co->add_flag("--raw", o.raw, "skip the h0-linearity pruning");
    co->add_option("--resume", o.resume, "resume from a resolution save file");
    add_common(co);
    co->callback([&] { action = cmd_collapse; });

    // lescheck
    auto* le = app.add_subcommand("lescheck",
                                  "verify long-exact-sequence rank bookkeeping for an extension");
    le->add_option("names", o.inputs, "extension presets: cnu, qn, 2qn, or all")
        ->expected(1, -1);
    add_window(le);
    add_common(le);
    le->callback([&] { action = cmd_lescheck; });

    // scenario
    auto* sc = app.add_subcommand("scenario", "run or list the shipped twist scenarios");
    sc->require_subcommand(1);
    auto* sr = sc->add_subcommand("run",
                                  "build a scenario end to end and verify its pinned results");
    sr->add_option("names", o.inputs, "scenario preset name(s), or all")->expected(1, -1);
    add_common(sr);
    sr->callback([&] { action = cmd_scenario_run; });
    auto* sl = sc->add_subcommand("list", "list every corpus preset");
    add_common(sl);
    sl->callback([&] { action = cmd_scenario_list; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        trailer(2, "usage", e.what());
        return 2;
    }

    try {
        return action ? action() : 2;
    } catch (const CliFailure& f) {
        trailer(f.code, f.kind, f.message);
        return f.code;
    } catch (const SchemaError& e) {
        trailer(2, "schema", e.what());
        return 2;
    } catch (const WindowError& e) {
        trailer(2, "window", e.what());
        return 2;
    } catch (const Json::parse_error& e) {
        trailer(2, "parse", e.what());
        return 2;
    } catch (const std::invalid_argument& e) {
        trailer(2, "invalid-argument", e.what());
        return 2;
    } catch (const std::exception& e) {
        trailer(2, "error", e.what());
        return 2;
    }
}
