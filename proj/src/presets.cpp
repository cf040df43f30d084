#include "thomtwist/presets.hpp"

#include <mutex>
#include <stdexcept>

namespace tt::presets {
namespace {

std::vector<int> mono(int n, std::initializer_list<std::pair<int, int>> entries) {
    std::vector<int> m(n, 0);
    for (const auto& [i, e] : entries) m[i] = e;
    return m;
}

AlgebraPresentation e1_presentation() {
    AlgebraPresentation pres;
    pres.prime = 2;
    pres.name = "E(1)-presented";
    pres.generators = {{"Q0", 1}, {"Q1", 3}};
    pres.relations = {
        {{{1, {0, 0}}}},          // Q0 Q0
        {{{1, {1, 1}}}},          // Q1 Q1
        {{{1, {0, 1}}, {1, {1, 0}}}},  // Q0 Q1 + Q1 Q0
    };
    pres.max_degree = 7;
    return pres;
}

AlgebraPresentation atmf_presentation() {
    AlgebraPresentation pres;
    pres.prime = 3;
    pres.name = "A-tmf";
    pres.generators = {{"b", 1}, {"P", 4}};
    pres.relations = {
        {{{1, {0, 0}}}},     // b b
        {{{1, {0, 1, 1, 0}}, {2, {0, 1, 0, 1}}, {2, {1, 0, 1, 0}}}},  // bPPb - bPbP - PbPb
        {{{1, {1, 1, 1}}}},  // P P P
    };
    pres.max_degree = 27;
    return pres;
}

GradedModule explicit_cnu(AlgebraPtr atmf) {
    GradedModule m;
    m.alg = atmf;
    m.labels[0] = {"u"};
    m.labels[4] = {"v"};
    m.actions.resize(2);  // generators b, P
    FpMat pact(3, 1, 1);
    pact.set(0, 0, 1);
    m.actions[1].emplace(0, std::move(pact));  // P u = v
    return m;
}

}  // namespace

AlgebraPtr algebra(const std::string& name) {
    static std::mutex mu;
    static std::map<std::string, AlgebraPtr> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(name);
    if (it != cache.end()) return it->second;

    FiniteGradedAlgebra built;
    if (name == "A(0)" || name == "E(1)" || name == "A(1)" || name == "A(2)")
        built = build_milnor_subalgebra(name);
    else if (name == "E(1)-presented")
        built = build_presented_algebra(e1_presentation());
    else if (name == "A-tmf")
        built = build_presented_algebra(atmf_presentation());
    else
        throw std::invalid_argument("unknown algebra preset '" + name + "'");
    auto ptr = std::make_shared<const FiniteGradedAlgebra>(std::move(built));
    cache.emplace(name, ptr);
    return ptr;
}

std::vector<std::string> algebra_names() {
    return {"A(0)", "E(1)", "A(1)", "A(2)", "E(1)-presented", "A-tmf"};
}

CohomologyPresentation ring(const std::string& name) {
    if (name == "su8") {
        // Generators B,b,c,d,e of degrees 2,3,4,5,6 with the stated total
        // squares; trusted through degree 6.
        std::vector<PolyGenerator> gens = {
            {"B", 2, {}}, {"b", 3, {}}, {"c", 4, {}}, {"d", 5, {}}, {"e", 6, {}}};
        std::vector<std::map<int, PolyTerms>> sq(5);
        sq[0][1] = {{1, mono(5, {{1, 1}})}};           // Sq1 B = b
        sq[0][2] = {{1, mono(5, {{0, 2}})}};           // Sq2 B = B^2
        sq[1][2] = {{1, mono(5, {{3, 1}})}};           // Sq2 b = d
        sq[1][3] = {{1, mono(5, {{1, 2}})}};           // Sq3 b = b^2
        sq[2][2] = {{1, mono(5, {{4, 1}})}};           // Sq2 c = e
        sq[3][1] = {{1, mono(5, {{1, 2}})}};           // Sq1 d = b^2
        return build_poly_presentation2("su8", gens, 6, sq, false);
    }
    if (name == "bz2") {
        std::vector<PolyGenerator> gens = {{"t", 1, {}}};
        std::vector<std::map<int, PolyTerms>> sq(1);
        sq[0][1] = {{1, mono(1, {{0, 2}})}};  // Sq1 t = t^2
        return build_poly_presentation2("bz2", gens, 12, sq, false);
    }
    if (name == "u2") {
        std::vector<PolyGenerator> gens = {{"b1", 1, 2}, {"b3", 3, 2}};
        std::vector<std::map<int, PolyTerms>> sq(2);  // Sq1, Sq2 act trivially
        return build_poly_presentation2("u2", gens, 4, sq, true);
    }
    if (name == "cp2") {
        std::vector<PolyGenerator> gens = {{"al", 2, 3}};
        std::vector<std::map<int, PolyTerms>> sq(1);
        sq[0][2] = {{1, mono(1, {{0, 2}})}};  // Sq2 al = al^2
        return build_poly_presentation2("cp2", gens, 4, sq, true);
    }
    if (name == "rp2xrp2") {
        std::vector<PolyGenerator> gens = {{"x", 1, 3}, {"y", 1, 3}};
        std::vector<std::map<int, PolyTerms>> sq(2);
        sq[0][1] = {{1, mono(2, {{0, 2}})}};
        sq[1][1] = {{1, mono(2, {{1, 2}})}};
        return build_poly_presentation2("rp2xrp2", gens, 4, sq, true);
    }
    if (name == "rp1xrp3") {
        std::vector<PolyGenerator> gens = {{"x", 1, 2}, {"y", 1, 4}};
        std::vector<std::map<int, PolyTerms>> sq(2);
        sq[1][1] = {{1, mono(2, {{1, 2}})}};  // Sq1 y = y^2; Sq1 x = 0
        return build_poly_presentation2("rp1xrp3", gens, 4, sq, true);
    }
    if (name == "e8e8") {
        // Z/2-invariant subring mod 3: x (deg 4), px = P1(x) (deg 8),
        // bpx = beta P1(x) (deg 9), y (deg 8); trusted through degree 11.
        std::vector<PolyGenerator> gens = {
            {"x", 4, {}}, {"px", 8, {}}, {"bpx", 9, {}}, {"y", 8, {}}};
        std::vector<PolyTerms> beta(4), p1(4);
        beta[1] = {{1, mono(4, {{2, 1}})}};  // beta(px) = bpx
        p1[0] = {{1, mono(4, {{1, 1}})}};    // P1(x) = px
        return build_poly_presentation3("e8e8", gens, 11, beta, p1, false);
    }
    throw std::invalid_argument("unknown ring preset '" + name + "'");
}

std::vector<std::string> ring_names() {
    return {"su8", "bz2", "u2", "cp2", "rp2xrp2", "rp1xrp3", "e8e8"};
}

std::map<int, CohClass> bundle_sw(const std::string& name) {
    if (name == "cp2-bundle") {
        CohomologyPresentation r = ring("cp2");
        return {{1, r.zero_class(1)},
                {2, make_class(r, 2, {{1, "al^1"}})},
                {3, r.zero_class(3)},
                {4, r.zero_class(4)}};
    }
    if (name == "rp2xrp2-bundle") {
        CohomologyPresentation r = ring("rp2xrp2");
        return {{1, make_class(r, 1, {{1, "x^1"}, {1, "y^1"}})},
                {2, make_class(r, 2, {{1, "x^1*y^1"}, {1, "y^2"}})},
                {3, make_class(r, 3, {{1, "x^1*y^2"}})},
                {4, r.zero_class(4)}};
    }
    if (name == "rp1xrp3-bundle") {
        CohomologyPresentation r = ring("rp1xrp3");
        return {{1, make_class(r, 1, {{1, "x^1"}, {1, "y^1"}})},
                {2, make_class(r, 2, {{1, "x^1*y^1"}, {1, "y^2"}})},
                {3, make_class(r, 3, {{1, "x^1*y^2"}, {1, "y^3"}})},
                {4, make_class(r, 4, {{1, "x^1*y^3"}})}};
    }
    throw std::invalid_argument("unknown bundle preset '" + name + "'");
}

std::vector<std::string> bundle_names() {
    return {"cp2-bundle", "rp2xrp2-bundle", "rp1xrp3-bundle"};
}

std::string bundle_ring(const std::string& name) {
    if (name == "cp2-bundle") return "cp2";
    if (name == "rp2xrp2-bundle") return "rp2xrp2";
    if (name == "rp1xrp3-bundle") return "rp1xrp3";
    throw std::invalid_argument("unknown bundle preset '" + name + "'");
}

GradedModule module_preset(const std::string& name) {
    if (name == "a1-seagull")
        return cyclic_module(algebra("A(1)"), {{{{1, {0}}}}}).module;
    if (name == "a1-ceta")
        return cyclic_module(algebra("A(1)"),
                             {{{{1, {0}}}}, {{{1, {0, 1}}, {1, {1, 0}}}}})
            .module;
    if (name == "a1-mod-sq3")
        return cyclic_module(algebra("A(1)"), {{{{1, {0, 1}}}}}).module;
    if (name == "atmf-n1")
        return cyclic_module(algebra("A-tmf"),
                             {{{{1, {0}}}}, {{{1, {1, 1}}}}, {{{1, {1, 0, 1}}}}})
            .module;
    if (name == "atmf-n2")
        return cyclic_module(algebra("A-tmf"),
                             {{{{1, {0}}}}, {{{1, {0, 1}}}}, {{{1, {1, 0, 1, 1}}}}})
            .module;
    if (name == "atmf-cnu") return explicit_cnu(algebra("A-tmf"));
    if (name == "w1") {
        AlgebraPtr a0 = algebra("A(0)");
        GradedModule t = trivial_module(a0);
        GradedModule s4 = suspend(t, 4), s8a = suspend(t, 8), s8b = suspend(t, 8);
        GradedModule f5 = suspend(cyclic_module(a0, {}).module, 5);
        return truncate(direct_sum({&t, &s4, &f5, &s8a, &s8b}), 10);
    }
    if (name == "w2") {
        AlgebraPtr e1 = algebra("E(1)");
        GradedModule t = trivial_module(e1);
        GradedModule s4 = suspend(t, 4), s8a = suspend(t, 8), s8b = suspend(t, 8);
        GradedModule f10 = suspend(cyclic_module(e1, {}).module, 10);
        return truncate(direct_sum({&t, &s4, &s8a, &s8b, &f10}), 10);
    }
    if (name == "w3") {
        AlgebraPtr a1 = algebra("A(1)");
        GradedModule t = trivial_module(a1);
        GradedModule s8 = suspend(t, 8);
        GradedModule q10 = suspend(module_preset("a1-mod-sq3"), 10);
        return truncate(direct_sum({&t, &s8, &q10}), 10);
    }
    throw std::invalid_argument("unknown module preset '" + name + "'");
}

std::vector<std::string> module_names() {
    return {"a1-seagull", "a1-ceta", "a1-mod-sq3", "atmf-n1",
            "atmf-n2",    "atmf-cnu", "w1",         "w2",
            "w3"};
}

ScenarioSpec scenario_spec(const std::string& name) {
    ScenarioSpec s;
    s.name = name;
    if (name == "u-duality-su8") {
        s.ring = "su8";
        s.algebra = "A(1)";
        CohomologyPresentation r = ring(s.ring);
        s.twist = {"ko", {{"a", r.zero_class(1)}, {"b", make_class(r, 2, {{1, "B^1"}})}}};
        s.s_max = 8;
        s.t_max = 6;
        return s;
    }
    if (name == "heterotic-e8e8") {
        s.ring = "e8e8";
        s.algebra = "A-tmf";
        CohomologyPresentation r = ring(s.ring);
        s.twist = {"tmf3", {{"d3", make_class(r, 4, {{1, "x^1"}})}}};
        s.s_max = 11;
        s.t_max = 11;
        return s;
    }
    if (name == "u2-ku") {
        s.ring = "u2";
        s.algebra = "E(1)";
        CohomologyPresentation r = ring(s.ring);
        s.twist = {"ku",
                   {{"a", make_class(r, 1, {{1, "b1^1"}})}, {"c2", make_class(r, 3, {{1, "b3^1"}})}}};
        s.s_max = 10;
        s.t_max = 10;
        return s;
    }
    if (name == "pinm-bz2") {
        s.ring = "bz2";
        s.algebra = "A(1)";
        CohomologyPresentation r = ring(s.ring);
        s.twist = {"ko", {{"a", make_class(r, 1, {{1, "t^1"}})}, {"b", r.zero_class(2)}}};
        s.s_max = 9;
        s.t_max = 12;
        return s;
    }
    if (name == "pinc-bz2") {
        s.ring = "bz2";
        s.algebra = "E(1)";
        CohomologyPresentation r = ring(s.ring);
        s.twist = {"ku", {{"a", make_class(r, 1, {{1, "t^1"}})}, {"c2", r.zero_class(3)}}};
        s.s_max = 9;
        s.t_max = 12;
        return s;
    }
    if (name == "hz-bz2") {
        s.ring = "bz2";
        s.algebra = "A(0)";
        CohomologyPresentation r = ring(s.ring);
        s.twist = {"HZ", {{"a", make_class(r, 1, {{1, "t^1"}})}}};
        s.s_max = 6;
        s.t_max = 12;
        return s;
    }
    if (name == "tmf2-rp1rp3") {
        s.ring = "rp1xrp3";
        s.algebra = "A(2)";
        auto w = bundle_sw("rp1xrp3-bundle");
        s.twist = {"tmf2", {{"a", w.at(1)}, {"gw", w.at(2)}, {"delta4", w.at(4)}}};
        s.s_max = 6;
        s.t_max = 4;
        return s;
    }
    throw std::invalid_argument("unknown scenario preset '" + name + "'");
}

std::vector<std::string> scenario_names() {
    return {"u-duality-su8", "heterotic-e8e8", "u2-ku",      "pinm-bz2",
            "pinc-bz2",      "hz-bz2",         "tmf2-rp1rp3"};
}

SesSpec ses(const std::string& name) {
    auto atmf = algebra("A-tmf");
    auto one = [] {  // 1x1 identity over F3
        FpMat m(3, 1, 1);
        m.set(0, 0, 1);
        return m;
    };
    SesSpec s;
    s.name = name;
    s.s_max = 8;
    s.t_max = 19;
    if (name == "cnu") {
        s.sub = suspend(trivial_module(atmf), 4);
        s.mid = module_preset("atmf-cnu");
        s.quot = trivial_module(atmf);
        s.inclusion = {{4, one()}};
        s.quotient = {{0, one()}};
        return s;
    }
    if (name == "qn") {
        s.sub = suspend(trivial_module(atmf), 5);
        s.mid = module_preset("atmf-n1");
        s.quot = module_preset("atmf-cnu");
        s.inclusion = {{5, one()}};
        s.quotient = {{0, one()}, {4, one()}};
        return s;
    }
    if (name == "2qn") {
        s.sub = suspend(module_preset("atmf-n1"), 4);
        s.mid = module_preset("atmf-n2");
        s.quot = trivial_module(atmf);
        s.inclusion = {{4, one()}, {8, one()}, {9, one()}};
        s.quotient = {{0, one()}};
        return s;
    }
    throw std::invalid_argument("unknown extension sequence preset '" + name + "'");
}

std::vector<std::string> ses_names() { return {"cnu", "qn", "2qn"}; }

}  // namespace tt::presets
