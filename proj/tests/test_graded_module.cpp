#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>

#include "thomtwist/graded_module.hpp"
#include "thomtwist/presets.hpp"

using namespace tt;

namespace {

std::map<int, int> dims_of(const GradedModule& m) {
    std::map<int, int> out;
    for (const auto& [d, lab] : m.labels)
        if (!lab.empty()) out[d] = static_cast<int>(lab.size());
    return out;
}

FpMat one_by_one(int p, int v) {
    FpMat m(p, 1, 1);
    m.set(0, 0, v);
    return m;
}

}  // namespace

TEST_CASE("cyclic modules over A(1): seagull, Ceta, mod-Sq3") {
    GradedModule m0 = presets::module_preset("a1-seagull");
    CHECK(dims_of(m0) == std::map<int, int>{{0, 1}, {2, 1}, {3, 1}, {5, 1}});
    CHECK(m0.complete());
    CHECK(m0.validate().empty());

    GradedModule ceta = presets::module_preset("a1-ceta");
    CHECK(dims_of(ceta) == std::map<int, int>{{0, 1}, {2, 1}});
    CHECK(ceta.validate().empty());

    GradedModule q3 = presets::module_preset("a1-mod-sq3");
    CHECK(dims_of(q3) == std::map<int, int>{{0, 1}, {1, 1}, {2, 1}, {3, 1}, {4, 1}});
    CHECK(q3.validate().empty());
}

TEST_CASE("cyclic modules over A-tmf: N1, N2 with pinned labels") {
    CyclicModule n1 = cyclic_module(presets::algebra("A-tmf"),
                                    {{{{1, {0}}}}, {{{1, {1, 1}}}}, {{{1, {1, 0, 1}}}}});
    CHECK(dims_of(n1.module) == std::map<int, int>{{0, 1}, {4, 1}, {5, 1}});
    CHECK(n1.module.labels.at(0) == std::vector<std::string>{"1"});
    CHECK(n1.module.labels.at(4) == std::vector<std::string>{"P"});
    CHECK(n1.module.labels.at(5) == std::vector<std::string>{"b*P"});
    CHECK(n1.module.validate().empty());

    GradedModule n2 = presets::module_preset("atmf-n2");
    CHECK(dims_of(n2) == std::map<int, int>{{0, 1}, {4, 1}, {8, 1}, {9, 1}});
    CHECK(n2.labels.at(8) == std::vector<std::string>{"P*P"});
    CHECK(n2.labels.at(9) == std::vector<std::string>{"b*P*P"});
    CHECK(n2.validate().empty());

    // Word actions follow the product order: (b P) means apply P first.
    FpMat bp = n1.module.word_action({0, 1}, 0);  // b(P(1)) = b*P, nonzero
    REQUIRE(bp.rows() == 1);
    CHECK(bp.get(0, 0) == 1);
    FpMat pb = n1.module.word_action({1, 0}, 0);  // P(b(1)) = 0 since b kills 1
    CHECK(pb.is_zero());
}

TEST_CASE("explicit two-cell module and the trivial module") {
    GradedModule cnu = presets::module_preset("atmf-cnu");
    CHECK(dims_of(cnu) == std::map<int, int>{{0, 1}, {4, 1}});
    CHECK(cnu.labels.at(0) == std::vector<std::string>{"u"});
    CHECK(cnu.labels.at(4) == std::vector<std::string>{"v"});
    CHECK(cnu.validate().empty());
    // P u = v, b acts by zero.
    CHECK(cnu.gen_action(1, 0).get(0, 0) == 1);
    CHECK(cnu.gen_action(0, 0).is_zero());

    GradedModule t = trivial_module(presets::algebra("A(1)"));
    CHECK(dims_of(t) == std::map<int, int>{{0, 1}});
    CHECK(t.validate().empty());
}

TEST_CASE("wedge-summand truncation models W1, W2, W3") {
    GradedModule w1 = presets::module_preset("w1");
    CHECK(dims_of(w1) == std::map<int, int>{{0, 1}, {4, 1}, {5, 1}, {6, 1}, {8, 2}});
    REQUIRE(w1.truncation.has_value());
    CHECK(*w1.truncation == 10);
    CHECK(w1.validate().empty());

    GradedModule w2 = presets::module_preset("w2");
    CHECK(dims_of(w2) == std::map<int, int>{{0, 1}, {4, 1}, {8, 2}, {10, 1}});
    CHECK(w2.validate().empty());

    GradedModule w3 = presets::module_preset("w3");
    CHECK(dims_of(w3) == std::map<int, int>{{0, 1}, {8, 1}, {10, 1}});
    CHECK(w3.validate().empty());
}

TEST_CASE("suspension and direct sum behave degreewise") {
    GradedModule m0 = presets::module_preset("a1-seagull");
    GradedModule s7 = suspend(m0, 7);
    CHECK(dims_of(s7) == std::map<int, int>{{7, 1}, {9, 1}, {10, 1}, {12, 1}});
    CHECK(s7.validate().empty());

    GradedModule ceta = presets::module_preset("a1-ceta");
    GradedModule sum = direct_sum({&m0, &ceta});
    CHECK(dims_of(sum) == std::map<int, int>{{0, 2}, {2, 2}, {3, 1}, {5, 1}});
    CHECK(sum.validate().empty());
    // Labels carry the summand index.
    CHECK(sum.labels.at(0)[0].rfind("0:", 0) == 0);
    CHECK(sum.labels.at(0)[1].rfind("1:", 0) == 0);
}

TEST_CASE("tensor product via generator coproducts") {
    GradedModule ceta = presets::module_preset("a1-ceta");
    GradedModule cc = tensor_product(ceta, ceta);
    CHECK(dims_of(cc) == std::map<int, int>{{0, 1}, {2, 2}, {4, 1}});
    CHECK(cc.validate().empty());

    // Tensoring with the trivial module changes nothing but the labels.
    GradedModule m0 = presets::module_preset("a1-seagull");
    GradedModule t = trivial_module(presets::algebra("A(1)"));
    GradedModule tm = tensor_product(t, m0);
    CHECK(dims_of(tm) == dims_of(m0));
    CHECK(tm.validate().empty());
    for (int d : {0, 2, 3}) CHECK(tm.gen_action(0, d) == m0.gen_action(0, d));

    // Odd-prime tensor square of the two-cell module (checks the Koszul signs
    // through validate, which exercises every algebra relation).
    GradedModule cnu = presets::module_preset("atmf-cnu");
    GradedModule c2 = tensor_product(cnu, cnu);
    CHECK(dims_of(c2) == std::map<int, int>{{0, 1}, {4, 2}, {8, 1}});
    CHECK(c2.validate().empty());
}

TEST_CASE("validate produces a usable witness on a broken module") {
    AlgebraPtr a0 = presets::algebra("A(0)");
    GradedModule bad;
    bad.alg = a0;
    bad.labels[0] = {"x0"};
    bad.labels[1] = {"x1"};
    bad.labels[2] = {"x2"};
    bad.actions.resize(1);
    bad.actions[0].emplace(0, one_by_one(2, 1));
    bad.actions[0].emplace(1, one_by_one(2, 1));  // makes Sq1 Sq1 = 1 on degree 0

    auto failures = bad.validate();
    REQUIRE(!failures.empty());
    const ValidationFailure& f = failures.front();
    CHECK(f.word_degree == 2);
    CHECK(f.source_degree == 0);
    CHECK(!vec_is_zero(f.witness_output));
    CHECK(f.combo == FpVec{1});  // the (Sq1)^2 word
}

TEST_CASE("short exact sequences of A-tmf modules") {
    AlgebraPtr atmf = presets::algebra("A-tmf");
    GradedModule f3 = trivial_module(atmf);
    GradedModule cnu = presets::module_preset("atmf-cnu");
    CyclicModule n1 = cyclic_module(atmf, {{{{1, {0}}}}, {{{1, {1, 1}}}}, {{{1, {1, 0, 1}}}}});
    CyclicModule n2 =
        cyclic_module(atmf, {{{{1, {0}}}}, {{{1, {0, 1}}}}, {{{1, {1, 0, 1, 1}}}}});

    GradedModule s4f3 = suspend(f3, 4);
    GradedModule s5f3 = suspend(f3, 5);
    GradedModule s4n1 = suspend(n1.module, 4);

    SUBCASE("0 -> S4 F3 -> Cnu -> F3 -> 0") {
        ModuleMap i{&s4f3, &cnu, {{4, one_by_one(3, 1)}}};
        ModuleMap q{&cnu, &f3, {{0, one_by_one(3, 1)}}};
        SesReport rep = check_ses(i, q);
        INFO((rep.problems.empty() ? std::string() : rep.problems.front()));
        CHECK(rep.ok);
    }

    SUBCASE("0 -> S5 F3 -> N1 -> Cnu -> 0") {
        ModuleMap i{&s5f3, &n1.module, {{5, one_by_one(3, 1)}}};
        ModuleMap q{&n1.module, &cnu, {{0, one_by_one(3, 1)}, {4, one_by_one(3, 1)}}};
        SesReport rep = check_ses(i, q);
        INFO((rep.problems.empty() ? std::string() : rep.problems.front()));
        CHECK(rep.ok);
    }

    SUBCASE("0 -> S4 N1 -> N2 -> F3 -> 0, inclusion = right multiplication by P") {
        // Column over each surviving N1 basis element: its image x*P in N2.
        const FiniteGradedAlgebra& alg = *atmf;
        FpVec pvec(alg.dim(4), 0);
        pvec[0] = 1;
        std::map<int, FpMat> imats;
        for (const auto& [d, lab] : n1.module.labels) {
            if (lab.empty()) continue;
            FpMat m(3, n2.module.dim(d + 4), n1.module.dim(d));
            for (size_t col = 0; col < n1.keep[d].size(); ++col) {
                FpVec e(alg.dim(d), 0);
                e[n1.keep[d][col]] = 1;
                FpVec prod = alg.multiply(d, e, 4, pvec);
                FpVec img = n2.project(d + 4, prod);
                for (int r = 0; r < m.rows(); ++r) m.set(r, static_cast<int>(col), img[r]);
            }
            imats.emplace(d + 4, std::move(m));
        }
        // Pinned: identity in degrees 4, 8, 9.
        REQUIRE(imats.size() == 3);
        for (int d : {4, 8, 9}) {
            REQUIRE(imats.count(d) == 1);
            CHECK(imats.at(d) == one_by_one(3, 1));
        }
        ModuleMap i{&s4n1, &n2.module, std::move(imats)};
        ModuleMap q{&n2.module, &f3, {{0, one_by_one(3, 1)}}};
        SesReport rep = check_ses(i, q);
        INFO((rep.problems.empty() ? std::string() : rep.problems.front()));
        CHECK(rep.ok);
    }

    SUBCASE("a broken inclusion is caught") {
        ModuleMap i{&s4f3, &cnu, {}};  // zero map is not injective
        ModuleMap q{&cnu, &f3, {{0, one_by_one(3, 1)}}};
        CHECK(!check_ses(i, q).ok);
    }
}

TEST_CASE("truncation windows combine correctly") {
    GradedModule m0 = presets::module_preset("a1-seagull");
    GradedModule tr = truncate(m0, 3);
    CHECK(dims_of(tr) == std::map<int, int>{{0, 1}, {2, 1}, {3, 1}});
    REQUIRE(tr.truncation.has_value());
    CHECK(*tr.truncation == 3);
    CHECK(tr.validate().empty());

    // Direct sum of a truncated and a complete module is trusted only through
    // the smaller window.
    GradedModule sum = direct_sum({&tr, &m0});
    REQUIRE(sum.truncation.has_value());
    CHECK(*sum.truncation == 3);

    // Tensor windows: trunc(a (x) b) = min over shifted truncations.
    GradedModule w3 = presets::module_preset("w3");
    GradedModule prod = tensor_product(m0, w3);
    REQUIRE(prod.truncation.has_value());
    CHECK(*prod.truncation == 10);
}
