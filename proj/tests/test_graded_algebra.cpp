#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <set>

#include "thomtwist/graded_algebra.hpp"

using namespace tt;

namespace {

std::map<int, int> dims_of(const FiniteGradedAlgebra& a) {
    std::map<int, int> out;
    for (int d = 0; d <= a.top_degree; ++d)
        if (a.dim(d)) out[d] = a.dim(d);
    return out;
}

std::map<MilnorTuple, int> as_map(const std::vector<std::pair<MilnorTuple, int>>& v) {
    return {v.begin(), v.end()};
}

AlgebraPresentation e1_presentation() {
    AlgebraPresentation p;
    p.prime = 2;
    p.name = "E(1)-presented";
    p.generators = {{"Q0", 1}, {"Q1", 3}};
    p.relations = {
        {{{1, {0, 0}}}},          // Q0^2
        {{{1, {1, 1}}}},          // Q1^2
        {{{1, {0, 1}}, {1, {1, 0}}}},  // Q0 Q1 + Q1 Q0
    };
    p.max_degree = 7;
    return p;
}

AlgebraPresentation atmf_presentation() {
    AlgebraPresentation p;
    p.prime = 3;
    p.name = "atmf";
    p.generators = {{"b", 1}, {"P", 4}};
    const int b = 0, P = 1;
    p.relations = {
        {{{1, {b, b}}}},
        {{{1, {b, P, P, b}}, {-1, {b, P, b, P}}, {-1, {P, b, P, b}}}},
        {{{1, {P, P, P}}}},
    };
    p.max_degree = 27;
    return p;
}

}  // namespace

TEST_CASE("Milnor subalgebra dimensions") {
    auto A0 = build_milnor_subalgebra("A(0)");
    auto E1 = build_milnor_subalgebra("E(1)");
    auto A1 = build_milnor_subalgebra("A(1)");
    auto A2 = build_milnor_subalgebra("A(2)");
    CHECK(A0.total_dim() == 2);
    CHECK(dims_of(A0) == std::map<int, int>{{0, 1}, {1, 1}});
    CHECK(E1.total_dim() == 4);
    CHECK(dims_of(E1) == std::map<int, int>{{0, 1}, {1, 1}, {3, 1}, {4, 1}});
    CHECK(A1.total_dim() == 8);
    CHECK(dims_of(A1) ==
          std::map<int, int>{{0, 1}, {1, 1}, {2, 1}, {3, 2}, {4, 1}, {5, 1}, {6, 1}});
    CHECK(A2.total_dim() == 64);
    CHECK(A2.top_degree == 23);
    std::map<int, int> a2_expected{{0, 1},  {1, 1},  {2, 1},  {3, 2},  {4, 2},  {5, 2},
                                   {6, 3},  {7, 4},  {8, 3},  {9, 4},  {10, 5}, {11, 4},
                                   {12, 4}, {13, 5}, {14, 4}, {15, 3}, {16, 4}, {17, 3},
                                   {18, 2}, {19, 2}, {20, 2}, {21, 1}, {22, 1}, {23, 1}};
    CHECK(dims_of(A2) == a2_expected);
    // A(2) is Poincare self-dual around its top degree.
    for (int d = 0; d <= 23; ++d) CHECK(A2.dim(d) == A2.dim(23 - d));
    CHECK_THROWS_AS(build_milnor_subalgebra("A(3)"), std::invalid_argument);
}

TEST_CASE("Milnor product identities") {
    CHECK(as_map(milnor_product({1}, {2})) == std::map<MilnorTuple, int>{{{3}, 1}});
    CHECK(as_map(milnor_product({2}, {1})) ==
          std::map<MilnorTuple, int>{{{3}, 1}, {{0, 1}, 1}});
    // Sq1 Sq2 + Sq2 Sq1 = Sq(0,1) = Q1.
    CHECK(as_map(milnor_product({1}, {0, 1})) == std::map<MilnorTuple, int>{{{1, 1}, 1}});
    // Admissible Sq3 Sq1 = Sq(1,1) = Q0 Q1; the Adem-vanishing product is Sq1 Sq3.
    CHECK(as_map(milnor_product({3}, {1})) == std::map<MilnorTuple, int>{{{1, 1}, 1}});
    CHECK(milnor_product({1}, {3}).empty());
}

TEST_CASE("E(1): Milnor route equals presentation route degreewise") {
    auto E1 = build_milnor_subalgebra("E(1)");
    auto E1p = build_presented_algebra(e1_presentation());
    CHECK(E1p.complete);
    CHECK(E1p.top_degree == 4);
    for (int d = 0; d <= 7; ++d) CHECK(E1.dim(d) == E1p.dim(d));
    // Anticommutation survives the quotient: Q0*Q1 == Q1*Q0 representative-wise.
    auto q0q1 = E1p.multiply(1, E1p.generators[0].elem, 3, E1p.generators[1].elem);
    auto q1q0 = E1p.multiply(3, E1p.generators[1].elem, 1, E1p.generators[0].elem);
    CHECK(q0q1 == q1q0);
    CHECK(!vec_is_zero(q0q1));
}

TEST_CASE("mod-3 presented algebra dimension table") {
    auto atmf = build_presented_algebra(atmf_presentation());
    CHECK(atmf.prime == 3);
    CHECK(atmf.complete);
    CHECK(atmf.top_degree == 23);
    CHECK(atmf.total_dim() == 24);
    std::map<int, int> expected{{0, 1},  {1, 1},  {4, 1},  {5, 2},  {6, 1},  {8, 1},
                                {9, 3},  {10, 2}, {13, 2}, {14, 3}, {15, 1}, {17, 1},
                                {18, 2}, {19, 1}, {22, 1}, {23, 1}};
    CHECK(dims_of(atmf) == expected);
    for (int d = 0; d <= 23; ++d) CHECK(atmf.dim(d) == atmf.dim(23 - d));
    CHECK(atmf.basis[5] == std::vector<std::string>{"b*P", "P*b"});
    CHECK(atmf.basis[0] == std::vector<std::string>{"1"});
    // b^2 = 0 and P^3 = 0 in the quotient.
    CHECK(atmf.dim(2) == 0);
    auto P = atmf.generators[1].elem;
    auto PP = atmf.multiply(4, P, 4, P);
    CHECK(!vec_is_zero(PP));
    CHECK(vec_is_zero(atmf.multiply(8, PP, 4, P)));
}

TEST_CASE("word kernel catches the degree-2 relation of A(1)") {
    auto A1 = build_milnor_subalgebra("A(1)");
    auto ws = A1.words_of_degree(2);
    REQUIRE(ws.size() == 2);  // Sq1*Sq1 then Sq2
    CHECK(ws[0] == std::vector<int>{0, 0});
    CHECK(ws[1] == std::vector<int>{1});
    FpMat ker = A1.word_kernel(2);
    REQUIRE(ker.rows() == 1);
    CHECK(ker.row(0) == FpVec{1, 0});  // (Sq1)^2 = 0
}

TEST_CASE("basis word combos reproduce basis elements") {
    auto A1 = build_milnor_subalgebra("A(1)");
    for (int d = 0; d <= A1.top_degree; ++d)
        for (int i = 0; i < A1.dim(d); ++i) {
            const WordCombo& rep = A1.basis_word_combo(d, i);
            FpVec acc(A1.dim(d), 0);
            for (const auto& [c, w] : rep.terms) acc = vec_add(2, acc, vec_scale(2, c, A1.eval_word(w)));
            FpVec expect(A1.dim(d), 0);
            expect[i] = 1;
            CHECK(acc == expect);
        }
}

TEST_CASE("associativity: exhaustive on small, sampled on large") {
    CHECK(check_associativity_exhaustive(build_milnor_subalgebra("E(1)")).ok);
    CHECK(check_associativity_exhaustive(build_milnor_subalgebra("A(1)")).ok);
    auto repA2 = check_associativity_sampled(build_milnor_subalgebra("A(2)"), 10000, 12345);
    CHECK(repA2.ok);
    CHECK(repA2.checked == 10000);
    auto repT = check_associativity_sampled(build_presented_algebra(atmf_presentation()), 10000, 999);
    CHECK(repT.ok);
}

TEST_CASE("generator coproducts") {
    auto A1 = build_milnor_subalgebra("A(1)");
    REQUIRE(A1.generators.size() == 2);
    CHECK(A1.generators[0].coproduct.size() == 2);  // Sq1 primitive-shaped total square
    CHECK(A1.generators[1].coproduct.size() == 3);  // Sq2: Sq2(x)1 + Sq1(x)Sq1 + 1(x)Sq2
    auto E1 = build_milnor_subalgebra("E(1)");
    CHECK(E1.generators[0].coproduct.size() == 2);  // Q0 primitive
    CHECK(E1.generators[1].coproduct.size() == 2);  // Q1 primitive
}

TEST_CASE("multiply past a truncated window sets the flag") {
    AlgebraPresentation free2;
    free2.prime = 2;
    free2.name = "free-on-one-gen";
    free2.generators = {{"x", 1}};
    free2.max_degree = 3;  // free algebra: never provably finite
    auto f = build_presented_algebra(free2);
    CHECK(!f.complete);
    CHECK(f.top_degree == 3);
    bool flag = false;
    auto x = f.generators[0].elem;
    auto x3 = f.multiply(1, x, 2, f.multiply(1, x, 1, x));
    CHECK(!vec_is_zero(x3));
    f.multiply(3, x3, 1, x, &flag);
    CHECK(flag);
    // A complete algebra reports genuine zero past its top without the flag.
    auto A0 = build_milnor_subalgebra("A(0)");
    bool flag2 = false;
    auto sq1 = A0.generators[0].elem;
    auto z = A0.multiply(1, sq1, 1, sq1, &flag2);
    CHECK(vec_is_zero(z));
    CHECK(!flag2);
}
