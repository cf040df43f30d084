#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "thomtwist/presets.hpp"
#include "thomtwist/resolution.hpp"
#include "thomtwist/twist_builder.hpp"

using namespace tt;

namespace {

using RankMap = std::map<std::pair<int, int>, int>;

// rows[s] is a digit string over t = 0..len-1; zeros are omitted from the map.
RankMap table(const std::vector<std::string>& rows) {
    RankMap m;
    for (int s = 0; s < static_cast<int>(rows.size()); ++s)
        for (int t = 0; t < static_cast<int>(rows[s].size()); ++t)
            if (rows[s][t] != '0') m[{s, t}] = rows[s][t] - '0';
    return m;
}

FpMat m1(int p) { return FpMat::from_rows(p, {{1}}, 1); }

GradedModule scenario_module(const std::string& name) {
    auto spec = presets::scenario_spec(name);
    auto ring = presets::ring(spec.ring);
    auto alg = presets::algebra(spec.algebra);
    return build_twisted_module(ring, alg, spec.twist);
}

std::vector<std::pair<bool, int>> factor_pairs(const ReadOff& ro) {
    std::vector<std::pair<bool, int>> out;
    for (const auto& f : ro.factors) out.push_back({f.free, f.length});
    return out;
}

std::vector<std::pair<int, int>> nonzero_cells(const std::map<std::pair<int, int>, int>& m) {
    std::vector<std::pair<int, int>> out;
    for (const auto& [cell, v] : m)
        if (v) out.push_back(cell);
    return out;
}

bool same_data(const ResolutionData& a, const ResolutionData& b) {
    if (a.gens.size() != b.gens.size() || a.diff.size() != b.diff.size()) return false;
    for (size_t s = 0; s < a.gens.size(); ++s) {
        if (a.gens[s].size() != b.gens[s].size()) return false;
        for (size_t g = 0; g < a.gens[s].size(); ++g)
            if (a.gens[s][g].t != b.gens[s][g].t || a.gens[s][g].label != b.gens[s][g].label)
                return false;
        if (a.diff[s] != b.diff[s]) return false;
    }
    return a.diff0 == b.diff0;
}

void check_audits(const Resolution& r) {
    CHECK(r.d2_check());
    CHECK(r.minimality_check());
    CHECK(r.exactness_check());
}

}  // namespace

TEST_CASE("a free module resolves with a single stage-0 generator") {
    auto a1 = presets::algebra("A(1)");
    GradedModule free1 = cyclic_module(a1, {}).module;
    Resolution res(free1, 4, 6);
    CHECK(res.ext_ranks() == RankMap{{{0, 0}, 1}});
    CHECK(res.stage(0)[0].label == "0_0_0");
    check_audits(res);
}

TEST_CASE("Sq1-quotient over A(1) resolves to the length-one ladder") {
    Resolution res(presets::module_preset("a1-seagull"), 8, 8);
    RankMap expect;
    for (int s = 0; s <= 8; ++s) expect[{s, s}] = 1;
    CHECK(res.ext_ranks() == expect);
    check_audits(res);
    // Every ladder step is a rank-one h0 edge (the tower is a free h0-string).
    for (int s = 0; s + 1 <= 8 && s + 1 <= 8; ++s) {
        auto e = res.edge_matrix(s, s, 1, 0);
        REQUIRE(e.has_value());
        CHECK(rank(*e) == 1);
    }
    ReadOff ro = read_off_groups(res, 0);
    CHECK(factor_pairs(ro) == std::vector<std::pair<bool, int>>{{true, 0}});
    CHECK(ro.extrapolated);
}

TEST_CASE("two-cell module over A(1) gives the h0-v1 lattice") {
    Resolution res(presets::module_preset("a1-ceta"), 6, 10);
    RankMap expect = table({
        "10000000000",  // s=0
        "01010000000",  // s=1
        "00101010000",  // s=2
        "00010101010",  // s=3
        "00001010101",  // s=4
        "00000101010",  // s=5
        "00000010101",  // s=6
    });
    CHECK(res.ext_ranks() == expect);
    check_audits(res);

    ExtChart ch = ext_chart(res, {"h0", "v1"});
    CHECK(ch.ranks == res.ext_ranks());
    for (const auto& e : ch.edges) {
        CHECK(e.s2 == e.s + 1);
        CHECK(e.t2 <= ch.t_max);                  // never into a masked cell
        CHECK(ch.rank(e.s2, e.t2) > e.i2);        // never into a zero cell
        if (e.cls == "h0") CHECK(e.t2 == e.t + 1);
        if (e.cls == "v1") CHECK(e.t2 == e.t + 3);
    }
}

TEST_CASE("mod-3 ground ring Ext window") {
    auto atmf = presets::algebra("A-tmf");
    Resolution res(trivial_module(atmf), 9, 20);
    RankMap expect = table({
        "100000000000000000000",  // s=0
        "010010000000000000000",  // s=1
        "001000000010100000000",  // s=2
        "000100000001000110000",  // s=3
        "000010000000100010001",  // s=4
        "000001000000010001000",  // s=5
        "000000100000001000100",  // s=6
        "000000010000000100010",  // s=7
        "000000001000000010001",  // s=8
        "000000000100000001000",  // s=9
    });
    CHECK(res.ext_ranks() == expect);
    CHECK(res.d2_check());
    CHECK(res.minimality_check());
}

TEST_CASE("mod-3 module Ext windows and Hom-vanishing anchors") {
    auto atmf = presets::algebra("A-tmf");
    Resolution res_cnu(presets::module_preset("atmf-cnu"), 9, 20);
    Resolution res_n1(presets::module_preset("atmf-n1"), 9, 20);
    Resolution res_n2(presets::module_preset("atmf-n2"), 9, 20);

    CHECK(res_cnu.ext_ranks() == table({
                                     "100000000000000000000",  // s=0
                                     "010001001000000000000",  // s=1
                                     "001000100010101000000",  // s=2
                                     "000100010001000200011",  // s=3
                                     "000010001000100020002",  // s=4
                                     "000001000100010002000",  // s=5
                                     "000000100010001000200",  // s=6
                                     "000000010001000100020",  // s=7
                                     "000000001000100010002",  // s=8
                                     "000000000100010001000",  // s=9
                                 }));
    CHECK(res_n1.ext_ranks() == table({
                                    "100000000000000000000",  // s=0
                                    "010000001100000000000",  // s=1
                                    "001000000010101001000",  // s=2
                                    "000100000001000100011",  // s=3
                                    "000010000000100010001",  // s=4
                                    "000001000000010001000",  // s=5
                                    "000000100000001000100",  // s=6
                                    "000000010000000100010",  // s=7
                                    "000000001000000010001",  // s=8
                                    "000000000100000001000",  // s=9
                                }));
    CHECK(res_n2.ext_ranks() == table({
                                    "100000000000000000000",  // s=0
                                    "010001000000010000000",  // s=1
                                    "001000100010001000100",  // s=2
                                    "000100010001000200010",  // s=3
                                    "000010001000100020002",  // s=4
                                    "000001000100010002000",  // s=5
                                    "000000100010001000200",  // s=6
                                    "000000010001000100020",  // s=7
                                    "000000001000100010002",  // s=8
                                    "000000000100010001000",  // s=9
                                }));
    // Hom-vanishing anchors: no degree-preserving module maps out of the cells.
    CHECK(res_cnu.ext_rank(0, 4) == 0);
    CHECK(res_n1.ext_rank(0, 5) == 0);
    CHECK(res_n2.ext_rank(0, 4) == 0);
    check_audits(res_cnu);
    check_audits(res_n1);
    check_audits(res_n2);
}

TEST_CASE("Yoneda products against the mod-3 ground resolution") {
    auto atmf = presets::algebra("A-tmf");
    Resolution res(trivial_module(atmf), 9, 20);
    CHECK(yoneda_product(res, res, {1, 1}, 0, {1, 1}, 0) == FpVec{1});   // h0*h0 at (2,2)
    CHECK(yoneda_product(res, res, {1, 4}, 0, {1, 4}, 0) == FpVec{});    // alpha^2 = 0
    CHECK(yoneda_product(res, res, {1, 1}, 0, {1, 4}, 0) == FpVec{});    // h0*alpha = 0
    CHECK(yoneda_product(res, res, {1, 1}, 0, {2, 10}, 0) == FpVec{1});  // h0*c4 at (3,11)
    CHECK(yoneda_product(res, res, {1, 4}, 0, {2, 12}, 0) == FpVec{1});  // alpha*beta at (3,16)
    // The opposite composite is nonzero too (commutative up to sign).
    CHECK(!vec_is_zero(yoneda_product(res, res, {2, 12}, 0, {1, 4}, 0)));

    ExtChart ch = ext_chart(res, {"h0", "alpha", "beta"}, &res);
    CHECK(ch.ranks == res.ext_ranks());
    bool beta_alpha_edge = false;
    for (const auto& e : ch.edges) {
        if (e.cls == "beta") {
            CHECK(e.s2 == e.s + 2);
            CHECK(e.t2 == e.t + 12);
            if (e.s == 1 && e.t == 4 && e.s2 == 3 && e.t2 == 16) beta_alpha_edge = true;
        } else {
            CHECK(e.s2 == e.s + 1);
        }
        CHECK(e.t2 <= ch.t_max);
        CHECK(ch.rank(e.s2, e.t2) > e.i2);
    }
    CHECK(beta_alpha_edge);
}

TEST_CASE("indecomposable cells of the mod-3 ground window") {
    auto atmf = presets::algebra("A-tmf");
    Resolution res(trivial_module(atmf), 9, 20);
    std::vector<std::pair<std::pair<int, int>, int>> indec;
    for (int s = 1; s <= 4; ++s) {
        for (int t = 0; t <= 16; ++t) {
            int n = res.ext_rank(s, t);
            if (!n) continue;
            std::vector<FpVec> prods;
            for (int s1 = 1; s1 < s; ++s1) {
                int s2 = s - s1;
                for (int t1 = 0; t1 <= t; ++t1) {
                    int t2 = t - t1;
                    for (int i1 = 0; i1 < res.ext_rank(s1, t1); ++i1)
                        for (int i2 = 0; i2 < res.ext_rank(s2, t2); ++i2)
                            prods.push_back(yoneda_product(res, res, {s1, t1}, i1, {s2, t2}, i2));
                }
            }
            int dec = prods.empty() ? 0 : rank(FpMat::from_rows(3, prods, n));
            if (dec < n) indec.push_back({{s, t}, n - dec});
        }
    }
    std::vector<std::pair<std::pair<int, int>, int>> expect = {
        {{1, 1}, 1}, {{1, 4}, 1}, {{2, 10}, 1}, {{2, 12}, 1}, {{3, 15}, 1}};
    CHECK(indec == expect);
}

TEST_CASE("LES rank bookkeeping across the three extension sequences") {
    auto atmf = presets::algebra("A-tmf");
    GradedModule F3 = trivial_module(atmf);
    GradedModule Cnu = presets::module_preset("atmf-cnu");
    GradedModule N1 = presets::module_preset("atmf-n1");
    GradedModule N2 = presets::module_preset("atmf-n2");
    Resolution res_f3(F3, 9, 20), res_cnu(Cnu, 9, 20), res_n1(N1, 9, 20), res_n2(N2, 9, 20);
    Resolution res_s4f3(suspend(F3, 4), 9, 20);
    Resolution res_s5f3(suspend(F3, 5), 9, 20);
    Resolution res_s4n1(suspend(N1, 4), 9, 20);

    std::map<int, FpMat> i_cnu{{4, m1(3)}}, q_cnu{{0, m1(3)}};
    std::map<int, FpMat> i_qn{{5, m1(3)}}, q_qn{{0, m1(3)}, {4, m1(3)}};
    std::map<int, FpMat> i_2qn{{4, m1(3)}, {8, m1(3)}, {9, m1(3)}}, q_2qn{{0, m1(3)}};

    LesReport r1 = les_rank_check(res_s4f3, res_cnu, res_f3, i_cnu, q_cnu, 8, 19);
    CHECK(r1.ok);
    CHECK(r1.problems.empty());
    CHECK(nonzero_cells(r1.forced_boundary) ==
          std::vector<std::pair<int, int>>{{0, 4}, {2, 16}});

    LesReport r2 = les_rank_check(res_s5f3, res_n1, res_cnu, i_qn, q_qn, 8, 19);
    CHECK(r2.ok);
    CHECK(nonzero_cells(r2.forced_boundary) ==
          std::vector<std::pair<int, int>>{{0, 5},
                                           {1, 6},
                                           {2, 7},
                                           {2, 15},
                                           {3, 8},
                                           {3, 16},
                                           {4, 9},
                                           {4, 17},
                                           {5, 10},
                                           {5, 18},
                                           {6, 11},
                                           {6, 19},
                                           {7, 12}});

    LesReport r3 = les_rank_check(res_s4n1, res_n2, res_f3, i_2qn, q_2qn, 8, 19);
    CHECK(r3.ok);
    CHECK(nonzero_cells(r3.forced_boundary) ==
          std::vector<std::pair<int, int>>{{0, 4}, {1, 12}, {2, 16}});
}

TEST_CASE("a split sequence forces no boundary ranks") {
    GradedModule A = presets::module_preset("a1-seagull");
    GradedModule B = presets::module_preset("a1-ceta");
    GradedModule sum = direct_sum({&A, &B});
    Resolution resA(A, 5, 8), resB(B, 5, 8), resSum(sum, 5, 8);
    std::map<int, FpMat> imat, qmat;
    for (int d = 0; d <= 8; ++d) {
        int na = A.dim(d), nb = B.dim(d);
        if (na) {
            FpMat i(2, na + nb, na);
            for (int k = 0; k < na; ++k) i.set(k, k, 1);
            imat[d] = std::move(i);
        }
        if (nb) {
            FpMat q(2, nb, na + nb);
            for (int k = 0; k < nb; ++k) q.set(k, na + k, 1);
            qmat[d] = std::move(q);
        }
    }
    LesReport rep = les_rank_check(resA, resSum, resB, imat, qmat, 4, 7);
    CHECK(rep.ok);
    CHECK(rep.problems.empty());
    for (const auto& [cell, v] : rep.forced_boundary) {
        (void)cell;
        CHECK(v == 0);
    }
    // And the chart of the sum is the cellwise sum of the charts.
    RankMap expect = resA.ext_ranks();
    for (const auto& [cell, v] : resB.ext_ranks()) expect[cell] += v;
    CHECK(resSum.ext_ranks() == expect);
}

TEST_CASE("products hidden to one module chart are seen through the ground lift") {
    auto atmf = presets::algebra("A-tmf");
    Resolution res_f3(trivial_module(atmf), 9, 20);
    Resolution res_cnu(presets::module_preset("atmf-cnu"), 9, 20);
    Resolution res_n1(presets::module_preset("atmf-n1"), 9, 20);
    REQUIRE(res_cnu.ext_rank(1, 8) == 1);
    REQUIRE(res_cnu.ext_rank(2, 12) == 1);
    CHECK(yoneda_product(res_cnu, res_f3, {1, 4}, 0, {1, 8}, 0) == FpVec{1});
    REQUIRE(res_n1.ext_rank(1, 9) == 1);
    REQUIRE(res_n1.ext_rank(2, 10) == 1);
    CHECK(yoneda_product(res_n1, res_f3, {1, 1}, 0, {1, 9}, 0) == FpVec{1});
}

TEST_CASE("su8 window: chart, collapse candidates, read-off") {
    GradedModule M = scenario_module("u-duality-su8");
    Resolution res(M, 8, 6);
    RankMap expect;
    for (int s = 0; s <= 6; ++s) expect[{s, s}] = 1;
    expect[{0, 4}] = 2;
    expect[{1, 5}] = 2;
    expect[{2, 6}] = 2;
    expect[{0, 5}] = 1;
    expect[{0, 6}] = 1;
    CHECK(res.ext_ranks() == expect);
    check_audits(res);

    // h0 structure pinning the pruning logic: the (0,5) class dies under h0
    // (the (1,6) cell is empty) while the (2,6) cell is entirely h0-divisible.
    auto e05 = res.edge_matrix(0, 5, 1, 0);
    REQUIRE(e05.has_value());
    CHECK(rank(*e05) == 0);
    auto e15 = res.edge_matrix(1, 5, 1, 0);
    REQUIRE(e15.has_value());
    CHECK(rank(*e15) == 2);

    auto raw = collapse_check(res, res.s_max(), false);
    REQUIRE(raw.size() == 1);
    CHECK(raw[0].s == 0);
    CHECK(raw[0].t == 5);
    CHECK(raw[0].s2 == 2);
    CHECK(raw[0].t2 == 6);
    CHECK(raw[0].r == 2);
    CHECK(collapse_check(res, res.s_max(), true).empty());

    using FP = std::vector<std::pair<bool, int>>;
    ReadOff ro0 = read_off_groups(res, 0);
    CHECK(factor_pairs(ro0) == FP{{true, 0}});
    CHECK(ro0.extrapolated);
    for (int stem : {1, 2, 3}) {
        ReadOff ro = read_off_groups(res, stem);
        CHECK(ro.factors.empty());
        CHECK(!ro.extrapolated);
    }
    ReadOff ro4 = read_off_groups(res, 4);
    CHECK(factor_pairs(ro4) == FP{{true, 0}, {true, 0}});
    CHECK(ro4.extrapolated);
    ReadOff ro5 = read_off_groups(res, 5);
    CHECK(factor_pairs(ro5) == FP{{false, 1}});
    CHECK(!ro5.extrapolated);

    // Tensoring with a wedge model concentrated above the window leaves the
    // chart unchanged in stems < 8.
    GradedModule W3 = presets::module_preset("w3");
    Resolution res_w(tensor_product(M, W3), 8, 6);
    CHECK(res_w.ext_ranks() == res.ext_ranks());
}

TEST_CASE("heterotic window: towers only and no possible differentials") {
    GradedModule M = scenario_module("heterotic-e8e8");
    Resolution res(M, 11, 11);
    RankMap expect;
    for (int s = 0; s <= 11; ++s) expect[{s, s}] = 1;
    for (int s = 1; s <= 7; ++s) expect[{s, s + 4}] = 1;
    expect[{0, 8}] = 2;
    expect[{1, 9}] = 2;
    expect[{2, 10}] = 3;
    expect[{3, 11}] = 3;
    CHECK(res.ext_ranks() == expect);
    CHECK(res.d2_check());
    CHECK(res.minimality_check());

    // h0 acts injectively on every cell whose h0-image is still in-window.
    std::vector<std::pair<int, int>> failures;
    for (const auto& [cell, rk] : res.ext_ranks()) {
        auto [s, t] = cell;
        if (t > 10) continue;
        auto e = res.edge_matrix(s, t, 1, 0);
        if (!e) continue;
        if (rank(*e) != rk) failures.push_back(cell);
    }
    CHECK(failures.empty());
    CHECK(collapse_check(res, res.s_max(), false).empty());
}

TEST_CASE("u2 window collapses to the corner cell") {
    GradedModule M = scenario_module("u2-ku");
    Resolution res(M, 10, 10);
    CHECK(res.ext_ranks() == RankMap{{{0, 0}, 1}});
    check_audits(res);
    ReadOff ro = read_off_groups(res, 11);
    CHECK(ro.refused);
    CHECK(ro.error == "raise t_max");
}

TEST_CASE("pin and integral windows over the infinite real projective base") {
    using FP = std::vector<std::pair<bool, int>>;

    GradedModule Mm = scenario_module("pinm-bz2");
    Resolution rm(Mm, 9, 12);
    RankMap pinm{{{0, 0}, 1}, {{1, 2}, 1}, {{0, 2}, 1}, {{1, 3}, 1}, {{2, 4}, 1}};
    for (int s = 0; s <= 9; ++s)
        for (int stem = 0; stem <= 4; ++stem) {
            int t = s + stem;
            if (t > 12) continue;
            auto it = pinm.find({s, t});
            CHECK(rm.ext_rank(s, t) == (it == pinm.end() ? 0 : it->second));
        }
    CHECK(factor_pairs(read_off_groups(rm, 0)) == FP{{false, 1}});
    CHECK(factor_pairs(read_off_groups(rm, 1)) == FP{{false, 1}});
    CHECK(factor_pairs(read_off_groups(rm, 2)) == FP{{false, 3}});
    CHECK(read_off_groups(rm, 3).factors.empty());
    CHECK(!read_off_groups(rm, 2).extrapolated);

    GradedModule Mc = scenario_module("pinc-bz2");
    Resolution rc(Mc, 9, 12);
    RankMap pinc{{{0, 0}, 1}, {{0, 2}, 1}, {{1, 3}, 1}, {{0, 4}, 1}, {{1, 5}, 1}, {{2, 6}, 1}};
    for (int s = 0; s <= 9; ++s)
        for (int stem = 0; stem <= 4; ++stem) {
            int t = s + stem;
            if (t > 12) continue;
            auto it = pinc.find({s, t});
            CHECK(rc.ext_rank(s, t) == (it == pinc.end() ? 0 : it->second));
        }
    CHECK(factor_pairs(read_off_groups(rc, 0)) == FP{{false, 1}});
    CHECK(read_off_groups(rc, 1).factors.empty());
    CHECK(factor_pairs(read_off_groups(rc, 2)) == FP{{false, 2}});
    CHECK(read_off_groups(rc, 3).factors.empty());

    GradedModule Mz = scenario_module("hz-bz2");
    Resolution rz(Mz, 6, 12);
    for (int s = 0; s <= 6; ++s)
        for (int stem = 0; stem <= 4; ++stem) {
            int t = s + stem;
            if (t > 12) continue;
            int want = (s == 0 && (stem == 0 || stem == 2 || stem == 4)) ? 1 : 0;
            CHECK(rz.ext_rank(s, t) == want);
        }
}

TEST_CASE("suspension shifts the chart") {
    GradedModule M = presets::module_preset("a1-ceta");
    Resolution res(M, 6, 10);
    Resolution res_s(suspend(M, 3), 6, 13);
    RankMap shifted;
    for (const auto& [cell, r] : res.ext_ranks()) shifted[{cell.first, cell.second + 3}] = r;
    CHECK(res_s.ext_ranks() == shifted);
}

TEST_CASE("a resumed build reproduces the fresh build exactly") {
    auto atmf = presets::algebra("A-tmf");
    GradedModule Cnu = presets::module_preset("atmf-cnu");
    Resolution fresh(Cnu, 9, 20);
    Resolution small(Cnu, 5, 12);
    Resolution resumed(Cnu, 9, 20, small.data());
    CHECK(same_data(fresh.data(), resumed.data()));
    CHECK(resumed.ext_ranks() == fresh.ext_ranks());

    // A snapshot that is not a sub-window is ignored and the build is fresh.
    Resolution shrunk(Cnu, 5, 12, fresh.data());
    CHECK(same_data(shrunk.data(), small.data()));
}

TEST_CASE("window guards refuse untrusted degrees") {
    GradedModule M = scenario_module("u-duality-su8");  // truncated at 6
    CHECK_THROWS_AS(Resolution(M, 8, 7), WindowError);
    CHECK_NOTHROW(Resolution(M, 2, 6));
    auto a1 = presets::algebra("A(1)");
    CHECK_NOTHROW(Resolution(trivial_module(a1), 3, 15));  // complete module: any t
}
