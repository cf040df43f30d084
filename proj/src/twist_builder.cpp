#include "thomtwist/twist_builder.hpp"

#include <stdexcept>

namespace tt {
namespace {

struct TargetSpec {
    int prime;
    std::vector<std::string> gen_names;
    std::map<std::string, int> class_degrees;
};

const std::map<std::string, TargetSpec>& target_specs() {
    static const std::map<std::string, TargetSpec> specs = {
        {"HZ", {2, {"Sq1"}, {{"a", 1}}}},
        {"ku", {2, {"Q0", "Q1"}, {{"a", 1}, {"c2", 3}}}},
        {"ko", {2, {"Sq1", "Sq2"}, {{"a", 1}, {"b", 2}}}},
        {"tmf2", {2, {"Sq1", "Sq2", "Sq4"}, {{"a", 1}, {"gw", 2}, {"delta4", 4}}}},
        {"tmf3", {3, {"b", "P"}, {{"d3", 4}}}},
    };
    return specs;
}

std::string thom_label(const std::string& base) { return base == "1" ? "U" : "U*" + base; }

void fill_labels(const CohomologyPresentation& pres, GradedModule& m) {
    for (const auto& [d, lab] : pres.labels) {
        if (lab.empty()) continue;
        auto& out = m.labels[d];
        for (const auto& s : lab) out.push_back(thom_label(s));
    }
}

// out += c * m (entrywise, mod p).
void acc_scaled(FpMat& out, const FpMat& m, int c) {
    if (c % out.prime() == 0) return;
    for (int i = 0; i < out.rows(); ++i)
        for (int j = 0; j < out.cols(); ++j) out.set(i, j, out.get(i, j) + c * m.get(i, j));
}

FpVec e_vec(int n, int i) {
    FpVec v(n, 0);
    v[i] = 1;
    return v;
}

}  // namespace

GradedModule build_twisted_module(const CohomologyPresentation& pres, AlgebraPtr alg,
                                  const TwistData& twist) {
    auto sit = target_specs().find(twist.target);
    if (sit == target_specs().end())
        throw std::invalid_argument("unknown twist target '" + twist.target + "'");
    const TargetSpec& spec = sit->second;

    if (pres.prime != spec.prime)
        throw std::invalid_argument("target '" + twist.target + "' needs p = " +
                                    std::to_string(spec.prime));
    if (alg->prime != spec.prime)
        throw std::invalid_argument("algebra prime does not match target '" + twist.target + "'");
    std::vector<std::string> names;
    for (const auto& g : alg->generators) names.push_back(g.name);
    if (names != spec.gen_names)
        throw std::invalid_argument("algebra generators do not match target '" + twist.target +
                                    "'");
    for (const auto& [nm, deg] : spec.class_degrees) {
        auto ct = twist.classes.find(nm);
        if (ct == twist.classes.end())
            throw std::invalid_argument("missing twist class '" + nm + "'");
        if (ct->second.degree != deg)
            throw std::invalid_argument("twist class '" + nm + "' must have degree " +
                                        std::to_string(deg));
        if (static_cast<int>(ct->second.coords.size()) != pres.dim(deg))
            throw std::invalid_argument("twist class '" + nm + "' has wrong coordinate length");
    }
    for (const auto& [nm, c] : twist.classes) {
        (void)c;
        if (!spec.class_degrees.count(nm))
            throw std::invalid_argument("unexpected twist class '" + nm + "'");
    }

    const int D = pres.D;
    GradedModule m;
    m.alg = alg;
    fill_labels(pres, m);
    m.truncation = pres.complete ? std::nullopt : std::optional<int>(D);
    m.actions.resize(alg->generators.size());

    std::vector<int> degs;
    for (const auto& [d, lab] : pres.labels)
        if (!lab.empty()) degs.push_back(d);

    auto sqm = [&](int k, int d) { return pres.sq_matrix(k, d); };
    auto mul = [&](const CohClass& c, int d) { return pres.mul_matrix(c, d); };
    auto cls = [&](const std::string& nm) { return twist.classes.at(nm); };

    if (twist.target == "HZ" || twist.target == "ku" || twist.target == "ko" ||
        twist.target == "tmf2") {
        CohClass a = cls("a");
        for (size_t gi = 0; gi < alg->generators.size(); ++gi) {
            const auto& g = alg->generators[gi];
            // Degree-3 cofficients that only exist when the window admits them.
            CohClass c2a3, coef3;
            if (twist.target == "ku" && g.name == "Q1")
                c2a3 = pres.class_add(cls("c2"),
                                      pres.class_mul(pres.class_mul(a, a), a));
            if (twist.target == "tmf2" && g.name == "Sq4") {
                CohClass gw = cls("gw");
                CohClass sq1gw{3, pres.sq_matrix(1, 2).mul_vec(gw.coords)};
                coef3 = pres.class_add(pres.class_mul(gw, a), sq1gw);
            }
            for (int d : degs) {
                if (d + g.degree > D) continue;
                FpMat mat(2, pres.dim(d + g.degree), pres.dim(d));
                if (g.name == "Sq1" || g.name == "Q0") {
                    mat = mul(a, d).add(sqm(1, d));
                } else if (g.name == "Q1") {
                    FpMat q1 = sqm(1, d + 2).mul(sqm(2, d)).add(sqm(2, d + 1).mul(sqm(1, d)));
                    mat = mul(c2a3, d).add(q1);
                } else if (g.name == "Sq2") {
                    CohClass b2 = twist.target == "ko" ? cls("b") : cls("gw");
                    mat = mul(b2, d).add(mul(a, d + 1).mul(sqm(1, d))).add(sqm(2, d));
                } else {  // Sq4
                    CohClass gw = cls("gw");
                    FpMat sq3 = sqm(1, d + 2).mul(sqm(2, d));
                    mat = mul(cls("delta4"), d)
                              .add(mul(coef3, d + 1).mul(sqm(1, d)))
                              .add(mul(gw, d + 2).mul(sqm(2, d)))
                              .add(mul(a, d + 3).mul(sq3))
                              .add(sqm(4, d));
                }
                m.actions[gi].emplace(d, std::move(mat));
            }
        }
    } else {  // tmf3
        CohClass d3 = cls("d3");
        for (size_t gi = 0; gi < alg->generators.size(); ++gi) {
            const auto& g = alg->generators[gi];
            for (int d : degs) {
                if (d + g.degree > D) continue;
                FpMat mat = g.name == "b" ? pres.beta_matrix(d)
                                          : mul(d3, d).add(pres.p1_matrix(d));
                m.actions[gi].emplace(d, std::move(mat));
            }
        }
    }
    return m;
}

GradedModule thom_module_from_sw(const CohomologyPresentation& pres, AlgebraPtr alg,
                                 const std::map<int, CohClass>& w) {
    if (pres.prime != 2 || alg->prime != 2)
        throw std::invalid_argument("characteristic-class Thom modules require p = 2");
    for (const auto& [i, c] : w) {
        if (i < 1 || c.degree != i)
            throw std::invalid_argument("characteristic class w_" + std::to_string(i) +
                                        " has wrong degree");
        if (static_cast<int>(c.coords.size()) != pres.dim(i))
            throw std::invalid_argument("characteristic class w_" + std::to_string(i) +
                                        " has wrong coordinate length");
    }

    const int D = pres.D;
    GradedModule m;
    m.alg = alg;
    fill_labels(pres, m);
    m.truncation = pres.complete ? std::nullopt : std::optional<int>(D);
    m.actions.resize(alg->generators.size());

    std::vector<int> degs;
    for (const auto& [d, lab] : pres.labels)
        if (!lab.empty()) degs.push_back(d);

    // Sq^n(U x) = sum_{i+j=n} U w_i Sq^j(x); valid whenever d + n <= D.
    auto sq_n = [&](int n, int d) {
        FpMat out(2, pres.dim(d + n), pres.dim(d));
        for (int i = 0; i <= n; ++i) {
            int j = n - i;
            CohClass wi;
            if (i == 0)
                wi = pres.unit_class();
            else {
                auto it = w.find(i);
                if (it == w.end()) continue;
                wi = it->second;
            }
            if (vec_is_zero(wi.coords)) continue;
            out = out.add(pres.mul_matrix(wi, d + j).mul(pres.sq_matrix(j, d)));
        }
        return out;
    };

    for (size_t gi = 0; gi < alg->generators.size(); ++gi) {
        const auto& g = alg->generators[gi];
        for (int d : degs) {
            if (d + g.degree > D) continue;
            FpMat mat(2, pres.dim(d + g.degree), pres.dim(d));
            if (g.name == "Sq1" || g.name == "Q0")
                mat = sq_n(1, d);
            else if (g.name == "Sq2")
                mat = sq_n(2, d);
            else if (g.name == "Sq4")
                mat = sq_n(4, d);
            else if (g.name == "Q1")
                mat = sq_n(1, d + 2).mul(sq_n(2, d)).add(sq_n(2, d + 1).mul(sq_n(1, d)));
            else
                throw std::invalid_argument("no untwisted action rule for generator '" + g.name +
                                            "'");
            m.actions[gi].emplace(d, std::move(mat));
        }
    }
    return m;
}

FpMat base_operation_matrix(const CohomologyPresentation& pres, const FiniteGradedAlgebra& alg,
                            int bd, int bi, int d) {
    if (d + bd > pres.D) throw std::out_of_range("base_operation_matrix past stored window");
    auto gen_matrix = [&](int g, int dd) -> FpMat {
        const std::string& nm = alg.generators[g].name;
        if (nm == "Sq1" || nm == "Q0") return pres.sq_matrix(1, dd);
        if (nm == "Sq2") return pres.sq_matrix(2, dd);
        if (nm == "Sq4") return pres.sq_matrix(4, dd);
        if (nm == "Q1")
            return pres.sq_matrix(1, dd + 2)
                .mul(pres.sq_matrix(2, dd))
                .add(pres.sq_matrix(2, dd + 1).mul(pres.sq_matrix(1, dd)));
        if (nm == "b") return pres.beta_matrix(dd);
        if (nm == "P") return pres.p1_matrix(dd);
        throw std::invalid_argument("no untwisted action rule for generator '" + nm + "'");
    };

    FpMat out(pres.prime, pres.dim(d + bd), pres.dim(d));
    const WordCombo& combo = alg.basis_word_combo(bd, bi);
    for (const auto& [coeff, word] : combo.terms) {
        FpMat acc = FpMat::identity(pres.prime, pres.dim(d));
        int dd = d;
        for (auto it = word.rbegin(); it != word.rend(); ++it) {
            acc = gen_matrix(*it, dd).mul(acc);
            dd += alg.generators[*it].degree;
        }
        acc_scaled(out, acc, coeff);
    }
    return out;
}

ThomDiagonalReport check_thom_diagonal(const CohomologyPresentation& pres,
                                       const GradedModule& mod) {
    ThomDiagonalReport rep;
    const FiniteGradedAlgebra& alg = *mod.alg;
    const int p = alg.prime;

    auto mulvec = [&](int d1, const FpVec& v1, int d2, const FpVec& v2) {
        FpVec out(pres.dim(d1 + d2), 0);
        for (int i = 0; i < pres.dim(d1); ++i) {
            if (!v1[i]) continue;
            for (int j = 0; j < pres.dim(d2); ++j) {
                if (!v2[j]) continue;
                FpVec pv = pres.product(d1, i, d2, j);
                int c = v1[i] * v2[j];
                for (size_t r = 0; r < pv.size(); ++r)
                    out[r] = static_cast<uint8_t>((out[r] + c * pv[r]) % p);
            }
        }
        return out;
    };

    std::vector<int> degs;
    for (const auto& [d, lab] : pres.labels)
        if (!lab.empty()) degs.push_back(d);

    for (size_t gi = 0; gi < alg.generators.size(); ++gi) {
        const auto& g = alg.generators[gi];
        for (int i : degs)
            for (int j : degs) {
                if (i + j + g.degree > pres.D) continue;
                FpMat gm = mod.gen_action(static_cast<int>(gi), i + j);
                for (int x = 0; x < pres.dim(i); ++x)
                    for (int y = 0; y < pres.dim(j); ++y) {
                        FpVec lhs = gm.mul_vec(pres.product(i, x, j, y));
                        FpVec rhs(pres.dim(i + j + g.degree), 0);
                        for (const auto& ct : g.coproduct) {
                            FpVec lv =
                                mod.basis_action(ct.ldeg, ct.lidx, i).mul_vec(e_vec(pres.dim(i), x));
                            FpVec rv = base_operation_matrix(pres, alg, ct.rdeg, ct.ridx, j)
                                           .mul_vec(e_vec(pres.dim(j), y));
                            int c = ct.coeff;
                            if (p != 2 && (ct.rdeg % 2) && (i % 2)) c = c * (p - 1);
                            FpVec term = mulvec(i + ct.ldeg, lv, j + ct.rdeg, rv);
                            for (size_t r = 0; r < rhs.size(); ++r)
                                rhs[r] = static_cast<uint8_t>((rhs[r] + c * term[r]) % p);
                        }
                        if (lhs != rhs) {
                            rep.ok = false;
                            rep.problems.push_back(
                                "diagonal fails for " + g.name + " on degrees (" +
                                std::to_string(i) + "," + std::to_string(j) + ") basis (" +
                                std::to_string(x) + "," + std::to_string(y) + ")");
                        }
                    }
            }
    }
    return rep;
}

}  // namespace tt
