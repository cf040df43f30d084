#include "thomtwist/graded_module.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace tt {

namespace {
constexpr int kBig = std::numeric_limits<int>::max() / 4;
}

std::vector<int> GradedModule::degrees() const {
    std::vector<int> out;
    for (const auto& [d, v] : labels)
        if (!v.empty()) out.push_back(d);
    return out;
}

int GradedModule::bottom() const {
    auto ds = degrees();
    return ds.empty() ? 0 : ds.front();
}

int GradedModule::top() const {
    auto ds = degrees();
    return ds.empty() ? 0 : ds.back();
}

int GradedModule::eff_trunc() const { return truncation.value_or(kBig); }

FpMat GradedModule::gen_action(int g, int d) const {
    int gd = alg->generators.at(g).degree;
    auto it = actions.at(g).find(d);
    if (it == actions[g].end()) return FpMat(prime(), dim(d + gd), dim(d));
    return it->second;
}

FpMat GradedModule::word_action(const std::vector<int>& word, int d) const {
    FpMat out = FpMat::identity(prime(), dim(d));
    int deg = d;
    for (auto it = word.rbegin(); it != word.rend(); ++it) {
        out = gen_action(*it, deg).mul(out);
        deg += alg->generators.at(*it).degree;
    }
    return out;
}

const FpMat& GradedModule::basis_action(int bd, int bi, int d) const {
    auto key = std::make_tuple(bd, bi, d);
    auto it = basis_act_cache_.find(key);
    if (it != basis_act_cache_.end()) return it->second;
    FpMat out(prime(), dim(d + bd), dim(d));
    for (const auto& [c, w] : alg->basis_word_combo(bd, bi).terms) {
        FpMat wa = word_action(w, d);
        for (int r = 0; r < out.rows(); ++r)
            for (int col = 0; col < out.cols(); ++col)
                out.set(r, col, out.get(r, col) + c * wa.get(r, col));
    }
    return basis_act_cache_.emplace(key, std::move(out)).first->second;
}

std::vector<ValidationFailure> GradedModule::validate() const {
    std::vector<ValidationFailure> fails;
    auto degs = degrees();
    if (degs.empty()) return fails;
    const int lo = degs.front(), hi = degs.back();
    const int T = eff_trunc();
    int kmax = complete() ? (hi - lo) : (T - lo);
    // Past the algebra's top nonzero degree every word evaluates to zero, so the
    // kernel is the full word space and the checks below still apply verbatim —
    // but only when the algebra is complete (otherwise those degrees are unknown).
    if (!alg->complete) kmax = std::min(kmax, alg->top_degree);
    for (int k = 1; k <= kmax; ++k) {
        FpMat ker = alg->word_kernel(k);
        if (ker.rows() == 0) continue;
        auto ws = alg->words_of_degree(k);
        for (int d : degs) {
            if (!complete() && d + k > T) continue;
            for (int r = 0; r < ker.rows(); ++r) {
                FpMat m(prime(), dim(d + k), dim(d));
                for (int wi = 0; wi < ker.cols(); ++wi) {
                    int c = ker.get(r, wi);
                    if (!c) continue;
                    FpMat wa = word_action(ws[wi], d);
                    for (int i = 0; i < m.rows(); ++i)
                        for (int j = 0; j < m.cols(); ++j)
                            m.set(i, j, m.get(i, j) + c * wa.get(i, j));
                }
                if (m.is_zero()) continue;
                ValidationFailure f;
                f.word_degree = k;
                f.source_degree = d;
                f.combo = ker.row(r);
                for (int j = 0; j < m.cols() && f.witness_output.empty(); ++j)
                    for (int i = 0; i < m.rows(); ++i)
                        if (m.get(i, j)) {
                            f.witness_input = j;
                            FpVec e(m.cols(), 0);
                            e[j] = 1;
                            f.witness_output = m.mul_vec(e);
                            break;
                        }
                fails.push_back(std::move(f));
            }
        }
    }
    return fails;
}

// ------------------------------------------------------------ constructors

GradedModule trivial_module(AlgebraPtr alg, const std::string& label) {
    GradedModule m;
    m.alg = std::move(alg);
    m.labels[0] = {label};
    m.actions.resize(m.alg->generators.size());
    return m;
}

FpVec CyclicModule::project(int d, FpVec v) const {
    const int p = module.prime();
    for (const auto& [c, row] : reduced_.at(d)) {
        int coef = v[c] % p;
        if (!coef) continue;
        int neg = fp_neg(p, coef);
        for (size_t j = c; j < v.size(); ++j)
            v[j] = static_cast<uint8_t>((v[j] + neg * row[j]) % p);
    }
    FpVec out(keep.at(d).size());
    for (size_t i = 0; i < keep[d].size(); ++i) out[i] = v[keep[d][i]];
    return out;
}

CyclicModule cyclic_module(AlgebraPtr alg, const std::vector<WordRelation>& annihilators,
                           std::optional<int> trunc) {
    const int p = alg->prime;
    const int top = trunc ? std::min(alg->top_degree, *trunc) : alg->top_degree;

    // Evaluate each annihilator to a (degree, vector) pair.
    std::vector<std::pair<int, FpVec>> anns;
    for (const auto& r : annihilators) {
        int rd = -1;
        FpVec vec;
        for (const auto& [c, w] : r.terms) {
            int d = alg->word_degree(w);
            if (rd < 0) {
                rd = d;
                vec.assign(alg->dim(rd), 0);
            } else if (rd != d) {
                throw std::invalid_argument("inhomogeneous annihilator");
            }
            FpVec v = alg->eval_word(w);
            if (!v.empty()) vec = vec_add(p, vec, vec_scale(p, c, v));
        }
        if (rd >= 0) anns.emplace_back(rd, std::move(vec));
    }

    CyclicModule cm;
    cm.keep.resize(top + 1);
    cm.reduced_.resize(top + 1);
    for (int d = 0; d <= top; ++d) {
        // Rows spanning (left ideal)_d: x * r over all basis x of degree d - |r|.
        std::vector<FpVec> rows;
        for (const auto& [rd, rv] : anns) {
            int xd = d - rd;
            if (xd < 0) continue;
            for (int i = 0; i < alg->dim(xd); ++i) {
                FpVec xv(alg->dim(xd), 0);
                xv[i] = 1;
                rows.push_back(alg->multiply(xd, xv, rd, rv));
            }
        }
        RrefResult rr = rref(FpMat::from_rows(p, rows, alg->dim(d)));
        for (size_t k = 0; k < rr.pivots.size(); ++k)
            cm.reduced_[d][rr.pivots[k]] = rr.reduced.row(static_cast<int>(k));
        for (int i = 0; i < alg->dim(d); ++i)
            if (!cm.reduced_[d].count(i)) cm.keep[d].push_back(i);
    }

    GradedModule& m = cm.module;
    m.alg = alg;
    m.truncation = trunc;
    for (int d = 0; d <= top; ++d) {
        if (cm.keep[d].empty()) continue;
        std::vector<std::string> labs;
        for (int i : cm.keep[d]) labs.push_back(alg->basis[d][i]);
        m.labels[d] = std::move(labs);
    }
    m.actions.resize(alg->generators.size());
    for (size_t g = 0; g < alg->generators.size(); ++g) {
        const auto& gen = alg->generators[g];
        for (int d = 0; d + gen.degree <= top; ++d) {
            if (cm.keep[d].empty()) continue;
            FpMat mat(p, static_cast<int>(cm.keep[d + gen.degree].size()),
                      static_cast<int>(cm.keep[d].size()));
            for (size_t col = 0; col < cm.keep[d].size(); ++col) {
                FpVec xv(alg->dim(d), 0);
                xv[cm.keep[d][col]] = 1;
                FpVec img = cm.project(d + gen.degree, alg->multiply(gen.degree, gen.elem, d, xv));
                for (size_t r = 0; r < img.size(); ++r) mat.set(static_cast<int>(r), static_cast<int>(col), img[r]);
            }
            m.actions[g][d] = std::move(mat);
        }
    }
    return cm;
}

GradedModule suspend(const GradedModule& m, int k) {
    GradedModule out;
    out.alg = m.alg;
    for (const auto& [d, v] : m.labels) out.labels[d + k] = v;
    out.actions.resize(m.actions.size());
    for (size_t g = 0; g < m.actions.size(); ++g)
        for (const auto& [d, mat] : m.actions[g]) out.actions[g][d + k] = mat;
    if (m.truncation) out.truncation = *m.truncation + k;
    return out;
}

GradedModule direct_sum(const std::vector<const GradedModule*>& mods) {
    if (mods.empty()) throw std::invalid_argument("direct_sum of nothing");
    GradedModule out;
    out.alg = mods[0]->alg;
    int tr = kBig;
    for (const GradedModule* m : mods) {
        if (m->alg.get() != out.alg.get())
            throw std::invalid_argument("direct_sum: modules over different algebras");
        tr = std::min(tr, m->eff_trunc());
    }
    std::vector<int> degs;
    for (const GradedModule* m : mods)
        for (int d : m->degrees()) degs.push_back(d);
    std::sort(degs.begin(), degs.end());
    degs.erase(std::unique(degs.begin(), degs.end()), degs.end());

    for (int d : degs) {
        std::vector<std::string> labs;
        for (size_t k = 0; k < mods.size(); ++k) {
            auto it = mods[k]->labels.find(d);
            if (it == mods[k]->labels.end()) continue;
            for (const auto& l : it->second) labs.push_back(std::to_string(k) + ":" + l);
        }
        if (!labs.empty()) out.labels[d] = std::move(labs);
    }
    const int p = out.alg->prime;
    out.actions.resize(out.alg->generators.size());
    for (size_t g = 0; g < out.actions.size(); ++g) {
        int gd = out.alg->generators[g].degree;
        for (int d : degs) {
            int tot_s = out.dim(d), tot_t = 0;
            for (const GradedModule* m : mods) tot_t += m->dim(d + gd);
            if (tot_s == 0 || tot_t == 0 || d + gd > tr) continue;
            FpMat big(p, tot_t, tot_s);
            int ro = 0, co = 0;
            for (const GradedModule* m : mods) {
                FpMat blk = m->gen_action(static_cast<int>(g), d);
                for (int i = 0; i < blk.rows(); ++i)
                    for (int j = 0; j < blk.cols(); ++j) big.set(ro + i, co + j, blk.get(i, j));
                ro += m->dim(d + gd);
                co += m->dim(d);
            }
            out.actions[g][d] = std::move(big);
        }
    }
    if (tr < kBig) out.truncation = tr;
    return out;
}

GradedModule tensor_product(const GradedModule& a, const GradedModule& b) {
    if (a.alg.get() != b.alg.get())
        throw std::invalid_argument("tensor_product: modules over different algebras");
    const auto& alg = *a.alg;
    const int p = alg.prime;
    GradedModule out;
    out.alg = a.alg;
    const int botA = a.bottom(), botB = b.bottom();
    const int tr = std::min(a.eff_trunc() + botB, b.eff_trunc() + botA);
    const int top = std::min(tr, a.top() + b.top());

    // pairs[d] = (degree of a-part, index in a-part, index in b-part)
    std::map<int, std::vector<std::tuple<int, int, int>>> pairs;
    for (int d = botA + botB; d <= top; ++d) {
        std::vector<std::tuple<int, int, int>> pl;
        std::vector<std::string> labs;
        for (int i : a.degrees()) {
            int j = d - i;
            if (b.dim(j) == 0) continue;
            for (int mi = 0; mi < a.dim(i); ++mi)
                for (int nj = 0; nj < b.dim(j); ++nj) {
                    pl.emplace_back(i, mi, nj);
                    labs.push_back(a.labels.at(i)[mi] + "(x)" + b.labels.at(j)[nj]);
                }
        }
        if (!pl.empty()) {
            pairs[d] = std::move(pl);
            out.labels[d] = std::move(labs);
        }
    }
    std::map<int, std::map<std::tuple<int, int, int>, int>> pidx;
    for (const auto& [d, pl] : pairs)
        for (size_t k = 0; k < pl.size(); ++k) pidx[d][pl[k]] = static_cast<int>(k);

    out.actions.resize(alg.generators.size());
    for (size_t g = 0; g < alg.generators.size(); ++g) {
        int gd = alg.generators[g].degree;
        for (const auto& [d, pl] : pairs) {
            if (d + gd > top) continue;
            FpMat m(p, out.dim(d + gd), static_cast<int>(pl.size()));
            for (size_t col = 0; col < pl.size(); ++col) {
                auto [i, mi, nj] = pl[col];
                int j = d - i;
                for (const CoprodTerm& ct : alg.generators[g].coproduct) {
                    // left part on the a-factor, right part on the b-factor
                    const FpMat& la = a.basis_action(ct.ldeg, ct.lidx, i);
                    const FpMat& rb = b.basis_action(ct.rdeg, ct.ridx, j);
                    int sign = (p != 2 && ct.rdeg % 2 == 1 && i % 2 == 1) ? p - 1 : 1;
                    for (int ar = 0; ar < la.rows(); ++ar) {
                        int lv = la.get(ar, mi);
                        if (!lv) continue;
                        for (int br = 0; br < rb.rows(); ++br) {
                            int rv = rb.get(br, nj);
                            if (!rv) continue;
                            auto tgt = pidx[d + gd].find(std::make_tuple(i + ct.ldeg, ar, br));
                            if (tgt == pidx[d + gd].end()) continue;
                            int cur = m.get(tgt->second, static_cast<int>(col));
                            m.set(tgt->second, static_cast<int>(col),
                                  cur + sign * ct.coeff * lv * rv);
                        }
                    }
                }
            }
            out.actions[g][d] = std::move(m);
        }
    }
    if (tr < kBig) out.truncation = tr;
    return out;
}

GradedModule truncate(const GradedModule& m, int D) {
    GradedModule out;
    out.alg = m.alg;
    for (const auto& [d, v] : m.labels)
        if (d <= D) out.labels[d] = v;
    out.actions.resize(m.actions.size());
    for (size_t g = 0; g < m.actions.size(); ++g) {
        int gd = m.alg->generators[g].degree;
        for (const auto& [d, mat] : m.actions[g])
            if (d <= D && d + gd <= D) out.actions[g][d] = mat;
    }
    out.truncation = D;
    return out;
}

// ---------------------------------------------------------------- SES check

FpMat ModuleMap::at(int d) const {
    auto it = mats.find(d);
    if (it != mats.end()) return it->second;
    return FpMat(src->prime(), tgt->dim(d), src->dim(d));
}

std::optional<std::pair<std::string, int>> ModuleMap::commutes() const {
    const auto& alg = *src->alg;
    for (size_t g = 0; g < alg.generators.size(); ++g) {
        int gd = alg.generators[g].degree;
        for (int d : src->degrees()) {
            FpMat lhs = at(d + gd).mul(src->gen_action(static_cast<int>(g), d));
            FpMat rhs = tgt->gen_action(static_cast<int>(g), d).mul(at(d));
            if (!(lhs == rhs)) return std::make_pair(alg.generators[g].name, d);
        }
    }
    return std::nullopt;
}

SesReport check_ses(const ModuleMap& i, const ModuleMap& q) {
    SesReport rep;
    auto fail = [&](const std::string& s) {
        rep.ok = false;
        rep.problems.push_back(s);
    };
    if (i.tgt != q.src) fail("i's target is not q's source");
    const GradedModule &sub = *i.src, &mid = *i.tgt, &quot = *q.tgt;
    std::vector<int> degs;
    for (const GradedModule* m : {&sub, &mid, &quot})
        for (int d : m->degrees()) degs.push_back(d);
    std::sort(degs.begin(), degs.end());
    degs.erase(std::unique(degs.begin(), degs.end()), degs.end());
    for (int d : degs) {
        if (sub.dim(d) + quot.dim(d) != mid.dim(d))
            fail("dimension additivity fails at degree " + std::to_string(d));
        FpMat im = i.at(d), qm = q.at(d);
        if (rank(im) != sub.dim(d)) fail("i not injective at degree " + std::to_string(d));
        if (rank(qm) != quot.dim(d)) fail("q not surjective at degree " + std::to_string(d));
        if (im.cols() > 0 && qm.rows() > 0 && !qm.mul(im).is_zero())
            fail("q o i != 0 at degree " + std::to_string(d));
    }
    if (auto bad = i.commutes())
        fail("i does not commute with " + bad->first + " at degree " + std::to_string(bad->second));
    if (auto bad = q.commutes())
        fail("q does not commute with " + bad->first + " at degree " + std::to_string(bad->second));
    return rep;
}

}  // namespace tt
