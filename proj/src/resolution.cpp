#include "thomtwist/resolution.hpp"

#include <algorithm>
#include <string>

namespace tt {

namespace {

// Reduce v against a reduced row-echelon form; returns the residue.
FpVec reduce_against(int p, FpVec v, const RrefResult& R) {
    for (size_t k = 0; k < R.pivots.size(); ++k) {
        int c = R.pivots[k];
        int coef = v[c] % p;
        if (coef) v = vec_add(p, v, vec_scale(p, p - coef, R.reduced.row(static_cast<int>(k))));
    }
    return v;
}

FpMat append_row(const RrefResult& R, const FpVec& v, int p, int cols) {
    if (R.reduced.rows() == 0) return FpMat::from_rows(p, {v}, cols);
    return R.reduced.vstack(FpMat::from_rows(p, {v}, cols));
}

int safe_rank(const FpMat& m) { return (m.rows() && m.cols()) ? rank(m) : 0; }

const FreeElem& elem_or_empty(const std::map<int, FreeElem>& m, int gi) {
    static const FreeElem empty;
    auto it = m.find(gi);
    return it == m.end() ? empty : it->second;
}

}  // namespace

Resolution::Resolution(GradedModule mod, int s_max, int t_max)
    : mod_(std::move(mod)), s_max_(s_max), t_max_(t_max) {
    if (s_max_ < 0 || t_max_ < 0) throw WindowError("resolution window must be nonnegative");
    if (t_max_ > mod_.eff_trunc())
        throw WindowError("window exceeds trusted truncation (t_max " + std::to_string(t_max_) +
                          " > " + std::to_string(mod_.eff_trunc()) + ")");
    gens_.resize(s_max_ + 1);
    diff_.resize(s_max_ + 1);
    build(-1, -1);
}

Resolution::Resolution(GradedModule mod, int s_max, int t_max, const ResolutionData& resume_from)
    : mod_(std::move(mod)), s_max_(s_max), t_max_(t_max) {
    if (s_max_ < 0 || t_max_ < 0) throw WindowError("resolution window must be nonnegative");
    if (t_max_ > mod_.eff_trunc())
        throw WindowError("window exceeds trusted truncation (t_max " + std::to_string(t_max_) +
                          " > " + std::to_string(mod_.eff_trunc()) + ")");
    gens_.resize(s_max_ + 1);
    diff_.resize(s_max_ + 1);
    if (resume_from.s_max <= s_max_ && resume_from.t_max <= t_max_ &&
        static_cast<int>(resume_from.gens.size()) == resume_from.s_max + 1 &&
        resume_from.diff.size() == resume_from.gens.size() &&
        resume_from.diff0.size() == (resume_from.gens.empty() ? 0 : resume_from.gens[0].size())) {
        for (size_t s = 0; s < resume_from.gens.size(); ++s) {
            gens_[s] = resume_from.gens[s];
            diff_[s] = resume_from.diff[s];
        }
        diff0_ = resume_from.diff0;
        build(resume_from.s_max, resume_from.t_max);
    } else {
        build(-1, -1);  // snapshot does not fit under the request: fresh build
    }
}

ResolutionData Resolution::data() const { return {s_max_, t_max_, gens_, diff0_, diff_}; }

std::vector<FreeTermKey> Resolution::slice_basis(int s, int t) const {
    std::vector<FreeTermKey> out;
    const auto& A = alg();
    const auto& gs = gens_.at(s);
    for (int gi = 0; gi < static_cast<int>(gs.size()); ++gi) {
        int bd = t - gs[gi].t;
        if (bd < 0) continue;
        for (int bi = 0; bi < A.dim(bd); ++bi) out.push_back({gi, bd, bi});
    }
    return out;
}

FpVec Resolution::elem_to_vec(const FreeElem& e, const std::vector<FreeTermKey>& sb) const {
    const int p = prime();
    std::map<FreeTermKey, int> idx;
    for (size_t i = 0; i < sb.size(); ++i) idx[sb[i]] = static_cast<int>(i);
    FpVec v(sb.size(), 0);
    for (const auto& [k, c] : e) v[idx.at(k)] = static_cast<uint8_t>(((c % p) + p) % p);
    return v;
}

FreeElem Resolution::vec_to_elem(const FpVec& v, const std::vector<FreeTermKey>& sb) const {
    const int p = prime();
    FreeElem out;
    for (size_t i = 0; i < v.size(); ++i)
        if (v[i] % p) out[sb[i]] = v[i] % p;
    return out;
}

FreeElem Resolution::act_elem(int /*s*/, int bd, int bi, const FreeElem& e) const {
    const auto& A = alg();
    const int p = prime();
    FreeElem out;
    for (const auto& [k, c] : e) {
        if (bd + k.bd > A.top_degree) continue;
        const FpVec& pr = A.product(bd, bi, k.bd, k.bi);
        for (size_t b3 = 0; b3 < pr.size(); ++b3) {
            if (!pr[b3]) continue;
            FreeTermKey k3{k.gi, bd + k.bd, static_cast<int>(b3)};
            out[k3] = (out[k3] + c * pr[b3]) % p;
        }
    }
    for (auto it = out.begin(); it != out.end();)
        it = it->second ? std::next(it) : out.erase(it);
    return out;
}

FpMat Resolution::diff_matrix(int s, int t) const {
    const int p = prime();
    auto sb = slice_basis(s, t);
    if (s == 0) {
        FpMat m(p, mod_.dim(t), static_cast<int>(sb.size()));
        for (size_t col = 0; col < sb.size(); ++col) {
            const FreeTermKey& k = sb[col];
            int tg = gens_[0][k.gi].t;
            FpVec img = mod_.basis_action(k.bd, k.bi, tg).mul_vec(diff0_[k.gi]);
            for (int i = 0; i < m.rows(); ++i) m.set(i, static_cast<int>(col), img[i]);
        }
        return m;
    }
    auto sbp = slice_basis(s - 1, t);
    std::map<FreeTermKey, int> idx;
    for (size_t i = 0; i < sbp.size(); ++i) idx[sbp[i]] = static_cast<int>(i);
    FpMat m(p, static_cast<int>(sbp.size()), static_cast<int>(sb.size()));
    for (size_t col = 0; col < sb.size(); ++col) {
        const FreeTermKey& k = sb[col];
        FreeElem moved = act_elem(s - 1, k.bd, k.bi, diff_[s][k.gi]);
        for (const auto& [k2, c] : moved) m.set(idx.at(k2), static_cast<int>(col), c);
    }
    return m;
}

void Resolution::build(int done_s, int done_t) {
    const auto& A = alg();
    const int p = prime();
    for (int t = 0; t <= t_max_; ++t) {
        // Stage 0: minimal generators of the module in degree t.
        if (t > done_t) {
            int mt = mod_.dim(t);
            if (mt) {
                std::vector<FpVec> rows;
                for (size_t gi = 0; gi < gens_[0].size(); ++gi) {
                    int tg = gens_[0][gi].t, bd = t - tg;
                    if (bd < 0) continue;
                    for (int bi = 0; bi < A.dim(bd); ++bi)
                        rows.push_back(mod_.basis_action(bd, bi, tg).mul_vec(diff0_[gi]));
                }
                RrefResult R = rref(FpMat::from_rows(p, rows, mt));
                for (int j = 0; j < mt; ++j) {
                    if (std::find(R.pivots.begin(), R.pivots.end(), j) != R.pivots.end()) continue;
                    FpVec e(mt, 0);
                    e[j] = 1;
                    FpVec v = reduce_against(p, e, R);
                    if (vec_is_zero(v)) continue;
                    int k = static_cast<int>(std::count_if(gens_[0].begin(), gens_[0].end(),
                                                           [&](const FreeGenerator& g) { return g.t == t; }));
                    gens_[0].push_back({t, "0_" + std::to_string(t) + "_" + std::to_string(k)});
                    diff0_.push_back(e);  // the chosen module basis vector itself
                    R = rref(append_row(R, e, p, mt));
                }
            }
        }
        // Stages s >= 1: new generators for kernel classes of d_{s-1} not yet hit.
        for (int s = 1; s <= s_max_; ++s) {
            if (t <= done_t && s <= done_s) continue;
            auto sb = slice_basis(s - 1, t);
            if (sb.empty()) continue;
            FpMat D = diff_matrix(s - 1, t);
            FpMat K = kernel_basis(D);
            if (K.rows() == 0) continue;
            std::vector<FpVec> rows;
            for (size_t gi = 0; gi < gens_[s].size(); ++gi) {
                int tg = gens_[s][gi].t, bd = t - tg;
                if (bd < 0) continue;
                for (int bi = 0; bi < A.dim(bd); ++bi)
                    rows.push_back(elem_to_vec(act_elem(s - 1, bd, bi, diff_[s][gi]), sb));
            }
            RrefResult R = rref(FpMat::from_rows(p, rows, static_cast<int>(sb.size())));
            for (int r = 0; r < K.rows(); ++r) {
                FpVec v = reduce_against(p, K.row(r), R);
                if (vec_is_zero(v)) continue;
                int k = static_cast<int>(std::count_if(gens_[s].begin(), gens_[s].end(),
                                                       [&](const FreeGenerator& g) { return g.t == t; }));
                gens_[s].push_back({t, std::to_string(s) + "_" + std::to_string(t) + "_" +
                                           std::to_string(k)});
                diff_[s].push_back(vec_to_elem(v, sb));  // reduced kernel representative
                R = rref(append_row(R, v, p, static_cast<int>(sb.size())));
            }
        }
    }
}

std::map<std::pair<int, int>, int> Resolution::ext_ranks() const {
    std::map<std::pair<int, int>, int> out;
    for (int s = 0; s <= s_max_; ++s)
        for (const auto& g : gens_[s]) ++out[{s, g.t}];
    return out;
}

int Resolution::ext_rank(int s, int t) const {
    if (s < 0 || s > s_max_) return 0;
    return static_cast<int>(gens_at(s, t).size());
}

std::vector<int> Resolution::gens_at(int s, int t) const {
    std::vector<int> out;
    const auto& gs = gens_.at(s);
    for (int gi = 0; gi < static_cast<int>(gs.size()); ++gi)
        if (gs[gi].t == t) out.push_back(gi);
    return out;
}

std::optional<FpMat> Resolution::edge_matrix(int s, int t, int bd, int bi) const {
    if (s < 0 || s + 1 > s_max_) return std::nullopt;
    auto cols = gens_at(s, t);
    auto rows = gens_at(s + 1, t + bd);
    FpMat m(prime(), static_cast<int>(rows.size()), static_cast<int>(cols.size()));
    for (size_t rI = 0; rI < rows.size(); ++rI) {
        const FreeElem& el = diff_[s + 1][rows[rI]];
        for (size_t cI = 0; cI < cols.size(); ++cI) {
            auto it = el.find({cols[cI], bd, bi});
            if (it != el.end()) m.set(static_cast<int>(rI), static_cast<int>(cI), it->second);
        }
    }
    return m;
}

bool Resolution::d2_check() const {
    for (int s = 1; s <= s_max_; ++s) {
        for (size_t gi = 0; gi < gens_[s].size(); ++gi) {
            int t = gens_[s][gi].t;
            FpMat m = diff_matrix(s - 1, t);
            FpVec vec = elem_to_vec(diff_[s][gi], slice_basis(s - 1, t));
            if (!vec_is_zero(m.mul_vec(vec))) return false;
        }
    }
    return true;
}

bool Resolution::minimality_check() const {
    for (int s = 1; s <= s_max_; ++s)
        for (const auto& el : diff_[s])
            for (const auto& [k, c] : el)
                if (k.bd == 0 && c % prime()) return false;
    return true;
}

bool Resolution::exactness_check() const {
    for (int s = 0; s + 1 <= s_max_; ++s) {
        for (int t = 0; t <= t_max_; ++t) {
            FpMat D = diff_matrix(s, t);
            int ker = D.cols() - safe_rank(D);
            int im = safe_rank(diff_matrix(s + 1, t));
            if (ker != im) return false;
        }
    }
    return true;
}

// ------------------------------------------------------------- chain maps ---

std::vector<std::map<int, FreeElem>> lift_cocycle(const Resolution& res, const Resolution& ground,
                                                  int s, int t, int gen_index, int sigma_max) {
    if (ground.stage(0).size() != 1 || ground.stage(0)[0].t != 0)
        throw std::invalid_argument("ground resolution must resolve the trivial module");
    if (s + sigma_max > res.s_max())
        throw std::runtime_error("cocycle lift leaves the resolution window");
    const int p = res.prime();
    std::vector<std::map<int, FreeElem>> V;
    std::map<int, FreeElem> v0;
    for (int gi = 0; gi < static_cast<int>(res.stage(s).size()); ++gi)
        if (gi == gen_index) v0[gi] = {{{0, 0, 0}, 1}};
    V.push_back(std::move(v0));
    for (int i = 1; i <= sigma_max; ++i) {
        std::map<int, FreeElem> vi;
        const auto& gs = res.stage(s + i);
        for (int gi = 0; gi < static_cast<int>(gs.size()); ++gi) {
            int td = gs[gi].t - t;
            if (td < 0) continue;
            if (i > ground.s_max() || td > ground.t_max())
                throw std::runtime_error("cocycle lift leaves the ground window");
            FreeElem rhs;
            for (const auto& [key, c] : res.diff(s + i, gi)) {
                FreeElem moved = ground.act_elem(i - 1, key.bd, key.bi,
                                                 elem_or_empty(V[i - 1], key.gi));
                for (const auto& [k2, cc] : moved) rhs[k2] = (rhs[k2] + c * cc) % p;
            }
            for (auto it = rhs.begin(); it != rhs.end();)
                it = it->second ? std::next(it) : rhs.erase(it);
            auto sbG = ground.slice_basis(i, td);
            auto sbGp = ground.slice_basis(i - 1, td);
            FpMat D = ground.diff_matrix(i, td);
            auto x = solve(D, ground.elem_to_vec(rhs, sbGp));
            if (!x)
                throw std::runtime_error("cocycle lift failed at stage " + std::to_string(s + i));
            vi[gi] = ground.vec_to_elem(*x, sbG);
        }
        V.push_back(std::move(vi));
    }
    return V;
}

FpVec yoneda_product(const Resolution& res, const Resolution& ground,
                     std::pair<int, int> u_cell, int u_index,
                     std::pair<int, int> v_cell, int v_index) {
    auto [sigma, tau] = u_cell;
    auto [s, t] = v_cell;
    auto vgens = res.gens_at(s, t);
    auto ugens = ground.gens_at(sigma, tau);
    if (v_index < 0 || v_index >= static_cast<int>(vgens.size()))
        throw std::out_of_range("no such generator in the module Ext cell");
    if (u_index < 0 || u_index >= static_cast<int>(ugens.size()))
        throw std::out_of_range("no such generator in the ground Ext cell");
    auto V = lift_cocycle(res, ground, s, t, vgens[v_index], sigma);
    int ug = ugens[u_index];
    auto out_gens = res.gens_at(s + sigma, t + tau);
    FpVec out(out_gens.size(), 0);
    for (size_t k = 0; k < out_gens.size(); ++k) {
        const FreeElem& el = elem_or_empty(V[sigma], out_gens[k]);
        auto it = el.find({ug, 0, 0});
        if (it != el.end()) out[k] = static_cast<uint8_t>(it->second);
    }
    return out;
}

std::vector<std::map<int, FreeElem>> lift_module_map(const Resolution& src, const Resolution& tgt,
                                                     const std::map<int, FpMat>& fmat) {
    const int p = src.prime();
    std::vector<std::map<int, FreeElem>> Phi;
    std::map<int, FreeElem> ph0;
    for (int gi = 0; gi < static_cast<int>(src.stage(0).size()); ++gi) {
        int tg = src.stage(0)[gi].t;
        if (tg > tgt.t_max()) throw std::runtime_error("chain-map lift leaves the target window");
        auto it = fmat.find(tg);
        FpVec v = (it != fmat.end()) ? it->second.mul_vec(src.diff0(gi))
                                     : FpVec(tgt.module().dim(tg), 0);
        auto sb = tgt.slice_basis(0, tg);
        auto x = solve(tgt.diff_matrix(0, tg), v);
        if (!x) throw std::runtime_error("chain-map lift failed at stage 0");
        ph0[gi] = tgt.vec_to_elem(*x, sb);
    }
    Phi.push_back(std::move(ph0));
    int smax = std::min(src.s_max(), tgt.s_max());
    for (int s = 1; s <= smax; ++s) {
        std::map<int, FreeElem> ph;
        for (int gi = 0; gi < static_cast<int>(src.stage(s).size()); ++gi) {
            int tg = src.stage(s)[gi].t;
            if (tg > tgt.t_max()) throw std::runtime_error("chain-map lift leaves the target window");
            FreeElem rhs;
            for (const auto& [key, c] : src.diff(s, gi)) {
                FreeElem moved =
                    tgt.act_elem(s - 1, key.bd, key.bi, elem_or_empty(Phi[s - 1], key.gi));
                for (const auto& [k2, cc] : moved) rhs[k2] = (rhs[k2] + c * cc) % p;
            }
            for (auto it = rhs.begin(); it != rhs.end();)
                it = it->second ? std::next(it) : rhs.erase(it);
            auto sb = tgt.slice_basis(s, tg);
            auto sbp = tgt.slice_basis(s - 1, tg);
            auto x = solve(tgt.diff_matrix(s, tg), tgt.elem_to_vec(rhs, sbp));
            if (!x) throw std::runtime_error("chain-map lift failed at stage " + std::to_string(s));
            ph[gi] = tgt.vec_to_elem(*x, sb);
        }
        Phi.push_back(std::move(ph));
    }
    return Phi;
}

std::map<std::pair<int, int>, FpMat> induced_ext_matrices(const Resolution& src,
                                                          const Resolution& tgt,
                                                          const std::map<int, FpMat>& fmat) {
    auto Phi = lift_module_map(src, tgt, fmat);
    std::map<std::pair<int, int>, FpMat> out;
    int smax = std::min(src.s_max(), tgt.s_max());
    for (int s = 0; s <= smax; ++s) {
        std::vector<int> ts;
        for (const auto& g : src.stage(s)) ts.push_back(g.t);
        for (const auto& g : tgt.stage(s)) ts.push_back(g.t);
        std::sort(ts.begin(), ts.end());
        ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
        for (int t : ts) {
            auto src_g = src.gens_at(s, t);
            auto tgt_g = tgt.gens_at(s, t);
            FpMat m(src.prime(), static_cast<int>(tgt_g.size()), static_cast<int>(src_g.size()));
            for (size_t cI = 0; cI < src_g.size(); ++cI) {
                const FreeElem& el = elem_or_empty(Phi[s], src_g[cI]);
                for (size_t rI = 0; rI < tgt_g.size(); ++rI) {
                    auto it = el.find({tgt_g[rI], 0, 0});
                    if (it != el.end())
                        m.set(static_cast<int>(rI), static_cast<int>(cI), it->second);
                }
            }
            out[{s, t}] = std::move(m);
        }
    }
    return out;
}

// --------------------------------------------------------------- LES check ---

LesReport les_rank_check(const Resolution& sub, const Resolution& mid, const Resolution& quot,
                         const std::map<int, FpMat>& imat, const std::map<int, FpMat>& qmat,
                         int s_max, int t_max) {
    auto qstar = induced_ext_matrices(mid, quot, qmat);  // Ext(quot) -> Ext(mid)
    auto istar = induced_ext_matrices(sub, mid, imat);   // Ext(mid)  -> Ext(sub)
    auto rk = [](const std::map<std::pair<int, int>, FpMat>& m, int s, int t) {
        auto it = m.find({s, t});
        return it == m.end() ? 0 : safe_rank(it->second);
    };
    LesReport rep;
    for (int s = 0; s <= s_max; ++s) {
        for (int t = 0; t <= t_max; ++t) {
            int dm = mid.ext_rank(s, t), ds = sub.ext_rank(s, t);
            int rq = rk(qstar, s, t), ri = rk(istar, s, t);
            if (ri != dm - rq) rep.problems.push_back({"middle", s, t, ri, dm - rq});
            int b1 = ds - ri;  // forced connecting rank out of Ext^{s,t}(sub)
            if (s + 1 <= s_max) {
                int b2 = quot.ext_rank(s + 1, t) - rk(qstar, s + 1, t);
                if (b1 != b2) rep.problems.push_back({"boundary", s, t, b1, b2});
                rep.forced_boundary[{s, t}] = b1;
            }
        }
    }
    rep.ok = rep.problems.empty();
    return rep;
}

// ------------------------------------------------------------------ charts ---

std::optional<ProductClass> product_class(const FiniteGradedAlgebra& alg, const std::string& name) {
    auto find_label = [&](int d, std::initializer_list<const char*> labels) -> std::optional<int> {
        for (int i = 0; i < alg.dim(d); ++i)
            for (const char* L : labels)
                if (alg.basis[d][i] == L) return i;
        return std::nullopt;
    };
    if (name == "h0") {
        if (alg.dim(1) == 1) return ProductClass{"h0", 1, 0};
        return std::nullopt;
    }
    if (name == "v1") {
        if (auto i = find_label(3, {"Sq(0,1)", "Q1"})) return ProductClass{"v1", 3, *i};
        return std::nullopt;
    }
    if (name == "alpha") {
        if (alg.prime == 3)
            if (auto i = find_label(4, {"P"})) return ProductClass{"alpha", 4, *i};
        return std::nullopt;
    }
    return std::nullopt;
}

ExtChart ext_chart(const Resolution& res, const std::vector<std::string>& products,
                   const Resolution* ground) {
    ExtChart ch;
    ch.prime = res.prime();
    ch.s_max = res.s_max();
    ch.t_max = res.t_max();
    ch.ranks = res.ext_ranks();
    for (const std::string& name : products) {
        if (name == "beta") {
            // s-shift-2 class at (2,12) of the mod-3 ground Ext, via Yoneda.
            if (res.prime() != 3 || !ground)
                throw std::invalid_argument(
                    "product 'beta' needs a mod-3 ground resolution of the trivial module");
            if (ground->ext_rank(2, 12) < 1)
                throw std::invalid_argument("ground window too small for 'beta' (cell (2,12))");
            for (const auto& [cell, rk] : ch.ranks) {
                auto [s, t] = cell;
                if (s + 2 > ch.s_max || t + 12 > ch.t_max) continue;
                if (!res.ext_rank(s + 2, t + 12)) continue;
                for (int j = 0; j < rk; ++j) {
                    FpVec img = yoneda_product(res, *ground, {2, 12}, 0, {s, t}, j);
                    for (size_t i = 0; i < img.size(); ++i)
                        if (img[i])
                            ch.edges.push_back(
                                {"beta", s, t, j, s + 2, t + 12, static_cast<int>(i)});
                }
            }
            continue;
        }
        auto pc = product_class(res.alg(), name);
        if (!pc)
            throw std::invalid_argument("product class '" + name + "' is not available over " +
                                        res.alg().name);
        for (const auto& [cell, rk] : ch.ranks) {
            auto [s, t] = cell;
            (void)rk;
            if (t + pc->bd > ch.t_max) continue;  // no edge into a masked cell
            auto m = res.edge_matrix(s, t, pc->bd, pc->bi);
            if (!m) continue;
            for (int r = 0; r < m->rows(); ++r)
                for (int c = 0; c < m->cols(); ++c)
                    if (m->get(r, c)) ch.edges.push_back({pc->name, s, t, c, s + 1, t + pc->bd, r});
        }
    }
    return ch;
}

// -------------------------------------------------------------- collapse ---

std::vector<CollapseCandidate> collapse_check(const Resolution& res, int r_max,
                                              bool use_h0_linearity) {
    std::vector<CollapseCandidate> out;
    for (int s = 0; s <= res.s_max(); ++s) {
        for (int t = 0; t <= res.t_max(); ++t) {
            if (!res.ext_rank(s, t)) continue;
            for (int r = 2; r <= r_max; ++r) {
                int s2 = s + r, t2 = t + r - 1;
                if (s2 > res.s_max() || t2 > res.t_max()) continue;  // unknown territory
                int dt = res.ext_rank(s2, t2);
                if (!dt) continue;
                if (use_h0_linearity) {
                    bool src_killed = false;
                    if (s + 1 <= res.s_max() && t + 1 <= res.t_max()) {
                        auto e = res.edge_matrix(s, t, 1, 0);
                        src_killed = e && safe_rank(*e) == 0;
                    }
                    auto e_in = res.edge_matrix(s2 - 1, t2 - 1, 1, 0);
                    bool tgt_divisible = e_in && safe_rank(*e_in) == dt;
                    if (src_killed && tgt_divisible) continue;  // h0-linearity rules it out
                }
                out.push_back({s, t, s2, t2, r});
            }
        }
    }
    return out;
}

// -------------------------------------------------------------- read-off ---

ReadOff read_off_groups(const Resolution& res, int stem) {
    ReadOff out;
    const int p = res.prime();
    int b = std::min(res.s_max(), res.t_max() - stem);
    if (b < 0) {
        out.refused = true;
        out.error = "raise t_max";
        return out;
    }
    auto h = [&](int s) -> FpMat {
        auto m = res.edge_matrix(s, s + stem, 1, 0);
        if (m) return *m;
        return FpMat(p, res.ext_rank(s + 1, s + 1 + stem), res.ext_rank(s, s + stem));
    };
    auto r = [&](int s, int m) -> int {
        if (s < 0) return 0;
        if (m == 0) return res.ext_rank(s, s + stem);
        FpMat acc = h(s);
        for (int k = 1; k < m; ++k) acc = h(s + k).mul(acc);
        return safe_rank(acc);
    };
    auto N = [&](int s, int m) { return r(s, m) - r(s - 1, m + 1); };
    for (int s = 0; s <= b; ++s) {
        for (int m = 0; s + m < b; ++m) {
            int c = N(s, m) - N(s, m + 1);
            for (int i = 0; i < c; ++i) out.factors.push_back({false, m + 1});
        }
        int creach = N(s, b - s);
        for (int i = 0; i < creach; ++i) {
            out.factors.push_back({true, 0});
            out.extrapolated = true;
        }
    }
    return out;
}

}  // namespace tt
