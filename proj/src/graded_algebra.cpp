#include "thomtwist/graded_algebra.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

namespace tt {

namespace {

const FpVec kEmptyVec;

std::string join_word(const std::vector<PresentedGenerator>& gens, const std::vector<int>& w) {
    if (w.empty()) return "1";
    std::string s;
    for (size_t i = 0; i < w.size(); ++i) {
        if (i) s += "*";
        s += gens[w[i]].name;
    }
    return s;
}

// Incremental row-space reduction: rows arrive one at a time (sparse inputs
// stay cheap), pivots are canonical (leftmost basis of the row space), and a
// final back-elimination pass yields the unique RREF. Used for the ideal
// slices of presented algebras, whose row counts dwarf their ranks.
class IncrementalRref {
  public:
    IncrementalRref(int p, int cols) : p_(p), cols_(cols) {}

    bool add(FpVec r) {
        for (int c = 0; c < cols_; ++c) {
            if (r[c] == 0) continue;
            auto it = rows_.find(c);
            if (it == rows_.end()) {
                int inv = fp_inv(p_, r[c]);
                if (inv != 1)
                    for (auto& x : r) x = static_cast<uint8_t>((x * inv) % p_);
                rows_.emplace(c, std::move(r));
                return true;
            }
            int coef = fp_neg(p_, r[c]);
            const FpVec& pr = it->second;
            for (int j = c; j < cols_; ++j)
                r[j] = static_cast<uint8_t>((r[j] + coef * pr[j]) % p_);
        }
        return false;
    }

    // Back-eliminate so each pivot column is zero in every other row.
    void finalize() {
        for (auto it = rows_.rbegin(); it != rows_.rend(); ++it) {
            int c = it->first;
            for (auto& [pc, row] : rows_) {
                if (pc == c || row[c] == 0) continue;
                int coef = fp_neg(p_, row[c]);
                const FpVec& pr = it->second;
                for (int j = c; j < cols_; ++j)
                    row[j] = static_cast<uint8_t>((row[j] + coef * pr[j]) % p_);
            }
        }
    }

    const std::map<int, FpVec>& rows() const { return rows_; }

  private:
    int p_, cols_;
    std::map<int, FpVec> rows_;  // pivot column -> normalized row
};

}  // namespace

// ------------------------------------------------------ FiniteGradedAlgebra

int FiniteGradedAlgebra::total_dim() const {
    int n = 0;
    for (const auto& b : basis) n += static_cast<int>(b.size());
    return n;
}

const FpVec& FiniteGradedAlgebra::product(int d1, int i, int d2, int j) const {
    if (d1 + d2 > top_degree) return kEmptyVec;
    return products_[d1][d2][static_cast<size_t>(i) * dim(d2) + j];
}

FpVec FiniteGradedAlgebra::multiply(int d1, const FpVec& v1, int d2, const FpVec& v2,
                                    bool* past_window) const {
    int d = d1 + d2;
    if (past_window) *past_window = false;
    if (d > top_degree) {
        if (past_window && !complete && !vec_is_zero(v1) && !vec_is_zero(v2)) *past_window = true;
        return FpVec(dim(d), 0);
    }
    FpVec out(dim(d), 0);
    for (int i = 0; i < dim(d1); ++i) {
        int c1 = v1[i] % prime;
        if (!c1) continue;
        for (int j = 0; j < dim(d2); ++j) {
            int c2 = v2[j] % prime;
            if (!c2) continue;
            const FpVec& pr = product(d1, i, d2, j);
            int c = (c1 * c2) % prime;
            for (size_t k = 0; k < pr.size(); ++k)
                out[k] = static_cast<uint8_t>((out[k] + c * pr[k]) % prime);
        }
    }
    return out;
}

FpVec FiniteGradedAlgebra::eval_word(const std::vector<int>& word, int* deg_out) const {
    int d = 0;
    FpVec v = unit();
    for (int g : word) {
        const auto& gen = generators.at(g);
        int d2 = d + gen.degree;
        if (d2 > top_degree) {
            if (deg_out) *deg_out = word_degree(word);
            return FpVec();
        }
        v = multiply(d, v, gen.degree, gen.elem);
        d = d2;
    }
    if (deg_out) *deg_out = d;
    return v;
}

int FiniteGradedAlgebra::word_degree(const std::vector<int>& word) const {
    int d = 0;
    for (int g : word) d += generators.at(g).degree;
    return d;
}

std::vector<std::vector<int>> FiniteGradedAlgebra::words_of_degree(int d) const {
    std::vector<std::vector<int>> out;
    std::vector<int> pre;
    auto rec = [&](auto&& self, int rem) -> void {
        if (rem == 0) {
            out.push_back(pre);
            return;
        }
        for (size_t g = 0; g < generators.size(); ++g) {
            int gd = generators[g].degree;
            if (gd <= rem) {
                pre.push_back(static_cast<int>(g));
                self(self, rem - gd);
                pre.pop_back();
            }
        }
    };
    rec(rec, d);
    return out;
}

FpMat FiniteGradedAlgebra::word_matrix(int d) const {
    auto ws = words_of_degree(d);
    FpMat m(prime, static_cast<int>(ws.size()), dim(d));
    for (size_t i = 0; i < ws.size(); ++i) {
        FpVec v = eval_word(ws[i]);
        if (!v.empty()) m.set_row(static_cast<int>(i), v);
    }
    return m;
}

FpMat FiniteGradedAlgebra::word_kernel(int d) const {
    // Combinations of rows vanishing = kernel of the transpose.
    return kernel_basis(word_matrix(d).transpose());
}

const WordCombo& FiniteGradedAlgebra::basis_word_combo(int d, int i) const {
    auto it = word_rep_cache_.find(d);
    if (it == word_rep_cache_.end()) {
        std::vector<WordCombo> reps(dim(d));
        auto ws = words_of_degree(d);
        FpMat wt = word_matrix(d).transpose();  // dim(d) x nwords
        for (int j = 0; j < dim(d); ++j) {
            FpVec e(dim(d), 0);
            e[j] = 1;
            auto c = solve(wt, e);
            if (!c) throw std::runtime_error(name + ": generator words do not span degree " +
                                             std::to_string(d));
            for (size_t k = 0; k < c->size(); ++k)
                if ((*c)[k] % prime) reps[j].terms.emplace_back((*c)[k] % prime, ws[k]);
        }
        it = word_rep_cache_.emplace(d, std::move(reps)).first;
    }
    return it->second.at(i);
}

// ---------------------------------------------------------------- Milnor ---

int milnor_tuple_degree(const MilnorTuple& t) {
    int d = 0;
    for (size_t i = 0; i < t.size(); ++i) d += t[i] * ((1 << (i + 1)) - 1);
    return d;
}

namespace {

MilnorTuple trim(MilnorTuple t) {
    while (!t.empty() && t.back() == 0) t.pop_back();
    return t;
}

// Multinomial (sum parts)! / prod parts! mod 2: odd iff binary digits disjoint.
int multinomial_odd(const std::vector<int>& parts) {
    int acc = 0;
    for (int x : parts) {
        if (acc & x) return 0;
        acc |= x;
    }
    return 1;
}

}  // namespace

std::vector<std::pair<MilnorTuple, int>> milnor_product(const MilnorTuple& R, const MilnorTuple& S) {
    const int m = static_cast<int>(R.size());
    const int n = static_cast<int>(S.size());
    if (m == 0 || n == 0) return {{trim(m == 0 ? S : R), 1}};

    std::map<MilnorTuple, int> out;
    // Milnor matrix X[i][j], i = 1..m, j = 1..n; x_{i0} = row remainder,
    // x_{0j} = column slack. Enumerate all row distributions.
    std::vector<std::vector<int>> X(m, std::vector<int>(n, 0));
    std::vector<int> rowrem(m, 0);

    auto emit = [&]() {
        std::vector<int> x0(n);
        for (int j = 1; j <= n; ++j) {
            int csum = 0;
            for (int i = 1; i <= m; ++i) csum += X[i - 1][j - 1];
            if (csum > S[j - 1]) return;
            x0[j - 1] = S[j - 1] - csum;
        }
        // Coefficient: product over antidiagonals of multinomials of the entries.
        int maxd = m + n;
        std::vector<int> T;
        for (int dd = 1; dd <= maxd; ++dd) {
            std::vector<int> parts;
            int tot = 0;
            for (int i = 0; i <= dd; ++i) {
                int j = dd - i;
                int v = -1;
                if (i == 0) {
                    if (1 <= j && j <= n) v = x0[j - 1];
                } else if (j == 0) {
                    if (1 <= i && i <= m) v = rowrem[i - 1];
                } else if (i <= m && j <= n) {
                    v = X[i - 1][j - 1];
                }
                if (v >= 0) {
                    parts.push_back(v);
                    tot += v;
                }
            }
            if (!multinomial_odd(parts)) return;
            T.push_back(tot);
        }
        MilnorTuple key = trim(std::move(T));
        out[key] ^= 1;
    };

    // Distribute row i: x_{ij} >= 0 with sum_j 2^j x_{ij} <= R_i.
    auto rec_row = [&](auto&& self, int i, int j, int rem) -> void {
        if (i > m) {
            emit();
            return;
        }
        if (j > n) {
            rowrem[i - 1] = rem;
            self(self, i + 1, 1, i < m ? R[i] : 0);
            return;
        }
        int step = 1 << j;
        for (int k = 0; k * step <= rem; ++k) {
            X[i - 1][j - 1] = k;
            self(self, i, j + 1, rem - k * step);
        }
        X[i - 1][j - 1] = 0;
    };
    rec_row(rec_row, 1, 1, R[0]);

    std::vector<std::pair<MilnorTuple, int>> res;
    for (auto& [t, c] : out)
        if (c) res.emplace_back(t, c);
    return res;
}

FiniteGradedAlgebra build_milnor_subalgebra(const std::string& profile_name) {
    static const std::map<std::string, std::vector<int>> kProfiles = {
        {"A(0)", {1}}, {"E(1)", {1, 1}}, {"A(1)", {2, 1}}, {"A(2)", {3, 2, 1}}};
    auto pit = kProfiles.find(profile_name);
    if (pit == kProfiles.end())
        throw std::invalid_argument("unknown Milnor profile: " + profile_name);
    const std::vector<int>& profile = pit->second;

    // Enumerate admitted tuples, grouped by degree, ordered (degree, tuple).
    std::vector<MilnorTuple> tuples;
    {
        std::vector<int> cur(profile.size(), 0);
        auto rec = [&](auto&& self, size_t pos) -> void {
            if (pos == profile.size()) {
                tuples.push_back(trim(cur));
                return;
            }
            for (int r = 0; r < (1 << profile[pos]); ++r) {
                cur[pos] = r;
                self(self, pos + 1);
            }
        };
        rec(rec, 0);
        std::sort(tuples.begin(), tuples.end(), [](const MilnorTuple& a, const MilnorTuple& b) {
            int da = milnor_tuple_degree(a), db = milnor_tuple_degree(b);
            return da != db ? da < db : a < b;
        });
        tuples.erase(std::unique(tuples.begin(), tuples.end()), tuples.end());
    }

    std::map<int, std::vector<MilnorTuple>> by_deg;
    for (const auto& t : tuples) by_deg[milnor_tuple_degree(t)].push_back(t);
    int top = by_deg.rbegin()->first;

    std::map<MilnorTuple, std::pair<int, int>> index;
    FiniteGradedAlgebra alg;
    alg.prime = 2;
    alg.name = profile_name;
    alg.complete = true;
    alg.top_degree = top;
    alg.basis.assign(top + 1, {});
    for (auto& [d, v] : by_deg) {
        for (size_t i = 0; i < v.size(); ++i) {
            index[v[i]] = {d, static_cast<int>(i)};
            if (v[i].empty()) {
                alg.basis[d].push_back("1");
            } else {
                std::string s = "Sq(";
                for (size_t k = 0; k < v[i].size(); ++k)
                    s += (k ? "," : "") + std::to_string(v[i][k]);
                alg.basis[d].push_back(s + ")");
            }
        }
    }

    alg.products_.assign(top + 1, {});
    for (int d1 = 0; d1 <= top; ++d1) {
        alg.products_[d1].assign(top + 1, {});
        for (int d2 = 0; d2 + d1 <= top; ++d2) {
            auto i1v = by_deg.find(d1);
            auto i2v = by_deg.find(d2);
            if (i1v == by_deg.end() || i2v == by_deg.end()) continue;
            auto& cell = alg.products_[d1][d2];
            cell.assign(i1v->second.size() * i2v->second.size(), FpVec());
            for (size_t i = 0; i < i1v->second.size(); ++i)
                for (size_t j = 0; j < i2v->second.size(); ++j) {
                    FpVec vec(alg.dim(d1 + d2), 0);
                    for (auto& [t, c] : milnor_product(i1v->second[i], i2v->second[j])) {
                        auto it = index.find(t);
                        if (it == index.end())
                            throw std::runtime_error(profile_name +
                                                     ": product of admitted tuples leaves the "
                                                     "admitted set (profile is not a subalgebra)");
                        vec[it->second.second] = static_cast<uint8_t>(c);
                    }
                    cell[i * i2v->second.size() + j] = std::move(vec);
                }
        }
    }

    // Generators and coproducts: Sq(2^i) carry the total-square coproduct
    // Delta(Sq^n) = sum_a Sq^a (x) Sq^{n-a}; the exterior Q_i are primitive.
    auto elem_of = [&](const MilnorTuple& t) {
        auto [d, i] = index.at(t);
        FpVec v(alg.dim(d), 0);
        v[i] = 1;
        return std::pair<int, FpVec>(d, v);
    };
    auto sq_coproduct = [&](int nn) {
        std::vector<CoprodTerm> cp;
        for (int a = 0; a <= nn; ++a) {
            MilnorTuple l = a ? MilnorTuple{a} : MilnorTuple{};
            MilnorTuple r = (nn - a) ? MilnorTuple{nn - a} : MilnorTuple{};
            auto [ld, li] = index.at(l);
            auto [rd, ri] = index.at(r);
            cp.push_back({1, ld, li, rd, ri});
        }
        return cp;
    };
    auto primitive = [&](const MilnorTuple& t) {
        auto [d, i] = index.at(t);
        auto [ud, ui] = index.at(MilnorTuple{});
        return std::vector<CoprodTerm>{{1, d, i, ud, ui}, {1, ud, ui, d, i}};
    };
    auto add_gen = [&](const std::string& nm, const MilnorTuple& t, std::vector<CoprodTerm> cp) {
        auto [d, v] = elem_of(t);
        alg.generators.push_back({nm, d, v, std::move(cp)});
    };
    if (profile_name == "A(0)") {
        add_gen("Sq1", {1}, sq_coproduct(1));
    } else if (profile_name == "E(1)") {
        add_gen("Q0", {1}, primitive({1}));
        add_gen("Q1", {0, 1}, primitive({0, 1}));
    } else if (profile_name == "A(1)") {
        add_gen("Sq1", {1}, sq_coproduct(1));
        add_gen("Sq2", {2}, sq_coproduct(2));
    } else {  // A(2)
        add_gen("Sq1", {1}, sq_coproduct(1));
        add_gen("Sq2", {2}, sq_coproduct(2));
        add_gen("Sq4", {4}, sq_coproduct(4));
    }
    return alg;
}

// ------------------------------------------------------------- presented ---

FiniteGradedAlgebra build_presented_algebra(const AlgebraPresentation& pres) {
    const int p = pres.prime;
    const int dmax = pres.max_degree;
    if (pres.generators.empty()) throw std::invalid_argument("presentation has no generators");
    std::vector<int> gdegs;
    int max_gen_deg = 0;
    for (const auto& g : pres.generators) {
        if (g.degree <= 0) throw std::invalid_argument("generator degrees must be positive");
        gdegs.push_back(g.degree);
        max_gen_deg = std::max(max_gen_deg, g.degree);
    }

    // Word lists per degree, lexicographic in generator index.
    std::vector<std::vector<std::vector<int>>> words(dmax + 1);
    std::vector<std::map<std::vector<int>, int>> widx(dmax + 1);
    {
        for (int d = 0; d <= dmax; ++d) {
            std::vector<int> cur;
            auto go = [&](auto&& self, int rem) -> void {
                if (rem == 0) {
                    widx[d][cur] = static_cast<int>(words[d].size());
                    words[d].push_back(cur);
                    return;
                }
                for (size_t g = 0; g < gdegs.size(); ++g)
                    if (gdegs[g] <= rem) {
                        cur.push_back(static_cast<int>(g));
                        self(self, rem - gdegs[g]);
                        cur.pop_back();
                    }
            };
            go(go, d);
        }
    }

    // Group homogeneous relations by degree.
    std::map<int, std::vector<const WordRelation*>> reldeg;
    for (const auto& r : pres.relations) {
        if (r.terms.empty()) continue;
        int rd = -1;
        for (const auto& [c, w] : r.terms) {
            int d = 0;
            for (int g : w) d += gdegs.at(g);
            if (rd < 0) rd = d;
            else if (rd != d) throw std::invalid_argument("inhomogeneous relation");
        }
        if (rd == 0) throw std::invalid_argument("degree-0 relation would kill the unit");
        if (rd <= dmax) reldeg[rd].push_back(&r);
    }

    // Per degree: RREF of the two-sided ideal slice span{ x * r * y }.
    std::vector<std::map<int, FpVec>> reduced(dmax + 1);  // pivot word index -> row
    std::vector<std::vector<int>> keep(dmax + 1);         // surviving word indices
    for (int d = 0; d <= dmax; ++d) {
        const int nw = static_cast<int>(words[d].size());
        IncrementalRref inc(p, nw);
        for (const auto& [rd, rels] : reldeg) {
            if (rd > d) break;
            int rest = d - rd;
            for (const WordRelation* r : rels)
                for (int dl = 0; dl <= rest; ++dl) {
                    int dr = rest - dl;
                    for (const auto& wl : words[dl])
                        for (const auto& wr : words[dr]) {
                            FpVec row(nw, 0);
                            bool nonzero = false;
                            for (const auto& [c, w] : r->terms) {
                                std::vector<int> full = wl;
                                full.insert(full.end(), w.begin(), w.end());
                                full.insert(full.end(), wr.begin(), wr.end());
                                int cc = ((c % p) + p) % p;
                                row[widx[d].at(full)] =
                                    static_cast<uint8_t>((row[widx[d].at(full)] + cc) % p);
                                if (row[widx[d].at(full)]) nonzero = true;
                            }
                            if (nonzero) inc.add(std::move(row));
                        }
                }
        }
        inc.finalize();
        reduced[d] = inc.rows();
        keep[d].reserve(nw);
        for (int i = 0; i < nw; ++i)
            if (!reduced[d].count(i)) keep[d].push_back(i);
    }

    // Reduce a word-coefficient vector mod the ideal; coordinates over keep[d].
    auto reduce_wordvec = [&](int d, FpVec v) {
        for (const auto& [c, row] : reduced[d]) {
            int coef = v[c] % p;
            if (!coef) continue;
            int neg = fp_neg(p, coef);
            for (size_t j = c; j < v.size(); ++j)
                v[j] = static_cast<uint8_t>((v[j] + neg * row[j]) % p);
        }
        FpVec out(keep[d].size());
        for (size_t k = 0; k < keep[d].size(); ++k) out[k] = v[keep[d][k]];
        return out;
    };

    int top = 0;
    for (int d = 0; d <= dmax; ++d)
        if (!keep[d].empty()) top = d;
    // Connectedness: a trailing gap at least as wide as the largest generator
    // degree proves nothing nonzero exists beyond it.
    bool complete = (dmax - top) >= max_gen_deg;

    FiniteGradedAlgebra alg;
    alg.prime = p;
    alg.name = pres.name;
    alg.complete = complete;
    alg.top_degree = complete ? top : dmax;
    alg.basis.assign(alg.top_degree + 1, {});
    for (int d = 0; d <= alg.top_degree; ++d)
        for (int i : keep[d]) alg.basis[d].push_back(join_word(pres.generators, words[d][i]));
    if (alg.dim(0) != 1) throw std::runtime_error("presented algebra is not connected");

    alg.products_.assign(alg.top_degree + 1, {});
    for (int d1 = 0; d1 <= alg.top_degree; ++d1) {
        alg.products_[d1].assign(alg.top_degree + 1, {});
        for (int d2 = 0; d1 + d2 <= alg.top_degree; ++d2) {
            auto& cell = alg.products_[d1][d2];
            cell.assign(static_cast<size_t>(alg.dim(d1)) * alg.dim(d2), FpVec());
            int d = d1 + d2;
            for (int i1 = 0; i1 < alg.dim(d1); ++i1)
                for (int i2 = 0; i2 < alg.dim(d2); ++i2) {
                    std::vector<int> w = words[d1][keep[d1][i1]];
                    const auto& w2 = words[d2][keep[d2][i2]];
                    w.insert(w.end(), w2.begin(), w2.end());
                    FpVec wv(words[d].size(), 0);
                    wv[widx[d].at(w)] = 1;
                    cell[static_cast<size_t>(i1) * alg.dim(d2) + i2] = reduce_wordvec(d, std::move(wv));
                }
        }
    }

    // Generators (reduced single-letter words); shipped presentations have
    // primitive generators, so the coproduct is g (x) 1 + 1 (x) g.
    for (size_t g = 0; g < pres.generators.size(); ++g) {
        int gd = gdegs[g];
        if (gd > alg.top_degree) throw std::runtime_error("generator degree beyond table window");
        FpVec wv(words[gd].size(), 0);
        wv[widx[gd].at({static_cast<int>(g)})] = 1;
        AlgebraGenerator gen;
        gen.name = pres.generators[g].name;
        gen.degree = gd;
        gen.elem = reduce_wordvec(gd, std::move(wv));
        for (int i = 0; i < alg.dim(gd); ++i)
            if (gen.elem[i]) {
                gen.coproduct.push_back({gen.elem[i], gd, i, 0, 0});
                gen.coproduct.push_back({gen.elem[i], 0, 0, gd, i});
            }
        alg.generators.push_back(std::move(gen));
    }
    return alg;
}

// ---------------------------------------------------------------- checks ---

namespace {

AssociativityReport check_triple(const FiniteGradedAlgebra& a, int d1, int i, int d2, int j,
                                 int d3, int k) {
    AssociativityReport rep;
    FpVec e1(a.dim(d1), 0), e2(a.dim(d2), 0), e3(a.dim(d3), 0);
    e1[i] = 1;
    e2[j] = 1;
    e3[k] = 1;
    FpVec left = a.multiply(d1 + d2, a.multiply(d1, e1, d2, e2), d3, e3);
    FpVec right = a.multiply(d1, e1, d2 + d3, a.multiply(d2, e2, d3, e3));
    if (left != right) {
        rep.ok = false;
        std::ostringstream os;
        os << "(e" << d1 << "," << i << " * e" << d2 << "," << j << ") * e" << d3 << "," << k
           << " != associated product";
        rep.failure = os.str();
    }
    return rep;
}

}  // namespace

AssociativityReport check_associativity_exhaustive(const FiniteGradedAlgebra& a) {
    AssociativityReport rep;
    for (int d1 = 0; d1 <= a.top_degree; ++d1)
        for (int d2 = 0; d1 + d2 <= a.top_degree; ++d2)
            for (int d3 = 0; d1 + d2 + d3 <= a.top_degree; ++d3)
                for (int i = 0; i < a.dim(d1); ++i)
                    for (int j = 0; j < a.dim(d2); ++j)
                        for (int k = 0; k < a.dim(d3); ++k) {
                            auto r = check_triple(a, d1, i, d2, j, d3, k);
                            ++rep.checked;
                            if (!r.ok) {
                                r.checked = rep.checked;
                                return r;
                            }
                        }
    return rep;
}

AssociativityReport check_associativity_sampled(const FiniteGradedAlgebra& a, long long samples,
                                                uint64_t seed) {
    AssociativityReport rep;
    std::vector<std::pair<int, int>> flat;  // (degree, index)
    for (int d = 0; d <= a.top_degree; ++d)
        for (int i = 0; i < a.dim(d); ++i) flat.emplace_back(d, i);
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<size_t> pick(0, flat.size() - 1);
    for (long long s = 0; s < samples; ++s) {
        auto [d1, i] = flat[pick(rng)];
        auto [d2, j] = flat[pick(rng)];
        auto [d3, k] = flat[pick(rng)];
        auto r = check_triple(a, d1, i, d2, j, d3, k);
        ++rep.checked;
        if (!r.ok) {
            r.checked = rep.checked;
            return r;
        }
    }
    return rep;
}

}  // namespace tt
