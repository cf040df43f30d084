#include "thomtwist/presentation.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace tt {
namespace {

using Expo = std::vector<int>;

std::string mono_label(const std::vector<PolyGenerator>& gens, const Expo& m) {
    std::string out;
    for (size_t i = 0; i < m.size(); ++i) {
        if (m[i] == 0) continue;
        if (!out.empty()) out += "*";
        out += gens[i].name + "^" + std::to_string(m[i]);
    }
    return out.empty() ? "1" : out;
}

// Internal monomial engine: exponent-vector arithmetic with nilpotency and
// degree truncation, Koszul signs at odd primes.
struct PolyRing {
    int p;
    std::vector<PolyGenerator> gens;
    int D;
    std::map<int, std::vector<Expo>> basis;
    std::map<Expo, std::pair<int, int>> index;

    PolyRing(int p_, std::vector<PolyGenerator> gens_, int D_)
        : p(p_), gens(std::move(gens_)), D(D_) {
        std::vector<int> emax(gens.size());
        for (size_t i = 0; i < gens.size(); ++i) {
            const auto& g = gens[i];
            if (g.degree <= 0) throw std::invalid_argument("generator degree must be positive");
            int e = D / g.degree;
            if (g.nilpotency) e = std::min(e, *g.nilpotency - 1);
            if (p != 2 && g.degree % 2 == 1) e = std::min(e, 1);
            emax[i] = std::max(e, 0);
        }
        Expo cur(gens.size(), 0);
        enumerate(0, 0, emax, cur);
        for (auto& [d, monos] : basis) {
            std::sort(monos.begin(), monos.end());
            for (size_t i = 0; i < monos.size(); ++i)
                index[monos[i]] = {d, static_cast<int>(i)};
        }
    }

    void enumerate(size_t gi, int deg, const std::vector<int>& emax, Expo& cur) {
        if (deg > D) return;
        if (gi == gens.size()) {
            basis[deg].push_back(cur);
            return;
        }
        for (int e = 0; e <= emax[gi]; ++e) {
            cur[gi] = e;
            enumerate(gi + 1, deg + e * gens[gi].degree, emax, cur);
        }
        cur[gi] = 0;
    }

    int dim(int d) const {
        auto it = basis.find(d);
        return it == basis.end() ? 0 : static_cast<int>(it->second.size());
    }

    int mono_degree(const Expo& m) const {
        int d = 0;
        for (size_t i = 0; i < m.size(); ++i) d += m[i] * gens[i].degree;
        return d;
    }

    // Product of two monomials; nullopt if it dies by nilpotency or falls past
    // the stored window. Sign is the Koszul sign from commuting the odd-degree
    // parts of m2 leftward past m1 into generator order.
    std::optional<std::pair<int, Expo>> mono_mul(const Expo& m1, const Expo& m2) const {
        Expo m(m1.size());
        for (size_t i = 0; i < m.size(); ++i) {
            m[i] = m1[i] + m2[i];
            if (gens[i].nilpotency && m[i] >= *gens[i].nilpotency) return std::nullopt;
            if (p != 2 && gens[i].degree % 2 == 1 && m[i] >= 2) return std::nullopt;
        }
        if (mono_degree(m) > D) return std::nullopt;
        int sign = 1;
        if (p != 2) {
            for (size_t i = 0; i < m2.size(); ++i) {
                if (gens[i].degree % 2 && m2[i] % 2) {
                    int odd_left = 0;
                    for (size_t j = i + 1; j < m1.size(); ++j)
                        if (gens[j].degree % 2) odd_left += m1[j];
                    if (odd_left % 2) sign = -sign;
                }
            }
        }
        return std::make_pair(sign, m);
    }

    PolyTerms mul_terms(const PolyTerms& t1, const PolyTerms& t2) const {
        std::map<Expo, int> acc;
        for (const auto& a : t1)
            for (const auto& b : t2) {
                auto r = mono_mul(a.expo, b.expo);
                if (!r) continue;
                auto& [sign, m] = *r;
                acc[m] = (acc[m] + sign * a.coeff * b.coeff) % p;
            }
        PolyTerms out;
        for (auto& [m, c] : acc) {
            int cc = ((c % p) + p) % p;
            if (cc) out.push_back({cc, m});
        }
        return out;
    }

    FpVec vec(const PolyTerms& terms, int d) const {
        FpVec v(dim(d), 0);
        for (const auto& t : terms) {
            auto it = index.find(t.expo);
            if (it == index.end() || it->second.first != d)
                throw std::logic_error("term of wrong degree in vec()");
            v[it->second.second] =
                static_cast<uint8_t>((v[it->second.second] + ((t.coeff % p) + p)) % p);
        }
        return v;
    }

    PolyTerms unit() const { return {{1, Expo(gens.size(), 0)}}; }

    Expo gen_mono(size_t i) const {
        Expo m(gens.size(), 0);
        m[i] = 1;
        return m;
    }
};

// Shared scaffolding: labels and the full product table.
void fill_basis_and_products(const PolyRing& ring, CohomologyPresentation& pres) {
    for (const auto& [d, monos] : ring.basis) {
        auto& lab = pres.labels[d];
        for (const auto& m : monos) lab.push_back(mono_label(ring.gens, m));
    }
    for (const auto& [d1, monos1] : ring.basis)
        for (const auto& [d2, monos2] : ring.basis) {
            if (d1 + d2 > ring.D) continue;
            auto& tab = pres.products[{d1, d2}];
            tab.reserve(monos1.size() * monos2.size());
            for (const auto& m1 : monos1)
                for (const auto& m2 : monos2)
                    tab.push_back(ring.vec(ring.mul_terms({{1, m1}}, {{1, m2}}), d1 + d2));
        }
}

FpMat terms_columns_matrix(const PolyRing& ring, int d, int shift,
                           const std::function<PolyTerms(const Expo&)>& image) {
    FpMat out(ring.p, ring.dim(d + shift), ring.dim(d));
    auto it = ring.basis.find(d);
    if (it == ring.basis.end()) return out;
    for (size_t col = 0; col < it->second.size(); ++col) {
        FpVec v = ring.vec(image(it->second[col]), d + shift);
        for (int row = 0; row < out.rows(); ++row) out.set(row, static_cast<int>(col), v[row]);
    }
    return out;
}

}  // namespace

FpVec CohomologyPresentation::product(int d1, int i, int d2, int j) const {
    if (d1 + d2 > D) throw std::out_of_range("product past stored degree window");
    auto it = products.find({d1, d2});
    if (it == products.end()) throw std::out_of_range("no product table for degree pair");
    return it->second.at(static_cast<size_t>(i) * dim(d2) + j);
}

FpMat CohomologyPresentation::sq_matrix(int k, int d) const {
    if (k == 0) return FpMat::identity(prime, dim(d));
    if (k < 0 || k > 4) throw std::invalid_argument("sq_matrix: k must be 0..4");
    if (d + k > D) throw std::out_of_range("sq_matrix past stored degree window");
    auto it = sq[k].find(d);
    if (it != sq[k].end()) return it->second;
    return FpMat(prime, dim(d + k), dim(d));
}

FpMat CohomologyPresentation::beta_matrix(int d) const {
    if (d + 1 > D) throw std::out_of_range("beta_matrix past stored degree window");
    auto it = beta_mats.find(d);
    return it != beta_mats.end() ? it->second : FpMat(prime, dim(d + 1), dim(d));
}

FpMat CohomologyPresentation::p1_matrix(int d) const {
    if (d + 4 > D) throw std::out_of_range("p1_matrix past stored degree window");
    auto it = p1_mats.find(d);
    return it != p1_mats.end() ? it->second : FpMat(prime, dim(d + 4), dim(d));
}

FpMat CohomologyPresentation::mul_matrix(const CohClass& c, int d) const {
    int e = c.degree;
    if (d + e > D) throw std::out_of_range("mul_matrix past stored degree window");
    FpMat out(prime, dim(d + e), dim(d));
    for (int i = 0; i < dim(e); ++i) {
        if (!c.coords[i]) continue;
        for (int j = 0; j < dim(d); ++j) {
            FpVec pv = product(e, i, d, j);
            for (int row = 0; row < out.rows(); ++row)
                out.set(row, j, out.get(row, j) + c.coords[i] * pv[row]);
        }
    }
    return out;
}

CohClass CohomologyPresentation::unit_class() const {
    if (dim(0) < 1) throw std::logic_error("presentation has no degree-0 class");
    CohClass c{0, FpVec(dim(0), 0)};
    c.coords[0] = 1;
    return c;
}

CohClass CohomologyPresentation::class_add(const CohClass& a, const CohClass& b) const {
    if (a.degree != b.degree) throw std::invalid_argument("class_add: degree mismatch");
    return {a.degree, vec_add(prime, a.coords, b.coords)};
}

CohClass CohomologyPresentation::class_mul(const CohClass& a, const CohClass& b) const {
    int d = a.degree + b.degree;
    if (d > D) {
        if (complete) return zero_class(d);
        throw std::out_of_range("class_mul past stored window of a truncated presentation");
    }
    CohClass out = zero_class(d);
    for (int i = 0; i < dim(a.degree); ++i) {
        if (!a.coords[i]) continue;
        for (int j = 0; j < dim(b.degree); ++j) {
            if (!b.coords[j]) continue;
            FpVec pv = product(a.degree, i, b.degree, j);
            int c = a.coords[i] * b.coords[j];
            for (size_t r = 0; r < pv.size(); ++r)
                out.coords[r] = static_cast<uint8_t>((out.coords[r] + c * pv[r]) % prime);
        }
    }
    return out;
}

PresentationCheck check_presentation(const CohomologyPresentation& pres) {
    PresentationCheck rep;
    auto fail = [&](std::string msg) {
        rep.ok = false;
        rep.problems.push_back(std::move(msg));
    };
    const int p = pres.prime;

    if (pres.dim(0) < 1) {
        fail("no degree-0 class (unit missing)");
        return rep;
    }

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
    auto e_vec = [&](int d, int i) {
        FpVec v(pres.dim(d), 0);
        v[i] = 1;
        return v;
    };

    std::vector<int> degs;
    for (const auto& [d, lab] : pres.labels)
        if (!lab.empty()) degs.push_back(d);

    // Unit rows/columns.
    for (int d : degs)
        for (int j = 0; j < pres.dim(d); ++j) {
            if (pres.product(0, 0, d, j) != e_vec(d, j))
                fail("unit fails on the left in degree " + std::to_string(d));
            if (pres.product(d, j, 0, 0) != e_vec(d, j))
                fail("unit fails on the right in degree " + std::to_string(d));
        }

    // Graded commutativity: x y = (-1)^{|x||y|} y x.
    for (int d1 : degs)
        for (int d2 : degs) {
            if (d1 > d2 || d1 + d2 > pres.D) continue;
            for (int i = 0; i < pres.dim(d1); ++i)
                for (int j = 0; j < pres.dim(d2); ++j) {
                    FpVec xy = pres.product(d1, i, d2, j);
                    FpVec yx = pres.product(d2, j, d1, i);
                    if (p != 2 && (d1 % 2) && (d2 % 2)) yx = vec_scale(p, p - 1, yx);
                    if (xy != yx)
                        fail("graded commutativity fails at degrees (" + std::to_string(d1) +
                             "," + std::to_string(d2) + ")");
                }
        }

    // Associativity.
    for (int d1 : degs)
        for (int d2 : degs)
            for (int d3 : degs) {
                if (d1 + d2 + d3 > pres.D) continue;
                for (int i = 0; i < pres.dim(d1); ++i)
                    for (int j = 0; j < pres.dim(d2); ++j)
                        for (int k = 0; k < pres.dim(d3); ++k) {
                            FpVec l = mulvec(d1 + d2, pres.product(d1, i, d2, j), d3, e_vec(d3, k));
                            FpVec r = mulvec(d1, e_vec(d1, i), d2 + d3, pres.product(d2, j, d3, k));
                            if (l != r)
                                fail("associativity fails at degrees (" + std::to_string(d1) + "," +
                                     std::to_string(d2) + "," + std::to_string(d3) + ")");
                        }
            }

    // Stored operation tables must have the right shapes.
    if (p == 2) {
        for (int k = 1; k <= 4; ++k)
            for (const auto& [d, m] : pres.sq[k])
                if (m.rows() != pres.dim(d + k) || m.cols() != pres.dim(d))
                    fail("Sq^" + std::to_string(k) + " table has wrong shape at degree " +
                         std::to_string(d));
    } else {
        for (const auto& [d, m] : pres.beta_mats)
            if (m.rows() != pres.dim(d + 1) || m.cols() != pres.dim(d))
                fail("beta table has wrong shape at degree " + std::to_string(d));
        for (const auto& [d, m] : pres.p1_mats)
            if (m.rows() != pres.dim(d + 4) || m.cols() != pres.dim(d))
                fail("P1 table has wrong shape at degree " + std::to_string(d));
    }

    if (p == 2) {
        // Sq^1 Sq^1 = 0 and Sq^3 = Sq^1 Sq^2 inside the window.
        for (int d : degs) {
            if (d + 2 <= pres.D && !pres.sq_matrix(1, d + 1).mul(pres.sq_matrix(1, d)).is_zero())
                fail("Sq1 Sq1 != 0 on degree " + std::to_string(d));
            if (d + 3 <= pres.D &&
                !(pres.sq_matrix(3, d) == pres.sq_matrix(1, d + 2).mul(pres.sq_matrix(2, d))))
                fail("Sq3 != Sq1 Sq2 on degree " + std::to_string(d));
        }
        // Cartan: Sq^k(xy) = sum_{a+b=k} Sq^a(x) Sq^b(y).
        for (int k = 1; k <= 4; ++k)
            for (int d1 : degs)
                for (int d2 : degs) {
                    if (d1 + d2 + k > pres.D) continue;
                    for (int i = 0; i < pres.dim(d1); ++i)
                        for (int j = 0; j < pres.dim(d2); ++j) {
                            FpVec lhs =
                                pres.sq_matrix(k, d1 + d2).mul_vec(pres.product(d1, i, d2, j));
                            FpVec rhs(pres.dim(d1 + d2 + k), 0);
                            for (int a = 0; a <= k; ++a) {
                                int b = k - a;
                                FpVec sx = pres.sq_matrix(a, d1).mul_vec(e_vec(d1, i));
                                FpVec sy = pres.sq_matrix(b, d2).mul_vec(e_vec(d2, j));
                                rhs = vec_add(2, rhs, mulvec(d1 + a, sx, d2 + b, sy));
                            }
                            if (lhs != rhs)
                                fail("Cartan fails for Sq^" + std::to_string(k) + " at degrees (" +
                                     std::to_string(d1) + "," + std::to_string(d2) + ")");
                        }
                }
    } else {
        // beta beta = 0; beta and P1 satisfy the (signed) Leibniz rule.
        for (int d : degs)
            if (d + 2 <= pres.D && !pres.beta_matrix(d + 1).mul(pres.beta_matrix(d)).is_zero())
                fail("beta beta != 0 on degree " + std::to_string(d));
        for (int d1 : degs)
            for (int d2 : degs) {
                for (int shift = 0; shift < 2; ++shift) {
                    int opdeg = shift == 0 ? 1 : 4;
                    if (d1 + d2 + opdeg > pres.D) continue;
                    bool odd_op = opdeg % 2 == 1;
                    auto op = [&](int d) {
                        return odd_op ? pres.beta_matrix(d) : pres.p1_matrix(d);
                    };
                    for (int i = 0; i < pres.dim(d1); ++i)
                        for (int j = 0; j < pres.dim(d2); ++j) {
                            FpVec lhs = op(d1 + d2).mul_vec(pres.product(d1, i, d2, j));
                            FpVec left = mulvec(d1 + opdeg, op(d1).mul_vec(e_vec(d1, i)), d2,
                                                e_vec(d2, j));
                            FpVec right = mulvec(d1, e_vec(d1, i), d2 + opdeg,
                                                 op(d2).mul_vec(e_vec(d2, j)));
                            if (odd_op && (d1 % 2)) right = vec_scale(p, p - 1, right);
                            if (lhs != vec_add(p, left, right))
                                fail(std::string(odd_op ? "beta" : "P1") +
                                     " Leibniz fails at degrees (" + std::to_string(d1) + "," +
                                     std::to_string(d2) + ")");
                        }
                }
            }
    }
    return rep;
}

CohomologyPresentation build_poly_presentation2(const std::string& name,
                                                const std::vector<PolyGenerator>& gens, int D,
                                                const std::vector<std::map<int, PolyTerms>>& sq_on_gen,
                                                bool complete) {
    if (sq_on_gen.size() != gens.size())
        throw std::invalid_argument("sq_on_gen must have one entry per generator");
    PolyRing ring(2, gens, D);
    CohomologyPresentation pres;
    pres.prime = 2;
    pres.name = name;
    pres.D = D;
    pres.complete = complete;
    fill_basis_and_products(ring, pres);

    // Total square of a monomial, memoized: multiplicative over the factors.
    std::map<Expo, std::map<int, PolyTerms>> memo;
    std::function<const std::map<int, PolyTerms>&(const Expo&)> total_sq =
        [&](const Expo& m) -> const std::map<int, PolyTerms>& {
        auto hit = memo.find(m);
        if (hit != memo.end()) return hit->second;
        std::map<int, PolyTerms> acc;
        acc[0] = ring.unit();
        for (size_t i = 0; i < m.size(); ++i) {
            std::map<int, PolyTerms> g;
            g[0] = {{1, ring.gen_mono(i)}};
            for (const auto& [k, terms] : sq_on_gen[i]) g[k] = terms;
            for (int rep = 0; rep < m[i]; ++rep) {
                std::map<int, std::map<Expo, int>> nxt;
                for (const auto& [k1, t1] : acc)
                    for (const auto& [k2, t2] : g)
                        for (const auto& t : ring.mul_terms(t1, t2))
                            nxt[k1 + k2][t.expo] = (nxt[k1 + k2][t.expo] + t.coeff) % 2;
                acc.clear();
                for (auto& [k, mp] : nxt) {
                    PolyTerms ts;
                    for (auto& [mm, c] : mp)
                        if (c) ts.push_back({c, mm});
                    if (!ts.empty()) acc[k] = std::move(ts);
                }
            }
        }
        return memo.emplace(m, std::move(acc)).first->second;
    };

    for (int k = 1; k <= 4; ++k)
        for (const auto& [d, monos] : ring.basis) {
            (void)monos;
            if (d + k > D || ring.dim(d + k) == 0) continue;
            FpMat mat = terms_columns_matrix(ring, d, k, [&](const Expo& m) {
                auto& ts = total_sq(m);
                auto it = ts.find(k);
                return it == ts.end() ? PolyTerms{} : it->second;
            });
            if (!mat.is_zero()) pres.sq[k][d] = std::move(mat);
        }
    return pres;
}

int label_index(const CohomologyPresentation& pres, int degree, const std::string& label) {
    auto it = pres.labels.find(degree);
    if (it != pres.labels.end())
        for (size_t i = 0; i < it->second.size(); ++i)
            if (it->second[i] == label) return static_cast<int>(i);
    throw std::invalid_argument("no class labeled '" + label + "' in degree " +
                                std::to_string(degree));
}

CohClass make_class(const CohomologyPresentation& pres, int degree,
                    const std::vector<std::pair<int, std::string>>& terms) {
    CohClass c = pres.zero_class(degree);
    for (const auto& [coeff, label] : terms) {
        int i = label_index(pres, degree, label);
        c.coords[i] = static_cast<uint8_t>((((c.coords[i] + coeff) % pres.prime) + pres.prime) %
                                           pres.prime);
    }
    return c;
}

CohomologyPresentation build_poly_presentation3(const std::string& name,
                                                const std::vector<PolyGenerator>& gens, int D,
                                                const std::vector<PolyTerms>& beta_on_gen,
                                                const std::vector<PolyTerms>& p1_on_gen,
                                                bool complete) {
    if (beta_on_gen.size() != gens.size() || p1_on_gen.size() != gens.size())
        throw std::invalid_argument("operation tables must have one entry per generator");
    PolyRing ring(3, gens, D);
    CohomologyPresentation pres;
    pres.prime = 3;
    pres.name = name;
    pres.D = D;
    pres.complete = complete;
    fill_basis_and_products(ring, pres);

    // Signed Leibniz extension of an operation given on generators.
    auto op_mono = [&](const Expo& m, const std::vector<PolyTerms>& data, bool odd_op) {
        std::map<Expo, int> out;
        for (size_t i = 0; i < m.size(); ++i) {
            if (m[i] == 0 || data[i].empty()) continue;
            int coeff = m[i] % 3;
            if (!coeff) continue;
            Expo rest = m;
            rest[i] -= 1;
            int sign = 1;
            if (odd_op) {
                int deg_before = 0;
                for (size_t j = 0; j < i; ++j) deg_before += m[j] * gens[j].degree;
                if (deg_before % 2) sign = -1;
            }
            for (const auto& t : data[i]) {
                PolyTerms r = ring.mul_terms({{sign * coeff * t.coeff, t.expo}}, {{1, rest}});
                for (const auto& rt : r) out[rt.expo] = (out[rt.expo] + rt.coeff) % 3;
            }
        }
        PolyTerms ts;
        for (auto& [mm, c] : out) {
            int cc = ((c % 3) + 3) % 3;
            if (cc) ts.push_back({cc, mm});
        }
        return ts;
    };

    for (const auto& [d, monos] : ring.basis) {
        (void)monos;
        if (d + 1 <= D && ring.dim(d + 1)) {
            FpMat mat = terms_columns_matrix(
                ring, d, 1, [&](const Expo& m) { return op_mono(m, beta_on_gen, true); });
            if (!mat.is_zero()) pres.beta_mats[d] = std::move(mat);
        }
        if (d + 4 <= D && ring.dim(d + 4)) {
            FpMat mat = terms_columns_matrix(
                ring, d, 4, [&](const Expo& m) { return op_mono(m, p1_on_gen, false); });
            if (!mat.is_zero()) pres.p1_mats[d] = std::move(mat);
        }
    }
    return pres;
}

}  // namespace tt
