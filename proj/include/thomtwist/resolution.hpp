#pragma once
// Minimal free resolutions over a FiniteGradedAlgebra, Ext charts with product
// edges, chain-map lifting, Yoneda products, induced maps on Ext, long-exact-
// sequence rank bookkeeping, degree-reason collapse candidates, and group
// read-off from h0-string structure.
//
// Free module F_s: generator list gens[s] of (internal degree t, label).
// An element of F_s is a sparse combination of (generator, algebra basis
// element) pairs. The differential takes stage-s generators into F_{s-1}
// (stage 0 maps straight into the module).

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "thomtwist/fp_linalg.hpp"
#include "thomtwist/graded_module.hpp"

namespace tt {

// Requested window exceeds the trusted truncation of the module: results
// past the truncation would silently depend on unknown module degrees.
struct WindowError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// One term slot of a free-module element: generator gi tensored with the
// algebra basis element (bd, bi).
struct FreeTermKey {
    int gi = 0, bd = 0, bi = 0;
    bool operator<(const FreeTermKey& o) const {
        if (gi != o.gi) return gi < o.gi;
        if (bd != o.bd) return bd < o.bd;
        return bi < o.bi;
    }
    bool operator==(const FreeTermKey& o) const {
        return gi == o.gi && bd == o.bd && bi == o.bi;
    }
};
using FreeElem = std::map<FreeTermKey, int>;  // key -> nonzero coefficient mod p

struct FreeGenerator {
    int t = 0;
    std::string label;  // "s_t_k", k counting generators in the same cell
};

// Snapshot of the computed data, used for save/resume.
struct ResolutionData {
    int s_max = 0, t_max = 0;
    std::vector<std::vector<FreeGenerator>> gens;
    std::vector<FpVec> diff0;                 // stage-0 images in the module
    std::vector<std::vector<FreeElem>> diff;  // diff[s][gi] for s >= 1
};

class Resolution {
  public:
    // Fresh build. Throws WindowError when t_max > mod.eff_trunc().
    Resolution(GradedModule mod, int s_max, int t_max);
    // Resume from a previously computed snapshot covering a sub-window; the
    // remaining cells are computed. A snapshot that is not a sub-window of the
    // request is ignored (fresh build).
    Resolution(GradedModule mod, int s_max, int t_max, const ResolutionData& resume_from);

    const GradedModule& module() const { return mod_; }
    const FiniteGradedAlgebra& alg() const { return *mod_.alg; }
    int prime() const { return mod_.prime(); }
    int s_max() const { return s_max_; }
    int t_max() const { return t_max_; }

    const std::vector<FreeGenerator>& stage(int s) const { return gens_.at(s); }
    const FreeElem& diff(int s, int gi) const { return diff_.at(s).at(gi); }
    const FpVec& diff0(int gi) const { return diff0_.at(gi); }
    ResolutionData data() const;

    // Basis of (F_s)_t, ordered generator-major then algebra basis index.
    std::vector<FreeTermKey> slice_basis(int s, int t) const;
    FpVec elem_to_vec(const FreeElem& e, const std::vector<FreeTermKey>& sb) const;
    FreeElem vec_to_elem(const FpVec& v, const std::vector<FreeTermKey>& sb) const;
    // Left action of algebra basis element (bd, bi) on an element of F_s.
    FreeElem act_elem(int s, int bd, int bi, const FreeElem& e) const;
    // Matrix of d_s : (F_s)_t -> (F_{s-1})_t (or -> M_t when s = 0).
    FpMat diff_matrix(int s, int t) const;

    // ---- chart queries ----
    std::map<std::pair<int, int>, int> ext_ranks() const;
    int ext_rank(int s, int t) const;
    // Generator indices of stage s sitting in internal degree t.
    std::vector<int> gens_at(int s, int t) const;
    // Multiplication by the Ext^1 class dual to algebra basis element (bd,bi):
    // Ext^{s,t} -> Ext^{s+1,t+bd}, read off the differential coefficients.
    // nullopt when s+1 exceeds the window.
    std::optional<FpMat> edge_matrix(int s, int t, int bd, int bi) const;

    // ---- audits ----
    bool d2_check() const;          // d(d(gen)) = 0 for every generator
    bool minimality_check() const;  // no unit coefficients in differentials
    bool exactness_check() const;   // dim ker d_s = rank d_{s+1} degreewise

  private:
    GradedModule mod_;
    int s_max_ = 0, t_max_ = 0;
    std::vector<std::vector<FreeGenerator>> gens_;
    std::vector<FpVec> diff0_;
    std::vector<std::vector<FreeElem>> diff_;
    void build(int done_s, int done_t);  // cells with s <= done_s AND t <= done_t are present
};

// ------------------------------------------------------------- chain maps ---

// Lift the dual cocycle of generator #gen_index at (s, t) to chain maps
// V_i : F_{s+i} -> G_i, i = 0..sigma_max, where `ground` resolves the trivial
// module (single stage-0 generator in degree 0). V[i] maps a stage-(s+i)
// generator index to its image element of G_i (internal degree shifted by -t).
// Throws std::runtime_error when a lift does not exist in the window.
std::vector<std::map<int, FreeElem>> lift_cocycle(const Resolution& res, const Resolution& ground,
                                                  int s, int t, int gen_index, int sigma_max);

// u = generator #u_index at u_cell = (sigma, tau) of Ext(ground module),
// v = generator #v_index at v_cell = (s, t) of Ext(res.module). Returns the
// coordinates of the Yoneda product u . v over the generators of res at
// (s + sigma, t + tau).
FpVec yoneda_product(const Resolution& res, const Resolution& ground,
                     std::pair<int, int> u_cell, int u_index,
                     std::pair<int, int> v_cell, int v_index);

// Lift a degree-0 module map f : src.module -> tgt.module (fmat[d] is the
// degree-d matrix; absent = zero) to chain maps Phi_s : F_s(src) -> F_s(tgt).
std::vector<std::map<int, FreeElem>> lift_module_map(const Resolution& src, const Resolution& tgt,
                                                     const std::map<int, FpMat>& fmat);

// Contravariant induced map f* : Ext^{s,t}(tgt.module) -> Ext^{s,t}(src.module)
// per cell; rows index tgt generators, columns src generators.
std::map<std::pair<int, int>, FpMat> induced_ext_matrices(const Resolution& src,
                                                          const Resolution& tgt,
                                                          const std::map<int, FpMat>& fmat);

// --------------------------------------------------------------- LES check ---

struct LesProblem {
    std::string kind;  // "middle" (exactness at the middle term) or "boundary"
    int s = 0, t = 0;
    int got = 0, expected = 0;
};

struct LesReport {
    bool ok = true;
    std::vector<LesProblem> problems;
    // Rank of the connecting map out of Ext^{s,t}(sub), forced by exactness.
    std::map<std::pair<int, int>, int> forced_boundary;
};

// SES 0 -> sub -i-> mid -q-> quot -> 0 with degreewise matrices imat, qmat.
// Verifies exactness of Ext(quot) -> Ext(mid) -> Ext(sub) at the middle term
// for every in-window cell and cross-checks the two ways of computing the
// forced connecting rank. Connecting maps themselves are never computed.
LesReport les_rank_check(const Resolution& sub, const Resolution& mid, const Resolution& quot,
                         const std::map<int, FpMat>& imat, const std::map<int, FpMat>& qmat,
                         int s_max, int t_max);

// ------------------------------------------------------------------ charts ---

struct ProductEdge {
    std::string cls;          // class name: "h0", "v1", "alpha", "beta"
    int s = 0, t = 0, i = 0;  // from generator i of cell (s, t)
    int s2 = 0, t2 = 0, i2 = 0;
};

struct ExtChart {
    int prime = 2;
    int s_max = 0, t_max = 0;
    std::map<std::pair<int, int>, int> ranks;
    std::vector<ProductEdge> edges;
    bool masked(int /*s*/, int t) const { return t > t_max; }
    int rank(int s, int t) const {
        auto it = ranks.find({s, t});
        return it == ranks.end() ? 0 : it->second;
    }
};

// The (s-shift 1) product classes realized as duals of algebra basis elements:
//   h0    dual of the degree-1 basis element (any shipped algebra),
//   v1    dual of Q1 = Sq(0,1) (exterior/Milnor route) in degree 3,
//   alpha dual of P in degree 4 (mod-3 algebra).
// Returns nullopt when the algebra has no such class.
struct ProductClass {
    std::string name;
    int bd = 0, bi = 0;
};
std::optional<ProductClass> product_class(const FiniteGradedAlgebra& alg, const std::string& name);

// Build the chart with the requested product edges. "beta" (s-shift 2 at p=3)
// is computed through Yoneda products against `ground` (a resolution of the
// trivial module over the same algebra); the others come from edge matrices.
// No edge into a masked or empty cell. Throws std::invalid_argument for a
// product name the algebra does not carry (or "beta" without a ground).
ExtChart ext_chart(const Resolution& res, const std::vector<std::string>& products = {"h0"},
                   const Resolution* ground = nullptr);

// -------------------------------------------------------------- collapse ---

struct CollapseCandidate {
    int s = 0, t = 0;    // source cell
    int s2 = 0, t2 = 0;  // target cell = (s + r, t + r - 1)
    int r = 0;
};

// All bidegree-possible differentials d_r, 2 <= r <= r_max, between nonzero
// unmasked cells. With use_h0_linearity, a candidate is pruned when the
// in-window h0 structure is incompatible with an h0-linear differential:
// the source is annihilated by h0 (outgoing edge rank 0, target cell inside
// the window) while the target is entirely h0-divisible (incoming edge
// surjective) -- a class killed by h0 cannot hit the interior of an h0-tower.
std::vector<CollapseCandidate> collapse_check(const Resolution& res, int r_max,
                                              bool use_h0_linearity);

// -------------------------------------------------------------- read-off ---

struct GroupFactor {
    bool free = false;  // true: one Z_p summand (free after p-completion)
    int length = 0;     // else Z/p^length
};

struct ReadOff {
    bool refused = false;
    std::string error;  // "raise t_max" when the stem leaves the window
    std::vector<GroupFactor> factors;
    bool extrapolated = false;  // some tower reached the window bound
    // Interpretation caveat, always set: the read assumes the chart collapses
    // and there are no hidden extensions.
    std::string caveat = "assuming collapse and no hidden extensions";
};

// Read the stem's group off the h0-string structure: a string of length l
// fully visible in the window contributes Z/p^l; a string reaching the
// effective bound b = min(s_max, t_max - stem) contributes a (flagged,
// extrapolated) Z_p. A stem beyond t_max is refused with "raise t_max".
ReadOff read_off_groups(const Resolution& res, int stem);

}  // namespace tt
