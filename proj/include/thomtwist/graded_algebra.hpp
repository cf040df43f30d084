#pragma once
// Finite graded connected F_p algebras, given by a labeled basis per degree
// plus structure constants. Two construction routes:
//   * build_milnor_subalgebra — mod-2 Steenrod subalgebras in the Milnor basis,
//     cut out by a profile (tuple entry bounds r_i < 2^{e_i});
//   * build_presented_algebra — generators/relations over F_p by degreewise
//     word rewriting (basis = lexicographically chosen surviving words).
//
// Basis element id = (degree, index). An element of degree d is a coordinate
// vector over basis[d]. Generator words are sequences of generator indices;
// the word g1 g2 ... means g1 * g2 * ... (leftmost letter outermost).

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "thomtwist/fp_linalg.hpp"

namespace tt {

// One coproduct term c * (left basis elem) (x) (right basis elem).
struct CoprodTerm {
    int coeff = 1;
    int ldeg = 0, lidx = 0;
    int rdeg = 0, ridx = 0;
};

struct AlgebraGenerator {
    std::string name;
    int degree = 0;
    FpVec elem;                        // coordinates in basis[degree]
    std::vector<CoprodTerm> coproduct; // includes g (x) 1 and 1 (x) g
};

// Expression of a basis element as an F_p-combination of generator words.
struct WordCombo {
    std::vector<std::pair<int, std::vector<int>>> terms;  // (coeff, word)
};

class FiniteGradedAlgebra {
  public:
    int prime = 2;
    std::string name;
    std::vector<std::vector<std::string>> basis;  // basis[d] = labels; basis[0] = {"1"}
    std::vector<AlgebraGenerator> generators;
    int top_degree = 0;   // highest degree carried in the tables
    bool complete = true; // false = truncated view of a possibly-larger algebra

    int dim(int d) const {
        return (d >= 0 && d < static_cast<int>(basis.size())) ? static_cast<int>(basis[d].size()) : 0;
    }
    int total_dim() const;

    // Structure constants: product of basis elements (d1,i) * (d2,j), as a
    // coordinate vector in degree d1+d2 (empty vector when d1+d2 > top_degree).
    const FpVec& product(int d1, int i, int d2, int j) const;

    FpVec unit() const { FpVec v(dim(0), 0); v[0] = 1; return v; }

    // Product of two elements. When the result degree exceeds top_degree the
    // zero vector is returned; *past_window is set when that loses information
    // (i.e. the algebra is a truncated view).
    FpVec multiply(int d1, const FpVec& v1, int d2, const FpVec& v2,
                   bool* past_window = nullptr) const;

    // Evaluate a generator word; returns degree via *deg_out. Words past
    // top_degree give an empty vector (degree still reported).
    FpVec eval_word(const std::vector<int>& word, int* deg_out = nullptr) const;
    int word_degree(const std::vector<int>& word) const;

    // All generator words of total degree d, lexicographic in generator index.
    std::vector<std::vector<int>> words_of_degree(int d) const;

    // Rows = evaluated words of degree d (in words_of_degree order).
    FpMat word_matrix(int d) const;

    // Rows = coefficient vectors over words_of_degree(d) that evaluate to zero:
    // the degree-d relations every module action must satisfy.
    FpMat word_kernel(int d) const;

    // basis_word_combo(d, i): expression of basis element (d, i) as a
    // combination of generator words (cached; exists because generators generate).
    const WordCombo& basis_word_combo(int d, int i) const;

    // Mutation invalidates caches; only construction code should call this.
    void clear_caches() { word_rep_cache_.clear(); }

    // Internal storage for structure constants, exposed for serialization.
    // products_[d1][d2][i * dim(d2) + j] = vector over basis[d1+d2].
    std::vector<std::vector<std::vector<FpVec>>> products_;

  private:
    mutable std::map<int, std::vector<WordCombo>> word_rep_cache_;
};

// ---------------------------------------------------------------- Milnor ---

// Milnor basis tuple (r1, ..., rk), trailing zeros trimmed; degree
// sum r_i (2^i - 1). Profile e = (e1, ..., ek) admits r_i < 2^{e_i}.
using MilnorTuple = std::vector<int>;

int milnor_tuple_degree(const MilnorTuple& t);

// Product Sq(R) * Sq(S) via Milnor matrices; coefficients are mod-2
// multinomials (nonzero iff binary digits of the antidiagonal entries are
// pairwise disjoint). Returned as (tuple, coeff=1) pairs.
std::vector<std::pair<MilnorTuple, int>> milnor_product(const MilnorTuple& R, const MilnorTuple& S);

// Named profiles: "A(0)" = (1), "E(1)" = (1,1), "A(1)" = (2,1), "A(2)" = (3,2,1).
// Throws std::invalid_argument for unknown names, std::runtime_error if a
// product of admitted tuples leaves the admitted set (profile not a subalgebra).
FiniteGradedAlgebra build_milnor_subalgebra(const std::string& profile_name);

// ------------------------------------------------------------- presented ---

struct PresentedGenerator {
    std::string name;
    int degree = 1;
};

// Homogeneous relation: sum of coeff * word over generator indices.
struct WordRelation {
    std::vector<std::pair<int, std::vector<int>>> terms;
};

struct AlgebraPresentation {
    int prime = 3;
    std::string name;
    std::vector<PresentedGenerator> generators;
    std::vector<WordRelation> relations;
    int max_degree = 0;  // build tables through this degree
};

// Degree-by-degree quotient of the free algebra by the two-sided ideal spanned
// by x * r * y. Basis per degree = non-pivot words after deterministic RREF of
// the ideal slice. The result is flagged complete when the dimensions vanish
// on a trailing window at least as wide as the largest generator degree (no
// nonzero word can reappear past such a gap); otherwise complete = false and
// top_degree = max_degree.
FiniteGradedAlgebra build_presented_algebra(const AlgebraPresentation& pres);

// --------------------------------------------------------------- checks ----

struct AssociativityReport {
    bool ok = true;
    long long checked = 0;
    std::string failure;  // human-readable description of first failure
};

// Exhaustive over all basis triples (use for small algebras).
AssociativityReport check_associativity_exhaustive(const FiniteGradedAlgebra& a);
// Random triples, deterministic seed.
AssociativityReport check_associativity_sampled(const FiniteGradedAlgebra& a,
                                                long long samples, uint64_t seed);

}  // namespace tt
