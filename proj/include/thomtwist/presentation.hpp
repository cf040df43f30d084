#pragma once
// Truncated cohomology presentations: a labeled monomial/class basis per degree
// through a top degree D, a graded-commutative product table, and Steenrod
// operation tables (Sq^1..Sq^4 at p = 2; Bockstein and P^1 at p = 3).
//
// Two ways to get one: load explicit tables (serialization), or build from a
// polynomial/exterior generator list where operations are given on generators
// and extended by Cartan/Leibniz (the route every shipped preset uses).

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "thomtwist/fp_linalg.hpp"

namespace tt {

// Element of a fixed degree, in coordinates over the presentation basis.
struct CohClass {
    int degree = 0;
    FpVec coords;
};

class CohomologyPresentation {
  public:
    int prime = 2;
    std::string name;
    int D = 0;            // classes stored through this degree
    bool complete = false;  // true when H^{>D} genuinely vanishes (closed manifold)
    std::map<int, std::vector<std::string>> labels;

    // products[{d1,d2}][i * dim(d2) + j] = coordinates of (basis_i * basis_j)
    // in degree d1 + d2; stored only when d1 + d2 <= D and both dims nonzero.
    std::map<std::pair<int, int>, std::vector<FpVec>> products;

    // p = 2: sq[k] maps source degree d to the matrix of Sq^k : H^d -> H^{d+k},
    // stored for 1 <= k <= 4, d + k <= D. Missing entry = zero map.
    std::array<std::map<int, FpMat>, 5> sq;
    // p = 3 analogues.
    std::map<int, FpMat> beta_mats, p1_mats;

    int dim(int d) const {
        auto it = labels.find(d);
        return it == labels.end() ? 0 : static_cast<int>(it->second.size());
    }

    FpVec product(int d1, int i, int d2, int j) const;
    FpMat sq_matrix(int k, int d) const;  // k = 0 gives the identity
    FpMat beta_matrix(int d) const;
    FpMat p1_matrix(int d) const;

    // Multiplication by the fixed class c: H^d -> H^{d + c.degree}.
    FpMat mul_matrix(const CohClass& c, int d) const;

    CohClass zero_class(int degree) const { return {degree, FpVec(dim(degree), 0)}; }
    CohClass unit_class() const;
    CohClass class_add(const CohClass& a, const CohClass& b) const;
    // Throws when the product degree exceeds D (information would be lost).
    CohClass class_mul(const CohClass& a, const CohClass& b) const;
};

// Consistency report; `problems` lists human-readable violations.
struct PresentationCheck {
    bool ok = true;
    std::vector<std::string> problems;
};

// Checks: unit behaves, graded commutativity, associativity of the product
// table, Cartan coherence of the Steenrod tables against the product table
// (Leibniz for beta/P1 at p = 3), and Sq^3 = Sq^1 Sq^2 wherever both sides are
// inside the stored window.
PresentationCheck check_presentation(const CohomologyPresentation& pres);

// ----------------------------------------------------- polynomial builders

// Generator of a polynomial/exterior presentation. nilpotency e means x^e = 0
// (e.g. 2 for exterior classes); odd-degree generators at p = 3 are forced
// exterior. Monomials are exponent vectors; basis per degree is sorted
// lexicographically by exponents.
struct PolyGenerator {
    std::string name;
    int degree = 1;
    std::optional<int> nilpotency;
};

struct PolyTerm {
    int coeff = 1;
    std::vector<int> expo;
};
using PolyTerms = std::vector<PolyTerm>;

// p = 2: sq_on_gen[i] maps k -> Sq^k(gen_i) as terms (k >= 1; omitted = 0).
CohomologyPresentation build_poly_presentation2(const std::string& name,
                                                const std::vector<PolyGenerator>& gens, int D,
                                                const std::vector<std::map<int, PolyTerms>>& sq_on_gen,
                                                bool complete);

// p = 3: beta_on_gen[i] / p1_on_gen[i] are the values on generators; both are
// extended as (signed) derivations.
CohomologyPresentation build_poly_presentation3(const std::string& name,
                                                const std::vector<PolyGenerator>& gens, int D,
                                                const std::vector<PolyTerms>& beta_on_gen,
                                                const std::vector<PolyTerms>& p1_on_gen,
                                                bool complete);

// Locate a basis label within a degree (throws std::invalid_argument when absent).
int label_index(const CohomologyPresentation& pres, int degree, const std::string& label);
// Build a class from (coefficient, label) pairs, e.g. {{1, "x^1"}, {1, "y^1"}}.
CohClass make_class(const CohomologyPresentation& pres, int degree,
                    const std::vector<std::pair<int, std::string>>& terms);

}  // namespace tt
