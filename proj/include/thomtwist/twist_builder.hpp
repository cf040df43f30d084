#pragma once
// Thom modules of twisted cohomology theories: turn a truncated cohomology
// presentation plus twisting classes into a graded module over the matching
// finite Steenrod-type algebra.
//
// Targets and their classes:
//   "HZ"   over generators {Sq1}:          a (deg 1)
//   "ku"   over generators {Q0, Q1}:       a (deg 1), c2 (deg 3)
//   "ko"   over generators {Sq1, Sq2}:     a (deg 1), b (deg 2)
//   "tmf2" over generators {Sq1, Sq2, Sq4}: a (deg 1), gw (deg 2), delta4 (deg 4)
//   "tmf3" over generators {b, P} (p = 3):  d3 (deg 4)
//
// The classical untwisted route is thom_module_from_sw: a total characteristic
// class w_1..w_4 induces Sq^n(U x) = sum_{i+j=n} U w_i Sq^j(x).

#include <map>
#include <string>
#include <vector>

#include "thomtwist/graded_module.hpp"
#include "thomtwist/presentation.hpp"

namespace tt {

struct TwistData {
    std::string target;
    std::map<std::string, CohClass> classes;
};

// Throws std::invalid_argument when the algebra's generator list or prime does
// not match the target, or a class has the wrong degree/length.
GradedModule build_twisted_module(const CohomologyPresentation& pres, AlgebraPtr alg,
                                  const TwistData& twist);

// w: characteristic classes by degree (w[i] has degree i); w_0 = 1 implied.
// The algebra's generators must all be among Sq1/Sq2/Sq4/Q0/Q1.
GradedModule thom_module_from_sw(const CohomologyPresentation& pres, AlgebraPtr alg,
                                 const std::map<int, CohClass>& w);

// Action of the algebra *basis element* (bd, bi) on presentation degree d by
// untwisted Steenrod operations (generator names resolved to the presentation
// tables, composed along the cached generator-word combination).
FpMat base_operation_matrix(const CohomologyPresentation& pres, const FiniteGradedAlgebra& alg,
                            int bd, int bi, int d);

struct ThomDiagonalReport {
    bool ok = true;
    std::vector<std::string> problems;
};

// Cartan/Thom-diagonal coherence: for every generator g with coproduct
// sum g' (x) g'' and every basis pair (x, y) inside the window,
//   g(U * (x*y)) = sum +- (g' acting on U*x) * (g'' acting on y),
// with g' acting through the module and g'' through the untwisted tables.
ThomDiagonalReport check_thom_diagonal(const CohomologyPresentation& pres,
                                       const GradedModule& mod);

}  // namespace tt
