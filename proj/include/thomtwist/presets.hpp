#pragma once
// The shipped named presets: finite algebras, truncated cohomology
// presentations of the example spaces, characteristic-class data of the proof
// bundles, the standard small modules, and the twist scenarios that tie them
// together. Everything here is deterministic and self-contained.

#include <map>
#include <string>
#include <vector>

#include "thomtwist/graded_module.hpp"
#include "thomtwist/presentation.hpp"
#include "thomtwist/twist_builder.hpp"

namespace tt::presets {

// "A(0)", "E(1)", "A(1)", "A(2)" (Milnor-basis subalgebras), "E(1)-presented"
// (same algebra by generators and relations), "A-tmf" (p = 3, generators b and
// P with the length-9 rewriting relation). Instances are cached and shared.
AlgebraPtr algebra(const std::string& name);
std::vector<std::string> algebra_names();

// "su8"        H*(B(SU(8)/Z2); F2) through degree 6 (generators B,b,c,d,e)
// "bz2"        F2[t] through degree 12
// "u2"         H*(U(2); F2), exterior on b1, b3 (complete)
// "cp2"        F2[al]/al^3, |al| = 2 (complete)
// "rp2xrp2"    F2[x,y]/(x^3,y^3) (complete)
// "rp1xrp3"    F2[x,y]/(x^2,y^4) (complete)
// "e8e8"       mod-3 invariant subring x, P1x, bP1x, y through degree 11
CohomologyPresentation ring(const std::string& name);
std::vector<std::string> ring_names();

// Total Stiefel-Whitney classes w_1..w_4 of the proof bundles:
// "cp2-bundle" (O(1)+O(2) over CP^2), "rp2xrp2-bundle", "rp1xrp3-bundle".
std::map<int, CohClass> bundle_sw(const std::string& name);
std::vector<std::string> bundle_names();
// Which ring a bundle lives over.
std::string bundle_ring(const std::string& name);

// "a1-seagull"  M0 = A(1)/A(1)Sq1        (dims at 0,2,3,5)
// "a1-ceta"     A(1)/(Sq1, Sq1Sq2+Sq2Sq1) (dims at 0,2)
// "a1-mod-sq3"  A(1)/A(1)Sq3             (dims at 0..4)
// "atmf-n1"     A-tmf/(b, PP, PbP)        (dims at 0,4,5)
// "atmf-n2"     A-tmf/(b, bP, PbPP)       (dims at 0,4,8,9)
// "atmf-cnu"    two cells u, v = Pu       (dims at 0,4)
// "w1","w2","w3" the truncated wedge summand models over A(0)/E(1)/A(1)
GradedModule module_preset(const std::string& name);
std::vector<std::string> module_names();

// A twist scenario couples a ring, an algebra, twist data, and a window.
struct ScenarioSpec {
    std::string name;
    std::string ring;     // ring preset name
    std::string algebra;  // algebra preset name
    TwistData twist;
    int s_max = 8;
    int t_max = 8;
};

// "u-duality-su8", "heterotic-e8e8", "u2-ku", "pinm-bz2", "pinc-bz2",
// "hz-bz2", "tmf2-rp1rp3".
ScenarioSpec scenario_spec(const std::string& name);
std::vector<std::string> scenario_names();

// A short exact sequence 0 -> sub -> mid -> quot -> 0 of A-tmf modules,
// given by degreewise matrices for the two maps, plus the window over which
// its long-exact-sequence rank bookkeeping is checked.
struct SesSpec {
    std::string name;
    GradedModule sub, mid, quot;
    std::map<int, FpMat> inclusion;  // sub -> mid, per degree
    std::map<int, FpMat> quotient;   // mid -> quot, per degree
    int s_max = 8;
    int t_max = 19;
};

// "cnu"  0 -> Σ^4 F3 -> Cν -> F3 -> 0
// "qn"   0 -> Σ^5 F3 -> N1 -> Cν -> 0
// "2qn"  0 -> Σ^4 N1 -> N2 -> F3 -> 0
SesSpec ses(const std::string& name);
std::vector<std::string> ses_names();

}  // namespace tt::presets
