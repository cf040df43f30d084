#pragma once
// Graded left modules over a FiniteGradedAlgebra: labeled basis per degree plus
// one action matrix per algebra generator and source degree. A module is either
// complete (all degrees known) or trusted only through a truncation degree;
// every consumer threads that window through its own bookkeeping.

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "thomtwist/fp_linalg.hpp"
#include "thomtwist/graded_algebra.hpp"

namespace tt {

using AlgebraPtr = std::shared_ptr<const FiniteGradedAlgebra>;

// One violated word relation: the combination `combo` over words_of_degree(k)
// evaluates to zero in the algebra but acts nonzero on M_d; `witness_input` is
// a basis index of M_d on which it fails, `witness_output` the nonzero image.
struct ValidationFailure {
    int word_degree = 0;    // k
    int source_degree = 0;  // d
    FpVec combo;            // coefficients over words_of_degree(k)
    int witness_input = 0;
    FpVec witness_output;
};

class GradedModule {
  public:
    AlgebraPtr alg;
    std::map<int, std::vector<std::string>> labels;  // degree -> basis labels
    std::vector<std::map<int, FpMat>> actions;       // per generator: source degree -> matrix
    std::optional<int> truncation;                   // trusted through here; nullopt = complete

    int prime() const { return alg->prime; }
    int dim(int d) const {
        auto it = labels.find(d);
        return it == labels.end() ? 0 : static_cast<int>(it->second.size());
    }
    std::vector<int> degrees() const;
    int bottom() const;
    int top() const;
    bool complete() const { return !truncation.has_value(); }
    int eff_trunc() const;  // truncation, or a large sentinel when complete

    // Action of generator g on degree d (zero matrix of the right shape when
    // no matrix is stored).
    FpMat gen_action(int g, int d) const;
    // Action of the word g1 g2 ... (apply the last letter first).
    FpMat word_action(const std::vector<int>& word, int d) const;
    // Action of algebra basis element (bd, bi), via its generator-word combo (cached).
    const FpMat& basis_action(int bd, int bi, int d) const;

    // Check every algebra word relation that fits inside the trusted window.
    std::vector<ValidationFailure> validate() const;

  private:
    mutable std::map<std::tuple<int, int, int>, FpMat> basis_act_cache_;
};

// ------------------------------------------------------------ constructors

GradedModule trivial_module(AlgebraPtr alg, const std::string& label = "1");

// Quotient of the free rank-1 module by the left ideal generated by the given
// homogeneous annihilators. Complete when the algebra is (trunc unset).
class CyclicModule {
  public:
    GradedModule module;
    // Reduce an algebra-coordinate vector of degree d to quotient coordinates.
    FpVec project(int d, FpVec algebra_coords) const;
    // Surviving algebra basis indices per degree (quotient basis representatives).
    std::vector<std::vector<int>> keep;

    std::vector<std::map<int, FpVec>> reduced_;  // per degree: pivot -> ideal row
};

CyclicModule cyclic_module(AlgebraPtr alg, const std::vector<WordRelation>& annihilators,
                           std::optional<int> trunc = std::nullopt);

GradedModule suspend(const GradedModule& m, int k);
GradedModule direct_sum(const std::vector<const GradedModule*>& mods);
// Tensor product over F_p with the diagonal action through the generator
// coproducts stored on the algebra; Koszul sign (-1)^{|right part| * |m|} at odd p.
GradedModule tensor_product(const GradedModule& a, const GradedModule& b);
// Forget everything above degree D and mark the result truncated there.
GradedModule truncate(const GradedModule& m, int D);

// ---------------------------------------------------------------- SES check

struct ModuleMap {
    const GradedModule* src = nullptr;
    const GradedModule* tgt = nullptr;
    std::map<int, FpMat> mats;  // degree -> (tgt.dim(d) x src.dim(d)); absent = zero
    FpMat at(int d) const;      // zero matrix of the right shape when absent
    // Commutes with every generator action? Returns failing (generator, degree).
    std::optional<std::pair<std::string, int>> commutes() const;
};

struct SesReport {
    bool ok = true;
    std::vector<std::string> problems;
};

// 0 -> Sub -i-> Mid -q-> Quot -> 0: i injective, q surjective, q after i = 0,
// degreewise dim additivity, and both maps commute with the action.
SesReport check_ses(const ModuleMap& i, const ModuleMap& q);

}  // namespace tt
