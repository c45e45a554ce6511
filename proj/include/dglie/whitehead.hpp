#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "dglie/coalgebra.hpp"
#include "dglie/retract.hpp"
#include "dglie/transfer.hpp"

namespace dglie {

using Subset = std::vector<int>;  // 0-based, strictly increasing

std::string subset_name(const Subset& s);

// Quadratic expression: sum of coeff * [u_P, u_Q].
struct PairTerm {
    Rat coeff;
    Subset left, right;
};
using PairFormula = std::vector<PairTerm>;

// DGL model of the fat wedge of spheres S^{n_1} x ... x S^{n_k} minus the top
// cell: generators u_S for proper nonempty subsets, |u_S| = sum n_i - 1, with
// the anchored-shuffle differential; omega is the image of the virtual top
// generator, the attaching element of the product.
struct WedgeModel {
    int k = 0;
    std::vector<int> spheres;
    std::shared_ptr<FreeDGL> model;
    std::map<Subset, int> gen_of;       // subset -> generator index
    std::map<Subset, PairFormula> dformula;  // includes the full set (omega)
    Subset full;
    int omega_degree = 0;

    const PairFormula& omega_formula() const { return dformula.at(full); }
    LieElement omega_element() const;  // expanded in the model
};

// Builds the model; cap defaults to N-1 (N = sum of sphere dimensions) so
// omega's homology degree is valid. Throws when an explicit cap is too small
// for omega.
WedgeModel build_fat_wedge(const std::vector<int>& spheres, int cap = 0);

// A (partial or total) DGL morphism from the wedge model determined by its
// values on generators; stage s covered means all subsets of size <= s are
// assigned.
struct Extension {
    const WedgeModel* W = nullptr;
    const FreeDGL* L = nullptr;
    std::map<Subset, LieVec> phi;

    LieVec value_of(const PairFormula& f) const;  // phi of a quadratic formula
    LieVec omega_value() const;
    // chain-map check d(phi u_S) = phi(d u_S) on every assigned generator
    bool verify_chain_map(std::string* first_failure = nullptr) const;
    std::map<int, std::vector<LieVec>> v_spans() const;  // phi(V) by degree
};

struct Obstruction {
    Subset subset;
    HVec cls;  // nonzero class of phi(d u_S)
};

enum class ExtendStrategy { Echelon, KImage };

// Staged construction of an extension sending u_i to the given cycles.
// Perturbations (cycle vectors, by subset) are added to the solved value at
// each stage. KImage solves y = K(phi d u) and requires a retract.
std::variant<Extension, Obstruction> extend(const WedgeModel& W, const FreeDGL& L,
                                            const std::vector<LieVec>& reps,
                                            ExtendStrategy strategy,
                                            const Retract* retract = nullptr,
                                            const std::map<Subset, LieVec>* perturbations = nullptr);

// Class of phi(omega); throws when phi(omega) is not a cycle (broken chain map).
HVec whitehead_element(const Extension& ext);

struct ProbeReport {
    bool member = false;
    HVec base_class;
    HVec target;
    int evaluations = 0;
    int infeasible = 0;  // perturbations whose re-extension hit an obstruction
    std::vector<HVec> reached;           // distinct classes seen
    std::vector<QVec> indeterminacy;     // span of first-order differences
    std::vector<QVec> affine_span;       // span of (reached - base)
    std::string witness;                 // description of a hit, if any
};

// Samples extensions around `base` by perturbing stage assignments with
// cycles; reports MEMBER with a witness or NOT-FOUND with the reached set.
// Never decides non-membership.
ProbeReport membership_probe(const Extension& base, const HVec& target, int budget,
                             uint64_t seed);

struct ElprimeReport {
    bool applicable = true;
    bool pass = false;
    int realized_sign = 0;       // s with ell_k = s * (x + Gamma), s in {+1,-1}
    bool gamma_zero = false;
    std::string witness;         // Gamma as a combination of lower-bracket values
    PhiCertificate phi;          // Eq-of-existence certificate
    std::string note;
};

// eps * ell_k(x_1..x_k) = x + Gamma with Gamma in sum_{j<k} im ell_j.
ElprimeReport verify_elprime(const LInftyTable& table, const std::vector<HVec>& x_args,
                             const HVec& x);

struct Main1Report {
    bool adapted_found = false;
    AdaptedFailure failure;
    bool equality = false;       // eps ell_k = class(phi omega) exactly
    int realized_sign = 0;
    std::vector<std::pair<int, bool>> ecuacion;  // per stage p: identity holds
    std::string note;
};

Main1Report verify_main1(const Extension& ext);

struct ElsegundoReport {
    bool hypothesis = false;     // ell_i = 0 for i <= k-2 within cap
    std::string hypothesis_note;
    bool masole = false;         // ell_{k-1} vanishes on the (k-1)-subtuples
    bool extended = false;       // staged K-image extension succeeded
    bool equality = false;       // eps ell_k = class(phi omega)
    int realized_sign = 0;
    std::string note;
};

ElsegundoReport verify_elsegundo(const WedgeModel& W, const FreeDGL& L,
                                 const std::vector<LieVec>& reps, const Retract& r,
                                 const LInftyTable& table);

}  // namespace dglie
