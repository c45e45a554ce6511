#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dglie/retract.hpp"
#include "dglie/trees.hpp"

namespace dglie {

// Sign conventions of the transfer engine ("convention bundle v1").
//
// A tree with k leaves is evaluated in its canonical planar presentation
// (smaller subtree to the left). Leaves carry i, internal vertices the
// bracket, internal edges K. The evaluation of an ordered argument tuple is
//
//   eval(leaf x)      = i(x)
//   eval(node(F, G))  = (-1)^{|a|} [a, b],  a = K(eval F) or i(x_F),
//                                           b = K(eval G) or i(x_G),
//
// with |a| the degree of the left operand after K, and the full labeled-tree
// map is eval scaled by epsilon_sign of the argument degrees. The vertex
// sign realizes the suspended (coalgebra-side) pairing; the bundle is pinned
// operationally by the ell_2 / ell_3 oracles, the generalized Jacobi suite
// and the square-zero check of the induced coderivation.
inline constexpr const char* kConventionBundle = "v1";

// epsilon = (-1)^{sum_{i<k} (k-i)|x_i|}
int epsilon_sign(const std::vector<int>& degrees);

// Labeled-tree map on an ordered argument tuple (no symmetrization).
LieVec tree_evaluate(const TreePtr& t, const Retract& r, const std::vector<HVec>& args);

// Weight overrides keyed by canonical tree form; tests use this to break
// single Aut weights.
using TreeWeights = std::map<std::string, Rat>;

// Sum over all argument permutations with the skew-graded Koszul sign.
LieVec symmetrized_tree(const TreePtr& t, const Retract& r, const std::vector<HVec>& args);

// Transferred bracket: ell_k = sum over tree classes of
// q(symmetrized_tree) / |Aut T|.
HVec ell(int k, const Retract& r, const std::vector<HVec>& args,
         const TreeWeights* override_weights = nullptr);

// Address of a homology basis element.
struct HIdx {
    int degree = 0;
    int index = 0;
    auto operator<=>(const HIdx&) const = default;
};

// Transferred brackets recorded on non-decreasing tuples of homology basis
// elements. Tuples whose evaluation would exceed the degree cap are recorded
// as unknown rather than zero.
class LInftyTable {
public:
    static LInftyTable build(const Retract& r, int max_arity,
                             const TreeWeights* override_weights = nullptr);

    int max_arity() const { return max_arity_; }
    const Retract& retract() const { return *r_; }

    // All homology basis addresses with i,q available (degree <= cap-1).
    const std::vector<HIdx>& hbasis() const { return hbasis_; }
    int hdegree(const HIdx& h) const { return h.degree; }

    // Stored value on a non-decreasing tuple; nullopt = out of cap.
    std::optional<HVec> stored(int k, const std::vector<HIdx>& tuple) const;
    // Skew-symmetric lookup on an arbitrary tuple; zero when a repeated
    // argument forces it; throws Error when the value is out of cap.
    HVec lookup(int k, const std::vector<HIdx>& tuple) const;
    bool known(int k, const std::vector<HIdx>& tuple) const;

    // Multilinear evaluation of ell_k through the table.
    HVec eval(int k, const std::vector<HVec>& args) const;

    bool arity_vanishes(int k) const;  // all stored values zero
    int tuples_known(int k) const;
    int tuples_unknown(int k) const;

    struct Entry {
        std::vector<HIdx> tuple;
        std::optional<HVec> value;
    };
    const std::vector<Entry>& entries(int k) const;

private:
    const Retract* r_ = nullptr;
    int max_arity_ = 0;
    std::vector<HIdx> hbasis_;
    std::map<int, std::vector<Entry>> entries_;
    std::map<int, std::map<std::vector<HIdx>, std::optional<HVec>>> index_;
};

// Span of ell_j values landing in H_n over all degree-compatible basis
// tuples. Throws when some contributing tuple is out of cap (coverage gap).
struct ImageSpan {
    std::vector<HVec> generators;                    // raw values
    std::vector<std::vector<HIdx>> tuples;           // their tuples
    std::vector<QVec> rref;                          // echelonized span
};
ImageSpan bracket_image_span(const LInftyTable& table, int j, int degree);

struct JacobiReport {
    bool ok = true;
    int tuples_checked = 0;
    int tuples_skipped = 0;  // out-of-cap coverage
    std::string first_violation;
};

// Generalized Jacobi identity with n inputs (minimal structure, so inner
// arities run from 2 to n-1):
//   sum_{i=2}^{n-1} sum_{sigma in S(i,n-i)} chi(sigma) (-1)^{i(n-i)}
//     ell_{n-i+1}( ell_i(x_{sigma(1..i)}), x_{sigma(i+1..n)} ) = 0.
JacobiReport verify_generalized_jacobi(const LInftyTable& table, int n_inputs);

std::string hclass_string(const FreeDGL& L, const HVec& h);

}  // namespace dglie
