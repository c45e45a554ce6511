#pragma once

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "dglie/lie.hpp"
#include "dglie/linalg.hpp"

namespace dglie {

struct Generator {
    std::string name;
    int degree = 1;  // reduced: degree >= 1
};

// Element of L_n in coordinates over the canonical monomial basis of degree n.
struct LieVec {
    int degree = 0;
    QVec c;
};

// Homology class in coordinates over the chosen representative basis of H_n.
struct HVec {
    int degree = 0;
    QVec c;
};

bool vec_is_zero(const QVec& v);
QVec vec_add(const QVec& a, const QVec& b);
QVec vec_sub(const QVec& a, const QVec& b);
QVec vec_scale(const QVec& a, const Rat& c);

// Finitely generated free DGL with a derivation differential of degree -1 and
// a hard degree cap bounding every derived computation.
class FreeDGL {
public:
    FreeDGL(std::vector<Generator> gens, std::vector<LieElement> diffs, int degree_cap);
    FreeDGL(const FreeDGL&) = delete;
    FreeDGL& operator=(const FreeDGL&) = delete;

    int cap() const { return cap_; }
    const std::vector<Generator>& gens() const { return gens_; }
    int gen_index(const std::string& name) const;  // -1 when absent
    const LieElement& gen_diff(int i) const { return diffs_[i]; }
    LieElement gen_elem(int i) const;
    int word_degree(const Word& w) const;

    // Tensor-algebra arithmetic.
    LieElement prod(const LieElement& a, const LieElement& b) const;
    LieElement bracket(const LieElement& a, const LieElement& b) const;
    LieElement d(const LieElement& a) const;

    struct DsqReport {
        bool ok = true;
        std::vector<std::pair<std::string, LieElement>> failures;  // generator, d(d(gen))
    };
    DsqReport check_d_squared() const;

    // Tensor words of total degree n in first-letter order; doubles as the
    // list of right-nested bracket monomial candidates of degree n.
    const std::vector<Word>& words(int n) const;
    int word_index(int n, const Word& w) const;
    LieElement expand_monomial(const Word& seq) const;

    struct Basis {
        std::vector<Word> monos;        // accepted monomial candidates
        std::vector<LieElement> elems;  // their tensor expansions
        std::unique_ptr<SpanIndex> span;
    };
    // Canonical basis of L_n; n <= cap. Building basis(cap) is allowed but
    // nothing internal requires it.
    const Basis& basis(int n) const;
    int dim(int n) const;

    // Coordinates over basis(deg). Throws when the element is not in the
    // span (i.e. not in the free Lie algebra part of the tensor algebra).
    QVec coords(const LieElement& e) const;
    LieVec vec(const LieElement& e) const;
    LieElement element(const LieVec& v) const;

    const QMat& dmat(int n) const;  // L_n -> L_{n-1}, needs n <= cap with basis available
    const LUSolver& dsolver(int n) const;  // factorization of dmat(n)
    LieVec d_vec(const LieVec& v) const;
    // Bracket through cached structure constants; result degree <= cap - 1.
    LieVec bracket_vec(const LieVec& a, const LieVec& b) const;

    // RREF basis of the boundary space B_n = im(d: L_{n+1} -> L_n), n <= cap-1.
    // At n = cap-1 the image is taken over degree-cap monomial candidates so
    // that basis(cap) itself never has to be materialized.
    const std::vector<QVec>& boundary_rref(int n) const;

    struct HomologyData {
        int hdim = 0;
        int bdim = 0;
        std::vector<QVec> reps;  // C-basis: cycles complementing boundaries
        QMat bc;                 // [B | C] for expressing cycles
        std::shared_ptr<LUSolver> bc_solver;
    };
    // 1 <= n <= cap-1; throws DegreeCapError outside that range.
    const HomologyData& homology(int n) const;
    HVec class_of(const LieVec& cycle) const;
    LieVec rep_of(const HVec& h) const;

    std::string mono_string(const Word& seq) const;
    std::string print(const LieVec& v) const;      // combination of monomials
    std::string print(const LieElement& e) const;  // via coords when possible

private:
    std::vector<Generator> gens_;
    std::vector<LieElement> diffs_;
    int cap_;
    std::map<std::string, int> gen_index_;

    mutable std::mutex mu_;
    mutable std::map<int, std::vector<Word>> words_;
    mutable std::map<int, std::map<Word, int>> word_index_;
    mutable std::map<int, Basis> basis_;
    mutable std::map<int, QMat> dmat_;
    mutable std::map<int, std::shared_ptr<LUSolver>> dsolver_;
    mutable std::map<int, std::vector<QVec>> boundary_;
    mutable std::map<int, HomologyData> homology_;
    mutable std::map<uint64_t, QVec> sc_;  // structure constants

    const std::vector<Word>& words_locked(int n) const;
    const Basis& basis_locked(int n) const;
    const QMat& dmat_locked(int n) const;
    QVec coords_locked(const LieElement& e) const;
    const QVec& sc_locked(int m, int i, int n, int j) const;
};

// Uniform random homogeneous element from monomials of the given degree
// (small integer coefficients), for property tests and structural checks.
LieElement random_element(const FreeDGL& L, int degree, const std::function<long()>& draw);

}  // namespace dglie
