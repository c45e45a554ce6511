#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <vector>

#include "dglie/dgl.hpp"

namespace dglie {

// Homotopy retract (L, i, q, K) induced by per-degree decompositions
// L_n = A_n + dA_{n+1} + C_n with d: A isomorphic onto the boundaries below
// and C a space of representative cycles. C is the canonical homology
// complement of the algebra, shared by every retract; only A varies.
//
// Validity: i and q exist for n <= cap-1, K for n <= cap-2.
class Retract {
public:
    // A_choice: per-degree spanning sets for A_n. Degrees not present are
    // filled greedily (monomial basis vectors independent of the cycles, in
    // basis order). Present degrees must list exactly rank(d_n) vectors,
    // independent and meeting ker(d) trivially.
    static Retract from_decomposition(const FreeDGL& L,
                                      const std::map<int, std::vector<LieElement>>& A_choice);

    // A_n sampled as the graph of a random integer matrix over the greedy
    // complement; reproducible from the seed.
    static Retract random(const FreeDGL& L, uint64_t seed);

    const FreeDGL& algebra() const { return *L_; }

    int adim(int n) const;
    const std::vector<QVec>& A(int n) const;
    const std::vector<QVec>& C(int n) const;

    LieVec include(const HVec& h) const;          // i
    HVec project(const LieVec& v) const;          // q
    LieVec homotopy(const LieVec& v) const;       // K, degree +1
    LieElement include_elem(const HVec& h) const;

    struct Report {
        bool qi_identity = true;
        bool homotopy_identity = true;  // id - iq = dK + Kd
        bool dkd_identity = true;       // dKd = d
        bool k_squared_zero = true;
        bool k_kills_a_and_c = true;
        bool q_chain_map = true;  // q d = 0
        std::vector<std::string> failures;
        bool ok() const {
            return qi_identity && homotopy_identity && dkd_identity && k_squared_zero &&
                   k_kills_a_and_c && q_chain_map;
        }
    };
    Report verify() const;

    // Serialization: "A <degree> : <expr>" lines plus informational C lines.
    std::string serialize() const;
    static Retract parse(const FreeDGL& L, const std::string& text);

private:
    const FreeDGL* L_;
    std::map<int, std::vector<QVec>> A_;  // per degree, lie coords

    struct Level {
        QMat abc;       // columns: A_n | dA_{n+1} | C_n
        std::unique_ptr<LUSolver> solver;
        int adim = 0, bdim = 0, cdim = 0;
    };
    struct Cache {
        std::mutex mu;
        std::map<int, Level> levels;
    };
    std::shared_ptr<Cache> cache_;
    const Level& level(int n) const;

    Retract(const FreeDGL& L, std::map<int, std::vector<QVec>> A)
        : L_(&L), A_(std::move(A)), cache_(std::make_shared<Cache>()) {}
};

// Greedy complement of ker(d_n) inside L_n over the monomial basis vectors.
std::vector<QVec> greedy_acomplement(const FreeDGL& L, int n);

struct AdaptedFailure {
    int degree = 0;
    QVec cycle_combination;  // coefficients over the offending span vectors
    std::string message;
};

// Attempts a retract whose A contains the given per-degree spans
// (typically phi(V) of an extension). On failure returns the degree and a
// nonzero combination of the span landing in the cycles.
std::optional<Retract> adapted_retract(const FreeDGL& L,
                                       const std::map<int, std::vector<LieVec>>& spans,
                                       AdaptedFailure* failure);

}  // namespace dglie
