#pragma once

#include <map>
#include <optional>
#include <vector>

#include "dglie/transfer.hpp"

namespace dglie {

// Suspended basis letter: sx for x the idx-th basis element in (underlying)
// degree udeg. |sx| = udeg + 1.
struct SLetter {
    int udeg = 0;
    int idx = 0;
    auto operator<=>(const SLetter&) const = default;
};

// Canonically sorted wedge word over suspended letters.
using WedgeWord = std::vector<SLetter>;

struct WedgePoly {
    std::map<WedgeWord, Rat> terms;
    bool is_zero() const { return terms.empty(); }
};

int sdeg(const SLetter& l);
int word_sdeg(const WedgeWord& w);

// Sorts letters with the graded-commutative Koszul sign; a repeated letter of
// odd suspended degree kills the word (returned as nullopt).
std::optional<std::pair<int, WedgeWord>> wedge_canonicalize(std::vector<SLetter> letters);

void wedge_add(WedgePoly& a, const Rat& c, const WedgeWord& w);
void wedge_add_scaled(WedgePoly& a, const Rat& c, const WedgePoly& b);
bool wedge_equal(const WedgePoly& a, const WedgePoly& b);

// ---- Quillen chains C(L) = (Lambda sL, delta_1 + delta_2) ----
// Letters index the canonical basis of L per degree.

WedgePoly quillen_delta(const FreeDGL& L, const WedgeWord& w);
WedgePoly quillen_delta(const FreeDGL& L, const WedgePoly& p);

struct DsqReport {
    bool ok = true;
    long words_checked = 0;
    long words_skipped = 0;  // out-of-cap coverage
    std::string first_violation;
};

// delta^2 = 0 over all wedge words on sL with at most max_len letters and
// underlying degrees within the cap (two differentials need headroom 2).
DsqReport quillen_dsq_check(const FreeDGL& L, int max_len);

// ---- Transferred coderivations on Lambda sH ----

// Corestriction h_k = (-1)^{k(k-1)/2} s . ell_k . (s^{-1})x^k of the arity-k
// coderivation, as a function on sorted k-letter words over sH; the result is
// a combination of single letters.
struct Coderivation {
    int k = 0;
    const LInftyTable* table = nullptr;
};

Coderivation bracket_to_coderivation(const LInftyTable& table, int k);

// h_k on a word of length exactly k. Throws on out-of-cap lookups.
std::vector<std::pair<SLetter, Rat>> corestriction_apply(const Coderivation& c, const WedgeWord& w);

// Inverse direction ell_k = s^{-1} h_k s^{tensor k} on a basis tuple,
// for the round-trip identity.
HVec coderivation_to_bracket(const Coderivation& c, const std::vector<HIdx>& tuple);

// Coderivation extension: delta_k(sx_1 ^ ... ^ sx_p) summed over k-subsets
// with the extraction Koszul sign.
WedgePoly delta_on_wedge(const std::vector<Coderivation>& cods, const WedgeWord& w);
WedgePoly delta_on_wedge(const std::vector<Coderivation>& cods, const WedgePoly& p);

// delta^2 = 0 on (Lambda sH, sum of delta_k from the table); words of length
// up to table.max_arity() + 1 are conclusive for a minimal structure.
DsqReport table_dsq_check(const LInftyTable& table, int max_len);

// ---- Phi certificate: delta(sx_1 ^ ... ^ sx_k + Phi) = sx ----
struct PhiCertificate {
    bool found = false;
    WedgePoly phi;          // in Lambda^{2..k-1} sH
    int unknowns = 0;       // wedge basis size offered to the solver
    int equations = 0;      // target word count
    std::string note;
};

PhiCertificate solve_phi(const LInftyTable& table, const std::vector<HVec>& x_args, const HVec& x);

std::string wedge_string(const WedgePoly& p);

}  // namespace dglie
