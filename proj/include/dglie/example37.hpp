#pragma once

#include <map>
#include <string>
#include <vector>

#include "dglie/retract.hpp"
#include "dglie/whitehead.hpp"

namespace dglie::example37 {

// Inputs transcribed from the published example: the explicit decomposition
// table (A-columns in degrees 5, 7, 8; other degrees are forced or filled
// greedily), the extension phi on the wedge-model generators, and the printed
// value of phi(omega). These are inputs to be verified, not assumptions: the
// verify command recomputes everything and reports any disagreement.

inline const std::vector<std::string> kTableA5 = {"v12", "v13", "v14", "v23", "v24", "v34"};

inline const std::vector<std::string> kTableA7 = {
    "[v1,v12]", "[v1,v13]", "[v1,v14]", "[v2,v12]", "[v2,v23]", "[v2,v24]",
    "[v3,v13]", "[v3,v23]", "[v3,v34]", "[v4,v14]", "[v4,v24]", "[v4,v34]",
    "[v1,v23]", "[v2,v13]", "[v1,v24]", "[v2,v14]", "[v1,v34]", "[v3,v14]",
    "[v2,v34]", "[v3,v24]"};

inline const std::vector<std::string> kTableA8 = {"w123", "w124", "v134", "v234"};

// phi: u_i -> v_i, u_12 -> v12 + z, other pairs to the matching v, triples to
// the w/v generators.
inline const std::map<std::string, std::string> kPhi = {
    {"u1", "v1"},         {"u2", "v2"},         {"u3", "v3"},       {"u4", "v4"},
    {"u12", "v12 + z"},   {"u13", "v13"},       {"u14", "v14"},     {"u23", "v23"},
    {"u24", "v24"},       {"u34", "v34"},       {"u123", "w123"},   {"u124", "w124"},
    {"u134", "v134"},     {"u234", "v234"}};

// The printed value of phi(omega), kept as separate signed monomials so the
// comparison can be reported term by term.
inline const std::vector<std::string> kPrintedPhiTerms = {
    "[w123,v4]", "-[w124,v3]", "[v12,v34]", "[z,v34]",
    "[v14,v23]", "[v1,v234]",  "-[v13,v24]", "[v134,v2]"};

// Names the example's generators must carry for the canned data to apply.
bool fixture_matches(const FreeDGL& L);

Retract printed_table_retract(const FreeDGL& L);
Extension printed_extension(const WedgeModel& W, const FreeDGL& L);

}  // namespace dglie::example37
