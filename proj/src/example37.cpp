#include "dglie/example37.hpp"

#include "dglie/common.hpp"
#include "dglie/parser.hpp"

namespace dglie::example37 {

bool fixture_matches(const FreeDGL& L) {
    static const char* names[] = {"v1", "v2", "v3", "v4", "v12", "v13", "v14", "v23",
                                  "v24", "v34", "z", "w123", "w124", "v134", "v234"};
    for (const char* n : names)
        if (L.gen_index(n) < 0) return false;
    return true;
}

Retract printed_table_retract(const FreeDGL& L) {
    if (!fixture_matches(L)) throw Error("the fixture does not carry the expected generator names");
    std::map<int, std::vector<LieElement>> A;
    for (auto& s : kTableA5) A[5].push_back(eval_expr_str(s, L));
    for (auto& s : kTableA7) A[7].push_back(eval_expr_str(s, L));
    for (auto& s : kTableA8) A[8].push_back(eval_expr_str(s, L));
    return Retract::from_decomposition(L, A);
}

Extension printed_extension(const WedgeModel& W, const FreeDGL& L) {
    if (W.k != 4) throw Error("printed extension expects the 4-sphere wedge model");
    Extension ext;
    ext.W = &W;
    ext.L = &L;
    for (auto& [S, gi] : W.gen_of) {
        auto it = kPhi.find(subset_name(S));
        if (it == kPhi.end()) throw Error("missing phi assignment for " + subset_name(S));
        ext.phi[S] = L.vec(eval_expr_str(it->second, L));
    }
    std::string why;
    if (!ext.verify_chain_map(&why)) throw Error("printed phi is not a chain map: " + why);
    return ext;
}

}  // namespace dglie::example37
