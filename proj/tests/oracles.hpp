#pragma once

// Test-side oracles, kept independent of the tree-formula implementation.

#include "dglie/retract.hpp"

namespace dglie::oracles {

// ell_2(x, y) = class of [i x, i y].
inline HVec ell2(const Retract& r, const HVec& x, const HVec& y) {
    const FreeDGL& L = r.algebra();
    return L.class_of(L.bracket_vec(r.include(x), r.include(y)));
}

// Three-term unshuffle formula:
//   ell_3(x1,x2,x3) = q( -[K[ix1,ix2],ix3] + (-1)^{d2 d3}[K[ix1,ix3],ix2]
//                        - (-1)^{d1(d2+d3)}[K[ix2,ix3],ix1] ).
inline HVec ell3(const Retract& r, const HVec& x1, const HVec& x2, const HVec& x3) {
    const FreeDGL& L = r.algebra();
    auto term = [&](const HVec& a, const HVec& b, const HVec& c) {
        return L.bracket_vec(r.homotopy(L.bracket_vec(r.include(a), r.include(b))), r.include(c));
    };
    int d1 = x1.degree, d2 = x2.degree, d3 = x3.degree;
    LieVec t1 = term(x1, x2, x3);
    LieVec acc{t1.degree, vec_scale(t1.c, Rat(-1))};
    acc.c = vec_add(acc.c, vec_scale(term(x1, x3, x2).c, Rat((d2 * d3) % 2 ? -1 : 1)));
    acc.c = vec_add(acc.c, vec_scale(term(x2, x3, x1).c, Rat((d1 * (d2 + d3)) % 2 ? 1 : -1)));
    return r.project(acc);
}

inline std::vector<HVec> all_classes(const FreeDGL& L) {
    std::vector<HVec> out;
    for (int n = 1; n <= L.cap() - 1; ++n)
        for (int i = 0; i < L.homology(n).hdim; ++i) {
            QVec c(L.homology(n).hdim, Rat(0));
            c[i] = 1;
            out.push_back(HVec{n, std::move(c)});
        }
    return out;
}

}  // namespace dglie::oracles
