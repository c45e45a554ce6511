#include "dglie/lie.hpp"

#include "dglie/common.hpp"

namespace dglie {

LieElement lie_zero(int degree) { return LieElement{degree, {}}; }

void lie_add_scaled(LieElement& a, const Rat& c, const LieElement& b) {
    if (sgn(c) == 0 || b.is_zero()) return;
    if (a.is_zero()) a.degree = b.degree;
    if (a.degree != b.degree)
        throw DimensionError("adding inhomogeneous Lie elements");
    for (auto& [w, x] : b.terms) {
        Rat& slot = a.terms[w];
        slot += c * x;
        if (sgn(slot) == 0) a.terms.erase(w);
    }
}

LieElement lie_scale(const LieElement& a, const Rat& c) {
    LieElement out = lie_zero(a.degree);
    lie_add_scaled(out, c, a);
    return out;
}

LieElement lie_add(const LieElement& a, const LieElement& b) {
    LieElement out = a;
    lie_add_scaled(out, Rat(1), b);
    return out;
}

LieElement lie_sub(const LieElement& a, const LieElement& b) {
    LieElement out = a;
    lie_add_scaled(out, Rat(-1), b);
    return out;
}

bool lie_equal(const LieElement& a, const LieElement& b) {
    if (a.is_zero() && b.is_zero()) return true;
    return a.degree == b.degree && a.terms == b.terms;
}

}  // namespace dglie
