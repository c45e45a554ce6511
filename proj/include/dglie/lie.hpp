#pragma once

#include <map>
#include <string>

#include "dglie/rational.hpp"

namespace dglie {

// Tensor word: byte string of generator indices.
using Word = std::string;

// Homogeneous element of the free graded Lie algebra realized inside the
// tensor algebra: exact rational combination of tensor words, all of the same
// total degree. Canonical form: words sorted (map order), no zero terms.
struct LieElement {
    int degree = 0;
    std::map<Word, Rat> terms;

    bool is_zero() const { return terms.empty(); }
};

LieElement lie_zero(int degree);
void lie_add_scaled(LieElement& a, const Rat& c, const LieElement& b);
LieElement lie_scale(const LieElement& a, const Rat& c);
LieElement lie_add(const LieElement& a, const LieElement& b);
LieElement lie_sub(const LieElement& a, const LieElement& b);
bool lie_equal(const LieElement& a, const LieElement& b);

}  // namespace dglie
