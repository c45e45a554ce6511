#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

#include "dglie/common.hpp"

namespace dglie {

// Exact rational scalar. mpq_class keeps values canonical (lowest terms,
// positive denominator, zero as 0/1) as long as arithmetic goes through its
// operators; raw set_str needs an explicit canonicalize.
using Rat = mpq_class;

inline std::string rat_str(const Rat& r) { return r.get_str(); }

inline Rat rat_of(long num, long den = 1) {
    if (den == 0) throw Error("rational with zero denominator");
    Rat r(num, den);
    r.canonicalize();
    return r;
}

// Parses "p", "-p" or "p/q" with arbitrary-precision integers.
Rat rat_parse(const std::string& s);

using QVec = std::vector<Rat>;

}  // namespace dglie
