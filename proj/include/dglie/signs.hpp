#pragma once

#include <vector>

#include "dglie/common.hpp"

namespace dglie {

// Permutation of {0..n-1} as an image list: position a carries sigma[a].
// A term "x_{sigma(1)} ... x_{sigma(n)}" uses args[sigma[0]], args[sigma[1]], ...
using Perm = std::vector<int>;

int signature(const Perm& p);

// Koszul sign of rearranging graded symbols x_1..x_n of the given degrees
// into x_{sigma(1)}..x_{sigma(n)}: product over inverted pairs (a < b,
// sigma[a] > sigma[b]) of (-1)^{deg[sigma[a]] * deg[sigma[b]]}.
int koszul_sign(const Perm& p, const std::vector<int>& degrees);

// signature * koszul_sign: the sign of skew-graded symmetrization.
int signed_koszul(const Perm& p, const std::vector<int>& degrees);

std::vector<Perm> all_perms(int n);

// (p,q)-shuffles: sigma with sigma(1)<...<sigma(p) and sigma(p+1)<...<sigma(p+q),
// enumerated by the ascending first block. Count C(p+q, p).
std::vector<Perm> shuffles(int p, int q);

// Shuffles with sigma(1) = 1 (the fat-wedge differential sum). Count C(p+q-1, p-1).
std::vector<Perm> anchored_shuffles(int p, int q);

}  // namespace dglie
