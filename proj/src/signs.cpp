#include "dglie/signs.hpp"

#include <algorithm>
#include <numeric>

namespace dglie {

int signature(const Perm& p) {
    int inv = 0;
    int n = static_cast<int>(p.size());
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            if (p[a] > p[b]) ++inv;
    return inv % 2 == 0 ? 1 : -1;
}

int koszul_sign(const Perm& p, const std::vector<int>& degrees) {
    int n = static_cast<int>(p.size());
    if (static_cast<int>(degrees.size()) != n)
        throw DimensionError("koszul_sign: degree list length mismatch");
    int e = 0;
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            if (p[a] > p[b]) e += degrees[p[a]] * degrees[p[b]];
    return e % 2 == 0 ? 1 : -1;
}

int signed_koszul(const Perm& p, const std::vector<int>& degrees) {
    return signature(p) * koszul_sign(p, degrees);
}

std::vector<Perm> all_perms(int n) {
    Perm p(n);
    std::iota(p.begin(), p.end(), 0);
    std::vector<Perm> out;
    do {
        out.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    return out;
}

namespace {

void combinations(int n, int k, int start, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
    if (static_cast<int>(cur.size()) == k) {
        out.push_back(cur);
        return;
    }
    for (int i = start; i <= n - (k - static_cast<int>(cur.size())); ++i) {
        cur.push_back(i);
        combinations(n, k, i + 1, cur, out);
        cur.pop_back();
    }
}

}  // namespace

std::vector<Perm> shuffles(int p, int q) {
    if (p < 0 || q < 0) throw Error("shuffles: negative block size");
    int n = p + q;
    std::vector<std::vector<int>> firsts;
    std::vector<int> cur;
    combinations(n, p, 0, cur, firsts);
    std::vector<Perm> out;
    out.reserve(firsts.size());
    for (auto& f : firsts) {
        Perm s;
        s.reserve(n);
        std::vector<bool> used(n, false);
        for (int i : f) {
            s.push_back(i);
            used[i] = true;
        }
        for (int i = 0; i < n; ++i)
            if (!used[i]) s.push_back(i);
        out.push_back(std::move(s));
    }
    return out;
}

std::vector<Perm> anchored_shuffles(int p, int q) {
    if (p < 1) throw Error("anchored_shuffles: first block must be nonempty");
    std::vector<Perm> out;
    for (auto& s : shuffles(p, q))
        if (s[0] == 0) out.push_back(s);
    return out;
}

}  // namespace dglie
