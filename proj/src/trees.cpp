#include "dglie/trees.hpp"

#include <map>
#include <mutex>
#include <tuple>

namespace dglie {

namespace {

bool tree_less(const TreePtr& a, const TreePtr& b) {
    return std::make_pair(a->leaves, a->key) < std::make_pair(b->leaves, b->key);
}

}  // namespace

TreePtr make_leaf() {
    static TreePtr leaf = [] {
        auto t = std::make_shared<Tree>();
        t->leaves = 1;
        t->aut = 1;
        t->key = "*";
        return t;
    }();
    return leaf;
}

TreePtr make_node(TreePtr a, TreePtr b) {
    if (tree_less(b, a)) std::swap(a, b);
    auto t = std::make_shared<Tree>();
    t->left = a;
    t->right = b;
    t->leaves = a->leaves + b->leaves;
    t->aut = a->aut * b->aut * (a->key == b->key ? 2 : 1);
    t->key = "(" + a->key + b->key + ")";
    return t;
}

const std::vector<TreePtr>& enumerate_trees(int k) {
    if (k < 1) throw Error("enumerate_trees: need at least one leaf");
    static std::mutex mu;
    static std::map<int, std::vector<TreePtr>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(k);
    if (it != cache.end()) return it->second;
    // Fill the cache bottom-up so recursion stays within the lock.
    for (int m = 1; m <= k; ++m) {
        if (cache.count(m)) continue;
        std::vector<TreePtr> out;
        if (m == 1) {
            out.push_back(make_leaf());
        } else {
            for (int p = 1; 2 * p <= m; ++p) {
                const auto& fs = cache.at(p);
                const auto& gs = cache.at(m - p);
                for (size_t i = 0; i < fs.size(); ++i) {
                    size_t j0 = (2 * p == m) ? i : 0;
                    for (size_t j = j0; j < gs.size(); ++j) out.push_back(make_node(fs[i], gs[j]));
                }
            }
        }
        cache.emplace(m, std::move(out));
    }
    return cache.at(k);
}

long aut_order(const TreePtr& t) { return t->aut; }

}  // namespace dglie
