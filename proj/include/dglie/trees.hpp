#pragma once

#include <memory>
#include <string>
#include <vector>

#include "dglie/common.hpp"

namespace dglie {

// Isomorphism class of a binary rooted tree, children unordered. The stored
// children are in canonical order (fewer leaves first, then key order), so a
// node doubles as the canonical planar presentation of its class.
struct Tree;
using TreePtr = std::shared_ptr<const Tree>;

struct Tree {
    TreePtr left;   // null for a leaf
    TreePtr right;  // null for a leaf
    int leaves = 1;
    long aut = 1;      // |Aut|: aut(L)*aut(R), doubled when L == R as classes
    std::string key;   // canonical form, "*" for a leaf

    bool is_leaf() const { return !left; }
};

TreePtr make_leaf();
TreePtr make_node(TreePtr a, TreePtr b);  // stores children canonically

// One representative per isomorphism class with k leaves, deterministic
// order. Memoized; safe for concurrent callers.
const std::vector<TreePtr>& enumerate_trees(int k);

long aut_order(const TreePtr& t);

}  // namespace dglie
