#include "dglie/transfer.hpp"

#include <algorithm>
#include <sstream>

#include "dglie/common.hpp"
#include "dglie/signs.hpp"

namespace dglie {

int epsilon_sign(const std::vector<int>& degrees) {
    int k = static_cast<int>(degrees.size());
    long e = 0;
    for (int i = 0; i < k; ++i) e += static_cast<long>(k - 1 - i) * degrees[i];
    return e % 2 == 0 ? 1 : -1;
}

namespace {

LieVec eval_rec(const TreePtr& t, const Retract& r, const std::vector<HVec>& args, int lo) {
    const FreeDGL& L = r.algebra();
    if (t->is_leaf()) return r.include(args[lo]);
    LieVec a = eval_rec(t->left, r, args, lo);
    if (!t->left->is_leaf()) a = r.homotopy(a);
    LieVec b = eval_rec(t->right, r, args, lo + t->left->leaves);
    if (!t->right->is_leaf()) b = r.homotopy(b);
    LieVec out = L.bracket_vec(a, b);
    if (a.degree % 2 != 0)
        for (auto& c : out.c) c = -c;
    return out;
}

std::vector<int> degrees_of(const std::vector<HVec>& args) {
    std::vector<int> d;
    d.reserve(args.size());
    for (auto& a : args) d.push_back(a.degree);
    return d;
}

}  // namespace

LieVec tree_evaluate(const TreePtr& t, const Retract& r, const std::vector<HVec>& args) {
    if (static_cast<int>(args.size()) != t->leaves)
        throw DimensionError("tree_evaluate: argument count does not match leaves");
    LieVec v = eval_rec(t, r, args, 0);
    if (epsilon_sign(degrees_of(args)) < 0)
        for (auto& c : v.c) c = -c;
    return v;
}

LieVec symmetrized_tree(const TreePtr& t, const Retract& r, const std::vector<HVec>& args) {
    std::vector<int> degs = degrees_of(args);
    int k = static_cast<int>(args.size());
    LieVec acc;
    bool started = false;
    for (const Perm& s : all_perms(k)) {
        std::vector<HVec> permuted(k);
        for (int i = 0; i < k; ++i) permuted[i] = args[s[i]];
        LieVec term = tree_evaluate(t, r, permuted);
        int sign = signed_koszul(s, degs);
        if (!started) {
            acc = LieVec{term.degree, QVec(term.c.size(), Rat(0))};
            started = true;
        }
        if (sign > 0)
            acc.c = vec_add(acc.c, term.c);
        else
            acc.c = vec_sub(acc.c, term.c);
    }
    return acc;
}

HVec ell(int k, const Retract& r, const std::vector<HVec>& args, const TreeWeights* weights) {
    if (k < 2) throw Error("ell: arity must be at least 2");
    if (static_cast<int>(args.size()) != k) throw DimensionError("ell: argument count mismatch");
    std::vector<int> degs = degrees_of(args);
    int target = 0;
    for (int d : degs) target += d;
    target += k - 2;
    LieVec acc{target, QVec(r.algebra().dim(target), Rat(0))};
    for (const TreePtr& t : enumerate_trees(k)) {
        LieVec sym;
        try {
            sym = symmetrized_tree(t, r, args);
        } catch (const DegreeCapError& e) {
            throw DegreeCapError(std::string(e.what()) + " (tree " + t->key + ")");
        }
        Rat w = rat_of(1, t->aut);
        if (weights) {
            auto it = weights->find(t->key);
            if (it != weights->end()) w = it->second;
        }
        if (sym.degree != target) throw Error("tree term of unexpected degree");
        acc.c = vec_add(acc.c, vec_scale(sym.c, w));
    }
    HVec out = r.project(acc);
    if (out.degree != target) throw Error("ell: degree bookkeeping failure");
    return out;
}

LInftyTable LInftyTable::build(const Retract& r, int max_arity, const TreeWeights* weights) {
    LInftyTable t;
    t.r_ = &r;
    t.max_arity_ = max_arity;
    const FreeDGL& L = r.algebra();
    for (int n = 1; n <= L.cap() - 1; ++n) {
        int hd = L.homology(n).hdim;
        for (int i = 0; i < hd; ++i) t.hbasis_.push_back(HIdx{n, i});
    }
    for (int k = 2; k <= max_arity; ++k) {
        auto& list = t.entries_[k];
        auto& idx = t.index_[k];
        std::vector<HIdx> tuple;
        // enumerate non-decreasing tuples with degree pruning
        std::function<void(size_t, int)> rec = [&](size_t start, int degsum) {
            if (static_cast<int>(tuple.size()) == k) {
                int target = degsum + k - 2;
                if (target > L.cap() - 1) return;  // pruned below anyway
                Entry e;
                e.tuple = tuple;
                std::vector<HVec> args;
                for (auto& h : tuple) {
                    QVec c(L.homology(h.degree).hdim, Rat(0));
                    c[h.index] = 1;
                    args.push_back(HVec{h.degree, std::move(c)});
                }
                try {
                    e.value = ell(k, r, args, weights);
                } catch (const DegreeCapError&) {
                    e.value = std::nullopt;
                }
                idx[e.tuple] = e.value;
                list.push_back(std::move(e));
                return;
            }
            int remaining = k - static_cast<int>(tuple.size());
            for (size_t j = start; j < t.hbasis_.size(); ++j) {
                int d = t.hbasis_[j].degree;
                if (degsum + remaining * d + k - 2 > L.cap() - 1) break;  // degrees ascend
                tuple.push_back(t.hbasis_[j]);
                rec(j, degsum + d);
                tuple.pop_back();
            }
        };
        rec(0, 0);
    }
    return t;
}

std::optional<HVec> LInftyTable::stored(int k, const std::vector<HIdx>& tuple) const {
    auto kit = index_.find(k);
    if (kit == index_.end()) throw Error("table does not cover arity " + std::to_string(k));
    auto it = kit->second.find(tuple);
    if (it == kit->second.end()) {
        // outside the enumerated (pruned) region: out of cap
        return std::nullopt;
    }
    return it->second;
}

HVec LInftyTable::lookup(int k, const std::vector<HIdx>& tuple) const {
    const FreeDGL& L = r_->algebra();
    std::vector<HIdx> sorted = tuple;
    int sign = 1;
    // bubble sort, tracking the skew-graded swap sign
    for (size_t i = 0; i + 1 < sorted.size(); ++i)
        for (size_t j = 0; j + 1 < sorted.size() - i; ++j)
            if (sorted[j + 1] < sorted[j]) {
                int p = sorted[j].degree, q = sorted[j + 1].degree;
                sign *= ((p * q) % 2 == 0) ? -1 : 1;  // -(-1)^{pq}
                std::swap(sorted[j], sorted[j + 1]);
            }
    int target = k - 2;
    for (auto& h : sorted) target += h.degree;
    // repeated even-degree argument forces zero
    for (size_t i = 0; i + 1 < sorted.size(); ++i)
        if (sorted[i] == sorted[i + 1] && sorted[i].degree % 2 == 0) {
            if (target > L.cap() - 1)
                throw Error("lookup at arity " + std::to_string(k) + " lands beyond the cap");
            return HVec{target, QVec(L.homology(target).hdim, Rat(0))};
        }
    auto v = stored(k, sorted);
    if (!v) throw Error("lookup at arity " + std::to_string(k) + " is out of cap");
    HVec out = *v;
    if (sign < 0)
        for (auto& c : out.c) c = -c;
    return out;
}

bool LInftyTable::known(int k, const std::vector<HIdx>& tuple) const {
    std::vector<HIdx> sorted = tuple;
    std::sort(sorted.begin(), sorted.end());
    int target = k - 2;
    for (auto& h : sorted) target += h.degree;
    for (size_t i = 0; i + 1 < sorted.size(); ++i)
        if (sorted[i] == sorted[i + 1] && sorted[i].degree % 2 == 0)
            return target <= r_->algebra().cap() - 1;
    auto kit = index_.find(k);
    if (kit == index_.end()) return false;
    auto it = kit->second.find(sorted);
    return it != kit->second.end() && it->second.has_value();
}

HVec LInftyTable::eval(int k, const std::vector<HVec>& args) const {
    const FreeDGL& L = r_->algebra();
    int target = k - 2;
    for (auto& a : args) target += a.degree;
    HVec acc{target, QVec(target <= L.cap() - 1 ? L.homology(target).hdim : 0, Rat(0))};
    std::vector<HIdx> tuple(k);
    std::function<void(int, Rat)> rec = [&](int pos, Rat coeff) {
        if (pos == k) {
            HVec v = lookup(k, tuple);
            acc.c = vec_add(acc.c, vec_scale(v.c, coeff));
            return;
        }
        const HVec& a = args[pos];
        for (int m = 0; m < static_cast<int>(a.c.size()); ++m) {
            if (sgn(a.c[m]) == 0) continue;
            tuple[pos] = HIdx{a.degree, m};
            rec(pos + 1, coeff * a.c[m]);
        }
    };
    rec(0, Rat(1));
    return acc;
}

bool LInftyTable::arity_vanishes(int k) const {
    auto kit = entries_.find(k);
    if (kit == entries_.end()) throw Error("table does not cover arity " + std::to_string(k));
    for (auto& e : kit->second)
        if (e.value && !vec_is_zero(e.value->c)) return false;
    return true;
}

int LInftyTable::tuples_known(int k) const {
    auto kit = entries_.find(k);
    if (kit == entries_.end()) return 0;
    int c = 0;
    for (auto& e : kit->second)
        if (e.value) ++c;
    return c;
}

int LInftyTable::tuples_unknown(int k) const {
    auto kit = entries_.find(k);
    if (kit == entries_.end()) return 0;
    int c = 0;
    for (auto& e : kit->second)
        if (!e.value) ++c;
    return c;
}

const std::vector<LInftyTable::Entry>& LInftyTable::entries(int k) const {
    auto kit = entries_.find(k);
    if (kit == entries_.end()) throw Error("table does not cover arity " + std::to_string(k));
    return kit->second;
}

ImageSpan bracket_image_span(const LInftyTable& table, int j, int degree) {
    if (j < 2 || j > table.max_arity())
        throw Error("bracket_image_span: arity " + std::to_string(j) + " not in table");
    ImageSpan span;
    SpanIndex idx;
    for (auto& e : table.entries(j)) {
        int target = j - 2;
        for (auto& h : e.tuple) target += h.degree;
        if (target != degree) continue;
        if (!e.value)
            throw Error("bracket_image_span: tuple out of cap at arity " + std::to_string(j) +
                        ", degree " + std::to_string(degree));
        if (vec_is_zero(e.value->c)) continue;
        span.generators.push_back(*e.value);
        span.tuples.push_back(e.tuple);
        idx.add(svec_from(e.value->c));
    }
    int hd = table.retract().algebra().homology(degree).hdim;
    for (auto& r : idx.rows()) span.rref.push_back(svec_dense(r, hd));
    return span;
}

JacobiReport verify_generalized_jacobi(const LInftyTable& table, int n) {
    JacobiReport rep;
    const FreeDGL& L = table.retract().algebra();
    if (n < 3) return rep;
    if (n - 1 > table.max_arity())
        throw Error("generalized Jacobi with " + std::to_string(n) +
                    " inputs needs table arity " + std::to_string(n - 1));
    const auto& basis = table.hbasis();
    std::vector<HIdx> tuple;
    std::function<void(size_t, int)> rec = [&](size_t start, int degsum) {
        if (static_cast<int>(tuple.size()) == n) {
            int target = degsum + n - 3;
            if (target > L.cap() - 1) return;
            std::vector<int> degs;
            for (auto& h : tuple) degs.push_back(h.degree);
            HVec acc{target, QVec(L.homology(target).hdim, Rat(0))};
            bool covered = true;
            for (int i = 2; i <= n - 1 && covered; ++i) {
                int outer = n - i + 1;
                int sgn_ij = ((i * (n - i)) % 2 == 0) ? 1 : -1;
                for (const Perm& s : shuffles(i, n - i)) {
                    int chi = signed_koszul(s, degs);
                    std::vector<HIdx> inner_tuple;
                    for (int p = 0; p < i; ++p) inner_tuple.push_back(tuple[s[p]]);
                    if (!table.known(i, inner_tuple)) {
                        covered = false;
                        break;
                    }
                    HVec inner = table.lookup(i, inner_tuple);
                    // expand the inner class over the basis of its degree
                    for (int m = 0; m < static_cast<int>(inner.c.size()); ++m) {
                        if (sgn(inner.c[m]) == 0) continue;
                        std::vector<HIdx> outer_tuple{HIdx{inner.degree, m}};
                        for (int p = i; p < n; ++p) outer_tuple.push_back(tuple[s[p]]);
                        if (!table.known(outer, outer_tuple)) {
                            covered = false;
                            break;
                        }
                        HVec v = table.lookup(outer, outer_tuple);
                        Rat coeff = inner.c[m] * Rat(chi * sgn_ij);
                        acc.c = vec_add(acc.c, vec_scale(v.c, coeff));
                    }
                    if (!covered) break;
                }
            }
            if (!covered) {
                ++rep.tuples_skipped;
                return;
            }
            ++rep.tuples_checked;
            if (!vec_is_zero(acc.c) && rep.ok) {
                rep.ok = false;
                std::ostringstream os;
                os << "violation on tuple (";
                for (size_t i = 0; i < tuple.size(); ++i)
                    os << (i ? "," : "") << "H" << tuple[i].degree << "[" << tuple[i].index << "]";
                os << ")";
                rep.first_violation = os.str();
            }
            return;
        }
        int remaining = n - static_cast<int>(tuple.size());
        for (size_t j = start; j < basis.size(); ++j) {
            int d = basis[j].degree;
            if (degsum + remaining * d + n - 3 > L.cap() - 1) break;
            tuple.push_back(basis[j]);
            rec(j, degsum + d);
            tuple.pop_back();
        }
    };
    rec(0, 0);
    return rep;
}

std::string hclass_string(const FreeDGL& L, const HVec& h) {
    if (vec_is_zero(h.c)) return "0";
    return "[" + L.print(L.rep_of(h)) + "]";
}

}  // namespace dglie
