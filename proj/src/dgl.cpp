#include "dglie/dgl.hpp"

#include <algorithm>
#include <sstream>

#include "dglie/common.hpp"

namespace dglie {

bool vec_is_zero(const QVec& v) {
    for (auto& x : v)
        if (sgn(x) != 0) return false;
    return true;
}

QVec vec_add(const QVec& a, const QVec& b) {
    if (a.size() != b.size()) throw DimensionError("vec_add: length mismatch");
    QVec out = a;
    for (size_t i = 0; i < b.size(); ++i) out[i] += b[i];
    return out;
}

QVec vec_sub(const QVec& a, const QVec& b) {
    if (a.size() != b.size()) throw DimensionError("vec_sub: length mismatch");
    QVec out = a;
    for (size_t i = 0; i < b.size(); ++i) out[i] -= b[i];
    return out;
}

QVec vec_scale(const QVec& a, const Rat& c) {
    QVec out = a;
    for (auto& x : out) x *= c;
    return out;
}

FreeDGL::FreeDGL(std::vector<Generator> gens, std::vector<LieElement> diffs, int degree_cap)
    : gens_(std::move(gens)), diffs_(std::move(diffs)), cap_(degree_cap) {
    if (gens_.size() >= 250) throw Error("too many generators");
    if (diffs_.size() != gens_.size()) throw Error("differential table size mismatch");
    if (cap_ < 1) throw Error("degree cap must be positive");
    for (size_t i = 0; i < gens_.size(); ++i) {
        const auto& g = gens_[i];
        if (g.degree < 1) throw Error("generator '" + g.name + "' must have positive degree");
        if (g.degree > cap_) throw Error("degree cap below degree of generator '" + g.name + "'");
        if (!gen_index_.emplace(g.name, static_cast<int>(i)).second)
            throw Error("duplicate generator name '" + g.name + "'");
        const auto& df = diffs_[i];
        if (!df.is_zero() && df.degree != g.degree - 1)
            throw Error("differential of '" + g.name + "' does not lower degree by one");
    }
    for (auto& df : diffs_)
        for (auto& [w, c] : df.terms)
            (void)c, (void)word_degree(w);  // validates generator bytes
}

int FreeDGL::gen_index(const std::string& name) const {
    auto it = gen_index_.find(name);
    return it == gen_index_.end() ? -1 : it->second;
}

LieElement FreeDGL::gen_elem(int i) const {
    LieElement e;
    e.degree = gens_.at(i).degree;
    e.terms[Word(1, static_cast<char>(i))] = 1;
    return e;
}

int FreeDGL::word_degree(const Word& w) const {
    int d = 0;
    for (unsigned char b : w) d += gens_.at(b).degree;
    return d;
}

LieElement FreeDGL::prod(const LieElement& a, const LieElement& b) const {
    LieElement out = lie_zero(a.degree + b.degree);
    for (auto& [wa, ca] : a.terms)
        for (auto& [wb, cb] : b.terms) {
            Rat& slot = out.terms[wa + wb];
            slot += ca * cb;
            if (sgn(slot) == 0) out.terms.erase(wa + wb);
        }
    return out;
}

LieElement FreeDGL::bracket(const LieElement& a, const LieElement& b) const {
    if (a.is_zero() || b.is_zero()) return lie_zero(a.degree + b.degree);
    if (a.degree + b.degree > cap_)
        throw DegreeCapError("bracket of degrees " + std::to_string(a.degree) + "+" +
                             std::to_string(b.degree) + " exceeds degree cap " + std::to_string(cap_));
    LieElement out = prod(a, b);
    int sign = (a.degree * b.degree) % 2 == 0 ? 1 : -1;
    lie_add_scaled(out, Rat(-sign), prod(b, a));
    return out;
}

LieElement FreeDGL::d(const LieElement& a) const {
    LieElement out = lie_zero(a.degree - 1);
    for (auto& [w, c] : a.terms) {
        int prefix_deg = 0;
        for (size_t i = 0; i < w.size(); ++i) {
            int g = static_cast<unsigned char>(w[i]);
            const LieElement& dg = diffs_[g];
            if (!dg.is_zero()) {
                Rat sign = prefix_deg % 2 == 0 ? 1 : -1;
                for (auto& [dw, dc] : dg.terms) {
                    Word nw = w.substr(0, i) + dw + w.substr(i + 1);
                    Rat& slot = out.terms[nw];
                    slot += c * sign * dc;
                    if (sgn(slot) == 0) out.terms.erase(nw);
                }
            }
            prefix_deg += gens_[g].degree;
        }
    }
    return out;
}

FreeDGL::DsqReport FreeDGL::check_d_squared() const {
    DsqReport rep;
    for (size_t i = 0; i < gens_.size(); ++i) {
        if (gens_[i].degree < 2) continue;
        LieElement dd = d(diffs_[i]);
        if (!dd.is_zero()) {
            rep.ok = false;
            rep.failures.emplace_back(gens_[i].name, std::move(dd));
        }
    }
    return rep;
}

const std::vector<Word>& FreeDGL::words_locked(int n) const {
    auto it = words_.find(n);
    if (it != words_.end()) return it->second;
    for (int m = 0; m <= n; ++m) {
        if (words_.count(m)) continue;
        std::vector<Word> out;
        if (m == 0) {
            out.push_back(Word());
        } else {
            for (size_t g = 0; g < gens_.size(); ++g) {
                int dg = gens_[g].degree;
                if (dg > m) continue;
                for (const Word& rest : words_.at(m - dg))
                    out.push_back(Word(1, static_cast<char>(g)) + rest);
            }
        }
        auto& idx = word_index_[m];
        for (size_t i = 0; i < out.size(); ++i) idx[out[i]] = static_cast<int>(i);
        words_.emplace(m, std::move(out));
    }
    return words_.at(n);
}

const std::vector<Word>& FreeDGL::words(int n) const {
    if (n < 0) throw Error("words: negative degree");
    if (n > cap_) throw DegreeCapError("words beyond degree cap");
    std::lock_guard<std::mutex> lock(mu_);
    return words_locked(n);
}

int FreeDGL::word_index(int n, const Word& w) const {
    std::lock_guard<std::mutex> lock(mu_);
    words_locked(n);
    auto& idx = word_index_.at(n);
    auto it = idx.find(w);
    if (it == idx.end()) throw Error("word not in degree-" + std::to_string(n) + " space");
    return it->second;
}

LieElement FreeDGL::expand_monomial(const Word& seq) const {
    if (seq.empty()) throw Error("empty bracket monomial");
    if (seq.size() == 1) return gen_elem(static_cast<unsigned char>(seq[0]));
    return bracket(gen_elem(static_cast<unsigned char>(seq[0])), expand_monomial(seq.substr(1)));
}

const FreeDGL::Basis& FreeDGL::basis_locked(int n) const {
    auto it = basis_.find(n);
    if (it != basis_.end()) return it->second;
    Basis b;
    b.span = std::make_unique<SpanIndex>(true);
    if (n >= 1) {
        for (const Word& cand : words_locked(n)) {
            LieElement e = expand_monomial(cand);
            SVec v;
            auto& idx = word_index_.at(n);
            for (auto& [w, c] : e.terms) v.emplace_back(idx.at(w), c);
            std::sort(v.begin(), v.end(), [](auto& a, auto& bb) { return a.first < bb.first; });
            if (b.span->add(v) >= 0) {
                b.monos.push_back(cand);
                b.elems.push_back(std::move(e));
            }
        }
    }
    return basis_.emplace(n, std::move(b)).first->second;
}

const FreeDGL::Basis& FreeDGL::basis(int n) const {
    if (n > cap_) throw DegreeCapError("basis beyond degree cap");
    std::lock_guard<std::mutex> lock(mu_);
    return basis_locked(n);
}

int FreeDGL::dim(int n) const {
    if (n <= 0) return 0;
    return static_cast<int>(basis(n).monos.size());
}

QVec FreeDGL::coords_locked(const LieElement& e) const {
    const Basis& b = basis_locked(e.degree);
    if (e.is_zero()) return QVec(b.monos.size(), Rat(0));
    SVec v;
    auto& idx = word_index_.at(e.degree);
    for (auto& [w, c] : e.terms) v.emplace_back(idx.at(w), c);
    std::sort(v.begin(), v.end(), [](auto& a, auto& bb) { return a.first < bb.first; });
    auto combo = b.span->coords(v);
    if (!combo) throw Error("element is not in the free Lie subspace");
    return svec_dense(*combo, static_cast<int>(b.monos.size()));
}

QVec FreeDGL::coords(const LieElement& e) const {
    if (e.degree > cap_) throw DegreeCapError("coords beyond degree cap");
    std::lock_guard<std::mutex> lock(mu_);
    return coords_locked(e);
}

LieVec FreeDGL::vec(const LieElement& e) const { return LieVec{e.degree, coords(e)}; }

LieElement FreeDGL::element(const LieVec& v) const {
    const Basis& b = basis(v.degree);
    if (v.c.size() != b.elems.size()) throw DimensionError("element: coordinate length mismatch");
    LieElement out = lie_zero(v.degree);
    for (size_t i = 0; i < v.c.size(); ++i) lie_add_scaled(out, v.c[i], b.elems[i]);
    return out;
}

const QMat& FreeDGL::dmat_locked(int n) const {
    auto it = dmat_.find(n);
    if (it != dmat_.end()) return it->second;
    const Basis& bn = basis_locked(n);
    const Basis& bprev = basis_locked(n - 1);
    QMat m(static_cast<int>(bprev.monos.size()), static_cast<int>(bn.monos.size()));
    for (size_t j = 0; j < bn.elems.size(); ++j) {
        LieElement de = d(bn.elems[j]);
        de.degree = n - 1;
        m.cols[j] = coords_locked(de);
    }
    return dmat_.emplace(n, std::move(m)).first->second;
}

const QMat& FreeDGL::dmat(int n) const {
    if (n < 1 || n > cap_) throw DegreeCapError("differential matrix outside degree range");
    std::lock_guard<std::mutex> lock(mu_);
    return dmat_locked(n);
}

LieVec FreeDGL::d_vec(const LieVec& v) const {
    return LieVec{v.degree - 1, mat_apply(dmat(v.degree), v.c)};
}

const LUSolver& FreeDGL::dsolver(int n) const {
    dmat(n);
    std::lock_guard<std::mutex> lock(mu_);
    auto it = dsolver_.find(n);
    if (it != dsolver_.end()) return *it->second;
    auto solver = std::make_shared<LUSolver>(dmat_.at(n));
    return *dsolver_.emplace(n, std::move(solver)).first->second;
}

const QVec& FreeDGL::sc_locked(int m, int i, int n, int j) const {
    uint64_t key = (static_cast<uint64_t>(m) << 48) | (static_cast<uint64_t>(i) << 32) |
                   (static_cast<uint64_t>(n) << 16) | static_cast<uint64_t>(j);
    auto it = sc_.find(key);
    if (it != sc_.end()) return it->second;
    if (std::make_pair(m, i) > std::make_pair(n, j)) {
        const QVec& sw = sc_locked(n, j, m, i);
        int sign = (m * n) % 2 == 0 ? -1 : 1;  // [a,b] = -(-1)^{mn} [b,a]
        return sc_.emplace(key, vec_scale(sw, Rat(sign))).first->second;
    }
    const Basis& bm = basis_locked(m);
    const Basis& bn = basis_locked(n);
    LieElement br = bracket(bm.elems.at(i), bn.elems.at(j));
    br.degree = m + n;
    return sc_.emplace(key, coords_locked(br)).first->second;
}

LieVec FreeDGL::bracket_vec(const LieVec& a, const LieVec& b) const {
    int n = a.degree + b.degree;
    if (n > cap_) throw DegreeCapError("bracket_vec exceeds degree cap");
    std::lock_guard<std::mutex> lock(mu_);
    const Basis& target = basis_locked(n);
    QVec out(target.monos.size(), Rat(0));
    for (size_t i = 0; i < a.c.size(); ++i) {
        if (sgn(a.c[i]) == 0) continue;
        for (size_t j = 0; j < b.c.size(); ++j) {
            if (sgn(b.c[j]) == 0) continue;
            const QVec& sc = sc_locked(a.degree, static_cast<int>(i), b.degree, static_cast<int>(j));
            Rat f = a.c[i] * b.c[j];
            for (size_t t = 0; t < out.size(); ++t)
                if (sgn(sc[t]) != 0) out[t] += f * sc[t];
        }
    }
    return LieVec{n, std::move(out)};
}

const std::vector<QVec>& FreeDGL::boundary_rref(int n) const {
    if (n < 1 || n > cap_ - 1) throw DegreeCapError("boundary space outside valid range");
    std::lock_guard<std::mutex> lock(mu_);
    auto it = boundary_.find(n);
    if (it != boundary_.end()) return it->second;
    SpanIndex span;
    int dn = static_cast<int>(basis_locked(n).monos.size());
    if (n + 1 <= cap_ - 1) {
        const QMat& m = dmat_locked(n + 1);
        for (auto& col : m.cols) span.add(svec_from(col));
    } else {
        // Degree-cap boundary: run over monomial candidates of degree cap
        // without building basis(cap).
        for (const Word& cand : words_locked(n + 1)) {
            LieElement de = d(expand_monomial(cand));
            de.degree = n;
            if (de.is_zero()) continue;
            span.add(svec_from(coords_locked(de)));
        }
    }
    std::vector<QVec> rows;
    for (auto& r : span.rows()) rows.push_back(svec_dense(r, dn));
    return boundary_.emplace(n, std::move(rows)).first->second;
}

const FreeDGL::HomologyData& FreeDGL::homology(int n) const {
    if (n < 1 || n > cap_ - 1)
        throw DegreeCapError("homology at degree " + std::to_string(n) +
                             " needs boundaries from degree " + std::to_string(n + 1) +
                             "; degree cap " + std::to_string(cap_) + " is insufficient");
    boundary_rref(n);  // materialize outside our lock (takes the same mutex)
    dmat(n);
    std::lock_guard<std::mutex> lock(mu_);
    auto it = homology_.find(n);
    if (it != homology_.end()) return it->second;
    HomologyData h;
    const auto& B = boundary_.at(n);
    h.bdim = static_cast<int>(B.size());
    std::vector<QVec> Z = kernel_basis(dmat_.at(n));
    SpanIndex idx;
    for (auto& b : B) idx.add(svec_from(b));
    for (auto& z : Z)
        if (idx.add(svec_from(z)) >= 0) h.reps.push_back(z);
    h.hdim = static_cast<int>(h.reps.size());
    int dn = static_cast<int>(basis_.at(n).monos.size());
    h.bc = QMat(dn, h.bdim + h.hdim);
    for (int j = 0; j < h.bdim; ++j) h.bc.cols[j] = B[j];
    for (int j = 0; j < h.hdim; ++j) h.bc.cols[h.bdim + j] = h.reps[j];
    h.bc_solver = std::make_shared<LUSolver>(h.bc);
    return homology_.emplace(n, std::move(h)).first->second;
}

HVec FreeDGL::class_of(const LieVec& cycle) const {
    const HomologyData& h = homology(cycle.degree);
    if (!vec_is_zero(d_vec(cycle).c)) throw Error("class_of: element is not a cycle");
    auto x = h.bc_solver->solve(cycle.c);
    if (!x) throw Error("class_of: cycle outside boundary+representative span");
    QVec out(h.hdim, Rat(0));
    for (int j = 0; j < h.hdim; ++j) out[j] = (*x)[h.bdim + j];
    return HVec{cycle.degree, std::move(out)};
}

LieVec FreeDGL::rep_of(const HVec& hv) const {
    const HomologyData& h = homology(hv.degree);
    if (static_cast<int>(hv.c.size()) != h.hdim) throw DimensionError("rep_of: class length mismatch");
    QVec out(dim(hv.degree), Rat(0));
    for (int j = 0; j < h.hdim; ++j)
        if (sgn(hv.c[j]) != 0) out = vec_add(out, vec_scale(h.reps[j], hv.c[j]));
    return LieVec{hv.degree, std::move(out)};
}

std::string FreeDGL::mono_string(const Word& seq) const {
    if (seq.size() == 1) return gens_[static_cast<unsigned char>(seq[0])].name;
    return "[" + gens_[static_cast<unsigned char>(seq[0])].name + "," +
           mono_string(seq.substr(1)) + "]";
}

std::string FreeDGL::print(const LieVec& v) const {
    const Basis& b = basis(v.degree);
    std::ostringstream os;
    bool first = true;
    for (size_t i = 0; i < v.c.size(); ++i) {
        if (sgn(v.c[i]) == 0) continue;
        Rat c = v.c[i];
        if (first) {
            if (sgn(c) < 0) os << "-";
        } else {
            os << (sgn(c) < 0 ? " - " : " + ");
        }
        Rat a = abs(c);
        if (a != 1) os << rat_str(a) << "*";
        os << mono_string(b.monos[i]);
        first = false;
    }
    if (first) os << "0";
    return os.str();
}

std::string FreeDGL::print(const LieElement& e) const {
    if (e.is_zero()) return "0";
    if (e.degree <= cap_) {
        try {
            return print(vec(e));
        } catch (const Error&) {
        }
    }
    // tensor fallback
    std::ostringstream os;
    bool first = true;
    for (auto& [w, c] : e.terms) {
        if (!first) os << " + ";
        os << rat_str(c) << "*(";
        for (size_t i = 0; i < w.size(); ++i) {
            if (i) os << ".";
            os << gens_[static_cast<unsigned char>(w[i])].name;
        }
        os << ")";
        first = false;
    }
    return os.str();
}

LieElement random_element(const FreeDGL& L, int degree, const std::function<long()>& draw) {
    const auto& ws = L.words(degree);
    LieElement out = lie_zero(degree);
    if (ws.empty()) return out;
    int picks = 1 + static_cast<int>(std::llabs(draw()) % 3);
    for (int t = 0; t < picks; ++t) {
        const Word& w = ws[static_cast<size_t>(std::llabs(draw()) % ws.size())];
        long c = (draw() % 7) - 3;
        if (c == 0) c = 1;
        lie_add_scaled(out, Rat(c), L.expand_monomial(w));
    }
    return out;
}

}  // namespace dglie
