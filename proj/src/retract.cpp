#include "dglie/retract.hpp"

#include <random>
#include <sstream>

#include "dglie/common.hpp"
#include "dglie/parser.hpp"

namespace dglie {

namespace {

// Deterministic draws from the raw engine; distributions are not portable.
long draw_range(std::mt19937_64& rng, long lo, long hi) {
    return lo + static_cast<long>(rng() % static_cast<unsigned long>(hi - lo + 1));
}

}  // namespace

std::vector<QVec> greedy_acomplement(const FreeDGL& L, int n) {
    int dn = L.dim(n);
    std::vector<QVec> out;
    if (dn == 0) return out;
    const QMat& d = L.dmat(n);
    std::vector<QVec> Z = kernel_basis(d);
    int want = dn - static_cast<int>(Z.size());
    SpanIndex idx;
    for (auto& z : Z) idx.add(svec_from(z));
    for (int j = 0; j < dn && static_cast<int>(out.size()) < want; ++j) {
        SVec unit{{j, Rat(1)}};
        if (idx.add(unit) >= 0) {
            QVec v(dn, Rat(0));
            v[j] = 1;
            out.push_back(std::move(v));
        }
    }
    return out;
}

Retract Retract::from_decomposition(const FreeDGL& L,
                                    const std::map<int, std::vector<LieElement>>& A_choice) {
    std::map<int, std::vector<QVec>> A;
    for (int n = 1; n <= L.cap() - 1; ++n) {
        int dn = L.dim(n);
        if (dn == 0) {
            A[n] = {};
            continue;
        }
        std::vector<QVec> Z = kernel_basis(L.dmat(n));
        int want = dn - static_cast<int>(Z.size());
        auto it = A_choice.find(n);
        if (it == A_choice.end()) {
            A[n] = greedy_acomplement(L, n);
        } else {
            if (static_cast<int>(it->second.size()) != want)
                throw Error("A-choice at degree " + std::to_string(n) + " has " +
                            std::to_string(it->second.size()) + " vectors, expected " +
                            std::to_string(want));
            SpanIndex idx;
            for (auto& z : Z) idx.add(svec_from(z));
            std::vector<QVec> vecs;
            for (auto& e : it->second) {
                if (e.degree != n) throw Error("A-choice element of wrong degree");
                QVec v = L.coords(e);
                if (idx.add(svec_from(v)) < 0)
                    throw Error("A-choice at degree " + std::to_string(n) +
                                " meets the cycles (or is dependent)");
                vecs.push_back(std::move(v));
            }
            A[n] = std::move(vecs);
        }
    }
    return Retract(L, std::move(A));
}

Retract Retract::random(const FreeDGL& L, uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::map<int, std::vector<QVec>> A;
    for (int n = 1; n <= L.cap() - 1; ++n) {
        int dn = L.dim(n);
        if (dn == 0) {
            A[n] = {};
            continue;
        }
        std::vector<QVec> Z = kernel_basis(L.dmat(n));
        std::vector<QVec> base = greedy_acomplement(L, n);
        // A_j = base_j + sum_m T[m][j] * z_m: a complement for any T.
        for (auto& a : base)
            for (auto& z : Z) {
                long t = draw_range(rng, -3, 3);
                if (t != 0) a = vec_add(a, vec_scale(z, Rat(t)));
            }
        A[n] = std::move(base);
    }
    return Retract(L, std::move(A));
}

int Retract::adim(int n) const {
    auto it = A_.find(n);
    return it == A_.end() ? 0 : static_cast<int>(it->second.size());
}

const std::vector<QVec>& Retract::A(int n) const {
    static const std::vector<QVec> empty;
    auto it = A_.find(n);
    return it == A_.end() ? empty : it->second;
}

const std::vector<QVec>& Retract::C(int n) const { return L_->homology(n).reps; }

const Retract::Level& Retract::level(int n) const {
    if (n < 1 || n > L_->cap() - 1)
        throw DegreeCapError("retract level outside validity (degree " + std::to_string(n) + ")");
    std::lock_guard<std::mutex> lock(cache_->mu);
    auto& levels_ = cache_->levels;
    auto it = levels_.find(n);
    if (it != levels_.end()) return it->second;
    Level lv;
    int dn = L_->dim(n);
    const auto& An = A_.at(n);
    lv.adim = static_cast<int>(An.size());
    // Boundary block: d of the A-basis one degree up when available, so that
    // K inverts d column-by-column; at the top validity degree fall back to
    // the canonical boundary basis (K is not offered there).
    std::vector<QVec> B;
    if (n + 1 <= L_->cap() - 1) {
        for (auto& a : A_.at(n + 1)) B.push_back(mat_apply(L_->dmat(n + 1), a));
    } else {
        B = L_->boundary_rref(n);
    }
    lv.bdim = static_cast<int>(B.size());
    const auto& C = L_->homology(n).reps;
    lv.cdim = static_cast<int>(C.size());
    if (lv.adim + lv.bdim + lv.cdim != dn)
        throw Error("decomposition dimensions do not add up at degree " + std::to_string(n));
    lv.abc = QMat(dn, dn);
    int j = 0;
    for (auto& v : An) lv.abc.cols[j++] = v;
    for (auto& v : B) lv.abc.cols[j++] = v;
    for (auto& v : C) lv.abc.cols[j++] = v;
    lv.solver = std::make_unique<LUSolver>(lv.abc);
    return levels_.emplace(n, std::move(lv)).first->second;
}

LieVec Retract::include(const HVec& h) const { return L_->rep_of(h); }

LieElement Retract::include_elem(const HVec& h) const { return L_->element(include(h)); }

HVec Retract::project(const LieVec& v) const {
    const Level& lv = level(v.degree);
    auto x = lv.solver->solve(v.c);
    if (!x) throw Error("retract projection: vector outside decomposition span");
    QVec out(lv.cdim, Rat(0));
    for (int j = 0; j < lv.cdim; ++j) out[j] = (*x)[lv.adim + lv.bdim + j];
    return HVec{v.degree, std::move(out)};
}

LieVec Retract::homotopy(const LieVec& v) const {
    int n = v.degree;
    if (n + 1 > L_->cap() - 1)
        throw DegreeCapError("homotopy K at degree " + std::to_string(n) +
                             " needs degree " + std::to_string(n + 1) + " below the cap");
    const Level& lv = level(n);
    auto x = lv.solver->solve(v.c);
    if (!x) throw Error("retract homotopy: vector outside decomposition span");
    const auto& Aup = A_.at(n + 1);
    QVec out(L_->dim(n + 1), Rat(0));
    for (int j = 0; j < lv.bdim; ++j) {
        const Rat& c = (*x)[lv.adim + j];
        if (sgn(c) != 0) out = vec_add(out, vec_scale(Aup[j], c));
    }
    return LieVec{n + 1, std::move(out)};
}

Retract::Report Retract::verify() const {
    Report rep;
    const FreeDGL& L = *L_;
    auto fail = [&rep](bool& flag, const std::string& msg) {
        flag = false;
        rep.failures.push_back(msg);
    };
    for (int n = 1; n <= L.cap() - 1; ++n) {
        int dn = L.dim(n);
        int hd = L.homology(n).hdim;
        // qi = id on H_n
        for (int h = 0; h < hd; ++h) {
            QVec e(hd, Rat(0));
            e[h] = 1;
            HVec back = project(include(HVec{n, e}));
            if (back.c != e) {
                fail(rep.qi_identity, "qi != id at degree " + std::to_string(n));
                break;
            }
        }
        bool k_here = n + 1 <= L.cap() - 1;
        bool k_below = n - 1 >= 1 && n <= L.cap() - 1;
        for (int j = 0; j < dn; ++j) {
            QVec e(dn, Rat(0));
            e[j] = 1;
            LieVec v{n, e};
            // id - iq = dK + Kd whenever both K's exist around degree n
            if (k_here && (n == 1 || k_below)) {
                QVec lhs = vec_sub(v.c, include(project(v)).c);
                QVec rhs = L.d_vec(homotopy(v)).c;
                if (n > 1) rhs = vec_add(rhs, homotopy(L.d_vec(v)).c);
                if (lhs != rhs) {
                    fail(rep.homotopy_identity, "id - iq != dK + Kd at degree " + std::to_string(n));
                    break;
                }
            }
        }
        // dKd = d from degree n (Kd needs K at n-1)
        if (n >= 2 && n - 1 + 1 <= L.cap() - 1) {
            for (int j = 0; j < dn; ++j) {
                QVec e(dn, Rat(0));
                e[j] = 1;
                LieVec dv = L.d_vec(LieVec{n, e});
                QVec lhs = L.d_vec(homotopy(dv)).c;
                if (lhs != dv.c) {
                    fail(rep.dkd_identity, "dKd != d at degree " + std::to_string(n));
                    break;
                }
            }
        }
        if (k_here) {
            // K^2 = 0 and K(A) = K(C) = 0
            if (n + 2 <= L.cap() - 1) {
                for (int j = 0; j < dn; ++j) {
                    QVec e(dn, Rat(0));
                    e[j] = 1;
                    if (!vec_is_zero(homotopy(homotopy(LieVec{n, e})).c)) {
                        fail(rep.k_squared_zero, "K^2 != 0 at degree " + std::to_string(n));
                        break;
                    }
                }
            }
            for (auto& a : A(n))
                if (!vec_is_zero(homotopy(LieVec{n, a}).c))
                    fail(rep.k_kills_a_and_c, "K(A) != 0 at degree " + std::to_string(n));
            for (auto& c : C(n))
                if (!vec_is_zero(homotopy(LieVec{n, c}).c))
                    fail(rep.k_kills_a_and_c, "K(C) != 0 at degree " + std::to_string(n));
        }
        // q is a chain map: q d = 0 (boundaries project to zero)
        if (n + 1 <= L.cap()) {
            int dup = L.dim(n + 1);
            if (n + 1 <= L.cap() - 1) {
                for (int j = 0; j < dup; ++j) {
                    QVec e(dup, Rat(0));
                    e[j] = 1;
                    if (!vec_is_zero(project(L.d_vec(LieVec{n + 1, e})).c)) {
                        fail(rep.q_chain_map, "q d != 0 from degree " + std::to_string(n + 1));
                        break;
                    }
                }
            }
        }
    }
    return rep;
}

std::string Retract::serialize() const {
    std::ostringstream os;
    os << "retract {\n";
    os << "  cap " << L_->cap() << "\n";
    for (auto& [n, vecs] : A_)
        for (auto& v : vecs) os << "  A " << n << " : " << L_->print(LieVec{n, v}) << "\n";
    for (int n = 1; n <= L_->cap() - 1; ++n)
        for (auto& v : C(n)) os << "  C " << n << " : " << L_->print(LieVec{n, v}) << "\n";
    os << "}\n";
    return os.str();
}

Retract Retract::parse(const FreeDGL& L, const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::map<int, std::vector<LieElement>> A_choice;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        std::istringstream ls(line);
        std::string kind;
        if (!(ls >> kind)) continue;
        if (kind == "retract" || kind == "{" || kind == "}" || kind == "cap") continue;
        if (kind == "C") continue;  // informational
        if (kind != "A") throw Error("retract file: unexpected line '" + line + "'");
        int degree;
        std::string colon;
        if (!(ls >> degree >> colon) || colon != ":")
            throw Error("retract file: malformed A line '" + line + "'");
        std::string expr;
        std::getline(ls, expr);
        A_choice[degree].push_back(eval_expr_str(expr, L));
    }
    return from_decomposition(L, A_choice);
}

std::optional<Retract> adapted_retract(const FreeDGL& L,
                                       const std::map<int, std::vector<LieVec>>& spans,
                                       AdaptedFailure* failure) {
    std::map<int, std::vector<LieElement>> A_choice;
    for (auto& [n, vecs] : spans) {
        if (vecs.empty()) continue;
        int dn = L.dim(n);
        std::vector<QVec> Z = kernel_basis(L.dmat(n));
        int want = dn - static_cast<int>(Z.size());
        // Echelonize the span, discarding repeats, and reject any cycle hit.
        SpanIndex zidx;
        for (auto& z : Z) zidx.add(svec_from(z));
        SpanIndex independent;
        std::vector<QVec> picked;
        for (auto& v : vecs) {
            if (v.degree != n) throw Error("adapted_retract: span element of wrong degree");
            if (independent.add(svec_from(v.c)) < 0) continue;  // repeated direction
            if (zidx.add(svec_from(v.c)) < 0) {
                if (failure) {
                    failure->degree = n;
                    failure->cycle_combination = QVec(vecs.size(), Rat(0));
                    // Find a nonzero kernel combination of the span modulo cycles:
                    // [span | Z] has a kernel vector with nonzero span part.
                    QMat aug(dn, static_cast<int>(vecs.size() + Z.size()));
                    for (size_t j = 0; j < vecs.size(); ++j) aug.cols[j] = vecs[j].c;
                    for (size_t j = 0; j < Z.size(); ++j) aug.cols[vecs.size() + j] = Z[j];
                    for (auto& k : kernel_basis(aug)) {
                        QVec head(k.begin(), k.begin() + vecs.size());
                        if (!vec_is_zero(head)) {
                            failure->cycle_combination = head;
                            break;
                        }
                    }
                    failure->message = "phi(V) meets the cycles at degree " + std::to_string(n);
                }
                return std::nullopt;
            }
            picked.push_back(v.c);
        }
        if (static_cast<int>(picked.size()) > want) {
            if (failure) {
                failure->degree = n;
                failure->message = "phi(V) exceeds the complement dimension at degree " +
                                   std::to_string(n);
            }
            return std::nullopt;
        }
        // Greedy completion by monomial basis vectors.
        for (int j = 0; j < dn && static_cast<int>(picked.size()) < want; ++j) {
            SVec unit{{j, Rat(1)}};
            if (zidx.add(unit) >= 0) {
                QVec v(dn, Rat(0));
                v[j] = 1;
                picked.push_back(std::move(v));
            }
        }
        std::vector<LieElement> elems;
        for (auto& v : picked) elems.push_back(L.element(LieVec{n, v}));
        A_choice[n] = std::move(elems);
    }
    return Retract::from_decomposition(L, A_choice);
}

}  // namespace dglie
