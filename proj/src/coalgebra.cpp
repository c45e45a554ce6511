#include "dglie/coalgebra.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "dglie/common.hpp"

namespace dglie {

int sdeg(const SLetter& l) { return l.udeg + 1; }

int word_sdeg(const WedgeWord& w) {
    int d = 0;
    for (auto& l : w) d += sdeg(l);
    return d;
}

std::optional<std::pair<int, WedgeWord>> wedge_canonicalize(std::vector<SLetter> letters) {
    int sign = 1;
    for (size_t i = 0; i + 1 < letters.size(); ++i)
        for (size_t j = 0; j + 1 < letters.size() - i; ++j)
            if (letters[j + 1] < letters[j]) {
                if ((sdeg(letters[j]) * sdeg(letters[j + 1])) % 2 != 0) sign = -sign;
                std::swap(letters[j], letters[j + 1]);
            }
    for (size_t i = 0; i + 1 < letters.size(); ++i)
        if (letters[i] == letters[i + 1] && sdeg(letters[i]) % 2 != 0) return std::nullopt;
    return std::make_pair(sign, std::move(letters));
}

void wedge_add(WedgePoly& a, const Rat& c, const WedgeWord& w) {
    if (sgn(c) == 0) return;
    Rat& slot = a.terms[w];
    slot += c;
    if (sgn(slot) == 0) a.terms.erase(w);
}

void wedge_add_scaled(WedgePoly& a, const Rat& c, const WedgePoly& b) {
    for (auto& [w, x] : b.terms) wedge_add(a, c * x, w);
}

bool wedge_equal(const WedgePoly& a, const WedgePoly& b) { return a.terms == b.terms; }

namespace {

// Koszul sign of extracting the letters at the given ascending positions to
// the front of the word, preserving their relative order. Each extracted
// letter crosses exactly the not-yet-extracted letters to its left.
int extraction_sign(const WedgeWord& w, const std::vector<int>& positions) {
    int sign = 1;
    std::vector<bool> removed(w.size(), false);
    for (int p : positions) {
        int crossed = 0;
        for (int s = 0; s < p; ++s)
            if (!removed[s]) crossed += sdeg(w[s]);
        if ((sdeg(w[p]) * crossed) % 2 != 0) sign = -sign;
        removed[p] = true;
    }
    return sign;
}

}  // namespace

WedgePoly quillen_delta(const FreeDGL& L, const WedgeWord& w) {
    WedgePoly out;
    int p = static_cast<int>(w.size());
    // delta_1: replace letter i by its boundary, sign -(-1)^{n_i}
    for (int i = 0; i < p; ++i) {
        int n = w[i].udeg;
        if (n < 1 || n > L.cap()) throw DegreeCapError("quillen_delta: letter outside cap");
        const QMat& d = L.dmat(n);
        const QVec& col = d.cols.at(w[i].idx);
        int ni = 0;
        for (int j = 0; j < i; ++j) ni += sdeg(w[j]);
        Rat outer = (ni % 2 == 0) ? Rat(-1) : Rat(1);
        for (int t = 0; t < d.rows; ++t) {
            if (sgn(col[t]) == 0) continue;
            std::vector<SLetter> letters;
            for (int j = 0; j < p; ++j)
                letters.push_back(j == i ? SLetter{n - 1, t} : w[j]);
            auto cw = wedge_canonicalize(std::move(letters));
            if (cw) wedge_add(out, outer * col[t] * Rat(cw->first), cw->second);
        }
    }
    // delta_2: contract letters i < j into s[x_i, x_j], sign -(-1)^{n_ij + |x_i|}
    for (int i = 0; i < p; ++i)
        for (int j = i + 1; j < p; ++j) {
            int nij_sign = extraction_sign(w, {i, j});
            QVec ei(L.dim(w[i].udeg), Rat(0));
            ei[w[i].idx] = 1;
            QVec ej(L.dim(w[j].udeg), Rat(0));
            ej[w[j].idx] = 1;
            LieVec br = L.bracket_vec(LieVec{w[i].udeg, ei}, LieVec{w[j].udeg, ej});
            Rat outer = ((w[i].udeg % 2 == 0) ? Rat(-1) : Rat(1)) * Rat(nij_sign);
            for (int t = 0; t < static_cast<int>(br.c.size()); ++t) {
                if (sgn(br.c[t]) == 0) continue;
                std::vector<SLetter> letters{SLetter{br.degree, t}};
                for (int s = 0; s < p; ++s)
                    if (s != i && s != j) letters.push_back(w[s]);
                auto cw = wedge_canonicalize(std::move(letters));
                if (cw) wedge_add(out, outer * br.c[t] * Rat(cw->first), cw->second);
            }
        }
    return out;
}

WedgePoly quillen_delta(const FreeDGL& L, const WedgePoly& p) {
    WedgePoly out;
    for (auto& [w, c] : p.terms) wedge_add_scaled(out, c, quillen_delta(L, w));
    return out;
}

DsqReport quillen_dsq_check(const FreeDGL& L, int max_len) {
    DsqReport rep;
    // enumerate sorted words over sL letters with content degree small enough
    // that two differentials stay computable: brackets in delta_2 need
    // udeg_i + udeg_j <= cap both times.
    std::vector<SLetter> letters;
    for (int n = 1; n <= L.cap() - 1; ++n)
        for (int i = 0; i < L.dim(n); ++i) letters.push_back(SLetter{n, i});
    std::vector<SLetter> word;
    std::function<void(size_t, int)> rec = [&](size_t start, int udegsum) {
        if (word.size() >= 2) {
            WedgeWord w = word;
            auto cw = wedge_canonicalize(w);
            if (cw && cw->second == w) {
                WedgePoly dd = quillen_delta(L, quillen_delta(L, w));
                ++rep.words_checked;
                if (!dd.is_zero() && rep.ok) {
                    rep.ok = false;
                    std::ostringstream os;
                    os << "delta^2 != 0 on a length-" << w.size() << " word of degree "
                       << udegsum;
                    rep.first_violation = os.str();
                }
            }
        }
        if (static_cast<int>(word.size()) == max_len) return;
        for (size_t t = start; t < letters.size(); ++t) {
            int d = letters[t].udeg;
            // keep every bracket through two differentials within the cap
            if (udegsum + d > L.cap() - 1) {
                ++rep.words_skipped;
                break;
            }
            word.push_back(letters[t]);
            rec(t, udegsum + d);
            word.pop_back();
        }
    };
    rec(0, 0);
    return rep;
}

Coderivation bracket_to_coderivation(const LInftyTable& table, int k) {
    if (k < 2 || k > table.max_arity())
        throw Error("bracket_to_coderivation: arity " + std::to_string(k) + " not in table");
    return Coderivation{k, &table};
}

namespace {

// (-1)^{k(k-1)/2} times the Koszul sign of (s^{-1})^{tensor k} moving past
// sx_1 ... sx_k.
int corestriction_sign(const std::vector<int>& udegs) {
    int k = static_cast<int>(udegs.size());
    long e = static_cast<long>(k) * (k - 1) / 2;
    for (int i = 0; i < k; ++i) e += static_cast<long>(k - 1 - i) * (udegs[i] + 1);
    return e % 2 == 0 ? 1 : -1;
}

}  // namespace

std::vector<std::pair<SLetter, Rat>> corestriction_apply(const Coderivation& c, const WedgeWord& w) {
    if (static_cast<int>(w.size()) != c.k)
        throw DimensionError("corestriction_apply: word length mismatch");
    std::vector<HIdx> tuple;
    std::vector<int> udegs;
    for (auto& l : w) {
        tuple.push_back(HIdx{l.udeg, l.idx});
        udegs.push_back(l.udeg);
    }
    HVec v = c.table->lookup(c.k, tuple);
    int sign = corestriction_sign(udegs);
    std::vector<std::pair<SLetter, Rat>> out;
    for (int m = 0; m < static_cast<int>(v.c.size()); ++m)
        if (sgn(v.c[m]) != 0) out.emplace_back(SLetter{v.degree, m}, Rat(sign) * v.c[m]);
    return out;
}

HVec coderivation_to_bracket(const Coderivation& c, const std::vector<HIdx>& tuple) {
    // ell_k = s^{-1} h_k s^{x k}: the sign factors are involutive, so the
    // unraveling applies the same corestriction sign again.
    WedgeWord w;
    std::vector<int> udegs;
    for (auto& h : tuple) {
        w.push_back(SLetter{h.degree, h.index});
        udegs.push_back(h.degree);
    }
    auto cw = wedge_canonicalize(w);
    if (!cw) {
        // repeated odd-suspended letter: the wedge word vanishes, and so does
        // the skew bracket value on that tuple
        const FreeDGL& L = c.table->retract().algebra();
        int target = c.k - 2;
        for (int d : udegs) target += d;
        return HVec{target, QVec(L.homology(target).hdim, Rat(0))};
    }
    auto letters = corestriction_apply(c, cw->second);
    int sign = cw->first * corestriction_sign(udegs);
    const FreeDGL& L = c.table->retract().algebra();
    int target = c.k - 2;
    for (int d : udegs) target += d;
    HVec out{target, QVec(L.homology(target).hdim, Rat(0))};
    for (auto& [l, coeff] : letters) {
        if (l.udeg != target) throw Error("coderivation_to_bracket: degree bookkeeping failure");
        out.c[l.idx] += Rat(sign) * coeff;
    }
    return out;
}

WedgePoly delta_on_wedge(const std::vector<Coderivation>& cods, const WedgeWord& w) {
    WedgePoly out;
    int p = static_cast<int>(w.size());
    for (const auto& cod : cods) {
        int k = cod.k;
        if (k > p) continue;
        std::vector<int> positions(k);
        std::function<void(int, int)> choose = [&](int slot, int start) {
            if (slot == k) {
                int esign = extraction_sign(w, positions);
                WedgeWord chosen;
                for (int t : positions) chosen.push_back(w[t]);
                auto letters = corestriction_apply(cod, chosen);
                for (auto& [l, coeff] : letters) {
                    std::vector<SLetter> rest{l};
                    for (int s = 0; s < p; ++s)
                        if (std::find(positions.begin(), positions.end(), s) == positions.end())
                            rest.push_back(w[s]);
                    auto cw = wedge_canonicalize(std::move(rest));
                    if (cw) wedge_add(out, Rat(esign * cw->first) * coeff, cw->second);
                }
                return;
            }
            for (int t = start; t <= p - (k - slot); ++t) {
                positions[slot] = t;
                choose(slot + 1, t + 1);
            }
        };
        choose(0, 0);
    }
    return out;
}

WedgePoly delta_on_wedge(const std::vector<Coderivation>& cods, const WedgePoly& p) {
    WedgePoly out;
    for (auto& [w, c] : p.terms) wedge_add_scaled(out, c, delta_on_wedge(cods, w));
    return out;
}

DsqReport table_dsq_check(const LInftyTable& table, int max_len) {
    DsqReport rep;
    const FreeDGL& L = table.retract().algebra();
    std::vector<Coderivation> cods;
    for (int k = 2; k <= table.max_arity(); ++k) cods.push_back(bracket_to_coderivation(table, k));
    const auto& basis = table.hbasis();
    std::vector<SLetter> word;
    std::function<void(size_t, int)> rec = [&](size_t start, int udegsum) {
        if (word.size() >= 2) {
            WedgeWord w = word;
            auto cw = wedge_canonicalize(w);
            if (cw && cw->second == w) {
                try {
                    WedgePoly dd = delta_on_wedge(cods, delta_on_wedge(cods, w));
                    ++rep.words_checked;
                    if (!dd.is_zero() && rep.ok) {
                        rep.ok = false;
                        std::ostringstream os;
                        os << "table delta^2 != 0 on a length-" << w.size()
                           << " word of degree " << udegsum;
                        rep.first_violation = os.str();
                    }
                } catch (const Error&) {
                    ++rep.words_skipped;  // out-of-cap lookup
                }
            }
        }
        if (static_cast<int>(word.size()) == max_len) return;
        for (size_t t = start; t < basis.size(); ++t) {
            int d = basis[t].degree;
            if (udegsum + d > L.cap() + 1) break;
            word.push_back(SLetter{basis[t].degree, basis[t].index});
            rec(t, udegsum + d);
            word.pop_back();
        }
    };
    rec(0, 0);
    return rep;
}

PhiCertificate solve_phi(const LInftyTable& table, const std::vector<HVec>& x_args, const HVec& x) {
    PhiCertificate cert;
    const FreeDGL& L = table.retract().algebra();
    int k = static_cast<int>(x_args.size());
    int expected = k - 2;
    for (auto& a : x_args) expected += a.degree;
    if (x.degree != expected) {
        cert.note = "degree mismatch: target degree " + std::to_string(x.degree) +
                    ", arguments force " + std::to_string(expected);
        return cert;
    }
    if (expected > L.cap() - 1) {
        cert.note = "target degree beyond the cap";
        return cert;
    }
    if (table.max_arity() < k) {
        cert.note = "table arity " + std::to_string(table.max_arity()) +
                    " insufficient for k = " + std::to_string(k);
        return cert;
    }
    std::vector<Coderivation> cods;
    for (int j = 2; j <= std::min(k, table.max_arity()); ++j)
        cods.push_back(bracket_to_coderivation(table, j));

    // sX = sx_1 ^ ... ^ sx_k expanded over basis letters
    WedgePoly sX;
    {
        std::vector<SLetter> letters(k);
        std::function<void(int, Rat)> rec = [&](int pos, Rat coeff) {
            if (pos == k) {
                auto cw = wedge_canonicalize(letters);
                if (cw) wedge_add(sX, coeff * Rat(cw->first), cw->second);
                return;
            }
            const HVec& a = x_args[pos];
            for (int m = 0; m < static_cast<int>(a.c.size()); ++m) {
                if (sgn(a.c[m]) == 0) continue;
                letters[pos] = SLetter{a.degree, m};
                rec(pos + 1, coeff * a.c[m]);
            }
        };
        rec(0, Rat(1));
    }

    // Wedge basis of Lambda^{2..k-1} sH in suspended degree |sX|.
    int sdegree = 0;
    for (auto& a : x_args) sdegree += a.degree + 1;
    std::vector<WedgeWord> unknowns;
    {
        const auto& basis = table.hbasis();
        std::vector<SLetter> word;
        std::function<void(size_t, int)> rec = [&](size_t start, int ds) {
            int len = static_cast<int>(word.size());
            if (len >= 2 && len <= k - 1 && ds == sdegree) {
                auto cw = wedge_canonicalize(word);
                if (cw && cw->second == WedgeWord(word)) unknowns.push_back(cw->second);
            }
            if (len == k - 1) return;
            for (size_t t = start; t < basis.size(); ++t) {
                SLetter l{basis[t].degree, basis[t].index};
                if (ds + sdeg(l) > sdegree) break;
                word.push_back(l);
                rec(t, ds + sdeg(l));
                word.pop_back();
            }
        };
        rec(0, 0);
    }
    cert.unknowns = static_cast<int>(unknowns.size());

    // RHS = sx - delta(sX)
    WedgePoly rhs;
    if (x.degree <= L.cap() - 1)
        for (int m = 0; m < static_cast<int>(x.c.size()); ++m)
            if (sgn(x.c[m]) != 0) wedge_add(rhs, x.c[m], WedgeWord{SLetter{x.degree, m}});
    WedgePoly dsX;
    try {
        dsX = delta_on_wedge(cods, sX);
    } catch (const Error& e) {
        cert.note = std::string("coverage: ") + e.what();
        return cert;
    }
    wedge_add_scaled(rhs, Rat(-1), dsX);

    // Columns delta(word), indexed over every word encountered.
    std::map<WedgeWord, int> row_of;
    auto row_index = [&](const WedgeWord& w) {
        auto it = row_of.find(w);
        if (it != row_of.end()) return it->second;
        int r = static_cast<int>(row_of.size());
        row_of.emplace(w, r);
        return r;
    };
    std::vector<WedgePoly> cols;
    for (auto& w : unknowns) {
        try {
            cols.push_back(delta_on_wedge(cods, w));
        } catch (const Error& e) {
            cert.note = std::string("coverage: ") + e.what();
            return cert;
        }
        for (auto& [ww, c] : cols.back().terms) row_index(ww);
    }
    for (auto& [ww, c] : rhs.terms) row_index(ww);
    int nrows = static_cast<int>(row_of.size());
    QMat m(nrows, static_cast<int>(unknowns.size()));
    for (size_t j = 0; j < cols.size(); ++j)
        for (auto& [ww, c] : cols[j].terms) m.cols[j][row_of.at(ww)] = c;
    QVec b(nrows, Rat(0));
    for (auto& [ww, c] : rhs.terms) b[row_of.at(ww)] = c;
    cert.equations = nrows;
    auto sol = solve(m, b);
    if (!sol) {
        cert.note = "no certificate in Lambda^{<=k-1} sH at this degree";
        return cert;
    }
    cert.found = true;
    for (size_t j = 0; j < unknowns.size(); ++j)
        if (sgn((*sol)[j]) != 0) wedge_add(cert.phi, (*sol)[j], unknowns[j]);
    return cert;
}

std::string wedge_string(const WedgePoly& p) {
    if (p.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto& [w, c] : p.terms) {
        if (!first) os << " + ";
        os << rat_str(c) << "*";
        for (size_t i = 0; i < w.size(); ++i) {
            if (i) os << "^";
            os << "s(H" << w[i].udeg << "[" << w[i].idx << "])";
        }
        first = false;
    }
    return os.str();
}

}  // namespace dglie
