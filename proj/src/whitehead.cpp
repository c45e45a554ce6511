#include "dglie/whitehead.hpp"

#include <algorithm>
#include <functional>
#include <random>
#include <sstream>

#include "dglie/common.hpp"
#include "dglie/signs.hpp"

namespace dglie {

std::string subset_name(const Subset& s) {
    std::string out = "u";
    for (int i : s) out += std::to_string(i + 1);
    return out;
}

namespace {

std::vector<Subset> subsets_of_size(int k, int size) {
    std::vector<Subset> out;
    Subset cur;
    std::function<void(int)> rec = [&](int start) {
        if (static_cast<int>(cur.size()) == size) {
            out.push_back(cur);
            return;
        }
        for (int i = start; i <= k - (size - static_cast<int>(cur.size())); ++i) {
            cur.push_back(i);
            rec(i + 1);
            cur.pop_back();
        }
    };
    rec(0);
    return out;
}

// Koszul sign of unshuffling the sorted letters of S into the blocks P then Q
// (both sorted), on the sphere-dimension degrees.
int split_kappa(const Subset& P, const Subset& Q, const std::vector<int>& spheres) {
    int e = 0;
    for (int q : Q)
        for (int p : P)
            if (q < p) e += spheres[p] * spheres[q];
    return e % 2 == 0 ? 1 : -1;
}

// Anchored splitting formula: d u_S = - sum_{P cup Q = S, min(S) in P}
// (-1)^{n_P} kappa(P,Q) [u_P, u_Q], the quadratic differential induced by the
// reduced diagonal of the product of spheres.
PairFormula differential_formula(const Subset& S, const std::vector<int>& spheres) {
    PairFormula f;
    int s = static_cast<int>(S.size());
    for (int p = 1; p < s; ++p) {
        for (auto& posP : subsets_of_size(s, p)) {
            if (posP[0] != 0) continue;  // anchored at the first letter
            Subset P, Q;
            std::vector<bool> inP(s, false);
            for (int t : posP) inP[t] = true;
            for (int t = 0; t < s; ++t) (inP[t] ? P : Q).push_back(S[t]);
            int nP = 0;
            for (int i : P) nP += spheres[i];
            int sign = -(nP % 2 == 0 ? 1 : -1) * split_kappa(P, Q, spheres);
            f.push_back(PairTerm{Rat(sign), P, Q});
        }
    }
    return f;
}

}  // namespace

LieElement WedgeModel::omega_element() const {
    LieElement out;
    bool started = false;
    for (auto& t : omega_formula()) {
        LieElement b = model->bracket(model->gen_elem(gen_of.at(t.left)),
                                      model->gen_elem(gen_of.at(t.right)));
        if (!started) {
            out = lie_scale(b, t.coeff);
            started = true;
        } else {
            lie_add_scaled(out, t.coeff, b);
        }
    }
    return out;
}

WedgeModel build_fat_wedge(const std::vector<int>& spheres, int cap) {
    WedgeModel W;
    W.k = static_cast<int>(spheres.size());
    if (W.k < 2) throw Error("fat wedge needs at least two spheres");
    for (int n : spheres)
        if (n < 2) throw Error("sphere dimensions must be at least 2");
    W.spheres = spheres;
    int N = 0;
    for (int n : spheres) N += n;
    W.omega_degree = N - 2;
    if (cap == 0) cap = N - 1;
    if (cap < N - 1)
        throw DegreeCapError("degree cap " + std::to_string(cap) +
                             " too small for the attaching element (needs " +
                             std::to_string(N - 1) + ")");
    std::vector<Generator> gens;
    std::vector<Subset> order;
    for (int size = 1; size < W.k; ++size)
        for (auto& S : subsets_of_size(W.k, size)) {
            int deg = -1;
            for (int i : S) deg += spheres[i];
            W.gen_of[S] = static_cast<int>(gens.size());
            gens.push_back(Generator{subset_name(S), deg});
            order.push_back(S);
        }
    // assemble differentials through a zero-differential copy
    auto plain = std::make_shared<FreeDGL>(gens, std::vector<LieElement>(gens.size()), cap);
    std::vector<LieElement> diffs(gens.size());
    for (size_t gi = 0; gi < order.size(); ++gi) {
        const Subset& S = order[gi];
        if (S.size() == 1) {
            diffs[gi] = lie_zero(gens[gi].degree - 1);
            continue;
        }
        PairFormula f = differential_formula(S, spheres);
        LieElement v = lie_zero(gens[gi].degree - 1);
        for (auto& t : f)
            lie_add_scaled(v, t.coeff,
                           plain->bracket(plain->gen_elem(W.gen_of.at(t.left)),
                                          plain->gen_elem(W.gen_of.at(t.right))));
        diffs[gi] = std::move(v);
        W.dformula[S] = std::move(f);
    }
    W.model = std::make_shared<FreeDGL>(gens, std::move(diffs), cap);
    for (int i = 0; i < W.k; ++i) W.full.push_back(i);
    W.dformula[W.full] = differential_formula(W.full, spheres);
    auto dsq = W.model->check_d_squared();
    if (!dsq.ok) throw Error("fat wedge differential does not square to zero");
    // omega is a cycle: d^2 = 0 for the product model including the top cell
    if (!W.model->d(W.omega_element()).is_zero())
        throw Error("attaching element is not a cycle");
    return W;
}

LieVec Extension::value_of(const PairFormula& f) const {
    const FreeDGL& target = *L;
    LieVec acc;
    bool started = false;
    for (auto& t : f) {
        const LieVec& a = phi.at(t.left);
        const LieVec& b = phi.at(t.right);
        LieVec br = target.bracket_vec(a, b);
        if (!started) {
            acc = LieVec{br.degree, QVec(br.c.size(), Rat(0))};
            started = true;
        }
        acc.c = vec_add(acc.c, vec_scale(br.c, t.coeff));
    }
    return acc;
}

LieVec Extension::omega_value() const { return value_of(W->omega_formula()); }

bool Extension::verify_chain_map(std::string* first_failure) const {
    for (auto& [S, v] : phi) {
        LieVec lhs = L->d_vec(v);
        LieVec rhs;
        if (S.size() == 1) {
            rhs = LieVec{lhs.degree, QVec(lhs.c.size(), Rat(0))};
        } else {
            rhs = value_of(W->dformula.at(S));
        }
        if (lhs.c != rhs.c) {
            if (first_failure) *first_failure = "chain map fails at " + subset_name(S);
            return false;
        }
    }
    return true;
}

std::map<int, std::vector<LieVec>> Extension::v_spans() const {
    std::map<int, std::vector<LieVec>> out;
    for (auto& [S, v] : phi)
        if (S.size() >= 2) out[v.degree].push_back(v);
    return out;
}

std::variant<Extension, Obstruction> extend(const WedgeModel& W, const FreeDGL& L,
                                            const std::vector<LieVec>& reps,
                                            ExtendStrategy strategy, const Retract* retract,
                                            const std::map<Subset, LieVec>* perturbations) {
    if (static_cast<int>(reps.size()) != W.k) throw Error("extend: need one cycle per sphere");
    if (strategy == ExtendStrategy::KImage && !retract)
        throw Error("extend: K-image strategy needs a retract");
    Extension ext;
    ext.W = &W;
    ext.L = &L;
    for (int i = 0; i < W.k; ++i) {
        if (reps[i].degree != W.spheres[i] - 1)
            throw Error("extend: representative " + std::to_string(i + 1) + " has degree " +
                        std::to_string(reps[i].degree) + ", expected " +
                        std::to_string(W.spheres[i] - 1));
        if (!vec_is_zero(L.d_vec(reps[i]).c))
            throw Error("extend: representative " + std::to_string(i + 1) + " is not a cycle");
        ext.phi[Subset{i}] = reps[i];
    }
    for (int size = 2; size < W.k; ++size) {
        for (auto& S : subsets_of_size(W.k, size)) {
            LieVec t = ext.value_of(W.dformula.at(S));
            if (!vec_is_zero(L.d_vec(t).c))
                throw Error("extend: phi(d " + subset_name(S) + ") is not a cycle");
            int n = t.degree + 1;  // degree of u_S
            LieVec y;
            if (strategy == ExtendStrategy::Echelon) {
                auto sol = L.dsolver(n).solve(t.c);
                if (!sol) return Obstruction{S, L.class_of(t)};
                y = LieVec{n, std::move(*sol)};
            } else {
                HVec cls = L.class_of(t);
                if (!vec_is_zero(cls.c)) return Obstruction{S, std::move(cls)};
                y = retract->homotopy(t);
            }
            if (perturbations) {
                auto it = perturbations->find(S);
                if (it != perturbations->end()) {
                    if (it->second.degree != n) throw Error("perturbation of wrong degree");
                    y.c = vec_add(y.c, it->second.c);
                }
            }
            ext.phi[S] = std::move(y);
        }
    }
    return ext;
}

HVec whitehead_element(const Extension& ext) {
    LieVec w = ext.omega_value();
    if (!vec_is_zero(ext.L->d_vec(w).c))
        throw Error("phi(omega) is not a cycle: the extension is not a chain map");
    return ext.L->class_of(w);
}

ProbeReport membership_probe(const Extension& base, const HVec& target, int budget,
                             uint64_t seed) {
    ProbeReport rep;
    const FreeDGL& L = *base.L;
    const WedgeModel& W = *base.W;
    rep.base_class = whitehead_element(base);
    rep.target = target;

    // perturbation directions: (subset, homology basis class of its degree)
    struct Direction {
        Subset S;
        LieVec cycle;
        std::string name;
    };
    std::vector<Direction> dirs;
    for (auto& [S, v] : base.phi) {
        if (S.size() < 2) continue;
        int n = v.degree;
        if (n > L.cap() - 1) continue;
        const auto& h = L.homology(n);
        for (int m = 0; m < h.hdim; ++m) {
            QVec c(h.hdim, Rat(0));
            c[m] = 1;
            dirs.push_back(Direction{S, L.rep_of(HVec{n, c}),
                                     subset_name(S) + "+H" + std::to_string(n) + "[" +
                                         std::to_string(m) + "]"});
        }
    }

    SpanIndex reached_span;
    SpanIndex indet_span;
    std::vector<HVec> reached;
    auto note_class = [&](const HVec& cls) {
        for (auto& r : reached)
            if (r.c == cls.c) return;
        reached.push_back(cls);
        QVec diff = vec_sub(cls.c, rep.base_class.c);
        if (!vec_is_zero(diff) && reached_span.add(svec_from(diff)) >= 0)
            rep.affine_span.push_back(diff);
    };
    note_class(rep.base_class);
    if (rep.base_class.c == target.c) {
        rep.member = true;
        rep.witness = "the base extension already realizes the target";
    }

    // Re-extends around the base: stage values are taken from the base and
    // corrected so the chain-map condition holds with the perturbations.
    auto evaluate = [&](const std::map<Subset, LieVec>& pert) -> std::optional<HVec> {
        Extension e;
        e.W = &W;
        e.L = &L;
        for (int i = 0; i < W.k; ++i) e.phi[Subset{i}] = base.phi.at(Subset{i});
        for (int size = 2; size < W.k; ++size) {
            for (auto& S : subsets_of_size(W.k, size)) {
                LieVec t_new = e.value_of(W.dformula.at(S));
                const LieVec& y_base = base.phi.at(S);
                LieVec t_base = base.value_of(W.dformula.at(S));
                QVec diff = vec_sub(t_new.c, t_base.c);
                LieVec y{y_base.degree, y_base.c};
                if (!vec_is_zero(diff)) {
                    auto corr = L.dsolver(y.degree).solve(diff);
                    if (!corr) return std::nullopt;  // obstruction appeared
                    y.c = vec_add(y.c, *corr);
                }
                auto it = pert.find(S);
                if (it != pert.end()) y.c = vec_add(y.c, it->second.c);
                e.phi[S] = std::move(y);
            }
        }
        return whitehead_element(e);
    };

    static const std::vector<Rat> grid = {rat_of(-2), rat_of(-1), rat_of(-1, 2),
                                          rat_of(1, 2), rat_of(1), rat_of(2)};
    std::mt19937_64 rng(seed);

    // first-order sweep: each direction alone with c = 1 feeds the
    // indeterminacy subspace, then the full grid
    for (auto& d : dirs) {
        if (rep.evaluations >= budget) break;
        std::map<Subset, LieVec> pert;
        pert[d.S] = d.cycle;
        ++rep.evaluations;
        auto cls = evaluate(pert);
        if (!cls) {
            ++rep.infeasible;
            continue;
        }
        QVec diff = vec_sub(cls->c, rep.base_class.c);
        if (!vec_is_zero(diff) && indet_span.add(svec_from(diff)) >= 0)
            rep.indeterminacy.push_back(diff);
        note_class(*cls);
        if (!rep.member && cls->c == target.c) {
            rep.member = true;
            rep.witness = "single perturbation " + d.name + " with c = 1";
        }
    }
    for (auto& d : dirs) {
        for (auto& c : grid) {
            if (rep.evaluations >= budget) break;
            if (c == 1) continue;  // already sampled
            std::map<Subset, LieVec> pert;
            pert[d.S] = LieVec{d.cycle.degree, vec_scale(d.cycle.c, c)};
            ++rep.evaluations;
            auto cls = evaluate(pert);
            if (!cls) {
                ++rep.infeasible;
                continue;
            }
            note_class(*cls);
            if (!rep.member && cls->c == target.c) {
                rep.member = true;
                rep.witness = "single perturbation " + d.name + " with c = " + rat_str(c);
            }
        }
    }
    // random joint perturbations
    while (rep.evaluations < budget && dirs.size() >= 2) {
        std::map<Subset, LieVec> pert;
        std::string desc;
        int picks = 2 + static_cast<int>(rng() % 2);
        for (int t = 0; t < picks; ++t) {
            const Direction& d = dirs[rng() % dirs.size()];
            const Rat& c = grid[rng() % grid.size()];
            LieVec scaled{d.cycle.degree, vec_scale(d.cycle.c, c)};
            auto it = pert.find(d.S);
            if (it == pert.end())
                pert[d.S] = scaled;
            else
                it->second.c = vec_add(it->second.c, scaled.c);
            desc += (desc.empty() ? "" : ", ") + d.name + "*" + rat_str(c);
        }
        ++rep.evaluations;
        auto cls = evaluate(pert);
        if (!cls) {
            ++rep.infeasible;
            continue;
        }
        note_class(*cls);
        if (!rep.member && cls->c == target.c) {
            rep.member = true;
            rep.witness = "joint perturbation " + desc;
        }
    }
    rep.reached = std::move(reached);
    return rep;
}

ElprimeReport verify_elprime(const LInftyTable& table, const std::vector<HVec>& x_args,
                             const HVec& x) {
    ElprimeReport rep;
    int k = static_cast<int>(x_args.size());
    if (table.max_arity() < k) {
        rep.applicable = false;
        rep.note = "table arity insufficient";
        return rep;
    }
    std::vector<int> degs;
    for (auto& a : x_args) degs.push_back(a.degree);
    int eps = epsilon_sign(degs);
    HVec lk = table.eval(k, x_args);
    int degree = lk.degree;
    if (x.degree != degree) {
        rep.applicable = false;
        rep.note = "target class has the wrong degree";
        return rep;
    }
    // Gamma candidates: the span of im ell_j, 2 <= j <= k-1, in this degree.
    std::vector<HVec> gens;
    std::vector<std::string> gen_desc;
    for (int j = 2; j <= k - 1; ++j) {
        ImageSpan span = bracket_image_span(table, j, degree);
        for (size_t t = 0; t < span.generators.size(); ++t) {
            gens.push_back(span.generators[t]);
            std::ostringstream os;
            os << "ell_" << j << "(";
            for (size_t p = 0; p < span.tuples[t].size(); ++p)
                os << (p ? "," : "") << "H" << span.tuples[t][p].degree << "["
                   << span.tuples[t][p].index << "]";
            os << ")";
            gen_desc.push_back(os.str());
        }
    }
    const FreeDGL& L = table.retract().algebra();
    int hd = L.homology(degree).hdim;
    QMat m(hd, static_cast<int>(gens.size()));
    for (size_t j = 0; j < gens.size(); ++j) m.cols[j] = gens[j].c;
    for (int sign : {+1, -1}) {
        QVec d = vec_sub(vec_scale(lk.c, Rat(eps * sign)), x.c);
        auto sol = solve(m, d);
        if (sol) {
            rep.pass = true;
            rep.realized_sign = sign;
            rep.gamma_zero = vec_is_zero(d);
            if (rep.gamma_zero) {
                rep.witness = "Gamma = 0";
            } else {
                std::ostringstream os;
                bool first = true;
                for (size_t t = 0; t < sol->size(); ++t) {
                    if (sgn((*sol)[t]) == 0) continue;
                    os << (first ? "" : " + ") << rat_str((*sol)[t]) << "*" << gen_desc[t];
                    first = false;
                }
                rep.witness = "Gamma = " + os.str();
            }
            break;
        }
    }
    rep.phi = solve_phi(table, x_args, x);
    return rep;
}

Main1Report verify_main1(const Extension& ext) {
    Main1Report rep;
    const FreeDGL& L = *ext.L;
    const WedgeModel& W = *ext.W;
    AdaptedFailure fail;
    auto adapted = adapted_retract(L, ext.v_spans(), &fail);
    if (!adapted) {
        rep.failure = fail;
        rep.note = fail.message;
        return rep;
    }
    rep.adapted_found = true;
    const Retract& r = *adapted;
    // Eq (k): K d phi(u) = phi(u) on the higher generators
    for (auto& [S, v] : ext.phi) {
        if (S.size() < 2) continue;
        LieVec kd = r.homotopy(L.d_vec(v));
        if (kd.c != v.c) {
            rep.note = "K d phi != phi at " + subset_name(S);
            return rep;
        }
    }
    // per-stage tree identity: phi(d u_S) = eps * sum_T sym_T / |Aut T|
    std::vector<HVec> classes;
    for (int i = 0; i < W.k; ++i) classes.push_back(L.class_of(ext.phi.at(Subset{i})));
    for (int p = 2; p <= W.k; ++p) {
        bool stage_ok = true;
        for (auto& S : subsets_of_size(W.k, p)) {
            if (p < W.k && !ext.phi.count(S)) continue;
            LieVec lhs = ext.value_of(W.dformula.at(S));
            std::vector<HVec> args;
            std::vector<int> degs;
            for (int i : S) {
                args.push_back(classes[i]);
                degs.push_back(classes[i].degree);
            }
            int eps = epsilon_sign(degs);
            LieVec rhs{lhs.degree, QVec(lhs.c.size(), Rat(0))};
            for (const TreePtr& t : enumerate_trees(p)) {
                LieVec sym = symmetrized_tree(t, r, args);
                rhs.c = vec_add(rhs.c, vec_scale(sym.c, rat_of(eps, t->aut)));
            }
            if (lhs.c != rhs.c) stage_ok = false;
        }
        rep.ecuacion.emplace_back(p, stage_ok);
    }
    // main statement: eps ell_k = class(phi omega)
    std::vector<int> degs;
    for (auto& c : classes) degs.push_back(c.degree);
    int eps = epsilon_sign(degs);
    HVec lk = ell(W.k, r, classes);
    HVec target = whitehead_element(ext);
    if (vec_scale(lk.c, Rat(eps)) == target.c) {
        rep.equality = true;
        rep.realized_sign = 1;
    } else if (vec_scale(lk.c, Rat(-eps)) == target.c) {
        rep.equality = true;
        rep.realized_sign = -1;
        rep.note = "equality holds with the opposite orientation";
    } else {
        rep.note = "eps ell_k differs from the Whitehead element";
    }
    return rep;
}

ElsegundoReport verify_elsegundo(const WedgeModel& W, const FreeDGL& L,
                                 const std::vector<LieVec>& reps, const Retract& r,
                                 const LInftyTable& table) {
    ElsegundoReport rep;
    int k = W.k;
    if (k < 3) throw Error("verify_elsegundo: needs k >= 3");
    // (1) hypothesis: ell_i = 0 for i <= k-2 (ell_1 = 0 by minimality)
    rep.hypothesis = true;
    for (int i = 2; i <= k - 2; ++i) {
        if (i > table.max_arity()) {
            rep.hypothesis = false;
            rep.hypothesis_note = "table arity insufficient";
            break;
        }
        if (!table.arity_vanishes(i)) {
            rep.hypothesis = false;
            rep.hypothesis_note = "ell_" + std::to_string(i) + " is nonzero on H";
            break;
        }
        if (table.tuples_unknown(i) > 0)
            rep.hypothesis_note = "checked within cap; " +
                                  std::to_string(table.tuples_unknown(i)) +
                                  " tuples beyond it";
    }
    if (!rep.hypothesis) return rep;
    // (2) masole: ell_{k-1} vanishes on the (k-1)-subtuples of the x's
    std::vector<HVec> classes;
    for (auto& v : reps) classes.push_back(L.class_of(v));
    rep.masole = true;
    for (auto& S : subsets_of_size(k, k - 1)) {
        std::vector<HVec> args;
        for (int i : S) args.push_back(classes[i]);
        HVec v = table.eval(k - 1, args);
        if (!vec_is_zero(v.c)) rep.masole = false;
    }
    // (3) staged K-image extension, then eps ell_k = class(phi omega)
    auto result = extend(W, L, reps, ExtendStrategy::KImage, &r);
    if (std::holds_alternative<Obstruction>(result)) {
        rep.note = "K-image extension obstructed at " +
                   subset_name(std::get<Obstruction>(result).subset);
        return rep;
    }
    rep.extended = true;
    const Extension& ext = std::get<Extension>(result);
    HVec target = whitehead_element(ext);
    std::vector<int> degs;
    for (auto& c : classes) degs.push_back(c.degree);
    int eps = epsilon_sign(degs);
    HVec lk = table.eval(k, classes);
    if (vec_scale(lk.c, Rat(eps)) == target.c) {
        rep.equality = true;
        rep.realized_sign = 1;
    } else if (vec_scale(lk.c, Rat(-eps)) == target.c) {
        rep.equality = true;
        rep.realized_sign = -1;
        rep.note = "equality holds with the opposite orientation";
    } else {
        rep.note = "eps ell_k is not the staged Whitehead element";
    }
    return rep;
}

}  // namespace dglie
