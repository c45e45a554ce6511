#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dglie/coalgebra.hpp"
#include "dglie/parser.hpp"
#include "dglie/whitehead.hpp"

using namespace dglie;

namespace {

std::shared_ptr<FreeDGL> fixture(const std::string& name, int cap = 0) {
    return load_dgl_file(std::string(DGLIE_FIXTURES) + "/" + name + ".dgl", cap);
}

HVec hbasis(const FreeDGL& L, int degree, int index) {
    QVec c(L.homology(degree).hdim, Rat(0));
    c.at(index) = 1;
    return HVec{degree, std::move(c)};
}

// Applies delta built from the table to sX + phi and compares with sx.
bool phi_certificate_checks(const LInftyTable& table, const std::vector<HVec>& args,
                            const HVec& x, const WedgePoly& phi) {
    int k = static_cast<int>(args.size());
    std::vector<Coderivation> cods;
    for (int j = 2; j <= std::min(k, table.max_arity()); ++j)
        cods.push_back(bracket_to_coderivation(table, j));
    WedgePoly sX;
    {
        std::vector<SLetter> letters(k);
        std::function<void(int, Rat)> rec = [&](int pos, Rat coeff) {
            if (pos == k) {
                auto cw = wedge_canonicalize(letters);
                if (cw) wedge_add(sX, coeff * Rat(cw->first), cw->second);
                return;
            }
            for (int m = 0; m < static_cast<int>(args[pos].c.size()); ++m) {
                if (sgn(args[pos].c[m]) == 0) continue;
                letters[pos] = SLetter{args[pos].degree, m};
                rec(pos + 1, coeff * args[pos].c[m]);
            }
        };
        rec(0, Rat(1));
    }
    wedge_add_scaled(sX, Rat(1), phi);
    WedgePoly got = delta_on_wedge(cods, sX);
    WedgePoly want;
    for (int m = 0; m < static_cast<int>(x.c.size()); ++m)
        if (sgn(x.c[m]) != 0) wedge_add(want, x.c[m], WedgeWord{SLetter{x.degree, m}});
    return wedge_equal(got, want);
}

}  // namespace

TEST_CASE("wedge canonicalization") {
    SLetter a{1, 0}, b{2, 0};  // sdeg 2 and 3
    auto sw = wedge_canonicalize({b, a});
    REQUIRE(sw.has_value());
    CHECK(sw->first == 1);  // even * odd crossing
    CHECK(sw->second == WedgeWord{a, b});

    SLetter c{2, 1};  // sdeg 3
    auto sw2 = wedge_canonicalize({c, b});
    REQUIRE(sw2.has_value());
    CHECK(sw2->first == -1);  // odd * odd crossing

    // repeated odd-suspended letter dies
    CHECK(!wedge_canonicalize({b, b}).has_value());
    // repeated even-suspended letter survives
    CHECK(wedge_canonicalize({a, a}).has_value());

    // involutive: canonicalizing a canonical word is the identity
    auto sw3 = wedge_canonicalize(sw2->second);
    REQUIRE(sw3.has_value());
    CHECK(sw3->first == 1);
    CHECK(sw3->second == sw2->second);
}

TEST_CASE("quillen delta on small words") {
    auto L = fixture("example37");
    // delta(s v1) = 0: v1 is a cycle and delta_2 needs length 2
    int i1 = 0;  // v1 is the first degree-2 basis element
    CHECK(quillen_delta(*L, WedgeWord{SLetter{2, i1}}).is_zero());

    // delta(s v1 ^ s v2) = -(-1)^{|v1|} s[v1,v2] = -s[v1,v2]
    WedgePoly d = quillen_delta(*L, WedgeWord{SLetter{2, 0}, SLetter{2, 1}});
    LieElement br = L->bracket(L->gen_elem(L->gen_index("v1")), L->gen_elem(L->gen_index("v2")));
    QVec bc = L->coords(br);
    WedgePoly want;
    for (int t = 0; t < static_cast<int>(bc.size()); ++t)
        if (sgn(bc[t]) != 0) wedge_add(want, -bc[t], WedgeWord{SLetter{4, t}});
    CHECK(wedge_equal(d, want));

    // delta(s z) = 0 and delta(s v12) = -s[v1,v2] via delta_1
    int zi = -1;
    {
        QVec zc = L->coords(L->gen_elem(L->gen_index("z")));
        for (int t = 0; t < static_cast<int>(zc.size()); ++t)
            if (sgn(zc[t]) != 0) zi = t;
    }
    CHECK(quillen_delta(*L, WedgeWord{SLetter{5, zi}}).is_zero());
}

TEST_CASE("delta squared vanishes on Quillen chains") {
    for (const char* name : {"t1", "cp2", "t2"}) {
        auto L = fixture(name);
        auto rep = quillen_dsq_check(*L, 3);
        CHECK(rep.ok);
        CHECK(rep.words_checked > 0);
    }
    // including a word containing a suspended pair generator of the wedge model
    auto t2 = fixture("t2");
    // letter for u12 lives in degree 5
    WedgePoly dd = quillen_delta(*t2, quillen_delta(*t2, WedgeWord{SLetter{5, 0}, SLetter{2, 2}}));
    CHECK(dd.is_zero());
}

TEST_CASE("corestriction signs and the vanishing direction") {
    auto L = fixture("mixed");
    Retract r = Retract::from_decomposition(*L, {});
    LInftyTable table = LInftyTable::build(r, 3);
    // ell_3 vanishes identically here, so h_3 does too
    Coderivation h3 = bracket_to_coderivation(table, 3);
    for (auto& e : table.entries(3)) {
        if (!e.value) continue;
        WedgeWord w;
        for (auto& h : e.tuple) w.push_back(SLetter{h.degree, h.index});
        if (!wedge_canonicalize(w).has_value()) continue;
        CHECK(corestriction_apply(h3, w).empty());
    }
    // k = 2 carries the global sign (-1)^{k(k-1)/2} = -1: check against the
    // displayed composite on a pair with a nonzero bracket
    Coderivation h2 = bracket_to_coderivation(table, 2);
    HVec b = L->class_of(L->vec(L->gen_elem(L->gen_index("b"))));
    HVec bb = table.lookup(2, {HIdx{3, 0}, HIdx{3, 0}});
    CHECK(!vec_is_zero(bb.c));
    auto letters = corestriction_apply(h2, WedgeWord{SLetter{3, 0}, SLetter{3, 0}});
    REQUIRE(letters.size() == 1);
    // (-1)^{1} * koszul of (s^{-1} tensor s^{-1}) over (sb, sb): exponent
    // 1 + |sb| = 1 + 4, so the sign is -1... computed: (-1)^{k(k-1)/2 + (k-1)|sb|}
    CHECK(letters[0].second == -bb.c[0] * Rat(1));
    CHECK(letters[0].first.udeg == bb.degree);
}

TEST_CASE("round trip: bracket -> coderivation -> bracket") {
    WedgeModel W = build_fat_wedge({3, 3, 3}, 10);
    const FreeDGL& M = *W.model;
    Retract r = Retract::from_decomposition(M, {});
    LInftyTable table = LInftyTable::build(r, 4);
    for (int k = 2; k <= 4; ++k) {
        Coderivation c = bracket_to_coderivation(table, k);
        for (auto& e : table.entries(k)) {
            if (!e.value) continue;
            HVec back = coderivation_to_bracket(c, e.tuple);
            CHECK(back.c == e.value->c);
        }
    }
}

TEST_CASE("coderivation extension: word-length filtration and term count") {
    auto L = fixture("mixed");
    Retract r = Retract::from_decomposition(*L, {});
    LInftyTable table = LInftyTable::build(r, 2);
    std::vector<Coderivation> cods{bracket_to_coderivation(table, 2)};
    // three letters of degree 3 (sdeg 4, repeats allowed): C(3,2) = 3 pair
    // contractions, each landing in word length 2
    WedgeWord w{SLetter{3, 0}, SLetter{3, 0}, SLetter{3, 0}};
    WedgePoly d = delta_on_wedge(cods, w);
    for (auto& [word, c] : d.terms) CHECK(word.size() == 2);
    // h_2(sb ^ sb) is nonzero, so the contraction shows up
    CHECK(!d.is_zero());

    // delta_k = h_k on words of length exactly k
    auto letters = corestriction_apply(cods[0], WedgeWord{SLetter{3, 0}, SLetter{3, 0}});
    WedgePoly direct;
    for (auto& [l, c] : letters) wedge_add(direct, c, WedgeWord{l});
    CHECK(wedge_equal(delta_on_wedge(cods, WedgeWord{SLetter{3, 0}, SLetter{3, 0}}), direct));
}

TEST_CASE("table delta squared vanishes (cross-check of the Jacobi suite)") {
    WedgeModel W = build_fat_wedge({3, 3, 3}, 10);
    Retract r = Retract::from_decomposition(*W.model, {});
    LInftyTable table = LInftyTable::build(r, 4);
    auto rep = table_dsq_check(table, 5);
    CHECK(rep.ok);
    CHECK(rep.words_checked > 0);

    auto L = fixture("cp2");
    Retract rc = Retract::from_decomposition(*L, {});
    LInftyTable tc = LInftyTable::build(rc, 4);
    auto repc = table_dsq_check(tc, 5);
    CHECK(repc.ok);
    CHECK(repc.words_checked > 0);
}

TEST_CASE("phi certificate: the wedge-model triple bracket") {
    WedgeModel W = build_fat_wedge({3, 3, 3}, 10);
    const FreeDGL& M = *W.model;
    Retract r = Retract::from_decomposition(M, {});
    LInftyTable table = LInftyTable::build(r, 3);
    std::vector<HVec> u;
    for (int i = 0; i < 3; ++i) u.push_back(M.class_of(M.vec(M.gen_elem(W.gen_of.at(Subset{i})))));
    // with ell_2 = 0 below, Phi = 0 must certify x := eps * ell_3
    HVec l3 = ell(3, r, {u[0], u[1], u[2]});
    HVec x{l3.degree, vec_scale(l3.c, Rat(epsilon_sign({2, 2, 2})))};
    PhiCertificate cert = solve_phi(table, u, x);
    REQUIRE(cert.found);
    CHECK(phi_certificate_checks(table, u, x, cert.phi));

    // degree mismatch is refused
    HVec wrong{2, QVec(M.homology(2).hdim, Rat(0))};
    CHECK(!solve_phi(table, u, wrong).found);
}
