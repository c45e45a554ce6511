#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "dglie/parser.hpp"

using namespace dglie;

namespace {

std::shared_ptr<FreeDGL> fixture(const std::string& name, int cap = 0) {
    return load_dgl_file(std::string(DGLIE_FIXTURES) + "/" + name + ".dgl", cap);
}

std::mt19937_64 rng(99);
long draw() { return static_cast<long>(rng() % 2000001) - 1000000; }

}  // namespace

TEST_CASE("bracket definition and graded antisymmetry") {
    auto doc = parse_dgl("dgl { cap 8 gen p:2 gen q:2 gen x:3 gen y:4 }");
    auto L = build_dgl(doc);
    int p = L->gen_index("p"), q = L->gen_index("q"), x = L->gen_index("x");

    LieElement b = L->bracket(L->gen_elem(p), L->gen_elem(q));
    REQUIRE(b.terms.size() == 2);
    Word pq, qp;
    pq.push_back(static_cast<char>(p));
    pq.push_back(static_cast<char>(q));
    qp.push_back(static_cast<char>(q));
    qp.push_back(static_cast<char>(p));
    CHECK(b.terms.at(pq) == 1);
    CHECK(b.terms.at(qp) == -1);

    // odd self-bracket: [x,x] = 2*xx
    LieElement xx = L->bracket(L->gen_elem(x), L->gen_elem(x));
    Word ww(2, static_cast<char>(x));
    REQUIRE(xx.terms.size() == 1);
    CHECK(xx.terms.at(ww) == 2);

    // even self-bracket vanishes
    CHECK(L->bracket(L->gen_elem(p), L->gen_elem(p)).is_zero());

    // cap overflow
    CHECK_THROWS_AS(L->bracket(L->gen_elem(L->gen_index("y")),
                               L->bracket(L->gen_elem(L->gen_index("y")), L->gen_elem(p))),
                    DegreeCapError);
}

TEST_CASE("lie basis dimensions on the bundled fixtures") {
    auto L = fixture("example37");
    CHECK(L->dim(2) == 4);
    CHECK(L->dim(4) == 6);  // the six [v_i, v_j], i < j
    CHECK(L->dim(5) == 7);
    CHECK(L->dim(6) == 20);
    CHECK(L->dim(7) == 28);

    // single even generator: degree 2|x| part is spanned by [x,x] = 0
    auto Le = build_dgl(parse_dgl("dgl { cap 8 gen x:4 }"));
    CHECK(Le->dim(8) == 0);
}

TEST_CASE("Witt dimensions for two even generators") {
    auto L = build_dgl(parse_dgl("dgl { cap 10 gen a:2 gen b:2 }"));
    std::vector<int> witt{2, 1, 2, 3, 6};  // word lengths 1..5
    for (int w = 1; w <= 5; ++w) CHECK(L->dim(2 * w) == witt[w - 1]);
}

TEST_CASE("graded dimensions for odd generators against brute-force tensor rank") {
    auto L = build_dgl(parse_dgl("dgl { cap 5 gen x:1 gen y:1 }"));
    for (int n = 1; n <= 5; ++n) {
        // independent rank computation over the word space
        const auto& ws = L->words(n);
        QMat m(static_cast<int>(ws.size()), 0);
        for (const Word& cand : ws) {
            LieElement e = L->expand_monomial(cand);
            QVec col(ws.size(), Rat(0));
            for (auto& [w, c] : e.terms) col[L->word_index(n, w)] = c;
            m.cols.push_back(std::move(col));
        }
        CHECK(L->dim(n) == rank(m));
    }
    // super-Witt values for two odd degree-1 generators
    CHECK(L->dim(1) == 2);
    CHECK(L->dim(2) == 3);
    CHECK(L->dim(3) == 2);
}

TEST_CASE("differential on generators and words") {
    auto L = fixture("example37");
    int v1 = L->gen_index("v1"), v2 = L->gen_index("v2");
    // d(v12) = [v1, v2]
    CHECK(lie_equal(L->gen_diff(L->gen_index("v12")),
                    L->bracket(L->gen_elem(v1), L->gen_elem(v2))));
    // d(w123) matches its defining expression
    CHECK(lie_equal(L->gen_diff(L->gen_index("w123")),
                    eval_expr_str("[v1,v23] - [v12,v3] - [z,v3] - [v2,v13]", *L)));
    // d[v1,v2] = 0 since v1, v2 are cycles
    CHECK(L->d(L->bracket(L->gen_elem(v1), L->gen_elem(v2))).is_zero());
}

TEST_CASE("derivation rule and graded Jacobi hold exactly") {
    auto L = fixture("mixed");
    for (int trial = 0; trial < 25; ++trial) {
        int da = 2 + static_cast<int>(rng() % 3);
        int db = 2 + static_cast<int>(rng() % 3);
        LieElement a = random_element(*L, da, draw);
        LieElement b = random_element(*L, db, draw);
        if (da + db > L->cap()) continue;
        LieElement lhs = L->d(L->bracket(a, b));
        LieElement rhs = L->bracket(L->d(a), b);
        lie_add_scaled(rhs, Rat(da % 2 == 0 ? 1 : -1), L->bracket(a, L->d(b)));
        CHECK(lie_equal(lhs, rhs));

        int dc = 2;
        LieElement c = random_element(*L, dc, draw);
        if (da + db + dc > L->cap()) continue;
        // (-1)^{|a||c|}[a,[b,c]] + (-1)^{|b||a|}[b,[c,a]] + (-1)^{|c||b|}[c,[a,b]] = 0
        LieElement jac = lie_scale(L->bracket(a, L->bracket(b, c)), Rat((da * dc) % 2 ? -1 : 1));
        lie_add_scaled(jac, Rat((db * da) % 2 ? -1 : 1), L->bracket(b, L->bracket(c, a)));
        lie_add_scaled(jac, Rat((dc * db) % 2 ? -1 : 1), L->bracket(c, L->bracket(a, b)));
        CHECK(jac.is_zero());
    }
}

TEST_CASE("d squared reports") {
    CHECK(fixture("example37")->check_d_squared().ok);
    CHECK(fixture("t1")->check_d_squared().ok);
    CHECK(fixture("cp2")->check_d_squared().ok);

    // corrupted table: d u = [a,[a,b]] on degree-5 u fails d^2 = 0
    auto bad = build_dgl(parse_dgl("dgl { cap 10 gen a:2 gen b:2 gen u:5 gen t:8 "
                                   "d u = [a,b] d t = [a,u] }"));
    auto rep = bad->check_d_squared();
    CHECK(!rep.ok);
    REQUIRE(rep.failures.size() == 1);
    CHECK(rep.failures[0].first == "t");
}

TEST_CASE("homology of t1") {
    auto L = fixture("t1");
    CHECK(L->homology(2).hdim == 2);   // a, b
    CHECK(L->homology(4).hdim == 0);   // [a,b] bounds
    CHECK(L->homology(5).hdim == 0);   // u is not a cycle
    CHECK(L->homology(6).hdim == 0);
    for (int n = 2; n <= 6; ++n)
        for (auto& rep : L->homology(n).reps)
            CHECK(vec_is_zero(L->d_vec(LieVec{n, rep}).c));
}

TEST_CASE("homology of example 3.7 in low degrees") {
    auto L = fixture("example37");
    CHECK(L->homology(2).hdim == 4);
    CHECK(L->homology(3).hdim == 0);
    CHECK(L->homology(4).hdim == 0);
    CHECK(L->homology(5).hdim == 1);  // the class of z
    // the degree-5 representative is z itself up to scale
    const auto& h5 = L->homology(5);
    LieVec rep{5, h5.reps[0]};
    LieElement z = L->gen_elem(L->gen_index("z"));
    QVec zc = L->coords(z);
    bool proportional = false;
    for (int s = 0; s < L->dim(5) && !proportional; ++s) {
        if (sgn(rep.c[s]) == 0) continue;
        Rat ratio = zc[s] / rep.c[s];
        proportional = vec_is_zero(vec_sub(vec_scale(rep.c, ratio), zc));
    }
    CHECK(proportional);
    CHECK(L->homology(7).hdim == 4);  // classes of [z, v_i]
    CHECK_THROWS_AS(L->homology(11), DegreeCapError);
    CHECK_THROWS_AS(L->homology(0), DegreeCapError);
}

TEST_CASE("class_of separates boundaries from representatives") {
    auto L = fixture("t1");
    int a = L->gen_index("a"), b = L->gen_index("b");
    HVec cls = L->class_of(L->vec(L->bracket(L->gen_elem(a), L->gen_elem(b))));
    CHECK(vec_is_zero(cls.c));
    HVec ca = L->class_of(L->vec(L->gen_elem(a)));
    CHECK(!vec_is_zero(ca.c));
    CHECK_THROWS_AS(L->class_of(L->vec(L->gen_elem(L->gen_index("u")))), Error);
}

TEST_CASE("parser diagnostics") {
    CHECK_THROWS_AS(parse_dgl("dgl { d u = [a,b }"), ParseError);
    CHECK_THROWS_AS(parse_dgl("dgl { gen a:2 gen a:3 }"), ParseError);
    CHECK_THROWS_AS(build_dgl(parse_dgl("dgl { gen a:2 d q = a }")), ParseError);
    // degree mismatch: d must lower degree by exactly one
    CHECK_THROWS_AS(build_dgl(parse_dgl("dgl { cap 8 gen a:2 gen u:4 d u = a }")), ParseError);
    // inhomogeneous sum
    CHECK_THROWS_AS(build_dgl(parse_dgl("dgl { cap 8 gen a:2 gen b:3 gen u:4 d u = a + b }")),
                    ParseError);
    // location is carried
    try {
        parse_dgl("dgl {\n  gen a:2\n  d a = [a,\n}");
        CHECK(false);
    } catch (const ParseError& e) {
        CHECK(e.line >= 3);
    }
}

TEST_CASE("serialize / parse round trip") {
    for (const char* name : {"t0", "t1", "cp2", "mixed", "example37"}) {
        auto L = fixture(name);
        auto L2 = build_dgl(parse_dgl(serialize_dgl(*L)));
        REQUIRE(L2->gens().size() == L->gens().size());
        CHECK(L2->cap() == L->cap());
        for (size_t i = 0; i < L->gens().size(); ++i) {
            CHECK(L2->gens()[i].name == L->gens()[i].name);
            CHECK(L2->gens()[i].degree == L->gens()[i].degree);
            CHECK(lie_equal(L2->gen_diff(static_cast<int>(i)), L->gen_diff(static_cast<int>(i))));
        }
    }
}
