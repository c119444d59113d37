#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "twaf/chevalley.hpp"

using namespace twaf;

namespace {
DiagramAutomorphism flip(int n) {
    DiagramAutomorphism s;
    s.perm.resize(n);
    for (int i = 0; i < n; ++i) s.perm[i] = n - 1 - i;
    return s;
}
}  // namespace

TEST_CASE("root counts for the catalogue") {
    CHECK(simple_system('A', 2).roots.size() == 6);
    CHECK(simple_system('A', 4).roots.size() == 20);
    CHECK(simple_system('D', 4).roots.size() == 24);
    CHECK(simple_system('E', 6).roots.size() == 72);
    CHECK(simple_system('B', 3).roots.size() == 18);
    CHECK(simple_system('C', 3).roots.size() == 18);
    CHECK(simple_system('F', 4).roots.size() == 48);
    CHECK(simple_system('G', 2).roots.size() == 12);
    CHECK(product_system(simple_system('A', 1), 3).roots.size() == 6);
}

TEST_CASE("lattice construction defines a Lie ring (Jacobi on all triples)") {
    for (const char* nm : {"A2", "A3", "D4"}) {
        LieAlgebra L = LieAlgebra::simply_laced(simple_system(nm[0], nm[1] - '0'));
        CAPTURE(nm);
        CHECK(L.jacobi_holds_all());
    }
}

TEST_CASE("A2 structure constants all have absolute value 1") {
    LieAlgebra L = LieAlgebra::simply_laced(simple_system('A', 2));
    for (int a = 0; a < L.num_roots(); ++a)
        for (int b = 0; b < L.num_roots(); ++b) {
            Rat n = L.structure_constant(a, b);
            if (n != 0) CHECK((n == 1 || n == -1));
        }
}

TEST_CASE("folded algebras: Chevalley property |N| = p+1 and Jacobi") {
    struct Case {
        char letter;
        int rank;
        DiagramAutomorphism sigma;
        size_t folded_roots;
    };
    std::vector<Case> cases;
    cases.push_back({'A', 3, flip(3), 8});  // C2
    {
        DiagramAutomorphism tri;  // D4 triality 0 -> 2 -> 3 -> 0 fixing 1
        tri.perm = {2, 1, 3, 0};
        cases.push_back({'D', 4, tri, 12});  // G2
    }
    cases.push_back({'D', 4, DiagramAutomorphism{{0, 1, 3, 2}}, 18});  // B3
    cases.push_back({'E', 6, DiagramAutomorphism{{5, 1, 4, 3, 2, 0}}, 48});  // F4
    for (auto& cs : cases) {
        FiniteRootSystem rs = simple_system(cs.letter, cs.rank);
        REQUIRE(preserves_cartan(rs, cs.sigma));
        ChevalleySystem sys(LieAlgebra::simply_laced(rs));
        SteinbergSigns signs = steinberg_normalize(sys, cs.sigma);
        FiniteRootSystem folded = folded_system(rs, cs.sigma);
        CAPTURE(cs.letter);
        CHECK(folded.roots.size() == cs.folded_roots);
        LieAlgebra F = LieAlgebra::fold(sys.algebra(), cs.sigma, signs.eps, folded);
        CHECK(F.jacobi_holds_all());
        for (int a = 0; a < F.num_roots(); ++a)
            for (int b = 0; b < F.num_roots(); ++b) {
                Rat n = F.structure_constant(a, b);
                if (n == 0) continue;
                int p = F.string_down_length(a, b);
                CHECK((n == p + 1 || n == -(p + 1)));
            }
    }
}

TEST_CASE("Weyl conjugation permutes root vectors with signs") {
    LieAlgebra L = LieAlgebra::simply_laced(simple_system('A', 2));
    ChevalleySystem sys(std::move(L));
    const FiniteRootSystem& rs = sys.system();
    for (int g = 0; g < sys.algebra().num_roots(); ++g)
        for (int b = 0; b < sys.algebra().num_roots(); ++b) {
            int s = sys.weyl_sign(g, b);
            CHECK((s == 1 || s == -1));
        }
    // m_gamma conjugation squared acts by (-1)^{<b, gamma^vee>} on e_b
    for (int g = 0; g < sys.algebra().num_roots(); ++g)
        for (int b = 0; b < sys.algebra().num_roots(); ++b) {
            SVec twice = sys.weyl_conjugate(g, sys.weyl_conjugate(g, SVec{{b, 1}}));
            QVec gq(rs.roots[g].begin(), rs.roots[g].end());
            QVec bq(rs.roots[b].begin(), rs.roots[b].end());
            Rat pair = rs.coroot_pairing(gq, bq);
            REQUIRE(twice.size() == 1);
            CHECK(twice[0].first == b);
            CHECK(twice[0].second == (mod_p(pair, 2) ? -1 : 1));
        }
}

TEST_CASE("Steinberg signs for the SL3 involution") {
    FiniteRootSystem rs = simple_system('A', 2);
    DiagramAutomorphism sigma = flip(2);
    ChevalleySystem sys(LieAlgebra::simply_laced(rs));
    SteinbergSigns signs = steinberg_normalize(sys, sigma);
    int ia = rs.root_index({1, 0});
    int ib = rs.root_index({0, 1});
    int iab = rs.root_index({1, 1});
    CHECK(signs.sign(ia) == 1);
    CHECK(signs.sign(ib) == 1);
    CHECK(signs.sign(iab) == -1);
    CHECK(signs.sign(rs.root_index({-1, -1})) == -1);
}

TEST_CASE("Steinberg signs: trivial automorphism gives all +1") {
    FiniteRootSystem rs = simple_system('A', 3);
    ChevalleySystem sys(LieAlgebra::simply_laced(rs));
    SteinbergSigns signs = steinberg_normalize(sys, trivial_automorphism(3));
    for (int s : signs.eps) CHECK(s == 1);
}

TEST_CASE("Steinberg signs: A3 involution normalises to +1 everywhere") {
    FiniteRootSystem rs = simple_system('A', 3);
    ChevalleySystem sys(LieAlgebra::simply_laced(rs));
    SteinbergSigns signs = steinberg_normalize(sys, flip(3));
    // relative system C2 is reduced, so the constraint covers every root
    for (int s : signs.eps) CHECK(s == 1);
}

#include "twaf/collection.hpp"
#include "twaf/lattice.hpp"

namespace {

QVec find_root(const TwistedType& T, RootClass cls, int skip = 0) {
    const RelativeRootDatum& d = *T.datum;
    for (const QVec& r : d.relative_roots()) {
        if (!relative_root_positive(d, r) || d.classify(r) != cls) continue;
        if (skip-- == 0) return r;
    }
    throw std::runtime_error("no such root");
}

Poly var_poly(const RelCommutator& c, int id) {
    return Poly::variable(c.ring.get(), id, Scalar::one(c.ring->twist_order()));
}

}  // namespace

TEST_CASE("relative commutators in the non-reduced BC2 system") {
    const TwistedType& T = get_type("A4~2");
    QVec m1 = find_root(T, RootClass::Multipliable, 0);
    QVec m2 = find_root(T, RootClass::Multipliable, 1);
    QVec n1 = find_root(T, RootClass::NdNm, 0);
    QVec n2 = find_root(T, RootClass::NdNm, 1);

    SUBCASE("two multipliable roots: one term 2 u u' up to the sign similitude") {
        RelCommutator c = relative_commutator(T, m1, m2);
        CHECK(c.oracle_match);
        REQUIRE(c.terms.size() == 1);
        CHECK_FALSE(c.terms[0].pluriel);
        // coefficient is twice a product of first coordinates
        Poly u = var_poly(c, c.a_vars[1]);  // sigma(u): the pinned lift pattern
        Poly w = var_poly(c, c.b_vars[0]);
        CHECK((c.terms[0].u == Scalar(2, Rat(-2)) * (u * w) || c.terms[0].u == Scalar(2, Rat(2)) * (u * w)));
        // multipliable root groups commute mod 2
        for (auto& [mo, co] : c.terms[0].u.terms())
            for (auto& [k2, cy] : co.coefficients()) CHECK(num(cy.a) % 2 == 0);
    }
    SUBCASE("two nd-nm roots with divisible sum: the anti-trace of r r'") {
        RelCommutator c = relative_commutator(T, n1, n2);
        CHECK(c.oracle_match);
        REQUIRE(c.terms.size() == 1);
        CHECK(c.terms[0].pluriel);
        CHECK(c.terms[0].u.is_zero());
        // v = X - sigma(X) with X = r sigma(w)
        Poly X = var_poly(c, c.a_vars[0]) * var_poly(c, c.b_vars[1]);
        Poly expect = X - X.sigma();
        CHECK((c.terms[0].v == expect || c.terms[0].v == -expect));
    }
    SUBCASE("mixed pair: x_{a+b}(ru, N(r) sigma(v)) x_{2a+b}(s(u,v) r)") {
        RelCommutator c = relative_commutator(T, m1, n1);
        CHECK(c.oracle_match);
        REQUIRE(c.terms.size() == 2);
        const RelCommutatorTerm* plu = nullptr;
        const RelCommutatorTerm* lin = nullptr;
        for (auto& t : c.terms) (t.pluriel ? plu : lin) = &t;
        REQUIRE(plu);
        REQUIRE(lin);
        Poly u = var_poly(c, c.a_vars[0]), su = var_poly(c, c.a_vars[1]), v = var_poly(c, c.a_vars[2]);
        Poly r = var_poly(c, c.b_vars[0]), sr = var_poly(c, c.b_vars[1]);
        // s(u,v) r on the long root, with the sign similitude
        Poly s_uv = u * su + v;
        CHECK((lin->u == s_uv * r || lin->u == -(s_uv * r)));
        // pluriel u-part is +- r u; v-part is +- v N(r) (sigma(v) = -v)
        CHECK((plu->u == u * r || plu->u == -(u * r)));
        CHECK((plu->v == v * r * sr || plu->v == -(v * r * sr)));
    }
    SUBCASE("coefficients in Tits coordinates are integral polynomials") {
        for (auto& [x, y] : std::vector<std::pair<QVec, QVec>>{{m1, m2}, {n1, n2}, {m1, n1}, {m1, n2}, {n1, m2}}) {
            RelCommutator c = relative_commutator(T, x, y);
            CHECK(c.oracle_match);
            for (auto& t : c.terms) {
                CHECK(t.u.coefficients_integral());
                CHECK(t.v.coefficients_integral());
            }
        }
    }
    SUBCASE("bad inputs are rejected") {
        QVec twice = m1;
        for (auto& x : twice) x *= 2;
        CHECK_THROWS_AS(relative_commutator(T, m1, twice), std::invalid_argument);
        CHECK_THROWS_AS(relative_commutator(T, twice, n1), std::invalid_argument);
        CHECK_THROWS_AS(relative_commutator(T, m1, m1), std::invalid_argument);
    }
}

TEST_CASE("relative commutators in untwisted systems are the Chevalley ones") {
    const TwistedType& T = get_type("B2~1");
    QVec s1, s2;  // two short roots with a long sum
    const RelativeRootDatum& d = *T.datum;
    for (const QVec& x : d.relative_roots())
        for (const QVec& y : d.relative_roots()) {
            if (!relative_root_positive(d, x) || !relative_root_positive(d, y) || x == y) continue;
            QVec sum(x.size());
            for (size_t i = 0; i < x.size(); ++i) sum[i] = x[i] + y[i];
            if (d.form(x, x) == d.form(y, y) && d.is_relative_root(sum) && d.form(sum, sum) > d.form(x, x)) {
                s1 = x;
                s2 = y;
            }
        }
    REQUIRE(!s1.empty());
    RelCommutator c = relative_commutator(T, s1, s2);
    CHECK(c.oracle_match);
    REQUIRE(c.terms.size() == 1);
    Poly rs = var_poly(c, c.a_vars[0]) * var_poly(c, c.b_vars[0]);
    CHECK((c.terms[0].u == Scalar(1, Rat(2)) * rs || c.terms[0].u == Scalar(1, Rat(-2)) * rs));
}

TEST_CASE("relative commutators in G2 close with integral coefficients") {
    const TwistedType& T = get_type("G2~1");
    const RelativeRootDatum& d = *T.datum;
    std::vector<QVec> pos;
    for (const QVec& x : d.relative_roots())
        if (relative_root_positive(d, x)) pos.push_back(x);
    int checked = 0;
    for (size_t i = 0; i < pos.size() && checked < 4; ++i)
        for (size_t j = i + 1; j < pos.size() && checked < 4; ++j) {
            QMat m = {pos[i], pos[j]};
            if (rank_of(m) < 2) continue;
            RelCommutator c = relative_commutator(T, pos[i], pos[j]);
            CHECK(c.oracle_match);
            for (auto& t : c.terms) CHECK(t.u.coefficients_integral());
            ++checked;
        }
    CHECK(checked == 4);
}

TEST_CASE("the empty system gives the empty table") {
    FiniteRootSystem rs;
    rs.name = "empty";
    finish_system(rs);
    LieAlgebra L = LieAlgebra::simply_laced(rs);
    CHECK(L.dim() == 0);
    CHECK(L.jacobi_holds_all());
}
