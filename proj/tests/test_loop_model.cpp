#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "twaf/loop_model.hpp"

using namespace twaf;

TEST_CASE("untwisted A1: three dimensions at every integer level") {
    LoopAlgebra L(get_type("A1~1"), 3);
    for (int n = -2; n <= 2; ++n) {
        CHECK(L.dim_at_level(n) == 3);
        CHECK(L.cartan_dim_at_level(n) == 1);
    }
    CHECK(L.dim_at_level(Rat(1, 2)) == 0);
}

TEST_CASE("A2~2: dimension 3 at integer and 5 at half-integer levels") {
    LoopAlgebra L(get_type("A2~2"), 3);
    for (int n = -2; n <= 2; ++n) CHECK(L.dim_at_level(n) == 3);
    for (int n = -2; n < 2; ++n) CHECK(L.dim_at_level(Rat(2 * n + 1, 2)) == 5);
    // 3 + 5 = 8 = dim sl3 on average
    CHECK(L.cartan_dim_at_level(Rat(1, 2)) == 1);
}

TEST_CASE("D4~3: thirds with the right multiplicities") {
    LoopAlgebra L(get_type("D4~3"), 2);
    // real roots: 6 long at integer levels, 6 short at every third
    CHECK(L.cartan_dim_at_level(1) == 2);
    CHECK(L.cartan_dim_at_level(Rat(1, 3)) == 1);
    CHECK(L.dim_at_level(1) == 14);          // dim g2
    CHECK(L.dim_at_level(Rat(1, 3)) == 7);   // 6 short + 1 cartan
}

TEST_CASE("Jacobi audit, serial and parallel agree") {
    for (const char* nm : {"A1~1", "A2~2", "A1x2"}) {
        CAPTURE(nm);
        LoopAlgebra L(get_type(nm), 3);
        auto serial = L.jacobi_audit(Exec::Serial);
        CHECK(serial.pass);
        auto parallel = L.jacobi_audit(Exec::Parallel);
        CHECK(parallel.pass == serial.pass);
        CHECK(parallel.checked == serial.checked);
    }
}

TEST_CASE("cross-oracle: weight support equals the level sets") {
    for (const char* nm : {"A1~1", "A2~2", "A3~2", "A4~2", "D4~3", "A1x2", "A2x3", "B2~1", "G2~1", "C2~1"}) {
        CAPTURE(nm);
        const TwistedType& T = get_type(nm);
        int N = 3;
        LoopAlgebra L(T, N);
        auto support = L.real_support();
        for (size_t ri = 0; ri < T.datum->size(); ++ri) {
            const RelRootInfo& info = T.datum->info(int(ri));
            // expected: all levels of the progression within the window
            std::vector<Rat> expect;
            for (Rat n = info.levels.ceil(-N); n <= N; n += info.levels.step) expect.push_back(n);
            REQUIRE(support.count(int(ri)) == 1);
            CHECK(support.at(int(ri)) == expect);
        }
        // real multiplicity one
        for (int i = 0; i < L.dim(); ++i)
            if (L.basis(i).weight >= 0) {
                int count = 0;
                for (int j : L.at_degree(L.basis(i).degree))
                    if (L.basis(j).weight == L.basis(i).weight) ++count;
                CHECK(count == 1);
            }
        // imaginary multiplicities agree with the datum
        for (int m = 1; m <= N * T.twist_order(); ++m) {
            Rat lev(m, T.twist_order());
            CHECK(L.cartan_dim_at_level(lev) == T.datum->imag_multiplicity(lev));
        }
    }
}

TEST_CASE("affine GCM computations") {
    SUBCASE("untwisted A1") {
        AffineGCM g = affine_gcm(get_type("A1~1"));
        REQUIRE(g.nodes() == 2);
        CHECK(g.cartan[0][0] == 2);
        CHECK(g.cartan[1][1] == 2);
        CHECK(g.cartan[0][1] == -2);
        CHECK(g.cartan[1][0] == -2);
        CHECK(g.marks == ZVec({1, 1}));
        CHECK(g.comarks == ZVec({1, 1}));
    }
    SUBCASE("A2~2: the unique affine GCM with off-diagonal {-1,-4}") {
        AffineGCM g = affine_gcm(get_type("A2~2"));
        REQUIRE(g.nodes() == 2);
        Int a = g.cartan[0][1], b = g.cartan[1][0];
        CHECK(((a == -1 && b == -4) || (a == -4 && b == -1)));
    }
    SUBCASE("D4~3 is the twisted G2 diagram") {
        AffineGCM g = affine_gcm(get_type("D4~3"));
        REQUIRE(g.nodes() == 3);
        // one triple edge, entries {-1,-3} somewhere
        int triple = 0;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                if (g.cartan[i][j] == -3) ++triple;
        CHECK(triple == 1);
    }
    SUBCASE("corank 1 with positive kernels for every supported type") {
        for (const std::string& nm : supported_type_names()) {
            CAPTURE(nm);
            AffineGCM g = affine_gcm(get_type(nm));
            // marks/comarks positivity is asserted inside; corank 1 likewise.
            // check a_ii = 2 and sign pattern here
            for (int i = 0; i < g.nodes(); ++i) {
                CHECK(g.cartan[i][i] == 2);
                for (int j = 0; j < g.nodes(); ++j)
                    if (i != j) {
                        CHECK(g.cartan[i][j] <= 0);
                        CHECK((g.cartan[i][j] == 0) == (g.cartan[j][i] == 0));
                    }
            }
        }
    }
}

TEST_CASE("span dichotomy") {
    SUBCASE("over Q everything is generated") {
        for (const char* nm : {"A1~1", "A2~2", "A3~2", "A4~2", "B2~1"}) {
            CAPTURE(nm);
            LoopAlgebra L(get_type(nm), 3);
            auto rep = L.span_test("Q");
            CHECK(rep.pass);
            CHECK(rep.missing_cartan.empty());
        }
    }
    SUBCASE("over F2 the non-reduced types miss the half-integer Cartans") {
        LoopAlgebra L(get_type("A2~2"), 3);
        auto rep = L.span_test("F2");
        CHECK_FALSE(rep.pass);
        REQUIRE(!rep.missing_cartan.empty());
        for (auto& [lev, dim] : rep.missing_cartan) {
            CHECK(!is_integer(lev));  // precisely the half-integer levels
            CHECK(dim == 1);
        }
        LoopAlgebra L4(get_type("A4~2"), 2);
        CHECK_FALSE(L4.span_test("F2").pass);
    }
    SUBCASE("over F2 the reduced types pass") {
        for (const char* nm : {"A1~1", "A3~2", "D4~3", "A1x2"}) {
            CAPTURE(nm);
            LoopAlgebra L(get_type(nm), 3);
            CHECK(L.span_test("F2").pass);
        }
    }
    SUBCASE("over F3 everything in the catalogue passes") {
        for (const char* nm : {"A2~2", "D4~3", "G2~1"}) {
            CAPTURE(nm);
            LoopAlgebra L(get_type(nm), 3);
            CHECK(L.span_test("F3").pass);
        }
    }
    SUBCASE("unknown fields are rejected") {
        LoopAlgebra L(get_type("A1~1"), 2);
        CHECK_THROWS_AS(L.span_test("F5"), std::invalid_argument);
    }
}

TEST_CASE("divided power integrality") {
    SUBCASE("full audit for A2~2, N = 3, k <= 4") {
        LoopAlgebra L(get_type("A2~2"), 3);
        auto rep = L.divided_power_audit(4);
        CHECK(rep.pass);
        auto par = L.divided_power_audit(4, Exec::Parallel);
        CHECK(par.pass == rep.pass);
    }
    SUBCASE("k = 0 is trivially fine; small types pass") {
        LoopAlgebra L(get_type("A1~1"), 3);
        CHECK(L.divided_power_audit(0).pass);
        CHECK(L.divided_power_audit(4).pass);
        LoopAlgebra L3(get_type("D4~3"), 2);
        CHECK(L3.divided_power_audit(3).pass);
    }
}

TEST_CASE("central charge") {
    SUBCASE("untwisted A1: rows +-1 on the rank-one lattice") {
        CentralCharge cc = central_charge_matrix(get_type("A1~1"));
        REQUIRE(cc.matrix.size() == 2);
        REQUIRE(cc.matrix[0].size() == 1);
        CHECK(cc.matrix[0][0] * cc.matrix[1][0] == -1);
        CHECK(cc.cokernel_free_rank_one);
        CHECK(cc.projection_det == 1);
    }
    SUBCASE("cokernel pattern and unimodular projection for the catalogue") {
        for (const std::string& nm : supported_type_names()) {
            CAPTURE(nm);
            CentralCharge cc = central_charge_matrix(get_type(nm));
            CHECK(cc.cokernel_free_rank_one);
            CHECK(cc.projection_det == 1);
        }
    }
}

TEST_CASE("coefficient ratios for the twisted diagrams") {
    SUBCASE("A2~2 has ratios {1, 2}") {
        CoefficientRatios r = coefficient_ratios(get_type("A2~2"));
        CHECK(r.balanced);
        std::multiset<Rat> ratios(r.ratios.begin(), r.ratios.end());
        CHECK(ratios == std::multiset<Rat>({Rat(1), Rat(2)}));
    }
    SUBCASE("every twisted type balances ratio x degree = e") {
        for (const char* nm : {"A2~2", "A3~2", "A4~2", "A5~2", "A6~2", "D4~2", "D5~2", "E6~2", "D4~3"}) {
            CAPTURE(nm);
            const TwistedType& T = get_type(nm);
            CoefficientRatios r = coefficient_ratios(T);
            CHECK(r.balanced);
            int e = T.twist_order();
            for (size_t i = 0; i < r.ratios.size(); ++i) {
                CHECK((r.ratios[i] == 1 || r.ratios[i] == e));
                CHECK(r.ratios[i] * r.degrees[i] == e);
            }
        }
    }
    SUBCASE("untwisted input is rejected") {
        CHECK_THROWS_AS(coefficient_ratios(get_type("A1~1")), std::invalid_argument);
    }
}
