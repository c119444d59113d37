#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "twaf/apartment.hpp"
#include "twaf/types.hpp"

using namespace twaf;

namespace {

Apartment apt(const char* name) { return Apartment(get_type(name).datum); }

QVec rel(const Apartment& A, int simple_idx, const Rat& mult = 1) {
    QVec a = A.datum().restrict_root(A.datum().absolute().simple(simple_idx));
    for (auto& c : a) c *= mult;
    return a;
}

bool contains_root(const std::vector<AffineRoot>& v, const QVec& g, const Rat& n) {
    for (const auto& alpha : v)
        if (alpha.gradient == g && alpha.level == n) return true;
    return false;
}

}  // namespace

TEST_CASE("walls of the fundamental alcove") {
    SUBCASE("untwisted A1: a + 0 and -a + 1") {
        Apartment A = apt("A1~1");
        REQUIRE(A.walls().size() == 2);
        QVec a = rel(A, 0);
        QVec na = rel(A, 0, -1);
        CHECK(contains_root(A.walls(), a, 0));
        CHECK(contains_root(A.walls(), na, 1));
    }
    SUBCASE("A2~2: a + 0 and -2a + 1/2 (alcove of length 1/2 in the 2a-coordinate)") {
        Apartment A = apt("A2~2");
        REQUIRE(A.walls().size() == 2);
        QVec a = rel(A, 0);
        QVec n2a = rel(A, 0, -2);
        CHECK(contains_root(A.walls(), a, 0));
        CHECK(contains_root(A.walls(), n2a, Rat(1, 2)));
        // vertices: origin and the point with 2a(x) = 1/2
        QVec bary = A.alcove_barycenter();
        Rat v = A.eval_gradient(rel(A, 0, 2), bary);
        CHECK(v == Rat(1, 4));  // midpoint of (0, 1/2) in the 2a-coordinate
    }
    SUBCASE("untwisted A2: three walls") {
        CHECK(apt("A2~1").walls().size() == 3);
    }
    SUBCASE("D4~3: three walls with thirds") {
        Apartment A = apt("D4~3");
        CHECK(A.walls().size() == 3);
        Rat minlevel = 10;
        for (auto& w : A.walls())
            if (w.level != 0) minlevel = std::min(minlevel, w.level);
        CHECK(minlevel == Rat(1, 3));
    }
}

TEST_CASE("f_omega") {
    SUBCASE("origin of an untwisted system: identically zero") {
        Apartment A = apt("A2~1");
        QVec origin(A.datum().absolute().rank(), 0);
        ConcaveFunction f = A.f_omega({{origin}});
        for (auto& [i, v] : f) CHECK(v == 0);
    }
    SUBCASE("untwisted A1 at the alcove midpoint a(x) = 1/2") {
        Apartment A = apt("A1~1");
        QVec x = A.alcove_barycenter();
        REQUIRE(A.eval_gradient(rel(A, 0), x) == Rat(1, 2));
        ConcaveFunction f = A.f_omega({{x}});
        CHECK(f.at(A.datum().index_of(rel(A, 0))) == 0);
        CHECK(f.at(A.datum().index_of(rel(A, 0, -1))) == 1);
    }
    SUBCASE("A2~2 at the origin: half shift on the divisible roots") {
        Apartment A = apt("A2~2");
        QVec origin(A.datum().absolute().rank(), 0);
        ConcaveFunction f = A.f_omega({{origin}});
        CHECK(f.at(A.datum().index_of(rel(A, 0))) == 0);
        CHECK(f.at(A.datum().index_of(rel(A, 0, -1))) == 0);
        CHECK(f.at(A.datum().index_of(rel(A, 0, 2))) == Rat(1, 2));
        CHECK(f.at(A.datum().index_of(rel(A, 0, -2))) == Rat(1, 2));
    }
    SUBCASE("optimality: lowering any value breaks concavity of the pair") {
        for (const char* nm : {"A1~1", "A2~2", "A3~2"}) {
            Apartment A = apt(nm);
            BoundedSet omega = A.facet({});
            ConcaveFunction f = A.f_omega(omega);
            for (auto& [i, v] : f) {
                const RelRootInfo& ri = A.datum().info(i);
                Rat lowered = v - ri.levels.step;
                bool violated = false;
                for (const QVec& x : omega.points)
                    if (A.eval_gradient(ri.root, x) + lowered < 0) violated = true;
                CHECK(violated);
            }
        }
    }
}

TEST_CASE("residual systems") {
    Apartment A = apt("A2~2");
    QVec origin(A.datum().absolute().rank(), 0);
    auto res_origin = A.residual_roots(A.f_omega({{origin}}));
    REQUIRE(res_origin.size() == 2);  // {+-a} = Phi^nd
    for (const QVec& a : res_origin) CHECK(A.datum().classify(a) == RootClass::Multipliable);

    auto res_alcove = A.residual_roots(A.f_omega(A.fundamental_alcove()));
    CHECK(res_alcove.empty());

    Apartment U = apt("A2~1");
    QVec o2(U.datum().absolute().rank(), 0);
    CHECK(U.residual_roots(U.f_omega({{o2}})).size() == U.datum().size());
}

TEST_CASE("special points") {
    SUBCASE("A2~2: origin carries Phi^nd, the other vertex Phi^nm") {
        Apartment A = apt("A2~2");
        auto pts = A.special_points();
        REQUIRE(pts.size() == 2);
        for (auto& sp : pts) {
            CHECK(sp.special);
            bool at_origin = true;
            for (const Rat& c : sp.point)
                if (c != 0) at_origin = false;
            REQUIRE(sp.residual.size() == 2);
            if (at_origin)
                for (auto& a : sp.residual) CHECK(A.datum().classify(a) == RootClass::Multipliable);
            else
                for (auto& a : sp.residual) CHECK(A.datum().classify(a) == RootClass::Divisible);
        }
    }
    SUBCASE("untwisted A1: both vertices special with residual {+-a}") {
        Apartment A = apt("A1~1");
        for (auto& sp : A.special_points()) {
            CHECK(sp.special);
            CHECK(sp.residual.size() == 2);
        }
    }
    SUBCASE("untwisted C2: the middle vertex is not special") {
        Apartment A = apt("C2~1");
        int specials = 0;
        for (auto& sp : A.special_points()) specials += sp.special ? 1 : 0;
        CHECK(specials == 2);
        CHECK(A.special_points().size() == 3);
    }
}

TEST_CASE("parahoric subsets") {
    SUBCASE("fundamental alcove of untwisted A1") {
        Apartment A = apt("A1~1");
        auto P = A.parahoric_subset(A.fundamental_alcove(), 3);
        QVec a = rel(A, 0), na = rel(A, 0, -1);
        CHECK(contains_root(P, a, 0));
        CHECK(contains_root(P, a, 1));
        CHECK(!contains_root(P, na, 0));
        CHECK(contains_root(P, na, 1));
        // imaginary positive levels present
        QVec zero(A.datum().absolute().rank(), 0);
        CHECK(contains_root(P, zero, 1));
        CHECK(!contains_root(P, zero, 0));
    }
    SUBCASE("origin facet contains both signs at level 0") {
        Apartment A = apt("A1~1");
        // origin = vertex on the wall a+0; its facet fixes that wall
        int origin_wall = -1;
        for (size_t i = 0; i < A.walls().size(); ++i)
            if (A.walls()[i].level == 0) origin_wall = int(i);
        auto P = A.parahoric_subset(A.facet({origin_wall}), 2);
        CHECK(contains_root(P, rel(A, 0), 0));
        CHECK(contains_root(P, rel(A, 0, -1), 0));
    }
    SUBCASE("A2~2 origin contains +-a at level 0 but no 2a at level 0") {
        Apartment A = apt("A2~2");
        int origin_wall = -1;
        for (size_t i = 0; i < A.walls().size(); ++i)
            if (A.walls()[i].level == 0) origin_wall = int(i);
        auto P = A.parahoric_subset(A.facet({origin_wall}), 2);
        CHECK(contains_root(P, rel(A, 0), 0));
        CHECK(contains_root(P, rel(A, 0, -1), 0));
        CHECK(!contains_root(P, rel(A, 0, 2), 0));
        CHECK(!contains_root(P, rel(A, 0, -2), 0));
        CHECK(contains_root(P, rel(A, 0, 2), Rat(1, 2)));
    }
    SUBCASE("sets outside the closed alcove are rejected") {
        Apartment A = apt("A1~1");
        QVec far(A.datum().absolute().rank(), 0);
        far[0] = -5;
        CHECK_THROWS_AS(A.parahoric_subset({{far}}, 2), std::invalid_argument);
    }
}

TEST_CASE("parahoric subset consistency with the residual system") {
    for (const char* nm : {"A1~1", "A2~2", "A2~1", "A3~2", "D4~3"}) {
        Apartment A = apt(nm);
        CAPTURE(nm);
        size_t nwalls = A.walls().size();
        for (size_t w = 0; w < nwalls; ++w) {
            BoundedSet f = A.facet({int(w)});
            auto P = A.parahoric_subset(f, 3);
            auto res = A.residual_roots(A.f_omega(f));
            // gradients appearing at both signs = residual roots
            std::set<QVec> both;
            for (auto& alpha : P) {
                if (!alpha.is_real()) continue;
                QVec g = alpha.gradient;
                for (auto& c : g) c = -c;
                for (auto& beta : P)
                    if (beta.gradient == g && beta.level == -alpha.level) both.insert(alpha.gradient);
            }
            CHECK(both.size() == res.size());
            for (auto& a : res) CHECK(both.count(a) == 1);
        }
    }
}

TEST_CASE("closure reversal: smaller facets have bigger parahoric subsets") {
    Apartment A = apt("A2~2");
    auto P_alcove = A.parahoric_subset(A.fundamental_alcove(), 3);
    for (int w = 0; w < int(A.walls().size()); ++w) {
        auto P_face = A.parahoric_subset(A.facet({w}), 3);
        for (auto& alpha : P_alcove) CHECK(std::find(P_face.begin(), P_face.end(), alpha) != P_face.end());
        CHECK(P_face.size() > P_alcove.size());
    }
}

TEST_CASE("opposition") {
    Apartment A = apt("A2~2");
    SUBCASE("special origin maps to itself") {
        int origin_wall = -1;
        for (size_t i = 0; i < A.walls().size(); ++i)
            if (A.walls()[i].level == 0) origin_wall = int(i);
        BoundedSet f = A.facet({origin_wall});
        BoundedSet of = A.opposition(f);
        CHECK(of.points == f.points);  // the origin is its own opposite
    }
    SUBCASE("dominant alcove maps to the anti-dominant one") {
        BoundedSet a = A.fundamental_alcove();
        BoundedSet oa = A.opposition(a);
        CHECK(!A.in_closed_alcove(oa.points[0]));
        for (size_t i = 0; i < oa.points[0].size(); ++i) CHECK(oa.points[0][i] == -a.points[0][i]);
    }
    SUBCASE("op is an involution and swaps the parahoric subset sign") {
        for (const char* nm : {"A1~1", "A2~2", "A3~2"}) {
            Apartment B = apt(nm);
            CAPTURE(nm);
            for (int w = -1; w < int(B.walls().size()); ++w) {
                BoundedSet f = w < 0 ? B.fundamental_alcove() : B.facet({w});
                BoundedSet back = B.opposition(B.opposition(f));
                CHECK(back.points == f.points);
                // (a, n) nonneg on op(f) iff (-a, n) nonneg on f
                auto vals = [&](const BoundedSet& s, const QVec& g, const Rat& n) {
                    Rat v = B.eval({g, n}, s.points[0]);
                    return v >= 0;
                };
                for (const AffineRoot& alpha : B.real_roots(2)) {
                    QVec neg = alpha.gradient;
                    for (auto& c : neg) c = -c;
                    CHECK(vals(B.opposition(f), alpha.gradient, alpha.level) == vals(f, neg, alpha.level));
                }
            }
        }
    }
}

TEST_CASE("Levi data") {
    SUBCASE("alcove: trivial Levi") {
        Apartment A = apt("A2~2");
        auto levi = A.levi_datum(A.fundamental_alcove());
        CHECK(levi.residual.empty());
        CHECK(levi.weyl_order == 1);
    }
    SUBCASE("untwisted A1 origin: {+-a} with zero shifts") {
        Apartment A = apt("A1~1");
        int w0 = A.walls()[0].level == 0 ? 0 : 1;
        auto levi = A.levi_datum(A.facet({w0}));
        REQUIRE(levi.residual.size() == 2);
        CHECK(levi.weyl_order == 2);
        for (auto& [i, s] : levi.shifts) CHECK(s == 0);
    }
    SUBCASE("A2~2 non-origin special point: {+-2a} with shift 1/2") {
        Apartment A = apt("A2~2");
        int w1 = A.walls()[0].level == 0 ? 1 : 0;
        auto levi = A.levi_datum(A.facet({w1}));
        REQUIRE(levi.residual.size() == 2);
        for (auto& a : levi.residual) CHECK(A.datum().classify(a) == RootClass::Divisible);
        for (auto& [i, s] : levi.shifts) CHECK((s == Rat(1, 2) || s == Rat(-1, 2)));
        CHECK(levi.weyl_order == 2);
    }
}
