#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "twaf/demazure.hpp"
#include "twaf/iwahori.hpp"

#include <random>

using namespace twaf;

namespace {

DemazureOps ops_for(const char* nm) { return DemazureOps(integral_realization(affine_gcm(get_type(nm)))); }

}  // namespace

TEST_CASE("single-operator strings") {
    DemazureOps D = ops_for("A1~1");
    int n = D.realization().nodes();
    Weight lambda(n + 1, 0);
    lambda[0] = 1;  // <alpha_0^vee, lambda> = 1
    WeightCharacter c = D.character({0}, lambda);
    CHECK(c.support_size() == 2);
    CHECK(c.multiplicity(lambda) == 1);
    CHECK(c.multiplicity(D.reflect(0, lambda)) == 1);
    // orthogonal node: D_1 e^lambda = e^lambda
    WeightCharacter c1 = D.character({1}, lambda);
    CHECK(c1.support_size() == 1);
    CHECK(c1.multiplicity(lambda) == 1);
}

TEST_CASE("non-dominant weights are rejected") {
    DemazureOps D = ops_for("A1~1");
    Weight bad(D.realization().nodes() + 1, 0);
    bad[0] = -1;
    CHECK_THROWS_AS(D.character({0}, bad), std::invalid_argument);
}

TEST_CASE("operators are idempotent on random characters") {
    DemazureOps D = ops_for("A2~2");
    int n = D.realization().nodes();
    std::mt19937 rng(17);
    for (int trial = 0; trial < 50; ++trial) {
        WeightCharacter f;
        for (int t = 0; t < 4; ++t) {
            Weight w(n + 1, 0);
            for (int c = 0; c <= n; ++c) w[c] = int(rng() % 7) - 3;
            f.add(w, int(rng() % 5) - 2);
        }
        int i = int(rng() % n);
        WeightCharacter once = D.apply(i, f);
        CHECK(D.apply(i, once) == once);
    }
}

TEST_CASE("word independence across reduced words") {
    for (const char* nm : {"A1~1", "A2~2"}) {
        CAPTURE(nm);
        const TwistedType& T = get_type(nm);
        DemazureOps D = ops_for(nm);
        IwahoriWeyl W(std::make_shared<Apartment>(T.datum));
        int n = D.realization().nodes();
        REQUIRE(W.num_generators() == n);
        for (int fund = 0; fund < n; ++fund) {
            Weight lambda = D.realization().fundamental_weight(fund);
            for (const IWElement& w : W.elements_up_to(4)) {
                auto words = W.all_reduced_words(w);
                WeightCharacter ref = D.character(words[0], lambda);
                for (size_t k = 1; k < words.size(); ++k) CHECK(D.character(words[k], lambda) == ref);
                CHECK(ref.nonnegative());
                // support lies below lambda
                for (auto& [mu, mult] : ref.terms()) CHECK(D.in_lower_cone(lambda, mu));
            }
        }
    }
}

TEST_CASE("mass is monotone along the Bruhat order") {
    const TwistedType& T = get_type("A1~1");
    DemazureOps D = ops_for("A1~1");
    IwahoriWeyl W(std::make_shared<Apartment>(T.datum));
    Weight lambda = D.realization().fundamental_weight(0);
    auto elems = W.elements_up_to(4);
    for (const IWElement& u : elems)
        for (const IWElement& w : elems) {
            if (!W.bruhat_leq(u, w)) continue;
            long long mu = D.character(W.reduced_word(u), lambda).total_mass();
            long long mw = D.character(W.reduced_word(w), lambda).total_mass();
            CHECK(mu <= mw);
        }
}
