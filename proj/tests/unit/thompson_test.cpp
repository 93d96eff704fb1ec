#include <algorithm>
#include <array>
#include <chrono>
#include <map>
#include <random>
#include <set>

#include "doctest.h"
#include "oracles.hpp"
#include "support.hpp"
#include "tlab/protocol.hpp"
#include "tlab/thompson.hpp"

using namespace tlab;
using tsupport::nf;
using tsupport::word;
using tsupport::x;
using tsupport::xi;

TEST_SUITE("thompson") {

TEST_CASE("normalize: small words") {
    CHECK(normalize(Word{}) == NormalForm::identity());
    CHECK(word({Atom::gen(1), Atom::gen(0)}) == nf({0, 2}));
    CHECK(word({Atom::gen(0), Atom::gen(2), Atom::inv(0)}) == nf({1}));
    CHECK(word({Atom::gen(5), Atom::inv(5)}).is_identity());
    CHECK(word({Atom::inv(5), Atom::gen(5)}).is_identity());
    // x_1 x_2^-1 needs no reduction; x_0 x_1 x_1^-1 x_0^-1 cancels.
    CHECK(word({Atom::gen(1), Atom::inv(2)}) == nf({1}, {2}));
    CHECK(word({Atom::gen(0), Atom::gen(1), Atom::inv(1), Atom::inv(0)}).is_identity());
}

TEST_CASE("from_parts rejects non-normal input") {
    CHECK_THROWS_AS(NormalForm::from_parts({2, 1}, {}), std::invalid_argument);
    CHECK_THROWS_AS(NormalForm::from_parts({}, {3, 0}), std::invalid_argument);
    CHECK_THROWS_AS(NormalForm::from_parts({1}, {1}), std::invalid_argument);
    CHECK_NOTHROW(NormalForm::from_parts({1, 2}, {1}));
    CHECK_NOTHROW(NormalForm::from_parts({1}, {1, 2}));
}

TEST_CASE("multiply, invert and length on named elements") {
    const auto a = nf({0, 2}, {1, 3});
    CHECK(multiply(a, NormalForm::identity()) == a);
    CHECK(multiply(NormalForm::identity(), a) == a);
    CHECK(multiply(a, invert(a)).is_identity());
    CHECK(multiply(x(1), x(0)) == nf({0, 2}));
    CHECK(invert(NormalForm::identity()).is_identity());
    CHECK(invert(nf({0, 2})) == nf({}, {0, 2}));
    CHECK(invert(invert(a)) == a);
    CHECK(nf_length(NormalForm::identity()) == 0);
    CHECK(nf_length(nf({0}, {1})) == 2);
    CHECK(equals(word({Atom::gen(1), Atom::gen(0)}), word({Atom::gen(0), Atom::gen(2)})));
}

TEST_CASE("defining relation for all i < k <= 12") {
    for (Index k = 1; k <= 12; ++k) {
        for (Index i = 0; i < k; ++i) {
            const NormalForm got = word({Atom::inv(i), Atom::gen(k), Atom::gen(i)});
            CHECK_MESSAGE(got == nf({k + 1}), "i=" << i << " k=" << k);
        }
    }
}

TEST_CASE("idempotence, normality and group axioms on random words") {
    std::mt19937_64 rng(0x5eed);
    for (int n = 0; n < 10000; ++n) {
        const Word w = oracle::random_word(rng, 60, 10);
        const NormalForm a = normalize(w);
        REQUIRE(is_normal(a.pos(), a.neg()));
        const Word spelled = a.atoms();
        REQUIRE(normalize(spelled) == a);
        REQUIRE(multiply(a, invert(a)).is_identity());
        REQUIRE(multiply(invert(a), a).is_identity());
        REQUIRE(invert(a) == normalize(oracle::inverse_word(w)));
    }
    for (int n = 0; n < 3000; ++n) {
        const auto a = normalize(oracle::random_word(rng, 40, 10));
        const auto b = normalize(oracle::random_word(rng, 40, 10));
        const auto c = normalize(oracle::random_word(rng, 40, 10));
        REQUIRE(multiply(multiply(a, b), c) == multiply(a, multiply(b, c)));
        REQUIRE(multiply(a, NormalForm::identity()) == a);
        Word ab = a.atoms();
        const Word bw = b.atoms();
        ab.insert(ab.end(), bw.begin(), bw.end());
        REQUIRE(multiply(a, b) == normalize(ab));
    }
}

TEST_CASE("confluence under single relation rewrites") {
    std::mt19937_64 rng(0xc0ff);
    int applied = 0;
    std::array<int, oracle::kRuleCount> per_rule{};
    for (int n = 0; n < 20000 && applied < 10000; ++n) {
        const Word w = oracle::random_word(rng, 60, 10);
        const NormalForm expected = normalize(w);
        for (int attempt = 0; attempt < 16; ++attempt) {
            const int rule = static_cast<int>(rng() % oracle::kRuleCount);
            const std::size_t p = rng() % (w.size() + 1);
            const auto j = static_cast<Index>(rng() % 11);
            const auto rewritten = oracle::apply_relation(w, p, rule, j, rng() & 1);
            if (!rewritten) continue;
            ++applied;
            ++per_rule[static_cast<std::size_t>(rule)];
            REQUIRE_MESSAGE(normalize(*rewritten) == expected, "rule " << rule << " at " << p);
            break;
        }
    }
    for (int count : per_rule) CHECK(count > 100);
    CHECK(applied >= 10000);

    const auto swapped = oracle::apply_relation({Atom::gen(1), Atom::gen(0)}, 0, oracle::PosSwapDown);
    REQUIRE(swapped);
    CHECK(*swapped == Word{Atom::gen(0), Atom::gen(2)});
    CHECK_FALSE(oracle::apply_relation({Atom::gen(0), Atom::gen(1)}, 0, oracle::PosSwapDown));
    CHECK_FALSE(oracle::apply_relation({Atom::gen(0)}, 3, oracle::CancelPair));
}

TEST_CASE("agrees with the naive two-phase normalizer") {
    std::mt19937_64 rng(0xabc);
    for (int n = 0; n < 10000; ++n) {
        const Word w = oracle::random_word(rng, 30, 8);
        REQUIRE(normalize(w) == oracle::naive_normalize(w));
    }
}

TEST_CASE("agrees with the piecewise-linear action on [0,1]") {
    // x_0 and x_1 act as the familiar maps, and the relation holds for them.
    const oracle::Rational half(1, 2);
    CHECK(oracle::PlMap::of(Word{Atom::gen(0)})(half) == oracle::Rational(1, 4));
    CHECK(oracle::PlMap::of(Word{Atom::inv(0), Atom::gen(1), Atom::gen(0)}) == oracle::PlMap::of(Word{Atom::gen(2)}));

    std::mt19937_64 rng(0x91);
    for (int n = 0; n < 1500; ++n) {
        const Word w = oracle::random_word(rng, 24, 6);
        REQUIRE(oracle::PlMap::of(w) == oracle::PlMap::of(normalize(w)));
    }
}

TEST_CASE("canonical key: exhaustive over words of up to 4 atoms, indices <= 4") {
    std::vector<Atom> letters;
    for (Index i = 0; i <= 4; ++i) {
        letters.push_back(Atom::gen(i));
        letters.push_back(Atom::inv(i));
    }
    std::map<std::string, NormalForm> by_key;
    std::map<std::string, std::string> pl_by_key;
    std::set<std::string> pl_maps;
    std::size_t words = 0;
    Word w;
    auto visit = [&](auto&& self, std::size_t depth) -> void {
        ++words;
        const NormalForm a = normalize(w);
        const std::string key = canonical_key(a);
        const std::string pl = oracle::PlMap::of(w).repr();
        auto [it, fresh] = by_key.emplace(key, a);
        if (fresh) {
            pl_by_key.emplace(key, pl);
            // A new normal form must be a new element.
            REQUIRE(pl_maps.insert(pl).second);
        } else {
            REQUIRE(it->second == a);
            REQUIRE(pl_by_key[key] == pl);
        }
        if (depth == 4) return;
        for (const Atom& l : letters) {
            w.push_back(l);
            self(self, depth + 1);
            w.pop_back();
        }
    };
    visit(visit, 0);
    CHECK(words == 11111);

    // Keys of distinct elements differ, and key equality matches ==.
    std::vector<const NormalForm*> elems;
    for (const auto& [k, a] : by_key) elems.push_back(&a);
    std::set<std::pair<std::vector<Index>, std::vector<Index>>> parts;
    for (const auto* a : elems) parts.insert({a->pos(), a->neg()});
    CHECK(parts.size() == by_key.size());
}

TEST_CASE("canonical_compare matches bytewise key comparison") {
    std::mt19937_64 rng(0x77);
    std::vector<NormalForm> pool;
    for (int n = 0; n < 400; ++n) pool.push_back(normalize(oracle::random_word(rng, 12, 300)));
    pool.push_back(NormalForm::identity());
    pool.push_back(nf({}, {0}));
    pool.push_back(nf({0}));
    pool.push_back(nf({0, 0}));
    pool.push_back(nf({256}));
    for (const auto& a : pool) {
        for (const auto& b : pool) {
            const auto ka = canonical_key(a), kb = canonical_key(b);
            REQUIRE((canonical_compare(a, b) < 0) == (ka < kb));
            REQUIRE((canonical_compare(a, b) == 0) == (ka == kb));
            REQUIRE((fingerprint(a) == fingerprint(b)) == (a == b));
        }
    }
}

TEST_CASE("subgroup membership") {
    CHECK(is_in_A(NormalForm::identity(), 3));
    CHECK(is_in_A(nf({0}, {1}), 3));
    CHECK_FALSE(is_in_A(nf({0}, {4}), 3));
    CHECK_FALSE(is_in_A(nf({1}), 3));
    CHECK(is_in_B(nf({4}), 3));
    CHECK_FALSE(is_in_B(nf({0}), 3));
    CHECK(is_in_B(NormalForm::identity(), 3));

    std::mt19937_64 rng(0xab);
    for (int s : {2, 3, 5, 8}) {
        const auto ga = generator_set(SubgroupId::A, s);
        const auto gb = generator_set(SubgroupId::B, s);
        for (int n = 0; n < 300; ++n) {
            NormalForm a, b;
            const int len = static_cast<int>(rng() % 40);
            for (int k = 0; k < len; ++k) {
                const auto& g = ga[rng() % ga.size()];
                a = multiply(a, (rng() & 1) ? invert(g) : g);
                const auto& h = gb[rng() % gb.size()];
                b = multiply(b, (rng() & 1) ? invert(h) : h);
            }
            REQUIRE(is_in_A(a, s));
            REQUIRE(is_in_B(b, s));
            if (!a.is_identity()) REQUIRE_FALSE(is_in_B(a, s));
            REQUIRE(multiply(a, b) == multiply(b, a));
        }
    }
}

TEST_CASE("conjugation") {
    const auto a = nf({0, 2}, {1});
    CHECK(conjugate(a, NormalForm::identity()) == a);
    CHECK(conjugate(NormalForm::identity(), a).is_identity());
    CHECK(conjugate(x(1), x(0)) == x(2));
    bool changed_length = false;
    for (Index i = 0; i < 4 && !changed_length; ++i) {
        for (Index j = 0; j < 4 && !changed_length; ++j) {
            if (nf_length(conjugate(x(i), x(j))) != 1) changed_length = true;
        }
    }
    CHECK(changed_length);
    CHECK(conjugate(x(0), x(1)) == multiply(multiply(xi(1), x(0)), x(1)));
}

TEST_CASE("normalize scales near-linearly on a doubling series") {
    std::mt19937_64 rng(0x1234);
    auto time_for = [&](std::size_t n) {
        std::uniform_int_distribution<Index> idx(0, 20);
        Word w(n);
        for (auto& a : w) a = {idx(rng), (rng() & 1) != 0};
        double best = 1e9;
        for (int rep = 0; rep < 3; ++rep) {
            const auto t0 = std::chrono::steady_clock::now();
            const auto r = normalize(w);
            const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
            best = std::min(best, dt);
            REQUIRE(is_normal(r.pos(), r.neg()));
        }
        return best;
    };
    const double t10k = time_for(10000);
    const double t40k = time_for(40000);
    CHECK(t10k < 1.0);
    // n log n predicts about 4.6x for a 4x input; quadratic would be 16x.
    CHECK(t40k < 10.0 * std::max(t10k, 1e-4));
}

}  // TEST_SUITE
