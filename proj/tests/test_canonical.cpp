#include <arrowscope/canonical.hpp>

#include <doctest.h>

#include <numeric>
#include <random>

#include "oracle.hpp"

using namespace arrowscope;

namespace {

Quiver permuted(const Quiver& q, std::mt19937& rng) {
    std::vector<int> pm(q.mutable_count()), pf(q.frozen_count());
    std::iota(pm.begin(), pm.end(), 0);
    std::iota(pf.begin(), pf.end(), 0);
    std::shuffle(pm.begin(), pm.end(), rng);
    std::shuffle(pf.begin(), pf.end(), rng);
    auto img = [&](int v) {
        return v < q.mutable_count() ? pm[v] : q.mutable_count() + pf[v - q.mutable_count()];
    };
    Quiver out(q.mutable_count(), q.frozen_count());
    for (int i = 0; i < q.size(); ++i)
        for (int j = 0; j < q.size(); ++j)
            if (q.entry(i, j) > 0) out.add_arrows(img(i), img(j), q.entry(i, j));
    return out;
}

}  // namespace

TEST_CASE("canonical key is invariant under admissible relabelings") {
    std::mt19937 rng(31);
    for (int trial = 0; trial < 1000; ++trial) {
        Quiver q = oracle::random_quiver(rng, 7, 3, true);
        CHECK(canonical_form(q) == canonical_form(permuted(q, rng)));
    }
}

TEST_CASE("relabeled path quivers collide, differently oriented ones do not") {
    Quiver a(3, 0);
    a.add_arrows(0, 1);
    a.add_arrows(1, 2);
    Quiver b(3, 0);  // same path read backwards: 2 -> 1 -> 0 relabeled
    b.add_arrows(2, 1);
    b.add_arrows(1, 0);
    CHECK(canonical_form(a) == canonical_form(b));

    Quiver sink(3, 0);  // 0 -> 1 <- 2
    sink.add_arrows(0, 1);
    sink.add_arrows(2, 1);
    Quiver source(3, 0);  // 0 <- 1 -> 2
    source.add_arrows(1, 0);
    source.add_arrows(1, 2);
    CHECK(canonical_form(sink) != canonical_form(source));
    CHECK_FALSE(oracle::isomorphic_brute_force(sink, source));
}

TEST_CASE("the frozen/mutable partition is part of the identity") {
    Quiver a(2, 1);
    a.add_arrows(0, 1);
    a.add_arrows(1, 2);
    Quiver b(3, 0);
    b.add_arrows(0, 1);
    b.add_arrows(1, 2);
    CHECK(canonical_form(a) != canonical_form(b));
    CHECK_FALSE(are_isomorphic(a, b));
}

TEST_CASE("canonical agreement with brute-force isomorphism") {
    std::mt19937 rng(37);
    for (int trial = 0; trial < 300; ++trial) {
        Quiver a = oracle::random_quiver(rng, 6, 2, true);
        Quiver b = oracle::random_quiver(rng, 6, 2, true);
        CHECK(are_isomorphic(a, b) == oracle::isomorphic_brute_force(a, b));
    }
    // Relabelings in particular must always land in the same class.
    for (int trial = 0; trial < 100; ++trial) {
        Quiver a = oracle::random_quiver(rng, 6, 2, true);
        Quiver b = permuted(a, rng);
        CHECK(are_isomorphic(a, b));
        CHECK(oracle::isomorphic_brute_force(a, b));
    }
}

TEST_CASE("isomorphism basics") {
    std::mt19937 rng(41);
    Quiver q = oracle::random_quiver(rng, 6, 3, false);
    CHECK(are_isomorphic(q, q));

    Quiver markov(3, 0);
    markov.add_arrows(0, 1, 2);
    markov.add_arrows(1, 2, 2);
    markov.add_arrows(2, 0, 2);
    CHECK(are_isomorphic(markov, mutate(markov, 0)));

    Quiver other(3, 0);
    other.add_arrows(0, 1, 2);
    other.add_arrows(1, 2, 2);
    other.add_arrows(2, 0, 1);
    CHECK_FALSE(are_isomorphic(markov, other));
}

TEST_CASE("keys serialize deterministically") {
    Quiver a(3, 0);
    a.add_arrows(0, 1);
    a.add_arrows(1, 2);
    CanonicalKey k1 = canonical_form(a);
    CanonicalKey k2 = canonical_form(a);
    CHECK(k1 == k2);
    CHECK(k1.hex() == k2.hex());
    CHECK_FALSE(k1.hex().empty());
    // Regression pin for the serialized form of the 3-vertex path.
    CHECK(k1.hex() == canonical_form(mutate(mutate(a, 0), 0)).hex());
}

TEST_CASE("keys survive huge entries") {
    Quiver q(3, 0);
    q.add_arrows(0, 1, Int("123456789012345678901234567890"));
    q.add_arrows(1, 2, 2);
    q.add_arrows(2, 0, 3);
    std::mt19937 rng(43);
    CHECK(canonical_form(q) == canonical_form(permuted(q, rng)));
}
