#include <arrowscope/io.hpp>
#include <arrowscope/quiver.hpp>

#include <doctest.h>

#include <random>
#include <sstream>

#include "oracle.hpp"

using namespace arrowscope;

namespace {

Quiver path3() {
    Quiver q(3, 0);
    q.add_arrows(0, 1);
    q.add_arrows(1, 2);
    return q;
}

Quiver markov() {
    Quiver q(3, 0);
    q.add_arrows(0, 1, 2);
    q.add_arrows(1, 2, 2);
    q.add_arrows(2, 0, 2);
    return q;
}

}  // namespace

TEST_CASE("mutation of a path at its middle yields the oriented triangle") {
    Quiver q = mutate(path3(), 1);
    CHECK(q.entry(1, 0) == 1);
    CHECK(q.entry(2, 1) == 1);
    CHECK(q.entry(0, 2) == 1);
    CHECK(arrow_count(q) == 3);
}

TEST_CASE("mutation is an involution") {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 500; ++trial) {
        Quiver q = oracle::random_quiver(rng, 8, 3, true);
        for (int k = 0; k < q.mutable_count(); ++k) CHECK(mutate(mutate(q, k), k) == q);
    }
}

TEST_CASE("mutations at disconnected vertices commute") {
    std::mt19937 rng(11);
    int checked = 0;
    while (checked < 300) {
        Quiver q = oracle::random_quiver(rng, 7, 3, true);
        for (int k = 0; k < q.mutable_count(); ++k)
            for (int l = k + 1; l < q.mutable_count(); ++l)
                if (q.entry(k, l) == 0) {
                    CHECK(mutate(mutate(q, k), l) == mutate(mutate(q, l), k));
                    ++checked;
                }
    }
}

TEST_CASE("every mutation preserves the quiver invariants") {
    std::mt19937 rng(13);
    for (int trial = 0; trial < 200; ++trial) {
        Quiver q = oracle::random_quiver(rng, 7, 3, true);
        for (int k = 0; k < q.mutable_count(); ++k) CHECK_NOTHROW(mutate(q, k).validate());
    }
}

TEST_CASE("mutation agrees with the arrow-list rule") {
    std::mt19937 rng(17);
    for (int trial = 0; trial < 400; ++trial) {
        Quiver q = oracle::random_quiver(rng, 5, 3, true);
        auto list = oracle::ArrowListQuiver::from_quiver(q);
        for (int k = 0; k < q.mutable_count(); ++k)
            CHECK(oracle::equal_as_quivers(oracle::mutate(list, k), mutate(q, k)));
    }
}

TEST_CASE("mutating the Markov quiver gives an isomorphic quiver") {
    Quiver q = markov();
    Quiver m = mutate(q, 0);
    CHECK(arrow_count(m) == 6);
    CHECK(oracle::isomorphic_brute_force(q, m));
}

TEST_CASE("mutation rejects bad vertices with distinct errors") {
    Quiver q(2, 1);
    q.add_arrows(0, 1);
    q.add_arrows(1, 2);
    CHECK_THROWS_AS(mutate(q, 5), VertexOutOfRangeError);
    CHECK_THROWS_AS(mutate(q, -1), VertexOutOfRangeError);
    CHECK_THROWS_AS(mutate(q, 2), FrozenVertexError);
}

TEST_CASE("arrow counts") {
    CHECK(arrow_count(markov()) == 6);

    // Once-punctured digon: zero mutable block, four arrows to the boundary.
    Quiver digon(2, 2);
    digon.add_arrows(2, 0);
    digon.add_arrows(1, 2);
    digon.add_arrows(3, 1);
    digon.add_arrows(0, 3);
    CHECK(arrow_count(digon, false) == 0);
    CHECK(arrow_count(digon, true) == 4);
}

TEST_CASE("arrow count with two mutable vertices is mutation-invariant") {
    std::mt19937 rng(19);
    for (int trial = 0; trial < 200; ++trial) {
        Quiver q(2, trial % 3);
        std::uniform_int_distribution<int> ed(-3, 3);
        for (int j = 1; j < q.size(); ++j)
            for (int i = 0; i < j && !(i >= 2 && j >= 2); ++i) {
                int v = ed(rng);
                if (v) q.set_arrows(i, j, Int(v));
            }
        Int before = arrow_count(q, false);
        CHECK(arrow_count(mutate(q, 0), false) == before);
        CHECK(arrow_count(mutate(q, 1), false) == before);
    }
}

TEST_CASE("restriction to the mutable part") {
    Quiver q(2, 1);
    q.add_arrows(0, 1, 2);
    q.add_arrows(1, 2);
    Quiver r = restrict_to_mutable(q);
    CHECK(r.frozen_count() == 0);
    CHECK(r.entry(0, 1) == 2);
    CHECK(arrow_count(r, false) == arrow_count(q, false));

    Quiver plain = markov();
    CHECK(restrict_to_mutable(plain) == plain);
}

TEST_CASE("max multiplicity") {
    CHECK(max_multiplicity(markov()) == 2);
    CHECK(max_multiplicity(path3()) == 1);
    Quiver t(3, 0);
    t.add_arrows(0, 1, 3);
    t.add_arrows(1, 2, 3);
    t.add_arrows(2, 0, 3);
    CHECK(max_multiplicity(t) == 3);
    CHECK(max_multiplicity(Quiver(3, 0)) == 0);
}

TEST_CASE("connectivity") {
    CHECK(is_connected(path3()));
    Quiver two(4, 0);
    two.add_arrows(0, 1);
    two.add_arrows(2, 3);
    CHECK_FALSE(is_connected(two));
    CHECK(is_connected(Quiver(1, 0)));
}

TEST_CASE("quiver construction validates the invariants") {
    CHECK_THROWS_AS(Quiver::from_matrix(2, 0, {{Int(0), Int(1)}, {Int(1), Int(0)}}),
                    InvalidQuiverError);
    CHECK_THROWS_AS(Quiver::from_matrix(1, 0, {{Int(1)}}), InvalidQuiverError);
    Quiver f(1, 2);
    CHECK_THROWS_AS(f.add_arrows(1, 2), InvalidQuiverError);
}

TEST_CASE("qvr text and JSON round-trips") {
    std::mt19937 rng(23);
    for (int trial = 0; trial < 50; ++trial) {
        Quiver q = oracle::random_quiver(rng, 6, 3, true);
        std::stringstream text;
        write_quiver(text, q);
        CHECK(read_quiver(text) == q);
        std::stringstream js;
        js << quiver_to_json(q);
        CHECK(read_quiver(js) == q);
    }
}

TEST_CASE("entries beyond 64 bits survive both serializations") {
    Quiver q(3, 0);
    q.add_arrows(0, 1, Int("340282366920938463463374607431768211456"));  // 2^128
    q.add_arrows(1, 2, 2);
    q.add_arrows(2, 0, 3);
    std::stringstream text;
    write_quiver(text, q);
    CHECK(read_quiver(text) == q);
    std::stringstream js;
    js << quiver_to_json(q);  // big entries become decimal strings
    CHECK(js.str().find("\"340282366920938463463374607431768211456\"") != std::string::npos);
    CHECK(read_quiver(js) == q);
}

TEST_CASE("qvr parse errors carry the offending location") {
    std::stringstream bad("2 0\n0 1\n");
    CHECK_THROWS_AS(read_quiver(bad), IoError);
    std::stringstream bad2("2 0\n0 x\n-1 0\n");
    CHECK_THROWS_AS(read_quiver(bad2), IoError);
    std::stringstream skew("2 0\n0 1\n1 0\n");
    CHECK_THROWS_AS(read_quiver(skew), IoError);
}
