#include <arrowscope/canonical.hpp>
#include <arrowscope/io.hpp>
#include <arrowscope/surface.hpp>

#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "oracle.hpp"

using namespace arrowscope;

namespace {

Triangulation once_punctured_digon_standard() {
    // Two triangles sharing two sides; the opposite mutable arrows cancel.
    auto s = MarkedSurface::create(0, 1, {2});
    return Triangulation::create(s, {{2, 0, 1}, {3, 1, 0}});
}

Triangulation shipped(const std::string& name) {
    return read_triangulation_file(data_directory() / "surfaces" / name);
}

}  // namespace

TEST_CASE("arc count formula") {
    CHECK(MarkedSurface::create(0, 2, {1}).arc_count() == 4);
    CHECK(MarkedSurface::create(0, 4, {}).arc_count() == 6);
    CHECK(MarkedSurface::create(1, 1, {}).arc_count() == 3);
    CHECK(MarkedSurface::create(0, 0, {5}).arc_count() == 2);
}

TEST_CASE("excluded surfaces are rejected") {
    CHECK_THROWS_AS(MarkedSurface::create(0, 3, {}), SurfaceError);
    CHECK_THROWS_AS(MarkedSurface::create(0, 0, {}), SurfaceError);
    CHECK_THROWS_AS(MarkedSurface::create(0, 0, {1}), SurfaceError);
    CHECK_THROWS_AS(MarkedSurface::create(0, 1, {1}), SurfaceError);
    CHECK_THROWS_AS(MarkedSurface::create(0, 0, {2}), SurfaceError);
    CHECK_THROWS_AS(MarkedSurface::create(0, 0, {3}), SurfaceError);
    CHECK_THROWS_AS(MarkedSurface::create(0, 1, {0}), SurfaceError);
    CHECK_THROWS_AS(MarkedSurface::create(1, 0, {}), SurfaceError);
    CHECK_NOTHROW(MarkedSurface::create(0, 2, {1}));
    CHECK_NOTHROW(MarkedSurface::create(0, 0, {4}));
}

TEST_CASE("derived surface quantities") {
    auto s = MarkedSurface::create(0, 1, {3, 2, 5});
    CHECK(s.boundary_components() == 3);
    CHECK(s.boundary_points() == 10);
    CHECK(s.odd_boundary_components() == 2);
}

TEST_CASE("triangulation validation") {
    auto s = MarkedSurface::create(1, 1, {});
    CHECK_NOTHROW(Triangulation::create(s, {{0, 1, 2}, {0, 1, 2}}));
    CHECK_THROWS_AS(Triangulation::create(s, {{0, 1, 2}, {0, 2, 1}, {0, 1, 2}}),
                    TriangulationError);
    CHECK_THROWS_AS(Triangulation::create(s, {{0, 0, 0}, {1, 2, 1}}), TriangulationError);
}

TEST_CASE("torus triangulation gives the Markov quiver") {
    auto t = shipped("torus_1p.tri");
    Quiver q = quiver_from_triangulation(t, false);
    CHECK(q.mutable_count() == 3);
    CHECK(arrow_count(q) == 6);
    CHECK(max_multiplicity(q) == 2);
    CHECK(quiver_from_triangulation(t, true) == q);  // no boundary, no frozen part
}

TEST_CASE("four-punctured sphere standard triangulation") {
    auto t = shipped("sphere_4p.tri");
    CHECK(t.self_folded().size() == 3);
    Quiver q = quiver_from_triangulation(t, false);
    CHECK(q.size() == 6);
    CHECK(arrow_count(q) == 12);
}

TEST_CASE("once-punctured digon: cancellation and the frozen ring") {
    auto t = once_punctured_digon_standard();
    Quiver exchange = quiver_from_triangulation(t, false);
    CHECK(arrow_count(exchange) == 0);
    Quiver extended = quiver_from_triangulation(t, true);
    CHECK(arrow_count(extended, true) == 4);
    CHECK(restrict_to_mutable(extended) == exchange);
}

TEST_CASE("flip is reversed by flipping the new arc") {
    for (auto name : {"torus_1p.tri", "sphere_4p.tri", "genus1_b1c1.tri"}) {
        auto t = shipped(name);
        for (int a : flippable_arcs(t)) CHECK(flip(flip(t, a), a) == t);
    }
    auto digon = once_punctured_digon_standard();
    for (int a : flippable_arcs(digon)) CHECK(flip(flip(digon, a), a) == digon);
}

TEST_CASE("flip errors") {
    auto t = shipped("sphere_4p.tri");
    CHECK_THROWS_AS(flip(t, t.self_folded().front().first), TriangulationError);  // a radius
    auto digon = once_punctured_digon_standard();
    CHECK_THROWS_AS(flip(digon, 2), TriangulationError);  // a boundary side
    CHECK_THROWS_AS(flip(digon, 9), TriangulationError);
}

TEST_CASE("flipping a loop of the four-punctured sphere lands on 8 arrows") {
    auto t = shipped("sphere_4p.tri");
    int loop = t.self_folded().front().second;
    auto t2 = flip(t, loop);
    // Two routes to the same value: direct count on the flipped triangulation,
    // and mutation of the original quiver at the flipped arc.
    CHECK(arrow_count(quiver_from_triangulation(t2, false)) == 8);
    CHECK(arrow_count(mutate(quiver_from_triangulation(t, false), loop)) == 8);
}

TEST_CASE("flip commutes with mutation on the shipped triangulations") {
    for (auto name : {"torus_1p.tri", "sphere_4p.tri", "genus1_b1c1.tri",
                      "genus1_b1c1p1_min.tri", "genus1_b1c1p1_max.tri"}) {
        auto t = shipped(name);
        Quiver q = quiver_from_triangulation(t, true);
        for (int a : flippable_arcs(t)) {
            Quiver flipped = quiver_from_triangulation(flip(t, a), true);
            CHECK(are_isomorphic(flipped, mutate(q, a)));
        }
    }
}

TEST_CASE("piece census of the basic triangulations") {
    auto torus = piece_census(shipped("torus_1p.tri"));
    CHECK(torus.t3 == 2);
    CHECK(torus.t0 + torus.t1 + torus.t2 + torus.t4 + torus.t5 + torus.t6 == 0);

    auto digon = piece_census(once_punctured_digon_standard());
    CHECK(digon.t0 == 1);
    CHECK(digon.t2 == 2);

    CHECK_THROWS_AS(piece_census(shipped("sphere_4p.tri")), CensusError);
}

TEST_CASE("arrow count formulas on the torus census") {
    auto t = shipped("torus_1p.tri");
    auto census = piece_census(t);
    auto s = t.surface();
    CHECK(arrow_count_by_formula(census, s, FormulaMode::piece) == 6);
    CHECK(arrow_count_by_formula(census, s, FormulaMode::closed) == 6);
    CHECK(arrow_count_by_formula(census, s, FormulaMode::extended) == 6);
}

TEST_CASE("the formulas refuse the excluded surfaces") {
    auto digon = once_punctured_digon_standard();
    auto census = piece_census(digon);
    CHECK_THROWS_AS(arrow_count_by_formula(census, digon.surface(), FormulaMode::piece),
                    FormulaDomainError);
    CHECK_THROWS_AS(
        arrow_count_by_formula(census, MarkedSurface::create(0, 4, {}), FormulaMode::closed),
        FormulaDomainError);
    CHECK_THROWS_AS(
        arrow_count_by_formula(census, MarkedSurface::create(0, 2, {1}), FormulaMode::extended),
        FormulaDomainError);
}

TEST_CASE("arrow-count extremes") {
    auto b1 = t_bounds(MarkedSurface::create(0, 1, {4}), false);
    CHECK(b1.max == 5);
    CHECK(b1.min == 3);
    CHECK_FALSE(b1.exceptional_set.has_value());

    auto sphere = t_bounds(MarkedSurface::create(0, 4, {}), false);
    CHECK(sphere.min == 8);
    REQUIRE(sphere.exceptional_set.has_value());
    CHECK(*sphere.exceptional_set == std::vector<Int>{8, 9, 10, 12});

    auto tri = t_bounds(MarkedSurface::create(0, 1, {3}), true);
    REQUIRE(tri.exceptional_set.has_value());
    CHECK(*tri.exceptional_set == std::vector<Int>{6, 7, 9});

    auto torus = t_bounds(MarkedSurface::create(1, 1, {}), false);
    CHECK(torus.min == 6);
    CHECK(torus.max == 6);

    auto digon2p = t_bounds(MarkedSurface::create(0, 2, {2}), false);
    REQUIRE(digon2p.exceptional_set.has_value());
    CHECK(*digon2p.exceptional_set == std::vector<Int>{4, 6, 7, 8});

    auto monogon = t_bounds(MarkedSurface::create(0, 2, {1}), true);
    REQUIRE(monogon.exceptional_set.has_value());
    CHECK(*monogon.exceptional_set == std::vector<Int>{6, 7, 8});
}

TEST_CASE("extremal-condition predicates") {
    auto torus = check_min_max_conditions(shipped("torus_1p.tri"));
    CHECK(torus.puncture_degrees_at_least_3);

    auto digon = check_min_max_conditions(once_punctured_digon_standard());
    CHECK(digon.punctures_fill_digon_blocks);
    CHECK_FALSE(digon.puncture_degrees_at_least_3);
}

TEST_CASE("triangulation files round-trip") {
    for (auto name : {"torus_1p.tri", "sphere_4p.tri", "genus1_b1c1.tri"}) {
        auto t = shipped(name);
        std::stringstream buf;
        write_triangulation(buf, t);
        CHECK(read_triangulation(buf) == t);
    }
}

TEST_CASE("triangulation parse errors") {
    std::stringstream missing("1 0 1\na0 a1 a2\n");
    CHECK_THROWS_AS(read_triangulation(missing), IoError);
    std::stringstream badtok("1 0 1\na0 a1 a2\na0 a1 q2\n");
    CHECK_THROWS_AS(read_triangulation(badtok), IoError);
    std::stringstream badsf("1 0 1\na0 a1 a2 SF(a0,a1)\na0 a1 a2\n");
    CHECK_THROWS_AS(read_triangulation(badsf), IoError);
    std::stringstream badsurface("0 1 0 2\na0 a0 b1.0\n");
    CHECK_THROWS_AS(read_triangulation(badsurface), IoError);
}

TEST_CASE("the data directory honors the environment override") {
    auto before = data_directory();
    setenv("ARROWSCOPE_DATA", "/tmp/arrowscope-elsewhere", 1);
    CHECK(data_directory() == std::filesystem::path("/tmp/arrowscope-elsewhere"));
    unsetenv("ARROWSCOPE_DATA");
    CHECK(data_directory() == before);
}

TEST_CASE("data manifest matches the shipped files") {
    std::ifstream mf(data_directory() / "MANIFEST");
    REQUIRE(mf.good());
    std::string line;
    int checked = 0;
    while (std::getline(mf, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        std::string sum, rel;
        ls >> sum >> rel;
        char buf[17];
        std::snprintf(buf, sizeof buf, "%016llx",
                      static_cast<unsigned long long>(file_checksum(data_directory() / rel)));
        CHECK(sum == buf);
        ++checked;
    }
    CHECK(checked == 16);
}
