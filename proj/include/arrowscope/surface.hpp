#ifndef ARROWSCOPE_SURFACE_HPP
#define ARROWSCOPE_SURFACE_HPP

#include <arrowscope/quiver.hpp>

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace arrowscope {

/// Oriented marked surface: genus, punctures, and marked-point counts per
/// boundary component. The handful of surfaces that admit no (or a degenerate)
/// triangulation are rejected outright.
struct MarkedSurface {
    int genus = 0;
    int punctures = 0;
    std::vector<int> boundary;

    static MarkedSurface create(int genus, int punctures, std::vector<int> boundary) {
        MarkedSurface s;
        s.genus = genus;
        s.punctures = punctures;
        s.boundary = std::move(boundary);
        s.validate();
        return s;
    }

    int boundary_components() const { return static_cast<int>(boundary.size()); }
    int boundary_points() const {
        int c = 0;
        for (int cj : boundary) c += cj;
        return c;
    }
    int odd_boundary_components() const {
        int m = 0;
        for (int cj : boundary) m += cj % 2;
        return m;
    }
    int arc_count() const {
        return 6 * genus + 3 * boundary_components() + 3 * punctures + boundary_points() - 6;
    }

    bool is_sphere() const { return genus == 0 && boundary.empty(); }
    bool is_once_punctured_digon() const {
        return genus == 0 && punctures == 1 && boundary == std::vector<int>{2};
    }
    bool is_twice_punctured_digon() const {
        return genus == 0 && punctures == 2 && boundary == std::vector<int>{2};
    }
    bool is_twice_punctured_monogon() const {
        return genus == 0 && punctures == 2 && boundary == std::vector<int>{1};
    }
    bool is_once_punctured_triangle() const {
        return genus == 0 && punctures == 1 && boundary == std::vector<int>{3};
    }
    bool is_four_punctured_sphere() const { return is_sphere() && punctures == 4; }

    bool operator==(const MarkedSurface& o) const {
        return genus == o.genus && punctures == o.punctures && boundary == o.boundary;
    }

    void validate() const {
        if (genus < 0 || punctures < 0) throw SurfaceError("negative genus or puncture count");
        for (int cj : boundary)
            if (cj < 1) throw SurfaceError("every boundary component needs a marked point");
        const int b = boundary_components();
        const int c = boundary_points();
        if (b == 0 && punctures == 0) throw SurfaceError("a closed surface needs punctures");
        if (genus == 0 && b == 0 && punctures <= 3)
            throw SurfaceError("spheres with at most three punctures are excluded");
        if (genus == 0 && b == 1 && c == 1 && punctures <= 1)
            throw SurfaceError("unpunctured and once-punctured monogons are excluded");
        if (genus == 0 && b == 1 && punctures == 0 && (c == 2 || c == 3))
            throw SurfaceError("unpunctured digons and triangles are excluded");
        if (arc_count() < 1) throw SurfaceError("surface admits no triangulation");
    }

    std::string describe() const {
        std::string s = "g=" + std::to_string(genus) + " b=" + std::to_string(boundary_components()) +
                        " p=" + std::to_string(punctures) + " c=[";
        for (std::size_t i = 0; i < boundary.size(); ++i) {
            if (i) s += ',';
            s += std::to_string(boundary[i]);
        }
        return s + "]";
    }
};

/// Ideal triangulation as oriented side triples. Sides [0, n) are arcs,
/// [n, n+c) boundary segments in component order. A self-folded triangle is
/// stored with its radius repeated: (loop, radius, radius) up to rotation.
/// Triple order carries the surface orientation, consistently for all
/// triangles of one triangulation.
class Triangulation {
public:
    static Triangulation create(MarkedSurface surface, std::vector<std::array<int, 3>> triangles) {
        Triangulation t;
        t.surface_ = std::move(surface);
        t.triangles_ = std::move(triangles);
        t.validate();
        return t;
    }

    const MarkedSurface& surface() const { return surface_; }
    const std::vector<std::array<int, 3>>& triangles() const { return triangles_; }

    int arc_total() const { return surface_.arc_count(); }
    int side_total() const { return arc_total() + surface_.boundary_points(); }
    bool is_arc(int side) const { return side >= 0 && side < arc_total(); }

    /// (component, index) of a boundary side.
    std::pair<int, int> boundary_coords(int side) const {
        int off = side - arc_total();
        for (std::size_t j = 0; j < surface_.boundary.size(); ++j) {
            if (off < surface_.boundary[j]) return {static_cast<int>(j), off};
            off -= surface_.boundary[j];
        }
        throw TriangulationError("not a boundary side");
    }

    /// (radius, loop) pairs of the self-folded triangles.
    const std::vector<std::pair<int, int>>& self_folded() const { return self_folded_; }

    bool is_radius(int arc) const {
        for (auto& [r, l] : self_folded_)
            if (r == arc) return true;
        return false;
    }
    int radius_of_loop(int arc) const {
        for (auto& [r, l] : self_folded_)
            if (l == arc) return r;
        return -1;
    }

    std::string side_token(int side) const {
        if (is_arc(side)) return "a" + std::to_string(side);
        auto [j, i] = boundary_coords(side);
        return "b" + std::to_string(j + 1) + "." + std::to_string(i);
    }

    bool operator==(const Triangulation& o) const {
        return surface_ == o.surface_ && normalized() == o.normalized();
    }

    /// Triangles with each triple rotated to its least representative, sorted.
    std::vector<std::array<int, 3>> normalized() const {
        std::vector<std::array<int, 3>> out = triangles_;
        for (auto& t : out) {
            std::array<int, 3> best = t;
            for (int r = 1; r < 3; ++r) {
                std::array<int, 3> rot{t[r], t[(r + 1) % 3], t[(r + 2) % 3]};
                if (rot < best) best = rot;
            }
            t = best;
        }
        std::sort(out.begin(), out.end());
        return out;
    }

private:
    void validate() {
        const int n = arc_total();
        const int sides = side_total();
        std::vector<int> occur(sides, 0);
        for (auto& t : triangles_)
            for (int s : t) {
                if (s < 0 || s >= sides) throw TriangulationError("side id out of range");
                ++occur[s];
            }
        for (int s = 0; s < n; ++s)
            if (occur[s] != 2)
                throw TriangulationError("arc " + std::to_string(s) + " occurs " +
                                         std::to_string(occur[s]) + " times, expected 2");
        for (int s = n; s < sides; ++s)
            if (occur[s] != 1)
                throw TriangulationError("boundary side " + side_token(s) + " occurs " +
                                         std::to_string(occur[s]) + " times, expected 1");

        self_folded_.clear();
        for (auto& t : triangles_) {
            int rep = -1;
            if (t[0] == t[1]) rep = t[0];
            if (t[1] == t[2]) rep = t[1];
            if (t[0] == t[2]) rep = t[0];
            if (rep < 0) continue;
            if (t[0] == t[1] && t[1] == t[2])
                throw TriangulationError("triangle uses one side three times");
            int loop = t[0] == rep ? (t[1] == rep ? t[2] : t[1]) : t[0];
            if (!is_arc(rep) || !is_arc(loop))
                throw TriangulationError("self-folded triangle with a boundary side");
            self_folded_.emplace_back(rep, loop);
        }
        for (auto& [r, l] : self_folded_)
            if (is_radius(l)) throw TriangulationError("loop of one self-folded triangle is the radius of another");
    }

    MarkedSurface surface_;
    std::vector<std::array<int, 3>> triangles_;
    std::vector<std::pair<int, int>> self_folded_;
};

/// Quiver associated with a triangulation. Arcs become mutable vertices (same
/// indices); with extended=true the boundary segments follow as frozen
/// vertices. Each oriented side pair of a non-self-folded triangle adds one
/// arrow, where a loop side also acts for its radius; opposite arrows cancel
/// in the signed matrix, which is exactly the required 2-cycle deletion.
inline Quiver quiver_from_triangulation(const Triangulation& t, bool extended) {
    const int n = t.arc_total();
    const int c = t.surface().boundary_points();
    Quiver q(n, c);
    auto reps = [&](int side) {
        std::vector<int> out{side};
        int r = t.is_arc(side) ? t.radius_of_loop(side) : -1;
        if (r >= 0) out.push_back(r);
        return out;
    };
    for (auto& tri : t.triangles()) {
        if (tri[0] == tri[1] || tri[1] == tri[2] || tri[0] == tri[2]) continue;  // self-folded
        for (int e = 0; e < 3; ++e) {
            int from = tri[e];
            int to = tri[(e + 1) % 3];
            for (int x : reps(from))
                for (int y : reps(to)) {
                    if (!t.is_arc(x) && !t.is_arc(y)) continue;
                    q.add_arrows(x, y);
                }
        }
    }
    return extended ? q : restrict_to_mutable(q);
}

/// Flip of an arc: the two incident triangles are re-diagonalized, the arc id
/// is reused for the replacement diagonal. The rewrite
/// (e,A,B),(e,C,D) -> (e,B,C),(e,D,A) also covers the self-folded cases: a
/// loop flip turns the pair into two triangles sharing two sides, and vice
/// versa. Radii of self-folded triangles have no replacement arc and are
/// rejected, as are boundary sides.
inline Triangulation flip(const Triangulation& t, int arc) {
    if (arc < 0 || arc >= t.side_total()) throw TriangulationError("no such side");
    if (!t.is_arc(arc)) throw TriangulationError("cannot flip a boundary side");
    if (t.is_radius(arc))
        throw TriangulationError("cannot flip the radius of a self-folded triangle");

    std::vector<std::size_t> hits;
    const auto& tris = t.triangles();
    for (std::size_t i = 0; i < tris.size(); ++i)
        for (int s : tris[i])
            if (s == arc) {
                hits.push_back(i);
                break;
            }
    if (hits.size() != 2) throw TriangulationError("arc does not separate two triangles");

    auto rotated = [&](const std::array<int, 3>& tri) {
        std::array<int, 3> r = tri;
        while (r[0] != arc) r = {r[1], r[2], r[0]};
        return r;
    };
    auto t1 = rotated(tris[hits[0]]);
    auto t2 = rotated(tris[hits[1]]);
    std::vector<std::array<int, 3>> out = tris;
    out[hits[0]] = {arc, t1[2], t2[1]};
    out[hits[1]] = {arc, t2[2], t1[1]};
    return Triangulation::create(t.surface(), std::move(out));
}

inline std::vector<int> flippable_arcs(const Triangulation& t) {
    std::vector<int> out;
    for (int a = 0; a < t.arc_total(); ++a)
        if (!t.is_radius(a)) out.push_back(a);
    return out;
}

// ---------------------------------------------------------------------------
// Puzzle-piece census
// ---------------------------------------------------------------------------

/// Counts of the puzzle pieces a triangulation decomposes into:
///   t1/t2/t3  triangles with 2/1/0 boundary sides,
///   t4/t5     punctured-digon pieces (self-folded plus enclosing triangle)
///             with 0/1 boundary side among the two exterior sides,
///   t6        twice-punctured-monogon piece (two self-folded triangles around
///             one enclosing triangle) with a matched exterior side,
///   t0        blocks of two triangles sharing exactly two sides; their
///             constituents still count in t1..t3.
struct PieceCensus {
    long long t0 = 0, t1 = 0, t2 = 0, t3 = 0, t4 = 0, t5 = 0, t6 = 0;
};

inline PieceCensus piece_census(const Triangulation& t) {
    PieceCensus census;
    const auto& tris = t.triangles();
    const int n = t.arc_total();
    const int c = t.surface().boundary_points();

    std::vector<char> is_sf(tris.size(), 0), is_outer(tris.size(), 0);
    std::map<int, std::size_t> loop_to_sf;  // loop arc -> self-folded triangle index
    for (std::size_t i = 0; i < tris.size(); ++i) {
        const auto& tri = tris[i];
        if (tri[0] == tri[1] || tri[1] == tri[2] || tri[0] == tri[2]) {
            is_sf[i] = 1;
            int rep = tri[0] == tri[1] ? tri[0] : (tri[1] == tri[2] ? tri[1] : tri[0]);
            int loop = tri[0] == rep ? (tri[1] == rep ? tri[2] : tri[1]) : tri[0];
            loop_to_sf[loop] = i;
        }
    }

    // Classify each enclosing triangle of the self-folded ones.
    for (std::size_t i = 0; i < tris.size(); ++i) {
        if (is_sf[i]) continue;
        const auto& tri = tris[i];
        int loops = 0, frozen = 0;
        for (int s : tri) {
            if (loop_to_sf.count(s)) ++loops;
            if (!t.is_arc(s)) ++frozen;
        }
        if (loops == 0) continue;
        is_outer[i] = 1;
        if (loops == 3)
            throw CensusError("three self-folded triangles around one triangle do not form a piece");
        if (loops == 2) {
            if (frozen > 0)
                throw CensusError("twice-punctured-monogon piece with a boundary side is the whole surface");
            ++census.t6;
        } else {
            if (frozen == 2)
                throw CensusError("punctured-digon piece with two boundary sides is the whole surface");
            if (frozen == 1)
                ++census.t5;
            else
                ++census.t4;
        }
    }

    // Blocks of two triangles sharing exactly two sides whose pair of mutual
    // arrows cancels. (Two triangles around an unpunctured handle share two
    // sides as well, but orient them the same way and stay separate pieces.)
    auto pair_direction = [](const std::array<int, 3>& tri, int x, int y) {
        for (int e = 0; e < 3; ++e)
            if (tri[e] == x && tri[(e + 1) % 3] == y) return 1;
        return -1;
    };
    for (std::size_t i = 0; i < tris.size(); ++i) {
        if (is_sf[i]) continue;
        for (std::size_t j = i + 1; j < tris.size(); ++j) {
            if (is_sf[j]) continue;
            std::vector<int> shared;
            for (int s : tris[i])
                for (int s2 : tris[j])
                    if (s == s2) shared.push_back(s);
            if (shared.size() != 2) continue;
            if (pair_direction(tris[i], shared[0], shared[1]) !=
                pair_direction(tris[j], shared[0], shared[1]))
                ++census.t0;
        }
    }

    // Plain triangles by boundary-side count.
    for (std::size_t i = 0; i < tris.size(); ++i) {
        if (is_sf[i] || is_outer[i]) continue;
        int frozen = 0;
        for (int s : tris[i])
            if (!t.is_arc(s)) ++frozen;
        switch (frozen) {
            case 0: ++census.t3; break;
            case 1: ++census.t2; break;
            case 2: ++census.t1; break;
            default: throw CensusError("triangle with three boundary sides is the whole surface");
        }
    }

    // The two counting identities every censable triangulation satisfies.
    if (c != 2 * census.t1 + census.t2 + census.t5)
        throw CensusError("census identity violated: boundary sides");
    long long lhs = n - 2 * (census.t4 + census.t5) - 4 * census.t6;
    long long rhs2 = census.t1 + 2 * census.t2 + 3 * census.t3 + 2 * census.t4 + census.t5 + census.t6;
    if (rhs2 % 2 != 0 || lhs != rhs2 / 2)
        throw CensusError("census identity violated: matched sides");
    return census;
}

enum class FormulaMode { piece, closed, extended };

/// Arrow count from the census alone. The three shapes:
///   piece:    t2 + 3 t3 + 5 t4 + 2 t5 + 8 t6 - 2 t0
///   closed:   2n - c + t1 - t4 - 2 (t5 + t0) - t6
///   extended: 2n + c - t1 - t4 - t5 - t6 - 2 t0
/// None of them applies to the twice-punctured monogon, the once-punctured
/// digon, or the four-punctured sphere.
inline Int arrow_count_by_formula(const PieceCensus& census, const MarkedSurface& s,
                                  FormulaMode mode) {
    if (s.is_twice_punctured_monogon() || s.is_once_punctured_digon() ||
        s.is_four_punctured_sphere())
        throw FormulaDomainError("arrow-count formulas exclude this surface: " + s.describe());
    const long long n = s.arc_count();
    const long long c = s.boundary_points();
    switch (mode) {
        case FormulaMode::piece:
            return Int(census.t2 + 3 * census.t3 + 5 * census.t4 + 2 * census.t5 + 8 * census.t6 -
                       2 * census.t0);
        case FormulaMode::closed:
            return Int(2 * n - c + census.t1 - census.t4 - 2 * (census.t5 + census.t0) - census.t6);
        case FormulaMode::extended:
            return Int(2 * n + c - census.t1 - census.t4 - census.t5 - census.t6 - 2 * census.t0);
    }
    throw FormulaDomainError("unknown formula mode");
}

// ---------------------------------------------------------------------------
// Extremes of the arrow-count distribution
// ---------------------------------------------------------------------------

/// Arrow-count extremes over the mutation class of a surface. For the handful
/// of surfaces whose distribution is a sporadic explicit set, that set is
/// returned alongside its extremes.
struct Bounds {
    Int min;
    Int max;
    std::optional<std::vector<Int>> exceptional_set;
};

inline Bounds t_bounds(const MarkedSurface& s, bool extended) {
    s.validate();
    auto with_set = [](std::vector<Int> vals) {
        Bounds b;
        b.min = vals.front();
        b.max = vals.back();
        b.exceptional_set = std::move(vals);
        return b;
    };

    if (extended) {
        if (s.is_twice_punctured_monogon()) return with_set({6, 7, 8});
        if (s.is_once_punctured_digon()) return with_set({4});
        if (s.is_once_punctured_triangle()) return with_set({6, 7, 9});
        if (s.is_four_punctured_sphere()) return with_set({8, 9, 10, 12});
    } else {
        if (s.is_twice_punctured_monogon()) return with_set({4, 5, 6});
        if (s.is_once_punctured_digon()) return with_set({0});
        if (s.is_twice_punctured_digon()) return with_set({4, 6, 7, 8});
        if (s.is_four_punctured_sphere()) return with_set({8, 9, 10, 12});
    }

    const long long g = s.genus;
    const long long b = s.boundary_components();
    const long long p = s.punctures;
    const long long c = s.boundary_points();
    const long long m = s.odd_boundary_components();
    const long long n = s.arc_count();
    Bounds out;

    if (!extended || b == 0) {
        // Exchange quiver; for closed surfaces the extended case coincides.
        if (g == 0 && b == 1 && p == 1 && c == 3)
            out.max = 3;
        else if (g == 0 && b == 1 && p == 1 && c == 4)
            out.max = 5;
        else
            out.max = Int(2 * n - (c + m) / 2);

        if (g == 0 && b == 0)
            out.min = Int(2 * n - 2 * p + 4);
        else if (g == 0 && b == 1 && c == 1)
            out.min = Int(2 * n - 2 * p);
        else if (g == 0 && b == 1 && c >= 2)
            out.min = Int(2 * n - c - 2 * p + std::max(0LL, 2 - p));
        else if (g >= 1 && b == 0)
            out.min = Int(2 * n - 2 * p + 2);
        else
            out.min = Int(2 * n - c - 2 * p);
        return out;
    }

    // Extended quiver on a surface with boundary.
    if (g == 0 && b == 1 && p == 0) {
        out.max = Int(2 * n + c - 2);
        out.min = Int(2 * n + (c + m) / 2);
        return out;
    }
    out.max = Int(2 * n + c);
    if (g == 0 && b == 1 && (c == 1 || c == 2))
        out.min = Int(2 * n - 2 * p + 2);
    else
        out.min = Int(2 * n + (c + m) / 2 - 2 * p);
    return out;
}

/// Census-level predicates behind the extremal-triangulation conditions.
struct ExtremalConditions {
    bool boundary_degrees_at_least_3 = false;  // no ears: t1 == 0
    bool puncture_degrees_at_least_3 = false;  // no puncture hides in a small piece
    bool punctures_fill_digon_blocks = false;  // t0 == p
    bool ear_count_maximal = false;            // t1 == (c - m) / 2
};

inline ExtremalConditions check_min_max_conditions(const Triangulation& t) {
    PieceCensus census = piece_census(t);
    const auto& s = t.surface();
    ExtremalConditions out;
    out.boundary_degrees_at_least_3 = census.t1 == 0;
    out.puncture_degrees_at_least_3 =
        census.t0 == 0 && census.t4 == 0 && census.t5 == 0 && census.t6 == 0;
    out.punctures_fill_digon_blocks = census.t0 == s.punctures;
    out.ear_count_maximal =
        census.t1 == (s.boundary_points() - s.odd_boundary_components()) / 2;
    return out;
}

}  // namespace arrowscope

#endif
