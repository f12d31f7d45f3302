#ifndef ARROWSCOPE_CONSTRUCTIONS_HPP
#define ARROWSCOPE_CONSTRUCTIONS_HPP

#include <arrowscope/io.hpp>
#include <arrowscope/surface.hpp>

#include <algorithm>
#include <array>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace arrowscope {

/// Incremental builder for genus-0 triangulations (plus the sphere via an
/// initial slit). Faces are tracked as oriented boundary walks, every cycle
/// listed with the face interior on the same side, so emitted triangles all
/// carry one consistent orientation. Arcs are allocated on demand; a final
/// compaction checks that exactly arc_count() of them survive.
class TriangulationBuilder {
public:
    struct Edge {
        int side;  // build-side id: arcs < kBoundaryBase, boundary >= kBoundaryBase
        int from, to;
    };
    struct Face {
        std::vector<std::vector<Edge>> cycles;
        std::vector<int> punctures;
        bool alive = false;
    };

    static constexpr int kBoundaryBase = 1 << 20;
    static constexpr int kBoundaryPointBase = 1 << 20;

    explicit TriangulationBuilder(const MarkedSurface& s) : surface_(s) {
        if (s.boundary_components() == 0) {
            init_sphere();
            return;
        }
        Face f;
        int off = 0;
        for (int j = 0; j < s.boundary_components(); ++j) {
            const int cj = s.boundary[j];
            std::vector<Edge> cyc;
            for (int i = 0; i < cj; ++i)
                cyc.push_back({kBoundaryBase + off + i, kBoundaryPointBase + off + i,
                               kBoundaryPointBase + off + (i + 1) % cj});
            // The face sits on one fixed side of every cycle, so the hole
            // cycles run opposite to the outer one.
            if (j > 0) {
                std::reverse(cyc.begin(), cyc.end());
                for (auto& e : cyc) std::swap(e.from, e.to);
            }
            off += cj;
            f.cycles.push_back(std::move(cyc));
        }
        for (int k = 0; k < s.punctures; ++k) f.punctures.push_back(k);
        f.alive = true;
        faces_.push_back(std::move(f));
    }

    const MarkedSurface& surface() const { return surface_; }

    int boundary_side(int comp, int idx) const {
        int off = 0;
        for (int j = 0; j < comp; ++j) off += surface_.boundary[j];
        return kBoundaryBase + off + idx;
    }

    int new_arc() { return next_arc_++; }

    Face& face(int f) {
        if (f < 0 || f >= static_cast<int>(faces_.size()) || !faces_[f].alive)
            throw ConstructionError("builder: dead face");
        return faces_[f];
    }

    /// Cyclic rotation of a stored cycle; purely a representation change.
    void rotate_cycle(int f, int ci, int k) {
        auto& cyc = face(f).cycles.at(ci);
        std::rotate(cyc.begin(), cyc.begin() + k, cyc.end());
    }

    /// Slot of the edge with this side id, searching all cycles of the face.
    std::pair<int, int> find_side(int f, int side) {
        auto& fc = face(f);
        for (std::size_t ci = 0; ci < fc.cycles.size(); ++ci)
            for (std::size_t k = 0; k < fc.cycles[ci].size(); ++k)
                if (fc.cycles[ci][k].side == side) return {static_cast<int>(ci), static_cast<int>(k)};
        throw ConstructionError("builder: side not on face");
    }

    /// Splits cycle `ci` of face `f` along a new arc between corner slots
    /// i <= j (a corner slot k sits before edge k). The slice [i, j) plus the
    /// arc becomes a new face carrying `punct_to_new`; the remainder stays.
    /// i == j cuts off an empty loop monogon. Returns (new face, arc id).
    std::pair<int, int> split(int f, int ci, int i, int j, std::vector<int> punct_to_new) {
        Face& fc = face(f);
        auto cyc = fc.cycles.at(ci);
        const int len = static_cast<int>(cyc.size());
        if (i < 0 || j < i || j > len) throw ConstructionError("builder: bad split slots");
        int pt_i = cyc[i % len].from;
        int pt_j = cyc[j % len].from;
        int d = new_arc();

        std::vector<Edge> c1(cyc.begin() + i, cyc.begin() + j);
        c1.push_back({d, pt_j, pt_i});
        std::vector<Edge> c2(cyc.begin() + j, cyc.end());
        c2.insert(c2.end(), cyc.begin(), cyc.begin() + i);
        c2.push_back({d, pt_i, pt_j});

        for (int pq : punct_to_new) {
            auto it = std::find(fc.punctures.begin(), fc.punctures.end(), pq);
            if (it == fc.punctures.end()) throw ConstructionError("builder: puncture not on face");
            fc.punctures.erase(it);
        }
        fc.cycles[ci] = std::move(c2);
        Face nf;
        nf.cycles.push_back(std::move(c1));
        nf.punctures = std::move(punct_to_new);
        nf.alive = true;
        faces_.push_back(std::move(nf));
        return {static_cast<int>(faces_.size()) - 1, d};
    }

    /// Joins two cycles of the same face along a new arc (corner ci/slot i to
    /// corner cj/slot j), reducing the connectivity of the face by one.
    int bridge(int f, int ci, int i, int cj, int j) {
        Face& fc = face(f);
        if (ci == cj) throw ConstructionError("builder: bridge needs two distinct cycles");
        auto& a = fc.cycles.at(ci);
        auto& b = fc.cycles.at(cj);
        int pa = a[i % a.size()].from;
        int pb = b[j % b.size()].from;
        int d = new_arc();
        std::vector<Edge> merged;
        merged.insert(merged.end(), a.begin() + i, a.end());
        merged.insert(merged.end(), a.begin(), a.begin() + i);
        merged.push_back({d, pa, pb});
        merged.insert(merged.end(), b.begin() + j, b.end());
        merged.insert(merged.end(), b.begin(), b.begin() + j);
        merged.push_back({d, pb, pa});
        fc.cycles[ci] = std::move(merged);
        fc.cycles.erase(fc.cycles.begin() + cj);
        return d;
    }

    /// Hooks a puncture onto the cycle as a degree-one spike at corner slot i.
    int bridge_puncture(int f, int ci, int i, int p) {
        Face& fc = face(f);
        auto& cyc = fc.cycles.at(ci);
        int pt = cyc[i % cyc.size()].from;
        auto it = std::find(fc.punctures.begin(), fc.punctures.end(), p);
        if (it == fc.punctures.end()) throw ConstructionError("builder: puncture not on face");
        fc.punctures.erase(it);
        int d = new_arc();
        std::vector<Edge> ins{{d, pt, p}, {d, p, pt}};
        cyc.insert(cyc.begin() + i, ins.begin(), ins.end());
        return d;
    }

    /// Triangulates a single-cycle face around its one puncture by connecting
    /// every corner to it. On a monogon this produces the self-folded triple.
    void wheel(int f) {
        Face& fc = face(f);
        if (fc.cycles.size() != 1 || fc.punctures.size() != 1)
            throw ConstructionError("builder: wheel needs one cycle and one puncture");
        auto cyc = fc.cycles[0];
        int p = fc.punctures[0];
        const int len = static_cast<int>(cyc.size());
        std::vector<int> spoke(len);
        for (int k = 0; k < len; ++k) spoke[k] = new_arc();
        for (int k = 0; k < len; ++k)
            emit(cyc[k].side, spoke[(k + 1) % len], spoke[k]);
        (void)p;
        fc.alive = false;
    }

    /// Emits a bare triangle face.
    void emit_face(int f) {
        Face& fc = face(f);
        if (fc.cycles.size() != 1 || fc.cycles[0].size() != 3 || !fc.punctures.empty())
            throw ConstructionError("builder: not an empty triangle face");
        emit(fc.cycles[0][0].side, fc.cycles[0][1].side, fc.cycles[0][2].side);
        fc.alive = false;
    }

    /// Fans a single-cycle face from corner slot k.
    void fan(int f, int k) {
        Face& fc = face(f);
        if (fc.cycles.size() != 1 || !fc.punctures.empty())
            throw ConstructionError("builder: fan needs one empty cycle");
        auto cyc = fc.cycles[0];
        const int len = static_cast<int>(cyc.size());
        if (len < 3) throw ConstructionError("builder: fan needs at least three sides");
        std::rotate(cyc.begin(), cyc.begin() + k, cyc.end());
        while (cyc.size() > 3) {
            int d = new_arc();
            emit(cyc[0].side, cyc[1].side, d);
            Edge diag{d, cyc[0].from, cyc[2].from};
            std::vector<Edge> rest;
            rest.push_back(diag);
            rest.insert(rest.end(), cyc.begin() + 2, cyc.end());
            cyc = std::move(rest);
        }
        emit(cyc[0].side, cyc[1].side, cyc[2].side);
        fc.alive = false;
    }

    /// Fan slot that leaves the fewest triangles with two boundary sides.
    void fan_auto(int f) {
        Face& fc = face(f);
        if (fc.cycles.size() != 1) throw ConstructionError("builder: fan_auto needs one cycle");
        auto& cyc = fc.cycles[0];
        const int len = static_cast<int>(cyc.size());
        auto frozen = [&](const Edge& e) { return e.side >= kBoundaryBase; };
        int best_k = 0, best_cost = 3;
        for (int k = 0; k < len; ++k) {
            int cost = 0;
            if (len >= 3) {
                if (frozen(cyc[k]) && frozen(cyc[(k + 1) % len])) ++cost;
                if (len > 3 && frozen(cyc[(k + len - 2) % len]) && frozen(cyc[(k + len - 1) % len]))
                    ++cost;
            }
            if (cost < best_cost) {
                best_cost = cost;
                best_k = k;
            }
        }
        fan(f, best_k);
    }

    /// Deletes one side of an empty digon face, identifying its two sides.
    void collapse_digon(int f) {
        Face& fc = face(f);
        if (fc.cycles.size() != 1 || fc.cycles[0].size() != 2 || !fc.punctures.empty())
            throw ConstructionError("builder: not an empty digon face");
        int a = fc.cycles[0][0].side;
        int b = fc.cycles[0][1].side;
        int keep, drop;
        if (a >= kBoundaryBase && b >= kBoundaryBase)
            throw ConstructionError("builder: cannot identify two boundary sides");
        if (a >= kBoundaryBase) keep = a, drop = b;
        else if (b >= kBoundaryBase) keep = b, drop = a;
        else keep = std::min(a, b), drop = std::max(a, b);
        retired_.push_back(drop);
        for (auto& face : faces_) {
            if (!face.alive) continue;
            for (auto& cyc : face.cycles)
                for (auto& e : cyc)
                    if (e.side == drop) e.side = keep;
        }
        for (auto& tri : emitted_)
            for (auto& s : tri)
                if (s == drop) s = keep;
        fc.alive = false;
    }

    void emit(int s0, int s1, int s2) { emitted_.push_back({s0, s1, s2}); }

    Triangulation finish() {
        for (auto& f : faces_)
            if (f.alive) throw ConstructionError("builder: unfinished face");
        const int n = surface_.arc_count();
        std::vector<int> remap(next_arc_, -1);
        {
            std::vector<char> dead(next_arc_, 0);
            for (int r : retired_) dead[r] = 1;
            int next = 0;
            for (int a = 0; a < next_arc_; ++a)
                if (!dead[a]) remap[a] = next++;
            if (next != n)
                throw ConstructionError("builder: produced " + std::to_string(next) +
                                        " arcs, surface needs " + std::to_string(n));
        }
        std::vector<std::array<int, 3>> tris;
        tris.reserve(emitted_.size());
        for (auto& tri : emitted_) {
            std::array<int, 3> out{};
            for (int e = 0; e < 3; ++e) {
                int s = tri[e];
                out[e] = s >= kBoundaryBase ? n + (s - kBoundaryBase) : remap[s];
            }
            tris.push_back(out);
        }
        return Triangulation::create(surface_, std::move(tris));
    }

private:
    void init_sphere() {
        // A slit between the first two punctures opens the sphere into a face.
        int e = new_arc();
        Face f;
        f.cycles.push_back({{e, 0, 1}, {e, 1, 0}});
        for (int k = 2; k < surface_.punctures; ++k) f.punctures.push_back(k);
        f.alive = true;
        faces_.push_back(std::move(f));
    }

    MarkedSurface surface_;
    std::vector<Face> faces_;
    std::vector<std::array<int, 3>> emitted_;
    std::vector<int> retired_;
    int next_arc_ = 0;
};

namespace detail {

// --- script helpers --------------------------------------------------------

/// Cuts off `count` nested once-punctured digon blocks starting at `side`;
/// returns the innermost rail arc.
inline int blocks_at(TriangulationBuilder& B, int f, int side, int count,
                     std::vector<int>& puncture_pool) {
    int rail = side;
    for (int i = 0; i < count; ++i) {
        int p = puncture_pool.back();
        puncture_pool.pop_back();
        auto [ci, slot] = B.find_side(f, rail);
        auto [nf, d] = B.split(f, ci, slot, slot + 1, {p});
        B.wheel(nf);
        rail = d;
    }
    return rail;
}

/// One ear per adjacent boundary pair on every component, matching parity.
/// Returns the ear arcs in creation order.
inline std::vector<int> ears_all(TriangulationBuilder& B, int f) {
    std::vector<int> ears;
    const auto& s = B.surface();
    for (int j = 0; j < s.boundary_components(); ++j) {
        int pairs = s.boundary[j] / 2;
        for (int i = 0; i < pairs; ++i) {
            // The two segments of the pair sit next to each other in one of
            // the two orders, depending on the stored cycle direction.
            int sa = B.boundary_side(j, 2 * i);
            int sb = B.boundary_side(j, (2 * i + 1) % s.boundary[j]);
            auto [ci, slot_a] = B.find_side(f, sa);
            auto& cyc = B.face(f).cycles.at(ci);
            const int len = static_cast<int>(cyc.size());
            int first = -1;
            if (cyc[(slot_a + 1) % len].side == sb)
                first = slot_a;
            else if (cyc[(slot_a + len - 1) % len].side == sb)
                first = (slot_a + len - 1) % len;
            else
                throw ConstructionError("builder: boundary pair is not adjacent");
            B.rotate_cycle(f, ci, first);
            auto [nf, e] = B.split(f, ci, 0, 2, {});
            B.emit_face(nf);
            ears.push_back(e);
        }
    }
    return ears;
}

/// Bridges every extra cycle of the face into the first one.
inline void cut_chain(TriangulationBuilder& B, int f) {
    while (B.face(f).cycles.size() > 1) B.bridge(f, 0, 0, 1, 0);
}

/// Bridges down to exactly two cycles.
inline void cut_chain_keep_last(TriangulationBuilder& B, int f) {
    while (B.face(f).cycles.size() > 2) B.bridge(f, 0, 0, 1, 0);
}

/// Fills the annulus between the two remaining cycles of a face with a double
/// fan: the two cycles are joined along a pair of parallel arcs, and the two
/// resulting disk faces are fanned from the junction corners. Every produced
/// triangle carries exactly one side of either cycle, so no triangle ends up
/// with two boundary sides.
inline void ring_fill(TriangulationBuilder& B, int f) {
    auto& fc = B.face(f);
    if (fc.cycles.size() != 2 || !fc.punctures.empty())
        throw ConstructionError("builder: ring fill needs two empty cycles");
    const int KC = static_cast<int>(fc.cycles[0].size());
    const int KH = static_cast<int>(fc.cycles[1].size());
    B.bridge(f, 0, 0, 1, 0);
    auto [outer, e] = B.split(f, 0, 0, KC + 1, {});
    (void)e;
    B.fan(outer, KC + 1);
    B.fan(f, KH + 1);
}

/// Finishes a face that may have degenerated to an empty digon.
inline void fill_plain(TriangulationBuilder& B, int f) {
    auto& fc = B.face(f);
    if (fc.cycles.size() != 1 || !fc.punctures.empty())
        throw ConstructionError("builder: leftover structure on face");
    if (fc.cycles[0].size() == 2)
        B.collapse_digon(f);
    else
        B.fan_auto(f);
}

/// Triangulates a single-cycle face with two punctures, keeping every corner,
/// and both punctures, at degree three or more.
inline void two_puncture_fill(TriangulationBuilder& B, int f) {
    auto& fc = B.face(f);
    auto cyc = fc.cycles.at(0);
    const int K = static_cast<int>(cyc.size());
    if (K < 2 || fc.punctures.size() != 2)
        throw ConstructionError("builder: two-puncture fill needs two corners");
    int e = B.new_arc();
    std::vector<int> s2(K + 1);
    int s1_0 = B.new_arc(), s1_1 = B.new_arc();
    for (int t = 1; t <= K; ++t) s2[t] = B.new_arc();
    B.emit(cyc[0].side, s1_1, s1_0);
    B.emit(s1_1, e, s2[1]);
    for (int t = 1; t <= K - 1; ++t) B.emit(cyc[t].side, s2[t + 1], s2[t]);
    B.emit(s2[K], e, s1_0);
    fc.alive = false;
}

/// Triangulates a single-cycle face with p >= 3 punctures: the punctures form
/// an interior polygon, fanned inside and double-fanned against the cycle.
inline void polygon_wrap_fill(TriangulationBuilder& B, int f) {
    auto& fc = B.face(f);
    auto cyc = fc.cycles.at(0);
    const int K = static_cast<int>(cyc.size());
    const int p = static_cast<int>(fc.punctures.size());
    if (p < 3) throw ConstructionError("builder: polygon fill needs three punctures");

    std::vector<int> ring(p + 1), spokeB(K), spokeA(p + 1);
    for (int i = 1; i <= p; ++i) ring[i] = B.new_arc();
    for (int t = 0; t < K; ++t) spokeB[t] = B.new_arc();
    for (int i = 1; i <= p; ++i) spokeA[i] = B.new_arc();

    for (int t = 0; t + 1 < K; ++t) B.emit(cyc[t].side, spokeB[t + 1], spokeB[t]);
    B.emit(cyc[K - 1].side, spokeA[1], spokeB[K - 1]);
    for (int i = 1; i < p; ++i) B.emit(spokeA[i], ring[i], spokeA[i + 1]);
    B.emit(spokeA[p], ring[p], spokeB[0]);

    // Interior of the puncture polygon, fanned from the first puncture.
    std::vector<int> inner;
    for (int i = p; i >= 1; --i) inner.push_back(ring[i]);
    while (inner.size() > 3) {
        int d = B.new_arc();
        B.emit(inner[0], inner[1], d);
        std::vector<int> rest{d};
        rest.insert(rest.end(), inner.begin() + 2, inner.end());
        inner = std::move(rest);
    }
    B.emit(inner[0], inner[1], inner[2]);
    fc.alive = false;
}

/// Fills a face so that no puncture and no cycle corner keeps degree two.
inline void region_max_fill(TriangulationBuilder& B, int f) {
    auto& fc = B.face(f);
    const int p = static_cast<int>(fc.punctures.size());
    if (p == 0)
        fill_plain(B, f);
    else if (p == 1)
        B.wheel(f);
    else if (p == 2)
        two_puncture_fill(B, f);
    else
        polygon_wrap_fill(B, f);
}

// --- per-family constructions ---------------------------------------------

inline Triangulation sphere_min(const MarkedSurface& s) {
    TriangulationBuilder B(s);
    std::vector<int> pool;
    for (int k = s.punctures - 1; k >= 2; --k) pool.push_back(k);
    int rail = 0;  // the slit arc
    blocks_at(B, 0, rail, s.punctures - 2, pool);
    fill_plain(B, 0);
    return B.finish();
}

inline Triangulation sphere_max(const MarkedSurface& s) {
    const int p = s.punctures;
    TriangulationBuilder B(s);
    // Chain the equator punctures 2..p-3 (0-based) onto the slit, close the
    // polygon, then wheel the last two punctures in as poles.
    for (int k = 2; k <= p - 3; ++k) {
        auto& cyc = B.face(0).cycles[0];
        int slot = -1;
        for (std::size_t u = 0; u < cyc.size(); ++u)
            if (cyc[u].from == k - 1) slot = static_cast<int>(u);
        B.bridge_puncture(0, 0, slot, k);
    }
    const int tips = p - 2;  // equator length
    auto [nf, closing] = B.split(0, 0, 0, tips - 1, {p - 2});
    (void)closing;
    B.wheel(nf);
    B.wheel(0);
    return B.finish();
}

inline Triangulation nested_min(const MarkedSurface& s) {
    // A chain of nested once-punctured digon blocks: for c == 1 the innermost
    // region closes with a self-folded triangle, for c == 2 with the second
    // boundary side.
    TriangulationBuilder B(s);
    std::vector<int> pool;
    for (int k = s.punctures - 1; k >= 0; --k) pool.push_back(k);
    blocks_at(B, 0, B.boundary_side(0, 0), s.punctures - 1, pool);
    B.wheel(0);
    return B.finish();
}

/// Breadth-first search through the flip graph for a triangulation whose
/// arrow count matches `target`. Intended for the handful of sporadic
/// surfaces, whose flip orbits are tiny.
inline Triangulation flip_search_for_count(const Triangulation& start, const Int& target,
                                           bool extended, std::size_t cap = 20000) {
    auto count_of = [&](const Triangulation& t) {
        return arrow_count(quiver_from_triangulation(t, extended), extended);
    };
    std::vector<Triangulation> queue{start};
    std::set<std::vector<std::array<int, 3>>> seen{start.normalized()};
    std::size_t head = 0;
    while (head < queue.size()) {
        Triangulation t = queue[head++];
        if (count_of(t) == target) return t;
        for (int a : flippable_arcs(t)) {
            Triangulation next = flip(t, a);
            if (seen.insert(next.normalized()).second) {
                queue.push_back(std::move(next));
                if (queue.size() > cap)
                    throw ConstructionError("flip search exhausted its budget");
            }
        }
    }
    throw ConstructionError("no triangulation with the requested arrow count found");
}

inline Triangulation g0_min_exchange(const MarkedSurface& s) {
    if (s.boundary_components() == 0) return sphere_min(s);
    const int b = s.boundary_components();
    const int c = s.boundary_points();
    const int p = s.punctures;
    if (b == 1 && c <= 2) return nested_min(s);
    TriangulationBuilder B(s);
    std::vector<int> pool;
    for (int k = p - 1; k >= 0; --k) pool.push_back(k);
    if (b >= 2) {
        // Without ears a plain fan would leave triangles with two boundary
        // sides; the double fan between the last two cycles avoids that.
        cut_chain_keep_last(B, 0);
        if (p > 0) blocks_at(B, 0, B.boundary_side(0, 0), p, pool);
        ring_fill(B, 0);
        return B.finish();
    }
    if (p == 1) {
        blocks_at(B, 0, B.boundary_side(0, 0), 1, pool);
    } else if (p >= 2) {
        blocks_at(B, 0, B.boundary_side(0, 0), p - 1, pool);
        blocks_at(B, 0, B.boundary_side(0, s.boundary[0] - 1), 1, pool);
    }
    fill_plain(B, 0);
    return B.finish();
}

inline Triangulation g0_min_extended(const MarkedSurface& s) {
    if (s.boundary_components() == 0) return sphere_min(s);
    const int b = s.boundary_components();
    const int c = s.boundary_points();
    if (b == 1 && c <= 2) return nested_min(s);
    TriangulationBuilder B(s);
    auto ears = ears_all(B, 0);
    if (b >= 2) cut_chain(B, 0);
    if (s.punctures > 0) {
        std::vector<int> pool;
        for (int k = s.punctures - 1; k >= 0; --k) pool.push_back(k);
        int host = ears.empty() ? B.boundary_side(0, 0) : ears.front();
        blocks_at(B, 0, host, s.punctures, pool);
    }
    fill_plain(B, 0);
    return B.finish();
}

inline Triangulation g0_max_exchange(const MarkedSurface& s) {
    if (s.boundary_components() == 0) return sphere_max(s);
    const int c = s.boundary_points();
    const int p = s.punctures;
    TriangulationBuilder B(s);
    if (s.genus == 0 && s.boundary_components() == 1 && p == 1 && c == 3) {
        B.wheel(0);  // sporadic small case
        return B.finish();
    }
    if (s.genus == 0 && s.boundary_components() == 1 && p == 1 && c == 4) {
        auto [nf, e] = B.split(0, 0, 0, 2, {});
        B.emit_face(nf);  // one ear, then the wheel
        B.wheel(0);
        return B.finish();
    }
    ears_all(B, 0);
    if (s.boundary_components() >= 2) cut_chain(B, 0);
    region_max_fill(B, 0);
    return B.finish();
}

inline Triangulation g0_max_extended(const MarkedSurface& s) {
    if (s.boundary_components() == 0) return sphere_max(s);
    TriangulationBuilder B(s);
    if (s.boundary_components() >= 2 && s.punctures == 0) {
        cut_chain_keep_last(B, 0);
        ring_fill(B, 0);
        return B.finish();
    }
    if (s.boundary_components() >= 2) cut_chain(B, 0);
    region_max_fill(B, 0);
    return B.finish();
}

}  // namespace detail

enum class Extremum { minimum, maximum };

namespace detail {

inline std::string genus_seed_filename(const MarkedSurface& s, Extremum which) {
    if (s == MarkedSurface::create(1, 1, {})) return "torus_1p.tri";
    if (s == MarkedSurface::create(1, 0, {1})) return "genus1_b1c1.tri";
    if (s == MarkedSurface::create(1, 1, {1}))
        return which == Extremum::minimum ? "genus1_b1c1p1_min.tri" : "genus1_b1c1p1_max.tri";
    throw UnsupportedSurfaceError("no shipped triangulation for " + s.describe() +
                                  "; positive-genus constructions are limited to the shipped examples");
}

inline Triangulation load_surface_file(const MarkedSurface& s, const std::string& name) {
    auto t = read_triangulation_file(data_directory() / "surfaces" / name);
    if (!(t.surface() == s)) throw IoError("shipped triangulation has the wrong surface header");
    return t;
}

}  // namespace detail

/// A valid triangulation of the surface. Genus-0 surfaces are built directly;
/// the four-punctured sphere and the positive-genus examples come from the
/// shipped data files.
inline Triangulation seed_triangulation(const MarkedSurface& s) {
    s.validate();
    if (s.is_four_punctured_sphere()) return detail::load_surface_file(s, "sphere_4p.tri");
    if (s.genus > 0) return detail::load_surface_file(s, detail::genus_seed_filename(s, Extremum::minimum));
    return detail::g0_min_exchange(s);
}

/// A triangulation whose arrow count in the requested mode meets the matching
/// end of t_bounds. The result is checked before it is returned.
inline Triangulation extremal_triangulation(const MarkedSurface& s, Extremum which, bool extended) {
    s.validate();
    Bounds bounds = t_bounds(s, extended);
    Int want = which == Extremum::minimum ? bounds.min : bounds.max;

    Triangulation t = [&]() {
        if (s.genus > 0)
            return detail::load_surface_file(s, detail::genus_seed_filename(s, which));
        if (s.is_four_punctured_sphere())
            return which == Extremum::minimum ? detail::sphere_min(s)
                                              : detail::load_surface_file(s, "sphere_4p.tri");
        if (s.is_twice_punctured_monogon() || s.is_once_punctured_digon())
            return detail::flip_search_for_count(detail::nested_min(s), want, extended);
        if (which == Extremum::minimum)
            return extended ? detail::g0_min_extended(s) : detail::g0_min_exchange(s);
        if (s.is_twice_punctured_digon()) return detail::g0_max_extended(s);
        return extended ? detail::g0_max_extended(s) : detail::g0_max_exchange(s);
    }();

    Int got = arrow_count(quiver_from_triangulation(t, extended), extended);
    if (got != want)
        throw ConstructionError("extremal construction for " + s.describe() + " reached " +
                                got.str() + " arrows, target " + want.str());
    return t;
}

}  // namespace arrowscope

#endif
