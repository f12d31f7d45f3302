#ifndef ARROWSCOPE_CLASS_EXPLORER_HPP
#define ARROWSCOPE_CLASS_EXPLORER_HPP

#include <arrowscope/canonical.hpp>
#include <arrowscope/quiver.hpp>

#include <algorithm>
#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <thread>
#include <tuple>
#include <utility>
#include <vector>

namespace arrowscope {

struct EnumerationLimits {
    std::size_t max_members = 100000;
    std::size_t max_depth = static_cast<std::size_t>(-1);
    /// 0 disables the abort; a positive value stops the walk as soon as some
    /// reached quiver has a pair multiplicity >= this bound.
    Int multiplicity_abort = 0;
    int threads = 1;
};

/// Breadth-first closure of a seed under mutation, one representative per
/// isomorphism class. `members` is keyed (and therefore ordered) by canonical
/// key, so the member set is independent of traversal order.
struct ClassEnumeration {
    Quiver seed;
    std::map<CanonicalKey, Quiver> members;
    bool truncated = false;
    EnumerationLimits limits_used;

    /// Mutation word from the seed to the member with this key.
    std::vector<int> path_to(const CanonicalKey& key) const {
        std::vector<int> word;
        CanonicalKey cur = key;
        while (true) {
            auto it = parents.find(cur);
            if (it == parents.end() || it->second.second < 0) break;
            word.push_back(it->second.second);
            cur = it->second.first;
        }
        std::reverse(word.begin(), word.end());
        return word;
    }

    std::map<CanonicalKey, std::pair<CanonicalKey, int>> parents;
};

namespace detail {

struct BfsOutcome {
    ClassEnumeration enumeration;
    std::optional<CanonicalKey> abort_key;  // set when the multiplicity abort fired
};

inline BfsOutcome bfs_class(const Quiver& seed, const EnumerationLimits& limits) {
    if (limits.max_members == 0) throw LimitError("max_members must be positive");
    if (limits.threads <= 0) throw LimitError("thread count must be positive");
    seed.validate();

    BfsOutcome out;
    out.enumeration.seed = seed;
    out.enumeration.limits_used = limits;
    auto& members = out.enumeration.members;
    auto& parents = out.enumeration.parents;

    CanonicalKey seed_key = canonical_form(seed);
    members.emplace(seed_key, seed);
    parents.emplace(seed_key, std::make_pair(CanonicalKey{}, -1));
    if (limits.multiplicity_abort > 0 && max_multiplicity(seed) >= limits.multiplicity_abort) {
        out.abort_key = seed_key;
        return out;
    }

    std::vector<CanonicalKey> frontier{seed_key};
    std::size_t depth = 0;
    const int nm = seed.mutable_count();

    while (!frontier.empty()) {
        if (depth >= limits.max_depth) {
            out.enumeration.truncated = true;
            return out;
        }
        ++depth;

        // One expansion job per frontier entry; results are merged in frontier
        // order then mutation order, so the outcome is independent of the
        // thread count.
        struct Expansion {
            std::vector<std::pair<CanonicalKey, Quiver>> children;  // indexed by k
        };
        std::vector<Expansion> jobs(frontier.size());
        auto work = [&](std::size_t lo, std::size_t hi) {
            for (std::size_t f = lo; f < hi; ++f) {
                const Quiver& q = members.at(frontier[f]);
                jobs[f].children.reserve(nm);
                for (int k = 0; k < nm; ++k) {
                    Quiver child = mutate(q, k);
                    jobs[f].children.emplace_back(canonical_form(child), std::move(child));
                }
            }
        };
        int nthreads = std::min<std::size_t>(limits.threads, frontier.size());
        if (nthreads <= 1) {
            work(0, frontier.size());
        } else {
            std::vector<std::thread> pool;
            std::size_t chunk = (frontier.size() + nthreads - 1) / nthreads;
            for (int t = 0; t < nthreads; ++t) {
                std::size_t lo = t * chunk;
                std::size_t hi = std::min(frontier.size(), lo + chunk);
                if (lo >= hi) break;
                pool.emplace_back(work, lo, hi);
            }
            for (auto& th : pool) th.join();
        }

        std::vector<CanonicalKey> next;
        for (std::size_t f = 0; f < frontier.size(); ++f) {
            for (int k = 0; k < nm; ++k) {
                auto& [key, child] = jobs[f].children[k];
                auto [it, inserted] = members.emplace(key, child);
                if (!inserted) continue;
                parents.emplace(key, std::make_pair(frontier[f], k));
                if (limits.multiplicity_abort > 0 &&
                    max_multiplicity(child) >= limits.multiplicity_abort) {
                    out.abort_key = key;
                    return out;
                }
                if (members.size() > limits.max_members) {
                    out.enumeration.truncated = true;
                    return out;
                }
                next.push_back(key);
            }
        }
        frontier = std::move(next);
    }
    return out;
}

}  // namespace detail

inline ClassEnumeration enumerate_class(const Quiver& seed, const EnumerationLimits& limits = {}) {
    EnumerationLimits l = limits;
    l.multiplicity_abort = 0;
    return detail::bfs_class(seed, l).enumeration;
}

/// Sorted arrow-count image of a mutation class, and whether it is a full
/// integer interval.
struct DistributionSet {
    std::vector<Int> values;
    bool is_continuous = false;
};

inline DistributionSet distribution_set(const ClassEnumeration& e, bool extended = false) {
    if (e.truncated)
        throw TruncatedEnumerationError("distribution set undefined on a truncated enumeration");
    DistributionSet d;
    for (const auto& [key, q] : e.members) d.values.push_back(arrow_count(q, extended));
    std::sort(d.values.begin(), d.values.end());
    d.values.erase(std::unique(d.values.begin(), d.values.end()), d.values.end());
    d.is_continuous =
        !d.values.empty() && d.values.back() - d.values.front() + 1 == Int(d.values.size());
    return d;
}

struct FinitenessVerdict {
    bool finite = true;
    /// For an infinite verdict: a reached quiver with a pair multiplicity >= 3
    /// plus the mutation word leading to it from the input.
    std::optional<std::pair<Quiver, std::vector<int>>> witness;
    std::optional<std::size_t> class_size;
};

/// Finiteness of the mutation class of a connected coefficient-free quiver.
/// With at most two mutable vertices the class is always finite; otherwise
/// the class is walked with all multiplicities capped at 2, which must either
/// close up (finite) or surface a multiplicity-3 witness (infinite).
inline FinitenessVerdict is_mutation_finite(const Quiver& q,
                                            std::size_t max_members = 2000000) {
    if (q.frozen_count() != 0)
        throw InvalidQuiverError("mutation-finiteness test expects a quiver without frozen vertices");
    if (!is_connected(q)) throw InvalidQuiverError("mutation-finiteness test expects a connected quiver");

    FinitenessVerdict v;
    if (q.mutable_count() <= 2) {
        auto e = enumerate_class(q);
        v.finite = true;
        v.class_size = e.members.size();
        return v;
    }
    EnumerationLimits limits;
    limits.max_members = max_members;
    limits.multiplicity_abort = 3;
    auto out = detail::bfs_class(q, limits);
    if (out.abort_key) {
        v.finite = false;
        auto path = out.enumeration.path_to(*out.abort_key);
        v.witness = std::make_pair(mutate_sequence(q, path), path);
        return v;
    }
    if (out.enumeration.truncated)
        throw LimitError("mutation-finiteness walk exceeded the member limit");
    v.finite = true;
    v.class_size = out.enumeration.members.size();
    return v;
}

namespace detail {

// Pair multiplicities of the triangle {t[0],t[1],t[2]}: m[i] is the entry
// opposite t[i] (between the other two vertices).
inline std::array<Int, 3> triangle_mults(const Quiver& q, const std::array<int, 3>& t) {
    return {abs(q.entry(t[1], t[2])), abs(q.entry(t[0], t[2])), abs(q.entry(t[0], t[1]))};
}

inline bool triangle_cyclic(const Quiver& q, const std::array<int, 3>& t) {
    const Int& a = q.entry(t[0], t[1]);
    const Int& b = q.entry(t[1], t[2]);
    const Int& c = q.entry(t[2], t[0]);
    return (a > 0 && b > 0 && c > 0) || (a < 0 && b < 0 && c < 0);
}

}  // namespace detail

/// Pushes every pair multiplicity of a mutation-infinite quiver above N.
/// Returns the reached quiver and the mutation word. The procedure grows a
/// triangle first (mutating opposite the smallest arrow), then circulates
/// length-3 mutation rounds through further triangles until every pair of
/// the full quiver exceeds N. Throws LimitError if the cap trips.
inline std::pair<Quiver, std::vector<int>> grow_multiplicities(const Quiver& q, const Int& N,
                                                               std::size_t mutation_cap = 1000000) {
    if (N < 2) throw LimitError("growth target must be at least 2");
    if (q.frozen_count() != 0)
        throw InvalidQuiverError("multiplicity growth expects a quiver without frozen vertices");
    if (!is_connected(q)) throw InvalidQuiverError("multiplicity growth expects a connected quiver");
    if (q.mutable_count() < 3)
        throw InvalidQuiverError("multiplicity growth needs at least 3 vertices");

    const int n = q.mutable_count();
    auto all_pairs_exceed = [&](const Quiver& cur) {
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (abs(cur.entry(i, j)) <= N) return false;
        return true;
    };

    Quiver cur = q;
    std::vector<int> word;
    if (all_pairs_exceed(cur)) return {cur, word};

    auto verdict = is_mutation_finite(q);
    if (verdict.finite)
        throw InvalidQuiverError("multiplicity growth requires a mutation-infinite quiver");

    auto apply = [&](int k) {
        cur = mutate(cur, k);
        word.push_back(k);
        if (word.size() > mutation_cap) throw LimitError("mutation cap exceeded during growth");
    };

    // Reach a quiver with some multiplicity >= 3.
    for (int k : verdict.witness->second) apply(k);

    // Pick a connected triangle containing the big pair.
    std::array<int, 3> tri{-1, -1, -1};
    {
        int s = -1, t = -1;
        for (int i = 0; i < n && s < 0; ++i)
            for (int j = i + 1; j < n; ++j)
                if (abs(cur.entry(i, j)) >= 3) {
                    s = i;
                    t = j;
                    break;
                }
        int u = -1;
        for (int w = 0; w < n && u < 0; ++w)
            if (w != s && w != t && (cur.entry(w, s) != 0 || cur.entry(w, t) != 0)) u = w;
        tri = {s, t, u};
        std::sort(tri.begin(), tri.end());
    }

    // Triangle phase: make it cyclically oriented, then repeatedly mutate at
    // the vertex opposite the smallest arrow until all three pairs exceed N
    // with strictly distinct multiplicities.
    auto grow_step = [&]() {
        auto m = detail::triangle_mults(cur, tri);
        int pick = 0;
        for (int i = 1; i < 3; ++i)
            if (m[i] < m[pick]) pick = i;
        apply(tri[pick]);
    };
    auto make_cyclic = [&]() {
        for (int guard = 0; guard < 8 && !detail::triangle_cyclic(cur, tri); ++guard) {
            // A pass-through vertex (one arrow in, one out inside the triangle)
            // turns the triangle cyclic in one mutation; if there is none, one
            // mutation at an endpoint of the 2-arrow pattern creates one.
            int pass = -1;
            for (int i = 0; i < 3; ++i) {
                int vin = 0, vout = 0;
                for (int j = 0; j < 3; ++j) {
                    if (i == j) continue;
                    if (cur.entry(tri[j], tri[i]) > 0) ++vin;
                    if (cur.entry(tri[i], tri[j]) > 0) ++vout;
                }
                if (vin == 1 && vout == 1) {
                    pass = i;
                    break;
                }
            }
            if (pass >= 0) {
                apply(tri[pass]);
            } else {
                // in-in or out-out on two arrows: mutating at a vertex carrying
                // exactly one of them turns the pattern into a path.
                int k = -1;
                for (int i = 0; i < 3 && k < 0; ++i) {
                    int deg = 0;
                    for (int j = 0; j < 3; ++j)
                        if (i != j && cur.entry(tri[i], tri[j]) != 0) ++deg;
                    if (deg == 1) k = i;
                }
                if (k < 0) throw LimitError("degenerate triangle while orienting");
                apply(tri[k]);
            }
        }
        if (!detail::triangle_cyclic(cur, tri))
            throw LimitError("failed to orient a triangle cyclically");
    };
    make_cyclic();
    while (true) {
        auto m = detail::triangle_mults(cur, tri);
        Int lo = std::min({m[0], m[1], m[2]});
        bool distinct = m[0] != m[1] && m[1] != m[2] && m[0] != m[2];
        if (lo > N && (distinct || n == 3)) break;
        grow_step();
        if (word.size() > mutation_cap) throw LimitError("mutation cap exceeded during growth");
    }
    if (n == 3) {
        if (!all_pairs_exceed(cur)) throw LimitError("growth post-check failed");
        return {cur, word};
    }

    // Circulation phase: relabel the triangle so its smallest arrow sits
    // opposite the first label, then apply rounds of three mutations. A round
    // keeps the circulation shape, so every arrow touching the triangle
    // grows; taking further triangles across the quiver (two large internal
    // pairs suffice, the third catches up in the first round) spreads large
    // multiplicities to every pair. Triangles may be revisited: mutations
    // elsewhere can create fresh small pairs next to an already-done one.
    auto order_by_m = [&](std::array<int, 3> t) {
        auto m = detail::triangle_mults(cur, t);
        std::array<std::pair<Int, int>, 3> z{{{m[0], t[0]}, {m[1], t[1]}, {m[2], t[2]}}};
        std::sort(z.begin(), z.end());
        return std::array<int, 3>{z[0].second, z[1].second, z[2].second};
    };
    auto incident_done = [&](const std::array<int, 3>& t) {
        for (int v = 0; v < n; ++v) {
            bool in_t = v == t[0] || v == t[1] || v == t[2];
            for (int x : t) {
                if (in_t || x == v) continue;
                const Int& e = cur.entry(v, x);
                if (e != 0 && abs(e) <= N) return false;
            }
        }
        auto m = detail::triangle_mults(cur, t);
        return m[0] > N && m[1] > N && m[2] > N;
    };
    auto round_on = [&](const std::array<int, 3>& t) {
        auto ordered = order_by_m(t);
        apply(ordered[0]);
        apply(ordered[1]);
        apply(ordered[2]);
    };

    round_on(tri);
    while (!all_pairs_exceed(cur)) {
        // A pair still at or below N; pick the least triangle that can move
        // some lagging pair: two internal pairs above N, and either the pair
        // is incident to the triangle or one of the triangle's vertices
        // neighbours both of its endpoints.
        std::array<int, 3> chosen{-1, -1, -1};
        for (int i = 0; i < n && chosen[0] < 0; ++i)
            for (int j = i + 1; j < n && chosen[0] < 0; ++j)
                for (int k = j + 1; k < n && chosen[0] < 0; ++k) {
                    std::array<int, 3> cand{i, j, k};
                    auto m = detail::triangle_mults(cur, cand);
                    int big = (m[0] > N) + (m[1] > N) + (m[2] > N);
                    if (big < 2) continue;
                    bool useful = false;
                    for (int x = 0; x < n && !useful; ++x)
                        for (int y = x + 1; y < n && !useful; ++y) {
                            if (abs(cur.entry(x, y)) > N) continue;
                            bool xin = x == i || x == j || x == k;
                            bool yin = y == i || y == j || y == k;
                            if (xin && yin) useful = true;  // the weak internal pair
                            else if (xin || yin) {
                                int inside = xin ? x : y;
                                int outside = xin ? y : x;
                                if (cur.entry(inside, outside) != 0)
                                    useful = true;  // incident arrow, rounds grow it
                                else
                                    for (int t2 : cand)
                                        if (t2 != inside && cur.entry(t2, outside) != 0)
                                            useful = true;  // a round composes it into existence
                            }
                        }
                    if (useful) chosen = cand;
                }
        if (chosen[0] < 0)
            throw LimitError("no triangle can reach the remaining small pairs");
        round_on(chosen);
        while (!incident_done(chosen)) round_on(chosen);
    }
    return {cur, word};
}

/// True iff a quiver with total arrow count above `target` is reachable.
inline bool upper_bound_probe(const Quiver& q, const Int& target) {
    if (!is_connected(q)) throw InvalidQuiverError("probe expects a connected quiver");
    if (q.mutable_count() < 3) throw InvalidQuiverError("probe needs at least 3 vertices");
    auto verdict = is_mutation_finite(q);
    if (!verdict.finite) {
        Int N = target > 2 ? target : Int(2);
        grow_multiplicities(q, N);  // throws if it cannot; reaching this count settles it
        return true;
    }
    auto e = enumerate_class(q);
    Int best = 0;
    for (const auto& [key, m] : e.members) best = std::max(best, arrow_count(m, false));
    return best > target;
}

}  // namespace arrowscope

#endif
