#ifndef ARROWSCOPE_WALK_HPP
#define ARROWSCOPE_WALK_HPP

#include <arrowscope/canonical.hpp>
#include <arrowscope/class_explorer.hpp>
#include <arrowscope/constructions.hpp>
#include <arrowscope/quiver.hpp>
#include <arrowscope/surface.hpp>

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <vector>

namespace arrowscope {

struct WalkLimits {
    std::size_t max_depth = 64;
    std::size_t max_nodes_visited = 1000000;
};

enum class WalkStatus { found, not_found_within_limits };

struct WalkStep {
    int vertex;
    Int arrow_count_after;
};

/// An acyclic walk through the exchange graph whose visited arrow counts are
/// meant to exhaust a target set. Nodes are quivers up to isomorphism, so "no
/// repeated node" means no repeated canonical key. A negative outcome is
/// always reported as not_found_within_limits, never as nonexistence.
struct WalkReport {
    CanonicalKey start_key;
    std::vector<WalkStep> steps;
    DistributionSet realized;
    bool acyclic = false;
    WalkStatus status = WalkStatus::not_found_within_limits;
};

inline WalkReport find_complete_walk(const Quiver& seed, const std::vector<Int>& target,
                                     const WalkLimits& limits = {}) {
    if (target.empty()) throw LimitError("walk target set is empty");
    std::set<Int> want(target.begin(), target.end());

    WalkReport report;
    report.start_key = canonical_form(seed);

    Int start_count = arrow_count(seed, false);
    if (!want.count(start_count)) return report;  // walks start at the seed

    struct Frame {
        Quiver q;
        CanonicalKey key;
        Int count;
        int via_vertex;
    };
    std::vector<Frame> path;
    path.push_back({seed, report.start_key, start_count, -1});
    std::set<CanonicalKey> on_path{report.start_key};
    std::map<Int, int> realized;  // count -> how many path nodes carry it
    realized[start_count] = 1;
    std::size_t visited = 1;
    bool out_of_budget = false;

    auto finish = [&](bool found) {
        report.status = found ? WalkStatus::found : WalkStatus::not_found_within_limits;
        if (found) {
            for (std::size_t i = 1; i < path.size(); ++i)
                report.steps.push_back({path[i].via_vertex, path[i].count});
            for (auto& [value, uses] : realized) report.realized.values.push_back(value);
            report.realized.is_continuous =
                !report.realized.values.empty() &&
                report.realized.values.back() - report.realized.values.front() + 1 ==
                    Int(report.realized.values.size());
            report.acyclic = true;
        }
        return report;
    };

    // Depth-first search over simple paths. Branches whose arrow count is not
    // realized yet come first, then ascending mutation vertex.
    std::function<bool()> dfs = [&]() -> bool {
        if (realized.size() == want.size()) return true;
        if (path.size() - 1 >= limits.max_depth) return false;
        if (visited >= limits.max_nodes_visited) {
            out_of_budget = true;
            return false;
        }
        const Frame& top = path.back();
        struct Branch {
            bool seen_count;
            int k;
            Quiver q;
            CanonicalKey key;
            Int count;
        };
        std::vector<Branch> branches;
        for (int k = 0; k < top.q.mutable_count(); ++k) {
            Quiver child = mutate(top.q, k);
            Int count = arrow_count(child, false);
            if (!want.count(count)) continue;  // stepping outside the target set is never allowed
            CanonicalKey key = canonical_form(child);
            if (on_path.count(key)) continue;
            branches.push_back({realized.count(count) > 0, k, std::move(child), std::move(key), count});
        }
        std::stable_sort(branches.begin(), branches.end(),
                         [](const Branch& a, const Branch& b) { return a.seen_count < b.seen_count; });
        for (auto& br : branches) {
            ++visited;
            path.push_back({std::move(br.q), br.key, br.count, br.k});
            on_path.insert(br.key);
            ++realized[br.count];
            if (dfs()) return true;
            if (--realized[br.count] == 0) realized.erase(br.count);
            on_path.erase(br.key);
            path.pop_back();
            if (out_of_budget) return false;
        }
        return false;
    };

    return finish(dfs());
}

/// Outcome of checking a surface's arrow-count distribution against its
/// predicted extremes. `conclusive` is false when the enumeration was cut off.
struct ContinuityReport {
    MarkedSurface surface;
    bool extended = false;
    bool conclusive = false;
    DistributionSet distribution;
    Bounds bounds;
    std::vector<Int> expected;  // the exceptional set, or the interval [min, max]
    std::vector<Int> missing;   // gaps: interval values no class member realizes
    std::vector<Int> excess;    // realized values outside the expected set
    bool matches_expected = false;
    bool continuous = false;
};

inline ContinuityReport verify_continuity(const MarkedSurface& s, bool extended,
                                          const EnumerationLimits& limits = {}) {
    ContinuityReport report;
    report.surface = s;
    report.extended = extended;
    report.bounds = t_bounds(s, extended);

    Quiver seed = quiver_from_triangulation(seed_triangulation(s), extended);
    auto e = enumerate_class(seed, limits);
    if (e.truncated) return report;
    report.conclusive = true;
    report.distribution = distribution_set(e, extended);

    if (report.bounds.exceptional_set)
        report.expected = *report.bounds.exceptional_set;
    else
        for (Int v = report.bounds.min; v <= report.bounds.max; ++v) report.expected.push_back(v);

    std::set<Int> got(report.distribution.values.begin(), report.distribution.values.end());
    std::set<Int> expect(report.expected.begin(), report.expected.end());
    for (Int v = report.bounds.min; v <= report.bounds.max; ++v)
        if (!got.count(v)) report.missing.push_back(v);
    for (const Int& v : report.distribution.values)
        if (!expect.count(v)) report.excess.push_back(v);
    bool all_expected_realized = true;
    for (const Int& v : report.expected)
        if (!got.count(v)) all_expected_realized = false;
    report.matches_expected = all_expected_realized && report.excess.empty();
    report.continuous = report.distribution.is_continuous;
    return report;
}

}  // namespace arrowscope

#endif
