// Enumeration of the genus-0 test surfaces up to a given arc count, plus the
// once-punctured torus. Boundary components are unordered, so the point
// counts are produced as non-increasing partitions.
#ifndef ARROWSCOPE_TESTS_SURFACE_GRID_HPP
#define ARROWSCOPE_TESTS_SURFACE_GRID_HPP

#include <arrowscope/surface.hpp>

#include <vector>

namespace grid {

inline void partitions_into(int total, int parts, int cap, std::vector<int>& cur,
                            std::vector<std::vector<int>>& out) {
    if (parts == 0) {
        if (total == 0) out.push_back(cur);
        return;
    }
    for (int first = std::min(cap, total - (parts - 1)); first >= 1; --first) {
        cur.push_back(first);
        partitions_into(total - first, parts - 1, first, cur, out);
        cur.pop_back();
    }
}

inline std::vector<arrowscope::MarkedSurface> genus0_surfaces(int max_arcs) {
    std::vector<arrowscope::MarkedSurface> out;
    for (int b = 0; 3 * b <= max_arcs + 6; ++b) {
        for (int p = 0; 3 * b + 3 * p <= max_arcs + 6; ++p) {
            int base = 3 * b + 3 * p - 6;
            for (int c = b; base + c <= max_arcs; ++c) {
                if (b == 0 && c > 0) break;
                if (base + c < 1) continue;
                std::vector<std::vector<int>> splits;
                std::vector<int> cur;
                partitions_into(c, b, c, cur, splits);
                for (auto& counts : splits) {
                    try {
                        out.push_back(arrowscope::MarkedSurface::create(0, p, counts));
                    } catch (const arrowscope::SurfaceError&) {
                    }
                }
                if (b == 0) break;
            }
        }
    }
    return out;
}

}  // namespace grid

#endif
