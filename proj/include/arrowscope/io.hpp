#ifndef ARROWSCOPE_IO_HPP
#define ARROWSCOPE_IO_HPP

#include <arrowscope/quiver.hpp>
#include <arrowscope/surface.hpp>

#include <json.hpp>

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

namespace arrowscope {

/// Data directory holding shipped seed quivers and triangulations.
/// ARROWSCOPE_DATA overrides the compiled-in default.
inline std::filesystem::path data_directory() {
    if (const char* env = std::getenv("ARROWSCOPE_DATA")) return env;
#ifdef ARROWSCOPE_DEFAULT_DATA_DIR
    return ARROWSCOPE_DEFAULT_DATA_DIR;
#else
    return "data";
#endif
}

namespace detail {

inline Int parse_int(const std::string& tok, const std::string& where) {
    try {
        return Int(tok);
    } catch (const std::exception&) {
        throw IoError(where + ": not an integer: '" + tok + "'");
    }
}

inline long long parse_small(const std::string& tok, const std::string& where) {
    try {
        std::size_t pos = 0;
        long long v = std::stoll(tok, &pos);
        if (pos != tok.size()) throw std::invalid_argument(tok);
        return v;
    } catch (const std::exception&) {
        throw IoError(where + ": not an integer: '" + tok + "'");
    }
}

inline std::vector<std::string> split_ws(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream in(line);
    std::string tok;
    while (in >> tok) out.push_back(tok);
    return out;
}

// Strips comments and blank lines; keeps 1-based source line numbers.
inline std::vector<std::pair<int, std::string>> content_lines(std::istream& in) {
    std::vector<std::pair<int, std::string>> out;
    std::string line;
    int no = 0;
    while (std::getline(in, line)) {
        ++no;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        if (split_ws(line).empty()) continue;
        out.emplace_back(no, line);
    }
    return out;
}

inline nlohmann::json int_to_json(const Int& v) {
    if (v >= std::numeric_limits<std::int64_t>::min() &&
        v <= std::numeric_limits<std::int64_t>::max())
        return static_cast<std::int64_t>(v);
    return v.str();
}

inline Int json_to_int(const nlohmann::json& j, const std::string& where) {
    if (j.is_number_integer()) return Int(j.get<std::int64_t>());
    if (j.is_string()) return parse_int(j.get<std::string>(), where);
    throw IoError(where + ": expected integer or integer string");
}

}  // namespace detail

// ---------------------------------------------------------------------------
// "qvr v1": line 1 = `n_mut n_frozen`, then one space-separated matrix row
// per line. A JSON object {n_mut, n_frozen, b} is accepted interchangeably.
// ---------------------------------------------------------------------------

inline Quiver read_quiver_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("n_mut") || !j.contains("n_frozen") || !j.contains("b"))
        throw IoError("quiver JSON: need fields n_mut, n_frozen, b");
    int nm = j.at("n_mut").get<int>();
    int nf = j.at("n_frozen").get<int>();
    const auto& rows = j.at("b");
    if (!rows.is_array()) throw IoError("quiver JSON: field b must be an array of arrays");
    std::vector<std::vector<Int>> b;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        std::vector<Int> row;
        for (std::size_t k = 0; k < rows[i].size(); ++k)
            row.push_back(detail::json_to_int(rows[i][k], "quiver JSON: b[" + std::to_string(i) +
                                                              "][" + std::to_string(k) + "]"));
        b.push_back(std::move(row));
    }
    try {
        return Quiver::from_matrix(nm, nf, b);
    } catch (const InvalidQuiverError& e) {
        throw IoError(std::string("quiver JSON: ") + e.what());
    }
}

inline Quiver read_quiver(std::istream& in) {
    // Sniff: a leading '{' means the JSON mirror.
    int c = in.peek();
    while (c == ' ' || c == '\n' || c == '\r' || c == '\t') {
        in.get();
        c = in.peek();
    }
    if (c == '{') {
        nlohmann::json j;
        try {
            in >> j;
        } catch (const std::exception& e) {
            throw IoError(std::string("quiver JSON parse error: ") + e.what());
        }
        return read_quiver_json(j);
    }
    auto lines = detail::content_lines(in);
    if (lines.empty()) throw IoError("quiver file: empty");
    auto head = detail::split_ws(lines[0].second);
    if (head.size() != 2)
        throw IoError("quiver file line " + std::to_string(lines[0].first) +
                      ": expected 'n_mut n_frozen'");
    int nm = static_cast<int>(detail::parse_small(head[0], "quiver header"));
    int nf = static_cast<int>(detail::parse_small(head[1], "quiver header"));
    if (nm < 0 || nf < 0) throw IoError("quiver header: negative vertex count");
    int n = nm + nf;
    if (static_cast<int>(lines.size()) != 1 + n)
        throw IoError("quiver file: expected " + std::to_string(n) + " matrix rows, found " +
                      std::to_string(lines.size() - 1));
    std::vector<std::vector<Int>> b;
    for (int i = 0; i < n; ++i) {
        auto toks = detail::split_ws(lines[i + 1].second);
        if (static_cast<int>(toks.size()) != n)
            throw IoError("quiver file line " + std::to_string(lines[i + 1].first) + ": expected " +
                          std::to_string(n) + " entries");
        std::vector<Int> row;
        for (auto& t : toks)
            row.push_back(detail::parse_int(t, "quiver file line " + std::to_string(lines[i + 1].first)));
        b.push_back(std::move(row));
    }
    try {
        return Quiver::from_matrix(nm, nf, b);
    } catch (const InvalidQuiverError& e) {
        throw IoError(std::string("quiver file: ") + e.what());
    }
}

inline Quiver read_quiver_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path.string());
    try {
        return read_quiver(in);
    } catch (const IoError& e) {
        throw IoError(path.string() + ": " + e.what());
    }
}

inline void write_quiver(std::ostream& out, const Quiver& q) { out << q.to_string(); }

inline nlohmann::json quiver_to_json(const Quiver& q) {
    nlohmann::json rows = nlohmann::json::array();
    for (int i = 0; i < q.size(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (int j = 0; j < q.size(); ++j) row.push_back(detail::int_to_json(q.entry(i, j)));
        rows.push_back(std::move(row));
    }
    return nlohmann::json{{"n_mut", q.mutable_count()}, {"n_frozen", q.frozen_count()}, {"b", rows}};
}

// ---------------------------------------------------------------------------
// "tri v1": header `g b p c_1..c_b`, then one triangle per line as three side
// tokens (`aK` for arcs, `bJ.I` for boundary segment I of component J), with
// an `SF(radius,loop)` suffix on self-folded triangles. '#' starts a comment.
// ---------------------------------------------------------------------------

namespace detail {

inline int parse_side_token(const std::string& tok, const MarkedSurface& s, const std::string& where) {
    const int n = s.arc_count();
    if (tok.size() >= 2 && tok[0] == 'a') {
        long long k = parse_small(tok.substr(1), where);
        if (k < 0 || k >= n) throw IoError(where + ": arc index out of range: " + tok);
        return static_cast<int>(k);
    }
    if (tok.size() >= 4 && tok[0] == 'b') {
        auto dot = tok.find('.');
        if (dot == std::string::npos) throw IoError(where + ": bad boundary token: " + tok);
        long long j = parse_small(tok.substr(1, dot - 1), where);
        long long i = parse_small(tok.substr(dot + 1), where);
        if (j < 1 || j > s.boundary_components())
            throw IoError(where + ": boundary component out of range: " + tok);
        if (i < 0 || i >= s.boundary[static_cast<std::size_t>(j - 1)])
            throw IoError(where + ": boundary segment out of range: " + tok);
        int off = 0;
        for (long long u = 0; u < j - 1; ++u) off += s.boundary[static_cast<std::size_t>(u)];
        return n + off + static_cast<int>(i);
    }
    throw IoError(where + ": bad side token: " + tok);
}

}  // namespace detail

inline Triangulation read_triangulation(std::istream& in) {
    auto lines = detail::content_lines(in);
    if (lines.empty()) throw IoError("triangulation file: empty");
    auto head = detail::split_ws(lines[0].second);
    if (head.size() < 3)
        throw IoError("triangulation header: expected 'g b p c_1..c_b'");
    int g = static_cast<int>(detail::parse_small(head[0], "triangulation header"));
    int b = static_cast<int>(detail::parse_small(head[1], "triangulation header"));
    int p = static_cast<int>(detail::parse_small(head[2], "triangulation header"));
    if (static_cast<int>(head.size()) != 3 + b)
        throw IoError("triangulation header: expected " + std::to_string(b) +
                      " boundary point counts");
    std::vector<int> counts;
    for (int j = 0; j < b; ++j)
        counts.push_back(static_cast<int>(detail::parse_small(head[3 + j], "triangulation header")));
    MarkedSurface s;
    try {
        s = MarkedSurface::create(g, p, counts);
    } catch (const SurfaceError& e) {
        throw IoError(std::string("triangulation header: ") + e.what());
    }

    std::vector<std::array<int, 3>> tris;
    std::vector<std::pair<int, std::pair<std::string, std::string>>> sf_claims;
    for (std::size_t l = 1; l < lines.size(); ++l) {
        std::string where = "triangulation line " + std::to_string(lines[l].first);
        auto toks = detail::split_ws(lines[l].second);
        if (toks.size() != 3 && toks.size() != 4)
            throw IoError(where + ": expected three side tokens");
        std::array<int, 3> tri{};
        for (int e = 0; e < 3; ++e) tri[e] = detail::parse_side_token(toks[e], s, where);
        if (toks.size() == 4) {
            const std::string& suf = toks[3];
            if (suf.rfind("SF(", 0) != 0 || suf.back() != ')' || suf.find(',') == std::string::npos)
                throw IoError(where + ": bad suffix: " + suf);
            auto comma = suf.find(',');
            sf_claims.push_back({static_cast<int>(tris.size()),
                                 {suf.substr(3, comma - 3), suf.substr(comma + 1, suf.size() - comma - 2)}});
        }
        tris.push_back(tri);
    }
    Triangulation t;
    try {
        t = Triangulation::create(s, std::move(tris));
    } catch (const TriangulationError& e) {
        throw IoError(std::string("triangulation file: ") + e.what());
    }
    for (auto& [line_tri, claim] : sf_claims) {
        int r = detail::parse_side_token(claim.first, s, "SF suffix");
        int l2 = detail::parse_side_token(claim.second, s, "SF suffix");
        if (!t.is_radius(r) || t.radius_of_loop(l2) != r)
            throw IoError("SF suffix disagrees with the triangle list");
    }
    return t;
}

inline Triangulation read_triangulation_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path.string());
    try {
        return read_triangulation(in);
    } catch (const IoError& e) {
        throw IoError(path.string() + ": " + e.what());
    }
}

inline void write_triangulation(std::ostream& out, const Triangulation& t) {
    const auto& s = t.surface();
    out << s.genus << ' ' << s.boundary_components() << ' ' << s.punctures;
    for (int cj : s.boundary) out << ' ' << cj;
    out << '\n';
    for (auto& tri : t.triangles()) {
        out << t.side_token(tri[0]) << ' ' << t.side_token(tri[1]) << ' ' << t.side_token(tri[2]);
        int rep = -1;
        if (tri[0] == tri[1] || tri[0] == tri[2]) rep = tri[0];
        else if (tri[1] == tri[2]) rep = tri[1];
        if (rep >= 0) {
            int loop = tri[0] == rep ? (tri[1] == rep ? tri[2] : tri[1]) : tri[0];
            out << " SF(" << t.side_token(rep) << ',' << t.side_token(loop) << ')';
        }
        out << '\n';
    }
}

inline std::uint64_t file_checksum(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    std::uint64_t h = 1469598103934665603ULL;
    char buf[4096];
    while (in.read(buf, sizeof buf) || in.gcount() > 0) {
        for (std::streamsize i = 0; i < in.gcount(); ++i) {
            h ^= static_cast<unsigned char>(buf[i]);
            h *= 1099511628211ULL;
        }
        if (!in) break;
    }
    return h;
}

}  // namespace arrowscope

#endif
