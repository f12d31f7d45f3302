#ifndef ARROWSCOPE_CLI_HPP
#define ARROWSCOPE_CLI_HPP

#include <arrowscope/class_explorer.hpp>
#include <arrowscope/constructions.hpp>
#include <arrowscope/io.hpp>
#include <arrowscope/walk.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace arrowscope::cli {

// Exit codes: 0 success, 1 valid negative finding, 2 usage or input error,
// 3 inconclusive (a limit or cap tripped).
enum ExitCode { kOk = 0, kNegative = 1, kUsage = 2, kInconclusive = 3 };

using nlohmann::ordered_json;

namespace detail {

inline ordered_json int_to_json(const Int& v) {
    if (v >= std::numeric_limits<std::int64_t>::min() &&
        v <= std::numeric_limits<std::int64_t>::max())
        return static_cast<std::int64_t>(v);
    return v.str();
}

inline ordered_json distribution_json(const DistributionSet& d) {
    ordered_json values = ordered_json::array();
    for (auto& v : d.values) values.push_back(int_to_json(v));
    return ordered_json{{"values", values}, {"is_continuous", d.is_continuous}};
}

inline ordered_json quiver_json(const Quiver& q) {
    ordered_json rows = ordered_json::array();
    for (int i = 0; i < q.size(); ++i) {
        ordered_json row = ordered_json::array();
        for (int j = 0; j < q.size(); ++j) row.push_back(int_to_json(q.entry(i, j)));
        rows.push_back(std::move(row));
    }
    return ordered_json{{"n_mut", q.mutable_count()}, {"n_frozen", q.frozen_count()}, {"b", rows}};
}

inline ordered_json bounds_json(const Bounds& b) {
    ordered_json j{{"min", int_to_json(b.min)}, {"max", int_to_json(b.max)}};
    if (b.exceptional_set) {
        ordered_json set = ordered_json::array();
        for (auto& v : *b.exceptional_set) set.push_back(int_to_json(v));
        j["exceptional_set"] = set;
    } else {
        j["exceptional_set"] = nullptr;
    }
    return j;
}

inline ordered_json walk_json(const WalkReport& r) {
    ordered_json steps = ordered_json::array();
    for (auto& s : r.steps)
        steps.push_back(ordered_json{{"vertex", s.vertex}, {"arrow_count", int_to_json(s.arrow_count_after)}});
    return ordered_json{{"seed_key", r.start_key.hex()},
                        {"steps", steps},
                        {"realized", distribution_json(r.realized)},
                        {"acyclic", r.acyclic},
                        {"status", r.status == WalkStatus::found ? "found" : "not_found_within_limits"}};
}

inline ordered_json verdict_json(const FinitenessVerdict& v) {
    ordered_json j{{"finite", v.finite}};
    if (v.witness) {
        ordered_json word = ordered_json::array();
        for (int k : v.witness->second) word.push_back(k);
        j["witness"] = ordered_json{{"quiver", quiver_json(v.witness->first)}, {"mutations", word}};
    } else {
        j["witness"] = nullptr;
    }
    if (v.class_size)
        j["class_size"] = *v.class_size;
    else
        j["class_size"] = nullptr;
    return j;
}

inline ordered_json continuity_json(const ContinuityReport& r) {
    auto ints = [](const std::vector<Int>& vs) {
        ordered_json a = ordered_json::array();
        for (auto& v : vs) a.push_back(int_to_json(v));
        return a;
    };
    return ordered_json{{"surface",
                         ordered_json{{"g", r.surface.genus},
                                      {"b", r.surface.boundary_components()},
                                      {"p", r.surface.punctures},
                                      {"c", r.surface.boundary}}},
                        {"extended", r.extended},
                        {"conclusive", r.conclusive},
                        {"distribution", distribution_json(r.distribution)},
                        {"bounds", bounds_json(r.bounds)},
                        {"missing", ints(r.missing)},
                        {"excess", ints(r.excess)},
                        {"matches_expected", r.matches_expected},
                        {"continuous", r.continuous}};
}

inline std::string values_line(const std::vector<Int>& vs) {
    std::string s = "{";
    for (std::size_t i = 0; i < vs.size(); ++i) {
        if (i) s += ",";
        s += vs[i].str();
    }
    return s + "}";
}

struct SurfaceFlags {
    int g = 0;
    int p = 0;
    std::optional<int> b;
    std::vector<int> c;

    MarkedSurface build() const {
        if (b && *b != static_cast<int>(c.size()))
            throw SurfaceError("-b disagrees with the number of -c entries");
        return MarkedSurface::create(g, p, c);
    }
};

inline void add_surface_flags(CLI::App* cmd, SurfaceFlags& f) {
    cmd->add_option("-g,--genus", f.g, "genus");
    cmd->add_option("-p,--punctures", f.p, "number of punctures");
    auto* b = cmd->add_option("-b,--boundaries", "number of boundary components");
    b->check(CLI::Number);
    b->each([&f](const std::string& v) {
        try {
            f.b = std::stoi(v);
        } catch (const std::exception&) {
            throw CLI::ValidationError("-b", "not an integer: " + v);
        }
    });
    cmd->add_option("-c,--boundary-points", f.c,
                    "marked points per boundary component (space separated)");
}

// Enumeration persistence: `seed <hex>` and `limits <max_members> <max_depth>`
// header lines, then one `key<TAB>count<TAB>extended count` row per member.
inline void write_enumeration(std::ostream& out, const ClassEnumeration& e) {
    out << "seed " << canonical_form(e.seed).hex() << "\n";
    out << "limits " << e.limits_used.max_members << " ";
    if (e.limits_used.max_depth == static_cast<std::size_t>(-1))
        out << "-";
    else
        out << e.limits_used.max_depth;
    out << "\n";
    for (auto& [key, q] : e.members)
        out << key.hex() << "\t" << arrow_count(q, false).str() << "\t"
            << arrow_count(q, true).str() << "\n";
}

struct PersistedEnumeration {
    std::string seed_key;
    std::vector<std::pair<Int, Int>> counts;  // (exchange, extended) per member
};

inline PersistedEnumeration read_enumeration(std::istream& in) {
    PersistedEnumeration out;
    auto lines = arrowscope::detail::content_lines(in);
    if (lines.size() < 2) throw IoError("enumeration file: missing header");
    auto head = arrowscope::detail::split_ws(lines[0].second);
    if (head.size() != 2 || head[0] != "seed") throw IoError("enumeration file: bad seed line");
    out.seed_key = head[1];
    auto lim = arrowscope::detail::split_ws(lines[1].second);
    if (lim.empty() || lim[0] != "limits") throw IoError("enumeration file: bad limits line");
    for (std::size_t i = 2; i < lines.size(); ++i) {
        auto toks = arrowscope::detail::split_ws(lines[i].second);
        if (toks.size() != 3)
            throw IoError("enumeration file line " + std::to_string(lines[i].first) +
                          ": expected key, count, extended count");
        out.counts.emplace_back(
            arrowscope::detail::parse_int(toks[1], "enumeration file"),
            arrowscope::detail::parse_int(toks[2], "enumeration file"));
    }
    return out;
}

inline DistributionSet distribution_from_counts(const PersistedEnumeration& p, bool extended) {
    DistributionSet d;
    for (auto& [t, text] : p.counts) d.values.push_back(extended ? text : t);
    std::sort(d.values.begin(), d.values.end());
    d.values.erase(std::unique(d.values.begin(), d.values.end()), d.values.end());
    d.is_continuous =
        !d.values.empty() && d.values.back() - d.values.front() + 1 == Int(d.values.size());
    return d;
}

inline bool looks_like_enumeration_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    std::string first;
    in >> first;
    return first == "seed";
}

}  // namespace detail

/// Dispatches one command line. Output goes to `out`, diagnostics to `err`.
inline int run_command(const std::vector<std::string>& args, std::ostream& out,
                       std::ostream& err) {
    CLI::App app{"cluster-quiver mutation explorer"};
    app.require_subcommand(1);
    std::string format = "table";
    app.add_option("--format", format, "output format")
        ->check(CLI::IsMember({"json", "table"}))
        ->capture_default_str();
    int threads = 1;
    app.add_option("--threads", threads, "worker threads for enumeration")
        ->check(CLI::PositiveNumber);

    const bool json = [&] {
        for (std::size_t i = 0; i + 1 < args.size(); ++i)
            if (args[i] == "--format" && args[i + 1] == "json") return true;
        for (auto& a : args)
            if (a == "--format=json") return true;
        return false;
    }();
    auto emit = [&](const ordered_json& j, const std::string& table) {
        if (json)
            out << j.dump(2) << "\n";
        else
            out << table;
    };

    // mutate
    auto* cmd_mutate = app.add_subcommand("mutate", "apply a mutation sequence to a quiver");
    std::string mutate_file;
    std::vector<int> mutate_ks;
    cmd_mutate->add_option("file", mutate_file, "qvr file")->required();
    cmd_mutate->add_option("-k,--at", mutate_ks, "vertices to mutate at, in order")->required();

    // enumerate
    auto* cmd_enum = app.add_subcommand("enumerate", "enumerate a mutation class");
    std::string enum_file;
    std::size_t enum_max_members = 100000;
    std::size_t enum_max_depth = static_cast<std::size_t>(-1);
    cmd_enum->add_option("file", enum_file, "qvr file")->required();
    cmd_enum->add_option("--max-members", enum_max_members, "member limit");
    cmd_enum->add_option("--max-depth", enum_max_depth, "depth limit");

    // distribution
    auto* cmd_dist = app.add_subcommand("distribution", "arrow-count distribution of a class");
    std::string dist_file;
    bool dist_extended = false;
    cmd_dist->add_option("file", dist_file, "qvr file or persisted enumeration")->required();
    cmd_dist->add_flag("--extended", dist_extended, "count mutable-frozen arrows too");

    // finite
    auto* cmd_finite = app.add_subcommand("finite", "decide mutation-finiteness");
    std::string finite_file;
    cmd_finite->add_option("file", finite_file, "qvr file")->required();

    // grow
    auto* cmd_grow = app.add_subcommand("grow", "push all pair multiplicities above N");
    std::string grow_file;
    std::string grow_target = "2";
    std::size_t grow_cap = 1000000;
    cmd_grow->add_option("file", grow_file, "qvr file")->required();
    cmd_grow->add_option("-N,--target", grow_target, "multiplicity target")->required();
    cmd_grow->add_option("--cap", grow_cap, "mutation cap");

    // surface
    auto* cmd_surface = app.add_subcommand("surface", "marked-surface operations");
    cmd_surface->require_subcommand(1);
    detail::SurfaceFlags sflags;
    bool surface_extended = false;
    std::vector<CLI::App*> surface_subs;
    for (const char* name : {"info", "seed", "bounds", "distribution", "verify"}) {
        auto* sub = cmd_surface->add_subcommand(name);
        detail::add_surface_flags(sub, sflags);
        sub->add_flag("--extended", surface_extended, "extended quiver mode");
        surface_subs.push_back(sub);
    }

    // walk
    auto* cmd_walk = app.add_subcommand("walk", "search for a complete walk");
    std::string walk_file;
    std::string walk_target = "auto";
    std::size_t walk_depth = 64;
    detail::SurfaceFlags wflags;
    bool walk_surface = false;
    cmd_walk->add_option("file", walk_file, "qvr seed file");
    cmd_walk->add_option("--target", walk_target, "comma list of counts, or 'auto'");
    cmd_walk->add_option("--max-depth", walk_depth, "walk depth limit");
    detail::add_surface_flags(cmd_walk, wflags);
    cmd_walk->add_flag("--surface", walk_surface, "seed from the surface flags");

    // verify-tables
    auto* cmd_tables = app.add_subcommand("verify-tables", "replay the bounds/continuity grid");
    int tables_max_n = 9;
    cmd_tables->add_option("--max-n", tables_max_n, "largest arc count in the grid");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {  // --help
            out << app.help();
            return kOk;
        }
        err << "error: " << e.what() << "\n";
        return kUsage;
    }

    EnumerationLimits limits;
    limits.threads = threads;

    try {
        if (*cmd_mutate) {
            Quiver q = read_quiver_file(mutate_file);
            for (int k : mutate_ks) q = mutate(q, k);
            if (json)
                out << detail::quiver_json(q).dump(2) << "\n";
            else
                write_quiver(out, q);
            return kOk;
        }

        if (*cmd_enum) {
            limits.max_members = enum_max_members;
            limits.max_depth = enum_max_depth;
            auto e = enumerate_class(read_quiver_file(enum_file), limits);
            if (json) {
                ordered_json members = ordered_json::array();
                for (auto& [key, q] : e.members)
                    members.push_back(ordered_json{
                        {"key", key.hex()},
                        {"arrow_count", detail::int_to_json(arrow_count(q, false))},
                        {"extended_arrow_count", detail::int_to_json(arrow_count(q, true))}});
                out << ordered_json{{"seed_key", canonical_form(e.seed).hex()},
                                            {"truncated", e.truncated},
                                            {"members", members}}
                           .dump(2)
                    << "\n";
            } else {
                detail::write_enumeration(out, e);
            }
            return e.truncated ? kInconclusive : kOk;
        }

        if (*cmd_dist) {
            DistributionSet d;
            if (detail::looks_like_enumeration_file(dist_file)) {
                std::ifstream in(dist_file);
                d = detail::distribution_from_counts(detail::read_enumeration(in), dist_extended);
            } else {
                auto e = enumerate_class(read_quiver_file(dist_file), limits);
                d = distribution_set(e, dist_extended);
            }
            emit(detail::distribution_json(d),
                 "values " + detail::values_line(d.values) + "\ncontinuous " +
                     (d.is_continuous ? "yes" : "no") + "\n");
            return d.is_continuous ? kOk : kNegative;
        }

        if (*cmd_finite) {
            auto v = is_mutation_finite(read_quiver_file(finite_file));
            std::ostringstream table;
            table << (v.finite ? "finite" : "infinite") << "\n";
            if (v.class_size) table << "class_size " << *v.class_size << "\n";
            if (v.witness) {
                table << "witness_mutations";
                for (int k : v.witness->second) table << " " << k;
                table << "\n" << v.witness->first.to_string();
            }
            emit(detail::verdict_json(v), table.str());
            return kOk;
        }

        if (*cmd_grow) {
            Quiver q = read_quiver_file(grow_file);
            auto [grown, word] =
                grow_multiplicities(q, arrowscope::detail::parse_int(grow_target, "-N"), grow_cap);
            if (json) {
                ordered_json w = ordered_json::array();
                for (int k : word) w.push_back(k);
                out << ordered_json{{"mutations", w},
                                            {"quiver", detail::quiver_json(grown)}}
                           .dump(2)
                    << "\n";
            } else {
                out << "mutations";
                for (int k : word) out << " " << k;
                out << "\n";
                write_quiver(out, grown);
            }
            return kOk;
        }

        if (*cmd_surface) {
            MarkedSurface s = sflags.build();
            CLI::App* active = nullptr;
            for (auto* sub : surface_subs)
                if (sub->parsed()) active = sub;
            const std::string which = active->get_name();
            if (which == "info") {
                emit(ordered_json{{"g", s.genus},
                                          {"b", s.boundary_components()},
                                          {"p", s.punctures},
                                          {"c", s.boundary},
                                          {"boundary_points", s.boundary_points()},
                                          {"odd_boundary_components", s.odd_boundary_components()},
                                          {"arcs", s.arc_count()}},
                     "surface " + s.describe() + "\narcs " + std::to_string(s.arc_count()) +
                         "\nboundary_points " + std::to_string(s.boundary_points()) +
                         "\nodd_boundary_components " + std::to_string(s.odd_boundary_components()) +
                         "\n");
                return kOk;
            }
            if (which == "seed") {
                auto t = seed_triangulation(s);
                std::ostringstream buf;
                write_triangulation(buf, t);
                if (json) {
                    ordered_json tris = ordered_json::array();
                    for (auto& tri : t.triangles())
                        tris.push_back(ordered_json::array(
                            {t.side_token(tri[0]), t.side_token(tri[1]), t.side_token(tri[2])}));
                    out << ordered_json{{"surface", s.describe()}, {"triangles", tris}}.dump(2)
                        << "\n";
                } else {
                    out << buf.str();
                }
                return kOk;
            }
            if (which == "bounds") {
                Bounds b = t_bounds(s, surface_extended);
                std::string table = "min " + b.min.str() + "\nmax " + b.max.str() + "\n";
                if (b.exceptional_set)
                    table += "exceptional_set " + detail::values_line(*b.exceptional_set) + "\n";
                emit(detail::bounds_json(b), table);
                return kOk;
            }
            if (which == "distribution") {
                Quiver seed = quiver_from_triangulation(seed_triangulation(s), surface_extended);
                auto d = distribution_set(enumerate_class(seed, limits), surface_extended);
                emit(detail::distribution_json(d),
                     "values " + detail::values_line(d.values) + "\ncontinuous " +
                         (d.is_continuous ? "yes" : "no") + "\n");
                return d.is_continuous ? kOk : kNegative;
            }
            // verify
            auto report = verify_continuity(s, surface_extended, limits);
            std::ostringstream table;
            table << "surface " << s.describe() << (report.extended ? " extended" : " exchange")
                  << "\n";
            if (!report.conclusive) {
                table << "inconclusive (enumeration truncated)\n";
                emit(detail::continuity_json(report), table.str());
                return kInconclusive;
            }
            table << "values " << detail::values_line(report.distribution.values) << "\n"
                  << "expected " << detail::values_line(report.expected) << "\n"
                  << "continuous " << (report.continuous ? "yes" : "no") << "\n"
                  << "matches_expected " << (report.matches_expected ? "yes" : "no") << "\n";
            if (!report.missing.empty())
                table << "missing " << detail::values_line(report.missing) << "\n";
            emit(detail::continuity_json(report), table.str());
            return report.continuous && report.matches_expected ? kOk : kNegative;
        }

        if (*cmd_walk) {
            Quiver seed(0, 0);
            if (walk_surface) {
                seed = quiver_from_triangulation(seed_triangulation(wflags.build()), false);
            } else if (!walk_file.empty()) {
                seed = read_quiver_file(walk_file);
            } else {
                err << "error: walk needs a qvr file or --surface with -g/-p/-c\n";
                return kUsage;
            }
            std::vector<Int> target;
            if (walk_target == "auto") {
                auto d = distribution_set(enumerate_class(seed, limits), false);
                target = d.values;
            } else {
                std::string item;
                std::istringstream ts(walk_target);
                while (std::getline(ts, item, ','))
                    target.push_back(arrowscope::detail::parse_int(item, "--target"));
            }
            WalkLimits wl;
            wl.max_depth = walk_depth;
            auto report = find_complete_walk(seed, target, wl);
            std::ostringstream table;
            table << "status "
                  << (report.status == WalkStatus::found ? "found" : "not_found_within_limits")
                  << "\n";
            if (report.status == WalkStatus::found) {
                table << "steps";
                for (auto& st : report.steps) table << " " << st.vertex;
                table << "\nrealized " << detail::values_line(report.realized.values) << "\n";
            }
            emit(detail::walk_json(report), table.str());
            return report.status == WalkStatus::found ? kOk : kInconclusive;
        }

        if (*cmd_tables) {
            bool all_ok = true;
            std::vector<MarkedSurface> surfaces;
            for (int b = 0; 3 * b <= tables_max_n + 6; ++b)
                for (int p = 0; 3 * b + 3 * p <= tables_max_n + 6; ++p)
                    for (int c = b; 3 * b + 3 * p + c - 6 <= tables_max_n; ++c) {
                        if (b == 0 && c > 0) break;
                        std::vector<std::vector<int>> splits;
                        std::vector<int> cur;
                        std::function<void(int, int, int)> rec = [&](int total, int parts, int cap) {
                            if (parts == 0) {
                                if (total == 0) splits.push_back(cur);
                                return;
                            }
                            for (int first = std::min(cap, total - (parts - 1)); first >= 1; --first) {
                                cur.push_back(first);
                                rec(total - first, parts - 1, first);
                                cur.pop_back();
                            }
                        };
                        rec(c, b, c);
                        for (auto& counts : splits) {
                            try {
                                surfaces.push_back(MarkedSurface::create(0, p, counts));
                            } catch (const SurfaceError&) {
                            }
                        }
                        if (b == 0) break;
                    }
            if (tables_max_n >= 3) surfaces.push_back(MarkedSurface::create(1, 1, {}));

            ordered_json rows = ordered_json::array();
            for (auto& s : surfaces) {
                for (bool extended : {false, true}) {
                    auto report = verify_continuity(s, extended, limits);
                    bool expect_continuous = true;
                    if (!extended &&
                        (s.is_twice_punctured_digon() || s.is_four_punctured_sphere()))
                        expect_continuous = false;
                    if (extended &&
                        (s.is_once_punctured_triangle() || s.is_four_punctured_sphere()))
                        expect_continuous = false;
                    bool row_ok = report.conclusive && report.matches_expected &&
                                  report.continuous == expect_continuous;
                    all_ok = all_ok && row_ok;
                    if (json) {
                        auto j = detail::continuity_json(report);
                        j["expect_continuous"] = expect_continuous;
                        j["pass"] = row_ok;
                        rows.push_back(std::move(j));
                    } else {
                        out << (row_ok ? "PASS" : "FAIL") << "  " << s.describe()
                            << (extended ? " extended" : " exchange") << "  W="
                            << detail::values_line(report.distribution.values)
                            << (report.continuous ? " continuous" : " not-continuous") << "\n";
                    }
                }
            }
            if (json) out << rows.dump(2) << "\n";
            return all_ok ? kOk : kNegative;
        }
    } catch (const IoError& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const SurfaceError& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const UnsupportedSurfaceError& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const TruncatedEnumerationError& e) {
        err << "inconclusive: " << e.what() << "\n";
        return kInconclusive;
    } catch (const LimitError& e) {
        err << "inconclusive: " << e.what() << "\n";
        return kInconclusive;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    }
    err << "error: no subcommand\n";
    return kUsage;
}

}  // namespace arrowscope::cli

#endif
