// regroup: exact group-structure transport along homeomorphisms of
// subgroups of the rationals, with verification reports.

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "regroup/selftest.hpp"

namespace {

using regroup::json;

json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw regroup::ParseError("cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw regroup::ParseError(path + ": " + std::string(e.what()));
    }
}

void render_text(const json& envelope, std::ostream& os) {
    os << envelope.value("command", "?") << ": " << envelope.value("status", "?") << "\n";
    if (!envelope.contains("report")) return;
    const json& rep = envelope.at("report");
    for (auto it = rep.begin(); it != rep.end(); ++it) {
        const json& v = it.value();
        if (v.is_primitive()) {
            os << "  " << it.key() << ": " << (v.is_string() ? v.get<std::string>() : v.dump())
               << "\n";
        } else if (v.is_array() && it.key() == "checks") {
            for (const json& c : v)
                os << "  " << c.value("check", "?") << ": " << c.value("status", "?")
                   << " (checked " << c.value("checked", 0) << ")\n";
        } else if (v.is_object() && v.contains("status")) {
            os << "  " << it.key() << ": " << v.value("status", "?") << "\n";
        }
    }
}

int emit(const std::string& command, json envelope, const std::string& format) {
    envelope["command"] = command;
    const std::string status = envelope.value("status", "pass");
    if (format == "text")
        render_text(envelope, std::cout);
    else
        std::cout << envelope.dump(2) << "\n";
    if (const char* dir = std::getenv("REGROUP_REPORT_DIR")) {
        std::filesystem::create_directories(dir);
        std::ofstream out(std::filesystem::path(dir) / (command + ".json"),
                          std::ios::binary);
        out << envelope.dump(2) << "\n";
    }
    if (status == "pass") return 0;
    return status == "error" ? 2 : 1;
}

struct Paths {
    std::string group;
    std::string map;
    std::string window;
};

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact transport of group structures along homeomorphisms of subgroups "
                 "of R, with involution normalization and orbit analysis"};
    app.require_subcommand(1);
    app.fallthrough();
    std::string format = "json";
    app.add_option("--format", format, "report format")
        ->check(CLI::IsMember({"json", "text"}))
        ->capture_default_str();

    Paths paths;
    std::string check = "axioms";
    std::string shift_c;
    std::string scheme = "madic:2";
    std::optional<std::int64_t> levels;
    std::vector<std::int64_t> window_sizes{16, 32, 64, 128, 256, 512, 1024, 2048, 4096};
    std::uint64_t seed = 0;
    std::string corpus = std::getenv("REGROUP_CORPUS") ? std::getenv("REGROUP_CORPUS")
                                                       : "corpus";

    auto* verify = app.add_subcommand("verify-involution",
                                      "involution, fixed-point and monotonicity report");
    verify->add_option("--map", paths.map, "map JSON file")->required();
    verify->add_option("--window", paths.window, "window JSON file");
    verify->add_option("--group", paths.group, "group JSON file (consistency check)");

    auto* norm = app.add_subcommand("normalize-involution",
                                    "turn a single-fixed-point involution into the "
                                    "inversion of a transported group");
    norm->add_option("--group", paths.group, "group JSON file")->required();
    norm->add_option("--map", paths.map, "map JSON file")->required();
    norm->add_option("--window", paths.window, "window JSON file")->required();

    auto* transport = app.add_subcommand("transport",
                                         "transported-group checks along a homeomorphism");
    transport->add_option("--group", paths.group, "group JSON file")->required();
    transport->add_option("--map", paths.map, "transporting map JSON file")->required();
    transport->add_option("--window", paths.window, "window JSON file")->required();
    transport->add_option("--check", check, "what to verify")
        ->check(CLI::IsMember({"axioms", "iso", "inversion", "shift"}))
        ->required();
    transport->add_option("--shift-c", shift_c, "native shift constant (for --check shift)");

    auto* orbits = app.add_subcommand("orbits", "orbit decomposition over a window");
    orbits->add_option("--map", paths.map, "map JSON file")->required();
    orbits->add_option("--window", paths.window, "window JSON file")->required();

    auto* counter = app.add_subcommand("counterexample",
                                       "periodic-point-free map that no regrouping makes "
                                       "a shift: orbit growth evidence");
    counter->add_option("--scheme", scheme, "partition scheme (parity or madic:<base>)")
        ->capture_default_str();
    counter->add_option("--levels", levels, "finite number of partition classes");
    counter->add_option("--windows", window_sizes, "growing window sizes")
        ->delimiter(',')
        ->capture_default_str();

    auto* conj = app.add_subcommand("conjugate-shift",
                                    "attempt a fundamental-domain conjugacy to a shift");
    conj->add_option("--group", paths.group, "group JSON file")->required();
    conj->add_option("--map", paths.map, "map JSON file")->required();
    conj->add_option("--window", paths.window, "window JSON file")->required();
    conj->add_option("--growth-windows", window_sizes,
                     "window sizes for the obstruction fallback")
        ->delimiter(',');

    auto* self = app.add_subcommand("selftest", "run the bundled corpus and property suites");
    self->add_option("--seed", seed, "seed for the randomized property suites")
        ->capture_default_str();
    self->add_option("--corpus", corpus, "corpus directory")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        auto group_in = [&]() { return regroup::group_from_json(load_json(paths.group)); };
        auto map_in = [&]() { return regroup::homeo_from_json(load_json(paths.map)); };
        auto window_in = [&]() { return regroup::window_from_json(load_json(paths.window)); };
        auto envelope = [&](const regroup::CommandOutcome& out, json inputs) {
            return json{{"inputs", std::move(inputs)},
                        {"report", out.report},
                        {"status", out.pass ? "pass" : "fail"}};
        };

        if (*verify) {
            regroup::Homeo f = map_in();
            if (!paths.group.empty())
                regroup::detail::require_same_group(regroup::homeo_group(f), group_in(),
                                                    "verify-involution");
            std::optional<regroup::Window> w;
            if (!paths.window.empty()) w = window_in();
            json inputs{{"map", regroup::to_json(f)}};
            if (w) inputs["window"] = regroup::to_json(*w);
            return emit("verify-involution",
                        envelope(regroup::run_verify_involution(f, w), std::move(inputs)),
                        format);
        }
        if (*norm) {
            regroup::GroupDescriptor g = group_in();
            regroup::Homeo f = map_in();
            regroup::Window w = window_in();
            json inputs{{"group", regroup::to_json(g)},
                        {"map", regroup::to_json(f)},
                        {"window", regroup::to_json(w)}};
            return emit("normalize-involution",
                        envelope(regroup::run_normalize_involution(f, g, w),
                                 std::move(inputs)),
                        format);
        }
        if (*transport) {
            regroup::GroupDescriptor g = group_in();
            regroup::Homeo h = map_in();
            regroup::Window w = window_in();
            std::optional<regroup::Rational> c;
            if (!shift_c.empty()) c = regroup::parse_rational(shift_c);
            json inputs{{"group", regroup::to_json(g)},
                        {"map", regroup::to_json(h)},
                        {"window", regroup::to_json(w)},
                        {"check", check}};
            if (c) inputs["shift_c"] = c->str();
            return emit("transport",
                        envelope(regroup::run_transport(g, h, w, check, c),
                                 std::move(inputs)),
                        format);
        }
        if (*orbits) {
            regroup::Homeo f = map_in();
            regroup::Window w = window_in();
            json inputs{{"map", regroup::to_json(f)}, {"window", regroup::to_json(w)}};
            return emit("orbits", envelope(regroup::run_orbits(f, w), std::move(inputs)),
                        format);
        }
        if (*counter) {
            regroup::PartitionScheme p = regroup::parse_scheme(scheme, levels);
            json inputs{{"scheme", p.str()}, {"windows", window_sizes}};
            return emit("counterexample",
                        envelope(regroup::run_counterexample(p, window_sizes),
                                 std::move(inputs)),
                        format);
        }
        if (*conj) {
            regroup::GroupDescriptor g = group_in();
            regroup::Homeo f = map_in();
            regroup::Window w = window_in();
            json inputs{{"group", regroup::to_json(g)},
                        {"map", regroup::to_json(f)},
                        {"window", regroup::to_json(w)}};
            return emit("conjugate-shift",
                        envelope(regroup::run_conjugate_shift(g, f, w, window_sizes),
                                 std::move(inputs)),
                        format);
        }
        if (*self) {
            json rep = regroup::run_selftest(corpus, seed);
            json env{{"report", rep}, {"status", rep.value("status", "fail")}};
            return emit("selftest", std::move(env), format);
        }
    } catch (const std::exception& e) {
        json env{{"command", app.get_subcommands().empty()
                                 ? "?"
                                 : app.get_subcommands().front()->get_name()},
                 {"status", "error"},
                 {"error", json{{"kind", regroup::error_kind(e)}, {"message", e.what()}}}};
        std::cout << env.dump(2) << "\n";
        return 2;
    }
    return 2;
}
