#pragma once

#include <charconv>
#include <cstdint>
#include <fstream>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <lorcost/lorcost.hpp>

namespace lorcost::cli {

enum Exit : int { ok = 0, check_failed = 1, usage = 2, precondition = 3 };

/// Bad input that is the caller's fault (flags, unreadable files).
struct UsageError : Error {
    using Error::Error;
};

namespace detail {

inline Json number_list(const std::vector<double>& xs) {
    Json j = Json::array();
    for (double x : xs) j.push_back(x);
    return j;
}

inline ExecutionSequence read_trace(const std::string& path) {
    try {
        return load_trace_file(path);
    } catch (const ParseError& e) {
        throw UsageError(e.what());
    } catch (const NegativeAddress& e) {
        throw UsageError(e.what());
    } catch (const Error& e) {
        throw UsageError(e.what());
    }
}

inline void require_readable(const std::string& path) {
    if (!std::ifstream(path)) throw UsageError("cannot open '" + path + "'");
}

/// ram|linear|log|sqrt|block:B|file:PATH. Families are tabulated up to the
/// longest jump of the trace.
inline LocalityFunction parse_ell(const std::string& spec, const ExecutionSequence& e) {
    std::size_t reach = 1;
    for (std::size_t i = 1; i < e.size(); ++i) reach = std::max<std::size_t>(reach, distance(e[i], e[i - 1]));
    if (spec.rfind("file:", 0) == 0) {
        require_readable(spec.substr(5));
        try {
            return load_locality_file(spec.substr(5));
        } catch (const ParseError& ex) {
            throw UsageError(ex.what());
        }
    }
    if (spec.rfind("block:", 0) == 0) {
        const auto b = spec.substr(6);
        std::uint64_t block = 0;
        const auto [p, ec] = std::from_chars(b.data(), b.data() + b.size(), block);
        if (ec != std::errc{} || p != b.data() + b.size() || block < 1) {
            throw UsageError("--ell block:B needs a positive integer B");
        }
        return make_locality(LocalityKind::block, reach, block);
    }
    const auto kind = parse_locality_kind(spec);
    if (!kind || *kind == LocalityKind::block) throw UsageError("unknown --ell '" + spec + "'");
    return make_locality(*kind, reach);
}

struct CostArgs {
    std::string trace;
    std::string model;
    std::string ell;
    std::optional<std::uint64_t> B, M;
    std::string hierarchy;
    std::string level_model = "lor";
    std::string shift = "all";
    std::string format = "json";
};

inline std::optional<std::uint64_t> parse_shift(const std::string& s) {
    if (s == "all") return std::nullopt;
    std::uint64_t v = 0;
    const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || p != s.data() + s.size()) throw UsageError("--shift must be an integer or 'all'");
    return v;
}

inline std::uint64_t require(const std::optional<std::uint64_t>& v, const char* flag, const std::string& model) {
    if (!v) throw UsageError(std::string("--model ") + model + " requires " + flag);
    return *v;
}

inline int emit(std::ostream& out, const ReportDocument& doc, const std::string& format, double total,
                const std::vector<double>& per_access) {
    if (format == "text") {
        out << "total " << format_number(total) << '\n';
        for (std::size_t i = 0; i < per_access.size(); ++i) out << i + 1 << ' ' << format_number(per_access[i]) << '\n';
    } else {
        out << doc.dump();
    }
    return ok;
}

inline int run_cost(const CostArgs& a, std::ostream& out) {
    const auto e = read_trace(a.trace);
    ReportDocument doc;
    doc.command = "cost";
    doc.inputs = Json{{"trace", a.trace}, {"digest", digest(e)}, {"model", a.model}};
    const auto shift = parse_shift(a.shift);
    double total = 0.0;
    std::vector<double> per_access;

    if (a.model == "lor") {
        if (a.ell.empty()) throw UsageError("--model lor requires --ell");
        const auto f = parse_ell(a.ell, e);
        doc.inputs["ell"] = f.family_tag;
        total = lor_cost(e, f);
        for (std::size_t i = 0; i < e.size(); ++i) per_access.push_back(i == 0 ? 0.0 : f(distance(e[i], e[i - 1])));
    } else if (a.model == "co") {
        const auto B = require(a.B, "--B", a.model);
        doc.inputs["B"] = B;
        if (B < 1) throw UsageError("--B must be >= 1");
        per_access.assign(e.size(), 0.0);
        if (shift) {
            total = static_cast<double>(co_cost_query(e, B, *shift));
            for (std::size_t i = 1; i < e.size(); ++i) {
                per_access[i] = block_of(e[i], B, *shift) != block_of(e[i - 1], B, *shift) ? 1.0 : 0.0;
            }
        } else {
            const auto s = smoothed_co_query(e, B);
            total = to_double(s);
            doc.results["exact"] = std::to_string(s.numerator()) + "/" + std::to_string(s.denominator());
            for (std::size_t i = 1; i < e.size(); ++i) {
                per_access[i] = std::min(1.0, static_cast<double>(distance(e[i], e[i - 1])) / static_cast<double>(B));
            }
        }
    } else if (a.model == "lru" || a.model == "belady") {
        const CacheConfig cfg{require(a.M, "--M", a.model), require(a.B, "--B", a.model),
                              a.model == "lru" ? Policy::lru : Policy::belady};
        doc.inputs["M"] = cfg.M;
        doc.inputs["B"] = cfg.B;
        if (shift) {
            cfg.validate();
            const auto r = simulate(e, cfg, *shift);
            total = static_cast<double>(r.total_misses);
            for (auto m : r.per_access) per_access.push_back(m);
        } else {
            const auto s = smoothed_cost(e, cfg);
            total = to_double(s);
            doc.results["exact"] = std::to_string(s.numerator()) + "/" + std::to_string(s.denominator());
            per_access = smoothed_per_access(e, cfg);
        }
    } else if (a.model == "bidim") {
        const auto M = require(a.M, "--M", a.model);
        const auto B = require(a.B, "--B", a.model);
        doc.inputs["M"] = M;
        doc.inputs["B"] = B;
        const auto t = two_finger_cost(e, make_lmb(M, B));
        total = t.total;
        per_access = t.costs;
        doc.results["times"] = number_list(t.times);
    } else if (a.model == "hierarchy") {
        if (a.hierarchy.empty()) throw UsageError("--model hierarchy requires --hierarchy");
        const auto model = parse_hierarchy_model(a.level_model);
        if (!model) throw UsageError("unknown --level-model '" + a.level_model + "'");
        require_readable(a.hierarchy);
        Hierarchy h;
        try {
            h = load_hierarchy_file(a.hierarchy);
        } catch (const ParseError& ex) {
            throw UsageError(ex.what());
        }
        doc.inputs["hierarchy"] = a.hierarchy;
        doc.inputs["level_model"] = a.level_model;
        const auto costs = level_costs(e, h, *model);
        total = hierarchy_cost(e, h, *model);
        doc.results["level_costs"] = number_list(costs);
        if (a.format == "text") {
            out << "total " << format_number(total) << '\n';
            for (std::size_t i = 0; i < costs.size(); ++i) {
                out << "level " << i + 1 << ' ' << format_number(costs[i]) << '\n';
            }
            return ok;
        }
        doc.results["total"] = total;
        out << doc.dump();
        return ok;
    }
    doc.inputs["shift"] = a.shift;
    doc.results["total"] = total;
    doc.results["per_access"] = number_list(per_access);
    return emit(out, doc, a.format, total, per_access);
}

struct GenArgs {
    std::string kind;
    std::map<std::string, std::int64_t> params;
    std::optional<std::int64_t> seed;
    unsigned d = 0;
    std::string out;
};

inline void write_to(const std::string& path, std::ostream& fallback, const std::string& text) {
    if (path.empty()) {
        fallback << text;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw UsageError("cannot write '" + path + "'");
    f << text;
}

inline int run_gen_trace(const GenArgs& a, std::ostream& out) {
    const auto kind = parse_trace_kind(a.kind);
    if (!kind) throw UsageError("unknown trace kind '" + a.kind + "'");
    TraceGenSpec spec{*kind, a.params};
    if (a.seed) spec.params["seed"] = *a.seed;
    ExecutionSequence e;
    try {
        e = generate(spec);
    } catch (const InvalidParam& ex) {
        throw UsageError(ex.what());
    }
    std::ostringstream s;
    save_trace(s, e);
    write_to(a.out, out, s.str());
    return ok;
}

inline int run_gen_layout(const GenArgs& a, std::ostream& out) {
    const auto kind = parse_layout_kind(a.kind);
    if (!kind) throw UsageError("unknown layout kind '" + a.kind + "'");
    Layout layout;
    try {
        layout = build_layout(*kind, a.d);
    } catch (const InvalidParam& ex) {
        throw UsageError(ex.what());
    }
    std::ostringstream s;
    save_layout_csv(s, layout);
    write_to(a.out, out, s.str());
    return ok;
}

inline int run_check(const std::string& suite, std::uint64_t seed, const std::string& format, std::ostream& out) {
    RunConfig cfg;
    cfg.seed = seed;
    std::vector<CheckReport> reports;
    if (suite == "all") reports = run_all(cfg);
    else reports.push_back(run_suite(suite, cfg));

    bool all_pass = true;
    for (const auto& r : reports) all_pass = all_pass && r.pass();
    if (format == "text") {
        for (const auto& r : reports) {
            out << (r.pass() ? "PASS " : "FAIL ") << r.check_id << ' ' << r.cases_passed << '/' << r.cases_run;
            if (r.vacuous()) out << " (0 cases)";
            out << '\n';
        }
    } else {
        ReportDocument doc;
        doc.command = "check";
        doc.inputs = Json{{"suite", suite}};
        doc.seeds = {seed};
        doc.results["pass"] = all_pass;
        doc.results["reports"] = Json::array();
        for (const auto& r : reports) doc.results["reports"].push_back(to_json(r));
        out << doc.dump();
    }
    return all_pass ? ok : check_failed;
}

inline int run_plotdata(const std::string& trace, std::uint64_t M, std::uint64_t B, std::ostream& out) {
    const auto e = read_trace(trace);
    const auto t = two_finger_cost(e, make_lmb(M, B));
    out << "index,address,time,cost\n";
    for (std::size_t i = 0; i < e.size(); ++i) {
        out << i + 1 << ',' << e[i] << ',' << format_number(t.times[i]) << ',' << format_number(t.costs[i]) << '\n';
    }
    return ok;
}

}  // namespace detail

/// Entry point shared by the executable and the tests. args excludes the
/// program name.
inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Locality-of-reference cost models for memory traces", "lorcost"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(version));

    detail::CostArgs cost;
    auto* cost_cmd = app.add_subcommand("cost", "Cost of a trace under one model");
    cost_cmd->add_option("--trace", cost.trace, "Trace file, one address per line")->required();
    cost_cmd->add_option("--model", cost.model)
        ->required()
        ->check(CLI::IsMember({"lor", "co", "lru", "belady", "bidim", "hierarchy"}));
    cost_cmd->add_option("--ell", cost.ell, "ram|linear|log|sqrt|block:B|file:PATH");
    cost_cmd->add_option("--B", cost.B, "Block size in words");
    cost_cmd->add_option("--M", cost.M, "Memory size in words");
    cost_cmd->add_option("--hierarchy", cost.hierarchy, "Hierarchy CSV (M,B,C)");
    cost_cmd->add_option("--level-model", cost.level_model, "Per-level model for --model hierarchy")
        ->check(CLI::IsMember({"co", "lru", "lor"}));
    cost_cmd->add_option("--shift", cost.shift, "Block alignment shift, or 'all' to average over every shift");
    cost_cmd->add_option("--format", cost.format)->check(CLI::IsMember({"json", "text"}));

    auto* gen_cmd = app.add_subcommand("gen", "Generate traces and layouts");
    gen_cmd->require_subcommand(1);
    detail::GenArgs gen;
    auto* gen_trace = gen_cmd->add_subcommand("trace", "Write a generated trace");
    gen_trace->add_option("kind", gen.kind)->required();
    const std::vector<std::pair<std::string, std::string>> trace_params{
        {"--n", "n"},         {"--start", "start"},           {"--count", "count"},
        {"--stride", "stride"}, {"--B", "B"},                 {"--section-count", "section_count"},
        {"--section-length", "section_length"}, {"--target", "target"}, {"--k", "k"},
        {"--repetitions", "repetitions"}};
    for (const auto& [flag, name] : trace_params) {
        gen_trace->add_option_function<std::int64_t>(flag, [&gen, name = name](std::int64_t v) { gen.params[name] = v; });
    }
    gen_trace->add_option("--seed", gen.seed, "Seed for randomized kinds");
    gen_trace->add_option("--out", gen.out, "Output path (default stdout)");
    auto* gen_layout = gen_cmd->add_subcommand("layout", "Write a tree layout as CSV");
    gen_layout->add_option("kind", gen.kind)->required();
    gen_layout->add_option("--d", gen.d, "Tree height")->required();
    gen_layout->add_option("--seed", gen.seed, "Accepted for uniformity; layouts are deterministic");
    gen_layout->add_option("--out", gen.out, "Output path (default stdout)");

    std::string suite = "all";
    std::uint64_t seed = 7;
    std::string check_format = "json";
    auto* check_cmd = app.add_subcommand("check", "Run verification suites");
    std::vector<std::string> suites{"all"};
    for (const auto& s : suite_names()) suites.push_back(s);
    check_cmd->add_option("--suite", suite)->check(CLI::IsMember(suites));
    check_cmd->add_option("--seed", seed);
    check_cmd->add_option("--format", check_format)->check(CLI::IsMember({"json", "text"}));

    std::string plot_trace;
    std::uint64_t plot_M = 0, plot_B = 0;
    auto* plot_cmd = app.add_subcommand("plotdata", "Space-time coordinates of the two-finger cost");
    plot_cmd->add_option("--trace", plot_trace)->required();
    plot_cmd->add_option("--M", plot_M)->required();
    plot_cmd->add_option("--B", plot_B)->required();

    std::vector<std::string> argv_store{"lorcost"};
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (auto& s : argv_store) argv.push_back(s.data());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? ok : usage;
    }

    try {
        if (*cost_cmd) return detail::run_cost(cost, out);
        if (*gen_trace) return detail::run_gen_trace(gen, out);
        if (*gen_layout) return detail::run_gen_layout(gen, out);
        if (*check_cmd) return detail::run_check(suite, seed, check_format, out);
        if (*plot_cmd) return detail::run_plotdata(plot_trace, plot_M, plot_B, out);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return usage;
    } catch (const Error& e) {
        err << "precondition failed: " << e.what() << '\n';
        return precondition;
    }
    return usage;
}

}  // namespace lorcost::cli
