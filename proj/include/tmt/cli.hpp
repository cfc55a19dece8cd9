#pragma once

// `tmt gen | run | sweep`. Exit codes: 0 success, 1 validation or I/O
// failure, 2 usage error.

#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tmt/config_io.hpp"
#include "tmt/traffic_gen.hpp"

namespace tmt::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

namespace detail {

inline std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_file(const std::filesystem::path& path, const std::string& bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out || !out.write(bytes.data(), static_cast<std::streamsize>(bytes.size())))
        throw std::runtime_error("cannot write " + path.string());
}

struct Inputs {
    SimConfig config;
    Trace trace;
};

inline Inputs load_inputs(const std::string& config_path, const std::string& trace_path) {
    Inputs in;
    in.config = parse_config(read_file(config_path));
    in.trace = parse_trace(read_file(trace_path), in.config.n);
    return in;
}

} // namespace detail

struct GenArgs {
    std::string pattern;
    std::size_t n = 0;
    std::size_t m = 0;
    double skew = 1.0;
    double fraction = 0.8;
    std::size_t elephants = 1;
    std::uint64_t seed = 0;
    std::string out;
};

inline int cmd_gen(const GenArgs& a, std::ostream& out, std::ostream& err) {
    PatternSpec spec{AllToAll{}, a.n, a.m, a.seed};
    if (a.pattern == "all-to-all")
        spec.kind = AllToAll{};
    else if (a.pattern == "ring-reduce")
        spec.kind = RingReduce{};
    else if (a.pattern == "zipf")
        spec.kind = Zipf{a.skew};
    else if (a.pattern == "elephant-mice")
        spec.kind = ElephantMice{a.fraction, a.elephants};
    else {
        err << "gen: unknown pattern '" << a.pattern << "'\n";
        return kExitUsage;
    }

    std::string bytes;
    try {
        bytes = write_trace(generate(spec));
    } catch (const Error& e) {
        err << "gen: " << e.what() << '\n';
        return kExitUsage;
    }
    if (a.out.empty()) {
        out << bytes;
        return kExitOk;
    }
    try {
        detail::write_file(a.out, bytes);
    } catch (const std::exception& e) {
        err << "gen: " << e.what() << '\n';
        return kExitFailure;
    }
    return kExitOk;
}

struct RunArgs {
    std::string config;
    std::string trace;
    std::string out;
};

inline int cmd_run(const RunArgs& a, std::ostream& out, std::ostream& err) {
    try {
        auto in = detail::load_inputs(a.config, a.trace);
        auto result = run(in.config, in.trace);
        if (!replay_verify(result, in.config, in.trace))
            throw std::runtime_error("ledger failed replay verification");

        std::filesystem::path dir(a.out);
        std::filesystem::create_directories(dir);
        detail::write_file(dir / "steps.csv", steps_csv(result.ledger));
        detail::write_file(dir / "report.json", report_json(in.config, result, "steps.csv").dump(2) + "\n");
        out << format_rational(result.ledger.total) << '\n';
        return kExitOk;
    } catch (const std::exception& e) {
        err << "run: " << e.what() << '\n';
        return kExitFailure;
    }
}

struct SweepArgs {
    std::string config;
    std::string trace;
    std::string param;
    std::vector<std::string> values;
    std::string out;
};

/// Copy of `base` with one parameter replaced.
inline SimConfig apply_sweep_value(SimConfig base, const std::string& param, const std::string& value) {
    auto as_uint = [&] {
        auto r = parse_rational(value);
        if (r.denominator() != 1 || r < 0)
            throw Error(ErrorCode::InvalidConfig, param + " must be a non-negative integer, got '" + value + "'");
        return static_cast<std::uint64_t>(r.numerator());
    };
    if (param == "alpha") {
        base.cost.alpha = parse_rational(value);
    } else if (param == "beta") {
        for (auto& s : base.switches)
            s.beta = static_cast<std::uint32_t>(as_uint());
    } else if (param == "theta" || param == "epoch" || param == "decay") {
        auto p = base.policy.value_or(PolicyParams{});
        if (param == "theta")
            p.theta = parse_rational(value);
        else if (param == "epoch")
            p.epoch = static_cast<std::size_t>(as_uint());
        else
            p.decay = parse_rational(value);
        base.policy = p;
    } else {
        throw Error(ErrorCode::InvalidConfig, "unknown sweep parameter '" + param + "'");
    }
    validate_config(base);
    return base;
}

inline bool is_sweep_param(const std::string& p) {
    return p == "alpha" || p == "beta" || p == "theta" || p == "epoch" || p == "decay";
}

inline int cmd_sweep(const SweepArgs& a, std::ostream& out, std::ostream& err) {
    std::vector<std::string> values;
    for (const auto& v : a.values)
        if (!v.empty())
            values.push_back(v);
    if (values.empty()) {
        err << "sweep: --values must list at least one value\n";
        return kExitUsage;
    }
    if (!is_sweep_param(a.param)) {
        err << "sweep: --param must be one of alpha, beta, theta, epoch, decay\n";
        return kExitUsage;
    }

    try {
        auto in = detail::load_inputs(a.config, a.trace);
        std::vector<SimConfig> points;
        for (const auto& v : values)
            points.push_back(apply_sweep_value(in.config, a.param, v));

        std::vector<std::future<SimResult>> runs;
        for (const auto& cfg : points)
            runs.push_back(std::async(std::launch::async, [&cfg, &in] { return run(cfg, in.trace); }));

        std::string csv = a.param + ",total,total_srv,total_adj,unreachable_count,mean_hop_count\n";
        for (std::size_t i = 0; i < runs.size(); ++i) {
            auto result = runs[i].get();
            if (!replay_verify(result, points[i], in.trace))
                throw std::runtime_error("ledger failed replay verification at " + a.param + "=" + values[i]);
            const auto& l = result.ledger;
            csv += values[i] + ',' + format_rational(l.total) + ',' + format_rational(l.total_srv) + ',' +
                   format_rational(l.total_adj) + ',' + std::to_string(l.unreachable_count) + ',' +
                   format_rational(result.mean_hop_count) + '\n';
        }
        if (a.out.empty())
            out << csv;
        else
            detail::write_file(a.out, csv);
        return kExitOk;
    } catch (const std::exception& e) {
        err << "sweep: " << e.what() << '\n';
        return kExitFailure;
    }
}

/// Entry point shared by the `tmt` binary and the tests.
inline int main(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
    CLI::App app{"Discrete-time simulator for matching-based reconfigurable networks", "tmt"};
    app.require_subcommand(1);

    GenArgs gen;
    auto* gen_cmd = app.add_subcommand("gen", "Generate a synthetic trace");
    gen_cmd->add_option("--pattern", gen.pattern, "all-to-all | ring-reduce | zipf | elephant-mice")->required();
    gen_cmd->add_option("--n", gen.n, "Node count")->required();
    gen_cmd->add_option("--m", gen.m, "Trace length")->required();
    gen_cmd->add_option("--skew", gen.skew, "Zipf exponent");
    gen_cmd->add_option("--fraction", gen.fraction, "Elephant request fraction");
    gen_cmd->add_option("--elephants", gen.elephants, "Number of elephant pairs");
    gen_cmd->add_option("--seed", gen.seed, "RNG seed");
    gen_cmd->add_option("--out", gen.out, "Output trace file (stdout if omitted)");

    RunArgs runa;
    auto* run_cmd = app.add_subcommand("run", "Simulate one config over one trace");
    run_cmd->add_option("--config", runa.config, "JSON config")->required();
    run_cmd->add_option("--trace", runa.trace, "Trace file")->required();
    run_cmd->add_option("--out", runa.out, "Output directory for report.json and steps.csv")->required();

    SweepArgs sweep;
    auto* sweep_cmd = app.add_subcommand("sweep", "Run one config over a list of parameter values");
    sweep_cmd->add_option("--config", sweep.config, "JSON config")->required();
    sweep_cmd->add_option("--trace", sweep.trace, "Trace file")->required();
    sweep_cmd->add_option("--param", sweep.param, "alpha | beta | theta | epoch | decay")->required();
    sweep_cmd->add_option("--values", sweep.values, "Comma-separated values")->required()->delimiter(',');
    sweep_cmd->add_option("--out", sweep.out, "Combined CSV (stdout if omitted)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        auto code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    if (*gen_cmd)
        return cmd_gen(gen, out, err);
    if (*run_cmd)
        return cmd_run(runa, out, err);
    return cmd_sweep(sweep, out, err);
}

} // namespace tmt::cli
