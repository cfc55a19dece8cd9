#pragma once

// JSON simulation config, JSON run report and per-step CSV.
//
// Config schema:
//
//   {
//     "n": 8, "k": 3, "seed": 0,
//     "cost":   { "alpha": "1", "mode": "edge-distance", "unreachable_penalty": "8" },
//     "policy": { "epoch": 1, "theta": "0", "decay": "1" },
//     "switches": [
//       { "kind": "static", "pool": ["shift:1"] },
//       { "kind": "rotor", "pool": ["shift:2", [[0, 3], [1, 4]]], "beta": 0, "delta": 1 },
//       { "kind": "demand-aware", "beta": 2 }
//     ]
//   }
//
// Rationals are a JSON number or a string ("0.25", "1/3"). A matching is
// either "shift:d" or a list of [src, dst] pairs. mode is one of
// edge-distance, switch-cost, no-direct-whole-switch, no-direct-changed-edges.
// unreachable_penalty defaults to n; policy is optional. Switch ids are list
// positions; an explicit "id" must agree with its position.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "tmt/simulation.hpp"

namespace tmt {

using Json = nlohmann::json;

/// Exact textual form: decimal when finite, "p/q" otherwise.
inline std::string rational_to_config_string(const Rational& r) {
    std::int64_t den = r.denominator();
    while (den % 2 == 0)
        den /= 2;
    while (den % 5 == 0)
        den /= 5;
    if (den == 1) {
        auto s = format_rational(r);
        if (parse_rational(s) == r)
            return s;
    }
    return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

namespace detail {

inline Rational rational_from_json(const Json& j, std::string_view key) {
    if (j.is_string())
        return parse_rational(j.get<std::string>());
    if (j.is_number_integer())
        return Rational(j.get<std::int64_t>());
    if (j.is_number_float())
        return parse_rational(j.dump());
    throw Error(ErrorCode::InvalidConfig, std::string(key) + " must be a number or a rational string");
}

inline const Json& require(const Json& j, std::string_view key) {
    auto it = j.find(std::string(key));
    if (it == j.end())
        throw Error(ErrorCode::InvalidConfig, "missing required key '" + std::string(key) + "'");
    return *it;
}

template <typename T>
T uint_from_json(const Json& j, std::string_view key) {
    if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<std::int64_t>() >= 0))
        throw Error(ErrorCode::InvalidConfig, std::string(key) + " must be a non-negative integer");
    return j.get<T>();
}

inline AdjustmentMode mode_from_string(const std::string& s) {
    for (auto m : {AdjustmentMode::EdgeDistance, AdjustmentMode::SwitchCost, AdjustmentMode::NoDirectWholeSwitch,
                   AdjustmentMode::NoDirectChangedEdges})
        if (to_string(m) == s)
            return m;
    throw Error(ErrorCode::InvalidConfig, "unknown cost mode '" + s + "'");
}

inline SwitchKind kind_from_string(const std::string& s) {
    for (auto k : {SwitchKind::Static, SwitchKind::Rotor, SwitchKind::DemandAware})
        if (to_string(k) == s)
            return k;
    throw Error(ErrorCode::InvalidConfig, "unknown switch kind '" + s + "'");
}

inline Matching matching_from_json(const Json& j, std::size_t n) {
    if (j.is_string()) {
        auto s = j.get<std::string>();
        if (s.rfind("shift:", 0) != 0)
            throw Error(ErrorCode::InvalidConfig, "unknown matching constructor '" + s + "'");
        auto d = parse_rational(s.substr(6));
        if (d.denominator() != 1 || d < 0)
            throw Error(ErrorCode::InvalidConfig, "shift amount must be a non-negative integer in '" + s + "'");
        return Matching::shift(n, static_cast<std::size_t>(d.numerator()));
    }
    if (!j.is_array())
        throw Error(ErrorCode::InvalidConfig, "matching must be \"shift:d\" or a list of [src, dst] pairs");
    std::vector<DirectedEdge> edges;
    for (const auto& e : j) {
        if (!e.is_array() || e.size() != 2)
            throw Error(ErrorCode::InvalidConfig, "edge must be a [src, dst] pair, got " + e.dump());
        edges.push_back(edge(uint_from_json<std::uint32_t>(e[0], "edge src"),
                             uint_from_json<std::uint32_t>(e[1], "edge dst")));
    }
    return validate_matching(std::move(edges), n);
}

} // namespace detail

inline SimConfig config_from_json(const Json& j) {
    if (!j.is_object())
        throw Error(ErrorCode::InvalidConfig, "config must be a JSON object");
    SimConfig c;
    c.n = detail::uint_from_json<std::size_t>(detail::require(j, "n"), "n");
    c.k = detail::uint_from_json<std::size_t>(detail::require(j, "k"), "k");
    if (auto it = j.find("seed"); it != j.end())
        c.seed = detail::uint_from_json<std::uint64_t>(*it, "seed");

    const auto& cost = detail::require(j, "cost");
    auto alpha = detail::rational_from_json(detail::require(cost, "alpha"), "cost.alpha");
    auto mode = detail::mode_from_string(detail::require(cost, "mode").get<std::string>());
    std::optional<Rational> penalty;
    if (auto it = cost.find("unreachable_penalty"); it != cost.end())
        penalty = detail::rational_from_json(*it, "cost.unreachable_penalty");
    c.cost = make_cost_params(c.n, alpha, mode, penalty);

    if (auto it = j.find("policy"); it != j.end()) {
        PolicyParams p;
        if (auto e = it->find("epoch"); e != it->end())
            p.epoch = detail::uint_from_json<std::size_t>(*e, "policy.epoch");
        if (auto e = it->find("theta"); e != it->end())
            p.theta = detail::rational_from_json(*e, "policy.theta");
        if (auto e = it->find("decay"); e != it->end())
            p.decay = detail::rational_from_json(*e, "policy.decay");
        validate_policy(p);
        c.policy = p;
    }

    const auto& switches = detail::require(j, "switches");
    if (!switches.is_array())
        throw Error(ErrorCode::InvalidConfig, "switches must be a list");
    for (std::size_t i = 0; i < switches.size(); ++i) {
        const auto& sj = switches[i];
        SwitchConfig sc;
        sc.switch_id = i;
        if (auto it = sj.find("id"); it != sj.end() && detail::uint_from_json<std::size_t>(*it, "id") != i)
            throw Error(ErrorCode::InvalidConfig, "switch at position " + std::to_string(i) + " declares id " +
                                                      it->dump());
        sc.kind = detail::kind_from_string(detail::require(sj, "kind").get<std::string>());
        if (auto it = sj.find("pool"); it != sj.end()) {
            if (!it->is_array())
                throw Error(ErrorCode::InvalidConfig, "switch " + std::to_string(i) + ": pool must be a list");
            for (const auto& mj : *it)
                sc.pool.push_back(detail::matching_from_json(mj, c.n));
        }
        if (auto it = sj.find("beta"); it != sj.end())
            sc.beta = detail::uint_from_json<std::uint32_t>(*it, "beta");
        if (auto it = sj.find("delta"); it != sj.end())
            sc.delta = detail::uint_from_json<std::uint32_t>(*it, "delta");
        c.switches.push_back(std::move(sc));
    }
    validate_config(c);
    return c;
}

inline SimConfig parse_config(std::string_view text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw Error(ErrorCode::InvalidConfig, std::string("malformed JSON: ") + e.what());
    }
    try {
        return config_from_json(j);
    } catch (const Json::exception& e) {
        throw Error(ErrorCode::InvalidConfig, e.what());
    }
}

/// Canonical echo of a config; config_from_json inverts it exactly.
inline Json config_to_json(const SimConfig& c) {
    Json j;
    j["n"] = c.n;
    j["k"] = c.k;
    j["seed"] = c.seed;
    j["cost"] = {{"alpha", rational_to_config_string(c.cost.alpha)},
                 {"mode", std::string(to_string(c.cost.mode))},
                 {"unreachable_penalty", rational_to_config_string(c.cost.unreachable_penalty)}};
    if (c.policy)
        j["policy"] = {{"epoch", c.policy->epoch},
                       {"theta", rational_to_config_string(c.policy->theta)},
                       {"decay", rational_to_config_string(c.policy->decay)}};
    j["switches"] = Json::array();
    for (const auto& s : c.switches) {
        Json pool = Json::array();
        for (const auto& m : s.pool) {
            Json edges = Json::array();
            for (const auto& e : m.edges())
                edges.push_back({e.src.value, e.dst.value});
            pool.push_back(std::move(edges));
        }
        Json sj = {{"id", s.switch_id}, {"kind", std::string(to_string(s.kind))}, {"pool", std::move(pool)},
                   {"beta", s.beta}};
        if (s.kind == SwitchKind::Rotor)
            sj["delta"] = s.delta;
        j["switches"].push_back(std::move(sj));
    }
    return j;
}

inline constexpr std::string_view kStepCsvHeader = "t,src,dst,srv,adj,unreachable";

inline std::string steps_csv(const CostLedger& ledger) {
    std::string out(kStepCsvHeader);
    out += '\n';
    for (const auto& s : ledger.steps) {
        out += std::to_string(s.t) + ',' + std::to_string(s.src.value) + ',' + std::to_string(s.dst.value) + ',' +
               format_rational(s.srv) + ',' + format_rational(s.adj) + ',' + (s.unreachable ? "1" : "0") + '\n';
    }
    return out;
}

/// Summary report: config echo plus totals rendered as decimal strings.
inline Json report_json(const SimConfig& config, const SimResult& result, std::string_view steps_csv_path) {
    const auto& l = result.ledger;
    return Json{{"config", config_to_json(config)},
                {"steps", l.steps.size()},
                {"total", format_rational(l.total)},
                {"total_srv", format_rational(l.total_srv)},
                {"total_adj", format_rational(l.total_adj)},
                {"unreachable_count", l.unreachable_count},
                {"mean_hop_count", format_rational(result.mean_hop_count)},
                {"per_switch_reconfig_counts", result.per_switch_reconfig_counts},
                {"steps_csv", std::string(steps_csv_path)}};
}

} // namespace tmt
