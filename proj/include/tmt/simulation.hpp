#pragma once

// The per-slot loop. For every request, in order:
//   1. finalize due reconfiguration jobs
//   2. build the snapshot from every switch's active edges
//   3. serve the request on that snapshot
//   4. record the request in the demand matrix
//   5. let controllers act (rotors first, then demand-aware switches at
//      epoch boundaries, each in switch-id order)
//   6. charge adjustment cost on the nominal matchings before/after step 5

#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "tmt/core_model.hpp"
#include "tmt/cost_accounting.hpp"
#include "tmt/demand_policy.hpp"
#include "tmt/switch_dynamics.hpp"

namespace tmt {

struct SimConfig {
    std::size_t n = 0;
    std::size_t k = 0;
    std::vector<SwitchConfig> switches;
    CostParams cost;
    std::optional<PolicyParams> policy;
    std::uint64_t seed = 0;

    friend bool operator==(const SimConfig&, const SimConfig&) = default;
};

inline void validate_config(const SimConfig& config) {
    if (config.n < 2)
        throw Error(ErrorCode::InvalidConfig, "n must be >= 2");
    if (config.switches.size() != config.k)
        throw Error(ErrorCode::InvalidConfig, "|switches| = k violated: k=" + std::to_string(config.k) +
                                                  " but " + std::to_string(config.switches.size()) +
                                                  " switches listed");
    for (std::size_t i = 0; i < config.switches.size(); ++i) {
        if (config.switches[i].switch_id != i)
            throw Error(ErrorCode::InvalidConfig, "switch at position " + std::to_string(i) + " has switch_id " +
                                                      std::to_string(config.switches[i].switch_id));
        validate_switch_config(config.switches[i], config.n);
    }
    if (config.cost.alpha < 0)
        throw Error(ErrorCode::InvalidConfig, "alpha must be non-negative");
    if (!(config.cost.unreachable_penalty > Rational(static_cast<std::int64_t>(config.n) - 1)))
        throw Error(ErrorCode::InvalidConfig, "unreachable_penalty must exceed n - 1");
    if (config.policy)
        validate_policy(*config.policy);
}

struct SimResult {
    CostLedger ledger;
    std::vector<std::size_t> per_switch_reconfig_counts;
    /// Mean srv over reachable steps; 0 when none were reachable.
    Rational mean_hop_count{0};
    /// Active edge count per step.
    std::vector<std::size_t> snapshot_log;
    /// Full per-step snapshots, only when RunOptions::record_snapshots is set.
    std::vector<NetworkSnapshot> snapshots;

    friend bool operator==(const SimResult&, const SimResult&) = default;
};

struct RunOptions {
    bool record_snapshots = false;
};

namespace detail {

inline void commit_change(SwitchState& state, const Matching& target, std::optional<std::size_t> pool_index,
                          std::size_t t, AdjustmentMode mode) {
    if (is_no_direct(mode)) {
        auto scope = mode == AdjustmentMode::NoDirectWholeSwitch ? InactiveScope::WholeSwitch
                                                                 : InactiveScope::ChangedEdgesOnly;
        // The job starts with the next slot, so it blocks slots t+1 .. t+beta.
        state = begin_reconfig(std::move(state), target, t + 1, scope, pool_index);
        return;
    }
    state.current = target;
    if (pool_index)
        state.pool_index = *pool_index;
}

} // namespace detail

inline SimResult run(const SimConfig& config, const Trace& trace, const RunOptions& options = {}) {
    validate_config(config);
    validate_trace(trace, config.n);

    const auto policy = config.policy.value_or(PolicyParams{});
    const auto mode = config.cost.mode;

    std::vector<SwitchState> states;
    states.reserve(config.k);
    for (const auto& sc : config.switches)
        states.push_back(initial_state(sc, config.n));

    SimResult result;
    result.per_switch_reconfig_counts.assign(config.k, 0);
    auto matrix = make_demand_matrix(config.n, policy.decay);

    Rational reachable_srv{0};
    std::int64_t reachable_steps = 0;

    std::vector<ActiveSet> active;
    std::vector<Matching> before, after;
    for (const auto& request : trace.requests) {
        const auto t = request.t;

        for (auto& s : states)
            s = finalize_due(std::move(s), t);

        active.clear();
        for (const auto& s : states)
            active.push_back(ActiveSet{s.config.switch_id, active_edges(s, t)});
        auto snapshot = union_snapshot(active, config.n);
        result.snapshot_log.push_back(snapshot.edges.size());

        auto srv = service_cost(request, snapshot, config.cost);
        if (options.record_snapshots)
            result.snapshots.push_back(std::move(snapshot));
        if (!srv.unreachable) {
            reachable_srv += srv.cost;
            ++reachable_steps;
        }

        matrix = record_request(std::move(matrix), request);

        before.clear();
        for (const auto& s : states)
            before.push_back(s.nominal());

        for (auto& s : states) {
            if (s.config.kind != SwitchKind::Rotor)
                continue;
            if (auto target = rotor_due_target(s, t))
                detail::commit_change(s, *target, rotor_next_index(s), t, mode);
        }

        if (t % policy.epoch == 0) {
            // Pairs already served directly by an earlier demand-aware switch
            // are hidden from later ones so they do not duplicate circuits.
            std::set<std::pair<std::uint32_t, std::uint32_t>> covered;
            for (auto& s : states) {
                if (s.config.kind != SwitchKind::DemandAware)
                    continue;
                if (!s.pending) {
                    auto view = matrix;
                    for (const auto& pair : covered)
                        view.weight.erase(pair);
                    auto proposed = propose_matching(view);
                    auto units = reconfig_units(mode, s.current, proposed);
                    if (decide_reconfig(s.current, proposed, view, policy, config.cost.alpha, units))
                        detail::commit_change(s, proposed, std::nullopt, t, mode);
                }
                for (const auto& e : s.nominal().edges())
                    covered.emplace(e.src.value, e.dst.value);
            }
        }

        after.clear();
        for (std::size_t i = 0; i < states.size(); ++i) {
            after.push_back(states[i].nominal());
            if (after[i] != before[i])
                ++result.per_switch_reconfig_counts[i];
        }

        result.ledger.append(StepCost{t, request.src, request.dst, srv.cost,
                                      adjustment_cost(mode, before, after, config.cost.alpha), srv.unreachable});
    }

    if (reachable_steps > 0)
        result.mean_hop_count = reachable_srv / reachable_steps;
    return result;
}

/// Recomputes the cost sum from the per-step records and checks it against
/// the stored totals, exactly.
inline bool replay_verify(const SimResult& result, const SimConfig& config, const Trace& trace) {
    const auto& ledger = result.ledger;
    if (ledger.steps.size() != trace.size() || result.per_switch_reconfig_counts.size() != config.k)
        return false;
    Rational srv{0}, adj{0};
    std::size_t unreachable = 0;
    for (std::size_t i = 0; i < ledger.steps.size(); ++i) {
        const auto& step = ledger.steps[i];
        const auto& req = trace.requests[i];
        if (step.t != req.t || step.src != req.src || step.dst != req.dst)
            return false;
        if (step.srv < 0 || step.adj < 0)
            return false;
        if (step.unreachable != (step.srv == config.cost.unreachable_penalty))
            return false;
        srv += step.srv;
        adj += step.adj;
        if (step.unreachable)
            ++unreachable;
    }
    return srv == ledger.total_srv && adj == ledger.total_adj && srv + adj == ledger.total &&
           ledger.total == ledger.total_srv + ledger.total_adj && unreachable == ledger.unreachable_count;
}

} // namespace tmt
