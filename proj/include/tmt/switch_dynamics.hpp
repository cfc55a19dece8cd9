#pragma once

// Per-switch state over time: the nominal matching, an optional pending
// reconfiguration and the edges that can forward traffic in a given slot.
//
// Timing: a job covering slots [start_t, complete_t) blocks its affected
// edges in exactly beta slots; the target becomes the current matching at
// the first slot t >= complete_t.

#include <cstddef>
#include <cstdint>
#include <optional>

#include "tmt/core_model.hpp"

namespace tmt {

enum class InactiveScope { WholeSwitch, ChangedEdgesOnly };

struct ReconfigJob {
    std::size_t switch_id = 0;
    Matching target;
    std::size_t start_t = 0;
    std::size_t complete_t = 0;
    InactiveScope scope = InactiveScope::WholeSwitch;
    /// Position of target in the rotor pool, if any.
    std::optional<std::size_t> target_pool_index;

    friend bool operator==(const ReconfigJob&, const ReconfigJob&) = default;
};

struct SwitchState {
    SwitchConfig config;
    Matching current;
    std::size_t pool_index = 0;
    std::optional<ReconfigJob> pending;

    /// The committed matching: the target once a job is underway.
    const Matching& nominal() const { return pending ? pending->target : current; }

    friend bool operator==(const SwitchState&, const SwitchState&) = default;
};

inline SwitchState initial_state(const SwitchConfig& config, std::size_t n) {
    validate_switch_config(config, n);
    SwitchState s{config, config.pool.empty() ? Matching(n) : config.pool.front(), 0, std::nullopt};
    return s;
}

inline Matching active_edges(const SwitchState& state, std::size_t t) {
    if (!state.pending || t >= state.pending->complete_t)
        return state.pending ? state.pending->target : state.current;
    if (state.pending->scope == InactiveScope::WholeSwitch)
        return Matching(state.current.n());
    return state.current.intersection(state.pending->target);
}

/// Starts a job on the switch. The old matching stays nominally current
/// until finalize_due; with beta == 0 the target applies immediately.
inline SwitchState begin_reconfig(SwitchState state, const Matching& target, std::size_t t, InactiveScope scope,
                                  std::optional<std::size_t> target_pool_index = std::nullopt) {
    auto id = std::to_string(state.config.switch_id);
    if (state.config.kind == SwitchKind::Static)
        throw Error(ErrorCode::StaticSwitchImmutable, "switch " + id);
    if (state.pending)
        throw Error(ErrorCode::ReconfigInProgress,
                    "switch " + id + " has a job completing at t=" + std::to_string(state.pending->complete_t));
    if (target.n() != state.current.n())
        throw Error(ErrorCode::LengthMismatch, "switch " + id + ": target built for n=" + std::to_string(target.n()));

    if (state.config.beta == 0) {
        state.current = target;
        if (target_pool_index)
            state.pool_index = *target_pool_index;
        return state;
    }
    state.pending = ReconfigJob{state.config.switch_id, target, t, t + state.config.beta, scope, target_pool_index};
    return state;
}

inline SwitchState finalize_due(SwitchState state, std::size_t t) {
    if (state.pending && t >= state.pending->complete_t) {
        state.current = std::move(state.pending->target);
        if (state.pending->target_pool_index)
            state.pool_index = *state.pending->target_pool_index;
        state.pending.reset();
    }
    return state;
}

/// Round-robin rotor schedule: the next pool entry every delta slots, and
/// nothing while a job is still pending.
inline std::optional<Matching> rotor_due_target(const SwitchState& state, std::size_t t) {
    if (state.config.kind != SwitchKind::Rotor)
        throw Error(ErrorCode::NotARotor, "switch " + std::to_string(state.config.switch_id) + " is " +
                                              std::string(to_string(state.config.kind)));
    if (state.pending || t % state.config.delta != 0)
        return std::nullopt;
    return state.config.pool[(state.pool_index + 1) % state.config.pool.size()];
}

inline std::size_t rotor_next_index(const SwitchState& state) {
    return (state.pool_index + 1) % state.config.pool.size();
}

} // namespace tmt
