#pragma once

#include <cstddef>
#include <cstdint>
#include <deque>
#include <vector>

#include "tmt/core_model.hpp"

namespace tmt {

struct ServiceCost {
    Rational cost{0};
    bool unreachable = false;

    friend bool operator==(const ServiceCost&, const ServiceCost&) = default;
};

/// Directed BFS hop count from request.src to request.dst over the snapshot.
/// Unreachable pairs cost params.unreachable_penalty and are flagged.
inline ServiceCost service_cost(const Request& request, const NetworkSnapshot& snapshot, const CostParams& params) {
    const std::size_t n = snapshot.n;
    if (request.src.index() >= n || request.dst.index() >= n)
        throw Error(ErrorCode::NodeOutOfRange, "request (" + std::to_string(request.src.value) + "->" +
                                                   std::to_string(request.dst.value) + ") with n=" + std::to_string(n));

    // CSR adjacency; snapshot edges may be in any order.
    std::vector<std::size_t> offset(n + 1, 0);
    for (const auto& te : snapshot.edges)
        ++offset[te.edge.src.index() + 1];
    for (std::size_t i = 0; i < n; ++i)
        offset[i + 1] += offset[i];
    std::vector<std::size_t> adj(snapshot.edges.size());
    {
        auto fill = offset;
        for (const auto& te : snapshot.edges)
            adj[fill[te.edge.src.index()]++] = te.edge.dst.index();
    }

    constexpr auto unseen = static_cast<std::size_t>(-1);
    std::vector<std::size_t> dist(n, unseen);
    std::deque<std::size_t> frontier{request.src.index()};
    dist[request.src.index()] = 0;
    while (!frontier.empty()) {
        auto u = frontier.front();
        frontier.pop_front();
        if (u == request.dst.index())
            return {Rational(static_cast<std::int64_t>(dist[u])), false};
        for (auto i = offset[u]; i < offset[u + 1]; ++i) {
            auto v = adj[i];
            if (dist[v] == unseen) {
                dist[v] = dist[u] + 1;
                frontier.push_back(v);
            }
        }
    }
    return {params.unreachable_penalty, true};
}

namespace detail {

inline void check_lengths(const std::vector<Matching>& prev, const std::vector<Matching>& next) {
    if (prev.size() != next.size())
        throw Error(ErrorCode::LengthMismatch, "prev has " + std::to_string(prev.size()) + " matchings, next has " +
                                                   std::to_string(next.size()));
}

} // namespace detail

/// alpha * sum_i |next[i] \ prev[i]|
inline Rational edge_distance_cost(const std::vector<Matching>& prev, const std::vector<Matching>& next,
                                   const Rational& alpha) {
    detail::check_lengths(prev, next);
    std::int64_t replaced = 0;
    for (std::size_t i = 0; i < prev.size(); ++i)
        replaced += static_cast<std::int64_t>(next[i].difference_size(prev[i]));
    return alpha * replaced;
}

/// alpha per switch whose matching changed. Charges changed switches, not
/// unchanged ones.
inline Rational switch_change_cost(const std::vector<Matching>& prev, const std::vector<Matching>& next,
                                   const Rational& alpha) {
    detail::check_lengths(prev, next);
    std::int64_t changed = 0;
    for (std::size_t i = 0; i < prev.size(); ++i)
        if (next[i] != prev[i])
            ++changed;
    return alpha * changed;
}

/// Always zero; the price is paid through edge inactivity instead.
inline Rational no_direct_cost(const std::vector<Matching>&, const std::vector<Matching>&, const Rational&) {
    return Rational(0);
}

inline Rational adjustment_cost(AdjustmentMode mode, const std::vector<Matching>& prev,
                                const std::vector<Matching>& next, const Rational& alpha) {
    switch (mode) {
    case AdjustmentMode::EdgeDistance: return edge_distance_cost(prev, next, alpha);
    case AdjustmentMode::SwitchCost: return switch_change_cost(prev, next, alpha);
    case AdjustmentMode::NoDirectWholeSwitch:
    case AdjustmentMode::NoDirectChangedEdges: return no_direct_cost(prev, next, alpha);
    }
    return Rational(0);
}

struct StepCost {
    std::size_t t = 0;
    NodeId src;
    NodeId dst;
    Rational srv{0};
    Rational adj{0};
    bool unreachable = false;

    friend bool operator==(const StepCost&, const StepCost&) = default;
};

/// Per-step and cumulative costs; total == total_srv + total_adj.
struct CostLedger {
    std::vector<StepCost> steps;
    Rational total_srv{0};
    Rational total_adj{0};
    Rational total{0};
    std::size_t unreachable_count = 0;

    void append(const StepCost& step) {
        steps.push_back(step);
        total_srv += step.srv;
        total_adj += step.adj;
        total = total_srv + total_adj;
        if (step.unreachable)
            ++unreachable_count;
    }

    friend bool operator==(const CostLedger&, const CostLedger&) = default;
};

} // namespace tmt
