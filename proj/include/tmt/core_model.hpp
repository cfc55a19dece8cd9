#pragma once

// Domain types of the ToR-Matching-ToR model: n nodes joined by k switches,
// each switch contributing one directed partial permutation at a time.

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tmt/error.hpp"
#include "tmt/rational.hpp"

namespace tmt {

/// 0-based node index in [0, n).
struct NodeId {
    std::uint32_t value = 0;

    constexpr NodeId() = default;
    constexpr explicit NodeId(std::uint32_t v) : value(v) {}

    constexpr std::size_t index() const { return value; }
    friend constexpr auto operator<=>(NodeId, NodeId) = default;
};

struct DirectedEdge {
    NodeId src;
    NodeId dst;

    friend constexpr auto operator<=>(const DirectedEdge&, const DirectedEdge&) = default;
};

constexpr DirectedEdge edge(std::uint32_t src, std::uint32_t dst) {
    return DirectedEdge{NodeId(src), NodeId(dst)};
}

inline std::string to_string(const DirectedEdge& e) {
    return "(" + std::to_string(e.src.value) + "->" + std::to_string(e.dst.value) + ")";
}

class Matching;
Matching validate_matching(std::vector<DirectedEdge> edges, std::size_t n);

/// A directed partial permutation over n ports. Only constructible through
/// validate_matching, so every instance satisfies the matching invariants.
/// Edges are kept sorted, which makes the set operations linear merges.
class Matching {
public:
    Matching() = default;

    /// Empty matching over n ports.
    explicit Matching(std::size_t n) : n_(n) {}

    /// Circulant shift-by-d permutation: i -> (i + d) mod n.
    static Matching shift(std::size_t n, std::size_t d) {
        if (n < 2 || d % n == 0)
            throw Error(ErrorCode::InvalidConfig,
                        "shift:" + std::to_string(d) + " is not a valid permutation for n=" + std::to_string(n));
        std::vector<DirectedEdge> edges;
        edges.reserve(n);
        for (std::size_t i = 0; i < n; ++i)
            edges.push_back(edge(static_cast<std::uint32_t>(i), static_cast<std::uint32_t>((i + d) % n)));
        return validate_matching(std::move(edges), n);
    }

    std::size_t n() const { return n_; }
    std::size_t size() const { return edges_.size(); }
    bool empty() const { return edges_.empty(); }
    const std::vector<DirectedEdge>& edges() const { return edges_; }

    bool contains(const DirectedEdge& e) const {
        return std::binary_search(edges_.begin(), edges_.end(), e);
    }

    /// |this \ other|
    std::size_t difference_size(const Matching& other) const {
        std::size_t count = 0;
        auto it = other.edges_.begin();
        for (const auto& e : edges_) {
            while (it != other.edges_.end() && *it < e)
                ++it;
            if (it == other.edges_.end() || *it != e)
                ++count;
        }
        return count;
    }

    /// this ∩ other; a subset of a matching is a matching.
    Matching intersection(const Matching& other) const {
        Matching out(n_);
        std::set_intersection(edges_.begin(), edges_.end(), other.edges_.begin(), other.edges_.end(),
                              std::back_inserter(out.edges_));
        return out;
    }

    friend bool operator==(const Matching&, const Matching&) = default;

private:
    friend Matching validate_matching(std::vector<DirectedEdge> edges, std::size_t n);

    std::size_t n_ = 0;
    std::vector<DirectedEdge> edges_;
};

/// Accepts `edges` iff every node is in range, no edge is a self-loop, and
/// sources and destinations are pairwise distinct.
inline Matching validate_matching(std::vector<DirectedEdge> edges, std::size_t n) {
    std::vector<bool> src_used(n, false), dst_used(n, false);
    for (const auto& e : edges) {
        if (e.src.index() >= n || e.dst.index() >= n)
            throw Error(ErrorCode::NodeOutOfRange, to_string(e) + " with n=" + std::to_string(n));
        if (e.src == e.dst)
            throw Error(ErrorCode::SelfLoop, to_string(e));
        if (src_used[e.src.index()])
            throw Error(ErrorCode::DuplicateSource, to_string(e) + " reuses source " + std::to_string(e.src.value));
        if (dst_used[e.dst.index()])
            throw Error(ErrorCode::DuplicateDestination,
                        to_string(e) + " reuses destination " + std::to_string(e.dst.value));
        src_used[e.src.index()] = true;
        dst_used[e.dst.index()] = true;
    }
    Matching m(n);
    std::sort(edges.begin(), edges.end());
    m.edges_ = std::move(edges);
    return m;
}

enum class SwitchKind { Static, Rotor, DemandAware };

inline std::string_view to_string(SwitchKind kind) {
    switch (kind) {
    case SwitchKind::Static: return "static";
    case SwitchKind::Rotor: return "rotor";
    case SwitchKind::DemandAware: return "demand-aware";
    }
    return "unknown";
}

struct SwitchConfig {
    std::size_t switch_id = 0;
    SwitchKind kind = SwitchKind::Static;
    /// Allowed matchings. Static: exactly one. Rotor: two or more, cycled in
    /// order. DemandAware: optional, pool[0] is the initial matching if given.
    std::vector<Matching> pool;
    /// Reconfiguration latency in whole slots.
    std::uint32_t beta = 0;
    /// Rotation period in slots, rotors only.
    std::uint32_t delta = 1;

    friend bool operator==(const SwitchConfig&, const SwitchConfig&) = default;
};

inline void validate_switch_config(const SwitchConfig& cfg, std::size_t n) {
    auto where = "switch " + std::to_string(cfg.switch_id) + ": ";
    for (const auto& m : cfg.pool)
        if (m.n() != n)
            throw Error(ErrorCode::InvalidConfig, where + "pool matching built for n=" + std::to_string(m.n()) +
                                                      " but n=" + std::to_string(n));
    switch (cfg.kind) {
    case SwitchKind::Static:
        if (cfg.pool.size() != 1)
            throw Error(ErrorCode::InvalidConfig, where + "static switch requires a pool of exactly 1 matching");
        break;
    case SwitchKind::Rotor:
        if (cfg.pool.size() < 2)
            throw Error(ErrorCode::InvalidConfig, where + "rotor switch requires a pool of at least 2 matchings");
        if (cfg.delta < 1)
            throw Error(ErrorCode::InvalidConfig, where + "rotor switch requires delta >= 1");
        break;
    case SwitchKind::DemandAware:
        break;
    }
}

struct Request {
    std::size_t t = 0;
    NodeId src;
    NodeId dst;

    friend bool operator==(const Request&, const Request&) = default;
};

/// One request per slot, t = 1, 2, ..., m.
struct Trace {
    std::vector<Request> requests;

    std::size_t size() const { return requests.size(); }
    bool empty() const { return requests.empty(); }
    friend bool operator==(const Trace&, const Trace&) = default;
};

inline Trace make_trace(const std::vector<std::pair<std::uint32_t, std::uint32_t>>& pairs) {
    Trace trace;
    trace.requests.reserve(pairs.size());
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        if (pairs[i].first == pairs[i].second)
            throw Error(ErrorCode::SelfLoop, "request " + std::to_string(i + 1) + " has src == dst");
        trace.requests.push_back(Request{i + 1, NodeId(pairs[i].first), NodeId(pairs[i].second)});
    }
    return trace;
}

inline void validate_trace(const Trace& trace, std::size_t n) {
    for (std::size_t i = 0; i < trace.requests.size(); ++i) {
        const auto& r = trace.requests[i];
        auto where = "request " + std::to_string(i + 1) + ": ";
        if (r.t != i + 1)
            throw Error(ErrorCode::TraceMismatch, where + "time steps must be consecutive from 1");
        if (r.src.index() >= n || r.dst.index() >= n)
            throw Error(ErrorCode::TraceMismatch, where + "node id exceeds n=" + std::to_string(n));
        if (r.src == r.dst)
            throw Error(ErrorCode::TraceMismatch, where + "self-loop request");
    }
}

enum class AdjustmentMode { EdgeDistance, SwitchCost, NoDirectWholeSwitch, NoDirectChangedEdges };

inline std::string_view to_string(AdjustmentMode mode) {
    switch (mode) {
    case AdjustmentMode::EdgeDistance: return "edge-distance";
    case AdjustmentMode::SwitchCost: return "switch-cost";
    case AdjustmentMode::NoDirectWholeSwitch: return "no-direct-whole-switch";
    case AdjustmentMode::NoDirectChangedEdges: return "no-direct-changed-edges";
    }
    return "unknown";
}

inline bool is_no_direct(AdjustmentMode mode) {
    return mode == AdjustmentMode::NoDirectWholeSwitch || mode == AdjustmentMode::NoDirectChangedEdges;
}

struct CostParams {
    Rational alpha{1};
    AdjustmentMode mode = AdjustmentMode::EdgeDistance;
    /// Service cost charged when the destination is unreachable. Must exceed n - 1.
    Rational unreachable_penalty{0};

    friend bool operator==(const CostParams&, const CostParams&) = default;
};

inline CostParams make_cost_params(std::size_t n, Rational alpha, AdjustmentMode mode,
                                   std::optional<Rational> penalty = std::nullopt) {
    CostParams p{alpha, mode, penalty.value_or(Rational(static_cast<std::int64_t>(n)))};
    if (p.alpha < 0)
        throw Error(ErrorCode::InvalidConfig, "alpha must be non-negative");
    if (!(p.unreachable_penalty > Rational(static_cast<std::int64_t>(n) - 1)))
        throw Error(ErrorCode::InvalidConfig, "unreachable_penalty must exceed n - 1");
    return p;
}

struct TaggedEdge {
    std::size_t switch_id = 0;
    DirectedEdge edge;

    friend constexpr auto operator<=>(const TaggedEdge&, const TaggedEdge&) = default;
};

/// The network at one slot: every switch's active edges, tagged by origin.
/// Parallel edges from different switches stay distinct members.
struct NetworkSnapshot {
    std::size_t n = 0;
    std::vector<TaggedEdge> edges;

    std::vector<DirectedEdge> restricted_to(std::size_t switch_id) const {
        std::vector<DirectedEdge> out;
        for (const auto& te : edges)
            if (te.switch_id == switch_id)
                out.push_back(te.edge);
        return out;
    }

    friend bool operator==(const NetworkSnapshot&, const NetworkSnapshot&) = default;
};

struct ActiveSet {
    std::size_t switch_id = 0;
    Matching edges;
};

inline NetworkSnapshot union_snapshot(const std::vector<ActiveSet>& sets, std::size_t n) {
    NetworkSnapshot snap{n, {}};
    for (const auto& s : sets) {
        if (s.edges.n() != n)
            throw Error(ErrorCode::LengthMismatch, "switch " + std::to_string(s.switch_id) + " matching has n=" +
                                                       std::to_string(s.edges.n()) + ", snapshot n=" + std::to_string(n));
        for (const auto& e : s.edges.edges())
            snap.edges.push_back(TaggedEdge{s.switch_id, e});
    }
    std::sort(snap.edges.begin(), snap.edges.end());
    return snap;
}

/// Raw (switch_id, edges) input; each edge set is validated as a matching.
using TaggedEdgeSets = std::vector<std::pair<std::size_t, std::vector<DirectedEdge>>>;

inline NetworkSnapshot union_snapshot(const TaggedEdgeSets& sets, std::size_t n) {
    std::vector<ActiveSet> validated;
    validated.reserve(sets.size());
    for (const auto& [id, edges] : sets)
        validated.push_back(ActiveSet{id, validate_matching(edges, n)});
    return union_snapshot(validated, n);
}

} // namespace tmt
