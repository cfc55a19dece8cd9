#pragma once

// Reference online controller for demand-aware switches. It tracks pairwise
// demand, proposes a greedy heavy-pair matching, and reconfigures only when
// the weight gain beats a threshold proportional to the adjustment price.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "tmt/core_model.hpp"

namespace tmt {

struct PolicyParams {
    std::size_t epoch = 1;
    Rational theta{0};
    /// Per-request multiplicative decay in (0, 1]; 1 is plain counting.
    Rational decay{1};

    friend bool operator==(const PolicyParams&, const PolicyParams&) = default;
};

inline void validate_policy(const PolicyParams& p) {
    if (p.epoch < 1)
        throw Error(ErrorCode::InvalidConfig, "policy.epoch must be >= 1");
    if (p.theta < 0)
        throw Error(ErrorCode::InvalidConfig, "policy.theta must be non-negative");
    if (!(p.decay > 0) || p.decay > 1)
        throw Error(ErrorCode::InvalidConfig, "policy.decay must lie in (0, 1]");
}

/// Pair weights in floating point: decisions only, never summed into costs.
struct DemandMatrix {
    std::size_t n = 0;
    double decay = 1.0;
    std::map<std::pair<std::uint32_t, std::uint32_t>, double> weight;

    double at(std::uint32_t src, std::uint32_t dst) const {
        auto it = weight.find({src, dst});
        return it == weight.end() ? 0.0 : it->second;
    }

    double weight_of(const Matching& m) const {
        double w = 0.0;
        for (const auto& e : m.edges())
            w += at(e.src.value, e.dst.value);
        return w;
    }
};

inline DemandMatrix make_demand_matrix(std::size_t n, const Rational& decay = Rational(1)) {
    return DemandMatrix{n, to_double(decay), {}};
}

inline DemandMatrix record_request(DemandMatrix matrix, const Request& request) {
    if (request.src.index() >= matrix.n || request.dst.index() >= matrix.n)
        throw Error(ErrorCode::NodeOutOfRange, "request (" + std::to_string(request.src.value) + "->" +
                                                   std::to_string(request.dst.value) + ") with n=" +
                                                   std::to_string(matrix.n));
    if (matrix.decay != 1.0)
        for (auto& [pair, w] : matrix.weight)
            w *= matrix.decay;
    matrix.weight[{request.src.value, request.dst.value}] += 1.0;
    return matrix;
}

/// Greedy max-weight matching: heaviest pair first, ties by (src, dst).
inline Matching propose_matching(const DemandMatrix& matrix) {
    std::vector<std::pair<std::pair<std::uint32_t, std::uint32_t>, double>> pairs;
    for (const auto& [pair, w] : matrix.weight)
        if (w > 0.0 && pair.first != pair.second)
            pairs.emplace_back(pair, w);
    std::stable_sort(pairs.begin(), pairs.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second)
            return a.second > b.second;
        return a.first < b.first;
    });

    std::vector<bool> src_used(matrix.n, false), dst_used(matrix.n, false);
    std::vector<DirectedEdge> chosen;
    for (const auto& [pair, w] : pairs) {
        auto [u, v] = pair;
        if (src_used[u] || dst_used[v])
            continue;
        src_used[u] = dst_used[v] = true;
        chosen.push_back(edge(u, v));
    }
    return validate_matching(std::move(chosen), matrix.n);
}

/// True iff proposed differs and its weight gain exceeds
/// theta * alpha * change_units. `change_units` is |proposed \ current| under
/// edge-distance charging and 1 otherwise; see reconfig_units().
inline bool decide_reconfig(const Matching& current, const Matching& proposed, const DemandMatrix& matrix,
                            const PolicyParams& params, const Rational& alpha, std::int64_t change_units) {
    if (proposed == current)
        return false;
    double gain = matrix.weight_of(proposed) - matrix.weight_of(current);
    return gain > to_double(params.theta * alpha * change_units);
}

inline std::int64_t reconfig_units(AdjustmentMode mode, const Matching& current, const Matching& proposed) {
    if (mode == AdjustmentMode::EdgeDistance)
        return static_cast<std::int64_t>(proposed.difference_size(current));
    return 1;
}

inline bool decide_reconfig(const Matching& current, const Matching& proposed, const DemandMatrix& matrix,
                            const PolicyParams& params, const Rational& alpha) {
    return decide_reconfig(current, proposed, matrix, params, alpha,
                           reconfig_units(AdjustmentMode::EdgeDistance, current, proposed));
}

} // namespace tmt
