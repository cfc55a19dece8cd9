#pragma once

// Synthetic request sequences and the plain-text trace format.
//
// Trace format: one request per line as "<src> <dst>" in 0-based ASCII
// decimal, a single space between, every line LF-terminated. Lines starting
// with '#' are comments. The n-th non-comment line is the request at t = n.
//
// Randomness comes from std::mt19937_64, whose output sequence is fixed by
// the C++ standard. Uniform integers and reals are derived from it by hand
// (not via <random> distributions) so traces match across standard libraries.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

#include "tmt/core_model.hpp"

namespace tmt {

struct AllToAll {};
struct RingReduce {};
struct Zipf {
    double skew = 1.0;
};
struct ElephantMice {
    double elephant_fraction = 0.8;
    std::size_t elephant_pairs = 1;
};

using Pattern = std::variant<AllToAll, RingReduce, Zipf, ElephantMice>;

struct PatternSpec {
    Pattern kind;
    std::size_t n = 0;
    std::size_t m = 0;
    std::uint64_t seed = 0;
};

class SeededRng {
public:
    explicit SeededRng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform in [0, 1) with 53 bits of precision.
    double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Uniform in [0, bound), rejection-sampled to avoid modulo bias.
    std::uint64_t below(std::uint64_t bound) {
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
        std::uint64_t x;
        do {
            x = engine_();
        } while (x >= limit);
        return x % bound;
    }

private:
    std::mt19937_64 engine_;
};

/// The r-th ordered pair (src != dst) in lexicographic order.
inline std::pair<std::uint32_t, std::uint32_t> pair_at(std::size_t n, std::size_t r) {
    auto src = r / (n - 1);
    auto off = r % (n - 1);
    auto dst = off < src ? off : off + 1;
    return {static_cast<std::uint32_t>(src), static_cast<std::uint32_t>(dst)};
}

inline void validate_spec(const PatternSpec& spec) {
    if (spec.n < 2)
        throw Error(ErrorCode::InvalidSpec, "n must be >= 2");
    if (spec.m < 1)
        throw Error(ErrorCode::InvalidSpec, "m must be >= 1");
    if (const auto* z = std::get_if<Zipf>(&spec.kind); z && !(z->skew >= 0.0 && std::isfinite(z->skew)))
        throw Error(ErrorCode::InvalidSpec, "zipf skew must be a finite value >= 0");
    if (const auto* em = std::get_if<ElephantMice>(&spec.kind)) {
        if (!(em->elephant_fraction >= 0.0 && em->elephant_fraction <= 1.0))
            throw Error(ErrorCode::InvalidSpec, "elephant fraction must lie in [0, 1]");
        if (em->elephant_pairs < 1 || em->elephant_pairs > spec.n * (spec.n - 1))
            throw Error(ErrorCode::InvalidSpec, "elephant pair count must lie in [1, n(n-1)]");
    }
}

inline Trace generate(const PatternSpec& spec) {
    validate_spec(spec);
    const std::size_t n = spec.n;
    const std::size_t pairs = n * (n - 1);
    std::vector<std::pair<std::uint32_t, std::uint32_t>> out;
    out.reserve(spec.m);
    SeededRng rng(spec.seed);

    std::visit(
        [&](const auto& kind) {
            using K = std::decay_t<decltype(kind)>;
            if constexpr (std::is_same_v<K, AllToAll>) {
                for (std::size_t i = 0; i < spec.m; ++i)
                    out.push_back(pair_at(n, i % pairs));
            } else if constexpr (std::is_same_v<K, RingReduce>) {
                for (std::size_t i = 0; i < spec.m; ++i) {
                    auto src = static_cast<std::uint32_t>(i % n);
                    out.emplace_back(src, static_cast<std::uint32_t>((src + 1) % n));
                }
            } else if constexpr (std::is_same_v<K, Zipf>) {
                // Rank r (1-based) has weight r^-skew; inverse-CDF sampling.
                std::vector<double> cdf(pairs);
                double acc = 0.0;
                for (std::size_t r = 0; r < pairs; ++r) {
                    acc += std::pow(static_cast<double>(r + 1), -kind.skew);
                    cdf[r] = acc;
                }
                for (std::size_t i = 0; i < spec.m; ++i) {
                    double u = rng.uniform01() * acc;
                    auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
                    auto r = std::min<std::size_t>(static_cast<std::size_t>(it - cdf.begin()), pairs - 1);
                    out.push_back(pair_at(n, r));
                }
            } else {
                // Partial Fisher-Yates picks the elephant ranks.
                std::vector<std::size_t> ranks(pairs);
                for (std::size_t r = 0; r < pairs; ++r)
                    ranks[r] = r;
                for (std::size_t i = 0; i < kind.elephant_pairs; ++i)
                    std::swap(ranks[i], ranks[i + rng.below(pairs - i)]);
                const std::size_t mice = pairs - kind.elephant_pairs;
                for (std::size_t i = 0; i < spec.m; ++i) {
                    bool elephant = mice == 0 || rng.uniform01() < kind.elephant_fraction;
                    auto r = elephant ? ranks[rng.below(kind.elephant_pairs)]
                                      : ranks[kind.elephant_pairs + rng.below(mice)];
                    out.push_back(pair_at(n, r));
                }
            }
        },
        spec.kind);
    return make_trace(out);
}

inline std::string write_trace(const Trace& trace) {
    std::string out;
    for (const auto& r : trace.requests) {
        out += std::to_string(r.src.value);
        out += ' ';
        out += std::to_string(r.dst.value);
        out += '\n';
    }
    return out;
}

namespace detail {

inline bool parse_node(std::string_view tok, std::uint32_t& out) {
    if (tok.empty() || tok.size() > 9)
        return false;
    std::uint32_t v = 0;
    for (char c : tok) {
        if (c < '0' || c > '9')
            return false;
        v = v * 10 + static_cast<std::uint32_t>(c - '0');
    }
    out = v;
    return true;
}

} // namespace detail

/// Strict parser for the trace format. With `n` given, ids >= n are rejected.
inline Trace parse_trace(std::string_view text, std::optional<std::size_t> n = std::nullopt) {
    Trace trace;
    std::size_t line_no = 0;
    while (!text.empty()) {
        ++line_no;
        auto nl = text.find('\n');
        if (nl == std::string_view::npos)
            throw ParseError(line_no, "missing trailing newline");
        auto line = text.substr(0, nl);
        text.remove_prefix(nl + 1);

        if (!line.empty() && line.front() == '#')
            continue;
        auto sp = line.find(' ');
        std::uint32_t src = 0, dst = 0;
        if (sp == std::string_view::npos || !detail::parse_node(line.substr(0, sp), src) ||
            !detail::parse_node(line.substr(sp + 1), dst))
            throw ParseError(line_no, "expected \"<src> <dst>\"");
        if (src == dst)
            throw ParseError(line_no, "self-loop");
        if (n && (src >= *n || dst >= *n))
            throw ParseError(line_no, "node id out of range for n=" + std::to_string(*n));
        trace.requests.push_back(Request{trace.requests.size() + 1, NodeId(src), NodeId(dst)});
    }
    return trace;
}

} // namespace tmt
