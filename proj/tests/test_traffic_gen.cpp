#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <random>

#include "oracles.hpp"

using namespace tmt;

namespace {

std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs_of(const Trace& t) {
    std::vector<std::pair<std::uint32_t, std::uint32_t>> out;
    for (const auto& r : t.requests)
        out.emplace_back(r.src.value, r.dst.value);
    return out;
}

PatternSpec random_spec(std::mt19937_64& rng) {
    std::size_t n = 2 + rng() % 9, m = 1 + rng() % 200;
    Pattern kind;
    switch (rng() % 4) {
    case 0: kind = AllToAll{}; break;
    case 1: kind = RingReduce{}; break;
    case 2: kind = Zipf{static_cast<double>(rng() % 30) / 10.0}; break;
    default: kind = ElephantMice{static_cast<double>(rng() % 11) / 10.0, 1 + rng() % (n * (n - 1))}; break;
    }
    return PatternSpec{kind, n, m, rng()};
}

} // namespace

TEST(Generate, RingReduce) {
    auto t = generate(PatternSpec{RingReduce{}, 4, 4, 0});
    EXPECT_EQ(pairs_of(t), (std::vector<std::pair<std::uint32_t, std::uint32_t>>{{0, 1}, {1, 2}, {2, 3}, {3, 0}}));
}

TEST(Generate, AllToAllVisitsEveryPairOncePerCycle) {
    auto t = generate(PatternSpec{AllToAll{}, 3, 6, 0});
    EXPECT_EQ(pairs_of(t),
              (std::vector<std::pair<std::uint32_t, std::uint32_t>>{{0, 1}, {0, 2}, {1, 0}, {1, 2}, {2, 0}, {2, 1}}));
    for (std::size_t n = 2; n <= 8; ++n) {
        auto full = generate(PatternSpec{AllToAll{}, n, n * (n - 1), 0});
        std::set<std::pair<std::uint32_t, std::uint32_t>> seen;
        for (auto p : pairs_of(full))
            seen.insert(p);
        EXPECT_EQ(seen.size(), n * (n - 1));
    }
}

TEST(Generate, ZipfWithZeroSkewIsUniform) {
    const std::size_t m = 10000;
    auto t = generate(PatternSpec{Zipf{0.0}, 4, m, 12345});
    std::map<std::pair<std::uint32_t, std::uint32_t>, std::size_t> freq;
    for (auto p : pairs_of(t))
        ++freq[p];
    const double p = 1.0 / 12.0, mean = m * p, sd = std::sqrt(m * p * (1 - p));
    EXPECT_EQ(freq.size(), 12u);
    for (const auto& [pair, count] : freq)
        EXPECT_LE(std::abs(static_cast<double>(count) - mean), 3 * sd);
}

TEST(Generate, ZipfFavoursLowRanks) {
    auto t = generate(PatternSpec{Zipf{2.0}, 5, 5000, 9});
    std::size_t first = 0;
    for (auto p : pairs_of(t))
        first += p == std::pair<std::uint32_t, std::uint32_t>{0, 1};
    // Rank 1 carries 1 / H(20, 2) ~= 0.63 of the mass.
    EXPECT_GT(first, 2800u);
    EXPECT_LT(first, 3500u);
}

TEST(Generate, ElephantsDominate) {
    auto t = generate(PatternSpec{ElephantMice{1.0, 2}, 6, 500, 3});
    std::set<std::pair<std::uint32_t, std::uint32_t>> seen;
    for (auto p : pairs_of(t))
        seen.insert(p);
    EXPECT_LE(seen.size(), 2u);

    auto all = generate(PatternSpec{ElephantMice{0.0, 30}, 6, 50, 3});
    EXPECT_EQ(all.size(), 50u);
}

TEST(Generate, InvalidSpecs) {
    auto code = [](PatternSpec s) {
        try {
            generate(s);
        } catch (const Error& e) {
            return e.code();
        }
        return ErrorCode::ParseError;
    };
    EXPECT_EQ(code(PatternSpec{AllToAll{}, 4, 0, 0}), ErrorCode::InvalidSpec);
    EXPECT_EQ(code(PatternSpec{AllToAll{}, 1, 3, 0}), ErrorCode::InvalidSpec);
    EXPECT_EQ(code(PatternSpec{Zipf{-1.0}, 4, 3, 0}), ErrorCode::InvalidSpec);
    EXPECT_EQ(code(PatternSpec{ElephantMice{1.5, 1}, 4, 3, 0}), ErrorCode::InvalidSpec);
    EXPECT_EQ(code(PatternSpec{ElephantMice{0.5, 13}, 4, 3, 0}), ErrorCode::InvalidSpec);
}

TEST(Generate, ValidDeterministicAndRoundTrips) {
    std::mt19937_64 rng(101);
    for (int trial = 0; trial < 300; ++trial) {
        auto spec = random_spec(rng);
        auto t = generate(spec);
        EXPECT_EQ(t.size(), spec.m);
        EXPECT_NO_THROW(validate_trace(t, spec.n));
        EXPECT_EQ(generate(spec), t);
        EXPECT_EQ(parse_trace(write_trace(t), spec.n), t);
    }
}

TEST(TraceFormat, WriteExamples) {
    EXPECT_EQ(write_trace(Trace{}), "");
    EXPECT_EQ(write_trace(make_trace({{0, 1}})), "0 1\n");
    EXPECT_EQ(write_trace(make_trace({{0, 1}, {12, 3}, {4, 0}})), "0 1\n12 3\n4 0\n");
}

TEST(TraceFormat, ParseExamples) {
    auto t = parse_trace("0 1\n1 2\n");
    EXPECT_EQ(t, make_trace({{0, 1}, {1, 2}}));
    auto commented = parse_trace("# header\n0 1\n#x\n1 2\n");
    EXPECT_EQ(commented, t);
}

TEST(TraceFormat, ParseErrors) {
    auto fails_at = [](std::string_view text, std::optional<std::size_t> n = std::nullopt) -> std::size_t {
        try {
            parse_trace(text, n);
        } catch (const ParseError& e) {
            return e.line();
        }
        return 0;
    };
    EXPECT_EQ(fails_at("0 0\n"), 1u);
    EXPECT_EQ(fails_at("0 1\n1 2"), 2u);
    EXPECT_EQ(fails_at("0 1\n1  2\n"), 2u);
    EXPECT_EQ(fails_at("0 1\r\n"), 1u);
    EXPECT_EQ(fails_at("\n"), 1u);
    EXPECT_EQ(fails_at("-1 2\n"), 1u);
    EXPECT_EQ(fails_at("# c\n0 4\n", 4), 2u);
    try {
        parse_trace("0 0\n");
    } catch (const ParseError& e) {
        EXPECT_EQ(e.reason(), "self-loop");
    }
}
