#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "wpce/errors.hpp"
#include "wpce/gw.hpp"
#include "wpce/qubo.hpp"

using namespace wpce;
using namespace wpce::gw;
using problems::MaxCutGraph;

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
    return acc;
}

SdpSolution fixed_vectors(int rank, std::vector<double> v) {
    SdpSolution s;
    s.rank = rank;
    s.vectors = std::move(v);
    return s;
}

} // namespace

TEST_SUITE("gw") {

TEST_CASE("default rank") {
    CHECK(default_rank(2) == 3);
    CHECK(default_rank(12) == 6);
    CHECK(default_rank(17) == 7);
    CHECK(default_rank(20) == 8);
}

TEST_CASE("single edge relaxation is antipodal") {
    const MaxCutGraph edge(2, {{0, 1, 1.0}});
    const auto sdp = solve_sdp(edge, 3, 5, 1);
    CHECK(sdp.value == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(dot(sdp.vector(0), sdp.vector(1)) == doctest::Approx(-1.0).epsilon(1e-6));
}

TEST_CASE("unit triangle relaxation uses 120 degree angles") {
    const MaxCutGraph tri(3, {{0, 1, 1.0}, {0, 2, 1.0}, {1, 2, 1.0}});
    const auto sdp = solve_sdp(tri, 3, 5, 2);
    CHECK(std::abs(sdp.value - 2.25) < 1e-4);
    for (auto [a, b] : {std::pair{0, 1}, std::pair{0, 2}, std::pair{1, 2}})
        CHECK(std::abs(dot(sdp.vector(a), sdp.vector(b)) + 0.5) < 1e-3);
}

TEST_CASE("relaxation bounds the maximum cut") {
    std::mt19937_64 gen(41);
    for (int trial = 0; trial < 10; ++trial) {
        const auto g = oracle::random_graph(12, 0.5, trial % 2 == 1, gen);
        const auto sdp = solve_sdp(g, default_rank(12), 5, 100 + trial);
        const double opt = oracle::enumerate_maxcut(g).cut;
        CHECK(sdp.value >= opt - 1e-6);
        CHECK(sdp.value == doctest::Approx(relaxation_value(g, sdp)).epsilon(1e-12));
        for (int i = 0; i < 12; ++i) CHECK(std::abs(dot(sdp.vector(i), sdp.vector(i)) - 1.0) < 1e-8);
    }
}

TEST_CASE("sdp argument checks") {
    const MaxCutGraph edge(2, {{0, 1, 1.0}});
    CHECK_THROWS_AS(solve_sdp(edge, 1, 1, 0), ParameterError);
    CHECK_THROWS_AS(solve_sdp(edge, 2, 0, 0), ParameterError);
}

TEST_CASE("rounding antipodal and identical vectors") {
    const MaxCutGraph edge(2, {{0, 1, 2.5}});
    const auto anti = randomized_rounding(fixed_vectors(2, {1.0, 0.0, -1.0, 0.0}), edge, 10, 3);
    CHECK(anti.best_cut == 2.5);
    CHECK(anti.best_bits[0] != anti.best_bits[1]);
    const MaxCutGraph tri(3, {{0, 1, 1.0}, {0, 2, 1.0}, {1, 2, 1.0}});
    const auto same = randomized_rounding(fixed_vectors(2, {0.6, 0.8, 0.6, 0.8, 0.6, 0.8}), tri, 50, 4);
    CHECK(same.best_cut == 0.0);
    CHECK_THROWS_AS(randomized_rounding(fixed_vectors(2, {1.0, 0.0}), tri, 5, 4), DimensionError);
    CHECK_THROWS_AS(randomized_rounding(fixed_vectors(2, {1.0, 0.0, -1.0, 0.0}), edge, 0, 4), ParameterError);
}

TEST_CASE("triangle best of 100 reaches the optimum") {
    const MaxCutGraph tri(3, {{0, 1, 1.0}, {0, 2, 1.0}, {1, 2, 1.0}});
    const auto sol = solve(tri, 100, 5);
    CHECK(sol.best_cut == 2.0);
    CHECK(sol.roundings == 100);
}

TEST_CASE("rounding invariants") {
    std::mt19937_64 gen(42);
    for (int trial = 0; trial < 10; ++trial) {
        const auto g = oracle::random_graph(14, 0.5, trial % 3 == 0, gen);
        const auto sol = solve(g, 100, 200 + trial);
        std::vector<int> spins(14);
        for (int i = 0; i < 14; ++i) spins[i] = sol.best_bits[i] ? -1 : 1;
        CHECK(std::abs(sol.best_cut - pce::cut_value(spins, g)) < 1e-9);
        CHECK(sol.best_cut <= oracle::enumerate_maxcut(g).cut + 1e-9);
        CHECK(sol.sdp.value >= sol.best_cut - 1e-9);

        const auto one = randomized_rounding(sol.sdp, g, 1, 7);
        const auto many = randomized_rounding(sol.sdp, g, 100, 7);
        CHECK(many.best_cut >= one.best_cut);
    }
}

TEST_CASE("gw is deterministic per seed") {
    std::mt19937_64 gen(43);
    const auto g = oracle::random_graph(10, 0.6, false, gen);
    const auto a = solve(g, 100, 9);
    const auto b = solve(g, 100, 9);
    CHECK(a.sdp.vectors == b.sdp.vectors);
    CHECK(a.best_bits == b.best_bits);
    CHECK(a.best_cut == b.best_cut);
}

TEST_CASE("auxiliary node lands on side zero") {
    std::mt19937_64 gen(44);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int trial = 0; trial < 10; ++trial) {
        problems::QuboProblem q(6);
        for (int i = 0; i < 6; ++i)
            for (int j = i; j < 6; ++j) q.add(i, j, u(gen));
        const auto g = problems::qubo_to_maxcut(q);
        const auto sol = solve(g, 50, 300 + trial);
        CHECK(sol.best_bits[*g.aux_node()] == 0);
    }
}

TEST_CASE("gw bias composition") {
    const MaxCutGraph edge(2, {{0, 1, 1.0}});
    const auto neutral = gw_bias_for(edge, 0.5, 100, 1);
    CHECK(neutral.regularized_bits == std::vector<double>{0.5, 0.5});
    CHECK(neutral.edge_multipliers == std::vector<double>{1.0});
    const auto bias = gw_bias_for(edge, 0.2, 100, 1);
    CHECK(std::abs(bias.regularized_bits[0] - bias.regularized_bits[1]) == doctest::Approx(0.6));
    CHECK(bias.edge_multipliers[0] == doctest::Approx(1.6));
}

TEST_CASE("best of 100 meets the approximation bound on a seeded batch") {
    std::mt19937_64 gen(45);
    int met = 0;
    for (int trial = 0; trial < 10; ++trial) {
        const auto g = oracle::random_graph(12, 0.5, false, gen);
        const auto sol = solve(g, 100, 400 + trial);
        if (sol.best_cut >= 0.878 * oracle::enumerate_maxcut(g).cut) ++met;
    }
    CHECK(met >= 9);
}

}
