#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <numeric>
#include <random>

#include "oracles.hpp"
#include "wpce/errors.hpp"
#include "wpce/instance_io.hpp"
#include "wpce/pce.hpp"
#include "wpce/qubo.hpp"
#include "wpce/tsp.hpp"

using namespace wpce;
using namespace wpce::problems;

namespace {

QuboProblem random_qubo(int v, std::mt19937_64& gen) {
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    QuboProblem q(v, u(gen));
    for (int i = 0; i < v; ++i)
        for (int j = i; j < v; ++j) q.add(i, j, u(gen));
    return q;
}

std::vector<int> bits_of(std::uint64_t mask, int v) {
    std::vector<int> x(v);
    for (int i = 0; i < v; ++i) x[i] = static_cast<int>((mask >> i) & 1u);
    return x;
}

TspInstance all_ones(int n) {
    std::vector<double> d(static_cast<std::size_t>(n) * n, 1.0);
    for (int i = 0; i < n; ++i) d[static_cast<std::size_t>(i) * n + i] = 0.0;
    return TspInstance(n, d);
}

} // namespace

TEST_SUITE("problems") {

TEST_CASE("qubo evaluation") {
    QuboProblem q(3, 1.5);
    q.add(0, 0, 2.0);
    q.add(2, 1, -1.0);
    q.add(1, 2, 0.5);
    CHECK(q.coefficient(1, 2) == -0.5);
    CHECK(q.coefficient(2, 1) == -0.5);
    CHECK(q.evaluate(std::vector<int>{0, 0, 0}) == 1.5);
    CHECK(q.evaluate(std::vector<int>{1, 1, 1}) == 3.0);
    CHECK_THROWS_AS(q.add(0, 3, 1.0), DimensionError);
    CHECK_THROWS_AS(q.evaluate(std::vector<int>{1, 1}), DimensionError);
}

TEST_CASE("one variable reductions") {
    QuboProblem plus(1);
    plus.add(0, 0, 1.0);
    const auto g = qubo_to_maxcut(plus);
    REQUIRE(g.nodes() == 2);
    REQUIRE(g.edges().size() == 1);
    CHECK(g.edges()[0].weight == -0.5);
    CHECK(*g.aux_node() == 1);
    CHECK(brute_force_maxcut(g).cut == 0.0);
    CHECK(g.qubo_link()->objective_constant() - 2.0 * 0.0 == doctest::Approx(0.0));

    QuboProblem minus(1);
    minus.add(0, 0, -1.0);
    const auto h = qubo_to_maxcut(minus);
    CHECK(h.edges()[0].weight == 0.5);
    const auto opt = brute_force_maxcut(h);
    CHECK(opt.cut == 0.5);
    CHECK(h.qubo_link()->objective_constant() - 2.0 * opt.cut == doctest::Approx(-1.0));
}

TEST_CASE("affine identity between qubo and cut") {
    std::mt19937_64 gen(51);
    for (int trial = 0; trial < 10; ++trial) {
        const int v = 3 + trial % 7;
        const auto q = random_qubo(v, gen);
        const auto g = qubo_to_maxcut(q);
        const double c = g.qubo_link()->objective_constant();
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << (v + 1)); ++mask) {
            std::vector<int> y(v + 1);
            for (int i = 0; i <= v; ++i) y[i] = ((mask >> i) & 1u) ? -1 : 1;
            const auto x = decode_cut(y, g);
            CHECK(std::abs(q.evaluate(x) - (c - 2.0 * pce::cut_value(y, g))) < 1e-9);
        }
    }
}

TEST_CASE("zero reduced weights are dropped") {
    QuboProblem q(3);
    q.add(0, 1, 1.0);
    q.add(0, 0, -0.5);
    q.add(1, 1, -0.5);
    const auto g = qubo_to_maxcut(q);
    for (const auto& e : g.edges()) CHECK(e.weight != 0.0);
    CHECK(g.edges().size() == 1);
}

TEST_CASE("decode cut") {
    std::mt19937_64 gen(52);
    const auto g = qubo_to_maxcut(random_qubo(6, gen));
    CHECK(decode_cut(std::vector<int>(7, -1), g) == std::vector<int>(6, 0));
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<int> y(7);
        for (int& s : y) s = (gen() & 1u) ? 1 : -1;
        auto flipped = y;
        for (int& s : flipped) s = -s;
        const auto x = decode_cut(y, g);
        CHECK(decode_cut(flipped, g) == x);
        for (int i = 0; i < 6; ++i) CHECK(x[i] == (1 - y[6] * y[i]) / 2);
    }
    const MaxCutGraph plain(2, {{0, 1, 1.0}});
    CHECK_THROWS_AS(decode_cut(std::vector<int>{1, 1}, plain), ParameterError);
}

TEST_CASE("tsp instance validation") {
    CHECK_THROWS_AS(TspInstance(2, {0, 1, 1, 0}), InstanceError);
    CHECK_THROWS_AS(TspInstance(3, {0, 1, 2, 1, 0, 3, 2, 4, 0}), InstanceError);
    CHECK_THROWS_AS(TspInstance(3, {1, 1, 2, 1, 0, 3, 2, 3, 0}), InstanceError);
    CHECK_THROWS_AS(TspInstance(3, {0, -1, 2, -1, 0, 3, 2, 3, 0}), InstanceError);
    CHECK_NOTHROW(TspInstance(3, {0, 1, 2, 1, 0, 3, 2, 3, 0}));
}

TEST_CASE("tsp qubo layout and feasible objective") {
    const auto inst = random_euclidean_tsp(5, 3);
    const double a = default_penalty(inst);
    CHECK(a == doctest::Approx(10.0 * inst.max_distance()));
    const auto q = build_tsp_qubo(inst, a, a);
    CHECK(q.size() == 16);
    CHECK(tsp_variable(1, 1, 5) == 0);
    CHECK(tsp_variable(2, 1, 5) == 4);
    CHECK(tsp_variable(4, 4, 5) == 15);
    const std::vector<int> x{1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1};
    const double expected = inst.distance(0, 1) + inst.distance(1, 2) + inst.distance(2, 3) + inst.distance(3, 4) +
                            inst.distance(4, 0);
    CHECK(std::abs(q.evaluate(x) - expected) < 1e-9);
    CHECK_THROWS_AS(build_tsp_qubo(inst, 0.0, a), ParameterError);
}

TEST_CASE("tsp qubo full enumeration") {
    for (std::uint64_t seed : {7u, 8u}) {
        const auto inst = random_euclidean_tsp(5, seed);
        const double a = default_penalty(inst);
        const auto q = build_tsp_qubo(inst, a, a);
        const double opt = oracle::enumerate_tsp(inst);
        double best = 1e300, worst_feasible = -1e300, best_infeasible = 1e300;
        bool best_is_feasible = false;
        for (std::uint64_t mask = 0; mask < (1u << 16); ++mask) {
            const auto x = bits_of(mask, 16);
            const double val = q.evaluate(x);
            const auto dec = decode_tour(x, 5);
            if (dec.feasible()) {
                CHECK(std::abs(val - oracle::fold_tour(dec.tour->order, inst)) < 1e-9);
                worst_feasible = std::max(worst_feasible, val);
            } else {
                best_infeasible = std::min(best_infeasible, val);
            }
            if (val < best) {
                best = val;
                best_is_feasible = dec.feasible();
            }
        }
        CHECK(best_is_feasible);
        CHECK(std::abs(best - opt) < 1e-9);
        CHECK(best_infeasible > worst_feasible);
    }
}

TEST_CASE("tsp reduction uses seventeen nodes") {
    const auto inst = random_euclidean_tsp(5, 4);
    const double a = default_penalty(inst);
    const auto g = qubo_to_maxcut(build_tsp_qubo(inst, a, a));
    CHECK(g.nodes() == 17);
    CHECK(*g.aux_node() == 16);
    CHECK(pce::qubits_for(g.nodes(), 2) == 4);
}

TEST_CASE("decode tour") {
    const std::vector<int> x{1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1};
    const auto dec = decode_tour(x, 5);
    REQUIRE(dec.feasible());
    CHECK(dec.tour->order == std::vector<int>{0, 1, 2, 3, 4});

    const auto zero = decode_tour(std::vector<int>(16, 0), 5);
    CHECK_FALSE(zero.feasible());
    CHECK(zero.violated_rows == std::vector<int>{1, 2, 3, 4});
    CHECK(zero.violated_columns == std::vector<int>{1, 2, 3, 4});

    auto two = x;
    two[1] = 1;  // city 1 also at position 2
    const auto bad = decode_tour(two, 5);
    CHECK_FALSE(bad.feasible());
    CHECK(bad.violated_rows == std::vector<int>{1});
    CHECK(bad.violated_columns == std::vector<int>{2});
    CHECK_THROWS_AS(decode_tour(std::vector<int>(15, 0), 5), DimensionError);
}

TEST_CASE("tour assignment round trip") {
    std::vector<int> rest{1, 2, 3, 4};
    int count = 0;
    do {
        Tour t;
        t.order = {0};
        t.order.insert(t.order.end(), rest.begin(), rest.end());
        const auto dec = decode_tour(tour_to_assignment(t, 5), 5);
        REQUIRE(dec.feasible());
        CHECK(*dec.tour == t);
        ++count;
    } while (std::next_permutation(rest.begin(), rest.end()));
    CHECK(count == 24);
    CHECK_THROWS_AS(tour_to_assignment(Tour{{1, 0, 2, 3, 4}}, 5), ParameterError);
    CHECK_THROWS_AS(tour_to_assignment(Tour{{0, 1, 1, 3, 4}}, 5), ParameterError);
}

TEST_CASE("tour length") {
    const auto three = random_euclidean_tsp(3, 5);
    CHECK(tour_length(Tour{{0, 1, 2}}, three) == doctest::Approx(tour_length(Tour{{0, 2, 1}}, three)));
    CHECK(tour_length(Tour{{0, 1, 2, 3, 4}}, all_ones(5)) == 5.0);
    const auto inst = random_euclidean_tsp(7, 6);
    const Tour t{{0, 3, 1, 6, 2, 5, 4}};
    CHECK(std::abs(tour_length(t, inst) - oracle::fold_tour(t.order, inst)) < 1e-12);
}

TEST_CASE("brute force tsp") {
    const auto ones = brute_force_tsp(all_ones(6));
    CHECK(ones.length == 6.0);
    CHECK(ones.tour.order == std::vector<int>{0, 1, 2, 3, 4, 5});
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const auto four = random_euclidean_tsp(4, seed);
        CHECK(brute_force_tsp(four).length == doctest::Approx(oracle::enumerate_tsp(four)).epsilon(1e-12));
    }
    const auto five = brute_force_tsp(random_euclidean_tsp(5, 9));
    CHECK(five.permutations_examined == 24);
    CHECK(five.distinct_tours == 12);
    CHECK_THROWS_AS(brute_force_tsp(all_ones(12)), RefusalError);
}

TEST_CASE("euclidean instances") {
    const auto a = random_euclidean_tsp(6, 42);
    const auto b = random_euclidean_tsp(6, 42);
    CHECK(std::equal(a.distances().begin(), a.distances().end(), b.distances().begin()));
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j)
            for (int k = 0; k < 6; ++k) CHECK(a.distance(i, k) <= a.distance(i, j) + a.distance(j, k) + 1e-12);
}

TEST_CASE("brute force maxcut") {
    const MaxCutGraph edge(2, {{0, 1, 1.0}});
    CHECK(brute_force_maxcut(edge).cut == 1.0);
    const MaxCutGraph tri(3, {{0, 1, 1.0}, {0, 2, 1.0}, {1, 2, 1.0}});
    CHECK(brute_force_maxcut(tri).cut == 2.0);
    std::mt19937_64 gen(53);
    for (int trial = 0; trial < 3; ++trial) {
        const auto g = oracle::random_graph(trial == 0 ? 20 : 13, 0.5, trial == 2, gen);
        const auto fast = brute_force_maxcut(g);
        CHECK(std::abs(fast.cut - oracle::enumerate_maxcut(g).cut) < 1e-9);
        CHECK(fast.spins[0] == 1);
        CHECK(fast.cut == pce::cut_value(fast.spins, g));
    }
    CHECK_THROWS_AS(brute_force_maxcut(MaxCutGraph(25, {})), RefusalError);
}

TEST_CASE("brute force qubo") {
    std::mt19937_64 gen(54);
    const auto q = random_qubo(8, gen);
    const auto opt = brute_force_qubo(q);
    double best = 1e300;
    for (std::uint64_t mask = 0; mask < 256; ++mask) best = std::min(best, q.evaluate(bits_of(mask, 8)));
    CHECK(std::abs(opt.value - best) < 1e-12);
    CHECK(opt.value == q.evaluate(opt.x));
    CHECK_THROWS_AS(brute_force_qubo(QuboProblem(25)), RefusalError);
}

TEST_CASE("graph validation") {
    CHECK_THROWS_AS(MaxCutGraph(3, {{1, 1, 1.0}}), InstanceError);
    CHECK_THROWS_AS(MaxCutGraph(3, {{0, 1, 1.0}, {1, 0, 2.0}}), InstanceError);
    CHECK_THROWS_AS(MaxCutGraph(3, {{0, 3, 1.0}}), InstanceError);
    const MaxCutGraph g(3, {{2, 0, 1.5}, {0, 1, -1.0}});
    CHECK(g.edges()[0].u == 0);
    CHECK(g.edges()[0].v == 2);
    CHECK(g.total_weight() == 0.5);
    CHECK(g.mean_abs_weight() == 1.25);
    CHECK(g.neighbors(0).size() == 2);
}

TEST_CASE("instance json round trips") {
    const auto inst = random_euclidean_tsp(5, 11);
    const auto text = io::tsp_to_json(inst);
    CHECK(io::detect_kind(text) == "tsp");
    const auto back = io::tsp_from_json(text);
    CHECK(std::equal(inst.distances().begin(), inst.distances().end(), back.distances().begin()));

    std::mt19937_64 gen(55);
    const auto g = oracle::random_graph(7, 0.6, true, gen);
    const auto gtext = io::graph_to_json(g);
    CHECK(io::detect_kind(gtext) == "graph");
    const auto gb = io::graph_from_json(gtext);
    REQUIRE(gb.edges().size() == g.edges().size());
    for (std::size_t k = 0; k < g.edges().size(); ++k) CHECK(gb.edges()[k].weight == g.edges()[k].weight);

    const auto q = random_qubo(4, gen);
    const auto qtext = io::qubo_to_json(q);
    CHECK(io::detect_kind(qtext) == "qubo");
    const auto qb = io::qubo_from_json(qtext);
    for (std::uint64_t mask = 0; mask < 16; ++mask) CHECK(qb.evaluate(bits_of(mask, 4)) == q.evaluate(bits_of(mask, 4)));

    CHECK_THROWS_AS(io::tsp_from_json("{\"n\": 3}"), InstanceError);
    CHECK_THROWS_AS(io::tsp_from_json("not json"), InstanceError);
    CHECK_THROWS_AS(io::read_file("/nonexistent/dir/file.json"), IoError);
}

}
