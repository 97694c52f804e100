#include "wpce/tsp.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "wpce/errors.hpp"
#include "wpce/rng.hpp"

namespace wpce::problems {

namespace {
constexpr int kMaxBruteForceCities = 11;

void validate_tour(const Tour& tour, int cities) {
    if (tour.order.size() != static_cast<std::size_t>(cities) || tour.order.front() != 0) {
        throw ParameterError("tour must list every city once, starting at city 0");
    }
    std::vector<bool> seen(cities, false);
    for (int c : tour.order) {
        if (c < 0 || c >= cities || seen[c]) throw ParameterError("tour is not a permutation of the cities");
        seen[c] = true;
    }
}
} // namespace

TspInstance::TspInstance(int cities, std::vector<double> distances)
    : cities_(cities), distances_(std::move(distances)) {
    if (cities_ < 3) throw InstanceError("TspInstance: need at least 3 cities, got " + std::to_string(cities_));
    if (distances_.size() != static_cast<std::size_t>(cities_) * cities_) {
        throw InstanceError("TspInstance: distance matrix is not N x N");
    }
    for (int i = 0; i < cities_; ++i) {
        if (distance(i, i) != 0.0) throw InstanceError("TspInstance: nonzero diagonal");
        for (int j = 0; j < cities_; ++j) {
            const double d = distance(i, j);
            if (!std::isfinite(d) || d < 0.0) throw InstanceError("TspInstance: invalid distance");
            if (d != distance(j, i)) throw InstanceError("TspInstance: distance matrix is not symmetric");
        }
    }
}

double TspInstance::max_distance() const {
    return *std::max_element(distances_.begin(), distances_.end());
}

TspInstance random_euclidean_tsp(int cities, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<double> xs(cities), ys(cities);
    for (int i = 0; i < cities; ++i) {
        xs[i] = rng.uniform();
        ys[i] = rng.uniform();
    }
    std::vector<double> d(static_cast<std::size_t>(cities) * cities, 0.0);
    for (int i = 0; i < cities; ++i) {
        for (int j = i + 1; j < cities; ++j) {
            const double v = std::hypot(xs[i] - xs[j], ys[i] - ys[j]);
            d[static_cast<std::size_t>(i) * cities + j] = v;
            d[static_cast<std::size_t>(j) * cities + i] = v;
        }
    }
    return TspInstance(cities, std::move(d));
}

int tsp_variable(int city, int position, int cities) {
    return (city - 1) * (cities - 1) + (position - 1);
}

double default_penalty(const TspInstance& instance) {
    return 2.0 * instance.cities() * instance.max_distance();
}

QuboProblem build_tsp_qubo(const TspInstance& instance, double penalty_a, double penalty_b) {
    if (!(penalty_a > 0.0) || !(penalty_b > 0.0)) throw ParameterError("build_tsp_qubo: penalties must be > 0");
    const int n = instance.cities();
    const int k = n - 1;
    QuboProblem q(k * k);
    auto var = [n](int city, int pos) { return tsp_variable(city, pos, n); };

    // Consecutive positions and the two links to the fixed city 0.
    for (int i = 1; i <= k; ++i) {
        for (int j = 1; j <= k; ++j) {
            if (i == j) continue;
            for (int t = 1; t + 1 <= k; ++t) q.add(var(i, t), var(j, t + 1), instance.distance(i, j));
        }
        q.add(var(i, 1), var(i, 1), instance.distance(0, i));
        q.add(var(i, k), var(i, k), instance.distance(0, i));
    }

    // (sum - 1)^2 = -sum x + 2 sum_{a<b} x_a x_b + 1 for binary x.
    auto one_hot = [&q](const std::vector<int>& vars, double weight) {
        for (std::size_t a = 0; a < vars.size(); ++a) {
            q.add(vars[a], vars[a], -weight);
            for (std::size_t b = a + 1; b < vars.size(); ++b) q.add(vars[a], vars[b], 2.0 * weight);
        }
        q.add_offset(weight);
    };
    std::vector<int> group(k);
    for (int i = 1; i <= k; ++i) {
        for (int t = 1; t <= k; ++t) group[t - 1] = var(i, t);
        one_hot(group, penalty_a);
    }
    for (int t = 1; t <= k; ++t) {
        for (int i = 1; i <= k; ++i) group[i - 1] = var(i, t);
        one_hot(group, penalty_b);
    }
    return q;
}

TourDecoding decode_tour(std::span<const int> x, int cities) {
    const int k = cities - 1;
    if (cities < 3 || x.size() != static_cast<std::size_t>(k) * k) {
        throw DimensionError("decode_tour: expected (N-1)^2 variables");
    }
    TourDecoding out;
    for (int i = 1; i <= k; ++i) {
        int ones = 0;
        for (int t = 1; t <= k; ++t) ones += x[tsp_variable(i, t, cities)] ? 1 : 0;
        if (ones != 1) out.violated_rows.push_back(i);
    }
    for (int t = 1; t <= k; ++t) {
        int ones = 0;
        for (int i = 1; i <= k; ++i) ones += x[tsp_variable(i, t, cities)] ? 1 : 0;
        if (ones != 1) out.violated_columns.push_back(t);
    }
    if (!out.violated_rows.empty() || !out.violated_columns.empty()) return out;

    Tour tour;
    tour.order.assign(cities, 0);
    for (int i = 1; i <= k; ++i) {
        for (int t = 1; t <= k; ++t) {
            if (x[tsp_variable(i, t, cities)]) tour.order[t] = i;
        }
    }
    out.tour = std::move(tour);
    return out;
}

std::vector<int> tour_to_assignment(const Tour& tour, int cities) {
    validate_tour(tour, cities);
    std::vector<int> x(static_cast<std::size_t>(cities - 1) * (cities - 1), 0);
    for (int t = 1; t < cities; ++t) x[tsp_variable(tour.order[t], t, cities)] = 1;
    return x;
}

double tour_length(const Tour& tour, const TspInstance& instance) {
    validate_tour(tour, instance.cities());
    double len = 0.0;
    for (std::size_t p = 0; p + 1 < tour.order.size(); ++p) len += instance.distance(tour.order[p], tour.order[p + 1]);
    return len + instance.distance(tour.order.back(), 0);
}

TspOptimum brute_force_tsp(const TspInstance& instance) {
    const int n = instance.cities();
    if (n > kMaxBruteForceCities) {
        throw RefusalError("brute_force_tsp: " + std::to_string(n) + " cities exceed the limit of " +
                           std::to_string(kMaxBruteForceCities));
    }
    Tour candidate;
    candidate.order.resize(n);
    std::iota(candidate.order.begin(), candidate.order.end(), 0);

    TspOptimum best;
    bool have = false;
    do {
        ++best.permutations_examined;
        // A tour and its reversal have the same length; keep the one whose
        // second city is smaller than its last.
        if (candidate.order[1] > candidate.order.back()) continue;
        ++best.distinct_tours;
        const double len = tour_length(candidate, instance);
        if (!have || len < best.length) {
            best.tour = candidate;
            best.length = len;
            have = true;
        }
    } while (std::next_permutation(candidate.order.begin() + 1, candidate.order.end()));
    return best;
}

} // namespace wpce::problems
