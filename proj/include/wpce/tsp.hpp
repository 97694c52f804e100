#ifndef WPCE_TSP_HPP
#define WPCE_TSP_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "wpce/qubo.hpp"

namespace wpce::problems {

/// Symmetric TSP with a zero diagonal; distances stored row-major.
class TspInstance {
public:
    /// Throws InstanceError for fewer than 3 cities, asymmetry, a nonzero
    /// diagonal, or negative / non-finite distances.
    TspInstance(int cities, std::vector<double> distances);

    int cities() const { return cities_; }
    double distance(int i, int j) const { return distances_[static_cast<std::size_t>(i) * cities_ + j]; }
    std::span<const double> distances() const { return distances_; }
    double max_distance() const;

private:
    int cities_;
    std::vector<double> distances_;
};

/// Cities uniform in the unit square, Euclidean distances.
TspInstance random_euclidean_tsp(int cities, std::uint64_t seed);

/// City order starting at city 0; the return edge to 0 is implicit.
struct Tour {
    std::vector<int> order;

    friend bool operator==(const Tour&, const Tour&) = default;
};

/// Variable index of x_{city, position} for city, position in 1..N-1.
int tsp_variable(int city, int position, int cities);

/// 2 * N * max_ij W_ij.
double default_penalty(const TspInstance& instance);

/// H_cost + A * H_row + B * H_col over (N-1)^2 variables with city 0 fixed.
QuboProblem build_tsp_qubo(const TspInstance& instance, double penalty_a, double penalty_b);

/// Either a tour, or the rows (cities 1..N-1) and columns (positions 1..N-1)
/// of the assignment matrix that are not one-hot.
struct TourDecoding {
    std::optional<Tour> tour;
    std::vector<int> violated_rows;
    std::vector<int> violated_columns;

    bool feasible() const { return tour.has_value(); }
};

TourDecoding decode_tour(std::span<const int> x, int cities);

std::vector<int> tour_to_assignment(const Tour& tour, int cities);

/// Includes the closing edge back to city 0.
double tour_length(const Tour& tour, const TspInstance& instance);

struct TspOptimum {
    Tour tour;
    double length = 0.0;
    /// Orderings of cities 1..N-1 visited, (N-1)!.
    std::uint64_t permutations_examined = 0;
    /// Direction-distinct tours evaluated, (N-1)!/2.
    std::uint64_t distinct_tours = 0;
};

/// Exact optimum; ties go to the lexicographically smallest order. Refuses
/// more than 11 cities.
TspOptimum brute_force_tsp(const TspInstance& instance);

} // namespace wpce::problems

#endif // WPCE_TSP_HPP
