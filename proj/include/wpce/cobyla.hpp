#ifndef WPCE_COBYLA_HPP
#define WPCE_COBYLA_HPP

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace wpce::opt {

using Objective = std::function<double(std::span<const double>)>;

struct OptimizerConfig {
    /// Hard cap on objective calls.
    int max_evals = 1000;
    /// Initial trust-region radius (radians for circuit angles).
    double initial_step = 0.7;
    /// Radius at which the run is considered converged.
    double final_step = 1e-4;
    /// Carried for provenance; the method itself is deterministic.
    std::uint64_t seed = 0;
    bool record_trace = true;

    void validate() const;
};

enum class Termination {
    Converged,       // trust region shrank to final_step
    BudgetExhausted, // max_evals reached
    RoundingErrors,  // simplex inverse drifted too far from the simplex
};

const char* to_string(Termination t);

struct OptimResult {
    std::vector<double> best_params;
    double best_loss = 0.0;
    int evals_used = 0;
    Termination termination = Termination::Converged;
    /// Objective value of every call, in call order.
    std::vector<double> trace;
};

/// Unconstrained COBYLA: linear interpolation on a simplex of n+1 points,
/// steps of length rho along the model's descent direction, geometry repair
/// when the simplex degenerates, and rho halving down to final_step. Returns
/// the best point ever evaluated. Throws NonFiniteObjective on NaN/inf.
OptimResult minimize(const Objective& objective, std::span<const double> start,
                     const OptimizerConfig& cfg = {});

/// Components uniform in [0, 2*pi), deterministic per seed.
std::vector<double> random_start(std::size_t count, std::uint64_t seed);

} // namespace wpce::opt

#endif // WPCE_COBYLA_HPP
