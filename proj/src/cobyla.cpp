#include "wpce/cobyla.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>

#include "wpce/errors.hpp"
#include "wpce/rng.hpp"

namespace wpce::opt {

namespace {

// Simplex acceptability and step constants from Powell's COBYLA.
constexpr double kSigmaFactor = 0.25;  // alpha
constexpr double kEtaFactor = 2.1;     // beta
constexpr double kGeometryStep = 0.5;  // gamma
constexpr double kEdgeFactor = 1.1;    // delta

class Cobyla {
public:
    Cobyla(const Objective& objective, std::span<const double> start, const OptimizerConfig& cfg)
        : objective_(objective),
          cfg_(cfg),
          n_(static_cast<int>(start.size())),
          sim_(static_cast<std::size_t>(n_) * n_, 0.0),
          simi_(static_cast<std::size_t>(n_) * n_, 0.0),
          pole_(start.begin(), start.end()),
          fval_(n_, 0.0),
          vsig_(n_, 0.0),
          veta_(n_, 0.0),
          grad_(n_, 0.0),
          dx_(n_, 0.0),
          x_(n_, 0.0) {}

    OptimResult run() {
        result_.termination = search();
        return std::move(result_);
    }

private:
    // Column j of SIM is the displacement from the pole to vertex j; row j of
    // SIMI is row j of its inverse.
    double& sim(int coord, int vertex) { return sim_[static_cast<std::size_t>(coord) * n_ + vertex]; }
    double& simi(int vertex, int coord) { return simi_[static_cast<std::size_t>(vertex) * n_ + coord]; }

    bool evaluate(std::span<const double> x, double& f) {
        if (result_.evals_used >= cfg_.max_evals) return false;
        f = objective_(x);
        ++result_.evals_used;
        if (!std::isfinite(f)) {
            std::string msg = "minimize: objective returned a non-finite value at evaluation " +
                              std::to_string(result_.evals_used) + ", params = [";
            char buf[32];
            for (std::size_t i = 0; i < x.size(); ++i) {
                std::snprintf(buf, sizeof buf, "%s%.17g", i ? ", " : "", x[i]);
                msg += buf;
            }
            throw NonFiniteObjective(msg + "]");
        }
        if (cfg_.record_trace) result_.trace.push_back(f);
        if (result_.evals_used == 1 || f < result_.best_loss) {
            result_.best_loss = f;
            result_.best_params.assign(x.begin(), x.end());
        }
        return true;
    }

    Termination search() {
        double rho = cfg_.initial_step;
        for (int i = 0; i < n_; ++i) {
            sim(i, i) = rho;
            simi(i, i) = 1.0 / rho;
        }
        if (!evaluate(pole_, fpole_)) return Termination::BudgetExhausted;

        // Initial simplex: pole + rho * e_j, moving the pole whenever a new
        // vertex is strictly better.
        for (int j = 0; j < n_; ++j) {
            x_ = pole_;
            x_[j] += rho;
            double f = 0.0;
            if (!evaluate(x_, f)) return Termination::BudgetExhausted;
            if (fpole_ <= f) {
                fval_[j] = f;
                continue;
            }
            fval_[j] = fpole_;
            fpole_ = f;
            pole_[j] = x_[j];
            for (int k = 0; k <= j; ++k) {
                sim(j, k) = -rho;
                double temp = 0.0;
                for (int i = k; i <= j; ++i) temp -= simi(i, k);
                simi(j, k) = temp;
            }
        }

        bool trust_phase = true;  // Powell's IBRNCH
        while (true) {
            move_best_to_pole();
            if (inverse_error() > 0.1) return Termination::RoundingErrors;
            compute_gradient();

            const double parsig = kSigmaFactor * rho;
            const double pareta = kEtaFactor * rho;
            bool acceptable = true;  // Powell's IFLAG
            for (int j = 0; j < n_; ++j) {
                double wsig = 0.0;
                double weta = 0.0;
                for (int i = 0; i < n_; ++i) {
                    wsig += simi(j, i) * simi(j, i);
                    weta += sim(i, j) * sim(i, j);
                }
                vsig_[j] = 1.0 / std::sqrt(wsig);
                veta_[j] = std::sqrt(weta);
                if (vsig_[j] < parsig || veta_[j] > pareta) acceptable = false;
            }

            if (!trust_phase && !acceptable) {
                if (!geometry_step(rho, pareta)) return Termination::BudgetExhausted;
                trust_phase = true;
                continue;
            }

            // Trust-region step: minimize the linear model over |dx| <= rho.
            double gnorm = 0.0;
            for (double g : grad_) gnorm += g * g;
            gnorm = std::sqrt(gnorm);
            bool reduce = false;
            if (gnorm == 0.0) {
                trust_phase = true;
                reduce = true;
            } else {
                for (int i = 0; i < n_; ++i) dx_[i] = -rho * grad_[i] / gnorm;
                double prerem = rho * gnorm;
                for (int i = 0; i < n_; ++i) x_[i] = pole_[i] + dx_[i];
                double f = 0.0;
                if (!evaluate(x_, f)) return Termination::BudgetExhausted;
                trust_phase = true;

                double trured = fpole_ - f;
                if (f == fpole_) {
                    prerem = 0.0;
                    trured = 0.0;
                }

                // Pick the vertex that x replaces; mandatory when f improved.
                double ratio = trured <= 0.0 ? 1.0 : 0.0;
                int jdrop = -1;
                std::vector<double> sigbar(n_);
                for (int j = 0; j < n_; ++j) {
                    double temp = 0.0;
                    for (int i = 0; i < n_; ++i) temp += simi(j, i) * dx_[i];
                    temp = std::abs(temp);
                    if (temp > ratio) {
                        jdrop = j;
                        ratio = temp;
                    }
                    sigbar[j] = temp * vsig_[j];
                }
                double edgmax = kEdgeFactor * rho;
                int far = -1;
                for (int j = 0; j < n_; ++j) {
                    if (sigbar[j] >= parsig || sigbar[j] >= vsig_[j]) {
                        double temp = veta_[j];
                        if (trured > 0.0) {
                            temp = 0.0;
                            for (int i = 0; i < n_; ++i) temp += (dx_[i] - sim(i, j)) * (dx_[i] - sim(i, j));
                            temp = std::sqrt(temp);
                        }
                        if (temp > edgmax) {
                            far = j;
                            edgmax = temp;
                        }
                    }
                }
                if (far >= 0) jdrop = far;

                if (jdrop < 0) {
                    reduce = true;
                } else {
                    replace_vertex(jdrop);
                    fval_[jdrop] = f;
                    if (trured > 0.0 && trured >= 0.1 * prerem) continue;
                    reduce = true;
                }
            }

            if (reduce) {
                if (!acceptable) {
                    trust_phase = false;
                    continue;
                }
                if (rho > cfg_.final_step) {
                    rho *= 0.5;
                    if (rho <= 1.5 * cfg_.final_step) rho = cfg_.final_step;
                    continue;
                }
                return Termination::Converged;
            }
        }
    }

    void move_best_to_pole() {
        int nbest = -1;
        double phimin = fpole_;
        for (int j = 0; j < n_; ++j) {
            if (fval_[j] < phimin) {
                nbest = j;
                phimin = fval_[j];
            }
        }
        if (nbest < 0) return;
        std::swap(fval_[nbest], fpole_);
        for (int i = 0; i < n_; ++i) {
            const double temp = sim(i, nbest);
            sim(i, nbest) = 0.0;
            pole_[i] += temp;
            double tempa = 0.0;
            for (int k = 0; k < n_; ++k) {
                sim(i, k) -= temp;
                tempa -= simi(k, i);
            }
            simi(nbest, i) = tempa;
        }
    }

    double inverse_error() {
        double error = 0.0;
        for (int i = 0; i < n_; ++i) {
            for (int j = 0; j < n_; ++j) {
                double temp = i == j ? -1.0 : 0.0;
                for (int k = 0; k < n_; ++k) temp += simi(i, k) * sim(k, j);
                error = std::max(error, std::abs(temp));
            }
        }
        return error;
    }

    void compute_gradient() {
        for (int i = 0; i < n_; ++i) {
            double g = 0.0;
            for (int j = 0; j < n_; ++j) g += (fval_[j] - fpole_) * simi(j, i);
            grad_[i] = g;
        }
    }

    // Puts dx_ into column jdrop of SIM and updates SIMI by a rank-one step.
    void replace_vertex(int jdrop) {
        double temp = 0.0;
        for (int i = 0; i < n_; ++i) {
            sim(i, jdrop) = dx_[i];
            temp += simi(jdrop, i) * dx_[i];
        }
        for (int i = 0; i < n_; ++i) simi(jdrop, i) /= temp;
        for (int j = 0; j < n_; ++j) {
            if (j == jdrop) continue;
            double dotj = 0.0;
            for (int i = 0; i < n_; ++i) dotj += simi(j, i) * dx_[i];
            for (int i = 0; i < n_; ++i) simi(j, i) -= dotj * simi(jdrop, i);
        }
    }

    // Replaces the worst-shaped vertex by one that restores acceptability.
    bool geometry_step(double rho, double pareta) {
        int jdrop = -1;
        double temp = pareta;
        for (int j = 0; j < n_; ++j) {
            if (veta_[j] > temp) {
                jdrop = j;
                temp = veta_[j];
            }
        }
        if (jdrop < 0) {
            for (int j = 0; j < n_; ++j) {
                if (vsig_[j] < temp) {
                    jdrop = j;
                    temp = vsig_[j];
                }
            }
        }
        const double scale = kGeometryStep * rho * vsig_[jdrop];
        double slope = 0.0;
        for (int i = 0; i < n_; ++i) {
            dx_[i] = scale * simi(jdrop, i);
            slope += grad_[i] * dx_[i];
        }
        if (slope > 0.0) {
            for (double& d : dx_) d = -d;
        }
        replace_vertex(jdrop);
        for (int i = 0; i < n_; ++i) x_[i] = pole_[i] + dx_[i];
        double f = 0.0;
        if (!evaluate(x_, f)) return false;
        fval_[jdrop] = f;
        return true;
    }

    const Objective& objective_;
    OptimizerConfig cfg_;
    int n_;
    std::vector<double> sim_;
    std::vector<double> simi_;
    std::vector<double> pole_;
    double fpole_ = 0.0;
    std::vector<double> fval_;
    std::vector<double> vsig_;
    std::vector<double> veta_;
    std::vector<double> grad_;
    std::vector<double> dx_;
    std::vector<double> x_;
    OptimResult result_;
};

} // namespace

void OptimizerConfig::validate() const {
    if (max_evals < 1) throw ParameterError("OptimizerConfig: max_evals must be >= 1");
    if (!(final_step > 0.0 && final_step < initial_step)) {
        throw ParameterError("OptimizerConfig: need 0 < final_step < initial_step");
    }
}

const char* to_string(Termination t) {
    switch (t) {
    case Termination::Converged: return "converged";
    case Termination::BudgetExhausted: return "budget-exhausted";
    case Termination::RoundingErrors: return "rounding-errors";
    }
    return "unknown";
}

OptimResult minimize(const Objective& objective, std::span<const double> start,
                     const OptimizerConfig& cfg) {
    cfg.validate();
    if (start.empty()) throw DimensionError("minimize: empty start vector");
    return Cobyla(objective, start, cfg).run();
}

std::vector<double> random_start(std::size_t count, std::uint64_t seed) {
    if (count < 1) throw ParameterError("random_start: count must be >= 1");
    constexpr double two_pi = 2.0 * std::numbers::pi;
    Rng rng(seed);
    std::vector<double> out(count);
    for (double& v : out) {
        v = rng.uniform() * two_pi;
        if (v >= two_pi) v = std::nextafter(two_pi, 0.0);
    }
    return out;
}

} // namespace wpce::opt
