#ifndef WPCE_REPORT_HPP
#define WPCE_REPORT_HPP

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "wpce/harness.hpp"

namespace wpce::report {

/// Column order of records.csv.
inline constexpr const char* kRecordColumns =
    "method,instance_id,depth,init_index,seed,spins,cut,feasible,tour,tour_length,"
    "optimal_length,ratio,hit_optimum,post_processed,best_loss,evals_used,"
    "violated_rows,violated_columns";

inline constexpr const char* kSummaryColumns =
    "depth,instances,pce_runs,pce_mean_ratio,pce_success_rate,warm_runs,warm_mean_ratio,"
    "warm_success_rate,wins,ties,losses";

inline constexpr const char* kSweepColumns = "epsilon,graph_id,init_index,seed,energy,optimum,ratio";
inline constexpr const char* kSweepSummaryColumns = "epsilon,runs,median,q1,q3";

/// Doubles are printed with 17 significant digits so they parse back exactly.
std::string records_csv(std::span<const harness::RunRecord> records);
std::vector<harness::RunRecord> parse_records_csv(const std::string& text);

std::string summary_csv(const harness::BenchmarkSummary& summary);
std::string sweep_csv(std::span<const harness::SweepRecord> records);
std::vector<harness::SweepRecord> parse_sweep_csv(const std::string& text);
std::string sweep_summary_csv(std::span<const harness::SweepStat> stats);

std::string ratio_chart_svg(const harness::BenchmarkSummary& summary);
std::string success_chart_svg(const harness::BenchmarkSummary& summary);
std::string wins_chart_svg(const harness::BenchmarkSummary& summary);
std::string sweep_chart_svg(std::span<const harness::SweepRecord> records,
                            std::span<const harness::SweepStat> stats);

/// records.csv, summary.csv, ratio_vs_depth.svg, success_vs_depth.svg and
/// wins_ties_losses.svg. Refuses empty records or an empty depth set.
std::vector<std::filesystem::path> emit_report(std::span<const harness::RunRecord> records,
                                               const harness::BenchmarkSummary& summary,
                                               const std::filesystem::path& out_dir);

/// sweep.csv, sweep_summary.csv and epsilon_sweep.svg.
std::vector<std::filesystem::path> emit_sweep_report(const harness::SweepResult& sweep,
                                                     const std::filesystem::path& out_dir);

} // namespace wpce::report

#endif // WPCE_REPORT_HPP
