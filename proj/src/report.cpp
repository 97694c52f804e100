#include "wpce/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "wpce/errors.hpp"
#include "wpce/instance_io.hpp"

namespace wpce::report {

using harness::BenchmarkSummary;
using harness::RunRecord;

namespace {

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string px(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

template <typename T>
std::string join(const std::vector<T>& xs, char sep) {
    std::string out;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i) out.push_back(sep);
        out += std::to_string(xs[i]);
    }
    return out;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    out.push_back(cur);
    return out;
}

std::vector<int> parse_ints(const std::string& s, char sep) {
    std::vector<int> out;
    if (s.empty()) return out;
    for (const std::string& part : split(s, sep)) out.push_back(std::stoi(part));
    return out;
}

std::vector<std::string> data_lines(const std::string& text, const char* header) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line != header) throw ParameterError("CSV header mismatch");
    std::vector<std::string> lines;
    while (std::getline(in, line)) {
        if (!line.empty()) lines.push_back(line);
    }
    return lines;
}

// Minimal SVG plotting: a fixed frame with linear axes.
struct Frame {
    double width = 640, height = 400;
    double left = 70, right = 150, top = 40, bottom = 55;
    double xmin = 0, xmax = 1, ymin = 0, ymax = 1;

    double x(double v) const { return left + (v - xmin) / (xmax - xmin) * (width - left - right); }
    double y(double v) const { return height - bottom - (v - ymin) / (ymax - ymin) * (height - top - bottom); }
};

std::string svg_open(const Frame& f, const std::string& title, const std::string& xlabel,
                     const std::string& ylabel, const std::vector<double>& xticks, int yticks) {
    std::ostringstream s;
    s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << f.width << "\" height=\"" << f.height
      << "\" font-family=\"sans-serif\" font-size=\"12\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      << "<text x=\"" << px(f.width / 2 - f.right / 2 + f.left / 2) << "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">"
      << title << "</text>\n"
      << "<line x1=\"" << px(f.left) << "\" y1=\"" << px(f.y(f.ymin)) << "\" x2=\"" << px(f.width - f.right)
      << "\" y2=\"" << px(f.y(f.ymin)) << "\" stroke=\"black\"/>\n"
      << "<line x1=\"" << px(f.left) << "\" y1=\"" << px(f.y(f.ymin)) << "\" x2=\"" << px(f.left)
      << "\" y2=\"" << px(f.top) << "\" stroke=\"black\"/>\n";
    for (double t : xticks) {
        s << "<text x=\"" << px(f.x(t)) << "\" y=\"" << px(f.y(f.ymin) + 18) << "\" text-anchor=\"middle\">";
        char buf[32];
        std::snprintf(buf, sizeof buf, "%g", t);
        s << buf << "</text>\n";
    }
    for (int k = 0; k <= yticks; ++k) {
        const double v = f.ymin + (f.ymax - f.ymin) * k / yticks;
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.3g", v);
        s << "<line x1=\"" << px(f.left - 4) << "\" y1=\"" << px(f.y(v)) << "\" x2=\"" << px(f.width - f.right)
          << "\" y2=\"" << px(f.y(v)) << "\" stroke=\"#dddddd\"/>\n"
          << "<text x=\"" << px(f.left - 8) << "\" y=\"" << px(f.y(v) + 4) << "\" text-anchor=\"end\">" << buf
          << "</text>\n";
    }
    s << "<text x=\"" << px((f.left + f.width - f.right) / 2) << "\" y=\"" << px(f.height - 12)
      << "\" text-anchor=\"middle\">" << xlabel << "</text>\n"
      << "<text transform=\"translate(18," << px((f.top + f.height - f.bottom) / 2)
      << ") rotate(-90)\" text-anchor=\"middle\">" << ylabel << "</text>\n";
    return s.str();
}

std::string legend(const Frame& f, int row, const std::string& color, const std::string& label) {
    std::ostringstream s;
    const double lx = f.width - f.right + 15;
    const double ly = f.top + 10 + 20 * row;
    s << "<rect x=\"" << px(lx) << "\" y=\"" << px(ly - 9) << "\" width=\"12\" height=\"12\" fill=\"" << color
      << "\"/>\n<text x=\"" << px(lx + 18) << "\" y=\"" << px(ly + 1) << "\">" << label << "</text>\n";
    return s.str();
}

std::string polyline(const Frame& f, const std::vector<std::pair<double, double>>& pts, const std::string& color) {
    std::ostringstream s;
    s << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\" points=\"";
    for (const auto& [x, y] : pts) s << px(f.x(x)) << ',' << px(f.y(y)) << ' ';
    s << "\"/>\n";
    for (const auto& [x, y] : pts) {
        s << "<circle cx=\"" << px(f.x(x)) << "\" cy=\"" << px(f.y(y)) << "\" r=\"3.5\" fill=\"" << color << "\"/>\n";
    }
    return s.str();
}

constexpr const char* kPceColor = "#1f77b4";
constexpr const char* kWarmColor = "#d62728";

Frame depth_frame(const BenchmarkSummary& summary, double ymin, double ymax) {
    Frame f;
    f.xmin = summary.depths.front().depth - 0.5;
    f.xmax = summary.depths.back().depth + 0.5;
    f.ymin = ymin;
    f.ymax = ymax;
    return f;
}

std::vector<double> depth_ticks(const BenchmarkSummary& summary) {
    std::vector<double> t;
    for (const auto& d : summary.depths) t.push_back(d.depth);
    return t;
}

std::string method_chart(const BenchmarkSummary& summary, const std::string& title, const std::string& ylabel,
                         double (*metric)(const harness::MethodStats&)) {
    if (summary.depths.empty()) throw ParameterError("chart: empty depth set");
    double lo = 1.0, hi = 0.0;
    for (const auto& d : summary.depths) {
        for (const auto* ms : {&d.pce, &d.warm}) {
            if (ms->runs == 0) continue;
            lo = std::min(lo, metric(*ms));
            hi = std::max(hi, metric(*ms));
        }
    }
    lo = std::max(0.0, std::floor(lo * 10.0) / 10.0 - 0.1);
    hi = std::min(1.0, std::ceil(hi * 10.0) / 10.0 + 0.1);
    if (hi <= lo) hi = lo + 0.1;
    Frame f = depth_frame(summary, lo, hi);
    std::string s = svg_open(f, title, "depth p", ylabel, depth_ticks(summary), 5);
    std::vector<std::pair<double, double>> pce_pts, warm_pts;
    for (const auto& d : summary.depths) {
        if (d.pce.runs) pce_pts.emplace_back(d.depth, metric(d.pce));
        if (d.warm.runs) warm_pts.emplace_back(d.depth, metric(d.warm));
    }
    s += polyline(f, pce_pts, kPceColor) + polyline(f, warm_pts, kWarmColor);
    s += legend(f, 0, kPceColor, "PCE") + legend(f, 1, kWarmColor, "Warm-PCE");
    return s + "</svg>\n";
}

} // namespace

std::string records_csv(std::span<const RunRecord> records) {
    std::string out = std::string(kRecordColumns) + "\n";
    for (const RunRecord& r : records) {
        std::string spins;
        for (int s : r.spins) spins.push_back(s > 0 ? '+' : '-');
        out += harness::to_string(r.method);
        out += ',' + r.instance_id + ',' + std::to_string(r.depth) + ',' + std::to_string(r.init_index) + ',' +
               std::to_string(r.seed) + ',' + spins + ',' + num(r.cut) + ',' + (r.tour ? "1" : "0") + ',' +
               (r.tour ? join(r.tour->order, '-') : "") + ',' + (r.tour_length ? num(*r.tour_length) : "") + ',' +
               num(r.optimal_length) + ',' + num(r.ratio) + ',' + (r.hit_optimum ? "1" : "0") + ',' +
               (r.post_processed ? "1" : "0") + ',' + num(r.best_loss) + ',' + std::to_string(r.evals_used) + ',' +
               join(r.violated_rows, ';') + ',' + join(r.violated_columns, ';') + '\n';
    }
    return out;
}

std::vector<RunRecord> parse_records_csv(const std::string& text) {
    std::vector<RunRecord> out;
    for (const std::string& line : data_lines(text, kRecordColumns)) {
        const auto c = split(line, ',');
        if (c.size() != 18) throw ParameterError("records.csv: expected 18 columns, got " + std::to_string(c.size()));
        RunRecord r;
        r.method = harness::parse_method(c[0]);
        r.instance_id = c[1];
        r.depth = std::stoi(c[2]);
        r.init_index = std::stoi(c[3]);
        r.seed = std::stoull(c[4]);
        for (char ch : c[5]) r.spins.push_back(ch == '+' ? 1 : -1);
        r.cut = std::stod(c[6]);
        if (c[7] == "1") r.tour = problems::Tour{parse_ints(c[8], '-')};
        if (!c[9].empty()) r.tour_length = std::stod(c[9]);
        r.optimal_length = std::stod(c[10]);
        r.ratio = std::stod(c[11]);
        r.hit_optimum = c[12] == "1";
        r.post_processed = c[13] == "1";
        r.best_loss = std::stod(c[14]);
        r.evals_used = std::stoi(c[15]);
        r.violated_rows = parse_ints(c[16], ';');
        r.violated_columns = parse_ints(c[17], ';');
        out.push_back(std::move(r));
    }
    return out;
}

std::string summary_csv(const BenchmarkSummary& summary) {
    std::string out = std::string(kSummaryColumns) + "\n";
    for (const auto& d : summary.depths) {
        out += std::to_string(d.depth) + ',' + std::to_string(d.instances) + ',' + std::to_string(d.pce.runs) + ',' +
               num(d.pce.mean_ratio) + ',' + num(d.pce.success_rate) + ',' + std::to_string(d.warm.runs) + ',' +
               num(d.warm.mean_ratio) + ',' + num(d.warm.success_rate) + ',' + std::to_string(d.wins) + ',' +
               std::to_string(d.ties) + ',' + std::to_string(d.losses) + '\n';
    }
    return out;
}

std::string sweep_csv(std::span<const harness::SweepRecord> records) {
    std::string out = std::string(kSweepColumns) + "\n";
    for (const auto& r : records) {
        out += num(r.epsilon) + ',' + r.graph_id + ',' + std::to_string(r.init_index) + ',' + std::to_string(r.seed) +
               ',' + num(r.energy) + ',' + num(r.optimum) + ',' + num(r.ratio) + '\n';
    }
    return out;
}

std::vector<harness::SweepRecord> parse_sweep_csv(const std::string& text) {
    std::vector<harness::SweepRecord> out;
    for (const std::string& line : data_lines(text, kSweepColumns)) {
        const auto c = split(line, ',');
        if (c.size() != 7) throw ParameterError("sweep.csv: expected 7 columns");
        out.push_back({std::stod(c[0]), c[1], std::stoi(c[2]), std::stoull(c[3]), std::stod(c[4]),
                       std::stod(c[5]), std::stod(c[6])});
    }
    return out;
}

std::string sweep_summary_csv(std::span<const harness::SweepStat> stats) {
    std::string out = std::string(kSweepSummaryColumns) + "\n";
    for (const auto& s : stats) {
        out += num(s.epsilon) + ',' + std::to_string(s.runs) + ',' + num(s.median) + ',' + num(s.q1) + ',' +
               num(s.q3) + '\n';
    }
    return out;
}

std::string ratio_chart_svg(const BenchmarkSummary& summary) {
    return method_chart(summary, "Mean approximation ratio", "mean ratio r",
                        [](const harness::MethodStats& m) { return m.mean_ratio; });
}

std::string success_chart_svg(const BenchmarkSummary& summary) {
    return method_chart(summary, "Instances with at least one optimal tour", "success rate",
                        [](const harness::MethodStats& m) { return m.success_rate; });
}

std::string wins_chart_svg(const BenchmarkSummary& summary) {
    if (summary.depths.empty()) throw ParameterError("chart: empty depth set");
    int most = 1;
    for (const auto& d : summary.depths) most = std::max(most, d.wins + d.ties + d.losses);
    Frame f = depth_frame(summary, 0.0, most);
    std::string s = svg_open(f, "Best-of-inits: Warm-PCE vs PCE", "depth p", "instances", depth_ticks(summary),
                             std::min(most, 5));
    const double bar = 0.6 * (f.x(1.0) - f.x(0.0));
    const char* colors[3] = {"#2ca02c", "#999999", "#ff7f0e"};
    for (const auto& d : summary.depths) {
        double base = 0.0;
        const int counts[3] = {d.wins, d.ties, d.losses};
        for (int k = 0; k < 3; ++k) {
            if (counts[k] == 0) continue;
            const double y0 = f.y(base), y1 = f.y(base + counts[k]);
            s += "<rect x=\"" + px(f.x(d.depth) - bar / 2) + "\" y=\"" + px(y1) + "\" width=\"" + px(bar) +
                 "\" height=\"" + px(y0 - y1) + "\" fill=\"" + colors[k] + "\"/>\n";
            base += counts[k];
        }
    }
    s += legend(f, 0, colors[0], "wins") + legend(f, 1, colors[1], "ties") + legend(f, 2, colors[2], "losses");
    return s + "</svg>\n";
}

std::string sweep_chart_svg(std::span<const harness::SweepRecord> records,
                            std::span<const harness::SweepStat> stats) {
    if (stats.empty()) throw ParameterError("sweep chart: no epsilon values");
    double lo = 1.0;
    for (const auto& r : records) lo = std::min(lo, r.ratio);
    Frame f;
    f.xmin = 0.0;
    f.xmax = 0.55;
    f.ymin = std::max(0.0, std::floor(lo * 20.0) / 20.0 - 0.05);
    f.ymax = 1.0;
    std::vector<double> ticks;
    for (const auto& st : stats) ticks.push_back(st.epsilon);
    std::string s = svg_open(f, "Warm-PCE epsilon sweep", "epsilon", "E / E_mc", ticks, 5);

    std::string band = "<polygon fill=\"#d62728\" fill-opacity=\"0.18\" stroke=\"none\" points=\"";
    for (const auto& st : stats) band += px(f.x(st.epsilon)) + ',' + px(f.y(st.q3)) + ' ';
    for (auto it = stats.rbegin(); it != stats.rend(); ++it) band += px(f.x(it->epsilon)) + ',' + px(f.y(it->q1)) + ' ';
    s += band + "\"/>\n";
    for (const auto& r : records) {
        s += "<circle cx=\"" + px(f.x(r.epsilon)) + "\" cy=\"" + px(f.y(r.ratio)) +
             "\" r=\"2\" fill=\"#555555\" fill-opacity=\"0.5\"/>\n";
    }
    std::vector<std::pair<double, double>> med;
    for (const auto& st : stats) med.emplace_back(st.epsilon, st.median);
    s += polyline(f, med, kWarmColor);
    s += legend(f, 0, kWarmColor, "median") + legend(f, 1, "#f2c4c4", "IQR");
    return s + "</svg>\n";
}

std::vector<std::filesystem::path> emit_report(std::span<const RunRecord> records,
                                               const BenchmarkSummary& summary,
                                               const std::filesystem::path& out_dir) {
    if (records.empty()) throw ParameterError("emit_report: no records");
    if (summary.depths.empty()) throw ParameterError("emit_report: empty depth set");
    const std::vector<std::pair<std::string, std::string>> files{
        {"records.csv", records_csv(records)},
        {"summary.csv", summary_csv(summary)},
        {"ratio_vs_depth.svg", ratio_chart_svg(summary)},
        {"success_vs_depth.svg", success_chart_svg(summary)},
        {"wins_ties_losses.svg", wins_chart_svg(summary)},
    };
    std::vector<std::filesystem::path> written;
    for (const auto& [name, body] : files) {
        io::write_file(out_dir / name, body);
        written.push_back(out_dir / name);
    }
    return written;
}

std::vector<std::filesystem::path> emit_sweep_report(const harness::SweepResult& sweep,
                                                     const std::filesystem::path& out_dir) {
    if (sweep.records.empty()) throw ParameterError("emit_sweep_report: no records");
    const std::vector<std::pair<std::string, std::string>> files{
        {"sweep.csv", sweep_csv(sweep.records)},
        {"sweep_summary.csv", sweep_summary_csv(sweep.stats)},
        {"epsilon_sweep.svg", sweep_chart_svg(sweep.records, sweep.stats)},
    };
    std::vector<std::filesystem::path> written;
    for (const auto& [name, body] : files) {
        io::write_file(out_dir / name, body);
        written.push_back(out_dir / name);
    }
    return written;
}

} // namespace wpce::report
