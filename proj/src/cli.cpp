#include "seqlearn/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "seqlearn/dp.hpp"
#include "seqlearn/simulate.hpp"

namespace seqlearn {

const char* const csv_header =
    "p,delta,mechanism,mode,gsw,nsw,revenue,gsw_stderr,nsw_stderr,"
    "revenue_stderr,gross_impr_pct,net_impr_pct,profit_pct";

namespace {

double parse_number(const std::string& s) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("parse_grid: not a number: " + s);
  }
  if (used != s.size()) {
    throw std::invalid_argument("parse_grid: trailing junk in: " + s);
  }
  return v;
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

std::string cell(const std::optional<double>& v) {
  return v ? fmt(*v) : std::string();
}

struct Row {
  double p = 0.0;
  double delta = 0.0;
  std::string mechanism;
  std::string mode;
  std::optional<double> gsw, nsw, revenue;
  std::optional<double> gsw_se, nsw_se, rev_se;
  std::optional<double> gross, net, profit;

  std::string line() const {
    std::string out = fmt(p);
    out += ',';
    out += fmt(delta);
    out += ',';
    out += mechanism;
    out += ',';
    out += mode;
    for (const auto* v : {&gsw, &nsw, &revenue, &gsw_se, &nsw_se, &rev_se,
                          &gross, &net, &profit}) {
      out += ',';
      out += cell(*v);
    }
    return out;
  }
};

Row report_row(double p, double delta, const std::string& mechanism,
               const std::string& mode, const WelfareReport& r) {
  Row row;
  row.p = p;
  row.delta = delta;
  row.mechanism = mechanism;
  row.mode = mode;
  row.gsw = r.gsw;
  row.nsw = r.nsw;
  row.revenue = r.revenue;
  if (r.has_stderr()) {
    row.gsw_se = r.gsw_stderr;
    row.nsw_se = r.nsw_stderr;
    row.rev_se = r.revenue_stderr;
  }
  return row;
}

// Improvement percentages: no-switch quantities against the analytic
// baseline gross welfare, always from unnormalized values so the columns do
// not depend on the output scaling.
void add_improvements(Row& row, const WelfareReport& nsii_raw,
                      double baseline_gsw) {
  row.gross = 100.0 * (nsii_raw.gsw - baseline_gsw) / baseline_gsw;
  row.net = 100.0 * (nsii_raw.nsw - baseline_gsw) / baseline_gsw;
  row.profit = 100.0 * nsii_raw.revenue / baseline_gsw;
}

struct SeriesPoint {
  double p;
  std::optional<double> bhw_gsw, nsii_gsw, nsii_nsw, gross, net, profit;
};

void write_text(const std::string& path, const std::string& body) {
  if (path.empty()) {
    std::fputs(body.c_str(), stdout);
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << body;
  if (!out) throw std::runtime_error("write failed: " + path);
}

void write_series(const std::string& prefix,
                  const std::vector<SeriesPoint>& pts) {
  const struct {
    const char* suffix;
    std::optional<double> SeriesPoint::* field;
  } series[] = {
      {"_bhw_gsw.dat", &SeriesPoint::bhw_gsw},
      {"_nsii_gsw.dat", &SeriesPoint::nsii_gsw},
      {"_nsii_nsw.dat", &SeriesPoint::nsii_nsw},
      {"_gross_impr_pct.dat", &SeriesPoint::gross},
      {"_net_impr_pct.dat", &SeriesPoint::net},
      {"_profit_pct.dat", &SeriesPoint::profit},
  };
  for (const auto& s : series) {
    std::string body;
    for (const auto& pt : pts) {
      const auto& v = pt.*(s.field);
      if (!v) {
        throw std::invalid_argument(
            "series files need both mechanisms evaluated at every point");
      }
      body += fmt(pt.p);
      body += ' ';
      body += fmt(*v);
      body += '\n';
    }
    write_text(prefix + s.suffix, body);
  }
}

void validate_config(const RunConfig& c) {
  if (c.p_values.empty()) {
    throw std::invalid_argument("no crossover probabilities given");
  }
  if (c.mechanism != "bhw" && c.mechanism != "nsii" && c.mechanism != "both") {
    throw std::invalid_argument("mechanism must be bhw, nsii, or both");
  }
  if (c.mode != "analytic" && c.mode != "simulate" && c.mode != "dp" &&
      c.mode != "crosscheck") {
    throw std::invalid_argument(
        "mode must be analytic, simulate, dp, or crosscheck");
  }
  if (c.episodes < 1) throw std::invalid_argument("episodes must be positive");
  if (c.kmax < 4) throw std::invalid_argument("kmax must be at least 4");
  if (c.horizon < 0) throw std::invalid_argument("horizon must be >= 0");
  if (!c.series_prefix.empty() &&
      (c.mode == "dp" || c.mechanism != "both")) {
    throw std::invalid_argument(
        "series files need mechanism both and a welfare-reporting mode");
  }
  for (double p : c.p_values) ModelParams{p, c.delta}.validate();
}

}  // namespace

std::vector<double> parse_grid(const std::string& spec) {
  std::vector<std::string> parts;
  std::string cur;
  for (char ch : spec) {
    if (ch == ':') {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  parts.push_back(cur);
  if (parts.size() != 3) {
    throw std::invalid_argument("parse_grid: expected start:stop:step");
  }
  const double start = parse_number(parts[0]);
  const double stop = parse_number(parts[1]);
  const double step = parse_number(parts[2]);
  if (!(step > 0.0)) {
    throw std::invalid_argument("parse_grid: step must be positive");
  }
  if (start > stop) {
    throw std::invalid_argument("parse_grid: start exceeds stop");
  }
  std::vector<double> out;
  for (int i = 0;; ++i) {
    const double v = start + i * step;
    if (v > stop + 1e-9) break;
    out.push_back(v);
  }
  return out;
}

int parse_command_line(const std::vector<std::string>& args, RunConfig& config,
                       std::string& err) {
  CLI::App app{"sequential social learning: baseline cascades vs the "
               "no-switch coordinator"};
  app.name("seqlearn");

  double p_single = -1.0;
  std::string grid_spec;
  app.add_option("--p", p_single, "one signal crossover probability in (0, 0.5)");
  app.add_option("--p-grid", grid_spec,
                 "grid of crossover probabilities, start:stop:step inclusive");
  app.add_option("--delta", config.delta, "discount factor in (0, 1)")
      ->capture_default_str();
  app.add_option("--mechanism", config.mechanism, "bhw | nsii | both")
      ->check(CLI::IsMember({"bhw", "nsii", "both"}))
      ->capture_default_str();
  app.add_option("--mode", config.mode,
                 "analytic | simulate | dp | crosscheck")
      ->check(CLI::IsMember({"analytic", "simulate", "dp", "crosscheck"}))
      ->capture_default_str();
  app.add_option("--episodes", config.episodes,
                 "episodes per Monte-Carlo estimate")
      ->capture_default_str();
  app.add_option("--seed", config.seed, "master RNG seed")
      ->capture_default_str();
  app.add_option("--horizon", config.horizon,
                 "simulate: episode length (0 = auto); dp: stages")
      ->capture_default_str();
  app.add_option("--kmax", config.kmax, "chain truncation half-width")
      ->capture_default_str();
  app.add_flag("--normalize", config.normalize,
               "report welfare in per-period units, scaled by 1-delta");
  app.add_option("--out", config.out, "CSV output path (default: stdout)");
  app.add_option("--series-prefix", config.series_prefix,
                 "also write two-column .dat series files with this prefix");
  app.set_config("--config", "", "key = value configuration file");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    err = app.help();
    return 1;
  } catch (const CLI::ParseError& e) {
    err = e.what();
    return 1;
  }

  try {
    if (!grid_spec.empty()) {
      config.p_values = parse_grid(grid_spec);
    } else if (p_single >= 0.0) {
      config.p_values = {p_single};
    }
  } catch (const std::invalid_argument& e) {
    err = e.what();
    return 1;
  }
  return 0;
}

int run(const RunConfig& config) {
  try {
    validate_config(config);

    std::vector<double> ps = config.p_values;
    std::sort(ps.begin(), ps.end());
    const bool want_bhw =
        config.mechanism == "bhw" || config.mechanism == "both";
    const bool want_nsii =
        config.mechanism == "nsii" || config.mechanism == "both";

    std::string body = csv_header;
    body += '\n';
    std::vector<SeriesPoint> series;

    for (double p : ps) {
      const ModelParams mp{p, config.delta};
      SeriesPoint pt;
      pt.p = p;
      const double baseline = bhw_gsw_closed_form(mp);

      if (config.mode == "dp") {
        const int T = config.horizon;
        const DpSolution sol = solve_finite_horizon(mp, T);
        Row opt;
        opt.p = p;
        opt.delta = config.delta;
        opt.mechanism = "dp-optimal";
        opt.mode = "dp";
        opt.revenue = sol.root;
        body += opt.line();
        body += '\n';
        for (const auto& [want, which, name] :
             {std::tuple{want_bhw, Mechanism::bhw, "bhw"},
              std::tuple{want_nsii, Mechanism::nsii, "nsii"}}) {
          if (!want) continue;
          Row row;
          row.p = p;
          row.delta = config.delta;
          row.mechanism = name;
          row.mode = "dp";
          row.revenue =
              evaluate_policy_finite(mp, make_policy(mp, which), T);
          body += row.line();
          body += '\n';
        }
        continue;
      }

      // analytic, simulate, and crosscheck: one report per mechanism
      WelfareReport bhw_raw, nsii_raw;
      if (config.mode == "analytic") {
        if (want_bhw) bhw_raw = welfare_report(mp, Mechanism::bhw, false, config.kmax);
        if (want_nsii) nsii_raw = welfare_report(mp, Mechanism::nsii, false, config.kmax);
      } else {
        const int T = config.horizon > 0 ? config.horizon
                                         : default_horizon(config.delta);
        if (want_bhw) {
          bhw_raw = estimate(mp, bhw_policy(mp), config.episodes, T,
                             config.seed);
        }
        if (want_nsii) {
          nsii_raw = estimate(mp, nsii_policy(mp), config.episodes, T,
                              config.seed);
        }
        if (config.mode == "crosscheck") {
          // simulated estimates must straddle the analytic values
          const auto check = [](const char* what, double got, double want,
                                double se) {
            if (std::abs(got - want) > 4.0 * se + 1e-9) {
              std::ostringstream msg;
              msg << "crosscheck failed: " << what << " simulated " << got
                  << " vs analytic " << want << " (se " << se << ")";
              throw std::runtime_error(msg.str());
            }
          };
          if (want_bhw) {
            check("bhw gsw", bhw_raw.gsw, bhw_gsw_closed_form(mp),
                  bhw_raw.gsw_stderr);
            check("bhw revenue", bhw_raw.revenue, 0.0, bhw_raw.revenue_stderr);
          }
          if (want_nsii) {
            const auto exact =
                welfare_report(mp, Mechanism::nsii, false, config.kmax);
            check("nsii gsw", nsii_raw.gsw, exact.gsw, nsii_raw.gsw_stderr);
            check("nsii revenue", nsii_raw.revenue, exact.revenue,
                  nsii_raw.revenue_stderr);
          }
        }
      }

      if (want_bhw) {
        const WelfareReport r = config.normalize
                                    ? normalized(bhw_raw, config.delta)
                                    : bhw_raw;
        body += report_row(p, config.delta, "bhw", config.mode, r).line();
        body += '\n';
        pt.bhw_gsw = r.gsw;
      }
      if (want_nsii) {
        const WelfareReport r = config.normalize
                                    ? normalized(nsii_raw, config.delta)
                                    : nsii_raw;
        Row row = report_row(p, config.delta, "nsii", config.mode, r);
        add_improvements(row, nsii_raw, baseline);
        body += row.line();
        body += '\n';
        pt.nsii_gsw = r.gsw;
        pt.nsii_nsw = r.nsw;
        pt.gross = row.gross;
        pt.net = row.net;
        pt.profit = row.profit;
      }
      series.push_back(pt);
    }

    write_text(config.out, body);
    if (!config.series_prefix.empty()) {
      write_series(config.series_prefix, series);
    }
    return 0;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
}

}  // namespace seqlearn
