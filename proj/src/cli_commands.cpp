#include "tentctl/cli_commands.hpp"

#include <exception>
#include <fstream>
#include <functional>
#include <istream>
#include <ostream>
#include <utility>
#include <vector>

#include <json.hpp>

#include "tentctl/cantor.hpp"
#include "tentctl/control.hpp"
#include "tentctl/finder.hpp"
#include "tentctl/oracle.hpp"
#include "tentctl/rational.hpp"

namespace tentctl::cli {

namespace {

struct UsageError {
  std::string flag;
  std::string message;
};

mpq_class parse_rational_flag(const std::string& text, const std::string& flag) {
  auto q = parse_rational(text);
  if (!q) throw UsageError{flag, "malformed rational '" + text + "'"};
  return *q;
}

MapParams parse_h(const std::string& text) {
  mpq_class h = parse_rational_flag(text, "--H");
  if (h < 2) throw UsageError{"--H", "tent map slope must be >= 2"};
  return MapParams(h);
}

void check_period(int period, int max, const char* what) {
  if (period < 1 || period > max)
    throw UsageError{"--period", std::string(what) + " supports periods 1.." +
                                     std::to_string(max)};
}

Regime parse_regime(const std::string& text) {
  if (text == "pos") return Regime::PositiveMultiplier;
  if (text == "neg") return Regime::NegativeMultiplier;
  throw UsageError{"--regime", "expected 'pos' or 'neg'"};
}

std::string decimal(const mpq_class& q, int precision) {
  return HPReal::from_rational(q, precision).to_string();
}

nlohmann::ordered_json cycle_json(const NumericCycle& c, const mpq_class& theta,
                                  Regime regime, const std::string& seed_text) {
  nlohmann::ordered_json j;
  j["T"] = c.target_period;
  j["tau"] = c.proper_period;
  j["theta"] = rational_to_string(theta);
  j["regime"] = regime == Regime::PositiveMultiplier ? "pos" : "neg";
  std::vector<std::string> pts;
  pts.reserve(c.points.size());
  for (const auto& p : c.points) pts.push_back(p.to_string());
  j["points"] = pts;
  j["max_residual"] = c.max_residual.to_string();
  j["seed"] = seed_text;
  return j;
}

void write_trace_csv(std::ostream& os, const OrbitTrace& trace) {
  os << "n,x_n,U_n,Uhat_n\n";
  for (std::size_t n = 0; n < trace.states.size(); ++n) {
    os << n << "," << trace.states[n].to_string() << ",";
    if (n < trace.residuals_U.size()) os << trace.residuals_U[n].to_string();
    os << ",";
    if (n < trace.residuals_Uhat.size()) os << trace.residuals_Uhat[n].to_string();
    os << "\n";
  }
}

int guarded(std::ostream& diag, const std::function<void()>& body) {
  try {
    body();
    return 0;
  } catch (const UsageError& e) {
    diag << "error: " << e.message << " (" << e.flag << ")\n";
    return 2;
  } catch (const std::exception& e) {
    diag << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace

int cmd_count(const CountOptions& opt, std::ostream& out, std::ostream& diag) {
  return guarded(diag, [&] {
    check_period(opt.period, 64, "cycle counting");
    out << count_cycles(opt.period).get_str() << "\n";
  });
}

int cmd_enumerate(const EnumerateOptions& opt, std::ostream& out, std::ostream& diag) {
  return guarded(diag, [&] {
    check_period(opt.period, 24, "exact enumeration");
    MapParams params = parse_h(opt.H);
    for (const auto& c : enumerate_cycles(params, opt.period)) {
      nlohmann::ordered_json j;
      j["T"] = c.T;
      j["symbols"] = c.symbols.symbols;
      j["sign"] = c.multiplier_sign;
      std::vector<std::string> pts;
      pts.reserve(c.points.size());
      for (const auto& p : c.points) pts.push_back(rational_to_string(p));
      j["points"] = pts;
      out << j.dump() << "\n";
    }
  });
}

int cmd_find(const FindOptions& opt, std::ostream& out, std::ostream& diag) {
  return guarded(diag, [&] {
    check_period(opt.period, 128, "the finder");
    MapParams params = parse_h(opt.H);
    const Regime regime = parse_regime(opt.regime);
    const int T = opt.period;

    mpq_class theta;
    if (opt.theta) {
      theta = parse_rational_flag(*opt.theta, "--theta");
    } else {
      std::string text = opt.offset.value_or(
          regime == Regime::PositiveMultiplier ? "0.4" : "-0.4");
      mpq_class c = parse_rational_flag(text, "--offset");
      if (::abs(c) >= 1) throw UsageError{"--offset", "offset |c| must be < 1"};
      theta = theta_from_offset(params, T, regime, RegimeOffset(c));
    }

    const ThetaInterval pos = theta_interval(params, T, Regime::PositiveMultiplier);
    const ThetaInterval neg = theta_interval(params, T, Regime::NegativeMultiplier);
    if (!pos.contains(theta) && !neg.contains(theta)) {
      if (!opt.force)
        throw UsageError{"--theta",
                         "theta " + rational_to_string(theta) +
                             " lies outside both admissible regimes; pass --force to "
                             "proceed anyway"};
      diag << "warning: theta " << rational_to_string(theta)
           << " outside both admissible regimes\n";
    }

    FinderOptions fopts;
    fopts.max_iters = opt.max_iters;
    if (opt.threshold)
      fopts.threshold = parse_rational_flag(*opt.threshold, "--threshold");
    fopts.range_lo = parse_rational_flag(opt.range_lo, "--range-lo");
    fopts.range_hi = parse_rational_flag(opt.range_hi, "--range-hi");
    if (opt.precision < 0) throw UsageError{"--precision", "precision must be positive"};

    const ControlConfig cfg(params, T, regime, theta);
    if (opt.seed_value) {
      mpq_class x0 = parse_rational_flag(*opt.seed_value, "--seed-value");
      SearchConfig search = [&] {
        try {
          return make_search_config(cfg, x0, opt.precision, fopts);
        } catch (const std::invalid_argument& e) {
          throw UsageError{"--precision", e.what()};
        }
      }();
      OrbitTrace trace = iterate_controlled(search);
      if (opt.trace_path) {
        std::ofstream tf(*opt.trace_path, std::ios::binary);
        if (!tf) throw UsageError{"--trace", "cannot open " + *opt.trace_path};
        write_trace_csv(tf, trace);
      }
      if (trace.verdict.kind == Verdict::Kind::ConvergedToCycle) {
        auto cycle = extract_cycle(trace, search);
        if (cycle) {
          cycle->seed = x0;
          out << cycle_json(*cycle, theta, regime, *opt.seed_value).dump() << "\n";
        } else {
          diag << "note: convergence flag raised but no divisor period closed the "
                  "tail\n";
        }
      } else if (trace.verdict.kind == Verdict::Kind::Diverged) {
        diag << "note: seed " << *opt.seed_value << " diverged at step "
             << trace.verdict.index << "\n";
      } else {
        diag << "note: seed " << *opt.seed_value << " did not settle within "
             << opt.max_iters << " iterations\n";
      }
    } else {
      if (opt.trace_path)
        throw UsageError{"--trace", "trace output needs --seed-value"};
      if (opt.grid < 2) throw UsageError{"--grid", "grid size must be >= 2"};
      std::vector<NumericCycle> cycles;
      try {
        cycles = grid_search(cfg, opt.grid, opt.precision, fopts);
      } catch (const std::invalid_argument& e) {
        throw UsageError{"--precision", e.what()};
      }
      for (const auto& c : cycles)
        out << cycle_json(c, theta, regime, rational_to_string(c.seed)).dump() << "\n";
    }
  });
}

int cmd_graph(const GraphOptions& opt, std::ostream& out, std::ostream& diag) {
  return guarded(diag, [&] {
    check_period(opt.period, 24, "graph data");
    MapParams params = parse_h(opt.H);
    if (opt.samples < 2) throw UsageError{"--samples", "need at least 2 samples"};
    if (opt.theta.empty()) throw UsageError{"--theta", "theta is required"};
    mpq_class theta = parse_rational_flag(opt.theta, "--theta");
    const int prec =
        opt.precision > 0 ? opt.precision : default_precision(params, opt.period);
    // regime irrelevant for plotting; config only carries theta and T
    const ControlConfig cfg(params, opt.period, Regime::PositiveMultiplier, theta);

    out << "x,f,f_T,zeta,F\n";
    for (long k = 0; k < opt.samples; ++k) {
      mpq_class x(k, opt.samples - 1);
      x.canonicalize();
      mpq_class fx = tent_eval(x, params);
      mpq_class ftx = tent_iterate(x, params, opt.period);
      mpq_class zx = zeta_eval(x, cfg);
      mpq_class capf = tent_eval(zx, params);
      out << decimal(x, prec) << "," << decimal(fx, prec) << "," << decimal(ftx, prec)
          << "," << decimal(zx, prec) << "," << decimal(capf, prec) << "\n";
    }
  });
}

int cmd_cantor(const CantorOptions& opt, std::ostream& out, std::ostream& diag) {
  return guarded(diag, [&] {
    if (opt.bins < 1) throw UsageError{"--bins", "need at least one bin"};
    CloudResult cloud;
    if (opt.mode == "cycles") {
      MapParams params = parse_h(opt.H);
      if (opt.source == "oracle") {
        check_period(opt.period, 24, "the oracle cloud");
        cloud = cycle_point_cloud(params, opt.period);
      } else if (opt.source == "finder") {
        check_period(opt.period, 128, "the finder cloud");
        mpq_class cp =
            parse_rational_flag(opt.offset_pos.value_or("0.4"), "--offset-pos");
        mpq_class cn =
            parse_rational_flag(opt.offset_neg.value_or("-0.4"), "--offset-neg");
        std::vector<ControlScheme> schemes{
            {Regime::PositiveMultiplier, RegimeOffset(cp)},
            {Regime::NegativeMultiplier, RegimeOffset(cn)}};
        cloud = cycle_point_cloud(params, opt.period, schemes, opt.grid, opt.precision);
      } else {
        throw UsageError{"--source", "expected 'oracle' or 'finder'"};
      }
      diag << "note: " << cloud.cycles << " cycles contributed "
           << cloud.points.size() << " points\n";
    } else if (opt.mode == "first-type") {
      if (opt.depth < 1 || opt.depth > 4096)
        throw UsageError{"--depth", "depth must be in 1..4096"};
      if (opt.count < 1) throw UsageError{"--count", "count must be >= 1"};
      cloud.points = sample_first_type(opt.depth, opt.count,
                                       static_cast<std::uint64_t>(opt.seed))
                         .points;
    } else {
      throw UsageError{"--mode", "expected 'cycles' or 'first-type'"};
    }

    HistogramSpec spec;
    spec.bins = opt.bins;
    Histogram h = histogram(cloud.points, spec);
    out << "bin_left,bin_right,count,density\n";
    for (int b = 0; b < opt.bins; ++b) {
      mpq_class left(b, opt.bins), right(b + 1, opt.bins);
      left.canonicalize();
      right.canonicalize();
      out << decimal(left, 12) << "," << decimal(right, 12) << ","
          << h.counts[static_cast<size_t>(b)] << "," << decimal(h.density(b), 12)
          << "\n";
    }
  });
}

int cmd_verify(const VerifyOptions& opt, std::istream& in, std::ostream& out,
               std::ostream& diag) {
  return guarded(diag, [&] {
    check_period(opt.period, 24, "verification");
    MapParams params = parse_h(opt.H);
    mpq_class tol = parse_rational_flag(opt.tolerance, "--tolerance");

    std::vector<NumericCycle> found;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      if (line.empty()) continue;
      nlohmann::json j;
      try {
        j = nlohmann::json::parse(line);
      } catch (const nlohmann::json::parse_error&) {
        throw UsageError{"--in", "line " + std::to_string(lineno) +
                                     " is not valid JSON"};
      }
      NumericCycle c;
      c.proper_period = j.value("tau", 0);
      c.target_period = j.value("T", opt.period);
      if (c.proper_period < 1)
        throw UsageError{"--in", "line " + std::to_string(lineno) + " lacks tau"};
      for (const auto& pt : j.at("points")) {
        auto q = parse_rational(pt.get<std::string>());
        if (!q)
          throw UsageError{"--in", "line " + std::to_string(lineno) +
                                       " has a malformed point"};
        c.points.push_back(HPReal::from_rational(*q, 64));
      }
      if (static_cast<int>(c.points.size()) != c.proper_period)
        throw UsageError{"--in", "line " + std::to_string(lineno) +
                                     " point count does not match tau"};
      found.push_back(std::move(c));
    }

    std::vector<ExactCycle> oracle;
    for (int tau = 1; tau <= opt.period; ++tau) {
      if (opt.period % tau != 0) continue;
      auto cycles = enumerate_cycles(params, tau);
      oracle.insert(oracle.end(), std::make_move_iterator(cycles.begin()),
                    std::make_move_iterator(cycles.end()));
    }

    VerifyReport report = verify_against_oracle(found, oracle, tol);
    nlohmann::ordered_json j;
    j["found"] = found.size();
    nlohmann::ordered_json entries = nlohmann::ordered_json::array();
    for (const auto& e : report.entries) {
      nlohmann::ordered_json je;
      je["found_index"] = e.found_index;
      je["tau"] = e.tau;
      if (e.oracle_index >= 0) {
        je["symbols"] = oracle[static_cast<size_t>(e.oracle_index)].symbols.symbols;
        je["deviation"] = decimal(e.deviation, 12);
      } else {
        je["symbols"] = nullptr;
      }
      je["subcycle"] = e.subcycle;
      je["ambiguous"] = e.ambiguous;
      entries.push_back(std::move(je));
    }
    j["entries"] = std::move(entries);
    nlohmann::ordered_json missing = nlohmann::ordered_json::array();
    for (std::size_t oi : report.missing_oracle) {
      nlohmann::ordered_json jm;
      jm["T"] = oracle[oi].T;
      jm["symbols"] = oracle[oi].symbols.symbols;
      missing.push_back(std::move(jm));
    }
    j["missing_oracle"] = std::move(missing);
    out << j.dump(2) << "\n";
    if (!report.all_found_matched())
      throw std::runtime_error("some found cycles did not match the oracle");
  });
}

}  // namespace tentctl::cli
