#pragma once

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "asymptotics.hpp"
#include "errors.hpp"
#include "fredholm.hpp"
#include "hankel_bench.hpp"
#include "jacobi_route.hpp"
#include "mc_lue.hpp"

namespace hardedge::cli {

inline constexpr const char* kVersion = "0.1.0";

using json = nlohmann::ordered_json;

/// Shortest form that parses back to the same double.
inline std::string fmt(double v) {
  char buf[40];
  for (int prec = 15; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof buf, "%.*g", prec, v);
    if (std::strtod(buf, nullptr) == v || v != v) break;
  }
  return buf;
}

/// Rows for CSV and the plain table, plus the JSON payload of one run.
struct Report {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  json inputs = json::object();
  json outputs;
};

namespace detail {

inline json to_json(const GapProbResult& r) {
  json params = json::object();
  for (const auto& [k, v] : r.params) params[k] = v;
  return json{{"alpha", r.alpha}, {"R", r.R},         {"method", method_name(r.method)},
              {"log_p", r.log_p}, {"p", r.p},         {"est_error", r.est_error},
              {"params", params}};
}

inline std::vector<std::string> gap_row(const GapProbResult& r) {
  return {fmt(r.alpha), fmt(r.R), method_name(r.method), fmt(r.log_p), fmt(r.p), fmt(r.est_error)};
}

inline const std::vector<std::string> kGapHeader{"alpha", "R", "method", "log_p", "p", "est_error"};

inline Precision parse_precision(const std::string& s) {
  if (s == "auto") return Precision::Auto;
  if (s == "double") return Precision::Double;
  if (s == "extended") return Precision::Extended;
  throw ParameterError("precision must be auto, double or extended");
}

struct GapOptions {
  double alpha = 0.0;
  double R = 1.0;
  std::string method = "nystrom";
  std::size_t nodes = 200;
  std::size_t n = 4000;
  std::size_t m_tail = 80;
  std::optional<double> beta;
  int kmax = 3;
  std::size_t series_nodes = 24;
  std::string precision = "auto";
};

inline void add_gap_options(CLI::App* c, GapOptions& o, bool with_R) {
  c->add_option("--alpha", o.alpha, "Bessel order alpha > -1")->capture_default_str();
  if (with_R) c->add_option("--R", o.R, "interval length R >= 0")->capture_default_str();
  c->add_option("--nodes", o.nodes, "Nystrom quadrature nodes")->capture_default_str();
  c->add_option("--n", o.n, "Jacobi route polynomial count")->capture_default_str();
  c->add_option("--m-tail", o.m_tail, "Jacobi route tail rule size")->capture_default_str();
  c->add_option("--beta", o.beta, "Jacobi exponent at -1 (default -alpha)");
  c->add_option("--kmax", o.kmax, "series terms for method=series")->capture_default_str();
  c->add_option("--series-nodes", o.series_nodes, "per-axis nodes for method=series")
      ->capture_default_str();
  c->add_option("--precision", o.precision, "auto|double|extended")->capture_default_str();
}

inline GapProbResult compute_gap(const GapOptions& o, const std::string& method, double R) {
  if (method == "nystrom") return gap_prob_nystrom(o.alpha, R, o.nodes, parse_precision(o.precision));
  if (method == "jacobi") return khat_det(o.alpha, o.beta.value_or(0.0 - o.alpha), o.n, R, o.m_tail);
  if (method == "asym") {
    GapProbResult r;
    r.alpha = o.alpha;
    r.R = R;
    r.method = GapMethod::Asymptotic;
    r.log_p = asym_log_p(o.alpha, R).total();
    r.p = std::exp(r.log_p);
    return r;
  }
  if (method == "series") {
    GapProbResult r;
    r.alpha = o.alpha;
    r.R = R;
    r.method = GapMethod::Series;
    r.params["kmax"] = o.kmax;
    r.params["nodes"] = static_cast<long long>(o.series_nodes);
    const double v = series_oracle(o.alpha, R, o.kmax, o.series_nodes);
    if (!(v > 0.0)) throw ConditioningError("truncated series is not positive");
    r.p = v;
    r.log_p = std::log(v);
    if (o.kmax > 0) r.est_error = std::fabs(v - series_oracle(o.alpha, R, o.kmax - 1, o.series_nodes));
    return r;
  }
  throw ParameterError("unknown method '" + method + "' (nystrom|jacobi|asym|series)");
}

inline json gap_inputs(const GapOptions& o) {
  json j{{"alpha", o.alpha}, {"nodes", o.nodes}, {"precision", o.precision}};
  j["n"] = o.n;
  j["m_tail"] = o.m_tail;
  j["beta"] = o.beta.value_or(0.0 - o.alpha);
  j["kmax"] = o.kmax;
  return j;
}

inline std::vector<std::string> split(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

template <class T>
std::vector<T> parse_list(const std::string& s) {
  std::vector<T> out;
  for (const auto& item : split(s)) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != item.size()) throw ParameterError("cannot parse list entry '" + item + "'");
    out.push_back(static_cast<T>(v));
  }
  return out;
}

inline BenchCase parse_case(const std::string& s) {
  for (auto c : {BenchCase::Thm31, BenchCase::Thm32, BenchCase::Prop51, BenchCase::Prop73,
                 BenchCase::Thm43, BenchCase::HankelTrivial})
    if (s == bench_case_name(c)) return c;
  throw ParameterError("unknown bench case '" + s + "'");
}

inline json to_json(const BenchReport& r) {
  json params = json::object();
  for (const auto& [k, v] : r.params) params[k] = v;
  return json{{"case", r.case_id}, {"lhs", r.lhs},       {"rhs", r.rhs},
              {"rel_err", r.rel_err}, {"params", params}, {"per_N", r.per_N}};
}

inline void write_table(std::ostream& os, const Report& rep) {
  std::vector<std::size_t> w(rep.header.size());
  for (std::size_t i = 0; i < w.size(); ++i) w[i] = rep.header[i].size();
  for (const auto& row : rep.rows)
    for (std::size_t i = 0; i < row.size() && i < w.size(); ++i) w[i] = std::max(w[i], row[i].size());
  auto line = [&](const std::vector<std::string>& r) {
    for (std::size_t i = 0; i < r.size(); ++i)
      os << (i ? "  " : "") << std::setw(int(w[i])) << std::left << r[i];
    os << '\n';
  };
  line(rep.header);
  for (const auto& row : rep.rows) line(row);
}

inline void write_csv(std::ostream& os, const Report& rep) {
  auto line = [&](const std::vector<std::string>& r) {
    for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << r[i];
    os << '\n';
  };
  line(rep.header);
  for (const auto& row : rep.rows) line(row);
}

}  // namespace detail

/// Parses argv, runs one subcommand and writes its result. Exit status: 0 on
/// success, 1 for usage, domain or parameter errors, 2 for numerical breakdown.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  using namespace detail;
  CLI::App app{"Hard-edge gap probabilities of the Bessel kernel", "hardedge"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  bool as_json = false, as_csv = false;
  std::string out_file;
  auto common = [&](CLI::App* c) {
    auto* j = c->add_flag("--json", as_json, "emit one JSON object");
    auto* v = c->add_flag("--csv", as_csv, "emit CSV");
    j->excludes(v);
    c->add_option("--out", out_file, "write output to FILE instead of stdout");
  };

  std::function<Report()> job;

  // gap
  GapOptions gap;
  auto* c_gap = app.add_subcommand("gap", "log P(R) by one method");
  add_gap_options(c_gap, gap, true);
  c_gap->add_option("--method", gap.method, "nystrom|jacobi|asym|series")->capture_default_str();
  common(c_gap);
  c_gap->callback([&] {
    job = [&] {
      Report rep;
      rep.header = kGapHeader;
      rep.inputs = gap_inputs(gap);
      rep.inputs["R"] = gap.R;
      rep.inputs["method"] = gap.method;
      const auto r = compute_gap(gap, gap.method, gap.R);
      rep.rows.push_back(gap_row(r));
      rep.outputs = to_json(r);
      return rep;
    };
  });

  // scan
  GapOptions scan;
  std::string methods = "nystrom", r_list;
  double r_min = 0.5, r_max = 8.0;
  std::size_t r_steps = 16;
  auto* c_scan = app.add_subcommand("scan", "log P over an R grid for several methods");
  add_gap_options(c_scan, scan, false);
  c_scan->add_option("--methods", methods, "comma-separated methods")->capture_default_str();
  c_scan->add_option("--R-list", r_list, "comma-separated R values (overrides the range)");
  c_scan->add_option("--R-min", r_min)->capture_default_str();
  c_scan->add_option("--R-max", r_max)->capture_default_str();
  c_scan->add_option("--R-steps", r_steps, "number of grid points")->capture_default_str();
  common(c_scan);
  c_scan->callback([&] {
    job = [&] {
      std::vector<double> grid;
      if (!r_list.empty()) {
        grid = parse_list<double>(r_list);
      } else {
        hardedge::detail::require<ParameterError>(r_steps >= 1, "R-steps must be positive");
        for (std::size_t i = 0; i < r_steps; ++i)
          grid.push_back(r_steps == 1 ? r_min : r_min + (r_max - r_min) * double(i) / double(r_steps - 1));
      }
      const auto ms = split(methods);
      hardedge::detail::require<ParameterError>(!ms.empty(), "no methods given");
      Report rep;
      rep.header = kGapHeader;
      rep.inputs = gap_inputs(scan);
      rep.inputs["R_grid"] = grid;
      rep.inputs["methods"] = ms;
      rep.outputs = json::array();
      for (double R : grid)
        for (const auto& m : ms) {
          const auto r = compute_gap(scan, m, R);
          rep.rows.push_back(gap_row(r));
          rep.outputs.push_back(to_json(r));
        }
      return rep;
    };
  });

  // sigma
  double s_alpha = 0.0, s_min = 4.0, s_max = 100.0;
  std::size_t s_points = 25, s_nodes = 120;
  std::string s_grid = "chebyshev", s_prec = "auto";
  auto* c_sig = app.add_subcommand("sigma", "sigma(s) samples with the Painleve residual");
  c_sig->add_option("--alpha", s_alpha)->capture_default_str();
  c_sig->add_option("--s-min", s_min)->capture_default_str();
  c_sig->add_option("--s-max", s_max)->capture_default_str();
  c_sig->add_option("--points", s_points, "at least 7")->capture_default_str();
  c_sig->add_option("--grid", s_grid, "chebyshev|linear")->capture_default_str();
  c_sig->add_option("--nodes", s_nodes)->capture_default_str();
  c_sig->add_option("--precision", s_prec, "auto|double|extended")->capture_default_str();
  common(c_sig);
  c_sig->callback([&] {
    job = [&] {
      hardedge::detail::require<ParameterError>(s_points >= 7, "sigma needs at least 7 points");
      hardedge::detail::require<DomainError>(s_min > 0.0 && s_max > s_min, "need 0 < s-min < s-max");
      std::vector<double> grid;
      for (std::size_t i = 0; i < s_points; ++i) {
        if (s_grid == "chebyshev")
          grid.push_back(0.5 * (s_min + s_max) -
                         0.5 * (s_max - s_min) * std::cos(std::numbers::pi * (i + 0.5) / double(s_points)));
        else if (s_grid == "linear")
          grid.push_back(s_min + (s_max - s_min) * double(i) / double(s_points - 1));
        else
          throw ParameterError("grid must be chebyshev or linear");
      }
      const auto smp = sigma_samples(s_alpha, grid, s_nodes, parse_precision(s_prec));
      Report rep;
      rep.header = {"s", "sigma", "sigma_p", "sigma_pp", "piii_residual"};
      rep.inputs = json{{"alpha", s_alpha}, {"s_min", s_min},   {"s_max", s_max}, {"points", s_points},
                        {"grid", s_grid},   {"nodes", s_nodes}, {"precision", s_prec}};
      rep.outputs = json::array();
      for (const auto& x : smp) {
        const double res = piii_residual(x, s_alpha);
        rep.rows.push_back({fmt(x.s), fmt(x.sigma), fmt(x.sigma_p), fmt(x.sigma_pp), fmt(res)});
        rep.outputs.push_back(json{{"s", x.s},
                                   {"sigma", x.sigma},
                                   {"sigma_p", x.sigma_p},
                                   {"sigma_pp", x.sigma_pp},
                                   {"piii_residual", res}});
      }
      return rep;
    };
  });

  // bench
  std::string b_case = "prop73", b_nlist = "", b_c = "0.3";
  BenchParams bp;
  long b_nmax = 0;
  std::string b_Nlist;
  auto* c_b = app.add_subcommand("bench", "determinant identity checks");
  c_b->add_option("--case", b_case, "thm31|thm32|prop51|prop73|thm43|hankel-trivial")->capture_default_str();
  c_b->add_option("--n", bp.n, "section size")->capture_default_str();
  c_b->add_option("--n-max", b_nmax, "report every n = 1..n-max (thm31, thm32, hankel-trivial)");
  c_b->add_option("--n-list", b_nlist, "comma-separated n values (thm43)");
  c_b->add_option("--N", bp.N, "truncation size")->capture_default_str();
  c_b->add_option("--N-list", b_Nlist, "comma-separated truncation sizes (thm32, thm43)");
  c_b->add_option("--alpha", bp.alpha)->capture_default_str();
  c_b->add_option("--beta", bp.beta)->capture_default_str();
  c_b->add_option("--r", bp.r)->capture_default_str();
  c_b->add_option("--R", bp.R)->capture_default_str();
  c_b->add_option("--c", b_c, "comma-separated coefficients of log c_+ (empty for none)")
      ->capture_default_str();
  c_b->add_option("--nodes", bp.nystrom_nodes, "Nystrom nodes for thm43")->capture_default_str();
  common(c_b);
  c_b->callback([&] {
    job = [&] {
      const BenchCase which = parse_case(b_case);
      bp.cplus = parse_list<double>(b_c);
      if (!b_Nlist.empty()) bp.N_list = parse_list<long>(b_Nlist);
      std::vector<BenchReport> reps;
      if (which == BenchCase::Thm43 && !b_nlist.empty()) {
        reps = thm43_ratios(bp.alpha, bp.R, parse_list<long>(b_nlist), bp.N_list, bp.nystrom_nodes);
      } else if (b_nmax > 0) {
        reps = identity_check_range(which, bp, b_nmax);
      } else {
        reps.push_back(identity_check(which, bp));
      }
      Report rep;
      rep.header = {"case", "lhs", "rhs", "rel_err"};
      rep.inputs = json{{"case", b_case}, {"n", bp.n}, {"N", bp.N}, {"N_list", bp.N_list},
                        {"alpha", bp.alpha}, {"beta", bp.beta}, {"r", bp.r}, {"R", bp.R},
                        {"c", bp.cplus}};
      if (b_nmax > 0) rep.inputs["n_max"] = b_nmax;
      rep.outputs = json::array();
      for (const auto& r : reps) {
        std::string id = r.case_id;
        if (reps.size() > 1 && r.params.count("n")) id += ":n=" + std::to_string(long(r.params.at("n")));
        rep.rows.push_back({id, fmt(r.lhs), fmt(r.rhs), fmt(r.rel_err)});
        rep.outputs.push_back(to_json(r));
      }
      if (reps.size() == 1) rep.outputs = rep.outputs[0];
      return rep;
    };
  });

  // asym
  double a_alpha = 0.0, a_R = 10.0;
  bool tau_debug = false;
  std::size_t a_nodes = 200;
  auto* c_a = app.add_subcommand("asym", "large-R terms and the constant-assembly check");
  c_a->add_option("--alpha", a_alpha)->capture_default_str();
  c_a->add_option("--R", a_R)->capture_default_str();
  c_a->add_flag("--tau-debug", tau_debug,
                "also compare both sign branches of the sigma expansion at s = R^2 with Nystrom");
  c_a->add_option("--nodes", a_nodes, "Nystrom nodes for --tau-debug")->capture_default_str();
  common(c_a);
  c_a->callback([&] {
    job = [&] {
      const auto t = asym_log_p(a_alpha, a_R);
      const double s8 = s8_consistency(a_alpha, a_R);
      Report rep;
      rep.header = {"alpha", "R", "quadratic", "linear", "log_term", "constant", "total", "s8_consistency"};
      rep.rows.push_back({fmt(a_alpha), fmt(a_R), fmt(t.quadratic), fmt(t.linear), fmt(t.log_term),
                          fmt(t.constant), fmt(t.total()), fmt(s8)});
      rep.inputs = json{{"alpha", a_alpha}, {"R", a_R}, {"tau_debug", tau_debug}};
      rep.outputs = json{{"quadratic", t.quadratic}, {"linear", t.linear},   {"log_term", t.log_term},
                         {"constant", t.constant},   {"total", t.total()}, {"tau", t.tau},
                         {"s8_consistency", s8}};
      if (tau_debug) {
        const double s = a_R * a_R;
        std::vector<double> g;
        for (int i = -3; i <= 3; ++i) g.push_back(s + 0.05 * s * i / 3.0);
        const double num = sigma_samples(a_alpha, g, a_nodes)[3].sigma;
        const double plus = sigma_expansion(a_alpha, s, 1), minus = sigma_expansion(a_alpha, s, -1);
        rep.outputs["sigma_check"] = json{{"s", s},
                                          {"sigma_nystrom", num},
                                          {"tau_plus", plus},
                                          {"tau_minus", minus},
                                          {"rel_gap_tau_plus", std::fabs(num - plus) / num},
                                          {"rel_gap_tau_minus", std::fabs(num - minus) / num}};
        rep.header.insert(rep.header.end(), {"sigma_nystrom", "rel_gap_tau_plus", "rel_gap_tau_minus"});
        rep.rows[0].insert(rep.rows[0].end(),
                           {fmt(num), fmt(std::fabs(num - plus) / num), fmt(std::fabs(num - minus) / num)});
      }
      return rep;
    };
  });

  // mc
  McConfig mc;
  std::size_t mc_nodes = 100;
  auto* c_mc = app.add_subcommand("mc", "Monte Carlo LUE estimate against Nystrom");
  c_mc->add_option("--N", mc.N, "matrix size")->capture_default_str();
  c_mc->add_option("--alpha", mc.alpha)->capture_default_str();
  c_mc->add_option("--trials", mc.trials)->capture_default_str();
  c_mc->add_option("--R", mc.R)->capture_default_str();
  c_mc->add_option("--seed", mc.seed)->capture_default_str();
  c_mc->add_option("--nodes", mc_nodes, "Nystrom nodes for the reference")->capture_default_str();
  common(c_mc);
  c_mc->callback([&] {
    job = [&] {
      const auto e = gap_prob_mc(mc);
      const double ref = gap_prob_nystrom(mc.alpha, mc.R, mc_nodes).p;
      Report rep;
      rep.header = {"N", "alpha", "R", "trials", "seed", "p_hat", "std_err", "p_nystrom"};
      rep.rows.push_back({std::to_string(mc.N), fmt(mc.alpha), fmt(mc.R), std::to_string(mc.trials),
                          std::to_string(mc.seed), fmt(e.p_hat), fmt(e.std_err), fmt(ref)});
      rep.inputs = json{{"N", mc.N},         {"alpha", mc.alpha}, {"trials", mc.trials},
                        {"R", mc.R},         {"seed", mc.seed},   {"nodes", mc_nodes}};
      rep.outputs = json{{"p_hat", e.p_hat},
                         {"std_err", e.std_err},
                         {"successes", e.successes},
                         {"p_nystrom", ref},
                         {"abs_diff", std::fabs(e.p_hat - ref)}};
      return rep;
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << '\n';
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return 1;
  }

  std::string command;
  for (int i = 0; i < argc; ++i) command += (i ? " " : "") + std::string(argv[i]);

  try {
    const auto t0 = std::chrono::steady_clock::now();
    const Report rep = job();
    const double ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    std::ofstream file;
    std::ostream* os = &out;
    if (!out_file.empty()) {
      file.open(out_file);
      if (!file) throw ParameterError("cannot open output file '" + out_file + "'");
      os = &file;
    }
    if (as_json) {
      json rec{{"command", command},
               {"inputs", rep.inputs},
               {"outputs", rep.outputs},
               {"wall_time_ms", ms},
               {"version", kVersion}};
      *os << rec.dump(2) << '\n';
    } else if (as_csv) {
      write_csv(*os, rep);
    } else {
      write_table(*os, rep);
    }
    return 0;
  } catch (const NumericalBreakdown& e) {
    err << "numerical breakdown: " << e.what() << '\n';
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace hardedge::cli
