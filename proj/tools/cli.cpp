#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "roycrit/counterexample.hpp"
#include "roycrit/cumulants.hpp"
#include "roycrit/edgeworth.hpp"
#include "roycrit/errors.hpp"
#include "roycrit/montecarlo.hpp"
#include "roycrit/roy.hpp"
#include "roycrit/version.hpp"

namespace roycrit_cli {

namespace {

using nlohmann::ordered_json;
using namespace roycrit;

// Problems with the input file, cells, or flag combinations (exit 2).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string fmt4(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.4g", v);
  return buf;
}

ordered_json json_num(double v) {
  if (!std::isfinite(v)) return nullptr;
  return v;
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw InputError("cannot open --out file: " + out_path);
  out << text;
}

// Pads every cell to its column width; first row is the header.
std::string render_columns(const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> width;
  for (const auto& row : rows) {
    if (width.size() < row.size()) width.resize(row.size(), 0);
    for (std::size_t i = 0; i < row.size(); ++i) {
      width[i] = std::max(width[i], row[i].size());
    }
  }
  std::ostringstream out;
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << "  ";
      out << row[i];
      if (i + 1 < row.size()) {
        out << std::string(width[i] - row[i].size(), ' ');
      }
    }
    out << '\n';
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// returns-table input

struct ReturnsTable {
  std::vector<std::string> names;
  std::vector<std::vector<double>> columns;  // one per asset
  std::size_t rows = 0;
};

std::vector<std::string> split_line(const std::string& line, char delim) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, delim)) cells.push_back(cell);
  if (!line.empty() && line.back() == delim) cells.emplace_back();
  return cells;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

ReturnsTable read_returns_table(const std::string& path,
                                const std::string& delimiter_flag) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read input file: " + path);

  std::string header;
  if (!std::getline(in, header)) {
    throw InputError(path + ": empty file, expected a header row");
  }

  char delim;
  if (delimiter_flag.empty()) {
    delim = header.find('\t') != std::string::npos ? '\t' : ',';
  } else if (delimiter_flag == "," || delimiter_flag == "comma") {
    delim = ',';
  } else if (delimiter_flag == "\t" || delimiter_flag == "tab") {
    delim = '\t';
  } else {
    throw InputError("unsupported --delimiter '" + delimiter_flag +
                     "' (use comma or tab)");
  }

  ReturnsTable table;
  for (const auto& cell : split_line(header, delim)) {
    const std::string name = trim(cell);
    if (name.empty()) {
      throw InputError(path + ": header row has an empty asset name");
    }
    table.names.push_back(name);
  }
  table.columns.resize(table.names.size());

  std::string line;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    const auto cells = split_line(line, delim);
    if (cells.size() != table.names.size()) {
      throw InputError(path + ": line " + std::to_string(lineno) + " has " +
                       std::to_string(cells.size()) + " cells, expected " +
                       std::to_string(table.names.size()));
    }
    for (std::size_t c = 0; c < cells.size(); ++c) {
      const std::string cell = trim(cells[c]);
      char* end = nullptr;
      const double v = std::strtod(cell.c_str(), &end);
      if (cell.empty() || end != cell.c_str() + cell.size() ||
          !std::isfinite(v)) {
        throw InputError(path + ": line " + std::to_string(lineno) +
                         ", column " + std::to_string(c + 1) + " (" +
                         table.names[c] + "): not a finite number: '" + cell +
                         "'");
      }
      table.columns[c].push_back(v);
    }
    ++table.rows;
  }
  if (table.rows == 0) {
    throw InputError(path + ": no data rows after the header");
  }
  return table;
}

// ---------------------------------------------------------------------------
// method list

struct MethodSpec {
  std::string label;
  ScoreMethod method;
  int order = 0;  // edgeworth order / cf-newton terms
};

MethodSpec parse_method(const std::string& text) {
  if (text == "sharpe") return {text, ScoreMethod::sharpe};
  if (text == "sr3") return {text, ScoreMethod::sr3};
  if (text == "exact-empirical") return {text, ScoreMethod::exact};
  if (text == "cf-quadratic") return {text, ScoreMethod::cf_quadratic};
  if (text.rfind("edgeworth:", 0) == 0) {
    const std::string k = text.substr(10);
    if (k.size() == 1 && k[0] >= '0' && k[0] <= '3') {
      return {text, ScoreMethod::edgeworth_invert, k[0] - '0'};
    }
    throw InputError("edgeworth order must be 0..3, got '" + text + "'");
  }
  if (text.rfind("cf-newton:", 0) == 0) {
    const std::string k = text.substr(10);
    if (k.size() == 1 && k[0] >= '2' && k[0] <= '4') {
      return {text, ScoreMethod::cf_newton, k[0] - '0'};
    }
    throw InputError("cf-newton terms must be 2..4, got '" + text + "'");
  }
  throw InputError(
      "unknown method '" + text +
      "' (use sharpe|sr3|exact-empirical|edgeworth:K|cf-newton:K|"
      "cf-quadratic)");
}

int cumulant_order_needed(const std::vector<MethodSpec>& methods) {
  int order = 4;  // always estimate skewness and excess kurtosis for reports
  for (const auto& m : methods) {
    switch (m.method) {
      case ScoreMethod::edgeworth_invert:
        order = std::max(order, m.order + 2);
        break;
      case ScoreMethod::cf_newton:
        order = std::max(order, m.order + 1);
        break;
      default:
        break;
    }
  }
  return order;
}

// ---------------------------------------------------------------------------
// rank

struct RankOptions {
  std::string input;
  double rfr = 0.0;
  double horizon = 1.0;
  std::vector<std::string> methods{};
  double b3 = 1.0;
  std::string output = "table";
  std::string out_path;
  std::string delimiter;
  std::string period_label = "period";
  std::optional<std::int64_t> seed;
};

struct AssetReport {
  std::string name;
  double mean = 0.0;
  double volatility = 0.0;
  std::vector<double> zetas;
  std::vector<RiskScore> scores;
  SkewPreference pref;
  std::optional<double> chebyshev;
};

RiskScore compute_score(const MethodSpec& m, const Cumulants& c,
                        const Horizon& h, double b3,
                        const std::vector<double>& column,
                        std::uint64_t sample_tag) {
  switch (m.method) {
    case ScoreMethod::sharpe:
      return sharpe(c, h);
    case ScoreMethod::sr3:
      return sr3_skew_adjusted(c, h, b3);
    case ScoreMethod::exact: {
      const EmpiricalSample sample(column, sample_tag);
      return roy_exact(empirical_cdf_oracle(sample), h);
    }
    case ScoreMethod::edgeworth_invert:
      return roy_edgeworth_invert(c, h, m.order);
    case ScoreMethod::cf_newton:
      return roy_cf_newton(c, h, m.order);
    case ScoreMethod::cf_quadratic:
      return roy_cf_quadratic(c, h);
  }
  throw std::logic_error("unhandled method");
}

ordered_json rank_machine_report(const RankOptions& opt,
                                 const std::vector<MethodSpec>& methods,
                                 const std::vector<AssetReport>& assets) {
  ordered_json doc;
  doc["tool"] = "roycrit";
  doc["version"] = kVersion;
  doc["command"] = "rank";
  doc["input"] = opt.input;
  doc["period_label"] = opt.period_label;
  doc["horizon"] = opt.horizon;
  doc["disaster_rate"] = opt.rfr;
  ordered_json method_names = ordered_json::array();
  for (const auto& m : methods) method_names.push_back(m.label);
  doc["methods"] = method_names;
  doc["b3"] = opt.b3;
  doc["seed"] = opt.seed ? ordered_json(*opt.seed) : ordered_json(nullptr);
  doc["assets"] = ordered_json::array();
  for (const auto& a : assets) {
    ordered_json ja;
    ja["name"] = a.name;
    ordered_json jc;
    jc["mean"] = a.mean;
    jc["volatility"] = a.volatility;
    for (std::size_t i = 0; i < a.zetas.size(); ++i) {
      jc["zeta" + std::to_string(i + 3)] = a.zetas[i];
    }
    ja["cumulants"] = jc;
    ja["scores"] = ordered_json::array();
    for (const auto& s : a.scores) {
      ordered_json js;
      js["method"] = s.method_label();
      js["value"] = json_num(s.value);
      js["converged"] = s.converged;
      js["saturated"] = s.saturated;
      js["iterations"] = s.iterations;
      js["residual"] = s.residual;
      js["root_branch"] = s.root_branch;
      ja["scores"].push_back(js);
    }
    ja["skew_preference"] = a.pref.sign;
    ja["crossover_horizon"] = a.pref.crossover_n
                                  ? ordered_json(*a.pref.crossover_n)
                                  : ordered_json(nullptr);
    ja["chebyshev_bound"] =
        a.chebyshev ? ordered_json(*a.chebyshev) : ordered_json(nullptr);
    doc["assets"].push_back(ja);
  }
  return doc;
}

std::string rank_table_report(const RankOptions& opt,
                              const std::vector<MethodSpec>& methods,
                              const std::vector<AssetReport>& assets) {
  std::ostringstream out;
  out << "# roycrit " << kVersion << " rank  horizon=" << fmt4(opt.horizon)
      << " rfr=" << fmt4(opt.rfr) << " b3=" << fmt4(opt.b3)
      << " period=" << opt.period_label << '\n';
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> header{"asset", "mean", "volatility", "zeta3",
                                  "zeta4"};
  for (const auto& m : methods) header.push_back(m.label);
  header.insert(header.end(), {"skew-pref", "n*", "cheb-bound"});
  rows.push_back(header);
  for (const auto& a : assets) {
    std::vector<std::string> row{a.name, fmt4(a.mean), fmt4(a.volatility),
                                 !a.zetas.empty() ? fmt4(a.zetas[0]) : "-",
                                 a.zetas.size() > 1 ? fmt4(a.zetas[1]) : "-"};
    for (const auto& s : a.scores) row.push_back(fmt4(s.value));
    row.push_back(a.pref.sign > 0 ? "+" : (a.pref.sign < 0 ? "-" : "0"));
    row.push_back(a.pref.crossover_n ? fmt4(*a.pref.crossover_n) : "-");
    row.push_back(a.chebyshev ? fmt4(*a.chebyshev) : "-");
    rows.push_back(row);
  }
  out << render_columns(rows);
  return out.str();
}

int run_rank(const RankOptions& opt) {
  std::vector<MethodSpec> methods;
  for (const auto& text :
       opt.methods.empty() ? std::vector<std::string>{"cf-quadratic"}
                           : opt.methods) {
    methods.push_back(parse_method(text));
  }
  for (const auto& m : methods) {
    if (m.method == ScoreMethod::exact && opt.horizon != 1.0) {
      throw InputError(
          "exact-empirical scores the per-period empirical CDF and needs "
          "--horizon 1; the distribution of a multi-period mean is not "
          "identified from marginal rows (use cf-newton:K, cf-quadratic or "
          "edgeworth:K instead)");
    }
  }

  const ReturnsTable table = read_returns_table(opt.input, opt.delimiter);
  const int est_order = cumulant_order_needed(methods);
  const std::size_t min_rows =
      std::max<std::size_t>(8, static_cast<std::size_t>(est_order) + 1);
  if (table.rows < min_rows) {
    throw InputError(opt.input + ": " + std::to_string(table.rows) +
                     " data rows, need at least " + std::to_string(min_rows) +
                     " for cumulant estimation");
  }
  const Horizon h(opt.horizon, opt.rfr);

  std::vector<AssetReport> assets;
  for (std::size_t i = 0; i < table.names.size(); ++i) {
    const auto& column = table.columns[i];
    const double first = column.front();
    if (std::all_of(column.begin(), column.end(),
                    [first](double v) { return v == first; })) {
      throw InputError(opt.input + ": column " + std::to_string(i + 1) + " (" +
                       table.names[i] + ") is constant; zero variance");
    }
    const Cumulants est = estimate_cumulants(column, est_order);
    AssetReport a;
    a.name = table.names[i];
    a.mean = est.mean();
    a.volatility = est.volatility();
    a.zetas = est.zetas();
    for (const auto& m : methods) {
      a.scores.push_back(compute_score(m, est, h, opt.b3, column,
                                       opt.seed ? static_cast<std::uint64_t>(
                                                      *opt.seed)
                                                : 0));
    }
    a.pref = skew_preference(est, h);
    const double s = snr(est, h);
    if (s > 0.0) a.chebyshev = chebyshev_loss_bound(s);
    assets.push_back(std::move(a));
  }

  // Sort by the first requested method, descending; name breaks ties.
  std::stable_sort(assets.begin(), assets.end(),
                   [](const AssetReport& x, const AssetReport& y) {
                     const double vx = x.scores[0].value;
                     const double vy = y.scores[0].value;
                     const bool nx = std::isnan(vx);
                     const bool ny = std::isnan(vy);
                     if (nx != ny) return ny;
                     if (!nx && vx != vy) return vx > vy;
                     return x.name < y.name;
                   });

  if (opt.output == "machine") {
    emit(rank_machine_report(opt, methods, assets).dump(2) + "\n",
         opt.out_path);
  } else {
    emit(rank_table_report(opt, methods, assets), opt.out_path);
  }
  return 0;
}

// ---------------------------------------------------------------------------
// counterexample

struct CounterexampleOptions {
  double mu = 0.001;
  double sigma = 0.01;
  double p = 1e-4;
  double bonus = 0.25;
  std::uint64_t paths = 1000000;
  std::uint64_t seed = 1;
  std::string output = "table";
  std::string out_path;
};

int run_counterexample(const CounterexampleOptions& opt) {
  const BonusAsset asset(opt.mu, opt.sigma, opt.p, opt.bonus);
  if (!(bonus_variance(asset) > 0.0)) {
    throw std::invalid_argument(
        "the mixture variance sigma^2 - 2 mu p B - p^2 B^2 + p B^2 must be "
        "positive");
  }

  const double base_sr = opt.mu / opt.sigma;
  const double bonus_sr = bonus_sharpe(asset, 0.0);
  const double b_min = min_reversal_bonus(opt.mu, opt.sigma);
  const double p_max = reversal_p_bound(opt.mu, opt.sigma, opt.bonus);

  std::vector<std::string> notes;
  if (opt.p == 0.0) {
    notes.push_back("degenerate: assets identical (p = 0)");
  }
  if (p_max <= 0.0) {
    notes.push_back("no reversing p exists at this bonus (bound " +
                    fmt4(p_max) + " <= 0; needs B >= " + fmt4(b_min) + ")");
  } else if (opt.p > p_max) {
    notes.push_back("p exceeds the reversal bound " + fmt4(p_max) +
                    "; Sharpe reversal not guaranteed");
  }

  const DominanceReport report = verify_dominance_and_reversal(asset);

  std::optional<FosdVerdict> sim_verdict;
  double sim_slack = 0.0;
  if (opt.paths > 0 && opt.p > 0.0) {
    const GeneratorSpec base_spec{NormalSpec{opt.mu, opt.sigma}, 1};
    const GeneratorSpec bonus_spec{
        BonusMixtureSpec{opt.mu, opt.sigma, opt.p, opt.bonus}, 1};
    const EmpiricalSample base = simulate(base_spec, opt.paths, opt.seed);
    const EmpiricalSample mixture = simulate(bonus_spec, opt.paths, opt.seed);
    sim_slack = 4.0 * std::sqrt(1.0 / (4.0 * static_cast<double>(opt.paths)));
    sim_verdict = fosd_check(mixture, base, sim_slack);
  }

  if (opt.output == "machine") {
    ordered_json doc;
    doc["tool"] = "roycrit";
    doc["version"] = kVersion;
    doc["command"] = "counterexample";
    doc["mu"] = opt.mu;
    doc["sigma"] = opt.sigma;
    doc["p"] = opt.p;
    doc["bonus"] = opt.bonus;
    doc["base_sharpe"] = base_sr;
    doc["bonus_sharpe"] = bonus_sr;
    doc["sharpe_reversed"] = report.sharpe_reversed;
    doc["min_reversal_bonus"] = b_min;
    doc["reversal_p_bound"] = p_max;
    doc["degenerate"] = report.degenerate;
    doc["analytic"] = {{"fosd_holds", report.fosd_holds},
                       {"max_cdf_gap", report.max_cdf_gap},
                       {"roy_consistent", report.roy_consistent},
                       {"probe_r0", report.probe_r0},
                       {"base_score", report.base_score},
                       {"bonus_score", report.bonus_score}};
    if (sim_verdict) {
      doc["simulation"] = {{"paths", opt.paths},
                           {"seed", opt.seed},
                           {"rng", rng_algorithm()},
                           {"slack", sim_slack},
                           {"fosd_verdict", to_string(*sim_verdict)}};
    } else {
      doc["simulation"] = nullptr;
    }
    doc["notes"] = notes;
    emit(doc.dump(2) + "\n", opt.out_path);
  } else {
    std::ostringstream out;
    out << "# roycrit " << kVersion << " counterexample\n";
    std::vector<std::vector<std::string>> kv{
        {"mu", fmt4(opt.mu)},
        {"sigma", fmt4(opt.sigma)},
        {"p", fmt4(opt.p)},
        {"bonus", fmt4(opt.bonus)},
        {"base_sharpe", fmt4(base_sr)},
        {"bonus_sharpe", fmt4(bonus_sr)},
        {"sharpe_reversed", report.sharpe_reversed ? "yes" : "no"},
        {"min_reversal_bonus", fmt4(b_min)},
        {"reversal_p_bound", fmt4(p_max)},
        {"analytic_fosd", report.degenerate
                              ? "tie (identical distributions)"
                              : (report.fosd_holds ? "bonus dominates base"
                                                   : "VIOLATED")},
        {"roy_consistent", report.roy_consistent ? "yes" : "no"},
    };
    if (sim_verdict) {
      kv.push_back({"simulated_fosd",
                    to_string(*sim_verdict) + "  (paths=" +
                        std::to_string(opt.paths) +
                        " seed=" + std::to_string(opt.seed) +
                        " slack=" + fmt4(sim_slack) +
                        " rng=" + rng_algorithm() + ")"});
    }
    out << render_columns(kv);
    for (const auto& note : notes) out << "note: " << note << '\n';
    if (!report.degenerate) {
      out << '\n';
      std::vector<std::vector<std::string>> probes{
          {"probe_r0", "base_score", "bonus_score"}};
      for (std::size_t i = 0; i < report.probe_r0.size(); ++i) {
        probes.push_back({fmt4(report.probe_r0[i]),
                          fmt4(report.base_score[i]),
                          fmt4(report.bonus_score[i])});
      }
      out << render_columns(probes);
    }
    emit(out.str(), opt.out_path);
  }
  return 0;
}

// ---------------------------------------------------------------------------
// term structure

struct TermOptions {
  std::optional<double> snr_flag;
  std::optional<double> mu;
  std::optional<double> sigma;
  double rfr = 0.0;
  double zeta3 = 0.0;
  std::string n_grid;
  std::string output = "table";
  std::string out_path;
};

std::vector<double> parse_grid(const std::string& text) {
  std::vector<double> grid;
  std::istringstream in(text);
  std::string cell;
  while (std::getline(in, cell, ',')) {
    cell = trim(cell);
    char* end = nullptr;
    const double v = std::strtod(cell.c_str(), &end);
    if (cell.empty() || end != cell.c_str() + cell.size() ||
        !std::isfinite(v) || v <= 0.0) {
      throw InputError("--n-grid entries must be positive reals, got '" +
                       cell + "'");
    }
    grid.push_back(v);
  }
  if (grid.empty()) throw InputError("--n-grid is empty");
  return grid;
}

int run_term(const TermOptions& opt) {
  double snr0;
  if (opt.snr_flag) {
    if (opt.mu || opt.sigma) {
      throw InputError("give either --snr or the (--mu, --sigma) pair");
    }
    snr0 = *opt.snr_flag;
  } else if (opt.mu && opt.sigma) {
    if (!(*opt.sigma > 0.0)) throw InputError("--sigma must be positive");
    snr0 = (*opt.mu - opt.rfr) / *opt.sigma;
  } else {
    throw InputError("term needs --snr or both --mu and --sigma");
  }
  const std::vector<double> grid = parse_grid(opt.n_grid);

  // Scale invariance: only snr and zeta_3 enter the truncation, so the pair
  // (mean=snr, volatility=1, r0=0) represents every equivalent input.
  const Cumulants c(snr0, 1.0, {opt.zeta3});
  std::optional<double> crossover;
  if (snr0 > 0.0) crossover = 1.0 / (snr0 * snr0);

  struct Row {
    double n;
    double psi;
    int sign;
  };
  std::vector<Row> rows;
  for (double n : grid) {
    const Horizon h(n, 0.0);
    rows.push_back(
        {n, roy_cf_quadratic(c, h).value, skew_preference(c, h).sign});
  }

  if (opt.output == "machine") {
    ordered_json doc;
    doc["tool"] = "roycrit";
    doc["version"] = kVersion;
    doc["command"] = "term";
    doc["snr"] = snr0;
    doc["zeta3"] = opt.zeta3;
    doc["crossover_horizon"] =
        crossover ? ordered_json(*crossover) : ordered_json(nullptr);
    doc["rows"] = ordered_json::array();
    for (const auto& r : rows) {
      doc["rows"].push_back({{"n", r.n},
                             {"psi_cf_quadratic", r.psi},
                             {"skew_preference", r.sign}});
    }
    emit(doc.dump(2) + "\n", opt.out_path);
  } else {
    std::ostringstream out;
    out << "# roycrit " << kVersion << " term  snr=" << fmt4(snr0)
        << " zeta3=" << fmt4(opt.zeta3)
        << " n*=" << (crossover ? fmt4(*crossover) : "-") << '\n';
    std::vector<std::vector<std::string>> t{
        {"n", "psi-cf-quadratic", "skew-pref"}};
    for (const auto& r : rows) {
      t.push_back({fmt4(r.n), fmt4(r.psi),
                   r.sign > 0 ? "+" : (r.sign < 0 ? "-" : "0")});
    }
    out << render_columns(t);
    emit(out.str(), opt.out_path);
  }
  return 0;
}

}  // namespace

int run(int argc, char** argv) {
  CLI::App app{
      "roycrit: rank assets by the probability of beating a disaster rate,\n"
      "via Edgeworth and Cornish-Fisher approximations of the safety-first "
      "criterion"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string("roycrit ") + kVersion);

  RankOptions rank_opt;
  auto* rank =
      app.add_subcommand("rank", "score and rank assets from a returns table");
  rank->add_option("input", rank_opt.input,
                   "delimiter-separated file, header row of asset names, one "
                   "row per period of log returns")
      ->required();
  rank->add_option("--rfr", rank_opt.rfr,
                   "per-period disaster rate r0 (default 0)");
  rank->add_option("--horizon", rank_opt.horizon,
                   "number of periods n (default 1)")
      ->check(CLI::PositiveNumber);
  rank->add_option("--method", rank_opt.methods,
                   "sharpe|sr3|exact-empirical|edgeworth:K|cf-newton:K|"
                   "cf-quadratic (repeatable; first one ranks; default "
                   "cf-quadratic)")
      ->delimiter(',');
  rank->add_option("--b3", rank_opt.b3,
                   "third-moment preference for sr3 (default 1)");
  rank->add_option("--output", rank_opt.output, "table|machine")
      ->check(CLI::IsMember({"table", "machine"}));
  rank->add_option("--out", rank_opt.out_path,
                   "write the report to a file instead of stdout");
  rank->add_option("--delimiter", rank_opt.delimiter,
                   "comma or tab (default: auto-detect)");
  rank->add_option("--period", rank_opt.period_label,
                   "period label echoed in reports (default 'period')");
  std::int64_t rank_seed = 0;
  auto* rank_seed_opt =
      rank->add_option("--seed", rank_seed, "seed echoed in reports");

  CounterexampleOptions cx_opt;
  auto* cx = app.add_subcommand(
      "counterexample",
      "bonus-asset construction: dominance with a lower Sharpe ratio");
  cx->add_option("--mu", cx_opt.mu, "base mean (default 0.001)");
  cx->add_option("--sigma", cx_opt.sigma, "base volatility (default 0.01)");
  cx->add_option("--p", cx_opt.p, "bonus probability (default 1e-4)");
  cx->add_option("--bonus", cx_opt.bonus, "bonus size B (default 0.25)");
  cx->add_option("--paths", cx_opt.paths,
                 "simulation paths for the empirical check (0 disables; "
                 "default 1e6)");
  cx->add_option("--seed", cx_opt.seed, "simulation seed (default 1)");
  cx->add_option("--output", cx_opt.output, "table|machine")
      ->check(CLI::IsMember({"table", "machine"}));
  cx->add_option("--out", cx_opt.out_path, "write to file");

  TermOptions term_opt;
  double term_snr = 0.0;
  double term_mu = 0.0;
  double term_sigma = 0.0;
  auto* term = app.add_subcommand(
      "term", "criterion across horizons: the skew-preference flip");
  auto* snr_flag =
      term->add_option("--snr", term_snr, "per-period signal-to-noise ratio");
  auto* mu_flag = term->add_option("--mu", term_mu, "per-period mean");
  auto* sigma_flag =
      term->add_option("--sigma", term_sigma, "per-period volatility");
  term->add_option("--rfr", term_opt.rfr,
                   "disaster rate used with --mu/--sigma (default 0)");
  term->add_option("--zeta3", term_opt.zeta3, "skewness (default 0)");
  term->add_option("--n-grid", term_opt.n_grid,
                   "comma-separated positive horizons, e.g. 60,252")
      ->required();
  term->add_option("--output", term_opt.output, "table|machine")
      ->check(CLI::IsMember({"table", "machine"}));
  term->add_option("--out", term_opt.out_path, "write to file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (rank->parsed()) {
      if (rank_seed_opt->count() > 0) rank_opt.seed = rank_seed;
      return run_rank(rank_opt);
    }
    if (cx->parsed()) return run_counterexample(cx_opt);
    if (term->parsed()) {
      if (snr_flag->count() > 0) term_opt.snr_flag = term_snr;
      if (mu_flag->count() > 0) term_opt.mu = term_mu;
      if (sigma_flag->count() > 0) term_opt.sigma = term_sigma;
      return run_term(term_opt);
    }
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const SolverError& e) {
    std::cerr << "solver error: " << e.what() << '\n';
    return 3;
  } catch (const ApproximationError& e) {
    std::cerr << "approximation error: " << e.what() << '\n';
    return 3;
  } catch (const NoRealRootError& e) {
    std::cerr << "no real root: " << e.what() << '\n';
    return 3;
  } catch (const std::domain_error& e) {
    std::cerr << "numeric error: " << e.what() << '\n';
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "infeasible parameters: " << e.what() << '\n';
    return 4;
  } catch (const std::logic_error& e) {
    std::cerr << "internal check failed: " << e.what() << '\n';
    return 4;
  }
  return 0;
}

}  // namespace roycrit_cli
