#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <variant>

#include "roycrit/counterexample.hpp"
#include "roycrit/cumulants.hpp"
#include "roycrit/edgeworth.hpp"
#include "roycrit/errors.hpp"
#include "roycrit/montecarlo.hpp"
#include "roycrit/roy.hpp"
#include "roycrit/special_fn.hpp"
#include "roycrit/version.hpp"

namespace py = pybind11;
using namespace roycrit;

PYBIND11_MODULE(_roycrit, m) {
  m.doc() =
      "Safety-first asset scoring: the generalized criterion "
      "-Phi^{-1}(Pr{loss}) via Edgeworth and Cornish-Fisher expansions";
  m.attr("__version__") = kVersion;

  py::register_exception<SolverError>(m, "SolverError", PyExc_RuntimeError);
  py::register_exception<ApproximationError>(m, "ApproximationError",
                                             PyExc_ArithmeticError);
  py::register_exception<NoRealRootError>(m, "NoRealRootError",
                                          PyExc_ArithmeticError);

  // special functions
  m.def("hermite", &hermite, py::arg("k"), py::arg("x"),
        "Probabilist's Hermite polynomial He_k(x)");
  m.def("hermite_deriv", &hermite_deriv, py::arg("k"), py::arg("x"));
  m.def("norm_pdf", &norm_pdf, py::arg("x"));
  m.def("norm_cdf", &norm_cdf, py::arg("x"));
  m.def("norm_quantile", &norm_quantile, py::arg("q"));

  // cumulants
  py::class_<Cumulants>(m, "Cumulants")
      .def(py::init<double, double, std::vector<double>>(), py::arg("mean"),
           py::arg("volatility"), py::arg("zeta") = std::vector<double>{},
           "zeta holds the standardized cumulants zeta_3, zeta_4, ...")
      .def_property_readonly("mean", &Cumulants::mean)
      .def_property_readonly("volatility", &Cumulants::volatility)
      .def_property_readonly("max_order", &Cumulants::max_order)
      .def("has", &Cumulants::has, py::arg("order"))
      .def("zeta", &Cumulants::zeta, py::arg("order"))
      .def_property_readonly("zetas", &Cumulants::zetas)
      .def("__repr__", [](const Cumulants& c) {
        std::string r = "Cumulants(mean=" + std::to_string(c.mean()) +
                        ", volatility=" + std::to_string(c.volatility()) +
                        ", zeta=[";
        for (std::size_t i = 0; i < c.zetas().size(); ++i) {
          if (i) r += ", ";
          r += std::to_string(c.zetas()[i]);
        }
        return r + "])";
      });

  py::class_<Horizon>(m, "Horizon")
      .def(py::init<double, double>(), py::arg("n_periods"),
           py::arg("disaster_rate") = 0.0)
      .def_property_readonly("n_periods", &Horizon::n_periods)
      .def_property_readonly("disaster_rate", &Horizon::disaster_rate);

  m.def("snr", &snr, py::arg("cumulants"), py::arg("horizon"),
        "(mean - disaster_rate) / volatility");
  m.def("c_statistic", &c_statistic, py::arg("cumulants"), py::arg("horizon"));
  m.def("scale_to_horizon", &scale_to_horizon, py::arg("cumulants"),
        py::arg("n_periods"));
  m.def(
      "estimate_cumulants",
      [](const std::vector<double>& values, int max_order) {
        return estimate_cumulants(values, max_order);
      },
      py::arg("values"), py::arg("max_order") = 4);
  m.def("gamma_cumulants", &gamma_cumulants, py::arg("shape"), py::arg("rate"),
        py::arg("shift") = 0.0);

  // edgeworth
  py::class_<EdgeworthCdf>(m, "EdgeworthCdf")
      .def_readonly("value", &EdgeworthCdf::value)
      .def_readonly("in_unit_interval", &EdgeworthCdf::in_unit_interval);
  m.def("edgeworth_cdf", &edgeworth_cdf, py::arg("cumulants"),
        py::arg("n_periods"), py::arg("t"), py::arg("order"));
  m.def("exceed_probability", &exceed_probability, py::arg("cumulants"),
        py::arg("horizon"));
  m.def("chebyshev_loss_bound", &chebyshev_loss_bound, py::arg("snr"));

  py::class_<SkewPreference>(m, "SkewPreference")
      .def_readonly("sign", &SkewPreference::sign)
      .def_readonly("crossover_n", &SkewPreference::crossover_n);
  m.def("skew_preference", &skew_preference, py::arg("cumulants"),
        py::arg("horizon"));

  // risk scores
  py::enum_<ScoreMethod>(m, "ScoreMethod")
      .value("sharpe", ScoreMethod::sharpe)
      .value("sr3", ScoreMethod::sr3)
      .value("exact", ScoreMethod::exact)
      .value("edgeworth_invert", ScoreMethod::edgeworth_invert)
      .value("cf_newton", ScoreMethod::cf_newton)
      .value("cf_quadratic", ScoreMethod::cf_quadratic);

  py::class_<RiskScore>(m, "RiskScore")
      .def_readonly("value", &RiskScore::value)
      .def_readonly("method", &RiskScore::method)
      .def_readonly("order", &RiskScore::order)
      .def_readonly("iterations", &RiskScore::iterations)
      .def_readonly("residual", &RiskScore::residual)
      .def_readonly("root_branch", &RiskScore::root_branch)
      .def_readonly("converged", &RiskScore::converged)
      .def_readonly("saturated", &RiskScore::saturated)
      .def("method_label", &RiskScore::method_label)
      .def("__repr__", [](const RiskScore& s) {
        return "RiskScore(" + s.method_label() +
               ", value=" + std::to_string(s.value) + ")";
      });

  py::class_<CdfOracle>(m, "CdfOracle")
      .def(py::init<std::function<double(double)>, double, double>(),
           py::arg("cdf"), py::arg("probe_lo"), py::arg("probe_hi"))
      .def("__call__", &CdfOracle::operator())
      .def("quantile", &CdfOracle::quantile, py::arg("q"))
      .def_property_readonly("probe_lo", &CdfOracle::probe_lo)
      .def_property_readonly("probe_hi", &CdfOracle::probe_hi)
      .def_static("normal", &CdfOracle::normal, py::arg("mean"),
                  py::arg("sigma"));

  m.def("sharpe", &sharpe, py::arg("cumulants"), py::arg("horizon"));
  m.def("roy_exact", &roy_exact, py::arg("cdf"), py::arg("horizon"));
  m.def("roy_edgeworth_invert", &roy_edgeworth_invert, py::arg("cumulants"),
        py::arg("horizon"), py::arg("order"));
  m.def("roy_cf_newton", &roy_cf_newton, py::arg("cumulants"),
        py::arg("horizon"), py::arg("terms"), py::arg("tol") = 1e-12,
        py::arg("max_iter") = 50);
  m.def("roy_cf_quadratic", &roy_cf_quadratic, py::arg("cumulants"),
        py::arg("horizon"));
  m.def("sr3_skew_adjusted", &sr3_skew_adjusted, py::arg("cumulants"),
        py::arg("horizon"), py::arg("b3") = 1.0);

  // counterexample
  py::class_<BonusAsset>(m, "BonusAsset")
      .def(py::init<double, double, double, double>(), py::arg("mu"),
           py::arg("sigma"), py::arg("p"), py::arg("bonus"))
      .def_readonly("mu", &BonusAsset::mu)
      .def_readonly("sigma", &BonusAsset::sigma)
      .def_readonly("p", &BonusAsset::p)
      .def_readonly("bonus", &BonusAsset::bonus);

  m.def("bonus_mean", &bonus_mean, py::arg("asset"));
  m.def("bonus_variance", &bonus_variance, py::arg("asset"));
  m.def("bonus_sharpe", &bonus_sharpe, py::arg("asset"), py::arg("r0") = 0.0);
  m.def("reversal_p_bound", &reversal_p_bound, py::arg("mu"), py::arg("sigma"),
        py::arg("bonus"));
  m.def("min_reversal_bonus", &min_reversal_bonus, py::arg("mu"),
        py::arg("sigma"));
  m.def("bonus_mixture_cdf", &bonus_mixture_cdf, py::arg("base"),
        py::arg("asset"));

  py::class_<DominanceReport>(m, "DominanceReport")
      .def_readonly("degenerate", &DominanceReport::degenerate)
      .def_readonly("fosd_holds", &DominanceReport::fosd_holds)
      .def_readonly("max_cdf_gap", &DominanceReport::max_cdf_gap)
      .def_readonly("base_sharpe", &DominanceReport::base_sharpe)
      .def_readonly("bonus_sharpe", &DominanceReport::bonus_sharpe)
      .def_readonly("sharpe_reversed", &DominanceReport::sharpe_reversed)
      .def_readonly("roy_consistent", &DominanceReport::roy_consistent)
      .def_readonly("probe_r0", &DominanceReport::probe_r0)
      .def_readonly("base_score", &DominanceReport::base_score)
      .def_readonly("bonus_score", &DominanceReport::bonus_score);

  m.def("verify_dominance_and_reversal",
        py::overload_cast<const BonusAsset&, const CdfOracle&>(
            &verify_dominance_and_reversal),
        py::arg("asset"), py::arg("base_cdf"));
  m.def("verify_dominance_and_reversal",
        py::overload_cast<const BonusAsset&>(&verify_dominance_and_reversal),
        py::arg("asset"));

  // monte carlo
  py::class_<EmpiricalSample>(m, "EmpiricalSample")
      .def(py::init<std::vector<double>, std::uint64_t>(), py::arg("values"),
           py::arg("seed") = 0)
      .def_property_readonly("values", &EmpiricalSample::values)
      .def_property_readonly("seed", &EmpiricalSample::seed)
      .def("__len__", &EmpiricalSample::size)
      .def("cdf", &EmpiricalSample::cdf, py::arg("t"))
      .def_property_readonly("min", &EmpiricalSample::min)
      .def_property_readonly("max", &EmpiricalSample::max);

  py::class_<NormalSpec>(m, "NormalSpec")
      .def(py::init([](double mean, double sigma) {
             return NormalSpec{mean, sigma};
           }),
           py::arg("mean"), py::arg("sigma"));
  py::class_<ShiftedGammaSpec>(m, "ShiftedGammaSpec")
      .def(py::init([](double shape, double rate, double shift) {
             return ShiftedGammaSpec{shape, rate, shift};
           }),
           py::arg("shape"), py::arg("rate") = 1.0, py::arg("shift") = 0.0);
  py::class_<BonusMixtureSpec>(m, "BonusMixtureSpec")
      .def(py::init([](double mu, double sigma, double p, double bonus) {
             return BonusMixtureSpec{mu, sigma, p, bonus};
           }),
           py::arg("mu"), py::arg("sigma"), py::arg("p"), py::arg("bonus"));

  py::class_<GeneratorSpec>(m, "GeneratorSpec")
      .def(py::init([](const NormalSpec& f, int horizon) {
             return GeneratorSpec{f, horizon};
           }),
           py::arg("family"), py::arg("horizon") = 1)
      .def(py::init([](const ShiftedGammaSpec& f, int horizon) {
             return GeneratorSpec{f, horizon};
           }),
           py::arg("family"), py::arg("horizon") = 1)
      .def(py::init([](const BonusMixtureSpec& f, int horizon) {
             return GeneratorSpec{f, horizon};
           }),
           py::arg("family"), py::arg("horizon") = 1)
      .def_readonly("horizon", &GeneratorSpec::horizon);

  m.def("rng_algorithm", &rng_algorithm);
  m.def("simulate", &simulate, py::arg("spec"), py::arg("paths"),
        py::arg("seed"), py::arg("n_threads") = 0,
        py::call_guard<py::gil_scoped_release>());

  py::class_<LossProbability>(m, "LossProbability")
      .def_readonly("p", &LossProbability::p)
      .def_readonly("se", &LossProbability::se);
  m.def("empirical_loss_probability", &empirical_loss_probability,
        py::arg("sample"), py::arg("r0"));

  py::enum_<FosdVerdict>(m, "FosdVerdict")
      .value("a_dominates", FosdVerdict::a_dominates)
      .value("b_dominates", FosdVerdict::b_dominates)
      .value("tie", FosdVerdict::tie)
      .value("incomparable", FosdVerdict::incomparable);

  m.def("fosd_check",
        py::overload_cast<const EmpiricalSample&, const EmpiricalSample&,
                          double>(&fosd_check),
        py::arg("a"), py::arg("b"), py::arg("slack"));
  m.def("fosd_check",
        py::overload_cast<const EmpiricalSample&, const EmpiricalSample&>(
            &fosd_check),
        py::arg("a"), py::arg("b"));

  m.def("empirical_cdf_oracle", &empirical_cdf_oracle, py::arg("sample"));
  m.def(
      "write_values",
      [](const EmpiricalSample& s, const std::string& path) {
        write_values(s, path);
      },
      py::arg("sample"), py::arg("path"));
}
