#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "hhverify/bounds.hpp"
#include "hhverify/error.hpp"
#include "hhverify/harness.hpp"
#include "hhverify/means.hpp"
#include "hhverify/quad.hpp"
#include "hhverify/report.hpp"
#include "hhverify/special.hpp"

namespace py = pybind11;
using namespace hhv;

namespace {

py::object to_py(const Json& j) { return py::module_::import("json").attr("loads")(dump_json(j)); }

SignConvention sign_of(const std::string& s) {
  if (s == "plus") return SignConvention::PlusDerived;
  if (s == "minus") return SignConvention::MinusAsPrinted;
  throw Error(ErrorKind::ConfigError, "sign must be 'plus' or 'minus'");
}

TheoremId theorem_of_name(const std::string& name) {
  auto id = parse_theorem_id(name);
  if (!id) throw Error(ErrorKind::ParseError, "unknown theorem '" + name + "'");
  return *id;
}

BoundParams params_for(TheoremId id, std::optional<double> p, std::optional<double> q,
                       std::optional<double> M) {
  BoundParams params;
  switch (id) {
    case TheoremId::Thm21:
      break;
    case TheoremId::Thm22:
    case TheoremId::Thm23:
    case TheoremId::Remark21:
      if (!p || !q) throw Error(ErrorKind::MissingExponents, "p and q are required");
      params.pq = ExponentPair::independent(*p, *q);
      if (M) params.cap = DerivativeCap{*M};
      break;
    case TheoremId::Thm24:
    case TheoremId::Thm25:
      if (!q) throw Error(ErrorKind::MissingExponents, "q is required");
      params.q = *q;
      break;
    case TheoremId::Thm26:
    case TheoremId::Thm27:
      if (p && q) params.pq = ExponentPair::conjugate(*p, *q);
      else if (p) params.pq = ExponentPair::conjugate_of(*p);
      else if (q) params.pq = ExponentPair::conjugate(ExponentPair::conjugate_of(*q).q(), *q);
      else throw Error(ErrorKind::MissingExponents, "p or q is required");
      break;
  }
  if (M && id != TheoremId::Remark21) throw Error(ErrorKind::ParameterMismatch, "M applies only to remark2.1");
  return params;
}

py::dict pair_check(const PropPairCheck& c) {
  py::dict d;
  d["k_first"] = c.k_first;
  d["k_second"] = c.k_second;
  d["lhs_sum"] = c.lhs_sum;
  d["rhs_sum"] = c.rhs_sum;
  d["holds_sum"] = c.holds_sum;
  d["lhs_plain"] = c.lhs_plain;
  d["rhs_plain"] = c.rhs_plain;
  d["holds_plain"] = c.holds_plain;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Numerical verification of Hermite-Hadamard type inequalities";
  m.attr("__version__") = kToolVersion;

  static py::exception<Error> exc(m, "HHVError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      PyErr_SetString(exc.ptr(), (std::string(to_string(e.kind())) + ": " + e.what()).c_str());
    }
  });

  m.def("eval_deriv", [](const std::string& f, double x, int order) {
    return eval_deriv(FunctionSpec::parse(f), x, order);
  }, py::arg("function"), py::arg("x"), py::arg("order") = 0);

  m.def("integrate", [](const std::function<double(double)>& g, double a, double b, double abs_tol) {
    const auto r = integrate(g, Interval(a, b), abs_tol);
    return py::make_tuple(r.value, r.est_error, r.evaluations);
  }, py::arg("g"), py::arg("a"), py::arg("b"), py::arg("abs_tol") = kDefaultAbsTol,
        "Adaptive Simpson; returns (value, est_error, evaluations).");

  m.def("deviation_d1", [](const std::string& f, double a, double b) {
    return deviation_d1(FunctionSpec::parse(f), Interval(a, b));
  }, py::arg("function"), py::arg("a"), py::arg("b"));
  m.def("deviation_d2", [](const std::string& f, double a, double b, const std::string& sign) {
    return deviation_d2(FunctionSpec::parse(f), Interval(a, b), sign_of(sign));
  }, py::arg("function"), py::arg("a"), py::arg("b"), py::arg("sign") = "plus");
  m.def("lemma11_identity", [](const std::string& f, double a, double b) {
    const auto s = lemma11_identity(FunctionSpec::parse(f), Interval(a, b));
    return py::make_tuple(s.lhs, s.rhs);
  }, py::arg("function"), py::arg("a"), py::arg("b"));

  m.def("gamma", &hhv::gamma, py::arg("x"));
  m.def("log_gamma", &log_gamma, py::arg("x"));
  m.def("beta", &beta, py::arg("x"), py::arg("y"));
  m.def("beta_duplication_check", [](double p) {
    const auto d = beta_duplication_check(p);
    return py::make_tuple(d.lhs, d.rhs);
  }, py::arg("p"));

  m.def("check_bound",
        [](const std::string& theorem, const std::string& f, double a, double b, std::optional<double> p,
           std::optional<double> q, std::optional<double> M, const std::string& sign, bool allow_negative_a) {
          const TheoremId id = theorem_of_name(theorem);
          HypothesisOptions opts;
          opts.allow_negative_a = allow_negative_a;
          const auto r = evaluate_bound(id, FunctionSpec::parse(f), Interval(a, b), params_for(id, p, q, M),
                                        sign_of(sign), opts);
          return to_py(bound_report_to_json(r));
        },
        py::arg("theorem"), py::arg("function"), py::arg("a"), py::arg("b"), py::arg("p") = py::none(),
        py::arg("q") = py::none(), py::arg("M") = py::none(), py::arg("sign") = "plus",
        py::arg("allow_negative_a") = false, "Evaluates one bound and returns the report as a dict.");

  m.def("log_mean_pow", [](double a, double b, int n) { return log_mean_pow(a, b, MeanOrder(n)); },
        py::arg("a"), py::arg("b"), py::arg("n"));
  m.def("k1", [](double a, double b, int n, double q) { return k1(a, b, MeanOrder(n), q); });
  m.def("k2", [](double a, double b, int n, double q) { return k2(a, b, MeanOrder(n), q); });
  m.def("k3", [](double a, double b, int n, double p, double q) {
    return k3(a, b, MeanOrder(n), ExponentPair::conjugate(p, q));
  });
  m.def("k4", [](double a, double b, int n, double p, double q) {
    return k4(a, b, MeanOrder(n), ExponentPair::conjugate(p, q));
  });
  m.def("prop31", [](double a, double b, int n) {
    const auto c = prop31_check(a, b, MeanOrder(n));
    return py::make_tuple(c.lhs, c.rhs, c.holds);
  }, py::arg("a"), py::arg("b"), py::arg("n"));
  m.def("prop32", [](double a, double b, int n, double p, double q) {
    const auto c = prop32_check(a, b, MeanOrder(n), ExponentPair::independent(p, q));
    return py::make_tuple(c.lhs, c.rhs, c.holds);
  }, py::arg("a"), py::arg("b"), py::arg("n"), py::arg("p"), py::arg("q"));
  m.def("prop33", [](double a, double b, int n, double q) { return pair_check(prop33_check(a, b, MeanOrder(n), q)); },
        py::arg("a"), py::arg("b"), py::arg("n"), py::arg("q"));
  m.def("prop34", [](double a, double b, int n, double p, double q) {
    return pair_check(prop34_check(a, b, MeanOrder(n), ExponentPair::conjugate(p, q)));
  }, py::arg("a"), py::arg("b"), py::arg("n"), py::arg("p"), py::arg("q"));

  m.def("verify",
        [](const std::vector<std::string>& suites, int trials, std::uint64_t seed, const std::string& sign,
           bool per_trial, int threads) {
          TrialConfig config;
          Json names = Json::array();
          for (const auto& s : suites) names.push_back(s);
          config = config_from_json(Json{{"suites", names}}, config);
          config.trials = trials;
          config.seed = seed;
          config.sign = sign_of(sign);
          config.threads = threads;
          TrialBatch batch;
          {
            py::gil_scoped_release release;
            batch = run_suite(config);
          }
          py::object report = to_py(batch_to_json(batch, {per_trial, false}));
          report["asserted_failure"] = batch.any_asserted_failure();
          return report;
        },
        py::arg("suites") = std::vector<std::string>{"all"}, py::arg("trials") = 1000, py::arg("seed") = 42,
        py::arg("sign") = "plus", py::arg("per_trial") = false, py::arg("threads") = 0,
        "Runs the seeded suites and returns the JSON report as a dict.");
}
