#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "shapeapprox/best_approx.hpp"
#include "shapeapprox/experiments.hpp"
#include "shapeapprox/operators.hpp"
#include "shapeapprox/shape.hpp"

namespace py = pybind11;
using namespace shapeapprox;

namespace {

// A catalog spec / polynomial file path, or any Python callable on [0,1].
FunctionHandle to_handle(const py::object& f) {
  if (py::isinstance<py::str>(f)) {
    return FunctionHandle::parse(f.cast<std::string>());
  }
  auto fn = f.cast<std::function<double(double)>>();
  return FunctionHandle::from_callback(
      [fn](double x) {
        py::gil_scoped_acquire gil;
        return fn(x);
      },
      "python");
}

py::dict approx_dict(const ApproxResult& r) {
  py::dict d;
  d["n"] = r.n;
  d["q"] = r.q;
  d["error"] = r.error;
  d["lp_value"] = r.lp_value;
  d["chebyshev"] = r.chebyshev;
  d["bernstein"] = to_bernstein(r.p, r.n).coeffs();
  d["validated"] = r.validated;
  d["input_shape_ok"] = r.input_shape_ok;
  return d;
}

py::object json_to_py(const nlohmann::json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

nlohmann::json py_to_json(const py::object& o) {
  if (o.is_none()) return nlohmann::json::object();
  return nlohmann::json::parse(py::module_::import("json").attr("dumps")(o).cast<std::string>());
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "shape-preserving polynomial approximation";

  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<RegimeError>(m, "RegimeError", PyExc_ValueError);
  py::register_exception<DegreeError>(m, "DegreeError", PyExc_ValueError);
  py::register_exception<SolverError>(m, "SolverError", PyExc_RuntimeError);

  m.def("evaluate", [](const py::object& f, const std::vector<double>& xs) {
    const auto h = to_handle(f);
    std::vector<double> out;
    for (double x : xs) out.push_back(h(x));
    return out;
  }, py::arg("f"), py::arg("xs"));

  m.def("apply", [](const std::string& op, const py::object& f, const std::vector<double>& xs, unsigned bits) {
    auto spec = OperatorSpec::parse(op);
    GeneratorOptions opt;
    opt.start_bits = bits;
    opt.max_bits = std::max(opt.max_bits, bits);
    spec.prepare(opt);
    const auto h = to_handle(f);
    Polynomial<double> img;
    {
      py::gil_scoped_release release;
      PrecisionScope scope(bits);
      img = operator_image<double>(spec, h);
    }
    std::vector<double> out;
    for (double x : xs) out.push_back(eval(img, x));
    return out;
  }, py::arg("op"), py::arg("f"), py::arg("xs"), py::arg("precision_bits") = 256,
     "Values of L f at xs; op is e.g. 'bernstein:n=10' or 'mn:n=40,q=3'.");

  m.def("omega", [](const py::object& f, int k, double lambda, double t, int h_points, int x_points) {
    const auto e = omega_dt(to_handle(f), k, lambda, t, ModulusGrid{h_points, x_points, true});
    py::dict d;
    d["value"] = e.value;
    d["argmax_h"] = e.argmax_h;
    d["argmax_x"] = e.argmax_x;
    return d;
  }, py::arg("f"), py::arg("k"), py::arg("lam"), py::arg("t"), py::arg("h_points") = 64, py::arg("x_points") = 1025);

  m.def("bound_envelope", [](const std::string& kind, int n, double lambda, double x, double h) {
    return bound_envelope(parse_envelope_kind(kind), n, lambda, x, h);
  }, py::arg("kind"), py::arg("n"), py::arg("lam"), py::arg("x"),
     py::arg("h") = std::numeric_limits<double>::infinity());

  m.def("best_uniform", [](const py::object& f, int n, int N) { return approx_dict(best_uniform(to_handle(f), n, N)); },
        py::arg("f"), py::arg("n"), py::arg("N") = 257);
  m.def("best_qmonotone", [](const py::object& f, int q, int n, int N, int M) {
    return approx_dict(best_qmonotone(to_handle(f), q, n, N, M));
  }, py::arg("f"), py::arg("q"), py::arg("n"), py::arg("N") = 257, py::arg("M") = 257);
  m.def("equioscillation_count", [](const py::object& f, int n, int N) {
    const auto h = to_handle(f);
    return equioscillation_count(h, best_uniform(h, n, N));
  }, py::arg("f"), py::arg("n"), py::arg("N") = 257);

  m.def("check_k_monotone", [](const py::object& f, int k) {
    if (py::isinstance<py::str>(f)) return json_to_py(shape_report(f.cast<std::string>(), k));
    return json_to_py(check_k_monotone_fn(to_handle(f), k).to_json());
  }, py::arg("f"), py::arg("k"));

  m.def("generator", [](int n, int r, unsigned bits) {
    GeneratorOptions opt;
    opt.start_bits = bits;
    opt.max_bits = std::max(opt.max_bits, bits);
    return json_to_py(generator_to_json(build_generator(n, r, opt)));
  }, py::arg("n"), py::arg("r") = 1, py::arg("precision_bits") = 256);

  m.def("run_experiment", [](const std::string& name, const py::object& config) {
    const auto cfg = py_to_json(config);
    ExperimentResult res;
    {
      py::gil_scoped_release release;
      if (name == "bern-xeps") {
        res = run_bernstein_xeps(BernXepsConfig::from_json(cfg));
      } else if (name == "mn-study") {
        res = run_mn_error_study(MnStudyConfig::from_json(cfg));
      } else if (name == "lambda2") {
        res = run_lambda2_counterexample(Lambda2Config::from_json(cfg));
      } else if (name == "gen-report") {
        res = run_generator_report(GenReportConfig::from_json(cfg));
      } else if (name == "jackson") {
        res = run_jackson(JacksonConfig::from_json(cfg));
      } else {
        throw DomainError("unknown experiment '" + name + "'");
      }
    }
    auto j = res.to_json();
    j["ok"] = res.ok();
    j["input_sha1"] = input_hash(res.config);
    return json_to_py(j);
  }, py::arg("name"), py::arg("config") = py::none());

  m.def("git_blob_sha1", [](const std::string& s) { return git_blob_sha1(s); });
}
