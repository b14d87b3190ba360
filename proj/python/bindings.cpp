#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "choice_dyn/config.hpp"
#include "choice_dyn/models.hpp"
#include "choice_dyn/restricted.hpp"
#include "choice_dyn/setdyn.hpp"
#include "choice_dyn/sofic.hpp"
#include "choice_dyn/verify.hpp"

namespace py = pybind11;
using namespace choice_dyn;

namespace {

// Clouds cross the boundary as lists of coordinate tuples of length dim.
std::vector<std::vector<double>> to_rows(const PointCloud& c) {
  std::vector<std::vector<double>> rows;
  rows.reserve(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) {
    const Point p = c.point(i);
    rows.emplace_back(p.begin(), p.begin() + static_cast<std::ptrdiff_t>(c.dim()));
  }
  return rows;
}

PointCloud from_rows(const std::vector<std::vector<double>>& rows, std::size_t dim, double delta) {
  std::vector<Point> pts;
  for (const auto& r : rows) {
    if (r.size() != dim) throw std::invalid_argument("point has the wrong dimension");
    Point p{};
    std::copy(r.begin(), r.end(), p.begin());
    pts.push_back(p);
  }
  return PointCloud::from_points(dim, delta, pts);
}

ModelSpec make_model(const std::string& name, std::size_t depth) {
  RunConfig cfg;
  cfg.model = name;
  cfg.gestalt_depth = depth;
  return build_model(cfg);
}

py::dict report_dict(const AttractorReport& r) {
  py::dict d;
  d["points"] = to_rows(r.cloud);
  d["iterations"] = r.iterations;
  d["residual"] = r.residual;
  d["converged"] = r.converged;
  d["cycle_length"] = r.cycle_length;
  if (r.violation) {
    py::dict v;
    v["step"] = r.violation->step;
    v["point"] = std::vector<double>(r.violation->point.begin(), r.violation->point.end());
    d["violation"] = v;
  } else {
    d["violation"] = py::none();
  }
  return d;
}

}  // namespace

PYBIND11_MODULE(_choice_dyn, m) {
  m.doc() = "Attractors of iterated function systems with choice";

  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);

  py::class_<MalariaParams>(m, "MalariaParams")
      .def(py::init([](double a, double b, double r, double mu, double dt) { return MalariaParams{a, b, r, mu, dt}; }),
           py::arg("a"), py::arg("b"), py::arg("r"), py::arg("m"), py::arg("dt") = 0.05)
      .def_readwrite("a", &MalariaParams::a)
      .def_readwrite("b", &MalariaParams::b)
      .def_readwrite("r", &MalariaParams::r)
      .def_readwrite("m", &MalariaParams::m)
      .def_readwrite("dt", &MalariaParams::dt);
  m.attr("PSET0") = kPset0;
  m.attr("PSET1") = kPset1;

  m.def("step_bound", &step_bound);
  m.def("step_admissible", &step_admissible);
  m.def("basic_reproduction_number", &basic_reproduction_number);
  m.def("fixed_points", [](const MalariaParams& p) {
    const FixedPoints fp = fixed_points(p);
    py::list out;
    out.append(py::make_tuple(fp.origin[0], fp.origin[1]));
    if (fp.endemic) out.append(py::make_tuple((*fp.endemic)[0], (*fp.endemic)[1]));
    return out;
  });

  m.def("normalize", [](const std::string& s) { return UPString::parse(s).str(); },
        "Canonical text of a PRE(PER) string.");
  m.def("shift", [](const std::string& s, std::size_t n) { return shift(UPString::parse(s), n).str(); },
        py::arg("s"), py::arg("n") = 1);
  m.def("d_sigma", [](const std::string& u, const std::string& v) {
    return d_sigma(UPString::parse(u), UPString::parse(v)).value();
  });
  m.def("accepts", [](const std::string& subshift, const std::string& word) {
    return accepts(builtin_presentation(subshift), Word::parse(word));
  });
  m.def("in_subshift", [](const std::string& subshift, const std::string& u) {
    return !start_vertices(builtin_presentation(subshift), UPString::parse(u)).empty();
  });

  m.def("global_attractor",
        [](const std::string& model, double delta, std::optional<double> tol, std::size_t maxiter, std::size_t depth) {
          const ModelSpec spec = make_model(model, depth);
          check_resolution(spec, delta);
          AttractorReport r;
          {
            py::gil_scoped_release release;
            r = compute_K(spec, delta, tol.value_or(delta), maxiter);
          }
          return report_dict(r);
        },
        py::arg("model"), py::arg("delta"), py::arg("tol") = py::none(), py::arg("maxiter") = 10000,
        py::arg("depth") = 12);

  m.def("individual_attractor",
        [](const std::string& model, const std::string& strategy, double delta, std::size_t depth) {
          const ModelSpec spec = make_model(model, depth);
          check_resolution(spec, delta);
          const UPString w = UPString::parse(strategy);
          AttractorReport r;
          {
            py::gil_scoped_release release;
            r = individual_attractor(spec, w, delta);
          }
          return report_dict(r);
        },
        py::arg("model"), py::arg("strategy"), py::arg("delta"), py::arg("depth") = 12);

  m.def("omega_limit",
        [](const std::string& model, const std::vector<std::vector<double>>& seed, const std::string& strategy,
           double delta) {
          const ModelSpec spec = make_model(model, 12);
          check_resolution(spec, delta);
          return report_dict(omega_limit(spec, from_rows(seed, spec.dim, delta), UPString::parse(strategy)));
        },
        py::arg("model"), py::arg("seed"), py::arg("strategy"), py::arg("delta"));

  m.def("slices",
        [](const std::string& model, const std::string& subshift, double delta, std::size_t period_bound) {
          const ModelSpec spec = make_model(model, 12);
          check_resolution(spec, delta);
          const SoficPresentation p = subshift == "full" ? full_shift(spec.alphabet()) : builtin_presentation(subshift);
          SliceReport rep;
          DecompositionCheck check;
          {
            py::gil_scoped_release release;
            const VertexFamily fam = vertex_limits(spec, p, delta, delta, 100000);
            rep = enumerate_slices(spec, p, fam, period_bound);
            check = verify_decomposition(rep, spec, delta);
          }
          py::dict d;
          py::list sl;
          for (const PointCloud& c : rep.slices) sl.append(to_rows(c));
          d["slices"] = sl;
          d["representatives"] = rep.representatives;
          d["k_lambda"] = to_rows(rep.k_lambda);
          d["cover_residual"] = check.cover_residual;
          d["image_residual"] = check.image_residual;
          d["decomposition_ok"] = check.passed;
          return d;
        },
        py::arg("model"), py::arg("subshift"), py::arg("delta"), py::arg("period_bound") = 6);

  m.def("chaos_game",
        [](const std::string& model, std::vector<double> probs, std::vector<double> x0, std::size_t n,
           std::size_t burnin, std::uint64_t seed, double delta) {
          const ModelSpec spec = make_model(model, 12);
          ChaosOptions o;
          o.probs = std::move(probs);
          std::copy_n(x0.begin(), std::min(x0.size(), kMaxDim), o.x0.begin());
          o.n = n;
          o.burnin = burnin;
          o.seed = seed;
          o.delta = delta;
          ChaosResult r;
          {
            py::gil_scoped_release release;
            r = chaos_game(spec, o, [](const Point& p) { return p[0]; });
          }
          return py::make_tuple(r.mean, to_rows(r.cloud));
        },
        py::arg("model"), py::arg("probs"), py::arg("x0"), py::arg("n") = 1000000, py::arg("burnin") = 1000,
        py::arg("seed") = 1, py::arg("delta") = 1e-3);

  m.def("hausdorff",
        [](const std::vector<std::vector<double>>& a, const std::vector<std::vector<double>>& b, double delta) {
          if (a.empty() || b.empty()) throw std::invalid_argument("hausdorff of an empty cloud");
          const std::size_t dim = a.front().size();
          return hausdorff(from_rows(a, dim, delta), from_rows(b, dim, delta));
        },
        py::arg("a"), py::arg("b"), py::arg("delta"));

  m.def("verify",
        [](const std::string& only) {
          VerifyOptions o;
          o.only = only;
          std::vector<CriterionResult> res;
          {
            py::gil_scoped_release release;
            res = run_acceptance(o);
          }
          py::list out;
          for (const CriterionResult& r : res) {
            py::dict d;
            d["id"] = r.id;
            d["tag"] = r.tag;
            d["passed"] = r.passed;
            d["measured"] = r.measured;
            d["expected"] = r.expected;
            d["seconds"] = r.seconds;
            out.append(d);
          }
          return out;
        },
        py::arg("only") = "");
}
