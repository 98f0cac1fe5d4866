#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "framelab/construct.hpp"
#include "framelab/dimension.hpp"
#include "framelab/error.hpp"
#include "framelab/experiments.hpp"
#include "framelab/fourier.hpp"
#include "framelab/frames.hpp"
#include "framelab/measure.hpp"
#include "framelab/parallel.hpp"

namespace py = pybind11;
using namespace framelab;

namespace {

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

// (n, dim) view of a row-major coordinate span; copies so Python owns the result.
py::array_t<double> rows(std::span<const double> flat, std::size_t dim) {
  const auto n = static_cast<py::ssize_t>(dim ? flat.size() / dim : 0);
  py::array_t<double> out({n, static_cast<py::ssize_t>(dim)});
  std::copy(flat.begin(), flat.end(), out.mutable_data());
  return out;
}

py::array_t<double> vec(std::span<const double> v) {
  py::array_t<double> out(static_cast<py::ssize_t>(v.size()));
  std::copy(v.begin(), v.end(), out.mutable_data());
  return out;
}

std::vector<double> flat(const Array& a, std::size_t dim) {
  if (a.ndim() == 1 && dim == 1) return {a.data(), a.data() + a.size()};
  if (a.ndim() == 1 && static_cast<std::size_t>(a.size()) == dim) return {a.data(), a.data() + a.size()};
  if (a.ndim() != 2 || static_cast<std::size_t>(a.shape(1)) != dim)
    throw DimensionMismatch("expected an array of shape (n, " + std::to_string(dim) + ")");
  return {a.data(), a.data() + a.size()};
}

std::vector<double> list(const Array& a) { return {a.data(), a.data() + a.size()}; }

py::object json_to_py(const nlohmann::ordered_json& j) {
  return py::module_::import("json").attr("loads")(j.dump());
}

nlohmann::json py_to_json(const py::object& o) {
  return nlohmann::json::parse(py::module_::import("json").attr("dumps")(o).cast<std::string>());
}

}  // namespace

PYBIND11_MODULE(_framelab, m) {
  m.doc() = "Fourier frame bounds and dimension diagnostics on discretized measures";
  m.attr("__version__") = library_version();

  auto base = py::register_exception<Error>(m, "Error");
  py::register_exception<InvalidArgument>(m, "InvalidArgument", base.ptr());
  py::register_exception<DimensionMismatch>(m, "DimensionMismatch", base.ptr());
  py::register_exception<ConvergenceError>(m, "ConvergenceError", base.ptr());
  py::register_exception<FormatError>(m, "FormatError", base.ptr());
  py::register_exception<ConfigError>(m, "ConfigError", base.ptr());

  m.def("set_threads", &set_threads, py::arg("n"));
  m.def("threads", &threads);

  // measures

  py::class_<QuadratureMeasure>(m, "QuadratureMeasure")
      .def(py::init([](const Array& points, const Array& weights, std::string label) {
             if (points.ndim() != 2) throw DimensionMismatch("points must be a 2-d array");
             const auto dim = static_cast<std::size_t>(points.shape(1));
             return QuadratureMeasure(dim, flat(points, dim), list(weights), std::move(label));
           }),
           py::arg("points"), py::arg("weights"), py::arg("label") = "")
      .def_property_readonly("dim", &QuadratureMeasure::dim)
      .def_property_readonly("points", [](const QuadratureMeasure& q) { return rows(q.coords(), q.dim()); })
      .def_property_readonly("weights", [](const QuadratureMeasure& q) { return vec(q.weights()); })
      .def_property_readonly("total_mass", &QuadratureMeasure::total_mass)
      .def_property_readonly("label", &QuadratureMeasure::label)
      .def("__len__", &QuadratureMeasure::size)
      .def("__repr__", [](const QuadratureMeasure& q) {
        return "<QuadratureMeasure dim=" + std::to_string(q.dim()) + " n=" + std::to_string(q.size()) + " '" +
               q.label() + "'>";
      });

  py::class_<WindowedMeasure>(m, "WindowedMeasure")
      .def_property_readonly("dim", &WindowedMeasure::dim)
      .def_property_readonly("points", [](const WindowedMeasure& q) { return rows(q.coords(), q.dim()); })
      .def_property_readonly("weights",
                             [](const WindowedMeasure& q) {
                               py::array_t<std::complex<double>> out(static_cast<py::ssize_t>(q.size()));
                               std::copy(q.cweights().begin(), q.cweights().end(), out.mutable_data());
                               return out;
                             })
      .def_property_readonly("total_variation", &WindowedMeasure::total_variation)
      .def("__len__", &WindowedMeasure::size);

  m.def("segment", &make_segment_measure, py::arg("d"), py::arg("n_points"));
  m.def("cube", &make_cube_measure, py::arg("k"), py::arg("d"), py::arg("axis_offset"), py::arg("n_per_axis"));
  m.def("sphere", &make_sphere_measure, py::arg("d"), py::arg("n_points"), py::arg("seed") = 0);
  m.def("cantor", &make_cantor_measure, py::arg("ratio"), py::arg("depth"));
  m.def(
      "atom", [](const Array& at, double mass) { return make_atom(list(at), mass); }, py::arg("at"),
      py::arg("mass") = 1.0);
  m.def(
      "graph",
      [](std::size_t d, const Array& lower, const Array& upper, std::size_t n_per_axis,
         const std::function<std::vector<double>(std::vector<double>)>& phi,
         const std::function<double(std::vector<double>)>& w) {
        const auto grid = midpoint_grid(list(lower), list(upper), n_per_axis);
        return make_graph_measure(
            grid.dim, d, grid,
            [&](std::span<const double> x, std::span<double> out) {
              const auto v = phi(std::vector<double>(x.begin(), x.end()));
              if (v.size() != out.size()) throw DimensionMismatch("phi returned the wrong number of values");
              std::copy(v.begin(), v.end(), out.begin());
            },
            [&](std::span<const double> x) { return w(std::vector<double>(x.begin(), x.end())); });
      },
      py::arg("d"), py::arg("lower"), py::arg("upper"), py::arg("n_per_axis"), py::arg("phi"), py::arg("w"),
      "Graph measure of phi over the midpoint grid of the box [lower, upper].");
  m.def("mix_sum", &mix_sum, py::arg("mu"), py::arg("nu"));
  m.def("product_measure", &product_measure, py::arg("rho"), py::arg("sigma"));
  m.def("scale_weights", &scale_weights, py::arg("mu"), py::arg("c"));

  // transforms

  m.def(
      "mu_hat",
      [](const QuadratureMeasure& q, const Array& t) {
        if (t.ndim() <= 1) return py::object(py::cast(mu_hat(q, list(t))));
        const auto v = mu_hat_many(q, flat(t, q.dim()));
        return py::object(py::array_t<std::complex<double>>(static_cast<py::ssize_t>(v.size()), v.data()));
      },
      py::arg("measure"), py::arg("t"), "Transform at one point t or at each row of a (n, dim) array.");
  m.def(
      "mu_hat",
      [](const WindowedMeasure& q, const Array& t) {
        if (t.ndim() <= 1) return py::object(py::cast(mu_hat(q, list(t))));
        const auto v = mu_hat_many(q, flat(t, q.dim()));
        return py::object(py::array_t<std::complex<double>>(static_cast<py::ssize_t>(v.size()), v.data()));
      },
      py::arg("measure"), py::arg("t"));
  m.def(
      "window_measure",
      [](const QuadratureMeasure& q, const std::function<std::complex<double>(std::vector<double>)>& phi) {
        return window_measure(q, [&](std::span<const double> x) { return phi({x.begin(), x.end()}); });
      },
      py::arg("measure"), py::arg("phi"));
  m.def(
      "cap_window",
      [](const QuadratureMeasure& q, std::vector<double> center, double radius) {
        return drop_null_points(window_measure(q, cap_bump_window(std::move(center), radius)));
      },
      py::arg("measure"), py::arg("center"), py::arg("radius"),
      "Smooth bump window on the ball |x - center| < radius, zero-weight points dropped.");
  m.def("unit_ball_volume", &unit_ball_volume, py::arg("d"));

  py::class_<RadialProfile>(m, "RadialProfile")
      .def_property_readonly("radii", [](const RadialProfile& p) { return vec(p.radii); })
      .def_property_readonly("values", [](const RadialProfile& p) { return vec(p.values); })
      .def_property_readonly("kind", [](const RadialProfile& p) { return to_string(p.kind); })
      .def_property_readonly("seed", [](const RadialProfile& p) { return p.meta.seed; })
      .def_property_readonly("rng_algorithm", [](const RadialProfile& p) { return p.meta.rng_algorithm; });

  m.def(
      "wiener_profile",
      [](const QuadratureMeasure& q, double alpha, const Array& radii, std::size_t n, std::uint64_t seed) {
        return wiener_profile(q, alpha, list(radii), n, seed);
      },
      py::arg("measure"), py::arg("alpha"), py::arg("radii"), py::arg("n_samples"), py::arg("seed"));
  m.def(
      "decay_envelope",
      [](const WindowedMeasure& q, const Array& radii, std::size_t n_dirs, double wf, std::uint64_t seed) {
        return decay_envelope(q, list(radii), n_dirs, wf, seed);
      },
      py::arg("nu"), py::arg("radii"), py::arg("n_dirs"), py::arg("window_factor") = 1.25, py::arg("seed") = 0);

  // frequency sets

  py::class_<FrequencySet>(m, "FrequencySet")
      .def(py::init([](const Array& freqs, std::string label) {
             if (freqs.ndim() != 2) throw DimensionMismatch("frequencies must be a 2-d array");
             const auto dim = static_cast<std::size_t>(freqs.shape(1));
             return FrequencySet(dim, flat(freqs, dim), Generator{}, std::move(label));
           }),
           py::arg("freqs"), py::arg("label") = "")
      .def_property_readonly("dim", &FrequencySet::dim)
      .def_property_readonly("freqs", [](const FrequencySet& f) { return rows(f.coords(), f.dim()); })
      .def_property_readonly("generator", [](const FrequencySet& f) { return f.generator().tag(); })
      .def_property_readonly("is_exact", &FrequencySet::is_exact)
      .def("__len__", &FrequencySet::size)
      .def("__repr__", [](const FrequencySet& f) {
        return "<FrequencySet dim=" + std::to_string(f.dim()) + " n=" + std::to_string(f.size()) + " " +
               f.generator().tag() + ">";
      });

  m.def(
      "lattice_frame",
      [](std::int64_t num, std::int64_t den, std::size_t k, std::size_t d, std::size_t M) {
        return lattice_frame(Rational(num, den), k, d, M);
      },
      py::arg("delta_num"), py::arg("delta_den"), py::arg("k"), py::arg("d"), py::arg("M"),
      "(delta Z)^k x {0}^(d-k) with delta = delta_num / delta_den, |m|_inf <= M.");
  m.def("exotic_onb", &exotic_onb, py::arg("M"));
  m.def("product_frame", &product_frame, py::arg("lam"), py::arg("gam"));
  m.def("set_difference", &set_difference, py::arg("a"), py::arg("b"));
  m.def("min_merge_q", &min_merge_q, py::arg("A"), py::arg("B"));

  py::class_<MergeResult>(m, "MergeResult")
      .def_readonly("lam", &MergeResult::lambda)
      .def_readonly("n_mu", &MergeResult::n_mu)
      .def_readonly("lower_bound", &MergeResult::lower_bound)
      .def_readonly("upper_bound", &MergeResult::upper_bound)
      .def_property_readonly("plan_id", [](const MergeResult& r) { return r.plan.plan_id(); })
      .def_property_readonly("F", [](const MergeResult& r) { return r.plan.F; })
      .def_property_readonly("G", [](const MergeResult& r) { return r.plan.G; });

  m.def(
      "merge_frames",
      [](FrequencySet U_core, FrequencySet V_core, FrequencySet V_pool, FrequencySet U_pool, std::size_t q,
         double A_U, double B_U, double A_V, double B_V) {
        return merge_frames(MergeInput{.U_core = std::move(U_core), .A_U = A_U, .B_U = B_U,
                                       .V_core = std::move(V_core), .A_V = A_V, .B_V = B_V,
                                       .V_pool = std::move(V_pool), .U_pool = std::move(U_pool), .q = q});
      },
      py::arg("U_core"), py::arg("V_core"), py::arg("V_pool"), py::arg("U_pool"), py::arg("q"),
      py::arg("A_U") = 1.0, py::arg("B_U") = 1.0, py::arg("A_V") = 1.0, py::arg("B_V") = 1.0);

  // frames

  py::class_<FrameBounds>(m, "FrameBounds")
      .def_readonly("A", &FrameBounds::lower_A)
      .def_readonly("B", &FrameBounds::upper_B)
      .def_readonly("n_points", &FrameBounds::n_points)
      .def_readonly("n_freqs", &FrameBounds::n_freqs)
      .def_property_readonly("method", [](const FrameBounds& b) { return to_string(b.method); })
      .def_readonly("residual", &FrameBounds::residual)
      .def_readonly("converged", &FrameBounds::converged)
      .def_readonly("iterations", &FrameBounds::iterations)
      .def_readonly("rank_deficient", &FrameBounds::rank_deficient)
      .def_readonly("aliasing_warning", &FrameBounds::aliasing_warning)
      .def_readonly("aliasing_detail", &FrameBounds::aliasing_detail)
      .def_readonly("section_dim", &FrameBounds::section_dim)
      .def("__repr__", [](const FrameBounds& b) {
        return "<FrameBounds A=" + std::to_string(b.lower_A) + " B=" + std::to_string(b.upper_B) + " " +
               to_string(b.method) + ">";
      });

  m.def(
      "frame_bounds",
      [](const QuadratureMeasure& q, const FrequencySet& lam, const std::string& method,
         std::optional<FrequencySet> section) {
        FrameOptions opt;
        opt.method = parse_frame_method(method);
        opt.section = std::move(section);
        py::gil_scoped_release release;
        return frame_bounds(q, lam, opt);
      },
      py::arg("measure"), py::arg("lam"), py::arg("method") = "dense_svd", py::arg("section") = py::none());
  m.def(
      "bessel_sup",
      [](const QuadratureMeasure& q, const FrequencySet& lam, const Array& t_grid) {
        const auto r = bessel_sup_check(q, lam, flat(t_grid, q.dim()));
        return py::make_tuple(r.sup_value, r.argmax_t);
      },
      py::arg("measure"), py::arg("lam"), py::arg("t_grid"), "Returns (sup value, maximizing t).");

  // dimension

  py::class_<CountingProfile>(m, "CountingProfile")
      .def_property_readonly("radii", [](const CountingProfile& p) { return vec(p.radii); })
      .def_readonly("counts", &CountingProfile::counts)
      .def_readonly("fitted_alpha", &CountingProfile::fitted_alpha)
      .def_readonly("fit_residual", &CountingProfile::fit_residual)
      .def_readonly("n_centers", &CountingProfile::n_centers);
  m.def(
      "counting_profile",
      [](const FrequencySet& lam, const Array& radii, const std::string& centers) {
        return counting_profile(lam, list(radii), parse_center_strategy(centers));
      },
      py::arg("lam"), py::arg("radii"), py::arg("centers") = "freq_centers");

  py::class_<WienerTest>(m, "WienerTest")
      .def_readonly("profile", &WienerTest::profile)
      .def_property_readonly("verdict", [](const WienerTest& w) { return to_string(w.verdict); })
      .def_readonly("first_third_mean", &WienerTest::first_third_mean)
      .def_readonly("last_third_mean", &WienerTest::last_third_mean);
  m.def(
      "wiener_alpha_test",
      [](const QuadratureMeasure& q, double alpha, const Array& radii, std::size_t n, std::uint64_t seed) {
        return wiener_alpha_test(q, alpha, list(radii), n, seed);
      },
      py::arg("measure"), py::arg("alpha"), py::arg("radii"), py::arg("n_samples"), py::arg("seed"));

  py::class_<BetaFit>(m, "BetaFit")
      .def_readonly("beta_hat", &BetaFit::beta_hat)
      .def_readonly("C_hat", &BetaFit::C_hat)
      .def_readonly("residual", &BetaFit::residual)
      .def_readonly("profile", &BetaFit::profile);
  m.def(
      "decay_beta_fit",
      [](const WindowedMeasure& nu, const Array& radii, std::size_t n_dirs, std::uint64_t seed, double wf) {
        return decay_beta_fit(nu, list(radii), n_dirs, seed, wf);
      },
      py::arg("nu"), py::arg("radii"), py::arg("n_dirs"), py::arg("seed") = 0, py::arg("window_factor") = 1.25);

  m.def(
      "obstruction_check",
      [](double a, double b, double d) {
        const auto o = obstruction_check(a, b, d);
        return py::dict(py::arg("blocked") = o.blocked, py::arg("landau_floor") = o.landau_floor);
      },
      py::arg("alpha"), py::arg("beta"), py::arg("d"));
  m.def(
      "admissible_gamma_window",
      [](double a, double b, double d) {
        const auto w = admissible_gamma_window(a, b, d);
        return py::make_tuple(w.lo, w.hi);
      },
      py::arg("alpha"), py::arg("beta"), py::arg("d"), "Open interval (alpha/beta, 1 - alpha/d).");

  py::class_<GapWitness>(m, "GapWitness")
      .def_readonly("R", &GapWitness::R)
      .def_readonly("gamma", &GapWitness::gamma)
      .def_readonly("T", &GapWitness::T)
      .def_readonly("t0", &GapWitness::t0)
      .def_readonly("defect", &GapWitness::defect)
      .def_readonly("samples_used", &GapWitness::samples_used)
      .def_readonly("seed", &GapWitness::seed)
      .def_readonly("min_distance", &GapWitness::min_distance);
  m.def(
      "find_gap_point",
      [](const FrequencySet& lam, double R, double gamma, std::size_t max_samples, std::uint64_t seed) {
        const auto g = find_gap_point(lam, R, gamma, max_samples, seed);
        return py::make_tuple(g.witness ? py::cast(*g.witness) : py::none(), g.samples_used, g.covered_fraction);
      },
      py::arg("lam"), py::arg("R"), py::arg("gamma"), py::arg("max_samples"), py::arg("seed"),
      "Returns (witness or None, samples used, covered fraction).");
  m.def(
      "verify_separation",
      [](const FrequencySet& lam, double R, double T, const Array& t0) { return verify_separation(lam, R, T, list(t0)); },
      py::arg("lam"), py::arg("R"), py::arg("T"), py::arg("t0"));
  m.def("frame_defect_witness", &frame_defect_witness, py::arg("nu"), py::arg("lam"), py::arg("witness"));

  // experiments

  m.def("experiment_ids", &experiment_ids);
  m.def("default_config", [](const std::string& id) { return json_to_py(default_config(id)); }, py::arg("id"));
  m.def(
      "run_experiment",
      [](const std::string& id, const std::filesystem::path& out_dir, const py::object& config,
         std::optional<std::uint64_t> seed) {
        const auto resolved = resolve_config(id, config.is_none() ? nlohmann::json::object() : py_to_json(config), seed);
        RunResult r;
        {
          py::gil_scoped_release release;
          r = run_experiment(id, resolved, out_dir);
        }
        return py::dict(py::arg("status") = r.status, py::arg("config_hash") = r.config_hash,
                        py::arg("files") = r.files, py::arg("summary") = json_to_py(r.summary));
      },
      py::arg("id"), py::arg("out_dir"), py::arg("config") = py::none(), py::arg("seed") = py::none());
}
