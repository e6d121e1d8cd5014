#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "moobfgs/benchmark.hpp"
#include "moobfgs/numerics.hpp"
#include "moobfgs/suite.hpp"

namespace py = pybind11;
using namespace moobfgs;

namespace {

SolverConfig config_from_kwargs(const std::string& solver, double rho, double sigma,
                                double vartheta, double epsilon, double tol, int max_iters,
                                const std::string& r_choice, bool warm_start,
                                const std::string& trace) {
  SolverConfig cfg;
  if (!variant_from_string(solver, cfg.variant)) {
    throw std::invalid_argument("unknown solver: " + solver);
  }
  cfg.rho = rho;
  cfg.sigma = sigma;
  cfg.vartheta = vartheta;
  cfg.epsilon_cautious = epsilon;
  cfg.theta_tol = tol;
  cfg.max_iters = max_iters;
  cfg.r_choice = r_choice == "choice1" ? RChoice::Choice1 : RChoice::Choice2;
  cfg.warm_start_lambda = warm_start;
  if (trace == "none") cfg.trace = TraceLevel::None;
  else if (trace == "basic") cfg.trace = TraceLevel::Basic;
  else if (trace == "full") cfg.trace = TraceLevel::Full;
  else throw std::invalid_argument("trace must be none, basic, or full");
  validate(cfg);
  return cfg;
}

HessianSet hessians_from_list(const std::vector<Matrix>& mats) {
  HessianSet h;
  h.B = mats;
  return h;
}

}  // namespace

PYBIND11_MODULE(_moobfgs, m) {
  m.doc() = "Multiobjective quasi-Newton solvers and Pareto-front metrics";

  py::register_exception<NotPositiveDefinite>(m, "NotPositiveDefiniteError");
  py::register_exception<NonFiniteValue>(m, "NonFiniteValueError");
  py::register_exception<SubproblemStalled>(m, "SubproblemStalledError");
  py::register_exception<LineSearchFailed>(m, "LineSearchFailedError");
  py::register_exception<CurvatureViolation>(m, "CurvatureViolationError");

  py::class_<Problem>(m, "Problem")
      .def_readonly("name", &Problem::name)
      .def_readonly("n", &Problem::n)
      .def_readonly("m", &Problem::m)
      .def_readonly("lower", &Problem::lower)
      .def_readonly("upper", &Problem::upper)
      .def_readonly("convex", &Problem::convex)
      .def("objectives", [](const Problem& p, const Vector& x) { return p.objectives(x); })
      .def("jacobian", [](const Problem& p, const Vector& x) { return p.jacobian(x); })
      .def("__repr__", [](const Problem& p) {
        return "<Problem " + p.name + " n=" + std::to_string(p.n) +
               " m=" + std::to_string(p.m) + ">";
      });

  py::class_<IterationRecord>(m, "IterationRecord")
      .def_readonly("k", &IterationRecord::k)
      .def_readonly("theta", &IterationRecord::theta)
      .def_readonly("d_norm", &IterationRecord::d_norm)
      .def_readonly("alpha", &IterationRecord::alpha)
      .def_readonly("unit_step", &IterationRecord::unit_step)
      .def_readonly("x", &IterationRecord::x)
      .def_readonly("F", &IterationRecord::F);

  py::class_<RunResult>(m, "RunResult")
      .def_property_readonly("status", [](const RunResult& r) { return to_string(r.status); })
      .def_readonly("x", &RunResult::x)
      .def_readonly("F", &RunResult::F)
      .def_readonly("theta", &RunResult::theta)
      .def_readonly("iterations", &RunResult::iterations)
      .def_readonly("wall_seconds", &RunResult::wall_seconds)
      .def_readonly("f_evals", &RunResult::f_evals)
      .def_readonly("jf_evals", &RunResult::jf_evals)
      .def_readonly("trace", &RunResult::trace)
      .def_property_readonly("converged",
                             [](const RunResult& r) { return r.status == RunStatus::Converged; })
      .def("__repr__", [](const RunResult& r) {
        return "<RunResult " + to_string(r.status) + " iters=" + std::to_string(r.iterations) +
               ">";
      });

  m.def("list_problems", []() {
    std::vector<std::string> names;
    for (const auto& p : problem_suite()) names.push_back(p.name);
    return names;
  });
  m.def("get_problem", [](const std::string& name) {
    const Problem* p = find_problem(name);
    if (p == nullptr) throw std::invalid_argument("unknown problem: " + name);
    return *p;
  });
  m.def(
      "make_problem",
      [](const std::string& name, int n, int m, std::function<Vector(const Vector&)> objectives,
         std::function<Matrix(const Vector&)> jacobian, const Vector& lower, const Vector& upper,
         bool convex) {
        Problem p;
        p.name = name;
        p.n = n;
        p.m = m;
        p.objectives = std::move(objectives);
        p.jacobian = std::move(jacobian);
        p.lower = lower;
        p.upper = upper;
        p.convex = convex;
        return p;
      },
      py::arg("name"), py::arg("n"), py::arg("m"), py::arg("objectives"), py::arg("jacobian"),
      py::arg("lower"), py::arg("upper"), py::arg("convex") = false,
      "Wraps python callables as a problem; run with jobs=1 only.");

  m.def("random_start",
        [](const Problem& p, std::uint64_t seed) { return random_start(p, seed); },
        py::arg("problem"), py::arg("seed"));

  m.def(
      "solve",
      [](const Problem& p, const Vector& x0, const std::string& solver, double rho, double sigma,
         double vartheta, double epsilon, double tol, int max_iters, const std::string& r_choice,
         bool warm_start, const std::string& trace) {
        const SolverConfig cfg = config_from_kwargs(solver, rho, sigma, vartheta, epsilon, tol,
                                                    max_iters, r_choice, warm_start, trace);
        return run(p, x0, cfg);
      },
      py::arg("problem"), py::arg("x0"), py::arg("solver") = "global-bfgs",
      py::arg("rho") = 1e-4, py::arg("sigma") = 0.1, py::arg("vartheta") = 0.1,
      py::arg("epsilon") = 1e-6, py::arg("tol") = 7.450580596923828e-8,
      py::arg("max_iters") = 2000, py::arg("r_choice") = "choice2",
      py::arg("warm_start") = false, py::arg("trace") = "none");

  m.def(
      "multistart",
      [](const Problem& p, int n_starts, std::uint64_t seed, const std::string& solver,
         double rho, double sigma, double vartheta, double epsilon, double tol, int max_iters,
         const std::string& r_choice, bool warm_start, const std::string& trace, int jobs) {
        const SolverConfig cfg = config_from_kwargs(solver, rho, sigma, vartheta, epsilon, tol,
                                                    max_iters, r_choice, warm_start, trace);
        return run_multistart(p, n_starts, seed, cfg, jobs);
      },
      py::arg("problem"), py::arg("n_starts"), py::arg("seed"),
      py::arg("solver") = "global-bfgs", py::arg("rho") = 1e-4, py::arg("sigma") = 0.1,
      py::arg("vartheta") = 0.1, py::arg("epsilon") = 1e-6,
      py::arg("tol") = 7.450580596923828e-8, py::arg("max_iters") = 2000,
      py::arg("r_choice") = "choice2", py::arg("warm_start") = false, py::arg("trace") = "none",
      py::arg("jobs") = 1);

  m.def(
      "solve_direction",
      [](const Matrix& gradients, const std::vector<Matrix>& hessians) {
        const DirectionSolution sol = solve_direction(gradients, hessians_from_list(hessians));
        return py::make_tuple(sol.d, sol.theta, sol.lambda);
      },
      py::arg("gradients"), py::arg("hessians"),
      "Returns (d, theta, lambda) for the min-max direction subproblem.");

  m.def(
      "solve_steepest",
      [](const Matrix& gradients) {
        const SteepestDescentSolution sol = solve_steepest(gradients);
        return py::make_tuple(sol.d, sol.lambda);
      },
      py::arg("gradients"));

  m.def("descent_value", &descent_value, py::arg("gradients"), py::arg("d"));
  m.def("project_simplex", &project_simplex, py::arg("v"));

  m.def(
      "nondominated_filter",
      [](const std::vector<Vector>& points) {
        const FrontArchive archive = nondominated_filter(points);
        std::vector<Vector> out;
        out.reserve(archive.points.size());
        for (const auto& p : archive.points) out.push_back(p.f);
        return out;
      },
      py::arg("points"));

  m.def(
      "purity",
      [](const std::vector<Vector>& front, const std::vector<Vector>& reference) {
        FrontArchive f, r;
        for (const auto& v : front) f.points.push_back(FrontPoint{v, "", "", -1});
        for (const auto& v : reference) r.points.push_back(FrontPoint{v, "", "", -1});
        if (!front.empty()) f.m = static_cast<int>(front.front().size());
        if (!reference.empty()) r.m = static_cast<int>(reference.front().size());
        return purity(f, r).value;
      },
      py::arg("front"), py::arg("reference"));

  m.def(
      "spread_metrics",
      [](const std::vector<Vector>& front, const std::optional<std::vector<Vector>>& extremes) {
        FrontArchive f;
        for (const auto& v : front) f.points.push_back(FrontPoint{v, "", "", -1});
        if (!front.empty()) f.m = static_cast<int>(front.front().size());
        const SpreadResult sp = spread_metrics(f, extremes);
        return py::make_tuple(sp.gamma, sp.delta);
      },
      py::arg("front"), py::arg("extremes") = std::nullopt);

  m.def(
      "performance_profile",
      [](const Matrix& cost, const std::vector<std::string>& solvers) {
        ProfileTable table;
        table.solvers = solvers;
        for (Eigen::Index i = 0; i < cost.rows(); ++i)
          table.instances.push_back(std::to_string(i));
        table.cost = cost;
        py::dict out;
        for (const auto& curve : performance_profile(table)) {
          out[py::str(curve.solver)] = py::make_tuple(curve.tau, curve.rho);
        }
        return out;
      },
      py::arg("cost"), py::arg("solvers"),
      "Cost matrix rows are instances, columns are solvers; +inf marks failures.");

  m.def(
      "run_benchmark",
      [](const std::vector<std::string>& problems, const std::vector<std::string>& solvers,
         int n_starts, std::uint64_t seed, const std::string& outdir, int jobs) {
        ExperimentSpec spec;
        spec.problems = problems;
        spec.solvers = solvers;
        spec.n_starts = n_starts;
        spec.seed = seed;
        spec.outdir = outdir;
        spec.jobs = jobs;
        const ResultsBundle bundle = run_benchmark(spec);
        py::dict out;
        out["runs"] = bundle.runs.size();
        long converged = 0;
        for (const auto& r : bundle.runs)
          if (r.status == RunStatus::Converged) ++converged;
        out["converged"] = converged;
        out["outdir"] = outdir;
        return out;
      },
      py::arg("problems"), py::arg("solvers"), py::arg("n_starts") = 10, py::arg("seed") = 1,
      py::arg("outdir") = "benchmark-out", py::arg("jobs") = 1);

  m.attr("__version__") = "0.1.0";
}
