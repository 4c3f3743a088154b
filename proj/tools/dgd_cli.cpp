// dgd: command-line driver for the DGD verification and experiment suite

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <unsupported/Eigen/MatrixFunctions>
#include <json.hpp>

#include "dgd/analysis.hpp"
#include "dgd/euler.hpp"
#include "dgd/io.hpp"

namespace fs = std::filesystem;
using json = nlohmann::json;
using namespace dgd;

namespace
{
constexpr int exit_ok = 0;
constexpr int exit_numerical = 1;
constexpr int exit_config = 2;

struct Config
{
   std::string command;
   std::string problem = "unsteady-vortex";
   int dim = 0;
   int p = 1;
   int K = 0;
   int N = 0;
   std::string flux = "stable";
   double cfl = 0.0;
   double final_time = -1.0;
   bool relaxation = true;
   std::vector<int> sizes;
   double normalization = 0.0;
   std::string output_dir = ".";
   unsigned seed = 1;
};

class ConfigError : public std::runtime_error
{
public:
   using std::runtime_error::runtime_error;
};

/// Checks that decide the exit code
class Checks
{
public:
   void add(const std::string &name, double value, double tol, bool upper = true)
   {
      const bool ok = std::isfinite(value) && (upper ? value <= tol : value >= tol);
      items_.push_back({{"name", name},
                        {"value", value},
                        {"bound", tol},
                        {"kind", upper ? "max" : "min"},
                        {"passed", ok}});
      passed_ = passed_ && ok;
      std::cout << (ok ? "ok    " : "FAIL  ") << name << " = " << format_double(value)
                << (upper ? " (<= " : " (>= ") << tol << ")\n";
   }
   bool passed() const { return passed_; }
   const json &items() const { return items_; }

private:
   json items_ = json::array();
   bool passed_ = true;
};

int default_dim(const std::string &problem)
{
   return problem == "unsteady-vortex" ? 2 : 1;
}

void validate(Config &c)
{
   const auto ids = problem_ids();
   if (std::find(ids.begin(), ids.end(), c.problem) == ids.end())
   {
      throw ConfigError("unknown problem '" + c.problem + "'");
   }
   if (c.dim == 0)
   {
      c.dim = c.command == "verify-operators" ? 1 : default_dim(c.problem);
   }
   if (c.dim != 1 && c.dim != 2)
   {
      throw ConfigError("dim must be 1 or 2");
   }
   if (c.command != "verify-operators" && c.problem != "advection" &&
       c.dim != default_dim(c.problem))
   {
      throw ConfigError("problem '" + c.problem + "' is defined in " +
                        std::to_string(default_dim(c.problem)) + "D only");
   }
   const int pmax = c.dim == 1 ? 4 : 2;
   if (c.p < 1 || c.p > pmax)
   {
      throw ConfigError("degree p = " + std::to_string(c.p) + " is not supported in " +
                        std::to_string(c.dim) + "D (1.." + std::to_string(pmax) + ")");
   }
   if (c.K < 0 || c.N < 0)
   {
      throw ConfigError("mesh sizes must be positive");
   }
   if (c.flux != "conservative" && c.flux != "stable")
   {
      throw ConfigError("flux must be 'conservative' or 'stable'");
   }
   if (c.cfl < 0.0)
   {
      throw ConfigError("cfl must be positive");
   }
   for (int n : c.sizes)
   {
      if (n < 1)
      {
         throw ConfigError("sizes must be positive");
      }
   }
   if (c.problem == "sod" && c.final_time >= 0.0 &&
       c.final_time != make_problem("sod").final_time)
   {
      throw ConfigError("the shock tube is compared with the exact solution at t = 0.3 only");
   }
}

/// K in 1D, N in 2D, with a default when neither was given
int mesh_size(const Config &c, int def)
{
   const int n = c.dim == 1 ? c.K : c.N;
   return n > 0 ? n : def;
}

std::shared_ptr<Mesh> make_mesh(const ProblemSpec &ps, int n)
{
   if (ps.dim == 1)
   {
      return std::make_shared<Mesh>(
          build_interval_mesh(n, ps.lower(0), ps.upper(0), ps.periodic));
   }
   return std::make_shared<Mesh>(
       build_structured_tri_mesh(n, ps.lower, ps.upper, ps.periodic));
}

std::ofstream open_output(const Config &c, const std::string &name)
{
   const fs::path path = fs::path(c.output_dir) / name;
   std::ofstream os(path);
   if (!os)
   {
      throw ConfigError("cannot write " + path.string());
   }
   return os;
}

TimeOptions time_options(const Config &c, const ProblemSpec &ps)
{
   TimeOptions opts;
   opts.cfl = c.cfl > 0.0 ? c.cfl : ps.cfl;
   opts.relaxation = c.relaxation;
   return opts;
}

json operator_checks(const Config &c, Checks &checks)
{
   std::ofstream csv_file = open_output(c, "operator_checks.csv");
   CsvWriter csv(csv_file, {"mesh", "check", "value", "bound", "passed"});
   json out;
   auto record = [&](const std::string &mesh, const std::string &name, double value,
                     double tol, bool upper = true)
   {
      checks.add(mesh + "/" + name, value, tol, upper);
      const bool ok = std::isfinite(value) && (upper ? value <= tol : value >= tol);
      csv.row({mesh, name, value, tol, std::string(ok ? "true" : "false")});
      out[mesh][name] = value;
   };

   const SbpOperator ref = build_reference_sbp(c.p, c.dim);
   const SbpReport sr = verify_sbp(ref, c.p);
   record("reference", "sbp_accuracy", sr.accuracy, 1e-12);
   record("reference", "sbp_min_norm", sr.min_norm, 0.0, false);
   record("reference", "sbp_skew", sr.skew, 1e-14);
   record("reference", "sbp_compatibility", sr.compatibility, 1e-13);
   record("reference", "sbp_boundary", sr.boundary, 1e-12);
   record("reference", "sbp_quadrature_degree", sr.quadrature_degree, 2.0 * c.p, false);

   std::mt19937 rng(c.seed);
   std::uniform_real_distribution<double> U(-1.0, 1.0);
   for (bool periodic : {true, false})
   {
      const std::string name = periodic ? "periodic" : "bounded";
      const int n = mesh_size(c, c.dim == 1 ? 16 : 4);
      auto mesh = std::make_shared<Mesh>(c.dim == 1 ? build_interval_mesh(n, 0.0, 1.0, periodic)
                                                    : build_structured_tri_mesh(n, periodic));
      const DgdSpace space = build_dgd_space(mesh, c.p);
      const GlobalOperator op = assemble_global(space);

      const SbpReport er = verify_sbp(space.ops[0], c.p);
      record(name, "element_sbp_accuracy", er.accuracy, 1e-11);
      record(name, "element_sbp_boundary", er.boundary, 1e-12);

      const QuadratureCheck qc = quadrature_check(space, op);
      record(name, "quadrature_mass", qc.mass, 1e-12);
      record(name, "quadrature_derivative", qc.derivative, 1e-12);
      record(name, "quadrature_boundary", qc.boundary, 1e-12);

      const DenseNormReport dr = verify_dense_norm_sbp(op, space);
      record(name, "mass_min_eigenvalue", dr.min_mass_eigenvalue, 0.0, false);
      record(name, "mass_symmetry", dr.mass_symmetry, 1e-14);
      record(name, "dense_accuracy", dr.accuracy, 1e-11);
      record(name, "dense_compatibility", dr.compatibility, 1e-13);
      record(name, "dense_skew", dr.skew, 1e-13);
      record(name, "dense_boundary", dr.boundary, 1e-11);
      if (periodic)
      {
         record(name, "dense_conservation", dr.conservation, 1e-13);
      }

      const int K = space.num_elements();
      Vector u(K), v(K), dudt(K);
      for (int i = 0; i < K; ++i)
      {
         u(i) = U(rng);
         v(i) = U(rng);
         dudt(i) = U(rng);
      }
      const Point vel = c.dim == 1 ? Point(1.0, 0.0) : Point(1.0, 0.5);
      const EquivalenceReport eq = sbp_dgd_equivalence_check(space, op, vel, u, v, dudt);
      record(name, "equivalence_temporal", eq.temporal, 1e-13);
      record(name, "equivalence_volume", eq.volume, 1e-13);
      record(name, "equivalence_boundary", eq.boundary, 1e-13);
   }
   return out;
}

json run_advection(const Config &c, const ProblemSpec &ps, Checks &checks)
{
   const int n = mesh_size(c, c.dim == 1 ? 32 : 8);
   const double T = c.final_time >= 0.0 ? c.final_time : ps.final_time;
   auto mesh = make_mesh(ps, n);
   const DgdSpace space = build_dgd_space(mesh, c.p);
   const GlobalOperator op = assemble_global(space);
   const LinearAdvection adv(op, ps.velocity);
   const int K = space.num_elements();
   Vector u0(K);
   for (int k = 0; k < K; ++k)
   {
      u0(k) = ps.initial(mesh->centroids()[k])(0);
   }
   const Matrix B = Matrix(op.M).llt().solve(Matrix(adv.stiffness()));
   const Vector uT = (T * B).exp() * u0;
   const double err =
       advection_l2_error(space, uT, [&](const Point &x) { return ps.exact(x, T)(0); });
   const double mass0 = Vector::Ones(K).dot(op.M * u0);
   const double mass1 = Vector::Ones(K).dot(op.M * uT);
   checks.add("mass_drift", std::abs(mass1 - mass0) / std::max(1.0, std::abs(mass0)), 1e-10);

   std::ofstream os = open_output(c, "solution.csv");
   CsvWriter csv(os, {"x", "y", "u", "exact"});
   for (int k = 0; k < K; ++k)
   {
      const Point &x = mesh->centroids()[k];
      csv.row({x(0), x(1), uT(k), ps.exact(x, T)(0)});
   }
   return {{"elements", K}, {"final_time", T}, {"l2_error", err}};
}

void write_state_csv(std::ostream &os, const SemiDiscretization &sd, const Vector &w)
{
   const Mesh &mesh = *sd.space().mesh;
   const Matrix cw = centroid_entropy_vars(sd, w);
   const int d = sd.dim();
   std::vector<std::string> header{"x", "y", "rho", "u", "v", "p"};
   CsvWriter csv(os, header);
   for (int k = 0; k < sd.num_elements(); ++k)
   {
      const Vector q = euler::state_from_entropy_vars(d, cw.col(k));
      const Point &x = mesh.centroids()[k];
      csv.row({x(0), x(1), q(0), q(1) / q(0), d == 2 ? q(2) / q(0) : 0.0,
               euler::pressure(d, q)});
   }
}

json entropy_summary(const Config &c,
                     const std::vector<StepRecord> &hist,
                     FluxMode mode,
                     Checks &checks)
{
   double max_abs = 0.0;
   double max_change = -std::numeric_limits<double>::infinity();
   double max_relax = 0.0;
   for (std::size_t n = 1; n < hist.size(); ++n)
   {
      max_abs = std::max(max_abs, std::abs(hist[n].entropy_change));
      max_change = std::max(max_change, hist[n].entropy_change);
      max_relax = std::max(max_relax, std::abs(hist[n].relaxation_residual) /
                                          std::max(1.0, std::abs(hist[n].entropy)));
   }
   if (hist.size() < 2)
   {
      max_change = 0.0;
   }
   if (c.relaxation)
   {
      checks.add("relaxation_residual", max_relax, 1e-12);
      if (mode == FluxMode::Conservative)
      {
         checks.add("max_abs_entropy_change", max_abs, 1e-10);
      }
      else
      {
         checks.add("max_entropy_change", max_change, 1e-14);
      }
   }
   return {{"entropy_initial", hist.front().entropy},
           {"entropy_final", hist.back().entropy},
           {"max_abs_entropy_change", max_abs},
           {"max_entropy_change", max_change},
           {"max_relaxation_residual", max_relax}};
}

json run_euler(const Config &c, const ProblemSpec &ps, Checks &checks)
{
   const FluxMode mode = parse_flux_mode(c.flux);
   const TimeOptions opts = time_options(c, ps);
   json out;
   out["cfl"] = opts.cfl;
   out["relaxation"] = opts.relaxation;
   if (ps.id == "sod")
   {
      const int K = mesh_size(c, 100);
      const SodResult res = run_sod(c.p, K, mode, opts);
      std::ofstream os = open_output(c, "sod_profile.csv");
      write_sod_profile_csv(os, res);
      std::ofstream hs = open_output(c, "entropy_history.csv");
      write_entropy_history_csv(hs, res.trajectory.history);
      out.update(entropy_summary(c, res.trajectory.history, mode, checks));
      out["elements"] = K;
      out["final_time"] = ps.final_time;
      out["steps"] = res.trajectory.steps;
      out["split_steps"] = res.trajectory.split_steps;
      out["fallback_steps"] = res.trajectory.fallback_steps;
      out["l1_error_w1"] = res.l1_error;
      out["l1_error_w1_centroids"] = res.l1_error_centroids;
      out["exact_positions"] = res.exact_positions;
      out["detected_positions"] = res.detected_positions;
      const double h = 1.0 / K;
      for (std::size_t i = 0; i < res.exact_positions.size(); ++i)
      {
         checks.add(i == 0 ? "contact_offset_cells" : "shock_offset_cells",
                    std::abs(res.detected_positions[i] - res.exact_positions[i]) / h, 2.0);
      }
      return out;
   }

   const int n = mesh_size(c, ps.dim == 1 ? 32 : 8);
   const double T = c.final_time >= 0.0 ? c.final_time : ps.final_time;
   auto mesh = make_mesh(ps, n);
   auto space = std::make_shared<DgdSpace>(build_dgd_space(mesh, c.p));
   const SemiDiscretization sd(space, mode, ps.ghost);
   const Vector w0 = sd.initial_coefficients(ps.initial);
   const Vector tot0 = sd.conserved_totals(w0);
   double drift = 0.0;
   const Trajectory tr = advance(sd, w0, T, opts,
                                 [&](const StepRecord &, const Vector &w)
                                 {
                                    const Vector tot = sd.conserved_totals(w);
                                    for (int i = 0; i < tot.size(); ++i)
                                    {
                                       drift = std::max(drift, std::abs(tot(i) - tot0(i)) /
                                                                   std::max(1.0, std::abs(tot0(i))));
                                    }
                                 });
   if (!tr.w.allFinite())
   {
      throw Error("non-finite solution");
   }
   std::ofstream hs = open_output(c, "entropy_history.csv");
   write_entropy_history_csv(hs, tr.history);
   std::ofstream ss = open_output(c, "solution.csv");
   write_state_csv(ss, sd, tr.w);

   out.update(entropy_summary(c, tr.history, mode, checks));
   out["elements"] = sd.num_elements();
   out["final_time"] = T;
   out["time_step"] = stable_time_step(sd, w0, opts.cfl);
   out["steps"] = tr.steps;
   out["split_steps"] = tr.split_steps;
   out["fallback_steps"] = tr.fallback_steps;
   out["conservation_drift"] = drift;
   if (ps.periodic && !c.relaxation)
   {
      checks.add("conservation_drift", drift, 1e-10);
   }
   if (ps.exact)
   {
      out["density_l2_error"] = density_l2_error(
          sd, tr.w, [&](const Point &x) { return ps.exact(x, T)(0); });
   }
   return out;
}

json run_spectra(const Config &c, Checks &checks)
{
   const ProblemSpec ps = make_problem(c.problem, c.dim);
   if (ps.equation != "euler")
   {
      throw ConfigError("spectra are computed for the Euler problems");
   }
   const FluxMode mode = parse_flux_mode(c.flux);
   const int n = mesh_size(c, ps.dim == 1 ? 16 : 8);
   auto mesh = make_mesh(ps, n);
   auto space = std::make_shared<DgdSpace>(build_dgd_space(mesh, c.p));
   const SemiDiscretization sd(space, mode, ps.ghost);
   const Vector w0 = sd.initial_coefficients(ps.initial);
   const Linearization lin = assemble_linearization(sd, w0);
   const SpectrumReport rep = compute_spectrum(lin.M, lin.J, c.normalization);
   std::ofstream os = open_output(c, "spectrum.csv");
   write_spectrum_csv(os, rep);
   checks.add("max_normalized_real", rep.max_normalized_real(),
              mode == FluxMode::Stable ? 1e-8 : 5e-3);
   return {{"elements", sd.num_elements()},
           {"eigenvalues", rep.eigenvalues.size()},
           {"spectral_radius", rep.spectral_radius},
           {"normalization", rep.normalization},
           {"max_real", rep.max_real},
           {"max_normalized_real", rep.max_normalized_real()}};
}

json run_convergence(const Config &c, Checks &checks)
{
   std::vector<ConvergenceRow> rows;
   double bound = 0.0;
   if (c.problem == "advection")
   {
      const ProblemSpec ps = make_problem("advection", c.dim);
      std::vector<int> sizes = c.sizes;
      if (sizes.empty())
      {
         sizes = c.dim == 1 ? std::vector<int>{16, 32, 64, 128} : std::vector<int>{4, 8, 16};
      }
      rows = advection_convergence(c.p, c.dim, sizes,
                                   c.final_time >= 0.0 ? c.final_time : ps.final_time);
      bound = c.p + 0.5;
   }
   else if (c.problem == "entropy-wave")
   {
      const ProblemSpec ps = make_problem("entropy-wave");
      std::vector<int> sizes = c.sizes.empty() ? std::vector<int>{16, 32, 64} : c.sizes;
      rows = entropy_wave_convergence(c.p, parse_flux_mode(c.flux), sizes,
                                      c.final_time >= 0.0 ? c.final_time : ps.final_time,
                                      time_options(c, ps));
      bound = c.p;
   }
   else
   {
      throw ConfigError("convergence studies use 'advection' or 'entropy-wave'");
   }
   std::ofstream os = open_output(c, "convergence.csv");
   write_convergence_csv(os, rows);
   json table = json::array();
   for (const auto &r : rows)
   {
      table.push_back({{"K", r.K}, {"h", r.h}, {"error", r.error}, {"rate", r.rate}});
   }
   if (rows.size() >= 2)
   {
      checks.add("last_rate", rows.back().rate, bound, false);
   }
   return {{"rows", table}};
}

int execute(Config &c)
{
   validate(c);
   fs::create_directories(c.output_dir);
   const int threads = configure_threads();
   const auto start = std::chrono::steady_clock::now();
   Checks checks;
   json summary;
   summary["command"] = c.command;
   summary["problem"] = c.problem;
   summary["dim"] = c.dim;
   summary["p"] = c.p;
   summary["flux"] = c.flux;
   summary["seed"] = c.seed;
   summary["threads"] = threads;
   try
   {
      if (c.command == "verify-operators")
      {
         summary.erase("problem");
         summary.erase("flux");
         summary["results"] = operator_checks(c, checks);
      }
      else if (c.command == "run")
      {
         const ProblemSpec ps = make_problem(c.problem, c.dim);
         summary["results"] = ps.equation == "advection" ? run_advection(c, ps, checks)
                                                         : run_euler(c, ps, checks);
      }
      else if (c.command == "spectra")
      {
         summary["results"] = run_spectra(c, checks);
      }
      else
      {
         summary["results"] = run_convergence(c, checks);
      }
   }
   catch (const InvalidArgument &e)
   {
      throw ConfigError(e.what());
   }
   catch (const Error &e)
   {
      summary["error"] = e.what();
      summary["checks"] = checks.items();
      summary["passed"] = false;
      std::ofstream os = open_output(c, "summary.json");
      os << summary.dump(2) << "\n";
      std::cerr << "numerical failure: " << e.what() << "\n";
      return exit_numerical;
   }
   summary["checks"] = checks.items();
   summary["passed"] = checks.passed();
   summary["runtime_seconds"] =
       std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
   std::ofstream os = open_output(c, "summary.json");
   os << summary.dump(2) << "\n";
   std::cout << (checks.passed() ? "all checks passed" : "some checks failed") << "\n";
   return checks.passed() ? exit_ok : exit_numerical;
}
}  // namespace

int main(int argc, char **argv)
{
   CLI::App app{"Entropy-conservative and entropy-stable DGD discretizations"};
   app.set_config("--config", "", "Read options from a key = value file");
   app.require_subcommand(1);
   app.fallthrough();

   Config c;
   app.add_option("--problem", c.problem, "advection, entropy-wave, sod or unsteady-vortex");
   app.add_option("--dim", c.dim, "Spatial dimension (default from the problem)");
   app.add_option("--p", c.p, "DGD degree");
   app.add_option("--K", c.K, "Number of intervals in 1D");
   app.add_option("--N", c.N, "Cells per side of the 2D mesh");
   app.add_option("--flux", c.flux, "conservative or stable");
   app.add_option("--cfl", c.cfl, "CFL number (default from the problem)");
   app.add_option("--final-time", c.final_time, "Final time (default from the problem)");
   app.add_option("--relaxation", c.relaxation, "Relaxation of the midpoint step (on/off)");
   app.add_option("--sizes", c.sizes, "Mesh sizes of a convergence study")->delimiter(',');
   app.add_option("--normalization", c.normalization,
                  "Eigenvalue normalization (default: spectral radius)");
   app.add_option("--output-dir", c.output_dir, "Directory for CSV and JSON output");
   app.add_option("--seed", c.seed, "Seed for random verification data");

   for (const char *name : {"verify-operators", "run", "spectra", "convergence"})
   {
      app.add_subcommand(name)->callback([&c, name] { c.command = name; });
   }
   app.get_subcommand("verify-operators")
       ->description("SBP, quadrature, dense-norm and equivalence checks");
   app.get_subcommand("run")->description("Integrate a problem in time");
   app.get_subcommand("spectra")->description("Spectrum of the linearized operator");
   app.get_subcommand("convergence")->description("Mesh refinement study");

   try
   {
      app.parse(argc, argv);
   }
   catch (const CLI::ParseError &e)
   {
      const int code = app.exit(e);
      return code == 0 ? exit_ok : exit_config;
   }
   try
   {
      return execute(c);
   }
   catch (const ConfigError &e)
   {
      std::cerr << "configuration error: " << e.what() << "\n";
      return exit_config;
   }
   catch (const std::exception &e)
   {
      std::cerr << "error: " << e.what() << "\n";
      return exit_numerical;
   }
}
