#include "dgd/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

#include <unsupported/Eigen/MatrixFunctions>

#include "dgd/euler.hpp"
#include "dgd/io.hpp"

namespace dgd
{
Linearization assemble_linearization(const SemiDiscretization &sd,
                                     const Vector &w0)
{
   return {sd.mass_jacobian(w0), sd.residual_jacobian(w0)};
}

namespace
{
SpectrumReport finish_spectrum(Eigen::VectorXcd ev, double normalization)
{
   std::vector<std::complex<double>> v(ev.data(), ev.data() + ev.size());
   std::sort(v.begin(), v.end(),
             [](const auto &a, const auto &b)
             {
                return a.real() != b.real() ? a.real() < b.real()
                                            : a.imag() < b.imag();
             });
   SpectrumReport rep;
   rep.eigenvalues = Eigen::Map<Eigen::VectorXcd>(v.data(), v.size());
   rep.max_real = -std::numeric_limits<double>::infinity();
   for (const auto &z : v)
   {
      rep.spectral_radius = std::max(rep.spectral_radius, std::abs(z));
      rep.max_real = std::max(rep.max_real, z.real());
   }
   rep.normalization =
       normalization > 0.0 ? normalization : std::max(rep.spectral_radius, 1e-300);
   return rep;
}

}  // namespace

SpectrumReport compute_spectrum(const SparseMatrix &M,
                                const SparseMatrix &J,
                                double normalization)
{
   const Matrix Md(M);
   Eigen::LLT<Matrix> llt(Md);
   if (llt.info() != Eigen::Success)
   {
      throw Error("mass Jacobian is not positive definite");
   }
   const auto L = llt.matrixL();
   Matrix B = -Matrix(J);
   L.solveInPlace(B);
   Matrix Bt = B.transpose();
   L.solveInPlace(Bt);
   Eigen::EigenSolver<Matrix> es(Bt.transpose(), false);
   if (es.info() != Eigen::Success)
   {
      throw Error("eigensolver failed");
   }
   return finish_spectrum(es.eigenvalues(), normalization);
}

SpectrumReport compute_spectrum(const Matrix &A, double normalization)
{
   Eigen::EigenSolver<Matrix> es(A, false);
   if (es.info() != Eigen::Success)
   {
      throw Error("eigensolver failed");
   }
   return finish_spectrum(es.eigenvalues(), normalization);
}

double l2_error(const DgdSpace &space,
                const std::function<Vector(int)> &nodal_values,
                const std::function<double(const Point &)> &exact)
{
   double sum = 0.0;
   for (int k = 0; k < space.num_elements(); ++k)
   {
      const SbpOperator &op = space.ops[k];
      const Vector v = nodal_values(k);
      for (int q = 0; q < op.size(); ++q)
      {
         const double e = v(q) - exact(op.nodes[q]);
         sum += op.H(q) * e * e;
      }
   }
   return std::sqrt(sum);
}

double advection_l2_error(const DgdSpace &space,
                          const Vector &u,
                          const std::function<double(const Point &)> &exact)
{
   return l2_error(space, [&](int k) { return space.prolong(k, u); }, exact);
}

double density_l2_error(const SemiDiscretization &sd,
                        const Vector &w,
                        const std::function<double(const Point &)> &exact)
{
   return l2_error(
       sd.space(),
       [&](int k) { return Vector(sd.nodal_states(w, k).row(0).transpose()); },
       exact);
}

Matrix centroid_entropy_vars(const SemiDiscretization &sd, const Vector &w)
{
   const DgdSpace &space = sd.space();
   const int s = sd.num_vars();
   const auto &cent = space.mesh->centroids();
   Matrix out(s, sd.num_elements());
   for (int k = 0; k < sd.num_elements(); ++k)
   {
      const std::vector<Point> at = {cent[k]};
      const Prolongation pr =
          build_prolongation(space.stencils[k], space.degree, space.dim, at);
      Vector wc = Vector::Zero(s);
      for (std::size_t m = 0; m < pr.columns.size(); ++m)
      {
         wc += pr.P(0, m) * w.segment(pr.columns[m] * s, s);
      }
      out.col(k) = wc;
   }
   return out;
}

double l1_error(const SemiDiscretization &sd,
                const Vector &w,
                const std::function<Vector(const Point &)> &exact,
                int component)
{
   const DgdSpace &space = sd.space();
   double sum = 0.0;
   for (int k = 0; k < sd.num_elements(); ++k)
   {
      const Matrix W = sd.nodal_entropy_vars(w, k);
      const SbpOperator &op = space.ops[k];
      for (int q = 0; q < op.size(); ++q)
      {
         const Vector we = euler::entropy_vars(sd.dim(), exact(op.nodes[q]));
         sum += op.H(q) * std::abs(W(component, q) - we(component));
      }
   }
   return sum;
}

double l1_error_centroids(const SemiDiscretization &sd,
                          const Vector &w,
                          const std::function<Vector(const Point &)> &exact,
                          int component)
{
   const Matrix wc = centroid_entropy_vars(sd, w);
   const Mesh &mesh = *sd.space().mesh;
   double sum = 0.0;
   for (int k = 0; k < sd.num_elements(); ++k)
   {
      const Vector we = euler::entropy_vars(sd.dim(), exact(mesh.centroids()[k]));
      sum += std::abs(wc(component, k) - we(component)) *
             mesh.element_measures()[k];
   }
   return sum;
}

void compute_rates(std::vector<ConvergenceRow> &rows)
{
   for (std::size_t i = 0; i < rows.size(); ++i)
   {
      rows[i].rate = i == 0 ? std::nan("")
                            : std::log(rows[i - 1].error / rows[i].error) /
                                  std::log(rows[i - 1].h / rows[i].h);
   }
}

std::vector<ConvergenceRow> advection_convergence(int p,
                                                  int dim,
                                                  const std::vector<int> &sizes,
                                                  double T)
{
   const ProblemSpec ps = make_problem("advection", dim);
   std::vector<ConvergenceRow> rows;
   for (int n : sizes)
   {
      auto mesh = std::make_shared<Mesh>(
          dim == 1 ? build_interval_mesh(n, 0.0, 1.0, true)
                   : build_structured_tri_mesh(n, true));
      const DgdSpace space = build_dgd_space(mesh, p);
      const GlobalOperator op = assemble_global(space);
      LinearAdvection adv(op, ps.velocity);
      const int K = space.num_elements();
      Vector u0(K);
      for (int k = 0; k < K; ++k)
      {
         u0(k) = ps.initial(mesh->centroids()[k])(0);
      }
      const Matrix Md(op.M);
      const Matrix B = Md.llt().solve(Matrix(adv.stiffness()));
      const Matrix E = (T * B).exp();
      const Vector uT = E * u0;
      ConvergenceRow row;
      row.K = K;
      row.h = 1.0 / n;
      row.error = advection_l2_error(
          space, uT, [&](const Point &x) { return ps.exact(x, T)(0); });
      rows.push_back(row);
   }
   compute_rates(rows);
   return rows;
}

std::vector<ConvergenceRow> entropy_wave_convergence(
    int p,
    FluxMode mode,
    const std::vector<int> &sizes,
    double T,
    const TimeOptions &opts)
{
   const ProblemSpec ps = make_problem("entropy-wave");
   std::vector<ConvergenceRow> rows;
   for (int K : sizes)
   {
      auto mesh = std::make_shared<Mesh>(build_interval_mesh(K, 0.0, 1.0, true));
      auto space = std::make_shared<DgdSpace>(build_dgd_space(mesh, p));
      SemiDiscretization sd(space, mode);
      const Vector w0 = sd.initial_coefficients(ps.initial);
      const Trajectory tr = advance(sd, w0, T, opts);
      ConvergenceRow row;
      row.K = K;
      row.h = 1.0 / K;
      row.error = density_l2_error(
          sd, tr.w, [&](const Point &x) { return ps.exact(x, T)(0); });
      rows.push_back(row);
   }
   compute_rates(rows);
   return rows;
}

double locate_discontinuity(const std::vector<double> &x,
                            const std::vector<double> &values,
                            double lo,
                            double hi,
                            double left,
                            double right)
{
   if (x.empty() || !(hi > lo) || left == right)
   {
      throw InvalidArgument("locate_discontinuity: empty window or plateaus");
   }
   const std::size_t n = x.size();
   double pos = lo;
   for (std::size_t i = 0; i < n; ++i)
   {
      const double a = i == 0 ? x[0] : 0.5 * (x[i - 1] + x[i]);
      const double b = i + 1 == n ? x[n - 1] : 0.5 * (x[i] + x[i + 1]);
      const double len = std::min(b, hi) - std::max(a, lo);
      if (len > 0.0)
      {
         pos += len * (values[i] - right) / (left - right);
      }
   }
   return pos;
}

SodResult run_sod(int p, int K, FluxMode mode, const TimeOptions &opts)
{
   const ProblemSpec ps = make_problem("sod");
   auto mesh = std::make_shared<Mesh>(build_interval_mesh(K, 0.0, 1.0, false));
   auto space = std::make_shared<DgdSpace>(build_dgd_space(mesh, p));
   SemiDiscretization sd(space, mode, ps.ghost);
   const Vector w0 = sd.initial_coefficients(ps.initial);
   SodResult res;
   res.K = K;
   res.p = p;
   res.trajectory = advance(sd, w0, ps.final_time, opts);
   const double T = ps.final_time;
   res.l1_error = l1_error(
       sd, res.trajectory.w, [&](const Point &x) { return ps.exact(x, T); }, 0);
   res.l1_error_centroids = l1_error_centroids(
       sd, res.trajectory.w, [&](const Point &x) { return ps.exact(x, T); }, 0);
   res.w = centroid_entropy_vars(sd, res.trajectory.w);
   res.primitive.resize(3, K);
   std::vector<double> rho(K);
   SodExact exact;
   for (int k = 0; k < K; ++k)
   {
      const double x = mesh->centroids()[k](0);
      res.x.push_back(x);
      const Vector u = euler::state_from_entropy_vars(1, res.w.col(k));
      const double r = u(0);
      const double vel = u(1) / r;
      res.primitive.col(k) << r, vel, euler::pressure(1, u);
      rho[k] = r;
      res.exact_w1.push_back(euler::entropy_vars(1, exact.state(x, T))(0));
   }
   const std::vector<double> waves = exact.wave_positions(T);
   const double tail = waves[1];
   const double contact = waves[2];
   const double shock = waves[3];
   const double a = 0.5 * (tail + contact);
   const double b = 0.5 * (contact + shock);
   std::vector<double> pres(res.primitive.row(2).begin(),
                            res.primitive.row(2).end());
   res.exact_positions = {contact, shock};
   res.detected_positions = {
       locate_discontinuity(res.x, rho, a, b, exact.primitive(a, T)(0),
                            exact.primitive(b, T)(0)),
       locate_discontinuity(res.x, pres, b, 2.0 * shock - b,
                            exact.primitive(b, T)(2),
                            exact.primitive(2.0 * shock - b, T)(2))};
   return res;
}

void write_spectrum_csv(std::ostream &os, const SpectrumReport &rep)
{
   CsvWriter csv(os, {"re", "im", "normalized_re", "normalized_im"});
   for (int i = 0; i < rep.eigenvalues.size(); ++i)
   {
      const auto z = rep.eigenvalues(i);
      csv.row({z.real(), z.imag(), z.real() / rep.normalization,
               z.imag() / rep.normalization});
   }
}

void write_convergence_csv(std::ostream &os,
                           const std::vector<ConvergenceRow> &rows)
{
   CsvWriter csv(os, {"K", "h", "error", "rate"});
   for (const auto &r : rows)
   {
      csv.row({static_cast<long long>(r.K), r.h, r.error, r.rate});
   }
}

void write_entropy_history_csv(std::ostream &os,
                               const std::vector<StepRecord> &history)
{
   CsvWriter csv(os, {"step", "t", "S", "dS", "beta"});
   for (const auto &r : history)
   {
      csv.row({static_cast<long long>(r.step), r.t, r.entropy,
               r.entropy_change, r.beta});
   }
}

void write_sod_profile_csv(std::ostream &os, const SodResult &res)
{
   CsvWriter csv(os, {"x", "rho", "u", "p", "w1", "exact_rho", "exact_u",
                      "exact_p", "exact_w1"});
   SodExact exact;
   const double T = make_problem("sod").final_time;
   for (std::size_t k = 0; k < res.x.size(); ++k)
   {
      const Eigen::Vector3d e = exact.primitive(res.x[k], T);
      csv.row({res.x[k], res.primitive(0, k), res.primitive(1, k),
               res.primitive(2, k), res.w(0, k), e(0), e(1), e(2),
               res.exact_w1[k]});
   }
}

}  // namespace dgd
