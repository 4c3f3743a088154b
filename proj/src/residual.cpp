#include "dgd/residual.hpp"

#include <algorithm>
#include <complex>
#include <cstdlib>
#include <exception>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "dgd/euler.hpp"

namespace dgd
{
FluxMode parse_flux_mode(const std::string &name)
{
   if (name == "conservative")
   {
      return FluxMode::Conservative;
   }
   if (name == "stable")
   {
      return FluxMode::Stable;
   }
   throw InvalidArgument("unknown flux mode '" + name +
                         "' (expected conservative or stable)");
}

std::string to_string(FluxMode mode)
{
   return mode == FluxMode::Conservative ? "conservative" : "stable";
}

int configure_threads()
{
#ifdef _OPENMP
   if (const char *env = std::getenv("DGD_NUM_THREADS"))
   {
      char *end = nullptr;
      const long n = std::strtol(env, &end, 10);
      if (end != env && *end == '\0' && n > 0)
      {
         omp_set_num_threads(static_cast<int>(n));
      }
   }
   return omp_get_max_threads();
#else
   return 1;
#endif
}

namespace
{
/// Run body(k) for k in [0, n) in parallel and rethrow the first failure
/// in element order
template <typename Body>
void parallel_elements(int n, Body &&body)
{
   std::vector<std::exception_ptr> errors(n);
#pragma omp parallel for schedule(dynamic, 4)
   for (int k = 0; k < n; ++k)
   {
      try
      {
         body(k);
      }
      catch (...)
      {
         errors[k] = std::current_exception();
      }
   }
   for (const auto &e : errors)
   {
      if (e)
      {
         std::rethrow_exception(e);
      }
   }
}

template <typename T, int dim>
void nodal_state(int k, int q, const T *w, T *u)
{
   if (!(euler::re(w[dim + 1]) < 0.0))
   {
      throw InadmissibleStateError(k, q, "non-negative last entropy variable");
   }
   euler::state_from_entropy_vars<T, dim>(w, u);
   if (!euler::is_admissible<T, dim>(u))
   {
      throw InadmissibleStateError(k, q, "non-physical density or pressure");
   }
}

}  // namespace

template <typename T, int dim>
struct ResidualKernel
{
   static constexpr int s = dim + 2;
   const SemiDiscretization &sd;

   /// Volume and face terms of element k.  u holds the n_q nodal states;
   /// nb(f, a, out) writes the exterior state at node a of face f.
   template <typename Exterior>
   void element(int k, const T *u, Exterior &&nb, T *g) const
   {
      const SbpOperator &op = sd.space_->ops[k];
      const int n = op.size();
      for (int i = 0; i < n * s; ++i)
      {
         g[i] = 0.0;
      }
      T f[s];
      for (int i = 0; i < n; ++i)
      {
         const double dir[2] = {2.0 * op.Q[0](i, i), 2.0 * op.Q[1](i, i)};
         euler::flux<T, dim>(dir, u + i * s, f);
         for (int v = 0; v < s; ++v)
         {
            g[i * s + v] += f[v];
         }
      }
      for (int i = 0; i < n; ++i)
      {
         for (int j = i + 1; j < n; ++j)
         {
            const double dij[2] = {2.0 * op.Q[0](i, j), 2.0 * op.Q[1](i, j)};
            const double dji[2] = {2.0 * op.Q[0](j, i), 2.0 * op.Q[1](j, i)};
            if (dij[0] == 0.0 && dij[1] == 0.0 && dji[0] == 0.0 &&
                dji[1] == 0.0)
            {
               continue;
            }
            euler::IsmailRoeMeans<T, dim> means(u + i * s, u + j * s);
            means.flux(dij, f);
            for (int v = 0; v < s; ++v)
            {
               g[i * s + v] += f[v];
            }
            means.flux(dji, f);
            for (int v = 0; v < s; ++v)
            {
               g[j * s + v] += f[v];
            }
         }
      }
      T ext[s];
      T fs[s];
      T diss[s];
      const auto &couplings = sd.couplings_[k];
      for (std::size_t fc = 0; fc < couplings.size(); ++fc)
      {
         const auto &c = couplings[fc];
         const double dir[2] = {c.normal(0), c.normal(1)};
         for (std::size_t a = 0; a < c.nodes.size(); ++a)
         {
            const int i = c.nodes[a];
            nb(static_cast<int>(fc), static_cast<int>(a), ext);
            euler::ismail_roe_flux<T, dim>(dir, u + i * s, ext, fs);
            euler::flux<T, dim>(dir, u + i * s, f);
            if (sd.mode_ == FluxMode::Stable)
            {
               euler::interface_dissipation<T, dim>(dir, u + i * s, ext, diss);
               for (int v = 0; v < s; ++v)
               {
                  fs[v] += diss[v];
               }
            }
            for (int v = 0; v < s; ++v)
            {
               g[i * s + v] += c.weights(a) * (fs[v] - f[v]);
            }
         }
      }
   }

   Vector residual(const Vector &w) const
   {
      const Vector nw = sd.compute_nodal_w(w);
      const std::vector<double> U = sd.compute_nodal_u(nw);
      const int K = sd.num_elements();
      std::vector<Matrix> contrib(K);
      parallel_elements(
          K,
          [&](int k)
          {
             const int n = sd.space_->ops[k].size();
             std::vector<double> g(n * s);
             auto exterior = [&](int f, int a, double *out)
             {
                const auto &c = sd.couplings_[k][f];
                const double *src =
                    c.neighbor >= 0
                        ? &U[(sd.offset_[c.neighbor] + c.neighbor_nodes[a]) * s]
                        : sd.ghost_states_[k][f][a].data();
                for (int v = 0; v < s; ++v)
                {
                   out[v] = src[v];
                }
             };
             element(k, &U[sd.offset_[k] * s], exterior, g.data());
             const Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic,
                                                  Eigen::Dynamic,
                                                  Eigen::RowMajor>>
                 G(g.data(), n, s);
             contrib[k] = sd.space_->prolongations[k].P.transpose() * G;
          });
      Vector R = Vector::Zero(sd.size());
      for (int k = 0; k < K; ++k)
      {
         const auto &cols = sd.space_->prolongations[k].columns;
         for (std::size_t m = 0; m < cols.size(); ++m)
         {
            for (int v = 0; v < s; ++v)
            {
               R(cols[m] * s + v) += contrib[k](m, v);
            }
         }
      }
      return R;
   }

   SparseMatrix jacobian(const Vector &w) const
   {
      using C = std::complex<double>;
      const double h = 1e-30;
      const Vector nw = sd.compute_nodal_w(w);
      const std::vector<double> U = sd.compute_nodal_u(nw);
      const int K = sd.num_elements();
      const DgdSpace &space = *sd.space_;
      std::vector<std::vector<Triplet>> trips(K);
      ResidualKernel<C, dim> ck{sd};
      parallel_elements(
          K,
          [&](int e)
          {
             const SbpOperator &op = space.ops[e];
             const Prolongation &pe = space.prolongations[e];
             const int n = op.size();
             const auto &couplings = sd.couplings_[e];
             const int nf = static_cast<int>(couplings.size());
             std::vector<int> cols = pe.columns;
             for (const auto &c : couplings)
             {
                if (c.neighbor >= 0)
                {
                   const auto &nc = space.prolongations[c.neighbor].columns;
                   cols.insert(cols.end(), nc.begin(), nc.end());
                }
             }
             std::sort(cols.begin(), cols.end());
             cols.erase(std::unique(cols.begin(), cols.end()), cols.end());

             std::vector<C> ue(n * s);
             std::vector<std::vector<C>> uf(nf);
             std::vector<C> g(n * s);
             C wq[s];
             auto column_index = [](const std::vector<int> &v, int c)
             {
                auto it = std::find(v.begin(), v.end(), c);
                return it == v.end() ? -1 : static_cast<int>(it - v.begin());
             };
             for (int c : cols)
             {
                const int me = column_index(pe.columns, c);
                std::vector<int> mf(nf, -1);
                for (int f = 0; f < nf; ++f)
                {
                   if (couplings[f].neighbor >= 0)
                   {
                      mf[f] = column_index(
                          space.prolongations[couplings[f].neighbor].columns, c);
                   }
                }
                for (int v = 0; v < s; ++v)
                {
                   for (int q = 0; q < n; ++q)
                   {
                      const int node = sd.offset_[e] + q;
                      const double pq = me >= 0 ? pe.P(q, me) : 0.0;
                      if (pq != 0.0)
                      {
                         for (int r = 0; r < s; ++r)
                         {
                            wq[r] = nw(node * s + r);
                         }
                         wq[v] += C(0.0, h * pq);
                         nodal_state<C, dim>(e, q, wq, &ue[q * s]);
                      }
                      else
                      {
                         for (int r = 0; r < s; ++r)
                         {
                            ue[q * s + r] = U[node * s + r];
                         }
                      }
                   }
                   for (int f = 0; f < nf; ++f)
                   {
                      const auto &cp = couplings[f];
                      const int na = static_cast<int>(cp.nodes.size());
                      uf[f].resize(na * s);
                      for (int a = 0; a < na; ++a)
                      {
                         if (cp.neighbor < 0)
                         {
                            for (int r = 0; r < s; ++r)
                            {
                               uf[f][a * s + r] = sd.ghost_states_[e][f][a](r);
                            }
                            continue;
                         }
                         const int q = cp.neighbor_nodes[a];
                         const int node = sd.offset_[cp.neighbor] + q;
                         const double pq =
                             mf[f] >= 0
                                 ? space.prolongations[cp.neighbor].P(q, mf[f])
                                 : 0.0;
                         if (pq != 0.0)
                         {
                            for (int r = 0; r < s; ++r)
                            {
                               wq[r] = nw(node * s + r);
                            }
                            wq[v] += C(0.0, h * pq);
                            nodal_state<C, dim>(cp.neighbor, q, wq,
                                                &uf[f][a * s]);
                         }
                         else
                         {
                            for (int r = 0; r < s; ++r)
                            {
                               uf[f][a * s + r] = U[node * s + r];
                            }
                         }
                      }
                   }
                   auto exterior = [&](int f, int a, C *out)
                   {
                      for (int r = 0; r < s; ++r)
                      {
                         out[r] = uf[f][a * s + r];
                      }
                   };
                   ck.element(e, ue.data(), exterior, g.data());
                   for (std::size_t m = 0; m < pe.columns.size(); ++m)
                   {
                      for (int r = 0; r < s; ++r)
                      {
                         double d = 0.0;
                         for (int q = 0; q < n; ++q)
                         {
                            d += pe.P(q, m) * g[q * s + r].imag();
                         }
                         d /= h;
                         if (d != 0.0)
                         {
                            trips[e].emplace_back(pe.columns[m] * s + r,
                                                  c * s + v, d);
                         }
                      }
                   }
                }
             }
          });
      std::vector<Triplet> all;
      for (const auto &t : trips)
      {
         all.insert(all.end(), t.begin(), t.end());
      }
      SparseMatrix J(sd.size(), sd.size());
      J.setFromTriplets(all.begin(), all.end());
      return J;
   }
};

SemiDiscretization::SemiDiscretization(std::shared_ptr<const DgdSpace> space,
                                       FluxMode mode,
                                       GhostState ghost)
 : space_(std::move(space)), mode_(mode), ghost_(std::move(ghost))
{
   if (!space_)
   {
      throw InvalidArgument("SemiDiscretization: null space");
   }
   dim_ = space_->dim;
   const Mesh &mesh = *space_->mesh;
   const int K = space_->num_elements();
   offset_.resize(K + 1, 0);
   for (int k = 0; k < K; ++k)
   {
      offset_[k + 1] = offset_[k] + space_->ops[k].size();
   }
   couplings_.resize(K);
   ghost_states_.resize(K);
   for (int k = 0; k < K; ++k)
   {
      const SbpOperator &op = space_->ops[k];
      const double hk = mesh.element_diameter(k);
      for (int f = 0; f < mesh.faces_per_element(); ++f)
      {
         const FaceLink &link = mesh.link(k, f);
         FaceCoupling c;
         c.nodes = op.faces[f].nodes;
         c.weights = op.faces[f].weights;
         c.normal = op.faces[f].normal;
         std::vector<Vector> ghosts;
         if (link.is_interior())
         {
            c.neighbor = link.neighbor;
            const SbpOperator &nop = space_->ops[link.neighbor];
            const auto &nnodes = nop.faces[link.neighbor_face].nodes;
            for (int i : c.nodes)
            {
               int best = -1;
               double dist = 1e300;
               for (int j : nnodes)
               {
                  const double d = (op.nodes[i] - nop.nodes[j] - link.shift).norm();
                  if (d < dist)
                  {
                     dist = d;
                     best = j;
                  }
               }
               if (dist > 1e-10 * hk)
               {
                  throw Error("face nodes of element " + std::to_string(k) +
                              " are not collocated with its neighbour");
               }
               c.neighbor_nodes.push_back(best);
            }
         }
         else
         {
            c.tag = mesh.boundary_faces()[link.face].tag;
            if (!ghost_)
            {
               throw InvalidArgument(
                   "mesh has boundary faces but no exterior state was given");
            }
            for (int i : c.nodes)
            {
               Vector g = ghost_(op.nodes[i], c.tag);
               if (g.size() != num_vars())
               {
                  throw InvalidArgument("exterior state has the wrong size");
               }
               ghosts.push_back(g);
            }
         }
         couplings_[k].push_back(c);
         ghost_states_[k].push_back(ghosts);
      }
   }
}

Vector SemiDiscretization::compute_nodal_w(const Vector &w) const
{
   if (w.size() != size())
   {
      throw InvalidArgument("coefficient vector has the wrong size");
   }
   const int s = num_vars();
   Vector nw(offset_.back() * s);
   for (int k = 0; k < num_elements(); ++k)
   {
      const Prolongation &pr = space_->prolongations[k];
      Matrix W(pr.columns.size(), s);
      for (std::size_t m = 0; m < pr.columns.size(); ++m)
      {
         W.row(m) = w.segment(pr.columns[m] * s, s).transpose();
      }
      const Matrix N = pr.P * W;
      for (int q = 0; q < N.rows(); ++q)
      {
         nw.segment((offset_[k] + q) * s, s) = N.row(q).transpose();
      }
   }
   return nw;
}

std::vector<double> SemiDiscretization::compute_nodal_u(const Vector &nw) const
{
   const int s = num_vars();
   std::vector<double> U(nw.size());
   for (int k = 0; k < num_elements(); ++k)
   {
      for (int q = 0; q < space_->ops[k].size(); ++q)
      {
         const int node = offset_[k] + q;
         if (dim_ == 1)
            nodal_state<double, 1>(k, q, &nw(node * s), &U[node * s]);
         else
            nodal_state<double, 2>(k, q, &nw(node * s), &U[node * s]);
      }
   }
   return U;
}

Vector SemiDiscretization::residual(const Vector &w) const
{
   if (dim_ == 1)
   {
      return ResidualKernel<double, 1>{*this}.residual(w);
   }
   return ResidualKernel<double, 2>{*this}.residual(w);
}

SparseMatrix SemiDiscretization::residual_jacobian(const Vector &w) const
{
   if (dim_ == 1)
   {
      return ResidualKernel<double, 1>{*this}.jacobian(w);
   }
   return ResidualKernel<double, 2>{*this}.jacobian(w);
}

Vector SemiDiscretization::mass_term(const Vector &w) const
{
   const int s = num_vars();
   const std::vector<double> U = compute_nodal_u(compute_nodal_w(w));
   Vector m = Vector::Zero(size());
   for (int k = 0; k < num_elements(); ++k)
   {
      const SbpOperator &op = space_->ops[k];
      const Prolongation &pr = space_->prolongations[k];
      Matrix HU(op.size(), s);
      for (int q = 0; q < op.size(); ++q)
      {
         for (int v = 0; v < s; ++v)
         {
            HU(q, v) = op.H(q) * U[(offset_[k] + q) * s + v];
         }
      }
      const Matrix local = pr.P.transpose() * HU;
      for (std::size_t j = 0; j < pr.columns.size(); ++j)
      {
         m.segment(pr.columns[j] * s, s) += local.row(j).transpose();
      }
   }
   return m;
}

SparseMatrix SemiDiscretization::mass_jacobian(const Vector &w) const
{
   const int s = num_vars();
   const std::vector<double> U = compute_nodal_u(compute_nodal_w(w));
   std::vector<Triplet> trip;
   for (int k = 0; k < num_elements(); ++k)
   {
      const SbpOperator &op = space_->ops[k];
      const Prolongation &pr = space_->prolongations[k];
      const int nk = static_cast<int>(pr.columns.size());
      Matrix block = Matrix::Zero(nk * s, nk * s);
      for (int q = 0; q < op.size(); ++q)
      {
         Eigen::Map<const Vector> uq(&U[(offset_[k] + q) * s], s);
         const Matrix A = op.H(q) * euler::dqdw(dim_, uq);
         for (int a = 0; a < nk; ++a)
         {
            const double pa = pr.P(q, a);
            for (int b = 0; b < nk; ++b)
            {
               block.block(a * s, b * s, s, s) += pa * pr.P(q, b) * A;
            }
         }
      }
      for (int a = 0; a < nk; ++a)
      {
         for (int b = 0; b < nk; ++b)
         {
            for (int r = 0; r < s; ++r)
            {
               for (int c = 0; c < s; ++c)
               {
                  trip.emplace_back(pr.columns[a] * s + r, pr.columns[b] * s + c,
                                    block(a * s + r, b * s + c));
               }
            }
         }
      }
   }
   SparseMatrix J(size(), size());
   J.setFromTriplets(trip.begin(), trip.end());
   return J;
}

double SemiDiscretization::total_entropy(const Vector &w) const
{
   const int s = num_vars();
   const std::vector<double> U = compute_nodal_u(compute_nodal_w(w));
   double S = 0.0;
   for (int k = 0; k < num_elements(); ++k)
   {
      const SbpOperator &op = space_->ops[k];
      for (int q = 0; q < op.size(); ++q)
      {
         const double *u = &U[(offset_[k] + q) * s];
         S += op.H(q) * (dim_ == 1 ? euler::entropy<double, 1>(u)
                                   : euler::entropy<double, 2>(u));
      }
   }
   return S;
}

double SemiDiscretization::entropy_rate(const Vector &w) const
{
   return w.dot(residual(w));
}

Vector SemiDiscretization::conserved_totals(const Vector &w) const
{
   const int s = num_vars();
   const Vector m = mass_term(w);
   Vector tot = Vector::Zero(s);
   for (int k = 0; k < num_elements(); ++k)
   {
      tot += m.segment(k * s, s);
   }
   return tot;
}

Matrix SemiDiscretization::nodal_entropy_vars(const Vector &w, int k) const
{
   const int s = num_vars();
   const Prolongation &pr = space_->prolongations[k];
   Matrix W(pr.columns.size(), s);
   for (std::size_t m = 0; m < pr.columns.size(); ++m)
   {
      W.row(m) = w.segment(pr.columns[m] * s, s).transpose();
   }
   return (pr.P * W).transpose();
}

Matrix SemiDiscretization::nodal_states(const Vector &w, int k) const
{
   const Matrix W = nodal_entropy_vars(w, k);
   Matrix U(W.rows(), W.cols());
   for (int q = 0; q < W.cols(); ++q)
   {
      Vector wq = W.col(q);
      Vector uq(W.rows());
      if (dim_ == 1)
         nodal_state<double, 1>(k, q, wq.data(), uq.data());
      else
         nodal_state<double, 2>(k, q, wq.data(), uq.data());
      U.col(q) = uq;
   }
   return U;
}

Matrix SemiDiscretization::element_residual(const Vector &w, int k) const
{
   const int s = num_vars();
   const std::vector<double> U = compute_nodal_u(compute_nodal_w(w));
   const SbpOperator &op = space_->ops[k];
   std::vector<double> g(op.size() * s);
   auto exterior = [&](int f, int a, double *out)
   {
      const auto &c = couplings_[k][f];
      const double *src =
          c.neighbor >= 0 ? &U[(offset_[c.neighbor] + c.neighbor_nodes[a]) * s]
                          : ghost_states_[k][f][a].data();
      std::copy(src, src + s, out);
   };
   if (dim_ == 1)
      ResidualKernel<double, 1>{*this}.element(k, &U[offset_[k] * s], exterior,
                                               g.data());
   else
      ResidualKernel<double, 2>{*this}.element(k, &U[offset_[k] * s], exterior,
                                               g.data());
   Matrix r(s, op.size());
   for (int q = 0; q < op.size(); ++q)
   {
      for (int v = 0; v < s; ++v)
      {
         r(v, q) = g[q * s + v] / op.H(q);
      }
   }
   return r;
}

Vector SemiDiscretization::initial_coefficients(
    const std::function<Vector(const Point &)> &u0) const
{
   const int s = num_vars();
   Vector w(size());
   const auto &cent = space_->mesh->centroids();
   for (int k = 0; k < num_elements(); ++k)
   {
      const Vector u = u0(cent[k]);
      if (!euler::is_admissible(dim_, u))
      {
         throw InadmissibleStateError(k, -1, "inadmissible initial state");
      }
      w.segment(k * s, s) = euler::entropy_vars(dim_, u);
   }
   return w;
}

double SemiDiscretization::max_wave_speed(const Vector &w) const
{
   const int s = num_vars();
   const std::vector<double> U = compute_nodal_u(compute_nodal_w(w));
   double a = 0.0;
   for (std::size_t node = 0; node * s < U.size(); ++node)
   {
      const double *u = &U[node * s];
      double v2 = 0.0;
      for (int d = 0; d < dim_; ++d)
      {
         v2 += (u[d + 1] / u[0]) * (u[d + 1] / u[0]);
      }
      const double c = dim_ == 1 ? euler::sound_speed<double, 1>(u)
                                 : euler::sound_speed<double, 2>(u);
      a = std::max(a, std::sqrt(v2) + c);
   }
   return a;
}

double SemiDiscretization::collocation_error() const
{
   double err = 0.0;
   const Mesh &mesh = *space_->mesh;
   for (int k = 0; k < num_elements(); ++k)
   {
      const SbpOperator &op = space_->ops[k];
      for (std::size_t f = 0; f < couplings_[k].size(); ++f)
      {
         const auto &c = couplings_[k][f];
         if (c.neighbor < 0)
         {
            continue;
         }
         const Point shift = mesh.link(k, static_cast<int>(f)).shift;
         const SbpOperator &nop = space_->ops[c.neighbor];
         for (std::size_t a = 0; a < c.nodes.size(); ++a)
         {
            err = std::max(err, (op.nodes[c.nodes[a]] -
                                 nop.nodes[c.neighbor_nodes[a]] - shift)
                                    .norm());
         }
      }
   }
   return err;
}

}  // namespace dgd
