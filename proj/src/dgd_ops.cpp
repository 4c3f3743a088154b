#include "dgd/dgd_ops.hpp"

#include <cmath>

#include "dgd/quadrature.hpp"

namespace dgd
{
namespace
{
std::vector<Point> element_vertices(const Mesh &mesh, int k)
{
   std::vector<Point> v;
   for (int i = 0; i <= mesh.dim(); ++i)
   {
      v.push_back(mesh.element_vertex(k, i));
   }
   return v;
}

SparseMatrix scatter(const DgdSpace &space,
                     const std::function<const Matrix &(int)> &element_matrix)
{
   const int K = space.num_elements();
   std::vector<Triplet> trip;
   for (int k = 0; k < K; ++k)
   {
      const Prolongation &pr = space.prolongations[k];
      Matrix B = pr.P.transpose() * element_matrix(k) * pr.P;
      for (int i = 0; i < B.rows(); ++i)
      {
         for (int j = 0; j < B.cols(); ++j)
         {
            trip.emplace_back(pr.columns[i], pr.columns[j], B(i, j));
         }
      }
   }
   SparseMatrix A(K, K);
   A.setFromTriplets(trip.begin(), trip.end());
   return A;
}

double max_abs(const SparseMatrix &A)
{
   double m = 0.0;
   for (int c = 0; c < A.outerSize(); ++c)
   {
      for (SparseMatrix::InnerIterator it(A, c); it; ++it)
      {
         m = std::max(m, std::abs(it.value()));
      }
   }
   return m;
}

}  // namespace

Vector DgdSpace::prolong(int k, const Vector &u) const
{
   const Prolongation &pr = prolongations[k];
   Vector local(pr.columns.size());
   for (std::size_t i = 0; i < pr.columns.size(); ++i)
   {
      local(i) = u(pr.columns[i]);
   }
   return pr.P * local;
}

int DgdSpace::num_nodes() const
{
   int n = 0;
   for (const auto &op : ops)
   {
      n += op.size();
   }
   return n;
}

DgdSpace build_dgd_space(std::shared_ptr<const Mesh> mesh, int p)
{
   return build_dgd_space(mesh, p, build_reference_sbp(p, mesh->dim()));
}

DgdSpace build_dgd_space(std::shared_ptr<const Mesh> mesh,
                         int p,
                         const SbpOperator &reference)
{
   if (!mesh)
   {
      throw InvalidArgument("build_dgd_space: null mesh");
   }
   if (reference.dim != mesh->dim())
   {
      throw InvalidArgument("reference operator dimension does not match mesh");
   }
   DgdSpace space;
   space.mesh = mesh;
   space.degree = p;
   space.dim = mesh->dim();
   space.reference = reference;
   const int K = mesh->num_elements();
   space.ops.reserve(K);
   space.stencils.reserve(K);
   space.prolongations.reserve(K);
   for (int k = 0; k < K; ++k)
   {
      space.ops.push_back(
          map_to_physical(reference, element_vertices(*mesh, k)));
      space.stencils.push_back(build_stencil(*mesh, k, p));
      space.prolongations.push_back(build_prolongation(
          space.stencils.back(), p, space.dim, space.ops.back().nodes));
   }
   return space;
}

GlobalOperator assemble_global(const DgdSpace &space)
{
   GlobalOperator op;
   op.degree = space.degree;
   op.dim = space.dim;
   std::vector<Matrix> H(space.num_elements());
   for (int k = 0; k < space.num_elements(); ++k)
   {
      H[k] = space.ops[k].H.asDiagonal();
   }
   op.M = scatter(space, [&](int k) -> const Matrix & { return H[k]; });
   for (int d = 0; d < 2; ++d)
   {
      if (d >= space.dim)
      {
         op.Q[d] = SparseMatrix(op.M.rows(), op.M.cols());
         op.E[d] = SparseMatrix(op.M.rows(), op.M.cols());
         continue;
      }
      op.Q[d] = scatter(space,
                        [&](int k) -> const Matrix & { return space.ops[k].Q[d]; });
      op.E[d] = scatter(space,
                        [&](int k) -> const Matrix & { return space.ops[k].E[d]; });
   }
   return op;
}

double outer_boundary_integral(const Mesh &mesh,
                               int dir,
                               const std::function<double(const Point &)> &f)
{
   double sum = 0.0;
   for (const auto &bf : mesh.boundary_faces())
   {
      if (mesh.dim() == 1)
      {
         sum += f(mesh.element_vertex(bf.element, bf.local_face)) *
                bf.normal(dir);
         continue;
      }
      const Point a = mesh.element_vertex(bf.element, bf.local_face);
      const Point b = mesh.element_vertex(bf.element, (bf.local_face + 1) % 3);
      QuadratureRule rule = segment_gauss(a, b, 8);
      for (int q = 0; q < rule.size(); ++q)
      {
         sum += rule.weights[q] * f(rule.points[q]) * bf.normal(dir);
      }
   }
   return sum;
}

DenseNormReport verify_dense_norm_sbp(const GlobalOperator &op,
                                      const DgdSpace &space)
{
   DenseNormReport rep;
   const Mesh &mesh = *space.mesh;
   const int K = space.num_elements();
   const Point lo = mesh.domain_lower();
   const Point hi = mesh.domain_upper();
   double scale = 0.5 * (hi(0) - lo(0));
   if (space.dim == 2)
   {
      scale = std::max(scale, 0.5 * (hi(1) - lo(1)));
   }
   PolyBasis basis(mesh.periodic() ? 0 : space.degree, space.dim,
                   0.5 * (lo + hi), scale);
   Matrix V = basis.vandermonde(mesh.centroids());

   Eigen::SimplicialLLT<SparseMatrix> llt(op.M);
   rep.mass_factorizes = llt.info() == Eigen::Success;
   rep.mass_symmetry = max_abs(SparseMatrix(op.M - SparseMatrix(op.M.transpose())));
   if (K <= 3000)
   {
      Eigen::SelfAdjointEigenSolver<Matrix> es(Matrix(op.M),
                                               Eigen::EigenvaluesOnly);
      rep.min_mass_eigenvalue = es.eigenvalues().minCoeff();
   }
   else
   {
      rep.min_mass_eigenvalue = std::nan("");
   }

   for (int d = 0; d < space.dim; ++d)
   {
      const SparseMatrix Qt = op.Q[d].transpose();
      rep.compatibility =
          std::max(rep.compatibility, max_abs(SparseMatrix(op.Q[d] + Qt - op.E[d])));
      const SparseMatrix S = op.Q[d] - 0.5 * op.E[d];
      rep.skew = std::max(
          rep.skew, max_abs(SparseMatrix(S + SparseMatrix(S.transpose()))));
      Matrix Vd = basis.deriv_vandermonde(mesh.centroids(), d);
      if (rep.mass_factorizes)
      {
         Matrix DV = llt.solve(Matrix(op.Q[d] * V));
         rep.accuracy = std::max(rep.accuracy,
                                 (DV - Vd).lpNorm<Eigen::Infinity>());
      }
      Matrix VEV = V.transpose() * op.E[d] * V;
      for (int i = 0; i < basis.size(); ++i)
      {
         for (int j = 0; j < basis.size(); ++j)
         {
            const double exact = outer_boundary_integral(
                mesh, d, [&](const Point &x)
                { return basis.eval(i, x) * basis.eval(j, x); });
            rep.boundary = std::max(rep.boundary, std::abs(VEV(i, j) - exact));
         }
      }
      if (mesh.periodic())
      {
         Vector ones = Vector::Ones(K);
         rep.conservation =
             std::max(rep.conservation,
                      Vector(Qt * ones).lpNorm<Eigen::Infinity>());
      }
   }
   return rep;
}

LinearAdvection::LinearAdvection(const GlobalOperator &op,
                                 const Point &velocity)
 : M_(op.M)
{
   A_ = SparseMatrix(op.M.rows(), op.M.cols());
   for (int d = 0; d < op.dim; ++d)
   {
      A_ += velocity(d) * SparseMatrix(SparseMatrix(op.Q[d].transpose()) - op.E[d]);
   }
   llt_.compute(M_);
   if (llt_.info() != Eigen::Success)
   {
      throw Error("DGD mass matrix is not positive definite");
   }
}

Vector LinearAdvection::solve_mass(const Vector &b) const
{
   return llt_.solve(b);
}

Vector LinearAdvection::rhs(const Vector &u) const
{
   return llt_.solve(A_ * u);
}

Vector advection_residual(const GlobalOperator &op,
                          const Point &velocity,
                          const Vector &u)
{
   return LinearAdvection(op, velocity).rhs(u);
}

EquivalenceReport sbp_dgd_equivalence_check(const DgdSpace &space,
                                            const GlobalOperator &op,
                                            const Point &velocity,
                                            const Vector &u,
                                            const Vector &v,
                                            const Vector &dudt)
{
   double temporal = 0.0;
   double volume = 0.0;
   double boundary = 0.0;
   double temporal_scale = 0.0;
   double volume_scale = 0.0;
   double boundary_scale = 0.0;
   for (int k = 0; k < space.num_elements(); ++k)
   {
      const SbpOperator &sbp = space.ops[k];
      const Vector uk = space.prolong(k, u);
      const Vector vk = space.prolong(k, v);
      const Vector dk = space.prolong(k, dudt);
      const Vector Hd = sbp.H.cwiseProduct(dk);
      temporal += vk.dot(Hd);
      temporal_scale += vk.cwiseAbs().dot(Hd.cwiseAbs());
      for (int d = 0; d < space.dim; ++d)
      {
         const Vector Qu = sbp.Q[d].transpose() * uk;
         const Vector Eu = sbp.E[d] * uk;
         volume -= velocity(d) * vk.dot(Qu);
         volume_scale += std::abs(velocity(d)) * vk.cwiseAbs().dot(Qu.cwiseAbs());
         boundary += velocity(d) * vk.dot(Eu);
         boundary_scale +=
             std::abs(velocity(d)) * vk.cwiseAbs().dot(Eu.cwiseAbs());
      }
   }
   const double g_temporal = v.dot(op.M * dudt);
   double g_volume = 0.0;
   double g_boundary = 0.0;
   for (int d = 0; d < space.dim; ++d)
   {
      g_volume -= velocity(d) * v.dot(op.Q[d].transpose() * u);
      g_boundary += velocity(d) * v.dot(op.E[d] * u);
   }
   EquivalenceReport rep;
   rep.temporal =
       std::abs(temporal - g_temporal) / std::max(temporal_scale, 1e-300);
   rep.volume = std::abs(volume - g_volume) / std::max(volume_scale, 1e-300);
   rep.boundary =
       std::abs(boundary - g_boundary) / std::max(boundary_scale, 1e-300);
   return rep;
}

QuadratureCheck quadrature_check(const DgdSpace &space,
                                 const GlobalOperator &op)
{
   const Mesh &mesh = *space.mesh;
   const int K = space.num_elements();
   const int p = space.degree;
   const int dim = space.dim;
   const int n = p + 2;
   Matrix M = Matrix::Zero(K, K);
   std::array<Matrix, 2> Q{Matrix::Zero(K, K), Matrix::Zero(K, K)};
   std::array<Matrix, 2> E{Matrix::Zero(K, K), Matrix::Zero(K, K)};
   // largest element contribution per matrix, the scale of the check
   double sM = 0.0, sQ = 0.0, sE = 0.0;
   auto add = [&](Matrix &G, const std::vector<int> &cols, const Matrix &B, double &scale)
   {
      scale = std::max(scale, B.cwiseAbs().maxCoeff());
      for (std::size_t a = 0; a < cols.size(); ++a)
      {
         for (std::size_t b = 0; b < cols.size(); ++b)
         {
            G(cols[a], cols[b]) += B(a, b);
         }
      }
   };
   for (int k = 0; k < K; ++k)
   {
      const Stencil &st = space.stencils[k];
      const std::vector<Point> v = element_vertices(mesh, k);
      QuadratureRule rule;
      if (dim == 1)
      {
         rule = segment_gauss(v[0], v[1], n);
      }
      else
      {
         const QuadratureRule ref = triangle_collapsed_gauss(n);
         const Point a = v[1] - v[0];
         const Point b = v[2] - v[0];
         const double det = std::abs(a(0) * b(1) - a(1) * b(0));
         for (int q = 0; q < ref.size(); ++q)
         {
            rule.points.push_back(v[0] + ref.points[q](0) * a + ref.points[q](1) * b);
            rule.weights.push_back(det * ref.weights[q]);
         }
      }
      const Eigen::Map<const Vector> w(rule.weights.data(), rule.size());
      const Matrix P = build_prolongation(st, p, dim, rule.points).P;
      add(M, st.members, P.transpose() * w.asDiagonal() * P, sM);
      for (int d = 0; d < dim; ++d)
      {
         const Matrix Pd = prolongation_derivative(st, p, dim, rule.points, d);
         add(Q[d], st.members, P.transpose() * w.asDiagonal() * Pd, sQ);
      }
      for (int f = 0; f <= dim; ++f)
      {
         QuadratureRule face;
         Point normal;
         if (dim == 1)
         {
            face.points = {v[f]};
            face.weights = {1.0};
            normal = Point(f == 0 ? -1.0 : 1.0, 0.0);
         }
         else
         {
            const Point a = v[f];
            const Point b = v[(f + 1) % 3];
            face = segment_gauss(a, b, n);
            const Point t = (b - a).normalized();
            normal = Point(t(1), -t(0));
         }
         const Eigen::Map<const Vector> fw(face.weights.data(), face.size());
         const Matrix Pf = build_prolongation(st, p, dim, face.points).P;
         for (int d = 0; d < dim; ++d)
         {
            add(E[d], st.members, normal(d) * Pf.transpose() * fw.asDiagonal() * Pf, sE);
         }
      }
   }
   auto rel = [](const SparseMatrix &A, const Matrix &B, double scale)
   {
      return (Matrix(A) - B).cwiseAbs().maxCoeff() / std::max(scale, 1e-300);
   };
   QuadratureCheck out;
   out.mass = rel(op.M, M, sM);
   for (int d = 0; d < dim; ++d)
   {
      out.derivative = std::max(out.derivative, rel(op.Q[d], Q[d], sQ));
      out.boundary = std::max(out.boundary, rel(op.E[d], E[d], sE));
   }
   return out;
}

}  // namespace dgd
