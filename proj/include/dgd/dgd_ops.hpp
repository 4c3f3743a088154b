/// Global DGD matrices assembled from element SBP operators and
/// prolongations, with the dense-norm SBP checks and linear advection

#ifndef DGD_DGD_OPS_HPP
#define DGD_DGD_OPS_HPP

#include <algorithm>
#include <array>
#include <memory>
#include <vector>

#include <Eigen/SparseCholesky>

#include "dgd/basis.hpp"
#include "dgd/sbp.hpp"

namespace dgd
{
/// Everything needed to evaluate DGD operators on a mesh: stencils,
/// prolongations and physical SBP operators per element
struct DgdSpace
{
   std::shared_ptr<const Mesh> mesh;
   int degree = 0;
   int dim = 1;
   SbpOperator reference;
   std::vector<SbpOperator> ops;
   std::vector<Stencil> stencils;
   std::vector<Prolongation> prolongations;

   int num_elements() const { return static_cast<int>(ops.size()); }
   /// Nodal values P_k u on element k of a global coefficient vector
   Vector prolong(int k, const Vector &u) const;
   /// Total number of SBP nodes over all elements
   int num_nodes() const;
};

/// Build the space with the default reference operator for (p, dim)
DgdSpace build_dgd_space(std::shared_ptr<const Mesh> mesh, int p);

/// Build the space from a given reference operator
DgdSpace build_dgd_space(std::shared_ptr<const Mesh> mesh,
                         int p,
                         const SbpOperator &reference);

/// Global matrices M = sum P^T H P, Q_d = sum P^T Q_d P, E_d = sum P^T E_d P
struct GlobalOperator
{
   int degree = 0;
   int dim = 1;
   SparseMatrix M;
   std::array<SparseMatrix, 2> Q;
   std::array<SparseMatrix, 2> E;
};

GlobalOperator assemble_global(const DgdSpace &space);

/// Residuals of the dense-norm SBP properties of the global operator
struct DenseNormReport
{
   double min_mass_eigenvalue = 0.0;
   bool mass_factorizes = false;
   /// |M^{-1} Q_d v_i - v_i'| over centroid samples of the degree-p basis
   /// (constants only on periodic meshes)
   double accuracy = 0.0;
   double compatibility = 0.0; ///< |Q + Q^T - E|
   double skew = 0.0;          ///< |S + S^T| with S = Q - E/2
   double mass_symmetry = 0.0;
   /// |v_i^T E_d v_j - outer boundary integral| (0 on periodic domains)
   double boundary = 0.0;
   double conservation = 0.0; ///< |1^T Q_d| on periodic meshes
};

/// Check the global operator with monomials centred on the domain
DenseNormReport verify_dense_norm_sbp(const GlobalOperator &op,
                                      const DgdSpace &space);

/// M du/dt = sum_d lambda_d (Q_d^T - E_d) u with a cached Cholesky
/// factorization of M
class LinearAdvection
{
public:
   LinearAdvection(const GlobalOperator &op, const Point &velocity);

   /// du/dt
   Vector rhs(const Vector &u) const;
   /// sum_d lambda_d (Q_d^T - E_d)
   const SparseMatrix &stiffness() const { return A_; }
   const SparseMatrix &mass() const { return M_; }
   Vector solve_mass(const Vector &b) const;

private:
   SparseMatrix M_;
   SparseMatrix A_;
   Eigen::SimplicialLLT<SparseMatrix> llt_;
};

/// One-shot version of LinearAdvection::rhs
Vector advection_residual(const GlobalOperator &op,
                          const Point &velocity,
                          const Vector &u);

/// Discrepancies between the element SBP weak form with u_k = P_k u and
/// v_k = P_k v and the global DGD weak form, relative to each term's size
struct EquivalenceReport
{
   double temporal = 0.0;
   double volume = 0.0;
   double boundary = 0.0;
   double max() const { return std::max({temporal, volume, boundary}); }
};

EquivalenceReport sbp_dgd_equivalence_check(const DgdSpace &space,
                                            const GlobalOperator &op,
                                            const Point &velocity,
                                            const Vector &u,
                                            const Vector &v,
                                            const Vector &dudt);

/// Entrywise differences between the assembled matrices and Gauss
/// (collapsed Gauss on triangles) quadrature of products of DGD basis
/// functions and their derivatives, relative to the largest element
/// contribution
struct QuadratureCheck
{
   double mass = 0.0;
   double derivative = 0.0;
   double boundary = 0.0;
   double max() const { return std::max({mass, derivative, boundary}); }
};

QuadratureCheck quadrature_check(const DgdSpace &space,
                                 const GlobalOperator &op);

/// Exact integral over the outer (non-periodic) boundary of f * n_dir
double outer_boundary_integral(const Mesh &mesh,
                               int dir,
                               const std::function<double(const Point &)> &f);

}  // namespace dgd

#endif
