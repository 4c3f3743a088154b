/// Polynomial bases, centroid Vandermonde systems and DGD prolongation

#ifndef DGD_BASIS_HPP
#define DGD_BASIS_HPP

#include <array>
#include <span>
#include <vector>

#include "dgd/stencil.hpp"

namespace dgd
{
/// Total-degree monomials ((x - c)/L)^a ((y - c)/L)^b ordered by degree,
/// then by decreasing power of x.  The first function is the constant 1.
class PolyBasis
{
public:
   PolyBasis(int degree, int dim, const Point &center = Point::Zero(),
             double scale = 1.0);

   int degree() const { return degree_; }
   int dim() const { return dim_; }
   int size() const { return static_cast<int>(exponents_.size()); }
   const Point &center() const { return center_; }
   double scale() const { return scale_; }

   double eval(int j, const Point &x) const;
   /// Partial derivative of basis function j in direction `dir` (0 = x)
   double deriv(int j, int dir, const Point &x) const;

   /// [V]_{qj} = V_j(x_q)
   Matrix vandermonde(std::span<const Point> points) const;
   /// [V']_{qj} = dV_j/dx_dir (x_q)
   Matrix deriv_vandermonde(std::span<const Point> points, int dir) const;

private:
   int degree_;
   int dim_;
   Point center_;
   double scale_;
   std::vector<std::array<int, 2>> exponents_;
};

/// Basis for a stencil: centred on the owner centroid, scaled by the largest
/// centroid distance in the patch
PolyBasis stencil_basis(const Stencil &stencil, int p, int dim);

/// Generalized Vandermonde matrix at the stencil centroids (n_k x n_p).
/// Throws RankDeficientError if the centroids are not unisolvent.
Matrix centroid_vandermonde(const PolyBasis &basis, const Stencil &stencil);

/// Moore-Penrose pseudo-inverse of the centroid Vandermonde matrix (the DGD
/// coefficient matrix, n_p x n_k), computed from an SVD.  Singular values
/// below 1e-10 times the largest one raise RankDeficientError for `owner`.
Matrix dgd_coefficients(const Matrix &vandermonde, int owner = -1);

/// Local prolongation from stencil centroid values to element nodes
struct Prolongation
{
   int owner = -1;
   /// global element ids of the columns (the stencil members)
   std::vector<int> columns;
   /// n_q x n_k
   Matrix P;
};

/// P_k = V_k C_k, the minimum-Frobenius-norm operator that is exact for
/// degree-p polynomials
Prolongation build_prolongation(const PolyBasis &basis,
                                const Stencil &stencil,
                                std::span<const Point> nodes);

/// Convenience overload that builds the stencil basis internally
Prolongation build_prolongation(const Stencil &stencil,
                                int p,
                                int dim,
                                std::span<const Point> nodes);

/// Derivative of the DGD basis functions at the nodes: rows are nodes,
/// columns stencil members; [.]_{qi} = d phi_{nu_i}/dx_dir (x_q)
Matrix prolongation_derivative(const Stencil &stencil,
                               int p,
                               int dim,
                               std::span<const Point> nodes,
                               int dir);

}  // namespace dgd

#endif
