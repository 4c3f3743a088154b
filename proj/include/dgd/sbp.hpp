/// Diagonal-norm summation-by-parts (SBP) first-derivative operators on
/// intervals and triangles with face-collocated boundary nodes

#ifndef DGD_SBP_HPP
#define DGD_SBP_HPP

#include <array>
#include <functional>
#include <iosfwd>
#include <vector>

#include "dgd/common.hpp"

namespace dgd
{
/// Nodes of one element face and their diagonal face-quadrature weights
struct SbpFace
{
   /// element node indices lying on the face, ordered along the face
   std::vector<int> nodes;
   /// face quadrature weights (include the face measure)
   Vector weights;
   /// constant outward unit normal
   Point normal;
};

/// Degree-p diagonal-norm SBP operator.  Q[d] = S[d] + E[d]/2 approximates
/// H d/dx_d, and E[d] = sum_f R_f^T (B_f n_{d,f}) R_f.
struct SbpOperator
{
   int degree = 0;
   int dim = 1;
   std::vector<Point> nodes;
   Vector H;
   std::array<Matrix, 2> Q;
   std::array<Matrix, 2> E;
   std::vector<SbpFace> faces;
   /// vertices of the element the operator lives on
   std::vector<Point> vertices;

   int size() const { return static_cast<int>(nodes.size()); }
   Matrix S(int d) const { return Q[d] - 0.5 * E[d]; }
   Matrix D(int d) const { return H.cwiseInverse().asDiagonal() * Q[d]; }
};

/// Legendre-Gauss-Lobatto operator on [-1, 1] with p+1 nodes (1 <= p <= 4)
SbpOperator build_lgl_sbp_1d(int p);

/// Degree-p operator on [-1, 1] built on `num_nodes` LGL nodes
/// (num_nodes >= p+1); its norm is exact to degree 2*num_nodes-3
SbpOperator build_lgl_sbp_1d(int p, int num_nodes);

/// Interval operator whose norm is at least 2p exact (p+2 LGL nodes)
SbpOperator build_element_sbp_1d(int p);

/// Face-collocated operator on the reference triangle (0,0), (1,0), (0,1)
/// for p in {1, 2}.  p = 1 uses vertices, edge midpoints and the centroid;
/// p = 2 uses vertices, two interior 4-point LGL nodes per edge and an
/// interior three-node orbit.  Volume weights and the interior orbit are
/// solved from the degree-2p moment equations and the skew parts are the
/// minimum-norm solutions of the accuracy conditions.
SbpOperator build_tri_sbp(int p);

/// Reference operator used for DGD element residuals: build_element_sbp_1d
/// in 1D and build_tri_sbp in 2D
SbpOperator build_reference_sbp(int p, int dim);

/// Push a reference operator forward to an affine element with the given
/// vertices (2 in 1D, 3 counter-clockwise in 2D)
SbpOperator map_to_physical(const SbpOperator &ref,
                            const std::vector<Point> &vertices);

/// Maximum residuals of the SBP defining properties
struct SbpReport
{
   double accuracy = 0.0;      ///< |D V - V'| for degree <= p (scaled units)
   double min_norm = 0.0;      ///< smallest diagonal entry of H
   double skew = 0.0;          ///< |S + S^T|
   double compatibility = 0.0; ///< |Q + Q^T - E|
   double boundary = 0.0;      ///< |V_i^T E V_j - boundary integral|
   double face_split = 0.0;    ///< |E - sum_f R_f^T B_f n_f R_f|
   int quadrature_degree = -1; ///< highest degree the norm integrates exactly

   bool passed(double accuracy_tol = 1e-12,
               double skew_tol = 1e-14,
               double compat_tol = 1e-13,
               double boundary_tol = 1e-12) const
   {
      return accuracy <= accuracy_tol && min_norm > 0.0 && skew <= skew_tol &&
             compatibility <= compat_tol && boundary <= boundary_tol;
   }
};

/// Check the SBP properties of `op` for degree p against exact integrals
/// over the element stored in `op.vertices`
SbpReport verify_sbp(const SbpOperator &op, int p);

/// Exact integral over the element boundary of f * n_dir, by Gauss
/// quadrature on each straight face
double boundary_integral(const std::vector<Point> &vertices,
                         int dim,
                         int dir,
                         const std::function<double(const Point &)> &f);

/// Plain-text dump of nodes, norm, Q matrices and face tables with 17
/// significant digits
void write_sbp(std::ostream &os, const SbpOperator &op);

}  // namespace dgd

#endif
