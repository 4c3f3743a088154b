/// One-dimensional and simplex quadrature rules

#ifndef DGD_QUADRATURE_HPP
#define DGD_QUADRATURE_HPP

#include <vector>

#include "dgd/common.hpp"

namespace dgd
{
/// Nodes and weights of a quadrature rule
struct QuadratureRule
{
   std::vector<Point> points;
   std::vector<double> weights;
   int size() const { return static_cast<int>(weights.size()); }
};

/// Legendre polynomial P_n and its derivative at x
void legendre(int n, double x, double &value, double &deriv);

/// n-point Gauss-Legendre rule on [-1, 1]; exact to degree 2n-1
QuadratureRule gauss_legendre(int n);

/// n-point Gauss-Lobatto-Legendre rule on [-1, 1] (n >= 2); exact to degree
/// 2n-3; nodes in increasing order with the endpoints first and last
QuadratureRule gauss_lobatto(int n);

/// Collapsed-coordinate (Duffy) Gauss rule on the reference triangle with
/// vertices (0,0), (1,0), (0,1); exact for total degree <= 2n-2
QuadratureRule triangle_collapsed_gauss(int n);

/// Gauss-Legendre rule mapped to the segment from a to b (weights include
/// the segment length)
QuadratureRule segment_gauss(const Point &a, const Point &b, int n);

}  // namespace dgd

#endif
