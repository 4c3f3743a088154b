#include "dgd/basis.hpp"

#include <cmath>

#include <Eigen/SVD>

namespace dgd
{
namespace
{
double ipow(double x, int n)
{
   double r = 1.0;
   for (int i = 0; i < n; ++i)
   {
      r *= x;
   }
   return r;
}

}  // namespace

PolyBasis::PolyBasis(int degree, int dim, const Point &center, double scale)
 : degree_(degree), dim_(dim), center_(center), scale_(scale)
{
   if (degree < 0 || (dim != 1 && dim != 2))
   {
      throw InvalidArgument("PolyBasis: unsupported degree or dimension");
   }
   if (!(scale > 0.0))
   {
      throw InvalidArgument("PolyBasis: scale must be positive");
   }
   for (int d = 0; d <= degree; ++d)
   {
      if (dim == 1)
      {
         exponents_.push_back({d, 0});
         continue;
      }
      for (int a = d; a >= 0; --a)
      {
         exponents_.push_back({a, d - a});
      }
   }
}

double PolyBasis::eval(int j, const Point &x) const
{
   const Point xi = (x - center_) / scale_;
   return ipow(xi.x(), exponents_[j][0]) *
          (dim_ == 2 ? ipow(xi.y(), exponents_[j][1]) : 1.0);
}

double PolyBasis::deriv(int j, int dir, const Point &x) const
{
   const Point xi = (x - center_) / scale_;
   const int a = exponents_[j][0];
   const int b = exponents_[j][1];
   if (dir == 0)
   {
      if (a == 0) return 0.0;
      return a * ipow(xi.x(), a - 1) *
             (dim_ == 2 ? ipow(xi.y(), b) : 1.0) / scale_;
   }
   if (dim_ == 1 || b == 0) return 0.0;
   return b * ipow(xi.x(), a) * ipow(xi.y(), b - 1) / scale_;
}

Matrix PolyBasis::vandermonde(std::span<const Point> points) const
{
   Matrix V(points.size(), size());
   for (int q = 0; q < static_cast<int>(points.size()); ++q)
   {
      for (int j = 0; j < size(); ++j)
      {
         V(q, j) = eval(j, points[q]);
      }
   }
   return V;
}

Matrix PolyBasis::deriv_vandermonde(std::span<const Point> points,
                                    int dir) const
{
   Matrix V(points.size(), size());
   for (int q = 0; q < static_cast<int>(points.size()); ++q)
   {
      for (int j = 0; j < size(); ++j)
      {
         V(q, j) = deriv(j, dir, points[q]);
      }
   }
   return V;
}

PolyBasis stencil_basis(const Stencil &stencil, int p, int dim)
{
   const Point &center = stencil.member_centroids.front();
   double scale = 0.0;
   for (const Point &c : stencil.member_centroids)
   {
      scale = std::max(scale, (c - center).norm());
   }
   if (scale == 0.0)
   {
      scale = 1.0;
   }
   return PolyBasis(p, dim, center, scale);
}

Matrix centroid_vandermonde(const PolyBasis &basis, const Stencil &stencil)
{
   Matrix V = basis.vandermonde(stencil.member_centroids);
   if (V.rows() < V.cols())
   {
      throw RankDeficientError(stencil.owner,
                               "stencil smaller than the polynomial space");
   }
   Eigen::JacobiSVD<Matrix> svd(V);
   const auto &sv = svd.singularValues();
   if (sv(sv.size() - 1) < 1e-10 * sv(0))
   {
      throw RankDeficientError(stencil.owner,
                               "centroids are not unisolvent for the basis");
   }
   return V;
}

Matrix dgd_coefficients(const Matrix &vandermonde, int owner)
{
   if (vandermonde.rows() < vandermonde.cols())
   {
      throw RankDeficientError(owner, "underdetermined Vandermonde system");
   }
   Eigen::JacobiSVD<Matrix> svd(vandermonde,
                                Eigen::ComputeThinU | Eigen::ComputeThinV);
   const Vector &sv = svd.singularValues();
   if (sv(sv.size() - 1) < 1e-10 * sv(0))
   {
      throw RankDeficientError(owner, "rank-deficient Vandermonde matrix");
   }
   return svd.matrixV() * sv.cwiseInverse().asDiagonal() *
          svd.matrixU().transpose();
}

Prolongation build_prolongation(const PolyBasis &basis,
                                const Stencil &stencil,
                                std::span<const Point> nodes)
{
   if (nodes.empty())
   {
      throw InvalidArgument("build_prolongation: empty node set");
   }
   Matrix Vt = centroid_vandermonde(basis, stencil);
   Prolongation pr;
   pr.owner = stencil.owner;
   pr.columns = stencil.members;
   pr.P = basis.vandermonde(nodes) * dgd_coefficients(Vt, stencil.owner);
   return pr;
}

Prolongation build_prolongation(const Stencil &stencil,
                                int p,
                                int dim,
                                std::span<const Point> nodes)
{
   return build_prolongation(stencil_basis(stencil, p, dim), stencil, nodes);
}

Matrix prolongation_derivative(const Stencil &stencil,
                               int p,
                               int dim,
                               std::span<const Point> nodes,
                               int dir)
{
   PolyBasis basis = stencil_basis(stencil, p, dim);
   Matrix Vt = centroid_vandermonde(basis, stencil);
   return basis.deriv_vandermonde(nodes, dir) *
          dgd_coefficients(Vt, stencil.owner);
}

}  // namespace dgd
