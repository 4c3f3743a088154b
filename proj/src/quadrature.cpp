#include "dgd/quadrature.hpp"

#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>

namespace dgd
{
void legendre(int n, double x, double &value, double &deriv)
{
   double p0 = 1.0;
   double p1 = x;
   if (n == 0)
   {
      value = 1.0;
      deriv = 0.0;
      return;
   }
   for (int k = 2; k <= n; ++k)
   {
      double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
      p0 = p1;
      p1 = p2;
   }
   value = p1;
   // derivative from the three-term identity; endpoints handled separately
   if (std::abs(1.0 - x * x) < 1e-14)
   {
      double sign = (x > 0.0 || n % 2 == 1) ? 1.0 : -1.0;
      deriv = sign * 0.5 * n * (n + 1);
   }
   else
   {
      deriv = n * (x * p1 - p0) / (x * x - 1.0);
   }
}

QuadratureRule gauss_legendre(int n)
{
   if (n < 1)
   {
      throw InvalidArgument("gauss_legendre: need at least one point");
   }
   // Golub-Welsch
   Matrix jac = Matrix::Zero(n, n);
   for (int i = 1; i < n; ++i)
   {
      double b = i / std::sqrt(4.0 * i * i - 1.0);
      jac(i, i - 1) = b;
      jac(i - 1, i) = b;
   }
   Eigen::SelfAdjointEigenSolver<Matrix> eig(jac);
   QuadratureRule rule;
   for (int i = 0; i < n; ++i)
   {
      double x = eig.eigenvalues()(i);
      // polish the root with Newton for full accuracy
      for (int it = 0; it < 3; ++it)
      {
         double val, der;
         legendre(n, x, val, der);
         x -= val / der;
      }
      double val, der;
      legendre(n, x, val, der);
      rule.points.emplace_back(x, 0.0);
      rule.weights.push_back(2.0 / ((1.0 - x * x) * der * der));
   }
   return rule;
}

QuadratureRule gauss_lobatto(int n)
{
   if (n < 2)
   {
      throw InvalidArgument("gauss_lobatto: need at least two points");
   }
   const int m = n - 1;
   QuadratureRule rule;
   rule.points.resize(n, Point::Zero());
   rule.weights.resize(n);
   for (int i = 0; i < n; ++i)
   {
      // Chebyshev-Gauss-Lobatto initial guess, then Newton on (1-x^2) P_m'
      double x = -std::cos(std::numbers::pi * i / m);
      if (i > 0 && i < m)
      {
         for (int it = 0; it < 100; ++it)
         {
            double val, der;
            legendre(m, x, val, der);
            // P_m'' from the Legendre ODE
            double der2 = (2.0 * x * der - m * (m + 1) * val) / (1.0 - x * x);
            double dx = der / der2;
            x -= dx;
            if (std::abs(dx) < 1e-16)
            {
               break;
            }
         }
      }
      double val, der;
      legendre(m, x, val, der);
      rule.points[i] = Point(x, 0.0);
      rule.weights[i] = 2.0 / (m * (m + 1) * val * val);
   }
   return rule;
}

QuadratureRule triangle_collapsed_gauss(int n)
{
   QuadratureRule line = gauss_legendre(n);
   QuadratureRule rule;
   for (int i = 0; i < n; ++i)
   {
      double a = 0.5 * (line.points[i].x() + 1.0);
      for (int j = 0; j < n; ++j)
      {
         double b = 0.5 * (line.points[j].x() + 1.0);
         rule.points.emplace_back(a, b * (1.0 - a));
         rule.weights.push_back(0.25 * line.weights[i] * line.weights[j] *
                                (1.0 - a));
      }
   }
   return rule;
}

QuadratureRule segment_gauss(const Point &a, const Point &b, int n)
{
   QuadratureRule line = gauss_legendre(n);
   const double len = (b - a).norm();
   QuadratureRule rule;
   for (int i = 0; i < n; ++i)
   {
      double t = 0.5 * (line.points[i].x() + 1.0);
      rule.points.push_back(a + t * (b - a));
      rule.weights.push_back(0.5 * len * line.weights[i]);
   }
   return rule;
}

}  // namespace dgd
