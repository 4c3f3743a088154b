#include <catch_amalgamated.hpp>

#include <cmath>

#include "dgd/quadrature.hpp"

using namespace dgd;
using Catch::Matchers::WithinAbs;

namespace
{
double monomial_integral_1d(int k)
{
   return k % 2 == 1 ? 0.0 : 2.0 / (k + 1);
}

double factorial(int n)
{
   return std::tgamma(n + 1.0);
}

double apply(const QuadratureRule &r, int a, int b)
{
   double s = 0.0;
   for (int i = 0; i < r.size(); ++i)
   {
      s += r.weights[i] * std::pow(r.points[i](0), a) *
           std::pow(r.points[i](1), b);
   }
   return s;
}
}  // namespace

TEST_CASE("legendre values match the three-term recurrence by hand")
{
   double v, d;
   legendre(3, 0.5, v, d);
   CHECK_THAT(v, WithinAbs(-0.4375, 1e-15));
   // P3' = (15 x^2 - 3) / 2
   CHECK_THAT(d, WithinAbs(0.375, 1e-15));
   legendre(0, 0.3, v, d);
   CHECK(v == 1.0);
   CHECK(d == 0.0);
}

TEST_CASE("Gauss-Legendre rules integrate monomials up to 2n-1")
{
   for (int n = 1; n <= 8; ++n)
   {
      const QuadratureRule r = gauss_legendre(n);
      REQUIRE(r.size() == n);
      for (int k = 0; k <= 2 * n - 1; ++k)
      {
         CHECK_THAT(apply(r, k, 0), WithinAbs(monomial_integral_1d(k), 1e-14));
      }
      CHECK(std::abs(apply(r, 2 * n, 0) - monomial_integral_1d(2 * n)) > 1e-6);
   }
}

TEST_CASE("Gauss-Lobatto rules contain the endpoints and are 2n-3 exact")
{
   for (int n = 2; n <= 8; ++n)
   {
      const QuadratureRule r = gauss_lobatto(n);
      REQUIRE(r.size() == n);
      CHECK(r.points.front()(0) == -1.0);
      CHECK(r.points.back()(0) == 1.0);
      for (int i = 1; i < n; ++i)
      {
         CHECK(r.points[i](0) > r.points[i - 1](0));
      }
      for (int k = 0; k <= 2 * n - 3; ++k)
      {
         CHECK_THAT(apply(r, k, 0), WithinAbs(monomial_integral_1d(k), 1e-14));
      }
   }
   const QuadratureRule r3 = gauss_lobatto(3);
   CHECK_THAT(r3.weights[0], WithinAbs(1.0 / 3.0, 1e-15));
   CHECK_THAT(r3.weights[1], WithinAbs(4.0 / 3.0, 1e-15));
}

TEST_CASE("collapsed triangle rule matches the Dirichlet moment formula")
{
   for (int n = 1; n <= 6; ++n)
   {
      const QuadratureRule r = triangle_collapsed_gauss(n);
      for (int a = 0; a <= 2 * n - 2; ++a)
      {
         for (int b = 0; a + b <= 2 * n - 2; ++b)
         {
            const double exact = factorial(a) * factorial(b) / factorial(a + b + 2);
            CHECK_THAT(apply(r, a, b), WithinAbs(exact, 1e-15));
         }
      }
   }
}

TEST_CASE("segment rule integrates linear functions along an edge")
{
   const Point a(0.2, -1.0), b(1.4, 0.6);
   const QuadratureRule r = segment_gauss(a, b, 3);
   double len = 0.0, fx = 0.0;
   for (int i = 0; i < r.size(); ++i)
   {
      len += r.weights[i];
      fx += r.weights[i] * (2.0 * r.points[i](0) - r.points[i](1));
   }
   const double L = (b - a).norm();
   CHECK_THAT(len, WithinAbs(L, 1e-14));
   const Point m = 0.5 * (a + b);
   CHECK_THAT(fx, WithinAbs(L * (2.0 * m(0) - m(1)), 1e-14));
}
