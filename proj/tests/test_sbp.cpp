#include <catch_amalgamated.hpp>

#include <cmath>
#include <sstream>

#include "dgd/sbp.hpp"

using namespace dgd;

namespace
{
double factorial(int n)
{
   return std::tgamma(n + 1.0);
}

// exact integral of x^a y^b over the reference triangle
double tri_moment(int a, int b)
{
   return factorial(a) * factorial(b) / factorial(a + b + 2);
}

double mono(const Point &x, int a, int b)
{
   return std::pow(x(0), a) * std::pow(x(1), b);
}

double dmono(const Point &x, int a, int b, int d)
{
   if (d == 0)
   {
      return a == 0 ? 0.0 : a * std::pow(x(0), a - 1) * std::pow(x(1), b);
   }
   return b == 0 ? 0.0 : b * std::pow(x(0), a) * std::pow(x(1), b - 1);
}

// max |D x^a y^b - d/dx_d x^a y^b| over total degree <= p
double derivative_error(const SbpOperator &op, int p)
{
   double err = 0.0;
   for (int a = 0; a <= p; ++a)
   {
      for (int b = 0; a + b <= p; ++b)
      {
         if (op.dim == 1 && b > 0)
         {
            continue;
         }
         Vector v(op.size());
         for (int q = 0; q < op.size(); ++q)
         {
            v(q) = mono(op.nodes[q], a, b);
         }
         for (int d = 0; d < op.dim; ++d)
         {
            const Vector dv = op.D(d) * v;
            for (int q = 0; q < op.size(); ++q)
            {
               err = std::max(err, std::abs(dv(q) - dmono(op.nodes[q], a, b, d)));
            }
         }
      }
   }
   return err;
}
}  // namespace

TEST_CASE("three-point LGL operator")
{
   const SbpOperator op = build_lgl_sbp_1d(2);
   REQUIRE(op.size() == 3);
   CHECK(std::abs(op.H(0) - 1.0 / 3.0) < 1e-15);
   CHECK(std::abs(op.H(1) - 4.0 / 3.0) < 1e-15);
   CHECK(std::abs(op.H(2) - 1.0 / 3.0) < 1e-15);
   // Lagrange derivative on {-1, 0, 1}
   Matrix D(3, 3);
   D << -1.5, 2.0, -0.5, -0.5, 0.0, 0.5, 0.5, -2.0, 1.5;
   CHECK((op.D(0) - D).norm() < 1e-14);
   Matrix E = Matrix::Zero(3, 3);
   E(0, 0) = -1.0;
   E(2, 2) = 1.0;
   CHECK((op.E[0] - E).norm() < 1e-15);
}

TEST_CASE("1D operators satisfy the SBP properties")
{
   for (int p = 1; p <= 4; ++p)
   {
      for (const SbpOperator &op : {build_lgl_sbp_1d(p), build_element_sbp_1d(p)})
      {
         const SbpReport rep = verify_sbp(op, p);
         INFO("p = " << p << " nodes = " << op.size());
         CHECK(rep.passed());
         CHECK(rep.face_split < 1e-14);
         CHECK(derivative_error(op, p) < 1e-12);
      }
      const SbpOperator el = build_element_sbp_1d(p);
      CHECK(el.size() == p + 2);
      CHECK(verify_sbp(el, p).quadrature_degree >= 2 * p);
      // norm moments against exact integrals on [-1, 1]
      for (int a = 0; a <= 2 * p; ++a)
      {
         double sum = 0.0;
         for (int q = 0; q < el.size(); ++q)
         {
            sum += el.H(q) * std::pow(el.nodes[q](0), a);
         }
         const double exact = a % 2 == 0 ? 2.0 / (a + 1) : 0.0;
         CHECK(std::abs(sum - exact) < 1e-13);
      }
   }
   CHECK_THROWS_AS(build_lgl_sbp_1d(5), InvalidArgument);
   CHECK_THROWS_AS(build_lgl_sbp_1d(2, 2), InvalidArgument);
}

TEST_CASE("triangle operators")
{
   const std::array<int, 3> expected_nodes{0, 7, 12};
   for (int p = 1; p <= 2; ++p)
   {
      INFO("p = " << p);
      const SbpOperator op = build_tri_sbp(p);
      CHECK(op.size() == expected_nodes[p]);
      const SbpReport rep = verify_sbp(op, p);
      CHECK(rep.passed());
      CHECK(rep.quadrature_degree >= 2 * p);
      CHECK(rep.min_norm > 0.0);
      CHECK(derivative_error(op, p) < 1e-12);
      for (int a = 0; a <= 2 * p; ++a)
      {
         for (int b = 0; a + b <= 2 * p; ++b)
         {
            double sum = 0.0;
            for (int q = 0; q < op.size(); ++q)
            {
               sum += op.H(q) * mono(op.nodes[q], a, b);
            }
            CHECK(std::abs(sum - tri_moment(a, b)) < 1e-13);
         }
      }
      // every face carries nodes on its edge with weights exact to 2p
      REQUIRE(op.faces.size() == 3);
      for (int f = 0; f < 3; ++f)
      {
         const Point va = op.vertices[f];
         const Point vb = op.vertices[(f + 1) % 3];
         const double len = (vb - va).norm();
         const SbpFace &face = op.faces[f];
         for (int j = 0; j <= 2 * p; ++j)
         {
            // integral of s^j along the edge with s in [0, 1]
            double sum = 0.0;
            for (std::size_t a = 0; a < face.nodes.size(); ++a)
            {
               const Point x = op.nodes[face.nodes[a]];
               const double s = (x - va).norm() / len;
               const Point rel = x - va - s * (vb - va);
               CHECK(rel.norm() < 1e-14);
               sum += face.weights(a) * std::pow(s, j);
            }
            CHECK(std::abs(sum - len / (j + 1)) < 1e-13);
         }
         const Point t = (vb - va) / len;
         CHECK(std::abs(face.normal(0) - t(1)) < 1e-15);
         CHECK(std::abs(face.normal(1) + t(0)) < 1e-15);
      }
   }
   CHECK_THROWS_AS(build_tri_sbp(3), InvalidArgument);
}

TEST_CASE("physical operators keep the SBP properties")
{
   const std::vector<Point> tri{Point(0.2, 0.1), Point(0.45, 0.15), Point(0.25, 0.4)};
   for (int p = 1; p <= 2; ++p)
   {
      const SbpOperator op = map_to_physical(build_tri_sbp(p), tri);
      CHECK(verify_sbp(op, p).passed());
      CHECK(std::abs(op.H.sum() - 0.5 * (0.25 * 0.3 - 0.05 * 0.05)) < 1e-14);
      CHECK(derivative_error(op, p) < 1e-10);
   }
   const std::vector<Point> seg{Point(0.3, 0.0), Point(0.35, 0.0)};
   for (int p = 1; p <= 4; ++p)
   {
      const SbpOperator op = map_to_physical(build_element_sbp_1d(p), seg);
      CHECK(verify_sbp(op, p).passed());
      CHECK(std::abs(op.H.sum() - 0.05) < 1e-15);
      CHECK(derivative_error(op, p) < 1e-9);
   }
}

TEST_CASE("boundary integral of the unit triangle")
{
   const std::vector<Point> tri{Point(0, 0), Point(1, 0), Point(0, 1)};
   // divergence theorem: boundary integral of x n_x equals the area
   const double ix = boundary_integral(tri, 2, 0, [](const Point &x) { return x(0); });
   CHECK(std::abs(ix - 0.5) < 1e-15);
   const double iy =
       boundary_integral(tri, 2, 1, [](const Point &x) { return x(0) * x(1); });
   CHECK(std::abs(iy - 1.0 / 6.0) < 1e-15);
}

TEST_CASE("operator dump uses 17 significant digits")
{
   std::ostringstream os;
   write_sbp(os, build_lgl_sbp_1d(2));
   CHECK(os.str().find("0.33333333333333331") != std::string::npos);
}
