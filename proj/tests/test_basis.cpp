#include <catch_amalgamated.hpp>

#include <cmath>
#include <memory>

#include "dgd/basis.hpp"
#include "dgd/dgd_ops.hpp"
#include "dgd/mesh.hpp"
#include "dgd/stencil.hpp"

using namespace dgd;

namespace
{
Stencil manual_stencil(const std::vector<Point> &centroids)
{
   Stencil s;
   s.owner = 0;
   for (std::size_t i = 0; i < centroids.size(); ++i)
   {
      s.members.push_back(static_cast<int>(i));
   }
   s.member_centroids = centroids;
   return s;
}

double monomial(const Point &x, int a, int b)
{
   return std::pow(x(0), a) * std::pow(x(1), b);
}

// prolonged centroid samples against nodal values, for every monomial of
// degree <= p, scaled by the largest nodal value
double reproduction_error(const DgdSpace &space)
{
   double err = 0.0;
   const int p = space.degree;
   for (int a = 0; a <= p; ++a)
   {
      for (int b = 0; a + b <= p; ++b)
      {
         if (space.dim == 1 && b > 0)
         {
            continue;
         }
         for (int k = 0; k < space.num_elements(); ++k)
         {
            const Stencil &st = space.stencils[k];
            Vector u(st.size());
            for (int j = 0; j < st.size(); ++j)
            {
               u(j) = monomial(st.member_centroids[j], a, b);
            }
            const Vector nodal = space.prolongations[k].P * u;
            const auto &nodes = space.ops[k].nodes;
            for (std::size_t q = 0; q < nodes.size(); ++q)
            {
               const double exact = monomial(nodes[q], a, b);
               err = std::max(err, std::abs(nodal(q) - exact) / std::max(1.0, std::abs(exact)));
            }
         }
      }
   }
   return err;
}
}  // namespace

TEST_CASE("basis ordering and derivatives")
{
   const PolyBasis b(2, 2, Point(1.0, 2.0), 0.5);
   REQUIRE(b.size() == 6);
   const Point x(1.5, 1.0);
   // ((x-1)/0.5, (y-2)/0.5) = (1, -2)
   CHECK(b.eval(0, x) == 1.0);
   CHECK(std::abs(b.eval(1, x) - 1.0) < 1e-15);
   CHECK(std::abs(b.eval(2, x) + 2.0) < 1e-15);
   CHECK(std::abs(b.eval(3, x) - 1.0) < 1e-15);
   CHECK(std::abs(b.eval(4, x) + 2.0) < 1e-15);
   CHECK(std::abs(b.eval(5, x) - 4.0) < 1e-15);
   // central differences as an independent oracle for the derivatives
   const double h = 1e-6;
   for (int j = 0; j < b.size(); ++j)
   {
      for (int d = 0; d < 2; ++d)
      {
         Point xp = x, xm = x;
         xp(d) += h;
         xm(d) -= h;
         const double fd = (b.eval(j, xp) - b.eval(j, xm)) / (2.0 * h);
         CHECK(std::abs(b.deriv(j, d, x) - fd) < 1e-8);
      }
   }
}

TEST_CASE("centroid Vandermonde examples")
{
   const double h = 0.25;
   const Stencil s0 = manual_stencil({Point(0.0, 0.0), Point(-h, 0.0), Point(h, 0.0)});
   const Matrix V0 = centroid_vandermonde(PolyBasis(0, 1), s0);
   CHECK(V0.rows() == 3);
   CHECK(V0.cols() == 1);
   CHECK(V0.isApproxToConstant(1.0));

   const Matrix V = centroid_vandermonde(PolyBasis(1, 1, Point::Zero(), h), s0);
   Matrix expect(3, 2);
   expect << 1, 0, 1, -1, 1, 1;
   CHECK((V - expect).norm() < 1e-15);

   const Matrix C = dgd_coefficients(V);
   CHECK((C * V - Matrix::Identity(2, 2)).norm() < 1e-14);
   CHECK((V * C * V - V).norm() <= 1e-13 * V.norm());

   const Mesh m = build_structured_tri_mesh(4, true);
   const Stencil st = build_stencil(m, 5, 1);
   const Matrix V2 = centroid_vandermonde(stencil_basis(st, 1, 2), st);
   CHECK(V2.rows() == 4);
   CHECK(V2.cols() == 3);
   Eigen::JacobiSVD<Matrix> svd(V2);
   CHECK(svd.singularValues().minCoeff() > 1e-3);
}

TEST_CASE("square Vandermonde gives the inverse")
{
   const Stencil s = manual_stencil({Point(0.0, 0.0), Point(1.0, 0.0), Point(0.0, 1.0)});
   const Matrix V = centroid_vandermonde(PolyBasis(1, 2), s);
   const Matrix C = dgd_coefficients(V);
   CHECK((V * C - Matrix::Identity(3, 3)).norm() < 1e-14);
}

TEST_CASE("collinear centroids are rank deficient")
{
   Stencil s = manual_stencil(
       {Point(0.0, 0.0), Point(1.0, 1.0), Point(2.0, 2.0), Point(3.0, 3.0)});
   s.owner = 7;
   try
   {
      centroid_vandermonde(PolyBasis(1, 2), s);
      FAIL("expected RankDeficientError");
   }
   catch (const RankDeficientError &e)
   {
      CHECK(e.element() == 7);
   }
   Matrix V(3, 2);
   V << 1, 2, 1, 2, 1, 2;
   CHECK_THROWS_AS(dgd_coefficients(V, 3), RankDeficientError);
}

TEST_CASE("degree zero prolongation copies the centroid value")
{
   const Stencil s = manual_stencil({Point(0.3, 0.0)});
   const std::vector<Point> nodes{Point(0.1, 0.0), Point(0.3, 0.0), Point(0.5, 0.0)};
   const Prolongation pr = build_prolongation(s, 0, 1, nodes);
   CHECK(pr.P.isApproxToConstant(1.0));
}

TEST_CASE("prolongation reproduces polynomials on periodic meshes")
{
   auto m1 = std::make_shared<Mesh>(build_interval_mesh(20, 0.0, 1.0, true));
   for (int p = 1; p <= 4; ++p)
   {
      CHECK(reproduction_error(build_dgd_space(m1, p)) < 1e-12);
   }
   auto m2 = std::make_shared<Mesh>(build_structured_tri_mesh(8, true));
   for (int p = 1; p <= 2; ++p)
   {
      CHECK(reproduction_error(build_dgd_space(m2, p)) < 1e-12);
   }
   auto m3 = std::make_shared<Mesh>(build_structured_tri_mesh(5, false));
   CHECK(reproduction_error(build_dgd_space(m3, 2)) < 1e-12);
}

TEST_CASE("prolongation has minimum Frobenius norm")
{
   const double h = 0.1;
   const Stencil s = manual_stencil({Point(0.0, 0.0), Point(-h, 0.0), Point(h, 0.0)});
   const std::vector<Point> nodes{Point(-0.05, 0.0), Point(0.0, 0.0), Point(0.05, 0.0)};
   const PolyBasis basis(1, 1, Point::Zero(), h);
   const Prolongation pr = build_prolongation(basis, s, nodes);
   // alternative left inverse that interpolates through the first two centroids
   Matrix Ct = Matrix::Zero(2, 3);
   Ct << 1, 0, 0, 1, -1, 0;
   const Matrix Vq = basis.vandermonde(nodes);
   const Matrix alt = Vq * Ct;
   const Matrix Vc = centroid_vandermonde(basis, s);
   CHECK((alt * Vc - Vq).norm() < 1e-14);
   CHECK((pr.P * Vc - Vq).norm() < 1e-14);
   CHECK(pr.P.norm() <= alt.norm());
}

TEST_CASE("prolongation is invariant to basis scaling and member order")
{
   const Mesh m = build_structured_tri_mesh(5, true);
   const Stencil st = build_stencil(m, 7, 2);
   const std::vector<Point> nodes{m.centroids()[7], m.element_vertex(7, 0),
                                  m.element_vertex(7, 2)};
   const Prolongation a = build_prolongation(stencil_basis(st, 2, 2), st, nodes);
   const Prolongation b = build_prolongation(PolyBasis(2, 2, Point(0.3, 0.9), 3.0), st, nodes);
   CHECK((a.P - b.P).norm() < 1e-11);

   Stencil rev = st;
   std::reverse(rev.members.begin() + 1, rev.members.end());
   std::reverse(rev.member_centroids.begin() + 1, rev.member_centroids.end());
   const Prolongation c = build_prolongation(stencil_basis(rev, 2, 2), rev, nodes);
   for (int j = 0; j < st.size(); ++j)
   {
      const int jr = j == 0 ? 0 : st.size() - j;
      CHECK((a.P.col(j) - c.P.col(jr)).norm() < 1e-12);
   }
}

TEST_CASE("even degree 1D bases are interpolatory")
{
   const Mesh m = build_interval_mesh(12, 0.0, 1.0, true);
   for (int p : {2, 4})
   {
      for (int k = 0; k < m.num_elements(); ++k)
      {
         const Stencil st = build_stencil(m, k, p);
         const Prolongation pr = build_prolongation(st, p, 1, st.member_centroids);
         CHECK((pr.P - Matrix::Identity(st.size(), st.size())).norm() < 1e-12);
      }
   }
   // odd degrees use symmetric over-determined stencils
   const Stencil st = build_stencil(m, 4, 1);
   const Prolongation pr = build_prolongation(st, 1, 1, st.member_centroids);
   CHECK(std::abs(pr.P(0, 0) - 1.0) > 1e-3);
}

TEST_CASE("basis derivative matrix matches differentiated prolongation")
{
   const Mesh m = build_structured_tri_mesh(4, false);
   const Stencil st = build_stencil(m, 3, 2);
   const std::vector<Point> x{m.centroids()[3]};
   const double h = 1e-6;
   for (int d = 0; d < 2; ++d)
   {
      std::vector<Point> xp = x, xm = x;
      xp[0](d) += h;
      xm[0](d) -= h;
      const Matrix fd = (build_prolongation(st, 2, 2, xp).P -
                         build_prolongation(st, 2, 2, xm).P) / (2.0 * h);
      CHECK((prolongation_derivative(st, 2, 2, x, d) - fd).norm() < 1e-7);
   }
}
