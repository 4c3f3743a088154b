#include <catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <random>

#include "dgd/euler.hpp"
#include "dgd/quadrature.hpp"

using namespace dgd;
using cplx = std::complex<double>;

namespace
{
struct Sampler
{
   std::mt19937 rng{2024};
   std::uniform_real_distribution<double> rho{0.2, 3.0};
   std::uniform_real_distribution<double> vel{-2.0, 2.0};
   std::uniform_real_distribution<double> p{0.1, 4.0};
   std::uniform_real_distribution<double> ang{0.0, 6.283185307179586};

   Vector state(int dim)
   {
      return euler::state_from_primitive(dim, rho(rng), Point(vel(rng), vel(rng)), p(rng));
   }
   Point normal()
   {
      const double a = ang(rng);
      return Point(std::cos(a), std::sin(a));
   }
};

Vector dir_of(int dim, const Point &n)
{
   return dim == 1 ? Vector::Constant(1, n(0) >= 0 ? 1.0 : -1.0) : Vector(n);
}

// d/dt flux(q + t dq) at t = 0 by complex step
Vector flux_directional(int dim, const Vector &q, const Vector &dq, const Point &n)
{
   const int s = dim + 2;
   std::vector<cplx> qc(s), f(s);
   const double h = 1e-30;
   for (int i = 0; i < s; ++i)
   {
      qc[i] = cplx(q(i), h * dq(i));
   }
   if (dim == 1)
   {
      euler::flux<cplx, 1>(n.data(), qc.data(), f.data());
   }
   else
   {
      euler::flux<cplx, 2>(n.data(), qc.data(), f.data());
   }
   Vector out(s);
   for (int i = 0; i < s; ++i)
   {
      out(i) = f[i].imag() / h;
   }
   return out;
}

double entropy_flux(int dim, const Vector &q, const Point &n)
{
   return dim == 1 ? euler::entropy_flux<double, 1>(n.data(), q.data())
                   : euler::entropy_flux<double, 2>(n.data(), q.data());
}
}  // namespace

TEST_CASE("flux examples")
{
   const double g = euler::gamma;
   const Vector q = euler::state_from_primitive(2, 1.0, Point::Zero(), 1.0);
   CHECK((q - Vector{{1.0, 0.0, 0.0, 1.0 / (g - 1.0)}}).norm() < 1e-15);
   CHECK((euler::flux(2, q, Point(1.0, 0.0)) - Vector{{0.0, 1.0, 0.0, 0.0}}).norm() < 1e-15);

   const Vector q1 = euler::state_from_primitive(1, 1.0, Point(2.0, 0.0), 1.0);
   const double e = 1.0 / (g - 1.0) + 2.0;
   CHECK((euler::flux(1, q1, Point(1.0, 0.0)) - Vector{{2.0, 5.0, (e + 1.0) * 2.0}}).norm() <
         1e-14);

   // energy row of the y flux carries (e + p) v
   const Vector q2 = euler::state_from_primitive(2, 1.2, Point(0.3, -0.7), 0.9);
   const double p = 0.9;
   const Vector fy = euler::flux(2, q2, Point(0.0, 1.0));
   CHECK(std::abs(fy(3) - (q2(3) + p) * (-0.7)) < 1e-14);

   Sampler smp;
   for (int i = 0; i < 50; ++i)
   {
      const Vector s = smp.state(2);
      const Point n = smp.normal();
      const Vector lin = n(0) * euler::flux(2, s, Point(1, 0)) + n(1) * euler::flux(2, s, Point(0, 1));
      CHECK((euler::flux(2, s, n) - lin).norm() < 1e-13 * lin.norm() + 1e-14);
   }
}

TEST_CASE("entropy variables")
{
   const Vector q = euler::state_from_primitive(2, 1.0, Point::Zero(), 1.0);
   CHECK(std::abs(euler::entropy(2, q)) < 1e-15);
   CHECK((euler::entropy_vars(2, q) - Vector{{3.5, 0.0, 0.0, -1.0}}).norm() < 1e-14);

   Sampler smp;
   for (int dim : {1, 2})
   {
      for (int i = 0; i < 1000; ++i)
      {
         const Vector s = smp.state(dim);
         const Vector w = euler::entropy_vars(dim, s);
         CHECK(w(dim + 1) < 0.0);
         const Vector back = euler::state_from_entropy_vars(dim, w);
         CHECK((back - s).norm() <= 1e-13 * s.norm());
      }
   }

   // central differences of the entropy: the error falls like eps^2
   for (int i = 0; i < 10; ++i)
   {
      const Vector s = smp.state(2);
      Vector dir(4);
      dir << smp.vel(smp.rng), smp.vel(smp.rng), smp.vel(smp.rng), smp.vel(smp.rng);
      dir *= 0.1 * s(0);
      const double exact = euler::entropy_vars(2, s).dot(dir);
      double prev = 0.0;
      for (int k = 0; k < 3; ++k)
      {
         const double eps = 1e-2 * std::pow(0.1, k);
         const double fd = (euler::entropy(2, s + eps * dir) - euler::entropy(2, s - eps * dir)) /
                           (2.0 * eps);
         const double err = std::abs(fd - exact);
         if (k > 0 && prev > 1e-9)
         {
            CHECK(err < 0.05 * prev);
         }
         prev = err;
      }
      CHECK(prev < 1e-7 * std::max(1.0, std::abs(exact)));
   }
}

TEST_CASE("dq/dw is the Jacobian of the inverse map")
{
   Sampler smp;
   for (int dim : {1, 2})
   {
      for (int i = 0; i < 20; ++i)
      {
         const Vector q = smp.state(dim);
         const Vector w = euler::entropy_vars(dim, q);
         const Matrix A = euler::dqdw(dim, q);
         CHECK((A - A.transpose()).norm() < 1e-13 * A.norm());
         Eigen::SelfAdjointEigenSolver<Matrix> es(A);
         CHECK(es.eigenvalues().minCoeff() > 0.0);
         const int s = dim + 2;
         for (int j = 0; j < s; ++j)
         {
            const double h = 1e-6 * std::max(1.0, std::abs(w(j)));
            Vector wp = w, wm = w;
            wp(j) += h;
            wm(j) -= h;
            const Vector col = (euler::state_from_entropy_vars(dim, wp) -
                                euler::state_from_entropy_vars(dim, wm)) /
                               (2.0 * h);
            CHECK((A.col(j) - col).norm() < 1e-6 * std::max(1.0, A.col(j).norm()));
         }
      }
   }
}

TEST_CASE("entropy flux and potential")
{
   Sampler smp;
   for (int dim : {1, 2})
   {
      for (int i = 0; i < 10; ++i)
      {
         const Vector q0 = smp.state(dim);
         const Vector q1 = smp.state(dim);
         const Point n = dim == 1 ? Point(1.0, 0.0) : smp.normal();
         // integrate w^T dF/dq along the straight path from q0 to q1
         const QuadratureRule r = gauss_legendre(30);
         double integral = 0.0;
         const Vector dq = q1 - q0;
         for (int k = 0; k < r.size(); ++k)
         {
            const double t = 0.5 * (r.points[k](0) + 1.0);
            const Vector q = q0 + t * dq;
            integral += 0.5 * r.weights[k] *
                        euler::entropy_vars(dim, q).dot(flux_directional(dim, q, dq, n));
         }
         const double dG = entropy_flux(dim, q1, n) - entropy_flux(dim, q0, n);
         CHECK(std::abs(integral - dG) < 1e-9 * std::max(1.0, std::abs(dG)));

         const double psi = dim == 1
                                ? euler::entropy_potential<double, 1>(n.data(), q1.data())
                                : euler::entropy_potential<double, 2>(n.data(), q1.data());
         const double homog = euler::entropy_vars(dim, q1).dot(euler::flux(dim, q1, n)) -
                              entropy_flux(dim, q1, n);
         CHECK(std::abs(psi - homog) < 1e-12 * std::max(1.0, std::abs(psi)));
      }
   }
}

TEST_CASE("Ismail-Roe flux")
{
   Sampler smp;
   for (int dim : {1, 2})
   {
      for (int i = 0; i < 500; ++i)
      {
         const Vector qL = smp.state(dim);
         const Vector qR = i % 10 == 0 ? Vector(qL * (1.0 + 1e-7)) : smp.state(dim);
         const Point n = dim == 1 ? Point(1.0, 0.0) : smp.normal();
         const Vector f = euler::ismail_roe_flux(dim, qL, qR, n);
         const Vector fs = euler::ismail_roe_flux(dim, qR, qL, n);
         CHECK(f == fs);
         const Vector fc = euler::ismail_roe_flux(dim, qL, qL, n);
         const Vector fe = euler::flux(dim, qL, n);
         CHECK((fc - fe).norm() < 1e-13 * std::max(1.0, fe.norm()));
         const Vector dw = euler::entropy_vars(dim, qL) - euler::entropy_vars(dim, qR);
         const double psiL = dir_of(dim, n).dot(qL.segment(1, dim));
         const double psiR = dir_of(dim, n).dot(qR.segment(1, dim));
         CHECK(std::abs(dw.dot(f) - (psiL - psiR)) < 1e-12 * std::max(1.0, dw.norm() * f.norm()));
      }
   }
}

TEST_CASE("logarithmic mean")
{
   CHECK(euler::logavg(2.5, 2.5) == 2.5);
   CHECK(euler::logavg(0.7, 0.7) == 0.7);
   for (double r : {1.0 + 1e-8, 1.0 + 1e-3, 1.01, 1.05, 1.0635, 1.07, 1.5, 3.0})
   {
      const double a = 1.3, b = 1.3 * r;
      const double direct = (b - a) / std::log1p((b - a) / a);
      CHECK(std::abs(euler::logavg(a, b) - direct) < 1e-14 * direct);
      CHECK(euler::logavg(a, b) == euler::logavg(b, a));
   }
   // derivative in b by complex step on both sides of the series switch
   auto slope = [](double a, double b)
   {
      return euler::logavg(cplx(a), cplx(b, 1e-30)).imag() / 1e-30;
   };
   const double a = 1.0;
   // u = ((b-a)/(b+a))^2 crosses 1e-3 near b = 1.0653
   const double bs = (1.0 + std::sqrt(1e-3)) / (1.0 - std::sqrt(1e-3));
   CHECK(std::abs(euler::logavg(a, bs * (1 - 1e-12)) - euler::logavg(a, bs * (1 + 1e-12))) <
         1e-11);
   CHECK(std::abs(slope(a, bs * (1 - 1e-12)) - slope(a, bs * (1 + 1e-12))) < 1e-9);
   CHECK(std::abs(slope(a, 1.0) - 0.5) < 1e-15);
}

TEST_CASE("interface dissipation")
{
   const Vector q = euler::state_from_primitive(2, 1.0, Point::Zero(), 1.0);
   for (const Point &n : {Point(1, 0), Point(0.6, 0.8)})
   {
      CHECK(std::abs(euler::max_wave_speed(2, q, n) - std::sqrt(1.4)) < 1e-15);
      CHECK(euler::interface_dissipation(2, q, q, n).norm() == 0.0);
   }
   Sampler smp;
   for (int dim : {1, 2})
   {
      for (int i = 0; i < 1000; ++i)
      {
         const Vector qL = smp.state(dim);
         const Vector qR = smp.state(dim);
         const Point n = dim == 1 ? Point(1.0, 0.0) : smp.normal();
         const Vector dw = euler::entropy_vars(dim, qL) - euler::entropy_vars(dim, qR);
         CHECK(dw.dot(qL - qR) >= 0.0);
         CHECK(dw.dot(euler::interface_dissipation(dim, qL, qR, n)) >= 0.0);
      }
   }
}

TEST_CASE("admissibility")
{
   CHECK(euler::is_admissible(2, euler::state_from_primitive(2, 1.0, Point(1, 1), 1.0)));
   Vector q = euler::state_from_primitive(2, 1.0, Point(1, 1), 1.0);
   q(3) = 0.5;
   CHECK_FALSE(euler::is_admissible(2, q));
   q(0) = -1.0;
   CHECK_FALSE(euler::is_admissible(2, q));
}
