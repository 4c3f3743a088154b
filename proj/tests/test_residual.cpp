#include <catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "dgd/euler.hpp"
#include "dgd/quadrature.hpp"
#include "dgd/residual.hpp"

using namespace dgd;

namespace
{
std::shared_ptr<const DgdSpace> space_1d(int K, int p, bool periodic = true)
{
   auto m = std::make_shared<Mesh>(build_interval_mesh(K, 0.0, 1.0, periodic));
   return std::make_shared<DgdSpace>(build_dgd_space(m, p));
}

std::shared_ptr<const DgdSpace> space_2d(int N, int p, bool periodic = true)
{
   auto m = std::make_shared<Mesh>(build_structured_tri_mesh(N, periodic));
   return std::make_shared<DgdSpace>(build_dgd_space(m, p));
}

// entropy variables of a reference state plus a bounded random perturbation
Vector random_state(const SemiDiscretization &sd, std::mt19937 &rng, double amp = 0.2)
{
   std::uniform_real_distribution<double> U(-1.0, 1.0);
   const int d = sd.dim();
   const Vector q0 = euler::state_from_primitive(d, 1.0, Point(0.3, -0.2), 1.0);
   const Vector w0 = euler::entropy_vars(d, q0);
   Vector w(sd.size());
   for (int k = 0; k < sd.num_elements(); ++k)
   {
      for (int i = 0; i < sd.num_vars(); ++i)
      {
         w(k * sd.num_vars() + i) = w0(i) * (1.0 + amp * U(rng));
      }
   }
   return w;
}

Vector constant_state(const SemiDiscretization &sd, const Vector &q)
{
   const Vector wc = euler::entropy_vars(sd.dim(), q);
   Vector w(sd.size());
   for (int k = 0; k < sd.num_elements(); ++k)
   {
      w.segment(k * sd.num_vars(), sd.num_vars()) = wc;
   }
   return w;
}

std::vector<std::shared_ptr<const DgdSpace>> periodic_spaces()
{
   std::vector<std::shared_ptr<const DgdSpace>> s;
   for (int p = 1; p <= 4; ++p)
   {
      s.push_back(space_1d(50, p));
   }
   s.push_back(space_2d(8, 1));
   s.push_back(space_2d(4, 2));
   return s;
}
}  // namespace

TEST_CASE("flux mode names")
{
   CHECK(parse_flux_mode("conservative") == FluxMode::Conservative);
   CHECK(parse_flux_mode("stable") == FluxMode::Stable);
   CHECK(to_string(FluxMode::Stable) == "stable");
   CHECK_THROWS_AS(parse_flux_mode("upwind"), InvalidArgument);
}

TEST_CASE("interface nodes are collocated")
{
   for (const auto &sp : periodic_spaces())
   {
      const SemiDiscretization sd(sp, FluxMode::Conservative);
      CHECK(sd.collocation_error() < 1e-12);
   }
}

TEST_CASE("free-stream preservation")
{
   for (const auto &sp : periodic_spaces())
   {
      for (FluxMode mode : {FluxMode::Conservative, FluxMode::Stable})
      {
         const SemiDiscretization sd(sp, mode);
         const Vector q = euler::state_from_primitive(sd.dim(), 1.3, Point(0.4, -0.9), 0.8);
         const Vector w = constant_state(sd, q);
         CHECK(sd.residual(w).lpNorm<Eigen::Infinity>() < 1e-13);
      }
   }
   // non-periodic mesh with exterior data equal to the interior state
   const Vector q = euler::state_from_primitive(1, 0.9, Point(0.5, 0.0), 1.1);
   const SemiDiscretization sd(space_1d(5, 1, false), FluxMode::Stable,
                               [q](const Point &, int) { return q; });
   CHECK(sd.residual(constant_state(sd, q)).lpNorm<Eigen::Infinity>() < 1e-13);
   const SemiDiscretization one(space_1d(1, 0, false), FluxMode::Conservative,
                                [q](const Point &, int) { return q; });
   const Vector w1 = constant_state(one, q);
   CHECK(one.element_residual(w1, 0).cwiseAbs().maxCoeff() < 1e-13);
}

TEST_CASE("semi-discrete entropy conservation and stability")
{
   std::mt19937 rng(99);
   for (const auto &sp : periodic_spaces())
   {
      const SemiDiscretization ec(sp, FluxMode::Conservative);
      const SemiDiscretization es(sp, FluxMode::Stable);
      INFO("dim " << ec.dim() << " p " << sp->degree);
      for (int trial = 0; trial < 20; ++trial)
      {
         const Vector w = random_state(ec, rng);
         const Vector Rc = ec.residual(w);
         const double scale = w.norm() * Rc.norm();
         CHECK(std::abs(w.dot(Rc)) <= 1e-12 * scale);
         CHECK(std::abs(ec.entropy_rate(w) - w.dot(Rc)) <= 1e-14 * scale);
         const Vector Rs = es.residual(w);
         CHECK(w.dot(Rs) >= -1e-13 * w.norm() * Rs.norm());
         // constants are in the test space: mass, momentum, energy conserved
         for (const Vector *R : {&Rc, &Rs})
         {
            for (int i = 0; i < ec.num_vars(); ++i)
            {
               double sum = 0.0;
               for (int k = 0; k < ec.num_elements(); ++k)
               {
                  sum += (*R)(k * ec.num_vars() + i);
               }
               CHECK(std::abs(sum) <= 1e-12 * R->norm());
            }
         }
         // the diagonal-norm identity element by element
         double diag = 0.0;
         for (int k = 0; k < ec.num_elements(); ++k)
         {
            const Matrix wk = ec.nodal_entropy_vars(w, k);
            const Matrix rk = ec.element_residual(w, k);
            diag += (wk.cwiseProduct(rk) * sp->ops[k].H).sum();
         }
         CHECK(std::abs(diag) <= 1e-12 * scale);
      }
   }
}

TEST_CASE("residual and mass Jacobians")
{
   std::mt19937 rng(5);
   std::uniform_real_distribution<double> U(-1.0, 1.0);
   for (const auto &sp : {space_1d(8, 2), space_2d(3, 1), space_1d(7, 1, false)})
   {
      for (FluxMode mode : {FluxMode::Conservative, FluxMode::Stable})
      {
         const int d = sp->dim;
         const Vector qb = euler::state_from_primitive(d, 1.0, Point(0.2, 0.1), 1.0);
         const SemiDiscretization sd(sp, mode, [qb](const Point &, int) { return qb; });
         const Vector w = random_state(sd, rng, 0.1);
         Vector dw(sd.size());
         for (int i = 0; i < sd.size(); ++i)
         {
            dw(i) = U(rng);
         }
         const double eps = 1e-6;
         const Vector jr = sd.residual_jacobian(w) * dw;
         const Vector fr = (sd.residual(w + eps * dw) - sd.residual(w - eps * dw)) / (2 * eps);
         CHECK((jr - fr).norm() < 1e-6 * std::max(1.0, jr.norm()));

         const SparseMatrix Mw = sd.mass_jacobian(w);
         const Vector jm = Mw * dw;
         const Vector fm = (sd.mass_term(w + eps * dw) - sd.mass_term(w - eps * dw)) / (2 * eps);
         CHECK((jm - fm).norm() < 1e-6 * std::max(1.0, jm.norm()));
         CHECK((Matrix(Mw) - Matrix(Mw).transpose()).norm() <= 1e-12 * Matrix(Mw).norm());
         Eigen::SelfAdjointEigenSolver<Matrix> es{Matrix(Mw)};
         CHECK(es.eigenvalues().minCoeff() > 0.0);
      }
   }
}

TEST_CASE("mass term and totals of a constant state")
{
   const auto sp = space_2d(4, 1);
   const SemiDiscretization sd(sp, FluxMode::Conservative);
   const Vector q = euler::state_from_primitive(2, 1.0, Point::Zero(), 1.0);
   const Vector w = constant_state(sd, q);
   CHECK(std::abs(sd.total_entropy(w)) < 1e-15);
   const Vector m = sd.mass_term(w);
   const Vector tot = sd.conserved_totals(w);
   CHECK((tot - q).norm() < 1e-13);
   for (int k = 0; k < sd.num_elements(); ++k)
   {
      CHECK((m.segment(4 * k, 4) - sp->mesh->element_measures()[k] * q).norm() < 1e-14);
   }
}

TEST_CASE("total entropy matches an over-integrated oracle")
{
   // difference between SBP and 12-point Gauss quadrature of S(u(P w))
   auto discrepancy = [](int K, int p)
   {
      const auto sp = space_1d(K, p);
      const SemiDiscretization sd(sp, FluxMode::Conservative);
      const Vector w = sd.initial_coefficients(
          [](const Point &x)
          {
             return euler::state_from_primitive(1, 2.0 + 0.5 * std::sin(2 * M_PI * x(0)),
                                                Point(0.5 + 0.2 * std::cos(2 * M_PI * x(0)), 0.0),
                                                1.0 + 0.3 * std::sin(4 * M_PI * x(0)));
          });
      double oracle = 0.0;
      for (int k = 0; k < K; ++k)
      {
         const QuadratureRule r =
             segment_gauss(sp->mesh->element_vertex(k, 0), sp->mesh->element_vertex(k, 1), 12);
         const Matrix P = build_prolongation(sp->stencils[k], p, 1, r.points).P;
         const auto &mem = sp->stencils[k].members;
         for (int q = 0; q < r.size(); ++q)
         {
            Vector wq = Vector::Zero(3);
            for (std::size_t j = 0; j < mem.size(); ++j)
            {
               wq += P(q, j) * w.segment(3 * mem[j], 3);
            }
            oracle += r.weights[q] * euler::entropy(1, euler::state_from_entropy_vars(1, wq));
         }
      }
      return std::abs(sd.total_entropy(w) - oracle);
   };
   for (int p = 1; p <= 3; ++p)
   {
      const double e1 = discrepancy(20, p);
      const double e2 = discrepancy(40, p);
      INFO("p " << p << " " << e1 << " " << e2);
      CHECK(std::log2(e1 / e2) > 2 * p - 0.5);
   }
}

TEST_CASE("inadmissible prolonged states are rejected")
{
   const SemiDiscretization sd(space_1d(6, 1), FluxMode::Conservative);
   Vector w = constant_state(sd, euler::state_from_primitive(1, 1.0, Point::Zero(), 1.0));
   w(3 * 2 + 2) = 5.0;
   CHECK_THROWS_AS(sd.residual(w), InadmissibleStateError);
}
