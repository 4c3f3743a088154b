#include "dgd/euler.hpp"

namespace dgd::euler
{
namespace
{
void check(int dim, const Vector &q)
{
   if ((dim != 1 && dim != 2) || q.size() != dim + 2)
   {
      throw InvalidArgument("Euler state has the wrong size");
   }
}

}  // namespace

double pressure(int dim, const Vector &q)
{
   check(dim, q);
   return dim == 1 ? pressure<double, 1>(q.data())
                   : pressure<double, 2>(q.data());
}

bool is_admissible(int dim, const Vector &q)
{
   check(dim, q);
   return dim == 1 ? is_admissible<double, 1>(q.data())
                   : is_admissible<double, 2>(q.data());
}

Vector flux(int dim, const Vector &q, const Point &dir)
{
   check(dim, q);
   Vector f(dim + 2);
   if (dim == 1)
      flux<double, 1>(dir.data(), q.data(), f.data());
   else
      flux<double, 2>(dir.data(), q.data(), f.data());
   return f;
}

double entropy(int dim, const Vector &q)
{
   check(dim, q);
   return dim == 1 ? entropy<double, 1>(q.data()) : entropy<double, 2>(q.data());
}

Vector entropy_vars(int dim, const Vector &q)
{
   check(dim, q);
   Vector w(dim + 2);
   if (dim == 1)
      entropy_vars<double, 1>(q.data(), w.data());
   else
      entropy_vars<double, 2>(q.data(), w.data());
   return w;
}

Vector state_from_entropy_vars(int dim, const Vector &w)
{
   check(dim, w);
   if (!(w(dim + 1) < 0.0))
   {
      throw InadmissibleStateError(-1, -1, "last entropy variable must be negative");
   }
   Vector q(dim + 2);
   if (dim == 1)
      state_from_entropy_vars<double, 1>(w.data(), q.data());
   else
      state_from_entropy_vars<double, 2>(w.data(), q.data());
   return q;
}

Vector ismail_roe_flux(int dim, const Vector &qL, const Vector &qR,
                       const Point &dir)
{
   check(dim, qL);
   check(dim, qR);
   Vector f(dim + 2);
   if (dim == 1)
      ismail_roe_flux<double, 1>(dir.data(), qL.data(), qR.data(), f.data());
   else
      ismail_roe_flux<double, 2>(dir.data(), qL.data(), qR.data(), f.data());
   return f;
}

Vector interface_dissipation(int dim, const Vector &qL, const Vector &qR,
                             const Point &dir)
{
   check(dim, qL);
   check(dim, qR);
   Vector d(dim + 2);
   if (dim == 1)
      interface_dissipation<double, 1>(dir.data(), qL.data(), qR.data(),
                                       d.data());
   else
      interface_dissipation<double, 2>(dir.data(), qL.data(), qR.data(),
                                       d.data());
   return d;
}

double max_wave_speed(int dim, const Vector &q, const Point &dir)
{
   check(dim, q);
   return dim == 1 ? max_wave_speed<double, 1>(dir.data(), q.data())
                   : max_wave_speed<double, 2>(dir.data(), q.data());
}

Matrix dqdw(int dim, const Vector &q)
{
   check(dim, q);
   Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> A(
       dim + 2, dim + 2);
   if (dim == 1)
      dqdw<double, 1>(q.data(), A.data());
   else
      dqdw<double, 2>(q.data(), A.data());
   return A;
}

Vector state_from_primitive(int dim, double rho, const Point &vel, double p)
{
   Vector q(dim + 2);
   if (dim == 1)
      state_from_primitive<1>(rho, vel.data(), p, q.data());
   else if (dim == 2)
      state_from_primitive<2>(rho, vel.data(), p, q.data());
   else
      throw InvalidArgument("Euler dimension must be 1 or 2");
   return q;
}

}  // namespace dgd::euler
