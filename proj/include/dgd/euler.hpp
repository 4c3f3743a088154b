/// Compressible Euler physics for a calorically perfect gas in one or two
/// dimensions.  States are conservative vectors (rho, rho u, [rho v], e)
/// stored in plain arrays of length dim + 2.  All functions are templated
/// on the scalar type so they can be evaluated with complex numbers.

#ifndef DGD_EULER_HPP
#define DGD_EULER_HPP

#include <cmath>
#include <complex>

#include "dgd/common.hpp"

namespace dgd::euler
{
constexpr double gamma = 1.4;
constexpr double gami = gamma - 1.0;

/// Real part used for branch decisions (identity for real scalars)
inline double re(double x) { return x; }
inline double re(const std::complex<double> &x) { return x.real(); }

/// |x| continued analytically from the sign of the real part
template <typename T>
T sabs(const T &x)
{
   return re(x) < 0.0 ? T(-x) : x;
}

template <typename T, int dim>
T pressure(const T *q)
{
   T ke = 0.0;
   for (int i = 0; i < dim; ++i)
   {
      ke += q[i + 1] * q[i + 1];
   }
   return gami * (q[dim + 1] - 0.5 * ke / q[0]);
}

template <typename T, int dim>
T sound_speed(const T *q)
{
   using std::sqrt;
   return sqrt(gamma * pressure<T, dim>(q) / q[0]);
}

/// True if density and pressure are positive
template <typename T, int dim>
bool is_admissible(const T *q)
{
   const double rho = re(q[0]);
   return rho > 0.0 && re(pressure<T, dim>(q)) > 0.0 && std::isfinite(rho);
}

/// Flux in direction `dir` (not necessarily unit): sum_d dir_d F_d(q)
template <typename T, int dim>
void flux(const double *dir, const T *q, T *f)
{
   const T p = pressure<T, dim>(q);
   T un = 0.0;
   for (int i = 0; i < dim; ++i)
   {
      un += dir[i] * q[i + 1];
   }
   un /= q[0];
   f[0] = q[0] * un;
   for (int i = 0; i < dim; ++i)
   {
      f[i + 1] = q[i + 1] * un + dir[i] * p;
   }
   f[dim + 1] = (q[dim + 1] + p) * un;
}

/// Physical entropy s = ln(p / rho^gamma)
template <typename T, int dim>
T physical_entropy(const T *q)
{
   using std::log;
   return log(pressure<T, dim>(q)) - gamma * log(q[0]);
}

/// Mathematical entropy S = -rho s / (gamma - 1)
template <typename T, int dim>
T entropy(const T *q)
{
   return -q[0] * physical_entropy<T, dim>(q) / gami;
}

/// Entropy flux G_n = S (u . dir)
template <typename T, int dim>
T entropy_flux(const double *dir, const T *q)
{
   T un = 0.0;
   for (int i = 0; i < dim; ++i)
   {
      un += dir[i] * q[i + 1];
   }
   return entropy<T, dim>(q) * un / q[0];
}

/// Entropy-flux potential psi_n = rho u . dir
template <typename T, int dim>
T entropy_potential(const double *dir, const T *q)
{
   T psi = 0.0;
   for (int i = 0; i < dim; ++i)
   {
      psi += dir[i] * q[i + 1];
   }
   return psi;
}

/// w = dS/dq
template <typename T, int dim>
void entropy_vars(const T *q, T *w)
{
   const T p = pressure<T, dim>(q);
   const T s = physical_entropy<T, dim>(q);
   T ke = 0.0;
   for (int i = 0; i < dim; ++i)
   {
      ke += q[i + 1] * q[i + 1];
   }
   w[0] = (gamma - s) / gami - 0.5 * ke / (q[0] * p);
   for (int i = 0; i < dim; ++i)
   {
      w[i + 1] = q[i + 1] / p;
   }
   w[dim + 1] = -q[0] / p;
}

/// Inverse of entropy_vars; requires w[dim+1] < 0
template <typename T, int dim>
void state_from_entropy_vars(const T *w, T *q)
{
   using std::exp;
   using std::pow;
   const T ws = w[dim + 1];
   T wv2 = 0.0;
   for (int i = 0; i < dim; ++i)
   {
      wv2 += w[i + 1] * w[i + 1];
   }
   const T s = gamma - gami * (w[0] - 0.5 * wv2 / ws);
   const T rho = pow(-ws * exp(s), 1.0 / (1.0 - gamma));
   const T p = -rho / ws;
   T ke = 0.0;
   q[0] = rho;
   for (int i = 0; i < dim; ++i)
   {
      const T u = -w[i + 1] / ws;
      q[i + 1] = rho * u;
      ke += u * u;
   }
   q[dim + 1] = p / gami + 0.5 * rho * ke;
}

/// dq/dw, symmetric positive definite; A is row-major (dim+2)^2
template <typename T, int dim>
void dqdw(const T *q, T *A)
{
   constexpr int s = dim + 2;
   const T rho = q[0];
   const T p = pressure<T, dim>(q);
   const T e = q[dim + 1];
   const T H = (e + p) / rho;
   const T a2 = gamma * p / rho;
   T u[dim];
   for (int i = 0; i < dim; ++i)
   {
      u[i] = q[i + 1] / rho;
   }
   A[0] = rho;
   for (int i = 0; i < dim; ++i)
   {
      A[i + 1] = rho * u[i];
      A[(i + 1) * s] = rho * u[i];
      for (int j = 0; j < dim; ++j)
      {
         A[(i + 1) * s + j + 1] = rho * u[i] * u[j] + (i == j ? p : T(0.0));
      }
      A[(i + 1) * s + dim + 1] = rho * u[i] * H;
      A[(dim + 1) * s + i + 1] = rho * u[i] * H;
   }
   A[dim + 1] = e;
   A[(dim + 1) * s] = e;
   A[(dim + 1) * s + dim + 1] = rho * H * H - a2 * p / gami;
}

/// Logarithmic mean (a - b)/(ln a - ln b) with a series near a = b;
/// arguments are ordered so the result is bitwise symmetric
template <typename T>
T logavg(const T &x, const T &y)
{
   using std::log;
   const bool swap = re(x) < re(y);
   const T &a = swap ? y : x;
   const T &b = swap ? x : y;
   const T xi = a / b;
   const T f = (xi - 1.0) / (xi + 1.0);
   const T u = f * f;
   T F;
   if (re(u) < 1.0e-3)
   {
      F = 1.0 + u * (1.0 / 3.0 + u * (1.0 / 5.0 + u * (1.0 / 7.0 + u / 9.0)));
   }
   else
   {
      F = (log(xi) / 2.0) / f;
   }
   return (a + b) / (2.0 * F);
}

/// Direction-independent averages of the Ismail-Roe flux
template <typename T, int dim>
struct IsmailRoeMeans
{
   T rho_hat;
   T u_hat[dim];
   T p1_hat;
   T h_hat;

   IsmailRoeMeans(const T *qL, const T *qR)
   {
      using std::sqrt;
      const T pL = pressure<T, dim>(qL);
      const T pR = pressure<T, dim>(qR);
      const T z0L = sqrt(qL[0] / pL);
      const T z0R = sqrt(qR[0] / pR);
      const T zsL = sqrt(qL[0] * pL);
      const T zsR = sqrt(qR[0] * pR);
      const T z0sum = z0L + z0R;
      const T zs_log = logavg(zsL, zsR);
      rho_hat = 0.5 * z0sum * zs_log;
      p1_hat = (zsL + zsR) / z0sum;
      const T p2_hat =
          ((gamma + 1.0) * zs_log / logavg(z0L, z0R) + gami * p1_hat) /
          (2.0 * gamma);
      h_hat = gamma * p2_hat / (rho_hat * gami);
      for (int i = 0; i < dim; ++i)
      {
         u_hat[i] = (z0L * qL[i + 1] / qL[0] + z0R * qR[i + 1] / qR[0]) / z0sum;
         h_hat += 0.5 * u_hat[i] * u_hat[i];
      }
   }

   /// Flux in direction `dir`; linear in dir
   void flux(const double *dir, T *f) const
   {
      T U = 0.0;
      for (int i = 0; i < dim; ++i)
      {
         U += dir[i] * u_hat[i];
      }
      const T m = rho_hat * U;
      f[0] = m;
      for (int i = 0; i < dim; ++i)
      {
         f[i + 1] = m * u_hat[i] + dir[i] * p1_hat;
      }
      f[dim + 1] = m * h_hat;
   }
};

/// Ismail-Roe entropy-conservative two-point flux in direction `dir`
template <typename T, int dim>
void ismail_roe_flux(const double *dir, const T *qL, const T *qR, T *f)
{
   IsmailRoeMeans<T, dim>(qL, qR).flux(dir, f);
}

/// |u . n| + c |n|
template <typename T, int dim>
T max_wave_speed(const double *dir, const T *q)
{
   using std::sqrt;
   T un = 0.0;
   double nn = 0.0;
   for (int i = 0; i < dim; ++i)
   {
      un += dir[i] * q[i + 1];
      nn += dir[i] * dir[i];
   }
   return sabs(T(un / q[0])) + sound_speed<T, dim>(q) * std::sqrt(nn);
}

/// Local Lax-Friedrichs penalty lambda_max (qL - qR) / 2 for unit `dir`
template <typename T, int dim>
void interface_dissipation(const double *dir, const T *qL, const T *qR, T *d)
{
   const T aL = max_wave_speed<T, dim>(dir, qL);
   const T aR = max_wave_speed<T, dim>(dir, qR);
   const T lam = re(aL) > re(aR) ? aL : aR;
   for (int i = 0; i < dim + 2; ++i)
   {
      d[i] = 0.5 * lam * (qL[i] - qR[i]);
   }
}

/// Same penalty with states given by entropy variables
template <typename T, int dim>
void interface_dissipation_w(const double *dir,
                             const T *wL,
                             const T *wR,
                             T *d)
{
   T qL[dim + 2];
   T qR[dim + 2];
   state_from_entropy_vars<T, dim>(wL, qL);
   state_from_entropy_vars<T, dim>(wR, qR);
   interface_dissipation<T, dim>(dir, qL, qR, d);
}

/// Conservative state from primitive (rho, velocity, p)
template <int dim>
void state_from_primitive(double rho, const double *vel, double p, double *q)
{
   double ke = 0.0;
   q[0] = rho;
   for (int i = 0; i < dim; ++i)
   {
      q[i + 1] = rho * vel[i];
      ke += vel[i] * vel[i];
   }
   q[dim + 1] = p / gami + 0.5 * rho * ke;
}

/// Runtime-dimension wrappers on Eigen vectors of length dim + 2
double pressure(int dim, const Vector &q);
bool is_admissible(int dim, const Vector &q);
Vector flux(int dim, const Vector &q, const Point &dir);
double entropy(int dim, const Vector &q);
Vector entropy_vars(int dim, const Vector &q);
Vector state_from_entropy_vars(int dim, const Vector &w);
Vector ismail_roe_flux(int dim, const Vector &qL, const Vector &qR,
                       const Point &dir);
Vector interface_dissipation(int dim, const Vector &qL, const Vector &qR,
                             const Point &dir);
double max_wave_speed(int dim, const Vector &q, const Point &dir);
Matrix dqdw(int dim, const Vector &q);
/// State from density, velocity (first dim entries used) and pressure
Vector state_from_primitive(int dim, double rho, const Point &vel, double p);

}  // namespace dgd::euler

#endif
