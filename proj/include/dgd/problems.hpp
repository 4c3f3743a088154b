/// Initial conditions, exact solutions and boundary data for the test
/// problems

#ifndef DGD_PROBLEMS_HPP
#define DGD_PROBLEMS_HPP

#include <functional>
#include <string>
#include <vector>

#include "dgd/residual.hpp"

namespace dgd
{
/// Parameters of the periodic unsteady vortex
struct VortexParams
{
   double mach = 0.5;
   double epsilon = 1.0;
   double k = 15.0;
   Point center = Point(0.5, 0.5);
};

/// Conservative vortex state at t = 0.  The second and third components
/// are the printed u and v fields, used directly as momenta, with the
/// pressure closure p = rho^gamma in the energy.
Vector unsteady_vortex_ic(const Point &x, const VortexParams &prm = {});

/// Left and right states of the shock tube
struct SodStates
{
   double rho_l = 5.0;
   double u_l = 0.0;
   double p_l = 1.0;
   double rho_r = 0.5;
   double u_r = 0.0;
   double p_r = 0.1;
   double x0 = 0.5;
};

/// Piecewise-constant initial state (x == x0 takes the right state)
Vector sod_ic(double x, const SodStates &st = {});

/// Exact Riemann solution
class SodExact
{
public:
   explicit SodExact(const SodStates &st = {});
   /// Conservative state at (x, t)
   Vector state(double x, double t) const;
   /// Primitive (rho, u, p) at (x, t)
   Eigen::Vector3d primitive(double x, double t) const;
   double star_pressure() const { return p_star_; }
   double star_velocity() const { return u_star_; }
   /// Pressure function f_L(p) + f_R(p) + u_R - u_L
   double pressure_function(double p) const;
   /// Wave positions at time t from left to right: rarefaction head and
   /// tail (when present), contact, shock (when present)
   std::vector<double> wave_positions(double t) const;

private:
   SodStates st_;
   double p_star_ = 0.0;
   double u_star_ = 0.0;
};

/// rho = 2 + sin(2 pi (x - t))/2, u = 1, p = 1 on the unit interval
Vector entropy_wave(double x, double t);

/// Problem description used by the CLI and the acceptance suite
struct ProblemSpec
{
   std::string id;
   int dim = 1;
   /// "advection" or "euler"
   std::string equation;
   Point lower = Point::Zero();
   Point upper = Point(1.0, 1.0);
   bool periodic = true;
   double final_time = 0.0;
   /// default CFL number for implicit runs of this problem
   double cfl = 10.0;
   Point velocity = Point::Zero();
   /// Conservative state (Euler) or a length-1 vector (advection)
   std::function<Vector(const Point &)> initial;
   /// Exact solution at (x, t); empty when not available
   std::function<Vector(const Point &, double)> exact;
   GhostState ghost;
};

/// Known ids: advection (dim 1 or 2), entropy-wave, sod, unsteady-vortex
ProblemSpec make_problem(const std::string &id, int dim = 1);

/// Ids accepted by make_problem
std::vector<std::string> problem_ids();

}  // namespace dgd

#endif
