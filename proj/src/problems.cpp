#include "dgd/problems.hpp"

#include <cmath>
#include <numbers>

#include "dgd/euler.hpp"

namespace dgd
{
using std::numbers::pi;

Vector unsteady_vortex_ic(const Point &x, const VortexParams &prm)
{
   const double g = euler::gamma;
   const double dx = x(0) - prm.center(0);
   const double dy = x(1) - prm.center(1);
   const double f = 1.0 - (dx * dx + dy * dy);
   const double rho = std::pow(
       1.0 - prm.epsilon * prm.epsilon * (g - 1.0) * prm.mach * prm.mach /
                 (8.0 * pi * pi) * std::exp(f),
       1.0 / (g - 1.0));
   const double ef = std::exp(0.5 * f);
   const double u =
       rho * prm.k * (1.0 - prm.epsilon / (2.0 * pi) * prm.k * dy * ef);
   const double v = rho * prm.k * prm.k * prm.epsilon / (2.0 * pi) * dx * ef;
   const double p = std::pow(rho, g);
   Vector q(4);
   q << rho, u, v, prm.k * prm.k * p / (g - 1.0) + (u * u + v * v) / (2.0 * rho);
   return q;
}

Vector sod_ic(double x, const SodStates &st)
{
   const bool left = x < st.x0;
   return euler::state_from_primitive(1, left ? st.rho_l : st.rho_r,
                                      Point(left ? st.u_l : st.u_r, 0.0),
                                      left ? st.p_l : st.p_r);
}

namespace
{
/// Toro's pressure function for one side and its derivative
void side_function(double p, double rho, double pk, double &f, double &df)
{
   const double g = euler::gamma;
   const double c = std::sqrt(g * pk / rho);
   if (p > pk)
   {
      const double A = 2.0 / ((g + 1.0) * rho);
      const double B = (g - 1.0) / (g + 1.0) * pk;
      const double s = std::sqrt(A / (p + B));
      f = (p - pk) * s;
      df = s * (1.0 - 0.5 * (p - pk) / (p + B));
   }
   else
   {
      const double r = p / pk;
      f = 2.0 * c / (g - 1.0) * (std::pow(r, (g - 1.0) / (2.0 * g)) - 1.0);
      df = std::pow(r, -(g + 1.0) / (2.0 * g)) / (rho * c);
   }
}

}  // namespace

SodExact::SodExact(const SodStates &st) : st_(st)
{
   double p = 0.5 * (st.p_l + st.p_r);
   for (int it = 0; it < 100; ++it)
   {
      double fl, dfl, fr, dfr;
      side_function(p, st.rho_l, st.p_l, fl, dfl);
      side_function(p, st.rho_r, st.p_r, fr, dfr);
      const double dp = (fl + fr + st.u_r - st.u_l) / (dfl + dfr);
      double pn = p - dp;
      if (pn <= 0.0)
      {
         pn = 0.5 * p;
      }
      const double change = 2.0 * std::abs(pn - p) / (pn + p);
      p = pn;
      if (change < 1e-15)
      {
         break;
      }
   }
   double fl, dfl, fr, dfr;
   side_function(p, st.rho_l, st.p_l, fl, dfl);
   side_function(p, st.rho_r, st.p_r, fr, dfr);
   p_star_ = p;
   u_star_ = 0.5 * (st.u_l + st.u_r) + 0.5 * (fr - fl);
}

double SodExact::pressure_function(double p) const
{
   double fl, dfl, fr, dfr;
   side_function(p, st_.rho_l, st_.p_l, fl, dfl);
   side_function(p, st_.rho_r, st_.p_r, fr, dfr);
   return fl + fr + st_.u_r - st_.u_l;
}

Eigen::Vector3d SodExact::primitive(double x, double t) const
{
   const double g = euler::gamma;
   if (t <= 0.0)
   {
      const bool left = x < st_.x0;
      return left ? Eigen::Vector3d(st_.rho_l, st_.u_l, st_.p_l)
                  : Eigen::Vector3d(st_.rho_r, st_.u_r, st_.p_r);
   }
   const double s = (x - st_.x0) / t;
   const double cl = std::sqrt(g * st_.p_l / st_.rho_l);
   const double cr = std::sqrt(g * st_.p_r / st_.rho_r);
   if (s <= u_star_)
   {
      if (p_star_ > st_.p_l)
      {
         const double ratio = p_star_ / st_.p_l;
         const double gm = (g - 1.0) / (g + 1.0);
         const double sl =
             st_.u_l - cl * std::sqrt((g + 1.0) / (2.0 * g) * ratio +
                                      (g - 1.0) / (2.0 * g));
         if (s <= sl)
         {
            return {st_.rho_l, st_.u_l, st_.p_l};
         }
         return {st_.rho_l * (ratio + gm) / (gm * ratio + 1.0), u_star_,
                 p_star_};
      }
      const double shl = st_.u_l - cl;
      const double cstar = cl * std::pow(p_star_ / st_.p_l, (g - 1.0) / (2.0 * g));
      const double stl = u_star_ - cstar;
      if (s <= shl)
      {
         return {st_.rho_l, st_.u_l, st_.p_l};
      }
      if (s >= stl)
      {
         return {st_.rho_l * std::pow(p_star_ / st_.p_l, 1.0 / g), u_star_,
                 p_star_};
      }
      const double a = 2.0 / (g + 1.0) + (g - 1.0) / ((g + 1.0) * cl) * (st_.u_l - s);
      return {st_.rho_l * std::pow(a, 2.0 / (g - 1.0)),
              2.0 / (g + 1.0) * (cl + 0.5 * (g - 1.0) * st_.u_l + s),
              st_.p_l * std::pow(a, 2.0 * g / (g - 1.0))};
   }
   if (p_star_ > st_.p_r)
   {
      const double ratio = p_star_ / st_.p_r;
      const double gm = (g - 1.0) / (g + 1.0);
      const double sr =
          st_.u_r + cr * std::sqrt((g + 1.0) / (2.0 * g) * ratio +
                                   (g - 1.0) / (2.0 * g));
      if (s >= sr)
      {
         return {st_.rho_r, st_.u_r, st_.p_r};
      }
      return {st_.rho_r * (ratio + gm) / (gm * ratio + 1.0), u_star_, p_star_};
   }
   const double shr = st_.u_r + cr;
   const double cstar = cr * std::pow(p_star_ / st_.p_r, (g - 1.0) / (2.0 * g));
   const double str = u_star_ + cstar;
   if (s >= shr)
   {
      return {st_.rho_r, st_.u_r, st_.p_r};
   }
   if (s <= str)
   {
      return {st_.rho_r * std::pow(p_star_ / st_.p_r, 1.0 / g), u_star_,
              p_star_};
   }
   const double a = 2.0 / (g + 1.0) - (g - 1.0) / ((g + 1.0) * cr) * (st_.u_r - s);
   return {st_.rho_r * std::pow(a, 2.0 / (g - 1.0)),
           2.0 / (g + 1.0) * (-cr + 0.5 * (g - 1.0) * st_.u_r + s),
           st_.p_r * std::pow(a, 2.0 * g / (g - 1.0))};
}

Vector SodExact::state(double x, double t) const
{
   const Eigen::Vector3d w = primitive(x, t);
   return euler::state_from_primitive(1, w(0), Point(w(1), 0.0), w(2));
}

std::vector<double> SodExact::wave_positions(double t) const
{
   const double g = euler::gamma;
   const double cl = std::sqrt(g * st_.p_l / st_.rho_l);
   const double cr = std::sqrt(g * st_.p_r / st_.rho_r);
   std::vector<double> pos;
   if (p_star_ <= st_.p_l)
   {
      const double cstar =
          cl * std::pow(p_star_ / st_.p_l, (g - 1.0) / (2.0 * g));
      pos.push_back(st_.x0 + (st_.u_l - cl) * t);
      pos.push_back(st_.x0 + (u_star_ - cstar) * t);
   }
   pos.push_back(st_.x0 + u_star_ * t);
   if (p_star_ > st_.p_r)
   {
      const double ratio = p_star_ / st_.p_r;
      pos.push_back(st_.x0 + (st_.u_r + cr * std::sqrt((g + 1.0) / (2.0 * g) * ratio +
                                                       (g - 1.0) / (2.0 * g))) *
                                 t);
   }
   return pos;
}

Vector entropy_wave(double x, double t)
{
   return euler::state_from_primitive(
       1, 2.0 + 0.5 * std::sin(2.0 * pi * (x - t)), Point(1.0, 0.0), 1.0);
}

std::vector<std::string> problem_ids()
{
   return {"advection", "entropy-wave", "sod", "unsteady-vortex"};
}

ProblemSpec make_problem(const std::string &id, int dim)
{
   ProblemSpec ps;
   ps.id = id;
   if (id == "advection")
   {
      if (dim != 1 && dim != 2)
      {
         throw InvalidArgument("advection is defined in 1D and 2D");
      }
      ps.dim = dim;
      ps.equation = "advection";
      ps.periodic = true;
      ps.final_time = 1.0;
      ps.lower = Point::Zero();
      ps.upper = dim == 1 ? Point(1.0, 0.0) : Point(1.0, 1.0);
      ps.velocity = dim == 1 ? Point(1.0, 0.0) : Point(1.0, 0.5);
      const Point lam = ps.velocity;
      auto profile = [dim](const Point &x)
      {
         double v = std::sin(2.0 * pi * x(0));
         if (dim == 2)
         {
            v *= std::sin(2.0 * pi * x(1));
         }
         return v;
      };
      ps.initial = [profile](const Point &x)
      { return Vector::Constant(1, profile(x)); };
      ps.exact = [profile, lam](const Point &x, double t)
      { return Vector::Constant(1, profile(Point(x - t * lam))); };
      return ps;
   }
   if (id == "entropy-wave")
   {
      ps.dim = 1;
      ps.equation = "euler";
      ps.periodic = true;
      ps.final_time = 0.5;
      ps.cfl = 0.5;
      ps.upper = Point(1.0, 0.0);
      ps.initial = [](const Point &x) { return entropy_wave(x(0), 0.0); };
      ps.exact = [](const Point &x, double t) { return entropy_wave(x(0), t); };
      return ps;
   }
   if (id == "sod")
   {
      ps.dim = 1;
      ps.equation = "euler";
      ps.periodic = false;
      ps.final_time = 0.3;
      ps.cfl = 0.15;
      ps.upper = Point(1.0, 0.0);
      ps.initial = [](const Point &x) { return sod_ic(x(0)); };
      auto exact = std::make_shared<SodExact>();
      ps.exact = [exact](const Point &x, double t)
      { return exact->state(x(0), t); };
      ps.ghost = [](const Point &, int tag)
      { return sod_ic(tag == 0 ? 0.0 : 1.0); };
      return ps;
   }
   if (id == "unsteady-vortex")
   {
      ps.dim = 2;
      ps.equation = "euler";
      ps.periodic = true;
      ps.final_time = 1.0 / VortexParams{}.k;
      ps.initial = [](const Point &x) { return unsteady_vortex_ic(x); };
      return ps;
   }
   throw InvalidArgument("unknown problem id '" + id + "'");
}

}  // namespace dgd
