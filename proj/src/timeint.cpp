#include "dgd/timeint.hpp"

#include <cmath>
#include <functional>
#include <limits>

#include <Eigen/SparseLU>

namespace dgd
{
Vector midpoint_residual(const SemiDiscretization &sd,
                         const Vector &wn,
                         const Vector &w_star,
                         double dt)
{
   return sd.mass_term(w_star) - sd.mass_term(wn) +
          dt * sd.residual(0.5 * (w_star + wn));
}

namespace
{
NewtonResult newton_midpoint(const SemiDiscretization &sd,
                             const Vector &wn,
                             const Vector &guess,
                             double dt,
                             const TimeOptions &opts)
{
   NewtonResult res;
   res.w_star = guess;
   const Vector mn = sd.mass_term(wn);
   auto eval = [&](const Vector &w_star)
   {
      return Vector(sd.mass_term(w_star) - mn +
                    dt * sd.residual(0.5 * (w_star + wn)));
   };
   Eigen::SparseLU<SparseMatrix, Eigen::COLAMDOrdering<int>> lu;
   bool analyzed = false;
   Vector G;
   try
   {
      G = eval(res.w_star);
   }
   catch (const InadmissibleStateError &)
   {
      return res;
   }
   double norm = G.lpNorm<Eigen::Infinity>();
   double merit = G.norm();
   res.history.push_back(norm);
   for (int it = 0; it < opts.newton_max_iter; ++it)
   {
      if (norm <= opts.newton_tol)
      {
         res.converged = true;
         return res;
      }
      const Vector wh = 0.5 * (res.w_star + wn);
      SparseMatrix J = sd.mass_jacobian(res.w_star) +
                       (0.5 * dt) * sd.residual_jacobian(wh);
      J.makeCompressed();
      if (!analyzed)
      {
         lu.analyzePattern(J);
         analyzed = true;
      }
      lu.factorize(J);
      if (lu.info() != Eigen::Success)
      {
         return res;
      }
      const Vector dx = lu.solve(G);
      // backtrack on admissibility and decrease of the residual 2-norm
      double alpha = 1.0;
      bool accepted = false;
      while (alpha >= opts.newton_min_damping)
      {
         const Vector trial = res.w_star - alpha * dx;
         try
         {
            Vector Gt = eval(trial);
            const double mt = Gt.norm();
            const double nt = Gt.lpNorm<Eigen::Infinity>();
            if (std::isfinite(mt) && (mt < merit || nt <= opts.newton_tol))
            {
               res.w_star = trial;
               G = std::move(Gt);
               norm = nt;
               merit = mt;
               accepted = true;
               break;
            }
         }
         catch (const InadmissibleStateError &)
         {
         }
         alpha *= 0.5;
      }
      res.iterations = it + 1;
      res.damping.push_back(alpha);
      res.history.push_back(norm);
      if (!accepted)
      {
         return res;
      }
   }
   res.converged = norm <= opts.newton_tol;
   return res;
}
}  // namespace

NewtonResult midpoint_solve(const SemiDiscretization &sd,
                            const Vector &wn,
                            double dt,
                            const TimeOptions &opts)
{
   if (!(dt > 0.0))
   {
      throw InvalidArgument("time step must be positive");
   }
   NewtonResult res = newton_midpoint(sd, wn, wn, dt, opts);
   if (res.converged || opts.continuation_levels <= 0)
   {
      return res;
   }
   // continuation in the step size: solve for a fraction tau of dt and
   // extrapolate linearly in tau to seed the next solve
   const double min_step = std::ldexp(1.0, -opts.continuation_levels);
   int iterations = res.iterations;
   double tau_ok = 0.0;
   Vector w_ok = wn;
   double tau = 0.5;
   while (true)
   {
      Vector guess = wn;
      if (tau_ok > 0.0)
      {
         guess += (tau / tau_ok) * (w_ok - wn);
      }
      NewtonResult r = newton_midpoint(sd, wn, guess, tau * dt, opts);
      if (!r.converged && tau_ok > 0.0)
      {
         iterations += r.iterations;
         r = newton_midpoint(sd, wn, w_ok, tau * dt, opts);
      }
      iterations += r.iterations;
      if (r.converged)
      {
         if (tau == 1.0)
         {
            r.iterations = iterations;
            return r;
         }
         tau_ok = tau;
         w_ok = r.w_star;
         tau = std::min(1.0, 2.0 * tau);
      }
      else
      {
         if (tau - tau_ok <= min_step)
         {
            r.iterations = iterations;
            return r;
         }
         tau = 0.5 * (tau_ok + tau);
      }
   }
}

StepResult rrk_step(const SemiDiscretization &sd,
                    const Vector &wn,
                    double dt,
                    const TimeOptions &opts)
{
   NewtonResult nr = midpoint_solve(sd, wn, dt, opts);
   if (!nr.converged)
   {
      throw ConvergenceError("Newton did not converge (last residual " +
                  std::to_string(nr.history.back()) + ")");
   }
   StepResult out;
   out.newton_iterations = nr.iterations;
   const Vector d = nr.w_star - wn;
   const Vector wh = wn + 0.5 * d;
   out.entropy_before = sd.total_entropy(wn);
   out.entropy_rate = sd.entropy_rate(wh);
   const double S0 = out.entropy_before;
   const double R = out.entropy_rate;
   auto eq = [&](double beta)
   {
      try
      {
         return sd.total_entropy(wn + beta * d) - S0 + beta * dt * R;
      }
      catch (const InadmissibleStateError &)
      {
         return std::numeric_limits<double>::quiet_NaN();
      }
   };

   double beta = 1.0;
   if (opts.relaxation)
   {
      const double tol = opts.secant_tol * std::max(1.0, std::abs(S0));
      double b0 = 1.0;
      double f0 = eq(b0);
      double b1 = 1.0 - 1e-6;
      double f1 = eq(b1);
      bool ok = std::abs(f0) <= tol;
      if (ok)
      {
         b1 = b0;
         f1 = f0;
      }
      int it = 0;
      while (!ok && it < opts.secant_max_iter)
      {
         ++it;
         if (std::abs(f1) <= tol)
         {
            ok = true;
            break;
         }
         if (f1 == f0 || !std::isfinite(f1))
         {
            break;
         }
         const double b2 = b1 - f1 * (b1 - b0) / (f1 - f0);
         b0 = b1;
         f0 = f1;
         b1 = b2;
         f1 = eq(b1);
      }
      out.secant_iterations = it;
      if (!ok && std::abs(f1) <= 10.0 * tol)
      {
         ok = true;
      }
      if (ok && std::isfinite(b1) && b1 > 0.0)
      {
         beta = b1;
      }
      else
      {
         out.relaxed = false;
      }
   }
   out.beta = beta;
   out.w = wn + beta * d;
   out.entropy_after = sd.total_entropy(out.w);
   out.relaxation_residual = out.entropy_after - S0 + beta * dt * R;
   return out;
}

double stable_time_step(const SemiDiscretization &sd,
                        const Vector &w,
                        double cfl)
{
   const Mesh &mesh = *sd.space().mesh;
   double h = std::numeric_limits<double>::max();
   for (int k = 0; k < mesh.num_elements(); ++k)
   {
      h = std::min(h, mesh.element_diameter(k));
   }
   return cfl * h / sd.max_wave_speed(w);
}

Trajectory advance(const SemiDiscretization &sd,
                   const Vector &w0,
                   double T,
                   const TimeOptions &opts,
                   const StepCallback &callback)
{
   if (T < 0.0)
   {
      throw InvalidArgument("final time must be non-negative");
   }
   Trajectory traj;
   traj.w = w0;
   StepRecord rec;
   rec.entropy = sd.total_entropy(w0);
   traj.history.push_back(rec);
   if (callback)
   {
      callback(rec, traj.w);
   }
   if (T == 0.0)
   {
      return traj;
   }
   const double dt = stable_time_step(sd, w0, opts.cfl);
   const int nsteps = static_cast<int>(std::ceil(T / dt - 1e-12));
   auto accept = [&](const StepResult &st, double t_next)
   {
      traj.w = st.w;
      traj.t = t_next;
      ++traj.steps;
      if (!st.relaxed)
      {
         ++traj.fallback_steps;
      }
      rec.step = traj.steps;
      rec.t = t_next;
      rec.entropy = st.entropy_after;
      rec.entropy_change = st.entropy_after - st.entropy_before;
      rec.beta = st.beta;
      rec.relaxed = st.relaxed;
      rec.newton_iterations = st.newton_iterations;
      rec.relaxation_residual = st.relaxation_residual;
      traj.history.push_back(rec);
      if (callback)
      {
         callback(rec, traj.w);
      }
   };
   // a step whose Newton solve fails is replaced by two half steps
   std::function<void(double, int)> march = [&](double t_next, int depth)
   {
      const double h = t_next - traj.t;
      StepResult st;
      try
      {
         st = rrk_step(sd, traj.w, h, opts);
      }
      catch (const ConvergenceError &)
      {
         if (depth >= opts.max_step_splits)
         {
            throw;
         }
         ++traj.split_steps;
         march(traj.t + 0.5 * h, depth + 1);
         march(t_next, depth + 1);
         return;
      }
      accept(st, t_next);
   };
   for (int n = 0; n < nsteps; ++n)
   {
      march(n + 1 == nsteps ? T : (n + 1) * dt, 0);
   }
   return traj;
}

}  // namespace dgd
