/// Implicit midpoint time stepping with relaxation (RRK) for the DGD
/// entropy-variable semi-discretization

#ifndef DGD_TIMEINT_HPP
#define DGD_TIMEINT_HPP

#include <functional>
#include <vector>

#include "dgd/residual.hpp"

namespace dgd
{
struct TimeOptions
{
   double cfl = 10.0;
   double newton_tol = 1e-12;
   int newton_max_iter = 100;
   /// smallest step fraction tried by the backtracking line search
   double newton_min_damping = 0x1p-20;
   /// when Newton fails from w^n, re-solve with fractions of dt down to
   /// 2^-levels and use them as starting guesses
   int continuation_levels = 4;
   /// how many times advance() may halve a step whose Newton solve fails
   int max_step_splits = 6;
   double secant_tol = 1e-13;
   int secant_max_iter = 50;
   bool relaxation = true;
};

struct NewtonResult
{
   Vector w_star;
   bool converged = false;
   int iterations = 0;
   /// infinity norm of the midpoint residual before each update and at exit
   std::vector<double> history;
   /// accepted step fraction per iteration
   std::vector<double> damping;
};

/// m(w*) - m(w^n) + dt R((w* + w^n)/2)
Vector midpoint_residual(const SemiDiscretization &sd,
                         const Vector &wn,
                         const Vector &w_star,
                         double dt);

/// Newton solve of the midpoint system with a backtracking line search
/// that rejects inadmissible iterates, falling back to continuation in dt
NewtonResult midpoint_solve(const SemiDiscretization &sd,
                            const Vector &wn,
                            double dt,
                            const TimeOptions &opts = {});

struct StepResult
{
   Vector w;
   double beta = 1.0;
   /// false when the secant iteration failed and beta fell back to 1
   bool relaxed = true;
   int newton_iterations = 0;
   int secant_iterations = 0;
   double entropy_before = 0.0;
   double entropy_after = 0.0;
   /// w_half^T R(w_half)
   double entropy_rate = 0.0;
   /// S(w^{n+1}) - S(w^n) + beta dt R(w_half)
   double relaxation_residual = 0.0;
};

/// One midpoint step followed by the relaxation update
/// w^{n+1} = w^n + beta (w* - w^n).  With relaxation off beta = 1.
/// Throws ConvergenceError if Newton does not converge.
StepResult rrk_step(const SemiDiscretization &sd,
                    const Vector &wn,
                    double dt,
                    const TimeOptions &opts = {});

/// CFL * min_k diam_k / max_nodes (|u| + c)
double stable_time_step(const SemiDiscretization &sd,
                        const Vector &w,
                        double cfl);

struct StepRecord
{
   int step = 0;
   double t = 0.0;
   double entropy = 0.0;
   double entropy_change = 0.0;
   double beta = 1.0;
   bool relaxed = true;
   int newton_iterations = 0;
   double relaxation_residual = 0.0;
};

using StepCallback = std::function<void(const StepRecord &, const Vector &)>;

struct Trajectory
{
   Vector w;
   double t = 0.0;
   int steps = 0;
   /// steps taken with beta = 1 because the secant iteration failed
   int fallback_steps = 0;
   /// steps replaced by two half steps after a Newton failure
   int split_steps = 0;
   std::vector<StepRecord> history;
};

/// March from t = 0 to T with a CFL time step fixed from the initial
/// state; the last step is clipped to end at T.  A step whose Newton
/// solve fails is halved recursively up to max_step_splits times.  The
/// callback sees the initial state as step 0 and every accepted step.
Trajectory advance(const SemiDiscretization &sd,
                   const Vector &w0,
                   double T,
                   const TimeOptions &opts = {},
                   const StepCallback &callback = {});

}  // namespace dgd

#endif
