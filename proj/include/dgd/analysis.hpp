/// Linearization spectra, error norms, convergence studies and CSV output

#ifndef DGD_ANALYSIS_HPP
#define DGD_ANALYSIS_HPP

#include <complex>
#include <iosfwd>
#include <vector>

#include "dgd/problems.hpp"
#include "dgd/timeint.hpp"

namespace dgd
{
/// Mass and residual Jacobians at a baseline state
struct Linearization
{
   SparseMatrix M;
   SparseMatrix J;
};

Linearization assemble_linearization(const SemiDiscretization &sd,
                                     const Vector &w0);

/// Eigenvalues of -M^{-1} J
struct SpectrumReport
{
   Eigen::VectorXcd eigenvalues;
   double spectral_radius = 0.0;
   double max_real = 0.0;
   /// divisor applied to the normalized eigenvalues
   double normalization = 1.0;
   double max_normalized_real() const { return max_real / normalization; }
};

/// Dense eigensolve of the similar matrix -L^{-1} J L^{-T}, M = L L^T.
/// A non-positive normalization selects the spectral radius itself.
/// Eigenvalues are sorted by real part, then imaginary part.
SpectrumReport compute_spectrum(const SparseMatrix &M,
                                const SparseMatrix &J,
                                double normalization = 0.0);

/// Same with a dense generator matrix A (eigenvalues of A)
SpectrumReport compute_spectrum(const Matrix &A, double normalization = 0.0);

/// sqrt(sum_k e_k^T H_k e_k) with e_k the nodal error on element k
double l2_error(const DgdSpace &space,
                const std::function<Vector(int)> &nodal_values,
                const std::function<double(const Point &)> &exact);

/// L2 error of the prolonged scalar field P_k u
double advection_l2_error(const DgdSpace &space,
                          const Vector &u,
                          const std::function<double(const Point &)> &exact);

/// L2 error of the prolonged density
double density_l2_error(const SemiDiscretization &sd,
                        const Vector &w,
                        const std::function<double(const Point &)> &exact);

/// Entropy variables of the DGD field evaluated at every element centroid
/// (s x K)
Matrix centroid_entropy_vars(const SemiDiscretization &sd, const Vector &w);

/// L1 norm over the SBP quadrature of the error in entropy-variable
/// component c, using the prolonged DGD entropy variables at the nodes
double l1_error(const SemiDiscretization &sd,
                const Vector &w,
                const std::function<Vector(const Point &)> &exact,
                int component = 0);

/// sum_k |w_c(centroid_k) - W_c(exact(centroid_k))| |Omega_k|
double l1_error_centroids(const SemiDiscretization &sd,
                          const Vector &w,
                          const std::function<Vector(const Point &)> &exact,
                          int component = 0);

struct ConvergenceRow
{
   int K = 0;
   double h = 0.0;
   double error = 0.0;
   /// log2-based observed order against the previous row (NaN for the
   /// first)
   double rate = 0.0;
};

/// Fill in observed orders log(e_{i-1}/e_i)/log(h_{i-1}/h_i)
void compute_rates(std::vector<ConvergenceRow> &rows);

/// 1D or 2D periodic linear advection of the problem's sine profile to
/// time T, integrated exactly in time with a matrix exponential.  Sizes
/// are K (1D) or N (2D).
std::vector<ConvergenceRow> advection_convergence(int p,
                                                  int dim,
                                                  const std::vector<int> &sizes,
                                                  double T);

/// Density L2 error of the 1D entropy wave at time T
std::vector<ConvergenceRow> entropy_wave_convergence(
    int p,
    FluxMode mode,
    const std::vector<int> &sizes,
    double T,
    const TimeOptions &opts);

/// Result of one shock-tube run
struct SodResult
{
   int K = 0;
   int p = 0;
   double l1_error = 0.0;
   double l1_error_centroids = 0.0;
   Trajectory trajectory;
   std::vector<double> x;       ///< element centroids
   Matrix w;                    ///< centroid entropy variables (s x K)
   Matrix primitive;            ///< centroid (rho, u, p) (3 x K)
   std::vector<double> exact_w1;
   /// exact and detected contact and shock positions
   std::vector<double> exact_positions;
   std::vector<double> detected_positions;
};

SodResult run_sod(int p, int K, FluxMode mode, const TimeOptions &opts);

/// Equal-area position of a single jump from `left` to `right` inside
/// [lo, hi]: lo + integral of (v - right) / (left - right), with each
/// sample owning the interval between the midpoints to its neighbours
double locate_discontinuity(const std::vector<double> &x,
                            const std::vector<double> &values,
                            double lo,
                            double hi,
                            double left,
                            double right);

/// CSV schemas
void write_spectrum_csv(std::ostream &os, const SpectrumReport &rep);
void write_convergence_csv(std::ostream &os,
                           const std::vector<ConvergenceRow> &rows);
void write_entropy_history_csv(std::ostream &os,
                               const std::vector<StepRecord> &history);
void write_sod_profile_csv(std::ostream &os, const SodResult &res);

}  // namespace dgd

#endif
