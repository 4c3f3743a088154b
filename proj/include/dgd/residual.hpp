/// Entropy-conservative and entropy-stable DGD residual for the Euler
/// equations in entropy variables

#ifndef DGD_RESIDUAL_HPP
#define DGD_RESIDUAL_HPP

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "dgd/dgd_ops.hpp"

namespace dgd
{
/// Interface flux: Ismail-Roe only, or Ismail-Roe plus Lax-Friedrichs
/// dissipation
enum class FluxMode
{
   Conservative,
   Stable
};

FluxMode parse_flux_mode(const std::string &name);
std::string to_string(FluxMode mode);

/// Exterior conservative state on a boundary face: (point, boundary tag)
using GhostState = std::function<Vector(const Point &, int)>;

/// Semi-discretization M(w) dw/dt + R(w) = 0 in DGD entropy-variable
/// coefficients.  The coefficient vector stores the s = dim + 2 entropy
/// variables of element k contiguously at [s k, s k + s).
class SemiDiscretization
{
public:
   SemiDiscretization(std::shared_ptr<const DgdSpace> space,
                      FluxMode mode,
                      GhostState ghost = {});

   const DgdSpace &space() const { return *space_; }
   int dim() const { return dim_; }
   int num_vars() const { return dim_ + 2; }
   int num_elements() const { return space_->num_elements(); }
   int size() const { return num_vars() * num_elements(); }
   FluxMode mode() const { return mode_; }

   /// R = sum_k P_k^T (volume + face terms); equal to sum P^T H r_k
   Vector residual(const Vector &w) const;
   /// m = sum_k P_k^T H_k u(P_k w)
   Vector mass_term(const Vector &w) const;
   /// dm/dw = sum_k P_k^T H_k (du/dw) P_k
   SparseMatrix mass_jacobian(const Vector &w) const;
   /// dR/dw by element-local complex-step differentiation
   SparseMatrix residual_jacobian(const Vector &w) const;

   /// sum_k sum_q H_qq S(u_q)
   double total_entropy(const Vector &w) const;
   /// w^T R(w)
   double entropy_rate(const Vector &w) const;
   /// Column sums of the mass term per variable (total mass, momentum,
   /// energy)
   Vector conserved_totals(const Vector &w) const;

   /// s x n_q nodal entropy variables P_k w on element k
   Matrix nodal_entropy_vars(const Vector &w, int k) const;
   /// s x n_q nodal conservative states on element k
   Matrix nodal_states(const Vector &w, int k) const;
   /// r_k = H_k^{-1}(volume + face terms) as s x n_q
   Matrix element_residual(const Vector &w, int k) const;

   /// w_k = W(u0(centroid_k))
   Vector initial_coefficients(
       const std::function<Vector(const Point &)> &u0) const;
   /// Largest |u| + c over all nodes
   double max_wave_speed(const Vector &w) const;
   /// Largest distance between collocated nodes across interior faces
   double collocation_error() const;

   /// Face coupling of one local face: own face nodes, the collocated
   /// nodes of the neighbour (or -1 with a boundary tag), weights and
   /// outward unit normal
   struct FaceCoupling
   {
      int neighbor = -1;
      int tag = -1;
      std::vector<int> nodes;
      std::vector<int> neighbor_nodes;
      Vector weights;
      Point normal;
   };
   const std::vector<FaceCoupling> &couplings(int k) const
   {
      return couplings_[k];
   }

private:
   template <typename T, int dim>
   friend struct ResidualKernel;

   Vector compute_nodal_w(const Vector &w) const;
   std::vector<double> compute_nodal_u(const Vector &nodal_w) const;

   std::shared_ptr<const DgdSpace> space_;
   FluxMode mode_;
   GhostState ghost_;
   int dim_;
   std::vector<int> offset_;
   std::vector<std::vector<FaceCoupling>> couplings_;
   /// ghost states per element/face/face-node (empty for interior faces)
   std::vector<std::vector<std::vector<Vector>>> ghost_states_;
};

/// Number of OpenMP threads from the DGD_NUM_THREADS environment variable
/// (ignored when unset or invalid); returns the count in effect
int configure_threads();

}  // namespace dgd

#endif
