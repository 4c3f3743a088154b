/// Element patches (stencils) for DGD basis construction

#ifndef DGD_STENCIL_HPP
#define DGD_STENCIL_HPP

#include <vector>

#include "dgd/mesh.hpp"

namespace dgd
{
/// Dimension of the space of total-degree-p polynomials in d variables
int poly_dim(int p, int d);

/// The ordered patch of elements whose DGD basis functions are nonzero on
/// the owner element.  Members appear in breadth-first generation order with
/// ties inside a generation broken by ascending element id; the owner is
/// always first.  Member centroids are translated across periodic
/// boundaries so that the patch geometry is contiguous around the owner.
struct Stencil
{
   int owner = -1;
   std::vector<int> members;
   std::vector<Point> member_centroids;
   int size() const { return static_cast<int>(members.size()); }
};

/// Grow {k} by face adjacency until it holds at least poly_dim(p, d)
/// elements.  Throws InvalidArgument if the reachable part of the mesh is
/// too small.
Stencil build_stencil(const Mesh &mesh, int k, int p);

}  // namespace dgd

#endif
