#include "dgd/stencil.hpp"

#include <algorithm>
#include <map>

namespace dgd
{
int poly_dim(int p, int d)
{
   // binomial(p + d, d) for d in {1, 2}
   return d == 1 ? p + 1 : (p + 1) * (p + 2) / 2;
}

Stencil build_stencil(const Mesh &mesh, int k, int p)
{
   if (k < 0 || k >= mesh.num_elements())
   {
      throw InvalidArgument("build_stencil: invalid element id");
   }
   if (p < 0)
   {
      throw InvalidArgument("build_stencil: negative degree");
   }
   const int needed = poly_dim(p, mesh.dim());
   Stencil st;
   st.owner = k;
   std::map<int, Point> offset;  // member -> translation of its geometry
   offset[k] = Point::Zero();
   st.members.push_back(k);
   std::vector<int> frontier{k};
   while (st.size() < needed)
   {
      std::map<int, Point> next;  // ordered by element id
      for (int e : frontier)
      {
         for (int f = 0; f < mesh.faces_per_element(); ++f)
         {
            const FaceLink &l = mesh.link(e, f);
            if (!l.is_interior() || offset.count(l.neighbor) ||
                next.count(l.neighbor))
            {
               continue;
            }
            next[l.neighbor] = offset[e] + l.shift;
         }
      }
      if (next.empty())
      {
         throw InvalidArgument("build_stencil: element " + std::to_string(k) +
                               " cannot reach enough elements for degree " +
                               std::to_string(p));
      }
      frontier.clear();
      for (const auto &[e, shift] : next)
      {
         offset[e] = shift;
         st.members.push_back(e);
         frontier.push_back(e);
      }
   }
   for (int e : st.members)
   {
      st.member_centroids.push_back(mesh.centroids()[e] + offset[e]);
   }
   return st;
}

}  // namespace dgd
