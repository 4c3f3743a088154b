#include "dgd/mesh.hpp"

#include <algorithm>
#include <map>
#include <ostream>

namespace dgd
{
double Mesh::element_diameter(int k) const
{
   if (dim_ == 1)
   {
      return measures_[k];
   }
   double diam = 0.0;
   for (int f = 0; f < 3; ++f)
   {
      diam = std::max(
          diam, (element_vertex(k, (f + 1) % 3) - element_vertex(k, f)).norm());
   }
   return diam;
}

std::optional<std::pair<int, int>> Mesh::periodic_partner(int k, int f) const
{
   const FaceLink &l = links_[k][f];
   if (!l.is_interior() || l.shift.norm() == 0.0)
   {
      return std::nullopt;
   }
   return std::make_pair(l.neighbor, l.neighbor_face);
}

void Mesh::write(std::ostream &os) const
{
   os.precision(17);
   os << "# dim " << dim_ << "\n";
   os << "vertices " << vertices_.size() << "\n";
   for (const auto &v : vertices_)
   {
      os << v.x();
      if (dim_ == 2)
      {
         os << " " << v.y();
      }
      os << "\n";
   }
   os << "elements " << elements_.size() << "\n";
   for (const auto &e : elements_)
   {
      for (int v = 0; v <= dim_; ++v)
      {
         os << e[v] << (v == dim_ ? "\n" : " ");
      }
   }
}

void Mesh::finalize()
{
   const int K = num_elements();
   centroids_.resize(K);
   measures_.resize(K);
   for (int k = 0; k < K; ++k)
   {
      Point c = Point::Zero();
      for (int v = 0; v <= dim_; ++v)
      {
         c += element_vertex(k, v);
      }
      centroids_[k] = c / (dim_ + 1);
      if (dim_ == 1)
      {
         measures_[k] = element_vertex(k, 1).x() - element_vertex(k, 0).x();
      }
      else
      {
         Point a = element_vertex(k, 1) - element_vertex(k, 0);
         Point b = element_vertex(k, 2) - element_vertex(k, 0);
         measures_[k] = 0.5 * (a.x() * b.y() - a.y() * b.x());
      }
   }
   links_.assign(K, {});
   for (int i = 0; i < static_cast<int>(interior_faces_.size()); ++i)
   {
      const InteriorFace &face = interior_faces_[i];
      FaceLink &l = links_[face.left][face.left_face];
      l.neighbor = face.right;
      l.neighbor_face = face.right_face;
      l.face = i;
      l.shift = face.shift;
      FaceLink &r = links_[face.right][face.right_face];
      r.neighbor = face.left;
      r.neighbor_face = face.left_face;
      r.face = i;
      r.shift = -face.shift;
   }
   for (int i = 0; i < static_cast<int>(boundary_faces_.size()); ++i)
   {
      const BoundaryFace &face = boundary_faces_[i];
      links_[face.element][face.local_face].face = i;
   }
}

Mesh build_interval_mesh(int num_elements, double a, double b, bool periodic)
{
   if (num_elements < 1)
   {
      throw InvalidArgument("build_interval_mesh: need at least one element");
   }
   if (!(a < b))
   {
      throw InvalidArgument("build_interval_mesh: degenerate domain");
   }
   Mesh mesh;
   mesh.dim_ = 1;
   mesh.periodic_ = periodic;
   mesh.lower_ = Point(a, 0.0);
   mesh.upper_ = Point(b, 0.0);
   const double h = (b - a) / num_elements;
   for (int i = 0; i <= num_elements; ++i)
   {
      double x = (i == num_elements) ? b : a + i * h;
      mesh.vertices_.emplace_back(x, 0.0);
   }
   for (int k = 0; k < num_elements; ++k)
   {
      mesh.elements_.push_back({k, k + 1, -1});
   }
   for (int k = 0; k + 1 < num_elements; ++k)
   {
      mesh.interior_faces_.push_back(
          {k, k + 1, 1, 0, Point(1.0, 0.0), 1.0, Point::Zero()});
   }
   if (periodic)
   {
      mesh.interior_faces_.push_back({num_elements - 1,
                                      0,
                                      1,
                                      0,
                                      Point(1.0, 0.0),
                                      1.0,
                                      Point(b - a, 0.0)});
   }
   else
   {
      mesh.boundary_faces_.push_back({0, 0, Point(-1.0, 0.0), 1.0, 0});
      mesh.boundary_faces_.push_back(
          {num_elements - 1, 1, Point(1.0, 0.0), 1.0, 1});
   }
   mesh.finalize();
   return mesh;
}

namespace
{
/// integer key of an edge midpoint on the structured grid (twice the grid
/// index of the midpoint)
using EdgeKey = std::pair<int, int>;

}  // namespace

Mesh build_structured_tri_mesh(int N,
                               const Point &lower,
                               const Point &upper,
                               bool periodic)
{
   if (N < 1)
   {
      throw InvalidArgument("build_structured_tri_mesh: need N >= 1");
   }
   if (!(lower.x() < upper.x() && lower.y() < upper.y()))
   {
      throw InvalidArgument("build_structured_tri_mesh: degenerate domain");
   }
   Mesh mesh;
   mesh.dim_ = 2;
   mesh.periodic_ = periodic;
   mesh.lower_ = lower;
   mesh.upper_ = upper;
   const Point len = upper - lower;
   auto vid = [N](int i, int j) { return j * (N + 1) + i; };
   for (int j = 0; j <= N; ++j)
   {
      for (int i = 0; i <= N; ++i)
      {
         double x = (i == N) ? upper.x() : lower.x() + len.x() * i / N;
         double y = (j == N) ? upper.y() : lower.y() + len.y() * j / N;
         mesh.vertices_.emplace_back(x, y);
      }
   }
   std::vector<std::array<int, 2>> grid_index;  // per vertex
   for (int j = 0; j <= N; ++j)
   {
      for (int i = 0; i <= N; ++i)
      {
         grid_index.push_back({i, j});
      }
   }
   for (int j = 0; j < N; ++j)
   {
      for (int i = 0; i < N; ++i)
      {
         int v00 = vid(i, j), v10 = vid(i + 1, j);
         int v11 = vid(i + 1, j + 1), v01 = vid(i, j + 1);
         mesh.elements_.push_back({v00, v10, v11});
         mesh.elements_.push_back({v00, v11, v01});
      }
   }

   // match edges through their midpoint keys
   struct Side
   {
      int element;
      int face;
   };
   std::map<EdgeKey, std::vector<Side>> edges;
   const int K = static_cast<int>(mesh.elements_.size());
   auto key_of = [&](int k, int f) {
      const auto &a = grid_index[mesh.elements_[k][f]];
      const auto &b = grid_index[mesh.elements_[k][(f + 1) % 3]];
      return EdgeKey{a[0] + b[0], a[1] + b[1]};
   };
   for (int k = 0; k < K; ++k)
   {
      for (int f = 0; f < 3; ++f)
      {
         edges[key_of(k, f)].push_back({k, f});
      }
   }
   auto geometry = [&](int k, int f, Point &normal, double &measure) {
      Point a = mesh.element_vertex(k, f);
      Point b = mesh.element_vertex(k, (f + 1) % 3);
      Point d = b - a;
      measure = d.norm();
      normal = Point(d.y(), -d.x()) / measure;
   };

   std::vector<std::pair<EdgeKey, Side>> unmatched;
   for (const auto &[key, sides] : edges)
   {
      Point n;
      double m;
      geometry(sides[0].element, sides[0].face, n, m);
      if (sides.size() == 2)
      {
         mesh.interior_faces_.push_back({sides[0].element,
                                         sides[1].element,
                                         sides[0].face,
                                         sides[1].face,
                                         n,
                                         m,
                                         Point::Zero()});
      }
      else
      {
         unmatched.emplace_back(key, sides[0]);
      }
   }
   auto tag_of = [N](const EdgeKey &key) {
      if (key.second == 0) return 0;      // bottom
      if (key.first == 2 * N) return 1;   // right
      if (key.second == 2 * N) return 2;  // top
      return 3;                           // left
   };
   if (periodic)
   {
      // pair bottom with top and left with right; the element on the
      // bottom/left side becomes the "left" element of the face
      std::map<EdgeKey, Side> by_key;
      for (const auto &[key, side] : unmatched)
      {
         by_key[key] = side;
      }
      for (const auto &[key, side] : unmatched)
      {
         int tag = tag_of(key);
         if (tag != 0 && tag != 3)
         {
            continue;
         }
         EdgeKey partner = (tag == 0) ? EdgeKey{key.first, 2 * N}
                                      : EdgeKey{2 * N, key.second};
         Point shift = (tag == 0) ? Point(0.0, -len.y()) : Point(-len.x(), 0.0);
         const Side &other = by_key.at(partner);
         Point n;
         double m;
         geometry(side.element, side.face, n, m);
         mesh.interior_faces_.push_back(
             {side.element, other.element, side.face, other.face, n, m, shift});
      }
   }
   else
   {
      for (const auto &[key, side] : unmatched)
      {
         Point n;
         double m;
         geometry(side.element, side.face, n, m);
         mesh.boundary_faces_.push_back(
             {side.element, side.face, n, m, tag_of(key)});
      }
   }
   mesh.finalize();
   return mesh;
}

std::vector<int> face_neighbors(const Mesh &mesh, int k)
{
   std::vector<int> nbrs;
   for (int f = 0; f < mesh.faces_per_element(); ++f)
   {
      const FaceLink &l = mesh.link(k, f);
      if (l.is_interior() && l.neighbor != k &&
          std::find(nbrs.begin(), nbrs.end(), l.neighbor) == nbrs.end())
      {
         nbrs.push_back(l.neighbor);
      }
   }
   return nbrs;
}

}  // namespace dgd
