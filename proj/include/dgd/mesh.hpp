/// Interval and triangle meshes with face connectivity and periodicity

#ifndef DGD_MESH_HPP
#define DGD_MESH_HPP

#include <array>
#include <iosfwd>
#include <optional>
#include <vector>

#include "dgd/common.hpp"

namespace dgd
{
/// A face shared by two elements.  `shift` translates the right element so
/// that it sits next to the left element (nonzero only across periodic
/// boundaries); `normal` is the unit normal pointing from left to right.
struct InteriorFace
{
   int left;
   int right;
   int left_face;
   int right_face;
   Point normal;
   double measure;
   Point shift;
};

/// A face on the outer boundary of the domain
struct BoundaryFace
{
   int element;
   int local_face;
   Point normal;
   double measure;
   int tag;
};

/// Per-element view of one local face
struct FaceLink
{
   /// neighbouring element, or -1 on a boundary face
   int neighbor = -1;
   int neighbor_face = -1;
   /// index into interior_faces or boundary_faces
   int face = -1;
   /// translation to apply to the neighbour's coordinates
   Point shift = Point::Zero();
   bool is_interior() const { return neighbor >= 0; }
};

/// Conforming simplex mesh in one or two dimensions.
///
/// In 1D, local face 0 is the left vertex and local face 1 the right vertex.
/// In 2D, local face f is the edge from vertex f to vertex (f+1) mod 3, and
/// vertices are ordered counter-clockwise.  Elements never straddle a
/// periodic boundary: their vertex coordinates are contiguous.
class Mesh
{
public:
   int dim() const { return dim_; }
   int num_elements() const { return static_cast<int>(elements_.size()); }
   int vertices_per_element() const { return dim_ + 1; }

   const std::vector<Point> &vertices() const { return vertices_; }
   const std::vector<std::array<int, 3>> &elements() const
   {
      return elements_;
   }
   const std::vector<InteriorFace> &interior_faces() const
   {
      return interior_faces_;
   }
   const std::vector<BoundaryFace> &boundary_faces() const
   {
      return boundary_faces_;
   }
   const std::vector<Point> &centroids() const { return centroids_; }
   const std::vector<double> &element_measures() const { return measures_; }

   /// Link for local face `f` of element `k`
   const FaceLink &link(int k, int f) const { return links_[k][f]; }
   int faces_per_element() const { return dim_ == 1 ? 2 : 3; }

   /// Coordinates of vertex `v` (0..dim) of element `k`
   Point element_vertex(int k, int v) const
   {
      return vertices_[elements_[k][v]];
   }

   /// Element diameter (interval length / longest edge)
   double element_diameter(int k) const;

   /// Lower and upper corners of the bounding box of the domain
   const Point &domain_lower() const { return lower_; }
   const Point &domain_upper() const { return upper_; }
   bool periodic() const { return periodic_; }

   /// Periodic partner (element, local face) of a face lying on a periodic
   /// boundary; empty for ordinary interior and boundary faces
   std::optional<std::pair<int, int>> periodic_partner(int k, int f) const;

   /// Plain-text dump of vertices and element connectivity
   void write(std::ostream &os) const;

private:
   friend Mesh build_interval_mesh(int, double, double, bool);
   friend Mesh build_structured_tri_mesh(int, const Point &, const Point &,
                                         bool);
   void finalize();

   int dim_ = 1;
   bool periodic_ = false;
   Point lower_ = Point::Zero();
   Point upper_ = Point::Zero();
   std::vector<Point> vertices_;
   std::vector<std::array<int, 3>> elements_;
   std::vector<InteriorFace> interior_faces_;
   std::vector<BoundaryFace> boundary_faces_;
   std::vector<Point> centroids_;
   std::vector<double> measures_;
   std::vector<std::array<FaceLink, 3>> links_;
};

/// Uniform mesh of `num_elements` intervals on [a, b]
Mesh build_interval_mesh(int num_elements,
                         double a,
                         double b,
                         bool periodic);

/// Triangulation of a rectangle by splitting each of the N x N cells along
/// its lower-left to upper-right diagonal (2 N^2 triangles)
Mesh build_structured_tri_mesh(int cells_per_side,
                               const Point &lower,
                               const Point &upper,
                               bool periodic);

/// Same as above on the unit square
inline Mesh build_structured_tri_mesh(int cells_per_side, bool periodic)
{
   return build_structured_tri_mesh(
       cells_per_side, Point(0.0, 0.0), Point(1.0, 1.0), periodic);
}

/// Face-adjacent elements of `k` in local-face order, without duplicates and
/// never including `k` itself
std::vector<int> face_neighbors(const Mesh &mesh, int k);

}  // namespace dgd

#endif
