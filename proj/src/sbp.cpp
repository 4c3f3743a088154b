#include "dgd/sbp.hpp"

#include <cmath>
#include <iomanip>
#include <ostream>

#include "dgd/basis.hpp"
#include "dgd/quadrature.hpp"

namespace dgd
{
namespace
{
/// Lagrange differentiation matrix on distinct 1D nodes
Matrix lagrange_derivative(const std::vector<double> &x)
{
   const int n = static_cast<int>(x.size());
   std::vector<double> bw(n, 1.0);
   for (int i = 0; i < n; ++i)
   {
      for (int j = 0; j < n; ++j)
      {
         if (j != i)
         {
            bw[i] /= (x[i] - x[j]);
         }
      }
   }
   Matrix D = Matrix::Zero(n, n);
   for (int i = 0; i < n; ++i)
   {
      for (int j = 0; j < n; ++j)
      {
         if (j != i)
         {
            D(i, j) = (bw[j] / bw[i]) / (x[i] - x[j]);
            D(i, i) -= D(i, j);
         }
      }
   }
   return D;
}

Matrix face_matrix(const SbpOperator &op, int d)
{
   Matrix E = Matrix::Zero(op.size(), op.size());
   for (const auto &face : op.faces)
   {
      for (std::size_t a = 0; a < face.nodes.size(); ++a)
      {
         E(face.nodes[a], face.nodes[a]) += face.weights(a) * face.normal(d);
      }
   }
   return E;
}

/// Minimum-norm skew-symmetric S with S V = rhs
Matrix solve_skew(const Matrix &V, const Matrix &rhs)
{
   const int n = static_cast<int>(V.rows());
   const int m = static_cast<int>(V.cols());
   const int nu = n * (n - 1) / 2;
   Matrix A = Matrix::Zero(n * m, nu);
   int u = 0;
   for (int a = 0; a < n; ++a)
   {
      for (int b = a + 1; b < n; ++b, ++u)
      {
         for (int j = 0; j < m; ++j)
         {
            A(a * m + j, u) += V(b, j);
            A(b * m + j, u) -= V(a, j);
         }
      }
   }
   Vector r(n * m);
   for (int q = 0; q < n; ++q)
   {
      for (int j = 0; j < m; ++j)
      {
         r(q * m + j) = rhs(q, j);
      }
   }
   Eigen::CompleteOrthogonalDecomposition<Matrix> cod(A);
   cod.setThreshold(1e-13);
   Vector s = cod.solve(r);
   if ((A * s - r).lpNorm<Eigen::Infinity>() > 1e-12)
   {
      throw Error("SBP accuracy conditions are inconsistent");
   }
   Matrix S = Matrix::Zero(n, n);
   u = 0;
   for (int a = 0; a < n; ++a)
   {
      for (int b = a + 1; b < n; ++b, ++u)
      {
         S(a, b) = s(u);
         S(b, a) = -s(u);
      }
   }
   return S;
}

double factorial(int n)
{
   double f = 1.0;
   for (int i = 2; i <= n; ++i)
   {
      f *= i;
   }
   return f;
}

/// Integral of x^a y^b over the reference triangle
double tri_moment(int a, int b)
{
   return factorial(a) * factorial(b) / factorial(a + b + 2);
}

const std::array<Point, 3> kTriVertices = {Point(0.0, 0.0),
                                           Point(1.0, 0.0),
                                           Point(0.0, 1.0)};

struct TriLayout
{
   std::vector<Point> nodes;
   /// 0 vertex, 1 edge, 2 interior
   std::vector<int> group;
   std::array<std::vector<int>, 3> face_nodes;
};

TriLayout tri_layout(const std::vector<double> &edge_params,
                     const std::vector<Point> &interior)
{
   TriLayout lay;
   for (const auto &v : kTriVertices)
   {
      lay.nodes.push_back(v);
      lay.group.push_back(0);
   }
   for (int f = 0; f < 3; ++f)
   {
      const Point &a = kTriVertices[f];
      const Point &b = kTriVertices[(f + 1) % 3];
      lay.face_nodes[f].push_back(f);
      for (double t : edge_params)
      {
         lay.face_nodes[f].push_back(static_cast<int>(lay.nodes.size()));
         lay.nodes.push_back(a + t * (b - a));
         lay.group.push_back(1);
      }
      lay.face_nodes[f].push_back((f + 1) % 3);
   }
   for (const auto &x : interior)
   {
      lay.nodes.push_back(x);
      lay.group.push_back(2);
   }
   return lay;
}

std::vector<Point> s21_orbit(double alpha)
{
   const double beta = 1.0 - 2.0 * alpha;
   return {Point(alpha, alpha), Point(beta, alpha), Point(alpha, beta)};
}

/// Moment residuals sum_q w_q x_q^a y_q^b - int x^a y^b for a+b <= degree
Vector moment_residual(const TriLayout &lay,
                       const std::vector<double> &group_weight,
                       int degree)
{
   std::vector<double> r;
   for (int total = 0; total <= degree; ++total)
   {
      for (int a = total; a >= 0; --a)
      {
         const int b = total - a;
         double sum = 0.0;
         for (std::size_t q = 0; q < lay.nodes.size(); ++q)
         {
            sum += group_weight[lay.group[q]] *
                   std::pow(lay.nodes[q](0), a) * std::pow(lay.nodes[q](1), b);
         }
         r.push_back(sum - tri_moment(a, b));
      }
   }
   return Eigen::Map<Vector>(r.data(), static_cast<Eigen::Index>(r.size()));
}

SbpOperator finish_operator(int p, int dim, std::vector<Point> nodes,
                            Vector H, std::vector<SbpFace> faces,
                            std::vector<Point> vertices)
{
   SbpOperator op;
   op.degree = p;
   op.dim = dim;
   op.nodes = std::move(nodes);
   op.H = std::move(H);
   op.faces = std::move(faces);
   op.vertices = std::move(vertices);
   Point c = Point::Zero();
   for (const auto &v : op.vertices)
   {
      c += v;
   }
   c /= static_cast<double>(op.vertices.size());
   PolyBasis basis(p, dim, c, 1.0);
   Matrix V = basis.vandermonde(op.nodes);
   for (int d = 0; d < 2; ++d)
   {
      if (d >= dim)
      {
         op.Q[d] = Matrix::Zero(op.size(), op.size());
         op.E[d] = Matrix::Zero(op.size(), op.size());
         continue;
      }
      op.E[d] = face_matrix(op, d);
      Matrix rhs = op.H.asDiagonal() * basis.deriv_vandermonde(op.nodes, d) -
                   0.5 * op.E[d] * V;
      op.Q[d] = solve_skew(V, rhs) + 0.5 * op.E[d];
   }
   return op;
}

}  // namespace

SbpOperator build_lgl_sbp_1d(int p, int num_nodes)
{
   if (p < 0 || num_nodes < p + 1 || num_nodes < 2)
   {
      throw InvalidArgument("LGL operator needs at least max(p+1, 2) nodes");
   }
   QuadratureRule rule = gauss_lobatto(num_nodes);
   std::vector<double> x(num_nodes);
   SbpOperator op;
   op.degree = p;
   op.dim = 1;
   op.H.resize(num_nodes);
   for (int i = 0; i < num_nodes; ++i)
   {
      x[i] = rule.points[i](0);
      op.nodes.push_back(Point(x[i], 0.0));
      op.H(i) = rule.weights[i];
   }
   op.vertices = {Point(-1.0, 0.0), Point(1.0, 0.0)};
   SbpFace left{{0}, Vector::Ones(1), Point(-1.0, 0.0)};
   SbpFace right{{num_nodes - 1}, Vector::Ones(1), Point(1.0, 0.0)};
   op.faces = {left, right};
   op.E[0] = face_matrix(op, 0);
   Matrix Q = op.H.asDiagonal() * lagrange_derivative(x);
   Matrix S = 0.5 * (Q - Q.transpose());
   op.Q[0] = S + 0.5 * op.E[0];
   op.Q[1] = Matrix::Zero(num_nodes, num_nodes);
   op.E[1] = Matrix::Zero(num_nodes, num_nodes);
   return op;
}

SbpOperator build_lgl_sbp_1d(int p)
{
   if (p < 1 || p > 4)
   {
      throw InvalidArgument("1D LGL operators are provided for p = 1..4");
   }
   return build_lgl_sbp_1d(p, p + 1);
}

SbpOperator build_element_sbp_1d(int p)
{
   if (p < 0 || p > 4)
   {
      throw InvalidArgument("1D element operators are provided for p = 0..4");
   }
   return build_lgl_sbp_1d(p, p + 2);
}

SbpOperator build_tri_sbp(int p)
{
   if (p != 1 && p != 2)
   {
      throw InvalidArgument("triangle SBP operators exist for p = 1, 2");
   }
   TriLayout lay;
   std::vector<double> gw(3, 0.0);
   std::vector<double> face_w;
   if (p == 1)
   {
      lay = tri_layout({0.5}, {Point(1.0 / 3.0, 1.0 / 3.0)});
      Matrix A = Matrix::Zero(10, 3);
      for (int g = 0; g < 3; ++g)
      {
         std::vector<double> unit(3, 0.0);
         unit[g] = 1.0;
         A.col(g) = moment_residual(lay, unit, 3) -
                    moment_residual(lay, {0.0, 0.0, 0.0}, 3);
      }
      Vector rhs = -moment_residual(lay, {0.0, 0.0, 0.0}, 3);
      Vector w = A.colPivHouseholderQr().solve(rhs);
      gw = {w(0), w(1), w(2)};
      if ((A * w - rhs).lpNorm<Eigen::Infinity>() > 1e-14)
      {
         throw Error("p = 1 triangle rule is not degree-3 exact");
      }
      face_w = {1.0 / 3.0, 4.0 / 3.0, 1.0 / 3.0};
   }
   else
   {
      const double t = 0.5 / std::sqrt(5.0);
      const std::vector<double> edge = {0.5 - t, 0.5 + t};
      Vector z(4);
      z << 0.006, 0.027, 0.107, 0.213;
      auto residual = [&](const Vector &v)
      {
         TriLayout l = tri_layout(edge, s21_orbit(v(3)));
         return moment_residual(l, {v(0), v(1), v(2)}, 4);
      };
      for (int it = 0; it < 50; ++it)
      {
         Vector r = residual(z);
         if (r.lpNorm<Eigen::Infinity>() < 1e-16)
         {
            break;
         }
         Matrix J(r.size(), 4);
         for (int c = 0; c < 4; ++c)
         {
            Vector zp = z;
            const double h = 1e-7;
            zp(c) += h;
            Vector zm = z;
            zm(c) -= h;
            J.col(c) = (residual(zp) - residual(zm)) / (2.0 * h);
         }
         Vector dz = J.colPivHouseholderQr().solve(-r);
         z += dz;
         if (dz.lpNorm<Eigen::Infinity>() < 1e-16)
         {
            break;
         }
      }
      if (residual(z).lpNorm<Eigen::Infinity>() > 1e-14)
      {
         throw Error("p = 2 triangle rule did not converge");
      }
      lay = tri_layout(edge, s21_orbit(z(3)));
      gw = {z(0), z(1), z(2)};
      face_w = {1.0 / 6.0, 5.0 / 6.0, 5.0 / 6.0, 1.0 / 6.0};
   }
   Vector H(lay.nodes.size());
   for (std::size_t q = 0; q < lay.nodes.size(); ++q)
   {
      H(q) = gw[lay.group[q]];
   }
   if (H.minCoeff() <= 0.0)
   {
      throw Error("triangle norm is not positive");
   }
   std::vector<SbpFace> faces;
   const std::array<Point, 3> normals = {
       Point(0.0, -1.0), Point(1.0, 1.0) / std::sqrt(2.0), Point(-1.0, 0.0)};
   for (int f = 0; f < 3; ++f)
   {
      const double len =
          (kTriVertices[(f + 1) % 3] - kTriVertices[f]).norm();
      SbpFace face;
      face.nodes = lay.face_nodes[f];
      face.weights.resize(face_w.size());
      for (std::size_t a = 0; a < face_w.size(); ++a)
      {
         face.weights(a) = face_w[a] * 0.5 * len;
      }
      face.normal = normals[f];
      faces.push_back(face);
   }
   return finish_operator(p, 2, lay.nodes, H, faces,
                          {kTriVertices.begin(), kTriVertices.end()});
}

SbpOperator build_reference_sbp(int p, int dim)
{
   return dim == 1 ? build_element_sbp_1d(p) : build_tri_sbp(p);
}

SbpOperator map_to_physical(const SbpOperator &ref,
                            const std::vector<Point> &vertices)
{
   SbpOperator op = ref;
   op.vertices = vertices;
   if (ref.dim == 1)
   {
      if (vertices.size() != 2)
      {
         throw InvalidArgument("interval elements need two vertices");
      }
      const double jac = 0.5 * (vertices[1](0) - vertices[0](0));
      if (jac <= 0.0)
      {
         throw InvalidArgument("degenerate or inverted interval");
      }
      for (int i = 0; i < op.size(); ++i)
      {
         op.nodes[i] =
             Point(vertices[0](0) + (ref.nodes[i](0) + 1.0) * jac, 0.0);
      }
      op.H = jac * ref.H;
      return op;
   }
   if (vertices.size() != 3)
   {
      throw InvalidArgument("triangle elements need three vertices");
   }
   Eigen::Matrix2d J;
   J.col(0) = vertices[1] - vertices[0];
   J.col(1) = vertices[2] - vertices[0];
   const double det = J.determinant();
   if (!(det > 0.0))
   {
      throw InvalidArgument("degenerate or clockwise triangle");
   }
   const Eigen::Matrix2d Jinv = J.inverse();
   for (int i = 0; i < op.size(); ++i)
   {
      op.nodes[i] = vertices[0] + J * ref.nodes[i];
   }
   op.H = det * ref.H;
   for (int d = 0; d < 2; ++d)
   {
      op.Q[d] = det * (Jinv(0, d) * ref.Q[0] + Jinv(1, d) * ref.Q[1]);
      op.E[d] = det * (Jinv(0, d) * ref.E[0] + Jinv(1, d) * ref.E[1]);
   }
   for (int f = 0; f < 3; ++f)
   {
      const Point &a = vertices[f];
      const Point &b = vertices[(f + 1) % 3];
      const double len = (b - a).norm();
      const double ref_len =
          (ref.vertices[(f + 1) % 3] - ref.vertices[f]).norm();
      op.faces[f].weights = ref.faces[f].weights * (len / ref_len);
      op.faces[f].normal = Point(b(1) - a(1), a(0) - b(0)) / len;
   }
   return op;
}

double boundary_integral(const std::vector<Point> &vertices,
                         int dim,
                         int dir,
                         const std::function<double(const Point &)> &f)
{
   if (dim == 1)
   {
      return dir == 0 ? f(vertices[1]) - f(vertices[0]) : 0.0;
   }
   double sum = 0.0;
   const int nv = static_cast<int>(vertices.size());
   for (int e = 0; e < nv; ++e)
   {
      const Point &a = vertices[e];
      const Point &b = vertices[(e + 1) % nv];
      const double len = (b - a).norm();
      const Point n(b(1) - a(1), a(0) - b(0));
      QuadratureRule rule = segment_gauss(a, b, 8);
      for (int q = 0; q < rule.size(); ++q)
      {
         sum += rule.weights[q] * f(rule.points[q]) * n(dir) / len;
      }
   }
   return sum;
}

SbpReport verify_sbp(const SbpOperator &op, int p)
{
   SbpReport rep;
   const int dim = op.dim;
   Point c = Point::Zero();
   for (const auto &v : op.vertices)
   {
      c += v;
   }
   c /= static_cast<double>(op.vertices.size());
   double scale = 0.0;
   for (const auto &v : op.vertices)
   {
      scale = std::max(scale, (v - c).norm());
   }
   PolyBasis basis(p, dim, c, scale);
   Matrix V = basis.vandermonde(op.nodes);
   rep.min_norm = op.H.minCoeff();
   for (int d = 0; d < dim; ++d)
   {
      Matrix Vd = basis.deriv_vandermonde(op.nodes, d);
      rep.accuracy = std::max(
          rep.accuracy, (op.D(d) * V - Vd).lpNorm<Eigen::Infinity>() * scale);
      Matrix S = op.S(d);
      rep.skew =
          std::max(rep.skew, (S + S.transpose()).lpNorm<Eigen::Infinity>());
      rep.compatibility = std::max(
          rep.compatibility,
          (op.Q[d] + op.Q[d].transpose() - op.E[d]).lpNorm<Eigen::Infinity>());
      rep.face_split = std::max(
          rep.face_split, (op.E[d] - face_matrix(op, d)).lpNorm<Eigen::Infinity>());
      Matrix VEV = V.transpose() * op.E[d] * V;
      for (int i = 0; i < basis.size(); ++i)
      {
         for (int j = 0; j < basis.size(); ++j)
         {
            const double exact = boundary_integral(
                op.vertices, dim, d, [&](const Point &x)
                { return basis.eval(i, x) * basis.eval(j, x); });
            rep.boundary = std::max(rep.boundary, std::abs(VEV(i, j) - exact));
         }
      }
   }

   // exact integrals on the element by Gauss quadrature
   QuadratureRule rule;
   double measure = 0.0;
   if (dim == 1)
   {
      rule = segment_gauss(op.vertices[0], op.vertices[1], 10);
      measure = op.vertices[1](0) - op.vertices[0](0);
   }
   else
   {
      QuadratureRule ref = triangle_collapsed_gauss(10);
      Eigen::Matrix2d J;
      J.col(0) = op.vertices[1] - op.vertices[0];
      J.col(1) = op.vertices[2] - op.vertices[0];
      const double det = std::abs(J.determinant());
      measure = 0.5 * det;
      for (int q = 0; q < ref.size(); ++q)
      {
         rule.points.push_back(op.vertices[0] + J * ref.points[q]);
         rule.weights.push_back(det * ref.weights[q]);
      }
   }
   const int max_degree = 2 * p + 4;
   PolyBasis high(max_degree, dim, c, scale);
   Matrix Vh = high.vandermonde(op.nodes);
   Matrix Vq = high.vandermonde(rule.points);
   Eigen::Map<const Vector> wq(rule.weights.data(), rule.size());
   Vector err = (Vh.transpose() * op.H - Vq.transpose() * wq).cwiseAbs();
   rep.quadrature_degree = max_degree;
   int j = 0;
   for (int deg = 0; deg <= max_degree; ++deg)
   {
      const int count = dim == 1 ? 1 : deg + 1;
      bool exact = true;
      for (int i = 0; i < count; ++i, ++j)
      {
         exact = exact && err(j) <= 1e-12 * measure;
      }
      if (!exact)
      {
         rep.quadrature_degree = deg - 1;
         break;
      }
   }
   return rep;
}

void write_sbp(std::ostream &os, const SbpOperator &op)
{
   const auto old = os.precision(17);
   os << "sbp degree " << op.degree << " dim " << op.dim << " nodes "
      << op.size() << "\n";
   os << "nodes\n";
   for (const auto &x : op.nodes)
   {
      os << x(0);
      if (op.dim == 2)
      {
         os << " " << x(1);
      }
      os << "\n";
   }
   os << "H\n";
   for (int i = 0; i < op.size(); ++i)
   {
      os << op.H(i) << "\n";
   }
   for (int d = 0; d < op.dim; ++d)
   {
      os << "Q" << d << "\n";
      for (int i = 0; i < op.size(); ++i)
      {
         for (int j = 0; j < op.size(); ++j)
         {
            os << (j ? " " : "") << op.Q[d](i, j);
         }
         os << "\n";
      }
   }
   os << "faces " << op.faces.size() << "\n";
   for (const auto &face : op.faces)
   {
      os << "normal " << face.normal(0);
      if (op.dim == 2)
      {
         os << " " << face.normal(1);
      }
      os << "\n";
      for (std::size_t a = 0; a < face.nodes.size(); ++a)
      {
         os << face.nodes[a] << " " << face.weights(a) << "\n";
      }
   }
   os.precision(old);
}

}  // namespace dgd
