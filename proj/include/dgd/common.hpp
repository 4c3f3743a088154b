/// Shared linear-algebra aliases and error types for the dgd library

#ifndef DGD_COMMON_HPP
#define DGD_COMMON_HPP

#include <stdexcept>
#include <string>

#include <Eigen/Dense>
#include <Eigen/Sparse>

namespace dgd
{
using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using SparseMatrix = Eigen::SparseMatrix<double>;
using Triplet = Eigen::Triplet<double>;

/// Physical point; 1D meshes only use the first coordinate
using Point = Eigen::Vector2d;

/// Base class for all errors raised by the library
class Error : public std::runtime_error
{
public:
   explicit Error(const std::string &msg) : std::runtime_error(msg) { }
};

/// Invalid user input (mesh sizes, degrees, configuration values)
class InvalidArgument : public Error
{
public:
   explicit InvalidArgument(const std::string &msg) : Error(msg) { }
};

/// Least-squares system with (numerically) dependent columns
class RankDeficientError : public Error
{
public:
   RankDeficientError(int element, const std::string &msg)
    : Error("element " + std::to_string(element) + ": " + msg),
      element_(element)
   { }
   int element() const { return element_; }

private:
   int element_;
};

/// An iterative solver stopped before reaching its tolerance
class ConvergenceError : public Error
{
public:
   explicit ConvergenceError(const std::string &msg) : Error(msg) { }
};

/// A nodal state with non-positive density or pressure
class InadmissibleStateError : public Error
{
public:
   InadmissibleStateError(int element, int node, const std::string &msg)
    : Error("element " + std::to_string(element) + ", node " +
            std::to_string(node) + ": " + msg),
      element_(element),
      node_(node)
   { }
   int element() const { return element_; }
   int node() const { return node_; }

private:
   int element_;
   int node_;
};

}  // namespace dgd

#endif
