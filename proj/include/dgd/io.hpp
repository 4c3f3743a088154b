/// Text output helpers: CSV tables and coordinate-format sparse matrices

#ifndef DGD_IO_HPP
#define DGD_IO_HPP

#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include "dgd/common.hpp"

namespace dgd
{
/// A CSV cell: integers are written verbatim, reals with 17 significant
/// digits, strings unquoted
using CsvCell = std::variant<long long, double, std::string>;

/// Streaming CSV writer with a fixed header
class CsvWriter
{
public:
   CsvWriter(std::ostream &os, const std::vector<std::string> &header);
   void row(const std::vector<CsvCell> &cells);

private:
   std::ostream &os_;
   std::size_t columns_;
};

/// Format a double with 17 significant digits
std::string format_double(double x);

/// "row col value" lines (0-based) preceded by a "rows cols nnz" line
void write_coo(std::ostream &os, const SparseMatrix &A);

}  // namespace dgd

#endif
