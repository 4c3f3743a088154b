#include "dgd/io.hpp"

#include <cstdio>
#include <ostream>

namespace dgd
{
std::string format_double(double x)
{
   char buf[40];
   std::snprintf(buf, sizeof(buf), "%.17g", x);
   return buf;
}

CsvWriter::CsvWriter(std::ostream &os, const std::vector<std::string> &header)
 : os_(os), columns_(header.size())
{
   for (std::size_t i = 0; i < header.size(); ++i)
   {
      os_ << (i ? "," : "") << header[i];
   }
   os_ << "\n";
}

void CsvWriter::row(const std::vector<CsvCell> &cells)
{
   if (cells.size() != columns_)
   {
      throw InvalidArgument("CSV row has the wrong number of columns");
   }
   for (std::size_t i = 0; i < cells.size(); ++i)
   {
      if (i)
      {
         os_ << ",";
      }
      if (const auto *n = std::get_if<long long>(&cells[i]))
      {
         os_ << *n;
      }
      else if (const auto *x = std::get_if<double>(&cells[i]))
      {
         os_ << format_double(*x);
      }
      else
      {
         os_ << std::get<std::string>(cells[i]);
      }
   }
   os_ << "\n";
}

void write_coo(std::ostream &os, const SparseMatrix &A)
{
   os << A.rows() << " " << A.cols() << " " << A.nonZeros() << "\n";
   for (int c = 0; c < A.outerSize(); ++c)
   {
      for (SparseMatrix::InnerIterator it(A, c); it; ++it)
      {
         os << it.row() << " " << it.col() << " " << format_double(it.value())
            << "\n";
      }
   }
}

}  // namespace dgd
