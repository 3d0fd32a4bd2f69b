#ifndef CORRMETRIC_TOOLS_CSV_HPP
#define CORRMETRIC_TOOLS_CSV_HPP

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "corrmetric/distance.hpp"
#include "corrmetric/errors.hpp"
#include "corrmetric/types.hpp"

namespace corrmetric::cli {

/// Parse failure carrying the 1-based file line and column of the offending
/// cell. Line numbers count physical lines, including any header line.
class ParseError : public Error {
  public:
    ParseError(std::size_t line, std::size_t column, const std::string& message)
        : Error("parse error at line " + std::to_string(line) + ", column " +
                std::to_string(column) + ": " + message),
          line_(line),
          column_(column) {}

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

  private:
    std::size_t line_;
    std::size_t column_;
};

struct Dataset {
    std::vector<Sample> samples;
    std::size_t dimension = 0;  // entries per sample, id column excluded
};

/// Reads a rectangular CSV of finite decimal numbers. The dialect is fixed:
/// comma separator, '.' decimal point, no quoting. Cells may carry
/// surrounding spaces or tabs and lines may end in CRLF. `header` skips the
/// first line; `id_col` takes the first field of each data row as the sample
/// id, otherwise ids are the 0-based data row index. Blank lines are allowed
/// only at the end of the file.
Dataset read_csv(const std::string& path, bool header, bool id_col);

/// Formats one matrix entry with 12 significant digits.
std::string format_distance(double d);

/// Writes the matrix one row per line, entries comma separated, formatted by
/// format_distance. No header row and no id column; row and column order is
/// the sample order of the input.
void write_matrix_csv(std::ostream& out, const DistanceMatrix& m);

}  // namespace corrmetric::cli

#endif  // CORRMETRIC_TOOLS_CSV_HPP
