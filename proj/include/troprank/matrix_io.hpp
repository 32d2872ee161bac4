#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>

#include "troprank/trop_matrix.hpp"

namespace troprank {

/// Malformed input. line/column are 1-based; column 0 means "whole line".
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column);
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// Format: "m n" on the first line, then m lines of n tokens
/// (integer, p/q, or inf). Blank lines and '#' comments are skipped.
TropMatrix read_matrix(std::istream& in);
TropMatrix read_matrix_file(const std::string& path);
TropMatrix parse_matrix(const std::string& text);

void write_matrix(std::ostream& out, const TropMatrix& a);
void write_matrix_file(const std::string& path, const TropMatrix& a);
std::string format_matrix(const TropMatrix& a);

}  // namespace troprank
