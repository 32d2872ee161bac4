#include "troprank/matrix_io.hpp"

#include <cctype>
#include <fstream>
#include <sstream>
#include <vector>

namespace troprank {

ParseError::ParseError(const std::string& what, std::size_t line, std::size_t column)
    : std::runtime_error("line " + std::to_string(line) +
                         (column ? ", column " + std::to_string(column) : std::string()) + ": " +
                         what),
      line_(line),
      column_(column) {}

namespace {

struct Token {
  std::string text;
  std::size_t column;
};

std::vector<Token> tokenize(const std::string& line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    if (line[i] == '#') break;
    if (std::isspace(static_cast<unsigned char>(line[i]))) {
      ++i;
      continue;
    }
    std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i])) && line[i] != '#') ++i;
    out.push_back({line.substr(start, i - start), start + 1});
  }
  return out;
}

bool next_content_line(std::istream& in, std::size_t& lineno, std::vector<Token>& tokens) {
  std::string line;
  while (std::getline(in, line)) {
    ++lineno;
    tokens = tokenize(line);
    if (!tokens.empty()) return true;
  }
  return false;
}

std::size_t parse_dim(const Token& t, std::size_t lineno) {
  auto r = Rational::parse(t.text);
  if (!r || !r->is_integer() || r->num() <= 0)
    throw ParseError("expected a positive dimension, got '" + t.text + "'", lineno, t.column);
  return static_cast<std::size_t>(r->num());
}

}  // namespace

TropMatrix read_matrix(std::istream& in) {
  std::size_t lineno = 0;
  std::vector<Token> tokens;
  if (!next_content_line(in, lineno, tokens)) throw ParseError("empty input", lineno + 1, 0);
  if (tokens.size() != 2) throw ParseError("header must be 'm n'", lineno, 0);
  const std::size_t m = parse_dim(tokens[0], lineno);
  const std::size_t n = parse_dim(tokens[1], lineno);
  TropMatrix a(m, n);
  for (std::size_t i = 0; i < m; ++i) {
    if (!next_content_line(in, lineno, tokens))
      throw ParseError("expected " + std::to_string(m) + " rows, got " + std::to_string(i), lineno + 1, 0);
    if (tokens.size() != n)
      throw ParseError("expected " + std::to_string(n) + " entries, got " + std::to_string(tokens.size()),
                       lineno, 0);
    for (std::size_t j = 0; j < n; ++j) {
      const Token& t = tokens[j];
      if (t.text == "inf" || t.text == "+inf") {
        a(i, j) = kInf;
        continue;
      }
      std::optional<Rational> r;
      try {
        r = Rational::parse(t.text);
      } catch (const std::overflow_error&) {
      }
      if (!r) throw ParseError("bad entry '" + t.text + "'", lineno, t.column);
      a(i, j) = *r;
    }
  }
  if (next_content_line(in, lineno, tokens)) throw ParseError("trailing content", lineno, tokens[0].column);
  return a;
}

TropMatrix read_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return read_matrix(in);
}

TropMatrix parse_matrix(const std::string& text) {
  std::istringstream in(text);
  return read_matrix(in);
}

void write_matrix(std::ostream& out, const TropMatrix& a) {
  out << a.rows() << ' ' << a.cols() << '\n';
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (j) out << ' ';
      out << a(i, j).to_string();
    }
    out << '\n';
  }
}

void write_matrix_file(const std::string& path, const TropMatrix& a) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  write_matrix(out, a);
}

std::string format_matrix(const TropMatrix& a) {
  std::ostringstream out;
  write_matrix(out, a);
  return out.str();
}

}  // namespace troprank
