#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "troprank/rational.hpp"

namespace troprank {

/// Element of the extended tropical semiring: an exact rational or +inf.
class TropValue {
 public:
  constexpr TropValue() : inf_(true) {}
  constexpr TropValue(std::int64_t v) : value_(v), inf_(false) {}  // NOLINT
  TropValue(const Rational& v) : value_(v), inf_(false) {}          // NOLINT

  static constexpr TropValue infinity() { return TropValue(); }

  bool is_inf() const { return inf_; }
  bool is_finite() const { return !inf_; }
  /// Finite value; throws std::logic_error on +inf.
  const Rational& value() const;

  friend bool operator==(const TropValue& a, const TropValue& b) {
    return a.inf_ == b.inf_ && (a.inf_ || a.value_ == b.value_);
  }
  /// +inf compares greater than every finite value.
  friend std::strong_ordering operator<=>(const TropValue& a, const TropValue& b);

  std::string to_string() const;

 private:
  Rational value_;
  bool inf_;
};

inline constexpr TropValue kInf = TropValue::infinity();

/// a (+) b = min(a, b)
TropValue oplus(const TropValue& a, const TropValue& b);
/// a (x) b = a + b, with +inf absorbing
TropValue otimes(const TropValue& a, const TropValue& b);

std::ostream& operator<<(std::ostream& os, const TropValue& v);

class TropMatrix {
 public:
  TropMatrix() = default;
  /// rows x cols matrix filled with `fill`. Both dimensions must be positive.
  TropMatrix(std::size_t rows, std::size_t cols, TropValue fill = TropValue(0));
  TropMatrix(std::initializer_list<std::initializer_list<TropValue>> rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  TropValue& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const TropValue& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  const TropValue& at(std::size_t i, std::size_t j) const;

  // Optional labels; empty vectors mean "use 1-based indices".
  std::vector<std::string> row_labels;
  std::vector<std::string> col_labels;

  bool has_infinity() const;
  bool all_integer() const;
  /// No row and no column consists solely of +inf.
  bool is_proper() const;

  TropMatrix submatrix(const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) const;
  TropMatrix without_column(std::size_t j) const;
  TropMatrix transpose() const;

  std::string shape_string() const;

  /// Entrywise equality; labels are ignored.
  friend bool operator==(const TropMatrix& a, const TropMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<TropValue> data_;
};

struct Factorization {
  TropMatrix left;   // m x k
  TropMatrix right;  // k x n

  std::size_t inner_dim() const { return left.cols(); }
};

/// Row offset alpha_i and column offset beta_j: B_ij = A_ij + alpha_i + beta_j.
struct Scaling {
  std::vector<Rational> row_offsets;
  std::vector<Rational> col_offsets;

  TropMatrix apply(const TropMatrix& a) const;
  TropMatrix unapply(const TropMatrix& a) const;
  /// Map a factorization of A to one of apply(A), and back.
  Factorization apply(const Factorization& f) const;
  Factorization unapply(const Factorization& f) const;
};

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Thrown when an enumeration limit would be exceeded.
class CapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

TropMatrix trop_mat_mul(const TropMatrix& a, const TropMatrix& b);

/// Exact check that f.left (x) f.right == target.
bool verify_product(const TropMatrix& target, const Factorization& f);

/// Subtract row minima, then column minima. Requires a proper matrix.
std::pair<TropMatrix, Scaling> scale_normalize(const TropMatrix& a);

struct Permanent {
  TropValue value;
  bool attained_twice = false;
};

inline constexpr std::size_t kDefaultPermanentCap = 9;

Permanent tropical_permanent(const TropMatrix& d, std::size_t cap = kDefaultPermanentCap);

/// Largest r with a nonsingular r x r submatrix; 0 when every entry is +inf.
std::size_t tropical_rank(const TropMatrix& a, std::size_t cap = kDefaultPermanentCap);

std::optional<Factorization> factor_rank_le1(const TropMatrix& a);

}  // namespace troprank
