#include "troprank/trop_matrix.hpp"

#include <algorithm>
#include <numeric>
#include <ostream>

namespace troprank {

const Rational& TropValue::value() const {
  if (inf_) throw std::logic_error("value() on +inf");
  return value_;
}

std::strong_ordering operator<=>(const TropValue& a, const TropValue& b) {
  if (a.inf_ || b.inf_) return static_cast<int>(a.inf_) <=> static_cast<int>(b.inf_);
  return a.value_ <=> b.value_;
}

std::string TropValue::to_string() const { return inf_ ? "inf" : value_.to_string(); }

std::ostream& operator<<(std::ostream& os, const TropValue& v) { return os << v.to_string(); }

TropValue oplus(const TropValue& a, const TropValue& b) { return b < a ? b : a; }

TropValue otimes(const TropValue& a, const TropValue& b) {
  if (a.is_inf() || b.is_inf()) return kInf;
  return TropValue(a.value() + b.value());
}

TropMatrix::TropMatrix(std::size_t rows, std::size_t cols, TropValue fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill) {
  if (rows == 0 || cols == 0) throw DimensionError("matrix dimensions must be positive");
}

TropMatrix::TropMatrix(std::initializer_list<std::initializer_list<TropValue>> rows) {
  rows_ = rows.size();
  cols_ = rows_ ? rows.begin()->size() : 0;
  if (rows_ == 0 || cols_ == 0) throw DimensionError("matrix dimensions must be positive");
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw DimensionError("ragged matrix literal");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

const TropValue& TropMatrix::at(std::size_t i, std::size_t j) const {
  if (i >= rows_ || j >= cols_) throw std::out_of_range("matrix index out of range");
  return (*this)(i, j);
}

bool TropMatrix::has_infinity() const {
  return std::any_of(data_.begin(), data_.end(), [](const TropValue& v) { return v.is_inf(); });
}

bool TropMatrix::all_integer() const {
  return std::all_of(data_.begin(), data_.end(),
                     [](const TropValue& v) { return v.is_inf() || v.value().is_integer(); });
}

bool TropMatrix::is_proper() const {
  for (std::size_t i = 0; i < rows_; ++i) {
    bool finite = false;
    for (std::size_t j = 0; j < cols_ && !finite; ++j) finite = (*this)(i, j).is_finite();
    if (!finite) return false;
  }
  for (std::size_t j = 0; j < cols_; ++j) {
    bool finite = false;
    for (std::size_t i = 0; i < rows_ && !finite; ++i) finite = (*this)(i, j).is_finite();
    if (!finite) return false;
  }
  return true;
}

TropMatrix TropMatrix::submatrix(const std::vector<std::size_t>& rows,
                                 const std::vector<std::size_t>& cols) const {
  TropMatrix out(rows.size(), cols.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j) out(i, j) = at(rows[i], cols[j]);
  if (!row_labels.empty())
    for (std::size_t r : rows) out.row_labels.push_back(row_labels[r]);
  if (!col_labels.empty())
    for (std::size_t c : cols) out.col_labels.push_back(col_labels[c]);
  return out;
}

TropMatrix TropMatrix::without_column(std::size_t j) const {
  if (j >= cols_) throw std::out_of_range("column index out of range");
  std::vector<std::size_t> r(rows_), c;
  std::iota(r.begin(), r.end(), 0);
  for (std::size_t q = 0; q < cols_; ++q)
    if (q != j) c.push_back(q);
  return submatrix(r, c);
}

TropMatrix TropMatrix::transpose() const {
  TropMatrix out(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
  out.row_labels = col_labels;
  out.col_labels = row_labels;
  return out;
}

std::string TropMatrix::shape_string() const {
  return std::to_string(rows_) + "x" + std::to_string(cols_);
}

TropMatrix trop_mat_mul(const TropMatrix& a, const TropMatrix& b) {
  if (a.cols() != b.rows())
    throw DimensionError("cannot multiply " + a.shape_string() + " by " + b.shape_string());
  TropMatrix out(a.rows(), b.cols(), kInf);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t t = 0; t < a.cols(); ++t) {
      const TropValue& x = a(i, t);
      if (x.is_inf()) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) {
        const TropValue& y = b(t, j);
        if (y.is_inf()) continue;
        TropValue s = x.value() + y.value();
        if (s < out(i, j)) out(i, j) = s;
      }
    }
  out.row_labels = a.row_labels;
  out.col_labels = b.col_labels;
  return out;
}

bool verify_product(const TropMatrix& target, const Factorization& f) {
  if (f.left.cols() != f.right.rows() || f.left.rows() != target.rows() ||
      f.right.cols() != target.cols())
    throw DimensionError("factorization " + f.left.shape_string() + " * " + f.right.shape_string() +
                         " does not fit target " + target.shape_string());
  return trop_mat_mul(f.left, f.right) == target;
}

namespace {

TropMatrix shift(const TropMatrix& a, const std::vector<Rational>& r, const std::vector<Rational>& c,
                 bool negate) {
  if (r.size() != a.rows() || c.size() != a.cols())
    throw DimensionError("scaling does not fit " + a.shape_string());
  TropMatrix out = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (a(i, j).is_inf()) continue;
      Rational d = r[i] + c[j];
      out(i, j) = negate ? a(i, j).value() - d : a(i, j).value() + d;
    }
  return out;
}

void add_to_row(TropMatrix& m, std::size_t i, const Rational& d) {
  for (std::size_t j = 0; j < m.cols(); ++j)
    if (m(i, j).is_finite()) m(i, j) = m(i, j).value() + d;
}

void add_to_col(TropMatrix& m, std::size_t j, const Rational& d) {
  for (std::size_t i = 0; i < m.rows(); ++i)
    if (m(i, j).is_finite()) m(i, j) = m(i, j).value() + d;
}

}  // namespace

TropMatrix Scaling::apply(const TropMatrix& a) const { return shift(a, row_offsets, col_offsets, false); }
TropMatrix Scaling::unapply(const TropMatrix& a) const { return shift(a, row_offsets, col_offsets, true); }

Factorization Scaling::apply(const Factorization& f) const {
  if (row_offsets.size() != f.left.rows() || col_offsets.size() != f.right.cols())
    throw DimensionError("scaling does not fit factorization");
  Factorization g = f;
  for (std::size_t i = 0; i < g.left.rows(); ++i) add_to_row(g.left, i, row_offsets[i]);
  for (std::size_t j = 0; j < g.right.cols(); ++j) add_to_col(g.right, j, col_offsets[j]);
  return g;
}

Factorization Scaling::unapply(const Factorization& f) const {
  if (row_offsets.size() != f.left.rows() || col_offsets.size() != f.right.cols())
    throw DimensionError("scaling does not fit factorization");
  Factorization g = f;
  for (std::size_t i = 0; i < g.left.rows(); ++i) add_to_row(g.left, i, -row_offsets[i]);
  for (std::size_t j = 0; j < g.right.cols(); ++j) add_to_col(g.right, j, -col_offsets[j]);
  return g;
}

std::pair<TropMatrix, Scaling> scale_normalize(const TropMatrix& a) {
  Scaling s{std::vector<Rational>(a.rows()), std::vector<Rational>(a.cols())};
  TropMatrix out = a;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    TropValue mn = kInf;
    for (std::size_t j = 0; j < a.cols(); ++j) mn = oplus(mn, out(i, j));
    if (mn.is_inf())
      throw std::invalid_argument("matrix is not proper: row " + std::to_string(i + 1) + " is all inf");
    s.row_offsets[i] = -mn.value();
    add_to_row(out, i, s.row_offsets[i]);
  }
  for (std::size_t j = 0; j < a.cols(); ++j) {
    TropValue mn = kInf;
    for (std::size_t i = 0; i < a.rows(); ++i) mn = oplus(mn, out(i, j));
    if (mn.is_inf())
      throw std::invalid_argument("matrix is not proper: column " + std::to_string(j + 1) +
                                  " is all inf");
    s.col_offsets[j] = -mn.value();
    add_to_col(out, j, s.col_offsets[j]);
  }
  return {out, s};
}

Permanent tropical_permanent(const TropMatrix& d, std::size_t cap) {
  if (d.rows() != d.cols()) throw DimensionError("permanent of non-square " + d.shape_string());
  const std::size_t n = d.rows();
  if (n > cap)
    throw CapExceeded("enumeration cap exceeded: n=" + std::to_string(n) + " > " + std::to_string(cap));
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  Permanent best{kInf, false};
  std::size_t hits = 0;
  do {
    TropValue s = TropValue(0);
    for (std::size_t i = 0; i < n && s.is_finite(); ++i) s = otimes(s, d(i, perm[i]));
    if (s < best.value) {
      best.value = s;
      hits = 1;
    } else if (s == best.value) {
      ++hits;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  best.attained_twice = hits >= 2;
  // a lone all-inf 1x1 is singular by convention
  if (best.value.is_inf()) best.attained_twice = true;
  return best;
}

namespace {

bool next_combination(std::vector<std::size_t>& c, std::size_t n) {
  const std::size_t k = c.size();
  for (std::size_t i = k; i-- > 0;) {
    if (c[i] < n - k + i) {
      ++c[i];
      for (std::size_t j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
      return true;
    }
  }
  return false;
}

bool has_nonsingular(const TropMatrix& a, std::size_t r, std::size_t cap) {
  std::vector<std::size_t> rows(r);
  std::iota(rows.begin(), rows.end(), 0);
  do {
    std::vector<std::size_t> cols(r);
    std::iota(cols.begin(), cols.end(), 0);
    do {
      if (!tropical_permanent(a.submatrix(rows, cols), cap).attained_twice) return true;
    } while (next_combination(cols, a.cols()));
  } while (next_combination(rows, a.rows()));
  return false;
}

}  // namespace

std::size_t tropical_rank(const TropMatrix& a, std::size_t cap) {
  const std::size_t top = std::min(a.rows(), a.cols());
  if (top > cap)
    throw CapExceeded("enumeration cap exceeded: minors up to " + std::to_string(top) + " > " +
                      std::to_string(cap));
  for (std::size_t r = top; r >= 1; --r)
    if (has_nonsingular(a, r, cap)) return r;
  return 0;
}

std::optional<Factorization> factor_rank_le1(const TropMatrix& a) {
  std::size_t i0 = a.rows(), j0 = a.cols();
  for (std::size_t i = 0; i < a.rows() && i0 == a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (a(i, j).is_finite()) {
        i0 = i;
        j0 = j;
        break;
      }
  Factorization f{TropMatrix(a.rows(), 1), TropMatrix(1, a.cols())};
  if (i0 == a.rows()) {
    // all inf: B = inf column
    for (std::size_t i = 0; i < a.rows(); ++i) f.left(i, 0) = kInf;
    return f;
  }
  const Rational pivot = a(i0, j0).value();
  for (std::size_t i = 0; i < a.rows(); ++i)
    f.left(i, 0) = a(i, j0).is_inf() ? kInf : TropValue(a(i, j0).value() - pivot);
  for (std::size_t j = 0; j < a.cols(); ++j) f.right(0, j) = a(i0, j);
  if (!verify_product(a, f)) return std::nullopt;
  return f;
}

}  // namespace troprank
