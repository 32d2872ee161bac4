#include "troprank/oracle.hpp"

#include <algorithm>
#include <limits>
#include <set>
#include <string>

namespace troprank {

TwoVarSystem build_pattern_system(const TropMatrix& a, std::size_t k, const WinnerPattern& p) {
  const std::size_t m = a.rows(), n = a.cols();
  if (a.has_infinity()) throw std::invalid_argument("build_pattern_system needs a finite matrix");
  if (p.winner.size() != m) throw DimensionError("pattern does not fit " + a.shape_string());
  TwoVarSystem sys(m * k + k * n);
  for (std::size_t i = 0; i < m; ++i) {
    if (p.winner[i].size() != n) throw DimensionError("pattern does not fit " + a.shape_string());
    for (std::size_t j = 0; j < n; ++j) {
      const Rational& v = a(i, j).value();
      if (p.winner[i][j] >= k) throw std::out_of_range("winner index out of range");
      for (std::size_t t = 0; t < k; ++t) {
        std::size_t b = i * k + t, c = m * k + t * n + j;
        if (t == p.winner[i][j]) sys.sum_equal(b, c, v);
        else sys.sum_at_least(b, c, v);
      }
    }
  }
  return sys;
}

namespace {

struct Rect {
  std::vector<bool> rows;
  std::vector<bool> cols;
};

std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r;
  if (__builtin_mul_overflow(a, b, &r)) return std::numeric_limits<std::uint64_t>::max();
  return r;
}

std::uint64_t sat_pow(std::uint64_t base, std::size_t e) {
  std::uint64_t r = 1;
  for (std::size_t i = 0; i < e; ++i) r = sat_mul(r, base);
  return r;
}

// C(r + k - 1, k): multisets of size k from r items.
std::uint64_t multisets(std::uint64_t r, std::uint64_t k) {
  if (r == 0) return 0;
  std::uint64_t out = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    out = sat_mul(out, r + i - 1);
    if (out == std::numeric_limits<std::uint64_t>::max()) return out;
    out /= i;
  }
  return out;
}

// Closed rectangles of the finite support, via intersections over row subsets.
std::vector<Rect> maximal_rectangles(const TropMatrix& a) {
  const std::size_t m = a.rows(), n = a.cols();
  std::vector<Rect> out;
  if (!a.has_infinity()) {
    out.push_back({std::vector<bool>(m, true), std::vector<bool>(n, true)});
    return out;
  }
  const bool by_rows = m <= n;
  const std::size_t lines = by_rows ? m : n, other = by_rows ? n : m;
  if (lines > 20) throw BudgetExceeded("too many lines to enumerate support rectangles");
  auto fin = [&](std::size_t line, std::size_t o) {
    return by_rows ? a(line, o).is_finite() : a(o, line).is_finite();
  };
  std::set<std::pair<std::vector<bool>, std::vector<bool>>> seen;
  for (std::uint32_t mask = 1; mask < (1u << lines); ++mask) {
    std::vector<bool> cross(other, true);
    bool any = false;
    for (std::size_t o = 0; o < other; ++o) {
      for (std::size_t l = 0; l < lines && cross[o]; ++l)
        if ((mask >> l & 1) && !fin(l, o)) cross[o] = false;
      any = any || cross[o];
    }
    if (!any) continue;
    std::vector<bool> closure(lines, true);
    for (std::size_t l = 0; l < lines; ++l)
      for (std::size_t o = 0; o < other && closure[l]; ++o)
        if (cross[o] && !fin(l, o)) closure[l] = false;
    if (seen.emplace(closure, cross).second) {
      if (by_rows) out.push_back({closure, cross});
      else out.push_back({cross, closure});
    }
  }
  return out;
}

struct Cell {
  std::size_t i;
  std::size_t j;
};

class Search {
 public:
  Search(const TropMatrix& a, std::size_t k, std::vector<Rect> rects)
      : a_(a), k_(k), rects_(std::move(rects)) {
    for (std::size_t i = 0; i < a.rows(); ++i)
      for (std::size_t j = 0; j < a.cols(); ++j)
        if (a(i, j).is_finite()) cells_.push_back({i, j});
  }

  std::optional<Factorization> run() {
    std::vector<std::size_t> choice(k_, 0);
    while (true) {
      if (covers(choice)) {
        layer_rect_ = choice;
        assigned_.assign(k_, {});
        if (dfs(0)) return witness();
      }
      // next nondecreasing sequence over rects_
      std::size_t pos = k_;
      while (pos > 0 && choice[pos - 1] + 1 == rects_.size()) --pos;
      if (pos == 0) return std::nullopt;
      ++choice[pos - 1];
      for (std::size_t q = pos; q < k_; ++q) choice[q] = choice[pos - 1];
    }
  }

 private:
  bool in_rect(std::size_t r, const Cell& c) const { return rects_[r].rows[c.i] && rects_[r].cols[c.j]; }

  bool covers(const std::vector<std::size_t>& choice) const {
    for (const auto& c : cells_) {
      bool ok = false;
      for (std::size_t r : choice) ok = ok || in_rect(r, c);
      if (!ok) return false;
    }
    return true;
  }

  // Per-term system: b_i + c_j >= A_ij on the rectangle, equality on won cells.
  TwoVarSystem layer_system(std::size_t t, std::vector<std::size_t>& row_var,
                            std::vector<std::size_t>& col_var) const {
    const Rect& r = rects_[layer_rect_[t]];
    const std::size_t none = std::numeric_limits<std::size_t>::max();
    row_var.assign(a_.rows(), none);
    col_var.assign(a_.cols(), none);
    TwoVarSystem sys;
    for (std::size_t i = 0; i < a_.rows(); ++i)
      if (r.rows[i]) row_var[i] = sys.add_var();
    for (std::size_t j = 0; j < a_.cols(); ++j)
      if (r.cols[j]) col_var[j] = sys.add_var();
    std::vector<std::vector<bool>> won(a_.rows(), std::vector<bool>(a_.cols(), false));
    for (const auto& c : assigned_[t]) won[c.i][c.j] = true;
    for (std::size_t i = 0; i < a_.rows(); ++i)
      for (std::size_t j = 0; j < a_.cols(); ++j) {
        if (!r.rows[i] || !r.cols[j]) continue;
        const Rational& v = a_(i, j).value();
        if (won[i][j]) sys.sum_equal(row_var[i], col_var[j], v);
        else sys.sum_at_least(row_var[i], col_var[j], v);
      }
    return sys;
  }

  bool layer_feasible(std::size_t t) const {
    std::vector<std::size_t> rv, cv;
    return solve_two_var(layer_system(t, rv, cv)).has_value();
  }

  bool allowed(std::size_t t, const Cell& c) const {
    if (!in_rect(layer_rect_[t], c)) return false;
    if (!assigned_[t].empty()) return true;
    // Among unused terms sharing a rectangle only the first may open.
    return t == 0 || layer_rect_[t - 1] != layer_rect_[t] || !assigned_[t - 1].empty();
  }

  bool dfs(std::size_t idx) {
    if (idx == cells_.size()) return true;
    const Cell& c = cells_[idx];
    for (std::size_t t = 0; t < k_; ++t) {
      if (!allowed(t, c)) continue;
      assigned_[t].push_back(c);
      if (layer_feasible(t) && dfs(idx + 1)) return true;
      assigned_[t].pop_back();
    }
    return false;
  }

  Factorization witness() const {
    Factorization f{TropMatrix(a_.rows(), k_, kInf), TropMatrix(k_, a_.cols(), kInf)};
    for (std::size_t t = 0; t < k_; ++t) {
      std::vector<std::size_t> rv, cv;
      auto sol = solve_two_var(layer_system(t, rv, cv));
      if (!sol) throw std::logic_error("oracle: accepted layer became infeasible");
      for (std::size_t i = 0; i < a_.rows(); ++i)
        if (rects_[layer_rect_[t]].rows[i]) f.left(i, t) = (*sol)[rv[i]];
      for (std::size_t j = 0; j < a_.cols(); ++j)
        if (rects_[layer_rect_[t]].cols[j]) f.right(t, j) = (*sol)[cv[j]];
    }
    return f;
  }

  const TropMatrix& a_;
  std::size_t k_;
  std::vector<Rect> rects_;
  std::vector<Cell> cells_;
  std::vector<std::size_t> layer_rect_;
  std::vector<std::vector<Cell>> assigned_;
};

// Factor rank never exceeds min(m, n): pass rows (or columns) through a
// diagonal factor. Off-diagonal entries use +inf, or a large finite value on
// finite input so that finite matrices get finite witnesses.
Factorization trivial_witness(const TropMatrix& a, std::size_t k) {
  const std::size_t m = a.rows(), n = a.cols();
  TropValue off = kInf;
  if (!a.has_infinity()) {
    Rational lo = a(0, 0).value(), hi = lo;
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        lo = std::min(lo, a(i, j).value());
        hi = std::max(hi, a(i, j).value());
      }
    off = hi - lo;
  }
  Factorization f{TropMatrix(m, k, off), TropMatrix(k, n, off)};
  if (m <= n) {
    for (std::size_t t = 0; t < k; ++t) {
      const std::size_t src = t < m ? t : 0;
      if (t < m) f.left(t, t) = TropValue(0);
      for (std::size_t j = 0; j < n; ++j) f.right(t, j) = a(src, j);
    }
  } else {
    for (std::size_t t = 0; t < k; ++t) {
      const std::size_t src = t < n ? t : 0;
      if (t < n) f.right(t, t) = TropValue(0);
      for (std::size_t i = 0; i < m; ++i) f.left(i, t) = a(i, src);
    }
  }
  return f;
}

}  // namespace

std::uint64_t nominal_patterns(const TropMatrix& a, std::size_t k) {
  std::size_t finite = 0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) finite += a(i, j).is_finite();
  std::uint64_t covers = a.has_infinity() ? multisets(maximal_rectangles(a).size(), k) : 1;
  return sat_mul(sat_pow(k, finite), covers);
}

std::optional<Factorization> factor_rank_le_k(const TropMatrix& a, std::size_t k, const OracleOptions& opt) {
  if (k == 0) throw std::invalid_argument("k must be at least 1");
  if (k >= std::min(a.rows(), a.cols())) return trivial_witness(a, k);
  bool any_finite = false;
  for (std::size_t i = 0; i < a.rows() && !any_finite; ++i)
    for (std::size_t j = 0; j < a.cols() && !any_finite; ++j) any_finite = a(i, j).is_finite();
  if (!any_finite) return Factorization{TropMatrix(a.rows(), k, kInf), TropMatrix(k, a.cols(), kInf)};

  const std::uint64_t nominal = nominal_patterns(a, k);
  if (nominal > opt.budget)
    throw BudgetExceeded("pattern budget exceeded: " + std::to_string(nominal) + " patterns for " +
                         a.shape_string() + " at k=" + std::to_string(k) + " (budget " +
                         std::to_string(opt.budget) + ")");
  auto f = Search(a, k, maximal_rectangles(a)).run();
  if (f && !verify_product(a, *f)) throw std::logic_error("oracle produced a non-verifying witness");
  return f;
}

std::size_t factor_rank_exact(const TropMatrix& a, const OracleOptions& opt) {
  for (std::size_t k = 1;; ++k)
    if (factor_rank_le_k(a, k, opt)) return k;
}

}  // namespace troprank
