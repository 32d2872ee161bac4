#include "troprank/rank3.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

#include "troprank/constraints.hpp"
#include "troprank/oracle.hpp"

namespace troprank {

namespace {

Rational entry(const TropMatrix& a, std::size_t i, std::size_t j) { return a(i, j).value(); }

void require_finite(const TropMatrix& a) {
  if (a.has_infinity())
    throw std::invalid_argument("rank-3 decision needs finite entries; normalize and eliminate inf first");
}

// Basis of two columns p, q: B = [a_p a_q], C_tj = max_i (A_ij - B_it).
std::optional<Factorization> try_column_pair(const TropMatrix& a, std::size_t p, std::size_t q) {
  const std::size_t m = a.rows(), n = a.cols();
  Factorization f{TropMatrix(m, 2), TropMatrix(2, n)};
  for (std::size_t i = 0; i < m; ++i) {
    f.left(i, 0) = a(i, p);
    f.left(i, 1) = a(i, q);
  }
  for (std::size_t t = 0; t < 2; ++t)
    for (std::size_t j = 0; j < n; ++j) {
      Rational best = entry(a, 0, j) - f.left(0, t).value();
      for (std::size_t i = 1; i < m; ++i) best = std::max(best, entry(a, i, j) - f.left(i, t).value());
      f.right(t, j) = best;
    }
  if (!verify_product(a, f)) return std::nullopt;
  return f;
}

Factorization pad_inner(const Factorization& f, std::size_t k) {
  Factorization g{TropMatrix(f.left.rows(), k), TropMatrix(k, f.right.cols())};
  for (std::size_t t = 0; t < k; ++t) {
    std::size_t src = t < f.inner_dim() ? t : 0;
    for (std::size_t i = 0; i < f.left.rows(); ++i) g.left(i, t) = f.left(i, src);
    for (std::size_t j = 0; j < f.right.cols(); ++j) g.right(t, j) = f.right(src, j);
  }
  return g;
}

bool next_triple(std::array<std::size_t, 3>& c, std::size_t n) {
  for (std::size_t i = 3; i-- > 0;) {
    if (c[i] < n - 3 + i) {
      ++c[i];
      for (std::size_t j = i + 1; j < 3; ++j) c[j] = c[j - 1] + 1;
      return true;
    }
  }
  return false;
}

bool is_fullrank(const TropMatrix& sub) {
  if (factor_rank_le2(sub)) return false;
  // The pair basis is complete for rank <= 2; the oracle double-checks.
  if (factor_rank_le_k(sub, 2)) throw std::logic_error("pair basis missed a rank-2 factorization");
  return true;
}

template <class F>
void for_each_fullrank(const TropMatrix& a, F&& visit) {
  if (a.rows() < 3 || a.cols() < 3) return;
  std::array<std::size_t, 3> r{0, 1, 2};
  do {
    std::array<std::size_t, 3> c{0, 1, 2};
    do {
      if (is_fullrank(a.submatrix({r[0], r[1], r[2]}, {c[0], c[1], c[2]})))
        if (!visit(Placement{r, c})) return;
    } while (next_triple(c, a.cols()));
  } while (next_triple(r, a.rows()));
}

// ---- anchor scaling ------------------------------------------------------

std::int64_t denominator_lcm(const TropMatrix& a) {
  std::int64_t d = 1;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      std::int64_t q = a(i, j).value().den();
      std::int64_t g = std::gcd(d, q);
      if (__builtin_mul_overflow(d / g, q, &d)) throw std::overflow_error("denominator lcm overflow");
    }
  return d;
}

struct Normalized {
  TropMatrix p;               // permuted, scaled matrix; anchor at rows/cols 0..2
  Scaling scaling;            // maps the original matrix to the unpermuted scaled one
  std::vector<std::size_t> row_of;  // permuted index -> original index
  std::vector<std::size_t> col_of;
  int form = 0;
};

// Scale so that every entry is >= 0, every row and column has a zero, and the
// anchor shows form 1 (zero diagonal) or form 2 (positive diagonal) under some
// matching of anchor rows to anchor columns. Strict anchor cells use a margin
// eps small enough that no negative cycle can be hidden by it.
std::optional<Normalized> normalize_anchor(const TropMatrix& a, const Placement& pl) {
  const std::size_t m = a.rows(), n = a.cols();
  const Rational eps = Rational(1) / (Rational(denominator_lcm(a)) * 10);
  std::array<std::size_t, 3> perm{0, 1, 2};
  for (int form = 1; form <= 2; ++form) {
    do {
      TwoVarSystem sys(m + n);
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j) sys.sum_at_least(i, m + j, -entry(a, i, j));
      for (std::size_t x = 0; x < 3; ++x)
        for (std::size_t y = 0; y < 3; ++y) {
          std::size_t i = pl.rows[x], j = pl.cols[y];
          bool zero = (perm[x] == y) == (form == 1);
          if (zero) sys.sum_equal(i, m + j, -entry(a, i, j));
          else sys.sum_at_least(i, m + j, -entry(a, i, j) + eps);
        }
      auto sol = solve_two_var(sys);
      if (!sol) continue;
      Scaling s{std::vector<Rational>(sol->begin(), sol->begin() + m),
                std::vector<Rational>(sol->begin() + m, sol->end())};
      TropMatrix scaled = s.apply(a);
      auto in = [](const std::array<std::size_t, 3>& t, std::size_t v) {
        return std::find(t.begin(), t.end(), v) != t.end();
      };
      for (std::size_t i = 0; i < m; ++i) {
        if (in(pl.rows, i)) continue;
        Rational mn = entry(scaled, i, 0);
        for (std::size_t j = 1; j < n; ++j) mn = std::min(mn, entry(scaled, i, j));
        s.row_offsets[i] -= mn;
      }
      scaled = s.apply(a);
      for (std::size_t j = 0; j < n; ++j) {
        if (in(pl.cols, j)) continue;
        Rational mn = entry(scaled, 0, j);
        for (std::size_t i = 1; i < m; ++i) mn = std::min(mn, entry(scaled, i, j));
        s.col_offsets[j] -= mn;
      }
      scaled = s.apply(a);

      Normalized out;
      out.scaling = s;
      out.form = form;
      out.row_of = {pl.rows[0], pl.rows[1], pl.rows[2]};
      for (std::size_t y = 0; y < 3; ++y) out.col_of.push_back(pl.cols[perm[y]]);
      for (std::size_t i = 0; i < m; ++i)
        if (!in(pl.rows, i)) out.row_of.push_back(i);
      for (std::size_t j = 0; j < n; ++j)
        if (!in(pl.cols, j)) out.col_of.push_back(j);
      out.p = scaled.submatrix(out.row_of, out.col_of);
      return out;
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
  return std::nullopt;
}

// ---- sign patterns and branches --------------------------------------------

enum class Sign { Zero, Pos, Free };

struct Cell {
  Sign sign = Sign::Free;
  bool known = false;
  Rational value;
};

struct Pattern {
  std::size_t m = 0, n = 0;
  std::vector<Cell> b;  // m x 3
  std::vector<Cell> c;  // 3 x n
  Cell& B(std::size_t i, std::size_t t) { return b[i * 3 + t]; }
  Cell& C(std::size_t t, std::size_t j) { return c[t * n + j]; }
  const Cell& B(std::size_t i, std::size_t t) const { return b[i * 3 + t]; }
  const Cell& C(std::size_t t, std::size_t j) const { return c[t * n + j]; }
};

struct Contradiction {};

bool set_sign(Cell& cell, Sign s) {
  if (cell.sign == s) return false;
  if (cell.sign != Sign::Free) throw Contradiction{};
  cell.sign = s;
  if (s == Sign::Zero) {
    cell.known = true;
    cell.value = 0;
  }
  return true;
}

void set_value(Cell& cell, const Rational& v) {
  if (cell.known) {
    if (cell.value != v) throw Contradiction{};
    return;
  }
  if (v.sign() == 0) {
    set_sign(cell, Sign::Zero);
    return;
  }
  if (v.sign() < 0 || cell.sign == Sign::Zero) throw Contradiction{};
  cell.sign = Sign::Pos;
  cell.known = true;
  cell.value = v;
}

void propagate(const TropMatrix& w, Pattern& pat) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < pat.m; ++i)
      for (std::size_t j = 0; j < pat.n; ++j) {
        if (entry(w, i, j).sign() > 0) {
          for (std::size_t t = 0; t < 3; ++t) {
            if (pat.B(i, t).sign == Sign::Zero) changed |= set_sign(pat.C(t, j), Sign::Pos);
            if (pat.C(t, j).sign == Sign::Zero) changed |= set_sign(pat.B(i, t), Sign::Pos);
          }
        } else {
          std::size_t count = 0, last = 0;
          for (std::size_t t = 0; t < 3; ++t)
            if (pat.B(i, t).sign != Sign::Pos && pat.C(t, j).sign != Sign::Pos) {
              ++count;
              last = t;
            }
          if (count == 0) throw Contradiction{};
          if (count == 1) {
            changed |= set_sign(pat.B(i, last), Sign::Zero);
            changed |= set_sign(pat.C(last, j), Sign::Zero);
          }
        }
      }
  }
}

// A column maximum beta_j sits in a row whose term t has B = 0; then C_tj >=
// beta_j, and lowering it to beta_j keeps every solution valid. Same for rows.
void fix_extremes(const TropMatrix& w, Pattern& pat) {
  for (std::size_t j = 0; j < pat.n; ++j) {
    Rational beta = entry(w, 0, j);
    for (std::size_t i = 1; i < pat.m; ++i) beta = std::max(beta, entry(w, i, j));
    for (std::size_t i = 0; i < pat.m; ++i)
      if (entry(w, i, j) == beta)
        for (std::size_t t = 0; t < 3; ++t)
          if (pat.B(i, t).sign == Sign::Zero) set_value(pat.C(t, j), beta);
  }
  for (std::size_t i = 0; i < pat.m; ++i) {
    Rational gamma = entry(w, i, 0);
    for (std::size_t j = 1; j < pat.n; ++j) gamma = std::max(gamma, entry(w, i, j));
    for (std::size_t j = 0; j < pat.n; ++j)
      if (entry(w, i, j) == gamma)
        for (std::size_t t = 0; t < 3; ++t)
          if (pat.C(t, j).sign == Sign::Zero) set_value(pat.B(i, t), gamma);
  }
}

// Rows with B_{i,t1} = 0, B_{i,t2} known positive, B_{i,t3} unknown, against
// columns with C_{t3,j} = 0, C_{t2,j} known positive, C_{t1,j} unknown: there
// A_ij = min(B_{i,t3}, C_{t1,j}), so one side equals its maxima.
struct Split {
  std::size_t t1, t3;
  std::vector<std::size_t> rows, cols;
  std::vector<Rational> row_max, col_max;
};

std::vector<Split> techmin_splits(const TropMatrix& w, const Pattern& pat) {
  std::vector<Split> out;
  std::array<std::size_t, 3> t{0, 1, 2};
  do {
    Split s{t[0], t[2], {}, {}, {}, {}};
    for (std::size_t i = 0; i < pat.m; ++i)
      if (pat.B(i, t[0]).sign == Sign::Zero && pat.B(i, t[1]).known && pat.B(i, t[1]).sign == Sign::Pos &&
          !pat.B(i, t[2]).known)
        s.rows.push_back(i);
    for (std::size_t j = 0; j < pat.n; ++j)
      if (pat.C(t[2], j).sign == Sign::Zero && pat.C(t[1], j).known && pat.C(t[1], j).sign == Sign::Pos &&
          !pat.C(t[0], j).known)
        s.cols.push_back(j);
    if (s.rows.empty() || s.cols.empty()) continue;
    for (std::size_t i : s.rows) {
      Rational r = entry(w, i, s.cols[0]);
      for (std::size_t j : s.cols) r = std::max(r, entry(w, i, j));
      s.row_max.push_back(r);
    }
    for (std::size_t j : s.cols) {
      Rational c = entry(w, s.rows[0], j);
      for (std::size_t i : s.rows) c = std::max(c, entry(w, i, j));
      s.col_max.push_back(c);
    }
    out.push_back(std::move(s));
  } while (std::next_permutation(t.begin(), t.end()));
  return out;
}

// Each equation min_t (B_it + C_tj) = A_ij becomes >= on every term plus at
// most one equality, or the branch is contradictory.
std::optional<Factorization> solve_branch(const TropMatrix& w, const Pattern& pat) {
  const std::size_t none = static_cast<std::size_t>(-1);
  std::vector<std::size_t> bvar(pat.b.size(), none), cvar(pat.c.size(), none);
  TwoVarSystem sys;
  for (std::size_t k = 0; k < pat.b.size(); ++k)
    if (!pat.b[k].known) {
      bvar[k] = sys.add_var();
      sys.at_least(bvar[k], 0);
    }
  for (std::size_t k = 0; k < pat.c.size(); ++k)
    if (!pat.c[k].known) {
      cvar[k] = sys.add_var();
      sys.at_least(cvar[k], 0);
    }
  for (std::size_t i = 0; i < pat.m; ++i)
    for (std::size_t j = 0; j < pat.n; ++j) {
      const Rational a = entry(w, i, j);
      bool met = false;
      std::vector<std::size_t> candidates;
      struct Term {
        Rational known;
        std::size_t x, y;  // unknown variable ids or none
      };
      std::array<Term, 3> terms;
      for (std::size_t t = 0; t < 3; ++t) {
        const Cell& bc = pat.B(i, t);
        const Cell& cc = pat.C(t, j);
        Term term{0, none, none};
        if (bc.known) term.known += bc.value;
        else term.x = bvar[i * 3 + t];
        if (cc.known) term.known += cc.value;
        else term.y = cvar[t * pat.n + j];
        terms[t] = term;
        if (term.x == none && term.y == none) {
          if (term.known < a) return std::nullopt;
          if (term.known == a) met = true;
          continue;
        }
        // unknown parts are strictly positive
        if (term.known < a) candidates.push_back(t);
      }
      for (const Term& term : terms) {
        if (term.x != none && term.y != none) sys.sum_at_least(term.x, term.y, a - term.known);
        else if (term.x != none) sys.at_least(term.x, a - term.known);
        else if (term.y != none) sys.at_least(term.y, a - term.known);
      }
      if (met) continue;
      if (candidates.empty()) return std::nullopt;
      if (candidates.size() > 1)
        throw UnhandledPattern("unresolved disjunction at normalized cell (" + std::to_string(i + 1) + "," +
                               std::to_string(j + 1) + ")");
      const Term& term = terms[candidates[0]];
      if (term.x != none && term.y != none) sys.sum_equal(term.x, term.y, a - term.known);
      else if (term.x != none) sys.equal(term.x, a - term.known);
      else sys.equal(term.y, a - term.known);
    }
  auto sol = solve_two_var(sys);
  if (!sol) return std::nullopt;
  Factorization f{TropMatrix(pat.m, 3), TropMatrix(3, pat.n)};
  for (std::size_t i = 0; i < pat.m; ++i)
    for (std::size_t t = 0; t < 3; ++t) {
      std::size_t k = i * 3 + t;
      f.left(i, t) = pat.b[k].known ? pat.b[k].value : (*sol)[bvar[k]];
    }
  for (std::size_t t = 0; t < 3; ++t)
    for (std::size_t j = 0; j < pat.n; ++j) {
      std::size_t k = t * pat.n + j;
      f.right(t, j) = pat.c[k].known ? pat.c[k].value : (*sol)[cvar[k]];
    }
  if (!verify_product(w, f)) throw std::logic_error("rank3: branch solution does not reproduce the matrix");
  return f;
}

// Zero pattern of the anchor blocks for the three cases.
void seed_case(Pattern& pat, int which) {
  for (std::size_t x = 0; x < 3; ++x)
    for (std::size_t y = 0; y < 3; ++y) {
      bool diag = x == y;
      Sign diag_zero = diag ? Sign::Zero : Sign::Pos;
      Sign diag_pos = diag ? Sign::Pos : Sign::Zero;
      set_sign(pat.B(x, y), which == 3 ? diag_pos : diag_zero);
      set_sign(pat.C(x, y), which == 2 ? diag_pos : diag_zero);
    }
}

struct BranchOutcome {
  std::optional<Factorization> witness;
  std::size_t explored = 0;
};

BranchOutcome run_branches(const TropMatrix& w) {
  BranchOutcome out;
  for (int which = 1; which <= 3; ++which) {
    Pattern pat{w.rows(), w.cols(), std::vector<Cell>(w.rows() * 3), std::vector<Cell>(3 * w.cols())};
    try {
      seed_case(pat, which);
      propagate(w, pat);
    } catch (const Contradiction&) {
      continue;
    }
    for (const Cell& c : pat.b)
      if (c.sign == Sign::Free) throw UnhandledPattern("sign of a B entry is not determined");
    for (const Cell& c : pat.c)
      if (c.sign == Sign::Free) throw UnhandledPattern("sign of a C entry is not determined");
    try {
      fix_extremes(w, pat);
    } catch (const Contradiction&) {
      continue;
    }
    const std::vector<Split> splits = techmin_splits(w, pat);
    const std::size_t combos = std::size_t{1} << splits.size();
    for (std::size_t mask = 0; mask < combos; ++mask) {
      ++out.explored;
      Pattern br = pat;
      try {
        for (std::size_t s = 0; s < splits.size(); ++s) {
          const Split& sp = splits[s];
          if (!(mask >> s & 1))
            for (std::size_t k = 0; k < sp.rows.size(); ++k) set_value(br.B(sp.rows[k], sp.t3), sp.row_max[k]);
          else
            for (std::size_t k = 0; k < sp.cols.size(); ++k) set_value(br.C(sp.t1, sp.cols[k]), sp.col_max[k]);
        }
      } catch (const Contradiction&) {
        continue;
      }
      if (auto f = solve_branch(w, br)) {
        out.witness = std::move(f);
        return out;
      }
    }
  }
  return out;
}

struct PlacementResult {
  enum class Kind { Yes, No, Certificate } kind;
  std::optional<Factorization> witness;
  std::size_t explored = 0;
  std::pair<std::array<std::size_t, 4>, std::array<std::size_t, 4>> certificate{};
};

PlacementResult process_placement(const TropMatrix& a, const Normalized& nz) {
  const TropMatrix& p = nz.p;
  const std::size_t m = p.rows(), n = p.cols();
  auto zero = [&](std::size_t i, std::size_t j) { return entry(p, i, j).sign() == 0; };
  auto anchor_min_zero_row = [&](std::size_t i) { return zero(i, 0) || zero(i, 1) || zero(i, 2); };
  auto anchor_min_zero_col = [&](std::size_t j) { return zero(0, j) || zero(1, j) || zero(2, j); };

  std::vector<std::size_t> keep_rows, keep_cols, drop_rows, drop_cols;
  for (std::size_t j = 0; j < n; ++j) {
    bool all_zero = true;
    for (std::size_t i = 0; i < m && all_zero; ++i) all_zero = zero(i, j);
    if (!all_zero) {
      keep_cols.push_back(j);
      continue;
    }
    for (std::size_t i = 0; i < m; ++i)
      if (!anchor_min_zero_row(i)) {
        PlacementResult r{PlacementResult::Kind::Certificate, std::nullopt, 0, {}};
        r.certificate.first = {nz.row_of[0], nz.row_of[1], nz.row_of[2], nz.row_of[i]};
        r.certificate.second = {nz.col_of[0], nz.col_of[1], nz.col_of[2], nz.col_of[j]};
        return r;
      }
    drop_cols.push_back(j);
  }
  for (std::size_t i = 0; i < m; ++i) {
    bool all_zero = true;
    for (std::size_t j = 0; j < n && all_zero; ++j) all_zero = zero(i, j);
    if (!all_zero) {
      keep_rows.push_back(i);
      continue;
    }
    for (std::size_t j = 0; j < n; ++j)
      if (!anchor_min_zero_col(j)) {
        PlacementResult r{PlacementResult::Kind::Certificate, std::nullopt, 0, {}};
        r.certificate.first = {nz.row_of[0], nz.row_of[1], nz.row_of[2], nz.row_of[i]};
        r.certificate.second = {nz.col_of[0], nz.col_of[1], nz.col_of[2], nz.col_of[j]};
        return r;
      }
    drop_rows.push_back(i);
  }

  const TropMatrix w = p.submatrix(keep_rows, keep_cols);
  BranchOutcome br = run_branches(w);
  PlacementResult res{br.witness ? PlacementResult::Kind::Yes : PlacementResult::Kind::No, std::nullopt,
                      br.explored, {}};
  if (!br.witness) return res;

  // Removed zero lines are tropical sums of the anchor lines.
  Factorization fp{TropMatrix(m, 3), TropMatrix(3, n)};
  for (std::size_t k = 0; k < keep_rows.size(); ++k)
    for (std::size_t t = 0; t < 3; ++t) fp.left(keep_rows[k], t) = br.witness->left(k, t);
  for (std::size_t i : drop_rows)
    for (std::size_t t = 0; t < 3; ++t)
      fp.left(i, t) = std::min({fp.left(0, t), fp.left(1, t), fp.left(2, t)});
  for (std::size_t k = 0; k < keep_cols.size(); ++k)
    for (std::size_t t = 0; t < 3; ++t) fp.right(t, keep_cols[k]) = br.witness->right(t, k);
  for (std::size_t j : drop_cols)
    for (std::size_t t = 0; t < 3; ++t)
      fp.right(t, j) = std::min({fp.right(t, 0), fp.right(t, 1), fp.right(t, 2)});
  if (!verify_product(p, fp)) throw std::logic_error("rank3: reinserted lines do not reproduce the matrix");

  Factorization f{TropMatrix(a.rows(), 3), TropMatrix(3, a.cols())};
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t t = 0; t < 3; ++t) f.left(nz.row_of[i], t) = fp.left(i, t);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t t = 0; t < 3; ++t) f.right(t, nz.col_of[j]) = fp.right(t, j);
  f = nz.scaling.unapply(f);
  if (!verify_product(a, f)) throw std::logic_error("rank3: unscaled witness does not reproduce the input");
  res.witness = std::move(f);
  return res;
}

}  // namespace

std::optional<Factorization> factor_rank_le2(const TropMatrix& a) {
  require_finite(a);
  for (std::size_t p = 0; p < a.cols(); ++p)
    for (std::size_t q = p; q < a.cols(); ++q)
      if (auto f = try_column_pair(a, p, q)) return f;
  return std::nullopt;
}

std::vector<Placement> fullrank_placements(const TropMatrix& a) {
  require_finite(a);
  std::vector<Placement> out;
  for_each_fullrank(a, [&](const Placement& p) {
    out.push_back(p);
    return true;
  });
  return out;
}

std::optional<Placement> find_fullrank_3x3(const TropMatrix& a) {
  require_finite(a);
  std::optional<Placement> out;
  for_each_fullrank(a, [&](const Placement& p) {
    out = p;
    return false;
  });
  return out;
}

std::optional<Factorization> decide_factor_rank_le3(const TropMatrix& a, Rank3Report* report) {
  require_finite(a);
  Rank3Report local;
  Rank3Report& rep = report ? *report : local;
  rep = Rank3Report{};

  std::optional<Factorization> result;
  bool decided = false;
  std::string last_unhandled;
  for_each_fullrank(a, [&](const Placement& pl) {
    ++rep.placements_tried;
    auto nz = normalize_anchor(a, pl);
    if (!nz) {
      last_unhandled = "anchor matches neither zero pattern after scaling";
      return true;
    }
    try {
      PlacementResult r = process_placement(a, *nz);
      rep.branches_explored += r.explored;
      rep.max_branches_per_placement = std::max(rep.max_branches_per_placement, r.explored);
      rep.placement = pl;
      rep.form = nz->form;
      if (r.kind == PlacementResult::Kind::Certificate) {
        rep.route = Rank3Report::Route::Certificate;
        rep.certificate = r.certificate;
      } else {
        rep.route = Rank3Report::Route::Branches;
        result = std::move(r.witness);
      }
      decided = true;
      return false;
    } catch (const UnhandledPattern& e) {
      last_unhandled = e.what();
      return true;
    }
  });
  if (decided) return result;
  if (rep.placements_tried > 0)
    throw UnhandledPattern("no full-rank placement could be processed: " + last_unhandled);

  rep.route = Rank3Report::Route::LowRank;
  if (auto f1 = factor_rank_le1(a)) return pad_inner(*f1, 3);
  if (auto f2 = factor_rank_le2(a)) return pad_inner(*f2, 3);
  throw std::logic_error("no full-rank 3x3 submatrix but no rank-2 factorization found");
}

TechminBounds techmin_candidates(const TropMatrix& p) {
  require_finite(p);
  TechminBounds out{std::vector<Rational>(p.rows()), std::vector<Rational>(p.cols())};
  for (std::size_t i = 0; i < p.rows(); ++i) {
    out.row_max[i] = entry(p, i, 0);
    for (std::size_t j = 1; j < p.cols(); ++j) out.row_max[i] = std::max(out.row_max[i], entry(p, i, j));
  }
  for (std::size_t j = 0; j < p.cols(); ++j) {
    out.col_max[j] = entry(p, 0, j);
    for (std::size_t i = 1; i < p.rows(); ++i) out.col_max[j] = std::max(out.col_max[j], entry(p, i, j));
  }
  return out;
}

}  // namespace troprank
