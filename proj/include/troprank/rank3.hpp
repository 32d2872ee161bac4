#pragma once

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "troprank/trop_matrix.hpp"

namespace troprank {

/// The normalized 3x3 anchor matches neither admissible zero pattern, or a
/// branch leaves an equation with more than one possible winning term.
class UnhandledPattern : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Placement {
  std::array<std::size_t, 3> rows;
  std::array<std::size_t, 3> cols;
};

/// Lexicographically first 3x3 submatrix of factor rank 3, or nullopt when
/// every 3x3 submatrix has factor rank <= 2 (then so does the matrix).
std::optional<Placement> find_fullrank_3x3(const TropMatrix& a);

/// All full-rank placements in lexicographic order.
std::vector<Placement> fullrank_placements(const TropMatrix& a);

/// Witness with inner dimension 2 iff the factor rank is at most 2.
/// Finite input. Tries every pair of columns as a basis.
std::optional<Factorization> factor_rank_le2(const TropMatrix& a);

struct Rank3Report {
  enum class Route { LowRank, Certificate, Branches };
  Route route = Route::LowRank;
  std::optional<Placement> placement;  // anchor actually used, original indices
  int form = 0;                         // 1: zero diagonal, 2: positive diagonal
  std::size_t branches_explored = 0;    // feasibility systems over all placements tried
  std::size_t max_branches_per_placement = 0;
  std::size_t placements_tried = 0;
  /// 4x4 rank certificate (original indices) when route == Certificate.
  std::optional<std::pair<std::array<std::size_t, 4>, std::array<std::size_t, 4>>> certificate;
};

/// Decide factor rank <= 3 of a finite matrix; witness has inner dimension 3.
/// Throws std::invalid_argument on +inf entries and UnhandledPattern if no
/// full-rank placement can be processed.
std::optional<Factorization> decide_factor_rank_le3(const TropMatrix& a, Rank3Report* report = nullptr);

/// Row maxima r_i and column maxima c_j of a finite matrix. If
/// min(u_i, v_j) = P_ij for all i, j then u = r or v = c.
struct TechminBounds {
  std::vector<Rational> row_max;
  std::vector<Rational> col_max;
};
TechminBounds techmin_candidates(const TropMatrix& p);

}  // namespace troprank
