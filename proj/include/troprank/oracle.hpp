#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "troprank/constraints.hpp"
#include "troprank/trop_matrix.hpp"

namespace troprank {

class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct OracleOptions {
  /// Upper bound on the nominal number of winner patterns.
  std::uint64_t budget = 10'000'000;
};

/// winner[i][j] = index of the inner term attaining A_ij.
struct WinnerPattern {
  std::vector<std::vector<std::size_t>> winner;
};

/// System for a fixed pattern on a finite matrix. Variable b(i,t) is i*k+t,
/// c(t,j) is m*k + t*n + j.
TwoVarSystem build_pattern_system(const TropMatrix& a, std::size_t k, const WinnerPattern& p);

/// Nominal pattern count used for the budget check (saturates at UINT64_MAX).
std::uint64_t nominal_patterns(const TropMatrix& a, std::size_t k);

/// Exhaustive decision of factor rank <= k with a witness.
///
/// Infinite entries are allowed. Every inner term t is supported on a
/// rectangle of finite cells; the search enumerates covers of the finite
/// support by k maximal rectangles and, for each, winner patterns in
/// row-major order with per-term feasibility checked as cells are assigned.
std::optional<Factorization> factor_rank_le_k(const TropMatrix& a, std::size_t k,
                                              const OracleOptions& opt = {});

/// Least k with factor_rank_le_k nonempty. An all-inf matrix has rank 1 here.
std::size_t factor_rank_exact(const TropMatrix& a, const OracleOptions& opt = {});

}  // namespace troprank
