#pragma once

#include <cstdint>
#include <vector>

#include "troprank/trop_matrix.hpp"

namespace troprank {

/// (nu+6) x (nu+6) matrix of factor rank > 4 whose nu x nu minors all have
/// factor rank <= 4. Requires nu >= 2.
TropMatrix gen_cnu(std::int64_t nu);

/// Rank-4 factorization of gen_cnu(nu) with column mu (1-based, 1..nu+1) removed.
Factorization deleted_column_witness(std::int64_t nu, std::int64_t mu);

struct MinorCheckReport {
  std::int64_t nu = 0;
  std::vector<bool> per_mu;  // index mu-1
  std::size_t samples = 0;
  std::size_t samples_passed = 0;

  bool all_passed() const;
};

/// Verifies every deleted-column witness and, for `samples` random nu x nu
/// submatrices, the restriction of a witness that omits one of their columns.
MinorCheckReport minor_rank_le4_check(std::int64_t nu, std::size_t samples = 0, std::uint64_t seed = 1);

/// gen_cnu bordered k-4 times, scaled and inf-eliminated; k = 4 returns gen_cnu unchanged.
TropMatrix gen_family(std::size_t k, std::int64_t nu);

}  // namespace troprank
