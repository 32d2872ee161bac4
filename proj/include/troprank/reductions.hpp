#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "troprank/trop_matrix.hpp"

namespace troprank {

/// SET SPLITTING: ground set {1..n}, family of nonempty subsets.
struct SplitInstance {
  std::size_t n = 0;
  std::vector<std::vector<std::size_t>> subsets;  // 1-based elements

  void validate() const;
};

/// Band-structured form: breakpoints 0 = sigma_0 <= ... <= sigma_m and blocks
/// R_1..R_n partitioning {1..sigma_m}.
struct SsrefInstance {
  std::vector<std::int64_t> sigma;               // sigma_0 .. sigma_m
  std::vector<std::vector<std::int64_t>> blocks;  // R_1 .. R_n

  std::size_t m() const { return sigma.empty() ? 0 : sigma.size() - 1; }
  std::size_t n() const { return blocks.size(); }
  std::int64_t total() const { return sigma.empty() ? 0 : sigma.back(); }

  /// Throws std::invalid_argument describing the first violated invariant.
  void validate() const;
  /// |sigma_i - sigma_j| < 2 only for i = j.
  bool admissible() const;
  /// Block index (1-based) containing u.
  std::size_t nu(std::int64_t u) const;
  /// Band index mu with sigma_{mu-1} < u <= sigma_mu.
  std::size_t band_of(std::int64_t u) const;
};

/// A split of the blocks: side[eta-1] is 1 or 2. H[mu-1] is the greatest
/// element of band mu whose block lies opposite to the block of sigma_mu.
struct SplittingWitness {
  std::vector<int> side;
  std::vector<std::int64_t> H;

  bool in_phi(std::size_t eta, int chi) const { return side.at(eta - 1) == chi; }
};

class NotAdmissible : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

SsrefInstance split_to_ssref(const SplitInstance& s);

/// Assignment side[i] in {1,2} with no monochromatic subset, by 2^n enumeration.
std::optional<std::vector<int>> split_brute_force(const SplitInstance& s);

/// Completes `side` into a witness; nullopt if some band is monochromatic.
std::optional<SplittingWitness> make_witness(const SsrefInstance& inst, const std::vector<int>& side);

std::optional<SplittingWitness> ssref_brute_force(const SsrefInstance& inst);

struct GammaRho {
  std::int64_t gamma;
  std::int64_t rho;
  std::int64_t G;
};
std::int64_t gadget_gamma(const SsrefInstance& inst, std::int64_t u);
std::int64_t gadget_rho(const SsrefInstance& inst, std::int64_t v);
GammaRho gamma_rho(const SsrefInstance& inst, std::int64_t u, std::int64_t v);

/// The fixed 9x10 corner of the gadget, with G' = -2(n+1)G.
TropMatrix gadget_corner(std::size_t n, std::int64_t G);
/// The matching 9x8 and 8x10 witness corners.
TropMatrix witness_corner_left();
TropMatrix witness_corner_right(std::size_t n, std::int64_t G);

/// Gadget matrix of shape (sigma-m+n+9) x (sigma+10) over R u {inf}.
TropMatrix build_gadget(const SsrefInstance& inst);

/// Inner-dimension-8 factorization of build_gadget(inst).
Factorization witness_from_splitting(const SsrefInstance& inst, const SplittingWitness& w);

/// Append a row and column of inf with a 0 corner. Raises factor rank by one.
TropMatrix border(const TropMatrix& a);
Factorization border_factorization(const Factorization& f);

/// Replace inf by 2g+1 (g the largest finite entry). Rows and columns must have minimum 0.
TropMatrix eliminate_infinity(const TropMatrix& a);
/// Carry a factorization of `a` to one of eliminate_infinity(a): B' = E (x) B.
Factorization eliminate_infinity_witness(const TropMatrix& a, const Factorization& f);
/// Carry a factorization of eliminate_infinity(a) back to one of `a`.
Factorization restore_infinity(const TropMatrix& a, const Factorization& f);

/// Replace inf entries of the factors by a finite value large enough that the
/// product (a finite matrix) is unchanged.
Factorization finitize(const TropMatrix& target, const Factorization& f);

/// Integer factorization with entries in [-h, h], h = |max| + |min| of target.
Factorization integerize(const TropMatrix& target, const Factorization& f);

/// Gadget for inner dimension k >= 8: bordered k-8 times, scaled, inf eliminated.
TropMatrix gadget_for_k(const SsrefInstance& inst, std::size_t k);
/// Same matrix together with the transported yes-witness (inner dimension k).
std::pair<TropMatrix, Factorization> gadget_for_k_with_witness(const SsrefInstance& inst, std::size_t k,
                                                               const SplittingWitness& w);

/// Non-admissible instances have answer "no" without a gadget.
struct GadgetOutcome {
  bool trivially_no = false;
  std::optional<TropMatrix> matrix;
};
GadgetOutcome reduce_ssref(const SsrefInstance& inst, std::size_t k);

/// Text formats. Split: "n m" then m subset lines. Ssref: "m n", the
/// sigma_1..sigma_m line, then n block lines (possibly empty).
SplitInstance read_split_instance(std::istream& in);
SsrefInstance read_ssref_instance(std::istream& in);
void write_ssref_instance(std::ostream& out, const SsrefInstance& inst);

}  // namespace troprank
