#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "troprank/rational.hpp"

namespace troprank {

/// Linear constraint over at most two unknowns, unit coefficients.
struct TwoVarConstraint {
  enum class Kind { AtLeast, Equal, SumAtLeast, SumEqual };
  Kind kind;
  std::size_t x;
  std::size_t y;  // only meaningful for Sum* kinds; may equal x
  Rational c;
};

class TwoVarSystem {
 public:
  explicit TwoVarSystem(std::size_t num_vars = 0) : num_vars_(num_vars) {}

  std::size_t num_vars() const { return num_vars_; }
  std::size_t add_var() { return num_vars_++; }

  void at_least(std::size_t x, Rational c);          // x >= c
  void equal(std::size_t x, Rational c);             // x = c
  void sum_at_least(std::size_t x, std::size_t y, Rational c);  // x + y >= c
  void sum_equal(std::size_t x, std::size_t y, Rational c);     // x + y = c

  const std::vector<TwoVarConstraint>& constraints() const { return cons_; }
  void add(const TwoVarConstraint& c);

 private:
  void check(std::size_t v) const;

  std::size_t num_vars_;
  std::vector<TwoVarConstraint> cons_;
};

/// Feasibility with witness, or nullopt iff infeasible.
///
/// Each variable x is split into x+ and x- (x = (x+ - x-)/2), which turns
/// every constraint into a difference constraint; infeasibility is exactly a
/// positive cycle, found by Bellman-Ford relaxation.
std::optional<std::vector<Rational>> solve_two_var(const TwoVarSystem& sys);

/// Independent evaluator: does `assignment` satisfy every constraint exactly?
bool satisfies(const TwoVarSystem& sys, const std::vector<Rational>& assignment);

/// Fourier-Motzkin elimination on the same system. Exponential; test oracle only.
bool eliminate_oracle(const TwoVarSystem& sys);

}  // namespace troprank
