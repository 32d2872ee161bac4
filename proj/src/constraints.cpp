#include "troprank/constraints.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>

namespace troprank {

void TwoVarSystem::check(std::size_t v) const {
  if (v >= num_vars_)
    throw std::out_of_range("variable id " + std::to_string(v) + " out of range (" +
                            std::to_string(num_vars_) + " variables)");
}

void TwoVarSystem::add(const TwoVarConstraint& c) {
  check(c.x);
  if (c.kind == TwoVarConstraint::Kind::SumAtLeast || c.kind == TwoVarConstraint::Kind::SumEqual)
    check(c.y);
  cons_.push_back(c);
}

void TwoVarSystem::at_least(std::size_t x, Rational c) { add({TwoVarConstraint::Kind::AtLeast, x, x, c}); }
void TwoVarSystem::equal(std::size_t x, Rational c) { add({TwoVarConstraint::Kind::Equal, x, x, c}); }
void TwoVarSystem::sum_at_least(std::size_t x, std::size_t y, Rational c) {
  add({TwoVarConstraint::Kind::SumAtLeast, x, y, c});
}
void TwoVarSystem::sum_equal(std::size_t x, std::size_t y, Rational c) {
  add({TwoVarConstraint::Kind::SumEqual, x, y, c});
}

namespace {

struct Edge {
  std::size_t from;
  std::size_t to;
  Rational w;
};

// X_u - X_v >= c  <=>  X_v <= X_u - c : shortest-path edge u -> v of weight -c.
void geq(std::vector<Edge>& e, std::size_t u, std::size_t v, const Rational& c) { e.push_back({u, v, -c}); }

}  // namespace

std::optional<std::vector<Rational>> solve_two_var(const TwoVarSystem& sys) {
  const std::size_t n = sys.num_vars();
  auto pos = [](std::size_t x) { return 2 * x; };
  auto neg = [](std::size_t x) { return 2 * x + 1; };
  std::vector<Edge> edges;
  for (const auto& c : sys.constraints()) {
    using K = TwoVarConstraint::Kind;
    switch (c.kind) {
      case K::AtLeast:
        geq(edges, pos(c.x), neg(c.x), c.c * 2);
        break;
      case K::Equal:
        geq(edges, pos(c.x), neg(c.x), c.c * 2);
        geq(edges, neg(c.x), pos(c.x), -c.c * 2);
        break;
      case K::SumAtLeast:
        geq(edges, pos(c.x), neg(c.y), c.c);
        geq(edges, pos(c.y), neg(c.x), c.c);
        break;
      case K::SumEqual:
        geq(edges, pos(c.x), neg(c.y), c.c);
        geq(edges, pos(c.y), neg(c.x), c.c);
        geq(edges, neg(c.y), pos(c.x), -c.c);
        geq(edges, neg(c.x), pos(c.y), -c.c);
        break;
    }
  }
  // Virtual source with zero edges to every node: start all distances at 0.
  const std::size_t nodes = 2 * n;
  std::vector<Rational> dist(nodes, Rational(0));
  bool changed = true;
  for (std::size_t round = 0; round <= nodes && changed; ++round) {
    changed = false;
    for (const auto& e : edges) {
      Rational cand = dist[e.from] + e.w;
      if (cand < dist[e.to]) {
        dist[e.to] = cand;
        changed = true;
      }
    }
  }
  if (changed) return std::nullopt;
  std::vector<Rational> x(n);
  for (std::size_t v = 0; v < n; ++v) x[v] = (dist[pos(v)] - dist[neg(v)]) / 2;
  return x;
}

bool satisfies(const TwoVarSystem& sys, const std::vector<Rational>& a) {
  if (a.size() != sys.num_vars()) return false;
  for (const auto& c : sys.constraints()) {
    using K = TwoVarConstraint::Kind;
    switch (c.kind) {
      case K::AtLeast:
        if (a[c.x] < c.c) return false;
        break;
      case K::Equal:
        if (a[c.x] != c.c) return false;
        break;
      case K::SumAtLeast:
        if (a[c.x] + a[c.y] < c.c) return false;
        break;
      case K::SumEqual:
        if (a[c.x] + a[c.y] != c.c) return false;
        break;
    }
  }
  return true;
}

namespace {

// sum coef[k] * x_k >= rhs
struct Row {
  std::vector<Rational> coef;
  Rational rhs;
};

}  // namespace

bool eliminate_oracle(const TwoVarSystem& sys) {
  const std::size_t n = sys.num_vars();
  std::vector<Row> rows;
  auto push = [&](std::vector<std::pair<std::size_t, int>> terms, Rational rhs, bool eq) {
    Row r{std::vector<Rational>(n), rhs};
    for (auto [v, s] : terms) r.coef[v] += Rational(s);
    rows.push_back(r);
    if (eq) {
      Row q{std::vector<Rational>(n), -rhs};
      for (std::size_t k = 0; k < n; ++k) q.coef[k] = -r.coef[k];
      rows.push_back(q);
    }
  };
  for (const auto& c : sys.constraints()) {
    using K = TwoVarConstraint::Kind;
    switch (c.kind) {
      case K::AtLeast: push({{c.x, 1}}, c.c, false); break;
      case K::Equal: push({{c.x, 1}}, c.c, true); break;
      case K::SumAtLeast: push({{c.x, 1}, {c.y, 1}}, c.c, false); break;
      case K::SumEqual: push({{c.x, 1}, {c.y, 1}}, c.c, true); break;
    }
  }

  for (std::size_t v = 0; v < n; ++v) {
    std::vector<Row> lower, upper, rest;
    for (auto& r : rows) {
      int s = r.coef[v].sign();
      if (s > 0) lower.push_back(r);
      else if (s < 0) upper.push_back(r);
      else rest.push_back(r);
    }
    for (const auto& lo : lower)
      for (const auto& up : upper) {
        // lo/a + up/b with a=lo.coef[v] > 0, b=-up.coef[v] > 0 cancels x_v
        Rational a = lo.coef[v], b = -up.coef[v];
        Row r{std::vector<Rational>(n), lo.rhs / a + up.rhs / b};
        for (std::size_t k = 0; k < n; ++k) r.coef[k] = lo.coef[k] / a + up.coef[k] / b;
        r.coef[v] = 0;
        rest.push_back(r);
      }
    // Normalize by the first nonzero magnitude and keep the tightest copy of each shape.
    std::map<std::vector<std::pair<std::int64_t, std::int64_t>>, Row> uniq;
    std::vector<Row> constants;
    for (auto& r : rest) {
      auto it = std::find_if(r.coef.begin(), r.coef.end(), [](const Rational& q) { return q.sign() != 0; });
      if (it == r.coef.end()) {
        if (r.rhs > 0) return false;
        continue;
      }
      Rational scale = it->abs();
      for (auto& q : r.coef) q /= scale;
      r.rhs /= scale;
      std::vector<std::pair<std::int64_t, std::int64_t>> key;
      for (const auto& q : r.coef) key.emplace_back(q.num(), q.den());
      auto [pos, inserted] = uniq.emplace(key, r);
      if (!inserted && pos->second.rhs < r.rhs) pos->second.rhs = r.rhs;
    }
    rows.clear();
    for (auto& [k, r] : uniq) rows.push_back(r);
  }
  for (const auto& r : rows)
    if (r.rhs > 0) return false;
  return true;
}

}  // namespace troprank
