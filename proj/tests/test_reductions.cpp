#include <doctest.h>

#include <functional>
#include <random>
#include <sstream>

#include "test_util.hpp"
#include "troprank/matrix_io.hpp"
#include "troprank/oracle.hpp"
#include "troprank/reductions.hpp"

using namespace troprank;

namespace {

SsrefInstance two_singletons() { return SsrefInstance{{0, 2}, {{1}, {2}}}; }

// Upper-left 9x10 block as displayed, with G' written as "GP".
TropMatrix corner_display(std::int64_t gp) {
  std::string text =
      "9 10\n"
      "2 0 2 0 0 2 2 2 inf inf\n"
      "2 0 0 2 2 2 2 2 inf inf\n"
      "2 2 0 2 0 2 2 2 inf inf\n"
      "0 2 2 2 2 2 2 0 inf inf\n"
      "2 2 2 2 2 0 2 0 inf inf\n"
      "2 0 0 2 0 0 0 0 inf inf\n"
      "2 2 2 2 2 2 0 inf inf inf\n"
      "inf inf inf inf inf inf inf inf 0 inf\n"
      "inf inf inf inf inf inf inf GP inf 0\n";
  text.replace(text.find("GP"), 2, std::to_string(gp));
  return parse_matrix(text);
}

std::vector<std::size_t> range(std::size_t n) {
  std::vector<std::size_t> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = i;
  return v;
}

void for_each_split_instance(std::size_t max_n, std::size_t max_subsets,
                             const std::function<void(const SplitInstance&)>& fn) {
  for (std::size_t n = 1; n <= max_n; ++n) {
    const std::size_t masks = (std::size_t{1} << n) - 1;  // nonempty subsets 1..masks
    std::function<void(std::vector<std::size_t>&, std::size_t)> rec = [&](std::vector<std::size_t>& chosen,
                                                                        std::size_t from) {
      if (!chosen.empty()) {
        SplitInstance s{n, {}};
        for (std::size_t mask : chosen) {
          std::vector<std::size_t> sub;
          for (std::size_t e = 0; e < n; ++e)
            if (mask >> e & 1) sub.push_back(e + 1);
          s.subsets.push_back(sub);
        }
        fn(s);
      }
      if (chosen.size() == max_subsets) return;
      for (std::size_t mask = from; mask <= masks; ++mask) {
        chosen.push_back(mask);
        rec(chosen, mask);
        chosen.pop_back();
      }
    };
    std::vector<std::size_t> chosen;
    rec(chosen, 1);
  }
}

}  // namespace

TEST_CASE("set splitting to band form") {
  SsrefInstance a = split_to_ssref(SplitInstance{2, {{1, 2}}});
  CHECK(a.sigma == std::vector<std::int64_t>{0, 2});
  CHECK(a.blocks == std::vector<std::vector<std::int64_t>>{{1}, {2}});

  SsrefInstance b = split_to_ssref(SplitInstance{1, {{1}}});
  CHECK(b.sigma == std::vector<std::int64_t>{0, 1});
  CHECK(b.blocks == std::vector<std::vector<std::int64_t>>{{1}});

  SsrefInstance c = split_to_ssref(SplitInstance{4, {{1, 2}, {3, 4}}});
  CHECK(c.sigma == std::vector<std::int64_t>{0, 2, 4});
  CHECK(c.n() == 4);
  for (const auto& blk : c.blocks) CHECK(blk.size() == 1);
  CHECK(c.nu(3) == 3);
  CHECK(c.band_of(3) == 2);
}

TEST_CASE("instance validation") {
  CHECK_THROWS_AS(SplitInstance({2, {{1, 3}}}).validate(), std::invalid_argument);
  CHECK_THROWS_AS(SplitInstance({2, {{}}}).validate(), std::invalid_argument);
  CHECK_THROWS_AS(SsrefInstance({{0, 2}, {{1}, {1}}}).validate(), std::invalid_argument);
  CHECK_THROWS_AS(SsrefInstance({{0, 3, 2}, {{1, 2, 3}}}).validate(), std::invalid_argument);
  CHECK_NOTHROW(two_singletons().validate());
}

TEST_CASE("brute force on band form") {
  auto w = ssref_brute_force(two_singletons());
  REQUIRE(w);
  CHECK(w->side[0] != w->side[1]);
  CHECK_FALSE(ssref_brute_force(SsrefInstance{{0, 1, 3}, {{1, 2}, {3}}}));
  CHECK_FALSE(ssref_brute_force(SsrefInstance{{0, 2}, {{1, 2}}}));
}

TEST_CASE("gadget constants") {
  const SsrefInstance inst = two_singletons();
  CHECK(gadget_gamma(inst, 1) == 11);
  CHECK(gadget_gamma(inst, 2) == 21);
  CHECK(gadget_rho(inst, 1) == 21);
  const GammaRho g = gamma_rho(inst, 1, 1);
  CHECK(g.G == 42);
  CHECK_THROWS(gadget_gamma(inst, 3));
  CHECK_THROWS(gadget_rho(inst, 2));
}

TEST_CASE("gadget for two singletons") {
  const TropMatrix a = build_gadget(two_singletons());
  REQUIRE(a.rows() == 12);
  REQUIRE(a.cols() == 12);
  const std::size_t heart1 = 9 + 2, sharp1 = 10, sharp2 = 11, diamond1 = 9, natural8 = 7;
  CHECK(a(heart1, sharp1) == TropValue(10));
  CHECK(a(heart1, sharp2) == TropValue(19));
  CHECK(a(diamond1, natural8) == TropValue(-84));
  CHECK(a.submatrix(range(9), range(10)) == corner_display(-252));
  REQUIRE(a.row_labels.size() == 12);
  CHECK(a.row_labels[0] == "1♠");
  CHECK(a.col_labels[10] == "1♯");
}

TEST_CASE("gadget shape") {
  std::mt19937 rng(61);
  int built = 0;
  for_each_split_instance(3, 2, [&](const SplitInstance& s) {
    const SsrefInstance inst = split_to_ssref(s);
    if (!inst.admissible()) {
      CHECK_THROWS_AS(build_gadget(inst), NotAdmissible);
      return;
    }
    const TropMatrix a = build_gadget(inst);
    CHECK(a.rows() == static_cast<std::size_t>(inst.total()) - inst.m() + inst.n() + 9);
    CHECK(a.cols() == static_cast<std::size_t>(inst.total()) + 10);
    ++built;
  });
  CHECK(built > 10);
}

TEST_CASE("splitting witness for two singletons") {
  const SsrefInstance inst = two_singletons();
  auto w = ssref_brute_force(inst);
  REQUIRE(w);
  const Factorization f = witness_from_splitting(inst, *w);
  CHECK(f.inner_dim() == 8);
  CHECK(verify_product(build_gadget(inst), f));
  const TropMatrix b1 = parse_matrix(
      "9 8\n"
      "2 2 0 2 2 2 inf inf\n"
      "0 2 2 2 2 2 inf inf\n"
      "2 0 2 2 2 2 inf inf\n"
      "2 2 inf 0 2 2 inf inf\n"
      "inf inf inf inf 0 2 inf inf\n"
      "0 0 inf inf 0 0 inf inf\n"
      "inf inf inf inf inf 0 inf inf\n"
      "inf inf inf inf inf inf 0 inf\n"
      "inf inf inf inf inf inf inf 0\n");
  CHECK(f.left.submatrix(range(9), range(8)) == b1);
  for (std::size_t eta = 1; eta <= 2; ++eta)
    for (int chi = 1; chi <= 2; ++chi)
      CHECK((f.left(9 + eta - 1, static_cast<std::size_t>(chi - 1)) == TropValue(0)) == w->in_phi(eta, chi));
}

TEST_CASE("corner blocks multiply out") {
  for (auto [n, G] : std::vector<std::pair<std::size_t, std::int64_t>>{{1, 21}, {2, 42}, {3, 126}, {5, 21}}) {
    const TropMatrix prod = trop_mat_mul(witness_corner_left(), witness_corner_right(n, G));
    CHECK(prod == corner_display(-2 * static_cast<std::int64_t>(n + 1) * G));
  }
}

TEST_CASE("every splittable small instance yields a verifying witness") {
  int yes = 0, no = 0;
  for_each_split_instance(3, 3, [&](const SplitInstance& s) {
    const SsrefInstance inst = split_to_ssref(s);
    const bool split_yes = split_brute_force(s).has_value();
    auto w = ssref_brute_force(inst);
    CHECK(split_yes == w.has_value());
    if (!w) {
      ++no;
      return;
    }
    ++yes;
    CHECK(verify_product(build_gadget(inst), witness_from_splitting(inst, *w)));
  });
  CHECK(yes > 0);
  CHECK(no > 0);
}

TEST_CASE("border examples") {
  const TropValue I = kInf;
  CHECK(border(TropMatrix{{0}}) == TropMatrix{{0, I}, {I, 0}});
  const TropMatrix a(2, 3, 1);
  CHECK(border(a).rows() == 3);
  CHECK(border(a).cols() == 4);
  const Factorization f{TropMatrix{{0}, {0}}, TropMatrix{{1, 1, 1}}};
  CHECK(verify_product(border(a), border_factorization(f)));
}

TEST_CASE("border raises factor rank by one") {
  std::mt19937 rng(62);
  for (int trial = 0; trial < 30; ++trial) {
    const TropMatrix a = testutil::random_matrix(rng, testutil::uniform(rng, 1, 2), testutil::uniform(rng, 1, 3), 0, 4);
    CHECK(factor_rank_exact(border(a)) == factor_rank_exact(a) + 1);
  }
}

TEST_CASE("inf elimination examples") {
  const TropValue I = kInf;
  CHECK(eliminate_infinity(TropMatrix{{0, I}, {I, 0}}) == TropMatrix{{0, 1}, {1, 0}});
  const TropMatrix fin{{0, 3}, {2, 0}};
  CHECK(eliminate_infinity(fin) == fin);
  CHECK_THROWS_WITH_AS(eliminate_infinity(TropMatrix{{1, I}, {I, 0}}), doctest::Contains("scale_normalize"),
                       std::invalid_argument);
}

TEST_CASE("inf elimination preserves factor rank and transports witnesses") {
  std::mt19937 rng(63);
  for (int trial = 0; trial < 30; ++trial) {
    const TropMatrix a = scale_normalize(testutil::random_proper_matrix(rng, 3, 3, 0, 5, 35)).first;
    const TropMatrix e = eliminate_infinity(a);
    const std::size_t r = factor_rank_exact(a);
    CHECK(factor_rank_exact(e) == r);
    auto f = factor_rank_le_k(a, r);
    REQUIRE(f);
    const Factorization fe = eliminate_infinity_witness(a, *f);
    CHECK(verify_product(e, fe));
    CHECK(verify_product(a, restore_infinity(a, fe)));
  }
}

TEST_CASE("integerize example") {
  const TropMatrix target{{1, 0}, {2, 1}};
  const Factorization f{TropMatrix{{Rational(1, 2)}, {Rational(3, 2)}}, TropMatrix{{Rational(1, 2), Rational(-1, 2)}}};
  REQUIRE(verify_product(target, f));
  const Factorization g = integerize(target, f);
  CHECK(g.left == TropMatrix{{0}, {1}});
  CHECK(g.right == TropMatrix{{1, 0}});
  CHECK_THROWS(integerize(target, Factorization{TropMatrix{{0}, {0}}, TropMatrix{{0, 0}}}));
}

TEST_CASE("integerized witnesses are bounded") {
  std::mt19937 rng(64);
  for (int trial = 0; trial < 100; ++trial) {
    const TropMatrix a = testutil::random_matrix(rng, testutil::uniform(rng, 1, 3), testutil::uniform(rng, 1, 3), -6, 6);
    auto f = factor_rank_le_k(a, factor_rank_exact(a));
    REQUIRE(f);
    // shift each inner term by a random rational to leave the integers
    for (std::size_t t = 0; t < f->inner_dim(); ++t) {
      const Rational d = testutil::random_rational(rng, -5, 5);
      for (std::size_t i = 0; i < f->left.rows(); ++i)
        if (f->left(i, t).is_finite()) f->left(i, t) = f->left(i, t).value() + d;
      for (std::size_t j = 0; j < f->right.cols(); ++j)
        if (f->right(t, j).is_finite()) f->right(t, j) = f->right(t, j).value() - d;
    }
    REQUIRE(verify_product(a, *f));
    const Factorization g = integerize(a, *f);
    CHECK(verify_product(a, g));
    Rational g_max = a(0, 0).value(), l_min = a(0, 0).value();
    for (std::size_t i = 0; i < a.rows(); ++i)
      for (std::size_t j = 0; j < a.cols(); ++j) {
        g_max = std::max(g_max, a(i, j).value());
        l_min = std::min(l_min, a(i, j).value());
      }
    const Rational h = g_max.abs() + l_min.abs();
    for (const TropMatrix* m : {&g.left, &g.right})
      for (std::size_t i = 0; i < m->rows(); ++i)
        for (std::size_t j = 0; j < m->cols(); ++j) {
          REQUIRE((*m)(i, j).is_finite());
          CHECK((*m)(i, j).value().is_integer());
          CHECK((*m)(i, j).value().abs() <= h);
        }
  }
}

TEST_CASE("finitize keeps the product") {
  const TropValue I = kInf;
  const TropMatrix target{{0, 1}, {1, 0}};
  const Factorization f{TropMatrix{{0, I}, {I, 0}}, TropMatrix{{0, 1}, {1, 0}}};
  REQUIRE(verify_product(target, f));
  const Factorization g = finitize(target, f);
  CHECK_FALSE(g.left.has_infinity());
  CHECK(verify_product(target, g));
}

TEST_CASE("pipeline for larger inner dimension") {
  const SsrefInstance inst = two_singletons();
  const TropMatrix a8 = gadget_for_k(inst, 8);
  CHECK(a8.rows() == 12);
  CHECK_FALSE(a8.has_infinity());
  const TropMatrix a9 = gadget_for_k(inst, 9);
  CHECK(a9.rows() == 13);
  CHECK(a9.cols() == 13);
  CHECK_THROWS(gadget_for_k(inst, 7));
  auto w = ssref_brute_force(inst);
  REQUIRE(w);
  for (std::size_t k = 8; k <= 10; ++k) {
    auto [a, f] = gadget_for_k_with_witness(inst, k, *w);
    CHECK(a == gadget_for_k(inst, k));
    CHECK(f.inner_dim() == k);
    CHECK_FALSE(f.left.has_infinity());
    CHECK(verify_product(a, f));
  }
}

TEST_CASE("non-admissible instances are trivially no") {
  const SsrefInstance bad{{0, 1, 3}, {{1, 2}, {3}}};
  CHECK_FALSE(bad.admissible());
  CHECK_THROWS_AS(build_gadget(bad), NotAdmissible);
  CHECK(reduce_ssref(bad, 8).trivially_no);
  const GadgetOutcome ok = reduce_ssref(two_singletons(), 8);
  CHECK_FALSE(ok.trivially_no);
  CHECK(ok.matrix.has_value());
}

TEST_CASE("instance text formats") {
  std::istringstream split_in("3 2\n1 2\n2 3\n");
  const SplitInstance s = read_split_instance(split_in);
  CHECK(s.n == 3);
  CHECK(s.subsets == std::vector<std::vector<std::size_t>>{{1, 2}, {2, 3}});

  const SsrefInstance inst = split_to_ssref(s);
  std::ostringstream out;
  write_ssref_instance(out, inst);
  std::istringstream back(out.str());
  const SsrefInstance again = read_ssref_instance(back);
  CHECK(again.sigma == inst.sigma);
  CHECK(again.blocks == inst.blocks);

  std::istringstream bad("2 1\n1 5\n");
  CHECK_THROWS(read_split_instance(bad));
}
