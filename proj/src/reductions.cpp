#include "troprank/reductions.hpp"

#include <algorithm>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

#include "troprank/matrix_io.hpp"

namespace troprank {

void SplitInstance::validate() const {
  if (n == 0) throw std::invalid_argument("ground set must be nonempty");
  for (std::size_t k = 0; k < subsets.size(); ++k) {
    if (subsets[k].empty()) throw std::invalid_argument("subset " + std::to_string(k + 1) + " is empty");
    for (std::size_t e : subsets[k])
      if (e < 1 || e > n)
        throw std::invalid_argument("subset " + std::to_string(k + 1) + " has element " + std::to_string(e) +
                                    " outside 1.." + std::to_string(n));
  }
}

void SsrefInstance::validate() const {
  if (sigma.size() < 2) throw std::invalid_argument("need at least one breakpoint");
  if (sigma[0] != 0) throw std::invalid_argument("sigma_0 must be 0");
  for (std::size_t i = 1; i < sigma.size(); ++i)
    if (sigma[i] < sigma[i - 1]) throw std::invalid_argument("breakpoints must be nondecreasing");
  if (blocks.empty()) throw std::invalid_argument("need at least one block");
  std::vector<int> seen(static_cast<std::size_t>(total()) + 1, 0);
  for (std::size_t b = 0; b < blocks.size(); ++b)
    for (std::int64_t u : blocks[b]) {
      if (u < 1 || u > total())
        throw std::invalid_argument("block " + std::to_string(b + 1) + " has element " + std::to_string(u) +
                                    " outside 1.." + std::to_string(total()));
      if (seen[static_cast<std::size_t>(u)]++)
        throw std::invalid_argument("element " + std::to_string(u) + " appears in two blocks");
    }
  for (std::int64_t u = 1; u <= total(); ++u)
    if (!seen[static_cast<std::size_t>(u)])
      throw std::invalid_argument("element " + std::to_string(u) + " is in no block");
}

bool SsrefInstance::admissible() const {
  for (std::size_t i = 0; i < sigma.size(); ++i)
    for (std::size_t j = i + 1; j < sigma.size(); ++j)
      if (std::abs(sigma[i] - sigma[j]) < 2) return false;
  return true;
}

std::size_t SsrefInstance::nu(std::int64_t u) const {
  for (std::size_t b = 0; b < blocks.size(); ++b)
    if (std::find(blocks[b].begin(), blocks[b].end(), u) != blocks[b].end()) return b + 1;
  throw std::out_of_range("element " + std::to_string(u) + " is in no block");
}

std::size_t SsrefInstance::band_of(std::int64_t u) const {
  for (std::size_t mu = 1; mu < sigma.size(); ++mu)
    if (sigma[mu - 1] < u && u <= sigma[mu]) return mu;
  throw std::out_of_range("element " + std::to_string(u) + " is in no band");
}

SsrefInstance split_to_ssref(const SplitInstance& s) {
  s.validate();
  SsrefInstance out;
  out.sigma.push_back(0);
  out.blocks.assign(s.n, {});
  std::int64_t next = 1;
  for (const auto& sub : s.subsets) {
    std::set<std::size_t> elems(sub.begin(), sub.end());
    for (std::size_t e : elems) out.blocks[e - 1].push_back(next++);
    out.sigma.push_back(next - 1);
  }
  return out;
}

std::optional<std::vector<int>> split_brute_force(const SplitInstance& s) {
  s.validate();
  if (s.n > 20) throw std::invalid_argument("split_brute_force: n > 20");
  for (std::uint32_t mask = 0; mask < (1u << s.n); ++mask) {
    bool ok = true;
    for (const auto& sub : s.subsets) {
      bool one = false, two = false;
      for (std::size_t e : sub) (mask >> (e - 1) & 1 ? two : one) = true;
      ok = ok && one && two;
    }
    if (!ok) continue;
    std::vector<int> side(s.n);
    for (std::size_t i = 0; i < s.n; ++i) side[i] = (mask >> i & 1) ? 2 : 1;
    return side;
  }
  return std::nullopt;
}

std::optional<SplittingWitness> make_witness(const SsrefInstance& inst, const std::vector<int>& side) {
  if (side.size() != inst.n()) throw std::invalid_argument("split has wrong number of blocks");
  SplittingWitness w{side, {}};
  for (std::size_t mu = 1; mu <= inst.m(); ++mu) {
    const std::int64_t lo = inst.sigma[mu - 1] + 1, hi = inst.sigma[mu];
    if (lo > hi) return std::nullopt;
    const int last = side[inst.nu(hi) - 1];
    std::optional<std::int64_t> h;
    for (std::int64_t u = hi; u >= lo && !h; --u)
      if (side[inst.nu(u) - 1] != last) h = u;
    if (!h) return std::nullopt;
    w.H.push_back(*h);
  }
  return w;
}

std::optional<SplittingWitness> ssref_brute_force(const SsrefInstance& inst) {
  inst.validate();
  if (inst.n() > 20) throw std::invalid_argument("ssref_brute_force: n > 20");
  for (std::uint32_t mask = 0; mask < (1u << inst.n()); ++mask) {
    std::vector<int> side(inst.n());
    for (std::size_t i = 0; i < inst.n(); ++i) side[i] = (mask >> i & 1) ? 2 : 1;
    if (auto w = make_witness(inst, side)) return w;
  }
  return std::nullopt;
}

std::int64_t gadget_gamma(const SsrefInstance& inst, std::int64_t u) {
  if (u < 1 || u > inst.total()) throw std::out_of_range("u out of range 1.." + std::to_string(inst.total()));
  std::int64_t lambda = 0;
  for (std::size_t l = 0; l < inst.sigma.size(); ++l)
    if (u >= inst.sigma[l]) lambda = static_cast<std::int64_t>(l);
  return 20 * u - 10 * lambda - 9;
}

std::int64_t gadget_rho(const SsrefInstance& inst, std::int64_t v) {
  const std::int64_t hearts = inst.total() - static_cast<std::int64_t>(inst.m());
  if (v < 1 || v > hearts) throw std::out_of_range("v out of range 1.." + std::to_string(hearts));
  std::int64_t mu = 0;
  for (std::size_t k = 0; k < inst.sigma.size(); ++k)
    if (v > inst.sigma[k] - static_cast<std::int64_t>(k)) mu = static_cast<std::int64_t>(k);
  return 20 * v + 10 * mu + 1;
}

GammaRho gamma_rho(const SsrefInstance& inst, std::int64_t u, std::int64_t v) {
  return {gadget_gamma(inst, u), gadget_rho(inst, v), 21 * inst.total()};
}

TropMatrix gadget_corner(std::size_t n, std::int64_t G) {
  const TropValue I = kInf;
  const TropValue Gp = -2 * static_cast<std::int64_t>(n + 1) * G;
  return TropMatrix{
      {2, 0, 2, 0, 0, 2, 2, 2, I, I},
      {2, 0, 0, 2, 2, 2, 2, 2, I, I},
      {2, 2, 0, 2, 0, 2, 2, 2, I, I},
      {0, 2, 2, 2, 2, 2, 2, 0, I, I},
      {2, 2, 2, 2, 2, 0, 2, 0, I, I},
      {2, 0, 0, 2, 0, 0, 0, 0, I, I},
      {2, 2, 2, 2, 2, 2, 0, I, I, I},
      {I, I, I, I, I, I, I, I, 0, I},
      {I, I, I, I, I, I, I, Gp, I, 0},
  };
}

TropMatrix witness_corner_left() {
  const TropValue I = kInf;
  return TropMatrix{
      {2, 2, 0, 2, 2, 2, I, I},
      {0, 2, 2, 2, 2, 2, I, I},
      {2, 0, 2, 2, 2, 2, I, I},
      {2, 2, I, 0, 2, 2, I, I},
      {I, I, I, I, 0, 2, I, I},
      {0, 0, I, I, 0, 0, I, I},
      {I, I, I, I, I, 0, I, I},
      {I, I, I, I, I, I, 0, I},
      {I, I, I, I, I, I, I, 0},
  };
}

TropMatrix witness_corner_right(std::size_t n, std::int64_t G) {
  const TropValue I = kInf;
  const TropValue Gp = -2 * static_cast<std::int64_t>(n + 1) * G;
  return TropMatrix{
      {2, 0, 0, 2, 2, 2, 2, I, I, I},
      {2, 2, 0, 2, 0, 2, 2, I, I, I},
      {2, 0, 2, 0, 0, 2, 2, I, I, I},
      {0, 2, 2, 2, 2, 2, 2, 0, I, I},
      {2, 2, 2, 2, 2, 0, 2, 0, I, I},
      {2, 2, 2, 2, 2, 2, 0, I, I, I},
      {I, I, I, I, I, I, I, I, 0, I},
      {I, I, I, I, I, I, I, Gp, I, 0},
  };
}

namespace {

struct Layout {
  std::size_t n;
  std::int64_t hearts;
  std::int64_t sig;
  std::size_t rows() const { return 9 + n + static_cast<std::size_t>(hearts); }
  std::size_t cols() const { return 10 + static_cast<std::size_t>(sig); }
  std::size_t spade(std::size_t r) const { return r - 1; }
  std::size_t diamond(std::size_t eta) const { return 9 + eta - 1; }
  std::size_t heart(std::int64_t v) const { return 9 + n + static_cast<std::size_t>(v - 1); }
  std::size_t natural(std::size_t c) const { return c - 1; }
  std::size_t sharp(std::int64_t u) const { return 10 + static_cast<std::size_t>(u - 1); }
};

Layout layout_of(const SsrefInstance& inst) {
  return {inst.n(), inst.total() - static_cast<std::int64_t>(inst.m()), inst.total()};
}

void label(TropMatrix& a, const Layout& L) {
  for (std::size_t r = 1; r <= 9; ++r) a.row_labels.push_back(std::to_string(r) + "♠");
  for (std::size_t e = 1; e <= L.n; ++e) a.row_labels.push_back(std::to_string(e) + "♦");
  for (std::int64_t v = 1; v <= L.hearts; ++v) a.row_labels.push_back(std::to_string(v) + "♥");
  for (std::size_t c = 1; c <= 10; ++c) a.col_labels.push_back(std::to_string(c) + "♮");
  for (std::int64_t u = 1; u <= L.sig; ++u) a.col_labels.push_back(std::to_string(u) + "♯");
}

bool starts_band(const SsrefInstance& inst, std::int64_t u) {
  for (std::size_t mu = 1; mu <= inst.m(); ++mu)
    if (u == inst.sigma[mu - 1] + 1) return true;
  return false;
}

std::int64_t spade5(const SsrefInstance& inst, std::int64_t u) {
  return starts_band(inst, u) ? 10 * u + 1 : 10 * u - 3;
}

std::int64_t iabs(std::int64_t x) { return x < 0 ? -x : x; }

}  // namespace

TropMatrix build_gadget(const SsrefInstance& inst) {
  inst.validate();
  if (!inst.admissible())
    throw NotAdmissible("breakpoints closer than 2: the answer is trivially no and no gadget is defined");
  const Layout L = layout_of(inst);
  const std::int64_t G = 21 * L.sig;
  const std::int64_t n = static_cast<std::int64_t>(L.n);
  TropMatrix a(L.rows(), L.cols(), kInf);
  label(a, L);

  // hearts x sharps
  for (std::int64_t v = 1; v <= L.hearts; ++v)
    for (std::int64_t u = 1; u <= L.sig; ++u) {
      bool corner = false;
      for (std::size_t mu = 1; mu <= inst.m(); ++mu)
        if (u == v + static_cast<std::int64_t>(mu) && u == inst.sigma[mu]) corner = true;
      const std::int64_t diag = 10 * (u + v) - (corner ? 11 : 10);
      a(L.heart(v), L.sharp(u)) = std::min({gadget_gamma(inst, u), gadget_rho(inst, v), diag});
    }
  // diamonds x sharps
  for (std::size_t eta = 1; eta <= L.n; ++eta)
    for (std::int64_t u = 1; u <= L.sig; ++u) {
      const std::int64_t d = iabs(static_cast<std::int64_t>(eta) - static_cast<std::int64_t>(inst.nu(u)));
      a(L.diamond(eta), L.sharp(u)) = std::min(gadget_gamma(inst, u), G - 2 * G * d);
    }
  // hearts x naturals
  for (std::int64_t v = 1; v <= L.hearts; ++v) {
    for (std::size_t t = 1; t <= 6; ++t) a(L.heart(v), L.natural(t)) = 2;
    a(L.heart(v), L.natural(7)) = 0;
    a(L.heart(v), L.natural(8)) = gadget_rho(inst, v);
  }
  // diamonds x naturals
  for (std::size_t e = 1; e <= L.n; ++e) {
    const std::int64_t eta = static_cast<std::int64_t>(e);
    for (std::size_t t : {1, 6, 7}) a(L.diamond(e), L.natural(t)) = 2;
    for (std::size_t t : {2, 3, 4, 5}) a(L.diamond(e), L.natural(t)) = 0;
    a(L.diamond(e), L.natural(8)) = -2 * eta * G;
    a(L.diamond(e), L.natural(9)) = 2 * eta * G;
    a(L.diamond(e), L.natural(10)) = 2 * (n + 1 - eta) * G;
  }
  // spades x sharps
  for (std::int64_t u = 1; u <= L.sig; ++u) {
    const std::int64_t nu = static_cast<std::int64_t>(inst.nu(u));
    for (std::size_t r : {1, 2, 3}) a(L.spade(r), L.sharp(u)) = 2;
    a(L.spade(4), L.sharp(u)) = 0;
    a(L.spade(5), L.sharp(u)) = spade5(inst, u);
    a(L.spade(6), L.sharp(u)) = 10 * u - 3;
    a(L.spade(7), L.sharp(u)) = gadget_gamma(inst, u);
    a(L.spade(8), L.sharp(u)) = -2 * G * nu + G;
    a(L.spade(9), L.sharp(u)) = -2 * G * (n + 1 - nu) + G;
  }
  // spades x naturals
  const TropMatrix corner = gadget_corner(L.n, G);
  for (std::size_t r = 0; r < 9; ++r)
    for (std::size_t c = 0; c < 10; ++c) a(r, c) = corner(r, c);
  return a;
}

Factorization witness_from_splitting(const SsrefInstance& inst, const SplittingWitness& w) {
  inst.validate();
  if (!inst.admissible()) throw NotAdmissible("breakpoints closer than 2");
  if (w.side.size() != inst.n() || w.H.size() != inst.m())
    throw std::invalid_argument("witness does not match the instance");
  auto check = make_witness(inst, w.side);
  if (!check || check->H != w.H) throw std::invalid_argument("invalid splitting witness");

  const Layout L = layout_of(inst);
  const std::int64_t G = 21 * L.sig;
  const std::int64_t n = static_cast<std::int64_t>(L.n);
  Factorization f{TropMatrix(L.rows(), 8, kInf), TropMatrix(8, L.cols(), kInf)};
  TropMatrix& B = f.left;
  TropMatrix& C = f.right;

  // B1
  const TropMatrix bl = witness_corner_left();
  for (std::size_t r = 0; r < 9; ++r)
    for (std::size_t t = 0; t < 8; ++t) B(r, t) = bl(r, t);
  // B2
  for (std::size_t e = 1; e <= L.n; ++e) {
    const std::int64_t eta = static_cast<std::int64_t>(e);
    for (int chi = 1; chi <= 2; ++chi) B(L.diamond(e), chi - 1) = w.in_phi(e, chi) ? TropValue(0) : kInf;
    B(L.diamond(e), 2) = 0;
    B(L.diamond(e), 5) = 2;
    B(L.diamond(e), 6) = 2 * eta * G;
    B(L.diamond(e), 7) = 2 * (n + 1 - eta) * G;
  }
  // B3
  for (std::int64_t v = 1; v <= L.hearts; ++v) {
    B(L.heart(v), 3) = gadget_rho(inst, v);
    B(L.heart(v), 4) = gadget_rho(inst, v);
    B(L.heart(v), 5) = 0;
  }
  // B4, B5
  for (std::size_t mu = 1; mu <= inst.m(); ++mu) {
    const std::int64_t m_ = static_cast<std::int64_t>(mu);
    const std::int64_t pivot = w.H[mu - 1] - m_ + 1;
    const bool h_side1 = w.in_phi(inst.nu(w.H[mu - 1]), 1);
    for (std::int64_t g = inst.sigma[mu - 1] - m_ + 2; g <= inst.sigma[mu] - m_; ++g)
      for (int chi = 1; chi <= 2; ++chi) {
        std::int64_t val;
        if (g < pivot) val = 10 * g - 7;
        else if (g > pivot) val = 10 * g - 8;
        else val = (h_side1 == (chi == 1)) ? 10 * g - 8 : 10 * g - 7;
        B(L.heart(g), chi - 1) = val;
      }
  }

  // C1
  const TropMatrix cr = witness_corner_right(L.n, G);
  for (std::size_t t = 0; t < 8; ++t)
    for (std::size_t c = 0; c < 10; ++c) C(t, c) = cr(t, c);
  // C2
  for (std::int64_t u = 1; u <= L.sig; ++u) {
    const std::int64_t nu = static_cast<std::int64_t>(inst.nu(u));
    C(2, L.sharp(u)) = gadget_gamma(inst, u);
    C(3, L.sharp(u)) = 0;
    C(4, L.sharp(u)) = spade5(inst, u);
    C(5, L.sharp(u)) = gadget_gamma(inst, u);
    C(6, L.sharp(u)) = -2 * nu * G + G;
    C(7, L.sharp(u)) = -2 * (n + 1 - nu) * G + G;
  }
  // C3
  for (std::int64_t h = 1; h <= L.sig; ++h) {
    const std::size_t mu = inst.band_of(h);
    const std::int64_t Hm = w.H[mu - 1];
    for (int chi = 1; chi <= 2; ++chi) {
      std::int64_t val;
      if (w.in_phi(inst.nu(h), chi)) val = gadget_gamma(inst, h);
      else if (Hm < h && h < inst.sigma[mu]) val = 10 * h - 2;
      else val = 10 * h - 3;
      C(chi - 1, L.sharp(h)) = val;
    }
  }
  label(B, L);
  B.col_labels.clear();
  label(C, L);
  C.row_labels.clear();
  return f;
}

TropMatrix border(const TropMatrix& a) {
  TropMatrix out(a.rows() + 1, a.cols() + 1, kInf);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j);
  out(a.rows(), a.cols()) = 0;
  return out;
}

Factorization border_factorization(const Factorization& f) {
  return {border(f.left), border(f.right)};
}

namespace {

Rational largest_finite(const TropMatrix& a) {
  std::optional<Rational> g;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (a(i, j).is_finite() && (!g || a(i, j).value() > *g)) g = a(i, j).value();
  if (!g) throw std::invalid_argument("matrix has no finite entry");
  return *g;
}

void require_min_zero(const TropMatrix& a) {
  for (std::size_t i = 0; i < a.rows(); ++i) {
    TropValue mn = kInf;
    for (std::size_t j = 0; j < a.cols(); ++j) mn = oplus(mn, a(i, j));
    if (mn != TropValue(0))
      throw std::invalid_argument("row " + std::to_string(i + 1) +
                                  " does not have minimum 0; apply scale_normalize first");
  }
  for (std::size_t j = 0; j < a.cols(); ++j) {
    TropValue mn = kInf;
    for (std::size_t i = 0; i < a.rows(); ++i) mn = oplus(mn, a(i, j));
    if (mn != TropValue(0))
      throw std::invalid_argument("column " + std::to_string(j + 1) +
                                  " does not have minimum 0; apply scale_normalize first");
  }
}

}  // namespace

TropMatrix eliminate_infinity(const TropMatrix& a) {
  const Rational g = largest_finite(a);
  require_min_zero(a);
  TropMatrix out = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (a(i, j).is_inf()) out(i, j) = g * 2 + 1;
  return out;
}

Factorization eliminate_infinity_witness(const TropMatrix& a, const Factorization& f) {
  const Rational g = largest_finite(a);
  require_min_zero(a);
  TropMatrix e(a.rows(), a.rows(), g * 2 + 1);
  for (std::size_t i = 0; i < a.rows(); ++i) e(i, i) = 0;
  Factorization out{trop_mat_mul(e, f.left), f.right};
  if (!verify_product(eliminate_infinity(a), out))
    throw std::invalid_argument("factorization does not reproduce the matrix");
  return out;
}

Factorization restore_infinity(const TropMatrix& a, const Factorization& f) {
  const Rational g = largest_finite(a);
  require_min_zero(a);
  Factorization out = f;
  for (std::size_t t = 0; t < out.inner_dim(); ++t) {
    TropValue mn = kInf;
    for (std::size_t i = 0; i < out.left.rows(); ++i) mn = oplus(mn, out.left(i, t));
    if (mn.is_inf()) continue;
    for (std::size_t i = 0; i < out.left.rows(); ++i)
      if (out.left(i, t).is_finite()) out.left(i, t) = out.left(i, t).value() - mn.value();
    for (std::size_t j = 0; j < out.right.cols(); ++j)
      if (out.right(t, j).is_finite()) out.right(t, j) = out.right(t, j).value() + mn.value();
  }
  for (TropMatrix* m : {&out.left, &out.right})
    for (std::size_t i = 0; i < m->rows(); ++i)
      for (std::size_t j = 0; j < m->cols(); ++j)
        if ((*m)(i, j).is_finite() && (*m)(i, j).value() > g) (*m)(i, j) = kInf;
  if (!verify_product(a, out)) throw std::invalid_argument("factorization does not reproduce the matrix");
  return out;
}

Factorization finitize(const TropMatrix& target, const Factorization& f) {
  if (target.has_infinity()) throw std::invalid_argument("finitize needs a finite target");
  Rational lo = 0;
  for (const TropMatrix* m : {&f.left, &f.right})
    for (std::size_t i = 0; i < m->rows(); ++i)
      for (std::size_t j = 0; j < m->cols(); ++j)
        if ((*m)(i, j).is_finite()) lo = std::min(lo, (*m)(i, j).value());
  const Rational big = std::max(Rational(0), largest_finite(target) - lo) + 1;
  Factorization out = f;
  for (TropMatrix* m : {&out.left, &out.right})
    for (std::size_t i = 0; i < m->rows(); ++i)
      for (std::size_t j = 0; j < m->cols(); ++j)
        if ((*m)(i, j).is_inf()) (*m)(i, j) = big;
  return out;
}

Factorization integerize(const TropMatrix& target, const Factorization& f) {
  if (target.has_infinity() || !target.all_integer())
    throw std::invalid_argument("integerize needs a finite integer target");
  if (!verify_product(target, f)) throw std::invalid_argument("factorization does not reproduce the target");
  Rational g = target(0, 0).value(), l = g;
  for (std::size_t i = 0; i < target.rows(); ++i)
    for (std::size_t j = 0; j < target.cols(); ++j) {
      g = std::max(g, target(i, j).value());
      l = std::min(l, target(i, j).value());
    }
  const Rational h = g.abs() + l.abs();

  Factorization out = f;
  for (std::size_t i = 0; i < out.left.rows(); ++i)
    for (std::size_t t = 0; t < out.left.cols(); ++t)
      if (out.left(i, t).is_finite()) out.left(i, t) = out.left(i, t).value().floor();
  for (std::size_t t = 0; t < out.right.rows(); ++t)
    for (std::size_t j = 0; j < out.right.cols(); ++j)
      if (out.right(t, j).is_finite()) out.right(t, j) = out.right(t, j).value().ceil();
  for (std::size_t t = 0; t < out.inner_dim(); ++t) {
    TropValue mn = kInf;
    for (std::size_t i = 0; i < out.left.rows(); ++i) mn = oplus(mn, out.left(i, t));
    if (mn.is_inf()) {
      // unused term: any pair of values >= h keeps it out of every minimum
      for (std::size_t j = 0; j < out.right.cols(); ++j) out.right(t, j) = h;
      continue;
    }
    for (std::size_t i = 0; i < out.left.rows(); ++i)
      if (out.left(i, t).is_finite()) out.left(i, t) = out.left(i, t).value() - mn.value();
    for (std::size_t j = 0; j < out.right.cols(); ++j)
      if (out.right(t, j).is_finite()) out.right(t, j) = out.right(t, j).value() + mn.value();
  }
  for (TropMatrix* m : {&out.left, &out.right})
    for (std::size_t i = 0; i < m->rows(); ++i)
      for (std::size_t j = 0; j < m->cols(); ++j)
        if ((*m)(i, j).is_inf() || (*m)(i, j).value() > h) (*m)(i, j) = h;
  if (!verify_product(target, out)) throw std::logic_error("integerize broke the product");
  return out;
}

namespace {

void require_k(std::size_t k) {
  if (k < 8) throw std::invalid_argument("k must be at least 8, got " + std::to_string(k));
}

}  // namespace

TropMatrix gadget_for_k(const SsrefInstance& inst, std::size_t k) {
  require_k(k);
  TropMatrix a = build_gadget(inst);
  for (std::size_t s = 8; s < k; ++s) a = border(a);
  return eliminate_infinity(scale_normalize(a).first);
}

std::pair<TropMatrix, Factorization> gadget_for_k_with_witness(const SsrefInstance& inst, std::size_t k,
                                                               const SplittingWitness& w) {
  require_k(k);
  TropMatrix a = build_gadget(inst);
  Factorization f = witness_from_splitting(inst, w);
  for (std::size_t s = 8; s < k; ++s) {
    a = border(a);
    f = border_factorization(f);
  }
  auto [normalized, scaling] = scale_normalize(a);
  f = scaling.apply(f);
  TropMatrix out = eliminate_infinity(normalized);
  f = finitize(out, eliminate_infinity_witness(normalized, f));
  return {out, f};
}

GadgetOutcome reduce_ssref(const SsrefInstance& inst, std::size_t k) {
  inst.validate();
  if (!inst.admissible()) return {true, std::nullopt};
  return {false, gadget_for_k(inst, k)};
}

namespace {

std::vector<std::int64_t> parse_ints(const std::string& line, std::size_t lineno) {
  std::istringstream ls(line);
  std::vector<std::int64_t> out;
  std::string tok;
  std::size_t col = 1;
  while (ls >> tok) {
    auto r = Rational::parse(tok);
    if (!r || !r->is_integer()) throw ParseError("expected an integer, got '" + tok + "'", lineno, col);
    out.push_back(r->num());
    ++col;
  }
  return out;
}

bool read_line(std::istream& in, std::string& line, std::size_t& lineno) {
  if (!std::getline(in, line)) return false;
  ++lineno;
  if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
  return true;
}

}  // namespace

SplitInstance read_split_instance(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  std::vector<std::int64_t> head;
  while (head.empty()) {
    if (!read_line(in, line, lineno)) throw ParseError("empty input", lineno + 1, 0);
    head = parse_ints(line, lineno);
  }
  if (head.size() != 2 || head[0] < 1 || head[1] < 0) throw ParseError("header must be 'n m'", lineno, 0);
  SplitInstance s;
  s.n = static_cast<std::size_t>(head[0]);
  for (std::int64_t k = 0; k < head[1]; ++k) {
    if (!read_line(in, line, lineno)) throw ParseError("missing subset line", lineno + 1, 0);
    std::vector<std::size_t> sub;
    for (std::int64_t e : parse_ints(line, lineno)) {
      if (e < 1 || e > head[0]) throw ParseError("element " + std::to_string(e) + " out of range", lineno, 0);
      sub.push_back(static_cast<std::size_t>(e));
    }
    if (sub.empty()) throw ParseError("empty subset", lineno, 0);
    s.subsets.push_back(sub);
  }
  return s;
}

SsrefInstance read_ssref_instance(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  std::vector<std::int64_t> head;
  while (head.empty()) {
    if (!read_line(in, line, lineno)) throw ParseError("empty input", lineno + 1, 0);
    head = parse_ints(line, lineno);
  }
  if (head.size() != 2 || head[0] < 1 || head[1] < 1) throw ParseError("header must be 'm n'", lineno, 0);
  SsrefInstance inst;
  if (!read_line(in, line, lineno)) throw ParseError("missing breakpoint line", lineno + 1, 0);
  inst.sigma = parse_ints(line, lineno);
  if (inst.sigma.size() != static_cast<std::size_t>(head[0]))
    throw ParseError("expected " + std::to_string(head[0]) + " breakpoints", lineno, 0);
  inst.sigma.insert(inst.sigma.begin(), 0);
  for (std::int64_t b = 0; b < head[1]; ++b) {
    if (!read_line(in, line, lineno)) line.clear();
    inst.blocks.push_back(parse_ints(line, lineno));
  }
  try {
    inst.validate();
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what(), lineno, 0);
  }
  return inst;
}

void write_ssref_instance(std::ostream& out, const SsrefInstance& inst) {
  out << inst.m() << ' ' << inst.n() << '\n';
  for (std::size_t mu = 1; mu < inst.sigma.size(); ++mu) out << (mu > 1 ? " " : "") << inst.sigma[mu];
  out << '\n';
  for (const auto& b : inst.blocks) {
    for (std::size_t k = 0; k < b.size(); ++k) out << (k ? " " : "") << b[k];
    out << '\n';
  }
}

}  // namespace troprank
