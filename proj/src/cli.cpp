#include "troprank/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "troprank/counterexamples.hpp"
#include "troprank/matrix_io.hpp"
#include "troprank/oracle.hpp"
#include "troprank/rank3.hpp"
#include "troprank/reductions.hpp"
#include "troprank/trop_matrix.hpp"

namespace troprank::cli {

namespace {

struct Options {
  std::string a, b, c;
  std::string witness;
  std::string out, out_b, out_c;
  std::uint64_t budget = 0;
  std::size_t k = 0;
  std::size_t le = 0;
  std::size_t cap = kDefaultPermanentCap;
  std::int64_t nu = 0;
  std::size_t samples = 0;
  std::uint64_t seed = 1;
  bool ssref = false;
  bool raw = false;
};

std::uint64_t effective_budget(std::uint64_t flag) {
  if (flag) return flag;
  if (const char* env = std::getenv("TROPRANK_BUDGET")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end == env || *end != '\0' || v == 0)
      throw std::invalid_argument(std::string("TROPRANK_BUDGET must be a positive integer, got '") + env + "'");
    return v;
  }
  return OracleOptions{}.budget;
}

TropMatrix load(const std::string& path) {
  try {
    return read_matrix_file(path);
  } catch (const ParseError& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
}

void emit(std::ostream& out, const std::string& path, const TropMatrix& m) {
  if (path.empty()) write_matrix(out, m);
  else write_matrix_file(path, m);
}

template <class Reader>
auto load_instance(const std::string& path, Reader read) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return read(in);
}

SsrefInstance load_ssref(const Options& o) {
  if (o.ssref) return load_instance(o.a, [](std::istream& in) { return read_ssref_instance(in); });
  return split_to_ssref(load_instance(o.a, [](std::istream& in) { return read_split_instance(in); }));
}

const char* route_name(Rank3Report::Route r) {
  switch (r) {
    case Rank3Report::Route::LowRank: return "low-rank";
    case Rank3Report::Route::Certificate: return "certificate";
    case Rank3Report::Route::Branches: return "branches";
  }
  return "?";
}

// Rank-3 decision on a matrix that may contain inf: all-inf lines are dropped,
// the rest is scaled, inf is replaced by a large finite value and the witness
// is carried back.
std::optional<Factorization> rank3_extended(const TropMatrix& a, Rank3Report& rep) {
  if (!a.has_infinity()) return decide_factor_rank_le3(a, &rep);
  std::vector<std::size_t> rows, cols;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (a(i, j).is_finite()) {
        rows.push_back(i);
        break;
      }
  for (std::size_t j = 0; j < a.cols(); ++j)
    for (std::size_t i = 0; i < a.rows(); ++i)
      if (a(i, j).is_finite()) {
        cols.push_back(j);
        break;
      }
  Factorization full{TropMatrix(a.rows(), 3, kInf), TropMatrix(3, a.cols(), kInf)};
  if (rows.empty()) return full;
  const TropMatrix core = a.submatrix(rows, cols);
  auto [scaled, scaling] = scale_normalize(core);
  auto f = decide_factor_rank_le3(eliminate_infinity(scaled), &rep);
  if (!f) return std::nullopt;
  Factorization back = scaling.unapply(restore_infinity(scaled, *f));
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t t = 0; t < 3; ++t) full.left(rows[r], t) = back.left(r, t);
  for (std::size_t t = 0; t < 3; ++t)
    for (std::size_t s = 0; s < cols.size(); ++s) full.right(t, cols[s]) = back.right(t, s);
  if (!verify_product(a, full)) throw std::logic_error("rank-3 witness failed to verify");
  return full;
}

int cmd_mul(const Options& o, std::ostream& out) {
  emit(out, o.out, trop_mat_mul(load(o.a), load(o.b)));
  return kExitYes;
}

int cmd_troprank(const Options& o, std::ostream& out) {
  out << tropical_rank(load(o.a), o.cap) << "\n";
  return kExitYes;
}

int cmd_perm(const Options& o, std::ostream& out) {
  const Permanent p = tropical_permanent(load(o.a), o.cap);
  out << p.value << (p.attained_twice ? " singular" : " nonsingular") << "\n";
  return kExitYes;
}

int cmd_rank3(const Options& o, std::ostream& out) {
  const TropMatrix a = load(o.a);
  Rank3Report rep;
  const auto f = rank3_extended(a, rep);
  if (!f) {
    out << "NO factor rank > 3";
    if (rep.certificate) {
      out << " (4x4 certificate rows";
      for (auto i : rep.certificate->first) out << ' ' << i + 1;
      out << " cols";
      for (auto j : rep.certificate->second) out << ' ' << j + 1;
      out << ")";
    }
    out << "\n";
    return kExitNo;
  }
  out << "YES factor rank <= 3 (route " << route_name(rep.route) << ", " << rep.branches_explored
      << " branches)\n";
  if (!o.witness.empty()) {
    write_matrix_file(o.witness + "_B.txt", f->left);
    write_matrix_file(o.witness + "_C.txt", f->right);
    out << "witness written to " << o.witness << "_B.txt and " << o.witness << "_C.txt\n";
  }
  return kExitYes;
}

int cmd_factor_rank(const Options& o, std::ostream& out) {
  const TropMatrix a = load(o.a);
  const OracleOptions opt{effective_budget(o.budget)};
  if (o.le) {
    const auto f = factor_rank_le_k(a, o.le, opt);
    out << (f ? "YES" : "NO") << " factor rank " << (f ? "<= " : "> ") << o.le << "\n";
    if (f && !o.witness.empty()) {
      write_matrix_file(o.witness + "_B.txt", f->left);
      write_matrix_file(o.witness + "_C.txt", f->right);
    }
    return f ? kExitYes : kExitNo;
  }
  out << factor_rank_exact(a, opt) << "\n";
  return kExitYes;
}

int cmd_verify(const Options& o, std::ostream& out) {
  const TropMatrix a = load(o.a);
  const Factorization f{load(o.b), load(o.c)};
  if (f.left.cols() != f.right.rows() || f.left.rows() != a.rows() || f.right.cols() != a.cols()) {
    out << "NO shapes " << a.shape_string() << " vs " << f.left.shape_string() << " (x) " << f.right.shape_string()
        << "\n";
    return kExitNo;
  }
  if (verify_product(a, f)) {
    out << "YES product matches\n";
    return kExitYes;
  }
  const TropMatrix p = trop_mat_mul(f.left, f.right);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (!(p(i, j) == a(i, j))) {
        out << "NO first mismatch at (" << i + 1 << "," << j + 1 << "): expected " << a(i, j) << ", got " << p(i, j)
            << "\n";
        return kExitNo;
      }
  return kExitNo;
}

int cmd_reduce(const Options& o, std::ostream& out) {
  const SsrefInstance inst = load_ssref(o);
  const std::size_t k = o.k ? o.k : 8;
  if (o.raw) {
    if (!inst.admissible()) {
      out << "NO instance is not admissible\n";
      return kExitNo;
    }
    emit(out, o.out, build_gadget(inst));
    return kExitYes;
  }
  const GadgetOutcome g = reduce_ssref(inst, k);
  if (g.trivially_no) {
    out << "NO instance is not admissible\n";
    return kExitNo;
  }
  if (!o.out.empty()) out << "gadget " << g.matrix->shape_string() << " for k = " << k << " written to " << o.out << "\n";
  emit(out, o.out, *g.matrix);
  return kExitYes;
}

int cmd_witness(const Options& o, std::ostream& out) {
  const SsrefInstance inst = load_ssref(o);
  const std::size_t k = o.k ? o.k : 8;
  if (!inst.admissible()) {
    out << "NO instance is not admissible\n";
    return kExitNo;
  }
  const auto w = ssref_brute_force(inst);
  if (!w) {
    out << "NO no splitting exists\n";
    return kExitNo;
  }
  const auto [a, f] = gadget_for_k_with_witness(inst, k, *w);
  if (!verify_product(a, f)) throw std::logic_error("transported witness failed to verify");
  out << "YES gadget " << a.shape_string() << " factors with inner dimension " << k << "\n";
  if (!o.out_b.empty()) write_matrix_file(o.out_b, f.left);
  if (!o.out_c.empty()) write_matrix_file(o.out_c, f.right);
  if (o.out_b.empty() && o.out_c.empty()) {
    write_matrix(out, f.left);
    write_matrix(out, f.right);
  }
  return kExitYes;
}

int cmd_gen_cnu(const Options& o, std::ostream& out) {
  const TropMatrix c = o.k ? gen_family(o.k, o.nu) : gen_cnu(o.nu);
  if (!o.out.empty()) out << "matrix " << c.shape_string() << " written to " << o.out << "\n";
  emit(out, o.out, c);
  return kExitYes;
}

int cmd_check_cnu(const Options& o, std::ostream& out) {
  const MinorCheckReport rep = minor_rank_le4_check(o.nu, o.samples, o.seed);
  out << (rep.all_passed() ? "YES" : "NO") << " nu = " << o.nu << "\n";
  for (std::size_t mu = 0; mu < rep.per_mu.size(); ++mu)
    out << "mu " << mu + 1 << (rep.per_mu[mu] ? " pass" : " FAIL") << "\n";
  if (rep.samples) out << "random minors " << rep.samples_passed << "/" << rep.samples << " pass\n";
  return rep.all_passed() ? kExitYes : kExitNo;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact tropical matrix factorization tools", "troprank"};
  app.require_subcommand(1);
  Options o;
  int (*handler)(const Options&, std::ostream&) = nullptr;

  auto verb = [&](const std::string& name, const std::string& desc, int (*h)(const Options&, std::ostream&)) {
    CLI::App* s = app.add_subcommand(name, desc);
    s->callback([&handler, h] { handler = h; });
    return s;
  };

  auto* mul = verb("mul", "Tropical product A (x) B", cmd_mul);
  mul->add_option("A", o.a)->required();
  mul->add_option("B", o.b)->required();
  mul->add_option("--out", o.out, "Write the product here instead of stdout");

  auto* tr = verb("troprank", "Tropical rank", cmd_troprank);
  tr->add_option("A", o.a)->required();
  tr->add_option("--cap", o.cap, "Largest minor size enumerated");

  auto* perm = verb("perm", "Tropical permanent of a square matrix", cmd_perm);
  perm->add_option("A", o.a)->required();
  perm->add_option("--cap", o.cap, "Largest size enumerated");

  auto* r3 = verb("rank3", "Decide factor rank <= 3", cmd_rank3);
  r3->add_option("A", o.a)->required();
  r3->add_option("--witness", o.witness, "Write PREFIX_B.txt and PREFIX_C.txt");

  auto* fr = verb("factor-rank", "Exhaustive factor rank", cmd_factor_rank);
  fr->add_option("A", o.a)->required();
  fr->add_option("--budget", o.budget, "Pattern budget (default: TROPRANK_BUDGET or 10^7)");
  fr->add_option("--le", o.le, "Only decide factor rank <= K");
  fr->add_option("--witness", o.witness, "With --le: write PREFIX_B.txt and PREFIX_C.txt");

  auto* vf = verb("verify", "Check A = B (x) C", cmd_verify);
  vf->add_option("A", o.a)->required();
  vf->add_option("B", o.b)->required();
  vf->add_option("C", o.c)->required();

  auto* rs = verb("reduce-ss", "Gadget matrix for a set splitting instance", cmd_reduce);
  rs->add_option("INSTANCE", o.a)->required();
  rs->add_option("--k", o.k, "Inner dimension, at least 8 (default 8)");
  rs->add_option("--out", o.out, "Write the gadget here instead of stdout");
  rs->add_flag("--ssref", o.ssref, "Input is already in band form");
  rs->add_flag("--raw", o.raw, "Emit the unscaled gadget with inf entries");

  auto* ws = verb("witness-ss", "Factorization of the gadget for a splittable instance", cmd_witness);
  ws->add_option("INSTANCE", o.a)->required();
  ws->add_option("--k", o.k, "Inner dimension, at least 8 (default 8)");
  ws->add_option("--out-b", o.out_b);
  ws->add_option("--out-c", o.out_c);
  ws->add_flag("--ssref", o.ssref, "Input is already in band form");

  auto* gc = verb("gen-cnu", "Counterexample matrix C(nu) or its family member for k", cmd_gen_cnu);
  gc->add_option("--nu", o.nu)->required();
  gc->add_option("--k", o.k, "Family member for inner dimension k >= 4");
  gc->add_option("--out", o.out);

  auto* cc = verb("check-cnu", "Verify the deleted-column factorizations of C(nu)", cmd_check_cnu);
  cc->add_option("--nu", o.nu)->required();
  cc->add_option("--samples", o.samples, "Random nu x nu minors to check");
  cc->add_option("--seed", o.seed);

  if (!args.empty() && !args[0].empty() && args[0][0] != '-') {
    const auto subs = app.get_subcommands([](CLI::App*) { return true; });
    if (std::none_of(subs.begin(), subs.end(), [&](CLI::App* s) { return s->get_name() == args[0]; })) {
      err << "unknown command '" << args[0] << "'; run with --help for the list\n";
      return kExitError;
    }
  }
  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitError;
  }
  if (!handler) {
    err << "no command given\n";
    return kExitError;
  }
  try {
    return handler(o, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }
}

}  // namespace troprank::cli
