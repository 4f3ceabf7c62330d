// One line per acceptance criterion. Exit status is nonzero when any fails.

#include "gdconf/cli/algebra_file.hpp"
#include "gdconf/confalg/poisson.hpp"
#include "gdconf/confalg/quadratic.hpp"
#include "gdconf/confrep/ffr.hpp"
#include "gdconf/confrep/gc.hpp"
#include "gdconf/envelope/envelope.hpp"
#include "gdconf/gdcore/loop_oracle.hpp"
#include "gdconf/gdcore/samplers.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>

using namespace gdconf;
using confalg::cst;
using confalg::D;
using confalg::Lam;
using gdcore::AxiomReport;
using gdcore::SuperAlgebra;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      detail += (detail.empty() ? "" : "; ") + what;
    }
  }
};

SuperAlgebra fixture(const std::string& name) {
  return cli::parse_algebra(std::string(GDCONF_FIXTURE_DIR) + "/" + name + ".alg").algebra;
}

std::string first(const AxiomReport& r) {
  if (r.passed()) return "";
  const auto& v = r.violations.front();
  std::string w;
  for (const auto& s : v.witness) w += (w.empty() ? "" : ",") + s;
  return v.axiom + "[" + w + "]";
}

Outcome virasoro() {
  Outcome o;
  auto L = confalg::quadratic_bracket(fixture("virasoro-source"));
  o.require(L.at(0, 0)[0] == D() + cst(2) * Lam(), "[v lambda v] = " + L.render(L.at(0, 0)));
  o.require(confalg::check_skew(L).passed(), "skew");
  o.require(confalg::check_conformal_jacobi(L).passed(), "jacobi");
  if (o.ok) o.detail = "[v lambda v] = " + L.render(L.at(0, 0));
  return o;
}

Outcome gd_axioms() {
  Outcome o;
  auto H = fixture("heisenberg3");
  o.require(gdcore::check_novikov(H).passed(), "check_novikov");
  o.require(gdcore::check_lie_super(H).passed(), "check_lie_super");
  o.require(gdcore::check_gd(H).passed(), "check_gd");
  int total = 0, caught = 0;
  std::vector<std::string> survivors;
  const auto n = H.dim();
  for (int which = 0; which < 2; ++which)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k)
          for (int delta : {1, -1}) {
            auto M = H;
            auto& t = which == 0 ? *M.circ : *M.bracket;
            t.at(i, j, k) += delta;
            ++total;
            auto rep = gdcore::check_gd(M);
            if (!rep.passed() && !rep.violations.front().witness.empty()) {
              ++caught;
            } else {
              std::string s = std::string(which == 0 ? "circ(" : "bracket(") + H.basis.name(i) + "," +
                              H.basis.name(j) + ")_" + H.basis.name(k) + (delta > 0 ? "+1" : "-1");
              if (gdcore::loop_oracle(M, 3).passed()) s += "(oracle: GD)";
              survivors.push_back(s);
            }
          }
  std::string list;
  for (const auto& s : survivors) list += (list.empty() ? "" : " ") + s;
  o.require(survivors.empty(), std::to_string(total - caught) + " of " + std::to_string(total) +
                                   " mutations still GD: " + list);
  if (o.ok) o.detail = std::to_string(total) + " mutations all fail with a witness";
  return o;
}

Outcome exceptional() {
  Outcome o;
  auto S = envelope::speciality_kernel(fixture("heisenberg3"), {2, 4, 2});
  auto z = gdcore::Vec{0, 0, 1};
  bool has_z = false;
  for (const auto& k : S.kernel) has_z = has_z || k == z;
  o.require(S.exceptional(), "kernel is zero");
  o.require(has_z, "z not in kernel");
  if (o.ok) o.detail = "kernel dim " + std::to_string(S.kernel.size()) + " contains z";
  return o;
}

Outcome lemmas() {
  Outcome o;
  auto rep = envelope::check_free_bracket_lemmas(4);
  o.require(rep.passed(), first(rep));
  if (o.ok) o.detail = "Jacobi, derivation and ideal invariance at order cap 4";
  return o;
}

Outcome novikov_poisson() {
  Outcome o;
  std::vector<SuperAlgebra> algebras{fixture("novikov2")};
  gdcore::Sampler s(20240917);
  while (algebras.size() < 21) {
    auto N = s.novikov();
    if (N.dim() <= 3) algebras.push_back(N);
  }
  int odd = 0;
  for (const auto& N : algebras) {
    for (auto p : N.basis.parities()) odd += p == gdcore::Parity::odd;
    auto E = envelope::build_novikov_envelope(N, {2, 4, 0});
    auto rep = E.verify();
    o.require(rep.passed(), N.name + ": " + first(rep));
    auto S = envelope::speciality_kernel(gdcore::commutator_gd(N), {2, 4, 2});
    o.require(!S.exceptional(), N.name + "^(-) has a kernel");
  }
  if (o.ok) o.detail = std::to_string(algebras.size()) + " algebras (" + std::to_string(odd) + " odd generators in total)";
  return o;
}

Outcome oracle() {
  Outcome o;
  gdcore::Sampler s(8675309);
  int pass = 0, fail = 0, count = 0;
  while (count < 50) {
    auto A = s.gd();
    if (A.dim() < 2 || A.dim() > 3) continue;
    if (count % 2) A = s.perturb(A);
    ++count;
    bool gd = gdcore::check_gd(A).passed();
    bool loop = gdcore::loop_oracle(A, 3).passed();
    o.require(gd == loop, A.name + ": check_gd " + (gd ? "passes" : "fails") + ", oracle disagrees");
    if (gd) o.require(confalg::check_conformal_jacobi(confalg::quadratic_table(A)).passed(), A.name + ": jacobi");
    (gd ? pass : fail)++;
  }
  o.require(pass > 0 && fail > 0, "sample not mixed");
  if (o.ok) o.detail = std::to_string(pass) + " pass, " + std::to_string(fail) + " fail, all agree";
  return o;
}

Outcome gc() {
  Outcome o;
  auto a = confrep::check_gc_jacobi(1, 0, 3), b = confrep::check_gc_jacobi(1, 1, 2);
  o.require(a.passed(), "gc_{1|0}: " + first(a));
  o.require(b.passed(), "gc_{1|1}: " + first(b));
  if (o.ok) o.detail = "gc_{1|0} cap 3 and gc_{1|1} cap 2";
  return o;
}

Outcome ffr() {
  Outcome o;
  auto V = fixture("virasoro-source");
  auto M = confrep::build_ffr(V, {2, 4, 2});
  auto L = confalg::quadratic_bracket(V);
  auto f = confrep::check_faithful(L, M.action);
  o.require(M.rank() <= 2, "Virasoro rank " + std::to_string(M.rank()));
  o.require(confrep::check_module(L, M.action).passed(), "Virasoro module");
  o.require(f.faithful && f.witness == "1", "Virasoro witness " + f.witness);
  o.require(M.u0q_basis.size() <= 1, "dim U_0/N = " + std::to_string(M.u0q_basis.size()));
  // ρ(v, 1) = (∂+λ)·1 + λv
  if (M.rank() == 2) {
    const auto& e = M.action.at(0, 1);
    o.require(e[0] == Lam() && e[1] == D() + Lam(), "rho(v,1) = " + M.action.render(e));
  }
  auto W = gdcore::commutator_gd(fixture("novikov2"));
  auto N = confrep::build_ffr(W, {2, 4, 2});
  auto LW = confalg::quadratic_bracket(W);
  o.require(N.rank() <= 6, "novikov2 rank " + std::to_string(N.rank()));
  o.require(confrep::check_module(LW, N.action).passed(), "novikov2 module");
  o.require(confrep::check_faithful(LW, N.action).faithful, "novikov2 faithful");
  if (o.ok)
    o.detail = "Virasoro rank " + std::to_string(M.rank()) + " witness 1; novikov2^(-) rank " + std::to_string(N.rank());
  return o;
}

Outcome poisson_conformal() {
  Outcome o;
  gdcore::Sampler s(1009);
  int done = 0;
  while (done < 10) {
    auto [p, d] = s.poisson_with_derivation();
    if (p.dim() > 3) continue;
    ++done;
    auto P = confalg::build_Lpd(p, d);
    auto rep = confalg::check_poisson_conformal(P);
    o.require(rep.passed(), p.name + ": " + first(rep));
    std::vector<std::size_t> all(P.rank());
    for (std::size_t k = 0; k < all.size(); ++k) all[k] = k;
    auto rho = confalg::twisted_rep(P, all);
    o.require(confrep::check_module(P.lie, rho).passed(), p.name + ": twisted module");
    auto ad = confalg::adjoint_rep(P, all);
    o.require(confalg::check_cocycle(P.lie, ad, confalg::poisson_cocycle(P, all)).passed(), p.name + ": cocycle");
  }
  auto G = confalg::gr_cend(6);
  auto rep = confalg::check_poisson_conformal(G);
  o.require(rep.passed(), "gr Cend: " + first(rep));
  if (o.ok) o.detail = "10 (p,d) fixtures and gr Cend at cap 6";
  return o;
}

std::pair<int, std::string> capture(const std::string& cmd) {
  std::string out;
  FILE* f = popen(cmd.c_str(), "r");
  if (!f) return {-1, ""};
  char buf[4096];
  while (auto n = fread(buf, 1, sizeof buf, f)) out.append(buf, n);
  int status = pclose(f);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string slurp(const std::string& path) {
  std::ifstream f(path);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

Outcome determinism() {
  Outcome o;
  const std::string cli = GDCONF_CLI_PATH, fx = std::string(" --fixtures ") + GDCONF_FIXTURE_DIR;
  const std::vector<std::string> commands = {
      "check-gd --algebra heisenberg3" + fx,
      "check-novikov --algebra novikov2" + fx,
      "build-conformal --algebra heisenberg3" + fx,
      "check-conformal --algebra novikov2" + fx,
      "loop-oracle --algebra heisenberg3 --cap 2" + fx,
      "check-lemmas --order-cap 2",
      "build-envelope --algebra novikov2 --mode defined" + fx,
      "build-envelope --algebra virasoro-source --stabilize" + fx,
      "speciality --algebra heisenberg3" + fx,
      "build-ffr --algebra novikov2" + fx,
      "check-repr --algebra heisenberg3" + fx,
      "check-gc --n 1 --m 1 --cap 1",
  };
  auto dir = std::filesystem::temp_directory_path();
  for (const auto& c : commands) {
    auto a = (dir / "gdconf_acc_a.json").string(), b = (dir / "gdconf_acc_b.json").string();
    std::filesystem::remove(a);
    std::filesystem::remove(b);
    auto r1 = capture(cli + " " + c + " --report " + a + " 2>&1");
    auto r2 = capture(cli + " " + c + " --report " + b + " 2>&1");
    auto ra = slurp(a), rb = slurp(b);
    o.require(!ra.empty(), c + ": no report");
    o.require(r1 == r2 && ra == rb, c + ": output differs");
  }
  if (o.ok) o.detail = std::to_string(commands.size()) + " subcommand reports byte-identical";
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double budget;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "Virasoro quadratic bracket", 1, virasoro},
      {2, "GD axioms and single-entry mutations", 1, gd_axioms},
      {3, "exceptionality certificate", 60, exceptional},
      {4, "free bracket lemmas", 10, lemmas},
      {5, "Novikov envelopes and speciality", 120, novikov_poisson},
      {6, "oracle equivalence", 60, oracle},
      {7, "gc Jacobi", 30, gc},
      {8, "finite faithful representation", 120, ffr},
      {9, "Poisson conformal suite", 60, poisson_conformal},
      {10, "determinism", 60, determinism},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.ok = false;
      o.detail = std::string("exception: ") + e.what();
    }
    double t = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (t > c.budget) o.require(false, "over time budget");
    failed += !o.ok;
    char tbuf[64];
    std::snprintf(tbuf, sizeof tbuf, "%.2fs/%.0fs", t, c.budget);
    std::cout << "criterion " << c.id << " [" << c.name << "]: " << (o.ok ? "PASS" : "FAIL") << " (" << tbuf
              << ") " << o.detail << std::endl;
  }
  std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria pass" << std::endl;
  return failed ? 1 : 0;
}
