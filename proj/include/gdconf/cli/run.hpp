#pragma once

// Subcommands and their reports. Exit codes: 0 all checks passed, 1 a
// violation was found, 2 usage or input error.

#include "gdconf/cli/algebra_file.hpp"
#include "gdconf/confalg/quadratic.hpp"
#include "gdconf/confrep/ffr.hpp"
#include "gdconf/confrep/gc.hpp"
#include "gdconf/envelope/envelope.hpp"
#include "gdconf/gdcore/loop_oracle.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <filesystem>
#include <iostream>

#ifndef GDCONF_FIXTURE_DIR
#define GDCONF_FIXTURE_DIR "fixtures"
#endif

namespace gdconf::cli {

using json = nlohmann::json;
using gdcore::AxiomReport;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string algebra;
  std::string fixtures = GDCONF_FIXTURE_DIR;
  std::string report;
  std::string mode = "free";
  int diff_order = 2;
  int degree = 4;
  int depth = 2;
  int cap = 3;
  int order_cap = 4;
  int n = 1;
  int m = 0;
  bool stabilize = false;
  bool timing = false;
};

/// Accumulates verdicts; the exit code depends on these alone.
class Report {
 public:
  explicit Report(std::string command) { j_["command"] = std::move(command); }

  json& root() { return j_; }

  void verdict(const std::string& check, const AxiomReport& rep) {
    json v;
    v["check"] = check;
    v["passed"] = rep.passed();
    v["violations"] = json::array();
    for (const auto& x : rep.violations)
      v["violations"].push_back({{"axiom", x.axiom}, {"witness", x.witness}, {"residual", x.residual}});
    j_["verdicts"].push_back(v);
    passed_ = passed_ && rep.passed();
    lines_.push_back(check + ": " + (rep.passed() ? "PASS" : "FAIL (" + std::to_string(rep.violations.size()) + ")"));
    for (std::size_t i = 0; i < rep.violations.size() && i < 5; ++i) {
      const auto& x = rep.violations[i];
      std::string w;
      for (const auto& s : x.witness) w += (w.empty() ? "" : ",") + s;
      lines_.push_back("  " + x.axiom + " [" + w + "]: " + x.residual);
    }
  }
  void verdict(const std::string& check, bool ok, const std::string& axiom, std::vector<std::string> witness,
               const std::string& detail) {
    AxiomReport r;
    if (!ok) r.add(axiom, std::move(witness), detail);
    verdict(check, r);
  }
  void note(const std::string& line) { lines_.push_back(line); }

  bool passed() const { return passed_; }
  std::string human() const {
    std::string out;
    for (const auto& l : lines_) out += l + "\n";
    return out;
  }
  std::string machine() {
    if (!j_.contains("verdicts")) j_["verdicts"] = json::array();
    j_["passed"] = passed_;
    return j_.dump(2) + "\n";
  }

 private:
  json j_;
  std::vector<std::string> lines_;
  bool passed_ = true;
};

namespace detail {

inline std::string resolve(const Options& o) {
  if (o.algebra.empty()) throw UsageError("--algebra is required");
  namespace fs = std::filesystem;
  if (fs::is_regular_file(o.algebra)) return o.algebra;
  for (auto ext : {".alg", ""}) {
    auto p = fs::path(o.fixtures) / (o.algebra + ext);
    if (fs::is_regular_file(p)) return p.string();
  }
  throw UsageError("no algebra file or fixture named '" + o.algebra + "'");
}

inline AlgebraFile load(const Options& o, Report& r) {
  auto f = parse_algebra(resolve(o));
  r.root()["inputs"]["algebra"] = f.algebra.name;
  r.root()["inputs"]["dimension"] = f.algebra.dim();
  r.note("algebra: " + f.algebra.name + " (dim " + std::to_string(f.algebra.dim()) + ")");
  return f;
}

/// The GD structure used downstream: a missing bracket means the commutator.
inline std::optional<SuperAlgebra> gd_structure(const AlgebraFile& f, Report& r) {
  if (f.algebra.bracket) {
    r.root()["inputs"]["bracket"] = "given";
    return f.algebra;
  }
  r.root()["inputs"]["bracket"] = "commutator";
  auto nov = gdcore::check_novikov(f.algebra);
  if (!nov.passed()) {
    r.verdict("check_novikov", nov);
    return std::nullopt;
  }
  r.note("bracket: commutator");
  return gdcore::commutator_gd(f.algebra);
}

inline envelope::Truncation truncation(const Options& o, Report& r) {
  envelope::Truncation T{o.diff_order, o.degree, o.depth};
  try {
    T.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  r.root()["truncation"] = {{"max_diff_order", T.max_diff_order},
                            {"max_degree", T.max_degree},
                            {"max_bracket_depth", T.max_bracket_depth}};
  return T;
}

inline std::vector<std::string> table_lines(const confalg::LambdaBracketTable& L) {
  std::vector<std::string> out;
  for (std::size_t a = 0; a < L.rank(); ++a)
    for (std::size_t b = 0; b < L.rank(); ++b)
      out.push_back("[" + L.basis.name(a) + " lambda " + L.basis.name(b) + "] = " + L.render(L.at(a, b)));
  return out;
}

inline std::vector<std::string> action_lines(const confalg::ReprTable& rho) {
  std::vector<std::string> out;
  for (std::size_t a = 0; a < rho.algebra.size(); ++a)
    for (std::size_t j = 0; j < rho.module.size(); ++j)
      out.push_back("rho(" + rho.algebra.name(a) + ", " + rho.module.name(j) + ") = " + rho.render(rho.at(a, j)));
  return out;
}

inline json component_json(const envelope::WeightComponent& C, const envelope::FreeAlgebra& F) {
  std::vector<std::string> q;
  for (const auto& m : C.quotient_basis) q.push_back(F.label(m));
  return {{"weight", C.weight},
          {"columns", C.basis.size()},
          {"rank", C.rank()},
          {"quotient_dim", C.quotient_dim()},
          {"quotient_basis", q}};
}

inline std::vector<envelope::Truncation> windows(const envelope::Truncation& T, bool stabilize) {
  std::vector<envelope::Truncation> out{T};
  if (stabilize) out.push_back({T.max_diff_order, T.max_degree + 1, T.max_bracket_depth});
  return out;
}

inline std::string window_name(const envelope::Truncation& T) {
  return "D=" + std::to_string(T.max_diff_order) + ",R=" + std::to_string(T.max_degree) +
         ",B=" + std::to_string(T.max_bracket_depth);
}

// ---- subcommands

inline void cmd_check_gd(const Options& o, Report& r) {
  auto f = load(o, r);
  if (!f.algebra.bracket) throw UsageError("check-gd needs a [bracket] section");
  r.verdict("check_novikov", gdcore::check_novikov(f.algebra));
  r.verdict("check_lie_super", gdcore::check_lie_super(f.algebra));
  r.verdict("check_gd_compatibility", gdcore::check_gd_compatibility(f.algebra));
}

inline void cmd_check_novikov(const Options& o, Report& r) {
  auto f = load(o, r);
  r.verdict("check_novikov", gdcore::check_novikov(f.algebra));
}

inline void cmd_build_conformal(const Options& o, Report& r) {
  auto f = load(o, r);
  auto V = gd_structure(f, r);
  if (!V) return;
  auto gd = gdcore::check_gd(*V);
  r.verdict("check_gd", gd);
  if (!gd.passed()) return;
  auto L = confalg::quadratic_bracket(*V);
  auto lines = table_lines(L);
  r.root()["table"] = lines;
  for (const auto& l : lines) r.note(l);
}

inline void cmd_check_conformal(const Options& o, Report& r) {
  auto f = load(o, r);
  auto V = gd_structure(f, r);
  if (!V) return;
  auto L = confalg::quadratic_table(*V);
  r.root()["table"] = table_lines(L);
  r.verdict("check_skew", confalg::check_skew(L));
  r.verdict("check_conformal_jacobi", confalg::check_conformal_jacobi(L));
}

inline void cmd_loop_oracle(const Options& o, Report& r) {
  auto f = load(o, r);
  auto V = gd_structure(f, r);
  if (!V) return;
  if (o.cap < 1) throw UsageError("--cap must be at least 1");
  r.root()["inputs"]["cap"] = o.cap;
  auto oracle = gdcore::loop_oracle(*V, o.cap);
  auto gd = gdcore::check_gd(*V);
  r.verdict("loop_oracle", oracle);
  r.verdict("check_gd", gd);
  r.verdict("oracle_agreement", oracle.passed() == gd.passed(), "oracle.disagree", {V->name},
            std::string("loop oracle ") + (oracle.passed() ? "passes" : "fails") + ", check_gd " +
                (gd.passed() ? "passes" : "fails"));
}

inline void cmd_check_lemmas(const Options& o, Report& r) {
  if (o.order_cap < 1) throw UsageError("--order-cap must be at least 1");
  r.root()["inputs"]["order_cap"] = o.order_cap;
  r.verdict("check_free_bracket_lemmas", envelope::check_free_bracket_lemmas(o.order_cap));
}

inline void cmd_build_envelope(const Options& o, Report& r) {
  auto f = load(o, r);
  auto T = truncation(o, r);
  r.root()["inputs"]["mode"] = o.mode;
  if (o.mode == "defined") {
    auto nov = gdcore::check_novikov(f.algebra);
    r.verdict("check_novikov", nov);
    if (!nov.passed()) return;
    for (const auto& W : windows(T, o.stabilize)) {
      auto E = envelope::build_novikov_envelope(f.algebra, W);
      json dims;
      for (int n : {-1, 0}) dims.push_back(component_json(E.component(n), E.algebra()));
      r.root()["windows"][window_name(W)] = dims;
      r.note(window_name(W) + ": dim U_-1 = " + std::to_string(E.component(-1).quotient_dim()) +
             ", dim U_0 = " + std::to_string(E.component(0).quotient_dim()));
      r.verdict("envelope_verify[" + window_name(W) + "]", E.verify());
    }
    return;
  }
  if (o.mode != "free") throw UsageError("--mode must be 'defined' or 'free'");
  auto V = gd_structure(f, r);
  if (!V) return;
  auto gd = gdcore::check_gd(*V);
  r.verdict("check_gd", gd);
  if (!gd.passed()) return;
  if (T.max_bracket_depth < 1) throw UsageError("free mode needs --depth >= 1");
  std::vector<std::pair<std::size_t, std::size_t>> dims;
  for (const auto& W : windows(T, o.stabilize)) {
    envelope::PdEnvelope P(*V, W);
    r.root()["windows"][window_name(W)] = {component_json(P.umin1(), P.algebra()), component_json(P.u0(), P.algebra())};
    r.root()["overflow"][window_name(W)] = P.ideal().overflow();
    r.note(window_name(W) + ": dim U_-1 = " + std::to_string(P.umin1().quotient_dim()) +
           ", dim U_0 = " + std::to_string(P.u0().quotient_dim()));
    dims.emplace_back(P.umin1().quotient_dim(), P.u0().quotient_dim());
    r.verdict("umin1_is_v[" + window_name(W) + "]", P.umin1_is_v(), "envelope.umin1", {V->name},
              "dim U_-1 = " + std::to_string(P.umin1().quotient_dim()) + ", dim V = " + std::to_string(V->dim()));
  }
  if (o.stabilize)
    r.verdict("stabilization", dims[0].first == dims[1].first, "envelope.unstable", {window_name(T)},
              "dim U_-1 changes from " + std::to_string(dims[0].first) + " to " + std::to_string(dims[1].first));
}

inline void cmd_speciality(const Options& o, Report& r) {
  auto f = load(o, r);
  auto T = truncation(o, r);
  auto V = gd_structure(f, r);
  if (!V) return;
  auto gd = gdcore::check_gd(*V);
  r.verdict("check_gd", gd);
  if (!gd.passed()) return;
  if (T.max_bracket_depth < 1) throw UsageError("speciality needs --depth >= 1");
  for (const auto& W : windows(T, o.stabilize)) {
    auto S = envelope::speciality_kernel(*V, W);
    json w{{"columns", S.columns}, {"rank", S.rank}, {"rows", S.rows}, {"quotient_dim", S.quotient_dim},
           {"overflow", S.overflow}};
    std::vector<std::string> cert;
    for (const auto& k : S.kernel) cert.push_back(gdcore::vec_to_string(k, V->basis) + " in I_V");
    w["kernel"] = cert;
    r.root()["windows"][window_name(W)] = w;
    r.note(window_name(W) + ": dim U_-1 = " + std::to_string(S.quotient_dim) + ", kernel dim " +
           std::to_string(S.kernel.size()));
    for (const auto& c : cert) r.note("certificate: " + c);
    r.verdict("speciality[" + window_name(W) + "]", !S.exceptional(), "speciality.kernel", cert,
              "nonzero kernel: V does not embed into a differential Poisson algebra");
  }
}

inline void cmd_build_ffr(const Options& o, Report& r) {
  auto f = load(o, r);
  auto T = truncation(o, r);
  auto V = gd_structure(f, r);
  if (!V) return;
  auto gd = gdcore::check_gd(*V);
  r.verdict("check_gd", gd);
  if (!gd.passed()) return;
  if (T.max_bracket_depth < 1) throw UsageError("build-ffr needs --depth >= 1");
  auto L = confalg::quadratic_bracket(*V);
  std::vector<std::size_t> ranks;
  for (const auto& W : windows(T, o.stabilize)) {
    const auto tag = "[" + window_name(W) + "]";
    confrep::FfrModule M;
    try {
      M = confrep::build_ffr(*V, W);
    } catch (const gdcore::AlgebraError& e) {
      r.verdict("build_ffr" + tag, false, "ffr.build", {V->name}, e.what());
      return;
    }
    auto faithful = confrep::check_faithful(L, M.action);
    json w{{"rank", M.rank()},
           {"umin1_basis", M.umin1_basis},
           {"u0q_basis", M.u0q_basis},
           {"u0_window_dim", M.u0_window_dim},
           {"u0_unused", M.u0_unused},
           {"closure_added", M.closure_added},
           {"overflow", M.overflow},
           {"faithful", faithful.faithful},
           {"faithful_rank", faithful.rank},
           {"witness", faithful.witness},
           {"action", action_lines(M.action)}};
    r.root()["windows"][window_name(W)] = w;
    r.note(window_name(W) + ": module rank " + std::to_string(M.rank()) + ", dim U_0/N = " +
           std::to_string(M.u0q_basis.size()));
    for (const auto& l : action_lines(M.action)) r.note("  " + l);
    r.note("faithfulness witness: " + faithful.witness);
    r.verdict("check_module" + tag, confrep::check_module(L, M.action));
    r.verdict("check_faithful" + tag, faithful.faithful, "ffr.faithful", {faithful.witness},
              "rank " + std::to_string(faithful.rank) + " < " + std::to_string(L.rank()));
    r.verdict("u0q_bound" + tag, M.u0q_basis.size() <= V->dim() * V->dim(), "ffr.bound", {V->name},
              "dim U_0/N = " + std::to_string(M.u0q_basis.size()));
    ranks.push_back(M.rank());
  }
  if (o.stabilize && ranks.size() == 2)
    r.verdict("stabilization", ranks[0] == ranks[1], "ffr.unstable", {window_name(T)},
              "module rank changes from " + std::to_string(ranks[0]) + " to " + std::to_string(ranks[1]));
}

inline void cmd_check_repr(const Options& o, Report& r) {
  auto f = load(o, r);
  auto V = gd_structure(f, r);
  if (!V) return;
  auto gd = gdcore::check_gd(*V);
  r.verdict("check_gd", gd);
  if (!gd.passed()) return;
  auto L = confalg::quadratic_bracket(*V);
  auto rho = confalg::regular_representation(L);
  r.verdict("check_module", confrep::check_module(L, rho));
  auto fr = confrep::check_faithful(L, rho);
  r.root()["regular"] = {{"faithful", fr.faithful}, {"rank", fr.rank}, {"witness", fr.witness}};
  r.note(std::string("regular representation ") + (fr.faithful ? "faithful" : "not faithful") + " (rank " +
         std::to_string(fr.rank) + ", witness " + fr.witness + ")");
}

inline void cmd_check_gc(const Options& o, Report& r) {
  if (o.n < 0 || o.m < 0 || o.n + o.m < 1) throw UsageError("--n and --m must be non-negative with n + m >= 1");
  if (o.cap < 0) throw UsageError("--cap must be non-negative");
  r.root()["inputs"]["n"] = o.n;
  r.root()["inputs"]["m"] = o.m;
  r.root()["inputs"]["cap"] = o.cap;
  r.verdict("check_gc_jacobi", confrep::check_gc_jacobi(o.n, o.m, unsigned(o.cap)));
}

}  // namespace detail

/// Parses argv, runs one subcommand and writes the reports.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Gelfand-Dorfman superalgebras, conformal algebras and their representations", "gdconf"};
  app.require_subcommand(1);
  Options o;
  using Fn = void (*)(const Options&, Report&);
  struct Sub {
    const char* name;
    const char* help;
    Fn fn;
    bool algebra, trunc, cap, order_cap, gc, mode;
  };
  const std::vector<Sub> subs = {
      {"check-gd", "GD axioms (Novikov, Lie, compatibility)", detail::cmd_check_gd, true, false, false, false, false, false},
      {"check-novikov", "Novikov axioms", detail::cmd_check_novikov, true, false, false, false, false, false},
      {"build-conformal", "quadratic lambda-bracket table", detail::cmd_build_conformal, true, false, false, false, false, false},
      {"check-conformal", "skew-symmetry and Jacobi of the quadratic table", detail::cmd_check_conformal, true, false, false, false, false, false},
      {"loop-oracle", "loop-algebra oracle against check_gd", detail::cmd_loop_oracle, true, false, true, false, false, false},
      {"check-lemmas", "bracket lemmas of the free differential algebra", detail::cmd_check_lemmas, false, false, false, true, false, false},
      {"build-envelope", "weight components of the enveloping algebra", detail::cmd_build_envelope, true, true, false, false, false, true},
      {"speciality", "speciality kernel (exceptionality certificate)", detail::cmd_speciality, true, true, false, false, false, false},
      {"build-ffr", "finite faithful representation", detail::cmd_build_ffr, true, true, false, false, false, false},
      {"check-repr", "regular representation: module axiom and faithfulness", detail::cmd_check_repr, true, false, false, false, false, false},
      {"check-gc", "skew-symmetry and Jacobi of gc_{n|m}", detail::cmd_check_gc, false, false, true, false, true, false},
  };
  for (const auto& s : subs) {
    auto* c = app.add_subcommand(s.name, s.help);
    if (s.algebra) {
      c->add_option("--algebra", o.algebra, "algebra file or fixture name")->required();
      c->add_option("--fixtures", o.fixtures, "fixture directory");
    }
    if (s.trunc) {
      c->add_option("--diff-order", o.diff_order, "D: highest derivative order");
      c->add_option("--degree", o.degree, "R: highest degree");
      c->add_option("--depth", o.depth, "B: bracket depth");
      c->add_flag("--stabilize", o.stabilize, "also run at R+1 and compare");
    }
    if (s.cap) c->add_option("--cap", o.cap, "degree cap");
    if (s.order_cap) c->add_option("--order-cap", o.order_cap, "derivative order cap");
    if (s.gc) {
      c->add_option("--n", o.n, "even block size");
      c->add_option("--m", o.m, "odd block size");
    }
    if (s.mode) c->add_option("--mode", o.mode, "defined | free");
    c->add_option("--report", o.report, "write the JSON report here");
    c->add_flag("--timing", o.timing, "record wall-clock time in the report");
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }
  const Sub* chosen = nullptr;
  for (const auto& s : subs)
    if (app.got_subcommand(s.name)) chosen = &s;

  Report rep(chosen->name);
  auto t0 = std::chrono::steady_clock::now();
  try {
    chosen->fn(o, rep);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  if (o.timing)
    rep.root()["wall_clock_ms"] =
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count();
  out << rep.human() << (rep.passed() ? "result: PASS\n" : "result: FAIL\n");
  if (!o.report.empty()) {
    std::ofstream f(o.report);
    if (!f) {
      err << "error: cannot write '" << o.report << "'\n";
      return 2;
    }
    f << rep.machine();
  }
  return rep.passed() ? 0 : 1;
}

}  // namespace gdconf::cli
