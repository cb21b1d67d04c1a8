#include "radmul/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iomanip>
#include <ostream>

#include "radmul/freeprod_verify.hpp"
#include "radmul/lemma_suite.hpp"
#include "radmul/multiplier.hpp"
#include "radmul/symbol_hankel.hpp"

namespace radmul {

namespace {

const std::vector<std::string> kSuites = {"all", "symbol", "pp", "fock", "operators", "lemmas", "cases", "theorem", "spanning"};

VerificationReport symbol_checks(const RadialSymbol& phi, std::size_t dim, double tol) {
  VerificationReport rep;
  const auto psi = psi_decompose(phi);
  double split = 0.0;
  for (std::size_t n = 0; n <= 2 * dim; ++n) split = std::max(split, std::abs(phi(n) - psi.psi1(n) - psi.psi2(n) - psi.c()));
  rep.add("symbol.psi_split", split, tol);

  const auto hp = hankel_pair(phi, dim);
  double entries = 0.0;
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j) {
      const auto a = static_cast<Eigen::Index>(i), b = static_cast<Eigen::Index>(j);
      entries = std::max(entries, std::abs(hp.h(a, b) - (psi.psi1(i + j) - psi.psi1(i + j + 2))));
      entries = std::max(entries, std::abs(hp.k(a, b) - (psi.psi2(i + j) - psi.psi2(i + j + 2))));
    }
  rep.add("symbol.hankel_entries", entries, tol);

  const auto fh = factorize(hp.h), fk = factorize(hp.k);
  const double rec = max_abs(fh.reconstruct() - hp.h) + max_abs(fk.reconstruct() - hp.k);
  rep.add("symbol.factorization", rec, tol);
  const auto nc = norm_c(phi, dim);
  rep.add("symbol.nuclear_sum", std::abs(fh.nuclear_sum() + fk.nuclear_sum() + nc.abs_limit - nc.value), tol,
          {{"norm_c", nc.value}, {"error_bound", nc.error_bound}});
  return rep;
}

std::string fmt(double v) {
  std::ostringstream os;
  os << std::setprecision(12) << v;
  return os.str();
}

SpacePtr make_space(const RunConfig& cfg) { return std::make_shared<FockSpace>(cfg.system, cfg.options.fock_len); }

}  // namespace

VerificationReport run_suite(const RunConfig& cfg, const std::string& suite) {
  if (std::find(kSuites.begin(), kSuites.end(), suite) == kSuites.end()) throw ConfigError("unknown suite '" + suite + "'");
  const bool all = suite == "all";
  const auto& tol = cfg.options.tol;
  VerificationReport rep;
  if (all || suite == "symbol") rep.merge(symbol_checks(cfg.symbol, cfg.hankel_dim(), tol.eigen));
  if (all || suite == "pp") {
    rep.merge(cfg.system->base().verify(tol.algebraic), "base.");
    for (std::size_t i = 0; i < cfg.system->factor_count(); ++i) {
      const auto& f = cfg.system->factor(i);
      const std::string pre = "factor" + std::to_string(i) + ".";
      rep.merge(verify_pp_basis(f, tol.algebraic), pre);
      // e_0 vanishing for every nontrivial letter against a fixed N element.
      const auto s = static_cast<Eigen::Index>(f.base().matrix_size());
      Mat b = Mat::Zero(s, s);
      for (Eigen::Index r = 0; r < s; ++r)
        for (Eigen::Index c = 0; c < s; ++c) b(r, c) = cplx(1.0 + static_cast<double>(r), static_cast<double>(c) - 0.5);
      VerificationReport e0;
      for (std::size_t g : f.basis_order())
        if (g != f.group().identity()) e0.merge(e0_vanishing(f, g, b, tol.algebraic), "g" + std::to_string(g) + ".");
      rep.merge(e0, pre);
    }
  }
  if (all || suite == "fock") rep.merge(fock_invariants(make_space(cfg), 1e-12));
  if (all || suite == "operators") rep.merge(operator_invariants(make_space(cfg), cfg.hankel_dim(), cfg.seed, tol.eigen));
  if (all || suite == "lemmas") rep.merge(generator_lemmas(make_space(cfg), cfg.hankel_dim(), cfg.seed, tol.eigen));
  if (suite == "cases") {
    const RadialMultiplier t(cfg.symbol, make_space(cfg), cfg.options.hankel_dim);
    rep.merge(case_rules(t, cfg.seed, tol.eigen));
  }
  // The theorem suite contains the case rules.
  if (all || suite == "theorem") rep.merge(verify_main_theorem(cfg.system, cfg.symbol, cfg.options, cfg.seed));
  if (all || suite == "spanning") rep.merge(spanning_check(cfg.system, cfg.options.fock_len));
  return rep;
}

int cmd_symbol(const RunConfig& cfg, const std::string& csv_path, std::ostream& out) {
  const std::size_t dim = cfg.hankel_dim();
  const auto nc = norm_c(cfg.symbol, dim);
  out << "hankel_dim: " << dim << "\n";
  out << "h_trace_norm: " << fmt(nc.h_trace_norm) << "\n";
  out << "k_trace_norm: " << fmt(nc.k_trace_norm) << "\n";
  out << "abs_limit: " << fmt(nc.abs_limit) << "\n";
  out << "norm_c: " << fmt(nc.value) << "\n";
  out << "norm_c_error_bound: " << fmt(nc.error_bound) << "\n";
  out << "ricard_xu_bound: " << fmt(ricard_xu_bound(cfg.symbol)) << "\n";
  if (!csv_path.empty()) {
    std::ofstream f(csv_path);
    if (!f) throw ConfigError("cannot write CSV file '" + csv_path + "'");
    write_symbol_csv(f, cfg.symbol, dim);
    out << "csv: " << csv_path << "\n";
  }
  return exit_pass;
}

int cmd_verify(const RunConfig& cfg, const std::string& suite, const std::string& report_path, std::ostream& out) {
  const auto rep = run_suite(cfg, suite);
  for (const auto& c : rep.checks())
    out << std::left << std::setw(8) << to_string(c.status) << c.name << "  residual=" << fmt(c.max_residual)
        << " tol=" << fmt(c.tolerance) << "\n";
  out << rep.count(CheckStatus::pass) << " passed, " << rep.count(CheckStatus::fail) << " failed, "
      << rep.count(CheckStatus::skipped) << " skipped\n";
  if (!report_path.empty()) {
    std::ofstream f(report_path, std::ios::binary);
    if (!f) throw ConfigError("cannot write report file '" + report_path + "'");
    f << rep.to_json(cfg.digest(), cfg.seed).dump(2) << "\n";
  }
  return rep.all_passed() ? exit_pass : exit_check_failure;
}

int cmd_bound(const RunConfig& cfg, std::ostream& out) {
  const RadialMultiplier t(cfg.symbol, make_space(cfg), cfg.options.hankel_dim);
  const auto est = sampled_bound(t, cfg.options.bound_samples, cfg.options.amplifications, cfg.seed);
  for (std::size_t i = 0; i < est.sup_ratio_by_amplification.size(); ++i)
    out << "sup_ratio[m=" << cfg.options.amplifications[i] << "]: " << fmt(est.sup_ratio_by_amplification[i]) << "\n";
  out << "sup_ratio: " << fmt(est.sup_ratio) << "\n";
  out << "norm_c: " << fmt(est.norm_c) << "\n";
  out << "margin: " << fmt(est.norm_c - est.sup_ratio) << "\n";
  out << "lower_envelope: " << fmt(est.lower_envelope) << "\n";
  out << "max_abs_phi: " << fmt(est.max_abs_phi) << "\n";
  out << "samples: " << est.samples << "\n";
  const double tol = cfg.options.tol.spectral;
  const bool ok = est.sup_ratio <= est.norm_c + tol && est.lower_envelope >= est.max_abs_phi - tol;
  return ok ? exit_pass : exit_check_failure;
}

int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Radial multipliers on amalgamated free products"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path, report_path, csv_path, suite = "all";
  std::uint64_t seed = 0;
  double tol = 0.0;
  auto* opt_config = app.add_option("--config", config_path, "configuration JSON");
  auto* opt_seed = app.add_option("--seed", seed, "random seed (default 0)");
  auto* opt_tol = app.add_option("--tol", tol, "tolerance for eigenvalue checks")->check(CLI::PositiveNumber);
  app.add_option("--report", report_path, "write the JSON report here");
  app.add_option("--csv", csv_path, "write the symbol table here");
  app.add_option("--suite", suite, "suite to run")->check(CLI::IsMember(kSuites));

  auto* sym = app.add_subcommand("symbol", "class norm, Ricard-Xu bound and symbol table");
  auto* ver = app.add_subcommand("verify", "run verification suites");
  auto* bnd = app.add_subcommand("bound", "sampled norm bound against the class norm");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return exit_pass;
    }
    err << "usage error: " << e.what() << "\n";
    return exit_usage;
  }
  if (opt_config->count() == 0) {
    err << "usage error: --config is required\n";
    return exit_usage;
  }

  RunConfig cfg;
  try {
    cfg = load_config(config_path);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return exit_usage;
  }
  if (opt_seed->count() > 0) cfg.seed = seed;
  if (opt_tol->count() > 0) cfg.options.tol.eigen = tol;

  try {
    if (sym->parsed()) return cmd_symbol(cfg, csv_path, out);
    if (ver->parsed()) return cmd_verify(cfg, suite, report_path, out);
    if (bnd->parsed()) return cmd_bound(cfg, out);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return exit_usage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return exit_usage;
  }
  return exit_usage;
}

}  // namespace radmul
