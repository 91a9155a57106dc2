// Command-line front end: parse symbol JSON, dispatch computations, emit JSON
// results and CSV sample tables.
//
// Exit codes: 0 success, 2 validation error, 3 numerical failure.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "json.hpp"
#include "shubin/error.hpp"
#include "shubin/functionals.hpp"
#include "shubin/oracle.hpp"
#include "shubin/powers.hpp"
#include "shubin/serialize.hpp"
#include "shubin/spectra.hpp"
#include "shubin/verify.hpp"

using namespace shubin;
using nlohmann::json;

namespace {

struct CommonArgs {
  std::string symbol_path;
  std::string out_prefix = "shubin_out";
  std::string format = "json";
  double z_re = 2.0, z_im = 0.0;
  double theta = kPi / 2;
  double theta_prime = -kPi / 2;
  int depth = 8;
  int grid_nodes = 256;
  int oracle_n = 400;
  int p = -1;
  int pole_j = 0;
  std::string suite = "all";
  std::string oracle_kind = "eigenvalues";
  int count = 20;
};

json base_result(const std::string& command, const CommonArgs& a) {
  json cfg;
  cfg["command"] = command;
  cfg["symbol"] = a.symbol_path;
  cfg["z"] = json::array({a.z_re, a.z_im});
  cfg["theta"] = a.theta;
  cfg["theta_prime"] = a.theta_prime;
  cfg["depth"] = a.depth;
  cfg["grid_nodes"] = a.grid_nodes;
  cfg["output"] = a.out_prefix;
  json res;
  res["config_echo"] = cfg;
  return res;
}

void write_result(const CommonArgs& a, json& res, double wall_seconds) {
  const bool deterministic = std::getenv("SHUBIN_DETERMINISTIC") != nullptr;
  res["wall_time_ms"] = deterministic ? 0 : static_cast<long>(wall_seconds * 1000);
  std::ofstream out(a.out_prefix + ".result.json");
  out << res.dump(2) << "\n";
  std::cout << res.dump(2) << "\n";
}

SpectraOpts spectra_opts(const CommonArgs& a) {
  SpectraOpts so;
  so.depth = a.depth;
  so.grid = SphereGrid::standard(1, a.grid_nodes);
  if (a.p >= 0) so.kv.p = a.p;
  return so;
}

int run_command(const std::string& cmd, const CommonArgs& a) {
  auto t0 = std::chrono::steady_clock::now();
  json res = base_result(cmd, a);
  auto elapsed = [&] {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  };

  if (cmd == "verify") {
    require(verify::known_suite(a.suite), "BadArgument", "unknown suite " + a.suite);
    verify::Options vo;
    vo.sphere_nodes = a.grid_nodes;
    vo.depth = a.depth;
    auto checks = verify::run_suite(a.suite, vo);
    int failures = verify::print_report(checks, std::cout);
    json arr = json::array();
    for (const auto& c : checks)
      arr.push_back({{"name", c.name}, {"measured", c.measured}, {"tol", c.tol},
                     {"pass", c.pass}});
    res["checks"] = arr;
    res["failures"] = failures;
    write_result(a, res, elapsed());
    return failures == 0 ? 0 : 3;
  }

  ClassicalSymbol sym = load_symbol(a.symbol_path);
  const Complex z(a.z_re, a.z_im);

  if (cmd == "residue") {
    Complex v = wodzicki_res(sym, SphereGrid::standard(sym.space_dim(), a.grid_nodes));
    res["value"] = complex_to_json(v);
    res["uncertainty"] = 0.0;
    res["method"] = "symbolic";
  } else if (cmd == "kv") {
    KvOpts kv;
    kv.grid = SphereGrid::standard(sym.space_dim(), a.grid_nodes);
    if (a.p >= 0) kv.p = a.p;
    KvResult v = kv_tr(sym, kv);
    res["value"] = complex_to_json(v.value);
    res["uncertainty"] = v.uncertainty;
    res["method"] = "symbolic";
  } else if (cmd == "power") {
    PowerOpts po;
    po.grid = SphereGrid::standard(sym.space_dim(), a.grid_nodes);
    ClassicalSymbol pw = complex_power(sym, z, a.theta, a.depth, 0, po);
    json comps = json::array();
    for (int k = 0; k < pw.depth(); ++k)
      comps.push_back({{"degree", complex_to_json(pw.component(k).degree())},
                       {"sphere_integral_trace",
                        complex_to_json(pw.component(k).sphere_integral_trace(*po.grid))}});
    res["order"] = complex_to_json(pw.order());
    res["components"] = comps;
    res["value"] = complex_to_json(wodzicki_res(pw, po.grid));
    res["uncertainty"] = 0.0;
    res["method"] = "symbolic";
  } else if (cmd == "project") {
    PowerOpts po;
    po.grid = SphereGrid::standard(sym.space_dim(), a.grid_nodes);
    ClassicalSymbol pi = sectorial_projection(sym, a.theta, a.theta_prime, a.depth, 4, po);
    SharpOpts sh;
    sh.grid = po.grid;
    ClassicalSymbol pi2 = sharp(pi, pi, std::min(a.depth, 5), sh);
    double idem = 0;
    for (int k = 0; k < std::min(a.depth, 5); ++k)
      for (int i = 0; i < po.grid->size(); i += 8) {
        Mat d = pi.component(k).eval(po.grid->nodes[i]) -
                pi2.component(k).eval(po.grid->nodes[i]);
        idem = std::max(idem, d.cwiseAbs().maxCoeff());
      }
    Complex rv = wodzicki_res(pi, po.grid);
    res["value"] = complex_to_json(rv);
    res["idempotency_residual"] = idem;
    res["uncertainty"] = 0.0;
    res["method"] = "symbolic";
  } else if (cmd == "zeta") {
    MeromorphicSample s = zeta(sym, z, a.theta, spectra_opts(a));
    res["value"] = complex_to_json(s.value);
    res["uncertainty"] = s.truncation_uncertainty;
    res["method"] = s.method;
    write_samples_csv(a.out_prefix + ".samples.csv", {s});
  } else if (cmd == "eta") {
    MeromorphicSample s = eta(sym, z, a.theta, a.theta_prime, spectra_opts(a));
    res["value"] = complex_to_json(s.value);
    res["uncertainty"] = s.truncation_uncertainty;
    res["method"] = s.method;
    write_samples_csv(a.out_prefix + ".samples.csv", {s});
  } else if (cmd == "poles") {
    PoleReport rep = zeta_pole(sym, a.pole_j, a.theta, spectra_opts(a));
    res["value"] = complex_to_json(rep.residue_formula_value);
    res["pole"] = {{"location", complex_to_json(rep.location)},
                   {"residue", complex_to_json(rep.residue)},
                   {"predicted_location", complex_to_json(rep.predicted_location)},
                   {"residue_formula_value", complex_to_json(rep.residue_formula_value)},
                   {"fit_residual", rep.fit_residual}};
    res["uncertainty"] = rep.fit_residual;
    res["method"] = "symbolic";
  } else if (cmd == "oracle") {
    auto d = oracle::discretize(sym, a.oracle_n);
    if (a.oracle_kind == "eigenvalues") {
      auto evs = oracle::eigenvalues(d, a.count);
      json arr = json::array();
      for (const auto& ev : evs) arr.push_back(complex_to_json(ev));
      res["eigenvalues"] = arr;
      res["value"] = complex_to_json(evs.empty() ? Complex(0, 0) : evs[0]);
      res["uncertainty"] = 0.0;
    } else if (a.oracle_kind == "zeta" || a.oracle_kind == "eta") {
      auto s = oracle::spectral_sum(
          d, a.oracle_kind == "zeta" ? oracle::SumKind::Zeta : oracle::SumKind::Eta, z);
      res["value"] = complex_to_json(s.value);
      res["uncertainty"] = s.truncation_uncertainty;
      write_samples_csv(a.out_prefix + ".samples.csv", {s});
    } else if (a.oracle_kind == "trace") {
      auto t = oracle::trace(d);
      res["value"] = complex_to_json(t.value);
      res["uncertainty"] = t.uncertainty;
    } else {
      fail("BadArgument", "oracle kind must be eigenvalues|zeta|eta|trace");
    }
    res["method"] = "oracle";
  } else {
    fail("BadArgument", "unknown command " + cmd);
  }
  write_result(a, res, elapsed());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Shubin symbol calculus: residues, finite-part integrals, complex powers, "
               "sectorial projections, spectral zeta and eta functions"};
  app.require_subcommand(1);
  CommonArgs a;

  auto add_common = [&](CLI::App* cmd, bool needs_symbol) {
    if (needs_symbol)
      cmd->add_option("--symbol", a.symbol_path, "symbol definition JSON")->required();
    cmd->add_option("--out", a.out_prefix, "output path prefix");
    cmd->add_option("--format", a.format, "json|csv|both");
    cmd->add_option("--grid", a.grid_nodes, "sphere grid nodes (n = 1)");
    cmd->add_option("--depth", a.depth, "expansion depth");
  };

  auto* c_res = app.add_subcommand("residue", "Wodzicki residue of a symbol");
  add_common(c_res, true);
  auto* c_kv = app.add_subcommand("kv", "Kontsevich-Vishik finite-part integral");
  add_common(c_kv, true);
  c_kv->add_option("--p", a.p, "formula depth p");
  auto* c_pow = app.add_subcommand("power", "complex power a_theta^z");
  add_common(c_pow, true);
  c_pow->add_option("--z", a.z_re, "exponent (real part)");
  c_pow->add_option("--z-im", a.z_im, "exponent (imaginary part)");
  c_pow->add_option("--theta", a.theta, "branch-cut ray angle");
  auto* c_proj = app.add_subcommand("project", "sectorial projection Pi_{theta,theta'}");
  add_common(c_proj, true);
  c_proj->add_option("--theta", a.theta, "first ray");
  c_proj->add_option("--theta-prime", a.theta_prime, "second ray");
  auto* c_zeta = app.add_subcommand("zeta", "spectral zeta via TR(a_theta^{-z})");
  add_common(c_zeta, true);
  c_zeta->add_option("--z", a.z_re, "argument (real part)");
  c_zeta->add_option("--z-im", a.z_im, "argument (imaginary part)");
  c_zeta->add_option("--theta", a.theta, "branch-cut ray angle");
  c_zeta->add_option("--p", a.p, "TR depth p");
  auto* c_eta = app.add_subcommand("eta", "spectral eta via TR(a # (a#a)^{-(z+1)/2})");
  add_common(c_eta, true);
  c_eta->add_option("--z", a.z_re, "argument (real part)");
  c_eta->add_option("--z-im", a.z_im, "argument (imaginary part)");
  c_eta->add_option("--theta", a.theta, "upper half-plane ray");
  c_eta->add_option("--theta-prime", a.theta_prime, "lower half-plane ray");
  auto* c_poles = app.add_subcommand("poles", "zeta pole location and residue");
  add_common(c_poles, true);
  c_poles->add_option("--j", a.pole_j, "pole index (location (2n-j)/m)");
  c_poles->add_option("--theta", a.theta, "branch-cut ray angle");
  auto* c_oracle = app.add_subcommand("oracle", "Hermite-basis spectral oracle");
  add_common(c_oracle, true);
  c_oracle->add_option("--N", a.oracle_n, "basis size");
  c_oracle->add_option("--kind", a.oracle_kind, "eigenvalues|zeta|eta|trace");
  c_oracle->add_option("--count", a.count, "eigenvalue count");
  c_oracle->add_option("--z", a.z_re, "argument (real part)");
  c_oracle->add_option("--z-im", a.z_im, "argument (imaginary part)");
  auto* c_verify = app.add_subcommand("verify", "acceptance suites");
  add_common(c_verify, false);
  c_verify->add_option("--suite", a.suite,
                       "calculus|contour|functionals|zeta_ho|eta_regularity|all");
  c_verify->add_option("--symbol", a.symbol_path, "symbol override (informational)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  std::string cmd;
  for (auto* sc : app.get_subcommands()) cmd = sc->get_name();
  try {
    return run_command(cmd, a);
  } catch (const Error& e) {
    json res;
    res["error"] = {{"code", e.code()}, {"message", e.what()}};
    std::ofstream out(a.out_prefix + ".result.json");
    out << res.dump(2) << "\n";
    std::cerr << res.dump(2) << "\n";
    // validation-style failures exit 2; numerical failures exit 3
    const std::string& c = e.code();
    bool validation = c == "BadArgument" || c == "BadSymbolFile" || c == "Unsupported" ||
                      c == "UnsupportedSymbol" || c == "IoError";
    return validation ? 2 : 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
