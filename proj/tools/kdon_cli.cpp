#include <algorithm>
#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "kdon/blowup_poly.hpp"
#include "kdon/geometry.hpp"
#include "kdon/invariants.hpp"
#include "kdon/json_io.hpp"
#include "kdon/modular.hpp"
#include "kdon/verify.hpp"
#include "kdon/wallcross.hpp"

using namespace kdon;

namespace {

i64 env_dmax(i64 fallback) {
  const char* v = std::getenv("WALLCROSS_DMAX");
  if (!v || !*v) return fallback;
  try {
    return std::stoll(v);
  } catch (...) {
    throw std::invalid_argument("WALLCROSS_DMAX must be an integer, got '" + std::string(v) + "'");
  }
}

IntClass parse_int_class(const std::string& expr, const Surface& s) {
  if (expr == "0") return IntClass(s.rank(), 0);
  return to_int_class(parse_class(expr, s));
}

struct SeriesArgs {
  std::string name;
  i64 dmax = 24;
  i64 qmargin = 4;
  std::string format = "table";
};

void run_series(const SeriesArgs& a) {
  i64 D = std::max<i64>(a.dmax, 4);
  ContextPtr ctx = build_context(D, default_window(D, a.qmargin));
  BiSeries s;
  if (a.name == "u")
    s = BiSeries::from_qseries(ctx->u(), 0);
  else if (a.name == "uprime")
    s = BiSeries::from_qseries(ctx->uprime(), 0);
  else if (a.name == "h")
    s = ctx->h();
  else if (a.name == "hstar")
    s = ctx->hstar();
  else if (a.name == "zeta")
    s = ctx->zeta();
  else if (a.name == "M")
    s = ctx->M();
  else if (a.name == "theta4h")
    s = ctx->theta4h();
  else if (a.name == "theta1h")
    s = ctx->theta1h();
  else
    throw std::invalid_argument("unknown series name: " + a.name);
  if (a.format == "json")
    std::cout << biseries_to_json(s) << "\n";
  else
    std::cout << a.name << " through L^" << s.lambda_trunc() << ":\n" << biseries_table(s);
}

struct DeltaArgs {
  std::string surface = "P2hat";
  std::string xi;
  std::string L;
  i64 dmax = 24;
  i64 qmargin = 4;
  std::string format = "table";
};

void run_delta(const DeltaArgs& a) {
  Surface s = surface_by_name(a.surface);
  IntClass xi = parse_int_class(a.xi, s);
  IntClass L = parse_int_class(a.L, s);
  i64 D = std::max<i64>(a.dmax, 4);
  ContextPtr ctx = build_context(D, default_window(D, a.qmargin));
  LambdaPoly p = delta(ctx, s, xi, L, a.dmax);
  if (a.format == "json")
    std::cout << delta_to_json(class_str(s, xi), p) << "\n";
  else
    std::cout << "crossing term for xi = " << class_str(s, xi) << ", L = " << class_str(s, L)
              << " on " << s.name << " through L^" << a.dmax << ":\n" << lambda_poly_table(p);
}

struct WallsArgs {
  std::string surface = "P1xP1";
  std::string c1 = "0";
  std::string L;
  std::string from;
  std::string to;
  i64 dmax = 24;
  std::string format = "table";
};

void run_walls(const WallsArgs& a) {
  Surface s = surface_by_name(a.surface);
  IntClass c1 = parse_int_class(a.c1, s);
  IntClass L = parse_int_class(a.L, s);
  PolSpec from = parse_polspec(a.from, s);
  PolSpec to = parse_polspec(a.to, s);
  struct Row {
    Wall w;
    bool on_target;
  };
  std::vector<Row> rows;
  for (const Wall& w : walls_between(s, c1, from, to, L, a.dmax, false)) rows.push_back({w, false});
  for (const Wall& w : walls_between(s, c1, from, to, L, a.dmax, true)) rows.push_back({w, true});
  std::sort(rows.begin(), rows.end(), [](const Row& x, const Row& y) {
    return std::tie(x.w.minus_xi_sq, x.w.xi) < std::tie(y.w.minus_xi_sq, y.w.xi);
  });
  if (a.format == "json") {
    nlohmann::json arr = nlohmann::json::array();
    for (const Row& r : rows)
      arr.push_back({{"xi", class_str(s, r.w.xi)},
                     {"xi_sq", -r.w.minus_xi_sq},
                     {"N", r.w.N},
                     {"on_target", r.on_target}});
    nlohmann::json out{{"surface", s.name}, {"c1", class_str(s, c1)},   {"L", class_str(s, L)},
                       {"from", a.from},    {"to", a.to},               {"d_max", a.dmax},
                       {"count", rows.size()}, {"walls", std::move(arr)}};
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << rows.size() << " wall(s) between " << a.from << " and " << a.to << " on " << s.name
              << " (c1 = " << class_str(s, c1) << ", L = " << class_str(s, L) << ", d <= " << a.dmax
              << "):\n  xi  xi^2  N  position\n";
    for (const Row& r : rows)
      std::cout << "  " << class_str(s, r.w.xi) << "  " << -r.w.minus_xi_sq << "  " << r.w.N << "  "
                << (r.on_target ? "on-target" : "strict") << "\n";
  }
}

struct ChiArgs {
  std::string surface = "P1xP1";
  std::string c1 = "0";
  std::string L;
  std::string pol;
  i64 dmax = 24;
  i64 qmargin = 4;
  int jobs = 0;
  bool conventioned = false;
  std::string format = "table";
};

void run_chi(const ChiArgs& a) {
  Surface s = surface_by_name(a.surface);
  IntClass c1 = parse_int_class(a.c1, s);
  Class L = parse_class(a.L, s);
  PolSpec pol = parse_polspec(a.pol, s);
  i64 D = a.dmax + 1;
  ContextPtr ctx = build_context(D, default_window(D, a.qmargin));
  GenFun g = chi_at(ctx, s, c1, L, pol, a.dmax);
  if (a.conventioned) g = kdon_convention(g);
  if (a.format == "json")
    std::cout << genfun_to_json(s, g) << "\n";
  else
    std::cout << genfun_table(s, g);
}

struct VerifyArgs {
  std::string suite = "all";
  i64 dmax = 0;  // 0 = the suite's published depth
  i64 qmargin = 4;
  int jobs = 0;
  std::string format = "table";
};

int run_verify_cmd(const VerifyArgs& a) {
  VerifyReport rep = run_verify(a.suite, a.dmax, a.qmargin, a.jobs);
  if (a.format == "json")
    std::cout << report_to_json(rep) << "\n";
  else
    std::cout << report_table(rep);
  return rep.pass ? 0 : 1;
}

struct BlowupArgs {
  i64 n = 0;
  std::string format = "table";
};

void run_blowup_poly(const BlowupArgs& a) {
  if (a.n < -64 || a.n > 64) throw std::invalid_argument("--n must lie in [-64, 64]");
  BlowupPoly bp = blowup_poly(a.n);
  if (a.format == "json") {
    auto terms = [](const Poly2& p) {
      nlohmann::json arr = nlohmann::json::array();
      for (const auto& [k, c] : p.terms())
        arr.push_back({{"x", k.first}, {"l", k.second}, {"c", rat_str(c)}});
      return arr;
    };
    nlohmann::json out{{"n", bp.n},
                       {"R", bp.R.str()},
                       {"S", bp.S.str()},
                       {"R_terms", terms(bp.R)},
                       {"S_terms", terms(bp.S)}};
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << "R_" << bp.n << " = " << bp.R.str() << "\n"
              << "S_" << bp.n << " = " << bp.S.str() << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact wall-crossing calculator for sheaf-counting generating functions on rational surfaces"};
  app.require_subcommand(1);
  int rc = 0;

  const std::string fmt_help = "output format";
  auto fmt_check = CLI::IsMember({"table", "json"});

  SeriesArgs sa;
  sa.dmax = env_dmax(24);
  auto* series = app.add_subcommand("series", "print one of the shared series blocks");
  series->add_option("--name", sa.name, "one of u, uprime, h, hstar, zeta, M, theta4h, theta1h")
      ->required();
  series->add_option("--dmax", sa.dmax, "Lambda truncation")->capture_default_str();
  series->add_option("--qmargin", sa.qmargin, "extra q-window")->capture_default_str();
  series->add_option("--format", sa.format, fmt_help)->check(fmt_check)->capture_default_str();
  series->callback([&] { run_series(sa); });

  DeltaArgs da;
  da.dmax = env_dmax(24);
  auto* del = app.add_subcommand("delta", "wall contribution polynomial for one crossing class");
  del->add_option("--surface", da.surface, "surface name")->capture_default_str();
  del->add_option("--xi", da.xi, "crossing class, e.g. 2E")->required();
  del->add_option("--L", da.L, "twisting class, e.g. H")->required();
  del->add_option("--dmax", da.dmax, "Lambda truncation")->capture_default_str();
  del->add_option("--qmargin", da.qmargin, "extra q-window")->capture_default_str();
  del->add_option("--format", da.format, fmt_help)->check(fmt_check)->capture_default_str();
  del->callback([&] { run_delta(da); });

  WallsArgs wa;
  wa.dmax = env_dmax(24);
  auto* walls = app.add_subcommand("walls", "enumerate walls between two polarization chains");
  walls->add_option("--surface", wa.surface, "surface name")->capture_default_str();
  walls->add_option("--c1", wa.c1, "determinant class mod 2")->capture_default_str();
  walls->add_option("--L", wa.L, "twisting class")->required();
  walls->add_option("--from", wa.from, "source polarization chain, e.g. F+ or 3F+2G")->required();
  walls->add_option("--to", wa.to, "target polarization chain")->required();
  walls->add_option("--dmax", wa.dmax, "Lambda truncation")->capture_default_str();
  walls->add_option("--format", wa.format, fmt_help)->check(fmt_check)->capture_default_str();
  walls->callback([&] { run_walls(wa); });

  ChiArgs ca;
  ca.dmax = env_dmax(24);
  auto* chi = app.add_subcommand("chi", "generating function at a polarization chain");
  chi->add_option("--surface", ca.surface, "surface name")->capture_default_str();
  chi->add_option("--c1", ca.c1, "determinant class mod 2")->capture_default_str();
  chi->add_option("--L", ca.L, "twisting class")->required();
  chi->add_option("--pol", ca.pol, "polarization chain, e.g. F+, G+, or H,-E")->required();
  chi->add_option("--dmax", ca.dmax, "Lambda truncation")->capture_default_str();
  chi->add_option("--qmargin", ca.qmargin, "extra q-window")->capture_default_str();
  chi->add_option("--jobs", ca.jobs, "worker threads (0 = all cores)")->capture_default_str();
  chi->add_flag("--conventioned", ca.conventioned,
                "apply the degree-4 boundary convention (c1 = 0 only)");
  chi->add_option("--format", ca.format, fmt_help)->check(fmt_check)->capture_default_str();
  chi->callback([&] { run_chi(ca); });

  VerifyArgs va;
  va.dmax = env_dmax(0);
  auto* ver = app.add_subcommand("verify", "run a verification suite");
  std::vector<std::string> suite_names = verify_suites();
  suite_names.push_back("all");
  ver->add_option("--suite", va.suite, "suite name")
      ->check(CLI::IsMember(suite_names))
      ->capture_default_str();
  ver->add_option("--dmax", va.dmax, "Lambda depth (0 = suite default)")->capture_default_str();
  ver->add_option("--qmargin", va.qmargin, "extra q-window")->capture_default_str();
  ver->add_option("--jobs", va.jobs, "worker threads (0 = all cores)")->capture_default_str();
  ver->add_option("--format", va.format, fmt_help)->check(fmt_check)->capture_default_str();
  ver->callback([&] { rc = run_verify_cmd(va); });

  BlowupArgs ba;
  auto* bp = app.add_subcommand("blowup-poly", "print the recursion polynomials R_n, S_n");
  bp->add_option("--n", ba.n, "index")->required();
  bp->add_option("--format", ba.format, fmt_help)->check(fmt_check)->capture_default_str();
  bp->callback([&] { run_blowup_poly(ba); });

  VerifyArgs dva;
  dva.suite = "dims";
  auto* dims = app.add_subcommand("dims", "check the section-count dimension identity");
  dims->add_option("--format", dva.format, fmt_help)->check(fmt_check)->capture_default_str();
  dims->callback([&] { rc = run_verify_cmd(dva); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const WindowError& e) {
    std::cerr << "window failure: " << e.what() << " (rerun with a larger --qmargin)\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "failure: " << e.what() << "\n";
    return 1;
  }
  return rc;
}
