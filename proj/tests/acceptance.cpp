// Acceptance gate: runs every release criterion and prints one PASS/FAIL
// line per criterion.  Exit code 0 only if every selected criterion passes
// inside its wall-clock budget.  `--criterion N` restricts the run to one.
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <exception>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>

#include <gmpxx.h>

#include "kdon/geometry.hpp"
#include "kdon/invariants.hpp"
#include "kdon/lambda_poly.hpp"
#include "kdon/modular.hpp"
#include "kdon/verify.hpp"
#include "kdon/wallcross.hpp"
#include "test_util.hpp"

using namespace kdon;
using testutil::poly;

namespace {

bool run_suite(const char* name, std::string& detail) {
  VerifyReport rep = run_verify(name, 0, 4, 0);
  size_t failed = 0;
  std::string first;
  for (const CheckResult& c : rep.checks)
    if (!c.pass && ++failed == 1) first = c.name + " - " + c.detail;
  detail = std::to_string(rep.checks.size()) + " checks";
  if (rep.retried) detail += ", retried with a wider q-window";
  if (failed) detail += ", " + std::to_string(failed) + " failed; first: " + first;
  return rep.pass;
}

bool crit_modular(std::string& detail) { return run_suite("modular", detail); }
bool crit_kernels(std::string& detail) { return run_suite("theth", detail); }
bool crit_walls(std::string& detail) { return run_suite("walls", detail); }
bool crit_families(std::string& detail) { return run_suite("p11t", detail); }
bool crit_plane(std::string& detail) { return run_suite("P22", detail); }
bool crit_blowup(std::string& detail) { return run_suite("blowup", detail); }
bool crit_dims(std::string& detail) { return run_suite("dims", detail); }

// Pinned values of the crossing terms for the doubled and simple exceptional
// classes on the blown-up plane.
bool crit_exceptional(std::string& detail) {
  ContextPtr ctx = build_context(12, default_window(12));
  Surface ph = surface_p2hat();
  int checked = 0;

  const std::pair<IntClass, LambdaPoly> doubled[] = {
      {{1, 0}, poly({{4, 1}})},
      {{1, -1}, poly({{4, 2}, {8, -18}})},
      {{2, 0}, poly({{4, 1}})},
      {{2, -1}, poly({{4, 2}, {8, -27}})},
      {{3, -1}, poly({{4, 2}, {8, -38}})},
  };
  for (const auto& [L, want] : doubled) {
    if (delta(ctx, ph, {0, 2}, L, 8) != want) {
      detail = "doubled exceptional class disagrees at L = " + class_str(ph, L);
      return false;
    }
    ++checked;
  }

  for (i64 k = 1; k <= 5; ++k) {
    LambdaPoly want = poly({{5, k * k + 6 * k + 11}});
    if (delta(ctx, ph, {0, 1}, {k, 0}, 7) != want) {
      detail = "simple exceptional class disagrees at k = " + std::to_string(k);
      return false;
    }
    ++checked;
  }
  detail = std::to_string(checked) + " pinned values";
  return true;
}

// Chamber-to-chamber sums compose, and the two rulings of the quadric play
// symmetric roles.
bool crit_chambers(std::string& detail) {
  const i64 dm = 12;
  ContextPtr ctx = build_context(13, default_window(13));
  Surface pp = surface_p1xp1();
  std::mt19937_64 rng(20260815u);
  std::uniform_int_distribution<i64> coord(1, 12);
  const IntClass c1s[2] = {{0, 0}, {1, 0}};
  const IntClass twists[4] = {{0, 0}, {1, 0}, {0, 2}, {1, 2}};

  for (int t = 0; t < 20; ++t) {
    const IntClass& c1 = c1s[t % 2];
    const IntClass& L = twists[t % 4];
    auto sample = [&]() -> Class {
      for (int tries = 0; tries < 200; ++tries) {
        Class h{mpq_class(coord(rng)), mpq_class(coord(rng))};
        if (walls_on(pp, c1, PolSpec{{h}}, L, dm).empty()) return h;
      }
      throw std::runtime_error("no off-wall polarization found in 200 draws");
    };
    Class h1 = sample(), h2 = sample(), h3 = sample();
    PolSpec p1{{h1}}, p2{{h2}}, p3{{h3}};
    LambdaPoly leg12 = wall_sum(ctx, pp, c1, L, p1, p2, dm);
    LambdaPoly leg23 = wall_sum(ctx, pp, c1, L, p2, p3, dm);
    LambdaPoly leg13 = wall_sum(ctx, pp, c1, L, p1, p3, dm);
    if (!(leg12 + leg23 == leg13)) {
      detail = "composition failed on triple " + std::to_string(t + 1);
      return false;
    }
  }

  const std::pair<i64, i64> nm[10] = {{0, 1}, {1, 1}, {1, 2}, {2, 1}, {2, 2},
                                      {0, 3}, {3, 1}, {2, 3}, {3, 2}, {1, 4}};
  for (auto [n, m] : nm) {
    GenFun g = chi_at(ctx, pp, {0, 0}, Class{mpq_class(n), mpq_class(m)},
                      parse_polspec("G+", pp), dm);
    GenFun f = chi_at(ctx, pp, {0, 0}, Class{mpq_class(m), mpq_class(n)},
                      parse_polspec("F+", pp), dm);
    if (!(g.series == f.series)) {
      detail = "ruling swap failed at (" + std::to_string(n) + ", " + std::to_string(m) + ")";
      return false;
    }
  }
  detail = "20 random chamber triples, 10 ruling swaps";
  return true;
}

struct Criterion {
  int id;
  const char* label;
  double budget_s;
  bool (*fn)(std::string&);
};

const Criterion kCriteria[] = {
    {1, "modular block expansions", 10.0, crit_modular},
    {2, "boundary kernel leading terms", 30.0, crit_kernels},
    {3, "exceptional wall values", 30.0, crit_exceptional},
    {4, "random wall properties", 120.0, crit_walls},
    {5, "ruled fiber-limit families", 300.0, crit_families},
    {6, "plane series via blowdown", 180.0, crit_plane},
    {7, "blowup recursion polynomials", 60.0, crit_blowup},
    {8, "chamber additivity and ruling swap", 180.0, crit_chambers},
    {9, "moduli dimension counts", 1.0, crit_dims},
};

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) {
      only = std::atoi(argv[++i]);
    } else {
      std::fprintf(stderr, "usage: acceptance [--criterion N]\n");
      return 2;
    }
  }
  if (only != 0) {
    bool known = false;
    for (const Criterion& c : kCriteria) known = known || c.id == only;
    if (!known) {
      std::fprintf(stderr, "no such criterion: %d\n", only);
      return 2;
    }
  }

  bool all_pass = true;
  for (const Criterion& c : kCriteria) {
    if (only != 0 && c.id != only) continue;
    auto t0 = std::chrono::steady_clock::now();
    bool ok = false;
    std::string detail;
    try {
      ok = c.fn(detail);
    } catch (const std::exception& e) {
      ok = false;
      detail = std::string("exception: ") + e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (ok && secs > c.budget_s) {
      ok = false;
      detail += (detail.empty() ? "" : "; ") + std::string("over time budget");
    }
    std::printf("%s criterion %d: %s (%.1fs, budget %.0fs%s%s)\n", ok ? "PASS" : "FAIL", c.id,
                c.label, secs, c.budget_s, detail.empty() ? "" : "; ", detail.c_str());
    std::fflush(stdout);
    all_pass = all_pass && ok;
  }
  return all_pass ? 0 : 1;
}
