// Acceptance report: one PASS/FAIL line per criterion, followed by indented
// detail lines. Exit status is non-zero if a gating criterion fails;
// criterion 8 is reported only.

#include <chrono>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "support/bench.hpp"
#include "support/checks.hpp"
#include "support/fixtures.hpp"
#include "support/random_instances.hpp"
#include "troplp/troplp.hpp"

using namespace troplp;
using fixtures::p;
using fixtures::q;

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

int gating_failures = 0;

void report(int id, bool ok, const std::string& what, bool gating = true) {
  std::printf("[%s] criterion %d: %s%s\n", ok ? "PASS" : "FAIL", id, what.c_str(),
              gating ? "" : " (reported, not gating)");
  if (!ok && gating) ++gating_failures;
}

void detail(const std::string& s) { std::printf("       %s\n", s.c_str()); }

std::string show(const Vec& x) {
  std::string s = "(";
  for (std::size_t j = 0; j < x.size(); ++j) s += (j ? "," : "") + format_num(x[j]);
  return s + ")";
}

std::string show(const std::vector<SymTrop>& y) {
  std::string s = "(";
  for (std::size_t j = 0; j < y.size(); ++j) s += (j ? ", " : "") + to_string(y[j]);
  return s + ")";
}

// One-based labels: rows as H<i>, coordinate sets as {j,...}.
std::string show_rows(const std::vector<std::size_t>& rows) {
  std::string s = "{";
  for (std::size_t k = 0; k < rows.size(); ++k) s += (k ? "," : "") + ("H" + std::to_string(rows[k] + 1));
  return s + "}";
}

std::string show_set(const std::vector<std::size_t>& set) {
  std::string s = "{";
  for (std::size_t k = 0; k < set.size(); ++k) s += (k ? "," : "") + std::to_string(set[k] + 1);
  return s + "}";
}

std::string show_path(const SolveResult& r) {
  std::string s;
  for (const Iteration& it : r.iterations) s += (s.empty() ? "" : " -> ") + show(it.point);
  return s;
}

std::vector<Trop> valuations(const std::vector<PuiseuxNum>& x) {
  std::vector<Trop> v;
  for (const PuiseuxNum& e : x) v.push_back(e.valuation());
  return v;
}

std::vector<Trop> as_trop(const Vec& x) { return {x.begin(), x.end()}; }

void criterion_1() {
  const Instance inst = fixtures::running_example();
  auto t0 = Clock::now();
  SolveResult r = solve(inst, {0, 1, 4}, {.rule = PivotRule::Bland});
  double ms = ms_since(t0);
  std::vector<Vec> expect{{4, 4, 2}, {1, 0, 0}, {0, 0, 0}};
  std::vector<Vec> got;
  for (const Iteration& it : r.iterations) got.push_back(it.point);
  bool path_ok = got == expect;
  bool obj_ok = r.final().objective == Trop(0L);
  char buf[64];
  std::snprintf(buf, sizeof buf, ", %.2f ms (limit 10 ms)", ms);
  report(1, path_ok && obj_ok && ms < 10,
         "Bland path from {H1,H2,H5}: " + show_path(r) + ", objective " + to_string(r.final().objective) +
             buf);
  if (!path_ok) {
    detail("expected (4,4,2) -> (1,0,0) -> (0,0,0). Bland leaves the smallest row with a negative");
    detail("reduced cost: at (4,4,2) y = (⊖(-1), -1, ⊖4) on {H1,H2,H5}, so H1 leaves, not H5.");
    SolveResult most = solve(inst, {0, 1, 4}, {.rule = PivotRule::MostNegative});
    detail("most-negative rule (H5 leaves first): " + show_path(most) + ", objective " +
           to_string(most.final().objective));
  }
}

void criterion_2() {
  const Instance inst = fixtures::running_example();
  struct Case {
    std::vector<std::size_t> basis;
    std::vector<SymTrop> y;
  };
  std::vector<Case> cases{{{0, 1, 4}, {q(-1), p(-1), q(4)}},
                          {{0, 1, 2}, {q(-1), p(-1), p(0)}},
                          {{1, 2, 3}, {p(-1), p(0), p(-2)}}};
  bool ok = true;
  std::vector<std::string> lines;
  for (const Case& c : cases) {
    Certificate cert = certify(inst, c.basis);
    ok = ok && cert.reduced_costs == c.y;
    lines.push_back(show_rows(c.basis) + " at " + show(cert.point) + ": " + show(cert.reduced_costs) +
                    (cert.reduced_costs == c.y ? "" : ", expected " + show(c.y)));
  }
  report(2, ok, "reduced costs at the bases of the most-negative run");
  for (const std::string& s : lines) detail(s);
}

void criterion_3() {
  const Instance inst = fixtures::running_example();
  PivotResult r = pivot(inst.W(), Vec{4, 4, 2}, {0, 1, 4}, 4);
  std::vector<Vec> starts;
  std::vector<Rational> mus;
  std::vector<std::vector<std::size_t>> Js;
  for (const Segment& s : r.trace) {
    starts.push_back(dehomogenize(s.start));
    mus.push_back(s.mu);
    Js.push_back(s.J);
  }
  bool breaks_ok = starts.size() == 3 && starts[1] == Vec{2, 2, 0} && starts[2] == Vec{1, 1, 0};
  bool mu_ok = mus == std::vector<Rational>{2, 1, 1};
  bool J_ok = Js == std::vector<std::vector<std::size_t>>{{3}, {2, 3}, {0, 2, 3}};
  bool enter_ok = r.entering == 2 && r.point == Vec{1, 0, 0};
  std::string trace;
  for (std::size_t k = 0; k < r.trace.size(); ++k)
    trace += (k ? ", " : "") + show(starts[k]) + " J=" + show_set(Js[k]) + " mu=" + format_num(mus[k]);
  report(3, breaks_ok && mu_ok && J_ok && enter_ok,
         "first pivot (H5 leaves): " + trace + "; enters " + show_rows({r.entering}) + " at " + show(r.point));
  detail("the entering row is H3 (x2 >= 0), the only new tight row at (1,0,0); the label");
  detail("\"0 >= x2 - 4\" in the criterion is H5, the leaving row, slack at (1,0,0).");
}

void criterion_4() {
  std::vector<SymTrop> y = cramer_solve(fixtures::cramer_example_M(), fixtures::cramer_example_d());
  std::vector<SymTrop> expect{q(-1), p(-1), p(0)};
  report(4, y == expect, "Cramer fixture: " + show(y));
}

void criterion_5() {
  auto t0 = Clock::now();
  GenericityReport first = check_generic(fixtures::first_example_W());
  GenericityReport running = check_generic(fixtures::running_example().W());
  double ms = ms_since(t0);
  auto witness = [](const std::optional<Submatrix>& w) {
    return w ? "rows " + show_set(w->rows) + " x cols " + show_set(w->cols) : std::string("none");
  };
  bool first_ok = !first.generic && !first.sign_generic && first.not_generic_witness &&
                  first.not_generic_witness->rows == std::vector<std::size_t>{0, 1} &&
                  first.not_generic_witness->cols == std::vector<std::size_t>{0, 1} &&
                  first.not_sign_generic_witness &&
                  first.not_sign_generic_witness->rows == std::vector<std::size_t>{1, 2} &&
                  first.not_sign_generic_witness->cols == std::vector<std::size_t>{0, 2};
  bool running_ok = running.checked && running.generic && running.sign_generic;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2f ms (limit 1000 ms)", ms);
  report(5, first_ok && running_ok && ms < 1000, std::string("genericity fixtures, ") + buf);
  detail("first example: not generic at " + witness(first.not_generic_witness) + ", not sign generic at " +
         witness(first.not_sign_generic_witness));
  detail(std::string("running example: ") + (running.generic ? "generic" : "not generic") + ", " +
         (running.sign_generic ? "sign generic" : "not sign generic") + " (" +
         std::to_string(running.submatrices) + " submatrices)");
}

// Criteria 6 and 7 share one run.
void criteria_6_7() {
  gen::Rng rng(20240601);
  std::size_t instances = 0, pivots = 0, breakpoints = 0, attempts = 0;
  std::size_t bad_enum = 0, bad_lift = 0, bad_path = 0, bad_incremental = 0, errors = 0;
  std::string first_problem, first_incremental;
  auto t0 = Clock::now();
  for (std::size_t n = 2; n <= 4; ++n)
    for (std::size_t m = n + 1; m <= 8; ++m)
      for (int rep = 0; rep < 14; ++rep) {
        gen::Sample s = gen::standard_instance(rng, n, m);
        attempts += s.attempts;
        ++instances;
        const Matrix<SymTrop> W = s.inst.W();
        std::string where = "n=" + std::to_string(n) + " m=" + std::to_string(m) + " #" + std::to_string(rep);
        try {
          SolveOptions opt;
          opt.on_breakpoint = [&](const SegmentState& st, const TangentDigraph& at) {
            ++breakpoints;
            std::string why = checks::incremental_matches(W, st, at);
            if (!why.empty()) {
              ++bad_incremental;
              if (first_incremental.empty()) first_incremental = where + ": " + why;
            }
          };
          SolveResult r = solve(s.inst, s.basis, opt);
          pivots += r.iterations.size() - 1;
          const Trop best = s.enumeration.feasible[*s.enumeration.best].objective;
          if (r.final().objective != best) {
            ++bad_enum;
            if (first_problem.empty()) first_problem = where + ": enumeration minimum differs";
          }
          LiftedLP lp = lift(s.inst);
          ClassicalResult c = classical_simplex(lp, s.basis, PivotRule::Bland);
          if (!c.optimal || c.path.back().objective.valuation() != r.final().objective) {
            ++bad_lift;
            if (first_problem.empty()) first_problem = where + ": lifted optimum differs";
          }
          bool same = c.path.size() == r.iterations.size();
          for (std::size_t k = 0; same && k < c.path.size(); ++k)
            same = valuations(c.path[k].point) == as_trop(r.iterations[k].point);
          if (!same) {
            ++bad_path;
            if (first_problem.empty()) first_problem = where + ": lifted path differs";
          }
        } catch (const Error& e) {
          ++errors;
          if (first_problem.empty()) first_problem = where + ": " + e.what();
        }
      }
  double sec = ms_since(t0) / 1000;
  char buf[160];
  std::snprintf(buf, sizeof buf, "%zu instances, %zu pivots, %.1f s (limit 300 s)", instances, pivots, sec);
  bool ok6 = instances >= 200 && bad_enum == 0 && bad_lift == 0 && bad_path == 0 && errors == 0 && sec < 300;
  report(6, ok6, std::string("oracle equivalence: ") + buf);
  detail("mismatches: enumeration " + std::to_string(bad_enum) + ", lifted optimum " + std::to_string(bad_lift) +
         ", lifted path " + std::to_string(bad_path) + ", errors " + std::to_string(errors) + "; " +
         std::to_string(attempts) + " samples drawn");
  if (!first_problem.empty()) detail("first: " + first_problem);
  report(7, bad_incremental == 0 && breakpoints > 0,
         "incremental structures at " + std::to_string(breakpoints) + " breakpoints, " +
             std::to_string(bad_incremental) + " mismatches");
  if (!first_incremental.empty()) detail("first: " + first_incremental);
}

void criterion_8() {
  auto t0 = Clock::now();
  std::vector<bench::Cell> cells = bench::sweep(7, 40);
  double spread = bench::spread(cells);
  std::size_t resampled = 0;
  double lo = cells[0].c, hi = cells[0].c;
  for (const bench::Cell& c : cells) {
    resampled += c.resampled;
    lo = std::min(lo, c.c);
    hi = std::max(hi, c.c);
  }
  char buf[160];
  std::snprintf(buf, sizeof buf, "ops/(n(m+n)) in [%.3f, %.3f], spread %.2fx (limit 3x), %.1f s", lo, hi, spread,
                ms_since(t0) / 1000);
  report(8, spread <= 3, std::string("pivot operation counts: ") + buf, false);
  detail(std::to_string(cells.size()) + " cells (n in 3..6, m in 2n..8n step n), 40 pivots each, " +
         std::to_string(resampled) + " draws resampled; per-cell table: pivot_bench");
}

void criterion_9() {
  auto T = [](long coef, long exp) { return GenPoly::monomial(Rational(coef), Rational(exp)); };
  const GenPoly one(Rational(1));
  LiftedLP lp;
  lp.n = 1;
  lp.m = 3;
  lp.A = Matrix<GenPoly>{{T(-1, 0)}, {one}, {one}};
  lp.b = {one, T(-1, 2), T(-1, 3)};
  lp.c = {one};
  lp.origin = {0, 1, 2};
  ClassicalResult r = classical_simplex(lp, {0});
  bool ok = r.optimal && r.path.size() == 2 && r.path[0].point[0] == PuiseuxNum(one) &&
            r.path[1].point[0] == PuiseuxNum(T(1, 2)) &&
            r.path[0].point[0] - r.path[1].point[0] == PuiseuxNum(one - T(1, 2));
  std::string got = r.path.empty() ? "no path" : to_string(r.path.back().point[0]);
  std::string len =
      r.path.size() == 2 ? to_string(r.path[0].point[0] - r.path[1].point[0]) : std::string("n/a");
  report(9, ok, "min x s.t. x <= 1, x >= t^2, x >= t^3: optimum " + got + ", edge length " + len);
}

}  // namespace

int main() {
  auto guarded = [](int id, auto fn) {
    try {
      fn();
    } catch (const std::exception& e) {
      report(id, false, std::string("threw: ") + e.what());
    }
  };
  guarded(1, criterion_1);
  guarded(2, criterion_2);
  guarded(3, criterion_3);
  guarded(4, criterion_4);
  guarded(5, criterion_5);
  guarded(6, criteria_6_7);
  guarded(8, criterion_8);
  guarded(9, criterion_9);
  std::printf("%d gating criteria failed\n", gating_failures);
  return gating_failures == 0 ? 0 : 1;
}
