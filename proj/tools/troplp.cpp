// troplp: command-line front end for the tropical simplex solver.
//
// Exit codes: 0 success, 1 other errors, 2 DegenerateInput/NotStandard,
// 3 verification mismatch, 64 usage errors.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "troplp/troplp.hpp"

using namespace troplp;
using json = nlohmann::json;

namespace {

constexpr int kExitDegenerate = 2;
constexpr int kExitMismatch = 3;
constexpr int kExitUsage = 64;

struct Options {
  std::string instance;
  std::string basis;
  std::string rule = "bland";
  std::string trace_path;
  std::string digraph_dir;
  std::string genericity = "exhaustive";
  long leave = -1;
  bool as_json = false;
  bool one_based = false;
  bool assume_positive = false;
};

Options opt;

std::size_t shown(std::size_t i) { return opt.one_based ? i + 1 : i; }

json idx(const std::vector<std::size_t>& v) {
  json j = json::array();
  for (std::size_t i : v) j.push_back(shown(i));
  return j;
}

json nums(const Vec& x) {
  json j = json::array();
  for (const Rational& v : x) j.push_back(num_to_json(v));
  return j;
}

json syms(const std::vector<SymTrop>& y) {
  json j = json::array();
  for (const SymTrop& v : y) j.push_back(to_string(v));
  return j;
}

std::string text(const Vec& x) {
  std::string s = "(";
  for (std::size_t j = 0; j < x.size(); ++j) s += (j ? ", " : "") + format_num(x[j]);
  return s + ")";
}

std::string text(const std::vector<SymTrop>& y) {
  std::string s = "(";
  for (std::size_t j = 0; j < y.size(); ++j) s += (j ? ", " : "") + to_string(y[j]);
  return s + ")";
}

std::string text(const std::vector<std::size_t>& v) {
  std::string s = "{";
  for (std::size_t k = 0; k < v.size(); ++k) s += (k ? "," : "") + std::to_string(shown(v[k]));
  return s + "}";
}

std::string cause(const Segment& s) {
  if (s.kind == StepKind::Enter) return "enter " + std::to_string(shown(s.row));
  return "break " + std::to_string(shown(s.row)) + (s.side > 0 ? " +" : " -");
}

json segments_json(const std::vector<Segment>& trace) {
  json j = json::array();
  for (const Segment& s : trace)
    j.push_back({{"point", nums(dehomogenize(s.start))},
                 {"J", idx(s.J)},
                 {"mu", num_to_json(s.mu)},
                 {"cause", cause(s)}});
  return j;
}

void print_segments(const std::vector<Segment>& trace) {
  for (const Segment& s : trace)
    std::cout << "    from " << text(dehomogenize(s.start)) << " J=" << text(s.J) << " mu=" << format_num(s.mu)
              << " -> " << cause(s) << "\n";
}

std::vector<std::size_t> parse_basis(const std::string& s) {
  std::vector<std::size_t> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    std::size_t used = 0;
    unsigned long v = 0;
    try {
      v = std::stoul(tok, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != tok.size()) fail(ErrorKind::Parse, "invalid basis entry '" + tok + "'");
    out.push_back(v);
  }
  return out;
}

// --basis, then the instance's initial_basis, then the first feasible basic
// point found by enumeration.
std::vector<std::size_t> start_basis(const Instance& inst) {
  if (!opt.basis.empty()) return parse_basis(opt.basis);
  if (inst.initial_basis) return *inst.initial_basis;
  Enumeration en = enumerate_basic_points(inst);
  ensure(!en.feasible.empty(), ErrorKind::NotStandard, "no feasible basic point");
  return en.feasible.front().basis;
}

PivotRule rule() { return opt.rule == "bland" ? PivotRule::Bland : PivotRule::MostNegative; }

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

void write_digraphs(const Instance& inst, const SolveResult& r) {
  namespace fs = std::filesystem;
  fs::create_directories(opt.digraph_dir);
  const Matrix<SymTrop> W = inst.W();
  auto write = [&](const std::string& name, const Vec& xi) {
    std::ofstream(fs::path(opt.digraph_dir) / (name + ".dot")) << to_dot(build_tangent(W, xi), name);
  };
  for (std::size_t k = 0; k < r.iterations.size(); ++k) {
    const Iteration& it = r.iterations[k];
    write("iter" + std::to_string(k) + "_basic", homogeneous(it.point));
    if (!it.pivot) continue;
    for (std::size_t s = 0; s < it.pivot->trace.size(); ++s) {
      const Segment& seg = it.pivot->trace[s];
      Vec mid = seg.start;
      for (std::size_t j : seg.J) mid[j] += seg.mu / 2;
      write("iter" + std::to_string(k) + "_seg" + std::to_string(s), mid);
    }
  }
}

int cmd_solve() {
  Instance inst = load_instance(opt.instance);
  SolveResult r = solve(inst, start_basis(inst), {.rule = rule()});
  json iters = json::array(), flat = json::array();
  for (std::size_t k = 0; k < r.iterations.size(); ++k) {
    const Iteration& it = r.iterations[k];
    json j = {{"basis", idx(it.basis)},
              {"point", nums(it.point)},
              {"objective", to_string(it.objective)},
              {"reduced_costs", syms(it.reduced_costs)}};
    if (it.pivot) {
      j["leaving"] = shown(it.pivot->leaving);
      j["entering"] = shown(it.pivot->entering);
      j["segments"] = segments_json(it.pivot->trace);
      for (json s : j["segments"]) {
        s["pivot"] = k;
        flat.push_back(s);
      }
    }
    iters.push_back(j);
  }
  if (!opt.trace_path.empty()) std::ofstream(opt.trace_path) << flat.dump(2) << "\n";
  if (!opt.digraph_dir.empty()) write_digraphs(inst, r);
  const Iteration& last = r.final();
  if (opt.as_json) {
    emit({{"rule", to_string(rule())},
          {"iterations", iters},
          {"basis", idx(last.basis)},
          {"point", nums(last.point)},
          {"objective", to_string(last.objective)}});
    return 0;
  }
  for (std::size_t k = 0; k < r.iterations.size(); ++k) {
    const Iteration& it = r.iterations[k];
    std::cout << "iteration " << k << ": basis " << text(it.basis) << " point " << text(it.point) << " objective "
              << it.objective << " reduced costs " << text(it.reduced_costs) << "\n";
    if (it.pivot) {
      std::cout << "  pivot: row " << shown(it.pivot->leaving) << " leaves, row " << shown(it.pivot->entering)
                << " enters\n";
      print_segments(it.pivot->trace);
    }
  }
  std::cout << "optimal: point " << text(last.point) << " objective " << last.objective << "\n";
  return 0;
}

int cmd_certify() {
  Instance inst = load_instance(opt.instance);
  std::vector<std::size_t> basis = start_basis(inst);
  Certificate c = certify(inst, basis);
  std::sort(basis.begin(), basis.end());
  if (opt.as_json) {
    emit({{"basis", idx(basis)},
          {"point", nums(c.point)},
          {"objective", to_string(c.objective)},
          {"reduced_costs", syms(c.reduced_costs)},
          {"optimal", c.optimal},
          {"improving", idx(c.improving)}});
    return 0;
  }
  std::cout << "basis " << text(basis) << " point " << text(c.point) << " objective " << c.objective << "\n"
            << "reduced costs " << text(c.reduced_costs) << "\n"
            << (c.optimal ? "OPTIMAL" : "NOT OPTIMAL: improving rows " + text(c.improving)) << "\n";
  return 0;
}

int cmd_reduced_costs() {
  Instance inst = load_instance(opt.instance);
  std::vector<std::size_t> basis = start_basis(inst);
  Vec x = start_point(inst, basis);
  std::vector<SymTrop> y = reduced_costs(inst, basis, x);
  if (opt.as_json) {
    emit({{"basis", idx(basis)}, {"point", nums(x)}, {"reduced_costs", syms(y)}});
    return 0;
  }
  for (std::size_t p = 0; p < basis.size(); ++p) std::cout << "row " << shown(basis[p]) << ": " << y[p] << "\n";
  return 0;
}

int cmd_pivot() {
  Instance inst = load_instance(opt.instance);
  std::vector<std::size_t> basis = start_basis(inst);
  Vec x = start_point(inst, basis);
  std::size_t leave = std::size_t(opt.leave);
  ensure(std::find(basis.begin(), basis.end(), leave) != basis.end(), ErrorKind::Shape,
         "--leave must name a row of the basis");
  PivotResult r = pivot(inst.W(), x, basis, leave);
  if (!opt.trace_path.empty()) std::ofstream(opt.trace_path) << segments_json(r.trace).dump(2) << "\n";
  if (opt.as_json) {
    emit({{"leaving", shown(r.leaving)},
          {"entering", shown(r.entering)},
          {"basis", idx(r.basis)},
          {"point", nums(r.point)},
          {"segments", segments_json(r.trace)},
          {"ops", r.stats.ops}});
    return 0;
  }
  std::cout << "row " << shown(r.leaving) << " leaves, row " << shown(r.entering) << " enters; basis " << text(r.basis)
            << " point " << text(r.point) << "\n";
  print_segments(r.trace);
  return 0;
}

int cmd_cramer() {
  json j = read_json_file(opt.instance);
  if (!j.is_object() || !j.contains("M") || !j.contains("d") || !j["d"].is_array())
    fail(ErrorKind::Parse, "expected an object with M and d");
  const std::size_t n = j["d"].size();
  Matrix<SymTrop> M = matrix_from_json(j["M"], n, n, "M");
  std::vector<SymTrop> d = vector_from_json(j["d"], n, "d");
  std::vector<SymTrop> y = cramer_solve(M, d);
  if (opt.as_json)
    emit({{"y", syms(y)}});
  else
    std::cout << text(y) << "\n";
  return 0;
}

int cmd_check() {
  Instance inst = load_instance(opt.instance);
  GenericityMode mode = opt.genericity == "asserted" ? GenericityMode::Asserted : GenericityMode::Exhaustive;
  Matrix<SymTrop> dual(inst.n, inst.m + 1);
  for (std::size_t j = 0; j < inst.n; ++j) {
    for (std::size_t i = 0; i < inst.m; ++i) dual(j, i) = inst.A(i, j);
    dual(j, inst.m) = SymTrop(Sign::Pos, inst.c[j]);
  }
  GenericityReport w = check_generic(inst.W(), mode), d = check_generic(dual, mode);
  bool ok = w.generic && w.sign_generic && d.sign_generic;
  auto witness = [](const std::optional<Submatrix>& s) -> json {
    if (!s) return nullptr;
    return {{"rows", idx(s->rows)}, {"cols", idx(s->cols)}};
  };
  if (opt.as_json) {
    emit({{"mode", opt.genericity},
          {"generic", w.generic},
          {"sign_generic", w.sign_generic},
          {"dual_sign_generic", d.sign_generic},
          {"not_generic_witness", witness(w.not_generic_witness)},
          {"not_sign_generic_witness", witness(w.not_sign_generic_witness)},
          {"dual_not_sign_generic_witness", witness(d.not_sign_generic_witness)},
          {"ok", ok}});
  } else {
    auto line = [](const char* what, const std::optional<Submatrix>& s) {
      if (s) std::cout << what << ": rows " << text(s->rows) << " x cols " << text(s->cols) << "\n";
    };
    line("W not generic", w.not_generic_witness);
    line("W not sign generic", w.not_sign_generic_witness);
    line("(A^T c^T) not sign generic", d.not_sign_generic_witness);
    std::cout << (ok ? (w.checked ? "OK" : "OK (asserted)") : "NOT GENERIC") << "\n";
  }
  return ok ? 0 : kExitDegenerate;
}

int cmd_enumerate() {
  Instance inst = load_instance(opt.instance);
  Enumeration en = enumerate_basic_points(inst);
  if (opt.as_json) {
    json pts = json::array();
    for (const BasicPointRecord& r : en.feasible)
      pts.push_back({{"basis", idx(r.basis)}, {"point", nums(r.point)}, {"objective", to_string(r.objective)}});
    json out = {{"feasible", pts}, {"minimum", nullptr}};
    if (en.best) out["minimum"] = to_string(en.feasible[*en.best].objective);
    emit(out);
    return 0;
  }
  for (const BasicPointRecord& r : en.feasible)
    std::cout << "basis " << text(r.basis) << " point " << text(r.point) << " objective " << r.objective << "\n";
  if (en.best)
    std::cout << "minimum " << en.feasible[*en.best].objective << " at basis " << text(en.feasible[*en.best].basis)
              << "\n";
  else
    std::cout << "no feasible basic point\n";
  return 0;
}

// Tropical run, classical run on the lift, and the enumeration minimum.
int cmd_verify() {
  Instance inst = load_instance(opt.instance);
  std::vector<std::size_t> basis = start_basis(inst);
  std::sort(basis.begin(), basis.end());
  const PivotRule r = rule();
  auto oracle = std::async(std::launch::async, [&inst, basis, r] {
    return classical_simplex(lift(inst, opt.assume_positive), basis, r);
  });
  auto enumerated = std::async(std::launch::async, [&inst] { return enumerate_basic_points(inst); });
  SolveResult trop = solve(inst, basis, {.rule = r});
  ClassicalResult classical = oracle.get();
  Enumeration en = enumerated.get();

  std::vector<std::string> problems;
  const Trop obj = trop.final().objective;
  if (!en.best || en.feasible[*en.best].objective != obj)
    problems.push_back("tropical optimum differs from the enumeration minimum");
  if (!classical.optimal || classical.path.back().objective.valuation() != obj)
    problems.push_back("tropical optimum differs from the valuation of the lifted optimum");
  if (classical.path.size() != trop.iterations.size()) {
    problems.push_back("path lengths differ: tropical " + std::to_string(trop.iterations.size()) + ", lifted " +
                       std::to_string(classical.path.size()));
  } else {
    for (std::size_t k = 0; k < classical.path.size(); ++k) {
      const Vec& x = trop.iterations[k].point;
      for (std::size_t j = 0; j < x.size(); ++j)
        if (classical.path[k].point[j].valuation() != Trop(x[j])) {
          problems.push_back("path point " + std::to_string(k) + " differs");
          break;
        }
    }
  }
  if (opt.as_json) {
    emit({{"match", problems.empty()},
          {"objective", to_string(obj)},
          {"path_length", trop.iterations.size()},
          {"problems", problems}});
  } else {
    for (const std::string& p : problems) std::cout << p << "\n";
    std::cout << (problems.empty() ? "MATCH" : "MISMATCH") << " objective " << obj << " after "
              << trop.iterations.size() - 1 << " pivots\n";
  }
  return problems.empty() ? 0 : kExitMismatch;
}

int exit_code(const Error& e) {
  return e.kind() == ErrorKind::DegenerateInput || e.kind() == ErrorKind::NotStandard ? kExitDegenerate : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tropical linear programming by the tropical simplex method"};
  app.require_subcommand(1);
  app.add_flag("--json", opt.as_json, "machine-readable output");
  app.add_flag("--one-based", opt.one_based, "print row and coordinate indices from 1");

  auto with_instance = [](CLI::App* sub) {
    sub->add_option("instance", opt.instance, "instance JSON file")->required()->check(CLI::ExistingFile);
  };
  auto with_basis = [](CLI::App* sub) {
    sub->add_option("--basis", opt.basis, "start basis as 0-based rows, e.g. 0,1,4");
  };
  auto with_rule = [](CLI::App* sub) {
    sub->add_option("--rule", opt.rule, "pivot rule")->check(CLI::IsMember({"bland", "most-negative"}));
  };

  CLI::App* solve_cmd = app.add_subcommand("solve", "run the tropical simplex method");
  with_instance(solve_cmd);
  with_basis(solve_cmd);
  with_rule(solve_cmd);
  solve_cmd->add_option("--trace", opt.trace_path, "write segments as JSON {point, J, mu, cause}");
  solve_cmd->add_option("--emit-digraphs", opt.digraph_dir, "write tangent digraphs as DOT files");

  CLI::App* certify_cmd = app.add_subcommand("certify", "check optimality of a basis");
  with_instance(certify_cmd);
  with_basis(certify_cmd);

  CLI::App* pivot_cmd = app.add_subcommand("pivot", "perform one pivot");
  with_instance(pivot_cmd);
  with_basis(pivot_cmd);
  pivot_cmd->add_option("--leave", opt.leave, "leaving row (0-based)")->required()->check(CLI::NonNegativeNumber);
  pivot_cmd->add_option("--trace", opt.trace_path, "write segments as JSON {point, J, mu, cause}");

  CLI::App* rc_cmd = app.add_subcommand("reduced-costs", "tropical reduced costs of a basis");
  with_instance(rc_cmd);
  with_basis(rc_cmd);

  CLI::App* cramer_cmd = app.add_subcommand("cramer", "solve a signed Cramer system {M, d}");
  with_instance(cramer_cmd);

  CLI::App* check_cmd = app.add_subcommand("check", "genericity of W and sign genericity of (A^T c^T)");
  with_instance(check_cmd);
  check_cmd->add_option("--genericity", opt.genericity, "check mode")
      ->check(CLI::IsMember({"exhaustive", "asserted"}));

  CLI::App* enum_cmd = app.add_subcommand("enumerate", "list all feasible basic points");
  with_instance(enum_cmd);

  CLI::App* verify_cmd = app.add_subcommand("verify", "compare against the lifted LP and the enumeration");
  with_instance(verify_cmd);
  with_basis(verify_cmd);
  with_rule(verify_cmd);
  verify_cmd->add_flag("--assume-positive", opt.assume_positive,
                       "attest that every variable is finite on the feasible set");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*solve_cmd) return cmd_solve();
    if (*certify_cmd) return cmd_certify();
    if (*pivot_cmd) return cmd_pivot();
    if (*rc_cmd) return cmd_reduced_costs();
    if (*cramer_cmd) return cmd_cramer();
    if (*check_cmd) return cmd_check();
    if (*enum_cmd) return cmd_enumerate();
    if (*verify_cmd) return cmd_verify();
  } catch (const PivotFailure& e) {
    std::cerr << "error: " << e.what() << "\npartial trace:\n";
    for (const Segment& s : e.partial_trace())
      std::cerr << "    from " << text(dehomogenize(s.start)) << " J=" << text(s.J) << " mu=" << format_num(s.mu)
                << "\n";
    return exit_code(e);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
