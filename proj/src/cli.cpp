#include "bcs/cli.hpp"

#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "bcs/bench.hpp"
#include "bcs/decompose.hpp"
#include "bcs/expr.hpp"
#include "bcs/propagate.hpp"
#include "bcs/revise.hpp"
#include "bcs/solve.hpp"

namespace bcs {

namespace {

constexpr int kOk = 0;
constexpr int kUnsat = 1;
constexpr int kUsage = 2;
constexpr int kTimeout = 3;

std::optional<std::string> read_file(const std::string& path,
                                     std::ostream& err) {
  std::ifstream in(path);
  if (!in) {
    err << "cannot open " << path << "\n";
    return std::nullopt;
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::optional<Problem> load_problem(const std::string& path,
                                    bool fold, std::ostream& err) {
  std::optional<std::string> text = read_file(path, err);
  if (!text) return std::nullopt;
  try {
    Problem p = parse_problem(*text);
    return fold ? fold_constants(p) : p;
  } catch (const ParseError& e) {
    err << path << ": " << e.what() << "\n";
    return std::nullopt;
  }
}

std::optional<Method> parse_method(const std::string& name,
                                   std::ostream& err) {
  std::optional<Method> m = method_from_name(name);
  if (!m) err << "unknown method '" << name
              << "' (expected hc3, hc3sb, hc4 or hc4sb)\n";
  return m;
}

// Every constraint's decomposition in declaration order, blank-line
// separated; the stable format the snapshot tests pin.
void write_dump(const Problem& p, std::ostream& o) {
  bool first = true;
  for (const Constraint& c : p.constraints) {
    if (!first) o << "\n";
    first = false;
    o << dump_decomposition(decompose(c, p), c, p);
  }
}

void write_box_line(const Problem& p, const Box& b, std::ostream& o) {
  for (size_t i = 0; i < b.size(); ++i)
    o << (i ? " " : "") << p.variables[i] << "=" << to_string(b[i]);
  o << "\n";
}

void write_stats(const Stats& st, std::ostream& o) {
  char buf[64];
  o << "projections=" << st.projections << "\n";
  o << "revise_calls=" << st.revise_calls << "\n";
  o << "enqueues=" << st.enqueues << "\n";
  std::snprintf(buf, sizeof buf, "seconds=%.6f\n", st.wall_time);
  o << buf;
}

int run_solve(const Problem& p, Method m, double eps, const SolveLimits& lim,
              bool dump, std::ostream& o, std::ostream& err) {
  if (dump) {
    write_dump(p, o);
    o << "\n";
  }
  SolveResult r = solve_problem(p, m, eps, lim);
  for (size_t i = 0; i < r.solutions.size(); ++i) {
    o << (i + 1) << ": ";
    write_box_line(p, r.solutions[i], o);
  }
  o << "status=" << status_name(r.status) << "\n";
  o << "solutions=" << r.solutions.size() << "\n";
  write_stats(r.stats, o);
  if (r.status == SolveStatus::timeout) {
    err << "timed out\n";
    return kTimeout;
  }
  if (r.solutions.empty() &&
      (r.status == SolveStatus::complete || r.status == SolveStatus::empty)) {
    err << "no solutions\n";
    return kUnsat;
  }
  return kOk;
}

int run_verify(const Problem& p, Method m, bool dump, std::ostream& o,
               std::ostream& err) {
  if (dump) {
    write_dump(p, o);
    o << "\n";
  }
  Propagator prop(p, m);
  Box d = prop.propagate(p.domains);
  if (box_is_empty(d)) {
    o << "inconsistent\n";
    err << "propagation proved the problem inconsistent\n";
    return kUnsat;
  }
  o << "fixed point: ";
  write_box_line(p, d, o);

  bool all_ok = true;
  const std::vector<Decomposition>& decs = prop.decompositions();
  for (size_t j = 0; j < decs.size(); ++j) {
    const Decomposition& dec = decs[j];

    // Quiescence: one more two-sweep revise moves no bound.
    Box copy = d;
    std::vector<int> narrowed;
    bool feasible = hc4_revise(dec, copy, &narrowed);
    const bool quiescent = feasible && narrowed.empty();

    o << "C" << (j + 1) << ": quiescent=" << (quiescent ? "PASS" : "FAIL");
    all_ok = all_ok && quiescent;

    // Directional bounds consistency w.r.t. gamma', meaningful for
    // admissible constraints (elsewhere the blocks overlap).
    if (is_admissible(p.constraints[j])) {
      Box ext(static_cast<size_t>(dec.total_vars()), Interval::entire());
      for (int v = 0; v < dec.n_problem_vars; ++v)
        ext[static_cast<size_t>(v)] = d[static_cast<size_t>(v)];
      ext[static_cast<size_t>(dec.root_var)] = Interval(0, 0);
      const bool directional = hc4_revise_ext(dec, ext) &&
                               verify_directional(dec.primitives, ext,
                                                  dec.gamma_prime);
      o << " directional=" << (directional ? "PASS" : "FAIL");
      all_ok = all_ok && directional;
    } else {
      o << " directional=SKIP";
    }
    o << "\n";
  }
  o << "verify=" << (all_ok ? "PASS" : "FAIL") << "\n";
  if (!all_ok) err << "verification failed\n";
  return all_ok ? kOk : kUnsat;
}

std::string ratios_path(const std::string& out) {
  const std::string suffix = ".csv";
  if (out.size() > suffix.size() &&
      out.compare(out.size() - suffix.size(), suffix.size(), suffix) == 0)
    return out.substr(0, out.size() - suffix.size()) + ".ratios.csv";
  return out + ".ratios.csv";
}

}  // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out,
             std::ostream& err) {
  CLI::App app{"bounds-consistency solver for nonlinear real constraints"};
  app.require_subcommand(1);

  std::string file;
  std::string method_name_arg = "hc4";
  double eps = 1e-8;
  double timeout = 0.0;
  long long max_boxes = 0;
  bool fold = false;
  bool dump_dec = false;
  std::string out_path;
  long long seed = 0;

  auto add_common = [&](CLI::App* cmd, bool with_solver_opts) {
    cmd->add_option("file", file, "problem file")->required();
    cmd->add_option("--method", method_name_arg,
                    "propagation method: hc3, hc3sb, hc4, hc4sb");
    cmd->add_flag("--fold-constants", fold,
                  "fold constant subexpressions before decomposing");
    cmd->add_option("--out", out_path, "write output here instead of stdout");
    cmd->add_option("--seed", seed,
                    "reserved for future randomized heuristics; ignored");
    if (with_solver_opts) {
      cmd->add_option("--eps", eps, "target box width, hi - lo per variable");
      cmd->add_option("--timeout", timeout, "wall-clock limit in seconds");
      cmd->add_option("--max-boxes", max_boxes,
                      "stop after this many solution boxes");
      cmd->add_flag("--dump-decomposition", dump_dec,
                    "print each constraint's decomposition first");
    }
  };

  CLI::App* solve_cmd =
      app.add_subcommand("solve", "find all solution boxes at accuracy eps");
  add_common(solve_cmd, true);

  CLI::App* verify_cmd = app.add_subcommand(
      "verify", "propagate, then check quiescence and directional "
                "consistency per constraint");
  add_common(verify_cmd, false);
  verify_cmd->add_flag("--dump-decomposition", dump_dec,
                       "print each constraint's decomposition first");

  CLI::App* dump_cmd = app.add_subcommand(
      "dump", "print each constraint's decomposition and partitions");
  add_common(dump_cmd, false);

  CLI::App* bench_cmd =
      app.add_subcommand("bench", "run benchmark families, emit CSV");
  std::string family;
  std::vector<int> sizes;
  std::vector<std::string> method_list;
  bench_cmd->add_option("--family", family, "bratu, broyden_banded, "
                        "more_cosnard, feigenbaum or feigenbaum_factored")
      ->required();
  bench_cmd->add_option("--sizes", sizes, "instance sizes, e.g. 4,6,8")
      ->required()
      ->delimiter(',');
  bench_cmd->add_option("--methods", method_list,
                        "subset of hc3,hc3sb,hc4,hc4sb; default all")
      ->delimiter(',');
  bench_cmd->add_option("--eps", eps, "target box width");
  bench_cmd->add_option("--timeout", timeout, "per-run limit in seconds");
  bench_cmd->add_option("--max-boxes", max_boxes, "per-run box limit");
  bench_cmd->add_option("--out", out_path,
                        "main CSV path; ratios go to <out>.ratios.csv");
  bench_cmd->add_option("--seed", seed, "reserved; ignored");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return kUsage;
  }

  if (eps <= 0) {
    err << "--eps must be positive\n";
    return kUsage;
  }
  if (timeout < 0) {
    err << "--timeout must be nonnegative\n";
    return kUsage;
  }

  std::ofstream out_file;
  std::ostream* o = &out;
  if (!out_path.empty() && !bench_cmd->parsed()) {
    out_file.open(out_path);
    if (!out_file) {
      err << "cannot write " << out_path << "\n";
      return kUsage;
    }
    o = &out_file;
  }

  if (solve_cmd->parsed() || verify_cmd->parsed() || dump_cmd->parsed()) {
    std::optional<Problem> p = load_problem(file, fold, err);
    if (!p) return kUsage;
    if (dump_cmd->parsed()) {
      write_dump(*p, *o);
      return kOk;
    }
    std::optional<Method> m = parse_method(method_name_arg, err);
    if (!m) return kUsage;
    if (verify_cmd->parsed()) return run_verify(*p, *m, dump_dec, *o, err);
    SolveLimits lim;
    lim.timeout = timeout;
    lim.max_boxes = max_boxes;
    return run_solve(*p, *m, eps, lim, dump_dec, *o, err);
  }

  // bench
  BenchSpec spec;
  spec.family = family;
  spec.eps = eps;
  spec.timeout = timeout;
  spec.max_boxes = max_boxes;
  for (const std::string& name : method_list) {
    std::optional<Method> m = parse_method(name, err);
    if (!m) return kUsage;
    spec.methods.push_back(*m);
  }
  std::vector<BenchSpec> specs;
  for (int n : sizes) {
    spec.n = n;
    specs.push_back(spec);
  }
  std::vector<BenchRow> rows;
  try {
    rows = run_suite(specs);
  } catch (const std::invalid_argument& e) {
    err << e.what() << "\n";
    return kUsage;
  }
  const std::string csv = to_csv(rows);
  const std::string ratios = ratios_csv(rows);
  if (out_path.empty()) {
    out << csv << "\n" << ratios;
    return kOk;
  }
  std::ofstream main_file(out_path);
  if (!main_file) {
    err << "cannot write " << out_path << "\n";
    return kUsage;
  }
  main_file << csv;
  const std::string rp = ratios_path(out_path);
  std::ofstream ratio_file(rp);
  if (!ratio_file) {
    err << "cannot write " << rp << "\n";
    return kUsage;
  }
  ratio_file << ratios;
  return kOk;
}

}  // namespace bcs
