#include "gspkit/commands.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <sstream>

#include "gspkit/bench.hpp"
#include "gspkit/errors.hpp"
#include "gspkit/generate.hpp"
#include "gspkit/io.hpp"
#include "gspkit/render.hpp"
#include "gspkit/solvers.hpp"

namespace gspkit {

namespace {

struct SolveArgs {
  std::string input;
  std::string alg = "nfdh";
  std::string eps = "1/4";
  int containers = Budgets{}.container_budget;
  std::vector<std::string> layouts;
  bool emit_cuts = false;
  std::string output;
  std::string trace;
};

struct VerifyArgs {
  std::string instance;
  std::string solution;
  bool emit_cuts = false;
  std::string output;
};

struct GenerateArgs {
  std::string kind;
  std::uint64_t seed = 1;
  std::string output;
  std::string cert;
  // random
  Length width = 100;
  int items = 20;
  Length max_height = 100;
  std::string skew = "uniform";
  // partition
  std::vector<Length> numbers;
  Length max_value = 20;
  // planted
  Length height = 96;
  std::string eps = "1/4";
  int containers = 1;
  int max_boxes = 6;
  bool flushed = false;
};

struct RenderArgs {
  std::string instance;
  std::string solution;
  std::string output;
  bool cuts = false;
};

struct BenchArgs {
  std::string dir;
  std::vector<std::string> algs = {"nfdh"};
  std::string eps = "1/4";
  int containers = Budgets{}.container_budget;
  std::string output;
  bool no_oracle = false;
  int threads = 0;
};

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

// Writes to `path`, or to `out` when the path is empty or "-".
void emit(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
  } else {
    write_file(path, text);
  }
}

nlohmann::json trace_json(const SolveResult& r) {
  const Trace& t = r.trace;
  nlohmann::json j;
  j["algorithm"] = t.algorithm;
  j["height"] = r.height;
  j["lower_bound"] = r.lower_bound;
  j["ratio"] = r.ratio.to_string();
  j["opt_guess"] = t.opt_guess;
  j["source"] = t.source;
  j["guesses"] = t.guesses;
  j["layouts_tried"] = t.layouts_tried;
  j["fallback"] = t.fallback;
  j["normalized"] = t.normalized;
  j["notes"] = t.notes;
  auto& budgets = j["budgets"] = nlohmann::json::array();
  for (const BudgetCheck& b : t.budgets) {
    budgets.push_back({{"name", b.name}, {"used", b.used}, {"limit", b.limit},
                       {"ok", b.ok()}});
  }
  if (t.layout) j["layout"] = serialize_layout(*t.layout);
  return j;
}

int cmd_solve(const SolveArgs& a, std::ostream& out) {
  const Instance instance = parse_instance(read_file(a.input));
  Budgets budgets;
  budgets.container_budget = a.containers;
  if (a.containers < 1) throw ParameterError("--budget-containers must be >= 1");
  for (const std::string& path : a.layouts) {
    // Planted certificates start with an "opt <= H" line; skip it.
    std::string text = read_file(path);
    if (text.rfind("opt", 0) == 0) text.replace(0, text.find('\n') + 1, "#\n");
    try {
      budgets.templates.push_back(parse_layout(text));
    } catch (const ParseError& e) {
      const std::string what = e.what();
      throw ParseError(e.line(), path + ": " + what.substr(what.find(": ") + 2));
    }
  }
  const Rational eps = Rational::parse(a.eps);
  require_epsilon(eps);

  const auto start = std::chrono::steady_clock::now();
  const SolveResult r = run_algorithm(a.alg, instance, eps, budgets);
  const double ms = std::chrono::duration<double, std::milli>(
                        std::chrono::steady_clock::now() - start)
                        .count();

  const std::string output = a.output.empty() ? a.input + ".sol" : a.output;
  emit(output, serialize_solution(r.packing, a.emit_cuts ? &r.cut_tree : nullptr),
       out);
  if (!a.trace.empty()) emit(a.trace, trace_json(r).dump(2) + "\n", out);
  out << "height " << r.height << "\n"
      << "lower_bound " << r.lower_bound << "\n"
      << "ratio " << fixed(r.ratio.to_double(), 4) << "\n"
      << "time_ms " << fixed(ms, 3) << "\n";
  return kExitOk;
}

int cmd_verify(const VerifyArgs& a, std::ostream& out) {
  const Instance instance = parse_instance(read_file(a.instance));
  const Solution sol = parse_solution(read_file(a.solution), instance.strip_width());
  const PackingReport report = verify_packing(instance, sol.packing);
  if (!report.ok()) {
    for (const auto& [i, j] : report.overlaps) {
      out << "overlap: items " << i << " and " << j << "\n";
    }
    for (const std::string& v : report.violations) {
      if (v.rfind("overlap", 0) != 0) out << v << "\n";
    }
    return kExitRejected;
  }
  std::vector<Rect> rects;
  for (const Placement& p : sol.packing.placements) {
    rects.push_back(placed_rect(instance, p));
  }
  bool ok = true;
  if (sol.tree) {
    for (const std::string& problem : validate_cut_tree(*sol.tree, rects)) {
      out << "cut tree: " << problem << "\n";
      ok = false;
    }
  }
  const SeparabilityResult sep = check_separable(instance, sol.packing);
  if (const auto* bad = std::get_if<NotSeparable>(&sep)) {
    out << "no feasible cut in " << to_string(bad->region) << " (items";
    for (int id : bad->items) out << " " << id;
    out << ")\n";
    return kExitRejected;
  }
  const CutTree& tree = std::get<CutTree>(sep);
  if (!ok) return kExitRejected;
  const StageCounts stages = stage_count(tree);
  out << "ok height " << sol.packing.height << " stages " << stages.without_trim
      << " (" << stages.with_trim << " with trim)\n";
  if (a.emit_cuts) emit(a.output, serialize_cut_tree(tree) + "\n", out);
  return kExitOk;
}

int cmd_generate(const GenerateArgs& a, std::ostream& out) {
  std::string instance_text;
  std::string cert;
  if (a.kind == "random") {
    RandomParams p;
    p.strip_width = a.width;
    p.items = a.items;
    p.max_height = a.max_height;
    const auto skew = parse_skew(a.skew);
    if (!skew) throw ParameterError("unknown skew '" + a.skew + "'");
    p.skew = *skew;
    instance_text = serialize_instance(generate_random(p, a.seed));
  } else if (a.kind == "partition") {
    const PartitionCase c = a.numbers.empty()
                                ? generate_partition(a.items, a.max_value, a.seed)
                                : partition_instance(a.numbers);
    instance_text = serialize_instance(c.instance);
    cert = partition_certificate(c);
  } else if (a.kind == "planted") {
    PlantedParams p;
    p.strip_width = a.width;
    p.height = a.height;
    p.epsilon = Rational::parse(a.eps);
    p.container_budget = a.containers;
    p.max_boxes = a.max_boxes;
    p.flushed = a.flushed;
    const Planted planted = generate_planted(p, a.seed);
    instance_text = serialize_instance(planted.instance);
    cert = planted_certificate(planted);
  } else {
    throw ParameterError("unknown generator '" + a.kind + "'");
  }
  emit(a.output, instance_text, out);
  if (!cert.empty()) {
    std::string cert_path = a.cert;
    if (cert_path.empty() && !a.output.empty() && a.output != "-") {
      cert_path = a.output + ".cert";
    }
    emit(cert_path, cert, out);
  }
  return kExitOk;
}

int cmd_render(const RenderArgs& a, std::ostream& out) {
  const Instance instance = parse_instance(read_file(a.instance));
  const Solution sol = parse_solution(read_file(a.solution), instance.strip_width());
  std::vector<bool> seen(instance.size(), false);
  for (const Placement& p : sol.packing.placements) {
    if (p.item < 0 || p.item >= instance.size() || seen[p.item]) {
      throw ParameterError("solution does not match instance: item id " +
                           std::to_string(p.item));
    }
    seen[p.item] = true;
  }
  if (static_cast<int>(sol.packing.placements.size()) != instance.size()) {
    throw ParameterError("solution does not match instance: " +
                         std::to_string(sol.packing.placements.size()) +
                         " placements for " + std::to_string(instance.size()) +
                         " items");
  }
  std::optional<CutTree> tree = sol.tree;
  if (!tree && a.cuts && verify_packing(instance, sol.packing).ok()) {
    SeparabilityResult sep = check_separable(instance, sol.packing);
    if (auto* t = std::get_if<CutTree>(&sep)) tree = std::move(*t);
  }
  emit(a.output, render_svg(instance, sol.packing, tree ? &*tree : nullptr), out);
  return kExitOk;
}

int cmd_bench(const BenchArgs& a, std::ostream& out) {
  BenchOptions o;
  o.algorithms = a.algs;
  o.epsilon = Rational::parse(a.eps);
  require_epsilon(o.epsilon);
  o.budgets.container_budget = a.containers;
  o.oracle = !a.no_oracle;
  o.threads = a.threads;
  for (const std::string& alg : o.algorithms) {
    if (alg != "nfdh" && alg != "pptas" && alg != "three-halves" &&
        alg != "portfolio" && alg != "oracle") {
      throw ParameterError("unknown algorithm '" + alg + "'");
    }
  }
  const std::vector<BenchRow> rows = run_bench(a.dir, o);
  emit(a.output, bench_csv(rows), out);
  if (!a.output.empty() && a.output != "-") out << bench_summary(rows);
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Guillotine strip packing toolkit", "gspkit"};
  app.require_subcommand(1);
  const std::vector<std::string> algs = {"nfdh", "pptas", "three-halves",
                                         "portfolio", "oracle"};

  SolveArgs solve;
  auto* s = app.add_subcommand("solve", "Pack an instance and write the solution");
  s->add_option("input", solve.input, "Instance file")->required();
  s->add_option("--alg", solve.alg, "Algorithm")->check(CLI::IsMember(algs));
  s->add_option("--eps", solve.eps, "Accuracy parameter p/q with q/p integral");
  s->add_option("--budget-containers", solve.containers,
                "Container budget g used for the constants");
  s->add_option("--layout", solve.layouts, "Container layout to try (repeatable)");
  s->add_flag("--emit-cuts", solve.emit_cuts, "Append the cut tree to the solution");
  s->add_option("-o,--output", solve.output,
                "Solution file (default <input>.sol, '-' for stdout)");
  s->add_option("--trace", solve.trace, "Write the solver trace as JSON");

  VerifyArgs verify;
  auto* v = app.add_subcommand("verify", "Check feasibility and guillotine separability");
  v->add_option("instance", verify.instance, "Instance file")->required();
  v->add_option("solution", verify.solution, "Solution file")->required();
  v->add_flag("--emit-cuts", verify.emit_cuts, "Print a separating cut tree");
  v->add_option("-o,--output", verify.output, "Cut tree file (default stdout)");

  GenerateArgs gen;
  auto* g = app.add_subcommand("generate", "Generate an instance");
  g->add_option("kind", gen.kind, "random, partition or planted")
      ->required()
      ->check(CLI::IsMember({"random", "partition", "planted"}));
  g->add_option("--seed", gen.seed, "Random seed");
  g->add_option("-o,--output", gen.output, "Instance file (default stdout)");
  g->add_option("--cert", gen.cert, "Certificate file (default <output>.cert)");
  g->add_option("--width", gen.width, "Strip width");
  g->add_option("--items", gen.items, "Number of items (random, partition)");
  g->add_option("--max-height", gen.max_height, "Largest item height (random)");
  g->add_option("--skew", gen.skew,
                "uniform, tall, horizontal, vertical, small or mixed (random)");
  g->add_option("--numbers", gen.numbers, "Explicit partition numbers")->delimiter(',');
  g->add_option("--max-value", gen.max_value, "Largest partition number");
  g->add_option("--height", gen.height, "Planted layout height");
  g->add_option("--eps", gen.eps, "Accuracy parameter the classes are stable for");
  g->add_option("--budget-containers", gen.containers, "Container budget g");
  g->add_option("--max-boxes", gen.max_boxes, "Most containers in the layout");
  g->add_flag("--flushed", gen.flushed, "Bottom-left-flushed tall items and a reserved B*");

  RenderArgs render;
  auto* r = app.add_subcommand("render", "Draw a solution as SVG");
  r->add_option("instance", render.instance, "Instance file")->required();
  r->add_option("solution", render.solution, "Solution file")->required();
  r->add_option("-o,--output", render.output, "SVG file (default stdout)");
  r->add_flag("--cuts", render.cuts, "Compute and draw cuts when the solution has none");

  BenchArgs bench;
  auto* b = app.add_subcommand("bench", "Solve a corpus directory and report");
  b->add_option("dir", bench.dir, "Corpus directory")->required();
  b->add_option("--alg", bench.algs, "Algorithms (comma separated)")->delimiter(',');
  b->add_option("--eps", bench.eps, "Accuracy parameter");
  b->add_option("--budget-containers", bench.containers, "Container budget g");
  b->add_option("-o,--output", bench.output, "CSV report (default stdout)");
  b->add_flag("--no-oracle", bench.no_oracle, "Skip the exact oracle column");
  b->add_option("--threads", bench.threads, "Worker threads (0 = all cores)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*s) return cmd_solve(solve, out);
    if (*v) return cmd_verify(verify, out);
    if (*g) return cmd_generate(gen, out);
    if (*r) return cmd_render(render, out);
    if (*b) return cmd_bench(bench, out);
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ParameterError& e) {
    err << "parameter error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ResourceError& e) {
    err << "resource limit: " << e.what() << " (needs " << e.required() << ")\n";
    return kExitUsage;
  } catch (const InfeasibleError& e) {
    err << "infeasible: " << e.what() << "\n";
    return kExitRejected;
  } catch (const VerificationError& e) {
    err << "verification failed: " << e.what() << "\n";
    return kExitRejected;
  } catch (const InternalError& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInternal;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitUsage;
}

}  // namespace gspkit
