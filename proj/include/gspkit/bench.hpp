#ifndef GSPKIT_BENCH_HPP
#define GSPKIT_BENCH_HPP

#include <optional>
#include <string>
#include <vector>

#include "gspkit/solvers.hpp"

namespace gspkit {

struct BenchRow {
  std::string instance;   // file name
  std::string algorithm;
  int items = 0;
  Length height = 0;
  Length lower_bound = 0;
  Rational ratio_lb = Rational(1);
  std::optional<Length> oracle_height;
  std::optional<Rational> ratio_oracle;
  double time_ms = 0;
  std::string status = "ok";  // or the error message
};

struct BenchOptions {
  std::vector<std::string> algorithms = {"nfdh"};
  Rational epsilon = Rational(1, 4);
  Budgets budgets;
  bool oracle = true;  // fill the oracle column when n <= oracle_item_limit
  int threads = 0;     // 0 = hardware concurrency
};

// Solves every regular file of `dir` (sorted by name; files ending in
// .cert, .sol or .svg are skipped) with each algorithm. Rows come out in
// (file, algorithm) order regardless of threading.
std::vector<BenchRow> run_bench(const std::string& dir, const BenchOptions& options);

// Runs one named algorithm: nfdh, pptas, three-halves, portfolio, oracle.
// Throws ParameterError for an unknown name.
SolveResult run_algorithm(const std::string& name, const Instance& instance,
                          const Rational& epsilon, const Budgets& budgets);

std::string bench_csv(const std::vector<BenchRow>& rows);
std::string bench_summary(const std::vector<BenchRow>& rows);

}  // namespace gspkit

#endif  // GSPKIT_BENCH_HPP
