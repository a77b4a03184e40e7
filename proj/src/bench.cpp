#include "gspkit/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <future>
#include <map>
#include <sstream>
#include <thread>

#include "gspkit/errors.hpp"
#include "gspkit/io.hpp"

namespace gspkit {

SolveResult run_algorithm(const std::string& name, const Instance& instance,
                          const Rational& epsilon, const Budgets& budgets) {
  if (name == "nfdh") return solve_nfdh(instance);
  if (name == "pptas") return solve_pptas(instance, epsilon, budgets);
  if (name == "three-halves") return solve_three_halves(instance, epsilon, budgets);
  if (name == "portfolio") return solve_portfolio(instance, epsilon, budgets);
  if (name == "oracle") return exact_oracle(instance, budgets.oracle_item_limit);
  throw ParameterError("unknown algorithm '" + name + "'");
}

namespace {

bool skipped(const std::filesystem::path& p) {
  const std::string ext = p.extension().string();
  return ext == ".cert" || ext == ".sol" || ext == ".svg" || ext == ".csv";
}

std::vector<BenchRow> bench_file(const std::filesystem::path& path,
                                 const BenchOptions& options) {
  std::vector<BenchRow> rows;
  const std::string name = path.filename().string();
  Instance instance;
  try {
    instance = parse_instance(read_file(path.string()));
  } catch (const Error& e) {
    for (const std::string& alg : options.algorithms) {
      BenchRow r;
      r.instance = name;
      r.algorithm = alg;
      r.status = std::string("parse error: ") + e.what();
      rows.push_back(r);
    }
    return rows;
  }
  std::optional<Length> oracle;
  if (options.oracle && instance.size() <= options.budgets.oracle_item_limit) {
    oracle = exact_oracle(instance, options.budgets.oracle_item_limit).height;
  }
  for (const std::string& alg : options.algorithms) {
    BenchRow r;
    r.instance = name;
    r.algorithm = alg;
    r.items = instance.size();
    r.oracle_height = oracle;
    const auto start = std::chrono::steady_clock::now();
    try {
      SolveResult s = run_algorithm(alg, instance, options.epsilon, options.budgets);
      r.height = s.height;
      r.lower_bound = s.lower_bound;
      r.ratio_lb = s.ratio;
      if (oracle && *oracle > 0) r.ratio_oracle = Rational(s.height, *oracle);
    } catch (const std::exception& e) {
      r.status = e.what();
    }
    r.time_ms = std::chrono::duration<double, std::milli>(
                    std::chrono::steady_clock::now() - start)
                    .count();
    rows.push_back(r);
  }
  return rows;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c == '\n' ? ' ' : c;
  }
  return out + "\"";
}

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

}  // namespace

std::vector<BenchRow> run_bench(const std::string& dir, const BenchOptions& options) {
  namespace fs = std::filesystem;
  std::vector<fs::path> files;
  std::error_code ec;
  for (const auto& entry : fs::directory_iterator(dir, ec)) {
    if (entry.is_regular_file() && !skipped(entry.path())) {
      files.push_back(entry.path());
    }
  }
  if (ec) throw ParseError(0, "cannot list '" + dir + "': " + ec.message());
  std::sort(files.begin(), files.end());

  unsigned threads = options.threads > 0 ? static_cast<unsigned>(options.threads)
                                         : std::max(1U, std::thread::hardware_concurrency());
  std::vector<std::vector<BenchRow>> per_file(files.size());
  for (std::size_t start = 0; start < files.size(); start += threads) {
    std::vector<std::future<std::vector<BenchRow>>> batch;
    const std::size_t end = std::min(files.size(), start + threads);
    for (std::size_t k = start; k < end; ++k) {
      batch.push_back(std::async(std::launch::async, bench_file,
                                 std::cref(files[k]), std::cref(options)));
    }
    for (std::size_t k = start; k < end; ++k) per_file[k] = batch[k - start].get();
  }
  std::vector<BenchRow> rows;
  for (auto& f : per_file) rows.insert(rows.end(), f.begin(), f.end());
  return rows;
}

std::string bench_csv(const std::vector<BenchRow>& rows) {
  std::ostringstream os;
  os << "instance,algorithm,n,height,lower_bound,ratio_lb,oracle_height,"
        "ratio_oracle,time_ms,status\n";
  for (const BenchRow& r : rows) {
    const bool ok = r.status == "ok";
    os << csv_field(r.instance) << "," << r.algorithm << "," << r.items << ",";
    if (ok) {
      os << r.height << "," << r.lower_bound << ","
         << fixed(r.ratio_lb.to_double(), 4);
    } else {
      os << ",,";
    }
    os << ",";
    if (r.oracle_height) os << *r.oracle_height;
    os << ",";
    if (ok && r.ratio_oracle) os << fixed(r.ratio_oracle->to_double(), 4);
    os << "," << fixed(r.time_ms, 3) << "," << csv_field(r.status) << "\n";
  }
  return os.str();
}

std::string bench_summary(const std::vector<BenchRow>& rows) {
  struct Agg {
    int runs = 0;
    int failures = 0;
    double worst = 0;
    double sum = 0;
    double ms = 0;
  };
  std::map<std::string, Agg> by_alg;
  for (const BenchRow& r : rows) {
    Agg& a = by_alg[r.algorithm];
    if (r.status != "ok") {
      ++a.failures;
      continue;
    }
    ++a.runs;
    const double ratio = r.ratio_lb.to_double();
    a.worst = std::max(a.worst, ratio);
    a.sum += ratio;
    a.ms += r.time_ms;
  }
  std::ostringstream os;
  os << "algorithm      runs  failed  mean_ratio  worst_ratio  total_ms\n";
  for (const auto& [name, a] : by_alg) {
    char line[160];
    std::snprintf(line, sizeof line, "%-14s %4d  %6d  %10.4f  %11.4f  %8.1f\n",
                  name.c_str(), a.runs, a.failures,
                  a.runs ? a.sum / a.runs : 0.0, a.worst, a.ms);
    os << line;
  }
  return os.str();
}

}  // namespace gspkit
