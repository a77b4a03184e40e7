#include <future>

#include "gspkit/solvers.hpp"

namespace gspkit {

SolveResult solve_portfolio(const Instance& instance, const Rational& epsilon,
                            const Budgets& budgets) {
  std::vector<std::future<SolveResult>> branches;
  branches.push_back(std::async(std::launch::async,
                                [&] { return solve_nfdh(instance); }));
  branches.push_back(std::async(std::launch::async, [&] {
    return solve_pptas(instance, epsilon, budgets);
  }));
  branches.push_back(std::async(std::launch::async, [&] {
    return solve_three_halves(instance, epsilon, budgets);
  }));
  if (instance.size() <= budgets.oracle_item_limit) {
    branches.push_back(std::async(std::launch::async, [&] {
      return exact_oracle(instance, budgets.oracle_item_limit);
    }));
  }

  std::vector<SolveResult> results;
  for (auto& f : branches) results.push_back(f.get());
  std::size_t best = 0;
  for (std::size_t k = 1; k < results.size(); ++k) {
    if (results[k].height < results[best].height) best = k;
  }
  SolveResult out = std::move(results[best]);
  out.trace.notes.insert(out.trace.notes.begin(),
                         "portfolio branch: " + out.trace.algorithm);
  out.trace.algorithm = "portfolio";
  return out;
}

}  // namespace gspkit
