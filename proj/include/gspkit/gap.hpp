#ifndef GSPKIT_GAP_HPP
#define GSPKIT_GAP_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "gspkit/model.hpp"

namespace gspkit {

// Maximum generalized assignment with a small number of bins.
//
// Item i placed in bin j consumes size[j] of that bin's capacity and earns
// profit[j]. A disengaged size marks the pair as infeasible.
struct GapItem {
  std::vector<std::optional<Length>> size;
  std::vector<Length> profit;
};

struct GapInstance {
  std::vector<Length> capacities;
  std::vector<GapItem> items;

  int bins() const { return static_cast<int>(capacities.size()); }
};

struct Assignment {
  static constexpr int kUnassigned = -1;

  std::vector<int> bin;  // per item: bin index or kUnassigned
  Length profit = 0;

  int assigned_count() const;
};

struct GapOptions {
  // Upper bound on n * prod(C_j + 1), the size of the decision log.
  std::uint64_t table_budget = std::uint64_t{1} << 25;
  int max_bins = 8;
};

// Reads GSPKIT_TABLE_BUDGET when set; otherwise the default budget.
std::uint64_t table_budget_from_env();

// Cells n * prod(C_j + 1) the exact DP needs for `instance`, saturating at
// UINT64_MAX.
std::uint64_t gap_table_cells(const GapInstance& instance);

// Exact DP over capacity tuples. Ties prefer leaving an item unassigned,
// then the lowest bin index. Throws ResourceError (with the required cell
// count) when the table exceeds the budget and ParameterError for malformed
// input or too many bins.
Assignment solve_exact(const GapInstance& instance,
                       const GapOptions& options = {});

// Like solve_exact, but when the table is too large capacities are scaled
// down (floor) and sizes up (ceil) per bin until it fits, so every returned
// assignment stays feasible at the original capacities. `epsilon` sets the
// initial per-bin scale floor(eps * C_j / n); with no scaling needed the
// result equals solve_exact.
Assignment solve_scaled(const GapInstance& instance, const Rational& epsilon,
                        const GapOptions& options = {});

// Sum of assigned sizes per bin.
std::vector<Length> bin_loads(const GapInstance& instance,
                              const Assignment& assignment);

// True iff every assigned pair is feasible and no bin exceeds its capacity.
bool is_feasible(const GapInstance& instance, const Assignment& assignment);

}  // namespace gspkit

#endif  // GSPKIT_GAP_HPP
