#include "gspkit/gap.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <string>

#include "gspkit/errors.hpp"

namespace gspkit {

int Assignment::assigned_count() const {
  return static_cast<int>(
      std::count_if(bin.begin(), bin.end(), [](int b) { return b >= 0; }));
}

std::uint64_t table_budget_from_env() {
  const char* raw = std::getenv("GSPKIT_TABLE_BUDGET");
  if (raw == nullptr || *raw == '\0') return GapOptions{}.table_budget;
  char* end = nullptr;
  unsigned long long v = std::strtoull(raw, &end, 10);
  if (end == raw || *end != '\0' || v == 0) {
    throw ParameterError(std::string("GSPKIT_TABLE_BUDGET must be a positive "
                                     "integer, got '") + raw + "'");
  }
  return v;
}

namespace {

void validate(const GapInstance& instance, const GapOptions& options) {
  const int k = instance.bins();
  if (k < 1) throw ParameterError("GAP instance needs at least one bin");
  if (k > options.max_bins) {
    throw ParameterError("GAP instance has " + std::to_string(k) +
                         " bins; limit is " +
                         std::to_string(options.max_bins));
  }
  for (Length c : instance.capacities) {
    if (c < 0) throw ParameterError("GAP capacity must be >= 0");
  }
  for (std::size_t i = 0; i < instance.items.size(); ++i) {
    const GapItem& it = instance.items[i];
    if (static_cast<int>(it.size.size()) != k ||
        static_cast<int>(it.profit.size()) != k) {
      throw ParameterError("GAP item " + std::to_string(i) +
                           " does not list one size and profit per bin");
    }
    for (int j = 0; j < k; ++j) {
      if (it.size[j] && *it.size[j] < 0) {
        throw ParameterError("GAP size must be >= 0");
      }
      if (it.profit[j] < 0) throw ParameterError("GAP profit must be >= 0");
    }
  }
}

// Capacity beyond the total feasible demand of a bin can never be used, so
// the table only spans min(C_j, demand_j).
std::vector<Length> effective_capacities(const GapInstance& instance) {
  std::vector<Length> eff(instance.capacities.size(), 0);
  for (std::size_t j = 0; j < eff.size(); ++j) {
    const Length cap = instance.capacities[j];
    Length demand = 0;
    for (const GapItem& it : instance.items) {
      if (it.size[j] && *it.size[j] <= cap) {
        demand = std::min(cap, demand + *it.size[j]);
      }
    }
    eff[j] = std::min(cap, demand);
  }
  return eff;
}

std::uint64_t cells_for(const std::vector<Length>& caps, std::size_t n) {
  constexpr std::uint64_t kMax = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t cells = 1;
  for (Length c : caps) {
    const std::uint64_t d = static_cast<std::uint64_t>(c) + 1;
    if (cells > kMax / d) return kMax;
    cells *= d;
  }
  if (n > 0 && cells > kMax / n) return kMax;
  return cells * std::max<std::size_t>(n, 1);
}

}  // namespace

std::uint64_t gap_table_cells(const GapInstance& instance) {
  return cells_for(effective_capacities(instance), instance.items.size());
}

Assignment solve_exact(const GapInstance& instance, const GapOptions& options) {
  validate(instance, options);
  const int k = instance.bins();
  const std::size_t n = instance.items.size();
  Assignment result;
  result.bin.assign(n, Assignment::kUnassigned);
  if (n == 0) return result;

  const std::vector<Length> caps = effective_capacities(instance);
  const std::uint64_t required = cells_for(caps, n);
  if (required > options.table_budget) {
    throw ResourceError("GAP table needs " + std::to_string(required) +
                            " cells; budget is " +
                            std::to_string(options.table_budget),
                        required);
  }

  std::vector<std::size_t> stride(k);
  std::size_t cells = 1;
  for (int j = 0; j < k; ++j) {
    stride[j] = cells;
    cells *= static_cast<std::size_t>(caps[j]) + 1;
  }

  // P[i][c] = max(P[i-1][c], max_j p_ij + P[i-1][c - s_ij e_j]), with the
  // item axis rolled and one decision byte (0 = unassigned, j+1 = bin j)
  // per (item, cell) for reconstruction.
  std::vector<Length> prev(cells, 0), cur(cells, 0);
  std::vector<std::uint8_t> decision(n * cells, 0);
  std::vector<Length> digit(k, 0);
  for (std::size_t i = 0; i < n; ++i) {
    const GapItem& it = instance.items[i];
    std::fill(digit.begin(), digit.end(), 0);
    std::uint8_t* dec = decision.data() + i * cells;
    for (std::size_t idx = 0; idx < cells; ++idx) {
      Length best = prev[idx];
      std::uint8_t choice = 0;
      for (int j = 0; j < k; ++j) {
        if (!it.size[j]) continue;
        const Length s = *it.size[j];
        if (s > digit[j]) continue;
        const Length cand = it.profit[j] + prev[idx - s * stride[j]];
        if (cand > best) {
          best = cand;
          choice = static_cast<std::uint8_t>(j + 1);
        }
      }
      cur[idx] = best;
      dec[idx] = choice;
      for (int j = 0; j < k; ++j) {
        if (++digit[j] <= caps[j]) break;
        digit[j] = 0;
      }
    }
    std::swap(prev, cur);
  }

  std::size_t idx = 0;
  for (int j = 0; j < k; ++j) idx += static_cast<std::size_t>(caps[j]) * stride[j];
  for (std::size_t i = n; i-- > 0;) {
    const std::uint8_t d = decision[i * cells + idx];
    if (d == 0) continue;
    const int j = d - 1;
    result.bin[i] = j;
    result.profit += instance.items[i].profit[j];
    idx -= static_cast<std::size_t>(*instance.items[i].size[j]) * stride[j];
  }
  return result;
}

Assignment solve_scaled(const GapInstance& instance, const Rational& epsilon,
                        const GapOptions& options) {
  validate(instance, options);
  if (gap_table_cells(instance) <= options.table_budget) {
    return solve_exact(instance, options);
  }
  const int k = instance.bins();
  const Length n = static_cast<Length>(instance.items.size());
  std::vector<Length> scale(k, 1);
  for (int j = 0; j < k; ++j) {
    scale[j] = std::max<Length>(
        1, floor_scaled(epsilon, instance.capacities[j]) / std::max<Length>(n, 1));
  }
  for (;;) {
    GapInstance scaled;
    scaled.capacities.resize(k);
    for (int j = 0; j < k; ++j) {
      scaled.capacities[j] = instance.capacities[j] / scale[j];
    }
    scaled.items.reserve(instance.items.size());
    for (const GapItem& it : instance.items) {
      GapItem s;
      s.profit = it.profit;
      s.size.resize(k);
      for (int j = 0; j < k; ++j) {
        if (it.size[j]) s.size[j] = (*it.size[j] + scale[j] - 1) / scale[j];
      }
      scaled.items.push_back(std::move(s));
    }
    const std::vector<Length> caps = effective_capacities(scaled);
    if (cells_for(caps, instance.items.size()) <= options.table_budget) {
      Assignment a = solve_exact(scaled, options);
      if (!is_feasible(instance, a)) {
        throw InternalError("scaled GAP produced an infeasible assignment");
      }
      return a;
    }
    int widest = static_cast<int>(
        std::max_element(caps.begin(), caps.end()) - caps.begin());
    if (caps[widest] == 0) {
      throw ResourceError("GAP table exceeds budget even after scaling",
                          cells_for(caps, instance.items.size()));
    }
    scale[widest] *= 2;
  }
}

std::vector<Length> bin_loads(const GapInstance& instance,
                              const Assignment& assignment) {
  std::vector<Length> load(instance.capacities.size(), 0);
  for (std::size_t i = 0; i < assignment.bin.size(); ++i) {
    const int j = assignment.bin[i];
    if (j >= 0 && instance.items[i].size[j]) load[j] += *instance.items[i].size[j];
  }
  return load;
}

bool is_feasible(const GapInstance& instance, const Assignment& assignment) {
  if (assignment.bin.size() != instance.items.size()) return false;
  Length profit = 0;
  for (std::size_t i = 0; i < assignment.bin.size(); ++i) {
    const int j = assignment.bin[i];
    if (j == Assignment::kUnassigned) continue;
    if (j < 0 || j >= instance.bins() || !instance.items[i].size[j]) {
      return false;
    }
    profit += instance.items[i].profit[j];
  }
  if (profit != assignment.profit) return false;
  const std::vector<Length> load = bin_loads(instance, assignment);
  for (std::size_t j = 0; j < load.size(); ++j) {
    if (load[j] > instance.capacities[j]) return false;
  }
  return true;
}

}  // namespace gspkit
