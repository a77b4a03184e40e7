#ifndef GSPKIT_SOLVERS_HPP
#define GSPKIT_SOLVERS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gspkit/containers.hpp"
#include "gspkit/guillotine.hpp"
#include "gspkit/model.hpp"

namespace gspkit {

struct Budgets {
  int container_budget = 64;  // stands in for g(delta, eps)
  int hor_budget = 0;         // |B_hor| for eps2; 0 = container_budget
  int ver_budget = 0;         // |B_ver| for eps3; 0 = container_budget
  int max_containers = 256;   // per layout
  int max_columns = 3;        // generated k-column layouts, k = 1..max
  int max_opt_guesses = 32;
  std::uint64_t table_budget = GapOptions{}.table_budget;
  int max_bins = 8;
  bool generated_templates = true;
  bool normalize_heights = true;
  int oracle_item_limit = 9;
  // Layouts supplied by the caller, in strip coordinates.
  std::vector<ContainerLayout> templates;
};

// used <= limit, where limit is the floor of the stated bound.
struct BudgetCheck {
  std::string name;
  Length used = 0;
  Length limit = 0;
  bool ok() const { return used <= limit; }
};

struct Trace {
  std::string algorithm;
  Length opt_guess = 0;     // OPT' of the returned packing; 0 if none
  std::string source;       // "template <k>", "columns <k>", "nfdh", ...
  std::optional<ContainerLayout> layout;  // every box used, top boxes too
  std::vector<Container> top_boxes;
  std::vector<BudgetCheck> budgets;
  std::vector<std::string> notes;
  int guesses = 0;
  int layouts_tried = 0;
  bool fallback = false;
  bool normalized = false;

  bool budgets_ok() const;
};

struct SolveResult {
  Packing packing;
  CutTree cut_tree;
  Length height = 0;
  Length lower_bound = 0;
  Rational ratio = Rational(1);  // height / lower_bound; 1 when empty
  Trace trace;
};

// Verifies `packing` (feasibility and guillotine separability) and wraps it.
// Throws InternalError when either check fails.
SolveResult make_result(const Instance& instance, Packing packing, Trace trace);

// Minimum-height guillotine packing by memoized search over item subsets.
// Throws ResourceError when the instance has more than `item_limit` items.
SolveResult exact_oracle(const Instance& instance, int item_limit = 9);

SolveResult solve_nfdh(const Instance& instance);

SolveResult solve_pptas(const Instance& instance,
                        const Rational& epsilon = Rational(1, 4),
                        const Budgets& budgets = {});

SolveResult solve_three_halves(const Instance& instance,
                               const Rational& epsilon = Rational(1, 4),
                               const Budgets& budgets = {});

// Runs NFDH, both pipelines and (for small inputs) the oracle concurrently
// and returns the lowest packing.
SolveResult solve_portfolio(const Instance& instance,
                            const Rational& epsilon = Rational(1, 4),
                            const Budgets& budgets = {});

// The OPT' grid: lb, then max(g + 1, ceil(g (1 + eps))) up to and including
// `hi`, truncated to `max_guesses` entries.
std::vector<Length> opt_grid(Length lb, Length hi, const Rational& epsilon,
                             int max_guesses);

// Height normalization: with hmax > ceil(n / eps), heights become
// ceil(h n / (eps hmax)). Returns nullopt when no rescaling is needed.
std::optional<Instance> normalize_heights(const Instance& instance,
                                          const Rational& epsilon);
// Maps a packing of the normalized instance back to the original heights
// (bottom = floor(bottom' eps hmax / n)); feasibility and separability are
// preserved.
Packing denormalize(const Instance& original, const Packing& normalized,
                    const Rational& epsilon);

}  // namespace gspkit

#endif  // GSPKIT_SOLVERS_HPP
