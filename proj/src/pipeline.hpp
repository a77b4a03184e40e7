#ifndef GSPKIT_SRC_PIPELINE_HPP
#define GSPKIT_SRC_PIPELINE_HPP

// Pieces shared by the two container pipelines.

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gspkit/containers.hpp"
#include "gspkit/solvers.hpp"

namespace gspkit::detail {

struct Leftovers {
  std::vector<Item> vertical;    // tall or vertical
  std::vector<Item> horizontal;
  std::vector<Item> medium;
  std::vector<Item> small;
  std::vector<Item> other;       // large
};

struct Filled {
  std::vector<Placement> placements;
  Leftovers left;
  bool scaled = false;
};

// Assigns every item (tall ones only when `route_tall`) to the non-reserved
// boxes of its kind and fills them. `hint` maps item id to a box index or
// -1; empty means none.
Filled fill_boxes(const Instance& instance, const Classification& classes,
                  std::span<const Container> boxes, const AssignOptions& options,
                  const std::vector<int>& hint, bool route_tall);

struct Generated {
  std::vector<Container> boxes;
  std::vector<int> hint;  // item id -> box index, -1 for items left out
};

// k-column layout for `ids`: tall and vertical items in side-by-side runs of
// width at most (W - x0) / k, one box per large item, horizontal items in
// stacks of height at most ceil(opt / k); the boxes are then shelf-packed in
// [x0, W]. Medium and small items get no box. Returns nullopt when more than
// `max_containers` boxes would be needed or an item is wider than the
// region.
std::optional<Generated> generate_columns(const Instance& instance,
                                          const Classification& classes,
                                          std::span<const int> ids, int k,
                                          Length opt, Length x0,
                                          int max_containers);

Length boxes_top(std::span<const Container> boxes);

// Boxes stacked above the main layout.
class TopStack {
 public:
  explicit TopStack(Length bottom) : y_(bottom) {}
  Length y() const { return y_; }
  void add(TopBox box, std::vector<Placement>& placements);
  const std::vector<Container>& boxes() const { return boxes_; }

 private:
  Length y_;
  std::vector<Container> boxes_;
};

struct Candidate {
  std::vector<Container> containers;  // main layout plus top boxes
  std::vector<Container> top_boxes;
  std::vector<Placement> placements;
  std::vector<BudgetCheck> budgets;
  std::vector<std::string> notes;
  std::string source;
  Length opt_guess = 0;
};

// Checks a candidate with verify_layout and returns its packing, or
// nullopt (with a note appended) when it is incomplete or invalid.
std::optional<Packing> accept(const Instance& instance,
                              const Classification& classes,
                              Candidate& candidate);

// The OPT' grid over [lb, hi] plus the height of every template at least
// lb: a supplied layout names the optimum it was built for.
std::vector<Length> opt_guesses(Length lb, Length hi, const Rational& epsilon,
                                const Budgets& budgets, bool with_templates);

// floor(factor * opt) for budget limits.
Length budget_limit(const Rational& factor, Length opt);

std::vector<Item> items_of(const Instance& instance, std::span<const int> ids);

}  // namespace gspkit::detail

#endif  // GSPKIT_SRC_PIPELINE_HPP
