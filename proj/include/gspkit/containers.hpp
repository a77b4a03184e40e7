#ifndef GSPKIT_CONTAINERS_HPP
#define GSPKIT_CONTAINERS_HPP

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "gspkit/gap.hpp"
#include "gspkit/guillotine.hpp"
#include "gspkit/model.hpp"

namespace gspkit {

// How items inside a container are arranged:
//   SingleLarge        exactly one item
//   HorizontalStack    items stacked bottom-up, flush left
//   VerticalSideBySide items side by side left to right, on the floor
//   MediumBlock        NFDH shelves
//   SmallNfdh          NFDH shelves of items at most eps of each side
enum class ContainerKind {
  SingleLarge,
  HorizontalStack,
  VerticalSideBySide,
  MediumBlock,
  SmallNfdh,
};

// Text names: single, horizontal, vertical, medium, small.
std::string_view to_string(ContainerKind kind);
std::optional<ContainerKind> parse_container_kind(std::string_view name);

struct Container {
  Rect box;
  ContainerKind kind = ContainerKind::MediumBlock;
  Rational epsilon = Rational(1, 4);  // size ratio for SmallNfdh
  bool reserved = false;              // set for the empty box B*

  friend bool operator==(const Container&, const Container&) = default;
};

struct ContainerLayout {
  Length strip_width = 0;
  Length height = 0;
  std::vector<Container> containers;

  friend bool operator==(const ContainerLayout&, const ContainerLayout&) = default;
};

// Whether `kind` accepts an item of class `c`. SingleLarge and MediumBlock
// accept any class; SmallNfdh is constrained by size, not class.
bool admits(ContainerKind kind, ItemClass c);

// True iff w <= eps * w(B) and h <= eps * h(B).
bool fits_small(const Container& container, const Item& item);

struct Overflow {
  int item = 0;                    // first item that did not fit
  std::vector<Placement> placed;   // feasible prefix
  std::vector<int> rejected;       // every item left out, `item` included
};

using FillResult = std::variant<std::vector<Placement>, Overflow>;

// Places `items` in the given order according to the container kind. When
// `classes` is non-empty it runs parallel to `items` and a class the kind
// does not admit is a ParameterError.
FillResult fill_container(const Container& container,
                          std::span<const Item> items,
                          std::span<const ItemClass> classes = {});

// Size measure used when packing items into containers by GAP:
//   Height  capacity h(B), size h, feasible iff w <= w(B)
//   Width   capacity w(B), size w, feasible iff h <= h(B)
//   Area    capacity w(B) h(B), size w h, feasible iff the item fits small
//   Single  capacity 1, size 1, feasible iff the item fits the box
// Profit is the size in Height and Width modes and the area otherwise.
enum class AssignMode { Height, Width, Area, Single };

struct AssignOptions {
  GapOptions gap;
  // Scale capacities instead of failing when a DP table is over budget.
  bool allow_scaling = true;
  Rational epsilon = Rational(1, 4);
  // Optional warm start: container index per item or -1. Used when its
  // profit beats the GAP result.
  std::vector<int> hint;
};

struct ContainerAssignment {
  std::vector<int> container;  // per item: container index or -1
  Length profit = 0;
  bool scaled = false;     // some group needed capacity scaling
  bool used_hint = false;
};

// Assigns items to containers with the exact GAP DP. Containers are handled
// in consecutive groups of at most gap.max_bins bins; items left over by one
// group are offered to the next. Throws ResourceError when a table is over
// budget and scaling is disabled.
ContainerAssignment assign_to_containers(std::span<const Item> items,
                                         std::span<const Container> containers,
                                         AssignMode mode,
                                         const AssignOptions& options = {});

struct TopBox {
  Container container;
  std::vector<Placement> placements;
  CutTree tree;  // over container.box
};

// NFDH of medium items into a full-width box with floor at `bottom`.
// Requires total area <= eps * opt * W and every height <= delta * opt with
// delta <= eps; the resulting height is at most 3 eps opt. Throws
// ParameterError naming the violated bound.
TopBox pack_medium(std::span<const Item> items, Length opt_estimate,
                   Length strip_width, const Rational& epsilon,
                   const Rational& delta, Length bottom = 0);

// NFDH of small leftovers into a full-width box. Requires total area
// <= 3 eps opt * W and every height <= eps * opt, so the height is at most
// 9 eps opt. Throws ParameterError naming the violated bound.
TopBox pack_small_leftovers(std::span<const Item> items, Length opt_estimate,
                            Length strip_width, const Rational& epsilon,
                            Length bottom = 0);

// NFDH into a full-width box with no size precondition.
TopBox pack_on_top(std::span<const Item> items, Length strip_width,
                   Length bottom, ContainerKind kind);

struct LayoutReport {
  std::vector<std::string> violations;
  std::optional<CutTree> tree;  // composed item cut tree when separable
  bool ok() const { return violations.empty(); }
};

// Checks container bounds and disjointness, guillotine separability of the
// boxes, that every placed item lies in exactly one container, per-kind
// niceness, class admissibility when `classes` is given (indexed by item
// id), and separability of the items via the composed tree.
LayoutReport verify_layout(const ContainerLayout& layout,
                           const Instance& instance,
                           std::span<const Placement> placements,
                           const Classification* classes = nullptr);

// One line per container: `box <left> <bottom> <w> <h> <kind> [eps]
// [reserved]`, preceded by `layout <W> <height>`.
std::string serialize_layout(const ContainerLayout& layout);
ContainerLayout parse_layout(std::string_view text);

}  // namespace gspkit

#endif  // GSPKIT_CONTAINERS_HPP
