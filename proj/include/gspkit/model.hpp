#ifndef GSPKIT_MODEL_HPP
#define GSPKIT_MODEL_HPP

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "gspkit/rational.hpp"

namespace gspkit {

// All geometry is integral.
using Length = std::int64_t;

// Axis-aligned rectangle [left,right] x [bottom,top]. Items are treated as
// open sets, so rectangles sharing an edge do not overlap.
struct Rect {
  Length left = 0;
  Length bottom = 0;
  Length right = 0;
  Length top = 0;

  Length width() const { return right - left; }
  Length height() const { return top - bottom; }
  Length area() const { return width() * height(); }
  bool contains(const Rect& o) const {
    return o.left >= left && o.right <= right && o.bottom >= bottom &&
           o.top <= top;
  }
  bool interiors_overlap(const Rect& o) const {
    return left < o.right && o.left < right && bottom < o.top &&
           o.bottom < top;
  }
  friend bool operator==(const Rect&, const Rect&) = default;
};

std::string to_string(const Rect& r);

struct Item {
  int id = 0;
  Length width = 0;
  Length height = 0;

  Length area() const { return width * height; }
  friend bool operator==(const Item&, const Item&) = default;
};

// Strip width plus the items to pack. Item ids are 0..n-1 in order and
// every item fits the strip width; the constructor enforces this.
class Instance {
 public:
  Instance() = default;
  Instance(Length strip_width, std::vector<Item> items);

  // Builds items with ids 0..n-1 from (width, height) pairs.
  static Instance from_sizes(Length strip_width,
                             std::span<const std::pair<Length, Length>> sizes);

  Length strip_width() const { return strip_width_; }
  const std::vector<Item>& items() const { return items_; }
  const Item& item(int id) const { return items_.at(id); }
  int size() const { return static_cast<int>(items_.size()); }
  bool empty() const { return items_.empty(); }

  Length total_area() const;
  Length max_height() const;

  friend bool operator==(const Instance&, const Instance&) = default;

 private:
  Length strip_width_ = 0;
  std::vector<Item> items_;
};

struct Placement {
  int item = 0;
  Length left = 0;
  Length bottom = 0;
  friend bool operator==(const Placement&, const Placement&) = default;
};

Rect placed_rect(const Item& item, const Placement& p);

// One placement per item, indexed by item id, plus the achieved height.
struct Packing {
  std::vector<Placement> placements;
  Length height = 0;

  friend bool operator==(const Packing&, const Packing&) = default;
};

// Orders placements by item id and sets height to the maximum top.
Packing make_packing(const Instance& instance,
                     std::vector<Placement> placements);

Rect placed_rect(const Instance& instance, const Placement& p);

struct PackingReport {
  std::vector<std::string> violations;
  // Pairs of item ids with overlapping interiors.
  std::vector<std::pair<int, int>> overlaps;
  bool ok() const { return violations.empty(); }
};

// Checks completeness, strip bounds, declared height and pairwise
// disjointness of the open item rectangles.
PackingReport verify_packing(const Instance& instance, const Packing& packing);

// max(ceil(total area / W), max height); 0 for an empty instance.
Length lower_bound(const Instance& instance);

enum class ItemClass { Tall, Large, Horizontal, Vertical, Medium, Small };

std::string_view to_string(ItemClass c);

struct Classification {
  Length opt_estimate = 0;
  Rational delta;
  Rational mu;
  std::vector<ItemClass> classes;  // indexed by item id

  ItemClass of(int item) const { return classes.at(item); }
  std::vector<int> items_of(ItemClass c) const;
};

ItemClass classify_item(Length width, Length height, Length strip_width,
                        Length opt_estimate, const Rational& delta,
                        const Rational& mu);

// Throws ParameterError unless 1 >= delta > mu > 0 and opt_estimate >= 1.
Classification classify(const Instance& instance, Length opt_estimate,
                        const Rational& delta, const Rational& mu);

// Total area of items that are medium for the window (delta, mu).
Length medium_area(const Instance& instance, Length opt_estimate,
                   const Rational& delta, const Rational& mu);

struct ConstantOptions {
  // Container budget standing in for g(delta, eps).
  int container_budget = 64;
  // Budgets |B_hor| and |B_ver| used for eps2 and eps3; 0 means "use
  // container_budget".
  int hor_budget = 0;
  int ver_budget = 0;
};

struct ConstantProfile {
  Rational epsilon;
  Rational delta;
  Rational mu;
  int container_budget = 0;
  int hor_budget = 0;
  int ver_budget = 0;
  Rational eps1, eps2, eps3, eps4, eps5, eps6;
  int window = 0;  // 1-based index of the accepted (delta, mu) window
  Length medium_area = 0;
  bool medium_area_ok = false;
};

// Throws ParameterError unless 0 < epsilon < 1 and 1/epsilon is integral.
void require_epsilon(const Rational& epsilon);

// f(x) = x * eps / g^2.
Rational shrink(const Rational& x, const Rational& epsilon,
                int container_budget);

// Scans delta over f(eps), f(f(eps)), ... with mu = f(delta) and accepts the
// first window whose medium items have area at most eps * opt * W. When no
// window within ceil(2/eps)+1 steps qualifies (only possible if opt_estimate
// is below the area bound) the window with least medium area is returned
// with medium_area_ok == false.
ConstantProfile choose_constants(const Rational& epsilon,
                                 const Instance& instance, Length opt_estimate,
                                 const ConstantOptions& options = {});

// Fills eps1..eps6 from epsilon, delta, mu and the budgets.
void fill_derived_constants(ConstantProfile& profile);

}  // namespace gspkit

#endif  // GSPKIT_MODEL_HPP
