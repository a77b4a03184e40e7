#ifndef GSPKIT_HEURISTICS_HPP
#define GSPKIT_HEURISTICS_HPP

#include <span>
#include <string>
#include <vector>

#include "gspkit/guillotine.hpp"
#include "gspkit/model.hpp"

namespace gspkit {

// NFDH order: non-increasing height, then non-increasing width, then id.
bool nfdh_before(const Item& a, const Item& b);

struct ShelfPacking {
  std::vector<Placement> placements;  // in packing order
  Length height = 0;                  // total height of all shelves
  // Cut tree over [left, left+width] x [bottom, bottom+height]: horizontal
  // cuts between shelves, vertical cuts between items, trims for the rest.
  CutTree tree;
};

// Next Fit Decreasing Height into a region of the given width with
// unbounded height, anchored at (left, bottom). Throws ParameterError when
// an item is wider than the region.
ShelfPacking nfdh_shelves(std::span<const Item> items, Length left,
                          Length bottom, Length width);

struct StripResult {
  Packing packing;
  CutTree tree;
};

// NFDH over the whole strip. Height is at most 2A/W + max height and the
// tree has at most two stages when trims are ignored.
StripResult nfdh_strip(const Instance& instance);

struct Rejection {
  int item = 0;
  std::string reason;
};

struct BoxFill {
  std::vector<Placement> placements;
  std::vector<Rejection> rejected;
  Length used_height = 0;  // height of the shelves actually opened
  Length packed_area = 0;
  CutTree tree;  // over the full box
};

// NFDH restricted to `box`. Items violating w <= eps*w(box) or
// h <= eps*h(box) are rejected up front; once no new shelf fits, remaining
// items go into the last shelf while width remains and are rejected
// otherwise. Packs area at least min(total, (1 - 2 eps) w h) when every item
// satisfies the size condition. Requires 0 < eps <= 1.
BoxFill nfdh_into_box(std::span<const Item> items, const Rect& box,
                      const Rational& epsilon);

// Tall items side by side on the strip floor, in NFDH order. Throws
// InfeasibleError when their widths sum past the strip width.
std::vector<Placement> bottom_left_flush(std::span<const Item> items,
                                         Length strip_width);

// Steinberg's sufficient condition for packing `items` into a w x h box:
// 2a <= wh - (2 wmax - w)+ (2 hmax - h)+. Throws ParameterError when an item
// does not fit the box on its own.
bool steinberg_feasible(std::span<const Item> items, Length width,
                        Length height);

}  // namespace gspkit

#endif  // GSPKIT_HEURISTICS_HPP
