#include "gspkit/heuristics.hpp"

#include <algorithm>
#include <optional>

#include "gspkit/errors.hpp"

namespace gspkit {

bool nfdh_before(const Item& a, const Item& b) {
  if (a.height != b.height) return a.height > b.height;
  if (a.width != b.width) return a.width > b.width;
  return a.id < b.id;
}

namespace {

struct Shelf {
  Length bottom = 0;
  Length height = 0;
  Length cursor = 0;  // next free x
  std::vector<std::pair<Item, Length>> items;  // item and its left edge
};

CutTree item_node(const Item& it, Length x, Length y, Length shelf_height) {
  const Rect slot{x, y, x + it.width, y + shelf_height};
  if (it.height == shelf_height) return CutTree::leaf(slot, it.id);
  return CutTree::horizontal(
      slot, y + it.height, CutTree::leaf({x, y, x + it.width, y + it.height}, it.id),
      CutTree::waste({x, y + it.height, x + it.width, y + shelf_height}));
}

CutTree shelf_node(const Shelf& s, Length right) {
  const Length top = s.bottom + s.height;
  std::optional<CutTree> tail;
  if (s.cursor < right) tail = CutTree::waste({s.cursor, s.bottom, right, top});
  for (std::size_t k = s.items.size(); k-- > 0;) {
    const auto& [it, x] = s.items[k];
    CutTree node = item_node(it, x, s.bottom, s.height);
    if (tail) {
      node = CutTree::vertical({x, s.bottom, right, top}, x + it.width,
                               std::move(node), std::move(*tail));
    }
    tail = std::move(node);
  }
  return std::move(*tail);
}

// Tree over `region`, whose bottom is the first shelf's bottom and whose top
// is at or above the last shelf's top.
CutTree shelves_tree(const std::vector<Shelf>& shelves, const Rect& region) {
  if (shelves.empty()) return CutTree::waste(region);
  std::optional<CutTree> tail;
  const Shelf& last = shelves.back();
  if (last.bottom + last.height < region.top) {
    tail = CutTree::waste({region.left, last.bottom + last.height, region.right,
                           region.top});
  }
  for (std::size_t k = shelves.size(); k-- > 0;) {
    const Shelf& s = shelves[k];
    CutTree node = shelf_node(s, region.right);
    if (tail) {
      node = CutTree::horizontal(
          {region.left, s.bottom, region.right, region.top},
          s.bottom + s.height, std::move(node), std::move(*tail));
    }
    tail = std::move(node);
  }
  return std::move(*tail);
}

std::vector<Item> sorted_nfdh(std::span<const Item> items) {
  std::vector<Item> order(items.begin(), items.end());
  std::sort(order.begin(), order.end(), nfdh_before);
  return order;
}

}  // namespace

ShelfPacking nfdh_shelves(std::span<const Item> items, Length left,
                          Length bottom, Length width) {
  ShelfPacking out;
  std::vector<Shelf> shelves;
  Length y = bottom;
  for (const Item& it : sorted_nfdh(items)) {
    if (it.width > width) {
      throw ParameterError("item " + std::to_string(it.id) +
                           " is wider than the shelf region");
    }
    if (shelves.empty() || shelves.back().cursor + it.width > left + width) {
      if (!shelves.empty()) y += shelves.back().height;
      shelves.push_back({y, it.height, left, {}});
    }
    Shelf& s = shelves.back();
    s.items.emplace_back(it, s.cursor);
    out.placements.push_back({it.id, s.cursor, s.bottom});
    s.cursor += it.width;
  }
  if (!shelves.empty()) y += shelves.back().height;
  out.height = y - bottom;
  out.tree = shelves_tree(shelves, {left, bottom, left + width, y});
  return out;
}

StripResult nfdh_strip(const Instance& instance) {
  ShelfPacking shelves =
      nfdh_shelves(instance.items(), 0, 0, instance.strip_width());
  StripResult r;
  r.packing = make_packing(instance, std::move(shelves.placements));
  r.tree = std::move(shelves.tree);
  return r;
}

BoxFill nfdh_into_box(std::span<const Item> items, const Rect& box,
                      const Rational& epsilon) {
  if (!(epsilon > Rational(0) && epsilon <= Rational(1))) {
    throw ParameterError("nfdh_into_box needs 0 < eps <= 1");
  }
  BoxFill out;
  std::vector<Item> order;
  for (const Item& it : sorted_nfdh(items)) {
    if (greater_than_scaled(it.width, epsilon, box.width())) {
      out.rejected.push_back(
          {it.id, "width " + std::to_string(it.width) + " exceeds " +
                      epsilon.to_string() + " of box width " +
                      std::to_string(box.width())});
    } else if (greater_than_scaled(it.height, epsilon, box.height())) {
      out.rejected.push_back(
          {it.id, "height " + std::to_string(it.height) + " exceeds " +
                      epsilon.to_string() + " of box height " +
                      std::to_string(box.height())});
    } else {
      order.push_back(it);
    }
  }

  std::vector<Shelf> shelves;
  bool closed = false;  // no further shelf fits
  for (const Item& it : order) {
    const bool fits_row =
        !shelves.empty() && shelves.back().cursor + it.width <= box.right;
    if (!fits_row && !closed) {
      const Length y = shelves.empty()
                           ? box.bottom
                           : shelves.back().bottom + shelves.back().height;
      if (y + it.height <= box.top) {
        shelves.push_back({y, it.height, box.left, {}});
      } else {
        closed = true;
      }
    }
    if (fits_row || (!closed && !shelves.empty() &&
                     shelves.back().items.empty())) {
      Shelf& s = shelves.back();
      s.items.emplace_back(it, s.cursor);
      out.placements.push_back({it.id, s.cursor, s.bottom});
      out.packed_area += it.area();
      s.cursor += it.width;
    } else {
      out.rejected.push_back({it.id, "box full"});
    }
  }
  if (!shelves.empty()) {
    out.used_height = shelves.back().bottom + shelves.back().height - box.bottom;
  }
  out.tree = shelves_tree(shelves, box);
  return out;
}

std::vector<Placement> bottom_left_flush(std::span<const Item> items,
                                         Length strip_width) {
  std::vector<Placement> out;
  Length x = 0;
  for (const Item& it : sorted_nfdh(items)) {
    out.push_back({it.id, x, 0});
    x += it.width;
  }
  if (x > strip_width) {
    throw InfeasibleError("tall items need width " + std::to_string(x) +
                          " but the strip has " + std::to_string(strip_width));
  }
  return out;
}

bool steinberg_feasible(std::span<const Item> items, Length width,
                        Length height) {
  __int128 area = 0;
  Length wmax = 0;
  Length hmax = 0;
  for (const Item& it : items) {
    if (it.width > width || it.height > height) {
      throw ParameterError("item " + std::to_string(it.id) +
                           " does not fit the box on its own");
    }
    area += it.area();
    wmax = std::max(wmax, it.width);
    hmax = std::max(hmax, it.height);
  }
  const __int128 excess_w = std::max<Length>(0, 2 * wmax - width);
  const __int128 excess_h = std::max<Length>(0, 2 * hmax - height);
  return 2 * area <= static_cast<__int128>(width) * height - excess_w * excess_h;
}

}  // namespace gspkit
