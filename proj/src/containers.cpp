#include "gspkit/containers.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <sstream>

#include "gspkit/errors.hpp"
#include "gspkit/heuristics.hpp"

namespace gspkit {

namespace {

constexpr std::array<std::pair<ContainerKind, std::string_view>, 5> kKindNames{{
    {ContainerKind::SingleLarge, "single"},
    {ContainerKind::HorizontalStack, "horizontal"},
    {ContainerKind::VerticalSideBySide, "vertical"},
    {ContainerKind::MediumBlock, "medium"},
    {ContainerKind::SmallNfdh, "small"},
}};

}  // namespace

std::string_view to_string(ContainerKind kind) {
  for (const auto& [k, name] : kKindNames) {
    if (k == kind) return name;
  }
  return "?";
}

std::optional<ContainerKind> parse_container_kind(std::string_view name) {
  for (const auto& [k, n] : kKindNames) {
    if (n == name) return k;
  }
  return std::nullopt;
}

bool admits(ContainerKind kind, ItemClass c) {
  switch (kind) {
    case ContainerKind::HorizontalStack:
      return c == ItemClass::Horizontal;
    case ContainerKind::VerticalSideBySide:
      return c == ItemClass::Tall || c == ItemClass::Vertical;
    case ContainerKind::SingleLarge:
    case ContainerKind::MediumBlock:
    case ContainerKind::SmallNfdh:
      return true;
  }
  return false;
}

bool fits_small(const Container& container, const Item& item) {
  return at_most_scaled(item.width, container.epsilon, container.box.width()) &&
         at_most_scaled(item.height, container.epsilon,
                        container.box.height());
}

namespace {

Overflow overflow_from(std::span<const Item> items, std::size_t first,
                       std::vector<Placement> placed) {
  Overflow o;
  o.item = items[first].id;
  o.placed = std::move(placed);
  for (std::size_t k = first; k < items.size(); ++k) {
    o.rejected.push_back(items[k].id);
  }
  return o;
}

FillResult from_box_fill(BoxFill fill) {
  if (fill.rejected.empty()) return std::move(fill.placements);
  Overflow o;
  o.item = fill.rejected.front().item;
  o.placed = std::move(fill.placements);
  for (const Rejection& r : fill.rejected) o.rejected.push_back(r.item);
  return o;
}

}  // namespace

FillResult fill_container(const Container& container,
                          std::span<const Item> items,
                          std::span<const ItemClass> classes) {
  if (!classes.empty()) {
    if (classes.size() != items.size()) {
      throw ParameterError("fill_container: classes must parallel items");
    }
    for (std::size_t k = 0; k < items.size(); ++k) {
      if (!admits(container.kind, classes[k])) {
        throw ParameterError("container kind " +
                             std::string(to_string(container.kind)) +
                             " does not admit " +
                             std::string(to_string(classes[k])) + " item " +
                             std::to_string(items[k].id));
      }
    }
  }
  const Rect& b = container.box;
  std::vector<Placement> placed;
  switch (container.kind) {
    case ContainerKind::SingleLarge:
      for (std::size_t k = 0; k < items.size(); ++k) {
        if (k > 0 || items[k].width > b.width() ||
            items[k].height > b.height()) {
          return overflow_from(items, k, std::move(placed));
        }
        placed.push_back({items[k].id, b.left, b.bottom});
      }
      return placed;
    case ContainerKind::HorizontalStack: {
      Length y = b.bottom;
      for (std::size_t k = 0; k < items.size(); ++k) {
        if (items[k].width > b.width() || y + items[k].height > b.top) {
          return overflow_from(items, k, std::move(placed));
        }
        placed.push_back({items[k].id, b.left, y});
        y += items[k].height;
      }
      return placed;
    }
    case ContainerKind::VerticalSideBySide: {
      Length x = b.left;
      for (std::size_t k = 0; k < items.size(); ++k) {
        if (items[k].height > b.height() || x + items[k].width > b.right) {
          return overflow_from(items, k, std::move(placed));
        }
        placed.push_back({items[k].id, x, b.bottom});
        x += items[k].width;
      }
      return placed;
    }
    case ContainerKind::MediumBlock:
      return from_box_fill(nfdh_into_box(items, b, Rational(1)));
    case ContainerKind::SmallNfdh:
      return from_box_fill(nfdh_into_box(items, b, container.epsilon));
  }
  throw InternalError("unknown container kind");
}

namespace {

struct Measure {
  std::optional<Length> size;
  Length profit = 0;
};

Measure measure(const Item& it, const Container& c, AssignMode mode) {
  const Rect& b = c.box;
  switch (mode) {
    case AssignMode::Height:
      if (it.width <= b.width()) return {it.height, it.height};
      return {};
    case AssignMode::Width:
      if (it.height <= b.height()) return {it.width, it.width};
      return {};
    case AssignMode::Area:
      if (fits_small(c, it)) return {it.area(), it.area()};
      return {};
    case AssignMode::Single:
      if (it.width <= b.width() && it.height <= b.height()) {
        return {1, it.area()};
      }
      return {};
  }
  return {};
}

Length capacity(const Container& c, AssignMode mode) {
  switch (mode) {
    case AssignMode::Height:
      return c.box.height();
    case AssignMode::Width:
      return c.box.width();
    case AssignMode::Area:
      return c.box.area();
    case AssignMode::Single:
      return 1;
  }
  return 0;
}

// Profit of a hint, or nullopt when it overfills a container or uses an
// infeasible pair.
std::optional<Length> hint_profit(std::span<const Item> items,
                                  std::span<const Container> containers,
                                  AssignMode mode,
                                  const std::vector<int>& hint) {
  if (hint.size() != items.size()) return std::nullopt;
  std::vector<Length> load(containers.size(), 0);
  Length profit = 0;
  for (std::size_t i = 0; i < items.size(); ++i) {
    const int j = hint[i];
    if (j < 0) continue;
    if (j >= static_cast<int>(containers.size())) return std::nullopt;
    Measure m = measure(items[i], containers[j], mode);
    if (!m.size) return std::nullopt;
    load[j] += *m.size;
    if (load[j] > capacity(containers[j], mode)) return std::nullopt;
    profit += m.profit;
  }
  return profit;
}

}  // namespace

ContainerAssignment assign_to_containers(std::span<const Item> items,
                                         std::span<const Container> containers,
                                         AssignMode mode,
                                         const AssignOptions& options) {
  ContainerAssignment out;
  out.container.assign(items.size(), -1);
  const int group_size = std::max(1, options.gap.max_bins);
  // Profit depends only on the item, so a hint that places every item is
  // already optimal.
  if (!options.hint.empty() &&
      std::all_of(options.hint.begin(), options.hint.end(),
                  [](int j) { return j >= 0; })) {
    if (auto p = hint_profit(items, containers, mode, options.hint)) {
      out.container = options.hint;
      out.profit = *p;
      out.used_hint = true;
      return out;
    }
  }
  std::vector<int> remaining(items.size());
  std::iota(remaining.begin(), remaining.end(), 0);

  for (std::size_t g = 0; g < containers.size() && !remaining.empty();
       g += group_size) {
    const std::size_t g_end =
        std::min(containers.size(), g + static_cast<std::size_t>(group_size));
    GapInstance gap;
    for (std::size_t j = g; j < g_end; ++j) {
      gap.capacities.push_back(capacity(containers[j], mode));
    }
    std::vector<int> offered;
    for (int i : remaining) {
      GapItem gi;
      bool any = false;
      for (std::size_t j = g; j < g_end; ++j) {
        Measure m = measure(items[i], containers[j], mode);
        any = any || m.size.has_value();
        gi.size.push_back(m.size);
        gi.profit.push_back(m.size ? m.profit : 0);
      }
      if (!any) continue;
      offered.push_back(i);
      gap.items.push_back(std::move(gi));
    }
    if (offered.empty()) continue;

    Assignment a;
    if (gap_table_cells(gap) <= options.gap.table_budget) {
      a = solve_exact(gap, options.gap);
    } else if (options.allow_scaling) {
      a = solve_scaled(gap, options.epsilon, options.gap);
      out.scaled = true;
    } else {
      a = solve_exact(gap, options.gap);  // throws ResourceError
    }
    for (std::size_t k = 0; k < offered.size(); ++k) {
      if (a.bin[k] >= 0) {
        out.container[offered[k]] = static_cast<int>(g) + a.bin[k];
      }
    }
    out.profit += a.profit;
    std::erase_if(remaining, [&](int i) { return out.container[i] >= 0; });
  }

  if (!options.hint.empty()) {
    auto p = hint_profit(items, containers, mode, options.hint);
    if (p && *p > out.profit) {
      out.container = options.hint;
      out.profit = *p;
      out.used_hint = true;
    }
  }
  return out;
}

namespace {

TopBox shelves_box(std::span<const Item> items, Length strip_width,
                   Length bottom, ContainerKind kind) {
  ShelfPacking s = nfdh_shelves(items, 0, bottom, strip_width);
  TopBox out;
  out.container.box = {0, bottom, strip_width, bottom + s.height};
  out.container.kind = kind;
  out.placements = std::move(s.placements);
  out.tree = std::move(s.tree);
  return out;
}

Length total_area(std::span<const Item> items) {
  Length a = 0;
  for (const Item& it : items) a += it.area();
  return a;
}

}  // namespace

TopBox pack_medium(std::span<const Item> items, Length opt_estimate,
                   Length strip_width, const Rational& epsilon,
                   const Rational& delta, Length bottom) {
  if (delta > epsilon) {
    throw ParameterError("pack_medium needs delta <= eps");
  }
  // area <= eps * opt * W
  const __int128 area = total_area(items);
  if (area * epsilon.den() >
      static_cast<__int128>(epsilon.num()) * opt_estimate * strip_width) {
    throw ParameterError("medium area exceeds eps * opt * W");
  }
  for (const Item& it : items) {
    if (greater_than_scaled(it.height, delta, opt_estimate)) {
      throw ParameterError("medium item " + std::to_string(it.id) +
                           " is taller than delta * opt");
    }
  }
  TopBox out = shelves_box(items, strip_width, bottom, ContainerKind::MediumBlock);
  if (greater_than_scaled(out.container.box.height(), epsilon * Rational(3),
                          opt_estimate)) {
    throw InternalError("medium box exceeds 3 eps opt");
  }
  return out;
}

TopBox pack_small_leftovers(std::span<const Item> items, Length opt_estimate,
                            Length strip_width, const Rational& epsilon,
                            Length bottom) {
  const __int128 area = total_area(items);
  if (area * epsilon.den() >
      3 * static_cast<__int128>(epsilon.num()) * opt_estimate * strip_width) {
    throw ParameterError("small leftover area exceeds 3 eps * opt * W");
  }
  for (const Item& it : items) {
    if (greater_than_scaled(it.height, epsilon, opt_estimate)) {
      throw ParameterError("small leftover " + std::to_string(it.id) +
                           " is taller than eps * opt");
    }
  }
  TopBox out = shelves_box(items, strip_width, bottom, ContainerKind::MediumBlock);
  if (greater_than_scaled(out.container.box.height(), epsilon * Rational(9),
                          opt_estimate)) {
    throw InternalError("small leftover box exceeds 9 eps opt");
  }
  return out;
}

TopBox pack_on_top(std::span<const Item> items, Length strip_width,
                   Length bottom, ContainerKind kind) {
  return shelves_box(items, strip_width, bottom, kind);
}

namespace {

void relabel(CutTree& t, const std::vector<int>& ids) {
  if (t.kind == CutTree::Kind::Item) t.item = ids.at(t.item);
  for (CutTree& c : t.children) relabel(c, ids);
}

void check_disjoint_axis(const std::vector<Rect>& rects, bool along_x,
                         std::vector<std::string>& problems,
                         const std::string& where) {
  for (std::size_t a = 0; a < rects.size(); ++a) {
    for (std::size_t b = a + 1; b < rects.size(); ++b) {
      const Length lo_a = along_x ? rects[a].left : rects[a].bottom;
      const Length hi_a = along_x ? rects[a].right : rects[a].top;
      const Length lo_b = along_x ? rects[b].left : rects[b].bottom;
      const Length hi_b = along_x ? rects[b].right : rects[b].top;
      if (lo_a < hi_b && lo_b < hi_a) {
        problems.push_back(where + ": items not " +
                           (along_x ? "side by side" : "stacked"));
        return;
      }
    }
  }
}

}  // namespace

LayoutReport verify_layout(const ContainerLayout& layout,
                           const Instance& instance,
                           std::span<const Placement> placements,
                           const Classification* classes) {
  LayoutReport report;
  auto& v = report.violations;
  const Rect root{0, 0, layout.strip_width, layout.height};
  const auto& cs = layout.containers;

  bool boxes_ok = true;
  for (std::size_t j = 0; j < cs.size(); ++j) {
    const Rect& b = cs[j].box;
    if (b.width() <= 0 || b.height() <= 0) {
      v.push_back("container " + std::to_string(j) + " is degenerate");
      boxes_ok = false;
    } else if (!root.contains(b)) {
      v.push_back("container " + std::to_string(j) + " " + to_string(b) +
                  " leaves " + to_string(root));
      boxes_ok = false;
    }
    for (std::size_t k = j + 1; k < cs.size(); ++k) {
      if (b.interiors_overlap(cs[k].box)) {
        v.push_back("containers " + std::to_string(j) + " and " +
                    std::to_string(k) + " overlap");
        boxes_ok = false;
      }
    }
  }

  // Item membership.
  std::vector<Rect> rects;
  std::vector<int> ids;
  std::vector<std::vector<int>> members(cs.size());  // indices into rects
  for (const Placement& p : placements) {
    if (p.item < 0 || p.item >= instance.size()) {
      v.push_back("unknown item id " + std::to_string(p.item));
      continue;
    }
    const Rect r = placed_rect(instance, p);
    int home = -1;
    for (std::size_t j = 0; j < cs.size(); ++j) {
      if (cs[j].box.contains(r)) {
        home = static_cast<int>(j);
        break;
      }
    }
    if (home < 0) {
      v.push_back("item " + std::to_string(p.item) + " at " + to_string(r) +
                  " lies in no container");
      continue;
    }
    members[home].push_back(static_cast<int>(rects.size()));
    rects.push_back(r);
    ids.push_back(p.item);
  }
  for (std::size_t a = 0; a < rects.size(); ++a) {
    for (std::size_t b = a + 1; b < rects.size(); ++b) {
      if (rects[a].interiors_overlap(rects[b])) {
        v.push_back("overlap: items " + std::to_string(std::min(ids[a], ids[b])) +
                    " and " + std::to_string(std::max(ids[a], ids[b])));
        boxes_ok = false;
      }
    }
  }

  // Per-container niceness and admissibility.
  for (std::size_t j = 0; j < cs.size(); ++j) {
    const Container& c = cs[j];
    const std::string where = "container " + std::to_string(j) + " (" +
                              std::string(to_string(c.kind)) + ")";
    std::vector<Rect> inside;
    for (int m : members[j]) {
      inside.push_back(rects[m]);
      const Item& it = instance.item(ids[m]);
      if (classes != nullptr && !admits(c.kind, classes->of(it.id))) {
        v.push_back(where + " holds " +
                    std::string(to_string(classes->of(it.id))) + " item " +
                    std::to_string(it.id));
      }
      if (c.kind == ContainerKind::SmallNfdh && !fits_small(c, it)) {
        v.push_back(where + ": item " + std::to_string(it.id) +
                    " is not small for the box");
      }
    }
    switch (c.kind) {
      case ContainerKind::SingleLarge:
        if (inside.size() > 1) v.push_back(where + " holds more than one item");
        break;
      case ContainerKind::HorizontalStack:
        check_disjoint_axis(inside, /*along_x=*/false, v, where);
        break;
      case ContainerKind::VerticalSideBySide:
        check_disjoint_axis(inside, /*along_x=*/true, v, where);
        break;
      case ContainerKind::MediumBlock:
      case ContainerKind::SmallNfdh:
        break;
    }
  }
  if (!boxes_ok) return report;

  // Compose the box tree with per-container item trees.
  std::vector<Rect> boxes;
  for (const Container& c : cs) boxes.push_back(c.box);
  SeparabilityResult box_tree = cuts_separating_boxes(boxes, root);
  if (auto* w = std::get_if<NotSeparable>(&box_tree)) {
    v.push_back("containers not guillotine separable: no feasible cut in " +
                to_string(w->region));
    return report;
  }
  bool items_ok = true;
  auto compose = [&](auto& self, CutTree& t) -> void {
    if (t.kind == CutTree::Kind::Item) {
      const int j = t.item;
      std::vector<Rect> inside;
      for (int m : members[j]) inside.push_back(rects[m]);
      SeparabilityResult sub = cuts_separating_boxes(inside, t.region);
      if (auto* w = std::get_if<NotSeparable>(&sub)) {
        v.push_back("items in container " + std::to_string(j) +
                    " not separable: no feasible cut in " +
                    to_string(w->region));
        items_ok = false;
        return;
      }
      CutTree st = std::get<CutTree>(std::move(sub));
      relabel(st, members[j]);
      t = std::move(st);
      return;
    }
    for (CutTree& c : t.children) self(self, c);
  };
  CutTree tree = std::get<CutTree>(std::move(box_tree));
  compose(compose, tree);
  if (!items_ok) return report;
  for (std::string& p : validate_cut_tree(tree, rects)) {
    v.push_back("composed tree: " + p);
  }
  relabel(tree, ids);
  report.tree = std::move(tree);
  return report;
}

std::string serialize_layout(const ContainerLayout& layout) {
  std::ostringstream os;
  os << "layout " << layout.strip_width << " " << layout.height << "\n";
  for (const Container& c : layout.containers) {
    os << "box " << c.box.left << " " << c.box.bottom << " " << c.box.width()
       << " " << c.box.height() << " " << to_string(c.kind);
    if (c.kind == ContainerKind::SmallNfdh) os << " " << c.epsilon.to_string();
    if (c.reserved) os << " reserved";
    os << "\n";
  }
  return os.str();
}

ContainerLayout parse_layout(std::string_view text) {
  ContainerLayout layout;
  bool have_header = false;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag) || tag[0] == '#') continue;
    if (tag == "layout") {
      if (have_header || !layout.containers.empty()) {
        throw ParseError(line_no, "layout header must come first");
      }
      if (!(ls >> layout.strip_width >> layout.height) ||
          layout.strip_width < 1 || layout.height < 0) {
        throw ParseError(line_no, "expected 'layout <W> <height>'");
      }
      have_header = true;
    } else if (tag == "box") {
      Length l, b, w, h;
      std::string kind;
      if (!(ls >> l >> b >> w >> h >> kind)) {
        throw ParseError(line_no,
                         "expected 'box <left> <bottom> <w> <h> <kind>'");
      }
      auto k = parse_container_kind(kind);
      if (!k) throw ParseError(line_no, "unknown container kind '" + kind + "'");
      if (w < 1 || h < 1 || l < 0 || b < 0) {
        throw ParseError(line_no, "box must have positive size and lie in the "
                                  "first quadrant");
      }
      Container c;
      c.box = {l, b, l + w, b + h};
      c.kind = *k;
      std::string extra;
      while (ls >> extra) {
        if (extra == "reserved") {
          c.reserved = true;
        } else if (c.kind == ContainerKind::SmallNfdh) {
          try {
            c.epsilon = Rational::parse(extra);
          } catch (const std::exception& e) {
            throw ParseError(line_no, e.what());
          }
          if (!(c.epsilon > Rational(0) && c.epsilon <= Rational(1))) {
            throw ParseError(line_no, "small box eps must lie in (0,1]");
          }
        } else {
          throw ParseError(line_no, "unexpected token '" + extra + "'");
        }
      }
      layout.containers.push_back(c);
    } else {
      throw ParseError(line_no, "unknown directive '" + tag + "'");
    }
  }
  if (!have_header) {
    for (const Container& c : layout.containers) {
      layout.strip_width = std::max(layout.strip_width, c.box.right);
      layout.height = std::max(layout.height, c.box.top);
    }
  }
  return layout;
}

}  // namespace gspkit
