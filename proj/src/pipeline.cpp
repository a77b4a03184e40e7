#include "pipeline.hpp"

#include <algorithm>

#include "gspkit/errors.hpp"
#include "gspkit/heuristics.hpp"

namespace gspkit {

bool Trace::budgets_ok() const {
  return std::all_of(budgets.begin(), budgets.end(),
                     [](const BudgetCheck& b) { return b.ok(); });
}

SolveResult make_result(const Instance& instance, Packing packing,
                        Trace trace) {
  PackingReport report = verify_packing(instance, packing);
  if (!report.ok()) {
    throw InternalError(trace.algorithm + " produced an invalid packing: " +
                        report.violations.front());
  }
  SeparabilityResult sep = check_separable(instance, packing);
  if (auto* w = std::get_if<NotSeparable>(&sep)) {
    throw InternalError(trace.algorithm +
                        " produced a non-guillotine packing: no feasible cut "
                        "in " + to_string(w->region));
  }
  SolveResult r;
  r.height = packing.height;
  r.lower_bound = lower_bound(instance);
  r.ratio = r.lower_bound > 0 ? Rational(r.height, r.lower_bound) : Rational(1);
  r.packing = std::move(packing);
  r.cut_tree = std::get<CutTree>(std::move(sep));
  r.trace = std::move(trace);
  return r;
}

SolveResult solve_nfdh(const Instance& instance) {
  StripResult s = nfdh_strip(instance);
  Trace trace;
  trace.algorithm = "nfdh";
  trace.source = "nfdh";
  return make_result(instance, std::move(s.packing), std::move(trace));
}

std::vector<Length> opt_grid(Length lb, Length hi, const Rational& epsilon,
                             int max_guesses) {
  std::vector<Length> grid;
  Length g = std::max<Length>(lb, 1);
  hi = std::max(hi, g);
  const Rational step = Rational(1) + epsilon;
  while (static_cast<int>(grid.size()) < max_guesses) {
    grid.push_back(g);
    if (g >= hi) break;
    g = std::min(hi, std::max(g + 1, ceil_scaled(step, g)));
  }
  return grid;
}

namespace detail {

std::vector<Length> opt_guesses(Length lb, Length hi, const Rational& epsilon,
                                const Budgets& budgets, bool with_templates) {
  std::vector<Length> g = opt_grid(lb, hi, epsilon, budgets.max_opt_guesses);
  if (with_templates) {
    for (const ContainerLayout& t : budgets.templates) {
      if (t.height >= lb) g.push_back(t.height);
    }
    std::sort(g.begin(), g.end());
    g.erase(std::unique(g.begin(), g.end()), g.end());
  }
  return g;
}

}  // namespace detail

std::optional<Instance> normalize_heights(const Instance& instance,
                                          const Rational& epsilon) {
  require_epsilon(epsilon);
  const Length n = instance.size();
  const Length hmax = instance.max_height();
  // ceil(n / eps) = n * den since eps = 1 / den.
  if (n == 0 || hmax <= n * epsilon.den()) return std::nullopt;
  std::vector<Item> items = instance.items();
  for (Item& it : items) {
    const __int128 num = static_cast<__int128>(it.height) * n * epsilon.den();
    const __int128 den = static_cast<__int128>(epsilon.num()) * hmax;
    it.height = static_cast<Length>((num + den - 1) / den);
  }
  return Instance(instance.strip_width(), std::move(items));
}

Packing denormalize(const Instance& original, const Packing& normalized,
                    const Rational& epsilon) {
  const Length n = original.size();
  const Length hmax = original.max_height();
  std::vector<Placement> out = normalized.placements;
  for (Placement& p : out) {
    const __int128 num =
        static_cast<__int128>(p.bottom) * epsilon.num() * hmax;
    const __int128 den = static_cast<__int128>(n) * epsilon.den();
    p.bottom = static_cast<Length>(num / den);
  }
  return make_packing(original, std::move(out));
}

namespace detail {

std::vector<Item> items_of(const Instance& instance, std::span<const int> ids) {
  std::vector<Item> out;
  out.reserve(ids.size());
  for (int id : ids) out.push_back(instance.item(id));
  return out;
}

Length budget_limit(const Rational& factor, Length opt) {
  return floor_scaled(factor, opt);
}

Length boxes_top(std::span<const Container> boxes) {
  Length top = 0;
  for (const Container& c : boxes) top = std::max(top, c.box.top);
  return top;
}

namespace {

void push_leftover(Leftovers& left, const Item& it, ItemClass c) {
  switch (c) {
    case ItemClass::Tall:
    case ItemClass::Vertical:
      left.vertical.push_back(it);
      return;
    case ItemClass::Horizontal:
      left.horizontal.push_back(it);
      return;
    case ItemClass::Medium:
      left.medium.push_back(it);
      return;
    case ItemClass::Small:
      left.small.push_back(it);
      return;
    case ItemClass::Large:
      left.other.push_back(it);
      return;
  }
}

struct Route {
  ContainerKind kind;
  AssignMode mode;
  bool (*takes)(ItemClass, bool route_tall);
};

constexpr Route kRoutes[] = {
    {ContainerKind::VerticalSideBySide, AssignMode::Width,
     [](ItemClass c, bool tall) {
       return c == ItemClass::Vertical || (tall && c == ItemClass::Tall);
     }},
    {ContainerKind::HorizontalStack, AssignMode::Height,
     [](ItemClass c, bool) { return c == ItemClass::Horizontal; }},
    {ContainerKind::SingleLarge, AssignMode::Single,
     [](ItemClass c, bool) { return c == ItemClass::Large; }},
    {ContainerKind::SmallNfdh, AssignMode::Area,
     [](ItemClass c, bool) { return c == ItemClass::Small; }},
};

}  // namespace

Filled fill_boxes(const Instance& instance, const Classification& classes,
                  std::span<const Container> boxes, const AssignOptions& options,
                  const std::vector<int>& hint, bool route_tall) {
  Filled out;
  for (const Route& route : kRoutes) {
    std::vector<int> box_ids;
    for (std::size_t j = 0; j < boxes.size(); ++j) {
      if (boxes[j].kind == route.kind && !boxes[j].reserved) {
        box_ids.push_back(static_cast<int>(j));
      }
    }
    std::vector<Item> items;
    for (const Item& it : instance.items()) {
      if (route.takes(classes.of(it.id), route_tall)) items.push_back(it);
    }
    if (items.empty()) continue;
    if (box_ids.empty()) {
      for (const Item& it : items) push_leftover(out.left, it, classes.of(it.id));
      continue;
    }
    std::vector<Container> group;
    for (int j : box_ids) group.push_back(boxes[j]);
    AssignOptions opts = options;
    opts.hint.clear();
    if (!hint.empty()) {
      for (const Item& it : items) {
        const int global = hint[it.id];
        auto pos = std::find(box_ids.begin(), box_ids.end(), global);
        opts.hint.push_back(pos == box_ids.end()
                                ? -1
                                : static_cast<int>(pos - box_ids.begin()));
      }
    }
    ContainerAssignment a = assign_to_containers(items, group, route.mode, opts);
    out.scaled = out.scaled || a.scaled;

    std::vector<std::vector<Item>> per_box(group.size());
    for (std::size_t k = 0; k < items.size(); ++k) {
      if (a.container[k] >= 0) {
        per_box[a.container[k]].push_back(items[k]);
      } else {
        push_leftover(out.left, items[k], classes.of(items[k].id));
      }
    }
    for (std::size_t j = 0; j < group.size(); ++j) {
      std::vector<Item>& mine = per_box[j];
      if (mine.empty()) continue;
      std::sort(mine.begin(), mine.end(), nfdh_before);
      FillResult f = fill_container(group[j], mine);
      if (auto* placed = std::get_if<std::vector<Placement>>(&f)) {
        out.placements.insert(out.placements.end(), placed->begin(),
                              placed->end());
        continue;
      }
      const Overflow& o = std::get<Overflow>(f);
      out.placements.insert(out.placements.end(), o.placed.begin(),
                            o.placed.end());
      for (int id : o.rejected) {
        push_leftover(out.left, instance.item(id), classes.of(id));
      }
    }
  }

  // Medium items fill medium boxes in turn.
  std::vector<Item> medium = items_of(instance, classes.items_of(ItemClass::Medium));
  for (const Container& c : boxes) {
    if (medium.empty()) break;
    if (c.kind != ContainerKind::MediumBlock || c.reserved) continue;
    BoxFill fill = nfdh_into_box(medium, c.box, Rational(1));
    out.placements.insert(out.placements.end(), fill.placements.begin(),
                          fill.placements.end());
    std::vector<Item> rest;
    for (const Rejection& r : fill.rejected) rest.push_back(instance.item(r.item));
    medium = std::move(rest);
  }
  for (const Item& it : medium) out.left.medium.push_back(it);
  return out;
}

std::optional<Generated> generate_columns(const Instance& instance,
                                          const Classification& classes,
                                          std::span<const int> ids, int k,
                                          Length opt, Length x0,
                                          int max_containers) {
  const Length region = instance.strip_width() - x0;
  Generated g;
  g.hint.assign(instance.size(), -1);
  std::vector<Item> pseudo;  // one per box, id = box index
  auto add_box = [&](ContainerKind kind, Length w, Length h,
                     const std::vector<int>& members) {
    const int idx = static_cast<int>(g.boxes.size());
    Container c;
    c.kind = kind;
    c.box = {0, 0, w, h};
    g.boxes.push_back(c);
    pseudo.push_back({idx, w, h});
    for (int id : members) g.hint[id] = idx;
  };

  std::vector<Item> side, stack, large;
  for (int id : ids) {
    const Item& it = instance.item(id);
    if (it.width > region) return std::nullopt;
    switch (classes.of(id)) {
      case ItemClass::Tall:
      case ItemClass::Vertical:
        side.push_back(it);
        break;
      case ItemClass::Horizontal:
        stack.push_back(it);
        break;
      case ItemClass::Large:
        large.push_back(it);
        break;
      case ItemClass::Medium:
      case ItemClass::Small:
        break;
    }
  }

  const Length column = std::max<Length>(1, region / k);
  std::sort(side.begin(), side.end(), nfdh_before);
  for (std::size_t a = 0; a < side.size();) {
    Length w = 0, h = 0;
    std::vector<int> members;
    std::size_t b = a;
    while (b < side.size() && (members.empty() || w + side[b].width <= column)) {
      w += side[b].width;
      h = std::max(h, side[b].height);
      members.push_back(side[b].id);
      ++b;
    }
    add_box(ContainerKind::VerticalSideBySide, w, h, members);
    a = b;
  }
  for (const Item& it : large) {
    add_box(ContainerKind::SingleLarge, it.width, it.height, {it.id});
  }
  const Length cap = std::max<Length>(1, (opt + k - 1) / k);
  std::sort(stack.begin(), stack.end(), [](const Item& a, const Item& b) {
    if (a.width != b.width) return a.width > b.width;
    if (a.height != b.height) return a.height > b.height;
    return a.id < b.id;
  });
  for (std::size_t a = 0; a < stack.size();) {
    Length w = 0, h = 0;
    std::vector<int> members;
    std::size_t b = a;
    while (b < stack.size() && (members.empty() || h + stack[b].height <= cap)) {
      w = std::max(w, stack[b].width);
      h += stack[b].height;
      members.push_back(stack[b].id);
      ++b;
    }
    add_box(ContainerKind::HorizontalStack, w, h, members);
    a = b;
  }
  if (static_cast<int>(g.boxes.size()) > max_containers) return std::nullopt;
  if (pseudo.empty()) return g;

  ShelfPacking shelves = nfdh_shelves(pseudo, x0, 0, region);
  for (const Placement& p : shelves.placements) {
    Rect& b = g.boxes[p.item].box;
    b = {p.left, p.bottom, p.left + b.width(), p.bottom + b.height()};
  }
  return g;
}

void TopStack::add(TopBox box, std::vector<Placement>& placements) {
  if (box.placements.empty()) return;
  y_ = std::max(y_, box.container.box.top);
  boxes_.push_back(box.container);
  placements.insert(placements.end(), box.placements.begin(),
                    box.placements.end());
}

std::optional<Packing> accept(const Instance& instance,
                              const Classification& classes,
                              Candidate& candidate) {
  Packing packing = make_packing(instance, candidate.placements);
  PackingReport pr = verify_packing(instance, packing);
  if (!pr.ok()) {
    candidate.notes.push_back(candidate.source + " rejected: " +
                              pr.violations.front());
    return std::nullopt;
  }
  ContainerLayout layout;
  layout.strip_width = instance.strip_width();
  layout.height = std::max(packing.height, boxes_top(candidate.containers));
  layout.containers = candidate.containers;
  LayoutReport lr =
      verify_layout(layout, instance, packing.placements, &classes);
  if (!lr.ok()) {
    candidate.notes.push_back(candidate.source + " rejected: " +
                              lr.violations.front());
    return std::nullopt;
  }
  return packing;
}

}  // namespace detail

}  // namespace gspkit
