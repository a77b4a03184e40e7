#include <algorithm>
#include <numeric>

#include "gspkit/errors.hpp"
#include "gspkit/heuristics.hpp"
#include "gspkit/solvers.hpp"
#include "pipeline.hpp"

namespace gspkit {

namespace {

using detail::Candidate;

struct Layout {
  std::vector<Container> boxes;
  std::vector<int> hint;
  std::string source;
};

// floor(floor(len / unit) * unit)
Length round_down(Length len, const Rational& unit) {
  if (unit <= Rational(0)) return len;
  const std::int64_t q = (Rational(len) / unit).floor();
  return (unit * Rational(q)).floor();
}

class ThreeHalves {
 public:
  ThreeHalves(const Instance& instance, const Rational& epsilon,
              const Budgets& budgets)
      : inst_(instance), eps_(epsilon), budgets_(budgets) {}

  SolveResult run() {
    trace_.algorithm = "three-halves";
    if (inst_.empty()) {
      trace_.source = "empty";
      return make_result(inst_, Packing{}, std::move(trace_));
    }
    const Length lb = lower_bound(inst_);
    const Length hi = nfdh_strip(inst_).packing.height;
    for (Length opt : detail::opt_guesses(lb, hi, eps_, budgets_, true)) {
      ++trace_.guesses;
      guess(opt);
    }
    if (!best_) {
      trace_.fallback = true;
      trace_.source = "nfdh";
      trace_.notes.push_back("no layout within budget packed every item");
      return make_result(inst_, nfdh_strip(inst_).packing, std::move(trace_));
    }
    Candidate& c = best_->second;
    trace_.opt_guess = c.opt_guess;
    trace_.source = c.source;
    trace_.layout = ContainerLayout{inst_.strip_width(),
                                    detail::boxes_top(c.containers),
                                    c.containers};
    trace_.top_boxes = c.top_boxes;
    trace_.budgets = c.budgets;
    trace_.notes.insert(trace_.notes.end(), c.notes.begin(), c.notes.end());
    return make_result(inst_, std::move(best_->first), std::move(trace_));
  }

 private:
  void note(std::string s) {
    if (trace_.notes.size() < 32) trace_.notes.push_back(std::move(s));
  }

  std::vector<Container> rounded(const std::vector<Container>& boxes,
                                 const ConstantProfile& p, Length opt) const {
    const Length W = inst_.strip_width();
    std::vector<Container> out;
    for (Container c : boxes) {
      Length w = c.box.width();
      Length h = c.box.height();
      if (!c.reserved) {
        switch (c.kind) {
          case ContainerKind::HorizontalStack:
            h = round_down(h, p.eps2 * Rational(opt));
            break;
          case ContainerKind::VerticalSideBySide:
            w = round_down(w, p.eps3 * Rational(W));
            break;
          case ContainerKind::SmallNfdh:
            w = round_down(w, p.eps4 * Rational(W));
            h = round_down(h, p.eps4 * Rational(opt));
            break;
          case ContainerKind::SingleLarge:
          case ContainerKind::MediumBlock:
            break;
        }
      }
      if (w <= 0 || h <= 0) continue;
      c.box.right = c.box.left + w;
      c.box.top = c.box.bottom + h;
      out.push_back(c);
    }
    return out;
  }

  void guess(Length opt) {
    ConstantOptions co{budgets_.container_budget, budgets_.hor_budget,
                       budgets_.ver_budget};
    const ConstantProfile profile = choose_constants(eps_, inst_, opt, co);
    const Classification cls = classify(inst_, opt, profile.delta, profile.mu);

    const std::vector<int> tall_ids = cls.items_of(ItemClass::Tall);
    const std::vector<Item> tall = detail::items_of(inst_, tall_ids);
    Length tall_width = 0;
    for (const Item& it : tall) tall_width += it.width;
    if (tall_width > inst_.strip_width()) {
      note("opt " + std::to_string(opt) + " skipped: tall width " +
           std::to_string(tall_width) + " exceeds the strip");
      return;
    }
    std::vector<Placement> flushed = bottom_left_flush(tall, inst_.strip_width());
    std::vector<Container> tall_boxes;
    for (const Placement& p : flushed) {
      Container c;
      c.kind = ContainerKind::SingleLarge;
      c.box = placed_rect(inst_, p);
      tall_boxes.push_back(c);
    }

    std::vector<Layout> layouts;
    for (std::size_t t = 0; t < budgets_.templates.size(); ++t) {
      const ContainerLayout& tpl = budgets_.templates[t];
      const std::string name = "template " + std::to_string(t);
      if (tpl.strip_width != inst_.strip_width() ||
          static_cast<int>(tpl.containers.size()) > budgets_.max_containers) {
        note(name + " skipped: strip width or box budget");
        continue;
      }
      std::vector<Container> boxes = rounded(tpl.containers, profile, opt);
      const bool clash = std::any_of(boxes.begin(), boxes.end(), [&](const Container& b) {
        return std::any_of(tall_boxes.begin(), tall_boxes.end(), [&](const Container& t) {
          return b.box.interiors_overlap(t.box);
        });
      });
      if (clash) {
        note(name + " at opt " + std::to_string(opt) +
             " overlaps the flushed tall items");
        continue;
      }
      layouts.push_back({std::move(boxes), {}, name});
    }
    if (budgets_.generated_templates) {
      std::vector<int> rest;
      for (int i = 0; i < inst_.size(); ++i) {
        if (cls.of(i) != ItemClass::Tall) rest.push_back(i);
      }
      for (int k = 1; k <= budgets_.max_columns; ++k) {
        auto g = detail::generate_columns(inst_, cls, rest, k, opt, tall_width,
                                          budgets_.max_containers);
        if (!g) continue;
        layouts.push_back({std::move(g->boxes), std::move(g->hint),
                           "columns " + std::to_string(k)});
      }
    }
    for (Layout& l : layouts) {
      ++trace_.layouts_tried;
      try {
        evaluate(cls, profile, opt, flushed, tall_boxes, l);
      } catch (const ResourceError& e) {
        note(l.source + " at opt " + std::to_string(opt) + ": " + e.what());
      }
    }
  }

  void evaluate(const Classification& cls, const ConstantProfile& profile,
                Length opt, const std::vector<Placement>& flushed,
                const std::vector<Container>& tall_boxes, const Layout& l) {
    const Length W = inst_.strip_width();
    AssignOptions ao;
    ao.gap.table_budget = budgets_.table_budget;
    ao.gap.max_bins = budgets_.max_bins;
    ao.epsilon = eps_;
    detail::Filled filled =
        detail::fill_boxes(inst_, cls, l.boxes, ao, l.hint, /*route_tall=*/false);

    Candidate c;
    c.source = l.source;
    c.opt_guess = opt;
    c.containers = tall_boxes;
    c.placements = flushed;
    c.placements.insert(c.placements.end(), filled.placements.begin(),
                        filled.placements.end());
    if (filled.scaled) c.notes.push_back(l.source + ": GAP capacities scaled");
    std::vector<Item> rest = filled.left.other;

    // Vertical leftovers go side by side into B*.
    std::vector<Item>& vertical = filled.left.vertical;
    std::sort(vertical.begin(), vertical.end(), nfdh_before);
    Length routed = 0;
    for (const Item& it : vertical) routed += it.width;
    c.budgets.push_back({"B* width", routed, floor_scaled(profile.eps1, W)});
    if (!c.budgets.back().ok()) {
      note(l.source + " at opt " + std::to_string(opt) +
           " rejected: vertical leftovers wider than B*");
      return;
    }
    int reserved = -1;
    for (std::size_t j = 0; j < l.boxes.size(); ++j) {
      Container box = l.boxes[j];
      if (box.reserved && reserved < 0) {
        reserved = static_cast<int>(j);
        box.kind = ContainerKind::VerticalSideBySide;
      }
      c.containers.push_back(box);
    }
    const Length main_top = std::max(detail::boxes_top(c.containers),
                                     detail::boxes_top(tall_boxes));
    detail::TopStack top(main_top);
    if (!vertical.empty()) {
      Container star;
      bool lazy = reserved < 0;
      if (lazy) {
        Length h = 0;
        for (const Item& it : vertical) h = std::max(h, it.height);
        star.kind = ContainerKind::VerticalSideBySide;
        star.reserved = true;
        star.box = {0, top.y(), floor_scaled(profile.eps1, W), top.y() + h};
      } else {
        star = c.containers[tall_boxes.size() + reserved];
      }
      std::vector<Placement> placed;
      if (star.box.width() > 0) {
        FillResult f = fill_container(star, vertical);
        if (auto* ok = std::get_if<std::vector<Placement>>(&f)) {
          placed = std::move(*ok);
        } else {
          const Overflow& o = std::get<Overflow>(f);
          placed = o.placed;
          for (int id : o.rejected) rest.push_back(inst_.item(id));
        }
      } else {
        rest.insert(rest.end(), vertical.begin(), vertical.end());
      }
      if (lazy) {
        top.add(TopBox{star, std::move(placed), CutTree{}}, c.placements);
      } else {
        c.placements.insert(c.placements.end(), placed.begin(), placed.end());
      }
    }

    // Horizontal leftovers stack in B_hor.
    std::vector<Item>& horizontal = filled.left.horizontal;
    std::sort(horizontal.begin(), horizontal.end(), nfdh_before);
    Length stack_h = 0;
    for (const Item& it : horizontal) stack_h += it.height;
    c.budgets.push_back({"B_hor", stack_h,
                         detail::budget_limit(Rational(4) * eps_, opt)});
    if (!c.budgets.back().ok()) {
      note(l.source + " at opt " + std::to_string(opt) +
           " rejected: horizontal leftovers exceed the B_hor budget");
      return;
    }
    if (!horizontal.empty()) {
      Container hor;
      hor.kind = ContainerKind::HorizontalStack;
      hor.box = {0, top.y(), W, top.y() + stack_h};
      FillResult f = fill_container(hor, horizontal);
      top.add(TopBox{hor, std::get<std::vector<Placement>>(std::move(f)), CutTree{}},
              c.placements);
    }

    if (!filled.left.medium.empty()) {
      TopBox box;
      try {
        box = pack_medium(filled.left.medium, opt, W, eps_, profile.delta, top.y());
      } catch (const ParameterError& e) {
        c.notes.push_back(std::string("B_med fallback: ") + e.what());
        box = pack_on_top(filled.left.medium, W, top.y(), ContainerKind::MediumBlock);
      }
      c.budgets.push_back({"B_med", box.container.box.height(),
                           detail::budget_limit(Rational(3) * eps_, opt)});
      top.add(std::move(box), c.placements);
    }
    if (!filled.left.small.empty()) {
      TopBox box = pack_on_top(filled.left.small, W, top.y(),
                               ContainerKind::MediumBlock);
      c.budgets.push_back({"B_small", box.container.box.height(),
                           detail::budget_limit(Rational(27) * eps_, opt)});
      top.add(std::move(box), c.placements);
    }
    if (!rest.empty()) {
      c.notes.push_back(std::to_string(rest.size()) +
                        " unassigned items in the overflow box");
      top.add(pack_on_top(rest, W, top.y(), ContainerKind::MediumBlock),
              c.placements);
    }
    c.top_boxes = top.boxes();
    c.containers.insert(c.containers.end(), c.top_boxes.begin(),
                        c.top_boxes.end());

    std::optional<Packing> p = detail::accept(inst_, cls, c);
    if (!p) {
      for (std::string& n : c.notes) note(std::move(n));
      return;
    }
    if (!best_ || p->height < best_->first.height) {
      best_.emplace(std::move(*p), std::move(c));
    }
  }

  const Instance& inst_;
  Rational eps_;
  const Budgets& budgets_;
  Trace trace_;
  std::optional<std::pair<Packing, Candidate>> best_;
};

}  // namespace

SolveResult solve_three_halves(const Instance& instance, const Rational& epsilon,
                               const Budgets& budgets) {
  require_epsilon(epsilon);
  return ThreeHalves(instance, epsilon, budgets).run();
}

}  // namespace gspkit
