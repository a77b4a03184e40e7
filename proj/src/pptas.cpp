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

struct Best {
  Packing packing;  // in original units
  Candidate candidate;
};

class Pptas {
 public:
  Pptas(const Instance& original, const Rational& epsilon,
        const Budgets& budgets)
      : original_(original), eps_(epsilon), budgets_(budgets) {}

  SolveResult run() {
    trace_.algorithm = "pptas";
    if (original_.empty()) {
      trace_.source = "empty";
      return make_result(original_, Packing{}, std::move(trace_));
    }
    search(original_, /*use_templates=*/true, /*normalized=*/false);
    if (budgets_.generated_templates) {
      std::optional<Instance> norm;
      if (budgets_.normalize_heights) norm = normalize_heights(original_, eps_);
      search(norm ? *norm : original_, /*use_templates=*/false, norm.has_value());
    }
    if (!best_) {
      trace_.fallback = true;
      trace_.source = "nfdh";
      trace_.notes.push_back("no layout within budget packed every item");
      return make_result(original_, nfdh_strip(original_).packing,
                         std::move(trace_));
    }
    Candidate& c = best_->candidate;
    trace_.opt_guess = c.opt_guess;
    trace_.source = c.source;
    trace_.normalized = best_normalized_;
    trace_.layout = ContainerLayout{original_.strip_width(),
                                    detail::boxes_top(c.containers),
                                    c.containers};
    trace_.top_boxes = c.top_boxes;
    trace_.budgets = c.budgets;
    trace_.notes.insert(trace_.notes.end(), c.notes.begin(), c.notes.end());
    return make_result(original_, std::move(best_->packing), std::move(trace_));
  }

 private:
  void note(std::string s) {
    if (trace_.notes.size() < 32) trace_.notes.push_back(std::move(s));
  }

  void search(const Instance& work, bool use_templates, bool normalized) {
    if (use_templates && budgets_.templates.empty()) return;
    const Length lb = lower_bound(work);
    const Length hi = nfdh_strip(work).packing.height;
    for (Length opt : detail::opt_guesses(lb, hi, eps_, budgets_, use_templates)) {
      ++trace_.guesses;
      ConstantOptions co{budgets_.container_budget, budgets_.hor_budget,
                         budgets_.ver_budget};
      ConstantProfile profile = choose_constants(eps_, work, opt, co);
      Classification cls = classify(work, opt, profile.delta, profile.mu);

      std::vector<Layout> layouts;
      if (use_templates) {
        for (std::size_t t = 0; t < budgets_.templates.size(); ++t) {
          const ContainerLayout& tpl = budgets_.templates[t];
          if (tpl.strip_width != work.strip_width()) {
            note("template " + std::to_string(t) + " skipped: strip width " +
                 std::to_string(tpl.strip_width));
            continue;
          }
          if (static_cast<int>(tpl.containers.size()) > budgets_.max_containers) {
            note("template " + std::to_string(t) + " skipped: too many boxes");
            continue;
          }
          layouts.push_back({tpl.containers, {}, "template " + std::to_string(t)});
        }
      } else {
        std::vector<int> ids(work.size());
        for (int i = 0; i < work.size(); ++i) ids[i] = i;
        for (int k = 1; k <= budgets_.max_columns; ++k) {
          auto g = detail::generate_columns(work, cls, ids, k, opt, 0,
                                            budgets_.max_containers);
          if (!g) continue;
          layouts.push_back({std::move(g->boxes), std::move(g->hint),
                             "columns " + std::to_string(k)});
        }
      }
      for (Layout& l : layouts) {
        ++trace_.layouts_tried;
        try {
          evaluate(work, cls, profile, opt, l, normalized);
        } catch (const ResourceError& e) {
          note(l.source + " at opt " + std::to_string(opt) + ": " + e.what());
        }
      }
    }
  }

  void evaluate(const Instance& work, const Classification& cls,
                const ConstantProfile& profile, Length opt, const Layout& l,
                bool normalized) {
    const Length main_top = detail::boxes_top(l.boxes);
    if (main_top > detail::budget_limit(Rational(1) + Rational(16) * eps_, opt)) {
      return;
    }
    AssignOptions ao;
    ao.gap.table_budget = budgets_.table_budget;
    ao.gap.max_bins = budgets_.max_bins;
    ao.epsilon = eps_;
    detail::Filled filled =
        detail::fill_boxes(work, cls, l.boxes, ao, l.hint, /*route_tall=*/true);

    Candidate c;
    c.source = l.source;
    c.opt_guess = opt;
    c.containers = l.boxes;
    c.placements = std::move(filled.placements);
    if (filled.scaled) c.notes.push_back(l.source + ": GAP capacities scaled");
    const Length W = work.strip_width();
    detail::TopStack top(main_top);

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
      TopBox box;
      try {
        box = pack_small_leftovers(filled.left.small, opt, W, eps_, top.y());
      } catch (const ParameterError& e) {
        c.notes.push_back(std::string("B_small fallback: ") + e.what());
        box = pack_on_top(filled.left.small, W, top.y(), ContainerKind::MediumBlock);
      }
      c.budgets.push_back({"B_small", box.container.box.height(),
                           detail::budget_limit(Rational(9) * eps_, opt)});
      top.add(std::move(box), c.placements);
    }
    std::vector<Item> rest = filled.left.vertical;
    rest.insert(rest.end(), filled.left.horizontal.begin(),
                filled.left.horizontal.end());
    rest.insert(rest.end(), filled.left.other.begin(), filled.left.other.end());
    if (!rest.empty()) {
      c.notes.push_back(std::to_string(rest.size()) +
                        " unassigned items in the overflow box");
      top.add(pack_on_top(rest, W, top.y(), ContainerKind::MediumBlock),
              c.placements);
    }
    c.top_boxes = top.boxes();
    c.containers.insert(c.containers.end(), c.top_boxes.begin(),
                        c.top_boxes.end());

    std::optional<Packing> p = detail::accept(work, cls, c);
    if (!p) {
      for (std::string& n : c.notes) note(std::move(n));
      return;
    }
    Packing packing = normalized ? denormalize(original_, *p, eps_) : *p;
    if (!best_ || packing.height < best_->packing.height) {
      best_ = Best{std::move(packing), std::move(c)};
      best_normalized_ = normalized;
    }
  }

  const Instance& original_;
  Rational eps_;
  const Budgets& budgets_;
  Trace trace_;
  std::optional<Best> best_;
  bool best_normalized_ = false;
};

}  // namespace

SolveResult solve_pptas(const Instance& instance, const Rational& epsilon,
                        const Budgets& budgets) {
  require_epsilon(epsilon);
  return Pptas(instance, epsilon, budgets).run();
}

}  // namespace gspkit
