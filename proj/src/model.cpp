#include "gspkit/model.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "gspkit/errors.hpp"

namespace gspkit {

std::string to_string(const Rect& r) {
  std::ostringstream os;
  os << "[" << r.left << "," << r.right << "]x[" << r.bottom << "," << r.top
     << "]";
  return os.str();
}

Instance::Instance(Length strip_width, std::vector<Item> items)
    : strip_width_(strip_width), items_(std::move(items)) {
  if (strip_width_ < 1) throw ParameterError("strip width must be >= 1");
  for (std::size_t i = 0; i < items_.size(); ++i) {
    const Item& it = items_[i];
    if (it.id != static_cast<int>(i)) {
      throw ParameterError("item ids must be contiguous from 0");
    }
    if (it.width < 1 || it.height < 1) {
      throw ParameterError("item " + std::to_string(i) +
                           " has a non-positive dimension");
    }
    if (it.width > strip_width_) {
      throw ParameterError("item " + std::to_string(i) +
                           " is wider than the strip");
    }
  }
}

Instance Instance::from_sizes(
    Length strip_width, std::span<const std::pair<Length, Length>> sizes) {
  std::vector<Item> items;
  items.reserve(sizes.size());
  for (const auto& [w, h] : sizes) {
    items.push_back({static_cast<int>(items.size()), w, h});
  }
  return Instance(strip_width, std::move(items));
}

Length Instance::total_area() const {
  Length a = 0;
  for (const Item& it : items_) a += it.area();
  return a;
}

Length Instance::max_height() const {
  Length h = 0;
  for (const Item& it : items_) h = std::max(h, it.height);
  return h;
}

Rect placed_rect(const Item& item, const Placement& p) {
  return {p.left, p.bottom, p.left + item.width, p.bottom + item.height};
}

Rect placed_rect(const Instance& instance, const Placement& p) {
  return placed_rect(instance.item(p.item), p);
}

Packing make_packing(const Instance& instance,
                     std::vector<Placement> placements) {
  std::sort(placements.begin(), placements.end(),
            [](const Placement& a, const Placement& b) {
              return a.item < b.item;
            });
  Packing packing;
  for (const Placement& p : placements) {
    packing.height =
        std::max(packing.height, p.bottom + instance.item(p.item).height);
  }
  packing.placements = std::move(placements);
  return packing;
}

PackingReport verify_packing(const Instance& instance, const Packing& packing) {
  PackingReport report;
  const int n = instance.size();
  if (static_cast<int>(packing.placements.size()) != n) {
    report.violations.push_back(
        "expected " + std::to_string(n) + " placements, found " +
        std::to_string(packing.placements.size()));
  }
  std::vector<int> seen(n, 0);
  std::vector<Rect> rects;
  std::vector<int> ids;
  Length max_top = 0;
  for (const Placement& p : packing.placements) {
    if (p.item < 0 || p.item >= n) {
      report.violations.push_back("unknown item id " + std::to_string(p.item));
      continue;
    }
    if (seen[p.item]++ > 0) {
      report.violations.push_back("item " + std::to_string(p.item) +
                                  " placed more than once");
      continue;
    }
    Rect r = placed_rect(instance, p);
    if (r.left < 0 || r.bottom < 0 || r.right > instance.strip_width()) {
      report.violations.push_back("item " + std::to_string(p.item) +
                                  " outside the strip at " + to_string(r));
    }
    if (r.top > packing.height) {
      report.violations.push_back("item " + std::to_string(p.item) +
                                  " exceeds declared height " +
                                  std::to_string(packing.height));
    }
    max_top = std::max(max_top, r.top);
    rects.push_back(r);
    ids.push_back(p.item);
  }
  for (int i = 0; i < n; ++i) {
    if (seen[i] == 0) {
      report.violations.push_back("item " + std::to_string(i) +
                                  " not placed");
    }
  }
  if (max_top != packing.height && report.violations.empty()) {
    report.violations.push_back("declared height " +
                                std::to_string(packing.height) +
                                " differs from maximum top " +
                                std::to_string(max_top));
  }

  std::vector<int> order(rects.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return rects[a].left < rects[b].left;
  });
  for (std::size_t a = 0; a < order.size(); ++a) {
    const Rect& ra = rects[order[a]];
    for (std::size_t b = a + 1; b < order.size(); ++b) {
      const Rect& rb = rects[order[b]];
      if (rb.left >= ra.right) break;
      if (ra.interiors_overlap(rb)) {
        int x = std::min(ids[order[a]], ids[order[b]]);
        int y = std::max(ids[order[a]], ids[order[b]]);
        report.overlaps.emplace_back(x, y);
      }
    }
  }
  std::sort(report.overlaps.begin(), report.overlaps.end());
  for (const auto& [x, y] : report.overlaps) {
    report.violations.push_back("overlap: items " + std::to_string(x) +
                                " and " + std::to_string(y));
  }
  return report;
}

Length lower_bound(const Instance& instance) {
  if (instance.empty()) return 0;
  const Length w = instance.strip_width();
  const Length area = instance.total_area();
  return std::max((area + w - 1) / w, instance.max_height());
}

std::string_view to_string(ItemClass c) {
  switch (c) {
    case ItemClass::Tall:
      return "tall";
    case ItemClass::Large:
      return "large";
    case ItemClass::Horizontal:
      return "horizontal";
    case ItemClass::Vertical:
      return "vertical";
    case ItemClass::Medium:
      return "medium";
    case ItemClass::Small:
      return "small";
  }
  return "?";
}

std::vector<int> Classification::items_of(ItemClass c) const {
  std::vector<int> out;
  for (std::size_t i = 0; i < classes.size(); ++i) {
    if (classes[i] == c) out.push_back(static_cast<int>(i));
  }
  return out;
}

ItemClass classify_item(Length width, Length height, Length strip_width,
                        Length opt_estimate, const Rational& delta,
                        const Rational& mu) {
  if (2 * height > opt_estimate) return ItemClass::Tall;
  const bool wide = greater_than_scaled(width, delta, strip_width);
  if (greater_than_scaled(height, delta, opt_estimate)) {
    return wide ? ItemClass::Large : ItemClass::Vertical;
  }
  if (greater_than_scaled(height, mu, opt_estimate)) return ItemClass::Medium;
  if (wide) return ItemClass::Horizontal;
  if (greater_than_scaled(width, mu, strip_width)) return ItemClass::Medium;
  return ItemClass::Small;
}

namespace {

void require_window(const Rational& delta, const Rational& mu) {
  if (!(Rational(1) >= delta && delta > mu && mu > Rational(0))) {
    throw ParameterError("classification requires 1 >= delta > mu > 0, got "
                         "delta=" + delta.to_string() +
                         " mu=" + mu.to_string());
  }
}

}  // namespace

Classification classify(const Instance& instance, Length opt_estimate,
                        const Rational& delta, const Rational& mu) {
  require_window(delta, mu);
  if (opt_estimate < 1) throw ParameterError("opt estimate must be >= 1");
  Classification c;
  c.opt_estimate = opt_estimate;
  c.delta = delta;
  c.mu = mu;
  c.classes.reserve(instance.size());
  for (const Item& it : instance.items()) {
    c.classes.push_back(classify_item(it.width, it.height,
                                      instance.strip_width(), opt_estimate,
                                      delta, mu));
  }
  return c;
}

Length medium_area(const Instance& instance, Length opt_estimate,
                   const Rational& delta, const Rational& mu) {
  Length area = 0;
  for (const Item& it : instance.items()) {
    if (classify_item(it.width, it.height, instance.strip_width(),
                      opt_estimate, delta, mu) == ItemClass::Medium) {
      area += it.area();
    }
  }
  return area;
}

void require_epsilon(const Rational& epsilon) {
  if (!(epsilon > Rational(0) && epsilon < Rational(1)) ||
      epsilon.num() != 1) {
    throw ParameterError("epsilon must lie in (0,1) with 1/epsilon integral, "
                         "got " + epsilon.to_string());
  }
}

Rational shrink(const Rational& x, const Rational& epsilon,
                int container_budget) {
  const std::int64_t g = container_budget;
  return x * epsilon / Rational(g * g);
}

void fill_derived_constants(ConstantProfile& p) {
  p.eps1 = Rational(1, 3 * static_cast<std::int64_t>(p.container_budget));
  p.eps2 = p.epsilon / Rational(4 * static_cast<std::int64_t>(p.hor_budget));
  p.eps3 = p.eps1 / Rational(4 * static_cast<std::int64_t>(p.ver_budget));
  p.eps4 = p.mu;
  p.eps5 = p.eps1 * p.delta / Rational(6);
  p.eps6 = p.epsilon * p.delta / Rational(6);
}

ConstantProfile choose_constants(const Rational& epsilon,
                                 const Instance& instance, Length opt_estimate,
                                 const ConstantOptions& options) {
  require_epsilon(epsilon);
  if (options.container_budget < 1) {
    throw ParameterError("container budget must be >= 1");
  }
  if (opt_estimate < 1) throw ParameterError("opt estimate must be >= 1");

  ConstantProfile best;
  best.epsilon = epsilon;
  best.container_budget = options.container_budget;
  best.hor_budget =
      options.hor_budget > 0 ? options.hor_budget : options.container_budget;
  best.ver_budget =
      options.ver_budget > 0 ? options.ver_budget : options.container_budget;

  // Area budget eps * opt * W, compared exactly.
  const __int128 budget_num = static_cast<__int128>(epsilon.num()) *
                              opt_estimate * instance.strip_width();
  auto within_budget = [&](Length area) {
    return static_cast<__int128>(area) * epsilon.den() <= budget_num;
  };

  const std::int64_t max_windows = 2 * epsilon.den() + 1;
  Length best_area = std::numeric_limits<Length>::max();
  Rational delta = epsilon;
  for (std::int64_t k = 1; k <= max_windows; ++k) {
    Rational mu;
    try {
      delta = shrink(delta, epsilon, options.container_budget);
      mu = shrink(delta, epsilon, options.container_budget);
    } catch (const std::overflow_error&) {
      break;
    }
    const Length area = medium_area(instance, opt_estimate, delta, mu);
    if (area < best_area) {
      best_area = area;
      best.delta = delta;
      best.mu = mu;
      best.window = static_cast<int>(k);
      best.medium_area = area;
    }
    if (within_budget(area)) {
      best.medium_area_ok = true;
      break;
    }
  }
  fill_derived_constants(best);
  return best;
}

}  // namespace gspkit
