#include "gspkit/generate.hpp"

#include <algorithm>
#include <numeric>
#include <random>

#include "gspkit/errors.hpp"
#include "gspkit/heuristics.hpp"

namespace gspkit {

namespace {

using Rng = std::mt19937_64;

Length uniform(Rng& rng, Length lo, Length hi) {
  return std::uniform_int_distribution<Length>(lo, hi)(rng);
}

}  // namespace

std::optional<Skew> parse_skew(std::string_view name) {
  if (name == "uniform") return Skew::Uniform;
  if (name == "tall") return Skew::Tall;
  if (name == "horizontal") return Skew::Horizontal;
  if (name == "vertical") return Skew::Vertical;
  if (name == "small") return Skew::Small;
  if (name == "mixed") return Skew::Mixed;
  return std::nullopt;
}

Instance generate_random(const RandomParams& p, std::uint64_t seed) {
  if (p.strip_width < 1 || p.max_height < 1 || p.items < 0) {
    throw ParameterError("random instance needs W >= 1, max height >= 1, "
                         "items >= 0");
  }
  Rng rng(seed);
  const Length W = p.strip_width;
  const Length H = p.max_height;
  auto at_least_one = [](Length v) { return std::max<Length>(1, v); };
  std::vector<std::pair<Length, Length>> sizes;
  for (int i = 0; i < p.items; ++i) {
    Skew s = p.skew;
    if (s == Skew::Mixed) s = static_cast<Skew>(uniform(rng, 0, 4));
    // Half of the skewed items keep the uniform ranges.
    if (s != Skew::Uniform && uniform(rng, 0, 1) == 0) s = Skew::Uniform;
    Length w = 1, h = 1;
    switch (s) {
      case Skew::Uniform:
      case Skew::Mixed:
        w = uniform(rng, 1, W);
        h = uniform(rng, 1, H);
        break;
      case Skew::Tall:
        w = uniform(rng, 1, at_least_one(W / 8));
        h = uniform(rng, at_least_one((H + 1) / 2), H);
        break;
      case Skew::Horizontal:
        w = uniform(rng, at_least_one(W / 2), W);
        h = uniform(rng, 1, at_least_one(H / 20));
        break;
      case Skew::Vertical:
        w = uniform(rng, 1, at_least_one(W / 20));
        h = uniform(rng, at_least_one(H / 4), at_least_one(H / 2));
        break;
      case Skew::Small:
        w = uniform(rng, 1, at_least_one(W / 20));
        h = uniform(rng, 1, at_least_one(H / 20));
        break;
    }
    sizes.emplace_back(w, h);
  }
  return Instance::from_sizes(W, sizes);
}

bool has_equal_split(std::span<const Length> numbers) {
  Length total = 0;
  for (Length a : numbers) total += a;
  if (total % 2 != 0) return false;
  const Length half = total / 2;
  std::vector<char> reach(half + 1, 0);
  reach[0] = 1;
  for (Length a : numbers) {
    for (Length s = half; s >= a; --s) {
      if (reach[s - a]) reach[s] = 1;
    }
  }
  return reach[half] != 0;
}

PartitionCase partition_instance(std::span<const Length> numbers) {
  if (numbers.empty()) throw ParameterError("partition needs at least one number");
  Length total = 0;
  for (Length a : numbers) {
    if (a < 1) throw ParameterError("partition numbers must be >= 1");
    total += a;
  }
  if (total % 2 != 0) {
    throw ParameterError("partition sum " + std::to_string(total) +
                         " is odd; strip width T/2 would not be integral");
  }
  const Length W = total / 2;
  std::vector<std::pair<Length, Length>> sizes;
  for (Length a : numbers) {
    if (a > W) {
      throw ParameterError("number " + std::to_string(a) +
                           " exceeds half the sum and cannot fit the strip");
    }
    sizes.emplace_back(a, 1);
  }
  PartitionCase c;
  c.numbers.assign(numbers.begin(), numbers.end());
  c.instance = Instance::from_sizes(W, sizes);
  c.yes = has_equal_split(numbers);
  return c;
}

PartitionCase generate_partition(int n, Length max_value, std::uint64_t seed) {
  if (n < 2 || max_value < 1) {
    throw ParameterError("partition generator needs n >= 2 and max >= 1");
  }
  Rng rng(seed);
  for (;;) {
    std::vector<Length> a(n);
    for (Length& v : a) v = uniform(rng, 1, max_value);
    Length total = std::accumulate(a.begin(), a.end(), Length{0});
    if (total % 2 != 0) a.back() += a.back() > 1 ? -1 : 1;
    total = std::accumulate(a.begin(), a.end(), Length{0});
    if (*std::max_element(a.begin(), a.end()) <= total / 2) {
      return partition_instance(a);
    }
  }
}

std::string partition_certificate(const PartitionCase& c) {
  return c.yes ? "yes, opt=2\n" : "no, opt>=3\n";
}

namespace {

// Size windows in which an item's class is the same for every OPT' in
// [H, ceil((1+eps) H) + 1].
struct Windows {
  Length tall_min_h = 0;  // 2h > OPT_hi
  Length max_h = 0;       // H
  Length flat_max_h = 0;  // h <= mu H
  Length big_min_h = 0;   // h > delta OPT_hi
  Length low_max_h = 0;   // 2h <= H
  Length narrow_max_w = 0;  // w <= delta W
  Length small_max_w = 0;   // w <= mu W
};

class PlantedBuilder {
 public:
  PlantedBuilder(const PlantedParams& p, std::uint64_t seed)
      : p_(p), rng_(seed) {
    require_epsilon(p.epsilon);
    if (p.strip_width < 1 || p.height < 2 || p.container_budget < 1 ||
        p.max_boxes < 1) {
      throw ParameterError("planted generator needs W >= 1, H >= 2, g >= 1 "
                           "and at least one box");
    }
    const Rational delta = shrink(p.epsilon, p.epsilon, p.container_budget);
    const Rational mu = shrink(delta, p.epsilon, p.container_budget);
    const Length H = p.height;
    const Length W = p.strip_width;
    const Length opt_hi = ceil_scaled(Rational(1) + p.epsilon, H) + 1;
    win_.tall_min_h = opt_hi / 2 + 1;
    win_.max_h = H;
    win_.flat_max_h = floor_scaled(mu, H);
    win_.big_min_h = floor_scaled(delta, opt_hi) + 1;
    win_.low_max_h = H / 2;
    win_.narrow_max_w = floor_scaled(delta, W);
    win_.small_max_w = floor_scaled(mu, W);
    star_w_ = floor_scaled(Rational(1, 3 * static_cast<std::int64_t>(p.container_budget)), W);
  }

  Planted build() {
    const Length W = p_.strip_width;
    const Length H = p_.height;
    std::vector<Rect> regions;
    Length x0 = 0;
    if (p_.flushed) {
      plant_tall();
      for (const Item& it : tall_) x0 += it.width;
      // B* in the top right corner of the region right of the tall items.
      const Length h_star = H / 2;
      if (star_w_ >= 1 && x0 + star_w_ <= W && h_star >= 1) {
        Container star;
        star.kind = ContainerKind::VerticalSideBySide;
        star.reserved = true;
        star.box = {W - star_w_, H - h_star, W, H};
        layout_.containers.push_back(star);
        if (x0 < W - star_w_) regions.push_back({x0, 0, W - star_w_, H});
        regions.push_back({W - star_w_, 0, W, H - h_star});
      } else if (x0 < W) {
        regions.push_back({x0, 0, W, H});
      }
    } else {
      regions.push_back({0, 0, W, H});
    }
    split(regions, p_.max_boxes - static_cast<int>(layout_.containers.size()));
    for (const Rect& r : regions) fill_region(r);

    // Shuffle ids so item order carries no hint of the layout.
    std::vector<int> perm(items_.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng_);
    std::vector<Item> items(items_.size());
    std::vector<Placement> placements;
    for (std::size_t k = 0; k < items_.size(); ++k) {
      const int id = perm[k];
      items[id] = {id, items_[k].width, items_[k].height};
      placements.push_back({id, places_[k].left, places_[k].bottom});
    }
    Planted out;
    out.instance = Instance(W, std::move(items));
    out.packing = make_packing(out.instance, std::move(placements));
    layout_.strip_width = W;
    layout_.height = H;
    out.layout = std::move(layout_);
    out.opt_bound = H;
    return out;
  }

 private:
  void add_item(Length w, Length h, Length left, Length bottom) {
    items_.push_back({static_cast<int>(items_.size()), w, h});
    places_.push_back({static_cast<int>(places_.size()), left, bottom});
  }

  void plant_tall() {
    const Length W = p_.strip_width;
    if (win_.tall_min_h > win_.max_h) return;
    const Length room = W - star_w_ - win_.narrow_max_w - 1;
    const int count = static_cast<int>(uniform(rng_, 1, 3));
    Length used = 0;
    for (int k = 0; k < count; ++k) {
      const Length max_w = std::min(std::max<Length>(1, W / 8), room - used);
      if (max_w < 1) break;
      Item it{static_cast<int>(tall_.size()), uniform(rng_, 1, max_w),
              uniform(rng_, win_.tall_min_h, win_.max_h)};
      used += it.width;
      tall_.push_back(it);
    }
    for (const Placement& p : bottom_left_flush(tall_, W)) {
      const Item& it = tall_[p.item];
      add_item(it.width, it.height, p.left, p.bottom);
    }
  }

  void split(std::vector<Rect>& regions, int target) {
    target = std::max(1, std::min(target, static_cast<int>(uniform(rng_, 2, std::max(2, p_.max_boxes)))));
    for (int attempt = 0; attempt < 64 && static_cast<int>(regions.size()) < target;
         ++attempt) {
      const std::size_t k = uniform(rng_, 0, static_cast<Length>(regions.size()) - 1);
      Rect r = regions[k];
      const bool vertical = uniform(rng_, 0, 1) == 0;
      if (vertical && r.width() >= 2) {
        const Length x = uniform(rng_, r.left + 1, r.right - 1);
        regions[k] = {r.left, r.bottom, x, r.top};
        regions.push_back({x, r.bottom, r.right, r.top});
      } else if (!vertical && r.height() >= 2) {
        const Length y = uniform(rng_, r.bottom + 1, r.top - 1);
        regions[k] = {r.left, r.bottom, r.right, y};
        regions.push_back({r.left, y, r.right, r.top});
      }
    }
  }

  enum class Kind { Vertical, Horizontal, Single, Small };

  void fill_region(const Rect& r) {
    std::vector<Kind> options;
    const bool flat_ok = win_.flat_max_h >= 1;
    const Length big_top = std::min(win_.low_max_h, r.height());
    if (win_.big_min_h <= big_top && win_.narrow_max_w >= 1 &&
        counts_[0] < kMaxVertical) {
      options.push_back(Kind::Vertical);
    } else if (!p_.flushed && win_.tall_min_h <= r.height() &&
               win_.narrow_max_w >= 1 && counts_[0] < kMaxVertical) {
      options.push_back(Kind::Vertical);
    }
    if (flat_ok && r.width() > win_.narrow_max_w && counts_[1] < kMaxHorizontal) {
      options.push_back(Kind::Horizontal);
    }
    if (r.width() > win_.narrow_max_w && win_.big_min_h <= big_top) {
      options.push_back(Kind::Single);
    }
    if (flat_ok && win_.small_max_w >= 1 && counts_[3] < kMaxSmall &&
        small_box(r)) {
      options.push_back(Kind::Small);
    }
    if (options.empty()) return;
    const Kind kind = options[uniform(rng_, 0, static_cast<Length>(options.size()) - 1)];
    counts_[static_cast<int>(kind)]++;
    switch (kind) {
      case Kind::Vertical:
        fill_vertical(r);
        break;
      case Kind::Horizontal:
        fill_horizontal(r);
        break;
      case Kind::Single:
        fill_single(r);
        break;
      case Kind::Small:
        fill_small(*small_box(r));
        break;
    }
  }

  void push_box(const Rect& r, ContainerKind kind) {
    Container c;
    c.box = r;
    c.kind = kind;
    c.epsilon = p_.epsilon;
    layout_.containers.push_back(c);
  }

  void fill_vertical(const Rect& r) {
    push_box(r, ContainerKind::VerticalSideBySide);
    const bool tall_ok = !p_.flushed && win_.tall_min_h <= std::min(r.height(), win_.max_h);
    const bool low_ok = win_.big_min_h <= std::min(win_.low_max_h, r.height());
    Length x = r.left;
    while (x < r.right) {
      const Length w = uniform(rng_, 1, std::min(win_.narrow_max_w, r.right - x));
      Length h;
      if (tall_ok && (!low_ok || uniform(rng_, 0, 2) == 0)) {
        h = uniform(rng_, win_.tall_min_h, std::min(r.height(), win_.max_h));
      } else {
        h = uniform(rng_, win_.big_min_h, std::min(win_.low_max_h, r.height()));
      }
      add_item(w, h, x, r.bottom);
      x += w;
    }
  }

  void fill_horizontal(const Rect& r) {
    push_box(r, ContainerKind::HorizontalStack);
    Length y = r.bottom;
    while (y < r.top) {
      const Length h = uniform(rng_, 1, std::min(win_.flat_max_h, r.top - y));
      const Length w = uniform(rng_, win_.narrow_max_w + 1, r.width());
      add_item(w, h, r.left, y);
      y += h;
    }
  }

  void fill_single(const Rect& r) {
    push_box(r, ContainerKind::SingleLarge);
    const Length w = uniform(rng_, std::max(win_.narrow_max_w + 1, r.width() / 2), r.width());
    const Length top = std::min(win_.low_max_h, r.height());
    const Length h = uniform(rng_, std::max(win_.big_min_h, top / 2), top);
    add_item(w, h, r.left, r.bottom);
  }

  // A box of at most 12 x 12 in the region's corner whose eps-fraction still
  // admits small items.
  std::optional<Rect> small_box(const Rect& r) const {
    const Length w = std::min<Length>(12, r.width());
    const Length h = std::min<Length>(12, r.height());
    if (floor_scaled(p_.epsilon, w) < 1 || floor_scaled(p_.epsilon, h) < 1) {
      return std::nullopt;
    }
    return Rect{r.left, r.bottom, r.left + w, r.bottom + h};
  }

  void fill_small(const Rect& box) {
    push_box(box, ContainerKind::SmallNfdh);
    const Length sw = std::min(win_.small_max_w, floor_scaled(p_.epsilon, box.width()));
    const Length sh = std::min(win_.flat_max_h, floor_scaled(p_.epsilon, box.height()));
    // Stay within (1 - 2 eps) of the box area so NFDH packs everything.
    const Length budget =
        floor_scaled(Rational(1) - Rational(2) * p_.epsilon, box.area());
    std::vector<Item> cand;
    Length area = 0;
    for (int guard = 0; guard < 10000; ++guard) {
      Item it{static_cast<int>(cand.size()), uniform(rng_, 1, sw), uniform(rng_, 1, sh)};
      if (area + it.area() > budget) break;
      area += it.area();
      cand.push_back(it);
    }
    BoxFill fill = nfdh_into_box(cand, box, p_.epsilon);
    for (const Placement& pl : fill.placements) {
      const Item& it = cand[pl.item];
      add_item(it.width, it.height, pl.left, pl.bottom);
    }
  }

  static constexpr int kMaxVertical = 2;
  static constexpr int kMaxHorizontal = 2;
  static constexpr int kMaxSmall = 1;

  const PlantedParams& p_;
  Rng rng_;
  Windows win_;
  Length star_w_ = 0;
  std::vector<Item> tall_;
  std::vector<Item> items_;
  std::vector<Placement> places_;
  ContainerLayout layout_;
  int counts_[4] = {0, 0, 0, 0};
};

}  // namespace

Planted generate_planted(const PlantedParams& params, std::uint64_t seed) {
  return PlantedBuilder(params, seed).build();
}

std::string planted_certificate(const Planted& planted) {
  return "opt <= " + std::to_string(planted.opt_bound) + "\n" +
         serialize_layout(planted.layout);
}

}  // namespace gspkit
