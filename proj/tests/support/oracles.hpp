#ifndef GSPKIT_TESTS_ORACLES_HPP
#define GSPKIT_TESTS_ORACLES_HPP

// Independent reference implementations used to check the library. None of
// them calls into the code under test except for plain data types.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "gspkit/gap.hpp"
#include "gspkit/guillotine.hpp"
#include "gspkit/model.hpp"

namespace oracle {

using gspkit::Length;
using gspkit::Rect;

// Max profit over all (k+1)^n assignments.
inline Length gap_brute_force(const gspkit::GapInstance& g) {
  const int n = static_cast<int>(g.items.size());
  const int k = g.bins();
  std::vector<int> choice(n, -1);
  Length best = 0;
  std::function<void(int, std::vector<Length>&, Length)> rec =
      [&](int i, std::vector<Length>& load, Length profit) {
        if (i == n) {
          best = std::max(best, profit);
          return;
        }
        rec(i + 1, load, profit);
        for (int j = 0; j < k; ++j) {
          const auto& s = g.items[i].size[j];
          if (!s || load[j] + *s > g.capacities[j]) continue;
          load[j] += *s;
          rec(i + 1, load, profit + g.items[i].profit[j]);
          load[j] -= *s;
        }
      };
  std::vector<Length> load(k, 0);
  rec(0, load, 0);
  return best;
}

// Whether a set of pairwise disjoint rectangles can be separated by
// recursive edge-to-edge cuts. Every integer coordinate is tried, not just
// rectangle edges. With `exhaustive` every feasible cut is explored (memoized
// on the subset, since a cut's feasibility depends only on the rectangles in
// the piece); otherwise the first feasible cut is taken, which suffices
// because any subset of a separable set is separable.
class Separability {
 public:
  Separability(std::vector<Rect> rects, bool exhaustive)
      : rects_(std::move(rects)), exhaustive_(exhaustive) {}

  bool separable() {
    std::vector<int> all(rects_.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<int>(i);
    return solve(all);
  }

 private:
  bool solve(const std::vector<int>& set) {
    if (set.size() <= 1) return true;
    if (exhaustive_) {
      if (auto it = memo_.find(set); it != memo_.end()) return it->second;
    }
    Length lo_x = INT64_MAX, hi_x = INT64_MIN, lo_y = INT64_MAX, hi_y = INT64_MIN;
    for (int i : set) {
      lo_x = std::min(lo_x, rects_[i].left);
      hi_x = std::max(hi_x, rects_[i].right);
      lo_y = std::min(lo_y, rects_[i].bottom);
      hi_y = std::max(hi_y, rects_[i].top);
    }
    bool ok = false;
    bool tried = false;
    for (int axis = 0; axis < 2 && !ok && !(tried && !exhaustive_); ++axis) {
      const Length lo = axis == 0 ? lo_x : lo_y;
      const Length hi = axis == 0 ? hi_x : hi_y;
      for (Length c = lo + 1; c < hi && !ok; ++c) {
        std::vector<int> below, above;
        bool crosses = false;
        for (int i : set) {
          const Rect& r = rects_[i];
          const Length a = axis == 0 ? r.left : r.bottom;
          const Length b = axis == 0 ? r.right : r.top;
          if (a < c && c < b) {
            crosses = true;
            break;
          }
          (b <= c ? below : above).push_back(i);
        }
        if (crosses || below.empty() || above.empty()) continue;
        tried = true;
        ok = solve(below) && solve(above);
        if (!exhaustive_) break;
      }
    }
    if (exhaustive_) memo_[set] = ok;
    return ok;
  }

  std::vector<Rect> rects_;
  bool exhaustive_;
  std::map<std::vector<int>, bool> memo_;
};

inline bool separable(const std::vector<Rect>& rects) {
  return Separability(rects, rects.size() <= 8).separable();
}

inline std::vector<Rect> rects_of(const gspkit::Instance& inst,
                                  const gspkit::Packing& p) {
  std::vector<Rect> out;
  for (const auto& pl : p.placements) {
    const auto& it = inst.item(pl.item);
    out.push_back({pl.left, pl.bottom, pl.left + it.width, pl.bottom + it.height});
  }
  return out;
}

// Feasibility of a packing by direct pairwise comparison.
inline bool feasible(const gspkit::Instance& inst, const gspkit::Packing& p) {
  if (static_cast<int>(p.placements.size()) != inst.size()) return false;
  std::vector<bool> seen(inst.size(), false);
  Length top = 0;
  for (const auto& pl : p.placements) {
    if (pl.item < 0 || pl.item >= inst.size() || seen[pl.item]) return false;
    seen[pl.item] = true;
  }
  const auto rects = rects_of(inst, p);
  for (std::size_t i = 0; i < rects.size(); ++i) {
    const Rect& a = rects[i];
    if (a.left < 0 || a.bottom < 0 || a.right > inst.strip_width()) return false;
    top = std::max(top, a.top);
    for (std::size_t j = 0; j < i; ++j) {
      const Rect& b = rects[j];
      if (a.left < b.right && b.left < a.right && a.bottom < b.top && b.bottom < a.top) {
        return false;
      }
    }
  }
  return top == p.height;
}

// Structural check of a cut tree: regions partition, cuts strictly inside,
// no cut through a rectangle interior, every rectangle in exactly one leaf
// and inside that leaf's region, waste leaves free of rectangles.
inline std::vector<std::string> check_tree(const gspkit::CutTree& t,
                                           const std::vector<Rect>& rects) {
  using K = gspkit::CutTree::Kind;
  std::vector<std::string> problems;
  std::vector<int> hits(rects.size(), 0);
  std::function<void(const gspkit::CutTree&)> walk = [&](const gspkit::CutTree& n) {
    const Rect& r = n.region;
    if (r.left >= r.right || r.bottom >= r.top) problems.push_back("empty region");
    if (n.kind == K::Item) {
      if (n.item < 0 || n.item >= static_cast<int>(rects.size())) {
        problems.push_back("bad leaf id");
        return;
      }
      ++hits[n.item];
      const Rect& q = rects[n.item];
      if (!(q.left >= r.left && q.right <= r.right && q.bottom >= r.bottom && q.top <= r.top)) {
        problems.push_back("leaf does not contain its rectangle");
      }
      return;
    }
    if (n.kind == K::Waste) {
      for (const Rect& q : rects) {
        if (q.left < r.right && r.left < q.right && q.bottom < r.top && r.bottom < q.top) {
          problems.push_back("waste leaf covers a rectangle");
        }
      }
      return;
    }
    if (n.children.size() != 2) {
      problems.push_back("cut without two children");
      return;
    }
    const Rect& a = n.children[0].region;
    const Rect& b = n.children[1].region;
    if (n.kind == K::Vertical) {
      if (!(r.left < n.cut && n.cut < r.right)) problems.push_back("cut outside region");
      if (a != Rect{r.left, r.bottom, n.cut, r.top} || b != Rect{n.cut, r.bottom, r.right, r.top}) {
        problems.push_back("children do not partition");
      }
      for (const Rect& q : rects) {
        if (q.left < n.cut && n.cut < q.right && q.bottom < r.top && r.bottom < q.top) {
          problems.push_back("vertical cut crosses a rectangle");
        }
      }
    } else {
      if (!(r.bottom < n.cut && n.cut < r.top)) problems.push_back("cut outside region");
      if (a != Rect{r.left, r.bottom, r.right, n.cut} || b != Rect{r.left, n.cut, r.right, r.top}) {
        problems.push_back("children do not partition");
      }
      for (const Rect& q : rects) {
        if (q.bottom < n.cut && n.cut < q.top && q.left < r.right && r.left < q.right) {
          problems.push_back("horizontal cut crosses a rectangle");
        }
      }
    }
    walk(n.children[0]);
    walk(n.children[1]);
  };
  walk(t);
  for (std::size_t i = 0; i < rects.size(); ++i) {
    if (hits[i] != 1) problems.push_back("rectangle " + std::to_string(i) + " in " +
                                         std::to_string(hits[i]) + " leaves");
  }
  return problems;
}

// Subset sums of `values` (each used at most once), sorted.
inline std::vector<Length> subset_sums(const std::vector<Length>& values) {
  std::set<Length> s{0};
  for (Length v : values) {
    std::vector<Length> next(s.begin(), s.end());
    for (Length x : next) s.insert(x + v);
  }
  return {s.begin(), s.end()};
}

// Two-way equal-sum split by enumerating every subset.
inline bool equal_split(const std::vector<Length>& a) {
  Length total = 0;
  for (Length v : a) total += v;
  if (total % 2 != 0) return false;
  const int n = static_cast<int>(a.size());
  for (std::uint32_t m = 0; m < (1U << n); ++m) {
    Length s = 0;
    for (int i = 0; i < n; ++i) {
      if (m >> i & 1) s += a[i];
    }
    if (2 * s == total) return true;
  }
  return false;
}

// Minimum guillotine height by enumerating placements. A guillotine packing
// can be pushed left and down along its cut tree, after which each left is
// a subset sum of the other widths and each bottom a subset sum of the
// other heights; those are the only positions tried. Heights are tried
// from the lower bound upward until a separable placement exists.
inline Length grid_oracle(const gspkit::Instance& inst) {
  const int n = inst.size();
  if (n == 0) return 0;
  const Length W = inst.strip_width();
  Length area = 0, hmax = 0, sum_h = 0;
  for (const auto& it : inst.items()) {
    area += it.area();
    hmax = std::max(hmax, it.height);
    sum_h += it.height;
  }
  std::vector<std::vector<Length>> xs(n), ys(n);
  for (int i = 0; i < n; ++i) {
    std::vector<Length> ow, oh;
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      ow.push_back(inst.item(j).width);
      oh.push_back(inst.item(j).height);
    }
    for (Length x : subset_sums(ow)) {
      if (x + inst.item(i).width <= W) xs[i].push_back(x);
    }
    ys[i] = subset_sums(oh);
  }
  for (Length H = std::max(hmax, (area + W - 1) / W); H <= sum_h; ++H) {
    std::vector<Rect> placed;
    std::function<bool(int)> rec = [&](int i) {
      if (i == n) return separable(placed);
      const auto& it = inst.item(i);
      for (Length y : ys[i]) {
        if (y + it.height > H) break;
        for (Length x : xs[i]) {
          const Rect r{x, y, x + it.width, y + it.height};
          bool clash = false;
          for (const Rect& q : placed) {
            if (r.left < q.right && q.left < r.right && r.bottom < q.top && q.bottom < r.top) {
              clash = true;
              break;
            }
          }
          if (clash) continue;
          placed.push_back(r);
          if (rec(i + 1)) return true;
          placed.pop_back();
        }
      }
      return false;
    };
    if (rec(0)) return H;
  }
  return sum_h;
}

// ---- fuzz generators ----

inline gspkit::Instance random_instance(std::mt19937_64& rng, int n, Length W,
                                        Length hmax) {
  std::uniform_int_distribution<Length> wd(1, W), hd(1, hmax);
  std::vector<std::pair<Length, Length>> sizes;
  for (int i = 0; i < n; ++i) sizes.emplace_back(wd(rng), hd(rng));
  return gspkit::Instance::from_sizes(W, sizes);
}

// Random guillotine packing: recursively split [0,W]x[0,H] and shrink some
// leaves, so the result is separable by construction.
inline std::pair<gspkit::Instance, gspkit::Packing> random_guillotine_packing(
    std::mt19937_64& rng, Length W, Length H, int max_items) {
  std::vector<Rect> leaves;
  std::function<void(Rect, int)> split = [&](Rect r, int budget) {
    std::uniform_int_distribution<int> coin(0, 9);
    if (budget <= 1 || (r.width() == 1 && r.height() == 1) || coin(rng) < 2) {
      Rect q = r;
      if (coin(rng) < 4 && q.width() > 1) q.right -= std::uniform_int_distribution<Length>(0, q.width() - 1)(rng);
      if (coin(rng) < 4 && q.height() > 1) q.top -= std::uniform_int_distribution<Length>(0, q.height() - 1)(rng);
      if (coin(rng) < 8) leaves.push_back(q);
      return;
    }
    const bool vertical = r.width() > 1 && (r.height() == 1 || coin(rng) < 5);
    const int left_budget = std::max(1, budget / 2);
    if (vertical) {
      const Length x = std::uniform_int_distribution<Length>(r.left + 1, r.right - 1)(rng);
      split({r.left, r.bottom, x, r.top}, left_budget);
      split({x, r.bottom, r.right, r.top}, budget - left_budget);
    } else {
      const Length y = std::uniform_int_distribution<Length>(r.bottom + 1, r.top - 1)(rng);
      split({r.left, r.bottom, r.right, y}, left_budget);
      split({r.left, y, r.right, r.top}, budget - left_budget);
    }
  };
  split({0, 0, W, H}, max_items);
  if (leaves.empty()) leaves.push_back({0, 0, 1, 1});
  std::shuffle(leaves.begin(), leaves.end(), rng);
  std::vector<std::pair<Length, Length>> sizes;
  std::vector<gspkit::Placement> pl;
  Length top = 0;
  for (std::size_t i = 0; i < leaves.size(); ++i) {
    sizes.emplace_back(leaves[i].width(), leaves[i].height());
    pl.push_back({static_cast<int>(i), leaves[i].left, leaves[i].bottom});
    top = std::max(top, leaves[i].top);
  }
  return {gspkit::Instance::from_sizes(W, sizes), gspkit::Packing{pl, top}};
}

// Random valid packing by rejection sampling on a small grid; separable or
// not depending on luck.
inline std::pair<gspkit::Instance, gspkit::Packing> random_packing(
    std::mt19937_64& rng, Length W, Length H, int n) {
  std::vector<Rect> rects;
  for (int tries = 0; tries < 200 && static_cast<int>(rects.size()) < n; ++tries) {
    const Length w = std::uniform_int_distribution<Length>(1, std::max<Length>(1, W / 2))(rng);
    const Length h = std::uniform_int_distribution<Length>(1, std::max<Length>(1, H / 2))(rng);
    const Length x = std::uniform_int_distribution<Length>(0, W - w)(rng);
    const Length y = std::uniform_int_distribution<Length>(0, H - h)(rng);
    const Rect r{x, y, x + w, y + h};
    bool clash = false;
    for (const Rect& q : rects) {
      if (r.left < q.right && q.left < r.right && r.bottom < q.top && q.bottom < r.top) clash = true;
    }
    if (!clash) rects.push_back(r);
  }
  std::vector<std::pair<Length, Length>> sizes;
  std::vector<gspkit::Placement> pl;
  Length top = 0;
  for (std::size_t i = 0; i < rects.size(); ++i) {
    sizes.emplace_back(rects[i].width(), rects[i].height());
    pl.push_back({static_cast<int>(i), rects[i].left, rects[i].bottom});
    top = std::max(top, rects[i].top);
  }
  return {gspkit::Instance::from_sizes(W, sizes), gspkit::Packing{pl, top}};
}

inline gspkit::GapInstance random_gap(std::mt19937_64& rng, int n, int k, Length cmax) {
  gspkit::GapInstance g;
  std::uniform_int_distribution<Length> cap(0, cmax), sz(1, cmax), pr(0, 9);
  std::uniform_int_distribution<int> coin(0, 5);
  for (int j = 0; j < k; ++j) g.capacities.push_back(cap(rng));
  for (int i = 0; i < n; ++i) {
    gspkit::GapItem it;
    for (int j = 0; j < k; ++j) {
      if (coin(rng) == 0) it.size.push_back(std::nullopt);
      else it.size.push_back(sz(rng));
      it.profit.push_back(pr(rng));
    }
    g.items.push_back(it);
  }
  return g;
}

// The pinwheel: four boxes around a unit hole in [0,3]^2.
inline std::vector<Rect> pinwheel() {
  return {{0, 0, 2, 1}, {2, 0, 3, 2}, {1, 2, 3, 3}, {0, 1, 1, 3}};
}

// Four mutually blocking large boxes in [0,8]x[0,10].
inline std::vector<Rect> blocking_four() {
  return {{0, 3, 3, 10}, {0, 0, 5, 3}, {5, 0, 8, 7}, {3, 7, 8, 10}};
}

inline std::pair<gspkit::Instance, gspkit::Packing> as_packing(
    Length W, const std::vector<Rect>& rects) {
  std::vector<std::pair<Length, Length>> sizes;
  std::vector<gspkit::Placement> pl;
  Length top = 0;
  for (std::size_t i = 0; i < rects.size(); ++i) {
    sizes.emplace_back(rects[i].width(), rects[i].height());
    pl.push_back({static_cast<int>(i), rects[i].left, rects[i].bottom});
    top = std::max(top, rects[i].top);
  }
  return {gspkit::Instance::from_sizes(W, sizes), gspkit::Packing{pl, top}};
}

}  // namespace oracle

#endif  // GSPKIT_TESTS_ORACLES_HPP
