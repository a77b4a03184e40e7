#include <algorithm>
#include <limits>

#include "gspkit/errors.hpp"
#include "gspkit/solvers.hpp"

namespace gspkit {

namespace {

// A guillotine packing of a subset fits a (width, height) bounding box. For
// every subset we keep the Pareto front of such boxes; the first cut of any
// guillotine packing splits the subset into two parts packed independently,
// so fronts combine by stacking (horizontal cut) or abutting (vertical cut).
struct Entry {
  Length width = 0;
  Length height = 0;
  // Reconstruction: the part containing the lowest item, its front index,
  // the complement's front index, and the cut orientation.
  std::uint32_t part = 0;
  int first = -1;
  int second = -1;
  bool stacked = false;
};

using Front = std::vector<Entry>;

void prune(Front& f) {
  std::sort(f.begin(), f.end(), [](const Entry& a, const Entry& b) {
    if (a.width != b.width) return a.width < b.width;
    return a.height < b.height;
  });
  Front out;
  for (const Entry& e : f) {
    if (out.empty() || e.height < out.back().height) out.push_back(e);
  }
  f = std::move(out);
}

class Oracle {
 public:
  explicit Oracle(const Instance& instance)
      : inst_(instance), fronts_(std::size_t{1} << instance.size()) {}

  SolveResult run() {
    const int n = inst_.size();
    const Length W = inst_.strip_width();
    for (int i = 0; i < n; ++i) {
      const Item& it = inst_.item(i);
      fronts_[std::size_t{1} << i] = {{it.width, it.height, 0, -1, -1, false}};
    }
    const std::uint32_t full = (std::uint32_t{1} << n) - 1;
    for (std::uint32_t s = 1; s <= full; ++s) {
      if ((s & (s - 1)) == 0) continue;
      const std::uint32_t low = s & (~s + 1);
      Front f;
      // Enumerate parts containing the lowest item so each split is seen once.
      for (std::uint32_t a = (s - 1) & s; a > 0; a = (a - 1) & s) {
        if ((a & low) == 0) continue;
        const std::uint32_t b = s ^ a;
        const Front& fa = fronts_[a];
        const Front& fb = fronts_[b];
        for (int i = 0; i < static_cast<int>(fa.size()); ++i) {
          for (int j = 0; j < static_cast<int>(fb.size()); ++j) {
            const Entry& x = fa[i];
            const Entry& y = fb[j];
            const Length sw = std::max(x.width, y.width);
            f.push_back({sw, x.height + y.height, a, i, j, true});
            const Length vw = x.width + y.width;
            if (vw <= W) {
              f.push_back({vw, std::max(x.height, y.height), a, i, j, false});
            }
          }
        }
      }
      prune(f);
      fronts_[s] = std::move(f);
    }

    std::vector<Placement> placements;
    if (n > 0) {
      const Front& top = fronts_[full];
      int best = 0;
      for (int k = 1; k < static_cast<int>(top.size()); ++k) {
        if (top[k].height < top[best].height) best = k;
      }
      place(full, best, 0, 0, placements);
    }
    Trace trace;
    trace.algorithm = "oracle";
    trace.source = "exact";
    return make_result(inst_, make_packing(inst_, std::move(placements)),
                       std::move(trace));
  }

 private:
  void place(std::uint32_t s, int idx, Length x, Length y,
             std::vector<Placement>& out) const {
    const Entry& e = fronts_[s][idx];
    if (e.first < 0) {
      int item = 0;
      while (((s >> item) & 1U) == 0) ++item;
      out.push_back({item, x, y});
      return;
    }
    const std::uint32_t b = s ^ e.part;
    const Entry& ea = fronts_[e.part][e.first];
    place(e.part, e.first, x, y, out);
    if (e.stacked) {
      place(b, e.second, x, y + ea.height, out);
    } else {
      place(b, e.second, x + ea.width, y, out);
    }
  }

  const Instance& inst_;
  std::vector<Front> fronts_;
};

}  // namespace

SolveResult exact_oracle(const Instance& instance, int item_limit) {
  if (instance.size() > item_limit || instance.size() > 20) {
    throw ResourceError("oracle limited to " + std::to_string(item_limit) +
                            " items, instance has " +
                            std::to_string(instance.size()),
                        static_cast<std::uint64_t>(instance.size()));
  }
  return Oracle(instance).run();
}

}  // namespace gspkit
