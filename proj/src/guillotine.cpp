#include "gspkit/guillotine.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <limits>
#include <optional>
#include <sstream>

#include "gspkit/errors.hpp"

namespace gspkit {

CutTree CutTree::leaf(const Rect& region, int item) {
  CutTree t;
  t.kind = Kind::Item;
  t.region = region;
  t.item = item;
  return t;
}

CutTree CutTree::waste(const Rect& region) {
  CutTree t;
  t.kind = Kind::Waste;
  t.region = region;
  return t;
}

CutTree CutTree::vertical(const Rect& region, Length x, CutTree left,
                          CutTree right) {
  CutTree t;
  t.kind = Kind::Vertical;
  t.region = region;
  t.cut = x;
  t.children.push_back(std::move(left));
  t.children.push_back(std::move(right));
  return t;
}

CutTree CutTree::horizontal(const Rect& region, Length y, CutTree bottom,
                            CutTree top) {
  CutTree t;
  t.kind = Kind::Horizontal;
  t.region = region;
  t.cut = y;
  t.children.push_back(std::move(bottom));
  t.children.push_back(std::move(top));
  return t;
}

bool CutTree::is_trim() const {
  if (!is_cut()) return false;
  return children[0].kind == Kind::Waste || children[1].kind == Kind::Waste;
}

namespace {

void collect_leaves(const CutTree& t, std::vector<int>& out) {
  if (t.kind == CutTree::Kind::Item) out.push_back(t.item);
  for (const CutTree& c : t.children) collect_leaves(c, out);
}

}  // namespace

std::vector<int> CutTree::leaf_items() const {
  std::vector<int> out;
  collect_leaves(*this, out);
  return out;
}

namespace {

// Rank-compressed view of a set of rectangles.
struct Compressed {
  std::vector<Length> xs;
  std::vector<Length> ys;
  std::vector<Rect> rects;  // in rank coordinates
  Rect root;

  Compressed(std::span<const Rect> input, const Rect& region) {
    xs = {region.left, region.right};
    ys = {region.bottom, region.top};
    for (const Rect& r : input) {
      xs.push_back(r.left);
      xs.push_back(r.right);
      ys.push_back(r.bottom);
      ys.push_back(r.top);
    }
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    std::sort(ys.begin(), ys.end());
    ys.erase(std::unique(ys.begin(), ys.end()), ys.end());
    auto rx = [&](Length v) {
      return static_cast<Length>(std::lower_bound(xs.begin(), xs.end(), v) -
                                 xs.begin());
    };
    auto ry = [&](Length v) {
      return static_cast<Length>(std::lower_bound(ys.begin(), ys.end(), v) -
                                 ys.begin());
    };
    for (const Rect& r : input) {
      rects.push_back({rx(r.left), ry(r.bottom), rx(r.right), ry(r.top)});
    }
    root = {rx(region.left), ry(region.bottom), rx(region.right),
            ry(region.top)};
  }

  Rect expand(const Rect& r) const {
    return {xs[r.left], ys[r.bottom], xs[r.right], ys[r.top]};
  }
};

class Separator {
 public:
  explicit Separator(const Compressed& c) : c_(c) {}

  std::optional<CutTree> run(std::vector<int> ids, const Rect& region) {
    if (ids.empty()) return CutTree::waste(c_.expand(region));
    if (ids.size() == 1) return CutTree::leaf(c_.expand(region), ids[0]);

    if (auto x = find_cut(ids, /*vertical=*/true)) {
      std::vector<int> lo, hi;
      for (int id : ids) (c_.rects[id].right <= *x ? lo : hi).push_back(id);
      Rect left = region, right = region;
      left.right = *x;
      right.left = *x;
      auto a = run(std::move(lo), left);
      if (!a) return std::nullopt;
      auto b = run(std::move(hi), right);
      if (!b) return std::nullopt;
      return CutTree::vertical(c_.expand(region), c_.xs[*x], std::move(*a),
                               std::move(*b));
    }
    if (auto y = find_cut(ids, /*vertical=*/false)) {
      std::vector<int> lo, hi;
      for (int id : ids) (c_.rects[id].top <= *y ? lo : hi).push_back(id);
      Rect bottom = region, top = region;
      bottom.top = *y;
      top.bottom = *y;
      auto a = run(std::move(lo), bottom);
      if (!a) return std::nullopt;
      auto b = run(std::move(hi), top);
      if (!b) return std::nullopt;
      return CutTree::horizontal(c_.expand(region), c_.ys[*y], std::move(*a),
                                 std::move(*b));
    }
    witness_.region = c_.expand(region);
    witness_.items = ids;
    std::sort(witness_.items.begin(), witness_.items.end());
    return std::nullopt;
  }

  const NotSeparable& witness() const { return witness_; }

 private:
  // Smallest feasible cut coordinate with rectangles on both sides. Sorting
  // by the low edge makes every candidate left side a prefix; the cut sits
  // at the prefix's maximal high edge.
  std::optional<Length> find_cut(std::vector<int>& ids, bool vertical) const {
    auto lo = [&](int id) {
      return vertical ? c_.rects[id].left : c_.rects[id].bottom;
    };
    auto hi = [&](int id) {
      return vertical ? c_.rects[id].right : c_.rects[id].top;
    };
    std::sort(ids.begin(), ids.end(), [&](int a, int b) {
      if (lo(a) != lo(b)) return lo(a) < lo(b);
      if (hi(a) != hi(b)) return hi(a) < hi(b);
      return a < b;
    });
    Length reach = std::numeric_limits<Length>::min();
    for (std::size_t k = 0; k + 1 < ids.size(); ++k) {
      reach = std::max(reach, hi(ids[k]));
      if (reach <= lo(ids[k + 1])) return reach;
    }
    return std::nullopt;
  }

  const Compressed& c_;
  NotSeparable witness_;
};

SeparabilityResult separate(std::span<const Rect> rects, const Rect& root) {
  Compressed c(rects, root);
  std::vector<int> ids(rects.size());
  for (std::size_t i = 0; i < ids.size(); ++i) ids[i] = static_cast<int>(i);
  Separator s(c);
  if (auto tree = s.run(std::move(ids), c.root)) return std::move(*tree);
  return s.witness();
}

}  // namespace

SeparabilityResult check_separable(const Instance& instance,
                                   const Packing& packing) {
  PackingReport report = verify_packing(instance, packing);
  if (!report.ok()) {
    throw VerificationError("invalid packing: " + report.violations.front());
  }
  std::vector<Rect> rects(instance.size());
  for (const Placement& p : packing.placements) {
    rects[p.item] = placed_rect(instance, p);
  }
  return separate(rects, Rect{0, 0, instance.strip_width(), packing.height});
}

SeparabilityResult cuts_separating_boxes(std::span<const Rect> boxes,
                                         const Rect& root) {
  for (std::size_t i = 0; i < boxes.size(); ++i) {
    if (!root.contains(boxes[i])) {
      throw VerificationError("box " + std::to_string(i) + " " +
                              to_string(boxes[i]) + " leaves region " +
                              to_string(root));
    }
    if (boxes[i].width() <= 0 || boxes[i].height() <= 0) {
      throw VerificationError("box " + std::to_string(i) + " is degenerate");
    }
    for (std::size_t j = i + 1; j < boxes.size(); ++j) {
      if (boxes[i].interiors_overlap(boxes[j])) {
        throw VerificationError("boxes " + std::to_string(i) + " and " +
                                std::to_string(j) + " overlap");
      }
    }
  }
  return separate(boxes, root);
}

namespace {

class TreeValidator {
 public:
  explicit TreeValidator(std::span<const Rect> rects)
      : rects_(rects), seen_(rects.size(), 0) {}

  void visit(const CutTree& t) {
    const Rect& r = t.region;
    if (r.width() < 0 || r.height() < 0) {
      problem("negative region " + to_string(r));
      return;
    }
    switch (t.kind) {
      case CutTree::Kind::Item: {
        if (!t.children.empty()) problem("leaf with children");
        if (t.item < 0 || t.item >= static_cast<int>(rects_.size())) {
          problem("leaf names unknown id " + std::to_string(t.item));
          return;
        }
        if (seen_[t.item]++ > 0) {
          problem("id " + std::to_string(t.item) + " in several leaves");
        }
        if (!r.contains(rects_[t.item])) {
          problem("leaf " + to_string(r) + " does not contain id " +
                  std::to_string(t.item));
        }
        for (std::size_t i = 0; i < rects_.size(); ++i) {
          if (static_cast<int>(i) != t.item && r.interiors_overlap(rects_[i])) {
            problem("leaf " + to_string(r) + " for id " +
                    std::to_string(t.item) + " also meets id " +
                    std::to_string(i));
          }
        }
        return;
      }
      case CutTree::Kind::Waste:
        if (!t.children.empty()) problem("waste leaf with children");
        for (std::size_t i = 0; i < rects_.size(); ++i) {
          if (r.interiors_overlap(rects_[i])) {
            problem("waste region " + to_string(r) + " meets id " +
                    std::to_string(i));
          }
        }
        return;
      case CutTree::Kind::Vertical:
      case CutTree::Kind::Horizontal:
        break;
    }
    if (t.children.size() != 2) {
      problem("cut node without two children");
      return;
    }
    const bool vertical = t.kind == CutTree::Kind::Vertical;
    Rect a = r, b = r;
    if (vertical) {
      if (!(r.left < t.cut && t.cut < r.right)) {
        problem("vertical cut " + std::to_string(t.cut) + " outside " +
                to_string(r));
      }
      a.right = t.cut;
      b.left = t.cut;
    } else {
      if (!(r.bottom < t.cut && t.cut < r.top)) {
        problem("horizontal cut " + std::to_string(t.cut) + " outside " +
                to_string(r));
      }
      a.top = t.cut;
      b.bottom = t.cut;
    }
    if (t.children[0].region != a || t.children[1].region != b) {
      problem("children do not partition " + to_string(r));
    }
    for (std::size_t i = 0; i < rects_.size(); ++i) {
      const Rect& q = rects_[i];
      bool crosses =
          vertical ? (q.left < t.cut && t.cut < q.right && q.bottom < r.top &&
                      r.bottom < q.top)
                   : (q.bottom < t.cut && t.cut < q.top && q.left < r.right &&
                      r.left < q.right);
      if (crosses) {
        problem(std::string(vertical ? "vertical" : "horizontal") + " cut " +
                std::to_string(t.cut) + " crosses id " + std::to_string(i));
      }
    }
    visit(t.children[0]);
    visit(t.children[1]);
  }

  std::vector<std::string> finish() {
    for (std::size_t i = 0; i < seen_.size(); ++i) {
      if (seen_[i] == 0) problem("id " + std::to_string(i) + " in no leaf");
    }
    return std::move(problems_);
  }

 private:
  void problem(std::string s) { problems_.push_back(std::move(s)); }

  std::span<const Rect> rects_;
  std::vector<int> seen_;
  std::vector<std::string> problems_;
};

struct StageWalker {
  StageCounts best;

  // `last_*` is 0 before any cut, 1 vertical, 2 horizontal.
  void visit(const CutTree& t, int last_plain, int plain, int last_all,
             int all) {
    if (t.kind == CutTree::Kind::Item) {
      best.without_trim = std::max(best.without_trim, plain);
      best.with_trim = std::max(best.with_trim, all);
      return;
    }
    if (!t.is_cut()) return;
    const int o = t.kind == CutTree::Kind::Vertical ? 1 : 2;
    const int all2 = all + (o != last_all ? 1 : 0);
    int last2 = last_plain, plain2 = plain;
    if (!t.is_trim()) {
      plain2 = plain + (o != last_plain ? 1 : 0);
      last2 = o;
    }
    for (const CutTree& c : t.children) visit(c, last2, plain2, o, all2);
  }
};

}  // namespace

std::vector<std::string> validate_cut_tree(const CutTree& tree,
                                           std::span<const Rect> rects) {
  TreeValidator v(rects);
  v.visit(tree);
  return v.finish();
}

StageCounts stage_count(const CutTree& tree) {
  StageWalker w;
  w.visit(tree, 0, 0, 0, 0);
  return w.best;
}

namespace {

void write_tree(const CutTree& t, std::ostringstream& os) {
  switch (t.kind) {
    case CutTree::Kind::Item:
      os << "(I " << t.item << ")";
      return;
    case CutTree::Kind::Waste:
      os << "(W)";
      return;
    case CutTree::Kind::Vertical:
    case CutTree::Kind::Horizontal:
      os << (t.kind == CutTree::Kind::Vertical ? "(V " : "(H ") << t.cut
         << " ";
      write_tree(t.children[0], os);
      os << " ";
      write_tree(t.children[1], os);
      os << ")";
      return;
  }
}

class TreeParser {
 public:
  explicit TreeParser(std::string_view text) : text_(text) {}

  CutTree parse(const Rect& root) {
    CutTree t = node(root);
    skip_space();
    if (pos_ != text_.size()) fail("trailing text after cut tree");
    return t;
  }

 private:
  CutTree node(const Rect& region) {
    expect('(');
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of cut tree");
    const char tag = text_[pos_++];
    CutTree t;
    switch (tag) {
      case 'I':
        t = CutTree::leaf(region, static_cast<int>(number()));
        break;
      case 'W':
        t = CutTree::waste(region);
        break;
      case 'V': {
        Length x = number();
        if (!(region.left < x && x < region.right)) {
          fail("vertical cut " + std::to_string(x) + " outside region");
        }
        Rect a = region, b = region;
        a.right = x;
        b.left = x;
        CutTree l = node(a);
        CutTree r = node(b);
        t = CutTree::vertical(region, x, std::move(l), std::move(r));
        break;
      }
      case 'H': {
        Length y = number();
        if (!(region.bottom < y && y < region.top)) {
          fail("horizontal cut " + std::to_string(y) + " outside region");
        }
        Rect a = region, b = region;
        a.top = y;
        b.bottom = y;
        CutTree l = node(a);
        CutTree r = node(b);
        t = CutTree::horizontal(region, y, std::move(l), std::move(r));
        break;
      }
      default:
        fail(std::string("unknown cut-tree tag '") + tag + "'");
    }
    expect(')');
    return t;
  }

  Length number() {
    skip_space();
    std::int64_t v = 0;
    auto [ptr, ec] =
        std::from_chars(text_.data() + pos_, text_.data() + text_.size(), v);
    if (ec != std::errc()) fail("expected integer in cut tree");
    pos_ = ptr - text_.data();
    return v;
  }

  void expect(char c) {
    skip_space();
    if (pos_ >= text_.size() || text_[pos_] != c) {
      fail(std::string("expected '") + c + "' in cut tree");
    }
    ++pos_;
  }

  void skip_space() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      if (text_[pos_] == '\n') ++line_;
      ++pos_;
    }
  }

  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(line_, msg);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1;
};

}  // namespace

std::string serialize_cut_tree(const CutTree& tree) {
  std::ostringstream os;
  write_tree(tree, os);
  return os.str();
}

CutTree parse_cut_tree(std::string_view text, const Rect& root) {
  return TreeParser(text).parse(root);
}

}  // namespace gspkit
