#ifndef GSPKIT_GUILLOTINE_HPP
#define GSPKIT_GUILLOTINE_HPP

#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "gspkit/model.hpp"

namespace gspkit {

// Recursive guillotine cutting sequence over a rectangular region.
//
// Cut nodes have exactly two children whose regions partition the parent:
// a Vertical cut at x yields (left, right), a Horizontal cut at y yields
// (bottom, top). Leaves name one item (or one box) or mark waste.
struct CutTree {
  enum class Kind { Vertical, Horizontal, Item, Waste };

  Kind kind = Kind::Waste;
  Rect region;
  Length cut = 0;  // cut coordinate for Vertical/Horizontal
  int item = -1;   // item (or box) index for Item leaves
  std::vector<CutTree> children;

  static CutTree leaf(const Rect& region, int item);
  static CutTree waste(const Rect& region);
  static CutTree vertical(const Rect& region, Length x, CutTree left,
                          CutTree right);
  static CutTree horizontal(const Rect& region, Length y, CutTree bottom,
                            CutTree top);

  bool is_cut() const { return kind == Kind::Vertical || kind == Kind::Horizontal; }
  // A cut with a waste child only trims waste off the other side.
  bool is_trim() const;
  // Item ids of all Item leaves, in left-to-right tree order.
  std::vector<int> leaf_items() const;

  friend bool operator==(const CutTree&, const CutTree&) = default;
};

// Witness for a failed separability check: a region holding >= 2 rectangles
// in which every axis-parallel line crosses one of them.
struct NotSeparable {
  Rect region;
  std::vector<int> items;
};

using SeparabilityResult = std::variant<CutTree, NotSeparable>;

// Decides guillotine separability of a valid packing over [0,W]x[0,H].
// Coordinates are first compressed to ranks (at most 2n distinct values per
// axis); each region is split by the feasible cut with the smallest
// coordinate that leaves items on both sides, vertical before horizontal.
// Throws VerificationError when the packing itself is invalid.
SeparabilityResult check_separable(const Instance& instance,
                                   const Packing& packing);

// Same procedure for opaque boxes inside `root`. Leaves carry box indices.
// Throws VerificationError if boxes overlap or leave the root region.
SeparabilityResult cuts_separating_boxes(std::span<const Rect> boxes,
                                         const Rect& root);

// Independent structural validation of a tree against a set of rectangles
// (indexed by leaf id): children partition parents, cuts lie strictly
// inside their region, every rectangle sits in exactly one leaf that
// contains it, and no cut line crosses a rectangle interior. Returns the
// list of problems found (empty when valid).
std::vector<std::string> validate_cut_tree(const CutTree& tree,
                                           std::span<const Rect> rects);

struct StageCounts {
  int without_trim = 0;
  int with_trim = 0;
};

// Orientation runs along root-to-leaf paths, maximized over item leaves.
// `without_trim` ignores cuts that only separate waste.
StageCounts stage_count(const CutTree& tree);

// Parenthesized text form: (V x left right) (H y bottom top) (I id) (W).
std::string serialize_cut_tree(const CutTree& tree);
// Parses the text form, rebuilding regions from `root`. Throws ParseError.
CutTree parse_cut_tree(std::string_view text, const Rect& root);

}  // namespace gspkit

#endif  // GSPKIT_GUILLOTINE_HPP
