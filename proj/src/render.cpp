#include "gspkit/render.hpp"

#include <algorithm>
#include <sstream>

namespace gspkit {

namespace {

constexpr double kMargin = 10.0;
constexpr const char* kStageColors[2] = {"#d62728", "#1f77b4"};
constexpr const char* kFills[6] = {"#fde0c5", "#c7e9c0", "#c6dbef",
                                   "#f2d0e6", "#fff2ae", "#dadaeb"};

struct Canvas {
  double scale = 1.0;
  Length height = 0;  // drawn strip height

  double x(Length v) const { return kMargin + scale * static_cast<double>(v); }
  // SVG's y axis points down; the strip's up.
  double y(Length v) const {
    return kMargin + scale * static_cast<double>(height - v);
  }
};

void draw_cuts(const CutTree& t, const Canvas& c, int stage, int last,
               std::ostringstream& os) {
  if (!t.is_cut()) return;
  const int o = t.kind == CutTree::Kind::Vertical ? 1 : 2;
  const int s = o == last ? stage : stage + 1;
  const char* color = kStageColors[(s - 1) % 2];
  os << "  <line class=\"cut stage" << s << "\" ";
  if (o == 1) {
    os << "x1=\"" << c.x(t.cut) << "\" y1=\"" << c.y(t.region.bottom)
       << "\" x2=\"" << c.x(t.cut) << "\" y2=\"" << c.y(t.region.top) << "\"";
  } else {
    os << "x1=\"" << c.x(t.region.left) << "\" y1=\"" << c.y(t.cut)
       << "\" x2=\"" << c.x(t.region.right) << "\" y2=\"" << c.y(t.cut) << "\"";
  }
  os << " stroke=\"" << color << "\" stroke-width=\"1.5\"";
  if (t.is_trim()) os << " stroke-dasharray=\"4 2\"";
  os << "/>\n";
  for (const CutTree& ch : t.children) draw_cuts(ch, c, s, o, os);
}

}  // namespace

std::string render_svg(const Instance& instance, const Packing& packing,
                       const CutTree* tree) {
  const Length W = instance.strip_width();
  Canvas c;
  c.height = std::max<Length>(packing.height, 1);
  const Length longest = std::max(W, c.height);
  c.scale = 600.0 / static_cast<double>(longest);
  const double width_px = 2 * kMargin + c.scale * static_cast<double>(W);
  const double height_px = 2 * kMargin + c.scale * static_cast<double>(c.height);

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width_px
     << "\" height=\"" << height_px << "\" viewBox=\"0 0 " << width_px << " "
     << height_px << "\">\n";
  os << "  <rect class=\"strip\" x=\"" << c.x(0) << "\" y=\"" << c.y(c.height)
     << "\" width=\"" << c.scale * static_cast<double>(W) << "\" height=\""
     << c.scale * static_cast<double>(c.height)
     << "\" fill=\"none\" stroke=\"black\" stroke-width=\"2\"/>\n";
  for (const Placement& p : packing.placements) {
    if (p.item < 0 || p.item >= instance.size()) continue;
    const Rect r = placed_rect(instance, p);
    os << "  <rect class=\"item\" x=\"" << c.x(r.left) << "\" y=\""
       << c.y(r.top) << "\" width=\"" << c.scale * static_cast<double>(r.width())
       << "\" height=\"" << c.scale * static_cast<double>(r.height())
       << "\" fill=\"" << kFills[p.item % 6]
       << "\" stroke=\"#333\" stroke-width=\"0.5\"/>\n";
    const double font = std::max(
        6.0, std::min(14.0, c.scale * static_cast<double>(std::min(r.width(), r.height())) / 2));
    os << "  <text x=\"" << (c.x(r.left) + c.x(r.right)) / 2 << "\" y=\""
       << (c.y(r.bottom) + c.y(r.top)) / 2
       << "\" font-size=\"" << font
       << "\" text-anchor=\"middle\" dominant-baseline=\"middle\">" << p.item
       << "</text>\n";
  }
  if (tree != nullptr) draw_cuts(*tree, c, 0, 0, os);
  os << "</svg>\n";
  return os.str();
}

}  // namespace gspkit
