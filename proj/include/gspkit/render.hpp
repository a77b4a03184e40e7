#ifndef GSPKIT_RENDER_HPP
#define GSPKIT_RENDER_HPP

#include <string>

#include "gspkit/guillotine.hpp"
#include "gspkit/model.hpp"

namespace gspkit {

// SVG drawing of a packing: the strip outline, one labeled rectangle per
// item, and, when `tree` is given, every cut line colored by the parity of
// its stage.
std::string render_svg(const Instance& instance, const Packing& packing,
                       const CutTree* tree = nullptr);

}  // namespace gspkit

#endif  // GSPKIT_RENDER_HPP
