#ifndef GSPKIT_IO_HPP
#define GSPKIT_IO_HPP

#include <optional>
#include <string>
#include <string_view>

#include "gspkit/guillotine.hpp"
#include "gspkit/model.hpp"

namespace gspkit {

// Instance text:
//   strip <W>
//   <n>
//   <w> <h>      (n lines, item ids in order)
// Blank lines and lines starting with '#' are ignored.
Instance parse_instance(std::string_view text);
std::string serialize_instance(const Instance& instance);

struct Solution {
  Packing packing;
  std::optional<CutTree> tree;
};

// Solution text:
//   height <H>
//   <id> <left> <bottom>   (one line per item)
//   optional cut tree in parenthesized form, starting with '('
// The tree's root is [0, W] x [0, H].
Solution parse_solution(std::string_view text, Length strip_width);
std::string serialize_solution(const Packing& packing,
                               const CutTree* tree = nullptr);

// Whole-file helpers; failures raise ParseError with line 0.
std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view content);

}  // namespace gspkit

#endif  // GSPKIT_IO_HPP
