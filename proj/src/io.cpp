#include "gspkit/io.hpp"

#include <charconv>
#include <fstream>
#include <limits>
#include <sstream>
#include <vector>

#include "gspkit/errors.hpp"

namespace gspkit {

namespace {

// Splits into (line number, tokens) for non-blank, non-comment lines.
struct Line {
  int number = 0;
  std::vector<std::string_view> tokens;
  std::string_view raw;
};

std::vector<Line> tokenize(std::string_view text) {
  std::vector<Line> out;
  int number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view raw = text.substr(pos, end - pos);
    if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);
    ++number;
    Line line{number, {}, raw};
    std::size_t i = 0;
    while (i < raw.size()) {
      while (i < raw.size() && (raw[i] == ' ' || raw[i] == '\t')) ++i;
      std::size_t j = i;
      while (j < raw.size() && raw[j] != ' ' && raw[j] != '\t') ++j;
      if (j > i) line.tokens.push_back(raw.substr(i, j - i));
      i = j;
    }
    if (!line.tokens.empty() && line.tokens[0][0] != '#') {
      out.push_back(std::move(line));
    }
    if (end == text.size()) break;
    pos = end + 1;
  }
  return out;
}

Length to_length(std::string_view tok, int line) {
  Length v = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size()) {
    throw ParseError(line, "expected an integer, got '" + std::string(tok) + "'");
  }
  return v;
}

}  // namespace

Instance parse_instance(std::string_view text) {
  std::vector<Line> lines = tokenize(text);
  if (lines.empty()) throw ParseError(1, "empty instance file");
  const Line& head = lines[0];
  if (head.tokens.size() != 2 || head.tokens[0] != "strip") {
    throw ParseError(head.number, "expected 'strip <W>'");
  }
  const Length W = to_length(head.tokens[1], head.number);
  if (W < 1) throw ParseError(head.number, "strip width must be >= 1");
  if (lines.size() < 2 || lines[1].tokens.size() != 1) {
    throw ParseError(lines.size() < 2 ? head.number + 1 : lines[1].number,
                     "expected the item count");
  }
  const Length n = to_length(lines[1].tokens[0], lines[1].number);
  if (n < 0) throw ParseError(lines[1].number, "item count must be >= 0");
  if (static_cast<Length>(lines.size()) - 2 != n) {
    throw ParseError(lines.back().number,
                     "expected " + std::to_string(n) + " item lines, found " +
                         std::to_string(lines.size() - 2));
  }
  std::vector<Item> items;
  items.reserve(n);
  for (std::size_t k = 2; k < lines.size(); ++k) {
    const Line& l = lines[k];
    if (l.tokens.size() != 2) throw ParseError(l.number, "expected '<w> <h>'");
    Item it{static_cast<int>(items.size()), to_length(l.tokens[0], l.number),
            to_length(l.tokens[1], l.number)};
    if (it.width < 1 || it.height < 1) {
      throw ParseError(l.number, "item dimensions must be >= 1");
    }
    if (it.width > W) throw ParseError(l.number, "item wider than the strip");
    items.push_back(it);
  }
  return Instance(W, std::move(items));
}

std::string serialize_instance(const Instance& instance) {
  std::ostringstream os;
  os << "strip " << instance.strip_width() << "\n" << instance.size() << "\n";
  for (const Item& it : instance.items()) {
    os << it.width << " " << it.height << "\n";
  }
  return os.str();
}

Solution parse_solution(std::string_view text, Length strip_width) {
  std::vector<Line> lines = tokenize(text);
  if (lines.empty()) throw ParseError(1, "empty solution file");
  const Line& head = lines[0];
  if (head.tokens.size() != 2 || head.tokens[0] != "height") {
    throw ParseError(head.number, "expected 'height <H>'");
  }
  Solution s;
  s.packing.height = to_length(head.tokens[1], head.number);
  std::size_t k = 1;
  for (; k < lines.size(); ++k) {
    const Line& l = lines[k];
    if (l.tokens[0][0] == '(') break;
    if (l.tokens.size() != 3) {
      throw ParseError(l.number, "expected '<id> <left> <bottom>'");
    }
    const Length id = to_length(l.tokens[0], l.number);
    if (id < 0 || id > std::numeric_limits<int>::max()) {
      throw ParseError(l.number, "item id out of range");
    }
    s.packing.placements.push_back({static_cast<int>(id),
                                    to_length(l.tokens[1], l.number),
                                    to_length(l.tokens[2], l.number)});
  }
  if (k < lines.size()) {
    const int first = lines[k].number;
    const std::size_t offset = lines[k].raw.data() - text.data();
    try {
      s.tree = parse_cut_tree(text.substr(offset),
                              Rect{0, 0, strip_width, s.packing.height});
    } catch (const ParseError& e) {
      throw ParseError(first, std::string("cut tree: ") + e.what());
    }
  }
  return s;
}

std::string serialize_solution(const Packing& packing, const CutTree* tree) {
  std::ostringstream os;
  os << "height " << packing.height << "\n";
  for (const Placement& p : packing.placements) {
    os << p.item << " " << p.left << " " << p.bottom << "\n";
  }
  if (tree != nullptr) os << serialize_cut_tree(*tree) << "\n";
  return os.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(0, "cannot read '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError(0, "cannot write '" + path + "'");
  out << content;
  if (!out) throw ParseError(0, "failed writing '" + path + "'");
}

}  // namespace gspkit
