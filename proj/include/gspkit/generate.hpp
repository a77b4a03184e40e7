#ifndef GSPKIT_GENERATE_HPP
#define GSPKIT_GENERATE_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gspkit/containers.hpp"
#include "gspkit/model.hpp"

namespace gspkit {

// Class skew for random instances.
enum class Skew { Uniform, Tall, Horizontal, Vertical, Small, Mixed };
std::optional<Skew> parse_skew(std::string_view name);

struct RandomParams {
  Length strip_width = 100;
  int items = 20;
  Length max_height = 100;
  Skew skew = Skew::Uniform;
};

// Widths uniform in [1, W] and heights uniform in [1, max_height], with the
// range narrowed per item according to the skew. Deterministic in the seed.
Instance generate_random(const RandomParams& params, std::uint64_t seed);

struct PartitionCase {
  std::vector<Length> numbers;
  Instance instance;  // width T / 2, one item (a_k, 1) per number
  bool yes = false;   // the numbers split into two halves of equal sum
};

// Throws ParameterError for an empty set, non-positive numbers or an odd sum.
PartitionCase partition_instance(std::span<const Length> numbers);
// n numbers in [1, max_value], the last adjusted so the sum is even.
PartitionCase generate_partition(int n, Length max_value, std::uint64_t seed);
// Subset-sum decision: is there a subset with sum exactly half the total?
bool has_equal_split(std::span<const Length> numbers);

struct PlantedParams {
  Length strip_width = 64;
  Length height = 96;              // planted optimum bound H
  Rational epsilon = Rational(1, 4);
  int container_budget = 1;        // the g the solver will use
  int max_boxes = 6;
  bool flushed = false;            // tall items bottom-left flushed, B* reserved
};

struct Planted {
  Instance instance;
  ContainerLayout layout;  // template boxes (tall items excluded when flushed)
  Packing packing;         // the planted packing, height <= H
  Length opt_bound = 0;    // H
};

// Draws a random nice layout inside [0,W] x [0,H] and fills each box with
// items whose class (tall, large, vertical, horizontal, small) is stable for
// every OPT' in [H, ceil((1+eps) H) + 1]. No medium items are produced.
Planted generate_planted(const PlantedParams& params, std::uint64_t seed);

// "opt <= H" followed by the layout text.
std::string planted_certificate(const Planted& planted);
// "yes, opt=2" or "no, opt>=3".
std::string partition_certificate(const PartitionCase& c);

}  // namespace gspkit

#endif  // GSPKIT_GENERATE_HPP
