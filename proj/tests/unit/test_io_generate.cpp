#include <doctest.h>

#include "../support/oracles.hpp"
#include "gspkit/errors.hpp"
#include "gspkit/generate.hpp"
#include "gspkit/heuristics.hpp"
#include "gspkit/io.hpp"

using namespace gspkit;

TEST_CASE("instance text") {
  const Instance inst = parse_instance("# comment\nstrip 10\n3\n5 4\n\n5 4\n6 3\n");
  CHECK(inst.strip_width() == 10);
  CHECK(inst.size() == 3);
  CHECK(inst.item(2) == Item{2, 6, 3});
  CHECK(serialize_instance(inst) == "strip 10\n3\n5 4\n5 4\n6 3\n");
  CHECK(parse_instance(serialize_instance(inst)) == inst);
}

TEST_CASE("instance parse errors carry line numbers") {
  auto line_of = [](const char* text) {
    try {
      parse_instance(text);
    } catch (const ParseError& e) {
      return e.line();
    }
    return -1;
  };
  CHECK(line_of("") == 1);
  CHECK(line_of("width 10\n") == 1);
  CHECK(line_of("strip 10\n2\n1 1\n") == 3);
  CHECK(line_of("strip 10\n2\n1 1\n1 x\n") == 4);
  CHECK(line_of("strip 10\n1\n11 1\n") == 3);
  CHECK(line_of("strip 10\n1\n0 1\n") == 3);
  CHECK_THROWS_AS(read_file("/nonexistent/file"), ParseError);
}

TEST_CASE("solution text") {
  const Instance inst = Instance::from_sizes(
      10, std::vector<std::pair<Length, Length>>{{5, 4}, {5, 4}, {6, 3}});
  const StripResult s = nfdh_strip(inst);
  const std::string text = serialize_solution(s.packing, &s.tree);
  const Solution back = parse_solution(text, 10);
  CHECK(back.packing == s.packing);
  REQUIRE(back.tree.has_value());
  CHECK(*back.tree == s.tree);
  const Solution plain = parse_solution(serialize_solution(s.packing), 10);
  CHECK(plain.packing == s.packing);
  CHECK_FALSE(plain.tree.has_value());
  CHECK_THROWS_AS(parse_solution("height 3\n0 0\n", 10), ParseError);
  CHECK_THROWS_AS(parse_solution("0 0 0\n", 10), ParseError);
}

TEST_CASE("random generator is a pure function of its inputs") {
  RandomParams p;
  p.items = 30;
  for (Skew skew : {Skew::Uniform, Skew::Tall, Skew::Horizontal, Skew::Vertical, Skew::Small,
                    Skew::Mixed}) {
    p.skew = skew;
    const Instance a = generate_random(p, 99);
    CHECK(a == generate_random(p, 99));
    CHECK(a.size() == 30);
    for (const Item& it : a.items()) {
      CHECK(it.width >= 1);
      CHECK(it.width <= p.strip_width);
      CHECK(it.height >= 1);
      CHECK(it.height <= p.max_height);
    }
  }
  p.skew = Skew::Uniform;
  CHECK_FALSE(generate_random(p, 1) == generate_random(p, 2));
  CHECK(parse_skew("mixed") == Skew::Mixed);
  CHECK_FALSE(parse_skew("diagonal").has_value());
}

TEST_CASE("partition reduction") {
  const std::vector<Length> nums{1, 2, 3};
  const PartitionCase c = partition_instance(nums);
  CHECK(c.instance.strip_width() == 3);
  CHECK(c.instance.item(0) == Item{0, 1, 1});
  CHECK(c.instance.item(2) == Item{2, 3, 1});
  CHECK(c.yes);
  CHECK(partition_certificate(c) == "yes, opt=2\n");
  const std::vector<Length> no{2, 2, 2};
  CHECK(partition_certificate(partition_instance(no)) == "no, opt>=3\n");
  const std::vector<Length> odd{3, 1, 1};
  CHECK_THROWS_AS(partition_instance(odd), ParameterError);
  CHECK_THROWS_AS(partition_instance(std::vector<Length>{}), ParameterError);
  CHECK_THROWS_AS(partition_instance(std::vector<Length>{0, 2}), ParameterError);
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const PartitionCase g = generate_partition(2 + static_cast<int>(seed % 7), 12, seed);
    std::vector<Length> v(g.numbers.begin(), g.numbers.end());
    CHECK(g.yes == oracle::equal_split(v));
    CHECK(g.yes == has_equal_split(g.numbers));
    Length total = 0;
    for (Length x : v) total += x;
    CHECK(total % 2 == 0);
    CHECK(g.instance.strip_width() == total / 2);
    CHECK(serialize_instance(g.instance) == serialize_instance(generate_partition(
                                                2 + static_cast<int>(seed % 7), 12, seed).instance));
  }
}

TEST_CASE("planted layouts") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    PlantedParams p;
    p.flushed = seed % 2 == 1;
    if (seed % 3 == 0) {
      p.strip_width = 20;
      p.height = 20;
    }
    const Planted pl = generate_planted(p, seed);
    CHECK(pl.opt_bound == p.height);
    CHECK(oracle::feasible(pl.instance, pl.packing));
    CHECK(pl.packing.height <= p.height);
    CHECK(oracle::separable(oracle::rects_of(pl.instance, pl.packing)));
    CHECK(planted_certificate(pl).rfind("opt <= " + std::to_string(p.height) + "\n", 0) == 0);
    CHECK(parse_layout(serialize_layout(pl.layout)) == pl.layout);
    // Same seed, same bytes.
    const Planted again = generate_planted(p, seed);
    CHECK(serialize_instance(again.instance) == serialize_instance(pl.instance));
    CHECK(planted_certificate(again) == planted_certificate(pl));
    // Every item lies in a box of the layout (flushed tall items excepted)
    // and its class is stable over the guessed range.
    const Length hi = ceil_scaled(Rational(1) + p.epsilon, p.height) + 1;
    for (Length opt = p.height; opt <= hi; ++opt) {
      ConstantOptions co;
      co.container_budget = p.container_budget;
      const ConstantProfile prof = choose_constants(p.epsilon, pl.instance, opt, co);
      const Classification cls = classify(pl.instance, opt, prof.delta, prof.mu);
      for (const Placement& q : pl.packing.placements) {
        const Rect r = placed_rect(pl.instance, q);
        CHECK(cls.of(q.item) != ItemClass::Medium);
        bool housed = false;
        for (const Container& c : pl.layout.containers) {
          if (!c.box.contains(r)) continue;
          housed = true;
          CHECK_FALSE(c.reserved);
          CHECK(admits(c.kind, cls.of(q.item)));
        }
        if (!housed) CHECK((p.flushed && cls.of(q.item) == ItemClass::Tall && q.bottom == 0));
      }
    }
  }
}
