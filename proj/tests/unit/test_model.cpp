#include <doctest.h>

#include <random>

#include "../support/oracles.hpp"
#include "gspkit/errors.hpp"
#include "gspkit/model.hpp"

using namespace gspkit;

namespace {

Instance make(Length W, std::vector<std::pair<Length, Length>> sizes) {
  return Instance::from_sizes(W, sizes);
}

}  // namespace

TEST_CASE("rational arithmetic stays exact") {
  const Rational a(1, 4);
  CHECK(a + Rational(1, 4) == Rational(1, 2));
  CHECK(a * Rational(4) == Rational(1));
  CHECK(Rational(6, -4) == Rational(-3, 2));
  CHECK(Rational(-3, 2).floor() == -2);
  CHECK(Rational(-3, 2).ceil() == -1);
  CHECK(Rational::parse("3/12") == Rational(1, 4));
  CHECK(Rational::parse("7") == Rational(7));
  CHECK_THROWS_AS(Rational::parse("1/0"), ParameterError);
  CHECK_THROWS_AS(Rational::parse("x"), ParameterError);
  CHECK(floor_scaled(Rational(1, 3), 10) == 3);
  CHECK(ceil_scaled(Rational(1, 3), 10) == 4);
  CHECK(greater_than_scaled(6, Rational(1, 2), 10));
  CHECK_FALSE(greater_than_scaled(5, Rational(1, 2), 10));
  CHECK(at_most_scaled(5, Rational(1, 2), 10));
}

TEST_CASE("instance validation") {
  CHECK_THROWS_AS(make(0, {}), ParameterError);
  CHECK_THROWS_AS(make(3, {{4, 1}}), ParameterError);
  CHECK_THROWS_AS(make(3, {{0, 1}}), ParameterError);
  CHECK_THROWS_AS(make(3, {{1, 0}}), ParameterError);
  CHECK_THROWS_AS(Instance(3, {Item{1, 1, 1}}), ParameterError);
  const Instance inst = make(5, {{5, 4}, {2, 7}});
  CHECK(inst.total_area() == 34);
  CHECK(inst.max_height() == 7);
}

TEST_CASE("lower bound examples") {
  CHECK(lower_bound(make(10, {{10, 2}})) == 2);
  CHECK(lower_bound(make(3, {{1, 1}, {2, 1}, {3, 1}})) == 2);
  CHECK(lower_bound(make(5, {{5, 4}, {2, 7}})) == 7);
  CHECK(lower_bound(Instance(4, {})) == 0);
}

TEST_CASE("verify_packing reports problems") {
  const Instance inst = make(4, {{2, 3}, {2, 3}});
  CHECK(verify_packing(inst, make_packing(inst, {{0, 0, 0}, {1, 2, 0}})).ok());
  const PackingReport r = verify_packing(inst, make_packing(inst, {{0, 0, 0}, {1, 1, 1}}));
  CHECK_FALSE(r.ok());
  REQUIRE(r.overlaps.size() == 1);
  CHECK(r.overlaps[0] == std::pair<int, int>{0, 1});
  CHECK_FALSE(verify_packing(inst, make_packing(inst, {{0, 3, 0}, {1, 0, 0}})).ok());
  CHECK_FALSE(verify_packing(inst, make_packing(inst, {{0, 0, 0}})).ok());
  Packing wrong_height = make_packing(inst, {{0, 0, 0}, {1, 2, 0}});
  wrong_height.height = 2;
  CHECK_FALSE(verify_packing(inst, wrong_height).ok());
}

TEST_CASE("classification examples") {
  const Rational d(2, 5), m(1, 10);
  CHECK(classify_item(5, 6, 10, 10, d, m) == ItemClass::Tall);
  CHECK(classify_item(1, 1, 10, 10, d, m) == ItemClass::Small);
  CHECK(classify_item(3, 1, 10, 10, d, m) == ItemClass::Medium);
  // h = OPT/2 exactly is not tall.
  CHECK(classify_item(5, 5, 10, 10, d, m) == ItemClass::Large);
  CHECK(classify_item(4, 5, 10, 10, d, m) == ItemClass::Vertical);
  CHECK(classify_item(5, 1, 10, 10, d, m) == ItemClass::Horizontal);
  CHECK(classify_item(1, 3, 10, 10, d, m) == ItemClass::Medium);
  CHECK_THROWS_AS(classify(make(10, {{1, 1}}), 10, m, d), ParameterError);
  CHECK_THROWS_AS(classify(make(10, {{1, 1}}), 10, d, d), ParameterError);
}

TEST_CASE("classification is a partition matching the thresholds") {
  // Exhaustive over a grid, against the thresholds in cross-multiplied form.
  const Length W = 20, opt = 20;
  const Rational d(3, 10), m(1, 20);
  for (Length w = 1; w <= W; ++w) {
    for (Length h = 1; h <= opt; ++h) {
      const ItemClass c = classify_item(w, h, W, opt, d, m);
      const bool tall = 2 * h > opt;
      const bool big_h = h * d.den() > d.num() * opt;
      const bool wide = w * d.den() > d.num() * W;
      const bool flat = h * m.den() <= m.num() * opt;
      const bool thin = w * m.den() <= m.num() * W;
      if (tall) {
        CHECK(c == ItemClass::Tall);
      } else if (big_h) {
        CHECK(c == (wide ? ItemClass::Large : ItemClass::Vertical));
      } else if (flat && wide) {
        CHECK(c == ItemClass::Horizontal);
      } else if (flat && thin) {
        CHECK(c == ItemClass::Small);
      } else {
        CHECK(c == ItemClass::Medium);
      }
    }
  }
}

TEST_CASE("constant profile formulas") {
  const Instance inst = make(10, {{1, 1}});
  ConstantOptions o;
  o.container_budget = 2;
  const ConstantProfile p = choose_constants(Rational(1, 2), inst, 10, o);
  CHECK(p.window == 1);
  CHECK(p.medium_area_ok);
  CHECK(p.delta == Rational(1, 16));  // f(1/2) = (1/2)(1/2)/4
  CHECK(p.mu == Rational(1, 128));    // f(1/16)
  CHECK(p.eps1 == Rational(1, 6));
  CHECK(p.eps2 == Rational(1, 16));
  CHECK(p.eps3 == Rational(1, 48));
  CHECK(p.eps4 == p.mu);
  CHECK(p.eps5 == p.eps1 * p.delta / Rational(6));
  CHECK(p.eps6 == Rational(1, 2) * p.delta / Rational(6));
  CHECK(p.mu <= p.delta * p.epsilon / Rational(4));
  CHECK_THROWS_AS(choose_constants(Rational(2, 5), inst, 10, o), ParameterError);
  CHECK_THROWS_AS(choose_constants(Rational(1), inst, 10, o), ParameterError);
}

TEST_CASE("medium area concentrated in the first window selects the second") {
  // g = 1, eps = 1/2: windows (1/4, 1/8), (1/8, 1/16), ...
  ConstantOptions o;
  o.container_budget = 1;
  const Length W = 16, opt = 16;
  // Height 3 lies in (opt/8, opt/4] = (2, 4]: medium for window 1 only.
  std::vector<std::pair<Length, Length>> sizes(8, {2, 3});
  const Instance inst = Instance::from_sizes(W, sizes);
  CHECK(medium_area(inst, opt, Rational(1, 4), Rational(1, 8)) == 48);
  CHECK(medium_area(inst, opt, Rational(1, 8), Rational(1, 16)) == 0);
  const ConstantProfile p = choose_constants(Rational(1, 2), inst, opt, o);
  CHECK(p.window == 1);  // 48 <= eps * opt * W = 128
  std::vector<std::pair<Length, Length>> heavy(20, {4, 3});
  const Instance dense = Instance::from_sizes(W, heavy);
  REQUIRE(medium_area(dense, opt, Rational(1, 4), Rational(1, 8)) > 128);
  const ConstantProfile q = choose_constants(Rational(1, 2), dense, opt, o);
  CHECK(q.window == 2);
  CHECK(q.delta == Rational(1, 8));
  CHECK(q.medium_area_ok);
}

TEST_CASE("choose_constants satisfies the medium-area inequality on fuzzed input") {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 200; ++t) {
    const Instance inst = oracle::random_instance(rng, 30, 50, 40);
    const Length opt = lower_bound(inst);
    ConstantOptions o;
    o.container_budget = 1 + t % 3;
    const ConstantProfile p = choose_constants(Rational(1, 4), inst, opt, o);
    CHECK(p.delta > p.mu);
    CHECK(p.delta <= Rational(1, 4));
    // Direct summation by the oracle thresholds.
    Length area = 0;
    for (const Item& it : inst.items()) {
      const bool tall = 2 * it.height > opt;
      const bool big_h = greater_than_scaled(it.height, p.delta, opt);
      const bool medium_h = !big_h && greater_than_scaled(it.height, p.mu, opt);
      const bool medium_w = !greater_than_scaled(it.width, p.delta, inst.strip_width()) &&
                            greater_than_scaled(it.width, p.mu, inst.strip_width());
      if (!tall && !big_h && (medium_h || medium_w)) area += it.area();
    }
    CHECK(area == p.medium_area);
    if (p.medium_area_ok) {
      CHECK(Rational(area) <= Rational(1, 4) * Rational(opt) * Rational(inst.strip_width()));
    }
  }
}
