#include <doctest.h>

#include "vsacap/setalg.hpp"

using namespace vsacap;

TEST_SUITE("setalg") {

TEST_CASE("intersection, wedgedot and distances") {
  const SymbolSet x(10, {1, 2, 3, 7});
  const SymbolSet y(10, {2, 3, 4});
  CHECK(intersection_size(x, y) == 2);
  CHECK(wedgedot(x, y) == 2);
  CHECK(symmetric_difference_size(x, y) == 3);
  CHECK(l1_distance(x, y) == 3);
  CHECK(intersection_size(x, SymbolSet(10)) == 0);
  CHECK_THROWS(intersection_size(x, SymbolSet(11)));
}

TEST_CASE("weighted sets") {
  SymbolSet v(3), w(3);
  v.set(0, 1);
  v.set(1, 2);
  w.set(1, 2);
  w.set(2, 3);
  CHECK(l1_distance(v, w) == 4);
  CHECK(wedgedot(v, w) == 2);
  CHECK(intersection_size(v, w) == 4);
  CHECK(v.l1_norm() == 3);
  CHECK(w.linf_norm() == 3);
  CHECK_FALSE(w.is_binary());
  CHECK_THROWS(symmetric_difference_size(v, w));
  const auto sum = v + w;
  CHECK(sum.weight(1) == 4);
  CHECK(sum.l1_norm() == v.l1_norm() + w.l1_norm());
}

TEST_CASE("construction errors") {
  CHECK_THROWS_AS(SymbolSet(5, {5}), std::out_of_range);
  CHECK_THROWS(SymbolSet(0));
  SymbolSet s(4);
  s.set(2, 3);
  s.set(2, 0);
  CHECK(s.empty());
}

TEST_CASE("json round trip") {
  SymbolSet s(100);
  s.set(3, 2);
  s.set(50, 1);
  CHECK(SymbolSet::from_json(s.to_json()) == s);
  CHECK_THROWS(SymbolSet::from_json(nlohmann::json{{"d", 5}, {"entries", {{1, 1}, {1, 2}}}}));
  CHECK_THROWS(SymbolSet::from_json(nlohmann::json{{"d", 5}, {"entries", {{1, 0}}}}));
}

TEST_CASE("sequence overlap and flattening") {
  SequenceSpec seq{{SymbolSet(5, {0, 1}), SymbolSet(5, {1}), SymbolSet(5, {1, 4})}};
  CHECK(seq.length() == 3);
  CHECK(seq.overlap() == 3);
  const auto flat = seq.flatten();
  CHECK(flat.universe() == 15);
  CHECK(flat.contains(6));
  CHECK(flat.contains(14));
  CHECK(flat.l1_norm() == 5);
  SequenceSpec bad{{SymbolSet(5), SymbolSet(6)}};
  CHECK_THROWS(bad.validate());
}

TEST_CASE("binding bundle validation") {
  BindingBundleSpec ok{10, 2, {{0, 1}, {2, 3}}};
  CHECK_NOTHROW(ok.validate());
  CHECK_THROWS(BindingBundleSpec{10, 2, {{0, 1}, {1, 2, 3}}}.validate());
  CHECK_THROWS(BindingBundleSpec{10, 2, {{4, 4}}}.validate());
  CHECK_THROWS(BindingBundleSpec{10, 2, {{0, 1}, {1, 0}}}.validate());
  CHECK_THROWS(BindingBundleSpec{10, 2, {{0, 10}}}.validate());
  CHECK_THROWS(BindingBundleSpec{10, 1, {{0}}}.validate());
}

}
