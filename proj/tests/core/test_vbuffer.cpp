#include <doctest.h>

#include <random>

#include "dvml/vbuffer.hpp"

using namespace dvml;

TEST_CASE("sparse to dense by definition") {
  auto v = VBuffer<float>::sparse(5, {1, 3}, {2.0f, 4.0f});
  auto d = densify(v);
  REQUIRE(d.is_dense());
  CHECK(d.values() == std::vector<float>{0, 2, 0, 4, 0});
}

TEST_CASE("all-default dense sparsifies to empty") {
  auto v = VBuffer<float>::dense({0, 0, 0});
  auto s = sparsify(v);
  CHECK_FALSE(s.is_dense());
  CHECK(s.length() == 3);
  CHECK(s.count() == 0);
}

TEST_CASE("sparse invariants are enforced") {
  CHECK_THROWS_AS(VBuffer<float>::sparse(3, {0, 0}, {1, 2}), InvalidArgumentError);
  CHECK_THROWS_AS(VBuffer<float>::sparse(3, {0, 3}, {1, 2}), InvalidArgumentError);
  CHECK_THROWS_AS(VBuffer<float>::sparse(3, {0}, {1, 2}), InvalidArgumentError);
}

TEST_CASE("densify after sparsify is the identity on random vectors") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<float> val(-3.f, 3.f);
  for (int trial = 0; trial < 300; ++trial) {
    size_t len = rng() % 24;
    VBuffer<float> v;
    if (rng() % 2 == 0) {
      std::vector<float> dense(len);
      for (auto& x : dense) x = (rng() % 3 == 0) ? 0.f : val(rng);
      v = VBuffer<float>::dense(std::move(dense));
    } else {
      std::vector<uint32_t> idx;
      std::vector<float> vals;
      for (size_t i = 0; i < len; ++i) {
        if (rng() % 3 == 0) {
          idx.push_back(static_cast<uint32_t>(i));
          vals.push_back(val(rng));
        }
      }
      v = VBuffer<float>::sparse(len, std::move(idx), std::move(vals));
    }
    CHECK(value_equal(densify(sparsify(v)), v));
    CHECK(value_equal(sparsify(densify(v)), v));
  }
}

TEST_CASE("emit_auto picks representation by stored/length ratio") {
  VBuffer<float> out;
  emit_auto<float>(8, {{1, 1.f}, {2, 2.f}, {5, 3.f}}, out);  // 3 < 8/2
  CHECK_FALSE(out.is_dense());
  emit_auto<float>(8, {{0, 1.f}, {1, 1.f}, {2, 1.f}, {3, 1.f}}, out);  // 4 == 8/2
  CHECK(out.is_dense());
  CHECK(out.get(3) == 1.f);
  CHECK(out.get(7) == 0.f);
}
