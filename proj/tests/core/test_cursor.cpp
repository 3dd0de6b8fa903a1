#include <doctest.h>

#include "alloc_counter.hpp"
#include "counting_view.hpp"
#include "dvml/memory_view.hpp"
#include "random_table.hpp"
#include "scan_util.hpp"

using namespace dvml;

namespace {
std::shared_ptr<InMemoryView> small_table() {
  return TableBuilder{}
      .add_scalars<float>("x", {1.5f, 2.5f, 3.5f})
      .add_scalars<int32_t>("n", {10, 20, 30})
      .build();
}
}  // namespace

TEST_CASE("move_next walks the rows and then reports Done") {
  auto t = small_table();
  auto cur = t->cursor();
  CHECK(cur->state() == CursorState::NotStarted);
  CHECK(cur->position() == -1);
  CHECK(cur->move_next());
  CHECK(cur->move_next());
  CHECK(cur->move_next());
  CHECK_FALSE(cur->move_next());
  CHECK(cur->state() == CursorState::Done);
  CHECK_THROWS_AS(cur->move_next(), ContractError);
}

TEST_CASE("empty view: first advance returns false") {
  auto t = TableBuilder{}.add_scalars<float>("x", {}).build();
  auto cur = t->cursor();
  CHECK_FALSE(cur->move_next());
}

TEST_CASE("getters produce the stored values in order") {
  auto t = small_table();
  auto cur = t->cursor();
  auto gx = cur->get_getter<float>(0);
  auto gn = cur->get_getter<int32_t>(1);
  std::vector<float> xs;
  std::vector<int32_t> ns;
  float x = 0;
  int32_t n = 0;
  while (cur->move_next()) {
    gx(x);
    gn(n);
    xs.push_back(x);
    ns.push_back(n);
  }
  CHECK(xs == std::vector<float>{1.5f, 2.5f, 3.5f});
  CHECK(ns == std::vector<int32_t>{10, 20, 30});
}

TEST_CASE("getter misuse and acquisition-time checks") {
  auto t = small_table();

  SUBCASE("inactive column: acquisition fails") {
    auto cur = t->cursor(ActiveColumns::of({0}));
    CHECK_THROWS_AS(cur->get_getter<int32_t>(1), InactiveColumnError);
  }
  SUBCASE("type mismatch: acquisition fails") {
    auto cur = t->cursor();
    CHECK_THROWS_AS(cur->get_getter<double>(0), TypeMismatchError);
    CHECK_THROWS_AS(cur->get_getter<VBuffer<float>>(0), TypeMismatchError);
  }
  SUBCASE("out-of-range column") {
    auto cur = t->cursor();
    CHECK_THROWS_AS(cur->get_getter<float>(9), InvalidColumnError);
    CHECK_THROWS_AS(t->cursor(ActiveColumns::of({7})), InvalidColumnError);
  }
  SUBCASE("call before first advance / after Done is a contract violation") {
    auto cur = t->cursor();
    auto g = cur->get_getter<float>(0);
    float v = 0;
    CHECK_THROWS_AS(g(v), ContractError);
    while (cur->move_next()) {
    }
    CHECK_THROWS_AS(g(v), ContractError);
  }
}

TEST_CASE("determinism: two full scans yield identical value sequences") {
  auto t = testsupport::make_random_table(3, 257);
  CHECK(testsupport::scan_bytes(*t) == testsupport::scan_bytes(*t));
}

TEST_CASE("empty active set counts rows without touching columns") {
  auto inner = small_table();
  testsupport::CountingView view(inner);
  auto cur = view.cursor(ActiveColumns::none());
  size_t rows = 0;
  while (cur->move_next()) ++rows;
  CHECK(rows == 3);
  CHECK(view.total_reads() == 0);
}

TEST_CASE("cursor creation reads nothing until the first advance") {
  auto view = std::make_shared<testsupport::CountingView>(small_table());
  auto cur = view->cursor(ActiveColumns::all());
  auto g = cur->get_getter<float>(0);
  CHECK(view->rows_advanced() == 0);
  CHECK(view->total_reads() == 0);
  CHECK(cur->move_next());
  float v = 0;
  g(v);
  CHECK(view->rows_advanced() == 1);
  CHECK(view->column_reads(0) == 1);
  CHECK(view->column_reads(1) == 0);  // active but never read
}

TEST_CASE("steady-state primitive iteration allocates nothing") {
  const size_t rows = 1'000'000;
  std::vector<float> xs(rows);
  for (size_t i = 0; i < rows; ++i) xs[i] = static_cast<float>(i);
  auto t = TableBuilder{}.add_scalars("x", std::move(xs)).build();

  auto cur = t->cursor();
  auto g = cur->get_getter<float>(0);
  float v = 0;
  // warmup
  REQUIRE(cur->move_next());
  g(v);

  testsupport::AllocProbe probe;
  double sum = 0;
  while (cur->move_next()) {
    g(v);
    sum += v;
  }
  CHECK(probe.delta() == 0);
  CHECK(sum > 0);
}

TEST_CASE("vector getter reuses an adequately sized caller buffer") {
  auto vec = VBuffer<float>::dense({1, 2, 3, 4});
  auto t = TableBuilder{}
               .add_vectors<float>("v", 4, {vec, vec})
               .build();
  auto cur = t->cursor();
  auto g = cur->get_getter<VBuffer<float>>(0);

  VBuffer<float> buf;
  REQUIRE(cur->move_next());
  g(buf);
  CHECK(buf.values() == std::vector<float>{1, 2, 3, 4});

  const float* data_before = buf.values().data();
  testsupport::AllocProbe probe;
  REQUIRE(cur->move_next());
  g(buf);
  CHECK(probe.delta() == 0);
  CHECK(buf.values().data() == data_before);  // same storage, no realloc
  CHECK(buf.values() == std::vector<float>{1, 2, 3, 4});
}
