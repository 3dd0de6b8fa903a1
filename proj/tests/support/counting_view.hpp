#pragma once

#include <atomic>
#include <memory>

#include "dvml/column_store.hpp"
#include "dvml/data_view.hpp"

// Pass-through view that counts reads: cursors opened, rows advanced and
// per-column getter calls. The instrumented-loader stand-in for laziness
// and active-column pruning assertions.
namespace testsupport {

class CountingView final : public dvml::DataView {
 public:
  struct Counters {
    std::atomic<uint64_t> cursors_opened{0};
    std::atomic<uint64_t> rows_advanced{0};
    std::vector<std::unique_ptr<std::atomic<uint64_t>>> column_reads;
  };

  explicit CountingView(std::shared_ptr<const dvml::DataView> inner)
      : inner_(std::move(inner)), counters_(std::make_shared<Counters>()) {
    for (size_t i = 0; i < inner_->schema().size(); ++i)
      counters_->column_reads.push_back(std::make_unique<std::atomic<uint64_t>>(0));
  }

  const dvml::Schema& schema() const override { return inner_->schema(); }
  std::optional<uint64_t> row_count() const override { return inner_->row_count(); }

  uint64_t cursors_opened() const { return counters_->cursors_opened.load(); }
  uint64_t rows_advanced() const { return counters_->rows_advanced.load(); }
  uint64_t column_reads(size_t col) const { return counters_->column_reads.at(col)->load(); }
  uint64_t total_reads() const {
    uint64_t t = 0;
    for (const auto& c : counters_->column_reads) t += c->load();
    return t;
  }

 protected:
  std::unique_ptr<dvml::RowCursor> do_cursor(const dvml::ActiveColumns& active) const override {
    counters_->cursors_opened.fetch_add(1);
    return std::make_unique<Cursor>(inner_->cursor(active), counters_);
  }

 private:
  class Cursor final : public dvml::RowCursor {
   public:
    Cursor(std::unique_ptr<dvml::RowCursor> inner, std::shared_ptr<Counters> counters)
        : inner_(std::move(inner)), counters_(std::move(counters)) {}

    const dvml::Schema& schema() const override { return inner_->schema(); }
    bool is_active(size_t col) const override { return inner_->is_active(col); }
    uint64_t batch() const override { return inner_->batch(); }
    const void* set_token() const override { return inner_->set_token(); }

   protected:
    bool do_move_next() override {
      if (!inner_->move_next()) return false;
      position_ = inner_->position();
      counters_->rows_advanced.fetch_add(1);
      return true;
    }

    std::any getter_any(size_t col) override {
      return dvml::dispatch_column_type(schema().type(col), [&](auto tag) -> std::any {
        using T = typename decltype(tag)::type;
        auto g = inner_->get_getter<T>(col);
        auto* ctr = counters_->column_reads[col].get();
        return dvml::ValueGetter<T>([g = std::move(g), ctr](T& out) mutable {
          ctr->fetch_add(1, std::memory_order_relaxed);
          g(out);
        });
      });
    }

   private:
    std::unique_ptr<dvml::RowCursor> inner_;
    std::shared_ptr<Counters> counters_;
  };

  std::shared_ptr<const dvml::DataView> inner_;
  std::shared_ptr<Counters> counters_;
};

}  // namespace testsupport
