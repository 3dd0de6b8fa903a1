#include <condition_variable>
#include <deque>
#include <map>
#include <mutex>
#include <thread>

#include "dvml/column_store.hpp"
#include "dvml/data_view.hpp"

namespace dvml {

namespace {

// ---------------------------------------------------------------------
// Generic serial splitter: fallback cursor_set for views without a
// smarter partitioning. A shared coordinator drains a single serial
// cursor into fixed-size batches, assigned round-robin to members.
// ---------------------------------------------------------------------

struct SplitBatch {
  uint64_t seq = 0;
  uint64_t first_row = 0;
  size_t rows = 0;
  std::vector<std::unique_ptr<ColumnStore>> stores;  // per column; null when inactive
};

struct SerialSplitState {
  std::mutex mu;
  std::unique_ptr<RowCursor> base;
  std::vector<char> mask;
  size_t n;
  uint64_t next_seq = 0;
  uint64_t rows_read = 0;
  bool eof = false;
  std::vector<std::unique_ptr<ColumnStore>> staging;
  std::vector<std::function<void()>> appenders;
  std::vector<std::deque<SplitBatch>> queues;

  SerialSplitState(std::unique_ptr<RowCursor> b, std::vector<char> m, size_t members)
      : base(std::move(b)), mask(std::move(m)), n(members), queues(members) {
    const Schema& s = base->schema();
    staging.resize(s.size());
    for (size_t c = 0; c < s.size(); ++c) {
      if (!mask[c]) continue;
      staging[c] = std::make_unique<ColumnStore>(s.type(c));
      appenders.push_back(staging[c]->make_appender(*base, c));
    }
  }

  // Pulls one batch off the base cursor; caller holds the lock.
  bool produce_one() {
    if (eof) return false;
    size_t rows = 0;
    while (rows < kDefaultBatchRows) {
      if (!base->move_next()) {
        eof = true;
        break;
      }
      for (auto& a : appenders) a();
      ++rows;
    }
    if (rows == 0) return false;
    SplitBatch b;
    b.seq = next_seq++;
    b.first_row = rows_read;
    b.rows = rows;
    rows_read += rows;
    b.stores.resize(staging.size());
    for (size_t c = 0; c < staging.size(); ++c) {
      if (!staging[c]) continue;
      b.stores[c] = std::make_unique<ColumnStore>(staging[c]->type());
      staging[c]->transfer_to(*b.stores[c]);
    }
    queues[b.seq % n].push_back(std::move(b));
    return true;
  }

  std::optional<SplitBatch> pop_for(size_t member) {
    std::lock_guard<std::mutex> lock(mu);
    while (queues[member].empty()) {
      if (!produce_one() && queues[member].empty()) return std::nullopt;
    }
    SplitBatch b = std::move(queues[member].front());
    queues[member].pop_front();
    return b;
  }
};

class SerialSplitCursor final : public RowCursor {
 public:
  SerialSplitCursor(std::shared_ptr<SerialSplitState> state, size_t member, Schema schema)
      : state_(std::move(state)), member_(member), schema_(std::move(schema)) {
    mask_ = state_->mask;
  }

  const Schema& schema() const override { return schema_; }
  bool is_active(size_t col) const override { return col < mask_.size() && mask_[col]; }
  uint64_t batch() const override { return batch_ ? batch_->seq : 0; }
  const void* set_token() const override { return state_.get(); }

 protected:
  bool do_move_next() override {
    if (batch_ && static_cast<size_t>(row_in_batch_ + 1) < batch_->rows) {
      ++row_in_batch_;
      ++position_;
      return true;
    }
    auto next = state_->pop_for(member_);
    if (!next) return false;
    batch_.emplace(std::move(*next));
    row_in_batch_ = 0;
    position_ = static_cast<int64_t>(batch_->first_row);
    return true;
  }

  std::any getter_any(size_t col) override {
    return dispatch_column_type(schema_.type(col), [&](auto tag) -> std::any {
      using T = typename decltype(tag)::type;
      return ValueGetter<T>([this, col](T& out) {
        check_readable();
        copy_value(batch_->stores[col]->data<T>()[static_cast<size_t>(row_in_batch_)], out);
      });
    });
  }

 private:
  std::shared_ptr<SerialSplitState> state_;
  size_t member_;
  Schema schema_;
  std::vector<char> mask_;
  std::optional<SplitBatch> batch_;
  int64_t row_in_batch_ = -1;
};

// ---------------------------------------------------------------------
// Consolidator: drives cursor-set members on worker threads and re-emits
// their batches in splitter sequence order, restoring the serial scan.
// ---------------------------------------------------------------------

struct OutBatch {
  uint64_t seq = 0;
  size_t rows = 0;
  std::vector<std::unique_ptr<ColumnStore>> stores;
};

class ConsolidatedCursor final : public RowCursor {
 public:
  explicit ConsolidatedCursor(std::vector<std::unique_ptr<RowCursor>> members)
      : schema_(members[0]->schema()), pending_(std::move(members)) {
    mask_.resize(schema_.size(), 0);
    for (size_t c = 0; c < schema_.size(); ++c) mask_[c] = pending_[0]->is_active(c) ? 1 : 0;
    window_ = std::max<size_t>(2 * pending_.size(), 8);
    producers_alive_ = pending_.size();
  }

  ~ConsolidatedCursor() override {
    {
      std::lock_guard<std::mutex> lock(mu_);
      cancel_ = true;
    }
    cv_space_.notify_all();
    cv_data_.notify_all();
    for (auto& w : workers_) {
      if (w.joinable()) w.join();
    }
  }

  const Schema& schema() const override { return schema_; }
  bool is_active(size_t col) const override { return col < mask_.size() && mask_[col]; }
  uint64_t batch() const override { return current_ ? current_->seq : 0; }

 protected:
  bool do_move_next() override {
    if (!started_) start_producers();
    if (current_ && static_cast<size_t>(row_in_batch_ + 1) < current_->rows) {
      ++row_in_batch_;
      ++position_;
      return true;
    }
    std::unique_lock<std::mutex> lock(mu_);
    while (true) {
      if (error_) std::rethrow_exception(error_);
      auto it = ready_.begin();
      if (it != ready_.end() && (it->first == next_emit_ || producers_alive_ == 0)) {
        current_.emplace(std::move(it->second));
        ready_.erase(it);
        next_emit_ = current_->seq + 1;
        cv_space_.notify_all();
        row_in_batch_ = 0;
        ++position_;
        return true;
      }
      if (producers_alive_ == 0) return false;
      cv_data_.wait(lock);
    }
  }

  std::any getter_any(size_t col) override {
    return dispatch_column_type(schema_.type(col), [&](auto tag) -> std::any {
      using T = typename decltype(tag)::type;
      return ValueGetter<T>([this, col](T& out) {
        check_readable();
        copy_value(current_->stores[col]->data<T>()[static_cast<size_t>(row_in_batch_)], out);
      });
    });
  }

 private:
  void start_producers() {
    started_ = true;
    workers_.reserve(pending_.size());
    for (auto& m : pending_) {
      workers_.emplace_back([this, cur = std::move(m)]() mutable { run_producer(std::move(cur)); });
    }
    pending_.clear();
  }

  void run_producer(std::unique_ptr<RowCursor> cur) {
    try {
      std::vector<std::function<void(OutBatch&)>> appenders;
      for (size_t c = 0; c < schema_.size(); ++c) {
        if (!mask_[c]) continue;
        dispatch_column_type(schema_.type(c), [&](auto tag) {
          using T = typename decltype(tag)::type;
          appenders.push_back(
              [getter = cur->get_getter<T>(c), c](OutBatch& b) mutable {
                auto& vec = b.stores[c]->data<T>();
                vec.emplace_back();
                getter(vec.back());
              });
        });
      }
      std::optional<OutBatch> batch;
      while (cur->move_next()) {
        uint64_t seq = cur->batch();
        if (!batch || batch->seq != seq) {
          if (batch && !emit(std::move(*batch))) return;
          batch.emplace();
          batch->seq = seq;
          batch->stores.resize(schema_.size());
          for (size_t c = 0; c < schema_.size(); ++c) {
            if (mask_[c]) batch->stores[c] = std::make_unique<ColumnStore>(schema_.type(c));
          }
        }
        for (auto& a : appenders) a(*batch);
        ++batch->rows;
      }
      if (batch) emit(std::move(*batch));
    } catch (...) {
      std::lock_guard<std::mutex> lock(mu_);
      if (!error_) error_ = std::current_exception();
    }
    {
      std::lock_guard<std::mutex> lock(mu_);
      --producers_alive_;
    }
    cv_data_.notify_all();
  }

  // Blocks until the batch fits the reorder window; false when cancelled.
  bool emit(OutBatch b) {
    std::unique_lock<std::mutex> lock(mu_);
    cv_space_.wait(lock, [&] { return cancel_ || error_ || b.seq < next_emit_ + window_; });
    if (cancel_ || error_) return false;
    ready_.emplace(b.seq, std::move(b));
    cv_data_.notify_all();
    return true;
  }

  Schema schema_;
  std::vector<char> mask_;
  std::vector<std::unique_ptr<RowCursor>> pending_;
  std::vector<std::thread> workers_;
  bool started_ = false;

  std::mutex mu_;
  std::condition_variable cv_space_, cv_data_;
  std::map<uint64_t, OutBatch> ready_;
  uint64_t next_emit_ = 0;
  size_t window_;
  size_t producers_alive_;
  bool cancel_ = false;
  std::exception_ptr error_;

  std::optional<OutBatch> current_;
  int64_t row_in_batch_ = -1;
};

}  // namespace

std::vector<std::unique_ptr<RowCursor>> DataView::do_cursor_set(const ActiveColumns& active,
                                                                size_t n) const {
  auto state = std::make_shared<SerialSplitState>(cursor(active), active.mask(schema()), n);
  Schema schema_copy = state->base->schema();
  std::vector<std::unique_ptr<RowCursor>> cursors;
  cursors.reserve(n);
  for (size_t i = 0; i < n; ++i) {
    cursors.push_back(std::make_unique<SerialSplitCursor>(state, i, schema_copy));
  }
  return cursors;
}

std::unique_ptr<RowCursor> consolidate(std::vector<std::unique_ptr<RowCursor>> cursors) {
  if (cursors.empty()) throw InvalidArgumentError("consolidate: empty cursor set");
  if (cursors.size() == 1) return std::move(cursors.front());
  const void* token = cursors.front()->set_token();
  if (token == nullptr)
    throw InvalidArgumentError("consolidate: cursors do not originate from a cursor-set request");
  for (const auto& c : cursors) {
    if (c->set_token() != token)
      throw InvalidArgumentError("consolidate: cursors come from different cursor sets");
  }
  return std::make_unique<ConsolidatedCursor>(std::move(cursors));
}

}  // namespace dvml
