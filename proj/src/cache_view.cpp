#include "dvml/cache_view.hpp"

#include "dvml/memory_view.hpp"

namespace dvml {

namespace {

/// Serial cursor over the cache. Materialization is deferred to the
/// first advance so that opening the cursor reads nothing.
class CacheCursor final : public RowCursor {
 public:
  CacheCursor(std::shared_ptr<const CacheView> view, std::vector<char> mask)
      : view_(std::move(view)), mask_(std::move(mask)), slots_(mask_.size(), nullptr) {}

  const Schema& schema() const override { return view_->schema(); }
  bool is_active(size_t col) const override { return col < mask_.size() && mask_[col]; }

 protected:
  bool do_move_next() override {
    if (!primed_) {
      view_->ensure_materialized(mask_);
      rows_ = view_->materialized_rows();
      for (size_t c = 0; c < mask_.size(); ++c) {
        if (!mask_[c]) continue;
        stores_.push_back(view_->store(c));  // keep alive
        dispatch_column_type(schema().type(c), [&](auto tag) {
          using T = typename decltype(tag)::type;
          slots_[c] = &stores_.back()->data<T>();
        });
      }
      primed_ = true;
    }
    if (static_cast<uint64_t>(position_ + 1) >= rows_) return false;
    ++position_;
    return true;
  }

  std::any getter_any(size_t col) override {
    return dispatch_column_type(schema().type(col), [&](auto tag) -> std::any {
      using T = typename decltype(tag)::type;
      return ValueGetter<T>([this, col](T& out) {
        check_readable();
        const auto* vec = static_cast<const std::vector<T>*>(slots_[col]);
        copy_value((*vec)[static_cast<size_t>(position_)], out);
      });
    });
  }

 private:
  std::shared_ptr<const CacheView> view_;
  std::vector<char> mask_;
  std::vector<const void*> slots_;
  std::vector<std::shared_ptr<const ColumnStore>> stores_;
  uint64_t rows_ = 0;
  bool primed_ = false;
};

/// Cursor-set members that materialize on first advance, then delegate
/// to an in-memory strided set over the cached stores.
struct LazySetState {
  std::shared_ptr<const CacheView> view;
  ActiveColumns active;
  std::vector<char> mask;
  size_t n;
  std::mutex mu;
  bool made = false;
  std::shared_ptr<const InMemoryView> table;
  std::vector<std::unique_ptr<RowCursor>> inner;

  RowCursor* member(size_t i) {
    std::lock_guard<std::mutex> lock(mu);
    if (!made) {
      view->ensure_materialized(mask);
      std::vector<std::shared_ptr<const ColumnStore>> stores;
      stores.reserve(mask.size());
      for (size_t c = 0; c < mask.size(); ++c)
        stores.push_back(mask[c] ? view->store(c) : nullptr);
      table = std::make_shared<InMemoryView>(view->schema(), std::move(stores),
                                             view->materialized_rows());
      inner = table->cursor_set(active, n);
      made = true;
    }
    return inner[i].get();
  }
};

class LazySetMember final : public RowCursor {
 public:
  LazySetMember(std::shared_ptr<LazySetState> state, size_t index)
      : state_(std::move(state)), index_(index) {}

  const Schema& schema() const override { return state_->view->schema(); }
  bool is_active(size_t col) const override {
    return col < state_->mask.size() && state_->mask[col];
  }
  uint64_t batch() const override { return inner_ ? inner_->batch() : 0; }
  const void* set_token() const override { return state_.get(); }

 protected:
  bool do_move_next() override {
    if (!inner_) inner_ = state_->member(index_);
    if (!inner_->move_next()) return false;
    position_ = inner_->position();
    return true;
  }

  std::any getter_any(size_t col) override {
    return dispatch_column_type(schema().type(col), [&](auto tag) -> std::any {
      using T = typename decltype(tag)::type;
      return ValueGetter<T>([this, col, g = ValueGetter<T>{}](T& out) mutable {
        check_readable();
        if (!g) g = inner_->get_getter<T>(col);
        g(out);
      });
    });
  }

 private:
  std::shared_ptr<LazySetState> state_;
  size_t index_;
  RowCursor* inner_ = nullptr;
};

}  // namespace

CacheView::CacheView(std::shared_ptr<const DataView> source, size_t limit_bytes)
    : source_(std::move(source)), limit_(limit_bytes) {
  stores_.resize(source_->schema().size());
}

std::optional<uint64_t> CacheView::row_count() const {
  if (auto n = source_->row_count()) return n;
  std::lock_guard<std::mutex> lock(mu_);
  return rows_;
}

void CacheView::ensure_materialized(const std::vector<char>& mask) const {
  std::lock_guard<std::mutex> lock(mu_);
  std::vector<size_t> missing;
  for (size_t c = 0; c < mask.size(); ++c) {
    if (mask[c] && !stores_[c]) missing.push_back(c);
  }
  if (missing.empty()) return;

  auto cur = source_->cursor(ActiveColumns::of(missing));
  std::vector<std::shared_ptr<ColumnStore>> fresh;
  std::vector<std::function<void()>> appenders;
  fresh.reserve(missing.size());
  for (size_t c : missing) {
    fresh.push_back(std::make_shared<ColumnStore>(source_->schema().type(c)));
    appenders.push_back(fresh.back()->make_appender(*cur, c));
  }
  uint64_t rows = 0;
  while (cur->move_next()) {
    for (auto& a : appenders) a();
    ++rows;
    if ((rows & 0x3ff) == 0) {
      size_t pending = 0;
      for (const auto& s : fresh) pending += s->approx_bytes();
      if (bytes_used_ + pending > limit_)
        throw ResourceLimitError("cache memory limit exceeded (" + std::to_string(limit_) +
                                 " bytes)");
    }
  }
  size_t pending = 0;
  for (const auto& s : fresh) pending += s->approx_bytes();
  if (bytes_used_ + pending > limit_)
    throw ResourceLimitError("cache memory limit exceeded (" + std::to_string(limit_) + " bytes)");

  if (rows_ && *rows_ != rows)
    throw ExecutionError("cache: source row count changed between passes");
  rows_ = rows;
  bytes_used_ += pending;
  for (size_t i = 0; i < missing.size(); ++i) stores_[missing[i]] = fresh[i];
}

uint64_t CacheView::materialized_rows() const {
  std::lock_guard<std::mutex> lock(mu_);
  return rows_.value_or(0);
}

std::shared_ptr<const ColumnStore> CacheView::store(size_t col) const {
  std::lock_guard<std::mutex> lock(mu_);
  return stores_.at(col);
}

std::unique_ptr<RowCursor> CacheView::do_cursor(const ActiveColumns& active) const {
  return std::make_unique<CacheCursor>(shared_from_this(), active.mask(schema()));
}

std::vector<std::unique_ptr<RowCursor>> CacheView::do_cursor_set(const ActiveColumns& active,
                                                                 size_t n) const {
  std::vector<std::unique_ptr<RowCursor>> cursors;
  auto state = std::make_shared<LazySetState>();
  state->view = shared_from_this();
  state->active = active;
  state->mask = active.mask(schema());
  state->n = n;
  for (size_t i = 0; i < n; ++i) cursors.push_back(std::make_unique<LazySetMember>(state, i));
  return cursors;
}

std::shared_ptr<const DataView> cache(std::shared_ptr<const DataView> source, size_t limit_bytes) {
  return std::make_shared<CacheView>(std::move(source), limit_bytes);
}

}  // namespace dvml
