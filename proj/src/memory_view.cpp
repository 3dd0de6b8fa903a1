#include "dvml/memory_view.hpp"

namespace dvml {

namespace {

class MemoryCursor final : public RowCursor {
 public:
  MemoryCursor(const InMemoryView& view, std::vector<char> mask, uint64_t rows)
      : view_(view), mask_(std::move(mask)), rows_(rows) {}

  const Schema& schema() const override { return view_.schema(); }
  bool is_active(size_t col) const override { return col < mask_.size() && mask_[col]; }

 protected:
  bool do_move_next() override {
    if (static_cast<uint64_t>(position_ + 1) >= rows_) return false;
    ++position_;
    return true;
  }

  std::any getter_any(size_t col) override {
    return view_.store(col)->make_getter(this, &position_);
  }

 private:
  const InMemoryView& view_;
  std::vector<char> mask_;
  uint64_t rows_;
};

struct MemorySetToken {};

/// Member of an in-memory cursor set: walks the batches whose sequence
/// number is congruent to the member index.
class StridedMemoryCursor final : public RowCursor {
 public:
  StridedMemoryCursor(const InMemoryView& view, std::vector<char> mask, uint64_t rows,
                      size_t member, size_t n, std::shared_ptr<MemorySetToken> token)
      : view_(view),
        mask_(std::move(mask)),
        rows_(rows),
        stride_(n),
        batch_(member),
        token_(std::move(token)) {
    batch_end_ = 0;  // forces first batch jump
  }

  const Schema& schema() const override { return view_.schema(); }
  bool is_active(size_t col) const override { return col < mask_.size() && mask_[col]; }
  uint64_t batch() const override { return batch_; }
  const void* set_token() const override { return token_.get(); }

 protected:
  bool do_move_next() override {
    uint64_t next = static_cast<uint64_t>(position_ + 1);
    if (next >= batch_end_) {
      if (started_) batch_ += stride_;
      started_ = true;
      uint64_t start = batch_ * kDefaultBatchRows;
      if (start >= rows_) return false;
      batch_end_ = std::min(rows_, start + kDefaultBatchRows);
      position_ = static_cast<int64_t>(start);
      return true;
    }
    ++position_;
    return true;
  }

  std::any getter_any(size_t col) override {
    return view_.store(col)->make_getter(this, &position_);
  }

 private:
  const InMemoryView& view_;
  std::vector<char> mask_;
  uint64_t rows_;
  size_t stride_;
  uint64_t batch_;
  uint64_t batch_end_ = 0;
  bool started_ = false;
  std::shared_ptr<MemorySetToken> token_;
};

}  // namespace

InMemoryView::InMemoryView(Schema schema, std::vector<std::shared_ptr<const ColumnStore>> columns,
                           uint64_t rows)
    : schema_(std::move(schema)), columns_(std::move(columns)), rows_(rows) {
  if (schema_.size() != columns_.size())
    throw InvalidArgumentError("InMemoryView: schema/store count mismatch");
}

std::unique_ptr<RowCursor> InMemoryView::do_cursor(const ActiveColumns& active) const {
  return std::make_unique<MemoryCursor>(*this, active.mask(schema_), rows_);
}

std::vector<std::unique_ptr<RowCursor>> InMemoryView::do_cursor_set(const ActiveColumns& active,
                                                                    size_t n) const {
  auto token = std::make_shared<MemorySetToken>();
  std::vector<std::unique_ptr<RowCursor>> cursors;
  cursors.reserve(n);
  for (size_t i = 0; i < n; ++i) {
    cursors.push_back(
        std::make_unique<StridedMemoryCursor>(*this, active.mask(schema_), rows_, i, n, token));
  }
  return cursors;
}

TableBuilder& TableBuilder::add_store(std::string name, std::shared_ptr<ColumnStore> store) {
  schema_.add(std::move(name), store->type());
  columns_.push_back(std::move(store));
  return *this;
}

std::shared_ptr<InMemoryView> TableBuilder::build() {
  uint64_t rows = columns_.empty() ? 0 : columns_.front()->size();
  for (const auto& c : columns_) {
    if (c->size() != rows) throw InvalidArgumentError("TableBuilder: column length mismatch");
  }
  return std::make_shared<InMemoryView>(std::move(schema_), std::move(columns_), rows);
}

std::shared_ptr<InMemoryView> materialize(const DataView& view) {
  const Schema& schema = view.schema();
  auto cur = view.cursor(ActiveColumns::all());
  std::vector<std::shared_ptr<ColumnStore>> stores;
  std::vector<std::function<void()>> appenders;
  stores.reserve(schema.size());
  for (size_t c = 0; c < schema.size(); ++c) {
    stores.push_back(std::make_shared<ColumnStore>(schema.type(c)));
    appenders.push_back(stores.back()->make_appender(*cur, c));
  }
  uint64_t rows = 0;
  while (cur->move_next()) {
    for (auto& a : appenders) a();
    ++rows;
  }
  std::vector<std::shared_ptr<const ColumnStore>> frozen(stores.begin(), stores.end());
  return std::make_shared<InMemoryView>(schema, std::move(frozen), rows);
}

}  // namespace dvml
