#pragma once

#include <memory>
#include <string>
#include <vector>

#include "dvml/column_store.hpp"
#include "dvml/data_view.hpp"

namespace dvml {

/// Fully materialized view over column stores. Row count is known and
/// cursors are random-access underneath, so cursor sets need no
/// coordination: member i serves the batches with sequence % n == i.
class InMemoryView final : public DataView {
 public:
  InMemoryView(Schema schema, std::vector<std::shared_ptr<const ColumnStore>> columns,
               uint64_t rows);

  const Schema& schema() const override { return schema_; }
  std::optional<uint64_t> row_count() const override { return rows_; }

  const std::shared_ptr<const ColumnStore>& store(size_t col) const { return columns_.at(col); }

 protected:
  std::unique_ptr<RowCursor> do_cursor(const ActiveColumns& active) const override;
  std::vector<std::unique_ptr<RowCursor>> do_cursor_set(const ActiveColumns& active,
                                                        size_t n) const override;

 private:
  Schema schema_;
  std::vector<std::shared_ptr<const ColumnStore>> columns_;
  uint64_t rows_;
};

/// Column-at-a-time construction of an InMemoryView; all columns must be
/// the same length.
class TableBuilder {
 public:
  template <typename T>
  TableBuilder& add_scalars(std::string name, std::vector<T> values) {
    auto store = std::make_shared<ColumnStore>(ColumnType::scalar(kind_of<T>));
    store->assign(std::move(values));
    return add_store(std::move(name), std::move(store));
  }

  TableBuilder& add_texts(std::string name, std::vector<std::string> values) {
    std::vector<TextValue> cells;
    cells.reserve(values.size());
    for (auto& v : values) cells.emplace_back(std::move(v));
    return add_scalars(std::move(name), std::move(cells));
  }

  template <typename T>
  TableBuilder& add_vectors(std::string name, std::optional<uint64_t> size,
                            std::vector<VBuffer<T>> values) {
    auto store = std::make_shared<ColumnStore>(ColumnType::vector(kind_of<T>, size));
    store->assign(std::move(values));
    return add_store(std::move(name), std::move(store));
  }

  TableBuilder& add_store(std::string name, std::shared_ptr<ColumnStore> store);

  std::shared_ptr<InMemoryView> build();

 private:
  Schema schema_;
  std::vector<std::shared_ptr<const ColumnStore>> columns_;
};

/// Scan a view to completion into an InMemoryView (all columns active).
std::shared_ptr<InMemoryView> materialize(const DataView& view);

}  // namespace dvml
