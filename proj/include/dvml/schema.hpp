#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dvml/column_type.hpp"

namespace dvml {

/// Ordered column descriptors. Multiple columns may share a name; name
/// resolution returns the greatest index bearing the name, hiding the
/// earlier ones (which stay addressable by index).
class Schema {
 public:
  struct Column {
    std::string name;
    ColumnType type;
  };

  Schema() = default;
  explicit Schema(std::vector<Column> columns) : columns_(std::move(columns)) {}

  size_t size() const { return columns_.size(); }
  bool empty() const { return columns_.empty(); }
  const Column& column(size_t i) const { return columns_.at(i); }
  const std::string& name(size_t i) const { return columns_.at(i).name; }
  const ColumnType& type(size_t i) const { return columns_.at(i).type; }
  const std::vector<Column>& columns() const { return columns_; }

  Schema& add(std::string name, ColumnType type) {
    columns_.push_back({std::move(name), std::move(type)});
    return *this;
  }

  /// Greatest index whose name matches; absent when no column has it.
  std::optional<size_t> resolve(std::string_view name) const {
    for (size_t i = columns_.size(); i-- > 0;) {
      if (columns_[i].name == name) return i;
    }
    return std::nullopt;
  }

  /// Resolve or throw a SchemaError naming the column.
  size_t require(std::string_view name) const;

  /// True when a later column shares this column's name.
  bool is_hidden(size_t i) const {
    for (size_t j = i + 1; j < columns_.size(); ++j) {
      if (columns_[j].name == columns_[i].name) return true;
    }
    return false;
  }

  friend bool operator==(const Schema& a, const Schema& b) {
    if (a.columns_.size() != b.columns_.size()) return false;
    for (size_t i = 0; i < a.columns_.size(); ++i) {
      if (a.columns_[i].name != b.columns_[i].name || !(a.columns_[i].type == b.columns_[i].type))
        return false;
    }
    return true;
  }

 private:
  std::vector<Column> columns_;
};

}  // namespace dvml
