#pragma once

#include <functional>
#include <variant>
#include <vector>

#include "dvml/data_view.hpp"

namespace dvml {

template <typename T>
struct TypeTag {
  using type = T;
};

/// Invoke f with a TypeTag for the runtime value type of a kind.
template <typename F>
decltype(auto) dispatch_kind(DataKind k, F&& f) {
  switch (k) {
    case DataKind::Bool:
      return f(TypeTag<uint8_t>{});
    case DataKind::I4:
      return f(TypeTag<int32_t>{});
    case DataKind::R4:
      return f(TypeTag<float>{});
    case DataKind::R8:
      return f(TypeTag<double>{});
    case DataKind::Text:
      return f(TypeTag<TextValue>{});
  }
  throw InvalidArgumentError("unknown data kind");
}

/// Invoke f with the full runtime value type of a column (scalar item or
/// VBuffer of item).
template <typename F>
decltype(auto) dispatch_column_type(const ColumnType& t, F&& f) {
  return dispatch_kind(t.item_kind(), [&](auto tag) -> decltype(auto) {
    using Item = typename decltype(tag)::type;
    if (t.is_vector()) return f(TypeTag<VBuffer<Item>>{});
    return f(TypeTag<Item>{});
  });
}

/// Copy a value into a caller buffer, reusing its capacity.
inline void copy_value(uint8_t v, uint8_t& out) { out = v; }
inline void copy_value(int32_t v, int32_t& out) { out = v; }
inline void copy_value(float v, float& out) { out = v; }
inline void copy_value(double v, double& out) { out = v; }
inline void copy_value(const TextValue& v, TextValue& out) {
  out.data = v.data;
  out.missing = v.missing;
}
template <typename T>
void copy_value(const VBuffer<T>& v, VBuffer<T>& out) {
  v.copy_into(out);
}

inline size_t value_bytes(uint8_t) { return 1; }
inline size_t value_bytes(int32_t) { return 4; }
inline size_t value_bytes(float) { return 4; }
inline size_t value_bytes(double) { return 8; }
inline size_t value_bytes(const TextValue& v) { return sizeof(TextValue) + v.data.size(); }
template <typename T>
size_t value_bytes(const VBuffer<T>& v) {
  size_t b = sizeof(VBuffer<T>) + v.indices().size() * 4;
  for (const auto& x : v.values()) b += value_bytes(x);
  return b;
}

/// Append-only columnar storage for one column; the materialization unit
/// behind in-memory views, caches and consolidation batches.
class ColumnStore {
 public:
  explicit ColumnStore(const ColumnType& type) : type_(type) {
    dispatch_column_type(type, [&](auto tag) {
      using T = typename decltype(tag)::type;
      storage_ = std::vector<T>{};
    });
  }

  const ColumnType& type() const { return type_; }

  size_t size() const {
    return std::visit([](const auto& v) { return v.size(); }, storage_);
  }

  size_t approx_bytes() const { return approx_bytes_; }

  template <typename T>
  std::vector<T>& data() {
    return std::get<std::vector<T>>(storage_);
  }
  template <typename T>
  const std::vector<T>& data() const {
    return std::get<std::vector<T>>(storage_);
  }

  /// Set the whole column at once (builder path).
  template <typename T>
  void assign(std::vector<T> values) {
    for (const auto& v : values) approx_bytes_ += value_bytes(v);
    storage_ = std::move(values);
  }

  /// An appender copies the bound cursor's current row value into this
  /// store. Binding acquires the typed getter once.
  std::function<void()> make_appender(RowCursor& cur, size_t col) {
    return dispatch_column_type(type_, [&](auto tag) -> std::function<void()> {
      using T = typename decltype(tag)::type;
      auto getter = cur.get_getter<T>(col);
      auto* vec = &std::get<std::vector<T>>(storage_);
      auto* bytes = &approx_bytes_;
      return [getter = std::move(getter), vec, bytes]() mutable {
        vec->emplace_back();
        getter(vec->back());
        *bytes += value_bytes(vec->back());
      };
    });
  }

  /// Move accumulated rows into dst (same column type), leaving this
  /// store empty. The staging trick behind splitter batches: appenders
  /// stay bound to this store while full batches are handed off.
  void transfer_to(ColumnStore& dst) {
    dispatch_column_type(type_, [&](auto tag) {
      using T = typename decltype(tag)::type;
      auto& src = std::get<std::vector<T>>(storage_);
      std::get<std::vector<T>>(dst.storage_) = std::move(src);
      src = std::vector<T>{};
    });
    dst.approx_bytes_ += approx_bytes_;
    approx_bytes_ = 0;
  }

  /// Getter reading this store at *pos, guarded by the owning cursor's
  /// state.
  std::any make_getter(const RowCursor* owner, const int64_t* pos) const {
    return dispatch_column_type(type_, [&](auto tag) -> std::any {
      using T = typename decltype(tag)::type;
      const auto* vec = &std::get<std::vector<T>>(storage_);
      return ValueGetter<T>([vec, owner, pos](T& out) {
        if (owner->state() != CursorState::Active)
          throw ContractError(owner->state() == CursorState::NotStarted
                                  ? "getter called before the first move_next"
                                  : "getter called after the cursor is Done");
        copy_value((*vec)[static_cast<size_t>(*pos)], out);
      });
    });
  }

 private:
  using Storage =
      std::variant<std::vector<uint8_t>, std::vector<int32_t>, std::vector<float>,
                   std::vector<double>, std::vector<TextValue>, std::vector<VBuffer<uint8_t>>,
                   std::vector<VBuffer<int32_t>>, std::vector<VBuffer<float>>,
                   std::vector<VBuffer<double>>, std::vector<VBuffer<TextValue>>>;

  ColumnType type_;
  Storage storage_;
  size_t approx_bytes_ = 0;
};

}  // namespace dvml
