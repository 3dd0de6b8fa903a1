#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <string_view>

#include "dvml/error.hpp"

namespace dvml {

/// Primitive item kinds. Vector columns carry one of these as item type;
/// an item kind is never itself a vector.
enum class DataKind : uint8_t { Bool, I4, R4, R8, Text };

const char* kind_name(DataKind k);
DataKind kind_from_name(std::string_view name);

/// Text cell value. Missing text is distinct from the present empty string.
struct TextValue {
  std::string data;
  bool missing = false;

  TextValue() = default;
  TextValue(std::string s) : data(std::move(s)) {}
  TextValue(const char* s) : data(s) {}

  static TextValue missing_value() {
    TextValue t;
    t.missing = true;
    return t;
  }

  bool is_missing() const { return missing; }

  friend bool operator==(const TextValue& a, const TextValue& b) {
    return a.missing == b.missing && (a.missing || a.data == b.data);
  }
};

// Runtime representation of each kind. Bool uses uint8_t so vectors of it
// get plain contiguous storage.
template <typename T>
struct KindOf;
template <>
struct KindOf<uint8_t> {
  static constexpr DataKind value = DataKind::Bool;
};
template <>
struct KindOf<int32_t> {
  static constexpr DataKind value = DataKind::I4;
};
template <>
struct KindOf<float> {
  static constexpr DataKind value = DataKind::R4;
};
template <>
struct KindOf<double> {
  static constexpr DataKind value = DataKind::R8;
};
template <>
struct KindOf<TextValue> {
  static constexpr DataKind value = DataKind::Text;
};

template <typename T>
inline constexpr DataKind kind_of = KindOf<T>::value;

/// Default (unstored-slot) value per kind: 0 / false / present empty text.
template <typename T>
T default_value() {
  return T{};
}

/// Missing-value encodings: R4/R8 use IEEE NaN, I4 the minimum
/// representable value, Text an empty string with the missing flag set.
/// Bool has no missing encoding.
template <typename T>
T missing_value();
template <>
inline int32_t missing_value<int32_t>() {
  return std::numeric_limits<int32_t>::min();
}
template <>
inline float missing_value<float>() {
  return std::numeric_limits<float>::quiet_NaN();
}
template <>
inline double missing_value<double>() {
  return std::numeric_limits<double>::quiet_NaN();
}
template <>
inline TextValue missing_value<TextValue>() {
  return TextValue::missing_value();
}

inline bool is_missing(int32_t v) { return v == missing_value<int32_t>(); }
inline bool is_missing(float v) { return std::isnan(v); }
inline bool is_missing(double v) { return std::isnan(v); }
inline bool is_missing(const TextValue& v) { return v.missing; }
inline bool is_missing(uint8_t) { return false; }

/// Column type: a primitive kind, or a vector of a primitive kind with
/// optional fixed size (absent size = variable length per row).
class ColumnType {
 public:
  ColumnType() = default;

  static ColumnType scalar(DataKind kind) { return ColumnType(kind, false, std::nullopt); }

  static ColumnType vector(DataKind item, std::optional<uint64_t> size = std::nullopt) {
    if (size && *size == 0) throw InvalidArgumentError("vector size must be >= 1 when present");
    return ColumnType(item, true, size);
  }

  DataKind item_kind() const { return item_; }
  bool is_vector() const { return is_vector_; }
  bool is_scalar() const { return !is_vector_; }
  /// Fixed length for vectors; absent for scalars and variable-length vectors.
  std::optional<uint64_t> vector_size() const { return size_; }
  bool is_fixed_vector() const { return is_vector_ && size_.has_value(); }
  bool is_numeric() const {
    return item_ == DataKind::R4 || item_ == DataKind::R8 || item_ == DataKind::I4;
  }

  /// "R4", "Vector<Text,*>", "Vector<R4,128>"
  std::string to_string() const;
  static ColumnType parse(std::string_view text);

  friend bool operator==(const ColumnType& a, const ColumnType& b) {
    return a.item_ == b.item_ && a.is_vector_ == b.is_vector_ && a.size_ == b.size_;
  }

 private:
  ColumnType(DataKind item, bool vec, std::optional<uint64_t> size)
      : item_(item), is_vector_(vec), size_(size) {}

  DataKind item_ = DataKind::R4;
  bool is_vector_ = false;
  std::optional<uint64_t> size_;
};

}  // namespace dvml
