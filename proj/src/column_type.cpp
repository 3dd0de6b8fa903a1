#include "dvml/column_type.hpp"

#include <array>

namespace dvml {

namespace {
constexpr std::array<const char*, 5> kKindNames = {"Bool", "I4", "R4", "R8", "Text"};
}

const char* kind_name(DataKind k) { return kKindNames[static_cast<size_t>(k)]; }

DataKind kind_from_name(std::string_view name) {
  for (size_t i = 0; i < kKindNames.size(); ++i) {
    if (name == kKindNames[i]) return static_cast<DataKind>(i);
  }
  throw FormatError("unknown data kind: '" + std::string(name) + "'");
}

std::string ColumnType::to_string() const {
  if (!is_vector_) return kind_name(item_);
  std::string s = "Vector<";
  s += kind_name(item_);
  s += ',';
  s += size_ ? std::to_string(*size_) : "*";
  s += '>';
  return s;
}

ColumnType ColumnType::parse(std::string_view text) {
  if (!text.starts_with("Vector<")) return scalar(kind_from_name(text));
  if (!text.ends_with('>')) throw FormatError("malformed column type: '" + std::string(text) + "'");
  std::string_view inner = text.substr(7, text.size() - 8);
  size_t comma = inner.rfind(',');
  if (comma == std::string_view::npos)
    throw FormatError("malformed column type: '" + std::string(text) + "'");
  DataKind item = kind_from_name(inner.substr(0, comma));
  std::string_view dim = inner.substr(comma + 1);
  if (dim == "*") return vector(item);
  uint64_t n = 0;
  for (char c : dim) {
    if (c < '0' || c > '9') throw FormatError("malformed vector size in '" + std::string(text) + "'");
    n = n * 10 + static_cast<uint64_t>(c - '0');
  }
  if (n == 0) throw FormatError("vector size must be >= 1 in '" + std::string(text) + "'");
  return vector(item, n);
}

}  // namespace dvml
