#pragma once

#include <algorithm>
#include <cstdint>
#include <utility>
#include <vector>

#include "dvml/column_type.hpp"
#include "dvml/error.hpp"

namespace dvml {

/// Transforms emit sparse when stored-value count < length / 2.
inline constexpr double kSparseThreshold = 0.5;

/// A logical-length vector value, dense or sparse. Sparse vectors store a
/// strictly increasing index list; unstored slots equal the item default.
/// The backing std::vectors keep their capacity across reset calls, which
/// is what makes cooperative buffer reuse between getter calls allocation
/// free once capacity has warmed up.
template <typename T>
class VBuffer {
 public:
  VBuffer() = default;

  static VBuffer dense(std::vector<T> values) {
    VBuffer v;
    v.length_ = values.size();
    v.values_ = std::move(values);
    v.dense_ = true;
    return v;
  }

  static VBuffer sparse(size_t length, std::vector<uint32_t> indices, std::vector<T> values) {
    if (indices.size() != values.size())
      throw InvalidArgumentError("sparse VBuffer: indices/values size mismatch");
    for (size_t i = 0; i < indices.size(); ++i) {
      if (indices[i] >= length || (i > 0 && indices[i] <= indices[i - 1]))
        throw InvalidArgumentError("sparse VBuffer: indices must be strictly increasing in [0,length)");
    }
    VBuffer v;
    v.length_ = length;
    v.values_ = std::move(values);
    v.indices_ = std::move(indices);
    v.dense_ = false;
    return v;
  }

  size_t length() const { return length_; }
  size_t count() const { return values_.size(); }
  bool is_dense() const { return dense_; }

  const std::vector<T>& values() const { return values_; }
  const std::vector<uint32_t>& indices() const { return indices_; }
  std::vector<T>& values() { return values_; }
  std::vector<uint32_t>& indices() { return indices_; }

  /// Logical element at position i (walks the index list when sparse).
  T get(size_t i) const {
    if (dense_) return values_[i];
    auto it = std::lower_bound(indices_.begin(), indices_.end(), static_cast<uint32_t>(i));
    if (it != indices_.end() && *it == i) return values_[static_cast<size_t>(it - indices_.begin())];
    return default_value<T>();
  }

  /// Re-shape as a dense buffer of `length` slots; contents unspecified.
  /// Capacity is reused.
  void reset_dense(size_t length) {
    length_ = length;
    dense_ = true;
    indices_.clear();
    values_.resize(length);
  }

  /// Re-shape as a sparse buffer with room for `count` stored values.
  void reset_sparse(size_t length, size_t count) {
    length_ = length;
    dense_ = false;
    indices_.resize(count);
    values_.resize(count);
  }

  void copy_into(VBuffer& dst) const {
    dst.length_ = length_;
    dst.dense_ = dense_;
    dst.indices_.assign(indices_.begin(), indices_.end());
    dst.values_.assign(values_.begin(), values_.end());
  }

  friend bool value_equal(const VBuffer& a, const VBuffer& b) {
    if (a.length_ != b.length_) return false;
    for (size_t i = 0; i < a.length_; ++i) {
      if (!(a.get(i) == b.get(i))) return false;
    }
    return true;
  }

 private:
  size_t length_ = 0;
  std::vector<T> values_;
  std::vector<uint32_t> indices_;
  bool dense_ = true;
};

/// Value-equal copy in dense representation.
template <typename T>
VBuffer<T> densify(const VBuffer<T>& v) {
  if (v.is_dense()) return v;
  std::vector<T> out(v.length(), default_value<T>());
  const auto& idx = v.indices();
  const auto& val = v.values();
  for (size_t i = 0; i < idx.size(); ++i) out[idx[i]] = val[i];
  return VBuffer<T>::dense(std::move(out));
}

/// Value-equal copy storing only non-default entries.
template <typename T>
VBuffer<T> sparsify(const VBuffer<T>& v) {
  std::vector<uint32_t> idx;
  std::vector<T> val;
  if (v.is_dense()) {
    for (size_t i = 0; i < v.length(); ++i) {
      if (!(v.values()[i] == default_value<T>())) {
        idx.push_back(static_cast<uint32_t>(i));
        val.push_back(v.values()[i]);
      }
    }
  } else {
    for (size_t i = 0; i < v.count(); ++i) {
      if (!(v.values()[i] == default_value<T>())) {
        idx.push_back(v.indices()[i]);
        val.push_back(v.values()[i]);
      }
    }
  }
  size_t length = v.length();
  return VBuffer<T>::sparse(length, std::move(idx), std::move(val));
}

/// Writes `stored` (index,value) pairs into `dst`, choosing the
/// representation by the stored/length ratio. Pairs must be sorted by
/// index, unique. Used by vector-emitting transforms.
template <typename T>
void emit_auto(size_t length, const std::vector<std::pair<uint32_t, T>>& stored, VBuffer<T>& dst) {
  if (static_cast<double>(stored.size()) < kSparseThreshold * static_cast<double>(length)) {
    dst.reset_sparse(length, stored.size());
    for (size_t i = 0; i < stored.size(); ++i) {
      dst.indices()[i] = stored[i].first;
      dst.values()[i] = stored[i].second;
    }
  } else {
    dst.reset_dense(length);
    std::fill(dst.values().begin(), dst.values().end(), default_value<T>());
    for (const auto& [i, v] : stored) dst.values()[i] = v;
  }
}

}  // namespace dvml
