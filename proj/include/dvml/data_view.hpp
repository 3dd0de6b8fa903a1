#pragma once

#include <any>
#include <cassert>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "dvml/error.hpp"
#include "dvml/schema.hpp"
#include "dvml/vbuffer.hpp"

namespace dvml {

/// Per-(cursor, column) value producer. Acquired once, called per row;
/// fills the caller's reusable buffer. Activity and type verification
/// happen at acquisition, never per call.
template <typename T>
using ValueGetter = std::function<void(T&)>;

enum class CursorState : uint8_t { NotStarted, Active, Done };

template <typename T>
struct IsVBuffer : std::false_type {};
template <typename U>
struct IsVBuffer<VBuffer<U>> : std::true_type {
  using item_type = U;
};

/// Set of column indices a cursor is obligated to compute. Everything
/// else is pruned: its computation never runs during the scan.
class ActiveColumns {
 public:
  static ActiveColumns all() {
    ActiveColumns a;
    a.all_ = true;
    return a;
  }
  static ActiveColumns none() { return ActiveColumns{}; }
  static ActiveColumns of(std::vector<size_t> indices) {
    ActiveColumns a;
    a.indices_ = std::move(indices);
    return a;
  }
  static ActiveColumns of(std::initializer_list<size_t> indices) {
    return of(std::vector<size_t>(indices));
  }

  bool is_all() const { return all_; }
  const std::vector<size_t>& indices() const { return indices_; }

  /// Per-column activity mask; throws InvalidColumnError on out-of-range
  /// indices.
  std::vector<char> mask(const Schema& schema) const {
    std::vector<char> m(schema.size(), all_ ? 1 : 0);
    for (size_t i : indices_) {
      if (i >= schema.size())
        throw InvalidColumnError("active column index " + std::to_string(i) +
                                 " out of range for schema of " + std::to_string(schema.size()) +
                                 " columns");
      m[i] = 1;
    }
    return m;
  }

 private:
  bool all_ = false;
  std::vector<size_t> indices_;
};

/// A movable, forward-only window over a sequence of data rows.
/// Thread-confined: movable between threads, never shared.
class RowCursor {
 public:
  virtual ~RowCursor() = default;

  virtual const Schema& schema() const = 0;
  virtual bool is_active(size_t col) const = 0;

  int64_t position() const { return position_; }
  CursorState state() const { return state_; }

  /// Identifier of the source batch the current row belongs to. Serial
  /// cursors report 0; cursor-set members report the splitter's sequence
  /// number, which the consolidator uses to restore serial order.
  virtual uint64_t batch() const { return 0; }

  /// Identity of the cursor-set request this cursor belongs to, null for
  /// standalone cursors. Consolidation refuses to mix tokens.
  virtual const void* set_token() const { return nullptr; }

  bool move_next() {
    if (state_ == CursorState::Done)
      throw ContractError("move_next called on a cursor that is already Done");
    const int64_t prev = position_;
    if (do_move_next()) {
      state_ = CursorState::Active;
      assert(position_ > prev);
      (void)prev;
      return true;
    }
    state_ = CursorState::Done;
    return false;
  }

  /// Typed getter acquisition. All verification happens here, once.
  template <typename T>
  ValueGetter<T> get_getter(size_t col) {
    check_column_type<T>(col);
    std::any erased = get_getter_erased(col);
    auto* fn = std::any_cast<ValueGetter<T>>(&erased);
    if (!fn)
      throw TypeMismatchError("internal: getter payload does not match declared type of column " +
                              std::to_string(col));
    return std::move(*fn);
  }

  /// Type-erased acquisition used when composing cursors; validates
  /// range and activity, not the payload type.
  std::any get_getter_erased(size_t col) {
    if (col >= schema().size())
      throw InvalidColumnError("column index " + std::to_string(col) + " out of range");
    if (!is_active(col))
      throw InactiveColumnError("getter requested for inactive column " + std::to_string(col) +
                                " ('" + schema().name(col) + "')");
    return getter_any(col);
  }

 protected:
  /// Advance to the next row, updating position_ by at least one. The
  /// base wrapper maintains state transitions and the Done contract.
  virtual bool do_move_next() = 0;

  /// Produce the getter for a validated, active column. The returned any
  /// holds a ValueGetter<T> matching the column's declared type.
  virtual std::any getter_any(size_t col) = 0;

  /// Getters call this per row; a single branch, not a per-call
  /// activity/type verification.
  void check_readable() const {
    if (state_ != CursorState::Active)
      throw ContractError(state_ == CursorState::NotStarted
                              ? "getter called before the first move_next"
                              : "getter called after the cursor is Done");
  }

  int64_t position_ = -1;
  CursorState state_ = CursorState::NotStarted;

  template <typename T>
  void check_column_type(size_t col) {
    if (col >= schema().size())
      throw InvalidColumnError("column index " + std::to_string(col) + " out of range");
    const ColumnType& t = schema().type(col);
    if constexpr (IsVBuffer<T>::value) {
      using Item = typename IsVBuffer<T>::item_type;
      if (!t.is_vector() || t.item_kind() != kind_of<Item>)
        throw TypeMismatchError("column " + std::to_string(col) + " ('" + schema().name(col) +
                                "') has type " + t.to_string() + ", not a " +
                                std::string(kind_name(kind_of<Item>)) + " vector");
    } else {
      if (!t.is_scalar() || t.item_kind() != kind_of<T>)
        throw TypeMismatchError("column " + std::to_string(col) + " ('" + schema().name(col) +
                                "') has type " + t.to_string() + ", not scalar " +
                                std::string(kind_name(kind_of<T>)));
    }
  }
};

/// An immutable, lazily evaluated, schematized view over data. Composing
/// views performs no data pass; all computation happens through cursors.
/// Views are safe to share across threads; a view must outlive its
/// cursors.
class DataView {
 public:
  virtual ~DataView() = default;

  virtual const Schema& schema() const = 0;

  /// Known only when it costs no scan (in-memory sources, binary files).
  virtual std::optional<uint64_t> row_count() const { return std::nullopt; }

  std::unique_ptr<RowCursor> cursor(const ActiveColumns& active = ActiveColumns::all()) const {
    return do_cursor(active);
  }

  /// n cursors that collaboratively partition the rows into batches.
  /// Consolidating them restores the serial scan bit for bit.
  std::vector<std::unique_ptr<RowCursor>> cursor_set(const ActiveColumns& active, size_t n) const {
    if (n == 0) throw InvalidArgumentError("cursor_set requires n >= 1");
    if (n == 1) {
      std::vector<std::unique_ptr<RowCursor>> one;
      one.push_back(do_cursor(active));
      return one;
    }
    return do_cursor_set(active, n);
  }

 protected:
  virtual std::unique_ptr<RowCursor> do_cursor(const ActiveColumns& active) const = 0;

  /// Default: split a serial cursor into round-robin batches. Sources and
  /// transforms override to push the split closer to the data.
  virtual std::vector<std::unique_ptr<RowCursor>> do_cursor_set(const ActiveColumns& active,
                                                                size_t n) const;
};

/// Rows per splitter batch. Batches are assigned round-robin to the
/// members of a cursor set and re-emitted by sequence number.
inline constexpr size_t kDefaultBatchRows = 64;

/// Merge a cursor set back into a single cursor whose row order equals
/// the serial scan of the source view. Drives members on worker threads.
std::unique_ptr<RowCursor> consolidate(std::vector<std::unique_ptr<RowCursor>> cursors);

}  // namespace dvml
