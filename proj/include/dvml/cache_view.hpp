#pragma once

#include <memory>
#include <mutex>

#include "dvml/column_store.hpp"
#include "dvml/data_view.hpp"

namespace dvml {

inline constexpr size_t kDefaultCacheLimitBytes = size_t{1} << 30;

/// Materializes its source on first use so iterative consumers stop
/// paying for upstream computation. Columnar: only the columns a cursor
/// actually requested are stored; asking later for others triggers a
/// supplementary pass. Value-equal to the uncached view.
class CacheView final : public DataView,
                        public std::enable_shared_from_this<CacheView> {
 public:
  CacheView(std::shared_ptr<const DataView> source, size_t limit_bytes);

  const Schema& schema() const override { return source_->schema(); }
  std::optional<uint64_t> row_count() const override;

  /// Materialize every column in the mask that is not yet cached.
  /// Throws ResourceLimitError when the configured byte budget would be
  /// exceeded; the cache is left unchanged in that case.
  void ensure_materialized(const std::vector<char>& mask) const;

  uint64_t materialized_rows() const;
  std::shared_ptr<const ColumnStore> store(size_t col) const;

 protected:
  std::unique_ptr<RowCursor> do_cursor(const ActiveColumns& active) const override;
  std::vector<std::unique_ptr<RowCursor>> do_cursor_set(const ActiveColumns& active,
                                                        size_t n) const override;

 private:
  std::shared_ptr<const DataView> source_;
  size_t limit_;
  mutable std::mutex mu_;
  mutable std::vector<std::shared_ptr<const ColumnStore>> stores_;
  mutable std::optional<uint64_t> rows_;
  mutable size_t bytes_used_ = 0;
};

/// Wrap a view in a cache with the given memory budget.
std::shared_ptr<const DataView> cache(std::shared_ptr<const DataView> source,
                                      size_t limit_bytes = kDefaultCacheLimitBytes);

}  // namespace dvml
