#include "dvml/schema.hpp"

#include "dvml/error.hpp"

namespace dvml {

size_t Schema::require(std::string_view name) const {
  auto idx = resolve(name);
  if (!idx) throw SchemaError("column '" + std::string(name) + "' not found in schema");
  return *idx;
}

}  // namespace dvml
