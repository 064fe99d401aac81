#include "ystruct/dataset.hpp"

#include <set>

#include "ystruct/error.hpp"

namespace ystruct {

Dataset::Dataset(std::vector<std::string> variables, std::vector<int> arities,
                 std::vector<Value> cells)
    : variables_(std::move(variables)), arities_(std::move(arities)), cells_(std::move(cells)) {
  if (variables_.size() != arities_.size())
    throw InvalidArgument("dataset needs one arity per variable");
  std::set<std::string_view> seen;
  for (const auto& v : variables_)
    if (!seen.insert(v).second) throw InvalidArgument("duplicate dataset variable '" + v + "'");
  for (int r : arities_)
    if (r < 2) throw InvalidArgument("variable arity must be at least 2");
  if (width() == 0) {
    if (!cells_.empty()) throw InvalidArgument("cells given for a dataset without columns");
    return;
  }
  if (cells_.size() % width() != 0)
    throw InvalidArgument("cell count is not a multiple of the column count");
  for (std::size_t i = 0; i < cells_.size(); ++i) {
    const std::size_t c = i % width();
    if (cells_[i] < 0 || cells_[i] >= arities_[c])
      throw DataError("value " + std::to_string(cells_[i]) + " out of range for '" +
                      variables_[c] + "' (arity " + std::to_string(arities_[c]) + ")");
  }
}

std::optional<std::size_t> Dataset::find(std::string_view name) const {
  for (std::size_t i = 0; i < variables_.size(); ++i)
    if (variables_[i] == name) return i;
  return std::nullopt;
}

std::size_t Dataset::column(std::string_view name) const {
  auto c = find(name);
  if (!c) throw DataError("dataset has no variable '" + std::string(name) + "'");
  return *c;
}

void Dataset::append_row(std::span<const Value> values) {
  if (values.size() != width()) throw InvalidArgument("row width does not match dataset");
  for (std::size_t c = 0; c < width(); ++c)
    if (values[c] < 0 || values[c] >= arities_[c])
      throw DataError("value " + std::to_string(values[c]) + " out of range for '" +
                      variables_[c] + "'");
  cells_.insert(cells_.end(), values.begin(), values.end());
}

Dataset Dataset::select(const std::vector<std::string>& names) const {
  std::vector<std::size_t> cols;
  std::vector<int> ar;
  for (const auto& n : names) {
    cols.push_back(column(n));
    ar.push_back(arities_[cols.back()]);
  }
  std::vector<Value> out;
  out.reserve(rows() * cols.size());
  for (std::size_t r = 0; r < rows(); ++r)
    for (std::size_t c : cols) out.push_back(at(r, c));
  return Dataset(names, std::move(ar), std::move(out));
}

}  // namespace ystruct
