#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ystruct {

using Value = std::int32_t;

// m complete cases over named discrete variables, stored row-major.
class Dataset {
 public:
  Dataset() = default;
  // Throws InvalidArgument on duplicate names, arity < 2 or a mismatched
  // column count, DataError on a value outside [0, arity).
  Dataset(std::vector<std::string> variables, std::vector<int> arities,
          std::vector<Value> cells = {});

  std::size_t rows() const { return width() == 0 ? 0 : cells_.size() / width(); }
  std::size_t width() const { return variables_.size(); }
  const std::vector<std::string>& variables() const { return variables_; }
  const std::vector<int>& arities() const { return arities_; }
  int arity(std::size_t column) const { return arities_.at(column); }

  std::optional<std::size_t> find(std::string_view name) const;
  // Throws DataError for unknown names.
  std::size_t column(std::string_view name) const;

  Value at(std::size_t row, std::size_t column) const { return cells_[row * width() + column]; }
  std::span<const Value> row(std::size_t r) const {
    return {cells_.data() + r * width(), width()};
  }
  const std::vector<Value>& cells() const { return cells_; }

  void append_row(std::span<const Value> values);

  // Column subset in the given order.
  Dataset select(const std::vector<std::string>& names) const;

  friend bool operator==(const Dataset&, const Dataset&) = default;

 private:
  std::vector<std::string> variables_;
  std::vector<int> arities_;
  std::vector<Value> cells_;
};

}  // namespace ystruct
