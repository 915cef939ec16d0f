#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "leosim/error.hpp"

namespace leosim {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// K routes x N slots of end-to-end delays in ms; +inf where a route does
/// not exist in a slot.
class DelayMatrix {
 public:
  DelayMatrix() = default;

  explicit DelayMatrix(std::vector<std::vector<double>> rows) : rows_(std::move(rows)) {
    for (const auto& row : rows_) {
      if (row.size() != rows_.front().size()) throw ValidationError("delay matrix rows differ in length");
      for (double d : row)
        if (std::isnan(d) || d < 0.0 || d == -kInf) throw ValidationError("delay matrix entries must be >= 0 or inf");
    }
  }

  [[nodiscard]] std::size_t routes() const { return rows_.size(); }
  [[nodiscard]] std::size_t slots() const { return rows_.empty() ? 0 : rows_.front().size(); }
  /// Route r (0-based), slot i (1-based).
  [[nodiscard]] double at(std::size_t r, int i) const { return rows_[r][static_cast<std::size_t>(i - 1)]; }
  [[nodiscard]] const std::vector<std::vector<double>>& rows() const { return rows_; }

  /// First slot whose column holds no finite entry.
  [[nodiscard]] std::optional<int> infeasible_slot() const {
    for (std::size_t c = 0; c < slots(); ++c) {
      bool any = false;
      for (const auto& row : rows_) any = any || std::isfinite(row[c]);
      if (!any) return static_cast<int>(c + 1);
    }
    return std::nullopt;
  }

  friend bool operator==(const DelayMatrix&, const DelayMatrix&) = default;

 private:
  std::vector<std::vector<double>> rows_;
};

/// Binary K x N activation matrix with exactly one active route per slot,
/// stored as the active row of each column.
class SelectionMatrix {
 public:
  SelectionMatrix() = default;
  SelectionMatrix(std::size_t routes, std::vector<std::size_t> choice) : routes_(routes), choice_(std::move(choice)) {
    for (auto r : choice_)
      if (r >= routes_) throw ValidationError("selection refers to a route beyond K");
  }

  /// Builds from explicit 0/1 rows; every column must sum to exactly 1.
  static SelectionMatrix from_rows(const std::vector<std::vector<int>>& rows) {
    if (rows.empty()) throw ValidationError("selection matrix has no rows");
    const std::size_t n = rows.front().size();
    std::vector<std::size_t> choice(n);
    for (std::size_t c = 0; c < n; ++c) {
      int sum = 0;
      for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != n) throw ValidationError("selection matrix rows differ in length");
        if (rows[r][c] != 0 && rows[r][c] != 1) throw ValidationError("selection entries must be 0 or 1");
        if (rows[r][c] == 1) choice[c] = r;
        sum += rows[r][c];
      }
      if (sum != 1)
        throw ValidationError("slot " + std::to_string(c + 1) + ": selection column must sum to 1");
    }
    return {rows.size(), std::move(choice)};
  }

  [[nodiscard]] std::size_t routes() const { return routes_; }
  [[nodiscard]] std::size_t slots() const { return choice_.size(); }
  [[nodiscard]] std::size_t active(int i) const { return choice_[static_cast<std::size_t>(i - 1)]; }
  [[nodiscard]] int alpha(std::size_t r, int i) const { return active(i) == r ? 1 : 0; }
  [[nodiscard]] const std::vector<std::size_t>& choices() const { return choice_; }

  /// Whether every active entry has a finite delay in `d`.
  [[nodiscard]] bool feasible_for(const DelayMatrix& d) const {
    if (d.routes() != routes_ || d.slots() != slots()) return false;
    for (std::size_t c = 0; c < choice_.size(); ++c)
      if (!std::isfinite(d.at(choice_[c], static_cast<int>(c + 1)))) return false;
    return true;
  }

  friend bool operator==(const SelectionMatrix&, const SelectionMatrix&) = default;

 private:
  std::size_t routes_ = 0;
  std::vector<std::size_t> choice_;
};

}  // namespace leosim
