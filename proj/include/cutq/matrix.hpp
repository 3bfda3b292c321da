#pragma once

#include <cstdint>
#include <vector>

#include "cutq/common.hpp"

namespace cutq {

// Dense row-major integer matrix.
struct IntMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<std::int64_t> a;

  IntMatrix() = default;
  IntMatrix(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * static_cast<size_t>(c), 0) {
    if (r < 0 || c < 0) throw ParameterError("matrix dimensions must be >= 0");
  }

  std::int64_t& at(int r, int c) {
    return a[static_cast<size_t>(r) * static_cast<size_t>(cols) + static_cast<size_t>(c)];
  }
  std::int64_t at(int r, int c) const {
    return a[static_cast<size_t>(r) * static_cast<size_t>(cols) + static_cast<size_t>(c)];
  }

  IntMatrix transposed() const {
    IntMatrix t(cols, rows);
    for (int r = 0; r < rows; ++r)
      for (int c = 0; c < cols; ++c) t.at(c, r) = at(r, c);
    return t;
  }

  bool operator==(const IntMatrix& o) const {
    return rows == o.rows && cols == o.cols && a == o.a;
  }

  std::int64_t max_entry() const {
    std::int64_t m = 0;
    for (auto v : a) m = std::max(m, v);
    return m;
  }

  std::int64_t row_support(int r) const {
    std::int64_t c = 0;
    for (int j = 0; j < cols; ++j)
      if (at(r, j) != 0) ++c;
    return c;
  }
};

inline std::int64_t floor_mod(std::int64_t v, std::int64_t m) {
  std::int64_t r = v % m;
  return r < 0 ? r + m : r;
}

}  // namespace cutq
