#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "dirmono/checker.hpp"
#include "dirmono/core.hpp"
#include "dirmono/error.hpp"

namespace dirmono::detail {

/// Largest lattice (g^n points) a scan will tabulate.
inline constexpr std::size_t kMaxLatticePoints = std::size_t{1} << 24;

using Index = std::vector<std::uint32_t>;

/// Row-major indexing of the g^n interior lattice; coordinate 0 is the most
/// significant digit, so increasing linear index is lexicographic order.
class Lattice {
 public:
  Lattice(std::size_t dim, const GridSpec& grid) : dim_(dim), grid_(grid), stride_(dim) {
    const std::size_t g = grid.resolution();
    std::size_t size = 1;
    for (std::size_t k = dim; k-- > 0;) {
      stride_[k] = size;
      if (size > kMaxLatticePoints / g) {
        throw DomainError("lattice with g = " + std::to_string(g) + " in dimension " +
                          std::to_string(dim) + " exceeds the supported size");
      }
      size *= g;
    }
    size_ = size;
  }

  std::size_t dim() const noexcept { return dim_; }
  std::uint32_t g() const noexcept { return static_cast<std::uint32_t>(grid_.resolution()); }
  std::size_t size() const noexcept { return size_; }
  std::size_t stride(std::size_t k) const noexcept { return stride_[k]; }

  void decode(std::size_t linear, Index& out) const {
    out.resize(dim_);
    for (std::size_t k = dim_; k-- > 0;) {
      out[k] = static_cast<std::uint32_t>(linear % grid_.resolution());
      linear /= grid_.resolution();
    }
  }

  std::size_t encode(const Index& idx) const {
    std::size_t linear = 0;
    for (std::size_t k = 0; k < dim_; ++k) linear += idx[k] * stride_[k];
    return linear;
  }

  void coords(const Index& idx, std::vector<double>& out) const {
    out.resize(dim_);
    for (std::size_t k = 0; k < dim_; ++k) out[k] = grid_.point(idx[k]);
  }

  UnitPoint point(const Index& idx) const {
    std::vector<double> c;
    coords(idx, c);
    return UnitPoint(std::move(c));
  }

  /// fn(coords) at every lattice point, by linear index.
  template <class Fn>
  std::vector<double> tabulate(const Fn& fn) const {
    std::vector<double> table(size_);
    Index idx;
    std::vector<double> c;
    for (std::size_t i = 0; i < size_; ++i) {
      decode(i, idx);
      coords(idx, c);
      table[i] = fn(std::span<const double>(c));
    }
    return table;
  }

 private:
  std::size_t dim_;
  GridSpec grid_;
  std::vector<std::size_t> stride_;
  std::size_t size_ = 1;
};

}  // namespace dirmono::detail
