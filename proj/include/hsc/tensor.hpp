#ifndef HSC_TENSOR_HPP_
#define HSC_TENSOR_HPP_

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "hsc/error.hpp"

namespace hsc {

// Dense row-major array of doubles with a fixed rank. Used for the indexed
// parameter tables of a scenario (e.g. Tpop[g,t]).
template <std::size_t Rank>
class Tensor {
 public:
  using Shape = std::array<std::size_t, Rank>;

  Tensor() { shape_.fill(0); }
  explicit Tensor(Shape shape, double fill = 0.0) : shape_(shape) {
    std::size_t n = 1;
    for (std::size_t d : shape_) n *= d;
    data_.assign(n, fill);
  }

  const Shape& shape() const { return shape_; }
  std::size_t extent(std::size_t dim) const { return shape_[dim]; }
  std::size_t size() const { return data_.size(); }
  bool empty() const { return data_.empty(); }

  template <class... I>
  double& operator()(I... idx) {
    static_assert(sizeof...(I) == Rank);
    return data_[offset({static_cast<std::size_t>(idx)...})];
  }
  template <class... I>
  double operator()(I... idx) const {
    static_assert(sizeof...(I) == Rank);
    return data_[offset({static_cast<std::size_t>(idx)...})];
  }

  // Bounds-checked access.
  template <class... I>
  double at(I... idx) const {
    static_assert(sizeof...(I) == Rank);
    Shape ix{static_cast<std::size_t>(idx)...};
    for (std::size_t d = 0; d < Rank; ++d) {
      if (ix[d] >= shape_[d]) {
        throw IndexError("tensor index " + std::to_string(ix[d]) +
                         " out of range in dimension " + std::to_string(d));
      }
    }
    return data_[offset(ix)];
  }

  std::vector<double>& data() { return data_; }
  const std::vector<double>& data() const { return data_; }

  bool operator==(const Tensor&) const = default;

 private:
  std::size_t offset(const Shape& ix) const {
    std::size_t off = 0;
    for (std::size_t d = 0; d < Rank; ++d) off = off * shape_[d] + ix[d];
    return off;
  }

  Shape shape_;
  std::vector<double> data_;
};

}  // namespace hsc

#endif  // HSC_TENSOR_HPP_
