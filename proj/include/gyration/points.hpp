#pragma once

#include <cassert>
#include <cstddef>
#include <span>
#include <vector>

namespace gyration {

using Point = std::vector<double>;

/// A packed sequence of points in R^d, row-major: point k occupies
/// coords()[k*dim, (k+1)*dim).
class Points {
 public:
  Points() = default;
  Points(std::size_t dim, std::size_t count) : dim_(dim), coords_(dim * count, 0.0) {}
  Points(std::size_t dim, std::vector<double> coords) : dim_(dim), coords_(std::move(coords)) {
    assert(dim_ > 0 && coords_.size() % dim_ == 0);
  }

  std::size_t dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return dim_ == 0 ? 0 : coords_.size() / dim_; }
  bool empty() const noexcept { return size() == 0; }

  std::span<double> operator[](std::size_t k) { return {coords_.data() + k * dim_, dim_}; }
  std::span<const double> operator[](std::size_t k) const { return {coords_.data() + k * dim_, dim_}; }

  std::span<const double> coords() const noexcept { return coords_; }
  std::span<double> coords() noexcept { return coords_; }

  void push_back(std::span<const double> p) {
    assert(p.size() == dim_);
    coords_.insert(coords_.end(), p.begin(), p.end());
  }

  friend bool operator==(const Points&, const Points&) = default;

 private:
  std::size_t dim_ = 0;
  std::vector<double> coords_;
};

inline double squared_norm(std::span<const double> a) {
  double s = 0.0;
  for (double x : a) s += x * x;
  return s;
}

inline double squared_distance(std::span<const double> a, std::span<const double> b) {
  assert(a.size() == b.size());
  double s = 0.0;
  for (std::size_t c = 0; c < a.size(); ++c) {
    const double t = a[c] - b[c];
    s += t * t;
  }
  return s;
}

}  // namespace gyration
