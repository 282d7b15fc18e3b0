#include "gyration/permutation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "gyration/errors.hpp"

namespace gyration {

GroupPermutation::GroupPermutation(int group_count, int n, std::vector<int> images)
    : group_count_(group_count), n_(n), images_(std::move(images)), inverses_(images_.size()) {
  for (int i = 1; i <= group_count_; ++i) refresh_inverse(i);
}

GroupPermutation::GroupPermutation(int n, const std::vector<std::vector<int>>& parts)
    : group_count_(static_cast<int>(parts.size())), n_(n) {
  if (n_ < 1) throw DomainError("permutation size must be positive");
  images_.reserve(parts.size() * static_cast<std::size_t>(n_));
  for (std::size_t p = 0; p < parts.size(); ++p) {
    const auto& part = parts[p];
    std::vector<bool> seen(static_cast<std::size_t>(n_) + 1, false);
    if (part.size() != static_cast<std::size_t>(n_)) {
      throw DomainError("part " + std::to_string(p + 1) + " has " + std::to_string(part.size()) +
                        " entries, expected " + std::to_string(n_));
    }
    for (int x : part) {
      if (x < 1 || x > n_ || seen[static_cast<std::size_t>(x)]) {
        throw DomainError("part " + std::to_string(p + 1) + " is not a permutation of {1.." + std::to_string(n_) +
                          "}");
      }
      seen[static_cast<std::size_t>(x)] = true;
    }
    images_.insert(images_.end(), part.begin(), part.end());
  }
  inverses_.resize(images_.size());
  for (int i = 1; i <= group_count_; ++i) refresh_inverse(i);
}

GroupPermutation GroupPermutation::identity(int group_count, int n) {
  std::vector<int> images;
  images.reserve(static_cast<std::size_t>(group_count) * static_cast<std::size_t>(n));
  for (int i = 0; i < group_count; ++i) {
    for (int j = 1; j <= n; ++j) images.push_back(j);
  }
  return GroupPermutation(group_count, n, std::move(images));
}

void GroupPermutation::refresh_inverse(int i) {
  const std::size_t base = offset(i);
  for (int j = 1; j <= n_; ++j) {
    inverses_[base + static_cast<std::size_t>(images_[base + static_cast<std::size_t>(j - 1)] - 1)] = j;
  }
}

GroupPermutation GroupPermutation::compose(const GroupPermutation& other) const {
  if (other.n_ != n_ || other.group_count_ != group_count_) {
    throw DomainError("cannot compose permutations of different shapes");
  }
  std::vector<int> images(images_.size());
  for (int i = 1; i <= group_count_; ++i) {
    for (int j = 1; j <= n_; ++j) images[offset(i) + static_cast<std::size_t>(j - 1)] = image(i, other.image(i, j));
  }
  return GroupPermutation(group_count_, n_, std::move(images));
}

GroupPermutation GroupPermutation::reversed(int i) const {
  std::vector<int> images = images_;
  std::reverse(images.begin() + static_cast<std::ptrdiff_t>(offset(i)),
               images.begin() + static_cast<std::ptrdiff_t>(offset(i) + static_cast<std::size_t>(n_)));
  return GroupPermutation(group_count_, n_, std::move(images));
}

bool GroupPermutation::advance() {
  for (int i = group_count_; i >= 1; --i) {
    auto first = images_.begin() + static_cast<std::ptrdiff_t>(offset(i));
    const bool carried = !std::next_permutation(first, first + n_);
    refresh_inverse(i);
    if (!carried) return true;
  }
  return false;
}

void GroupPermutation::shuffle(Rng& rng) {
  for (int i = 1; i <= group_count_; ++i) {
    int* part = images_.data() + offset(i);
    std::iota(part, part + n_, 1);
    for (int k = n_ - 1; k >= 1; --k) {
      std::uniform_int_distribution<int> pick(0, k);
      std::swap(part[k], part[pick(rng)]);
    }
    refresh_inverse(i);
  }
}

double group_cardinality(int group_count, int n) {
  double factorial = 1.0;
  for (int k = 2; k <= n; ++k) factorial *= k;
  return std::pow(factorial, group_count);
}

GroupPermutation group_element_at(int group_count, int n, std::uint64_t rank) {
  std::uint64_t factorial = 1;
  for (int k = 2; k <= n; ++k) factorial *= static_cast<std::uint64_t>(k);

  std::vector<std::vector<int>> parts(static_cast<std::size_t>(group_count));
  // Least significant digit belongs to the last part.
  for (int i = group_count; i >= 1; --i) {
    std::uint64_t digit = rank % factorial;
    rank /= factorial;
    std::vector<int> pool(static_cast<std::size_t>(n));
    std::iota(pool.begin(), pool.end(), 1);
    std::vector<int>& part = parts[static_cast<std::size_t>(i - 1)];
    std::uint64_t block = factorial;
    for (int remaining = n; remaining >= 1; --remaining) {
      block /= static_cast<std::uint64_t>(remaining);
      const auto pick = static_cast<std::size_t>(digit / block);
      digit %= block;
      part.push_back(pool[pick]);
      pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(pick));
    }
  }
  return GroupPermutation(n, parts);
}

int indicator_c(int i, int j, int k, const GroupPermutation& sigma) {
  const int n = sigma.subdivisions();
  if (i < 1 || i > sigma.group_count() || j < 1 || j > n || k < 1 || k > n) {
    throw StructuralError("indicator index (" + std::to_string(i) + "," + std::to_string(j) + "," +
                          std::to_string(k) + ") out of range");
  }
  return sigma.preimage(i, k) <= j ? 1 : 0;
}

}  // namespace gyration
