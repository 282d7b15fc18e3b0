#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "gyration/random.hpp"

namespace gyration {

/// An element of S = (S_n)^e': one permutation of {1..n} per structure edge,
/// stored in one-line notation (1-based) with the inverse kept alongside.
class GroupPermutation {
 public:
  /// Throws DomainError unless every part is a bijection on {1..n}.
  GroupPermutation(int n, const std::vector<std::vector<int>>& parts);

  static GroupPermutation identity(int group_count, int n);

  int subdivisions() const noexcept { return n_; }
  int group_count() const noexcept { return group_count_; }

  /// sigma_i(j)
  int image(int i, int j) const noexcept { return images_[offset(i) + static_cast<std::size_t>(j - 1)]; }
  /// sigma_i^{-1}(k)
  int preimage(int i, int k) const noexcept { return inverses_[offset(i) + static_cast<std::size_t>(k - 1)]; }
  std::span<const int> part(int i) const noexcept { return {images_.data() + offset(i), static_cast<std::size_t>(n_)}; }

  /// (this o other)_i = this_i o other_i
  GroupPermutation compose(const GroupPermutation& other) const;
  /// Same element with part i reversed: result_i(j) = this_i(n + 1 - j).
  GroupPermutation reversed(int i) const;

  /// Lexicographic successor over (part 1, ..., part e'), part 1 most
  /// significant. Returns false (and wraps to the identity) after the last element.
  bool advance();
  /// Replaces every part with an independent uniform permutation (Fisher-Yates).
  void shuffle(Rng& rng);

  friend bool operator==(const GroupPermutation& a, const GroupPermutation& b) {
    return a.n_ == b.n_ && a.images_ == b.images_;
  }

 private:
  GroupPermutation(int group_count, int n, std::vector<int> images);
  std::size_t offset(int i) const noexcept { return static_cast<std::size_t>(i - 1) * static_cast<std::size_t>(n_); }
  void refresh_inverse(int i);

  int group_count_;
  int n_;
  std::vector<int> images_;
  std::vector<int> inverses_;
};

/// (n!)^e' in floating point; exact whenever it is below 2^53.
double group_cardinality(int group_count, int n);

/// The element at position `rank` of the enumeration order used by enumerate_group.
GroupPermutation group_element_at(int group_count, int n, std::uint64_t rank);

/// 1 iff sigma_i^{-1}(k) <= j. Throws StructuralError on out-of-range indices.
int indicator_c(int i, int j, int k, const GroupPermutation& sigma);

}  // namespace gyration
