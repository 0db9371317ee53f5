#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace ubsea {

/// Binary community assignment. Label 1 is community 1, label 0 community 2.
class Partition {
 public:
  Partition() = default;
  /// Throws std::invalid_argument if any label is not 0 or 1.
  explicit Partition(std::vector<std::uint8_t> labels);

  std::size_t size() const { return labels_.size(); }
  std::int64_t ones() const { return ones_; }
  std::int64_t zeros() const { return static_cast<std::int64_t>(labels_.size()) - ones_; }
  std::uint8_t operator[](std::size_t i) const { return labels_[i]; }
  std::span<const std::uint8_t> labels() const { return labels_; }

  void flip(std::size_t i);
  Partition complement() const;
  /// Same assignment with node i renamed to perm[i].
  Partition relabeled(std::span<const std::int32_t> perm) const;

  bool operator==(const Partition&) const = default;

 private:
  std::vector<std::uint8_t> labels_;
  std::int64_t ones_ = 0;
};

}  // namespace ubsea
