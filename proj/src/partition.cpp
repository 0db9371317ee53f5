#include "ubsea/partition.hpp"

#include <stdexcept>

namespace ubsea {

Partition::Partition(std::vector<std::uint8_t> labels) : labels_(std::move(labels)) {
  for (auto l : labels_) {
    if (l > 1) throw std::invalid_argument("labels must be 0 or 1");
    ones_ += l;
  }
}

void Partition::flip(std::size_t i) {
  ones_ += labels_[i] ? -1 : 1;
  labels_[i] ^= 1;
}

Partition Partition::complement() const {
  Partition out = *this;
  for (auto& l : out.labels_) l ^= 1;
  out.ones_ = zeros();
  return out;
}

Partition Partition::relabeled(std::span<const std::int32_t> perm) const {
  if (perm.size() != labels_.size()) throw std::invalid_argument("permutation length mismatch");
  std::vector<std::uint8_t> out(labels_.size());
  for (std::size_t i = 0; i < labels_.size(); ++i) out[perm[i]] = labels_[i];
  return Partition(std::move(out));
}

}  // namespace ubsea
