#pragma once

#include <cstdint>
#include <vector>

namespace advk {

using Vec = std::vector<double>;

struct Sample {
  Vec x;
  int y = 0;
};

struct SyntheticDataset {
  std::vector<Sample> samples;
  int dim = 2;
  int classes = 2;
};

// Which slice of the synthetic world a dataset plays:
//   Train            the defender's own training data
//   SameDistribution fresh draws from the same two blobs
//   Shifted          a different distribution (different blob centers)
enum class DataRole { Train, SameDistribution, Shifted };

// Two gaussian blobs in the unit square, one per class, clipped to [0, 1]^2.
// Train/SameDistribution use means (0.3, 0.3) and (0.7, 0.7) with sigma 0.08.
SyntheticDataset gaussian_blobs(int n, DataRole role, std::uint64_t seed);

}  // namespace advk
