#include "advk/dataset.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

namespace advk {

SyntheticDataset gaussian_blobs(int n, DataRole role, std::uint64_t seed) {
  if (n <= 0) throw std::invalid_argument("dataset size must be positive");
  double means[2][2] = {{0.3, 0.3}, {0.7, 0.7}};
  double sigma = 0.08;
  if (role == DataRole::Shifted) {
    means[0][0] = 0.25; means[0][1] = 0.75;
    means[1][0] = 0.75; means[1][1] = 0.25;
    sigma = 0.1;
  }

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> noise(0.0, sigma);
  SyntheticDataset data;
  data.samples.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const int y = i % 2;
    Vec x(2);
    for (int d = 0; d < 2; ++d)
      x[static_cast<std::size_t>(d)] =
          std::clamp(means[y][d] + noise(rng), 0.0, 1.0);
    data.samples.push_back({std::move(x), y});
  }
  return data;
}

}  // namespace advk
