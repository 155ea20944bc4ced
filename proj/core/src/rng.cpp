#include "risopt/rng.hpp"

#include <cmath>

namespace risopt {

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t derive_stream_seed(std::uint64_t seed, std::uint64_t trial,
                                 StreamTag tag) {
  std::uint64_t s = seed;
  std::uint64_t h = splitmix64(s);
  s ^= trial + 0x9e3779b97f4a7c15ULL;
  h ^= splitmix64(s);
  s ^= static_cast<std::uint64_t>(tag) * 0xda942042e4dd58b5ULL;
  h ^= splitmix64(s);
  return h;
}

double RngStream::uniform() {
  // 53 random bits into [0, 1).
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double RngStream::gaussian() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  double u1 = uniform();
  while (u1 <= 0.0) u1 = uniform();
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double a = 2.0 * M_PI * u2;
  spare_ = r * std::sin(a);
  have_spare_ = true;
  return r * std::cos(a);
}

cxd RngStream::cgaussian() {
  // Unit total variance split over the two components.
  const double s = std::sqrt(0.5);
  const double re = gaussian();
  const double im = gaussian();
  return {s * re, s * im};
}

CMat RngStream::cgaussian_matrix(Eigen::Index rows, Eigen::Index cols) {
  CMat out(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) out(i, j) = cgaussian();
  return out;
}

CVec RngStream::cgaussian_vector(Eigen::Index n) {
  CVec out(n);
  for (Eigen::Index i = 0; i < n; ++i) out(i) = cgaussian();
  return out;
}

}  // namespace risopt
