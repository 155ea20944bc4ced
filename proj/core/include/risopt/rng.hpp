#pragma once

#include <cstdint>
#include <random>

#include "risopt/linalg.hpp"

namespace risopt {

/// Tags identifying the independent random streams of one trial.
/// Each (seed, trial, tag) triple maps to its own generator, so adding a
/// consumer never perturbs the draws of another.
enum class StreamTag : std::uint64_t {
  kChannelF = 1,
  kChannelD1 = 2,
  kChannelD2 = 3,
  kChannelG1 = 4,
  kChannelG2 = 5,
  kAdmmInit = 6,
  kRandomPhase = 7,
};

/// SplitMix64 step; used to hash (seed, trial, tag) into a stream seed.
std::uint64_t splitmix64(std::uint64_t& state);

/// Collapse (seed, trial, tag) into a single well-mixed 64-bit stream seed.
std::uint64_t derive_stream_seed(std::uint64_t seed, std::uint64_t trial,
                                 StreamTag tag);

/// Deterministic random stream. Gaussians come from a fixed Box-Muller on
/// top of mt19937_64 so sequences do not depend on the standard library's
/// distribution internals.
class RngStream {
 public:
  explicit RngStream(std::uint64_t stream_seed) : engine_(stream_seed) {}
  RngStream(std::uint64_t seed, std::uint64_t trial, StreamTag tag)
      : engine_(derive_stream_seed(seed, trial, tag)) {}

  /// Uniform on [0, 1).
  double uniform();
  /// Standard real normal N(0, 1).
  double gaussian();
  /// Circularly symmetric complex normal CN(0, 1).
  cxd cgaussian();

  /// Matrix with i.i.d. CN(0,1) entries.
  CMat cgaussian_matrix(Eigen::Index rows, Eigen::Index cols);
  /// Vector with i.i.d. CN(0,1) entries.
  CVec cgaussian_vector(Eigen::Index n);

 private:
  std::mt19937_64 engine_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace risopt
