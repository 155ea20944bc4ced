#pragma once

#include "risopt/config.hpp"
#include "risopt/linalg.hpp"
#include "risopt/rng.hpp"

namespace risopt {

/// One realization of all links for a two-user downlink with a reflecting
/// surface: F is the base-to-surface matrix (N x M), d_j the direct links
/// (M), g_j the surface-to-user links (N). F1/F2 cache the compound
/// surface channels F^H diag(g_j) (M x N) so that the effective channel of
/// user j is h_j = d_j + F_j x, with x the conjugated reflection
/// coefficients.
struct ChannelSet {
  CMat F;        ///< N x M
  CVec d1, d2;   ///< M
  CVec g1, g2;   ///< N
  CMat F1, F2;   ///< M x N, derived

  int m() const { return static_cast<int>(d1.size()); }
  int n() const { return static_cast<int>(g1.size()); }
};

/// Rician mixture: sqrt(beta/(1+beta)) * ones + sqrt(1/(1+beta)) * G with G
/// i.i.d. CN(0,1) and beta = 10^(beta_db/10).
CMat gen_rician(Eigen::Index rows, Eigen::Index cols, double beta_db,
                RngStream& rng);

/// Line-of-sight scaled variant: kappa * ones + G, where kappa comes from
/// the pathloss parameters and G stays i.i.d. CN(0,1).
CMat gen_pathloss_rician(Eigen::Index rows, Eigen::Index cols,
                         const PathlossParams& pl, RngStream& rng);

/// Assemble the channel set from explicit links (validates dimensions and
/// caches F1/F2). This is also the test hook for synthetic channels.
ChannelSet make_channel_set(const CMat& F, const CVec& d1, const CVec& d2,
                            const CVec& g1, const CVec& g2);

/// Draw all five links for the given scenario and trial index. Each link
/// uses its own stream derived from (cfg.seed, trial, link tag).
ChannelSet make_channel_set(const ScenarioConfig& cfg, std::uint64_t trial);

/// h_j = d_j + F_j x for user j in {1, 2}.
CVec effective_channel(const ChannelSet& cs, int user, const CVec& x);

}  // namespace risopt
