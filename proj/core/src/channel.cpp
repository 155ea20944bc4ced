#include "risopt/channel.hpp"

#include <cmath>

#include "risopt/errors.hpp"

namespace risopt {

CMat gen_rician(Eigen::Index rows, Eigen::Index cols, double beta_db,
                RngStream& rng) {
  const double beta = db_to_linear(beta_db);
  const double w_los = std::sqrt(beta / (1.0 + beta));
  const double w_nlos = std::sqrt(1.0 / (1.0 + beta));
  return w_los * CMat::Ones(rows, cols) +
         w_nlos * rng.cgaussian_matrix(rows, cols);
}

CMat gen_pathloss_rician(Eigen::Index rows, Eigen::Index cols,
                         const PathlossParams& pl, RngStream& rng) {
  return pl.kappa() * CMat::Ones(rows, cols) +
         rng.cgaussian_matrix(rows, cols);
}

ChannelSet make_channel_set(const CMat& F, const CVec& d1, const CVec& d2,
                            const CVec& g1, const CVec& g2) {
  if (d1.size() != d2.size()) throw ConfigError("d1/d2 size mismatch");
  if (g1.size() != g2.size()) throw ConfigError("g1/g2 size mismatch");
  if (F.rows() != g1.size() || F.cols() != d1.size())
    throw ConfigError("F must be n x m");
  ChannelSet cs;
  cs.F = F;
  cs.d1 = d1;
  cs.d2 = d2;
  cs.g1 = g1;
  cs.g2 = g2;
  cs.F1 = F.adjoint() * g1.asDiagonal();
  cs.F2 = F.adjoint() * g2.asDiagonal();
  return cs;
}

ChannelSet make_channel_set(const ScenarioConfig& cfg, std::uint64_t trial) {
  const Eigen::Index m = cfg.m, n = cfg.n;
  RngStream rf(cfg.seed, trial, StreamTag::kChannelF);
  RngStream rd1(cfg.seed, trial, StreamTag::kChannelD1);
  RngStream rd2(cfg.seed, trial, StreamTag::kChannelD2);
  RngStream rg1(cfg.seed, trial, StreamTag::kChannelG1);
  RngStream rg2(cfg.seed, trial, StreamTag::kChannelG2);

  CMat F;
  CVec d1, d2, g1, g2;
  if (cfg.use_pathloss) {
    F = gen_pathloss_rician(n, m, cfg.pl_br, rf);
    d1 = gen_pathloss_rician(m, 1, cfg.pl_bu1, rd1);
    d2 = gen_pathloss_rician(m, 1, cfg.pl_bu2, rd2);
    g1 = gen_pathloss_rician(n, 1, cfg.pl_ru1, rg1);
    g2 = gen_pathloss_rician(n, 1, cfg.pl_ru2, rg2);
  } else {
    F = gen_rician(n, m, cfg.beta_br_db, rf);
    d1 = gen_rician(m, 1, cfg.beta_bu_db, rd1);
    d2 = gen_rician(m, 1, cfg.beta_bu_db, rd2);
    g1 = gen_rician(n, 1, cfg.beta_ru_db, rg1);
    g2 = gen_rician(n, 1, cfg.beta_ru_db, rg2);
  }
  return make_channel_set(F, d1, d2, g1, g2);
}

CVec effective_channel(const ChannelSet& cs, int user, const CVec& x) {
  if (x.size() != cs.g1.size()) throw ConfigError("x has wrong length");
  switch (user) {
    case 1:
      return cs.d1 + cs.F1 * x;
    case 2:
      return cs.d2 + cs.F2 * x;
    default:
      throw ConfigError("user must be 1 or 2");
  }
}

}  // namespace risopt
