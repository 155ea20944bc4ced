#include <cmath>
#include <vector>

#include "doctest.h"
#include "risopt/channel.hpp"
#include "risopt/rng.hpp"
#include "test_support.hpp"

using namespace risopt;
using namespace risopt::testing;

TEST_SUITE("channel") {
  TEST_CASE("strong specular factor drives the draw to all-ones") {
    RngStream rng(3);  // fixed draw with the scatter component inside 1e-3
    const CMat H = gen_rician(2, 2, 60.0, rng);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        CHECK(std::abs(H(i, j) - cxd(1, 0)) <= 1e-3);
  }

  TEST_CASE("3 dB factor: sample moments match the mixture weights") {
    RngStream rng(0);
    const int n = 10000;
    std::vector<cxd> draws(n);
    cxd mean = 0;
    for (auto& z : draws) {
      z = gen_rician(1, 1, 3.0, rng)(0, 0);
      mean += z;
    }
    mean /= double(n);
    double var = 0;
    for (const auto& z : draws) var += std::norm(z - mean);
    var /= double(n);
    const double beta = std::pow(10.0, 0.3);
    CHECK(std::abs(mean - std::sqrt(beta / (1 + beta))) <= 0.02);
    CHECK(std::abs(var - 1 / (1 + beta)) <= 0.02);
  }

  TEST_CASE("mixture weights are complementary for any factor") {
    for (double beta_db : {-10.0, 0.0, 3.0, 17.0}) {
      const double beta = std::pow(10.0, beta_db / 10.0);
      const double w_los = std::sqrt(beta / (1 + beta));
      const double w_nlos = std::sqrt(1 / (1 + beta));
      CHECK(w_los * w_los + w_nlos * w_nlos == doctest::Approx(1.0).epsilon(1e-15));
    }
  }

  TEST_CASE("generator is a pure function of the stream seed") {
    RngStream a(17), b(17), c(18);
    const CMat ha = gen_rician(3, 2, 3.0, a);
    const CMat hb = gen_rician(3, 2, 3.0, b);
    const CMat hc = gen_rician(3, 2, 3.0, c);
    CHECK((ha - hb).norm() == 0.0);
    CHECK((ha - hc).norm() > 0.0);
    RngStream d(17), e(17);
    const CMat hd = gen_pathloss_rician(3, 2, {-20.0, 2.0, 50.0}, d);
    const CMat he = gen_pathloss_rician(3, 2, {-20.0, 2.0, 50.0}, e);
    CHECK((hd - he).norm() == 0.0);
  }

  TEST_CASE("attenuated specular mean shows up in the sample average") {
    // kappa = 10^-2 * 10^-2 = 1e-4 at c = -20 dB, rho = 2, d = 10.
    RngStream rng(3);
    CMat acc = CMat::Zero(2, 2);
    const int n = 10000;
    for (int k = 0; k < n; ++k)
      acc += gen_pathloss_rician(2, 2, {-20.0, 2.0, 10.0}, rng);
    acc /= double(n);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        CHECK(std::abs(acc(i, j) - cxd(1e-4, 0)) <= 0.02);
  }

  TEST_CASE("unit gain and zero exponent reduce to ones plus scatter") {
    RngStream a(9), b(9);
    const CMat hp = gen_pathloss_rician(2, 3, {0.0, 0.0, 123.0}, a);
    const CMat g = b.cgaussian_matrix(2, 3);
    CHECK((hp - (CMat::Ones(2, 3) + g)).norm() <= 1e-12 * hp.norm());
  }

  TEST_CASE("distant link degenerates to pure scatter") {
    RngStream rng(66);
    cxd acc = 0;
    const int n = 10000;
    for (int k = 0; k < n; ++k)
      acc += gen_pathloss_rician(2, 2, {-20.0, 2.0, 1e9}, rng).sum();
    CHECK(std::abs(acc / double(4 * n)) <= 1e-3);
  }

  TEST_CASE("make_channel_set shapes and caching") {
    const auto sc = scenario(2, 4, 1.0, 1e-8, 5);
    const auto cs = make_channel_set(sc, 0);
    CHECK(cs.m() == 2);
    CHECK(cs.n() == 4);
    CHECK(cs.F.rows() == 4);
    CHECK(cs.F.cols() == 2);
    CHECK(cs.d1.size() == 2);
    CHECK(cs.g2.size() == 4);
    CHECK(cs.F1.rows() == 2);
    CHECK(cs.F1.cols() == 4);
    // Cached maps match their definition F_j = F^H Diag(g_j).
    CHECK((cs.F1 - cs.F.adjoint() * cs.g1.asDiagonal().toDenseMatrix()).norm() <=
          1e-14 * cs.F1.norm());
    CHECK((cs.F2 - cs.F.adjoint() * cs.g2.asDiagonal().toDenseMatrix()).norm() <=
          1e-14 * cs.F2.norm());
  }

  TEST_CASE("make_channel_set is deterministic per (seed, trial)") {
    const auto sc = scenario(3, 5, 1.0, 1e-8, 42);
    const auto a = make_channel_set(sc, 7);
    const auto b = make_channel_set(sc, 7);
    const auto c = make_channel_set(sc, 8);
    CHECK((a.F - b.F).norm() == 0.0);
    CHECK((a.d1 - b.d1).norm() == 0.0);
    CHECK((a.g2 - b.g2).norm() == 0.0);
    CHECK((a.F - c.F).norm() > 0.0);
  }

  TEST_CASE("zero reflector link annihilates the cascade") {
    const auto sc = scenario(2, 4, 1.0, 1e-8, 5);
    auto cs = make_channel_set(sc, 0);
    const auto z = make_channel_set(cs.F, cs.d1, cs.d2, CVec::Zero(4),
                                    CVec::Zero(4));
    CHECK(z.F1.norm() == 0.0);
    CHECK(z.F2.norm() == 0.0);
    RngStream rng(1);
    const CVec x = rng.cgaussian_vector(4);
    CHECK((effective_channel(z, 1, x) - cs.d1).norm() == 0.0);
    CHECK((effective_channel(z, 2, x) - cs.d2).norm() == 0.0);
  }

  TEST_CASE("effective channel equals the phase-shift matrix path") {
    const auto sc = scenario(3, 6, 1.0, 1e-8, 9);
    const auto cs = make_channel_set(sc, 2);
    RngStream rng(4);
    for (int rep = 0; rep < 100; ++rep) {
      const CVec x = rng.cgaussian_vector(6);
      const CMat theta = x.conjugate().asDiagonal();  // Theta = Diag(conj(x))
      const CVec h1 = cs.d1 + cs.F.adjoint() * theta.adjoint() * cs.g1;
      const CVec h2 = cs.d2 + cs.F.adjoint() * theta.adjoint() * cs.g2;
      const CVec e1 = effective_channel(cs, 1, x);
      const CVec e2 = effective_channel(cs, 2, x);
      CHECK((h1 - e1).norm() <= 1e-10 * e1.norm());
      CHECK((h2 - e2).norm() <= 1e-10 * e2.norm());
    }
  }

  TEST_CASE("effective channel: zero surface gives the direct link") {
    const auto sc = scenario(2, 4, 1.0, 1e-8, 5);
    const auto cs = make_channel_set(sc, 1);
    CHECK((effective_channel(cs, 1, CVec::Zero(4)) - cs.d1).norm() == 0.0);
    CHECK((effective_channel(cs, 2, CVec::Zero(4)) - cs.d2).norm() == 0.0);
  }

  TEST_CASE("effective channel is affine in the surface vector") {
    const auto sc = scenario(2, 5, 1.0, 1e-8, 13);
    const auto cs = make_channel_set(sc, 0);
    RngStream rng(8);
    for (int rep = 0; rep < 20; ++rep) {
      const CVec xa = rng.cgaussian_vector(5);
      const CVec xb = rng.cgaussian_vector(5);
      const double al = rng.uniform();
      const CVec lhs = effective_channel(cs, 1, al * xa + (1 - al) * xb);
      const CVec rhs = al * effective_channel(cs, 1, xa).eval() +
                       (1 - al) * effective_channel(cs, 1, xb).eval();
      CHECK((lhs - rhs).norm() <= 1e-12 * (1 + rhs.norm()));
    }
  }
}
