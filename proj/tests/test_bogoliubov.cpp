#include "check_util.hpp"

#include "fixtures.hpp"

using namespace rgc;


TEST_CASE("Minkowski-Rindler coefficient relations") {
  const MinkRindCoeff c{Region::I, 1.0, 0.0, Orientation::counter, 0.1};
  const MinkRindCoeff c2{Region::II, 1.0, 0.0, Orientation::counter, 0.1};
  for (double Om : {0.3, 2.0, 7.5})
    for (double k : {-3.0, 0.0, 1.2}) {
      const cplx a = mink_rindler_alpha(c, Om, k), b = mink_rindler_beta(c, Om, k);
      CHECK(std::abs(b + std::exp(-pi * Om) * a) < 1e-15 * std::abs(a));
      CHECK(std::abs(mink_rindler_alpha(c2, Om, k) - std::conj(a)) < 1e-15 * std::abs(a));
      // |α|² = 1/(4πω(1 − e^{−2πν}))·2
      const double om = std::hypot(k, 0.1);
      CHECK(std::norm(a) == Rel(2.0 / ((1.0 - std::exp(-2 * pi * Om)) * 4 * pi * om)).epsilon(1e-12));
    }
  // apex translation shifts only the phase
  MinkRindCoeff cd = c;
  cd.D = 3.0;
  CHECK(std::abs(mink_rindler_alpha(cd, 1.0, 2.0)) == Rel(std::abs(mink_rindler_alpha(c, 1.0, 2.0))));
}

TEST_CASE("passive overlaps at 𝒜 = 0.1") {
  const auto& o = fig8_modes().overlaps;
  // frozen, cut-and-renormalized spectra
  CHECK(std::abs(o.alpha_I) == Rel(0.976719530).epsilon(1e-6));
  CHECK(std::abs(o.beta_I) == Rel(5.5982e-12).epsilon(1e-3));
  CHECK(std::abs(o.alpha_II) == Rel(std::abs(o.alpha_I)).epsilon(1e-9));
  CHECK(std::abs(o.beta_II) == Rel(std::abs(o.beta_I)).epsilon(1e-6));
  // the slice overlap agrees to the cutoff effect
  CHECK(std::abs(kg_inner(fig8_modes().psi_I, fig8_modes().phi_I)) == Rel(0.977164).epsilon(1e-4));
}

TEST_CASE("overlap mismatch in a_conv is rejected") {
  const auto& f = fig8_modes();
  const MinkRindCoeff c{Region::I, 2.0, 0.0, Orientation::counter, 0.1};
  CHECK_THROWS_AS(passive_overlap(minkowski_spectrum(f.phi_I), f.rs_I, c), ParameterError);
}

TEST_CASE("M blocks") {
  const cplx a(0.8, 0.3), b(0.1, -0.2);
  const Eigen::Matrix2d B = block_of<double>(a, b);
  CHECK(B.determinant() == Rel(std::norm(a) - std::norm(b)).epsilon(1e-14));
  OverlapCoeffs o{a, b, cplx(1.0), cplx(0.0)};
  const Eigen::Matrix4d M = build_M<double>(o);
  CHECK(M.bottomRightCorner<2, 2>().isIdentity(0.0));
  CHECK(M.topRightCorner<2, 2>().isZero(0.0));
  // templated scalar
  const Eigen::Matrix<long double, 4, 4> Ml = build_M<long double>(o);
  CHECK(double(Ml(0, 0)) == Rel(M(0, 0)));
}
