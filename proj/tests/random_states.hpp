#pragma once

#include <random>

#include "rgc/channel.hpp"

// Random two-mode symplectic from squeezers, phase rotations and a beam splitter.
inline Eigen::Matrix4d random_symplectic(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> ang(0.0, 2.0 * rgc::pi), sq(-0.8, 0.8);
  auto rot = [&]() {
    Eigen::Matrix4d R = Eigen::Matrix4d::Zero();
    for (int k = 0; k < 2; ++k) {
      const double t = ang(rng);
      R.block<2, 2>(2 * k, 2 * k) << std::cos(t), std::sin(t), -std::sin(t), std::cos(t);
    }
    return R;
  };
  auto squeeze = [&]() {
    const double a = sq(rng), b = sq(rng);
    return Eigen::Vector4d(std::exp(a), std::exp(-a), std::exp(b), std::exp(-b)).asDiagonal().toDenseMatrix();
  };
  const double t = ang(rng);
  Eigen::Matrix4d B;
  B << std::cos(t) * Eigen::Matrix2d::Identity(), std::sin(t) * Eigen::Matrix2d::Identity(),
      -std::sin(t) * Eigen::Matrix2d::Identity(), std::cos(t) * Eigen::Matrix2d::Identity();
  return rot() * squeeze() * B * rot() * squeeze() * rot();
}

// nu1, nu2 >= 1 symplectic eigenvalues; pure when both are 1
inline Eigen::Matrix4d random_covariance(std::mt19937_64& rng, bool pure = false) {
  std::uniform_real_distribution<double> th(1.0, 3.0);
  const double a = pure ? 1.0 : th(rng), b = pure ? 1.0 : th(rng);
  const Eigen::Matrix4d S = random_symplectic(rng);
  const Eigen::Matrix4d D = Eigen::Vector4d(a, a, b, b).asDiagonal();
  return S * D * S.transpose();
}
