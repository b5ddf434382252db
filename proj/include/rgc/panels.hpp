#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "rgc/quadrature.hpp"

namespace rgc {

// Piecewise Gauss-Legendre sampling of an interval, with barycentric
// interpolation inside each panel.
class PanelGrid {
 public:
  PanelGrid() = default;

  PanelGrid(Eigen::VectorXd edges, int order) : edges_(std::move(edges)), order_(order) {
    if (edges_.size() < 2 || order_ < 2) throw std::invalid_argument("PanelGrid: bad layout");
    std::vector<double> x, w;
    gauss_legendre(order_, x, w);
    ref_x_ = Eigen::Map<Eigen::VectorXd>(x.data(), order_);
    ref_w_ = Eigen::Map<Eigen::VectorXd>(w.data(), order_);
    bary_.resize(order_);
    for (int j = 0; j < order_; ++j)
      bary_[j] = ((j % 2) ? -1.0 : 1.0) * std::sqrt((1.0 - ref_x_[j] * ref_x_[j]) * ref_w_[j]);
    const Eigen::Index p = panels();
    nodes_.resize(p * order_);
    weights_.resize(p * order_);
    for (Eigen::Index i = 0; i < p; ++i) {
      const double a = edges_[i], b = edges_[i + 1];
      if (!(b > a)) throw std::invalid_argument("PanelGrid: edges must increase");
      const double c = 0.5 * (a + b), h = 0.5 * (b - a);
      nodes_.segment(i * order_, order_) = (c + h * ref_x_.array()).matrix();
      weights_.segment(i * order_, order_) = h * ref_w_;
    }
  }

  static PanelGrid uniform(double a, double b, Eigen::Index panels, int order) {
    return PanelGrid(Eigen::VectorXd::LinSpaced(panels + 1, a, b), order);
  }

  Eigen::Index panels() const { return edges_.size() - 1; }
  Eigen::Index size() const { return nodes_.size(); }
  int order() const { return order_; }
  double lower() const { return edges_[0]; }
  double upper() const { return edges_[edges_.size() - 1]; }
  const Eigen::VectorXd& edges() const { return edges_; }
  const Eigen::VectorXd& nodes() const { return nodes_; }
  const Eigen::VectorXd& weights() const { return weights_; }

  Eigen::Index panel_of(double s) const {
    auto it = std::upper_bound(edges_.data(), edges_.data() + edges_.size(), s);
    Eigen::Index i = (it - edges_.data()) - 1;
    return std::clamp<Eigen::Index>(i, 0, panels() - 1);
  }

  // Interpolate samples (one per node); zero outside the covered interval.
  template <class Derived>
  typename Derived::Scalar interpolate(const Eigen::MatrixBase<Derived>& vals, double s) const {
    using S = typename Derived::Scalar;
    if (!(s >= lower() && s <= upper())) return S(0);
    const Eigen::Index i = panel_of(s);
    const double a = edges_[i], b = edges_[i + 1];
    const double t = (2.0 * s - a - b) / (b - a);
    S num(0);
    double den = 0.0;
    for (int j = 0; j < order_; ++j) {
      const double d = t - ref_x_[j];
      if (d == 0.0) return vals[i * order_ + j];
      const double q = bary_[j] / d;
      num += q * vals[i * order_ + j];
      den += q;
    }
    return num / den;
  }

 private:
  Eigen::VectorXd edges_;
  int order_ = 0;
  Eigen::VectorXd ref_x_, ref_w_, bary_;
  Eigen::VectorXd nodes_, weights_;
};

}  // namespace rgc
