#ifndef BERGMAN_CONTOUR_HPP
#define BERGMAN_CONTOUR_HPP

#include <cmath>
#include <vector>

#include "bergman/errors.hpp"
#include "bergman/types.hpp"

namespace bergman {

// M equispaced samples of an analytic function on |zeta| = rho.  The
// trapezoid rule on such samples evaluates Cauchy integrals with spectral
// accuracy: the error at an interior z decays like (|z|/rho)^M.
class ContourGrid {
 public:
  ContourGrid(double rho, int M) : rho_(rho) {
    points_.reserve(std::size_t(M));
    for (int m = 0; m < M; ++m)
      points_.push_back(std::polar(rho, 2 * kPi * m / M));
    samples_.assign(std::size_t(M), cplx(0));
  }

  template <class F>
  static ContourGrid sample(double rho, int M, F&& f) {
    ContourGrid g(rho, M);
    for (int m = 0; m < M; ++m)
      g.samples_[std::size_t(m)] = f(g.points_[std::size_t(m)]);
    return g;
  }

  double rho() const { return rho_; }
  int size() const { return int(points_.size()); }
  const std::vector<cplx>& points() const { return points_; }
  const std::vector<cplx>& samples() const { return samples_; }
  std::vector<cplx>& samples() { return samples_; }

  // (1/2 pi i) oint f(zeta)/(zeta - z) dzeta for |z| < rho.
  cplx cauchy_eval(cplx z) const {
    if (std::abs(z) >= rho_)
      throw PointTooCloseToContour("cauchy_eval: point not inside the contour");
    cplx acc(0);
    for (std::size_t m = 0; m < points_.size(); ++m)
      acc += samples_[m] * points_[m] / (points_[m] - z);
    return acc / double(points_.size());
  }

  // (1/2 pi i) oint f(zeta) zeta^p/(zeta - z) dzeta; p may be negative.
  cplx cauchy_eval_weighted(cplx z, int p) const {
    cplx acc(0);
    for (std::size_t m = 0; m < points_.size(); ++m)
      acc += samples_[m] * ipow(points_[m], p) * points_[m] / (points_[m] - z);
    return acc / double(points_.size());
  }

  double sup_norm() const {
    double s = 0;
    for (const cplx& v : samples_) s = std::max(s, std::abs(v));
    return s;
  }

 private:
  double rho_;
  std::vector<cplx> points_;
  std::vector<cplx> samples_;
};

}  // namespace bergman

#endif  // BERGMAN_CONTOUR_HPP
