#ifndef BERGMAN_DOMAIN_HPP
#define BERGMAN_DOMAIN_HPP

#include <algorithm>
#include <limits>
#include <optional>
#include <utility>
#include <vector>

#include "bergman/errors.hpp"
#include "bergman/types.hpp"

namespace bergman {

// Input description of one removed disk. Center and radius are kept in
// extended precision so that decimal string inputs survive intact.
struct DiskSpec {
  mpcplx center;
  mpreal radius;

  DiskSpec(mpcplx c, mpreal r) : center(std::move(c)), radius(std::move(r)) {}
  DiskSpec(double cx, double cy, double r) : center(mpreal(cx), mpreal(cy)), radius(r) {}
  DiskSpec(const std::string& cx, const std::string& cy, const std::string& r)
      : center(mpreal(cx), mpreal(cy)), radius(r) {}
};

// a is the attracting fixed point of T(z) = ((r^2-|c|^2) z + c)/(1 - conj(c) z)
// inside the unit disk, sigma^2 its multiplier.  The quadratic
// conj(c) z^2 + (r^2-|c|^2-1) z + c = 0 has real discriminant
// ((1-|c|)^2-r^2)((1+|c|)^2-r^2) > 0, and the rationalized root
//   a = 2c / (1+|c|^2-r^2 + sqrt(disc))
// is stable for all centers including c = 0.
inline std::pair<mpcplx, mpreal> derive_pair(const mpcplx& c, const mpreal& r) {
  mpreal c2 = norm(c);
  mpreal b = 1 + c2 - r * r;
  mpreal disc = b * b - 4 * c2;
  mpreal den = b + sqrt(disc);
  mpcplx a = 2 * c / den;
  // 1 - conj(c) a = 1 - 2|c|^2/den is real and positive, so sigma = r / (1 - conj(c) a).
  mpreal sigma = r / (1 - 2 * c2 / den);
  return {a, sigma};
}

struct CriticalData {
  mpcplx x;
  mpcplx y;          // meaningful only if !y_infinite
  bool y_infinite;   // radius == |center|: the circle passes through the origin
  int epsilon;       // +1 if r >= |c| (origin inside the closed disk), -1 otherwise
  mpcplx pole;       // pole of T_j, equals 1/conj(c)
};

// Reflection data x, y of the two intersections of T(c,r) with the ray
// through c, the orientation sign, and the pole of T_j.
inline CriticalData critical_data(const mpcplx& c, const mpreal& r, int index = 0) {
  mpreal ac = abs(c);
  if (ac == 0) throw CenterAtOrigin(index);
  CriticalData out;
  mpcplx u = c / ac;
  out.x = u / (ac + r);
  // Equality r == |c| is decided up to a few ulps of the working precision;
  // inputs are exact so this only absorbs the rounding of |c| itself.
  mpreal gap = ac - r;
  mpreal tol = ldexp(mpreal(1), -(int(kDigitsDefault * 3.32) - 8));
  if (abs(gap) <= tol * (ac + r)) {
    out.y_infinite = true;
    out.y = mpcplx(0);
    out.pole = 2 * out.x;
  } else {
    out.y_infinite = false;
    out.y = u / gap;
    out.pole = 2 * out.x * out.y / (out.y + out.x);
  }
  out.epsilon = (r >= ac || out.y_infinite) ? 1 : -1;
  return out;
}

// One removed disk with every derived invariant, in extended precision plus
// double mirrors for the fast paths.
struct DiskData {
  mpcplx center;
  mpreal radius;
  mpcplx a;
  mpreal sigma;
  bool concentric = false;      // center == 0: x, y, epsilon, pole undefined
  bool through_origin = false;  // radius == |center|
  mpcplx x, y;
  bool y_infinite = false;
  int epsilon = 0;
  mpcplx pole;

  cplx c_d;
  double r_d = 0;
  cplx a_d;
  double sigma_d = 0;
  cplx x_d, y_d, pole_d;
  double abs_a = 0, abs_x = 0;
};

// A circular multiply connected domain: the open unit disk minus s disjoint
// closed subdisks.  Immutable after construction.
class CircularDomain {
 public:
  static CircularDomain validate(const std::vector<DiskSpec>& disks) {
    if (disks.empty()) throw DomainError("domain needs at least one removed disk");
    const mpreal margin("1e-12");
    for (std::size_t i = 0; i < disks.size(); ++i) {
      if (disks[i].radius <= 0) throw DomainError("disk radius must be positive");
      if (abs(disks[i].center) + disks[i].radius >= 1 - margin)
        throw DiskNotContained(int(i));
    }
    for (std::size_t i = 0; i < disks.size(); ++i)
      for (std::size_t j = i + 1; j < disks.size(); ++j)
        if (abs(disks[i].center - disks[j].center) <=
            disks[i].radius + disks[j].radius + margin)
          throw DisksOverlap(int(i), int(j));

    CircularDomain dom;
    for (std::size_t i = 0; i < disks.size(); ++i) {
      DiskData d;
      d.center = disks[i].center;
      d.radius = disks[i].radius;
      auto [a, sigma] = derive_pair(d.center, d.radius);
      d.a = a;
      d.sigma = sigma;
      d.concentric = (d.center == mpcplx(0));
      if (!d.concentric) {
        CriticalData cd = critical_data(d.center, d.radius, int(i));
        d.x = cd.x;
        d.y = cd.y;
        d.y_infinite = cd.y_infinite;
        d.epsilon = cd.epsilon;
        d.pole = cd.pole;
        d.through_origin = cd.y_infinite;
      }
      d.c_d = to_cplx(d.center);
      d.r_d = to_double(d.radius);
      d.a_d = to_cplx(d.a);
      d.sigma_d = to_double(d.sigma);
      d.abs_a = std::abs(d.a_d);
      if (!d.concentric) {
        d.x_d = to_cplx(d.x);
        d.y_d = d.y_infinite ? cplx(0) : to_cplx(d.y);
        d.pole_d = to_cplx(d.pole);
        d.abs_x = std::abs(d.x_d);
      }
      dom.disks_.push_back(std::move(d));
    }
    for (const DiskData& d : dom.disks_) {
      dom.rho_a_ = std::max(dom.rho_a_, d.abs_a);
      if (!d.concentric)
        dom.rho_x_ = dom.rho_x_ ? std::min(*dom.rho_x_, d.abs_x)
                                : std::optional<double>(d.abs_x);
    }
    return dom;
  }

  const std::vector<DiskData>& disks() const { return disks_; }
  const DiskData& disk(int j) const { return disks_.at(std::size_t(j)); }
  int s() const { return int(disks_.size()); }

  double rho_a() const { return rho_a_; }
  bool has_rho_x() const { return rho_x_.has_value(); }
  double rho_x() const {
    if (!rho_x_) throw DomainError("rho_x undefined: every removed disk is concentric");
    return *rho_x_;
  }
  // Largest disk about the origin on which the whole family is analytic.
  double rho_a_inv() const {
    return rho_a_ > 0 ? 1.0 / rho_a_ : std::numeric_limits<double>::infinity();
  }
  bool all_concentric() const { return !rho_x_.has_value(); }

  // Indices attaining rho_a (resp. rho_x) within a relative tie tolerance.
  std::vector<int> argmax_rho_a(double tie_tol = 1e-10) const {
    std::vector<int> out;
    for (int j = 0; j < s(); ++j)
      if (disks_[std::size_t(j)].abs_a >= rho_a_ * (1 - tie_tol)) out.push_back(j);
    return out;
  }
  std::vector<int> argmin_rho_x(double tie_tol = 1e-10) const {
    std::vector<int> out;
    if (!rho_x_) return out;
    for (int j = 0; j < s(); ++j) {
      const DiskData& d = disks_[std::size_t(j)];
      if (!d.concentric && d.abs_x <= *rho_x_ * (1 + tie_tol)) out.push_back(j);
    }
    return out;
  }

 private:
  std::vector<DiskData> disks_;
  double rho_a_ = 0;
  std::optional<double> rho_x_;
};

}  // namespace bergman

#endif  // BERGMAN_DOMAIN_HPP
