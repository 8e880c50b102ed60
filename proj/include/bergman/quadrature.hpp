#ifndef BERGMAN_QUADRATURE_HPP
#define BERGMAN_QUADRATURE_HPP

#include <cmath>
#include <vector>

#include "bergman/domain.hpp"
#include "bergman/types.hpp"

namespace bergman {

// Gauss-Legendre nodes and weights on [-1, 1] by Newton iteration on the
// three-term recurrence.
inline void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
  x.assign(std::size_t(n), 0.0);
  w.assign(std::size_t(n), 0.0);
  int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    double z = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double pp = 0;
    for (int it = 0; it < 100; ++it) {
      double p1 = 1.0, p2 = 0.0;
      for (int j = 0; j < n; ++j) {
        double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j + 1.0) * z * p2 - j * p3) / (j + 1.0);
      }
      pp = n * (z * p1 - p2) / (z * z - 1.0);
      double z1 = z;
      z = z1 - p1 / pp;
      if (std::abs(z - z1) < 1e-15) break;
    }
    double p1 = 1.0, p2 = 0.0;
    for (int j = 0; j < n; ++j) {
      double p3 = p2;
      p2 = p1;
      p1 = ((2.0 * j + 1.0) * z * p2 - j * p3) / (j + 1.0);
    }
    pp = n * (z * p1 - p2) / (z * z - 1.0);
    x[std::size_t(i)] = -z;
    x[std::size_t(n - 1 - i)] = z;
    w[std::size_t(i)] = 2.0 / ((1.0 - z * z) * pp * pp);
    w[std::size_t(n - 1 - i)] = w[std::size_t(i)];
  }
}

// Tensor rule over the domain with respect to dA = dxdy/pi: a unit-disk rule
// minus one rule per hole.  Radial direction is Gauss-Legendre in rho^2 (so
// monomial moments integrate exactly up to the rule order), angular is the
// equispaced trapezoid.
struct QuadratureRule {
  struct Node {
    cplx z;
    double w;
  };
  std::vector<Node> nodes;
  int radial_order = 0;
  int angular_order = 0;

  static void append_disk(std::vector<Node>& out, cplx center, double R, double sign,
                          int radial, int angular) {
    std::vector<double> gx, gw;
    gauss_legendre(radial, gx, gw);
    for (int i = 0; i < radial; ++i) {
      double u = 0.5 * (gx[std::size_t(i)] + 1.0);   // in (0,1)
      double wu = 0.5 * gw[std::size_t(i)];
      double rho = R * std::sqrt(u);
      double wnode = sign * R * R * wu / angular;
      for (int k = 0; k < angular; ++k) {
        double th = 2 * kPi * k / angular;
        out.push_back({center + std::polar(rho, th), wnode});
      }
    }
  }

  static QuadratureRule for_domain(const CircularDomain& dom, int radial = 48,
                                   int angular = 192) {
    QuadratureRule rule;
    rule.radial_order = radial;
    rule.angular_order = angular;
    append_disk(rule.nodes, cplx(0), 1.0, +1.0, radial, angular);
    for (const DiskData& d : dom.disks())
      append_disk(rule.nodes, d.c_d, d.r_d, -1.0, radial, angular);
    return rule;
  }

  double weight_sum() const {
    double s = 0;
    for (const Node& n : nodes) s += n.w;
    return s;
  }

  template <class F>
  cplx integrate(F&& f) const {
    cplx acc(0);
    for (const Node& n : nodes) acc += n.w * f(n.z);
    return acc;
  }
};

}  // namespace bergman

#endif  // BERGMAN_QUADRATURE_HPP
