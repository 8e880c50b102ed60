#ifndef BERGMAN_KERNEL_HPP
#define BERGMAN_KERNEL_HPP

#include <cmath>
#include <vector>

#include "bergman/family.hpp"
#include "bergman/quadrature.hpp"

namespace bergman {

struct KernelValue {
  cplx value;
  double tail;  // bound on the mass of the truncated family terms
};

namespace detail {

// Images of every excluded word of length > L lie in D(0, m^{L+1}(r0)) with
// r0 = max(|z|, rho_a).
inline double excluded_image_radius(const CircularDomain& dom,
                                    const CompositionFamily& fam, double absz) {
  double r0 = std::max(absz, dom.rho_a());
  return m_iterate(dom, r0, fam.max_len() + 1);
}

}  // namespace detail

// Reproducing kernel by family summation:
//   K(z, zeta) = sum_tau tau'(z) / (1 - tau(z) conj(zeta))^2.
inline KernelValue kernel_sum(const CircularDomain& dom, const CompositionFamily& fam,
                              cplx z, cplx zeta) {
  cplx cz = std::conj(zeta);
  cplx acc(0);
  for (const FamilyElement& e : fam.elements()) {
    cplx w = e.map(z);
    cplx den = 1.0 - w * cz;
    acc += e.map.derivative(z) / (den * den);
  }
  double rex = detail::excluded_image_radius(dom, fam, std::abs(z));
  double gap = 1.0 - rex * std::abs(zeta);
  double dscale = 1.0 - std::abs(z) * dom.rho_a();
  double tail = (gap > 0 && dscale > 0)
                    ? fam.tail_bound() / (dscale * dscale * gap * gap)
                    : std::numeric_limits<double>::infinity();
  return {acc, tail};
}

inline KernelValue kernel_eval(const CircularDomain& dom, const CompositionFamily& fam,
                               cplx z, cplx zeta, double tail_tol = 1e-8) {
  if (std::abs(z) >= 1 || std::abs(zeta) >= 1)
    throw DomainError("kernel_eval: both arguments must lie in the unit disk");
  KernelValue kv = kernel_sum(dom, fam, z, zeta);
  if (!(kv.tail <= tail_tol)) throw TailTooLarge(kv.tail);
  return kv;
}

// Meromorphic kernel
//   M(z, zeta) = sum_tau (tau(z) - tau(0)) / ((zeta - tau(0))(zeta - tau(z))).
inline KernelValue m_kernel_eval(const CircularDomain& dom, const CompositionFamily& fam,
                                 cplx z, cplx zeta) {
  cplx acc(0);
  for (const FamilyElement& e : fam.elements()) {
    cplx w = e.map(z);
    cplx d1 = zeta - e.at_zero;
    cplx d2 = zeta - w;
    if (std::abs(d1) < 1e-13 || std::abs(d2) < 1e-13)
      throw PoleHit("m_kernel_eval: zeta coincides with a family image");
    acc += (w - e.at_zero) / (d1 * d2);
  }
  double rex = detail::excluded_image_radius(dom, fam, std::abs(z));
  double dist = std::abs(zeta) - rex;
  double dscale = 1.0 - std::abs(z) * dom.rho_a();
  double tail = (dist > 0 && dscale > 0)
                    ? fam.tail_bound() * std::abs(z) / (dscale * dscale * dist * dist)
                    : std::numeric_limits<double>::infinity();
  return {acc, tail};
}

// Residual of the reproducing property for a polynomial f (coefficients
// constant-first): | integral f(zeta) K(z, zeta) dA - f(z) |.
inline double reproduce_check(const CircularDomain& dom, const CompositionFamily& fam,
                              const std::vector<cplx>& f_coeffs, cplx z,
                              const QuadratureRule& rule) {
  auto f = [&](cplx w) {
    cplx acc(0);
    for (std::size_t k = f_coeffs.size(); k-- > 0;) acc = acc * w + f_coeffs[k];
    return acc;
  };
  // tau(z) and tau'(z) do not depend on the node.
  std::vector<cplx> tz, tdz;
  tz.reserve(fam.size());
  tdz.reserve(fam.size());
  for (const FamilyElement& e : fam.elements()) {
    tz.push_back(e.map(z));
    tdz.push_back(e.map.derivative(z));
  }
  cplx integral(0);
  for (const QuadratureRule::Node& nd : rule.nodes) {
    cplx cz = std::conj(nd.z);
    cplx k(0);
    for (std::size_t i = 0; i < tz.size(); ++i) {
      cplx den = 1.0 - tz[i] * cz;
      k += tdz[i] / (den * den);
    }
    integral += nd.w * f(nd.z) * k;
  }
  return std::abs(integral - f(z));
}

}  // namespace bergman

#endif  // BERGMAN_KERNEL_HPP
