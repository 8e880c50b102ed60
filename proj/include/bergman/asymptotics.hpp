#ifndef BERGMAN_ASYMPTOTICS_HPP
#define BERGMAN_ASYMPTOTICS_HPP

#include <cmath>
#include <limits>
#include <map>
#include <vector>

#include "bergman/family.hpp"
#include "bergman/moebius.hpp"

namespace bergman {

// ---------------------------------------------------------------------------
// R_j(w, z) and its Maclaurin coefficients

namespace detail {

struct RBranchData {
  cplx x, y;        // y meaningful only in the generic branch
  bool special;     // radius == |center|: the two-term branch
  int epsilon;
  double yx;        // y/x, real by construction
};

inline RBranchData r_branch(const CircularDomain& dom, int j) {
  const DiskData& d = dom.disk(j);
  if (d.concentric) throw CenterAtOrigin(j);
  RBranchData b;
  b.x = d.x_d;
  b.special = d.y_infinite;
  b.epsilon = d.epsilon;
  if (!b.special) {
    b.y = d.y_d;
    b.yx = (d.y_d / d.x_d).real();  // (|c|+r)/(|c|-r), real of either sign
  } else {
    b.y = 0;
    b.yx = 0;
  }
  return b;
}

// Largest |w| at which the two branch guards hold: the square-root argument
// stays off its branch point and the denominator off its zero.
inline double r_guard_radius(const RBranchData& b, cplx z) {
  cplx u = 1.0 - z / b.x;
  if (b.special) return std::norm(u);
  double sq_guard = b.yx * b.yx - 1.0;
  cplx den_coeff = 1.0 - 2.0 * z / (b.y + b.x);
  double den_guard = std::abs(den_coeff) > 1e-300
                         ? std::norm(u) / std::abs(den_coeff)
                         : std::numeric_limits<double>::infinity();
  return std::min(sq_guard, den_guard);
}

}  // namespace detail

// The function R_j(w, z) attached to the j-th disk, both branches.
inline cplx r_function(const CircularDomain& dom, int j, cplx w, cplx z) {
  detail::RBranchData b = detail::r_branch(dom, j);
  if (std::abs(z - b.x) < 1e-12) throw AtPole("r_function: z = x_j");
  if (std::abs(w) >= detail::r_guard_radius(b, z))
    throw BranchGuard("r_function: w outside the Maclaurin disk");
  cplx u = 1.0 - z / b.x;
  if (b.special) return -(u + w * (1.0 + z / b.x)) / (u * u + w);
  double yx = b.yx;
  cplx num = u +
             w * ((b.y - 2.0 * b.x) / (b.y - b.x) +
                  (yx * yx + 1.0) / (yx * yx - 1.0) * (z / b.x)) -
             b.x * w * w / (b.y - b.x);
  cplx den = u * u + w * (1.0 - 2.0 * z / (b.y + b.x));
  // (y/x)^2 - 1 > 0, so the principal square root continues the positive
  // value at w = 0 throughout the guard disk.
  cplx root = std::sqrt(cplx(yx * yx - 1.0) - w);
  return double(b.epsilon) * (yx - 1.0) / root * num / den;
}

// Maclaurin coefficients R_{j,0..K}(z) by trapezoid integration on a circle
// of half the guard radius.
inline std::vector<cplx> r_coefficients(const CircularDomain& dom, int j, cplx z,
                                        int K, int points = 128) {
  detail::RBranchData b = detail::r_branch(dom, j);
  if (std::abs(z - b.x) < 1e-12) throw AtPole("r_coefficients: z = x_j");
  double radius = 0.5 * detail::r_guard_radius(b, z);
  std::vector<cplx> vals(static_cast<std::size_t>(points));
  for (int m = 0; m < points; ++m)
    vals[std::size_t(m)] = r_function(dom, j, std::polar(radius, 2 * kPi * m / points), z);
  std::vector<cplx> coeffs(std::size_t(K) + 1, cplx(0));
  for (int k = 0; k <= K; ++k) {
    cplx acc(0);
    for (int m = 0; m < points; ++m)
      acc += vals[std::size_t(m)] * std::polar(1.0, -2 * kPi * m * k / points);
    coeffs[std::size_t(k)] = acc / (double(points) * std::pow(radius, k));
  }
  return coeffs;
}

// Closed form of R_{j,k}(0).
inline cplx r_coefficient_at_origin(const CircularDomain& dom, int j, int k) {
  detail::RBranchData b = detail::r_branch(dom, j);
  if (b.special) return k == 0 ? cplx(-1.0) : cplx(0.0);
  double yx = b.yx;
  double binom_half = 1.0;  // binomial(1/2, k)
  for (int i = 0; i < k; ++i) binom_half *= (0.5 - i) / (i + 1);
  double sign = (k % 2 == 0) ? 1.0 : -1.0;
  double base = yx * yx - 1.0;
  return b.epsilon * sign * binom_half * (2.0 * k * yx + 1.0) * (yx - 1.0) /
         std::pow(base, k + 0.5);
}

// C_k(z) = sum of R_{j,k}(z) over the disks attaining rho_x.
inline std::vector<cplx> c_coefficients(const CircularDomain& dom, cplx z, int K) {
  std::vector<cplx> out(std::size_t(K) + 1, cplx(0));
  for (int j : dom.argmin_rho_x()) {
    auto rj = r_coefficients(dom, j, z, K);
    for (int k = 0; k <= K; ++k) out[std::size_t(k)] += rj[std::size_t(k)];
  }
  return out;
}

// ---------------------------------------------------------------------------
// Asymptotic expansions

// Partial sums of an asymptotic (not convergent) series: truncation stops at
// the smallest-magnitude term.
struct ExpansionValue {
  cplx base;
  std::vector<cplx> terms;
  std::vector<cplx> partial_sums;          // base + cumulative terms
  std::vector<double> log_gamma_factors;   // log of Gamma(k+1/2)Gamma(n-k+3/2)/Gamma(n+2)
  int used_k = 0;                          // index of the last term kept
  bool degenerate = false;
  double concentric_note = 0;              // separate r^{2n+2} mass of concentric disks

  cplx value() const { return partial_sums.at(std::size_t(used_k)); }
  cplx correction() const { return value() - base; }
};

inline double log_gamma_ratio(int n, int k) {
  return std::lgamma(k + 0.5) + std::lgamma(n - k + 1.5) - std::lgamma(n + 2.0);
}

namespace detail {

inline ExpansionValue build_expansion(const CircularDomain& dom, int n,
                                      const std::vector<cplx>& ck, cplx base) {
  ExpansionValue ev;
  ev.base = base;
  double rho_x = dom.rho_x();
  double front = std::exp(-(2.0 * n + 2.0) * std::log(rho_x)) / (2 * kPi);
  cplx acc = base;
  for (std::size_t k = 0; k < ck.size(); ++k) {
    double lg = log_gamma_ratio(n, int(k));
    ev.log_gamma_factors.push_back(lg);
    cplx term = front * ck[k] * std::exp(lg);
    acc += term;
    ev.terms.push_back(term);
    ev.partial_sums.push_back(acc);
  }
  // Smallest-term truncation.
  ev.used_k = 0;
  for (std::size_t k = 1; k < ev.terms.size(); ++k) {
    if (std::abs(ev.terms[k]) >= std::abs(ev.terms[std::size_t(ev.used_k)])) break;
    ev.used_k = int(k);
  }
  for (const DiskData& d : dom.disks())
    if (d.concentric) ev.concentric_note += std::pow(d.r_d, 2 * n + 2);
  bool deg = true;
  for (int j : dom.argmin_rho_x())
    if (!dom.disk(j).through_origin) deg = false;
  ev.degenerate = deg;
  return ev;
}

}  // namespace detail

// Expansion of (n+1) kappa_n^{-2}; in the degenerate configuration (the
// rho_x disk passes through the origin) C_0(0) = -1 and every later term
// vanishes, which is exactly the explicit single-term form.
inline ExpansionValue kappa_expansion(const CircularDomain& dom, int n, int K) {
  return detail::build_expansion(dom, n, c_coefficients(dom, cplx(0), K), cplx(1));
}

// Expansion of P_n(z)/z^n - 1 for |z| > rho_x.
inline ExpansionValue exterior_expansion(const CircularDomain& dom, int n, cplx z,
                                         int K) {
  if (std::abs(z) <= dom.rho_x())
    throw InsideRhoX("exterior_expansion: |z| must exceed rho_x");
  return detail::build_expansion(dom, n, c_coefficients(dom, z, K), cplx(0));
}

// ---------------------------------------------------------------------------
// Contour integrals I_n and chi_n

namespace detail {

template <class F>
cplx adaptive_circle_integral(double radius, F&& integrand, int m_start,
                              int m_max, double rel_tol) {
  auto once = [&](int M) {
    cplx acc(0);
    for (int m = 0; m < M; ++m) {
      cplx zeta = std::polar(radius, 2 * kPi * m / M);
      acc += integrand(zeta) * zeta;
    }
    return acc / double(M);
  };
  int M = m_start;
  cplx prev = once(M);
  while (2 * M <= m_max) {
    M *= 2;
    cplx cur = once(M);
    if (std::abs(cur - prev) <= rel_tol * (std::abs(cur) + 1e-300)) return cur;
    prev = cur;
  }
  return prev;
}

}  // namespace detail

struct InIntegral {
  cplx integral;
  ExpansionValue expansion;  // -(|x_j|^{-2n-2}/2pi) sum R_{j,k}(z) Gamma-ratio
};

// I_n(z) = (1/2 pi i) oint_{|zeta|=|x_j|} T_j'(zeta) (T_j(zeta)/zeta)^n /
// (zeta - z) dzeta, paired with its large-n expansion.
inline InIntegral i_n_integral(const CircularDomain& dom, int j, int n, cplx z,
                               int K = 4) {
  const DiskData& d = dom.disk(j);
  if (d.concentric) throw CenterAtOrigin(j);
  double radius = d.abs_x;
  if (std::abs(std::abs(z) - radius) < 1e-9 * radius)
    throw OnContour("i_n_integral: |z| = |x_j|");
  Moebius T = tj(dom, j);
  auto integrand = [&](cplx zeta) {
    return T.derivative(zeta) * ipow(T(zeta) / zeta, n) / (zeta - z);
  };
  int m0 = 256;
  while (m0 < 2 * (n + 2)) m0 *= 2;
  cplx val = detail::adaptive_circle_integral(radius, integrand, m0, 1 << 16, 1e-11);

  auto rk = r_coefficients(dom, j, z, K);
  ExpansionValue ev;
  ev.base = 0;
  double front = -std::exp(-(2.0 * n + 2.0) * std::log(radius)) / (2 * kPi);
  cplx acc(0);
  for (int k = 0; k <= K; ++k) {
    double lg = log_gamma_ratio(n, k);
    ev.log_gamma_factors.push_back(lg);
    cplx term = front * rk[std::size_t(k)] * std::exp(lg);
    acc += term;
    ev.terms.push_back(term);
    ev.partial_sums.push_back(acc);
  }
  ev.used_k = 0;
  for (std::size_t k = 1; k < ev.terms.size(); ++k) {
    if (std::abs(ev.terms[k]) >= std::abs(ev.terms[std::size_t(ev.used_k)])) break;
    ev.used_k = int(k);
  }
  return {val, ev};
}

// chi_n(z): the same contour integral with the difference quotient
// ((T/zeta)^n - (T(z)/z)^n)/(zeta - z); analytic across zeta = z, so no
// principal value is involved.  Near-coincident nodes switch to the
// derivative form.
inline cplx chi_n(const CircularDomain& dom, int j, int n, cplx z) {
  const DiskData& d = dom.disk(j);
  if (d.concentric) throw CenterAtOrigin(j);
  if (n == 0) return cplx(0);
  double radius = d.abs_x;
  Moebius T = tj(dom, j);
  cplx gz = T(z) / z;
  cplx gzn = ipow(gz, n);
  auto integrand = [&](cplx zeta) {
    cplx diff = zeta - z;
    if (std::abs(diff) < 1e-8 * radius) {
      // d/dzeta (T/zeta)^n at z: n g^{n-1} (T' zeta - T)/zeta^2
      cplx gprime = (T.derivative(z) * z - T(z)) / (z * z);
      return T.derivative(z) * double(n) * ipow(gz, n - 1) * gprime;
    }
    return T.derivative(zeta) * (ipow(T(zeta) / zeta, n) - gzn) / diff;
  };
  int m0 = 256;
  while (m0 < 2 * (n + 2)) m0 *= 2;
  return detail::adaptive_circle_integral(radius, integrand, m0, 1 << 16, 1e-10);
}

// ---------------------------------------------------------------------------
// Theta and the interior functions

// Theta_sigma(t) = t sum_{v in Z} sigma^v exp(sigma^v t), Re t < 0.  The
// positive-v side decays geometrically, the negative-v side doubly
// exponentially.
inline cplx theta(double sigma, cplx t) {
  if (!(sigma > 0 && sigma < 1)) throw DomainError("theta: sigma must be in (0,1)");
  if (t.real() >= 0) throw DomainError("theta: Re t must be negative");
  cplx sum(0);
  double running_max = 0;
  double p = 1.0;  // sigma^v
  for (int v = 0; v < 6000; ++v) {
    cplx term = p * std::exp(p * t);
    double mag = std::abs(term);
    running_max = std::max(running_max, mag);
    sum += term;
    p *= sigma;
    if (p < 1e-18 * std::max(running_max, 1.0)) break;
  }
  p = 1.0 / sigma;  // sigma^{-1}, -2, ...
  for (int v = 1; v < 6000; ++v) {
    if (p * t.real() < -745.0) break;  // exp underflow: every later term is 0
    cplx term = p * std::exp(p * t);
    double mag = std::abs(term);
    running_max = std::max(running_max, mag);
    sum += term;
    if (mag < 1e-18 * running_max && p * std::abs(t.real()) > 1.0) break;
    p /= sigma;
  }
  return t * sum;
}

// Theta with a per-instance evaluation cache.
class ThetaFunction {
 public:
  explicit ThetaFunction(double sigma) : sigma_(sigma) {}
  double sigma() const { return sigma_; }
  cplx operator()(cplx t) const {
    auto key = std::make_pair(t.real(), t.imag());
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    cplx v = theta(sigma_, t);
    cache_.emplace(key, v);
    return v;
  }

 private:
  double sigma_;
  mutable std::map<std::pair<double, double>, cplx> cache_;
};

struct TailSumValue {
  cplx direct;      // sum_{v>=1} (T_j^v(z))^n (T_j^v)'(z)
  cplx prediction;  // (a^{n+1}/n) (Phi'/Phi)(z) Theta_{sigma^2}(n alpha Phi(z))
};

inline TailSumValue tjv_tail_sum(const CircularDomain& dom, int j, int n, cplx z) {
  const DiskData& d = dom.disk(j);
  if (d.concentric) throw CenterAtOrigin(j);
  if (std::abs(z - d.a_d) < 1e-6) throw TooCloseToAj("tjv_tail_sum: z too close to a_j");
  Moebius T = tj(dom, j);
  cplx w = z, deriv(1);
  cplx direct(0);
  for (int v = 1; v <= 4000; ++v) {
    deriv *= T.derivative(w);
    w = T(w);
    cplx term = ipow(w, n) * deriv;
    direct += term;
    if (std::abs(term) < 1e-30 * (std::abs(direct) + 1e-280) && v > 4) break;
  }
  Moebius phi = phi_j(dom, j);
  double alpha = 1.0 / d.abs_a - d.abs_a;
  cplx phiz = phi(z);
  cplx pred = ipow(cplx(d.a_d), n + 1) / double(n) * phi.derivative(z) / phiz *
              theta(d.sigma_d * d.sigma_d, double(n) * alpha * phiz);
  return {direct, pred};
}

// F_{j,n}(z): the Theta-weighted sum over words that do not end with T_j.
struct FjnValue {
  cplx value;
  double tail;  // heuristic truncation estimate
};

inline FjnValue f_jn(const CircularDomain& dom, const CompositionFamily& fam, int j,
                     int n, cplx z) {
  const DiskData& d = dom.disk(j);
  if (d.concentric || d.abs_a < dom.rho_a() * (1 - 1e-10))
    throw DomainError("f_jn: disk j must attain rho_a");
  for (int k : dom.argmax_rho_a())
    if (std::abs(z - dom.disk(k).a_d) < 1e-6)
      throw OnExceptionalPoint("f_jn: z coincides with an exceptional point a_k");
  Moebius phi = phi_j(dom, j);
  ThetaFunction th(d.sigma_d * d.sigma_d);
  double alpha = 1.0 / d.abs_a - d.abs_a;
  cplx acc(0);
  double weight_max = 0;
  for (const FamilyElement& e : fam.elements()) {
    if (!e.is_identity() && e.outer() == j) continue;  // tau in T_j is excluded
    cplx w = e.map(z);
    cplx phiw = phi(w);
    cplx weight = phi.derivative(w) / phiw * th(double(n) * alpha * phiw);
    if (!e.is_identity()) weight_max = std::max(weight_max, std::abs(weight));
    acc += weight * e.map.derivative(z);
  }
  double dscale = 1.0 - std::abs(z) * dom.rho_a();
  double tail = fam.tail_bound() * std::max(weight_max, 1.0) / (dscale * dscale);
  return {acc, tail};
}

// Theorem-level prediction for P_n(z) on the closed disk of radius rho_a.
inline cplx interior_prediction(const CircularDomain& dom, const CompositionFamily& fam,
                                int n, cplx z) {
  for (int j : dom.argmax_rho_a()) {
    const DiskData& d = dom.disk(j);
    if (std::abs(z - d.a_d) < 1e-9)
      return ipow(cplx(d.a_d), n) / (1.0 - d.sigma_d * d.sigma_d);
  }
  cplx acc = ipow(z, n);
  for (int j : dom.argmax_rho_a()) {
    acc += ipow(cplx(dom.disk(j).a_d), n + 1) / double(n) * f_jn(dom, fam, j, n, z).value;
  }
  return acc;
}

}  // namespace bergman

#endif  // BERGMAN_ASYMPTOTICS_HPP
