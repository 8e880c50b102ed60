#ifndef BERGMAN_MOEBIUS_HPP
#define BERGMAN_MOEBIUS_HPP

#include <cmath>
#include <utility>

#include "bergman/domain.hpp"
#include "bergman/errors.hpp"
#include "bergman/types.hpp"

namespace bergman {

// Fractional linear map z -> (az + b)/(cz + d) with nonzero determinant.
// Coefficients are kept normalized (largest modulus 1, made real positive)
// so that deep compositions neither overflow nor drift in scale and maps can
// be compared coefficient-wise.
class Moebius {
 public:
  Moebius() : a_(1), b_(0), c_(0), d_(1) {}
  Moebius(cplx a, cplx b, cplx c, cplx d) : a_(a), b_(b), c_(c), d_(d) { normalize(); }

  static Moebius identity() { return Moebius(); }
  static Moebius scaling(cplx s) { return Moebius(s, 0, 0, 1); }

  cplx operator()(cplx z) const { return (a_ * z + b_) / (c_ * z + d_); }

  cplx derivative(cplx z) const {
    cplx den = c_ * z + d_;
    return det() / (den * den);
  }

  cplx det() const { return a_ * d_ - b_ * c_; }

  // Pole p and the factor gamma of tau'(z) = gamma / (1 - z/p)^2.
  // gamma equals tau'(0) and stays meaningful when the pole is at infinity.
  cplx pole() const { return -d_ / c_; }
  bool pole_at_infinity() const { return std::abs(c_) == 0.0; }
  cplx gamma() const { return det() / (d_ * d_); }

  Moebius inverse() const { return Moebius(d_, -b_, -c_, a_); }

  friend Moebius compose(const Moebius& f, const Moebius& g) {
    return Moebius(f.a_ * g.a_ + f.b_ * g.c_, f.a_ * g.b_ + f.b_ * g.d_,
                   f.c_ * g.a_ + f.d_ * g.c_, f.c_ * g.b_ + f.d_ * g.d_);
  }

  // Image of D(z0, R) as a disk; requires the pole strictly outside.
  std::pair<cplx, double> image_disk(cplx z0, double R) const {
    if (pole_at_infinity()) {
      cplx scale = a_ / d_;
      return {(*this)(z0), std::abs(scale) * R};
    }
    cplx w0 = c_ * z0 + d_;
    double rho = std::abs(c_) * R;
    double m2 = std::norm(w0) - rho * rho;
    if (m2 <= 0) throw PoleHit("image_disk: pole inside the source disk");
    cplx u0 = std::conj(w0) / m2;
    double ur = rho / m2;
    cplx k = (b_ * c_ - a_ * d_) / c_;
    return {a_ / c_ + k * u0, std::abs(k) * ur};
  }

  bool almost_equal(const Moebius& o, double tol = 1e-12) const {
    return std::abs(a_ - o.a_) <= tol && std::abs(b_ - o.b_) <= tol &&
           std::abs(c_ - o.c_) <= tol && std::abs(d_ - o.d_) <= tol;
  }

  cplx a() const { return a_; }
  cplx b() const { return b_; }
  cplx c() const { return c_; }
  cplx d() const { return d_; }

 private:
  void normalize() {
    double m = std::max(std::max(std::abs(a_), std::abs(b_)),
                        std::max(std::abs(c_), std::abs(d_)));
    if (m == 0) throw DomainError("degenerate Moebius map");
    // Scale by the conjugate phase of the largest coefficient so the largest
    // entry becomes real positive; the map itself is unchanged.
    cplx lead = a_;
    for (cplx v : {b_, c_, d_})
      if (std::abs(v) > std::abs(lead)) lead = v;
    cplx f = std::conj(lead) / (std::abs(lead) * m);
    a_ *= f;
    b_ *= f;
    c_ *= f;
    d_ *= f;
  }

  cplx a_, b_, c_, d_;
};

// T_j(z) = ((r_j^2 - |c_j|^2) z + c_j)/(1 - conj(c_j) z), the contraction of
// the unit disk into the j-th hole.
inline Moebius tj(const CircularDomain& dom, int j) {
  if (j < 0 || j >= dom.s()) throw DomainError("tj: disk index out of range");
  const DiskData& d = dom.disk(j);
  double r2 = d.r_d * d.r_d;
  double c2 = std::norm(d.c_d);
  return Moebius(cplx(r2 - c2), d.c_d, -std::conj(d.c_d), cplx(1));
}

// Disk automorphism with Phi_j(a_j) = 0 and Phi_j(D(c_j,r_j)) = D(0,sigma_j).
inline Moebius phi_j(const CircularDomain& dom, int j) {
  const DiskData& d = dom.disk(j);
  if (d.concentric) return Moebius::identity();
  cplx u = std::conj(d.a_d) / std::abs(d.a_d);
  return Moebius(u, -u * d.a_d, -std::conj(d.a_d), cplx(1));
}

// T_j^v = Phi_j^{-1} o (sigma^{2v} id) o Phi_j for any integer v; v = 0 gives
// the identity and negative v the inverse iterates.
inline Moebius tj_power(const CircularDomain& dom, int j, long long v) {
  if (j < 0 || j >= dom.s()) throw DomainError("tj_power: disk index out of range");
  if (v == 0) return Moebius::identity();
  const DiskData& d = dom.disk(j);
  double s2v = std::pow(d.sigma_d * d.sigma_d, double(v));
  if (d.concentric) return Moebius::scaling(s2v);
  Moebius phi = phi_j(dom, j);
  return compose(phi.inverse(), compose(Moebius::scaling(s2v), phi));
}

}  // namespace bergman

#endif  // BERGMAN_MOEBIUS_HPP
