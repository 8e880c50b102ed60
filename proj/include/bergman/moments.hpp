#ifndef BERGMAN_MOMENTS_HPP
#define BERGMAN_MOMENTS_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <vector>

#include "bergman/domain.hpp"
#include "bergman/linalg.hpp"
#include "bergman/poly.hpp"

namespace bergman {

using bigint = bmp::cpp_int;

// Pascal triangle rows 0..N in exact integer arithmetic.
inline std::vector<std::vector<bigint>> binomial_rows(int N) {
  std::vector<std::vector<bigint>> rows(std::size_t(N) + 1);
  for (int n = 0; n <= N; ++n) {
    rows[std::size_t(n)].resize(std::size_t(n) + 1);
    rows[std::size_t(n)][0] = 1;
    rows[std::size_t(n)][std::size_t(n)] = 1;
    for (int k = 1; k < n; ++k)
      rows[std::size_t(n)][std::size_t(k)] =
          rows[std::size_t(n) - 1][std::size_t(k) - 1] +
          rows[std::size_t(n) - 1][std::size_t(k)];
  }
  return rows;
}

namespace detail {

// Closed-form monomial moments and the Gram normal equations at one
// precision tier.
template <unsigned D>
struct MomentKernel {
  using R = mp_real_t<D>;
  using C = mp_cplx_t<D>;

  struct DiskPowers {
    R r2;                  // r^2
    std::vector<C> cp;     // c^p
    std::vector<C> ccp;    // conj(c)^p
    std::vector<R> r2k;    // r^{2k}
  };

  std::vector<DiskPowers> disks;
  std::vector<std::vector<R>> binom;  // binomial_rows converted to the tier
  int N;

  MomentKernel(const CircularDomain& dom, int maxdeg) : N(maxdeg) {
    auto rows = binomial_rows(maxdeg);
    binom.resize(rows.size());
    for (std::size_t n = 0; n < rows.size(); ++n) {
      binom[n].resize(rows[n].size());
      for (std::size_t k = 0; k < rows[n].size(); ++k)
        binom[n][k] = R(rows[n][k].str());
    }
    for (const DiskData& d : dom.disks()) {
      DiskPowers p;
      C c = convert_parts<C>(d.center);
      R r = R(d.radius);
      p.r2 = r * r;
      p.cp.resize(std::size_t(maxdeg) + 1);
      p.ccp.resize(std::size_t(maxdeg) + 1);
      p.r2k.resize(std::size_t(maxdeg) + 1);
      p.cp[0] = C(1);
      p.ccp[0] = C(1);
      p.r2k[0] = R(1);
      for (int i = 1; i <= maxdeg; ++i) {
        p.cp[std::size_t(i)] = p.cp[std::size_t(i) - 1] * c;
        p.ccp[std::size_t(i)] = p.ccp[std::size_t(i) - 1] * conj(c);
        p.r2k[std::size_t(i)] = p.r2k[std::size_t(i) - 1] * p.r2;
      }
      disks.push_back(std::move(p));
    }
  }

  // <z^n, z^m> over the domain: the unit-disk moment minus one translated
  // disk moment per hole.
  C moment(int n, int m) const {
    C out = (n == m) ? C(R(1) / (n + 1)) : C(0);
    int kmax = std::min(n, m);
    for (const DiskPowers& p : disks) {
      C acc(0);
      for (int k = kmax; k >= 0; --k) {
        R w = binom[std::size_t(n)][std::size_t(k)] *
              binom[std::size_t(m)][std::size_t(k)] * p.r2k[std::size_t(k)] / R(k + 1);
        acc += w * p.cp[std::size_t(n - k)] * p.ccp[std::size_t(m - k)];
      }
      out -= p.r2 * acc;
    }
    return out;
  }
};

struct TierSolve {
  std::vector<std::vector<mpcplx>> coeffs;  // per degree n: b_0..b_{n-1}
  std::vector<mpreal> norm2;                // kappa_n^{-2}
  double worst_rel_residual = 0;
};

// Solves the orthogonality normal equations for every degree up to N from a
// single Cholesky factorization of the conjugated Gram matrix, with one
// round of iterative refinement.
template <unsigned D>
inline bool solve_upto(const CircularDomain& dom, int N, double rel_tol, TierSolve& out) {
  using R = mp_real_t<D>;
  using C = mp_cplx_t<D>;
  MomentKernel<D> mk(dom, N);

  // M(i, k) = <z^k, z^i> so that rows are the orthogonality constraints.
  HermMatrix<C> M(N + 1);
  for (int i = 0; i <= N; ++i)
    for (int k = i; k <= N; ++k) {
      C v = mk.moment(k, i);
      M.at(i, k) = v;
      if (k != i) M.at(k, i) = conj(v);
    }
  auto ch = CholeskyHerm<C, R>::factor(M);
  if (!ch) return false;

  out.coeffs.assign(std::size_t(N) + 1, {});
  out.norm2.assign(std::size_t(N) + 1, mpreal(0));
  out.worst_rel_residual = 0;

  for (int n = 0; n <= N; ++n) {
    std::vector<C> c(static_cast<std::size_t>(n));
    if (n > 0) {
      std::vector<C> rhs(static_cast<std::size_t>(n));
      for (int m = 0; m < n; ++m) rhs[std::size_t(m)] = -M.at(m, n);
      c = ch->solve_block(n, rhs);
      // One refinement pass against the residual of the full constraints.
      std::vector<C> res(static_cast<std::size_t>(n));
      for (int m = 0; m < n; ++m) {
        C s = M.at(m, n);
        for (int k = 0; k < n; ++k) s += c[std::size_t(k)] * M.at(m, k);
        res[std::size_t(m)] = -s;
      }
      std::vector<C> corr = ch->solve_block(n, res);
      for (int k = 0; k < n; ++k) c[std::size_t(k)] += corr[std::size_t(k)];
      R worst(0);
      for (int m = 0; m < n; ++m) {
        C s = M.at(m, n);
        R row = abs(M.at(m, n));
        for (int k = 0; k < n; ++k) {
          s += c[std::size_t(k)] * M.at(m, k);
          row += abs(c[std::size_t(k)]) * abs(M.at(m, k));
        }
        R rel = abs(s) / row;
        if (rel > worst) worst = rel;
      }
      out.worst_rel_residual =
          std::max(out.worst_rel_residual, worst.template convert_to<double>());
      if (out.worst_rel_residual > rel_tol) return false;
    }
    C nrm = M.at(n, n);
    for (int k = 0; k < n; ++k) nrm += c[std::size_t(k)] * M.at(n, k);
    out.norm2[std::size_t(n)] = mpreal(real(nrm));
    std::vector<mpcplx> stored(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) stored[std::size_t(k)] = convert_parts<mpcplx>(c[std::size_t(k)]);
    out.coeffs[std::size_t(n)] = std::move(stored);
  }
  return true;
}

}  // namespace detail

struct OrthoResult {
  MonicPolynomial poly;
  mpreal kappa;        // (integral |P|^2)^{-1/2}
  mpreal norm2;        // kappa^{-2}
  double rel_residual; // worst orthogonality residual relative to the row norm
  int bits_used;
};

// Exact-moment route: closed-form monomial moments, Gram matrix, and monic
// orthogonal polynomials by Cholesky in extended precision.  The working
// precision doubles once if the requested tier cannot meet the residual
// tolerance 2^{-bits/2}.
class MomentOracle {
 public:
  explicit MomentOracle(CircularDomain dom) : dom_(std::move(dom)) {}

  mpcplx moment(int n, int m) const {
    detail::MomentKernel<kDigitsDefault> mk(dom_, std::max(n, m));
    return mk.moment(n, m);
  }

  // G_{nm} = <z^n, z^m>, Hermitian positive definite.
  HermMatrix<mpcplx> gram(int N) const {
    detail::MomentKernel<kDigitsDefault> mk(dom_, N);
    HermMatrix<mpcplx> G(N + 1);
    for (int n = 0; n <= N; ++n)
      for (int m = n; m <= N; ++m) {
        mpcplx v = mk.moment(n, m);
        G.at(n, m) = v;
        if (m != n) G.at(m, n) = conj(v);
      }
    return G;
  }

  std::vector<OrthoResult> orthopoly_upto(int N, int precision_bits = 256) const {
    int bits = std::clamp(precision_bits, 64, 256);
    double rel_tol = std::pow(2.0, -bits / 2.0);
    detail::TierSolve ts;
    int used = 256;
    if (!detail::solve_upto<kDigitsDefault>(dom_, N, rel_tol, ts)) {
      used = 512;
      if (!detail::solve_upto<kDigitsRescue>(dom_, N, rel_tol, ts))
        throw IllConditioned(
            "gram solve residual exceeds tolerance at the maximum precision tier");
    }
    std::vector<OrthoResult> out;
    for (int n = 0; n <= N; ++n) {
      MonicPolynomial p(n, std::move(ts.coeffs[std::size_t(n)]), used);
      mpreal norm2 = ts.norm2[std::size_t(n)];
      out.push_back(OrthoResult{std::move(p), 1 / sqrt(norm2), norm2,
                                ts.worst_rel_residual, used});
    }
    return out;
  }

  OrthoResult orthopoly(int n, int precision_bits = 256) const {
    auto all = orthopoly_upto(n, precision_bits);
    return std::move(all.back());
  }

 private:
  CircularDomain dom_;
};

}  // namespace bergman

#endif  // BERGMAN_MOMENTS_HPP
