#ifndef BERGMAN_SERIES_HPP
#define BERGMAN_SERIES_HPP

#include <cmath>
#include <vector>

#include "bergman/contour.hpp"
#include "bergman/family.hpp"
#include "bergman/poly.hpp"

namespace bergman {

// V(r, n) = r (2s + mu(r)) (m(r)/r)^n / (r - m(r)), the geometric ratio that
// controls the decay of the recursion layers.
inline double v_factor(const CircularDomain& dom, const CompositionFamily& fam,
                       double r, int n) {
  double m = m_of_r(dom, r);
  double mu = mu_of_r(dom, fam, r).value;
  return r * (2 * dom.s() + mu) * std::pow(m / r, n) / (r - m);
}

// Default contour radius: halfway between 1 and rho_x, clamped away from the
// endpoints of (rho_a, 1/rho_a); a fixed radius slightly above 1 when every
// hole is concentric.
inline double default_contour_radius(const CircularDomain& dom) {
  if (dom.all_concentric()) return 1.3;
  double lo = dom.rho_a(), hi = dom.rho_a_inv();
  double margin = 0.05 * (hi - lo);
  double rho = 0.5 * (1 + dom.rho_x());
  return std::min(std::max(rho, lo + margin), hi - margin);
}

// Alternating recursion layers of one degree n: odd layers sampled on
// |zeta| = rho, even layers evaluated anywhere strictly inside through the
// Cauchy transform of the previous odd grid.
class LayerStack {
 public:
  LayerStack(const CircularDomain& dom, const CompositionFamily& fam, int n,
             double rho, int max_pairs, int M, double target_tol)
      : n_(n), rho_(rho), M_(M) {
    m_rho_ = m_of_r(dom, rho);
    V_ = v_factor(dom, fam, rho, n);

    // tau(zeta_m), tau(zeta_m)^{n+1} and the matching data at 0 for every
    // non-identity word.
    ContourGrid proto(rho, M);
    const auto& pts = proto.points();
    std::vector<std::vector<cplx>> img(fam.size() - 1), imgpow(fam.size() - 1);
    std::vector<cplx> at0, at0pow;
    std::size_t t = 0;
    for (const FamilyElement& e : fam.elements()) {
      if (e.is_identity()) continue;
      img[t].resize(std::size_t(M));
      imgpow[t].resize(std::size_t(M));
      for (int m = 0; m < M; ++m) {
        cplx w = e.map(pts[std::size_t(m)]);
        img[t][std::size_t(m)] = w;
        imgpow[t][std::size_t(m)] = ipow(w, n + 1);
      }
      at0.push_back(e.at_zero);
      at0pow.push_back(ipow(e.at_zero, n + 1));
      ++t;
    }

    // zeta_m^{-n} for the even-layer Cauchy weights.
    zeta_neg_n_.resize(std::size_t(M));
    for (int m = 0; m < M; ++m) zeta_neg_n_[std::size_t(m)] = ipow(pts[std::size_t(m)], -n);

    double tail_factor = 1.0 / (1.0 - std::min(V_, 0.9));
    for (int k = 0; k < max_pairs; ++k) {
      ContourGrid layer(rho, M);
      auto& out = layer.samples();
      if (k == 0) {
        for (int m = 0; m < M; ++m) {
          cplx acc(0);
          for (std::size_t i = 0; i < img.size(); ++i)
            acc += imgpow[i][std::size_t(m)] - at0pow[i];
          out[std::size_t(m)] = acc;
        }
      } else {
        std::vector<cplx> even_at0(img.size());
        for (std::size_t i = 0; i < img.size(); ++i)
          even_at0[i] = even_eval(k, at0[i]);
        for (int m = 0; m < M; ++m) {
          cplx acc(0);
          for (std::size_t i = 0; i < img.size(); ++i)
            acc += even_eval(k, img[i][std::size_t(m)]) * imgpow[i][std::size_t(m)] -
                   even_at0[i] * at0pow[i];
          out[std::size_t(m)] = acc;
        }
      }
      odd_.push_back(std::move(layer));
      odd_norms_.push_back(odd_.back().sup_norm());
      if (odd_norms_.back() * tail_factor < 1e-2 * target_tol) break;
    }
  }

  int degree() const { return n_; }
  double rho() const { return rho_; }
  int grid_size() const { return M_; }
  double v_estimate() const { return V_; }
  int pairs() const { return int(odd_.size()); }
  const std::vector<ContourGrid>& odd_layers() const { return odd_; }
  const std::vector<double>& odd_norms() const { return odd_norms_; }

  // f_{n, 2k}(z) for k >= 1, valid for |z| <= 0.95 rho.
  cplx even_eval(int k, cplx z) const {
    if (std::abs(z) > 0.95 * rho_)
      throw PointTooCloseToContour("even layer requested too close to the contour");
    const ContourGrid& g = odd_.at(std::size_t(k) - 1);
    cplx acc(0);
    for (int m = 0; m < M_; ++m) {
      const cplx& zeta = g.points()[std::size_t(m)];
      acc += g.samples()[std::size_t(m)] * zeta_neg_n_[std::size_t(m)] / (zeta - z);
    }
    return -acc / double(M_);
  }

  // sum_{k>=0} f_{n,2k}(z) = 1 + sum of the even layers.
  cplx f_even_sum(cplx z) const {
    cplx acc(1);
    for (int k = 1; k <= pairs(); ++k) acc += even_eval(k, z);
    return acc;
  }

  // sum_{k>=0} f_{n,2k+1}(z) by the Cauchy transform of each odd grid.
  cplx f_odd_sum(cplx z) const {
    cplx acc(0);
    for (const ContourGrid& g : odd_) acc += g.cauchy_eval(z);
    return acc;
  }

  cplx p_caligraphic(cplx z) const {
    return ipow(z, n_ + 1) * f_even_sum(z) + f_odd_sum(z);
  }

  // Geometric estimate of the mass dropped by stopping at the built pairs.
  double truncation_estimate() const {
    double tail_factor = 1.0 / (1.0 - std::min(V_, 0.9));
    return odd_norms_.back() * std::pow(rho_, -n_ - 1) * tail_factor;
  }

  double m_rho() const { return m_rho_; }

 private:
  int n_;
  double rho_;
  int M_;
  double m_rho_ = 0;
  double V_ = 0;
  std::vector<ContourGrid> odd_;
  std::vector<double> odd_norms_;
  std::vector<cplx> zeta_neg_n_;
};

struct SeriesOptions {
  double rho = -1;          // contour radius; negative selects the default policy
  int max_pairs = 24;       // cap on recursion depth K
  int M_init = 256;
  int M_max = 4096;
  double target_tol = 1e-10;
};

struct SeriesResult {
  MonicPolynomial poly;
  mpreal kappa;
  double kappa_sum_real;      // (n+1) kappa^{-2} as computed
  double monic_defect;        // |leading DFT coefficient - 1|
  double coeff_agreement;     // max coefficient change in the last M doubling
  double truncation_estimate; // layer-tail estimate
  double v_estimate;
  int pairs_used;
  int grid_size;
  double rho;
};

namespace detail {

struct Assembly {
  std::vector<cplx> pcoeffs;  // coefficients of calligraphic P, degree n+1
  cplx kappa_sum;             // sum_k f_{n,2k}(0)
  double trunc;
  double V;
  int pairs;
};

inline Assembly assemble_once(const CircularDomain& dom, const CompositionFamily& fam,
                              int n, double rho, int max_pairs, int M, double tol) {
  LayerStack stack(dom, fam, n, rho, max_pairs, M, tol);
  double rho_asm = 0.85 * rho;
  std::vector<cplx> vals(static_cast<std::size_t>(M));
  for (int i = 0; i < M; ++i)
    vals[std::size_t(i)] = stack.p_caligraphic(std::polar(rho_asm, 2 * kPi * i / M));
  Assembly out;
  out.pcoeffs.resize(std::size_t(n) + 2);
  for (int j = 0; j <= n + 1; ++j) {
    cplx acc(0);
    for (int i = 0; i < M; ++i)
      acc += vals[std::size_t(i)] * std::polar(1.0, -2 * kPi * i * j / M);
    out.pcoeffs[std::size_t(j)] = acc / (double(M) * std::pow(rho_asm, j));
  }
  out.kappa_sum = stack.f_even_sum(cplx(0));
  out.trunc = stack.truncation_estimate();
  out.V = stack.v_estimate();
  out.pairs = stack.pairs();
  return out;
}

}  // namespace detail

// Checks that n is inside the provable asymptotic regime for the chosen
// contour: the layer bounds need both (n+1)(m(m(rho))/m(rho))^n < 1 and
// V(rho, n) < 1.  Fully concentric domains bypass the check because their
// recursion collapses to an exact geometric series at every degree.
inline void require_asymptotic_regime(const CircularDomain& dom,
                                      const CompositionFamily& fam, int n,
                                      double rho) {
  if (dom.all_concentric()) return;
  double m1 = m_of_r(dom, rho);
  double m2 = m_of_r(dom, m1);
  double idx = (n + 1) * std::pow(m2 / m1, n);
  double V = v_factor(dom, fam, rho, n);
  if (idx >= 1 || V >= 1)
    throw NotYetAsymptotic(
        "degree " + std::to_string(n) + " is below the asymptotic threshold at rho = " +
        std::to_string(rho) + " (index " + std::to_string(idx) + ", V " +
        std::to_string(V) + "); raise n or change rho");
}

// Series route for the monic orthogonal polynomial: builds the recursion
// layers, assembles calligraphic P on a contour, reads the coefficients off
// the discrete Fourier modes (exact for a polynomial once M > n+2), and
// differentiates coefficient-wise.  kappa comes from the even layers at 0.
inline SeriesResult series_orthopoly(const CircularDomain& dom,
                                     const CompositionFamily& fam, int n,
                                     SeriesOptions opts = {}) {
  double rho = opts.rho > 0 ? opts.rho : default_contour_radius(dom);
  require_asymptotic_regime(dom, fam, n, rho);

  int M = opts.M_init;
  while (M < 2 * (n + 2)) M *= 2;
  detail::Assembly cur = detail::assemble_once(dom, fam, n, rho, opts.max_pairs, M,
                                               opts.target_tol);
  double agreement = std::numeric_limits<double>::infinity();
  while (2 * M <= opts.M_max) {
    detail::Assembly next = detail::assemble_once(dom, fam, n, rho, opts.max_pairs,
                                                  2 * M, opts.target_tol);
    agreement = 0;
    for (std::size_t j = 0; j < cur.pcoeffs.size(); ++j)
      agreement = std::max(agreement, std::abs(next.pcoeffs[j] - cur.pcoeffs[j]));
    cur = std::move(next);
    M *= 2;
    if (agreement < 1e-10) break;
  }

  std::vector<mpcplx> lower(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j)
    lower[std::size_t(j)] =
        to_mpcplx(cur.pcoeffs[std::size_t(j) + 1] * (double(j + 1) / double(n + 1)));
  double monic_defect = std::abs(cur.pcoeffs[std::size_t(n) + 1] - 1.0);

  SeriesResult res{
      MonicPolynomial(n, std::move(lower), 53),
      mpreal(0),
      cur.kappa_sum.real(),
      monic_defect,
      agreement,
      cur.trunc,
      cur.V,
      cur.pairs,
      M,
      rho};
  res.kappa = sqrt(mpreal(n + 1) / mpreal(cur.kappa_sum.real()));
  return res;
}

struct LayerNormReport {
  struct Row {
    int k;                 // pair index, 1-based: odd layer f_{n,2k-1}
    double odd_sup;        // sup over the grid of |f_{n,2k-1}|
    double odd_bound;      // (rho - m(rho)) rho^n V^k
    double even_sup;       // sup over interior samples of |f_{n,2k}|
    double even_bound;     // (rho - m(rho)) V^k / ||z| - rho| at |z| = rho/2
  };
  std::vector<Row> rows;
  double V;
};

inline LayerNormReport layer_norm_report(const CircularDomain& dom,
                                         const LayerStack& stack) {
  LayerNormReport rep;
  rep.V = stack.v_estimate();
  double rho = stack.rho();
  double mr = m_of_r(dom, rho);
  double base = (rho - mr) * std::pow(rho, stack.degree());
  for (int k = 1; k <= stack.pairs(); ++k) {
    LayerNormReport::Row row;
    row.k = k;
    row.odd_sup = stack.odd_norms()[std::size_t(k) - 1];
    row.odd_bound = base * std::pow(rep.V, k);
    double es = 0;
    for (int i = 0; i < 16; ++i)
      es = std::max(es, std::abs(stack.even_eval(k, std::polar(rho / 2, 2 * kPi * i / 16))));
    row.even_sup = es;
    row.even_bound = (rho - mr) * std::pow(rep.V, k) / (rho / 2);
    rep.rows.push_back(row);
  }
  return rep;
}

}  // namespace bergman

#endif  // BERGMAN_SERIES_HPP
