#ifndef BERGMAN_FAMILY_HPP
#define BERGMAN_FAMILY_HPP

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "bergman/errors.hpp"
#include "bergman/moebius.hpp"

namespace bergman {

// One element of the composition family.  The word lists disk indices in
// application order: word.front() acts first, word.back() last, so the image
// of the unit disk lies in the hole word.back().  The identity has an empty
// word.
struct FamilyElement {
  Moebius map;
  std::vector<int> word;
  cplx at_zero;       // map(0)
  double gamma_abs;   // |tau'(0)|

  int length() const { return int(word.size()); }
  bool is_identity() const { return word.empty(); }
  int outer() const { return word.back(); }  // paper's terminal operator
  int inner() const { return word.front(); }
};

// Truncated enumeration of all finite compositions of the T_j, identity
// included, breadth-first by length and lexicographic within a length.
class CompositionFamily {
 public:
  static CompositionFamily enumerate(const CircularDomain& dom, int max_len,
                                     double prune_tol = 0.0,
                                     std::size_t cap = 2'000'000) {
    if (max_len < 1) throw DomainError("enumerate: max_len must be >= 1");
    CompositionFamily fam;
    fam.max_len_ = max_len;
    fam.prune_tol_ = prune_tol;
    fam.pruned_ = false;

    FamilyElement id;
    id.map = Moebius::identity();
    id.at_zero = 0;
    id.gamma_abs = 1.0;
    fam.elems_.push_back(id);
    fam.level_gamma_sums_.assign(std::size_t(max_len) + 1, 0.0);
    fam.level_gamma_sums_[0] = 1.0;

    std::vector<Moebius> gens;
    for (int j = 0; j < dom.s(); ++j) gens.push_back(tj(dom, j));

    std::size_t level_begin = 0, level_end = 1;
    for (int len = 1; len <= max_len; ++len) {
      for (std::size_t i = level_begin; i < level_end; ++i) {
        for (int j = 0; j < dom.s(); ++j) {
          FamilyElement e;
          e.map = compose(gens[std::size_t(j)], fam.elems_[i].map);
          e.word = fam.elems_[i].word;
          e.word.push_back(j);
          e.at_zero = e.map(cplx(0));
          e.gamma_abs = std::abs(e.map.gamma());
          if (prune_tol > 0 && e.gamma_abs < prune_tol) {
            fam.pruned_ = true;
            continue;
          }
          if (fam.elems_.size() >= cap)
            throw FamilyExplosion("enumerate: family exceeds cap of " +
                                  std::to_string(cap) + " elements");
          fam.level_gamma_sums_[std::size_t(len)] += e.gamma_abs;
          fam.elems_.push_back(std::move(e));
        }
      }
      level_begin = level_end;
      level_end = fam.elems_.size();
      if (level_begin == level_end) break;  // everything pruned
    }
    fam.compute_tail(dom);
    return fam;
  }

  // Degenerate family holding only T_0; with it the kernel sums collapse to
  // the unit-disk kernel.
  static CompositionFamily identity_only() {
    CompositionFamily fam;
    fam.max_len_ = 0;
    FamilyElement id;
    id.map = Moebius::identity();
    id.at_zero = 0;
    id.gamma_abs = 1.0;
    fam.elems_.push_back(id);
    fam.level_gamma_sums_ = {1.0};
    fam.tail_bound_ = 0.0;
    fam.tail_rigorous_ = true;
    return fam;
  }

  const std::vector<FamilyElement>& elements() const { return elems_; }
  std::size_t size() const { return elems_.size(); }
  int max_len() const { return max_len_; }
  bool includes_identity() const { return true; }

  // Sum of |gamma_tau| over the enumerated elements, identity included.
  double gamma_sum() const {
    double s = 0;
    for (const FamilyElement& e : elems_) s += e.gamma_abs;
    return s;
  }
  const std::vector<double>& level_gamma_sums() const { return level_gamma_sums_; }

  // Estimated sum of |gamma_tau| over the excluded words.  Rigorous when the
  // geometric ratio of Proposition's radii condition is < 1 and no pruning
  // took place; otherwise an empirical last-levels extrapolation.
  double tail_bound() const { return tail_bound_; }
  bool tail_rigorous() const { return tail_rigorous_; }

 private:
  void compute_tail(const CircularDomain& dom) {
    double q = radii_condition_lhs(dom);
    if (q < 1 && !pruned_) {
      tail_bound_ = std::pow(q, max_len_ + 1) / (1 - q);
      tail_rigorous_ = true;
      return;
    }
    tail_rigorous_ = false;
    // Ratio of the last observed per-level sums, worst of the last two steps.
    double ratio = 0;
    int L = max_len_;
    for (int l = std::max(1, L - 2); l < L; ++l) {
      double prev = level_gamma_sums_[std::size_t(l)];
      double next = level_gamma_sums_[std::size_t(l) + 1];
      if (prev > 0) ratio = std::max(ratio, next / prev);
    }
    double last = level_gamma_sums_[std::size_t(L)];
    tail_bound_ = (ratio > 0 && ratio < 1)
                      ? last * ratio / (1 - ratio)
                      : std::numeric_limits<double>::infinity();
  }

 public:
  // Left-hand side of the sufficient radii condition
  // sum_j r_j^2/(1-|c_j| rho_a)^2 < 1.
  static double radii_condition_lhs(const CircularDomain& dom) {
    double q = 0;
    for (const DiskData& d : dom.disks()) {
      double den = 1 - std::abs(d.c_d) * dom.rho_a();
      q += d.r_d * d.r_d / (den * den);
    }
    return q;
  }

 private:
  std::vector<FamilyElement> elems_;
  std::vector<double> level_gamma_sums_;
  int max_len_ = 0;
  double prune_tol_ = 0;
  bool pruned_ = false;
  double tail_bound_ = 0;
  bool tail_rigorous_ = false;
};

// m_j(r) = max_{|z|=r} |T_j(z)| in closed form; the concentric case reduces
// to r_j^2 r.
inline double m_j_of_r(const DiskData& d, double r) {
  double ac = std::abs(d.c_d);
  return d.r_d * d.r_d * r / (1 - ac * r) + ac;
}

// Contraction profile m(r) = max_j m_j(r), r in [0, rho_a^{-1}].
inline double m_of_r(const CircularDomain& dom, double r) {
  if (r < 0 || r > dom.rho_a_inv() * (1 + 1e-15))
    throw DomainError("m_of_r: r outside [0, 1/rho_a]");
  double m = 0;
  for (const DiskData& d : dom.disks()) m = std::max(m, m_j_of_r(d, r));
  return m;
}

inline double m_iterate(const CircularDomain& dom, double r, int v) {
  double x = r;
  for (int i = 0; i < v; ++i) x = m_of_r(dom, x);
  return x;
}

// v(rho_x) of the lemma: the contraction ratio of the disks that do not
// attain rho_x.  Meaningful only when some |x_j| > rho_x.
inline double v_of_rho_x(const CircularDomain& dom) {
  double rx = dom.rho_x();
  double v = 0;
  bool any = false;
  for (const DiskData& d : dom.disks()) {
    if (d.concentric || d.abs_x <= rx * (1 + 1e-10)) continue;
    any = true;
    v = std::max(v, m_j_of_r(d, rx) / rx);
  }
  if (!any) throw DomainError("v_of_rho_x: no disk with |x_j| > rho_x");
  return v;
}

struct MuValue {
  double value;
  double tail;
};

// mu(r) = sup_{|z|<=r} sum_tau |tau'(z)|, evaluated on a dense boundary
// sample (the sum of moduli of analytic functions peaks on the boundary)
// with one refinement pass around the argmax.
inline MuValue mu_of_r(const CircularDomain& dom, const CompositionFamily& fam, double r) {
  if (r >= dom.rho_a_inv()) throw DomainError("mu_of_r: r must be < 1/rho_a");
  auto sum_at = [&](double theta) {
    cplx z = std::polar(r, theta);
    double s = 0;
    for (const FamilyElement& e : fam.elements()) s += std::abs(e.map.derivative(z));
    return s;
  };
  const int coarse = 720;
  double best = 0, best_theta = 0;
  for (int i = 0; i < coarse; ++i) {
    double th = 2 * kPi * i / coarse;
    double s = sum_at(th);
    if (s > best) {
      best = s;
      best_theta = th;
    }
  }
  double h = 2 * kPi / coarse;
  for (int i = -4; i <= 4; ++i) {
    double s = sum_at(best_theta + i * h / 4);
    best = std::max(best, s);
  }
  double tail = fam.tail_bound() / std::pow(1 - r * dom.rho_a(), 2);
  return {best, tail};
}

enum class AssumptionVerdict { Proven, EmpiricalConverging, Inconclusive };

struct AssumptionReport {
  bool condition_real_centers = false;
  bool condition_radii = false;
  double radii_lhs = 0;
  bool s_le_2 = false;
  double truncated_sum = 0;
  double tail = 0;
  AssumptionVerdict verdict = AssumptionVerdict::Inconclusive;
};

// Checks the sufficient conditions for the locally uniform convergence of
// sum |tau'|: real centers, the radii inequality, and the one-or-two-disks
// shortcut.  When none applies the verdict falls back to the observed decay
// of the truncated sums.
inline AssumptionReport check_assumption(const CircularDomain& dom,
                                         const CompositionFamily& fam) {
  AssumptionReport rep;
  rep.condition_real_centers = true;
  for (const DiskData& d : dom.disks())
    if (imag(d.center) != 0) rep.condition_real_centers = false;
  rep.radii_lhs = CompositionFamily::radii_condition_lhs(dom);
  rep.condition_radii = rep.radii_lhs < 1;
  rep.s_le_2 = dom.s() <= 2;
  rep.truncated_sum = fam.gamma_sum();
  rep.tail = fam.tail_bound();
  if (rep.condition_real_centers || rep.condition_radii || rep.s_le_2) {
    rep.verdict = AssumptionVerdict::Proven;
  } else {
    const auto& lv = fam.level_gamma_sums();
    bool decaying = lv.size() >= 3 && lv[lv.size() - 1] < lv[lv.size() - 2] &&
                    lv[lv.size() - 2] < lv[lv.size() - 3];
    rep.verdict = decaying ? AssumptionVerdict::EmpiricalConverging
                           : AssumptionVerdict::Inconclusive;
  }
  return rep;
}

}  // namespace bergman

#endif  // BERGMAN_FAMILY_HPP
