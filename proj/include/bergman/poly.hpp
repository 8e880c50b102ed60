#ifndef BERGMAN_POLY_HPP
#define BERGMAN_POLY_HPP

#include <vector>

#include "bergman/errors.hpp"
#include "bergman/types.hpp"

namespace bergman {

// Degree-n monic polynomial over extended-precision complex coefficients.
// Only the lower coefficients b_0..b_{n-1} are stored; the leading one is 1.
class MonicPolynomial {
 public:
  MonicPolynomial(int degree, std::vector<mpcplx> lower, int precision_bits)
      : degree_(degree), lower_(std::move(lower)), precision_bits_(precision_bits) {
    if (degree_ < 0 || int(lower_.size()) != degree_)
      throw DomainError("MonicPolynomial: coefficient count must equal the degree");
  }

  static MonicPolynomial pure_power(int n, int precision_bits = 256) {
    return MonicPolynomial(n, std::vector<mpcplx>(std::size_t(n), mpcplx(0)),
                           precision_bits);
  }

  int degree() const { return degree_; }
  int precision_bits() const { return precision_bits_; }
  const std::vector<mpcplx>& lower_coeffs() const { return lower_; }
  const mpcplx& coeff(int k) const { return lower_.at(std::size_t(k)); }

  mpcplx eval(const mpcplx& z) const {
    mpcplx acc(1);
    for (int k = degree_ - 1; k >= 0; --k) acc = acc * z + lower_[std::size_t(k)];
    return acc;
  }
  cplx eval(const cplx& z) const { return to_cplx(eval(to_mpcplx(z))); }

  // P and P' in one pass.
  std::pair<mpcplx, mpcplx> eval_with_derivative(const mpcplx& z) const {
    mpcplx p(1), dp(0);
    for (int k = degree_ - 1; k >= 0; --k) {
      dp = dp * z + p;
      p = p * z + lower_[std::size_t(k)];
    }
    return {p, dp};
  }

  // Coefficients of P', constant term first; degree n-1 with leading
  // coefficient n.
  std::vector<mpcplx> derivative_coeffs() const {
    std::vector<mpcplx> d(static_cast<std::size_t>(degree_));
    for (int k = 1; k < degree_; ++k) d[std::size_t(k - 1)] = mpreal(k) * lower_[std::size_t(k)];
    if (degree_ >= 1) d[std::size_t(degree_ - 1)] = mpcplx(degree_);
    return d;
  }

 private:
  int degree_;
  std::vector<mpcplx> lower_;
  int precision_bits_;
};

}  // namespace bergman

#endif  // BERGMAN_POLY_HPP
