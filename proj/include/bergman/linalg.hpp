#ifndef BERGMAN_LINALG_HPP
#define BERGMAN_LINALG_HPP

#include <optional>
#include <vector>

#include "bergman/errors.hpp"
#include "bergman/types.hpp"

namespace bergman {

// Dense Hermitian matrix in row-major storage, generic over the complex type.
template <class C>
struct HermMatrix {
  int n = 0;
  std::vector<C> a;

  explicit HermMatrix(int dim) : n(dim), a(std::size_t(dim) * std::size_t(dim)) {}
  C& at(int i, int j) { return a[std::size_t(i) * std::size_t(n) + std::size_t(j)]; }
  const C& at(int i, int j) const {
    return a[std::size_t(i) * std::size_t(n) + std::size_t(j)];
  }
};

// Lower Cholesky factor A = L L^H.  Factoring once at full size serves every
// leading principal block, since the factor of a leading block is the leading
// block of the factor.
template <class C, class R>
class CholeskyHerm {
 public:
  static std::optional<CholeskyHerm> factor(const HermMatrix<C>& A) {
    CholeskyHerm ch;
    ch.n_ = A.n;
    ch.l_ = A.a;
    for (int j = 0; j < A.n; ++j) {
      R diag = real(ch.at(j, j));
      for (int k = 0; k < j; ++k) diag -= norm(ch.at(j, k));
      if (!(diag > 0)) return std::nullopt;
      R root = sqrt(diag);
      ch.at(j, j) = C(root);
      for (int i = j + 1; i < A.n; ++i) {
        C s = ch.at(i, j);
        for (int k = 0; k < j; ++k) s -= ch.at(i, k) * conj(ch.at(j, k));
        ch.at(i, j) = s / root;
      }
    }
    return ch;
  }

  // Solves the leading m x m block: L[..m] L[..m]^H x = b.
  std::vector<C> solve_block(int m, const std::vector<C>& b) const {
    std::vector<C> y(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) {
      C s = b[std::size_t(i)];
      for (int k = 0; k < i; ++k) s -= at(i, k) * y[std::size_t(k)];
      y[std::size_t(i)] = s / real(at(i, i));
    }
    for (int i = m - 1; i >= 0; --i) {
      C s = y[std::size_t(i)];
      for (int k = i + 1; k < m; ++k) s -= conj(at(k, i)) * y[std::size_t(k)];
      y[std::size_t(i)] = s / real(at(i, i));
    }
    return y;
  }

  int dim() const { return n_; }

 private:
  C& at(int i, int j) { return l_[std::size_t(i) * std::size_t(n_) + std::size_t(j)]; }
  const C& at(int i, int j) const {
    return l_[std::size_t(i) * std::size_t(n_) + std::size_t(j)];
  }

  int n_ = 0;
  std::vector<C> l_;
};

}  // namespace bergman

#endif  // BERGMAN_LINALG_HPP
