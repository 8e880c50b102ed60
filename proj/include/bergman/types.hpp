#ifndef BERGMAN_TYPES_HPP
#define BERGMAN_TYPES_HPP

#include <boost/multiprecision/mpfr.hpp>
#include <boost/multiprecision/complex_adaptor.hpp>

#include <complex>
#include <cstdint>
#include <string>

namespace bergman {

namespace bmp = boost::multiprecision;

using cplx = std::complex<double>;

// Precision tiers. Digits are chosen so the binary precision is at least
// the nominal bit count (bits / log2(10) rounded up with slack).
template <unsigned Digits10>
using mp_real_t = bmp::number<bmp::mpfr_float_backend<Digits10>, bmp::et_off>;
template <unsigned Digits10>
using mp_cplx_t =
    bmp::number<bmp::complex_adaptor<bmp::mpfr_float_backend<Digits10>>, bmp::et_off>;

inline constexpr unsigned kDigitsDefault = 78;   // ~259 bits, the 256-bit tier
inline constexpr unsigned kDigitsRescue = 156;   // ~518 bits, ill-conditioning rescue

using mpreal = mp_real_t<kDigitsDefault>;
using mpcplx = mp_cplx_t<kDigitsDefault>;

inline double to_double(const mpreal& x) { return x.convert_to<double>(); }
inline cplx to_cplx(const mpcplx& z) {
  return {real(z).convert_to<double>(), imag(z).convert_to<double>()};
}
inline mpcplx to_mpcplx(const cplx& z) { return mpcplx(mpreal(z.real()), mpreal(z.imag())); }

// complex_adaptor lacks a generic complex->complex interconversion, so tier
// changes go through the parts.
template <class CTo, class CFrom>
CTo convert_parts(const CFrom& z) {
  using RTo = decltype(real(std::declval<CTo>()));
  return CTo(RTo(real(z)), RTo(imag(z)));
}

// Integer power by squaring; std::pow on complex goes through exp/log and
// loses a few digits for large exponents.
template <class C>
C ipow(C base, long long e) {
  if (e < 0) return C(1) / ipow(base, -e);
  C acc(1);
  while (e > 0) {
    if (e & 1) acc *= base;
    base *= base;
    e >>= 1;
  }
  return acc;
}

inline constexpr double kPi = 3.141592653589793238462643383279502884;

}  // namespace bergman

#endif  // BERGMAN_TYPES_HPP
