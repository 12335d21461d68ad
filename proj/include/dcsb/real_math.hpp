// real_math.hpp — scalar math shims so numeric kernels can be instantiated
// with double or __float128 (quad precision is used inside the Talbot
// inversion, where the node sum has a cancellation floor of e^(2M/5)·eps).

#pragma once

#include <cmath>
#include <complex>
#include <quadmath.h>

namespace dcsb {

using qfloat = __float128;

namespace rm {

// double forwards
inline double exp(double x) { return std::exp(x); }
inline double log(double x) { return std::log(x); }
inline double log1p(double x) { return std::log1p(x); }
inline double sin(double x) { return std::sin(x); }
inline double cos(double x) { return std::cos(x); }
inline double sinh(double x) { return std::sinh(x); }
inline double cosh(double x) { return std::cosh(x); }
inline double tan(double x) { return std::tan(x); }
inline double atan(double x) { return std::atan(x); }
inline double atan2(double y, double x) { return std::atan2(y, x); }
inline double sqrt(double x) { return std::sqrt(x); }
inline double pow(double x, double y) { return std::pow(x, y); }
inline double fabs(double x) { return std::fabs(x); }
inline bool isfinite(double x) { return std::isfinite(x); }
inline double round(double x) { return std::round(x); }

// __float128 forwards (libquadmath)
inline qfloat exp(qfloat x) { return ::expq(x); }
inline qfloat log(qfloat x) { return ::logq(x); }
inline qfloat log1p(qfloat x) { return ::log1pq(x); }
inline qfloat sin(qfloat x) { return ::sinq(x); }
inline qfloat cos(qfloat x) { return ::cosq(x); }
inline qfloat sinh(qfloat x) { return ::sinhq(x); }
inline qfloat cosh(qfloat x) { return ::coshq(x); }
inline qfloat tan(qfloat x) { return ::tanq(x); }
inline qfloat atan(qfloat x) { return ::atanq(x); }
inline qfloat atan2(qfloat y, qfloat x) { return ::atan2q(y, x); }
inline qfloat sqrt(qfloat x) { return ::sqrtq(x); }
inline qfloat pow(qfloat x, qfloat y) { return ::powq(x, y); }
inline qfloat fabs(qfloat x) { return ::fabsq(x); }
inline bool isfinite(qfloat x) { return ::finiteq(x) != 0; }
inline qfloat round(qfloat x) { return ::roundq(x); }

template <class R> constexpr R pi();
template <> constexpr double pi<double>() { return 3.141592653589793238462643383279502884; }
template <> constexpr qfloat pi<qfloat>() { return 3.141592653589793238462643383279502884Q; }

// complex helpers built on the shims (std::complex arithmetic itself is
// type-generic; the transcendental overloads are not)
template <class R> R cabs(const std::complex<R>& z) {
    R x = fabs(z.real()), y = fabs(z.imag());
    if (x == R(0) && y == R(0)) return R(0);
    R m = x > y ? x : y, r0 = x > y ? y / x : x / y;
    return m * sqrt(R(1) + r0 * r0);
}

template <class R> std::complex<R> cexp(const std::complex<R>& z) {
    R e = exp(z.real());
    return {e * cos(z.imag()), e * sin(z.imag())};
}

template <class R> std::complex<R> clog(const std::complex<R>& z) {
    return {log(cabs(z)), atan2(z.imag(), z.real())};
}

template <class R> std::complex<R> csin(const std::complex<R>& z) {
    return {sin(z.real()) * cosh(z.imag()), cos(z.real()) * sinh(z.imag())};
}

template <class R> bool cfinite(const std::complex<R>& z) {
    return isfinite(z.real()) && isfinite(z.imag());
}

} // namespace rm
} // namespace dcsb
