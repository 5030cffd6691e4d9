#pragma once
#include <cmath>
#include <cstdlib>
#include <limits>
#include <string>
#include <quadmath.h>

namespace kirchhoff {

/// Math shims so the flows and the integrator can run in double or in
/// __float128 (needed by itinerary targeting, where bracket widths fall
/// below 1e-16 relative after two or three symbols).
namespace rmath {

inline double r_sin(double x) { return std::sin(x); }
inline double r_cos(double x) { return std::cos(x); }
inline double r_sqrt(double x) { return std::sqrt(x); }
inline double r_abs(double x) { return std::fabs(x); }
inline double r_pow(double x, double y) { return std::pow(x, y); }
inline double r_exp(double x) { return std::exp(x); }
inline double r_log(double x) { return std::log(x); }
inline double r_floor(double x) { return std::floor(x); }
inline double r_max(double a, double b) { return a > b ? a : b; }
inline double r_min(double a, double b) { return a < b ? a : b; }

inline __float128 r_sin(__float128 x) { return sinq(x); }
inline __float128 r_cos(__float128 x) { return cosq(x); }
inline __float128 r_sqrt(__float128 x) { return sqrtq(x); }
inline __float128 r_abs(__float128 x) { return fabsq(x); }
inline __float128 r_pow(__float128 x, __float128 y) { return powq(x, y); }
inline __float128 r_exp(__float128 x) { return expq(x); }
inline __float128 r_log(__float128 x) { return logq(x); }
inline __float128 r_floor(__float128 x) { return floorq(x); }
inline __float128 r_max(__float128 a, __float128 b) { return a > b ? a : b; }
inline __float128 r_min(__float128 a, __float128 b) { return a < b ? a : b; }

template <class R> inline double to_double(R x) { return static_cast<double>(x); }

template <class R> inline R eps_of() { return std::numeric_limits<R>::epsilon(); }
template <> inline __float128 eps_of<__float128>() { return FLT128_EPSILON; }

inline std::string to_string(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}
inline std::string to_string(__float128 x) {
    char buf[64];
    quadmath_snprintf(buf, sizeof buf, "%.36Qg", x);
    return buf;
}

} // namespace rmath

using quad = __float128;

} // namespace kirchhoff
