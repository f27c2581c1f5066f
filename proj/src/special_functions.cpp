#include "insider/special_functions.hpp"

#include <cmath>
#include <numbers>

#include "insider/error.hpp"

namespace insider {

namespace {

void require_not_nan(double x) {
    if (std::isnan(x)) {
        throw Error(ErrorCode::NotFinite, "x", "special function argument is NaN");
    }
}

// Horner evaluation of c[0] + c[1] r + ... + c[7] r^7.
double poly7(const double (&c)[8], double r) {
    double acc = c[7];
    for (int i = 6; i >= 0; --i) acc = acc * r + c[i];
    return acc;
}

// Wichura's AS241 (PPND16) rational approximations, ~1e-16 relative.
constexpr double kCentralNum[8] = {
    3.3871328727963666080e0, 1.3314166789178437745e+2, 1.9715909503065514427e+3,
    1.3731693765509461125e+4, 4.5921953931549871457e+4, 6.7265770927008700853e+4,
    3.3430575583588128105e+4, 2.5090809287301226727e+3};
constexpr double kCentralDen[8] = {
    1.0, 4.2313330701600911252e+1, 6.8718700749205790830e+2,
    5.3941960214247511077e+3, 2.1213794301586595867e+4, 3.9307895800092710610e+4,
    2.8729085735721942674e+4, 5.2264952788528545610e+3};
constexpr double kNearNum[8] = {
    1.42343711074968357734e0, 4.63033784615654529590e0, 5.76949722146069140550e0,
    3.64784832476320460504e0, 1.27045825245236838258e0, 2.41780725177450611770e-1,
    2.27238449892691845833e-2, 7.74545014278341407640e-4};
constexpr double kNearDen[8] = {
    1.0, 2.05319162663775882187e0, 1.67638483018380384940e0,
    6.89767334985100004550e-1, 1.48103976427480074590e-1, 1.51986665636164571966e-2,
    5.47593808499534494600e-4, 1.05075007164441684324e-9};
constexpr double kFarNum[8] = {
    6.65790464350110377720e0, 5.46378491116411436990e0, 1.78482653991729133580e0,
    2.96560571828504891230e-1, 2.65321895265761230930e-2, 1.24266094738807843860e-3,
    2.71155556874348757815e-5, 2.01033439929228813265e-7};
constexpr double kFarDen[8] = {
    1.0, 5.99832206555887937690e-1, 1.36929880922735805310e-1,
    1.48753612908506148525e-2, 7.86869131145613259100e-4, 1.84631831751005468180e-5,
    1.42151175831644588870e-7, 2.04426310338993978564e-15};

double ppnd16(double u) {
    const double q = u - 0.5;
    if (std::abs(q) <= 0.425) {
        const double r = 0.180625 - q * q;
        return q * poly7(kCentralNum, r) / poly7(kCentralDen, r);
    }
    double r = std::sqrt(-std::log(q < 0.0 ? u : 1.0 - u));
    double x;
    if (r <= 5.0) {
        r -= 1.6;
        x = poly7(kNearNum, r) / poly7(kNearDen, r);
    } else {
        r -= 5.0;
        x = poly7(kFarNum, r) / poly7(kFarDen, r);
    }
    return q < 0.0 ? -x : x;
}

}  // namespace

double erf(double x) {
    require_not_nan(x);
    return x < 0.0 ? -std::erf(-x) : std::erf(x);
}

double erfc(double x) {
    require_not_nan(x);
    return std::erfc(x);
}

double normal_cdf(double x) {
    require_not_nan(x);
    return 0.5 * std::erfc(-x / std::numbers::sqrt2);
}

double normal_pdf(double x) noexcept {
    constexpr double kInvSqrt2Pi = 0.3989422804014326779;
    return kInvSqrt2Pi * std::exp(-0.5 * x * x);
}

double inverse_normal_cdf(double u) {
    if (!(u > 0.0 && u < 1.0)) {
        throw Error(ErrorCode::OutOfDomain, "u", "inverse_normal_cdf requires 0 < u < 1");
    }
    double x = ppnd16(u);
    // One Newton step against normal_cdf. In the upper half the residual is
    // formed from the upper tail to avoid cancellation near 1.
    const double density = normal_pdf(x);
    if (density > 0.0) {
        const double residual =
            u < 0.5 ? normal_cdf(x) - u : (1.0 - u) - normal_cdf(-x);
        x -= residual / density;
    }
    return x;
}

}  // namespace insider
