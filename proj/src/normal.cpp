#include "merit/normal.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <span>
#include <stdexcept>

#include <boost/math/distributions/normal.hpp>

namespace merit {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Gauss-Legendre half-rules on [-1, 1] (negative abscissae; the rule is
// applied symmetrically).
constexpr std::array<double, 3> kW6{0.1713244923791705, 0.3607615730481384,
                                    0.4679139345726904};
constexpr std::array<double, 3> kX6{-0.9324695142031522, -0.6612093864662647,
                                    -0.2386191860831970};
constexpr std::array<double, 6> kW12{
    0.04717533638651177, 0.1069393259953183, 0.1600783285433464,
    0.2031674267230659,  0.2334925365383547, 0.2491470458134029};
constexpr std::array<double, 6> kX12{
    -0.9815606342467191, -0.9041172563704750, -0.7699026741943050,
    -0.5873179542866171, -0.3678314989981802, -0.1252334085114692};
constexpr std::array<double, 10> kW20{
    0.01761400713915212, 0.04060142980038694, 0.06267204833410906,
    0.08327674157670475, 0.1019301198172404,  0.1181945319615184,
    0.1316886384491766,  0.1420961093183821,  0.1491729864726037,
    0.1527533871307259};
constexpr std::array<double, 10> kX20{
    -0.9931285991850949, -0.9639719272779138, -0.9122344282513259,
    -0.8391169718222188, -0.7463319064601508, -0.6360536807265150,
    -0.5108670019508271, -0.3737060887154196, -0.2277858511416451,
    -0.07652652113349733};

// Pr(X > dh, Y > dk).
double upper_orthant(double dh, double dk, double r) {
    std::span<const double> w, x;
    const double ar = std::abs(r);
    if (ar < 0.3) {
        w = kW6;
        x = kX6;
    } else if (ar < 0.75) {
        w = kW12;
        x = kX12;
    } else {
        w = kW20;
        x = kX20;
    }

    double h = dh;
    double k = dk;
    double hk = h * k;
    double bvn = 0.0;

    if (ar < 0.925) {
        if (ar > 0.0) {
            const double hs = (h * h + k * k) / 2.0;
            const double asr = std::asin(r);
            for (std::size_t i = 0; i < w.size(); ++i) {
                for (double sign : {-1.0, 1.0}) {
                    const double sn = std::sin(asr * (sign * x[i] + 1.0) / 2.0);
                    bvn += w[i] * std::exp((sn * hk - hs) / (1.0 - sn * sn));
                }
            }
            bvn = bvn * asr / (2.0 * kTwoPi);
        }
        return bvn + normal_cdf(-h) * normal_cdf(-k);
    }

    if (r < 0.0) {
        k = -k;
        hk = -hk;
    }
    if (ar < 1.0) {
        const double as = (1.0 - r) * (1.0 + r);
        double a = std::sqrt(as);
        const double bs = (h - k) * (h - k);
        const double c = (4.0 - hk) / 8.0;
        const double d = (12.0 - hk) / 16.0;
        double asr = -(bs / as + hk) / 2.0;
        if (asr > -100.0) {
            bvn = a * std::exp(asr) *
                  (1.0 - c * (bs - as) * (1.0 - d * bs / 5.0) / 3.0 +
                   c * d * as * as / 5.0);
        }
        if (-hk < 100.0) {
            const double b = std::sqrt(bs);
            bvn -= std::exp(-hk / 2.0) * std::sqrt(kTwoPi) * normal_cdf(-b / a) *
                   b * (1.0 - c * bs * (1.0 - d * bs / 5.0) / 3.0);
        }
        a /= 2.0;
        for (std::size_t i = 0; i < w.size(); ++i) {
            for (double sign : {-1.0, 1.0}) {
                const double xs = std::pow(a * (sign * x[i] + 1.0), 2);
                const double rs = std::sqrt(1.0 - xs);
                asr = -(bs / xs + hk) / 2.0;
                if (asr > -100.0) {
                    bvn += a * w[i] * std::exp(asr) *
                           (std::exp(-hk * (1.0 - rs) / (2.0 * (1.0 + rs))) / rs -
                            (1.0 + c * xs * (1.0 + d * xs)));
                }
            }
        }
        bvn = -bvn / kTwoPi;
    }

    if (r > 0.0) return bvn + normal_cdf(-std::max(h, k));
    bvn = -bvn;
    if (k > h) {
        if (h < 0.0)
            bvn += normal_cdf(k) - normal_cdf(h);
        else
            bvn += normal_cdf(-h) - normal_cdf(-k);
    }
    return bvn;
}

}  // namespace

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

double normal_quantile(double p) {
    if (!(p > 0.0 && p < 1.0))
        throw std::domain_error("normal_quantile: p must lie in (0, 1)");
    return boost::math::quantile(boost::math::normal_distribution<double>(), p);
}

double bivariate_normal_cdf(double h, double k, double rho) {
    if (!(std::abs(rho) < 1.0))
        throw std::domain_error("bivariate_normal_cdf: |rho| must be < 1");
    if (std::isnan(h) || std::isnan(k))
        throw std::domain_error("bivariate_normal_cdf: h and k must be numbers");
    const double p = upper_orthant(-h, -k, rho);
    return std::clamp(p, 0.0, 1.0);
}

}  // namespace merit
