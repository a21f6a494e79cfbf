#pragma once

namespace merit {

// Standard normal CDF.
double normal_cdf(double x);

// Inverse of the standard normal CDF; p must lie in (0, 1).
double normal_quantile(double p);

/*
 * Pr(X <= h, Y <= k) for a standard bivariate normal pair with correlation
 * rho. Uses Genz's refinement of the Drezner-Wesolowsky Gauss-Legendre
 * scheme (absolute error near double precision).
 *
 * Throws std::domain_error when |rho| >= 1 or h, k are NaN.
 */
double bivariate_normal_cdf(double h, double k, double rho);

}  // namespace merit
