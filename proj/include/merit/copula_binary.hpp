#pragma once

#include <vector>

#include "merit/rng.hpp"

namespace merit {

// Per-patient law of (Y_T, Y_E); pXY is Pr(Y_T = X, Y_E = Y).
struct CellProbs {
    double p00 = 1.0;
    double p01 = 0.0;
    double p10 = 0.0;
    double p11 = 0.0;

    double phi_T() const { return p10 + p11; }
    double phi_E() const { return p01 + p11; }
    double operator()(int tox, int eff) const;
};

/*
 * Gaussian-copula cell probabilities: Y_T = 1{X_T <= Phi^-1(phi_T)} and
 * Y_E = 1{X_E <= Phi^-1(phi_E)} with corr(X_T, X_E) = rho.
 *
 * Throws std::domain_error for marginals outside (0, 1) or |rho| >= 1.
 */
CellProbs cell_probabilities(double phi_T, double phi_E, double rho);

struct ArmLaw {
    double phi_T;
    double phi_E;
    double rho;
    CellProbs cells;

    static ArmLaw make(double phi_T, double phi_E, double rho) {
        return {phi_T, phi_E, rho, cell_probabilities(phi_T, phi_E, rho)};
    }
};

/*
 * Exact joint distribution of (n_T, n_E) after n iid patients, built by a
 * dynamic program over patients. Also holds the acceptance table
 * Pr(n_T <= m_T, n_E >= m_E) for every 0 <= m_T <= n, 0 <= m_E <= n + 1.
 */
class JointCounts {
  public:
    JointCounts(int n, const CellProbs& cells);

    int n() const { return n_; }
    double pmf(int n_T, int n_E) const { return pmf_[index(n_T, n_E)]; }
    double tail(int m_T, int m_E) const;
    const std::vector<double>& pmf_table() const { return pmf_; }

  private:
    std::size_t index(int t, int e) const {
        return static_cast<std::size_t>(t) * static_cast<std::size_t>(n_ + 1) +
               static_cast<std::size_t>(e);
    }

    int n_;
    std::vector<double> pmf_;   // (n+1) x (n+1)
    std::vector<double> tail_;  // (n+1) x (n+2)
};

// Pr(n_T <= m_T AND n_E >= m_E). Requires n >= 1, 0 <= m_T, m_E <= n.
double joint_tail(int n, int m_T, int m_E, const CellProbs& cells);

enum class TailSide { lower, upper };

/*
 * Binomial(n, p) tails: lower is Pr(X <= threshold), upper is
 * Pr(X > threshold). Requires 0 <= threshold <= n.
 */
double marginal_tail(int n, int threshold, double p, TailSide side);

// Binomial(n, p) probability mass at k.
double binomial_pmf(int n, int k, double p);

struct ArmCounts {
    int n_T = 0;
    int n_E = 0;
};

// Draws n patients one at a time from the four-cell law.
ArmCounts sample_arm(int n, const CellProbs& cells, Stream& stream);

/*
 * Draws (n_T, n_E) directly from a JointCounts table by inverse CDF. Same law
 * as sample_arm, O(log n) per draw.
 */
class CountSampler {
  public:
    explicit CountSampler(const JointCounts& counts);
    ArmCounts draw(Stream& stream) const;

  private:
    int n_;
    std::vector<double> cdf_;
};

}  // namespace merit
