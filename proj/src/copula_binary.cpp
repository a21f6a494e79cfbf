#include "merit/copula_binary.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "merit/normal.hpp"

namespace merit {

Stream::Stream(std::uint64_t seed, std::initializer_list<std::uint64_t> path) {
    std::vector<std::uint32_t> words;
    words.reserve(2 + 2 * path.size());
    auto push = [&words](std::uint64_t v) {
        words.push_back(static_cast<std::uint32_t>(v));
        words.push_back(static_cast<std::uint32_t>(v >> 32));
    };
    push(seed);
    push(path.size());
    for (auto v : path) push(v);
    std::seed_seq seq(words.begin(), words.end());
    engine_.seed(seq);
}

double CellProbs::operator()(int tox, int eff) const {
    if (tox == 0) return eff == 0 ? p00 : p01;
    return eff == 0 ? p10 : p11;
}

CellProbs cell_probabilities(double phi_T, double phi_E, double rho) {
    if (!(phi_T > 0.0 && phi_T < 1.0) || !(phi_E > 0.0 && phi_E < 1.0))
        throw std::domain_error("cell_probabilities: degenerate marginal (phi must lie in (0, 1))");
    if (!(std::abs(rho) < 1.0))
        throw std::domain_error("cell_probabilities: |rho| must be < 1");

    double p11 = bivariate_normal_cdf(normal_quantile(phi_T), normal_quantile(phi_E), rho);
    p11 = std::clamp(p11, std::max(0.0, phi_T + phi_E - 1.0), std::min(phi_T, phi_E));
    CellProbs c;
    c.p11 = p11;
    c.p10 = phi_T - p11;
    c.p01 = phi_E - p11;
    c.p00 = 1.0 - phi_T - phi_E + p11;
    return c;
}

JointCounts::JointCounts(int n, const CellProbs& c) : n_(n) {
    if (n < 0) throw std::invalid_argument("JointCounts: n must be >= 0");
    const auto side = static_cast<std::size_t>(n + 1);
    pmf_.assign(side * side, 0.0);
    pmf_[0] = 1.0;

    // After i patients only t, e <= i carry mass; sweep from the top so each
    // cell is read before it is overwritten.
    for (int i = 0; i < n; ++i) {
        for (int t = i + 1; t >= 0; --t) {
            for (int e = i + 1; e >= 0; --e) {
                double v = 0.0;
                if (t <= i && e <= i) v += c.p00 * pmf_[index(t, e)];
                if (t <= i && e >= 1) v += c.p01 * pmf_[index(t, e - 1)];
                if (t >= 1 && e <= i) v += c.p10 * pmf_[index(t - 1, e)];
                if (t >= 1 && e >= 1) v += c.p11 * pmf_[index(t - 1, e - 1)];
                pmf_[index(t, e)] = v;
            }
        }
    }

    // tail_(m_T, m_E) = sum_{t <= m_T, e >= m_E} pmf(t, e)
    const auto width = side + 1;
    tail_.assign(side * width, 0.0);
    for (int t = 0; t <= n; ++t) {
        double run = 0.0;
        for (int e = n; e >= 0; --e) {
            run += pmf_[index(t, e)];
            const double above = t > 0 ? tail_[(t - 1) * width + e] : 0.0;
            tail_[t * width + e] = above + run;
        }
    }
}

double JointCounts::tail(int m_T, int m_E) const {
    if (m_T < 0 || m_E > n_ + 1) return 0.0;
    m_T = std::min(m_T, n_);
    m_E = std::max(m_E, 0);
    return tail_[static_cast<std::size_t>(m_T) * static_cast<std::size_t>(n_ + 2) +
                 static_cast<std::size_t>(m_E)];
}

double joint_tail(int n, int m_T, int m_E, const CellProbs& cells) {
    if (n < 1 || m_T < 0 || m_T > n || m_E < 0 || m_E > n)
        throw std::invalid_argument("joint_tail: require n >= 1 and 0 <= m_T, m_E <= n");
    return JointCounts(n, cells).tail(m_T, m_E);
}

double binomial_pmf(int n, int k, double p) {
    if (k < 0 || k > n) return 0.0;
    if (p <= 0.0) return k == 0 ? 1.0 : 0.0;
    if (p >= 1.0) return k == n ? 1.0 : 0.0;
    const double log_choose =
        std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
    return std::exp(log_choose + k * std::log(p) + (n - k) * std::log1p(-p));
}

double marginal_tail(int n, int threshold, double p, TailSide side) {
    if (n < 0 || threshold < 0 || threshold > n)
        throw std::invalid_argument("marginal_tail: require 0 <= threshold <= n");
    // Sum the shorter side for accuracy.
    double lower = 0.0;
    double upper = 0.0;
    if (threshold <= n / 2) {
        for (int k = 0; k <= threshold; ++k) lower += binomial_pmf(n, k, p);
        upper = 1.0 - lower;
    } else {
        for (int k = threshold + 1; k <= n; ++k) upper += binomial_pmf(n, k, p);
        lower = 1.0 - upper;
    }
    const double v = side == TailSide::lower ? lower : upper;
    return std::clamp(v, 0.0, 1.0);
}

ArmCounts sample_arm(int n, const CellProbs& c, Stream& stream) {
    ArmCounts out;
    const double c0 = c.p00;
    const double c1 = c0 + c.p01;
    const double c2 = c1 + c.p10;
    for (int i = 0; i < n; ++i) {
        const double u = stream.uniform();
        if (u < c0) continue;
        if (u < c1) {
            ++out.n_E;
        } else if (u < c2) {
            ++out.n_T;
        } else {
            ++out.n_T;
            ++out.n_E;
        }
    }
    return out;
}

CountSampler::CountSampler(const JointCounts& counts) : n_(counts.n()) {
    const auto& pmf = counts.pmf_table();
    cdf_.resize(pmf.size());
    double run = 0.0;
    for (std::size_t i = 0; i < pmf.size(); ++i) {
        run += pmf[i];
        cdf_[i] = run;
    }
    for (auto& v : cdf_) v /= run;
    cdf_.back() = 1.0;
}

ArmCounts CountSampler::draw(Stream& stream) const {
    const double u = stream.uniform();
    auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
    auto idx = static_cast<int>(std::min<std::ptrdiff_t>(it - cdf_.begin(),
                                                         static_cast<std::ptrdiff_t>(cdf_.size()) - 1));
    return {idx / (n_ + 1), idx % (n_ + 1)};
}

}  // namespace merit
