#include <algorithm>
#include <cmath>
#include <limits>

#include <boost/math/distributions/beta.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/beta.hpp>

#include "rarburn/design.hpp"
#include "rarburn/error.hpp"

namespace rarburn {

namespace {

double log_beta(double a, double b) { return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b); }

bool is_whole(double x) { return x >= 1.0 && x < 1e9 && x == std::floor(x); }

// P(T > C) with T ~ Beta(at, bt), C ~ Beta(ac, bc) and integer at:
//   sum_{i<at} B(ac+i, bc+bt) / ((bt+i) B(1+i, bt) B(ac, bc)).
// Consecutive terms differ by the factor (ac+i)(bt+i) / ((ac+bc+bt+i)(1+i)),
// accumulated in log space so that extreme counts neither underflow nor
// overflow.
double superiority_sum(long at, double bt, double ac, double bc) {
    double log_term = log_beta(ac, bc + bt) - log_beta(ac, bc);
    double peak = log_term;
    double scaled = 1.0;
    for (long i = 0; i + 1 < at; ++i) {
        const double k = static_cast<double>(i);
        log_term += std::log(((ac + k) * (bt + k)) / ((ac + bc + bt + k) * (1.0 + k)));
        if (log_term > peak) {
            scaled = scaled * std::exp(peak - log_term) + 1.0;
            peak = log_term;
        } else {
            scaled += std::exp(log_term - peak);
        }
    }
    return std::exp(peak + std::log(scaled));
}

double superiority_quadrature(double a0, double b0, double a1, double b1) {
    const boost::math::beta_distribution<double> control(a0, b0);
    auto integrand = [&](double x) {
        return boost::math::pdf(control, x) * boost::math::ibetac(a1, b1, x);
    };
    boost::math::quadrature::tanh_sinh<double> integrator;
    return integrator.integrate(integrand, 0.0, 1.0, 1e-12);
}

}  // namespace

double beta_superiority(double a0, double b0, double a1, double b1) {
    if (!(a0 > 0 && b0 > 0 && a1 > 0 && b1 > 0))
        throw Error(ErrorCode::Configuration, "Beta parameters must be positive");

    // Any one integer shape parameter admits the finite sum; use the smallest
    // to minimize the number of terms. The b-parameter forms follow from
    // P(X1 > X0) = P(1 - X0 > 1 - X1).
    struct Candidate {
        double size;
        int form;
    };
    Candidate best{std::numeric_limits<double>::infinity(), -1};
    const std::array<double, 4> sizes{a1, a0, b0, b1};
    for (int form = 0; form < 4; ++form) {
        if (is_whole(sizes[form]) && sizes[form] < best.size) best = {sizes[form], form};
    }

    double p;
    switch (best.form) {
        case 0: p = superiority_sum(static_cast<long>(a1), b1, a0, b0); break;
        case 1: p = 1.0 - superiority_sum(static_cast<long>(a0), b0, a1, b1); break;
        case 2: p = superiority_sum(static_cast<long>(b0), a0, b1, a1); break;
        case 3: p = 1.0 - superiority_sum(static_cast<long>(b1), a1, b0, a0); break;
        default: p = superiority_quadrature(a0, b0, a1, b1); break;
    }
    return std::clamp(p, 0.0, 1.0);
}

double thompson_prob(int s0, int n0, int s1, int n1, const BetaPrior& prior) {
    if (s0 < 0 || s1 < 0 || s0 > n0 || s1 > n1)
        throw Error(ErrorCode::Configuration, "success counts must satisfy 0 <= S_k <= n_k");
    return beta_superiority(prior.a0 + s0, prior.b0 + (n0 - s0), prior.a1 + s1,
                            prior.b1 + (n1 - s1));
}

}  // namespace rarburn
