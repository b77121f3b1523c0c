// log-gamma with explicit sign, and terminating Gauss hypergeometric sums.

#pragma once

#include <gmpxx.h>

#include <cmath>
#include <stdexcept>

namespace spinrus {

struct SignedLogGamma {
    double log_abs;  // ln |Gamma(x)|
    int sign;        // sign of Gamma(x)
};

// Valid away from the poles at x = 0, -1, -2, ...; negative arguments go
// through the reflection formula.
inline SignedLogGamma log_gamma(double x) {
    if (x <= 0.0 && x == std::floor(x)) {
        throw std::domain_error("log_gamma: pole at nonpositive integer " + std::to_string(x));
    }
    if (x > 0.0) {
        return {std::lgamma(x), 1};
    }
    // |Gamma(x)| = pi / (|sin(pi x)| Gamma(1-x)); Gamma alternates sign
    // between consecutive negative integers.
    const double log_abs =
        std::log(M_PI) - std::log(std::abs(std::sin(M_PI * x))) - std::lgamma(1.0 - x);
    const long long fl = static_cast<long long>(std::floor(x));
    const int sign = (fl % 2 == 0) ? 1 : -1;
    return {log_abs, sign};
}

inline double gamma_signed(double x) {
    const SignedLogGamma g = log_gamma(x);
    return g.sign * std::exp(g.log_abs);
}

// 2F1(a, b; c; z) with b a nonpositive integer, so the series terminates.
// The finite sum is evaluated exactly in rational arithmetic on the binary
// values of the inputs; `regularized` divides the result by Gamma(c).
inline double hyp2f1_terminating(double a, double b, double c, double z, bool regularized) {
    if (b > 0.0 || b != std::floor(b)) {
        throw std::domain_error("hyp2f1_terminating: b must be a nonpositive integer");
    }
    const int n = static_cast<int>(-b);
    const mpq_class qa(a), qc(c), qz(z);
    const mpq_class qb(b);
    mpq_class term = 1, sum = 0;
    for (int k = 0; k <= n; ++k) {
        sum += term;
        if (k == n) break;
        mpq_class den = (qc + k) * (k + 1);
        if (den == 0) {
            throw std::domain_error("hyp2f1_terminating: pole from nonpositive integer c");
        }
        term *= (qa + k) * (qb + k) * qz / den;
    }
    const double plain = sum.get_d();
    if (!regularized) return plain;
    const SignedLogGamma gc = log_gamma(c);
    return plain * gc.sign * std::exp(-gc.log_abs);
}

}  // namespace spinrus
