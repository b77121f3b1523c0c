// Exact angular-momentum algebra: Clebsch-Gordan coefficients via the Racah
// sum over arbitrary-precision rationals, and ladder-operator matrix elements.
//
// Phase convention: Condon-Shortley throughout, i.e. <j1 j1; j2 J-j1 | J J> > 0.

#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "spinrus/half_int.hpp"
#include "spinrus/radical.hpp"

namespace spinrus {

inline mpz_class factorial(int n) {
    if (n < 0) throw std::domain_error("factorial of negative integer");
    mpz_class f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

// <j1 m1; j2 m2 | J Mz>, exact. Returns zero when m1 + m2 != Mz; throws
// std::domain_error on triangle or parity violations.
inline ExactRadical cg(HalfInt j1, HalfInt m1, HalfInt j2, HalfInt m2, HalfInt J, HalfInt Mz) {
    require_jm(j1, m1);
    require_jm(j2, m2);
    require_jm(J, Mz);
    const int tj1 = j1.twice(), tm1 = m1.twice();
    const int tj2 = j2.twice(), tm2 = m2.twice();
    const int tJ = J.twice(), tM = Mz.twice();
    if ((tj1 + tj2 + tJ) % 2 != 0) {
        throw std::domain_error("cg: j1 + j2 + J is not an integer");
    }
    if (tJ < std::abs(tj1 - tj2) || tJ > tj1 + tj2) {
        throw std::domain_error("cg: triangle inequality violated");
    }
    if (tm1 + tm2 != tM) return ExactRadical::zero();

    // Every combination below is an even twice-value, hence an exact integer.
    const auto half = [](int twice) { return twice / 2; };

    const int k_lo = std::max({0, half(tj2 - tJ - tm1), half(tj1 - tJ + tm2)});
    const int k_hi = std::min({half(tj1 + tj2 - tJ), half(tj1 - tm1), half(tj2 + tm2)});
    if (k_hi < k_lo) return ExactRadical::zero();

    mpq_class sum = 0;
    for (int k = k_lo; k <= k_hi; ++k) {
        mpz_class denom = factorial(k);
        denom *= factorial(half(tj1 + tj2 - tJ) - k);
        denom *= factorial(half(tj1 - tm1) - k);
        denom *= factorial(half(tj2 + tm2) - k);
        denom *= factorial(half(tJ - tj2 + tm1) + k);
        denom *= factorial(half(tJ - tj1 - tm2) + k);
        mpq_class term(k % 2 == 0 ? 1 : -1, denom);
        term.canonicalize();
        sum += term;
    }
    if (sum == 0) return ExactRadical::zero();

    mpq_class triangle(factorial(half(tj1 + tj2 - tJ)) * factorial(half(tj1 - tj2 + tJ)) *
                           factorial(half(-tj1 + tj2 + tJ)),
                       factorial(half(tj1 + tj2 + tJ) + 1));
    triangle.canonicalize();

    mpz_class norm = factorial(half(tJ + tM)) * factorial(half(tJ - tM));
    norm *= factorial(half(tj1 - tm1)) * factorial(half(tj1 + tm1));
    norm *= factorial(half(tj2 - tm2)) * factorial(half(tj2 + tm2));

    mpq_class radicand = mpq_class(tJ + 1) * triangle * mpq_class(norm) * sum * sum;
    return ExactRadical(sgn(sum), radicand);
}

// <j, m-1 | S- | j, m> = sqrt((j+m)(j-m+1)); zero at m = -j.
inline double lowering_element(HalfInt j, HalfInt m) {
    require_jm(j, m);
    const long a = (j.twice() + m.twice()) / 2;
    const long b = (j.twice() - m.twice()) / 2 + 1;
    return std::sqrt(static_cast<double>(a * b));
}

}  // namespace spinrus
