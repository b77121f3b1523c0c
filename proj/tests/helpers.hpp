#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include "spinrus/rng.hpp"
#include "spinrus/states.hpp"

namespace spinrus::test {

inline void fill_random_normalized(std::vector<Complex>& amps, RandomStream& rng) {
    double norm = 0.0;
    for (Complex& a : amps) {
        a = Complex(2.0 * rng.uniform01() - 1.0, 2.0 * rng.uniform01() - 1.0);
        norm += std::norm(a);
    }
    const double scale = 1.0 / std::sqrt(norm);
    for (Complex& a : amps) a *= scale;
}

inline CollectiveState random_collective(int n, int m, RandomStream& rng) {
    CollectiveState s = initial_state(n, m);
    fill_random_normalized(s.amplitudes, rng);
    return s;
}

inline HybridState random_hybrid(int n, int m, RandomStream& rng) {
    HybridState h;
    h.n_supplementary = n;
    h.m_target = m;
    h.amplitudes.assign(h.dim(), Complex(0.0));
    fill_random_normalized(h.amplitudes, rng);
    return h;
}

// Random hybrid state confined to one total-Sz sector.
inline HybridState random_hybrid_sector(int n, int m, int twice_sz, RandomStream& rng) {
    HybridState h;
    h.n_supplementary = n;
    h.m_target = m;
    h.amplitudes.assign(h.dim(), Complex(0.0));
    double norm = 0.0;
    for (std::uint32_t z = 0; z < (1u << n); ++z) {
        for (int k = 0; k <= m; ++k) {
            if (h.twice_sz(z, k) != twice_sz) continue;
            h.amp(z, k) = Complex(2.0 * rng.uniform01() - 1.0, 2.0 * rng.uniform01() - 1.0);
            norm += std::norm(h.amp(z, k));
        }
    }
    const double scale = 1.0 / std::sqrt(norm);
    for (Complex& a : h.amplitudes) a *= scale;
    return h;
}

}  // namespace spinrus::test
