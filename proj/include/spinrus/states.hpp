// State representations and exact conversions between them.
//
// Bit convention, used everywhere a register is stored as a pattern: bit
// value 1 is spin down (sigma_z eigenvalue -1), bit 0 is spin up. In the full
// computational-basis register the supplementary spins occupy the low-order
// bit positions, target spins sit above them. The target symmetric index k
// counts target spins that are up.

#pragma once

#include <bit>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "spinrus/half_int.hpp"

namespace spinrus {

using Complex = std::complex<double>;

inline double binomial(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return std::round(r);
}

inline int up_count(std::uint32_t pattern, int n_bits) {
    return n_bits - std::popcount(pattern);
}

// Collective representation: both registers as single spins s1, s2 inside a
// fixed total-Sz sector. Amplitudes are indexed by m1; m2 = total_sz - m1.
struct CollectiveState {
    int n_supplementary = 0;  // N
    int m_target = 0;         // M
    HalfInt s1, s2, total_sz;
    std::vector<Complex> amplitudes;

    HalfInt m1_min() const {
        return HalfInt::from_twice(std::max(-s1.twice(), total_sz.twice() - s2.twice()));
    }
    HalfInt m1_max() const {
        return HalfInt::from_twice(std::min(s1.twice(), total_sz.twice() + s2.twice()));
    }
    int dim() const { return (m1_max().twice() - m1_min().twice()) / 2 + 1; }

    int index_of(HalfInt m1) const { return (m1.twice() - m1_min().twice()) / 2; }
    HalfInt m1_at(int index) const { return HalfInt::from_twice(m1_min().twice() + 2 * index); }

    Complex& amp(HalfInt m1) { return amplitudes[index_of(m1)]; }
    const Complex& amp(HalfInt m1) const { return amplitudes[index_of(m1)]; }
};

// Supplementary register in the computational basis tensor the target register
// in its Dicke basis; index = pattern * (M+1) + k.
struct HybridState {
    int n_supplementary = 0;
    int m_target = 0;
    std::vector<Complex> amplitudes;

    int dim() const { return (1 << n_supplementary) * (m_target + 1); }
    int index_of(std::uint32_t pattern, int k) const {
        return static_cast<int>(pattern) * (m_target + 1) + k;
    }
    Complex& amp(std::uint32_t pattern, int k) { return amplitudes[index_of(pattern, k)]; }
    const Complex& amp(std::uint32_t pattern, int k) const {
        return amplitudes[index_of(pattern, k)];
    }

    // Twice the total Sz of basis vector (pattern, k).
    int twice_sz(std::uint32_t pattern, int k) const {
        return 2 * up_count(pattern, n_supplementary) - n_supplementary + 2 * k - m_target;
    }

    // The single magnetization sector carrying all weight above `tol`;
    // throws if the support straddles sectors (a corrupted state).
    HalfInt definite_total_sz(double tol = 1e-12) const;
};

// Plain computational-basis vector over all N + M spins; oracle use only.
struct FullState {
    int n_supplementary = 0;
    int m_target = 0;
    std::vector<Complex> amplitudes;

    int n_sites() const { return n_supplementary + m_target; }
    int dim() const { return 1 << n_sites(); }
};

inline constexpr int kFullStateMaxSites = 16;

template <typename State>
double norm_squared(const State& s) {
    double n = 0.0;
    for (const Complex& a : s.amplitudes) n += std::norm(a);
    return n;
}

// |N/2, -N/2> |M/2, +M/2>: every supplementary spin down, every target spin up.
inline CollectiveState initial_state(int n_supplementary, int m_target) {
    if (n_supplementary < 1 || m_target < 1) {
        throw std::invalid_argument("initial_state: need N >= 1 and M >= 1");
    }
    CollectiveState s;
    s.n_supplementary = n_supplementary;
    s.m_target = m_target;
    s.s1 = HalfInt::from_twice(n_supplementary);
    s.s2 = HalfInt::from_twice(m_target);
    s.total_sz = HalfInt::from_twice(m_target - n_supplementary);
    s.amplitudes.assign(s.dim(), Complex(0.0));
    s.amp(HalfInt::from_twice(-n_supplementary)) = Complex(1.0);
    return s;
}

// Expands the symmetric supplementary register into bit patterns: the Dicke
// state |N/2, m1> is the uniform superposition of the C(N, w) patterns with
// w = m1 + N/2 spins up, each weighted 1/sqrt(C(N, w)).
inline HybridState dicke_expand(const CollectiveState& state) {
    const int n = state.n_supplementary;
    if (state.s1.twice() != n) {
        throw std::invalid_argument("dicke_expand: supplementary register not fully symmetric");
    }
    HybridState h;
    h.n_supplementary = n;
    h.m_target = state.m_target;
    h.amplitudes.assign(h.dim(), Complex(0.0));
    for (std::uint32_t z = 0; z < (1u << n); ++z) {
        const int w = up_count(z, n);
        const HalfInt m1 = HalfInt::from_twice(2 * w - n);
        if (m1 < state.m1_min() || m1 > state.m1_max()) continue;
        const HalfInt m2 = state.total_sz - m1;
        const int k = (m2.twice() + state.m_target) / 2;
        if (k < 0 || k > state.m_target) continue;
        h.amp(z, k) = state.amp(m1) / std::sqrt(binomial(n, w));
    }
    return h;
}

namespace detail {

inline void check_full_cap(int n_sites) {
    if (n_sites > kFullStateMaxSites) {
        throw std::length_error("full state capped at " + std::to_string(kFullStateMaxSites) +
                                " sites, got " + std::to_string(n_sites));
    }
}

}  // namespace detail

// Expands the target Dicke index to the uniform superposition over the
// C(M, k) computational patterns with k up spins.
inline FullState to_full(const HybridState& state) {
    const int n = state.n_supplementary, m = state.m_target;
    detail::check_full_cap(n + m);
    FullState f;
    f.n_supplementary = n;
    f.m_target = m;
    f.amplitudes.assign(f.dim(), Complex(0.0));
    for (std::uint32_t z = 0; z < (1u << n); ++z) {
        for (int k = 0; k <= m; ++k) {
            const Complex a = state.amp(z, k);
            if (a == Complex(0.0)) continue;
            const Complex scaled = a / std::sqrt(binomial(m, k));
            for (std::uint32_t y = 0; y < (1u << m); ++y) {
                if (std::popcount(y) != m - k) continue;  // k target spins up
                f.amplitudes[z | (y << n)] += scaled;
            }
        }
    }
    return f;
}

inline FullState to_full(const CollectiveState& state) { return to_full(dicke_expand(state)); }

namespace detail {

template <typename State>
Complex overlap_impl(const State& a, const State& b) {
    if (a.n_supplementary != b.n_supplementary || a.m_target != b.m_target ||
        a.amplitudes.size() != b.amplitudes.size()) {
        throw std::invalid_argument("overlap: dimension mismatch");
    }
    Complex r(0.0);
    for (std::size_t i = 0; i < a.amplitudes.size(); ++i) {
        r += std::conj(a.amplitudes[i]) * b.amplitudes[i];
    }
    return r;
}

}  // namespace detail

inline Complex overlap(const CollectiveState& a, const CollectiveState& b) {
    if (a.s1 != b.s1 || a.s2 != b.s2 || a.total_sz != b.total_sz) {
        throw std::invalid_argument("overlap: collective states live in different sectors");
    }
    return detail::overlap_impl(a, b);
}

inline Complex overlap(const HybridState& a, const HybridState& b) {
    return detail::overlap_impl(a, b);
}

inline Complex overlap(const FullState& a, const FullState& b) {
    return detail::overlap_impl(a, b);
}

inline HalfInt HybridState::definite_total_sz(double tol) const {
    bool found = false;
    int twice = 0;
    for (std::uint32_t z = 0; z < (1u << n_supplementary); ++z) {
        for (int k = 0; k <= m_target; ++k) {
            if (std::norm(amp(z, k)) <= tol * tol) continue;
            const int t = twice_sz(z, k);
            if (found && t != twice) {
                throw std::logic_error("HybridState: support straddles total-Sz sectors");
            }
            twice = t;
            found = true;
        }
    }
    if (!found) throw std::logic_error("HybridState: zero state has no sector");
    return HalfInt::from_twice(twice);
}

}  // namespace spinrus
