// Projective z-basis measurement of the whole supplementary register: Born
// probabilities over the up-spin count, pattern sampling, collapse, and the
// total-Sz bookkeeping that identifies the target symmetric index.

#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <utility>

#include "spinrus/half_int.hpp"
#include "spinrus/rng.hpp"
#include "spinrus/states.hpp"

namespace spinrus {

struct MeasurementOutcome {
    std::uint32_t pattern = 0;  // supplementary bits, 1 = down
    int up_count = 0;
    int inferred_k = 0;
    double probability = 0.0;  // Born weight of the observed up-count class
};

// Probability of observing w supplementary spins up, keyed by w.
inline std::map<int, double> outcome_distribution(const CollectiveState& state) {
    std::map<int, double> dist;
    const int n = state.n_supplementary;
    for (int i = 0; i < state.dim(); ++i) {
        const int w = (state.m1_at(i).twice() + n) / 2;
        dist[w] += std::norm(state.amplitudes[i]);
    }
    return dist;
}

inline std::map<int, double> outcome_distribution(const HybridState& state) {
    std::map<int, double> dist;
    const int n = state.n_supplementary;
    for (std::uint32_t z = 0; z < (1u << n); ++z) {
        double p = 0.0;
        for (int k = 0; k <= state.m_target; ++k) p += std::norm(state.amp(z, k));
        dist[up_count(z, n)] += p;
    }
    return dist;
}

// k from conservation of total Sz: measuring w supplementary spins up fixes
// the target magnetization, hence the symmetric index.
inline int infer_target_k(int up_spins, int n, int m, HalfInt total_sz) {
    const int twice_k = total_sz.twice() - (2 * up_spins - n) + m;
    if (twice_k % 2 != 0) {
        throw std::logic_error("infer_target_k: sector parity mismatch");
    }
    const int k = twice_k / 2;
    if (k < 0 || k > m) {
        throw std::logic_error("infer_target_k: inferred k=" + std::to_string(k) +
                               " outside 0.." + std::to_string(m) + " (corrupted state)");
    }
    return k;
}

namespace detail {

// rank-th bit pattern of n bits with exactly d ones, in increasing numeric
// order (combinatorial number system).
inline std::uint32_t pattern_unrank(int n, int d, double rank) {
    std::uint32_t pattern = 0;
    double r = rank;
    for (int pos = n - 1; pos >= 0 && d > 0; --pos) {
        const double without = binomial(pos, d);
        if (r < without) continue;
        r -= without;
        pattern |= 1u << pos;
        --d;
    }
    return pattern;
}

template <typename Weight>
int sample_index(int count, Weight&& weight, RandomStream& rng) {
    const double u = rng.uniform01();
    double acc = 0.0;
    int last = 0;
    for (int i = 0; i < count; ++i) {
        const double w = weight(i);
        if (w <= 0.0) continue;
        last = i;
        acc += w;
        if (u < acc) return i;
    }
    return last;  // guard against accumulated rounding at u ~ 1
}

}  // namespace detail

// Samples a full supplementary bit pattern by the Born rule and returns the
// renormalized post-measurement state. In the collective representation the
// pattern conditional on the up count is uniform (Dicke symmetry), and the
// target register collapses onto a single symmetric index.
inline std::pair<MeasurementOutcome, HybridState> sample_and_collapse(const CollectiveState& state,
                                                                      RandomStream& rng) {
    const int n = state.n_supplementary, m = state.m_target;
    const int i0 = detail::sample_index(
        state.dim(), [&](int i) { return std::norm(state.amplitudes[i]); }, rng);
    const HalfInt m1 = state.m1_at(i0);
    const int w = (m1.twice() + n) / 2;

    const double patterns = binomial(n, w);
    const double rank = std::min(std::floor(rng.uniform01() * patterns), patterns - 1.0);
    const std::uint32_t z = detail::pattern_unrank(n, n - w, rank);

    const HalfInt m2 = state.total_sz - m1;
    const int k = (m2.twice() + m) / 2;

    MeasurementOutcome out;
    out.pattern = z;
    out.up_count = w;
    out.inferred_k = infer_target_k(w, n, m, state.total_sz);
    out.probability = std::norm(state.amplitudes[i0]);

    HybridState post;
    post.n_supplementary = n;
    post.m_target = m;
    post.amplitudes.assign(post.dim(), Complex(0.0));
    post.amp(z, k) = state.amplitudes[i0] / std::abs(state.amplitudes[i0]);
    return {out, post};
}

inline std::pair<MeasurementOutcome, HybridState> sample_and_collapse(const HybridState& state,
                                                                      RandomStream& rng) {
    const int n = state.n_supplementary, m = state.m_target;
    const HalfInt total_sz = state.definite_total_sz();

    const auto pattern_weight = [&](int z) {
        double p = 0.0;
        for (int k = 0; k <= m; ++k) p += std::norm(state.amp(static_cast<std::uint32_t>(z), k));
        return p;
    };
    const std::uint32_t z =
        static_cast<std::uint32_t>(detail::sample_index(1 << n, pattern_weight, rng));
    const int w = up_count(z, n);

    double pz = 0.0;
    for (int k = 0; k <= m; ++k) pz += std::norm(state.amp(z, k));
    double pw = 0.0;
    for (std::uint32_t zz = 0; zz < (1u << n); ++zz) {
        if (up_count(zz, n) == w) pw += pattern_weight(static_cast<int>(zz));
    }

    MeasurementOutcome out;
    out.pattern = z;
    out.up_count = w;
    out.inferred_k = infer_target_k(w, n, m, total_sz);
    out.probability = pw;

    HybridState post;
    post.n_supplementary = n;
    post.m_target = m;
    post.amplitudes.assign(post.dim(), Complex(0.0));
    const double scale = 1.0 / std::sqrt(pz);
    for (int k = 0; k <= m; ++k) post.amp(z, k) = state.amp(z, k) * scale;
    return {out, post};
}

}  // namespace spinrus
