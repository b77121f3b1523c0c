// Closed-form quantities for the mirror bipartite network and the star-network
// W-state schedules, each cross-validated against direct simulation in the
// test suite.
//
// All first-round mirror formulas drop the constant part of the Heisenberg
// spectrum: only differences of S(S+1) enter any probability.

#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "spinrus/angular.hpp"
#include "spinrus/evolve.hpp"
#include "spinrus/hamiltonian.hpp"
#include "spinrus/optimize.hpp"
#include "spinrus/special.hpp"

namespace spinrus {

// Overlap product <S,0|N/2,-N/2;N/2,N/2> <N/2,m;N/2,-m|S,0> of the first-round
// expansion on the mirror network, exact.
inline double p_coeff(int n, int s, HalfInt m) {
    if (n < 1 || s < 0 || s > n) {
        throw std::domain_error("p_coeff: need 0 <= S <= N");
    }
    const HalfInt j = HalfInt::from_twice(n);  // N/2
    require_jm(j, m);
    const ExactRadical first = cg(j, -j, j, j, HalfInt(s), HalfInt(0));
    const ExactRadical second = cg(j, m, j, -m, HalfInt(s), HalfInt(0));
    return (first * second).value();
}

// Closed form for p_coeff(N, S, 0) on even N, evaluated through log-gamma;
// identically zero for odd S.
inline double p_s0_closed(int n, int s) {
    if (n < 2 || n % 2 != 0 || s < 0 || s > n) {
        throw std::domain_error("p_s0_closed: need even N and 0 <= S <= N");
    }
    if (s % 2 != 0) return 0.0;  // the (1 + cos(pi S)) factor
    const double log_mag = -(n + 2) * std::numbers::ln2 + std::log(2.0 * s + 1.0) +
                           std::lgamma(n + 1.0) + std::lgamma(0.5 * (s + 1)) +
                           std::numbers::ln2 - std::lgamma(0.5 * (n - s + 2)) -
                           std::lgamma(0.5 * s + 1.0) - std::lgamma(0.5 * (n + s + 3));
    const int sign = ((n + s) / 2) % 2 == 0 ? 1 : -1;
    return sign * std::exp(log_mag);
}

// P_{S,0} for S = 0..N from the exact coefficient route.
inline std::vector<double> p_s0_coefficients(int n) {
    std::vector<double> c(n + 1);
    for (int s = 0; s <= n; ++s) c[s] = p_coeff(n, s, HalfInt(0));
    return c;
}

// First-round success probability |sum_S exp(-i S(S+1) t) P_{S,0}|^2 on the
// mirror Heisenberg network with J = 1.
inline double p_of_t(int n, double t) {
    if (n < 2 || n % 2 != 0) throw std::domain_error("p_of_t: N must be even");
    const std::vector<double> c = p_s0_coefficients(n);
    std::complex<double> acc(0.0);
    for (int s = 0; s <= n; ++s) {
        if (c[s] == 0.0) continue;
        acc += c[s] * std::polar(1.0, -static_cast<double>(s) * (s + 1) * t);
    }
    return std::norm(acc);
}

struct PMax {
    double t_star = 0.0;
    double p_star = 0.0;
};

// Maximum of p_of_t over one period (0, pi]. All frequencies S(S+1) are even
// integers, so the grid is sized to resolve the fastest one before the
// golden-section refinements.
inline PMax p_max_numeric(int n) {
    if (n < 2 || n % 2 != 0) throw std::domain_error("p_max_numeric: N must be even");
    const std::vector<double> c = p_s0_coefficients(n);
    const auto f = [&](double t) {
        std::complex<double> acc(0.0);
        for (int s = 0; s <= n; s += 2) {
            acc += c[s] * std::polar(1.0, -static_cast<double>(s) * (s + 1) * t);
        }
        return std::norm(acc);
    };
    const int grid = std::max(4096, 8 * n * (n + 1));
    const GridMax gm = maximize_on_grid(f, 0.0, std::numbers::pi, grid, 1e-10, 1e-9);

    double aligned = 0.0;
    for (double x : c) aligned += std::abs(x);
    aligned *= aligned;
    if (std::abs(gm.value - aligned) > 1e-9) {
        throw NumericalError("p_max_numeric: grid maximum misses the phase-alignment value");
    }
    return {gm.t, gm.value};
}

// The printed closed form for the first-round maximum, under either reading of
// the hypergeometric normalization. Reported for audit; not used as an oracle.
inline double p_max_closed_as_printed(int n, bool regularized) {
    if (n < 2 || n % 2 != 0) {
        throw std::domain_error("p_max_closed_as_printed: N must be even");
    }
    const double lg_front = std::lgamma(0.5 * (n + 1));

    const SignedLogGamma g_neg = log_gamma(-0.25);
    const double l1 = lg_front + 0.5 * std::log(2.0 * std::numbers::pi) - g_neg.log_abs -
                      std::lgamma(0.25 * (2 * n + 5));
    const double term1 = g_neg.sign * std::exp(l1);

    const double f = hyp2f1_terminating(1.5, 1.0 - 0.5 * n, 0.5 * (n + 5), -1.0, regularized);
    double term2 = 0.0;
    if (f != 0.0) {
        const double l2 =
            lg_front + std::log(0.5 * n * std::abs(f)) - std::lgamma(0.5 * (n + 5));
        term2 = (f > 0.0 ? 1.0 : -1.0) * std::exp(l2);
    }
    const double total = term1 + term2;
    return total * total;
}

// --- W-state schedules on the star network -----------------------------------

enum class WModel { xx_outer, xx_local_unitary, xxz_tuned, xx_center_field };
enum class WExactness { exact, up_to_local_unitary_on_center };

inline std::string to_string(WModel m) {
    switch (m) {
        case WModel::xx_outer: return "xx_outer";
        case WModel::xx_local_unitary: return "xx_local_unitary";
        case WModel::xxz_tuned: return "xxz_tuned";
        case WModel::xx_center_field: return "xx_center_field";
    }
    throw std::invalid_argument("unknown WModel");
}

inline WModel w_model_from_string(const std::string& s) {
    if (s == "xx_outer") return WModel::xx_outer;
    if (s == "xx_local_unitary") return WModel::xx_local_unitary;
    if (s == "xxz_tuned") return WModel::xxz_tuned;
    if (s == "xx_center_field") return WModel::xx_center_field;
    throw std::invalid_argument("unknown w-state model '" + s + "'");
}

struct WSchedule {
    WModel model = WModel::xx_outer;
    double anisotropy = 0.0;
    double field_center_extra = 0.0;
    double measurement_time = 0.0;
    std::string target_state;
    WExactness exactness = WExactness::exact;
};

inline WSchedule w_schedule(int m, WModel model) {
    if (m < 2) throw std::invalid_argument("w_schedule: need M >= 2");
    const double root_m = std::sqrt(static_cast<double>(m));
    const double root_m1 = std::sqrt(static_cast<double>(m + 1));
    WSchedule s;
    s.model = model;
    switch (model) {
        case WModel::xx_outer:
            s.measurement_time = 0.5 * std::numbers::pi / root_m;
            s.target_state = "|S(" + std::to_string(m) + "," + std::to_string(m - 1) +
                             ")> on outer spins";
            break;
        case WModel::xx_local_unitary:
            s.measurement_time = std::atan(root_m) / root_m;
            s.target_state = "|S(" + std::to_string(m + 1) + "," + std::to_string(m) + ")>";
            s.exactness = WExactness::up_to_local_unitary_on_center;
            break;
        case WModel::xxz_tuned:
            s.anisotropy = 2.0 / (1.0 - m);
            s.measurement_time = 0.5 * std::numbers::pi / root_m1;
            s.target_state = "|S(" + std::to_string(m + 1) + "," + std::to_string(m) + ")>";
            break;
        case WModel::xx_center_field:
            s.field_center_extra = -2.0;
            s.measurement_time = 0.5 * std::numbers::pi / root_m1;
            s.target_state = "|S(" + std::to_string(m + 1) + "," + std::to_string(m) + ")>";
            break;
    }
    return s;
}

inline NetworkConfig star_config(int m, const WSchedule& s) {
    NetworkConfig cfg;
    cfg.topology = Topology::star;
    cfg.n_supplementary = 1;
    cfg.m_target = m;
    cfg.coupling = 1.0;
    cfg.anisotropy = s.anisotropy;
    cfg.field_uniform = 0.0;
    cfg.field_center_extra = s.field_center_extra;
    return cfg;
}

// Star-network evolution from |1>|M/2, M/2> with fidelity against the
// schedule's target.
class WStateSim {
public:
    WStateSim(int m, const WSchedule& schedule)
        : m_(m), prop_(diagonalize(star_block(star_config(m, schedule)))) {
        const int d = 2 * (m + 1);
        initial_.assign(d, Complex(0.0));
        initial_[star_index(1, m, m)] = Complex(1.0);

        target_.assign(d, Complex(0.0));
        if (schedule.model == WModel::xx_outer) {
            target_[star_index(0, m - 1, m)] = Complex(1.0);
        } else {
            // |S(M+1,M)> = (|1>|M/2,M/2> + sqrt(M) |0>|M/2,M/2-1>)/sqrt(M+1)
            const double root = std::sqrt(static_cast<double>(m + 1));
            target_[star_index(1, m, m)] = Complex(1.0 / root);
            target_[star_index(0, m - 1, m)] = Complex(std::sqrt(static_cast<double>(m)) / root);
        }
    }

    std::vector<Complex> evolved(double t) const {
        std::vector<Complex> amps = initial_;
        prop_.rotate(amps, t);
        return amps;
    }

    Complex target_overlap(double t) const {
        const std::vector<Complex> amps = evolved(t);
        Complex acc(0.0);
        for (std::size_t i = 0; i < amps.size(); ++i) acc += std::conj(target_[i]) * amps[i];
        return acc;
    }

    double fidelity(double t) const { return std::norm(target_overlap(t)); }

    // Best fidelity over phase rotations diag(e^{i phi}, 1) of the center spin.
    double center_phase_optimized_fidelity(double t) const {
        const std::vector<Complex> amps = evolved(t);
        Complex part[2] = {Complex(0.0), Complex(0.0)};
        for (int c = 0; c <= 1; ++c) {
            for (int k = 0; k <= m_; ++k) {
                const int i = star_index(c, k, m_);
                part[c] += std::conj(target_[i]) * amps[i];
            }
        }
        const double best = std::abs(part[0]) + std::abs(part[1]);
        return best * best;
    }

private:
    int m_;
    Propagator prop_;
    std::vector<Complex> initial_, target_;
};

}  // namespace spinrus
