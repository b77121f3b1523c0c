// Repeat-until-success engine: per-round measurement-time optimization,
// trajectory simulation and ensemble statistics. Round 1 runs in the
// collective representation; once a measurement has fixed a supplementary bit
// pattern the state leaves the symmetric sector, so later rounds run in the
// hybrid representation.

#pragma once

#include <cstdint>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <thread>
#include <variant>
#include <vector>

#include "spinrus/evolve.hpp"
#include "spinrus/measure.hpp"
#include "spinrus/optimize.hpp"
#include "spinrus/states.hpp"

namespace spinrus {

// Lower bound for greedy measurement-time windows: measuring again at t -> 0
// trivially reproduces the previous outcome, which the optimizer must not
// exploit.
inline constexpr double kGreedyTimeFloor = 0.05;

struct TimetableEntry {
    int round_index = 0;  // 1-based
    double measurement_time = 0.0;
    double predicted_success_probability = 0.0;
};

struct Timetable {
    std::vector<TimetableEntry> entries;
};

struct GreedyPolicy {
    double window_lo = kGreedyTimeFloor;
    double window_hi = std::numbers::pi;
    int grid = 512;
};

using Policy = std::variant<Timetable, GreedyPolicy>;

struct RoundRecord {
    double time = 0.0;
    int up_count = 0;
    int inferred_k = 0;
    double cumulative_time = 0.0;
};

struct TrajectoryRecord {
    std::uint64_t trajectory_index = 0;
    std::vector<RoundRecord> rounds;
    bool success = false;  // terminal status; false = exhausted
    int rounds_used = 0;
    std::uint64_t seed = 0;
};

struct RunSummary {
    std::uint64_t trajectories = 0;
    double success_rate = 0.0;
    double mean_rounds_to_success = 0.0;  // over successful trajectories
    std::vector<std::uint64_t> per_round_first_success;
    std::uint64_t master_seed = 0;
};

using RecordSink = std::function<void(const TrajectoryRecord&)>;

struct SinkError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace detail {

// m1 value whose measurement implies the target index k, or an out-of-range
// flag when the sector cannot reach k.
inline bool target_m1(const CollectiveState& s, int target_k, HalfInt& m1_out) {
    const int twice_m2 = 2 * target_k - s.m_target;
    m1_out = HalfInt::from_twice(s.total_sz.twice() - twice_m2);
    return m1_out >= s.m1_min() && m1_out <= s.m1_max();
}

inline void check_window(std::pair<double, double> window, int grid) {
    if (grid < 256) {
        throw std::invalid_argument("optimize_next_time: grid must be at least 256");
    }
    if (!(window.second > window.first)) {
        throw std::invalid_argument("optimize_next_time: empty window");
    }
    if (window.first < kGreedyTimeFloor) {
        throw std::invalid_argument("optimize_next_time: window starts below the time floor");
    }
}

}  // namespace detail

// Measurement time in the window maximizing the probability that the next
// measurement yields inferred_k == target_k. A probability that is zero over
// the whole window is reported, not an error.
inline std::pair<double, double> optimize_next_time(const CollectiveState& state,
                                                    Evolver& evolver, int target_k,
                                                    std::pair<double, double> window, int grid) {
    detail::check_window(window, grid);
    HalfInt m1;
    if (!detail::target_m1(state, target_k, m1)) {
        return {window.first, 0.0};
    }
    const int idx = state.index_of(m1);
    const auto prop = evolver.collective(state.s1, state.s2, state.total_sz);
    const auto f = [&](double t) {
        std::vector<Complex> amps = state.amplitudes;
        prop->rotate(amps, t);
        return std::norm(amps[idx]);
    };
    const GridMax gm = maximize_on_grid(f, window.first, window.second, grid);
    return {gm.t, gm.value};
}

inline std::pair<double, double> optimize_next_time(const HybridState& state, Evolver& evolver,
                                                    int target_k,
                                                    std::pair<double, double> window, int grid) {
    detail::check_window(window, grid);
    const int n = state.n_supplementary, m = state.m_target;
    const HalfInt total_sz = state.definite_total_sz();
    const int twice_m2 = 2 * target_k - m;
    const int target_w2 = total_sz.twice() - twice_m2 + n;  // 2w for the target outcome
    if (target_w2 % 2 != 0 || target_w2 < 0 || target_w2 > 2 * n) {
        return {window.first, 0.0};
    }
    const int target_w = target_w2 / 2;

    const std::vector<int> idx = hybrid_sector_indices(n, m, total_sz.twice());
    const auto prop = evolver.hybrid_sector(total_sz.twice());
    std::vector<Complex> local(idx.size());
    for (std::size_t i = 0; i < idx.size(); ++i) local[i] = state.amplitudes[idx[i]];

    HybridState layout;
    layout.n_supplementary = n;
    layout.m_target = m;
    std::vector<int> hit_rows;  // sector positions whose pattern has target_w spins up
    for (std::size_t i = 0; i < idx.size(); ++i) {
        const std::uint32_t z = static_cast<std::uint32_t>(idx[i] / (m + 1));
        if (up_count(z, n) == target_w) hit_rows.push_back(static_cast<int>(i));
    }
    if (hit_rows.empty()) return {window.first, 0.0};

    const auto f = [&](double t) {
        std::vector<Complex> amps = local;
        prop->rotate(amps, t);
        double p = 0.0;
        for (int r : hit_rows) p += std::norm(amps[r]);
        return p;
    };
    const GridMax gm = maximize_on_grid(f, window.first, window.second, grid);
    return {gm.t, gm.value};
}

namespace detail {

inline std::pair<double, double> round_time(const Policy& policy, int round,
                                            const CollectiveState* cs, const HybridState* hs,
                                            Evolver& evolver, int target_k) {
    if (const auto* table = std::get_if<Timetable>(&policy)) {
        for (const TimetableEntry& e : table->entries) {
            if (e.round_index != round) continue;
            if (!(e.measurement_time > 0.0)) {
                throw std::invalid_argument("timetable entry for round " + std::to_string(round) +
                                            " has nonpositive time");
            }
            if (e.predicted_success_probability < 0.0 ||
                e.predicted_success_probability > 1.0) {
                throw std::invalid_argument("timetable prediction outside [0, 1]");
            }
            return {e.measurement_time, e.predicted_success_probability};
        }
        throw std::invalid_argument("fixed timetable has no entry for round " +
                                    std::to_string(round));
    }
    const auto& greedy = std::get<GreedyPolicy>(policy);
    const std::pair<double, double> window{greedy.window_lo, greedy.window_hi};
    if (cs != nullptr) {
        return optimize_next_time(*cs, evolver, target_k, window, greedy.grid);
    }
    return optimize_next_time(*hs, evolver, target_k, window, greedy.grid);
}

}  // namespace detail

// One full trajectory: alternate propagation and measurement until the
// inferred symmetric index hits target_k or max_rounds runs out.
inline TrajectoryRecord run_trajectory(Evolver& evolver, int target_k, const Policy& policy,
                                       int max_rounds, std::uint64_t master_seed,
                                       std::uint64_t trajectory_index) {
    const NetworkConfig& cfg = evolver.config();
    if (target_k < 0 || target_k > cfg.m_target) {
        throw std::invalid_argument("run_trajectory: target_k outside 0..M");
    }
    if (max_rounds < 1) throw std::invalid_argument("run_trajectory: max_rounds must be >= 1");
    if (max_rounds > 1 && cfg.n_supplementary > kHybridMaxSupplementary) {
        throw std::length_error("run_trajectory: hybrid rounds require N <= " +
                                std::to_string(kHybridMaxSupplementary));
    }

    RandomStream rng(master_seed, trajectory_index);
    TrajectoryRecord rec;
    rec.trajectory_index = trajectory_index;
    rec.seed = rng.seed();

    CollectiveState cs = initial_state(cfg.n_supplementary, cfg.m_target);
    HybridState hs;
    double cumulative = 0.0;
    for (int round = 1; round <= max_rounds; ++round) {
        const bool collective = round == 1;
        const auto [t, predicted] = detail::round_time(
            policy, round, collective ? &cs : nullptr, collective ? nullptr : &hs, evolver,
            target_k);
        (void)predicted;
        MeasurementOutcome outcome;
        if (collective) {
            const CollectiveState evolved = evolver.propagate(cs, t);
            std::tie(outcome, hs) = sample_and_collapse(evolved, rng);
        } else {
            const HybridState evolved = evolver.propagate(hs, t);
            std::tie(outcome, hs) = sample_and_collapse(evolved, rng);
        }
        cumulative += t;
        rec.rounds.push_back({t, outcome.up_count, outcome.inferred_k, cumulative});
        rec.rounds_used = round;
        if (outcome.inferred_k == target_k) {
            rec.success = true;
            break;
        }
    }
    return rec;
}

inline TrajectoryRecord run_trajectory(const NetworkConfig& cfg, int target_k,
                                       const Policy& policy, int max_rounds,
                                       std::uint64_t master_seed,
                                       std::uint64_t trajectory_index = 0) {
    Evolver evolver(cfg);
    return run_trajectory(evolver, target_k, policy, max_rounds, master_seed, trajectory_index);
}

// Independent trajectories with per-trajectory streams derived from
// (master_seed, index). Records reach the sink in index order whatever the
// thread count, so output and summary are independent of execution order.
inline RunSummary run_ensemble(const NetworkConfig& cfg, int target_k, const Policy& policy,
                               int max_rounds, std::uint64_t trajectories,
                               std::uint64_t master_seed, const RecordSink& sink,
                               int n_threads = 1) {
    if (trajectories < 1) throw std::invalid_argument("run_ensemble: need trajectories >= 1");
    if (n_threads < 1) throw std::invalid_argument("run_ensemble: need n_threads >= 1");

    Evolver evolver(cfg);
    std::vector<TrajectoryRecord> records(trajectories);
    const auto worker = [&](std::uint64_t first, std::uint64_t step) {
        for (std::uint64_t i = first; i < trajectories; i += step) {
            records[i] = run_trajectory(evolver, target_k, policy, max_rounds, master_seed, i);
        }
    };
    if (n_threads == 1) {
        worker(0, 1);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(n_threads);
        for (int t = 0; t < n_threads; ++t) pool.emplace_back(worker, t, n_threads);
        for (std::thread& th : pool) th.join();
    }

    RunSummary summary;
    summary.trajectories = trajectories;
    summary.master_seed = master_seed;
    summary.per_round_first_success.assign(max_rounds, 0);
    std::uint64_t successes = 0, rounds_total = 0;
    for (const TrajectoryRecord& rec : records) {
        if (sink) {
            try {
                sink(rec);
            } catch (const SinkError&) {
                throw;
            } catch (const std::exception& e) {
                throw SinkError(std::string("record sink failed: ") + e.what());
            }
        }
        if (rec.success) {
            ++successes;
            rounds_total += rec.rounds_used;
            ++summary.per_round_first_success[rec.rounds_used - 1];
        }
    }
    summary.success_rate = static_cast<double>(successes) / static_cast<double>(trajectories);
    summary.mean_rounds_to_success =
        successes == 0 ? 0.0 : static_cast<double>(rounds_total) / static_cast<double>(successes);
    return summary;
}

}  // namespace spinrus
