// Exact unitary time evolution: every Hermitian block is diagonalized once
// and applied as a phase rotation in its eigenbasis. Blocks are small by
// construction, so eigendecomposition is both exact (to machine precision)
// and cheap; the RUS loop reuses blocks through a keyed cache.

#pragma once

#include <Eigen/Dense>

#include <complex>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "spinrus/hamiltonian.hpp"
#include "spinrus/states.hpp"

namespace spinrus {

struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Propagator {
    Eigen::VectorXd eigenvalues;   // ascending
    Eigen::MatrixXd eigenvectors;  // orthonormal columns, first nonzero entry positive
    std::string sector;
    std::vector<std::string> basis;

    int dim() const { return static_cast<int>(eigenvalues.size()); }

    // exp(-i H t) applied in place.
    void rotate(std::vector<Complex>& amps, double t) const {
        const int d = dim();
        if (static_cast<int>(amps.size()) != d) {
            throw std::invalid_argument("Propagator: basis mismatch (" +
                                        std::to_string(amps.size()) + " vs " +
                                        std::to_string(d) + ")");
        }
        Eigen::VectorXcd v = Eigen::Map<const Eigen::VectorXcd>(amps.data(), d);
        Eigen::VectorXcd modes = eigenvectors.transpose() * v;
        for (int i = 0; i < d; ++i) {
            modes(i) *= std::polar(1.0, -eigenvalues(i) * t);
        }
        v = eigenvectors * modes;
        Eigen::Map<Eigen::VectorXcd>(amps.data(), d) = v;
    }
};

inline Propagator diagonalize(const BlockMatrix& block) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(block.matrix);
    if (solver.info() != Eigen::Success) {
        throw NumericalError("diagonalize: eigensolver failed on sector " + block.sector);
    }
    Propagator p;
    p.eigenvalues = solver.eigenvalues();
    p.eigenvectors = solver.eigenvectors();
    p.sector = block.sector;
    p.basis = block.basis;
    // Deterministic sign: first component of visible magnitude is positive.
    const int d = p.dim();
    for (int col = 0; col < d; ++col) {
        const double scale = p.eigenvectors.col(col).cwiseAbs().maxCoeff();
        for (int row = 0; row < d; ++row) {
            const double v = p.eigenvectors(row, col);
            if (std::abs(v) > 1e-12 * scale) {
                if (v < 0.0) p.eigenvectors.col(col) *= -1.0;
                break;
            }
        }
    }
    return p;
}

inline CollectiveState propagate(const Propagator& p, const CollectiveState& state, double t) {
    if (p.dim() != state.dim()) {
        throw std::invalid_argument("propagate: collective state does not match block basis");
    }
    CollectiveState out = state;
    p.rotate(out.amplitudes, t);
    return out;
}

// --- magnetization sectors -------------------------------------------------

// Hybrid-basis indices (ascending) whose basis vectors carry the given twice
// total Sz.
inline std::vector<int> hybrid_sector_indices(int n, int m, int twice_sz) {
    HybridState layout;
    layout.n_supplementary = n;
    layout.m_target = m;
    std::vector<int> idx;
    for (std::uint32_t z = 0; z < (1u << n); ++z) {
        for (int k = 0; k <= m; ++k) {
            if (layout.twice_sz(z, k) == twice_sz) idx.push_back(layout.index_of(z, k));
        }
    }
    return idx;
}

// Full-basis indices with the given number of down spins.
inline std::vector<int> full_sector_indices(int n_sites, int n_down) {
    std::vector<int> idx;
    for (std::uint32_t x = 0; x < (1u << n_sites); ++x) {
        if (std::popcount(x) == n_down) idx.push_back(static_cast<int>(x));
    }
    return idx;
}

// Dense restriction of a sparse operator to a sector's index list. Offsector
// couplings are forbidden; hitting one means the operator and sector disagree.
inline BlockMatrix restrict_to_sector(const SparseOperator& op, const std::vector<int>& indices,
                                      std::string sector_label) {
    std::map<int, int> pos;
    for (std::size_t i = 0; i < indices.size(); ++i) pos[indices[i]] = static_cast<int>(i);
    const int d = static_cast<int>(indices.size());
    BlockMatrix blk;
    blk.sector = std::move(sector_label);
    blk.matrix = Eigen::MatrixXd::Zero(d, d);
    blk.basis.resize(d);
    for (const SparseEntry& e : op.entries) {
        const auto r = pos.find(e.row), c = pos.find(e.col);
        if (c == pos.end()) continue;
        if (r == pos.end()) {
            throw std::logic_error("restrict_to_sector: operator couples out of the sector");
        }
        blk.matrix(r->second, c->second) += e.value;
    }
    return blk;
}

// --- propagation of hybrid and full states ----------------------------------

namespace detail {

template <typename IndexFn>
void propagate_by_sectors(std::vector<Complex>& amps, const SparseOperator& op,
                          const std::vector<int>& sector_keys, IndexFn&& indices_of, double t) {
    for (int key : sector_keys) {
        const std::vector<int> idx = indices_of(key);
        if (idx.empty()) continue;
        bool occupied = false;
        for (int i : idx) {
            if (amps[i] != Complex(0.0)) {
                occupied = true;
                break;
            }
        }
        if (!occupied) continue;
        const Propagator p =
            diagonalize(restrict_to_sector(op, idx, "sector " + std::to_string(key)));
        std::vector<Complex> local(idx.size());
        for (std::size_t i = 0; i < idx.size(); ++i) local[i] = amps[idx[i]];
        p.rotate(local, t);
        for (std::size_t i = 0; i < idx.size(); ++i) amps[idx[i]] = local[i];
    }
}

}  // namespace detail

inline HybridState propagate_hybrid(const SparseOperator& op, const HybridState& state,
                                    double t) {
    if (state.n_supplementary > kHybridMaxSupplementary) {
        throw std::length_error("propagate_hybrid: N capped at " +
                                std::to_string(kHybridMaxSupplementary));
    }
    if (op.dim != state.dim()) {
        throw std::invalid_argument("propagate_hybrid: operator/state dimension mismatch");
    }
    const int n = state.n_supplementary, m = state.m_target;
    HybridState out = state;
    std::vector<int> keys;
    for (int tz = -(n + m); tz <= n + m; tz += 2) keys.push_back(tz);
    detail::propagate_by_sectors(
        out.amplitudes, op, keys, [&](int tz) { return hybrid_sector_indices(n, m, tz); }, t);
    return out;
}

inline FullState propagate_full(const SparseOperator& op, const FullState& state, double t) {
    if (op.dim != state.dim()) {
        throw std::invalid_argument("propagate_full: operator/state dimension mismatch");
    }
    const int sites = state.n_sites();
    FullState out = state;
    std::vector<int> keys;
    for (int d = 0; d <= sites; ++d) keys.push_back(d);
    detail::propagate_by_sectors(
        out.amplitudes, op, keys, [&](int d) { return full_sector_indices(sites, d); }, t);
    return out;
}

// --- cached evolution for the RUS loop --------------------------------------

// Thread-safe memo of diagonalized blocks for one network configuration;
// each key is built at most once.
class Evolver {
public:
    explicit Evolver(NetworkConfig cfg) : cfg_(std::move(cfg)) { cfg_.validate(); }

    const NetworkConfig& config() const { return cfg_; }

    std::shared_ptr<const Propagator> collective(HalfInt s1, HalfInt s2, HalfInt total_sz) {
        return memo({kCollective, s1.twice(), s2.twice(), total_sz.twice()}, [&] {
            return diagonalize(collective_block(cfg_, s1, s2, total_sz));
        });
    }

    std::shared_ptr<const Propagator> hybrid_sector(int twice_sz) {
        return memo({kHybrid, twice_sz, 0, 0}, [&] {
            const auto idx =
                hybrid_sector_indices(cfg_.n_supplementary, cfg_.m_target, twice_sz);
            return diagonalize(
                restrict_to_sector(hybrid_op(), idx, "hybrid Sz(x2)=" + std::to_string(twice_sz)));
        });
    }

    CollectiveState propagate(const CollectiveState& state, double t) {
        const auto p = collective(state.s1, state.s2, state.total_sz);
        return spinrus::propagate(*p, state, t);
    }

    HybridState propagate(const HybridState& state, double t) {
        const int n = state.n_supplementary, m = state.m_target;
        HybridState out = state;
        for (int tz = -(n + m); tz <= n + m; tz += 2) {
            const std::vector<int> idx = hybrid_sector_indices(n, m, tz);
            if (idx.empty()) continue;
            bool occupied = false;
            for (int i : idx) {
                if (out.amplitudes[i] != Complex(0.0)) {
                    occupied = true;
                    break;
                }
            }
            if (!occupied) continue;
            const auto p = hybrid_sector(tz);
            std::vector<Complex> local(idx.size());
            for (std::size_t i = 0; i < idx.size(); ++i) local[i] = out.amplitudes[idx[i]];
            p->rotate(local, t);
            for (std::size_t i = 0; i < idx.size(); ++i) out.amplitudes[idx[i]] = local[i];
        }
        return out;
    }

private:
    enum KeyKind : int { kCollective = 0, kHybrid = 1 };
    using Key = std::tuple<int, int, int, int>;

    template <typename Builder>
    std::shared_ptr<const Propagator> memo(const Key& key, Builder&& build) {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = cache_.find(key);
        if (it != cache_.end()) return it->second;
        auto p = std::make_shared<const Propagator>(build());
        cache_.emplace(key, p);
        return p;
    }

    const SparseOperator& hybrid_op() {
        // callers already hold mu_
        if (hybrid_op_.dim == 0) hybrid_op_ = hybrid_hamiltonian(cfg_);
        return hybrid_op_;
    }

    NetworkConfig cfg_;
    std::mutex mu_;
    std::map<Key, std::shared_ptr<const Propagator>> cache_;
    SparseOperator hybrid_op_;
};

}  // namespace spinrus
