// Hamiltonian builders in each representation. Everything is block-diagonal
// in total Sz; collective and star blocks come out dense, the hybrid and
// full-space operators as sparse coordinate lists.

#pragma once

#include <Eigen/Dense>

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "spinrus/angular.hpp"
#include "spinrus/half_int.hpp"
#include "spinrus/network.hpp"
#include "spinrus/states.hpp"

namespace spinrus {

struct BlockMatrix {
    std::string sector;
    Eigen::MatrixXd matrix;  // real symmetric
    std::vector<std::string> basis;
};

struct SparseEntry {
    int row;
    int col;
    double value;
};

struct SparseOperator {
    int dim = 0;
    std::string basis_kind;
    std::vector<SparseEntry> entries;

    void apply(const std::vector<Complex>& in, std::vector<Complex>& out) const {
        out.assign(dim, Complex(0.0));
        for (const SparseEntry& e : entries) out[e.row] += e.value * in[e.col];
    }
};

// H = 2J(S1x S2x + S1y S2y + lambda S1z S2z) + B(S1z + S2z) + b0 S1z restricted
// to one total-Sz sector: tridiagonal in m1.
inline BlockMatrix collective_block(const NetworkConfig& cfg, HalfInt s1, HalfInt s2,
                                    HalfInt total_sz) {
    cfg.validate();
    if (cfg.topology != Topology::bipartite) {
        throw std::invalid_argument("collective_block: bipartite topology required");
    }
    if (std::abs(total_sz.twice()) > s1.twice() + s2.twice()) {
        throw std::invalid_argument("collective_block: |total_sz| > s1 + s2");
    }
    CollectiveState layout;  // reuse the index arithmetic
    layout.s1 = s1;
    layout.s2 = s2;
    layout.total_sz = total_sz;

    const int d = layout.dim();
    const double j = cfg.coupling, lam = cfg.anisotropy;
    const double b = cfg.field_uniform, b0 = cfg.field_center_extra;

    BlockMatrix blk;
    blk.sector = "Sz=" + total_sz.str();
    blk.matrix = Eigen::MatrixXd::Zero(d, d);
    for (int i = 0; i < d; ++i) {
        const HalfInt m1 = layout.m1_at(i);
        const HalfInt m2 = total_sz - m1;
        blk.basis.push_back("|" + s1.str() + "," + m1.str() + ">|" + s2.str() + "," + m2.str() +
                            ">");
        blk.matrix(i, i) = 2.0 * j * lam * m1.value() * m2.value() +
                           b * (m1.value() + m2.value()) + b0 * m1.value();
        if (i + 1 < d) {
            // <m1+1, m2-1| J(S1+ S2- + S1- S2+) |m1, m2>
            const double raise1 = lowering_element(s1, m1 + HalfInt(1));
            const double lower2 = lowering_element(s2, m2);
            blk.matrix(i + 1, i) = j * raise1 * lower2;
            blk.matrix(i, i + 1) = blk.matrix(i + 1, i);
        }
    }
    return blk;
}

// Index of |c> |M/2, m> with k = m + M/2 in the star-network basis.
inline int star_index(int center_bit, int k, int m_target) {
    return center_bit * (m_target + 1) + k;
}

// Star network on the 2(M+1)-dimensional basis {|c> |M/2, m>}: flip-flop
// coupling J * sqrt((M/2+m)(M/2-m+1)) between |1>|M/2,m> and |0>|M/2,m-1>.
inline BlockMatrix star_block(const NetworkConfig& cfg) {
    cfg.validate();
    if (cfg.topology != Topology::star) {
        throw std::invalid_argument("star_block: star topology required");
    }
    const int m = cfg.m_target;
    const int d = 2 * (m + 1);
    const HalfInt s2 = HalfInt::from_twice(m);
    const double j = cfg.coupling, lam = cfg.anisotropy;
    const double b = cfg.field_uniform, b0 = cfg.field_center_extra;

    BlockMatrix blk;
    blk.sector = "star: all Sz sectors";
    blk.matrix = Eigen::MatrixXd::Zero(d, d);
    blk.basis.resize(d);
    for (int c = 0; c <= 1; ++c) {
        const double center_sign = c == 0 ? 1.0 : -1.0;  // sigma_z of the center
        for (int k = 0; k <= m; ++k) {
            const HalfInt m2 = HalfInt::from_twice(2 * k - m);
            const int idx = star_index(c, k, m);
            blk.basis[idx] = "|" + std::to_string(c) + ">|" + s2.str() + "," + m2.str() + ">";
            blk.matrix(idx, idx) = j * lam * center_sign * m2.value() +
                                   0.5 * (b + b0) * center_sign + b * m2.value();
            if (c == 1 && k >= 1) {
                // J (sc+ S2- + sc- S2+); <0, m2-1| sc+ S2- |1, m2>
                const int to = star_index(0, k - 1, m);
                blk.matrix(to, idx) = j * lowering_element(s2, m2);
                blk.matrix(idx, to) = blk.matrix(to, idx);
            }
        }
    }
    return blk;
}

inline constexpr int kHybridMaxSupplementary = 12;

// Operator on the hybrid basis |pattern> |M/2, k - M/2>:
//   sum_i J(sigma_i+ S2- + sigma_i- S2+) + J lambda sigma_i^z S2z
//   + B (S1z + S2z) + b0 S1z.
inline SparseOperator hybrid_hamiltonian(const NetworkConfig& cfg) {
    cfg.validate();
    if (cfg.topology != Topology::bipartite) {
        throw std::invalid_argument("hybrid_hamiltonian: bipartite topology required");
    }
    const int n = cfg.n_supplementary, m = cfg.m_target;
    if (n > kHybridMaxSupplementary) {
        throw std::length_error("hybrid_hamiltonian: N capped at " +
                                std::to_string(kHybridMaxSupplementary));
    }
    const HalfInt s2 = HalfInt::from_twice(m);
    const double j = cfg.coupling, lam = cfg.anisotropy;
    const double b = cfg.field_uniform, b0 = cfg.field_center_extra;

    HybridState layout;
    layout.n_supplementary = n;
    layout.m_target = m;

    SparseOperator op;
    op.dim = (1 << n) * (m + 1);
    op.basis_kind = "hybrid N=" + std::to_string(n) + " M=" + std::to_string(m);
    for (std::uint32_t z = 0; z < (1u << n); ++z) {
        const int w = up_count(z, n);
        const double s1z = w - 0.5 * n;
        for (int k = 0; k <= m; ++k) {
            const HalfInt m2 = HalfInt::from_twice(2 * k - m);
            const int from = layout.index_of(z, k);
            const double sum_sigma_z = 2.0 * s1z;
            const double diag = j * lam * sum_sigma_z * m2.value() + b * (s1z + m2.value()) +
                                b0 * s1z;
            if (diag != 0.0) op.entries.push_back({from, from, diag});
            for (int site = 0; site < n; ++site) {
                const std::uint32_t bit = 1u << site;
                if ((z & bit) != 0 && k >= 1) {
                    // sigma_i+ S2-: flips site i up, lowers the target index
                    const int to = layout.index_of(z & ~bit, k - 1);
                    op.entries.push_back({to, from, j * lowering_element(s2, m2)});
                } else if ((z & bit) == 0 && k < m) {
                    // sigma_i- S2+
                    const int to = layout.index_of(z | bit, k + 1);
                    op.entries.push_back({to, from, j * lowering_element(s2, m2 + HalfInt(1))});
                }
            }
        }
    }
    return op;
}

// Literal pairwise XXZ sum over the computational basis; oracle use only.
// For the bipartite network every supplementary site couples to every target
// site with strength J/2 per Pauli term; for the star the center couples to
// each outer spin.
inline SparseOperator full_hamiltonian(const NetworkConfig& cfg) {
    cfg.validate();
    const int n = cfg.n_supplementary, m = cfg.m_target;
    detail::check_full_cap(n + m);
    const int sites = n + m;
    const double j = cfg.coupling, lam = cfg.anisotropy;
    const double b = cfg.field_uniform, b0 = cfg.field_center_extra;

    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < n; ++i) {
        for (int t = 0; t < m; ++t) pairs.emplace_back(i, n + t);
    }

    SparseOperator op;
    op.dim = 1 << sites;
    op.basis_kind = "full sites=" + std::to_string(sites);
    for (std::uint32_t x = 0; x < (1u << sites); ++x) {
        double diag = 0.0;
        for (int site = 0; site < sites; ++site) {
            const double sz = (x >> site) & 1u ? -1.0 : 1.0;  // sigma_z eigenvalue
            diag += 0.5 * b * sz;
            if (site < n) diag += 0.5 * b0 * sz;
        }
        for (const auto& [p, q] : pairs) {
            const double zp = (x >> p) & 1u ? -1.0 : 1.0;
            const double zq = (x >> q) & 1u ? -1.0 : 1.0;
            diag += 0.5 * j * lam * zp * zq;
            if (zp * zq < 0.0) {
                // (J/2)(sx sx + sy sy) exchanges the antiparallel pair
                const std::uint32_t flipped = x ^ (1u << p) ^ (1u << q);
                op.entries.push_back({static_cast<int>(flipped), static_cast<int>(x), j});
            }
        }
        if (diag != 0.0) {
            op.entries.push_back({static_cast<int>(x), static_cast<int>(x), diag});
        }
    }
    return op;
}

}  // namespace spinrus
