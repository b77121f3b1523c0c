// Spin-network topology and Hamiltonian parameters.

#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace spinrus {

enum class Topology { bipartite, star };

inline std::string to_string(Topology t) {
    return t == Topology::bipartite ? "bipartite" : "star";
}

inline Topology topology_from_string(const std::string& s) {
    if (s == "bipartite") return Topology::bipartite;
    if (s == "star") return Topology::star;
    throw std::invalid_argument("unknown topology '" + s + "'");
}

// XXZ couplings on a complete bipartite network (every supplementary spin to
// every target spin) or a star (single center spin to M outer spins, N = 1).
// field_uniform acts on every spin; field_center_extra only on the
// supplementary/center register, and is zero in the plain uniform-field model.
struct NetworkConfig {
    Topology topology = Topology::bipartite;
    int n_supplementary = 1;
    int m_target = 1;
    double coupling = 1.0;            // J
    double anisotropy = 1.0;          // lambda; 0 = XX, 1 = Heisenberg
    double field_uniform = 0.0;       // B
    double field_center_extra = 0.0;  // b0

    void validate() const {
        if (n_supplementary < 1 || m_target < 1) {
            throw std::invalid_argument("NetworkConfig: need N >= 1 and M >= 1");
        }
        if (topology == Topology::star && n_supplementary != 1) {
            throw std::invalid_argument("NetworkConfig: star topology fixes N = 1");
        }
    }

    // Soft diagnostics only; none of these invalidate the dynamics.
    std::vector<std::string> warnings() const {
        std::vector<std::string> w;
        if (topology == Topology::bipartite && 2 * n_supplementary < m_target) {
            w.push_back("n_supplementary < m_target/2; all dynamics remain well-defined");
        }
        return w;
    }

    friend bool operator==(const NetworkConfig&, const NetworkConfig&) = default;
};

}  // namespace spinrus
