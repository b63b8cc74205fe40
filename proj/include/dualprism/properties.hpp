#pragma once

#include <cmath>
#include <optional>
#include <vector>

#include "dualprism/errors.hpp"
#include "dualprism/graph.hpp"
#include "dualprism/spectral.hpp"

namespace dualprism {

/// Graph-level structural summary used to judge augmentation fidelity.
///
/// diameter and radius are nullopt on disconnected graphs (the infinite
/// marker). ASPL stays numeric: it averages shortest-path lengths over
/// within-component pairs only, and is 0 when no such pair exists.
/// periphery_size counts nodes whose eccentricity equals the diameter and is
/// reported as 0 when the graph is disconnected.
struct PropertyProfile {
    bool connected = false;
    int components = 0;
    std::optional<int> diameter;
    std::optional<int> radius;
    int periphery_size = 0;
    double aspl = 0.0;
    double fiedler = 0.0;
};

/// How connectivity moved between two profiles.
enum class ConnectivityChange { Preserved, Broken, Restored };

/// Field-wise difference of two profiles (after minus before). d_diameter
/// and d_radius are nullopt when exactly one side is infinite; two infinite
/// sides difference to zero.
struct PropertyDelta {
    ConnectivityChange connectivity = ConnectivityChange::Preserved;
    std::optional<int> d_diameter;
    std::optional<int> d_radius;
    int d_periphery = 0;
    double d_aspl = 0.0;
    double d_fiedler = 0.0;
    int d_components = 0;
};

namespace detail {

/// BFS distances from src; -1 marks unreachable nodes.
inline std::vector<int> bfs_distances(const std::vector<std::vector<int>>& adj,
                                      int src) {
    std::vector<int> dist(adj.size(), -1);
    std::vector<int> queue;
    queue.reserve(adj.size());
    dist[static_cast<std::size_t>(src)] = 0;
    queue.push_back(src);
    for (std::size_t head = 0; head < queue.size(); ++head) {
        const int u = queue[head];
        for (int v : adj[static_cast<std::size_t>(u)]) {
            if (dist[static_cast<std::size_t>(v)] < 0) {
                dist[static_cast<std::size_t>(v)] = dist[static_cast<std::size_t>(u)] + 1;
                queue.push_back(v);
            }
        }
    }
    return dist;
}

} // namespace detail

/// Connected component count via BFS sweeps. Exact; serves as the
/// combinatorial cross-check for zero_eigenvalue_multiplicity.
inline int component_count(const Graph& g) {
    const auto adj = g.adjacency_list();
    std::vector<char> seen(static_cast<std::size_t>(g.node_count()), 0);
    int components = 0;
    for (int s = 0; s < g.node_count(); ++s) {
        if (seen[static_cast<std::size_t>(s)]) continue;
        ++components;
        const auto dist = detail::bfs_distances(adj, s);
        for (int v = 0; v < g.node_count(); ++v)
            if (dist[static_cast<std::size_t>(v)] >= 0)
                seen[static_cast<std::size_t>(v)] = 1;
    }
    return components;
}

/// Second-smallest Laplacian eigenvalue (algebraic connectivity).
inline double fiedler_value(const Spectrum& s) {
    if (s.n < 2)
        throw DimensionTooSmall("fiedler_value: need at least 2 nodes");
    return s.eigenvalues[1];
}

/// All-pairs-BFS profile. The spectrum parameter is optional; when absent
/// the Laplacian is decomposed internally just for the Fiedler value.
inline PropertyProfile property_profile(const Graph& g,
                                        const Spectrum* spectrum = nullptr) {
    const int n = g.node_count();
    if (n == 0) throw DegenerateGraph("property_profile: 0-node graph");

    const auto adj = g.adjacency_list();
    std::vector<int> ecc(static_cast<std::size_t>(n), 0);
    bool connected = true;
    long long path_sum = 0;
    long long pair_count = 0;

    for (int s = 0; s < n; ++s) {
        const auto dist = detail::bfs_distances(adj, s);
        int emax = 0;
        for (int v = 0; v < n; ++v) {
            const int d = dist[static_cast<std::size_t>(v)];
            if (d < 0) {
                connected = false;
            } else {
                if (d > emax) emax = d;
                if (v > s) { // unordered pairs once
                    path_sum += d;
                    ++pair_count;
                }
            }
        }
        ecc[static_cast<std::size_t>(s)] = emax;
    }

    PropertyProfile p;
    p.connected = connected;
    p.components = component_count(g);
    p.aspl = pair_count > 0 ? static_cast<double>(path_sum) / static_cast<double>(pair_count)
                            : 0.0;
    if (connected) {
        int diam = 0, rad = ecc[0];
        for (int e : ecc) {
            if (e > diam) diam = e;
            if (e < rad) rad = e;
        }
        p.diameter = diam;
        p.radius = rad;
        for (int e : ecc)
            if (e == diam) ++p.periphery_size;
    }

    if (n >= 2) {
        if (spectrum != nullptr) {
            p.fiedler = fiedler_value(*spectrum);
        } else {
            p.fiedler = fiedler_value(eigendecompose(laplacian(g)));
        }
    }
    return p;
}

struct DiameterBounds {
    double lower = 0.0;
    double upper = 0.0;
};

/// Spectral sandwich for the diameter of a connected graph:
///   4 / (n * lambda1)  <=  d  <=  2 * ceil(sqrt(2m / lambda1) * log2(n))
/// with n the node count and m the maximum degree.
inline DiameterBounds diameter_bounds(int n, int m, double lambda1,
                                      double tol = 1e-6) {
    if (n < 2) throw std::invalid_argument("diameter_bounds: need n >= 2");
    if (m < 1) throw std::invalid_argument("diameter_bounds: need max degree >= 1");
    if (lambda1 <= tol)
        throw DisconnectedGraph("diameter_bounds: Fiedler value is zero");
    DiameterBounds b;
    b.lower = 4.0 / (static_cast<double>(n) * lambda1);
    b.upper = 2.0 * std::ceil(std::sqrt(2.0 * static_cast<double>(m) / lambda1) *
                              std::log2(static_cast<double>(n)));
    return b;
}

inline PropertyDelta property_delta(const PropertyProfile& before,
                                    const PropertyProfile& after) {
    PropertyDelta d;
    if (before.connected == after.connected)
        d.connectivity = ConnectivityChange::Preserved;
    else if (before.connected)
        d.connectivity = ConnectivityChange::Broken;
    else
        d.connectivity = ConnectivityChange::Restored;

    auto diff = [](const std::optional<int>& b,
                   const std::optional<int>& a) -> std::optional<int> {
        if (b.has_value() && a.has_value()) return *a - *b;
        if (!b.has_value() && !a.has_value()) return 0;
        return std::nullopt; // one side infinite
    };
    d.d_diameter = diff(before.diameter, after.diameter);
    d.d_radius = diff(before.radius, after.radius);
    d.d_periphery = after.periphery_size - before.periphery_size;
    d.d_aspl = after.aspl - before.aspl;
    d.d_fiedler = after.fiedler - before.fiedler;
    d.d_components = after.components - before.components;
    return d;
}

} // namespace dualprism
