#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "dualprism/errors.hpp"

namespace dualprism {

/// Unordered node pair, always stored with first < second.
using Edge = std::pair<int, int>;

inline Edge make_edge(int i, int j) {
    return i < j ? Edge{i, j} : Edge{j, i};
}

/// Undirected simple graph: no self-loops, no duplicate edges, nodes 0..n-1.
///
/// The optional label and the opaque feature payload ride along untouched;
/// nothing in this library ever interprets the features.
class Graph {
public:
    Graph() = default;

    Graph(int n, std::vector<Edge> edges,
          std::optional<int> label = std::nullopt,
          std::optional<std::vector<std::uint8_t>> features = std::nullopt)
        : n_(n), edges_(std::move(edges)), label_(label),
          features_(std::move(features)) {
        if (n_ < 0) throw std::invalid_argument("Graph: negative node count");
        for (auto& e : edges_) {
            if (e.first == e.second)
                throw std::invalid_argument("Graph: self-loop at node " +
                                            std::to_string(e.first));
            if (e.first > e.second) std::swap(e.first, e.second);
            if (e.first < 0 || e.second >= n_)
                throw std::invalid_argument("Graph: edge endpoint out of range");
        }
        std::sort(edges_.begin(), edges_.end());
        edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
    }

    int node_count() const { return n_; }
    const std::vector<Edge>& edges() const { return edges_; }
    int edge_count() const { return static_cast<int>(edges_.size()); }

    const std::optional<int>& label() const { return label_; }
    const std::optional<std::vector<std::uint8_t>>& features() const {
        return features_;
    }

    bool has_edge(int i, int j) const {
        return std::binary_search(edges_.begin(), edges_.end(), make_edge(i, j));
    }

    /// Neighbor lists, built on demand.
    std::vector<std::vector<int>> adjacency_list() const {
        std::vector<std::vector<int>> adj(static_cast<std::size_t>(n_));
        for (const auto& [i, j] : edges_) {
            adj[static_cast<std::size_t>(i)].push_back(j);
            adj[static_cast<std::size_t>(j)].push_back(i);
        }
        return adj;
    }

    /// Copy of this graph with one edge added (or removed, if add is false).
    /// Label and features are carried over.
    Graph with_edge_flipped(Edge e, bool add) const {
        e = make_edge(e.first, e.second);
        std::vector<Edge> out = edges_;
        if (add) {
            out.push_back(e);
        } else {
            out.erase(std::remove(out.begin(), out.end(), e), out.end());
        }
        return Graph(n_, std::move(out), label_, features_);
    }

    friend bool operator==(const Graph& a, const Graph& b) {
        return a.n_ == b.n_ && a.edges_ == b.edges_ && a.label_ == b.label_ &&
               a.features_ == b.features_;
    }

private:
    int n_ = 0;
    std::vector<Edge> edges_;
    std::optional<int> label_;
    std::optional<std::vector<std::uint8_t>> features_;
};

/// Dense real symmetric matrix. set() writes both mirror entries, so the
/// storage is symmetric by construction, never by trust.
class SymmetricMatrix {
public:
    SymmetricMatrix() = default;

    explicit SymmetricMatrix(int n)
        : n_(n), a_(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0.0) {
        if (n < 0) throw std::invalid_argument("SymmetricMatrix: negative dimension");
    }

    int dim() const { return n_; }

    double operator()(int i, int j) const {
        return a_[static_cast<std::size_t>(i) * n_ + j];
    }

    void set(int i, int j, double v) {
        a_[static_cast<std::size_t>(i) * n_ + j] = v;
        a_[static_cast<std::size_t>(j) * n_ + i] = v;
    }

    const std::vector<double>& data() const { return a_; }

private:
    int n_ = 0;
    std::vector<double> a_;
};

/// Degrees of all nodes, computed in integer arithmetic.
inline std::vector<int> degrees(const Graph& g) {
    std::vector<int> deg(static_cast<std::size_t>(g.node_count()), 0);
    for (const auto& [i, j] : g.edges()) {
        ++deg[static_cast<std::size_t>(i)];
        ++deg[static_cast<std::size_t>(j)];
    }
    return deg;
}

/// Binary adjacency matrix A: a_ij = 1 iff (i, j) is an edge.
inline SymmetricMatrix adjacency(const Graph& g) {
    SymmetricMatrix a(g.node_count());
    for (const auto& [i, j] : g.edges()) a.set(i, j, 1.0);
    return a;
}

/// Diagonal degree matrix D.
inline SymmetricMatrix degree_matrix(const Graph& g) {
    SymmetricMatrix d(g.node_count());
    const auto deg = degrees(g);
    for (int i = 0; i < g.node_count(); ++i)
        d.set(i, i, static_cast<double>(deg[static_cast<std::size_t>(i)]));
    return d;
}

/// Unnormalized Laplacian L = D - A. Degrees are counted as integers first,
/// so every row sums to exactly zero in floating point.
inline SymmetricMatrix laplacian(const Graph& g) {
    SymmetricMatrix l(g.node_count());
    const auto deg = degrees(g);
    for (int i = 0; i < g.node_count(); ++i)
        l.set(i, i, static_cast<double>(deg[static_cast<std::size_t>(i)]));
    for (const auto& [i, j] : g.edges()) l.set(i, j, -1.0);
    return l;
}

/// Maximum node degree; 0 for edgeless graphs.
inline int max_degree(const Graph& g) {
    const auto deg = degrees(g);
    return deg.empty() ? 0 : *std::max_element(deg.begin(), deg.end());
}

} // namespace dualprism
