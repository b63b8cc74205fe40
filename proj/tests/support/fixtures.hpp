#pragma once

// Shared test fixtures: well-known graphs, random datasets, RAII temp dirs.

#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "dualprism/dataset_io.hpp"
#include "dualprism/graph.hpp"
#include "dualprism/properties.hpp"

namespace fixtures {

/// 8-node toy graph used across the spectral sensitivity tests.
inline dualprism::Graph toy_graph() {
    return dualprism::Graph(8, {{0, 1},
                                {0, 3},
                                {0, 4},
                                {1, 2},
                                {2, 3},
                                {3, 4},
                                {4, 5},
                                {4, 7},
                                {5, 6},
                                {6, 7}});
}

inline dualprism::Graph complete_graph(int n) {
    std::vector<dualprism::Edge> edges;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) edges.emplace_back(i, j);
    return dualprism::Graph(n, std::move(edges));
}

inline dualprism::Graph cycle_graph(int n) {
    std::vector<dualprism::Edge> edges;
    for (int i = 0; i < n; ++i) edges.push_back(dualprism::make_edge(i, (i + 1) % n));
    return dualprism::Graph(n, std::move(edges));
}

inline dualprism::Graph path_graph(int n) {
    std::vector<dualprism::Edge> edges;
    for (int i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
    return dualprism::Graph(n, std::move(edges));
}

/// Hub 0 plus n-1 leaves.
inline dualprism::Graph star_graph(int n) {
    std::vector<dualprism::Edge> edges;
    for (int i = 1; i < n; ++i) edges.emplace_back(0, i);
    return dualprism::Graph(n, std::move(edges));
}

inline dualprism::Dataset random_dataset(const std::string& name, int graph_count,
                                         std::uint64_t seed, bool labeled) {
    dualprism::RandomStream rng(seed);
    dualprism::Dataset ds;
    ds.name = name;
    for (int i = 0; i < graph_count; ++i) {
        const int n = 1 + static_cast<int>(rng.next_below(13));
        const double p = rng.uniform01();
        dualprism::Graph g =
            dualprism::random_graph(n, p, rng.next_u64());
        std::optional<int> label;
        if (labeled) label = static_cast<int>(rng.next_below(3));
        ds.graphs.emplace_back(n, g.edges(), label);
    }
    ds.class_count = dualprism::detail::class_count_from(ds.graphs);
    return ds;
}

/// Deterministic connected Erdos-Renyi sample: walks seeds until `count`
/// connected graphs have been collected.
inline std::vector<dualprism::Graph> connected_er_graphs(int count, int n, double p,
                                                         std::uint64_t seed0) {
    std::vector<dualprism::Graph> out;
    std::uint64_t seed = seed0;
    while (static_cast<int>(out.size()) < count) {
        dualprism::Graph g = dualprism::random_graph(n, p, seed++);
        if (dualprism::component_count(g) == 1) out.push_back(std::move(g));
    }
    return out;
}

class TempDir {
public:
    explicit TempDir(const std::string& tag) {
        std::random_device rd;
        path_ = std::filesystem::temp_directory_path() /
                ("dualprism_" + tag + "_" + std::to_string(rd()) + "_" +
                 std::to_string(rd()));
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    const std::filesystem::path& path() const { return path_; }
    std::filesystem::path operator/(const std::string& sub) const {
        return path_ / sub;
    }

private:
    std::filesystem::path path_;
};

inline std::string read_file(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(in),
                       std::istreambuf_iterator<char>());
}

} // namespace fixtures
