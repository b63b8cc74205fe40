#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <vector>

#include "dualprism/errors.hpp"
#include "dualprism/graph.hpp"
#include "dualprism/rng.hpp"
#include "dualprism/spectral.hpp"

namespace dualprism {

enum class AugmentType { Noise, Mask };

/// Which end of the ascending spectrum is eligible for perturbation. High is
/// the method proper; Low exists for the contrast experiment in the sweep
/// command.
enum class FrequencyBand { Low, High };

/// Knobs for spectral augmentation.
///   freq_ratio  fraction of the spectrum eligible (N_a = floor(n * freq_ratio))
///   aug_prob    Bernoulli rate at which eligible eigenvalues are perturbed
///   sigma       noise standard deviation (Noise type only)
///   tau         binarization threshold on the reconstructed adjacency
struct AugmentConfig {
    AugmentType type = AugmentType::Noise;
    double freq_ratio = 0.5;
    double aug_prob = 0.5;
    double sigma = 1.0;
    double tau = 0.5;
    std::uint64_t seed = 0;
};

inline void validate(const AugmentConfig& cfg) {
    if (cfg.freq_ratio < 0.0 || cfg.freq_ratio > 1.0)
        throw std::invalid_argument("AugmentConfig: freq_ratio must be in [0, 1]");
    if (cfg.aug_prob < 0.0 || cfg.aug_prob > 1.0)
        throw std::invalid_argument("AugmentConfig: aug_prob must be in [0, 1]");
    if (cfg.sigma < 0.0)
        throw std::invalid_argument("AugmentConfig: sigma must be >= 0");
    if (cfg.tau <= 0.0)
        throw std::invalid_argument("AugmentConfig: tau must be > 0");
}

/// One original/augmented pair with its bookkeeping.
///
/// For same-size augmentations, edges_dropped = |E \ E'| and
/// edges_added = |E' \ E|. Node-dropping reindexes the surviving nodes, so
/// there edges_dropped is the number of removed incident edges and
/// edges_added is 0.
///
/// delta_l2 is the Euclidean distance between the original and perturbed
/// eigenvalue vectors. Spectral augmentation compares them slot by slot in
/// the original eigenbasis; baselines compare the ascending spectra of both
/// graphs, front-padding with zeros when node dropping shrank the graph
/// (equivalent to keeping the dropped nodes as isolated vertices).
struct AugmentationRecord {
    Graph original;
    Graph augmented;
    int edges_dropped = 0;
    int edges_added = 0;
    double delta_l2 = 0.0;
    /// Ascending spectrum of the original Laplacian.
    std::vector<double> eigenvalues_before;
    /// Spectral augmentation: the perturbed values, still in the original
    /// eigenbasis order (unsampled slots keep their exact bits). Baselines:
    /// ascending spectrum of the augmented graph.
    std::vector<double> eigenvalues_after;
    std::optional<SymmetricMatrix> pre_binarization_laplacian;
};

namespace detail {

inline int band_size(int n, double freq_ratio) {
    return static_cast<int>(std::floor(static_cast<double>(n) * freq_ratio));
}

inline void count_edge_changes(const Graph& original, const Graph& augmented,
                               int& dropped, int& added) {
    const auto& a = original.edges();
    const auto& b = augmented.edges();
    std::size_t i = 0, j = 0;
    dropped = added = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i] < b[j])) {
            ++dropped;
            ++i;
        } else if (i == a.size() || b[j] < a[i]) {
            ++added;
            ++j;
        } else {
            ++i;
            ++j;
        }
    }
}

inline double padded_eigenvalue_distance(const std::vector<double>& a,
                                         const std::vector<double>& b) {
    const auto& big = a.size() >= b.size() ? a : b;
    const auto& small = a.size() >= b.size() ? b : a;
    const std::size_t pad = big.size() - small.size();
    double sum = 0.0;
    for (std::size_t i = 0; i < big.size(); ++i) {
        const double s = i < pad ? 0.0 : small[i - pad];
        const double d = big[i] - s;
        sum += d * d;
    }
    return std::sqrt(sum);
}

} // namespace detail

/// Threshold a reconstructed weight matrix back into a simple graph:
/// edge (i, j) present iff w(i, j) > tau, with entries within 1e-12 of tau
/// treated as below it so round-off never decides an edge. The diagonal is
/// ignored, so the result has no self-loops. Node count is preserved.
inline Graph binarize(const SymmetricMatrix& w, double tau) {
    if (tau <= 0.0) throw std::invalid_argument("binarize: tau must be > 0");
    const int n = w.dim();
    std::vector<Edge> edges;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (w(i, j) - tau > 1e-12) edges.emplace_back(i, j);
    return Graph(n, std::move(edges));
}

/// Spectral augmentation: decompose the Laplacian, perturb the eligible end
/// of the spectrum, reconstruct, and binarize back into a graph. Label and
/// features are carried over unchanged.
///
/// The stream is consumed in a fixed order: first one Bernoulli(aug_prob)
/// draw per eligible eigenvalue (the i-th draw pairs with the i-th most
/// extreme eigenvalue of the band, so for the high band the first draw hits
/// the largest), then, for Noise only, one standard normal per eligible
/// eigenvalue. Sampled values update as max(0, lambda + sigma * eps) for
/// Noise and drop to 0 for Mask; unsampled eigenvalues keep their exact bits.
inline AugmentationRecord dp_augment(const Graph& g, const AugmentConfig& cfg,
                                     RandomStream& rng,
                                     FrequencyBand band = FrequencyBand::High,
                                     bool keep_pre_binarization = false) {
    validate(cfg);
    const int n = g.node_count();
    if (n == 0) throw DegenerateGraph("dp_augment: 0-node graph");

    const Spectrum s = eigendecompose(laplacian(g));
    const int n_aug = detail::band_size(n, cfg.freq_ratio);

    std::vector<char> mask(static_cast<std::size_t>(n_aug));
    for (int i = 0; i < n_aug; ++i)
        mask[static_cast<std::size_t>(i)] = rng.bernoulli(cfg.aug_prob) ? 1 : 0;

    std::vector<double> perturbed = s.eigenvalues;
    if (cfg.type == AugmentType::Noise) {
        std::vector<double> eps(static_cast<std::size_t>(n_aug));
        for (int i = 0; i < n_aug; ++i)
            eps[static_cast<std::size_t>(i)] = rng.standard_normal();
        for (int i = 0; i < n_aug; ++i) {
            if (!mask[static_cast<std::size_t>(i)]) continue;
            const int idx = band == FrequencyBand::High ? n - 1 - i : i;
            perturbed[static_cast<std::size_t>(idx)] =
                std::max(0.0, perturbed[static_cast<std::size_t>(idx)] +
                                  cfg.sigma * eps[static_cast<std::size_t>(i)]);
        }
    } else {
        for (int i = 0; i < n_aug; ++i) {
            if (!mask[static_cast<std::size_t>(i)]) continue;
            const int idx = band == FrequencyBand::High ? n - 1 - i : i;
            perturbed[static_cast<std::size_t>(idx)] = 0.0;
        }
    }

    SymmetricMatrix rebuilt = reconstruct(s, perturbed);
    // A^ = -L^ with the diagonal zeroed; binarize ignores the diagonal, so
    // only the off-diagonal sign flip matters here.
    SymmetricMatrix weights(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) weights.set(i, j, -rebuilt(i, j));

    Graph bare = binarize(weights, cfg.tau);
    Graph augmented(n, bare.edges(), g.label(), g.features());

    AugmentationRecord rec;
    rec.original = g;
    rec.augmented = std::move(augmented);
    detail::count_edge_changes(rec.original, rec.augmented, rec.edges_dropped,
                               rec.edges_added);
    double sum = 0.0;
    for (int i = 0; i < n; ++i) {
        const double d = s.eigenvalues[static_cast<std::size_t>(i)] -
                         perturbed[static_cast<std::size_t>(i)];
        sum += d * d;
    }
    rec.delta_l2 = std::sqrt(sum);
    rec.eigenvalues_before = s.eigenvalues;
    rec.eigenvalues_after = std::move(perturbed);
    if (keep_pre_binarization) rec.pre_binarization_laplacian = std::move(rebuilt);
    return rec;
}

/// Convenience overload seeding the stream from cfg.seed.
inline AugmentationRecord dp_augment(const Graph& g, const AugmentConfig& cfg) {
    RandomStream rng(cfg.seed);
    return dp_augment(g, cfg, rng);
}

/// Remove floor(ratio * |E|) edges, sampled uniformly without replacement.
inline AugmentationRecord drop_edge(const Graph& g, double ratio,
                                    RandomStream& rng) {
    if (ratio < 0.0 || ratio > 1.0)
        throw std::invalid_argument("drop_edge: ratio must be in [0, 1]");
    const auto& edges = g.edges();
    const std::size_t total = edges.size();
    const std::size_t k = static_cast<std::size_t>(
        std::floor(ratio * static_cast<double>(total)));

    // Partial Fisher-Yates over edge indices; the first k slots are dropped.
    std::vector<std::size_t> order(total);
    for (std::size_t i = 0; i < total; ++i) order[i] = i;
    for (std::size_t t = 0; t < k; ++t) {
        const std::size_t j = t + rng.next_below(total - t);
        std::swap(order[t], order[j]);
    }
    std::vector<char> dropped(total, 0);
    for (std::size_t t = 0; t < k; ++t) dropped[order[t]] = 1;

    std::vector<Edge> kept;
    kept.reserve(total - k);
    for (std::size_t i = 0; i < total; ++i)
        if (!dropped[i]) kept.push_back(edges[i]);

    AugmentationRecord rec;
    rec.original = g;
    rec.augmented = Graph(g.node_count(), std::move(kept), g.label(), g.features());
    rec.edges_dropped = static_cast<int>(k);
    rec.edges_added = 0;
    rec.eigenvalues_before = eigendecompose(laplacian(rec.original)).eigenvalues;
    rec.eigenvalues_after = eigendecompose(laplacian(rec.augmented)).eigenvalues;
    rec.delta_l2 = detail::padded_eigenvalue_distance(rec.eigenvalues_before,
                                                      rec.eigenvalues_after);
    return rec;
}

/// Remove floor(ratio * n) nodes, sampled uniformly without replacement,
/// along with their incident edges; survivors are reindexed densely in
/// their original relative order.
inline AugmentationRecord drop_node(const Graph& g, double ratio,
                                    RandomStream& rng) {
    if (ratio < 0.0 || ratio > 1.0)
        throw std::invalid_argument("drop_node: ratio must be in [0, 1]");
    const std::size_t n = static_cast<std::size_t>(g.node_count());
    const std::size_t k = static_cast<std::size_t>(
        std::floor(ratio * static_cast<double>(n)));

    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    for (std::size_t t = 0; t < k; ++t) {
        const std::size_t j = t + rng.next_below(n - t);
        std::swap(order[t], order[j]);
    }
    std::vector<char> removed(n, 0);
    for (std::size_t t = 0; t < k; ++t) removed[order[t]] = 1;

    std::vector<int> remap(n, -1);
    int next = 0;
    for (std::size_t i = 0; i < n; ++i)
        if (!removed[i]) remap[i] = next++;

    std::vector<Edge> kept;
    for (const auto& [i, j] : g.edges()) {
        const int a = remap[static_cast<std::size_t>(i)];
        const int b = remap[static_cast<std::size_t>(j)];
        if (a >= 0 && b >= 0) kept.emplace_back(a, b);
    }

    AugmentationRecord rec;
    rec.original = g;
    rec.augmented = Graph(next, std::move(kept), g.label(), g.features());
    rec.edges_dropped = rec.original.edge_count() - rec.augmented.edge_count();
    rec.edges_added = 0;
    rec.eigenvalues_before = eigendecompose(laplacian(rec.original)).eigenvalues;
    if (next > 0)
        rec.eigenvalues_after = eigendecompose(laplacian(rec.augmented)).eigenvalues;
    rec.delta_l2 = detail::padded_eigenvalue_distance(rec.eigenvalues_before,
                                                      rec.eigenvalues_after);
    return rec;
}

} // namespace dualprism
