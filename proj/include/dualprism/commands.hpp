#pragma once

#include <chrono>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "dualprism/augment.hpp"
#include "dualprism/csv.hpp"
#include "dualprism/dataset_io.hpp"
#include "dualprism/errors.hpp"
#include "dualprism/parallel.hpp"
#include "dualprism/properties.hpp"
#include "dualprism/version.hpp"

namespace dualprism {

inline constexpr int kExitOk = 0;
inline constexpr int kExitIo = 1;
inline constexpr int kExitValidation = 2;

/// Reproducibility sidecar written next to every command's reports. Exactly
/// one manifest lives in each output directory; re-running the recorded
/// command with the recorded seed reproduces the report files byte for byte
/// (the wall_clock block is the one part that varies).
struct RunManifest {
    std::string command;
    std::string input;
    std::string output;
    std::uint64_t seed = 0;
    int workers = 1;
    int graphs = 0;
    double total_ms = 0.0;
    double mean_ms_per_graph = 0.0;
    nlohmann::json config;
};

inline void write_manifest(const RunManifest& m, const std::filesystem::path& dir) {
    nlohmann::json j;
    j["command"] = m.command;
    j["tool_version"] = kVersion;
    j["input"] = m.input;
    j["output"] = m.output;
    j["seed"] = m.seed;
    j["workers"] = m.workers;
    j["graphs"] = m.graphs;
    j["wall_clock"] = {{"total_ms", m.total_ms},
                       {"mean_ms_per_graph", m.mean_ms_per_graph}};
    j["config"] = m.config;
    std::ofstream out(dir / "manifest.json");
    if (!out) throw IoFailure("cannot open manifest in " + dir.string());
    out << j.dump(2) << "\n";
    if (!out.flush()) throw IoFailure("manifest write failed in " + dir.string());
}

namespace detail {

inline std::string to_string(ConnectivityChange c) {
    switch (c) {
        case ConnectivityChange::Preserved: return "preserved";
        case ConnectivityChange::Broken: return "broken";
        case ConnectivityChange::Restored: return "restored";
    }
    return "?";
}

inline std::string format_extent(const std::optional<int>& v) {
    return v.has_value() ? std::to_string(*v) : std::string("inf");
}

inline std::filesystem::path augmented_dataset_path(const std::filesystem::path& out,
                                                    DatasetFormat fmt) {
    return fmt == DatasetFormat::Json ? out / "augmented.json" : out / "augmented";
}

inline double ms_between(std::chrono::steady_clock::time_point a,
                         std::chrono::steady_clock::time_point b) {
    return std::chrono::duration<double, std::milli>(b - a).count();
}

} // namespace detail

// ---------------------------------------------------------------------------
// augment: apply one augmentation to every graph of a dataset
// ---------------------------------------------------------------------------

struct AugmentOptions {
    std::filesystem::path input;
    std::filesystem::path output;
    DatasetFormat format = DatasetFormat::Json;
    std::string type = "noise"; // noise | mask | drop-edge | drop-node
    double sigma = 1.0;
    double freq_ratio = 0.5;
    double aug_prob = 0.5;
    double tau = 0.5;
    std::uint64_t seed = 0;
    FrequencyBand band = FrequencyBand::High;
    int workers = 0; // 0 = auto; DP_WORKERS overrides either way
};

/// Augments a dataset graph by graph. Writes into the output directory:
/// the augmented dataset, records.csv (graph_id, edges_dropped, edges_added,
/// delta_l2, flagged), and manifest.json. A graph whose decomposition fails
/// to converge passes through unmodified with flagged=1; it never aborts the
/// batch. Per-graph random streams are seeded with seed XOR graph_index, so
/// results do not depend on the worker count.
inline int cmd_augment(const AugmentOptions& opt, std::ostream& log = std::cerr) {
    const bool spectral_type = opt.type == "noise" || opt.type == "mask";
    const bool drop_type = opt.type == "drop-edge" || opt.type == "drop-node";
    if (!spectral_type && !drop_type) {
        log << "augment: unknown type '" << opt.type << "'\n";
        return kExitValidation;
    }
    AugmentConfig cfg;
    cfg.type = opt.type == "mask" ? AugmentType::Mask : AugmentType::Noise;
    cfg.freq_ratio = opt.freq_ratio;
    cfg.aug_prob = opt.aug_prob;
    cfg.sigma = opt.sigma;
    cfg.tau = opt.tau;
    cfg.seed = opt.seed;
    try {
        validate(cfg);
    } catch (const std::invalid_argument& e) {
        log << "augment: " << e.what() << "\n";
        return kExitValidation;
    }

    Dataset ds;
    try {
        ds = read_dataset(opt.input, opt.format);
    } catch (const Error& e) {
        log << "augment: " << e.what() << "\n";
        return kExitIo;
    }

    struct Row {
        int dropped = 0;
        int added = 0;
        double delta_l2 = 0.0;
        bool flagged = false;
        double ms = 0.0;
    };
    std::vector<Row> rows(ds.graphs.size());
    Dataset out_ds;
    out_ds.name = ds.name;
    out_ds.class_count = ds.class_count;
    out_ds.graphs.resize(ds.graphs.size());

    const int workers = resolve_workers(opt.workers);
    const auto t0 = std::chrono::steady_clock::now();
    parallel_for(ds.graphs.size(), workers, [&](std::size_t i) {
        const auto g0 = std::chrono::steady_clock::now();
        RandomStream rng(opt.seed ^ static_cast<std::uint64_t>(i));
        const Graph& g = ds.graphs[i];
        try {
            AugmentationRecord rec;
            if (opt.type == "drop-edge") {
                rec = drop_edge(g, opt.aug_prob, rng);
            } else if (opt.type == "drop-node") {
                rec = drop_node(g, opt.aug_prob, rng);
            } else {
                rec = dp_augment(g, cfg, rng, opt.band);
            }
            out_ds.graphs[i] = std::move(rec.augmented);
            rows[i] = {rec.edges_dropped, rec.edges_added, rec.delta_l2, false, 0.0};
        } catch (const NonConvergence&) {
            out_ds.graphs[i] = g; // pass through untouched, flag it
            rows[i] = {0, 0, 0.0, true, 0.0};
        }
        rows[i].ms = detail::ms_between(g0, std::chrono::steady_clock::now());
    });
    const double total_ms = detail::ms_between(t0, std::chrono::steady_clock::now());

    try {
        std::filesystem::create_directories(opt.output);
        write_dataset(out_ds, detail::augmented_dataset_path(opt.output, opt.format),
                      opt.format);

        CsvWriter csv(opt.output / "records.csv");
        csv.row({"graph_id", "edges_dropped", "edges_added", "delta_l2", "flagged"});
        double ms_sum = 0.0;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            csv.row({std::to_string(i), std::to_string(rows[i].dropped),
                     std::to_string(rows[i].added), format_double(rows[i].delta_l2),
                     rows[i].flagged ? "1" : "0"});
            ms_sum += rows[i].ms;
        }
        csv.close();

        RunManifest m;
        m.command = "augment";
        m.input = opt.input.string();
        m.output = opt.output.string();
        m.seed = opt.seed;
        m.workers = workers;
        m.graphs = static_cast<int>(ds.graphs.size());
        m.total_ms = total_ms;
        m.mean_ms_per_graph = ds.graphs.empty() ? 0.0 : ms_sum / double(ds.graphs.size());
        m.config = {{"type", opt.type},
                    {"format", to_string(opt.format)},
                    {"sigma", opt.sigma},
                    {"freq_ratio", opt.freq_ratio},
                    {"aug_prob", opt.aug_prob},
                    {"tau", opt.tau},
                    {"band", opt.band == FrequencyBand::High ? "high" : "low"}};
        write_manifest(m, opt.output);
    } catch (const Error& e) {
        log << "augment: " << e.what() << "\n";
        return kExitIo;
    }
    return kExitOk;
}

// ---------------------------------------------------------------------------
// analyze: paired property deltas between an original and an augmented set
// ---------------------------------------------------------------------------

struct AnalyzeOptions {
    std::filesystem::path original;
    std::filesystem::path augmented;
    std::filesystem::path output;
    DatasetFormat format = DatasetFormat::Json;
    int workers = 0;
};

/// Emits analysis.csv with one row per graph pair (both full profiles, the
/// field-wise deltas, and the spectral distance) plus aggregates.json with
/// the dataset-level summary. The connectivity preservation rate is the
/// fraction of originally-connected graphs that stayed connected.
inline int cmd_analyze(const AnalyzeOptions& opt, std::ostream& log = std::cerr) {
    Dataset before, after;
    try {
        before = read_dataset(opt.original, opt.format);
        after = read_dataset(opt.augmented, opt.format);
    } catch (const Error& e) {
        log << "analyze: " << e.what() << "\n";
        return kExitIo;
    }
    if (before.graphs.size() != after.graphs.size()) {
        log << "analyze: datasets have " << before.graphs.size() << " vs "
            << after.graphs.size() << " graphs\n";
        return kExitValidation;
    }

    struct Pair {
        PropertyProfile orig, aug;
        PropertyDelta delta;
        double delta_l2 = 0.0;
    };
    std::vector<Pair> pairs(before.graphs.size());
    const int workers = resolve_workers(opt.workers);
    const auto t0 = std::chrono::steady_clock::now();
    parallel_for(pairs.size(), workers, [&](std::size_t i) {
        const Spectrum so = eigendecompose(laplacian(before.graphs[i]));
        const Spectrum sa = eigendecompose(laplacian(after.graphs[i]));
        Pair& p = pairs[i];
        p.orig = property_profile(before.graphs[i], &so);
        p.aug = property_profile(after.graphs[i], &sa);
        p.delta = property_delta(p.orig, p.aug);
        p.delta_l2 = so.n == sa.n
                         ? spectral_l2_distance(so, sa)
                         : detail::padded_eigenvalue_distance(so.eigenvalues,
                                                              sa.eigenvalues);
    });
    const double total_ms = detail::ms_between(t0, std::chrono::steady_clock::now());

    try {
        std::filesystem::create_directories(opt.output);
        CsvWriter csv(opt.output / "analysis.csv");
        csv.row({"graph_id",
                 "orig_connected", "orig_components", "orig_diameter", "orig_radius",
                 "orig_periphery", "orig_aspl", "orig_fiedler",
                 "aug_connected", "aug_components", "aug_diameter", "aug_radius",
                 "aug_periphery", "aug_aspl", "aug_fiedler",
                 "connectivity", "d_diameter", "d_radius", "d_periphery", "d_aspl",
                 "d_fiedler", "delta_l2"});

        int originally_connected = 0, preserved = 0, broken = 0, restored = 0;
        double sum_delta_l2 = 0.0, sum_abs_d_diam = 0.0, sum_abs_d_radius = 0.0;
        double sum_abs_d_aspl = 0.0, sum_abs_d_fiedler = 0.0, sum_abs_d_peri = 0.0;
        long long finite_extent_pairs = 0;

        for (std::size_t i = 0; i < pairs.size(); ++i) {
            const Pair& p = pairs[i];
            csv.row({std::to_string(i),
                     p.orig.connected ? "1" : "0", std::to_string(p.orig.components),
                     detail::format_extent(p.orig.diameter),
                     detail::format_extent(p.orig.radius),
                     std::to_string(p.orig.periphery_size), format_double(p.orig.aspl),
                     format_double(p.orig.fiedler),
                     p.aug.connected ? "1" : "0", std::to_string(p.aug.components),
                     detail::format_extent(p.aug.diameter),
                     detail::format_extent(p.aug.radius),
                     std::to_string(p.aug.periphery_size), format_double(p.aug.aspl),
                     format_double(p.aug.fiedler),
                     detail::to_string(p.delta.connectivity),
                     detail::format_extent(p.delta.d_diameter),
                     detail::format_extent(p.delta.d_radius),
                     std::to_string(p.delta.d_periphery), format_double(p.delta.d_aspl),
                     format_double(p.delta.d_fiedler), format_double(p.delta_l2)});

            if (p.orig.connected) {
                ++originally_connected;
                if (p.aug.connected) ++preserved;
            }
            if (p.delta.connectivity == ConnectivityChange::Broken) ++broken;
            if (p.delta.connectivity == ConnectivityChange::Restored) ++restored;
            sum_delta_l2 += p.delta_l2;
            if (p.delta.d_diameter.has_value() && p.delta.d_radius.has_value()) {
                ++finite_extent_pairs;
                sum_abs_d_diam += std::abs(*p.delta.d_diameter);
                sum_abs_d_radius += std::abs(*p.delta.d_radius);
            }
            sum_abs_d_aspl += std::abs(p.delta.d_aspl);
            sum_abs_d_fiedler += std::abs(p.delta.d_fiedler);
            sum_abs_d_peri += std::abs(p.delta.d_periphery);
        }
        csv.close();

        const double count = static_cast<double>(pairs.size());
        nlohmann::json agg;
        agg["graphs"] = pairs.size();
        agg["connectivity_preservation_rate"] =
            originally_connected > 0 ? double(preserved) / originally_connected : 1.0;
        agg["connectivity_broken"] = broken;
        agg["connectivity_restored"] = restored;
        agg["mean_delta_l2"] = count > 0 ? sum_delta_l2 / count : 0.0;
        agg["finite_extent_pairs"] = finite_extent_pairs;
        agg["mean_abs_delta_diameter"] =
            finite_extent_pairs > 0 ? sum_abs_d_diam / double(finite_extent_pairs) : 0.0;
        agg["mean_abs_delta_radius"] =
            finite_extent_pairs > 0 ? sum_abs_d_radius / double(finite_extent_pairs) : 0.0;
        agg["mean_abs_delta_aspl"] = count > 0 ? sum_abs_d_aspl / count : 0.0;
        agg["mean_abs_delta_fiedler"] = count > 0 ? sum_abs_d_fiedler / count : 0.0;
        agg["mean_abs_delta_periphery"] = count > 0 ? sum_abs_d_peri / count : 0.0;
        std::ofstream aggf(opt.output / "aggregates.json");
        if (!aggf) throw IoFailure("cannot open aggregates.json");
        aggf << agg.dump(2) << "\n";
        if (!aggf.flush()) throw IoFailure("aggregates.json write failed");

        RunManifest m;
        m.command = "analyze";
        m.input = opt.original.string();
        m.output = opt.output.string();
        m.workers = workers;
        m.graphs = static_cast<int>(pairs.size());
        m.total_ms = total_ms;
        m.mean_ms_per_graph = pairs.empty() ? 0.0 : total_ms / double(pairs.size());
        m.config = {{"augmented", opt.augmented.string()},
                    {"format", to_string(opt.format)}};
        write_manifest(m, opt.output);
    } catch (const Error& e) {
        log << "analyze: " << e.what() << "\n";
        return kExitIo;
    }
    return kExitOk;
}

// ---------------------------------------------------------------------------
// flip-scan: spectral response of every single-edge addition and deletion
// ---------------------------------------------------------------------------

struct FlipScanOptions {
    std::filesystem::path input;
    std::filesystem::path output;
    DatasetFormat format = DatasetFormat::EdgeList;
    int workers = 0;
};

/// For each possible deletion (existing edges, in order) and addition
/// (absent pairs, lexicographic), writes the per-eigenvalue absolute deltas,
/// the spectral distance, and the flipped graph's 1/lambda1, ASPL and
/// diameter. Scanning a complete graph yields no addition rows.
inline int cmd_flip_scan(const FlipScanOptions& opt, std::ostream& log = std::cerr) {
    Graph g;
    try {
        Dataset ds = read_dataset(opt.input, opt.format);
        if (ds.graphs.empty()) {
            log << "flip-scan: input dataset is empty\n";
            return kExitValidation;
        }
        g = ds.graphs.front();
    } catch (const Error& e) {
        log << "flip-scan: " << e.what() << "\n";
        return kExitIo;
    }
    const int n = g.node_count();
    if (n == 0) {
        log << "flip-scan: graph has no nodes\n";
        return kExitValidation;
    }

    struct Flip {
        Edge e;
        bool add = false;
    };
    std::vector<Flip> flips;
    for (const auto& e : g.edges()) flips.push_back({e, false});
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (!g.has_edge(i, j)) flips.push_back({{i, j}, true});

    const Spectrum base = eigendecompose(laplacian(g));

    struct Row {
        std::vector<double> deltas;
        double delta_l2 = 0.0;
        double inv_fiedler = 0.0;
        bool inv_fiedler_finite = true;
        PropertyProfile prof;
    };
    std::vector<Row> rows(flips.size());
    const int workers = resolve_workers(opt.workers);
    const auto t0 = std::chrono::steady_clock::now();
    parallel_for(flips.size(), workers, [&](std::size_t i) {
        const Graph flipped = g.with_edge_flipped(flips[i].e, flips[i].add);
        const Spectrum fs = eigendecompose(laplacian(flipped));
        Row& r = rows[i];
        r.deltas.resize(static_cast<std::size_t>(n));
        for (int k = 0; k < n; ++k)
            r.deltas[static_cast<std::size_t>(k)] =
                std::abs(fs.eigenvalues[k] - base.eigenvalues[k]);
        r.delta_l2 = spectral_l2_distance(base, fs);
        r.prof = property_profile(flipped, &fs);
        if (n >= 2 && r.prof.fiedler > 1e-12) {
            r.inv_fiedler = 1.0 / r.prof.fiedler;
        } else {
            r.inv_fiedler_finite = false;
        }
    });
    const double total_ms = detail::ms_between(t0, std::chrono::steady_clock::now());

    try {
        std::filesystem::create_directories(opt.output);
        CsvWriter csv(opt.output / "flip_scan.csv");
        std::vector<std::string> header = {"op",          "i",    "j",
                                           "delta_l2",    "inv_fiedler", "aspl",
                                           "diameter"};
        for (int k = 0; k < n; ++k) header.push_back("dlambda_" + std::to_string(k));
        csv.row(header);
        for (std::size_t i = 0; i < flips.size(); ++i) {
            const Row& r = rows[i];
            std::vector<std::string> fields = {
                flips[i].add ? "add" : "drop",
                std::to_string(flips[i].e.first),
                std::to_string(flips[i].e.second),
                format_double(r.delta_l2),
                r.inv_fiedler_finite ? format_double(r.inv_fiedler) : "inf",
                format_double(r.prof.aspl),
                detail::format_extent(r.prof.diameter)};
            for (double d : r.deltas) fields.push_back(format_double(d));
            csv.row(fields);
        }
        csv.close();

        RunManifest m;
        m.command = "flip-scan";
        m.input = opt.input.string();
        m.output = opt.output.string();
        m.workers = workers;
        m.graphs = 1;
        m.total_ms = total_ms;
        m.mean_ms_per_graph = total_ms;
        m.config = {{"format", to_string(opt.format)},
                    {"flips", flips.size()}};
        write_manifest(m, opt.output);
    } catch (const Error& e) {
        log << "flip-scan: " << e.what() << "\n";
        return kExitIo;
    }
    return kExitOk;
}

// ---------------------------------------------------------------------------
// sweep: hyperparameter grid, aggregate preservation metrics per cell
// ---------------------------------------------------------------------------

struct SweepOptions {
    std::filesystem::path input;
    std::filesystem::path output;
    DatasetFormat format = DatasetFormat::Json;
    std::string type = "noise"; // noise | mask
    FrequencyBand band = FrequencyBand::High;
    std::vector<double> sigmas = {1.0};
    std::vector<double> freq_ratios = {0.5};
    std::vector<double> aug_probs = {0.5};
    double tau = 0.5;
    int repeats = 3;
    std::uint64_t seed = 0;
    int workers = 0;
};

/// One sweep.csv row per (sigma, freq_ratio, aug_prob) cell, averaged over
/// every graph and `repeats` seeds. Repeat k of graph i uses the stream seed
/// (seed + k) XOR i. The band column records whether the low or the high end
/// of the spectrum was eligible.
inline int cmd_sweep(const SweepOptions& opt, std::ostream& log = std::cerr) {
    if (opt.type != "noise" && opt.type != "mask") {
        log << "sweep: unknown type '" << opt.type << "'\n";
        return kExitValidation;
    }
    if (opt.sigmas.empty() || opt.freq_ratios.empty() || opt.aug_probs.empty()) {
        log << "sweep: empty grid axis\n";
        return kExitValidation;
    }
    if (opt.repeats < 1) {
        log << "sweep: repeats must be >= 1\n";
        return kExitValidation;
    }
    for (double s : opt.sigmas)
        if (s < 0.0) {
            log << "sweep: sigma must be >= 0\n";
            return kExitValidation;
        }
    for (double r : opt.freq_ratios)
        if (r < 0.0 || r > 1.0) {
            log << "sweep: freq-ratio must be in [0, 1]\n";
            return kExitValidation;
        }
    for (double r : opt.aug_probs)
        if (r < 0.0 || r > 1.0) {
            log << "sweep: aug-prob must be in [0, 1]\n";
            return kExitValidation;
        }
    if (opt.tau <= 0.0) {
        log << "sweep: tau must be > 0\n";
        return kExitValidation;
    }

    Dataset ds;
    try {
        ds = read_dataset(opt.input, opt.format);
    } catch (const Error& e) {
        log << "sweep: " << e.what() << "\n";
        return kExitIo;
    }
    if (ds.graphs.empty()) {
        log << "sweep: input dataset is empty\n";
        return kExitValidation;
    }

    const std::size_t n_graphs = ds.graphs.size();
    std::vector<PropertyProfile> orig_profiles(n_graphs);
    const int workers = resolve_workers(opt.workers);
    parallel_for(n_graphs, workers, [&](std::size_t i) {
        const Spectrum s = eigendecompose(laplacian(ds.graphs[i]));
        orig_profiles[i] = property_profile(ds.graphs[i], &s);
    });

    struct Cell {
        double sigma, freq_ratio, aug_prob;
    };
    std::vector<Cell> cells;
    for (double s : opt.sigmas)
        for (double rf : opt.freq_ratios)
            for (double ra : opt.aug_probs) cells.push_back({s, rf, ra});

    struct Acc {
        double delta_l2 = 0.0;
        long long dropped = 0;
        long long added = 0;
        long long connected_samples = 0;
        long long preserved = 0;
        long long finite_diam = 0;
        double abs_d_diam = 0.0;
        double abs_d_fiedler = 0.0;
        long long samples = 0;
    };
    std::vector<Acc> acc(cells.size() * n_graphs);

    const auto t0 = std::chrono::steady_clock::now();
    parallel_for(acc.size(), workers, [&](std::size_t task) {
        const std::size_t ci = task / n_graphs;
        const std::size_t gi = task % n_graphs;
        const Cell& cell = cells[ci];
        AugmentConfig cfg;
        cfg.type = opt.type == "mask" ? AugmentType::Mask : AugmentType::Noise;
        cfg.sigma = cell.sigma;
        cfg.freq_ratio = cell.freq_ratio;
        cfg.aug_prob = cell.aug_prob;
        cfg.tau = opt.tau;
        Acc& a = acc[task];
        for (int k = 0; k < opt.repeats; ++k) {
            RandomStream rng((opt.seed + static_cast<std::uint64_t>(k)) ^
                             static_cast<std::uint64_t>(gi));
            const AugmentationRecord rec = dp_augment(ds.graphs[gi], cfg, rng, opt.band);
            const Spectrum sa = eigendecompose(laplacian(rec.augmented));
            const PropertyProfile prof = property_profile(rec.augmented, &sa);
            const PropertyProfile& orig = orig_profiles[gi];
            a.delta_l2 += rec.delta_l2;
            a.dropped += rec.edges_dropped;
            a.added += rec.edges_added;
            if (orig.connected) {
                ++a.connected_samples;
                if (prof.connected) ++a.preserved;
            }
            if (orig.diameter.has_value() && prof.diameter.has_value()) {
                ++a.finite_diam;
                a.abs_d_diam += std::abs(*prof.diameter - *orig.diameter);
            }
            a.abs_d_fiedler += std::abs(prof.fiedler - orig.fiedler);
            ++a.samples;
        }
    });
    const double total_ms = detail::ms_between(t0, std::chrono::steady_clock::now());

    try {
        std::filesystem::create_directories(opt.output);
        CsvWriter csv(opt.output / "sweep.csv");
        csv.row({"type", "band", "sigma", "freq_ratio", "aug_prob", "repeats",
                 "graphs", "mean_delta_l2", "mean_edges_dropped", "mean_edges_added",
                 "connectivity_preservation_rate", "mean_abs_delta_diameter",
                 "mean_abs_delta_fiedler"});
        for (std::size_t ci = 0; ci < cells.size(); ++ci) {
            Acc total;
            for (std::size_t gi = 0; gi < n_graphs; ++gi) {
                const Acc& a = acc[ci * n_graphs + gi];
                total.delta_l2 += a.delta_l2;
                total.dropped += a.dropped;
                total.added += a.added;
                total.connected_samples += a.connected_samples;
                total.preserved += a.preserved;
                total.finite_diam += a.finite_diam;
                total.abs_d_diam += a.abs_d_diam;
                total.abs_d_fiedler += a.abs_d_fiedler;
                total.samples += a.samples;
            }
            const double ns = static_cast<double>(total.samples);
            csv.row({opt.type,
                     opt.band == FrequencyBand::High ? "high" : "low",
                     format_double(cells[ci].sigma), format_double(cells[ci].freq_ratio),
                     format_double(cells[ci].aug_prob), std::to_string(opt.repeats),
                     std::to_string(n_graphs), format_double(total.delta_l2 / ns),
                     format_double(double(total.dropped) / ns),
                     format_double(double(total.added) / ns),
                     format_double(total.connected_samples > 0
                                       ? double(total.preserved) / double(total.connected_samples)
                                       : 1.0),
                     format_double(total.finite_diam > 0
                                       ? total.abs_d_diam / double(total.finite_diam)
                                       : 0.0),
                     format_double(total.abs_d_fiedler / ns)});
        }
        csv.close();

        RunManifest m;
        m.command = "sweep";
        m.input = opt.input.string();
        m.output = opt.output.string();
        m.seed = opt.seed;
        m.workers = workers;
        m.graphs = static_cast<int>(n_graphs);
        m.total_ms = total_ms;
        m.mean_ms_per_graph = total_ms / double(n_graphs);
        m.config = {{"type", opt.type},
                    {"band", opt.band == FrequencyBand::High ? "high" : "low"},
                    {"format", to_string(opt.format)},
                    {"tau", opt.tau},
                    {"repeats", opt.repeats},
                    {"sigmas", opt.sigmas},
                    {"freq_ratios", opt.freq_ratios},
                    {"aug_probs", opt.aug_probs}};
        write_manifest(m, opt.output);
    } catch (const Error& e) {
        log << "sweep: " << e.what() << "\n";
        return kExitIo;
    }
    return kExitOk;
}

// ---------------------------------------------------------------------------
// bench: wall-clock cost of one spectral augmentation per graph size
// ---------------------------------------------------------------------------

struct BenchOptions {
    std::vector<int> sizes = {10, 20, 100, 200, 500};
    int repeats = 20;
    double edge_prob = 0.3;
    std::uint64_t seed = 0;
    std::filesystem::path output;
};

struct BenchRow {
    int n = 0;
    int repeats = 0;
    double mean_ms = 0.0;
    double stddev_ms = 0.0;
};

/// Times dp_augment (Noise, sigma 1, freq_ratio 0.5, aug_prob 0.5) on fresh
/// random graphs. Runs sequentially so the numbers are not polluted by
/// contention; graph generation happens outside the timed section.
inline std::vector<BenchRow> run_bench(const BenchOptions& opt) {
    std::vector<BenchRow> out;
    AugmentConfig cfg; // noise defaults
    for (std::size_t si = 0; si < opt.sizes.size(); ++si) {
        const int n = opt.sizes[si];
        std::vector<double> times(static_cast<std::size_t>(opt.repeats));
        for (int k = 0; k < opt.repeats; ++k) {
            const std::uint64_t graph_seed = mix_seed(
                opt.seed, (static_cast<std::uint64_t>(n) << 32) |
                              static_cast<std::uint64_t>(k));
            const Graph g = random_graph(n, opt.edge_prob, graph_seed);
            RandomStream rng(mix_seed(graph_seed, 1));
            const auto t0 = std::chrono::steady_clock::now();
            const AugmentationRecord rec = dp_augment(g, cfg, rng);
            const auto t1 = std::chrono::steady_clock::now();
            (void)rec;
            times[static_cast<std::size_t>(k)] = detail::ms_between(t0, t1);
        }
        BenchRow row;
        row.n = n;
        row.repeats = opt.repeats;
        double sum = 0.0;
        for (double t : times) sum += t;
        row.mean_ms = sum / double(opt.repeats);
        if (opt.repeats > 1) {
            double ss = 0.0;
            for (double t : times) ss += (t - row.mean_ms) * (t - row.mean_ms);
            row.stddev_ms = std::sqrt(ss / double(opt.repeats - 1));
        }
        out.push_back(row);
    }
    return out;
}

inline int cmd_bench(const BenchOptions& opt, std::ostream& log = std::cerr) {
    if (opt.sizes.empty()) {
        log << "bench: no sizes given\n";
        return kExitValidation;
    }
    for (int n : opt.sizes)
        if (n < 1) {
            log << "bench: sizes must be >= 1\n";
            return kExitValidation;
        }
    if (opt.repeats < 1) {
        log << "bench: repeats must be >= 1\n";
        return kExitValidation;
    }
    if (opt.edge_prob < 0.0 || opt.edge_prob > 1.0) {
        log << "bench: p must be in [0, 1]\n";
        return kExitValidation;
    }

    const auto t0 = std::chrono::steady_clock::now();
    const std::vector<BenchRow> rows = run_bench(opt);
    const double total_ms = detail::ms_between(t0, std::chrono::steady_clock::now());

    try {
        std::filesystem::create_directories(opt.output);
        CsvWriter csv(opt.output / "bench.csv");
        csv.row({"n", "repeats", "mean_ms", "stddev_ms"});
        for (const auto& r : rows)
            csv.row({std::to_string(r.n), std::to_string(r.repeats),
                     format_double(r.mean_ms), format_double(r.stddev_ms)});
        csv.close();

        RunManifest m;
        m.command = "bench";
        m.output = opt.output.string();
        m.seed = opt.seed;
        m.graphs = opt.repeats * static_cast<int>(opt.sizes.size());
        m.total_ms = total_ms;
        m.mean_ms_per_graph = total_ms / double(m.graphs);
        m.config = {{"sizes", opt.sizes},
                    {"repeats", opt.repeats},
                    {"p", opt.edge_prob}};
        write_manifest(m, opt.output);
    } catch (const Error& e) {
        log << "bench: " << e.what() << "\n";
        return kExitIo;
    }
    return kExitOk;
}

} // namespace dualprism
