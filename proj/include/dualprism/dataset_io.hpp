#pragma once

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "dualprism/errors.hpp"
#include "dualprism/graph.hpp"
#include "dualprism/rng.hpp"

namespace dualprism {

/// Ordered collection of graphs; the position in the list is the graph's
/// dataset ID. class_count is always max(label) + 1 so that readers and
/// writers agree on it.
struct Dataset {
    std::string name;
    std::vector<Graph> graphs;
    int class_count = 0;

    friend bool operator==(const Dataset& a, const Dataset& b) {
        return a.name == b.name && a.class_count == b.class_count &&
               a.graphs == b.graphs;
    }
};

enum class DatasetFormat { Tud, EdgeList, Json };

namespace detail {

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r'))
        s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
        s.remove_suffix(1);
    return s;
}

inline bool parse_int(std::string_view s, long long& out) {
    s = trim(s);
    if (s.empty()) return false;
    const auto* first = s.data();
    const auto* last = s.data() + s.size();
    const auto res = std::from_chars(first, last, out);
    return res.ec == std::errc{} && res.ptr == last;
}

[[noreturn]] inline void malformed(const std::filesystem::path& file, int line,
                                   const std::string& what) {
    throw MalformedFile(file.string() + ":" + std::to_string(line) + ": " + what);
}

inline int class_count_from(const std::vector<Graph>& graphs) {
    int max_label = -1;
    for (const auto& g : graphs)
        if (g.label().has_value() && *g.label() > max_label) max_label = *g.label();
    return max_label + 1;
}

} // namespace detail

// ---------------------------------------------------------------------------
// TUDataset-style flat files
//
// <name>_A.txt              comma-separated 1-based directed edge pairs
// <name>_graph_indicator.txt  1-based graph id, one line per node
// <name>_graph_labels.txt   optional, one integer per graph
//
// The two directions of an undirected edge collapse into one; node attribute
// and edge label files are ignored. Labels are remapped to 0..C-1 in sorted
// order of the raw values.
// ---------------------------------------------------------------------------

inline Dataset read_tudataset(const std::filesystem::path& dir) {
    namespace fs = std::filesystem;
    if (!fs::exists(dir) || !fs::is_directory(dir))
        throw MissingFile("read_tudataset: no such directory: " + dir.string());

    std::string name;
    for (const auto& entry : fs::directory_iterator(dir)) {
        const std::string fn = entry.path().filename().string();
        constexpr std::string_view suffix = "_graph_indicator.txt";
        if (fn.size() > suffix.size() &&
            fn.compare(fn.size() - suffix.size(), suffix.size(), suffix) == 0) {
            name = fn.substr(0, fn.size() - suffix.size());
            break;
        }
    }
    if (name.empty())
        throw MissingFile("read_tudataset: no *_graph_indicator.txt in " + dir.string());

    const fs::path indicator_path = dir / (name + "_graph_indicator.txt");
    const fs::path edges_path = dir / (name + "_A.txt");
    const fs::path labels_path = dir / (name + "_graph_labels.txt");
    if (!fs::exists(edges_path))
        throw MissingFile("read_tudataset: missing " + edges_path.string());

    // Node -> graph assignment. Node ids are implicit 1-based line numbers.
    std::vector<int> node_graph;   // 0-based graph id per node
    std::vector<int> node_local;   // index of the node within its graph
    std::vector<int> graph_sizes;
    {
        std::ifstream in(indicator_path);
        if (!in) throw MissingFile("read_tudataset: cannot open " + indicator_path.string());
        std::string line;
        int lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            const auto t = detail::trim(line);
            if (t.empty()) continue;
            long long gid = 0;
            if (!detail::parse_int(t, gid) || gid < 1)
                detail::malformed(indicator_path, lineno, "expected positive graph id");
            if (gid > static_cast<long long>(graph_sizes.size()))
                graph_sizes.resize(static_cast<std::size_t>(gid), 0);
            const int g0 = static_cast<int>(gid) - 1;
            node_graph.push_back(g0);
            node_local.push_back(graph_sizes[static_cast<std::size_t>(g0)]++);
        }
    }
    const int graph_count = static_cast<int>(graph_sizes.size());
    for (int g = 0; g < graph_count; ++g)
        if (graph_sizes[static_cast<std::size_t>(g)] == 0)
            throw MalformedFile(indicator_path.string() + ": graph " +
                                std::to_string(g + 1) + " has no nodes");

    std::vector<std::vector<Edge>> edges(static_cast<std::size_t>(graph_count));
    {
        std::ifstream in(edges_path);
        if (!in) throw MissingFile("read_tudataset: cannot open " + edges_path.string());
        std::string line;
        int lineno = 0;
        const long long node_count = static_cast<long long>(node_graph.size());
        while (std::getline(in, line)) {
            ++lineno;
            const auto t = detail::trim(line);
            if (t.empty()) continue;
            const auto comma = t.find(',');
            if (comma == std::string_view::npos)
                detail::malformed(edges_path, lineno, "expected 'i, j'");
            long long a = 0, b = 0;
            if (!detail::parse_int(t.substr(0, comma), a) ||
                !detail::parse_int(t.substr(comma + 1), b))
                detail::malformed(edges_path, lineno, "expected two integers");
            if (a < 1 || a > node_count || b < 1 || b > node_count)
                detail::malformed(edges_path, lineno, "node id out of range");
            if (a == b)
                detail::malformed(edges_path, lineno, "self-loop rejected");
            const int ga = node_graph[static_cast<std::size_t>(a - 1)];
            const int gb = node_graph[static_cast<std::size_t>(b - 1)];
            if (ga != gb)
                throw InconsistentIndicator(
                    edges_path.string() + ":" + std::to_string(lineno) +
                    ": edge endpoints belong to graphs " + std::to_string(ga + 1) +
                    " and " + std::to_string(gb + 1));
            edges[static_cast<std::size_t>(ga)].emplace_back(
                node_local[static_cast<std::size_t>(a - 1)],
                node_local[static_cast<std::size_t>(b - 1)]);
        }
    }

    std::vector<std::optional<int>> labels(static_cast<std::size_t>(graph_count));
    if (fs::exists(labels_path)) {
        std::ifstream in(labels_path);
        if (!in) throw MissingFile("read_tudataset: cannot open " + labels_path.string());
        std::string line;
        int lineno = 0;
        std::vector<long long> raw;
        while (std::getline(in, line)) {
            ++lineno;
            const auto t = detail::trim(line);
            if (t.empty()) continue;
            long long v = 0;
            if (!detail::parse_int(t, v))
                detail::malformed(labels_path, lineno, "expected integer label");
            raw.push_back(v);
        }
        if (static_cast<int>(raw.size()) != graph_count)
            throw MalformedFile(labels_path.string() + ": " +
                                std::to_string(raw.size()) + " labels for " +
                                std::to_string(graph_count) + " graphs");
        // Nonnegative labels pass through so our own files round-trip; raw
        // label sets containing negatives (e.g. -1/+1) are remapped to
        // 0..C-1 in sorted order.
        const bool any_negative =
            std::any_of(raw.begin(), raw.end(), [](long long v) { return v < 0; });
        if (any_negative) {
            std::vector<long long> distinct = raw;
            std::sort(distinct.begin(), distinct.end());
            distinct.erase(std::unique(distinct.begin(), distinct.end()),
                           distinct.end());
            std::map<long long, int> remap;
            for (std::size_t i = 0; i < distinct.size(); ++i)
                remap[distinct[i]] = static_cast<int>(i);
            for (int g = 0; g < graph_count; ++g)
                labels[static_cast<std::size_t>(g)] =
                    remap.at(raw[static_cast<std::size_t>(g)]);
        } else {
            for (int g = 0; g < graph_count; ++g)
                labels[static_cast<std::size_t>(g)] =
                    static_cast<int>(raw[static_cast<std::size_t>(g)]);
        }
    }

    Dataset ds;
    ds.name = name;
    ds.graphs.reserve(static_cast<std::size_t>(graph_count));
    for (int g = 0; g < graph_count; ++g) {
        try {
            ds.graphs.emplace_back(graph_sizes[static_cast<std::size_t>(g)],
                                   std::move(edges[static_cast<std::size_t>(g)]),
                                   labels[static_cast<std::size_t>(g)]);
        } catch (const std::invalid_argument& e) {
            throw MalformedFile(edges_path.string() + ": graph " +
                                std::to_string(g + 1) + ": " + e.what());
        }
    }
    ds.class_count = detail::class_count_from(ds.graphs);
    return ds;
}

inline void write_tudataset(const Dataset& ds, const std::filesystem::path& dir) {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw IoFailure("write_tudataset: cannot create " + dir.string());

    const std::string name = ds.name.empty() ? std::string("DS") : ds.name;
    std::ofstream a(dir / (name + "_A.txt"));
    std::ofstream ind(dir / (name + "_graph_indicator.txt"));
    if (!a || !ind) throw IoFailure("write_tudataset: cannot open output files");

    long long base = 0;
    for (std::size_t g = 0; g < ds.graphs.size(); ++g) {
        const Graph& graph = ds.graphs[g];
        for (int v = 0; v < graph.node_count(); ++v)
            ind << (g + 1) << "\n";
        for (const auto& [i, j] : graph.edges()) {
            a << (base + i + 1) << ", " << (base + j + 1) << "\n";
            a << (base + j + 1) << ", " << (base + i + 1) << "\n";
        }
        base += graph.node_count();
    }

    const bool all_labeled =
        !ds.graphs.empty() &&
        std::all_of(ds.graphs.begin(), ds.graphs.end(),
                    [](const Graph& g) { return g.label().has_value(); });
    if (all_labeled) {
        std::ofstream lab(dir / (name + "_graph_labels.txt"));
        if (!lab) throw IoFailure("write_tudataset: cannot open labels file");
        for (const auto& g : ds.graphs) lab << *g.label() << "\n";
        if (!lab.flush()) throw IoFailure("write_tudataset: write failed");
    }
    if (!a.flush() || !ind.flush())
        throw IoFailure("write_tudataset: write failed");
}

// ---------------------------------------------------------------------------
// Plain edge list: header "n <count>", then one "i j" pair per line, 0-based.
// ---------------------------------------------------------------------------

inline Graph read_edge_list(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw MissingFile("read_edge_list: cannot open " + file.string());
    std::string line;
    int lineno = 0;
    long long n = -1;
    std::vector<Edge> edges;
    while (std::getline(in, line)) {
        ++lineno;
        const auto t = detail::trim(line);
        if (t.empty()) continue;
        if (n < 0) {
            if (t.size() < 2 || t[0] != 'n' || (t[1] != ' ' && t[1] != '\t'))
                detail::malformed(file, lineno, "expected header 'n <count>'");
            if (!detail::parse_int(t.substr(1), n) || n < 0)
                detail::malformed(file, lineno, "bad node count");
            continue;
        }
        std::istringstream ls{std::string(t)};
        long long i = 0, j = 0;
        if (!(ls >> i >> j))
            detail::malformed(file, lineno, "expected 'i j'");
        std::string rest;
        if (ls >> rest)
            detail::malformed(file, lineno, "trailing tokens after edge");
        if (i < 0 || i >= n || j < 0 || j >= n)
            detail::malformed(file, lineno, "node id out of range");
        if (i == j)
            detail::malformed(file, lineno, "self-loop rejected");
        edges.emplace_back(static_cast<int>(i), static_cast<int>(j));
    }
    if (n < 0) detail::malformed(file, lineno, "missing header 'n <count>'");
    return Graph(static_cast<int>(n), std::move(edges));
}

inline void write_edge_list(const Graph& g, const std::filesystem::path& file) {
    std::ofstream out(file);
    if (!out) throw IoFailure("write_edge_list: cannot open " + file.string());
    out << "n " << g.node_count() << "\n";
    for (const auto& [i, j] : g.edges()) out << i << " " << j << "\n";
    if (!out.flush()) throw IoFailure("write_edge_list: write failed");
}

// ---------------------------------------------------------------------------
// Canonical JSON interchange:
//   {"name": ..., "graphs": [{"n": 8, "edges": [[0,1], ...], "label": 0}]}
// Edges are stored i < j in lexicographic order; "label" is omitted for
// unlabeled graphs.
// ---------------------------------------------------------------------------

inline Dataset read_json_dataset(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw MissingFile("read_json_dataset: cannot open " + file.string());
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw MalformedFile(file.string() + ": " + e.what());
    }
    Dataset ds;
    try {
        ds.name = j.at("name").get<std::string>();
        for (std::size_t gi = 0; gi < j.at("graphs").size(); ++gi) {
            const auto& jg = j.at("graphs")[gi];
            const int n = jg.at("n").get<int>();
            std::vector<Edge> edges;
            for (const auto& je : jg.at("edges"))
                edges.emplace_back(je.at(0).get<int>(), je.at(1).get<int>());
            std::optional<int> label;
            if (jg.contains("label") && !jg.at("label").is_null()) {
                label = jg.at("label").get<int>();
                if (*label < 0)
                    throw MalformedFile(file.string() + ": graph " +
                                        std::to_string(gi) + ": negative label");
            }
            try {
                ds.graphs.emplace_back(n, std::move(edges), label);
            } catch (const std::invalid_argument& e) {
                throw MalformedFile(file.string() + ": graph " + std::to_string(gi) +
                                    ": " + e.what());
            }
        }
    } catch (const nlohmann::json::exception& e) {
        throw MalformedFile(file.string() + ": " + e.what());
    }
    ds.class_count = detail::class_count_from(ds.graphs);
    return ds;
}

inline void write_json_dataset(const Dataset& ds, const std::filesystem::path& file) {
    nlohmann::json j;
    j["name"] = ds.name;
    j["graphs"] = nlohmann::json::array();
    for (const auto& g : ds.graphs) {
        nlohmann::json jg;
        jg["n"] = g.node_count();
        auto edges = nlohmann::json::array();
        for (const auto& [a, b] : g.edges())
            edges.push_back(nlohmann::json::array({a, b}));
        jg["edges"] = std::move(edges);
        if (g.label().has_value()) jg["label"] = *g.label();
        j["graphs"].push_back(std::move(jg));
    }
    std::ofstream out(file);
    if (!out) throw IoFailure("write_json_dataset: cannot open " + file.string());
    out << j.dump(2) << "\n";
    if (!out.flush()) throw IoFailure("write_json_dataset: write failed");
}

// ---------------------------------------------------------------------------
// Random fixtures and format dispatch
// ---------------------------------------------------------------------------

/// Erdos-Renyi G(n, p), deterministic per seed: pairs (i, j), i < j, are
/// visited in lexicographic order and each consumes one uniform draw.
inline Graph random_graph(int n, double p, std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("random_graph: n must be >= 1");
    if (p < 0.0 || p > 1.0)
        throw std::invalid_argument("random_graph: p must be in [0, 1]");
    RandomStream rng(seed);
    std::vector<Edge> edges;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (rng.bernoulli(p)) edges.emplace_back(i, j);
    return Graph(n, std::move(edges));
}

inline std::optional<DatasetFormat> parse_dataset_format(std::string_view s) {
    if (s == "tud") return DatasetFormat::Tud;
    if (s == "edgelist") return DatasetFormat::EdgeList;
    if (s == "json") return DatasetFormat::Json;
    return std::nullopt;
}

inline std::string to_string(DatasetFormat f) {
    switch (f) {
        case DatasetFormat::Tud: return "tud";
        case DatasetFormat::EdgeList: return "edgelist";
        case DatasetFormat::Json: return "json";
    }
    return "?";
}

/// Read a dataset in any supported format. For the edge-list format the path
/// may be a single file (one graph) or a directory of *.edgelist files taken
/// in filename order.
inline Dataset read_dataset(const std::filesystem::path& path, DatasetFormat fmt) {
    namespace fs = std::filesystem;
    switch (fmt) {
        case DatasetFormat::Tud:
            return read_tudataset(path);
        case DatasetFormat::Json:
            return read_json_dataset(path);
        case DatasetFormat::EdgeList: {
            Dataset ds;
            if (fs::is_directory(path)) {
                ds.name = path.filename().string();
                std::vector<fs::path> files;
                for (const auto& entry : fs::directory_iterator(path))
                    if (entry.path().extension() == ".edgelist")
                        files.push_back(entry.path());
                std::sort(files.begin(), files.end());
                for (const auto& f : files) ds.graphs.push_back(read_edge_list(f));
            } else {
                ds.name = path.stem().string();
                ds.graphs.push_back(read_edge_list(path));
            }
            ds.class_count = detail::class_count_from(ds.graphs);
            return ds;
        }
    }
    throw std::invalid_argument("read_dataset: unknown format");
}

inline void write_dataset(const Dataset& ds, const std::filesystem::path& path,
                          DatasetFormat fmt) {
    namespace fs = std::filesystem;
    switch (fmt) {
        case DatasetFormat::Tud:
            write_tudataset(ds, path);
            return;
        case DatasetFormat::Json:
            write_json_dataset(ds, path);
            return;
        case DatasetFormat::EdgeList: {
            std::error_code ec;
            fs::create_directories(path, ec);
            if (ec) throw IoFailure("write_dataset: cannot create " + path.string());
            char buf[32];
            for (std::size_t i = 0; i < ds.graphs.size(); ++i) {
                std::snprintf(buf, sizeof(buf), "graph_%05zu.edgelist", i);
                write_edge_list(ds.graphs[i], path / buf);
            }
            return;
        }
    }
    throw std::invalid_argument("write_dataset: unknown format");
}

} // namespace dualprism
