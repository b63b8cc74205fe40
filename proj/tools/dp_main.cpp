// dp: batch spectral graph augmentation and analysis.
//
// Subcommands: augment, analyze, flip-scan, sweep, bench. Every run writes
// its reports plus a manifest.json into --output; identical flags and seed
// reproduce identical report bytes.

#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "dualprism/commands.hpp"
#include "dualprism/version.hpp"

namespace {

const std::map<std::string, dualprism::DatasetFormat> kFormats{
    {"tud", dualprism::DatasetFormat::Tud},
    {"edgelist", dualprism::DatasetFormat::EdgeList},
    {"json", dualprism::DatasetFormat::Json}};

const std::map<std::string, dualprism::FrequencyBand> kBands{
    {"low", dualprism::FrequencyBand::Low},
    {"high", dualprism::FrequencyBand::High}};

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Spectral graph augmentation toolkit"};
    app.set_version_flag("--version", dualprism::kVersion);
    app.require_subcommand(1);

    dualprism::AugmentOptions aug;
    CLI::App* c_aug = app.add_subcommand(
        "augment", "Augment every graph of a dataset and emit per-graph records");
    c_aug->add_option("--input", aug.input, "Input dataset path")->required();
    c_aug->add_option("--output", aug.output, "Output directory")->required();
    c_aug->add_option("--format", aug.format, "Dataset format")
        ->transform(CLI::CheckedTransformer(kFormats, CLI::ignore_case));
    c_aug->add_option("--type", aug.type,
                      "noise | mask | drop-edge | drop-node (drop-* take their "
                      "ratio from --aug-prob)");
    c_aug->add_option("--sigma", aug.sigma, "Noise standard deviation");
    c_aug->add_option("--freq-ratio", aug.freq_ratio,
                      "Fraction of the spectrum eligible for perturbation");
    c_aug->add_option("--aug-prob", aug.aug_prob,
                      "Perturbation probability per eligible eigenvalue");
    c_aug->add_option("--tau", aug.tau, "Binarization threshold");
    c_aug->add_option("--seed", aug.seed, "Base RNG seed (graph i uses seed XOR i)");
    c_aug->add_option("--band", aug.band, "Eligible end of the spectrum")
        ->transform(CLI::CheckedTransformer(kBands, CLI::ignore_case));
    c_aug->add_option("--workers", aug.workers,
                      "Worker threads (0 = all cores; DP_WORKERS overrides)");

    dualprism::AnalyzeOptions ana;
    CLI::App* c_ana = app.add_subcommand(
        "analyze", "Compare property profiles of an original/augmented dataset pair");
    c_ana->add_option("--input,--original", ana.original, "Original dataset")->required();
    c_ana->add_option("--augmented", ana.augmented, "Augmented dataset")->required();
    c_ana->add_option("--output", ana.output, "Output directory")->required();
    c_ana->add_option("--format", ana.format, "Dataset format")
        ->transform(CLI::CheckedTransformer(kFormats, CLI::ignore_case));
    c_ana->add_option("--workers", ana.workers, "Worker threads (0 = all cores)");

    dualprism::FlipScanOptions fs;
    CLI::App* c_fs = app.add_subcommand(
        "flip-scan", "Spectral response of every single-edge addition/deletion");
    c_fs->add_option("--input", fs.input, "Graph file")->required();
    c_fs->add_option("--output", fs.output, "Output directory")->required();
    c_fs->add_option("--format", fs.format,
                     "Input format (edgelist default; tud/json scan the first graph)")
        ->transform(CLI::CheckedTransformer(kFormats, CLI::ignore_case));
    c_fs->add_option("--workers", fs.workers, "Worker threads (0 = all cores)");

    dualprism::SweepOptions sw;
    CLI::App* c_sw = app.add_subcommand(
        "sweep", "Hyperparameter grid with preservation metrics per cell");
    c_sw->add_option("--input", sw.input, "Input dataset path")->required();
    c_sw->add_option("--output", sw.output, "Output directory")->required();
    c_sw->add_option("--format", sw.format, "Dataset format")
        ->transform(CLI::CheckedTransformer(kFormats, CLI::ignore_case));
    c_sw->add_option("--type", sw.type, "noise | mask");
    c_sw->add_option("--band", sw.band, "low | high frequency band")
        ->transform(CLI::CheckedTransformer(kBands, CLI::ignore_case));
    c_sw->add_option("--sigma", sw.sigmas, "Sigma grid values")->delimiter(',');
    c_sw->add_option("--freq-ratio", sw.freq_ratios, "Frequency-ratio grid values")
        ->delimiter(',');
    c_sw->add_option("--aug-prob", sw.aug_probs, "Augmentation-probability grid values")
        ->delimiter(',');
    c_sw->add_option("--tau", sw.tau, "Binarization threshold");
    c_sw->add_option("--repeats", sw.repeats, "Seeds per grid cell");
    c_sw->add_option("--seed", sw.seed, "Base RNG seed");
    c_sw->add_option("--workers", sw.workers, "Worker threads (0 = all cores)");

    dualprism::BenchOptions bench;
    CLI::App* c_bench = app.add_subcommand(
        "bench", "Time one spectral augmentation per graph size");
    c_bench->add_option("--sizes", bench.sizes, "Graph sizes")->delimiter(',');
    c_bench->add_option("--repeats", bench.repeats, "Random graphs per size");
    c_bench->add_option("--p", bench.edge_prob, "Edge probability of the random graphs");
    c_bench->add_option("--seed", bench.seed, "Base RNG seed");
    c_bench->add_option("--output", bench.output, "Output directory")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? dualprism::kExitOk : dualprism::kExitValidation;
    }

    if (c_aug->parsed()) return dualprism::cmd_augment(aug);
    if (c_ana->parsed()) return dualprism::cmd_analyze(ana);
    if (c_fs->parsed()) return dualprism::cmd_flip_scan(fs);
    if (c_sw->parsed()) return dualprism::cmd_sweep(sw);
    if (c_bench->parsed()) return dualprism::cmd_bench(bench);
    return dualprism::kExitValidation;
}
