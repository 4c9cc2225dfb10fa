// lonlab: command-line front end for the local-optima-network laboratory.
//
// Subcommands: gen, build-lon, annotate, metrics, compare, correlate, layout,
// export, oracle, pipeline. Every random choice flows from one root seed, so a
// pipeline manifest reproduces all outputs byte-for-byte.

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "lonlab/graybox.hpp"
#include "lonlab/layout.hpp"
#include "lonlab/lon.hpp"
#include "lonlab/metrics.hpp"
#include "lonlab/problems.hpp"
#include "lonlab/sampler.hpp"
#include "lonlab/stats.hpp"

namespace fs = std::filesystem;
using namespace lonlab;

namespace {

constexpr const char* kToolVersion = "lonlab 1.0.0";

[[noreturn]] void fail(const std::string& message) {
    throw std::runtime_error(message);
}

std::string pad3(int i) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%03d", i);
    return buf;
}

std::string stem_of(const std::string& path) { return fs::path(path).stem().string(); }

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) fail("cannot open '" + path + "' for writing");
    return out;
}

std::ifstream open_in(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail("cannot open '" + path + "' for reading");
    return in;
}

// ---------------------------------------------------------------------------
// gen

struct GenArgs {
    std::string problem;
    int n = 0;
    int k = 3;
    int m = 0;
    int overlap = 0;
    bool cyclic = false;
    std::string variant = "conforming";
    double cr = 4.27;
    std::uint64_t seed = 0;
    int count = 1;
    std::string out = ".";
    std::string format = "kbounded";  // or dimacs, for max3sat
};

AdditiveProblem generate_one(const GenArgs& args, int index) {
    const std::uint64_t instance_seed = derive_seed(args.seed, index, 0);
    if (args.problem == "trap" || args.problem == "bimodal") {
        const TrapKind kind = args.problem == "trap" ? TrapKind::standard : TrapKind::bimodal;
        if (args.m <= 0) fail("--m is required for trap families");
        if (args.overlap > 0) {
            const OverlapVariant variant = args.variant == "conflicting"
                                               ? OverlapVariant::conflicting
                                               : OverlapVariant::conforming;
            if (args.variant != "conforming" && args.variant != "conflicting") {
                fail("--variant must be conforming or conflicting");
            }
            return build_overlapping_traps(args.m, args.k, args.overlap, kind, args.cyclic,
                                           variant);
        }
        return build_concatenated_traps(args.m, args.k, kind);
    }
    if (args.problem == "nk") {
        if (args.n <= 0) fail("--n is required for nk");
        return generate_nk(args.n, args.k, instance_seed);
    }
    if (args.problem == "max3sat") {
        if (args.n <= 0) fail("--n is required for max3sat");
        return generate_max3sat(args.n, args.cr, instance_seed);
    }
    fail("unknown problem '" + args.problem + "' (trap, bimodal, nk, max3sat)");
}

int cmd_gen(const GenArgs& args) {
    fs::create_directories(args.out);
    const bool deterministic = args.problem == "trap" || args.problem == "bimodal";
    std::vector<std::string> files;
    for (int i = 0; i < args.count; ++i) {
        const auto problem = generate_one(args, i);
        const bool dimacs = args.format == "dimacs";
        if (dimacs && args.problem != "max3sat") fail("--format dimacs needs --problem max3sat");
        const std::string name =
            args.problem + "_" + pad3(i) + (dimacs ? ".cnf" : ".txt");
        const std::string path = (fs::path(args.out) / name).string();
        auto out = open_out(path);
        if (dimacs) {
            write_dimacs(out, problem);
        } else {
            write_instance(out, problem);
        }
        files.push_back(name);
        std::cout << "wrote " << path << " (n=" << problem.n()
                  << ", subfunctions=" << problem.subfunction_count() << ")\n";
    }
    auto manifest = open_out((fs::path(args.out) / "gen_manifest.txt").string());
    manifest << "version=" << kToolVersion << "\n";
    manifest << "command=gen\n";
    manifest << "problem=" << args.problem << "\n";
    if (args.n > 0) manifest << "n=" << args.n << "\n";
    manifest << "k=" << args.k << "\n";
    if (args.m > 0) manifest << "m=" << args.m << "\n";
    if (args.overlap > 0) {
        manifest << "overlap=" << args.overlap << "\n";
        manifest << "cyclic=" << (args.cyclic ? 1 : 0) << "\n";
        manifest << "variant=" << args.variant << "\n";
    }
    if (args.problem == "max3sat") manifest << "cr=" << args.cr << "\n";
    if (!deterministic) manifest << "seed=" << args.seed << "\n";
    manifest << "count=" << args.count << "\n";
    for (std::size_t i = 0; i < files.size(); ++i) {
        manifest << "file." << i << "=" << files[i] << "\n";
    }
    return 0;
}

// ---------------------------------------------------------------------------
// build-lon / annotate / metrics / layout / export

struct BuildArgs {
    std::string instance;
    std::string alg = "trad";
    int runs = 30;
    int stagnation = 30;
    int perturb = 3;
    int alpha = 0;
    std::uint64_t seed = 0;
    int jobs = 1;
    std::string out;
};

int cmd_build_lon(const BuildArgs& args) {
    const auto problem = load_instance(args.instance);
    RunConfig config;
    config.algorithm = algorithm_from_string(args.alg);
    config.runs = args.runs;
    config.stagnation_cycles = args.stagnation;
    config.perturbation_strength = args.perturb;
    config.alpha = args.alpha;
    config.seed = args.seed;
    const auto lon = sample_lon(problem, config, 0, args.jobs);
    save_lon(args.out, lon);
    std::cout << "wrote " << args.out << " (" << lon.nodes().size() << " nodes, "
              << lon.edges().size() << " edges)\n";
    return 0;
}

int cmd_annotate(const std::string& instance, const std::string& lon_path,
                 const std::string& out) {
    const auto problem = load_instance(instance);
    const auto lon = annotate_edges(load_lon(lon_path), problem);
    save_lon(out, lon);
    std::cout << "wrote " << out << " (" << lon.edges().size() << " annotated edges)\n";
    return 0;
}

int cmd_metrics(const std::string& instance, const std::string& lon_path,
                const std::string& label, const std::string& alg, const std::string& out) {
    const auto problem = load_instance(instance);
    const auto lon = annotate_edges(load_lon(lon_path), problem);
    const auto metrics = metric_vector(lon, problem);
    auto file = open_out(out);
    write_metrics_csv_header(file);
    write_metrics_csv_row(file, label.empty() ? stem_of(instance) : label, alg, metrics);
    std::cout << "wrote " << out << "\n";
    return 0;
}

int cmd_layout(const std::string& lon_path, const std::string& out) {
    const auto lon = load_lon(lon_path);
    auto file = open_out(out);
    write_layout(file, lon, make_layout(lon));
    std::cout << "wrote " << out << " (" << lon.nodes().size() << " nodes)\n";
    return 0;
}

int cmd_export(const std::string& lon_path, const std::string& format, const std::string& out) {
    const auto lon = load_lon(lon_path);
    auto file = open_out(out);
    export_lon(file, lon, make_layout(lon), export_format_from_string(format));
    std::cout << "wrote " << out << "\n";
    return 0;
}

// ---------------------------------------------------------------------------
// metrics-CSV helpers shared by compare/correlate

struct MetricsTable {
    std::vector<std::string> columns;                 // metric column names
    std::vector<std::string> instances, algorithms;   // per row
    std::vector<std::vector<double>> rows;            // NaN marks missing
};

MetricsTable read_metrics_csv(const std::string& path) {
    auto in = open_in(path);
    std::string line;
    if (!std::getline(in, line)) fail("empty metrics file '" + path + "'");
    MetricsTable table;
    std::vector<std::string> header;
    {
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) header.push_back(cell);
    }
    if (header.size() < 3 || header[0] != "instance" || header[1] != "algorithm") {
        fail("'" + path + "' is not a metrics CSV");
    }
    table.columns.assign(header.begin() + 2, header.end());
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        cells.resize(header.size());  // trailing empty cells
        table.instances.push_back(cells[0]);
        table.algorithms.push_back(cells[1]);
        std::vector<double> row;
        for (std::size_t i = 2; i < header.size(); ++i) {
            row.push_back(cells[i].empty() ? std::nan("") : std::stod(cells[i]));
        }
        table.rows.push_back(std::move(row));
    }
    return table;
}

int metric_column(const MetricsTable& table, std::string name) {
    // Accept the per-edge field names (mean_changed ...) as aliases for the
    // CSV column names (mean_changes ...).
    if (name.size() > 7 && name.compare(name.size() - 7, 7, "changed") == 0) {
        name.replace(name.size() - 7, 7, "changes");
    }
    for (std::size_t i = 0; i < table.columns.size(); ++i) {
        if (table.columns[i] == name) return static_cast<int>(i);
    }
    fail("metric '" + name + "' not found in the metrics CSV");
}

std::vector<std::string> algorithm_order(const MetricsTable& table) {
    std::vector<std::string> order;
    for (const auto& alg : table.algorithms) {
        if (std::find(order.begin(), order.end(), alg) == order.end()) order.push_back(alg);
    }
    return order;
}

int cmd_compare(const std::string& metrics_path, const std::string& metric,
                const std::string& out) {
    const auto table = read_metrics_csv(metrics_path);
    const int column = metric_column(table, metric);
    const auto algorithms = algorithm_order(table);
    if (algorithms.size() < 2) fail("compare needs at least two algorithms in the metrics CSV");
    std::map<std::string, SampleSet> samples;
    for (const auto& alg : algorithms) samples[alg].label = alg;
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        const double v = table.rows[r][column];
        if (!std::isnan(v)) samples[table.algorithms[r]].values.push_back(v);
    }
    auto file = open_out(out);
    write_comparison_csv_header(file);
    for (std::size_t i = 0; i < algorithms.size(); ++i) {
        for (std::size_t j = i + 1; j < algorithms.size(); ++j) {
            const auto& a = samples[algorithms[i]];
            const auto& b = samples[algorithms[j]];
            if (a.values.empty() || b.values.empty()) continue;
            const auto result = mann_whitney(a, b);
            write_comparison_csv_row(file, table.columns[column], a, b, result);
            std::cout << table.columns[column] << " " << a.label << " vs " << b.label
                      << ": U=" << result.u << " p=" << result.p << " " << result.stars << "\n";
        }
    }
    std::cout << "wrote " << out << "\n";
    return 0;
}

int cmd_correlate(const std::string& metrics_path, const std::string& method_name,
                  const std::string& alg_filter, const std::string& out) {
    const auto table = read_metrics_csv(metrics_path);
    CorrelationMethod method;
    if (method_name == "kendall") {
        method = CorrelationMethod::kendall;
    } else if (method_name == "spearman") {
        method = CorrelationMethod::spearman;
    } else {
        fail("--method must be kendall or spearman");
    }
    std::map<std::string, std::vector<double>> vectors;
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        if (!alg_filter.empty() && table.algorithms[r] != alg_filter) continue;
        for (std::size_t c = 0; c < table.columns.size(); ++c) {
            vectors[table.columns[c]].push_back(table.rows[r][c]);
        }
    }
    if (vectors.empty()) fail("no rows selected for correlation");
    const auto matrix = correlation_matrix(vectors, method);
    auto file = open_out(out);
    write_correlation_csv(file, matrix);
    std::cout << "wrote " << out << " (" << matrix.names.size() << " metrics)\n";
    return 0;
}

// ---------------------------------------------------------------------------
// oracle

int cmd_oracle(const std::string& instance, const std::string& lon_path) {
    const auto problem = load_instance(instance);
    if (problem.n() > 18) fail("oracle refuses instances with n > 18");
    const auto oracle = enumerate_optima(problem);
    std::cout << "instance " << instance << ": n=" << problem.n() << ", "
              << oracle.local_optima.size() << " local optima, " << oracle.global_optima.size()
              << " global optima, global fitness " << oracle.global_fitness << "\n";
    if (lon_path.empty()) return 0;

    const auto lon = annotate_edges(load_lon(lon_path), problem);
    bool all_pass = true;
    auto report = [&all_pass](const std::string& name, bool ok, const std::string& detail) {
        std::cout << name << ": " << (ok ? "PASS" : "FAIL");
        if (!detail.empty()) std::cout << " (" << detail << ")";
        std::cout << "\n";
        all_pass = all_pass && ok;
    };

    std::set<Bits> optima_set(oracle.local_optima.begin(), oracle.local_optima.end());
    int bad_nodes = 0;
    for (const auto& node : lon.nodes()) {
        if (!optima_set.count(node.bits)) ++bad_nodes;
    }
    report("all nodes are true local optima", bad_nodes == 0,
           std::to_string(lon.nodes().size() - bad_nodes) + "/" +
               std::to_string(lon.nodes().size()));

    int bad_edges = 0;
    for (const auto& edge : lon.edges()) {
        const double delta =
            lon.nodes()[edge.dst].fitness - lon.nodes()[edge.src].fitness;
        if (delta < -problem.fitness_eps()) ++bad_edges;
    }
    report("all edges are monotonic", bad_edges == 0, std::to_string(bad_edges) + " violations");

    int bad_annotations = 0;
    for (const auto& edge : lon.edges()) {
        const auto& src = lon.nodes()[edge.src];
        const auto& dst = lon.nodes()[edge.dst];
        double signed_delta = 0.0;
        int changed = 0, positive = 0, negative = 0;
        for (std::size_t s = 0; s < src.sub_values.size(); ++s) {
            const double d = dst.sub_values[s] - src.sub_values[s];
            if (std::abs(d) > 1e-9) {
                ++changed;
                (d > 0 ? positive : negative) += 1;
                signed_delta += d;
            }
        }
        const bool ok = edge.changed == changed && edge.positive == positive &&
                        edge.negative == negative &&
                        edge.positive + edge.negative == edge.changed &&
                        std::abs(signed_delta - (dst.fitness - src.fitness)) <= 1e-9;
        if (!ok) ++bad_annotations;
    }
    report("annotations satisfy positive+negative=changed and signed-delta=fitness-delta",
           bad_annotations == 0, std::to_string(bad_annotations) + " violations");

    int globals_found = 0;
    for (const auto& node : lon.nodes()) globals_found += node.is_global ? 1 : 0;
    std::cout << globals_found << "/" << oracle.global_optima.size()
              << " global optima present in the LON\n";
    int mislabeled = 0;
    for (const auto& node : lon.nodes()) {
        const bool truly_global =
            std::abs(node.fitness - oracle.global_fitness) <= problem.fitness_eps();
        if (truly_global != node.is_global) ++mislabeled;
    }
    report("global flags match the exhaustive oracle", mislabeled == 0,
           std::to_string(mislabeled) + " mislabeled");

    return all_pass ? 0 : 1;
}

// ---------------------------------------------------------------------------
// pipeline

struct PipelineArgs {
    std::vector<std::string> instances;
    std::string alg = "all";
    int runs = 30;
    int stagnation = 30;
    int perturb = 3;
    int alpha = 0;
    std::uint64_t seed = 0;
    int jobs = 1;
    std::string format = "graphml";
    std::string corr = "kendall";
    std::string manifest;  // rerun source
    std::string out = "pipeline_out";
};

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::stringstream ss(s);
    std::string part;
    while (std::getline(ss, part, sep)) parts.push_back(part);
    return parts;
}

PipelineArgs read_manifest(const std::string& path, const PipelineArgs& base) {
    PipelineArgs args = base;
    args.instances.clear();
    auto in = open_in(path);
    std::string line;
    std::map<int, std::string> instance_keys;
    while (std::getline(in, line)) {
        const auto eq = line.find('=');
        if (line.empty() || line[0] == '#' || eq == std::string::npos) continue;
        const std::string key = line.substr(0, eq);
        const std::string value = line.substr(eq + 1);
        if (key == "command" && value != "pipeline") fail("manifest is not a pipeline manifest");
        if (key == "algs") args.alg = value;
        if (key == "runs") args.runs = std::stoi(value);
        if (key == "stagnation") args.stagnation = std::stoi(value);
        if (key == "perturb") args.perturb = std::stoi(value);
        if (key == "alpha") args.alpha = std::stoi(value);
        if (key == "seed") args.seed = std::stoull(value);
        if (key == "format") args.format = value;
        if (key == "corr") args.corr = value;
        if (key.rfind("instance.", 0) == 0) {
            instance_keys[std::stoi(key.substr(9))] = value;
        }
    }
    for (const auto& [index, file] : instance_keys) args.instances.push_back(file);
    if (args.instances.empty()) fail("manifest lists no instances");
    return args;
}

int cmd_pipeline(PipelineArgs args) {
    if (!args.manifest.empty()) args = read_manifest(args.manifest, args);
    if (args.instances.empty()) fail("pipeline needs --instance files or --manifest");
    std::vector<std::string> algorithms;
    if (args.alg == "all") {
        algorithms = {"trad", "px", "vigp"};
    } else {
        algorithms = split(args.alg, ',');
        for (const auto& alg : algorithms) algorithm_from_string(alg);  // validate
    }
    fs::create_directories(args.out);

    auto manifest = open_out((fs::path(args.out) / "manifest.txt").string());
    manifest << "version=" << kToolVersion << "\n";
    manifest << "command=pipeline\n";
    {
        std::string algs;
        for (const auto& alg : algorithms) algs += (algs.empty() ? "" : ",") + alg;
        manifest << "algs=" << algs << "\n";
    }
    manifest << "runs=" << args.runs << "\n";
    manifest << "stagnation=" << args.stagnation << "\n";
    manifest << "perturb=" << args.perturb << "\n";
    manifest << "alpha=" << args.alpha << "\n";
    manifest << "seed=" << args.seed << "\n";
    manifest << "format=" << args.format << "\n";
    manifest << "corr=" << args.corr << "\n";
    for (std::size_t i = 0; i < args.instances.size(); ++i) {
        manifest << "instance." << i << "=" << args.instances[i] << "\n";
    }
    for (std::size_t i = 0; i < args.instances.size(); ++i) {
        for (int run = 0; run < args.runs; ++run) {
            manifest << "run_seed." << i << "." << run << "="
                     << derive_seed(args.seed, i, run) << "\n";
        }
    }

    const ExportFormat export_format = export_format_from_string(args.format);
    auto metrics_file = open_out((fs::path(args.out) / "metrics.csv").string());
    write_metrics_csv_header(metrics_file);

    struct Cell {
        std::string alg;
        std::string instance_label;
        MetricVector metrics;
    };
    std::vector<Cell> cells;
    int failures = 0;
    for (std::size_t i = 0; i < args.instances.size(); ++i) {
        AdditiveProblem problem = load_instance(args.instances[i]);
        const std::string label = stem_of(args.instances[i]);
        for (const auto& alg : algorithms) {
            try {
                RunConfig config;
                config.algorithm = algorithm_from_string(alg);
                config.runs = args.runs;
                config.stagnation_cycles = args.stagnation;
                config.perturbation_strength = args.perturb;
                config.alpha = args.alpha;
                config.seed = args.seed;
                const auto lon =
                    annotate_edges(sample_lon(problem, config, i, args.jobs), problem);
                const std::string stem = label + "_" + alg;
                save_lon((fs::path(args.out) / (stem + ".lon")).string(), lon);
                const auto layout = make_layout(lon);
                {
                    auto file = open_out((fs::path(args.out) / (stem + "_layout.tsv")).string());
                    write_layout(file, lon, layout);
                }
                {
                    const std::string ext = args.format == "graphml" ? ".graphml"
                                            : args.format == "dot"   ? ".dot"
                                                                     : ".tsv";
                    auto file = open_out((fs::path(args.out) / (stem + ext)).string());
                    export_lon(file, lon, layout, export_format);
                }
                Cell cell;
                cell.alg = alg;
                cell.instance_label = label;
                cell.metrics = metric_vector(lon, problem);
                write_metrics_csv_row(metrics_file, label, alg, cell.metrics);
                cells.push_back(std::move(cell));
            } catch (const std::exception& e) {
                std::cerr << "cell (" << label << ", " << alg << ") failed: " << e.what()
                          << "\n";
                ++failures;
            }
        }
        std::cout << "instance " << label << " done (" << algorithms.size()
                  << " algorithms)\n";
    }
    metrics_file.close();

    // Pairwise algorithm comparisons on every metric column.
    if (algorithms.size() >= 2) {
        auto file = open_out((fs::path(args.out) / "comparisons.csv").string());
        write_comparison_csv_header(file);
        const auto& names = MetricVector::names();
        for (std::size_t column = 0; column < names.size(); ++column) {
            std::map<std::string, SampleSet> samples;
            for (const auto& alg : algorithms) samples[alg].label = alg;
            for (const auto& cell : cells) {
                const auto value = cell.metrics.values()[column];
                if (value) samples[cell.alg].values.push_back(*value);
            }
            for (std::size_t i = 0; i < algorithms.size(); ++i) {
                for (std::size_t j = i + 1; j < algorithms.size(); ++j) {
                    const auto& a = samples[algorithms[i]];
                    const auto& b = samples[algorithms[j]];
                    if (a.values.empty() || b.values.empty()) continue;
                    write_comparison_csv_row(file, names[column], a, b, mann_whitney(a, b));
                }
            }
        }
    }

    // Per-algorithm metric-metric correlation matrices across instances.
    const CorrelationMethod method = args.corr == "spearman" ? CorrelationMethod::spearman
                                                             : CorrelationMethod::kendall;
    for (const auto& alg : algorithms) {
        std::map<std::string, std::vector<double>> vectors;
        const auto& names = MetricVector::names();
        for (const auto& cell : cells) {
            if (cell.alg != alg) continue;
            const auto values = cell.metrics.values();
            for (std::size_t c = 0; c < names.size(); ++c) {
                vectors[names[c]].push_back(values[c] ? *values[c] : std::nan(""));
            }
        }
        if (vectors.empty()) continue;
        auto file =
            open_out((fs::path(args.out) / ("correlations_" + alg + ".csv")).string());
        write_correlation_csv(file, correlation_matrix(vectors, method));
    }

    std::cout << "pipeline finished: " << cells.size() << " cells ok, " << failures
              << " failed, outputs in " << args.out << "\n";
    return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{std::string(kToolVersion) +
                 " - local optima networks for k-bounded pseudo-boolean problems"};
    app.require_subcommand(1);

    GenArgs gen;
    auto* gen_cmd = app.add_subcommand("gen", "generate problem instances");
    gen_cmd->add_option("--problem", gen.problem, "trap, bimodal, nk, max3sat")->required();
    gen_cmd->add_option("--n", gen.n, "variable count (nk, max3sat)");
    gen_cmd->add_option("--k", gen.k, "trap order / NK neighbourhood size");
    gen_cmd->add_option("--m", gen.m, "subfunction count (trap families)");
    gen_cmd->add_option("--overlap", gen.overlap, "shared variables between neighbours");
    gen_cmd->add_flag("--cyclic", gen.cyclic, "wrap the last subfunction around");
    gen_cmd->add_option("--variant", gen.variant, "conforming or conflicting overlap");
    gen_cmd->add_option("--cr", gen.cr, "clause-to-variable ratio (max3sat)");
    gen_cmd->add_option("--seed", gen.seed, "root seed");
    gen_cmd->add_option("--count", gen.count, "number of instances");
    gen_cmd->add_option("--out", gen.out, "output directory");
    gen_cmd->add_option("--format", gen.format, "kbounded or dimacs (max3sat only)");

    BuildArgs build;
    auto* build_cmd = app.add_subcommand("build-lon", "sample a local optima network");
    build_cmd->add_option("--instance", build.instance, "instance file")->required();
    build_cmd->add_option("--alg", build.alg, "trad, px, vigp");
    build_cmd->add_option("--runs", build.runs, "independent runs");
    build_cmd->add_option("--stagnation", build.stagnation, "stagnation cycle budget");
    build_cmd->add_option("--perturb", build.perturb, "perturbation strength");
    build_cmd->add_option("--alpha", build.alpha, "VIG perturbation neighbour cap (0: arity)");
    build_cmd->add_option("--seed", build.seed, "root seed");
    build_cmd->add_option("--jobs", build.jobs, "worker threads");
    build_cmd->add_option("--out", build.out, "LON output file")->required();

    std::string in_instance, in_lon, in_out, in_label, in_alg = "trad";
    std::string in_metric, in_method = "kendall", in_format = "graphml", in_filter;
    auto* annotate_cmd = app.add_subcommand("annotate", "annotate LON edges");
    annotate_cmd->add_option("--instance", in_instance, "instance file")->required();
    annotate_cmd->add_option("--lon", in_lon, "LON file")->required();
    annotate_cmd->add_option("--out", in_out, "annotated LON output")->required();

    auto* metrics_cmd = app.add_subcommand("metrics", "compute the metric vector of a LON");
    metrics_cmd->add_option("--instance", in_instance, "instance file")->required();
    metrics_cmd->add_option("--lon", in_lon, "LON file")->required();
    metrics_cmd->add_option("--label", in_label, "instance label for the CSV");
    metrics_cmd->add_option("--alg", in_alg, "algorithm label for the CSV");
    metrics_cmd->add_option("--out", in_out, "metrics CSV output")->required();

    auto* compare_cmd =
        app.add_subcommand("compare", "Mann-Whitney tests between algorithms");
    compare_cmd->add_option("--metrics", in_lon, "metrics CSV input")->required();
    compare_cmd->add_option("--metric", in_metric, "metric column to compare")->required();
    compare_cmd->add_option("--out", in_out, "comparison CSV output")->required();

    auto* correlate_cmd = app.add_subcommand("correlate", "metric-metric rank correlations");
    correlate_cmd->add_option("--metrics", in_lon, "metrics CSV input")->required();
    correlate_cmd->add_option("--method", in_method, "kendall or spearman");
    correlate_cmd->add_option("--alg", in_filter, "restrict to one algorithm");
    correlate_cmd->add_option("--out", in_out, "correlation CSV output")->required();

    auto* layout_cmd = app.add_subcommand("layout", "1-D MDS layout of a LON");
    layout_cmd->add_option("--lon", in_lon, "LON file")->required();
    layout_cmd->add_option("--out", in_out, "layout TSV output")->required();

    auto* export_cmd = app.add_subcommand("export", "export a LON as tsv, dot, or graphml");
    export_cmd->add_option("--lon", in_lon, "LON file")->required();
    export_cmd->add_option("--format", in_format, "tsv, dot, graphml");
    export_cmd->add_option("--out", in_out, "output file")->required();

    auto* oracle_cmd =
        app.add_subcommand("oracle", "exhaustive verification of a LON (n <= 18)");
    oracle_cmd->add_option("--instance", in_instance, "instance file")->required();
    oracle_cmd->add_option("--lon", in_lon, "LON file to verify (optional)");

    PipelineArgs pipeline;
    auto* pipeline_cmd =
        app.add_subcommand("pipeline", "run sampling, metrics, statistics, and exports");
    pipeline_cmd->add_option("--instance", pipeline.instances, "instance files");
    pipeline_cmd->add_option("--alg", pipeline.alg, "algorithm list or 'all'");
    pipeline_cmd->add_option("--runs", pipeline.runs, "independent runs per cell");
    pipeline_cmd->add_option("--stagnation", pipeline.stagnation, "stagnation cycle budget");
    pipeline_cmd->add_option("--perturb", pipeline.perturb, "perturbation strength");
    pipeline_cmd->add_option("--alpha", pipeline.alpha, "VIG perturbation neighbour cap");
    pipeline_cmd->add_option("--seed", pipeline.seed, "root seed");
    pipeline_cmd->add_option("--jobs", pipeline.jobs, "worker threads");
    pipeline_cmd->add_option("--format", pipeline.format, "graph export format");
    pipeline_cmd->add_option("--corr", pipeline.corr, "correlation method");
    pipeline_cmd->add_option("--manifest", pipeline.manifest, "rerun from a manifest");
    pipeline_cmd->add_option("--out", pipeline.out, "output directory");

    CLI11_PARSE(app, argc, argv);

    try {
        if (app.got_subcommand(gen_cmd)) return cmd_gen(gen);
        if (app.got_subcommand(build_cmd)) return cmd_build_lon(build);
        if (app.got_subcommand(annotate_cmd)) return cmd_annotate(in_instance, in_lon, in_out);
        if (app.got_subcommand(metrics_cmd)) {
            return cmd_metrics(in_instance, in_lon, in_label, in_alg, in_out);
        }
        if (app.got_subcommand(compare_cmd)) return cmd_compare(in_lon, in_metric, in_out);
        if (app.got_subcommand(correlate_cmd)) {
            return cmd_correlate(in_lon, in_method, in_filter, in_out);
        }
        if (app.got_subcommand(layout_cmd)) return cmd_layout(in_lon, in_out);
        if (app.got_subcommand(export_cmd)) return cmd_export(in_lon, in_format, in_out);
        if (app.got_subcommand(oracle_cmd)) return cmd_oracle(in_instance, in_lon);
        if (app.got_subcommand(pipeline_cmd)) return cmd_pipeline(pipeline);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
