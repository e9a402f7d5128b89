#include "ordclust/cli.hpp"

#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "ordclust/errors.hpp"
#include "ordclust/fuzzify.hpp"
#include "ordclust/io.hpp"

namespace ordclust::cli {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string command_name(Command c) {
    switch (c) {
        case Command::fuzzify: return "fuzzify";
        case Command::cluster: return "cluster";
        case Command::benchmark: return "benchmark";
    }
    return "unknown";
}

ordered_json config_json(const RunConfig& cfg, std::uint64_t seed) {
    ordered_json j;
    j["command"] = command_name(cfg.command);
    j["input"] = cfg.input.string();
    j["scales"] = cfg.scales.empty() ? ordered_json(nullptr) : ordered_json(cfg.scales.string());
    j["output"] = cfg.output.empty() ? ordered_json(nullptr) : ordered_json(cfg.output.string());
    j["format"] = cfg.format;
    j["method"] = cfg.method;
    j["clusters"] = cfg.clusters;
    j["beta"] = cfg.beta;
    j["epsilon"] = cfg.epsilon;
    j["max_iters"] = cfg.max_iters;
    j["p_floor"] = cfg.p_floor;
    j["neighbor_rule"] = cfg.neighbor_rule;
    j["seed"] = seed;
    if (cfg.ordinalize) {
        ordered_json o;
        o["bins"] = cfg.ordinalize->bins;
        o["strategy"] = cfg.ordinalize->strategy == BinningStrategy::quantile
                            ? "quantile"
                            : "equal-width";
        j["ordinalize"] = o;
    } else {
        j["ordinalize"] = nullptr;
    }
    j["trials"] = cfg.trials;
    j["jobs"] = cfg.jobs;
    return j;
}

ordered_json matrix_json(const Matrix& m) {
    ordered_json rows = ordered_json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        ordered_json row = ordered_json::array();
        for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
        rows.push_back(std::move(row));
    }
    return rows;
}

void write_artifact(const RunConfig& cfg, const std::string& text) {
    if (cfg.output.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(cfg.output, std::ios::binary);
    if (!out) throw DataError("cannot write output file: " + cfg.output.string());
    out << text;
}

std::string json_artifact(const RunConfig& cfg, std::uint64_t seed, ordered_json result) {
    ordered_json doc;
    doc["schema_version"] = std::string(kSchemaVersion);
    doc["config"] = config_json(cfg, seed);
    doc["result"] = std::move(result);
    return doc.dump(2) + "\n";
}

struct LoadedInput {
    NamedDataset named;
    std::vector<std::string> warnings;
};

LoadedInput load_input(const RunConfig& cfg) {
    LoadedInput out;
    if (cfg.ordinalize) {
        NumericCsv numeric = load_numeric_csv(cfg.input);
        OrdinalizeResult ord = ordinalize(numeric.values, *cfg.ordinalize,
                                          std::move(numeric.labels));
        out.named.dataset = std::move(ord.dataset);
        out.named.feature_names = std::move(numeric.feature_names);
        out.warnings = std::move(ord.warnings);
    } else {
        const ScaleMap scales =
            cfg.scales.empty() ? ScaleMap{} : parse_scales_file(cfg.scales);
        out.named = load_ordinal_csv(cfg.input, scales);
    }
    return out;
}

Matrix ranks_as_numbers(const OrdinalDataset& ds) {
    Matrix points(ds.observations(), ds.features());
    for (std::size_t j = 0; j < ds.observations(); ++j)
        for (std::size_t k = 0; k < ds.features(); ++k)
            points(j, k) = static_cast<double>(ds.rank(j, k));
    return points;
}

// ---- fuzzify ---------------------------------------------------------------

int run_fuzzify(const RunConfig& cfg, const NamedDataset& named, std::uint64_t seed) {
    const OrdinalView view(named.dataset);
    const auto tables = build_tables(view);
    const Matrix fuzzified = fuzzify_dataset(view, tables);

    if (cfg.format == "csv") {
        std::ostringstream csv;
        for (std::size_t k = 0; k < named.feature_names.size(); ++k)
            csv << (k ? "," : "") << named.feature_names[k];
        csv << "\n";
        for (std::size_t j = 0; j < fuzzified.rows(); ++j) {
            for (std::size_t k = 0; k < fuzzified.cols(); ++k)
                csv << (k ? "," : "") << format_double(fuzzified(j, k));
            csv << "\n";
        }
        write_artifact(cfg, csv.str());
        return 0;
    }

    ordered_json result;
    ordered_json features = ordered_json::array();
    for (std::size_t k = 0; k < tables.size(); ++k) {
        ordered_json f;
        f["name"] = named.feature_names[k];
        f["levels"] = named.dataset.scales[k].levels;
        f["counts"] = tables[k].counts;
        f["rel_freq"] = tables[k].rel_freq;
        f["avg_freq"] = tables[k].avg_freq;
        features.push_back(std::move(f));
    }
    result["features"] = std::move(features);
    result["fuzzified"] = matrix_json(fuzzified);
    write_artifact(cfg, json_artifact(cfg, seed, std::move(result)));
    return 0;
}

// ---- cluster ---------------------------------------------------------------

int run_cluster(const RunConfig& cfg, const NamedDataset& named, std::uint64_t seed) {
    ordered_json result;
    result["method"] = cfg.method;

    MembershipMatrix memberships;
    if (cfg.method == "fcm") {
        FcmConfig engine;
        engine.clusters = cfg.clusters;
        engine.beta = cfg.beta;
        engine.epsilon = cfg.epsilon;
        engine.max_iters = cfg.max_iters;
        engine.seed = seed;
        FcmResult r = fcm_run(ranks_as_numbers(named.dataset), engine);
        memberships = r.memberships;
        result["memberships"] = matrix_json(r.memberships.matrix());
        result["assignment"] = hard_assignment(r.memberships);
        result["centroids"] = matrix_json(r.centroids);
        result["objective_trace"] = r.objective_trace;
        result["iterations"] = r.iterations;
        result["converged"] = r.converged;
    } else {
        LmfcmConfig engine;
        engine.clusters = cfg.clusters;
        engine.beta = cfg.beta;
        engine.epsilon = cfg.epsilon;
        engine.max_iters = cfg.max_iters;
        engine.seed = seed;
        engine.p_floor = cfg.p_floor;
        engine.neighbor_rule = cfg.neighbor_rule;
        LmfcmResult r = lmfcm_run(OrdinalView(named.dataset), engine);
        memberships = r.state.memberships;
        result["memberships"] = matrix_json(r.state.memberships.matrix());
        result["assignment"] = hard_assignment(r.state.memberships);
        result["modes"] = matrix_json(r.state.modes);
        result["cluster_order"] = r.state.cluster_order;
        result["objective_trace"] = r.objective_trace;
        result["iterations"] = r.iterations;
        result["converged"] = r.converged;
        result["restarts"] = r.restarts;
    }

    if (cfg.format == "csv") {
        const auto assigned = hard_assignment(memberships);
        std::ostringstream csv;
        csv << "observation";
        for (std::size_t i = 0; i < memberships.clusters(); ++i) csv << ",cluster_" << i;
        csv << ",assignment\n";
        for (std::size_t j = 0; j < memberships.observations(); ++j) {
            csv << j;
            for (std::size_t i = 0; i < memberships.clusters(); ++i)
                csv << "," << format_double(memberships(j, i));
            csv << "," << assigned[j] << "\n";
        }
        write_artifact(cfg, csv.str());
        return 0;
    }

    write_artifact(cfg, json_artifact(cfg, seed, std::move(result)));
    return 0;
}

// ---- benchmark -------------------------------------------------------------

int run_benchmark_cmd(const RunConfig& cfg, const NamedDataset& named,
                      std::uint64_t seed, std::ostream& log) {
    BenchmarkOptions opt;
    if (cfg.method == "fcm")
        opt.methods = {Method::fcm_on_ranks};
    else if (cfg.method == "lmfcm")
        opt.methods = {Method::lmfcm};
    else
        opt.methods = {Method::fcm_on_ranks, Method::lmfcm};
    opt.trials = cfg.trials;
    opt.base_seed = seed;
    opt.jobs = cfg.jobs;
    opt.clusters = cfg.clusters;
    opt.beta = cfg.beta;
    opt.epsilon = cfg.epsilon;
    opt.max_iters = cfg.max_iters;
    opt.p_floor = cfg.p_floor;
    opt.neighbor_rule = cfg.neighbor_rule;

    const BenchmarkReport report = run_benchmark(named.dataset, opt);
    for (const MethodReport& mr : report.methods)
        log << method_name(mr.method) << ": " << mr.wall_clock_ms << " ms\n";

    if (cfg.format == "csv") {
        std::ostringstream csv;
        csv << "method,trial,seed,failed,accuracy,iterations,converged\n";
        for (const MethodReport& mr : report.methods) {
            for (std::size_t t = 0; t < mr.trials.size(); ++t) {
                const TrialRecord& rec = mr.trials[t];
                csv << method_name(mr.method) << "," << t << "," << rec.seed << ","
                    << (rec.failed ? 1 : 0) << ","
                    << (rec.failed ? "" : format_double(rec.accuracy)) << ","
                    << rec.iterations << "," << (rec.converged ? 1 : 0) << "\n";
            }
        }
        write_artifact(cfg, csv.str());
        return 0;
    }

    ordered_json result;
    result["base_seed"] = report.base_seed;
    result["trials"] = report.trials;
    ordered_json methods = ordered_json::array();
    for (const MethodReport& mr : report.methods) {
        ordered_json m;
        m["method"] = method_name(mr.method);
        m["accuracy_avg"] = mr.avg;  // NaN (all trials failed) serializes as null
        m["accuracy_min"] = mr.min;
        m["accuracy_max"] = mr.max;
        m["failures"] = mr.failures;
        ordered_json trials = ordered_json::array();
        for (std::size_t t = 0; t < mr.trials.size(); ++t) {
            const TrialRecord& rec = mr.trials[t];
            ordered_json tj;
            tj["trial"] = t;
            tj["seed"] = rec.seed;
            tj["failed"] = rec.failed;
            if (rec.failed) {
                tj["error"] = rec.error;
            } else {
                tj["accuracy"] = rec.accuracy;
                tj["iterations"] = rec.iterations;
                tj["converged"] = rec.converged;
            }
            trials.push_back(std::move(tj));
        }
        m["trials"] = std::move(trials);
        methods.push_back(std::move(m));
    }
    result["methods"] = std::move(methods);
    write_artifact(cfg, json_artifact(cfg, seed, std::move(result)));
    return 0;
}

}  // namespace

OrdinalizationSpec parse_ordinalize_spec(const std::string& text) {
    OrdinalizationSpec spec;
    bool have_m = false;
    for (const std::string& part : [&] {
             std::vector<std::string> parts;
             std::size_t start = 0;
             while (start <= text.size()) {
                 const auto pos = text.find(',', start);
                 parts.push_back(text.substr(start, pos - start));
                 if (pos == std::string::npos) break;
                 start = pos + 1;
             }
             return parts;
         }()) {
        const auto eq = part.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("--ordinalize: expected key=value, got '" + part + "'");
        const std::string key = part.substr(0, eq);
        const std::string value = part.substr(eq + 1);
        if (key == "m") {
            try {
                const long m = std::stol(value);
                if (m < 2) throw std::invalid_argument("");
                spec.bins = {static_cast<std::size_t>(m)};
            } catch (const std::exception&) {
                throw std::invalid_argument("--ordinalize: m must be an integer >= 2");
            }
            have_m = true;
        } else if (key == "strategy") {
            if (value == "quantile")
                spec.strategy = BinningStrategy::quantile;
            else if (value == "equal-width")
                spec.strategy = BinningStrategy::equal_width;
            else
                throw std::invalid_argument("--ordinalize: unknown strategy '" + value + "'");
        } else {
            throw std::invalid_argument("--ordinalize: unknown key '" + key + "'");
        }
    }
    if (!have_m) throw std::invalid_argument("--ordinalize: missing m=<bins>");
    return spec;
}

int run(const RunConfig& cfg, std::ostream& log) {
    try {
        std::uint64_t seed;
        if (cfg.seed) {
            seed = *cfg.seed;
        } else {
            std::random_device rd;
            seed = (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
            log << "seed: " << seed << "\n";
        }

        const LoadedInput input = load_input(cfg);
        for (const std::string& w : input.warnings) log << "warning: " << w << "\n";

        switch (cfg.command) {
            case Command::fuzzify:
                return run_fuzzify(cfg, input.named, seed);
            case Command::cluster:
                return run_cluster(cfg, input.named, seed);
            case Command::benchmark:
                return run_benchmark_cmd(cfg, input.named, seed, log);
        }
        return 1;
    } catch (const DataError& e) {
        log << "data error: " << e.what() << "\n";
        return 2;
    } catch (const EngineError& e) {
        log << "engine error: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        log << "usage error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        log << "error: " << e.what() << "\n";
        return 3;
    }
}

int main_entry(int argc, const char* const* argv) {
    CLI::App app{"Fuzzy clustering of ordinal-scale data"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::string ordinalize_text;
    std::uint64_t seed_value = 0;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--input", cfg.input, "Input CSV (header row; optional final 'label' column)")
            ->required();
        sub->add_option("--scales", cfg.scales,
                        "Scales file: one 'feature: level1 < level2 < ...' per line");
        sub->add_option("--ordinalize", ordinalize_text,
                        "Treat input as numeric and bin it, e.g. m=5 or m=5,strategy=equal-width");
        sub->add_option("--output", cfg.output, "Output path (default: stdout)");
        sub->add_option("--format", cfg.format, "Output format")
            ->check(CLI::IsMember({"json", "csv"}))
            ->capture_default_str();
        sub->add_option("--seed", seed_value,
                        "RNG seed; omitted -> randomly chosen, printed and embedded");
    };
    auto add_engine = [&](CLI::App* sub) {
        sub->add_option("--clusters", cfg.clusters, "Number of clusters")->capture_default_str();
        sub->add_option("--beta", cfg.beta, "Fuzzifier (> 1)")->capture_default_str();
        sub->add_option("--epsilon", cfg.epsilon, "Convergence tolerance")->capture_default_str();
        sub->add_option("--max-iters", cfg.max_iters, "Iteration cap")->capture_default_str();
        sub->add_option("--p-floor", cfg.p_floor, "Probability floor (lmfcm)")->capture_default_str();
        sub->add_option("--neighbor-rule", cfg.neighbor_rule,
                        "Terminal two-nearest-cluster reassignment (lmfcm)")
            ->capture_default_str();
    };

    CLI::App* fuzzify_cmd = app.add_subcommand(
        "fuzzify", "Emit frequency tables and the fuzzified data matrix");
    add_common(fuzzify_cmd);

    CLI::App* cluster_cmd = app.add_subcommand("cluster", "Cluster one dataset");
    add_common(cluster_cmd);
    add_engine(cluster_cmd);
    cluster_cmd->add_option("--method", cfg.method, "Engine: fcm | lmfcm")
        ->check(CLI::IsMember({"fcm", "lmfcm"}))
        ->capture_default_str();

    std::string bench_method = "both";
    CLI::App* bench_cmd = app.add_subcommand(
        "benchmark", "Multi-trial accuracy benchmark against the label column");
    add_common(bench_cmd);
    add_engine(bench_cmd);
    bench_cmd->add_option("--method", bench_method, "fcm | lmfcm | both")
        ->check(CLI::IsMember({"fcm", "lmfcm", "both"}))
        ->capture_default_str();
    bench_cmd->add_option("--trials", cfg.trials, "Seeded trials per method")
        ->capture_default_str();
    bench_cmd->add_option("--jobs", cfg.jobs, "Worker threads for trials")
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    CLI::App* parsed = fuzzify_cmd;
    if (fuzzify_cmd->parsed()) cfg.command = Command::fuzzify;
    if (cluster_cmd->parsed()) {
        cfg.command = Command::cluster;
        parsed = cluster_cmd;
    }
    if (bench_cmd->parsed()) {
        cfg.command = Command::benchmark;
        cfg.method = bench_method;
        parsed = bench_cmd;
    }
    if (parsed->count("--seed") > 0) cfg.seed = seed_value;
    if (!ordinalize_text.empty()) {
        try {
            cfg.ordinalize = parse_ordinalize_spec(ordinalize_text);
        } catch (const std::invalid_argument& e) {
            std::cerr << "usage error: " << e.what() << "\n";
            return 1;
        }
    }

    return run(cfg, std::cerr);
}

}  // namespace ordclust::cli
