// Copyright 2026 The LQAS Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include "lqas/cli.hpp"

#include "lqas/errors.hpp"
#include "lqas/finetune.hpp"
#include "lqas/layered.hpp"
#include "lqas/model_io.hpp"
#include "lqas/rng.hpp"
#include "lqas/store.hpp"
#include "lqas/supercircuit.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <optional>
#include <sstream>
#include <thread>

namespace lqas {

namespace {

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

struct RunConfig {
    std::string dataset;
    std::string data_dir;
    std::string output_dir;
    int k{3};
    std::size_t points{kDefaultPointsPerMesh};
    std::string scale{"isotropic"};
    double val_fraction{0.2};

    std::string policy{"layered"};
    std::size_t generations{20};
    std::size_t candidates{3};
    std::vector<std::string> cycle{"single", "entangling", "prune"};
    double prune_threshold{std::numbers::pi / 10.0};
    double prune_proportion{0.5};
    std::string head{"learnable"};
    double lr_search{0.1};
    double lr_finetune{0.03};
    std::size_t candidate_epochs{5};
    std::size_t batch_size{32};
    double reduction{0.9};
    /// Fine-tuning runs on the full data unless asked otherwise.
    double finetune_reduction{0.0};
    std::size_t population{10};
    std::size_t top_k{5};
    std::size_t super_samples{100};
    std::size_t super_layers{20};
    std::size_t local_candidates{10};
    bool local_fine_tune{true};
    std::string gradient{"adjoint"};

    std::string checkpoint;
    std::string mode{"warm"};
    std::size_t finetune_epochs{10};
    std::size_t scratch_epochs{20};
    std::string split{"all"};

    std::string axis;
    std::vector<std::string> values;

    std::uint64_t seed{0};
    std::size_t threads{1};
    double max_seconds{0.0};
};

class UsageError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

std::size_t worker_count(const RunConfig &cfg) {
    if (cfg.threads > 0) {
        return cfg.threads;
    }
    return std::max(1U, std::thread::hardware_concurrency());
}

SearchConfig search_config(const RunConfig &cfg) {
    SearchConfig sc;
    sc.candidate_epochs = cfg.candidate_epochs;
    sc.batch_size = cfg.batch_size;
    sc.lr_search = cfg.lr_search;
    sc.lr_finetune = cfg.lr_finetune;
    if (cfg.gradient == "adjoint") {
        sc.gradient = GradientMethod::Adjoint;
    } else if (cfg.gradient == "shift") {
        sc.gradient = GradientMethod::ParameterShift;
    } else {
        throw UsageError("unknown gradient method '" + cfg.gradient + "'");
    }
    sc.workers = worker_count(cfg);
    sc.seed = cfg.seed;
    if (cfg.max_seconds > 0.0) {
        sc.deadline = Clock::now() + std::chrono::duration_cast<Clock::duration>(
                                         std::chrono::duration<double>(cfg.max_seconds));
    }
    return sc;
}

std::vector<LayerType> parse_cycle(const std::vector<std::string> &names) {
    std::vector<LayerType> cycle;
    for (const std::string &name : names) {
        if (name == "single" || name == "single-qubit") {
            cycle.push_back(LayerType::SingleQubit);
        } else if (name == "entangling") {
            cycle.push_back(LayerType::Entangling);
        } else if (name == "prune") {
            cycle.push_back(LayerType::Prune);
        } else {
            throw UsageError("unknown layer type '" + name + "' in --cycle");
        }
    }
    if (cycle.empty()) {
        throw UsageError("--cycle must name at least one layer type");
    }
    return cycle;
}

ScaleMode parse_scale(const std::string &name) {
    if (name == "isotropic") {
        return ScaleMode::Isotropic;
    }
    if (name == "anisotropic") {
        return ScaleMode::Anisotropic;
    }
    throw UsageError("unknown scale mode '" + name + "'");
}

void write_text(const fs::path &path, const std::string &text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out << text;
    if (!out) {
        throw DataError("cannot write '" + path.string() + "'");
    }
}

template <typename Fn> void write_csv(const fs::path &path, Fn &&body) {
    std::ostringstream s;
    body(s);
    write_text(path, s.str());
}

void require_output(const RunConfig &cfg) {
    if (cfg.output_dir.empty()) {
        throw UsageError("--out is required");
    }
    fs::create_directories(cfg.output_dir);
}

std::string resolve_dataset(const RunConfig &cfg) {
    if (!cfg.dataset.empty()) {
        return cfg.dataset;
    }
    throw UsageError(std::string("no dataset given; pass --dataset or set ") + kDatasetRootEnv);
}

PrepOptions prep_options(const RunConfig &cfg, int k) {
    PrepOptions options;
    options.source = resolve_dataset(cfg);
    options.grid.k = k;
    options.grid.n_points = cfg.points;
    options.grid.scale_mode = parse_scale(cfg.scale);
    options.val_fraction = cfg.val_fraction;
    options.seed = cfg.seed;
    return options;
}

PrepReport do_prep(const std::string &dir, const PrepOptions &options, std::ostream &out,
                   std::ostream &err) {
    const PrepReport report = prepare_store(dir, options);
    for (const std::string &reason : report.skipped) {
        err << "warning: skipped " << reason << '\n';
    }
    out << "prep: " << report.n_grids << " grids in " << dir
        << (report.cache_hit ? " (cache hit, 0 recomputed)"
                             : " (" + std::to_string(report.recomputed) + " computed)")
        << '\n';
    return report;
}

struct LoadedData {
    EncodedSplit split;
    std::vector<std::string> class_names;
    std::string checksum;
};

LoadedData load_data(const std::string &dir, double reduction, std::uint64_t seed) {
    if (dir.empty()) {
        throw UsageError("--data (a prepared store directory) is required");
    }
    DatasetSplit split = load_store(dir);
    split = apply_reduction(std::move(split), reduction, derive_seed(seed, "reduction"));
    LoadedData data;
    data.class_names = split.class_names;
    data.split = encode_split(split);
    data.checksum = store_checksum(dir);
    return data;
}

LinearHead fresh_head(const RunConfig &cfg, std::size_t n_classes, std::size_t n_qubits) {
    const std::uint64_t head_seed = derive_seed(cfg.seed, "head");
    if (cfg.head == "learnable") {
        return make_learnable_head(n_classes, 3 * n_qubits, head_seed);
    }
    if (cfg.head == "frozen") {
        return make_frozen_head(n_classes, 3 * n_qubits, head_seed);
    }
    throw UsageError("unknown head kind '" + cfg.head + "'");
}

nlohmann::json config_json(const RunConfig &cfg) {
    return {{"dataset", cfg.dataset},
            {"data_dir", cfg.data_dir},
            {"output_dir", cfg.output_dir},
            {"k", cfg.k},
            {"points", cfg.points},
            {"scale", cfg.scale},
            {"val_fraction", cfg.val_fraction},
            {"policy", cfg.policy},
            {"generations", cfg.generations},
            {"candidates", cfg.candidates},
            {"cycle", cfg.cycle},
            {"prune_threshold", format_exact(cfg.prune_threshold)},
            {"prune_proportion", format_exact(cfg.prune_proportion)},
            {"head", cfg.head},
            {"lr_search", format_exact(cfg.lr_search)},
            {"lr_finetune", format_exact(cfg.lr_finetune)},
            {"candidate_epochs", cfg.candidate_epochs},
            {"batch_size", cfg.batch_size},
            {"reduction", format_exact(cfg.reduction)},
            {"finetune_reduction", format_exact(cfg.finetune_reduction)},
            {"population", cfg.population},
            {"top_k", cfg.top_k},
            {"supercircuit_samples", cfg.super_samples},
            {"supercircuit_layers", cfg.super_layers},
            {"local_candidates", cfg.local_candidates},
            {"local_fine_tune", cfg.local_fine_tune},
            {"gradient", cfg.gradient},
            {"checkpoint", cfg.checkpoint},
            {"mode", cfg.mode},
            {"finetune_epochs", cfg.finetune_epochs},
            {"scratch_epochs", cfg.scratch_epochs},
            {"split", cfg.split},
            {"seed", cfg.seed},
            {"threads", cfg.threads},
            {"max_seconds", cfg.max_seconds}};
}

struct SearchSummary {
    Model best;
    double best_val_acc{0.0};
    double test_acc{0.0};
    std::size_t gates_pruned{0};
    SearchRecord record;
};

void write_confusion(const fs::path &path, const ConfusionMatrix &m,
                     const std::vector<std::string> &names) {
    write_csv(path, [&](std::ostream &s) {
        s << "truth";
        for (const auto &n : names) {
            s << ',' << n;
        }
        s << '\n';
        for (std::size_t t = 0; t < m.n_classes(); ++t) {
            s << names[t];
            for (std::size_t p = 0; p < m.n_classes(); ++p) {
                s << ',' << m.at(t, p);
            }
            s << '\n';
        }
    });
}

double accuracy_or_nan(const Model &model, const std::vector<EncodedSample> &samples,
                       std::size_t workers) {
    return samples.empty() ? std::numeric_limits<double>::quiet_NaN()
                           : evaluate(model, samples, workers).accuracy;
}

SearchSummary run_search(const RunConfig &cfg, const std::string &data_dir, const fs::path &out_dir,
                         std::ostream &out) {
    const auto t_start = Clock::now();
    fs::create_directories(out_dir / "checkpoints");
    const LoadedData data = load_data(data_dir, cfg.reduction, cfg.seed);
    const double t_load = seconds_since(t_start);
    const SearchConfig sc = search_config(cfg);
    const std::size_t n_qubits = data.split.n_qubits;
    const std::size_t n_classes = data.split.n_classes;

    const auto checkpoint = [&](std::size_t generation, const Model &best) {
        char name[32];
        std::snprintf(name, sizeof(name), "generation_%03zu.json", generation);
        save_model((out_dir / "checkpoints" / name).string(), best);
    };

    SearchSummary summary;
    std::vector<EpochLogRow> epoch_log;
    bool truncated = false;
    double t_super = 0.0;
    nlohmann::json extra = nlohmann::json::object();
    const auto t_search = Clock::now();
    if (cfg.policy == "layered") {
        LayeredConfig lc;
        lc.cycle = parse_cycle(cfg.cycle);
        lc.generations = cfg.generations;
        lc.candidates_per_generation = cfg.candidates;
        lc.prune_threshold = cfg.prune_threshold;
        lc.prune_proportion = cfg.prune_proportion;
        Model initial{CircuitTape(n_qubits), fresh_head(cfg, n_classes, n_qubits)};
        LayeredResult r = layered_search(data.split, std::move(initial), lc, sc, checkpoint);
        for (const LayeredGeneration &g : r.generations) {
            summary.gates_pruned += g.candidates[g.selected].gates_removed;
        }
        summary.best_val_acc = r.generations.empty()
                                   ? accuracy_or_nan(r.best, data.split.validation, sc.workers)
                                   : r.generations.back().candidates[r.generations.back().selected].final_val_acc;
        summary.best = std::move(r.best);
        summary.record = std::move(r.record);
        epoch_log = std::move(r.epoch_log);
        truncated = r.truncated;
    } else if (cfg.policy == "evolutionary" || cfg.policy == "evolutionary-ft" ||
               cfg.policy == "local") {
        SuperCircuit super = make_supercircuit(n_qubits, cfg.super_layers,
                                               fresh_head(cfg, n_classes, n_qubits),
                                               derive_seed(cfg.seed, "supercircuit"));
        const auto t0 = Clock::now();
        supercircuit_train(super, data.split, cfg.super_samples, sc);
        t_super = seconds_since(t0);
        GenomeSearchResult r;
        if (cfg.policy == "local") {
            LocalSearchConfig local;
            local.iterations = cfg.generations;
            local.candidates_per_step = cfg.local_candidates;
            local.fine_tune = cfg.local_fine_tune;
            r = local_search(super, data.split, local, sc, checkpoint);
        } else {
            EvolutionConfig ev;
            ev.generations = cfg.generations;
            ev.population = cfg.population;
            ev.top_k = cfg.top_k;
            ev.fine_tune = cfg.policy == "evolutionary-ft";
            r = evolutionary_search(super, data.split, ev, sc, checkpoint);
        }
        extra["best_genome"] = r.best_genome.to_string();
        extra["best_genome_hash"] = r.best_genome.hash();
        summary.best_val_acc = r.best_score;
        summary.best = std::move(r.best_model);
        summary.record = std::move(r.record);
        epoch_log = std::move(r.epoch_log);
        truncated = r.truncated;
    } else {
        throw UsageError("unknown policy '" + cfg.policy + "'");
    }
    const double t_policy = seconds_since(t_search) - t_super;
    summary.test_acc = accuracy_or_nan(summary.best, data.split.test, sc.workers);

    write_csv(out_dir / "search_record.csv",
              [&](std::ostream &s) { write_search_record_csv(s, summary.record); });
    write_csv(out_dir / "epoch_log.csv",
              [&](std::ostream &s) { write_epoch_log_csv(s, epoch_log); });
    save_model((out_dir / "best_model.json").string(), summary.best);

    std::size_t parametrised = 0;
    std::size_t prune_layers = 0;
    for (const LayerBoundary &b : summary.best.tape.layer_boundaries()) {
        (b.template_id == kPruneTemplate ? prune_layers : parametrised) += 1;
    }
    nlohmann::json manifest = {
        {"command", "search"},
        {"config", config_json(cfg)},
        {"dataset", {{"store", data_dir}, {"checksum", data.checksum},
                     {"n_train", data.split.train.size()},
                     {"n_validation", data.split.validation.size()},
                     {"n_test", data.split.test.size()}}},
        {"timings_seconds", {{"load", t_load}, {"supercircuit", t_super}, {"search", t_policy}}},
        {"metrics", {{"best_val_acc", summary.best_val_acc}, {"test_acc", summary.test_acc},
                     {"n_quantum_params", summary.best.tape.num_params()},
                     {"n_gates", summary.best.tape.ops().size()},
                     {"gates_pruned", summary.gates_pruned}}},
        {"layers", {{"parametrised", parametrised}, {"prune", prune_layers}}},
        {"truncated", truncated},
        {"artifacts", {{"search_record", "search_record.csv"}, {"epoch_log", "epoch_log.csv"},
                       {"best_model", "best_model.json"}, {"checkpoints", "checkpoints"},
                       {"config", "run_config.toml"}}}};
    manifest.update(extra);
    write_text(out_dir / "run_manifest.json", manifest.dump(2) + "\n");

    out << "search[" << cfg.policy << "]: best val_acc " << csv_number(summary.best_val_acc)
        << ", test_acc " << csv_number(summary.test_acc) << ", "
        << summary.best.tape.num_params() << " quantum params"
        << (truncated ? " (stopped at --max-seconds)" : "") << '\n';
    return summary;
}

Model checkpoint_model(const RunConfig &cfg, const LoadedData &data, bool require_head) {
    if (cfg.checkpoint.empty()) {
        throw UsageError("--checkpoint is required");
    }
    LoadedModel loaded = load_model(cfg.checkpoint);
    if (require_head && !loaded.head) {
        throw DataError("checkpoint '" + cfg.checkpoint + "' has no classifier head");
    }
    if (loaded.tape.n_qubits() != data.split.n_qubits) {
        throw DataError("checkpoint has " + std::to_string(loaded.tape.n_qubits()) +
                        " qubits but the data encodes onto " +
                        std::to_string(data.split.n_qubits));
    }
    LinearHead head = loaded.head ? *loaded.head
                                  : fresh_head(cfg, data.split.n_classes, data.split.n_qubits);
    if (head.n_classes != data.split.n_classes) {
        throw DataError("checkpoint head has " + std::to_string(head.n_classes) +
                        " classes but the data has " + std::to_string(data.split.n_classes));
    }
    return {std::move(loaded.tape), std::move(head)};
}

void write_metrics(const fs::path &dir, const Model &model, const LoadedData &data,
                   const std::vector<std::string> &splits, std::size_t workers, std::ostream &out) {
    std::ostringstream metrics;
    metrics << "split,n_samples,accuracy\n";
    for (const std::string &name : splits) {
        const std::vector<EncodedSample> &samples = name == "train"        ? data.split.train
                                                    : name == "val"        ? data.split.validation
                                                                           : data.split.test;
        if (samples.empty()) {
            metrics << name << ",0,nan\n";
            continue;
        }
        const Evaluation ev = evaluate(model, samples, workers);
        metrics << name << ',' << samples.size() << ',' << csv_number(ev.accuracy) << '\n';
        write_confusion(dir / ("confusion_" + name + ".csv"), ev.confusion, data.class_names);
        out << name << " accuracy " << csv_number(ev.accuracy) << " (" << samples.size()
            << " samples)\n";
    }
    write_text(dir / "metrics.csv", metrics.str());
}

int cmd_prep(const RunConfig &cfg, std::ostream &out, std::ostream &err) {
    require_output(cfg);
    do_prep(cfg.output_dir, prep_options(cfg, cfg.k), out, err);
    return kExitOk;
}

int cmd_search(const RunConfig &cfg, std::ostream &out) {
    require_output(cfg);
    run_search(cfg, cfg.data_dir, cfg.output_dir, out);
    return kExitOk;
}

int cmd_finetune(const RunConfig &cfg, std::ostream &out) {
    require_output(cfg);
    const LoadedData data = load_data(cfg.data_dir, cfg.finetune_reduction, cfg.seed);
    Model model = checkpoint_model(cfg, data, false);
    FinetuneConfig fc;
    fc.mode = parse_finetune_mode(cfg.mode);
    fc.finetune_epochs = cfg.finetune_epochs;
    fc.scratch_epochs = cfg.scratch_epochs;
    const SearchConfig sc = search_config(cfg);
    const auto t0 = Clock::now();
    FinetuneResult r = finetune_or_scratch(std::move(model), data.split, fc, sc);
    const double t_train = seconds_since(t0);
    const fs::path dir(cfg.output_dir);
    save_model((dir / "model.json").string(), r.model);
    std::vector<EpochLogRow> log;
    append_epoch_log(log, 0, 0, r.log);
    write_csv(dir / "epoch_log.csv", [&](std::ostream &s) { write_epoch_log_csv(s, log); });
    write_metrics(dir, r.model, data, {"train", "val", "test"}, sc.workers, out);
    const nlohmann::json manifest = {
        {"command", "finetune"},
        {"config", config_json(cfg)},
        {"dataset", {{"store", cfg.data_dir}, {"checksum", data.checksum}}},
        {"timings_seconds", {{"train", t_train}}},
        {"metrics", {{"train_acc", r.train_acc}, {"val_acc", r.val_acc}, {"test_acc", r.test_acc}}},
        {"artifacts", {{"model", "model.json"}, {"epoch_log", "epoch_log.csv"},
                       {"metrics", "metrics.csv"}, {"config", "run_config.toml"}}}};
    write_text(dir / "run_manifest.json", manifest.dump(2) + "\n");
    return kExitOk;
}

int cmd_eval(const RunConfig &cfg, std::ostream &out) {
    require_output(cfg);
    const LoadedData data = load_data(cfg.data_dir, 0.0, cfg.seed);
    const Model model = checkpoint_model(cfg, data, true);
    std::vector<std::string> splits;
    if (cfg.split == "all") {
        splits = {"train", "val", "test"};
    } else if (cfg.split == "train" || cfg.split == "val" || cfg.split == "test") {
        splits = {cfg.split};
    } else {
        throw UsageError("unknown split '" + cfg.split + "'");
    }
    write_metrics(cfg.output_dir, model, data, splits, worker_count(cfg), out);
    return kExitOk;
}

int cmd_sweep(const RunConfig &base, std::ostream &out, std::ostream &err) {
    require_output(base);
    if (std::all_of(base.values.begin(), base.values.end(), [](const auto &v) { return v.empty(); })) {
        throw UsageError("sweep axis '" + base.axis + "' has no values");
    }
    if (base.axis != "prune_threshold" && base.axis != "k") {
        throw UsageError("unknown sweep axis '" + base.axis + "' (use prune_threshold or k)");
    }
    const fs::path root(base.output_dir);
    std::ostringstream merged;
    std::ostringstream summary;
    merged << "sweep_axis,sweep_value," << kSearchRecordHeader << '\n';
    summary << "sweep_axis,sweep_value,best_val_acc,test_acc,n_quantum_params,n_gates,gates_pruned\n";
    for (const std::string &value : base.values) {
        RunConfig cfg = base;
        std::string data_dir = (root / "data").string();
        try {
            if (cfg.axis == "k") {
                cfg.k = std::stoi(value);
                data_dir = (root / ("data_k" + value)).string();
            } else {
                cfg.prune_threshold = parse_exact(value);
            }
        } catch (const std::exception &) {
            throw UsageError("bad sweep value '" + value + "' for axis " + cfg.axis);
        }
        do_prep(data_dir, prep_options(cfg, cfg.k), out, err);
        const fs::path run_dir = root / (cfg.axis + "_" + value);
        fs::create_directories(run_dir);
        const SearchSummary s = run_search(cfg, data_dir, run_dir, out);
        std::ostringstream record;
        write_search_record_csv(record, s.record);
        std::istringstream lines(record.str());
        std::string line;
        std::getline(lines, line);
        while (std::getline(lines, line)) {
            merged << cfg.axis << ',' << value << ',' << line << '\n';
        }
        summary << cfg.axis << ',' << value << ',' << csv_number(s.best_val_acc) << ','
                << csv_number(s.test_acc) << ',' << s.best.tape.num_params() << ','
                << s.best.tape.ops().size() << ',' << s.gates_pruned << '\n';
    }
    write_text(root / "sweep_record.csv", merged.str());
    write_text(root / "sweep_summary.csv", summary.str());
    out << "sweep: " << base.values.size() << " runs over " << base.axis << '\n';
    return kExitOk;
}

void add_search_options(CLI::App &cmd, RunConfig &cfg) {
    cmd.add_option("--policy", cfg.policy, "layered | evolutionary | evolutionary-ft | local")
        ->check(CLI::IsMember({"layered", "evolutionary", "evolutionary-ft", "local"}))
        ->capture_default_str();
    cmd.add_option("--generations", cfg.generations, "Search generations (local: iterations)")
        ->capture_default_str();
    cmd.add_option("--candidates", cfg.candidates, "Layered candidates per generation")
        ->capture_default_str();
    cmd.add_option("--cycle", cfg.cycle, "Layer type cycle: single, entangling, prune")
        ->delimiter(',')
        ->capture_default_str();
    cmd.add_option("--prune-threshold", cfg.prune_threshold, "Prune gates with |angle| below this")
        ->default_str(format_exact(cfg.prune_threshold));
    cmd.add_option("--prune-proportion", cfg.prune_proportion, "Fraction of eligible gates removed")
        ->capture_default_str();
    cmd.add_option("--head", cfg.head, "learnable | frozen")
        ->check(CLI::IsMember({"learnable", "frozen"}))->capture_default_str();
    cmd.add_option("--lr-search", cfg.lr_search, "Candidate training learning rate")
        ->capture_default_str();
    cmd.add_option("--lr-finetune", cfg.lr_finetune, "Fine-tuning learning rate")
        ->capture_default_str();
    cmd.add_option("--candidate-epochs", cfg.candidate_epochs, "Epochs per layered candidate")
        ->capture_default_str();
    cmd.add_option("--batch-size", cfg.batch_size, "Mini-batch size")->capture_default_str();
    cmd.add_option("--reduction", cfg.reduction, "Fraction of train/val samples dropped")
        ->capture_default_str();
    cmd.add_option("--population", cfg.population, "Evolutionary population size")
        ->capture_default_str();
    cmd.add_option("--top-k", cfg.top_k, "Evolutionary parents kept")->capture_default_str();
    cmd.add_option("--supercircuit-samples", cfg.super_samples,
                   "Architectures sampled to train the super-circuit")
        ->capture_default_str();
    cmd.add_option("--supercircuit-layers", cfg.super_layers, "Super-circuit depth")
        ->capture_default_str();
    cmd.add_option("--local-candidates", cfg.local_candidates, "Neighbours per local-search step")
        ->capture_default_str();
    cmd.add_option("--local-fine-tune", cfg.local_fine_tune,
                   "Fine-tune local-search neighbours one epoch before scoring")
        ->capture_default_str();
    cmd.add_option("--gradient", cfg.gradient, "adjoint | shift")
        ->check(CLI::IsMember({"adjoint", "shift"}))->capture_default_str();
}

void add_prep_options(CLI::App &cmd, RunConfig &cfg) {
    cmd.add_option("--dataset", cfg.dataset,
                   "Mesh directory (<class>/{train,test}/*.off) or synthetic[:shapes3[:n]]")
        ->envname(kDatasetRootEnv);
    cmd.add_option("-k", cfg.k, "Voxel granularity (2^k per axis)")->capture_default_str();
    cmd.add_option("--points", cfg.points, "Points sampled per mesh")->capture_default_str();
    cmd.add_option("--scale", cfg.scale, "isotropic | anisotropic")
        ->check(CLI::IsMember({"isotropic", "anisotropic"}))->capture_default_str();
    cmd.add_option("--val-fraction", cfg.val_fraction, "Validation share of the training files")
        ->capture_default_str();
}

/// Resolved top-level options plus those of the subcommand that ran. Other
/// subcommands bind the same fields, so their sections are left out.
std::string active_config(const CLI::App &app) {
    const std::string prefix = app.get_subcommands().front()->get_name() + ".";
    std::istringstream all(app.config_to_str(true, false));
    std::string kept;
    std::string line;
    while (std::getline(all, line)) {
        const std::string key = line.substr(0, line.find('='));
        if (key.find('.') == std::string::npos || key.rfind(prefix, 0) == 0) {
            kept += line + '\n';
        }
    }
    return kept;
}

} // namespace

int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
    RunConfig cfg;
    CLI::App app{"Layered quantum architecture search for 3D point cloud classification", "lqas"};
    app.set_config("--config", "", "TOML/INI file with option values (flags take precedence)");
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("--seed", cfg.seed, "Root random seed")->capture_default_str();
    app.add_option("--threads", cfg.threads, "Worker threads (0 = all cores)")->capture_default_str();
    app.add_option("--max-seconds", cfg.max_seconds,
                   "Stop searching after this many seconds (0 = no limit)")
        ->capture_default_str();

    CLI::App *prep = app.add_subcommand("prep", "Sample, voxelise and cache density grids");
    add_prep_options(*prep, cfg);
    prep->add_option("--out", cfg.output_dir, "Store directory");

    CLI::App *search = app.add_subcommand("search", "Run an architecture search");
    search->add_option("--data", cfg.data_dir, "Prepared store directory");
    search->add_option("--out", cfg.output_dir, "Run output directory");
    add_search_options(*search, cfg);

    CLI::App *finetune = app.add_subcommand("finetune", "Fine-tune or retrain a checkpoint");
    finetune->add_option("--checkpoint", cfg.checkpoint, "Model or circuit document");
    finetune->add_option("--data", cfg.data_dir, "Prepared store directory");
    finetune->add_option("--out", cfg.output_dir, "Output directory");
    finetune->add_option("--mode", cfg.mode, "warm | scratch")
        ->check(CLI::IsMember({"warm", "scratch"}))->capture_default_str();
    finetune->add_option("--epochs", cfg.finetune_epochs, "Fine-tuning epochs")
        ->capture_default_str();
    finetune->add_option("--scratch-epochs", cfg.scratch_epochs, "Scratch training epochs")
        ->capture_default_str();
    finetune->add_option("--head", cfg.head, "Head for circuit-only checkpoints")
        ->capture_default_str();
    finetune->add_option("--lr-search", cfg.lr_search, "Scratch learning rate")
        ->capture_default_str();
    finetune->add_option("--lr-finetune", cfg.lr_finetune, "Fine-tuning learning rate")
        ->capture_default_str();
    finetune->add_option("--batch-size", cfg.batch_size, "Mini-batch size")->capture_default_str();
    finetune->add_option("--gradient", cfg.gradient, "adjoint | shift")
        ->check(CLI::IsMember({"adjoint", "shift"}))->capture_default_str();
    finetune->add_option("--reduction", cfg.finetune_reduction,
                         "Fraction of train/val samples dropped")
        ->capture_default_str();

    CLI::App *eval = app.add_subcommand("eval", "Evaluate a checkpoint");
    eval->add_option("--checkpoint", cfg.checkpoint, "Model document");
    eval->add_option("--data", cfg.data_dir, "Prepared store directory");
    eval->add_option("--out", cfg.output_dir, "Output directory");
    eval->add_option("--split", cfg.split, "train | val | test | all")
        ->check(CLI::IsMember({"train", "val", "test", "all"}))->capture_default_str();

    CLI::App *sweep = app.add_subcommand("sweep", "Repeat a search across values of one setting");
    add_prep_options(*sweep, cfg);
    sweep->add_option("--out", cfg.output_dir, "Output directory");
    sweep->add_option("--axis", cfg.axis, "prune_threshold | k")->required();
    sweep->add_option("--values", cfg.values, "Comma-separated axis values")->delimiter(',');
    add_search_options(*sweep, cfg);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int rc = app.exit(e, out, err);
        return rc == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (!cfg.output_dir.empty() && !prep->parsed()) {
            fs::create_directories(cfg.output_dir);
            write_text(fs::path(cfg.output_dir) / "run_config.toml", active_config(app));
        }
        if (prep->parsed()) {
            return cmd_prep(cfg, out, err);
        }
        if (search->parsed()) {
            return cmd_search(cfg, out);
        }
        if (finetune->parsed()) {
            return cmd_finetune(cfg, out);
        }
        if (eval->parsed()) {
            return cmd_eval(cfg, out);
        }
        return cmd_sweep(cfg, out, err);
    } catch (const UsageError &e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const NumericalError &e) {
        err << "numerical failure: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const DataError &e) {
        err << "data error: " << e.what() << '\n';
        return kExitData;
    } catch (const fs::filesystem_error &e) {
        err << "data error: " << e.what() << '\n';
        return kExitData;
    } catch (const std::invalid_argument &e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception &e) {
        err << "error: " << e.what() << '\n';
        return kExitData;
    }
}

int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    std::vector<const char *> argv{"lqas"};
    for (const std::string &a : args) {
        argv.push_back(a.c_str());
    }
    return run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
}

} // namespace lqas
