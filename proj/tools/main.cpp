// streamcomm command-line front end: synth, run, graph, report, baseline, eval.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "streamcomm/dispersion.hpp"
#include "streamcomm/engine.hpp"
#include "streamcomm/eval.hpp"
#include "streamcomm/graph.hpp"
#include "streamcomm/ingest.hpp"
#include "streamcomm/io.hpp"
#include "streamcomm/similarity.hpp"
#include "streamcomm/synth.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace streamcomm;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitIo = 2;
constexpr int kExitConfig = 64;
constexpr int kExitData = 65;

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    EngineConfig engine;
    WindowSpec window;
    PreprocessConfig pre;
    FilterConfig filt;
    double edge_threshold = 0.0;
    double theta_match = 0.3;
    double size_band = 0.2;
    int fade_after = 2;
    std::size_t top_k_tokens = 10;
};

bool parse_bool(const std::string& v) {
    if (v == "true" || v == "1" || v == "on") return true;
    if (v == "false" || v == "0" || v == "off") return false;
    throw std::invalid_argument("not a boolean: " + v);
}

// key=value config file; '#' starts a comment.
void apply_config_file(RunConfig& cfg, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file: " + path);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        auto strip = [](std::string s) {
            auto a = s.find_first_not_of(" \t\r");
            auto b = s.find_last_not_of(" \t\r");
            return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
        };
        std::string trimmed = strip(line);
        if (trimmed.empty()) continue;
        auto eq = trimmed.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config line " + std::to_string(line_no) +
                                        ": expected key=value");
        std::string key = strip(trimmed.substr(0, eq));
        std::string val = strip(trimmed.substr(eq + 1));
        if (key == "seed") cfg.engine.seed = std::stoull(val);
        else if (key == "max_clusters") cfg.engine.max_clusters = std::stoi(val);
        else if (key == "tau") cfg.engine.tau = std::stod(val);
        else if (key == "alpha") cfg.engine.weights.alpha = std::stod(val);
        else if (key == "capacity") cfg.engine.capacity = std::stoi(val);
        else if (key == "seating_mode") {
            if (parse_bool(val)) cfg.engine.capacity = kSeatingCapacity;
        }
        else if (key == "order_slack") cfg.engine.order_slack = std::stoll(val);
        else if (key == "cont_sim_union")
            cfg.engine.variant = parse_bool(val) ? ContSimVariant::UnionLiteral
                                                 : ContSimVariant::Intersection;
        else if (key == "window_seconds") cfg.window.width = std::stoll(val);
        else if (key == "window_origin") cfg.window.origin = std::stoll(val);
        else if (key == "min_token_length") cfg.pre.min_token_length = std::stoi(val);
        else if (key == "strip_urls") cfg.pre.strip_urls = parse_bool(val);
        else if (key == "stopwords_file") {
            std::ifstream sw(val);
            if (!sw) throw IoError("cannot open stopwords file: " + val);
            cfg.pre.stopwords = load_stopwords(sw);
        }
        else if (key == "exclude_verified") cfg.filt.exclude_verified = parse_bool(val);
        else if (key == "min_hashtags") cfg.filt.min_hashtags = std::stoi(val);
        else if (key == "min_mentions") cfg.filt.min_mentions = std::stoi(val);
        else if (key == "edge_threshold") cfg.edge_threshold = std::stod(val);
        else if (key == "theta_match") cfg.theta_match = std::stod(val);
        else if (key == "size_band") cfg.size_band = std::stod(val);
        else if (key == "fade_after") cfg.fade_after = std::stoi(val);
        else if (key == "top_k_tokens") cfg.top_k_tokens = std::stoul(val);
        else throw std::invalid_argument("unknown config key: " + key);
    }
}

// Shared flags attached to every processing subcommand; values recorded
// only when the flag appears, so they win over the config file.
struct SharedFlags {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::int64_t> window_seconds;
    std::optional<int> max_clusters;
    std::optional<double> tau;
    std::optional<double> alpha;
    std::optional<int> capacity;
    std::string output_dir = ".";

    void attach(CLI::App* cmd) {
        cmd->add_option("--config", config_path, "key=value configuration file");
        cmd->add_option("--seed", seed, "RNG seed");
        cmd->add_option("--window-seconds", window_seconds, "epoch window width");
        cmd->add_option("--max-clusters", max_clusters, "cluster bound M");
        cmd->add_option("--tau", tau, "seeding similarity threshold");
        cmd->add_option("--alpha", alpha, "content/metadata mixing weight");
        cmd->add_option("--capacity", capacity, "per-cluster member cap");
        cmd->add_option("--output-dir", output_dir, "output directory");
    }

    RunConfig resolve() const {
        RunConfig cfg;
        if (!config_path.empty()) apply_config_file(cfg, config_path);
        if (seed) cfg.engine.seed = *seed;
        if (window_seconds) cfg.window.width = *window_seconds;
        if (max_clusters) cfg.engine.max_clusters = *max_clusters;
        if (tau) cfg.engine.tau = *tau;
        if (alpha) cfg.engine.weights.alpha = *alpha;
        if (capacity) cfg.engine.capacity = *capacity;
        if (cfg.window.width <= 0)
            throw std::invalid_argument("window width must be positive");
        cfg.engine.validate();
        return cfg;
    }
};

std::ifstream open_input(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open input file: " + path);
    return in;
}

std::ofstream open_output(const fs::path& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open output file: " + path.string());
    return out;
}

std::vector<Document> read_documents(std::istream& in, const RunConfig& cfg) {
    std::vector<Document> docs;
    ingest_stream(in, cfg.pre, cfg.filt, cfg.window,
                  [&](Document d) { docs.push_back(std::move(d)); });
    return docs;
}

int cmd_run(const SharedFlags& flags, const std::string& input) {
    RunConfig cfg = flags.resolve();
    fs::create_directories(flags.output_dir);
    std::ofstream out = open_output(fs::path(flags.output_dir) / "snapshots.jsonl");

    ClusterEngine engine(cfg.engine);
    auto sink = [&](Document d) {
        engine.push(std::move(d));
        for (const auto& s : engine.take_snapshots())
            out << snapshot_to_line(s, cfg.top_k_tokens) << '\n';
    };
    IngestStats stats;
    if (input == "-") {
        stats = ingest_stream(std::cin, cfg.pre, cfg.filt, cfg.window, sink);
    } else {
        std::ifstream in = open_input(input);
        stats = ingest_stream(in, cfg.pre, cfg.filt, cfg.window, sink);
    }
    for (const auto& s : engine.finish())
        out << snapshot_to_line(s, cfg.top_k_tokens) << '\n';
    std::cerr << "read=" << stats.read << " filtered=" << stats.filtered_out
              << " clustered=" << stats.emitted << '\n';
    return kExitOk;
}

int cmd_graph(const SharedFlags& flags, const std::string& input,
              std::optional<double> edge_threshold, const std::string& format_str) {
    RunConfig cfg = flags.resolve();
    if (edge_threshold) cfg.edge_threshold = *edge_threshold;
    GraphFormat format;
    std::string ext;
    if (format_str == "edgelist") {
        format = GraphFormat::EdgeList;
        ext = ".tsv";
    } else if (format_str == "dot") {
        format = GraphFormat::Dot;
        ext = ".dot";
    } else {
        throw std::invalid_argument("unknown graph format: " + format_str);
    }

    std::ifstream in = open_input(input);
    std::vector<Document> docs = read_documents(in, cfg);
    std::map<std::int64_t, std::vector<Document>> by_epoch;
    for (auto& d : docs) by_epoch[d.epoch].push_back(std::move(d));

    fs::create_directories(flags.output_dir);
    for (const auto& [epoch, epoch_docs] : by_epoch) {
        WeightedGraph g = build_graph(epoch_docs, cfg.edge_threshold,
                                      cfg.engine.weights, cfg.engine.variant);
        std::ofstream out = open_output(fs::path(flags.output_dir) /
                                        ("epoch_" + std::to_string(epoch) + ext));
        out << export_graph(g, format);
    }
    return kExitOk;
}

int cmd_report(const SharedFlags& flags, const std::string& snapshots_path,
               std::optional<double> theta_match) {
    RunConfig cfg = flags.resolve();
    if (theta_match) cfg.theta_match = *theta_match;

    std::ifstream in = open_input(snapshots_path);
    std::vector<EpochSnapshot> snapshots = read_snapshots(in);

    TimelineTracker tracker(cfg.theta_match, cfg.size_band, cfg.fade_after);
    for (const auto& s : snapshots) tracker.observe(s);

    fs::create_directories(flags.output_dir);
    std::ofstream out = open_output(fs::path(flags.output_dir) / "events.jsonl");
    for (const auto& e : tracker.timeline().events)
        out << event_to_json(e).dump() << '\n';
    return kExitOk;
}

int cmd_baseline(const SharedFlags& flags, const std::string& input, int k,
                 int max_iter, const std::string& truth_path,
                 std::optional<double> edge_threshold) {
    RunConfig cfg = flags.resolve();
    if (edge_threshold) cfg.edge_threshold = *edge_threshold;

    std::ifstream in = open_input(input);
    std::vector<Document> docs = read_documents(in, cfg);
    if (docs.empty()) throw std::domain_error("baseline: no documents");

    TfidfModel model = tfidf(docs);
    BatchResult result = batch_cluster(model, k, max_iter, cfg.engine.seed);

    std::vector<int> labels(model.vectors.size());
    for (std::size_t i = 0; i < model.doc_ids.size(); ++i)
        labels[i] = result.partition.assignment.at(model.doc_ids[i]);

    json report;
    report["k"] = k;
    report["iterations"] = result.iterations;
    report["converged"] = result.converged;
    report["objective"] = result.objective;
    if (k >= 2) {
        report["silhouette"] = silhouette(labels, [&](std::size_t i, std::size_t j) {
            return cosine_distance(model.vectors[i], model.vectors[j]);
        });
    } else {
        report["silhouette"] = nullptr;
    }

    // modularity of the label partition over the document similarity graph
    WeightedGraph doc_graph;
    for (const auto& d : docs) doc_graph.add_node(d.id);
    for (std::size_t i = 0; i < docs.size(); ++i)
        for (std::size_t j = i + 1; j < docs.size(); ++j) {
            double w = pair_sim(docs[i], docs[j], cfg.engine.weights,
                                cfg.engine.variant);
            if (w >= cfg.edge_threshold && w > 0.0)
                doc_graph.add_edge(docs[i].id, docs[j].id, w);
        }
    if (!doc_graph.edges().empty()) {
        std::map<std::string, int> node_labels;
        for (const auto& [id, label] : result.partition.assignment)
            node_labels[id] = label;
        report["modularity"] = modularity(doc_graph, node_labels);
    } else {
        report["modularity"] = nullptr;
    }

    if (!truth_path.empty()) {
        std::ifstream tin = open_input(truth_path);
        Partition truth;
        for (const auto& t : read_truth(tin)) {
            if (result.partition.assignment.count(t.id))
                truth.assignment[t.id] = t.topic;
        }
        report["purity"] = purity(result.partition, truth);
    } else {
        report["purity"] = nullptr;
    }

    fs::create_directories(flags.output_dir);
    std::ofstream out = open_output(fs::path(flags.output_dir) / "baseline.json");
    out << report.dump(2) << '\n';
    std::cout << report.dump(2) << '\n';
    return kExitOk;
}

int cmd_synth(const SharedFlags& flags, const ScenarioConfig& scenario) {
    ScenarioConfig cfg = scenario;
    if (flags.seed) cfg.seed = *flags.seed;
    if (flags.window_seconds) cfg.window.width = *flags.window_seconds;
    if (flags.capacity) cfg.capacity = *flags.capacity;

    LabeledStream stream = generate_stream(cfg);
    fs::create_directories(flags.output_dir);
    std::ofstream records = open_output(fs::path(flags.output_dir) / "records.jsonl");
    std::ofstream truth = open_output(fs::path(flags.output_dir) / "truth.jsonl");
    for (const auto& r : stream.records) records << record_to_line(r) << '\n';
    for (const auto& t : stream.truth) truth << truth_to_json(t).dump() << '\n';
    std::cerr << "generated " << stream.records.size() << " records\n";
    return kExitOk;
}

int cmd_eval(const SharedFlags& flags, const std::string& snapshots_path,
             const std::string& truth_path) {
    std::ifstream sin = open_input(snapshots_path);
    std::vector<EpochSnapshot> snapshots = read_snapshots(sin);
    std::ifstream tin = open_input(truth_path);
    std::map<std::string, int> topic_of;
    for (const auto& t : read_truth(tin)) topic_of[t.id] = t.topic;

    Partition all, all_truth;
    int next_label = 0;
    json per_epoch = json::array();
    for (const auto& s : snapshots) {
        Partition epoch_part, epoch_truth;
        for (const auto& c : s.clusters) {
            int label = next_label++;
            for (const auto& d : c.members) {
                auto it = topic_of.find(d.id);
                if (it == topic_of.end())
                    throw std::domain_error("document missing from truth: " + d.id);
                epoch_part.assignment[d.id] = label;
                epoch_truth.assignment[d.id] = it->second;
                all.assignment[d.id] = label;
                all_truth.assignment[d.id] = it->second;
            }
        }
        json je;
        je["epoch"] = s.epoch;
        je["items"] = epoch_part.assignment.size();
        je["purity"] = epoch_part.assignment.empty()
                           ? json(nullptr)
                           : json(purity(epoch_part, epoch_truth));
        per_epoch.push_back(std::move(je));
    }

    json report;
    report["epochs"] = std::move(per_epoch);
    report["items"] = all.assignment.size();
    report["purity"] =
        all.assignment.empty() ? json(nullptr) : json(purity(all, all_truth));

    fs::create_directories(flags.output_dir);
    std::ofstream out = open_output(fs::path(flags.output_dir) / "eval.json");
    out << report.dump(2) << '\n';
    std::cout << report.dump(2) << '\n';
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Temporal community stream clustering"};
    app.require_subcommand(1);

    SharedFlags run_flags, graph_flags, report_flags, baseline_flags, synth_flags,
        eval_flags;

    auto* run = app.add_subcommand("run", "cluster a record stream into epochs");
    std::string run_input;
    run->add_option("--input", run_input, "JSON Lines input path, or - for stdin")
        ->required();
    run_flags.attach(run);

    auto* graph = app.add_subcommand("graph", "export per-epoch interaction graphs");
    std::string graph_input, graph_format = "edgelist";
    std::optional<double> graph_threshold;
    graph->add_option("--input", graph_input, "JSON Lines input path")->required();
    graph->add_option("--edge-threshold", graph_threshold, "minimum edge weight");
    graph->add_option("--format", graph_format, "edgelist or dot");
    graph_flags.attach(graph);

    auto* report = app.add_subcommand("report", "lifecycle events across epochs");
    std::string report_snapshots;
    std::optional<double> report_theta;
    report->add_option("--snapshots", report_snapshots, "snapshots.jsonl path")
        ->required();
    report->add_option("--theta-match", report_theta, "match Jaccard threshold");
    report_flags.attach(report);

    auto* baseline = app.add_subcommand("baseline", "batch tf-idf clustering");
    std::string baseline_input, baseline_truth;
    int baseline_k = 4, baseline_iter = 300;
    std::optional<double> baseline_threshold;
    baseline->add_option("--input", baseline_input, "JSON Lines input path")
        ->required();
    baseline->add_option("--k", baseline_k, "number of clusters");
    baseline->add_option("--max-iter", baseline_iter, "iteration cap");
    baseline->add_option("--truth", baseline_truth, "truth sidecar for purity");
    baseline->add_option("--edge-threshold", baseline_threshold,
                         "minimum edge weight for modularity");
    baseline_flags.attach(baseline);

    auto* synth = app.add_subcommand("synth", "generate a planted stream");
    ScenarioConfig scenario;
    std::optional<int> synth_docs;
    synth->add_option("--topics", scenario.topics, "planted topic count");
    synth->add_option("--guests", scenario.guests, "user pool size");
    synth->add_option("--epochs", scenario.epochs, "number of epochs");
    synth->add_option("--vocab", scenario.vocab_per_topic, "tokens per topic vocabulary");
    synth->add_option("--overlap", scenario.vocab_overlap, "cross-topic vocabulary overlap");
    synth->add_option("--tokens-per-doc", scenario.tokens_per_doc, "tokens drawn per record");
    synth->add_option("--rate", scenario.arrival_rate, "Poisson arrivals per topic per epoch");
    synth->add_option("--docs-per-epoch", synth_docs, "fixed records per epoch");
    synth->add_option("--hashtag-prob", scenario.hashtag_prob, "per-record hashtag probability");
    synth->add_option("--mention-prob", scenario.mention_prob, "per-record mention probability");
    synth_flags.attach(synth);

    auto* eval = app.add_subcommand("eval", "score snapshots against planted truth");
    std::string eval_snapshots, eval_truth;
    eval->add_option("--snapshots", eval_snapshots, "snapshots.jsonl path")->required();
    eval->add_option("--truth", eval_truth, "truth sidecar path")->required();
    eval_flags.attach(eval);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }

    try {
        if (run->parsed()) return cmd_run(run_flags, run_input);
        if (graph->parsed())
            return cmd_graph(graph_flags, graph_input, graph_threshold, graph_format);
        if (report->parsed())
            return cmd_report(report_flags, report_snapshots, report_theta);
        if (baseline->parsed())
            return cmd_baseline(baseline_flags, baseline_input, baseline_k,
                                baseline_iter, baseline_truth, baseline_threshold);
        if (synth->parsed()) {
            if (synth_docs) scenario.docs_per_epoch = *synth_docs;
            return cmd_synth(synth_flags, scenario);
        }
        if (eval->parsed()) return cmd_eval(eval_flags, eval_snapshots, eval_truth);
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitIo;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "data error: " << e.what() << '\n';
        return kExitData;
    }
    return kExitConfig;
}
