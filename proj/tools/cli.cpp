#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "topicweave/bench.hpp"
#include "topicweave/community.hpp"
#include "topicweave/dataset.hpp"
#include "topicweave/errors.hpp"
#include "topicweave/eval.hpp"
#include "topicweave/io.hpp"
#include "topicweave/segmenter.hpp"
#include "topicweave/text.hpp"
#include "topicweave/version.hpp"
#include "topicweave/word_graph.hpp"

namespace topicweave::cli {
namespace {

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

std::string fixed6(double v) {
  if (!std::isfinite(v)) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');)
    if (!item.empty()) out.push_back(item);
  if (out.empty()) throw InputError("empty list '" + text + "'");
  return out;
}

int parse_int(const std::string& s) {
  std::size_t used = 0;
  int v = 0;
  try {
    v = std::stoi(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != s.size() || s.empty()) throw InputError("not an integer: '" + s + "'");
  return v;
}

std::vector<int> int_list(const std::string& text) {
  std::vector<int> out;
  for (const auto& item : split_list(text)) out.push_back(parse_int(item));
  return out;
}

// "1-40", "5,10,20" or a mix such as "1-5,10,20".
std::vector<int> omega_list(const std::string& text) {
  std::set<int> values;
  for (const auto& item : split_list(text)) {
    auto dash = item.find('-', 1);
    if (dash == std::string::npos) {
      values.insert(parse_int(item));
      continue;
    }
    const int lo = parse_int(item.substr(0, dash));
    const int hi = parse_int(item.substr(dash + 1));
    if (lo > hi) throw InputError("empty omega range '" + item + "'");
    for (int w = lo; w <= hi; ++w) values.insert(w);
  }
  for (int w : values)
    if (w < 1) throw InputError("omega must be >= 1");
  return {values.begin(), values.end()};
}

struct TextFlags {
  std::string lexicon;
  std::string stopwords;
  std::string unknown = "keep";
  std::string stopword_stage = "surface";

  void add_to(CLI::App& app) {
    app.add_option("--lexicon", lexicon, "surface<TAB>lemma<TAB>N|V|O table");
    app.add_option("--stopwords", stopwords, "one stopword per line");
    app.add_option("--unknown", unknown, "words missing from the lexicon: keep (as nouns) or drop")
        ->check(CLI::IsMember({"keep", "drop"}))
        ->capture_default_str();
    app.add_option("--stopword-stage", stopword_stage, "match stopwords on surface or lemma")
        ->check(CLI::IsMember({"surface", "lemma"}))
        ->capture_default_str();
  }

  Lexicon load() const {
    if (!lexicon.empty())
      return Lexicon::load(lexicon, stopwords.empty() ? std::nullopt
                                                      : std::optional<fs::path>(stopwords));
    Lexicon lx;
    if (!stopwords.empty()) lx.load_stopwords(read_text_file(stopwords));
    return lx;
  }

  AnnotateOptions options() const {
    AnnotateOptions o;
    o.unknown = unknown == "drop" ? UnknownWordPolicy::Drop : UnknownWordPolicy::KeepAsNoun;
    o.stopword_stage = stopword_stage == "lemma" ? StopwordStage::Lemma : StopwordStage::Surface;
    return o;
  }

  void echo(Json& config) const {
    config["lexicon"] = lexicon;
    config["stopwords"] = stopwords;
    config["unknown"] = unknown;
    config["stopword_stage"] = stopword_stage;
  }
};

struct GraphFlags {
  std::string model = "pb";
  int omega = 20;
  double alpha = 0.05;

  void add_to(CLI::App& app) {
    app.add_option("--model", model, "ec, pb or apb")
        ->check(CLI::IsMember({"ec", "pb", "apb"}, CLI::ignore_case))
        ->capture_default_str();
    app.add_option("--omega", omega, "co-occurrence window")->capture_default_str();
    app.add_option("--alpha", alpha, "APB significance level")->capture_default_str();
  }

  GraphBuildConfig config() const {
    GraphBuildConfig c{parse_model(model), omega, alpha};
    c.validate();
    return c;
  }

  void echo(Json& config) const {
    config["model"] = to_lower(model);
    config["omega"] = omega;
    config["alpha"] = alpha;
  }
};

Json envelope(const std::string& command, Json config) {
  Json j;
  j["tool"] = "topicweave";
  j["version"] = kVersion;
  j["command"] = command;
  j["config"] = std::move(config);
  return j;
}

void write_json(const fs::path& path, const Json& j) { write_file_atomic(path, j.dump(2) + "\n"); }

RawDocument load_document(const std::string& input) {
  const fs::path path(input);
  return split_paragraphs(read_text_file(path), path.stem().string());
}

// ---- build ---------------------------------------------------------------

struct BuildCommand {
  std::string input;
  std::string out;
  bool graphml_flag = false;
  TextFlags text;
  GraphFlags graph;

  void add_to(CLI::App& app) {
    app.add_option("--input", input, "plain-text document, paragraphs split by blank lines")
        ->required();
    app.add_option("--out", out, "output directory")->required();
    app.add_flag("--graphml", graphml_flag, "also write graph.graphml");
    text.add_to(app);
    graph.add_to(app);
  }

  int run(std::ostream& os) const {
    const auto config = graph.config();
    const auto doc = annotate(load_document(input), text.load(), text.options());
    const auto wg = build_graph(doc, config);
    const auto partition = detect_communities(wg.graph);

    const fs::path dir(out);
    write_file_atomic(dir / "edges.tsv", edge_list_tsv(wg));
    write_file_atomic(dir / "nodes.tsv", node_table_tsv(wg));
    std::vector<std::pair<std::string, int>> rows;
    for (int v = 0; v < wg.num_nodes(); ++v) rows.emplace_back(wg.lemmas[v], partition.membership[v]);
    std::sort(rows.begin(), rows.end());
    std::string tsv = "lemma\tcommunity\n";
    for (const auto& [lemma, c] : rows) tsv += lemma + "\t" + std::to_string(c) + "\n";
    write_file_atomic(dir / "partition.tsv", tsv);
    if (graphml_flag) write_file_atomic(dir / "graph.graphml", graphml(wg));

    const std::optional<double> q =
        wg.num_edges() > 0 ? std::optional(modularity(wg.graph, partition)) : std::nullopt;
    Json config_echo;
    config_echo["input"] = input;
    text.echo(config_echo);
    graph.echo(config_echo);
    auto meta = envelope("build", config_echo);
    meta["doc_id"] = doc.doc_id;
    meta["n_nodes"] = wg.num_nodes();
    meta["n_edges"] = wg.num_edges();
    meta["n_communities"] = partition.n_communities;
    meta["q"] = q ? Json(*q) : Json(nullptr);
    write_json(dir / "build.meta.json", meta);

    os << "n_nodes=" << wg.num_nodes() << "\n"
       << "n_edges=" << wg.num_edges() << "\n"
       << "Q=" << (q ? fixed6(*q) : std::string("undefined")) << "\n";
    return kExitOk;
  }
};

// ---- segment -------------------------------------------------------------

std::vector<int> load_gold(const std::string& path) {
  try {
    auto j = nlohmann::json::parse(read_text_file(path));
    if (j.is_object()) j = j.at("gold");
    return j.get<std::vector<int>>();
  } catch (const nlohmann::json::exception& e) {
    throw InputError(path + ": " + e.what());
  }
}

struct SegmentCommand {
  std::string input;
  std::string out;
  std::string gold;
  std::string empty = "inherit";
  int n_s = 2;
  TextFlags text;
  GraphFlags graph;

  void add_to(CLI::App& app) {
    app.add_option("--input", input, "plain-text document, paragraphs split by blank lines")
        ->required();
    app.add_option("--n-s", n_s, "expected number of subjects")->capture_default_str();
    app.add_option("--out", out, "JSON report path (stdout when omitted)");
    app.add_option("--gold", gold, "JSON gold labels (array, or object with a \"gold\" array)");
    app.add_option("--empty", empty, "paragraphs without graph words: inherit or unlabeled")
        ->check(CLI::IsMember({"inherit", "unlabeled"}))
        ->capture_default_str();
    text.add_to(app);
    graph.add_to(app);
  }

  int run(std::ostream& os) const {
    if (n_s < 1) throw InputError("--n-s must be >= 1");
    const auto config = graph.config();
    const auto doc = annotate(load_document(input), text.load(), text.options());
    SegmentOptions options;
    options.empty_paragraphs =
        empty == "unlabeled" ? EmptyParagraphPolicy::Unlabeled : EmptyParagraphPolicy::Inherit;
    const auto r = segment(doc, config, n_s, options);

    Json config_echo;
    config_echo["input"] = input;
    config_echo["n_s"] = n_s;
    config_echo["gold"] = gold;
    config_echo["empty"] = empty;
    text.echo(config_echo);
    graph.echo(config_echo);
    auto report = envelope("segment", config_echo);
    report["doc_id"] = r.doc_id;
    report["n_paragraphs"] = r.subjects.size();
    report["n_subjects"] = r.final_partition.n_communities;
    report["under_segmented"] = r.under_segmented;
    report["initial_communities"] = r.initial_communities;

    Json subjects = Json::array();
    for (int s : r.subjects) subjects.push_back(s == kUnlabeled ? Json(nullptr) : Json(s));
    report["subjects"] = subjects;

    Json paragraphs = Json::array();
    for (std::size_t p = 0; p < r.subjects.size(); ++p) {
      std::vector<std::pair<int, int>> ranked;  // (-count, community)
      const auto& row = r.label_counts.counts[p];
      for (std::size_t c = 0; c < row.size(); ++c)
        if (row[c] > 0) ranked.emplace_back(-row[c], static_cast<int>(c));
      std::sort(ranked.begin(), ranked.end());
      Json top = Json::array();
      for (std::size_t i = 0; i < ranked.size() && i < 3; ++i)
        top.push_back({{"subject", ranked[i].second}, {"count", -ranked[i].first}});
      Json entry;
      entry["index"] = p;
      entry["subject"] = subjects[p];
      entry["tokens"] = doc.paragraphs[p].size();
      entry["top_counts"] = top;
      paragraphs.push_back(entry);
    }
    report["paragraphs"] = paragraphs;

    Json communities = Json::array();
    const auto members = r.final_partition.members();
    for (std::size_t c = 0; c < members.size(); ++c) {
      std::vector<std::string> words;
      for (NodeId v : members[c]) words.push_back(r.final_graph.lemmas[v]);
      std::sort(words.begin(), words.end());
      communities.push_back({{"subject", c}, {"size", words.size()}, {"words", words}});
    }
    report["communities"] = communities;

    Json log = Json::array();
    for (const auto& step : r.reduction_log)
      log.push_back({{"erased_community", step.erased_community},
                     {"sigma", step.sigma},
                     {"n_communities_after", step.n_communities_after},
                     {"n_nodes_after", step.n_nodes_after}});
    report["reduction_log"] = log;
    report["final_graph"] = {{"n_nodes", r.final_graph.num_nodes()},
                             {"n_edges", r.final_graph.num_edges()}};

    if (!gold.empty()) {
      const auto labels = load_gold(gold);
      if (labels.size() != r.subjects.size())
        throw InputError("gold has " + std::to_string(labels.size()) + " labels for " +
                         std::to_string(r.subjects.size()) + " paragraphs");
      const auto acc = accuracy(labels, r.subjects);
      report["accuracy"] = {{"gamma_count", acc.gamma_count},
                            {"gamma_fraction", acc.gamma_fraction}};
    }

    if (out.empty()) os << report.dump(2) << "\n";
    else write_json(out, report);
    return kExitOk;
  }
};

// ---- sweep ---------------------------------------------------------------

std::vector<RawDocument> load_documents(const std::string& input) {
  if (!fs::is_directory(input)) return {load_document(input)};
  std::vector<RawDocument> docs;
  for (auto& d : read_dataset(input)) docs.push_back({d.doc_id, std::move(d.paragraphs)});
  return docs;
}

void emit_csv(const std::string& out, const std::string& csv, const Json& meta,
              std::ostream& os) {
  if (out.empty()) {
    os << csv;
    return;
  }
  write_file_atomic(out, csv);
  write_json(out + ".meta.json", meta);
}

struct SweepCommand {
  std::string input;
  std::string out;
  std::string models = "ec,pb,apb";
  std::string omegas = "1-40";
  double alpha = 0.05;
  int trials = kDefaultNullTrials;
  std::uint64_t seed = 42;
  TextFlags text;

  void add_to(CLI::App& app) {
    app.add_option("--input", input, "document file, or a dataset directory to average over")
        ->required();
    app.add_option("--out", out, "CSV path (stdout when omitted)");
    app.add_option("--models", models, "comma-separated graph models")->capture_default_str();
    app.add_option("--omegas", omegas, "window sizes, e.g. 1-40 or 5,10,20")
        ->capture_default_str();
    app.add_option("--alpha", alpha, "APB significance level")->capture_default_str();
    app.add_option("--trials", trials, "random graphs in the null model")->capture_default_str();
    app.add_option("--seed", seed, "null-model seed")->capture_default_str();
    text.add_to(app);
  }

  int run(std::ostream& os) const {
    if (trials < 1) throw InputError("--trials must be >= 1");
    std::vector<GraphModel> model_list;
    for (const auto& m : split_list(models)) model_list.push_back(parse_model(m));
    const auto omega_values = omega_list(omegas);
    const auto lexicon = text.load();
    std::vector<AnnotatedDocument> docs;
    for (const auto& raw : load_documents(input)) docs.push_back(annotate(raw, lexicon, text.options()));

    std::string csv = "omega,model,Q,Q_S_mean,Q_N,n_docs\n";
    bool any = false;
    for (int omega : omega_values)
      for (std::size_t m = 0; m < model_list.size(); ++m) {
        double q = 0, qs = 0, qn = 0;
        int used = 0;
        for (std::size_t d = 0; d < docs.size(); ++d) {
          const auto wg = build_graph(docs[d], {model_list[m], omega, alpha});
          if (wg.num_edges() == 0) continue;
          const auto nm = normalized_modularity(
              wg.graph, trials, derive_seed(seed, static_cast<std::uint64_t>(omega) * 8 + m, d));
          q += nm.q;
          qs += nm.q_s_mean;
          qn += nm.q_n;
          ++used;
        }
        const double nan = std::nan("");
        csv += std::to_string(omega) + "," + std::string(model_name(model_list[m])) + "," +
               fixed6(used ? q / used : nan) + "," + fixed6(used ? qs / used : nan) + "," +
               fixed6(used ? qn / used : nan) + "," + std::to_string(used) + "\n";
        any = any || used > 0;
      }
    if (!any) throw EmptyGraph("no document produced a graph with edges");

    Json config_echo;
    config_echo["input"] = input;
    config_echo["models"] = models;
    config_echo["omegas"] = omegas;
    config_echo["alpha"] = alpha;
    config_echo["trials"] = trials;
    config_echo["seed"] = seed;
    text.echo(config_echo);
    auto meta = envelope("sweep", config_echo);
    meta["n_documents"] = docs.size();
    emit_csv(out, csv, meta, os);
    return kExitOk;
  }
};

// ---- dataset -------------------------------------------------------------

struct DatasetCommand {
  std::string manifest;
  std::string out;
  std::string mode = "cgs";
  DatasetSpec spec;

  void add_to(CLI::App& app) {
    app.add_option("--manifest", manifest, "TSV of path, topic, subtopic")->required();
    app.add_option("--out", out, "output directory")->required();
    app.add_option("--n-s", spec.n_s, "subjects per document")->capture_default_str();
    app.add_option("--n-p", spec.n_p, "paragraphs per subject")->capture_default_str();
    app.add_option("--mode", mode, "cgs (distinct topics) or fgs (one topic)")
        ->check(CLI::IsMember({"cgs", "fgs"}, CLI::ignore_case))
        ->capture_default_str();
    app.add_option("--n-docs", spec.n_docs, "documents to generate")->capture_default_str();
    app.add_option("--seed", spec.seed, "generator seed")->capture_default_str();
    app.add_flag("--interleave", spec.interleave, "shuffle paragraph order within documents");
  }

  int run(std::ostream& os) {
    spec.mode = parse_mode(mode);
    const auto corpus = Corpus::load(CorpusManifest::load(manifest));
    const auto docs = generate_dataset(corpus, spec);
    for (const auto& d : docs) write_document(out, d);

    Json config_echo;
    config_echo["manifest"] = manifest;
    config_echo["n_s"] = spec.n_s;
    config_echo["n_p"] = spec.n_p;
    config_echo["mode"] = std::string(mode_name(spec.mode));
    config_echo["n_docs"] = spec.n_docs;
    config_echo["seed"] = spec.seed;
    config_echo["interleave"] = spec.interleave;
    auto summary = envelope("dataset", config_echo);
    summary["n_documents"] = docs.size();
    summary["n_paragraphs"] = docs.size() * static_cast<std::size_t>(spec.n_s * spec.n_p);
    std::map<std::string, int> usage;
    for (const auto& d : docs)
      for (const auto& s : d.sources) ++usage[s.first + "/" + s.second];
    summary["subtopic_usage"] = usage;
    write_json(fs::path(out) / "summary.json", summary);
    os << "n_documents=" << docs.size() << "\n";
    return kExitOk;
  }
};

// ---- bench ---------------------------------------------------------------

// Groups pre-generated documents into cells by their gold layout.
std::vector<BenchCell> cells_from_dataset(const std::vector<GeneratedDocument>& docs) {
  std::map<std::tuple<int, int, int>, BenchCell> cells;
  for (const auto& d : docs) {
    if (d.gold.empty()) throw InputError(d.doc_id + " has no gold labels");
    const int n_s = *std::max_element(d.gold.begin(), d.gold.end());
    const int n_p = static_cast<int>(d.gold.size()) / n_s;
    std::set<std::string> topics;
    for (const auto& s : d.sources) topics.insert(s.first);
    const auto mode = n_s > 1 && topics.size() == 1 ? DatasetMode::FGS : DatasetMode::CGS;
    auto& cell = cells[{static_cast<int>(mode), n_s, n_p}];
    cell.mode = mode;
    cell.n_s = n_s;
    cell.n_p = n_p;
    cell.docs.push_back(d);
  }
  std::vector<BenchCell> out;
  for (auto& [key, cell] : cells) out.push_back(std::move(cell));
  return out;
}

struct BenchCommand {
  std::string manifest;
  std::string dataset;
  std::string out;
  std::string methods = "ec,pb,apb,bow-k,bow-em";
  std::string modes = "cgs";
  std::string n_s = "2,3,4";
  std::string n_p = "3,4,5";
  int n_docs = 200;
  bool interleave = false;
  BenchConfig config;
  TextFlags text;

  void add_to(CLI::App& app) {
    auto* m = app.add_option("--manifest", manifest, "corpus manifest to generate documents from");
    auto* d = app.add_option("--dataset", dataset, "directory written by `dataset`");
    m->excludes(d);
    app.add_option("--out", out, "CSV path (stdout when omitted)");
    app.add_option("--methods", methods, "comma-separated methods")->capture_default_str();
    app.add_option("--modes", modes, "cgs, fgs or both")->capture_default_str();
    app.add_option("--n-s", n_s, "subjects per document, comma-separated")->capture_default_str();
    app.add_option("--n-p", n_p, "paragraphs per subject, comma-separated")->capture_default_str();
    app.add_option("--n-docs", n_docs, "documents per cell")->capture_default_str();
    app.add_flag("--interleave", interleave, "shuffle paragraph order within documents");
    app.add_option("--omega", config.omega, "co-occurrence window")->capture_default_str();
    app.add_option("--alpha", config.alpha, "APB significance level")->capture_default_str();
    app.add_option("--seed", config.seed, "seed for generation and clustering")
        ->capture_default_str();
    text.add_to(app);
  }

  int run(std::ostream& os) {
    if (manifest.empty() == dataset.empty())
      throw InputError("bench needs exactly one of --manifest or --dataset");
    config.methods.clear();
    for (const auto& m : split_list(methods)) config.methods.push_back(parse_method(m));
    config.annotate = text.options();
    GraphBuildConfig{GraphModel::APB, config.omega, config.alpha}.validate();
    const auto lexicon = text.load();

    std::vector<BenchRow> rows;
    Json config_echo;
    if (!manifest.empty()) {
      BenchGrid grid;
      grid.modes.clear();
      for (const auto& m : split_list(modes)) grid.modes.push_back(parse_mode(m));
      grid.n_s = int_list(n_s);
      grid.n_p = int_list(n_p);
      grid.n_docs = n_docs;
      grid.interleave = interleave;
      rows = run_benchmark(Corpus::load(CorpusManifest::load(manifest)), grid, lexicon, config);
      config_echo["manifest"] = manifest;
      config_echo["modes"] = modes;
      config_echo["n_s"] = n_s;
      config_echo["n_p"] = n_p;
      config_echo["n_docs"] = n_docs;
      config_echo["interleave"] = interleave;
    } else {
      rows = run_cells(cells_from_dataset(read_dataset(dataset)), lexicon, config);
      config_echo["dataset"] = dataset;
    }
    config_echo["methods"] = methods;
    config_echo["omega"] = config.omega;
    config_echo["alpha"] = config.alpha;
    config_echo["seed"] = config.seed;
    text.echo(config_echo);
    auto meta = envelope("bench", config_echo);
    int failed = 0;
    for (const auto& r : rows) failed += r.n_failed;
    meta["failed_evaluations"] = failed;
    emit_csv(out, bench_csv(rows), meta, os);
    return kExitOk;
  }
};

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Input: return kExitInput;
    case ErrorKind::Degenerate: return kExitDegenerate;
    case ErrorKind::Infeasible: return kExitInfeasible;
  }
  return kExitInput;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Topic segmentation with word co-occurrence networks", "topicweave"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  BuildCommand build;
  SegmentCommand segment_cmd;
  SweepCommand sweep;
  DatasetCommand dataset;
  BenchCommand bench;
  auto* build_app = app.add_subcommand("build", "build a word graph and its best partition");
  auto* segment_app = app.add_subcommand("segment", "split a document into subjects");
  auto* sweep_app = app.add_subcommand("sweep", "normalized modularity over window sizes");
  auto* dataset_app = app.add_subcommand("dataset", "generate synthetic multi-subject documents");
  auto* bench_app = app.add_subcommand("bench", "accuracy of all methods over a dataset grid");
  build.add_to(*build_app);
  segment_cmd.add_to(*segment_app);
  sweep.add_to(*sweep_app);
  dataset.add_to(*dataset_app);
  bench.add_to(*bench_app);

  std::vector<std::string> argv_store{"topicweave"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_store) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (build_app->parsed()) return build.run(out);
    if (segment_app->parsed()) return segment_cmd.run(out);
    if (sweep_app->parsed()) return sweep.run(out);
    if (dataset_app->parsed()) return dataset.run(out);
    if (bench_app->parsed()) return bench.run(out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code(e.kind());
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitInput;
}

}  // namespace topicweave::cli
