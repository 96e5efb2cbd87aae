#include "topicweave/dataset.hpp"

#include <algorithm>
#include <numeric>
#include <random>

#include <json.hpp>

#include "topicweave/community.hpp"
#include "topicweave/errors.hpp"
#include "topicweave/io.hpp"
#include "topicweave/text.hpp"

namespace topicweave {

namespace {

std::vector<std::size_t> sample_without_replacement(std::size_t n, std::size_t k,
                                                    std::mt19937_64& rng) {
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  for (std::size_t i = 0; i < k; ++i) {
    std::uniform_int_distribution<std::size_t> pick(i, n - 1);
    std::swap(idx[i], idx[pick(rng)]);
  }
  idx.resize(k);
  return idx;
}

std::vector<std::string_view> split_tabs(std::string_view line) {
  std::vector<std::string_view> cols;
  while (true) {
    auto tab = line.find('\t');
    cols.push_back(line.substr(0, tab));
    if (tab == std::string_view::npos) break;
    line.remove_prefix(tab + 1);
  }
  return cols;
}

}  // namespace

std::string_view mode_name(DatasetMode mode) {
  return mode == DatasetMode::CGS ? "CGS" : "FGS";
}

DatasetMode parse_mode(std::string_view name) {
  auto lower = to_lower(name);
  if (lower == "cgs") return DatasetMode::CGS;
  if (lower == "fgs") return DatasetMode::FGS;
  throw InputError("unknown dataset mode '" + std::string(name) + "'");
}

CorpusManifest CorpusManifest::load(const std::filesystem::path& manifest_path) {
  const auto text = read_text_file(manifest_path);
  const auto base = manifest_path.parent_path();
  CorpusManifest m;
  std::size_t line_no = 0;
  std::string_view rest = text;
  while (!rest.empty()) {
    auto nl = rest.find('\n');
    auto line = rest.substr(0, nl);
    rest = nl == std::string_view::npos ? std::string_view{} : rest.substr(nl + 1);
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty() || line.starts_with('#')) continue;
    auto cols = split_tabs(line);
    if (cols.size() != 3 || cols[0].empty() || cols[1].empty() || cols[2].empty())
      throw InputError(manifest_path.string() + ":" + std::to_string(line_no) +
                       ": expected path, topic, subtopic");
    if (m.articles.empty() && cols[0] == "path" && cols[1] == "topic") continue;
    std::filesystem::path p(cols[0]);
    if (p.is_relative()) p = base / p;
    m.articles.push_back({p, std::string(cols[1]), std::string(cols[2])});
  }
  if (m.articles.empty()) throw InputError("manifest lists no articles");
  return m;
}

Corpus Corpus::load(const CorpusManifest& manifest) {
  Corpus c;
  for (const auto& a : manifest.articles) {
    auto doc = split_paragraphs(read_text_file(a.path), a.path.string());
    auto& pool = c.paragraphs[{a.topic, a.subtopic}];
    pool.insert(pool.end(), doc.paragraphs.begin(), doc.paragraphs.end());
  }
  return c;
}

std::map<std::string, std::vector<std::string>> Corpus::subtopics_by_topic() const {
  std::map<std::string, std::vector<std::string>> out;
  for (const auto& [key, _] : paragraphs) out[key.first].push_back(key.second);
  return out;
}

void DatasetSpec::validate() const {
  if (n_s < 2) throw InputError("n_s must be >= 2");
  if (n_p < 1) throw InputError("n_p must be >= 1");
  if (n_docs < 1) throw InputError("n_docs must be >= 1");
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
  auto mix = [](std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  };
  return mix(mix(mix(seed) ^ a) ^ b);
}

std::vector<GeneratedDocument> generate_dataset(const Corpus& corpus, const DatasetSpec& spec) {
  spec.validate();
  const auto by_topic = corpus.subtopics_by_topic();
  std::vector<std::string> topics;
  for (const auto& [t, subs] : by_topic)
    if (spec.mode == DatasetMode::CGS || static_cast<int>(subs.size()) >= spec.n_s)
      topics.push_back(t);

  if (spec.mode == DatasetMode::CGS && static_cast<int>(topics.size()) < spec.n_s)
    throw DatasetInfeasible("CGS needs at least " + std::to_string(spec.n_s) +
                            " distinct topics, manifest has " + std::to_string(topics.size()));
  if (spec.mode == DatasetMode::FGS && topics.empty())
    throw DatasetInfeasible("FGS needs a topic with at least " + std::to_string(spec.n_s) +
                            " subtopics");
  for (const auto& t : topics)
    for (const auto& s : by_topic.at(t)) {
      const auto have = corpus.paragraphs.at({t, s}).size();
      if (have < static_cast<std::size_t>(spec.n_p))
        throw InsufficientParagraphs(t + "/" + s + " has " + std::to_string(have) +
                                     " paragraphs, need " + std::to_string(spec.n_p));
    }

  const int width = std::max<int>(4, static_cast<int>(std::to_string(spec.n_docs - 1).size()));
  std::vector<GeneratedDocument> docs(spec.n_docs);
  for (int d = 0; d < spec.n_docs; ++d) {
    auto rng = trial_rng(spec.seed, static_cast<std::uint64_t>(d));
    auto& doc = docs[d];
    auto number = std::to_string(d);
    doc.doc_id = "doc_" + std::string(width - std::min<int>(width, number.size()), '0') + number;

    if (spec.mode == DatasetMode::CGS) {
      for (auto ti : sample_without_replacement(topics.size(), spec.n_s, rng)) {
        const auto& subs = by_topic.at(topics[ti]);
        std::uniform_int_distribution<std::size_t> pick(0, subs.size() - 1);
        doc.sources.emplace_back(topics[ti], subs[pick(rng)]);
      }
    } else {
      std::uniform_int_distribution<std::size_t> pick(0, topics.size() - 1);
      const auto& topic = topics[pick(rng)];
      const auto& subs = by_topic.at(topic);
      for (auto si : sample_without_replacement(subs.size(), spec.n_s, rng))
        doc.sources.emplace_back(topic, subs[si]);
    }

    for (int b = 0; b < spec.n_s; ++b) {
      const auto& pool = corpus.paragraphs.at(doc.sources[b]);
      for (auto pi : sample_without_replacement(pool.size(), spec.n_p, rng)) {
        doc.paragraphs.push_back(pool[pi]);
        doc.gold.push_back(b + 1);
      }
    }

    if (spec.interleave) {
      for (std::size_t i = doc.paragraphs.size(); i > 1; --i) {
        std::uniform_int_distribution<std::size_t> pick(0, i - 1);
        const auto j = pick(rng);
        std::swap(doc.paragraphs[i - 1], doc.paragraphs[j]);
        std::swap(doc.gold[i - 1], doc.gold[j]);
      }
    }
  }
  return docs;
}

void write_document(const std::filesystem::path& dir, const GeneratedDocument& doc) {
  const auto root = dir / doc.doc_id;
  std::string text;
  for (std::size_t i = 0; i < doc.paragraphs.size(); ++i) {
    if (i) text += "\n\n";
    text += doc.paragraphs[i];
  }
  text += '\n';
  write_file_atomic(root / "paragraphs.txt", text);

  nlohmann::ordered_json gold;
  gold["doc_id"] = doc.doc_id;
  gold["gold"] = doc.gold;
  auto sources = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < doc.sources.size(); ++i)
    sources.push_back({{"label", i + 1},
                       {"topic", doc.sources[i].first},
                       {"subtopic", doc.sources[i].second}});
  gold["sources"] = sources;
  write_file_atomic(root / "gold.json", gold.dump(2) + "\n");
}

std::vector<GeneratedDocument> read_dataset(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir))
    throw InputError(dir.string() + " is not a dataset directory");
  std::vector<std::filesystem::path> roots;
  for (const auto& entry : std::filesystem::directory_iterator(dir))
    if (entry.is_directory() && std::filesystem::exists(entry.path() / "paragraphs.txt"))
      roots.push_back(entry.path());
  std::sort(roots.begin(), roots.end());
  if (roots.empty()) throw InputError(dir.string() + " contains no documents");

  std::vector<GeneratedDocument> docs;
  for (const auto& root : roots) {
    GeneratedDocument doc;
    doc.doc_id = root.filename().string();
    doc.paragraphs =
        split_paragraphs(read_text_file(root / "paragraphs.txt"), doc.doc_id).paragraphs;
    if (std::filesystem::exists(root / "gold.json")) {
      try {
        auto j = nlohmann::json::parse(read_text_file(root / "gold.json"));
        doc.gold = j.at("gold").get<std::vector<int>>();
        if (j.contains("sources"))
          for (const auto& s : j["sources"])
            doc.sources.emplace_back(s.at("topic").get<std::string>(),
                                     s.at("subtopic").get<std::string>());
      } catch (const nlohmann::json::exception& e) {
        throw InputError((root / "gold.json").string() + ": " + e.what());
      }
      if (doc.gold.size() != doc.paragraphs.size())
        throw InputError(doc.doc_id + ": gold labels do not match the paragraph count");
    }
    docs.push_back(std::move(doc));
  }
  return docs;
}

}  // namespace topicweave
