#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace topicweave {

enum class DatasetMode { CGS, FGS };

std::string_view mode_name(DatasetMode mode);
DatasetMode parse_mode(std::string_view name);

struct ManifestEntry {
  std::filesystem::path path;
  std::string topic;
  std::string subtopic;
};

struct CorpusManifest {
  std::vector<ManifestEntry> articles;

  // TSV rows: path, topic, subtopic. Relative paths resolve against the
  // manifest's directory. '#' lines and an optional header row are skipped.
  static CorpusManifest load(const std::filesystem::path& manifest_path);
};

using SubtopicKey = std::pair<std::string, std::string>;  // (topic, subtopic)

// Paragraph pools per (topic, subtopic), pooled over that subtopic's articles
// in manifest order.
struct Corpus {
  std::map<SubtopicKey, std::vector<std::string>> paragraphs;

  static Corpus load(const CorpusManifest& manifest);
  std::map<std::string, std::vector<std::string>> subtopics_by_topic() const;
};

struct DatasetSpec {
  int n_s = 2;
  int n_p = 3;
  DatasetMode mode = DatasetMode::CGS;
  int n_docs = 200;
  std::uint64_t seed = 42;
  bool interleave = false;

  void validate() const;
};

struct GeneratedDocument {
  std::string doc_id;
  std::vector<std::string> paragraphs;
  std::vector<int> gold;  // 1..n_s, one per paragraph
  std::vector<SubtopicKey> sources;  // subtopic behind gold label i+1
};

// Each document draws n_s subtopics (distinct topics for CGS, one topic for
// FGS) and n_p distinct paragraphs from each, laid out in subtopic blocks.
// Document i uses its own RNG stream derived from (seed, i).
std::vector<GeneratedDocument> generate_dataset(const Corpus& corpus, const DatasetSpec& spec);

// <dir>/<doc_id>/paragraphs.txt (blank-line separated) and gold.json.
void write_document(const std::filesystem::path& dir, const GeneratedDocument& doc);
std::vector<GeneratedDocument> read_dataset(const std::filesystem::path& dir);

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0);

}  // namespace topicweave
