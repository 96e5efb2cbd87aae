#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace topicweave {

enum class Pos : std::uint8_t { Noun, Verb, Other };

char pos_code(Pos pos);
Pos parse_pos(std::string_view code);

struct RawDocument {
  std::string doc_id;
  std::vector<std::string> paragraphs;
};

struct Token {
  std::string surface;
  std::string lemma;
  Pos pos = Pos::Noun;

  friend bool operator==(const Token&, const Token&) = default;
};

using Paragraph = std::vector<Token>;

// Paragraph count always matches the RawDocument it came from; paragraphs
// whose tokens were all filtered out stay in place as empty lists.
struct AnnotatedDocument {
  std::string doc_id;
  std::vector<Paragraph> paragraphs;
  std::optional<std::vector<int>> gold_labels;

  std::size_t token_count() const;
};

enum class UnknownWordPolicy { KeepAsNoun, Drop };
enum class StopwordStage { Surface, Lemma };

struct AnnotateOptions {
  UnknownWordPolicy unknown = UnknownWordPolicy::KeepAsNoun;
  StopwordStage stopword_stage = StopwordStage::Surface;
};

// Surface wordform -> (lemma, pos) table plus a stopword set. All keys are
// stored lowercase and lookups lowercase their argument.
class Lexicon {
 public:
  struct Entry {
    std::string lemma;
    Pos pos;
  };

  void add_entry(std::string_view surface, std::string_view lemma, Pos pos);
  void add_stopword(std::string_view word);

  const Entry* lookup(std::string_view surface) const;
  bool is_stopword(std::string_view word) const;

  std::size_t entry_count() const { return entries_.size(); }
  std::size_t stopword_count() const { return stopwords_.size(); }

  // TSV: surface, lemma, pos in {N,V,O}. '#' starts a comment line.
  static Lexicon from_tsv(std::string_view text);
  static Lexicon load(const std::filesystem::path& lexicon_path,
                      const std::optional<std::filesystem::path>& stopword_path);
  void load_stopwords(std::string_view text);

 private:
  std::unordered_map<std::string, Entry> entries_;
  std::unordered_set<std::string> stopwords_;
};

std::string to_lower(std::string_view text);

// Paragraphs are maximal runs of text separated by one or more blank lines.
RawDocument split_paragraphs(std::string_view raw_text, std::string doc_id = {});

// Whitespace split, leading/trailing punctuation stripped, lowercased.
std::vector<std::string> tokenize(std::string_view paragraph);

AnnotatedDocument annotate(const RawDocument& doc, const Lexicon& lexicon,
                           const AnnotateOptions& options = {});

std::string read_text_file(const std::filesystem::path& path);

}  // namespace topicweave
