#include "topicweave/text.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <fstream>
#include <sstream>

#include "topicweave/errors.hpp"

namespace topicweave {

namespace {

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

std::string_view trim(std::string_view s) {
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

// Multi-byte punctuation commonly found in copied prose.
constexpr std::array<std::string_view, 9> kUtf8Punct = {
    "“", "”", "‘", "’", "—",
    "–", "…", "«", "»"};

std::size_t punct_prefix(std::string_view s) {
  if (s.empty()) return 0;
  if (std::ispunct(static_cast<unsigned char>(s.front()))) return 1;
  for (auto p : kUtf8Punct)
    if (s.starts_with(p)) return p.size();
  return 0;
}

std::size_t punct_suffix(std::string_view s) {
  if (s.empty()) return 0;
  if (std::ispunct(static_cast<unsigned char>(s.back()))) return 1;
  for (auto p : kUtf8Punct)
    if (s.ends_with(p)) return p.size();
  return 0;
}

std::string_view strip_punct(std::string_view s) {
  while (auto n = punct_prefix(s)) s.remove_prefix(n);
  while (auto n = punct_suffix(s)) s.remove_suffix(n);
  return s;
}

template <typename Fn>
void for_each_line(std::string_view text, Fn&& fn) {
  std::size_t line_no = 0;
  while (!text.empty()) {
    auto nl = text.find('\n');
    auto line = text.substr(0, nl);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    fn(line, ++line_no);
    if (nl == std::string_view::npos) break;
    text.remove_prefix(nl + 1);
  }
}

}  // namespace

char pos_code(Pos pos) {
  switch (pos) {
    case Pos::Noun: return 'N';
    case Pos::Verb: return 'V';
    case Pos::Other: return 'O';
  }
  return 'O';
}

Pos parse_pos(std::string_view code) {
  if (code == "N") return Pos::Noun;
  if (code == "V") return Pos::Verb;
  if (code == "O") return Pos::Other;
  throw InputError("unknown part-of-speech code '" + std::string(code) + "'");
}

std::size_t AnnotatedDocument::token_count() const {
  std::size_t n = 0;
  for (const auto& p : paragraphs) n += p.size();
  return n;
}

std::string to_lower(std::string_view text) {
  std::string out(text);
  for (auto& c : out)
    c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

void Lexicon::add_entry(std::string_view surface, std::string_view lemma, Pos pos) {
  if (surface.empty() || lemma.empty())
    throw InputError("lexicon entries need a surface form and a lemma");
  entries_.insert_or_assign(to_lower(surface), Entry{to_lower(lemma), pos});
}

void Lexicon::add_stopword(std::string_view word) {
  if (!word.empty()) stopwords_.insert(to_lower(word));
}

const Lexicon::Entry* Lexicon::lookup(std::string_view surface) const {
  auto it = entries_.find(to_lower(surface));
  return it == entries_.end() ? nullptr : &it->second;
}

bool Lexicon::is_stopword(std::string_view word) const {
  return stopwords_.contains(to_lower(word));
}

Lexicon Lexicon::from_tsv(std::string_view text) {
  Lexicon lex;
  for_each_line(text, [&](std::string_view line, std::size_t line_no) {
    if (trim(line).empty() || line.starts_with('#')) return;
    std::array<std::string_view, 3> cols;
    std::size_t n = 0;
    while (true) {
      auto tab = line.find('\t');
      if (n < 3) cols[n] = trim(line.substr(0, tab));
      ++n;
      if (tab == std::string_view::npos) break;
      line.remove_prefix(tab + 1);
    }
    if (n != 3)
      throw InputError("lexicon line " + std::to_string(line_no) +
                       ": expected 3 tab-separated columns");
    try {
      lex.add_entry(cols[0], cols[1], parse_pos(cols[2]));
    } catch (const InputError& e) {
      throw InputError("lexicon line " + std::to_string(line_no) + ": " + e.what());
    }
  });
  return lex;
}

void Lexicon::load_stopwords(std::string_view text) {
  for_each_line(text, [&](std::string_view line, std::size_t) {
    auto word = trim(line);
    if (word.empty() || word.starts_with('#')) return;
    add_stopword(word);
  });
}

Lexicon Lexicon::load(const std::filesystem::path& lexicon_path,
                      const std::optional<std::filesystem::path>& stopword_path) {
  auto lex = from_tsv(read_text_file(lexicon_path));
  if (stopword_path) lex.load_stopwords(read_text_file(*stopword_path));
  return lex;
}

RawDocument split_paragraphs(std::string_view raw_text, std::string doc_id) {
  RawDocument doc{std::move(doc_id), {}};
  std::string current;
  auto flush = [&] {
    auto t = trim(current);
    if (!t.empty()) doc.paragraphs.emplace_back(t);
    current.clear();
  };
  for_each_line(raw_text, [&](std::string_view line, std::size_t) {
    if (trim(line).empty()) {
      flush();
      return;
    }
    if (!current.empty()) current += '\n';
    current += line;
  });
  flush();
  if (doc.paragraphs.empty()) throw EmptyDocument("no non-blank content");
  return doc;
}

std::vector<std::string> tokenize(std::string_view paragraph) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < paragraph.size()) {
    while (i < paragraph.size() && is_space(paragraph[i])) ++i;
    auto start = i;
    while (i < paragraph.size() && !is_space(paragraph[i])) ++i;
    auto word = strip_punct(paragraph.substr(start, i - start));
    if (!word.empty()) out.push_back(to_lower(word));
  }
  return out;
}

AnnotatedDocument annotate(const RawDocument& doc, const Lexicon& lexicon,
                           const AnnotateOptions& options) {
  AnnotatedDocument out;
  out.doc_id = doc.doc_id;
  out.paragraphs.reserve(doc.paragraphs.size());
  const bool lemma_stage = options.stopword_stage == StopwordStage::Lemma;
  for (const auto& text : doc.paragraphs) {
    Paragraph para;
    for (auto& surface : tokenize(text)) {
      if (!lemma_stage && lexicon.is_stopword(surface)) continue;
      Token tok;
      if (const auto* entry = lexicon.lookup(surface)) {
        if (entry->pos == Pos::Other) continue;
        tok.lemma = entry->lemma;
        tok.pos = entry->pos;
      } else {
        if (options.unknown == UnknownWordPolicy::Drop) continue;
        tok.lemma = surface;
        tok.pos = Pos::Noun;
      }
      if (lemma_stage && lexicon.is_stopword(tok.lemma)) continue;
      tok.surface = std::move(surface);
      para.push_back(std::move(tok));
    }
    out.paragraphs.push_back(std::move(para));
  }
  return out;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace topicweave
