#include <gtest/gtest.h>

#include <random>

#include "topicweave/errors.hpp"
#include "topicweave/text.hpp"

namespace topicweave {
namespace {

using Words = std::vector<std::string>;

Lexicon car_lexicon() {
  Lexicon lex;
  lex.add_entry("car", "car", Pos::Noun);
  lex.add_entry("cars", "car", Pos::Noun);
  lex.add_entry("invented", "invent", Pos::Verb);
  lex.add_entry("quickly", "quickly", Pos::Other);
  lex.add_stopword("is");
  lex.add_stopword("the");
  return lex;
}

std::vector<std::string> lemmas(const Paragraph& p) {
  std::vector<std::string> out;
  for (const auto& t : p) out.push_back(t.lemma);
  return out;
}

TEST(SplitParagraphs, BlankLinesDelimit) {
  EXPECT_EQ(split_paragraphs("A.\n\nB.").paragraphs, (Words{"A.", "B."}));
  EXPECT_EQ(split_paragraphs("A.\n\n\n\nB.").paragraphs, (Words{"A.", "B."}));
  EXPECT_EQ(split_paragraphs("  A.\nstill A\n \t \nB.\r\n").paragraphs,
            (Words{"A.\nstill A", "B."}));
}

TEST(SplitParagraphs, BlankInputIsEmptyDocument) {
  EXPECT_THROW(split_paragraphs("   \n\n  "), EmptyDocument);
  EXPECT_THROW(split_paragraphs(""), EmptyDocument);
}

TEST(Tokenize, StripsOuterPunctuationAndLowercases) {
  EXPECT_EQ(tokenize("The car, invented."), (Words{"the", "car", "invented"}));
  EXPECT_EQ(tokenize("don't"), (Words{"don't"}));
  EXPECT_EQ(tokenize("..."), Words{});
  EXPECT_EQ(tokenize("(well-known) “quoted” — dash"), (Words{"well-known", "quoted", "dash"}));
}

TEST(Annotate, VariantFormsMergeAndStopwordsDrop) {
  RawDocument raw{"d", {"is car cars"}};
  auto doc = annotate(raw, car_lexicon());
  ASSERT_EQ(doc.paragraphs.size(), 1u);
  EXPECT_EQ(lemmas(doc.paragraphs[0]), (Words{"car", "car"}));
}

TEST(Annotate, AllStopwordParagraphIsKeptEmpty) {
  RawDocument raw{"d", {"car", "the is", "cars"}};
  auto doc = annotate(raw, car_lexicon());
  ASSERT_EQ(doc.paragraphs.size(), 3u);
  EXPECT_TRUE(doc.paragraphs[1].empty());
}

TEST(Annotate, OtherPartsOfSpeechDrop) {
  auto doc = annotate(RawDocument{"d", {"quickly invented"}}, car_lexicon());
  ASSERT_EQ(doc.paragraphs[0].size(), 1u);
  EXPECT_EQ(doc.paragraphs[0][0].lemma, "invent");
  EXPECT_EQ(doc.paragraphs[0][0].pos, Pos::Verb);
}

TEST(Annotate, UnknownWordPolicy) {
  RawDocument raw{"d", {"Engine car"}};
  auto kept = annotate(raw, car_lexicon());
  EXPECT_EQ(lemmas(kept.paragraphs[0]), (Words{"engine", "car"}));
  EXPECT_EQ(kept.paragraphs[0][0].pos, Pos::Noun);

  AnnotateOptions drop;
  drop.unknown = UnknownWordPolicy::Drop;
  EXPECT_EQ(lemmas(annotate(raw, car_lexicon(), drop).paragraphs[0]), (Words{"car"}));
}

TEST(Annotate, StopwordBeatsLexiconEntry) {
  auto lex = car_lexicon();
  lex.add_entry("is", "be", Pos::Verb);
  EXPECT_TRUE(annotate(RawDocument{"d", {"is"}}, lex).paragraphs[0].empty());
}

TEST(Annotate, LemmaStageStopwords) {
  auto lex = car_lexicon();
  lex.add_entry("was", "be", Pos::Verb);
  lex.add_stopword("be");
  RawDocument raw{"d", {"was car"}};
  // Surface stage: "was" is not itself a stopword.
  EXPECT_EQ(lemmas(annotate(raw, lex).paragraphs[0]), (Words{"be", "car"}));
  AnnotateOptions opts;
  opts.stopword_stage = StopwordStage::Lemma;
  EXPECT_EQ(lemmas(annotate(raw, lex, opts).paragraphs[0]), (Words{"car"}));
}

TEST(Lexicon, ParsesTsvWithComments) {
  auto lex = Lexicon::from_tsv("# surface\tlemma\tpos\nCars\tcar\tN\n\nran\trun\tV\nfast\tfast\tO\n");
  EXPECT_EQ(lex.entry_count(), 3u);
  ASSERT_NE(lex.lookup("CARS"), nullptr);
  EXPECT_EQ(lex.lookup("cars")->lemma, "car");
  EXPECT_EQ(lex.lookup("ran")->pos, Pos::Verb);
  EXPECT_EQ(lex.lookup("walk"), nullptr);
  lex.load_stopwords("# list\nThe\n\nand\n");
  EXPECT_TRUE(lex.is_stopword("the"));
  EXPECT_TRUE(lex.is_stopword("AND"));
}

TEST(Lexicon, RejectsMalformedRows) {
  EXPECT_THROW(Lexicon::from_tsv("cars\tcar\n"), InputError);
  EXPECT_THROW(Lexicon::from_tsv("cars\tcar\tX\n"), InputError);
  EXPECT_THROW(Lexicon::from_tsv("cars\tcar\tN\textra\n"), InputError);
}

// Random corpora over a fixed word pool: paragraph counts survive, output is
// deterministic, casing does not matter, and lemmas come from the lexicon or
// the surface form.
TEST(Annotate, PropertiesOverRandomCorpora) {
  const Words pool{"Car", "cars", "the", "IS", "quickly", "Invented", "engine", "wheel,",
                   "...", "Road.", "is"};
  auto lex = car_lexicon();
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<int> n_par(1, 6), n_tok(0, 10);
  std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
  for (int trial = 0; trial < 200; ++trial) {
    RawDocument raw{"r", {}};
    const int paragraphs = n_par(rng);
    for (int p = 0; p < paragraphs; ++p) {
      std::string text = "x";
      for (int t = n_tok(rng); t > 0; --t) text += " " + pool[pick(rng)];
      raw.paragraphs.push_back(text);
    }
    auto doc = annotate(raw, lex);
    ASSERT_EQ(doc.paragraphs.size(), raw.paragraphs.size());
    EXPECT_EQ(annotate(raw, lex).paragraphs, doc.paragraphs);

    RawDocument lowered = raw;
    for (auto& p : lowered.paragraphs) p = to_lower(p);
    EXPECT_EQ(annotate(lowered, lex).paragraphs, doc.paragraphs);

    for (const auto& para : doc.paragraphs)
      for (const auto& tok : para) {
        EXPECT_NE(tok.pos, Pos::Other);
        EXPECT_FALSE(tok.lemma.empty());
        EXPECT_EQ(tok.lemma, to_lower(tok.lemma));
        const auto* entry = lex.lookup(tok.surface);
        EXPECT_EQ(tok.lemma, entry ? entry->lemma : tok.surface);
      }
  }
}

}  // namespace
}  // namespace topicweave
