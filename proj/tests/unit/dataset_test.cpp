#include <gtest/gtest.h>
#include <unistd.h>

#include <filesystem>
#include <random>
#include <set>

#include "topicweave/bench.hpp"
#include "topicweave/dataset.hpp"
#include "topicweave/errors.hpp"
#include "topicweave/io.hpp"
#include "topicweave/text.hpp"

namespace topicweave {
namespace {

namespace fs = std::filesystem;

// Every subtopic has its own vocabulary; each paragraph is a shuffle of it.
Corpus separable_corpus(int topics, int subtopics, int paragraphs, int vocab = 30) {
  Corpus c;
  std::mt19937_64 rng(1);
  for (int t = 0; t < topics; ++t)
    for (int s = 0; s < subtopics; ++s) {
      auto& pool = c.paragraphs[{"t" + std::to_string(t), "s" + std::to_string(s)}];
      for (int p = 0; p < paragraphs; ++p) {
        std::vector<std::string> words;
        for (int w = 0; w < vocab; ++w)
          words.push_back("t" + std::to_string(t) + "s" + std::to_string(s) + "w" +
                          std::to_string(w));
        words.insert(words.end(), words.begin(), words.end());
        std::shuffle(words.begin(), words.end(), rng);
        std::string text;
        for (const auto& w : words) text += (text.empty() ? "" : " ") + w;
        pool.push_back(text + " p" + std::to_string(p) + "x" + std::to_string(t * 100 + s));
      }
    }
  return c;
}

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& name)
      : path(fs::temp_directory_path() / (name + "_" + std::to_string(::getpid()))) {
    fs::remove_all(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

std::string read(const fs::path& p) { return read_text_file(p); }

TEST(Dataset, BlocksOfNpParagraphsWithGoldAlphabet) {
  auto corpus = separable_corpus(4, 3, 6);
  for (auto mode : {DatasetMode::CGS, DatasetMode::FGS})
    for (int n_s : {2, 3})
      for (int n_p : {1, 3, 5}) {
        DatasetSpec spec{n_s, n_p, mode, 25, 9, false};
        auto docs = generate_dataset(corpus, spec);
        ASSERT_EQ(docs.size(), 25u);
        for (const auto& d : docs) {
          ASSERT_EQ(d.paragraphs.size(), static_cast<std::size_t>(n_s * n_p));
          for (int i = 0; i < n_s * n_p; ++i) EXPECT_EQ(d.gold[i], i / n_p + 1);
          ASSERT_EQ(d.sources.size(), static_cast<std::size_t>(n_s));
          std::set<std::string> topics;
          std::set<SubtopicKey> subtopics(d.sources.begin(), d.sources.end());
          for (const auto& s : d.sources) topics.insert(s.first);
          EXPECT_EQ(subtopics.size(), static_cast<std::size_t>(n_s));
          EXPECT_EQ(topics.size(), mode == DatasetMode::CGS ? std::size_t(n_s) : 1u);
          std::set<std::string> distinct(d.paragraphs.begin(), d.paragraphs.end());
          EXPECT_EQ(distinct.size(), d.paragraphs.size());
          for (int i = 0; i < n_s * n_p; ++i) {
            const auto& pool = corpus.paragraphs.at(d.sources[d.gold[i] - 1]);
            EXPECT_NE(std::find(pool.begin(), pool.end(), d.paragraphs[i]), pool.end());
          }
        }
      }
}

TEST(Dataset, SixParagraphDefaultShape) {
  auto docs = generate_dataset(separable_corpus(3, 2, 4), {2, 3, DatasetMode::CGS, 200, 42});
  ASSERT_EQ(docs.size(), 200u);
  EXPECT_EQ(docs[0].gold, (std::vector<int>{1, 1, 1, 2, 2, 2}));
  EXPECT_EQ(docs[0].doc_id, "doc_0000");
  EXPECT_EQ(docs[199].doc_id, "doc_0199");
}

TEST(Dataset, InterleavingPermutesWithinTheDocument) {
  auto corpus = separable_corpus(3, 2, 5);
  DatasetSpec spec{3, 3, DatasetMode::CGS, 30, 4, true};
  bool moved = false;
  for (const auto& d : generate_dataset(corpus, spec)) {
    std::vector<int> sorted = d.gold;
    std::sort(sorted.begin(), sorted.end());
    EXPECT_EQ(sorted, (std::vector<int>{1, 1, 1, 2, 2, 2, 3, 3, 3}));
    moved = moved || d.gold != sorted;
    for (std::size_t i = 0; i < d.paragraphs.size(); ++i) {
      const auto& pool = corpus.paragraphs.at(d.sources[d.gold[i] - 1]);
      EXPECT_NE(std::find(pool.begin(), pool.end(), d.paragraphs[i]), pool.end());
    }
  }
  EXPECT_TRUE(moved);
}

TEST(Dataset, InfeasibleRequests) {
  EXPECT_THROW(generate_dataset(separable_corpus(1, 3, 5), {2, 3, DatasetMode::CGS, 5, 1}),
               DatasetInfeasible);
  EXPECT_THROW(generate_dataset(separable_corpus(3, 1, 5), {2, 3, DatasetMode::FGS, 5, 1}),
               DatasetInfeasible);
  EXPECT_THROW(generate_dataset(separable_corpus(3, 2, 2), {2, 3, DatasetMode::CGS, 5, 1}),
               InsufficientParagraphs);
  EXPECT_THROW(generate_dataset(separable_corpus(3, 2, 5), {1, 3, DatasetMode::CGS, 5, 1}),
               InputError);
  EXPECT_EQ(ErrorKind::Infeasible, DatasetInfeasible("x").kind());
}

TEST(Dataset, SameSeedIsByteIdenticalOnDisk) {
  auto corpus = separable_corpus(4, 2, 5);
  DatasetSpec spec{2, 3, DatasetMode::CGS, 8, 77};
  TempDir a("tw_dataset_a"), b("tw_dataset_b");
  for (const auto& d : generate_dataset(corpus, spec)) write_document(a.path, d);
  for (const auto& d : generate_dataset(corpus, spec)) write_document(b.path, d);
  for (const auto& entry : fs::recursive_directory_iterator(a.path)) {
    if (!entry.is_regular_file()) continue;
    const auto twin = b.path / fs::relative(entry.path(), a.path);
    EXPECT_EQ(read(entry.path()), read(twin)) << twin;
  }
  spec.seed = 78;
  EXPECT_NE(generate_dataset(corpus, spec)[0].paragraphs,
            generate_dataset(corpus, {2, 3, DatasetMode::CGS, 8, 77})[0].paragraphs);
}

TEST(Dataset, WriteReadRoundTrip) {
  auto docs = generate_dataset(separable_corpus(3, 2, 4), {3, 2, DatasetMode::CGS, 4, 3});
  TempDir dir("tw_dataset_rt");
  for (const auto& d : docs) write_document(dir.path, d);
  auto back = read_dataset(dir.path);
  ASSERT_EQ(back.size(), docs.size());
  for (std::size_t i = 0; i < docs.size(); ++i) {
    EXPECT_EQ(back[i].doc_id, docs[i].doc_id);
    EXPECT_EQ(back[i].paragraphs, docs[i].paragraphs);
    EXPECT_EQ(back[i].gold, docs[i].gold);
    EXPECT_EQ(back[i].sources, docs[i].sources);
  }
  EXPECT_THROW(read_dataset(dir.path / "missing"), InputError);
}

TEST(Manifest, LoadsRelativePathsAndRejectsBadRows) {
  TempDir dir("tw_manifest");
  fs::create_directories(dir.path / "articles");
  write_file_atomic(dir.path / "articles" / "a.txt", "One.\n\nTwo.\n");
  write_file_atomic(dir.path / "manifest.tsv", "path\ttopic\tsubtopic\narticles/a.txt\tx\ty\n");
  auto m = CorpusManifest::load(dir.path / "manifest.tsv");
  ASSERT_EQ(m.articles.size(), 1u);
  auto corpus = Corpus::load(m);
  EXPECT_EQ(corpus.paragraphs.at({"x", "y"}), (std::vector<std::string>{"One.", "Two."}));
  write_file_atomic(dir.path / "bad.tsv", "articles/a.txt\tx\n");
  EXPECT_THROW(CorpusManifest::load(dir.path / "bad.tsv"), InputError);
}

TEST(DeriveSeed, DistinctStreams) {
  std::set<std::uint64_t> seen;
  for (std::uint64_t a = 0; a < 50; ++a)
    for (std::uint64_t b = 0; b < 50; ++b) seen.insert(derive_seed(42, a, b));
  EXPECT_EQ(seen.size(), 2500u);
  EXPECT_EQ(derive_seed(1, 2, 3), derive_seed(1, 2, 3));
}

TEST(Bench, SeparableCorpusScoresHighAcrossMethods) {
  auto corpus = separable_corpus(4, 3, 6);
  BenchGrid grid;
  grid.n_s = {2, 3};
  grid.n_p = {3};
  grid.n_docs = 10;
  BenchConfig config;
  auto rows = run_benchmark(corpus, grid, Lexicon{}, config);
  ASSERT_EQ(rows.size(), 2u * 5u);
  for (const auto& r : rows) {
    EXPECT_GE(r.mean_gamma, 0.95) << method_name(r.method) << " n_s=" << r.n_s;
    EXPECT_EQ(r.n_docs + r.n_failed, 10);
  }
  EXPECT_EQ(bench_csv(rows), bench_csv(run_benchmark(corpus, grid, Lexicon{}, config)));
  EXPECT_TRUE(bench_csv(rows).starts_with("mode,n_s,n_p,method,mean_gamma,std_gamma,n_docs\nCGS,2,3,EC,"));
}

TEST(Bench, SummaryStatistics) {
  BenchCell cell;
  cell.n_s = 2;
  cell.docs.push_back({"d0", {"a b", "a b", "c d", "c d"}, {1, 1, 2, 2}, {}});
  cell.docs.push_back({"d1", {"a b", "c d", "a b", "c d"}, {1, 1, 2, 2}, {}});
  BenchConfig config;
  config.methods = {Method::PB};
  auto rows = run_cells({cell}, Lexicon{}, config);
  ASSERT_EQ(rows.size(), 1u);
  // d0 is split perfectly, d1 gets two of four right.
  EXPECT_DOUBLE_EQ(rows[0].mean_gamma, 0.75);
  EXPECT_NEAR(rows[0].std_gamma, std::sqrt(0.125), 1e-15);
  EXPECT_EQ(method_name(parse_method("bow-em")), "BOW-EM");
  EXPECT_THROW(parse_method("lda"), InputError);
}

}  // namespace
}  // namespace topicweave
