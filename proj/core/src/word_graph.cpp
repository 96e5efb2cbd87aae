#include "topicweave/word_graph.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <tuple>

#include "topicweave/errors.hpp"

namespace topicweave {

namespace {

double log_factorial(std::int64_t n) {
  int sign = 0;
  return ::lgamma_r(static_cast<double>(n) + 1.0, &sign);
}

double log_choose(std::int64_t n, std::int64_t k) {
  return log_factorial(n) - log_factorial(k) - log_factorial(n - k);
}

struct Indexed {
  std::vector<std::string> lemmas;
  std::unordered_map<std::string, NodeId> index;
  // Token stream per paragraph as node ids.
  std::vector<std::vector<NodeId>> paragraphs;
};

Indexed index_document(const AnnotatedDocument& doc) {
  Indexed out;
  out.paragraphs.reserve(doc.paragraphs.size());
  for (const auto& para : doc.paragraphs) {
    std::vector<NodeId> ids;
    ids.reserve(para.size());
    for (const auto& tok : para) {
      auto [it, inserted] =
          out.index.try_emplace(tok.lemma, static_cast<NodeId>(out.lemmas.size()));
      if (inserted) out.lemmas.push_back(tok.lemma);
      ids.push_back(it->second);
    }
    out.paragraphs.push_back(std::move(ids));
  }
  if (out.lemmas.empty())
    throw EmptyVocabulary("no tokens survived preprocessing in '" + doc.doc_id + "'");
  return out;
}

void window_pairs(std::span<const NodeId> stream, int omega, std::vector<Edge>& out) {
  for (std::size_t i = 0; i < stream.size(); ++i) {
    auto end = std::min(stream.size(), i + static_cast<std::size_t>(omega) + 1);
    for (std::size_t j = i + 1; j < end; ++j) {
      auto a = stream[i], b = stream[j];
      if (a == b) continue;
      out.push_back({std::min(a, b), std::max(a, b)});
    }
  }
}

WordGraph assemble(Indexed&& idx, const std::vector<Edge>& edges) {
  WordGraph g;
  g.graph = UndirectedGraph::from_edges(static_cast<int>(idx.lemmas.size()), edges);
  g.lemmas = std::move(idx.lemmas);
  g.lemma_index = std::move(idx.index);
  return g;
}

void check_omega(int omega) {
  if (omega < 1) throw InputError("omega must be >= 1");
}

std::string xml_escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::string_view model_name(GraphModel model) {
  switch (model) {
    case GraphModel::EC: return "EC";
    case GraphModel::PB: return "PB";
    case GraphModel::APB: return "APB";
  }
  return "?";
}

GraphModel parse_model(std::string_view name) {
  auto lower = to_lower(name);
  if (lower == "ec") return GraphModel::EC;
  if (lower == "pb") return GraphModel::PB;
  if (lower == "apb") return GraphModel::APB;
  throw InputError("unknown graph model '" + std::string(name) + "'");
}

void GraphBuildConfig::validate() const {
  check_omega(omega);
  if (model == GraphModel::APB && !(alpha > 0.0 && alpha < 1.0))
    throw InputError("alpha must lie in (0, 1)");
}

NodeId WordGraph::find(std::string_view lemma) const {
  auto it = lemma_index.find(std::string(lemma));
  return it == lemma_index.end() ? -1 : it->second;
}

WordGraph WordGraph::induced(const std::vector<bool>& keep) const {
  auto [sub, old_ids] = graph.induced_subgraph(keep);
  WordGraph out;
  out.graph = std::move(sub);
  out.lemmas.reserve(old_ids.size());
  for (NodeId old : old_ids) {
    out.lemma_index.emplace(lemmas[old], static_cast<NodeId>(out.lemmas.size()));
    out.lemmas.push_back(lemmas[old]);
  }
  return out;
}

void CooccurrenceStats::validate() const {
  if (N < 1 || n1 < 0 || n2 < 0 || n1 > N || n2 > N || k < 0)
    throw std::invalid_argument("co-occurrence counts violate 0 <= n1, n2 <= N, N >= 1");
}

double cooccurrence_pmf(const CooccurrenceStats& s, bool strict) {
  s.validate();
  const auto lo = std::max<std::int64_t>(0, s.n1 + s.n2 - s.N);
  const auto hi = std::min(s.n1, s.n2);
  if (s.k < lo || s.k > hi) {
    if (strict) throw DomainError("k outside the support of the null model");
    return 0.0;
  }
  const double log_p =
      log_choose(s.n1, s.k) + log_choose(s.N - s.n1, s.n2 - s.k) - log_choose(s.N, s.n2);
  return std::exp(log_p);
}

double cooccurrence_pvalue(const CooccurrenceStats& s, std::int64_t r, bool strict) {
  s.validate();
  const auto lo = std::max<std::int64_t>(0, s.n1 + s.n2 - s.N);
  const auto hi = std::min(s.n1, s.n2);
  if (r < 0 || r > hi) {
    if (strict) throw DomainError("r outside [0, min(n1, n2)]");
    return r < 0 ? 1.0 : 0.0;
  }
  if (r <= lo) return 1.0;
  double tail = 0.0;
  CooccurrenceStats at = s;
  for (std::int64_t k = hi; k >= r; --k) {
    at.k = k;
    tail += cooccurrence_pmf(at);
  }
  return std::min(tail, 1.0);
}

WordGraph build_ec(const AnnotatedDocument& doc, int omega) {
  check_omega(omega);
  auto idx = index_document(doc);
  std::vector<NodeId> stream;
  for (const auto& p : idx.paragraphs) stream.insert(stream.end(), p.begin(), p.end());
  std::vector<Edge> edges;
  window_pairs(stream, omega, edges);
  return assemble(std::move(idx), edges);
}

WordGraph build_pb(const AnnotatedDocument& doc, int omega) {
  check_omega(omega);
  auto idx = index_document(doc);
  std::vector<Edge> edges;
  for (const auto& p : idx.paragraphs) window_pairs(p, omega, edges);
  return assemble(std::move(idx), edges);
}

WordGraph build_apb(const AnnotatedDocument& doc, int omega, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw InputError("alpha must lie in (0, 1)");
  auto pb = build_pb(doc, omega);

  // Sorted paragraph indices in which each node occurs.
  std::vector<std::vector<int>> occurs(pb.num_nodes());
  for (std::size_t p = 0; p < doc.paragraphs.size(); ++p) {
    for (const auto& tok : doc.paragraphs[p]) {
      auto& list = occurs[pb.lemma_index.at(tok.lemma)];
      if (list.empty() || list.back() != static_cast<int>(p))
        list.push_back(static_cast<int>(p));
    }
  }

  const auto n_paragraphs = static_cast<std::int64_t>(doc.paragraphs.size());
  std::map<std::tuple<std::int64_t, std::int64_t, std::int64_t>, double> cache;
  std::vector<Edge> kept;
  for (auto [u, v] : pb.graph.edges()) {
    const auto& a = occurs[u];
    const auto& b = occurs[v];
    std::int64_t shared = 0;
    for (std::size_t i = 0, j = 0; i < a.size() && j < b.size();) {
      if (a[i] < b[j]) ++i;
      else if (b[j] < a[i]) ++j;
      else { ++shared; ++i; ++j; }
    }
    CooccurrenceStats stats{n_paragraphs, static_cast<std::int64_t>(a.size()),
                            static_cast<std::int64_t>(b.size()), shared};
    auto key = std::make_tuple(stats.n1, stats.n2, stats.k);
    auto it = cache.find(key);
    if (it == cache.end())
      it = cache.emplace(key, cooccurrence_pvalue(stats, stats.k)).first;
    // p-values equal to alpha in exact arithmetic must not be lost to rounding.
    if (it->second <= alpha * (1.0 + 1e-12)) kept.push_back({u, v});
  }
  pb.graph = UndirectedGraph::from_edges(pb.num_nodes(), kept);
  return pb;
}

WordGraph build_graph(const AnnotatedDocument& doc, const GraphBuildConfig& config) {
  config.validate();
  switch (config.model) {
    case GraphModel::EC: return build_ec(doc, config.omega);
    case GraphModel::PB: return build_pb(doc, config.omega);
    case GraphModel::APB: return build_apb(doc, config.omega, config.alpha);
  }
  throw InputError("unknown graph model");
}

CooccurrenceStats pair_stats(const AnnotatedDocument& doc, std::string_view lemma_a,
                             std::string_view lemma_b) {
  CooccurrenceStats s{static_cast<std::int64_t>(doc.paragraphs.size()), 0, 0, 0};
  for (const auto& para : doc.paragraphs) {
    bool has_a = false, has_b = false;
    for (const auto& tok : para) {
      has_a |= tok.lemma == lemma_a;
      has_b |= tok.lemma == lemma_b;
    }
    s.n1 += has_a;
    s.n2 += has_b;
    s.k += has_a && has_b;
  }
  return s;
}

std::string edge_list_tsv(const WordGraph& g) {
  std::vector<std::string> lines;
  lines.reserve(static_cast<std::size_t>(g.num_edges()));
  for (auto [u, v] : g.graph.edges()) {
    const auto& a = g.lemmas[u];
    const auto& b = g.lemmas[v];
    lines.push_back(a < b ? a + '\t' + b : b + '\t' + a);
  }
  std::sort(lines.begin(), lines.end());
  std::string out;
  for (const auto& l : lines) {
    out += l;
    out += '\n';
  }
  return out;
}

std::string node_table_tsv(const WordGraph& g) {
  std::ostringstream os;
  os << "id\tlemma\tdegree\n";
  for (NodeId v = 0; v < g.num_nodes(); ++v)
    os << v << '\t' << g.lemmas[v] << '\t' << g.graph.degree(v) << '\n';
  return os.str();
}

std::string graphml(const WordGraph& g) {
  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        "<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\">\n"
        "  <key id=\"label\" for=\"node\" attr.name=\"label\" attr.type=\"string\"/>\n"
        "  <graph id=\"G\" edgedefault=\"undirected\">\n";
  for (NodeId v = 0; v < g.num_nodes(); ++v)
    os << "    <node id=\"n" << v << "\"><data key=\"label\">" << xml_escape(g.lemmas[v])
       << "</data></node>\n";
  for (auto [u, v] : g.graph.edges())
    os << "    <edge source=\"n" << u << "\" target=\"n" << v << "\"/>\n";
  os << "  </graph>\n</graphml>\n";
  return os.str();
}

}  // namespace topicweave
