// coset_graph.hpp -- Schreier coset graphs of subgroups of free groups as
// partial deterministic involutive automata, with three backends: folded
// cores of finitely generated subgroups, quotient graphs driven by
// permutations or a transition oracle, and exported partial constructions.

#pragma once

#include <cstdint>
#include <deque>
#include <functional>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "growth.hpp"
#include "word.hpp"

namespace cogrow {

using Vertex = std::uint32_t;
inline constexpr Vertex kNoVertex = 0xFFFFFFFFu;

enum class GraphBackend { folded, quotient, construction };

// One permutation of {1..degree} per generator; the graph acts on the orbit
// of the basepoint and the subgroup is the basepoint stabilizer.
struct PermutationRep {
  std::size_t degree = 1;
  std::vector<std::vector<std::uint32_t>> images;  // 0-based, one per generator
  std::uint32_t basepoint = 0;

  void validate() const {
    if (degree == 0) throw std::invalid_argument("permutation degree is zero");
    if (basepoint >= degree)
      throw std::invalid_argument("basepoint outside the domain");
    for (const auto& p : images) {
      if (p.size() != degree)
        throw std::invalid_argument("permutation has wrong degree");
      std::vector<bool> seen(degree, false);
      for (auto v : p) {
        if (v >= degree || seen[v])
          throw std::invalid_argument("images do not form a permutation");
        seen[v] = true;
      }
    }
  }
};

// Parses one permutation per line in cycle notation, e.g. "(1 2)(3 4)".
// "id" or "()" denotes the identity. The degree is the largest point named.
inline PermutationRep parse_permutations(std::istream& in) {
  std::vector<std::vector<std::vector<std::uint32_t>>> cycles_per_gen;
  std::size_t degree = 1;
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    bool blank = line.find_first_not_of(" \t\r") == std::string::npos;
    if (blank) continue;
    std::vector<std::vector<std::uint32_t>> cycles;
    std::size_t i = 0;
    auto skip_ws = [&] {
      while (i < line.size() && (line[i] == ' ' || line[i] == '\t' ||
                                 line[i] == ',' || line[i] == '\r'))
        ++i;
    };
    skip_ws();
    if (line.compare(i, 2, "id") == 0) {
      cycles_per_gen.push_back({});
      continue;
    }
    while (true) {
      skip_ws();
      if (i >= line.size()) break;
      if (line[i] != '(')
        throw std::invalid_argument("expected '(' in cycle notation: " + line);
      ++i;
      std::vector<std::uint32_t> cyc;
      while (true) {
        skip_ws();
        if (i < line.size() && line[i] == ')') {
          ++i;
          break;
        }
        std::size_t j = i;
        while (j < line.size() && std::isdigit((unsigned char)line[j])) ++j;
        if (j == i)
          throw std::invalid_argument("expected point in cycle: " + line);
        unsigned long p = std::stoul(line.substr(i, j - i));
        if (p == 0) throw std::invalid_argument("points are numbered from 1");
        cyc.push_back((std::uint32_t)(p - 1));
        degree = std::max<std::size_t>(degree, p);
        i = j;
      }
      if (cyc.size() > 1) cycles.push_back(std::move(cyc));
    }
    cycles_per_gen.push_back(std::move(cycles));
  }
  if (cycles_per_gen.empty())
    throw std::invalid_argument("permutation file names no generators");
  PermutationRep rep;
  rep.degree = degree;
  for (const auto& cycles : cycles_per_gen) {
    std::vector<std::uint32_t> img(degree);
    for (std::uint32_t p = 0; p < degree; ++p) img[p] = p;
    for (const auto& cyc : cycles)
      for (std::size_t k = 0; k < cyc.size(); ++k)
        img[cyc[k]] = cyc[(k + 1) % cyc.size()];
    rep.images.push_back(std::move(img));
  }
  rep.validate();
  return rep;
}

// Deterministic transition oracle for quotient graphs that are not given by
// permutations: maps (state label, letter) -> state label. Must be involutive.
using TransitionOracle = std::function<std::int64_t(std::int64_t, Letter)>;

struct TraceResult {
  Vertex vertex = 0;        // endpoint, or the vertex where the trace stuck
  std::size_t consumed = 0; // letters consumed before sticking
  bool complete = false;
};

struct Transversal {
  std::vector<Word> words;  // prefix-closed, in ShortLex order
  GrowthTable table;        // Gamma_{G/H}(0..depth)
};

inline std::vector<Count> free_group_growth_values(int rank, unsigned n) {
  std::vector<Count> vals{1};
  Count level = 1;
  for (unsigned i = 1; i <= n; ++i) {
    level = checked_mul(level, i == 1 ? Count(2 * rank) : Count(2 * rank - 1));
    vals.push_back(checked_add(vals.back(), level));
  }
  return vals;
}

// Gamma_G(n) for the free group of the given rank: 1 + sum 2m(2m-1)^{i-1}.
inline GrowthTable free_group_growth(int rank, unsigned n) {
  return GrowthTable(free_group_growth_values(rank, n));
}

// A graph is mutable while one owner builds or lazily completes it; once no
// further completion is needed it can be shared read-only across threads.
class CosetGraph {
 public:
  // ---- constructors -------------------------------------------------------

  // Stallings folding of the bouquet of generator loops. The result is the
  // deterministic involutive core graph of <generators>.
  static CosetGraph fold(const Alphabet& ab, std::vector<Word> generators);

  static CosetGraph from_permutations(const PermutationRep& rep,
                                      const Alphabet& ab = Alphabet(2));

  static CosetGraph from_callback(const Alphabet& ab, TransitionOracle oracle,
                                  std::int64_t root_label);

  // Wraps an explicit partial transition table; used by the essential
  // subgroup constructor. Queries are resolvable only within safe_horizon.
  static CosetGraph from_table(const Alphabet& ab,
                               std::vector<Vertex> transitions,
                               unsigned safe_horizon);

  // ---- observers ----------------------------------------------------------

  const Alphabet& alphabet() const { return ab_; }
  GraphBackend backend() const { return backend_; }
  Vertex root() const { return 0; }
  std::size_t vertex_count() const { return next_.size() / deg_; }
  std::size_t core_size() const { return core_size_; }
  unsigned safe_horizon() const { return safe_horizon_; }
  const std::vector<Word>& origin_generators() const { return origin_gens_; }

  std::size_t max_vertices() const { return max_vertices_; }
  void set_max_vertices(std::size_t cap) {
    if (cap == 0) throw std::invalid_argument("vertex cap must be positive");
    max_vertices_ = cap;
  }

  std::optional<Vertex> step(Vertex v, Letter x) const {
    Vertex t = next_[v * deg_ + ab_.index(x)];
    return t == kNoVertex ? std::nullopt : std::optional<Vertex>(t);
  }

  // Total-transition view: sprouts hanging trees on folded graphs and
  // materializes oracle states; raises horizon_error on construction graphs.
  Vertex step_complete(Vertex v, Letter x) { return resolve(v, ab_.index(x)); }

  // ---- operations ---------------------------------------------------------

  // Follows defined transitions. With grow=true, folded graphs sprout fresh
  // hanging-tree vertices at undefined slots (this reconstructs the full
  // Schreier graph, which is exactly core plus trees) and oracle graphs
  // materialize further states. Construction graphs never grow.
  TraceResult trace(const Word& w, Vertex from = 0, bool grow = false);

  // Membership w in H, i.e. whether w traces root to root.
  //   folded:       a trace that leaves the core never returns, so a stuck
  //                 trace means "no";
  //   quotient:     transitions are total;
  //   construction: a stuck trace is unresolvable and raises horizon_error.
  bool contains(const Word& w);

  // The unique ShortLex-minimal Schreier transversal restricted to words of
  // length <= depth, together with the cogrowth table.
  Transversal minimal_transversal(unsigned depth);
  GrowthTable cogrowth_table(unsigned depth);

  // Gamma^{(G)}_H: counts reduced words of length <= depth tracing root to
  // root, by dynamic programming over (vertex, last letter).
  GrowthTable subgroup_growth(unsigned depth);

  // The two-sided coset decomposition bound relating Gamma_{G/H}, the
  // subgroup growth and Gamma_G, checked at every level <= n.
  bool sandwich_check_eq5(unsigned n);

  // Cogrowth restriction for normal subgroups:
  // Gamma(n1+n2) <= Gamma(n1-1) + gamma(n1) * Gamma(n2). Caller asserts
  // normality (quotient backends are normal by construction).
  bool normality_check_eq6(unsigned n1, unsigned n2);

  // One free generator per chord of the ShortLex BFS spanning tree. Exact
  // for folded cores and finite graphs; for infinite oracle graphs, chords
  // discovered within the given radius.
  std::vector<Word> nielsen_schreier_basis(unsigned depth);

  // Quantitative shadow of "a conjugate of an essential subgroup is
  // essential": Gamma_{G/H^w}(i) <= Gamma_{G/H}(i + 2 l(w)) for i <= n.
  bool conjugate_cogrowth_shift(const Word& w, unsigned n);

  // Full scan of the Schreier identity delta(delta(v,x),x^-1) = v over all
  // defined transitions; throws on violation.
  void check_involution() const;

  // Edge list "v x u", one line per edge pair, letters in text encoding.
  void dump_edges(std::ostream& os) const;

 private:
  CosetGraph(const Alphabet& ab, GraphBackend backend)
      : ab_(ab), deg_((unsigned)ab.degree()), backend_(backend) {}

  Vertex new_vertex() {
    if (vertex_count() >= max_vertices_)
      throw horizon_error("vertex budget exhausted (" +
                          std::to_string(max_vertices_) + ")");
    next_.resize(next_.size() + deg_, kNoVertex);
    return (Vertex)(vertex_count() - 1);
  }

  void set_arc(Vertex v, int idx, Vertex u) {
    next_[v * deg_ + idx] = u;
    next_[u * deg_ + Alphabet::index_of_inverse(idx)] = v;
  }

  Vertex at(Vertex v, int idx) const { return next_[v * deg_ + idx]; }

  // Resolves (v, idx) for complete-semantics backends, growing as needed.
  Vertex resolve(Vertex v, int idx);

  struct BfsTreeNode {
    Vertex parent = kNoVertex;
    Letter in_letter = 0;
    unsigned dist = 0;
  };
  // BFS in letter order; returns discovery order and per-vertex tree data.
  // grow=false raises horizon_error if an undefined slot blocks expansion.
  void bfs(unsigned depth, bool grow, std::vector<Vertex>& order,
           std::map<Vertex, BfsTreeNode>& tree);

  Word word_of(Vertex v, const std::map<Vertex, BfsTreeNode>& tree) const;

  Alphabet ab_;
  unsigned deg_;
  GraphBackend backend_;
  std::vector<Vertex> next_;  // flat (vertex, letter index) -> vertex table
  std::size_t core_size_ = 0;
  unsigned safe_horizon_ = 0;
  std::size_t max_vertices_ = 1'000'000;
  std::vector<Word> origin_gens_;

  TransitionOracle oracle_;
  std::map<std::int64_t, Vertex> label_to_id_;
  std::vector<std::int64_t> id_to_label_;
};

// ---- construction ---------------------------------------------------------

inline CosetGraph CosetGraph::fold(const Alphabet& ab,
                                   std::vector<Word> generators) {
  // Build the bouquet with map-based slots, then fold with a union-find,
  // always reading vertex ids through find().
  std::vector<std::uint32_t> parent;
  std::vector<std::map<int, std::uint32_t>> slots;
  auto make = [&] {
    parent.push_back((std::uint32_t)parent.size());
    slots.emplace_back();
    return (std::uint32_t)(parent.size() - 1);
  };
  std::function<std::uint32_t(std::uint32_t)> find =
      [&](std::uint32_t v) -> std::uint32_t {
    while (parent[v] != v) {
      parent[v] = parent[parent[v]];
      v = parent[v];
    }
    return v;
  };

  std::uint32_t root = make();
  std::deque<std::pair<std::uint32_t, std::uint32_t>> merges;

  // Adds the arc and its involution twin, queueing a merge on conflict.
  std::function<void(std::uint32_t, int, std::uint32_t)> ensure_arc =
      [&](std::uint32_t u, int idx, std::uint32_t v) {
        u = find(u);
        v = find(v);
        auto it = slots[u].find(idx);
        if (it != slots[u].end()) {
          std::uint32_t t = find(it->second);
          if (t != v) merges.emplace_back(t, v);
          return;
        }
        slots[u][idx] = v;
        int inv = Alphabet::index_of_inverse(idx);
        auto jt = slots[v].find(inv);
        if (jt != slots[v].end()) {
          std::uint32_t t = find(jt->second);
          if (t != u) merges.emplace_back(t, u);
        } else {
          slots[v][inv] = u;
        }
      };

  for (const Word& g : generators) {
    for (Letter x : g.letters())
      if (!ab.valid(x))
        throw std::invalid_argument("generator uses letters outside alphabet");
    std::uint32_t cur = root;
    for (std::size_t i = 0; i < g.size(); ++i) {
      std::uint32_t nxt = (i + 1 == g.size()) ? root : make();
      ensure_arc(cur, ab.index(g[i]), nxt);
      cur = find(nxt);
    }
  }

  while (!merges.empty()) {
    auto [a, b] = merges.front();
    merges.pop_front();
    a = find(a);
    b = find(b);
    if (a == b) continue;
    if (slots[a].size() < slots[b].size()) std::swap(a, b);
    parent[b] = a;  // absorb b into a
    for (auto& [idx, tgt] : slots[b]) {
      std::uint32_t t = find(tgt);
      auto it = slots[a].find(idx);
      if (it != slots[a].end()) {
        std::uint32_t u = find(it->second);
        if (u != t) merges.emplace_back(u, t);
      } else {
        slots[a][idx] = t;
      }
    }
    slots[b].clear();
  }

  // Renumber the folded graph by BFS from the root in letter order, so vertex
  // ids are deterministic.
  CosetGraph g(ab, GraphBackend::folded);
  std::map<std::uint32_t, Vertex> id;
  std::deque<std::uint32_t> queue{find(root)};
  id[find(root)] = g.new_vertex();
  while (!queue.empty()) {
    std::uint32_t v = queue.front();
    queue.pop_front();
    for (int idx = 0; idx < ab.degree(); ++idx) {
      auto it = slots[v].find(idx);
      if (it == slots[v].end()) continue;
      std::uint32_t t = find(it->second);
      if (!id.count(t)) {
        id[t] = g.new_vertex();
        queue.push_back(t);
      }
      g.next_[id[v] * g.deg_ + idx] = id[t];
    }
  }
  g.core_size_ = g.vertex_count();
  g.origin_gens_ = std::move(generators);
  g.check_involution();
  return g;
}

inline CosetGraph CosetGraph::from_permutations(const PermutationRep& rep,
                                                const Alphabet& ab) {
  rep.validate();
  if (rep.images.size() != (std::size_t)ab.rank)
    throw std::invalid_argument("permutation count must match the rank");
  std::vector<std::vector<std::uint32_t>> inv(rep.images.size());
  for (std::size_t i = 0; i < rep.images.size(); ++i) {
    inv[i].resize(rep.degree);
    for (std::uint32_t p = 0; p < rep.degree; ++p) inv[i][rep.images[i][p]] = p;
  }
  CosetGraph g(ab, GraphBackend::quotient);
  std::map<std::uint32_t, Vertex> id;
  std::deque<std::uint32_t> queue{rep.basepoint};
  id[rep.basepoint] = g.new_vertex();
  while (!queue.empty()) {
    std::uint32_t p = queue.front();
    queue.pop_front();
    for (int idx = 0; idx < ab.degree(); ++idx) {
      Letter x = ab.letter_at(idx);
      std::uint32_t q = x > 0 ? rep.images[x - 1][p] : inv[-x - 1][p];
      if (!id.count(q)) {
        id[q] = g.new_vertex();
        queue.push_back(q);
      }
      g.next_[id[p] * g.deg_ + idx] = id[q];
    }
  }
  g.core_size_ = g.vertex_count();
  g.check_involution();
  return g;
}

inline CosetGraph CosetGraph::from_callback(const Alphabet& ab,
                                            TransitionOracle oracle,
                                            std::int64_t root_label) {
  CosetGraph g(ab, GraphBackend::quotient);
  g.oracle_ = std::move(oracle);
  g.label_to_id_[root_label] = g.new_vertex();
  g.id_to_label_.push_back(root_label);
  g.core_size_ = 1;
  return g;
}

inline CosetGraph CosetGraph::from_table(const Alphabet& ab,
                                         std::vector<Vertex> transitions,
                                         unsigned safe_horizon) {
  if (transitions.size() % ab.degree() != 0 || transitions.empty())
    throw std::invalid_argument("transition table has wrong shape");
  CosetGraph g(ab, GraphBackend::construction);
  g.next_ = std::move(transitions);
  g.core_size_ = g.vertex_count();
  g.safe_horizon_ = safe_horizon;
  g.check_involution();
  return g;
}

// ---- stepping -------------------------------------------------------------

inline Vertex CosetGraph::resolve(Vertex v, int idx) {
  Vertex t = at(v, idx);
  if (t != kNoVertex) return t;
  switch (backend_) {
    case GraphBackend::folded: {
      // Sprout a fresh hanging-tree vertex.
      Vertex u = new_vertex();
      set_arc(v, idx, u);
      return u;
    }
    case GraphBackend::quotient: {
      if (!oracle_)
        throw std::logic_error("complete quotient graph has undefined slot");
      Letter x = ab_.letter_at(idx);
      std::int64_t target = oracle_(id_to_label_[v], x);
      if (oracle_(target, inverse(x)) != id_to_label_[v])
        throw std::invalid_argument(
            "oracle involution violation at state " +
            std::to_string(id_to_label_[v]) + " letter " +
            to_string(Word::from_reduced({x})));
      auto it = label_to_id_.find(target);
      Vertex u;
      if (it == label_to_id_.end()) {
        u = new_vertex();
        label_to_id_[target] = u;
        id_to_label_.push_back(target);
      } else {
        u = it->second;
      }
      next_[v * deg_ + idx] = u;
      // Only set the reverse arc when the oracle agrees; it always does for a
      // valid oracle, checked above.
      next_[u * deg_ + Alphabet::index_of_inverse(idx)] = v;
      return u;
    }
    case GraphBackend::construction:
      throw horizon_error("undefined at horizon (safe horizon " +
                          std::to_string(safe_horizon_) + ")");
  }
  throw std::logic_error("unreachable");
}

inline TraceResult CosetGraph::trace(const Word& w, Vertex from, bool grow) {
  TraceResult r;
  r.vertex = from;
  for (std::size_t i = 0; i < w.size(); ++i) {
    int idx = ab_.index(w[i]);
    Vertex t = at(r.vertex, idx);
    if (t == kNoVertex) {
      if (!grow) {
        r.consumed = i;
        r.complete = false;
        return r;
      }
      t = resolve(r.vertex, idx);
    }
    r.vertex = t;
  }
  r.consumed = w.size();
  r.complete = true;
  return r;
}

inline bool CosetGraph::contains(const Word& w) {
  switch (backend_) {
    case GraphBackend::folded: {
      // Reduced words that leave the core descend a hanging tree for good.
      TraceResult t = trace(w, 0, false);
      return t.complete && t.vertex == 0;
    }
    case GraphBackend::quotient: {
      TraceResult t = trace(w, 0, true);
      return t.vertex == 0;
    }
    case GraphBackend::construction: {
      TraceResult t = trace(w, 0, false);
      if (!t.complete)
        throw horizon_error("undefined at horizon while tracing " +
                            to_string(w));
      return t.vertex == 0;
    }
  }
  throw std::logic_error("unreachable");
}

// ---- BFS and growth tables -------------------------------------------------

inline void CosetGraph::bfs(unsigned depth, bool grow,
                            std::vector<Vertex>& order,
                            std::map<Vertex, BfsTreeNode>& tree) {
  order.clear();
  tree.clear();
  order.push_back(0);
  tree[0] = BfsTreeNode{kNoVertex, 0, 0};
  std::size_t head = 0;
  while (head < order.size()) {
    Vertex v = order[head++];
    unsigned d = tree[v].dist;
    if (d == depth) continue;
    for (int idx = 0; idx < (int)deg_; ++idx) {
      Vertex t = at(v, idx);
      if (t == kNoVertex) {
        if (grow && backend_ != GraphBackend::construction)
          t = resolve(v, idx);
        else if (backend_ == GraphBackend::construction)
          throw horizon_error("undefined at horizon during BFS at radius " +
                              std::to_string(d + 1));
        else
          continue;
      }
      if (!tree.count(t)) {
        tree[t] = BfsTreeNode{v, ab_.letter_at(idx), d + 1};
        order.push_back(t);
      }
    }
  }
}

inline Word CosetGraph::word_of(Vertex v,
                                const std::map<Vertex, BfsTreeNode>& tree)
    const {
  std::vector<Letter> letters;
  auto it = tree.find(v);
  while (it != tree.end() && it->second.parent != kNoVertex) {
    letters.push_back(it->second.in_letter);
    it = tree.find(it->second.parent);
  }
  std::reverse(letters.begin(), letters.end());
  return Word::from_reduced(std::move(letters));
}

inline Transversal CosetGraph::minimal_transversal(unsigned depth) {
  std::vector<Vertex> order;
  std::map<Vertex, BfsTreeNode> tree;
  bfs(depth, true, order, tree);
  Transversal result;
  std::vector<Count> counts(depth + 1, 0);
  result.words.reserve(order.size());
  for (Vertex v : order) {
    counts[tree[v].dist] += 1;
    result.words.push_back(word_of(v, tree));
  }
  std::vector<Count> cumulative(depth + 1);
  Count sum = 0;
  for (unsigned i = 0; i <= depth; ++i) {
    sum = checked_add(sum, counts[i]);
    cumulative[i] = sum;
  }
  result.table = GrowthTable(std::move(cumulative));
  return result;
}

inline GrowthTable CosetGraph::cogrowth_table(unsigned depth) {
  return minimal_transversal(depth).table;
}

inline GrowthTable CosetGraph::subgroup_growth(unsigned depth) {
  // counts[v][last letter index] = number of reduced words of the current
  // length tracing root -> v without an undefined step.
  if (backend_ == GraphBackend::quotient && oracle_) {
    // Materialize the ball the DP can reach.
    std::vector<Vertex> order;
    std::map<Vertex, BfsTreeNode> tree;
    bfs(depth, true, order, tree);
  }
  std::vector<Count> table{1};  // the empty word
  std::map<std::pair<Vertex, int>, Count> counts;
  for (int idx = 0; idx < (int)deg_; ++idx) {
    Vertex t = at(0, idx);
    if (t == kNoVertex) {
      if (backend_ == GraphBackend::construction)
        throw horizon_error("undefined at horizon in subgroup growth");
      continue;
    }
    counts[{t, idx}] += 1;
  }
  Count loops = 1;
  for (unsigned len = 1; len <= depth; ++len) {
    for (const auto& [key, c] : counts)
      if (key.first == 0) loops = checked_add(loops, c);
    table.push_back(loops);
    if (len == depth) break;
    std::map<std::pair<Vertex, int>, Count> next_counts;
    for (const auto& [key, c] : counts) {
      auto [v, last] = key;
      for (int idx = 0; idx < (int)deg_; ++idx) {
        if (idx == Alphabet::index_of_inverse(last)) continue;
        Vertex t = at(v, idx);
        if (t == kNoVertex) {
          if (backend_ == GraphBackend::construction)
            throw horizon_error("undefined at horizon in subgroup growth");
          continue;  // the word escapes into a hanging tree for good
        }
        Count& slot = next_counts[{t, idx}];
        slot = checked_add(slot, c);
      }
    }
    counts = std::move(next_counts);
  }
  return GrowthTable(std::move(table));
}

inline bool CosetGraph::sandwich_check_eq5(unsigned n) {
  GrowthTable cog = cogrowth_table(n);
  GrowthTable sub = subgroup_growth(2 * n);
  GrowthTable amb = free_group_growth(ab_.rank, n);
  for (unsigned k = 0; k <= n; ++k) {
    unsigned __int128 lower = 0, upper = 0;
    for (unsigned i = 0; i <= k; ++i) {
      lower += (unsigned __int128)cog.increment(i) * sub.at(k - i);
      upper += (unsigned __int128)cog.increment(i) * sub.at(k + i);
    }
    if (lower > amb.at(k) || (unsigned __int128)amb.at(k) > upper) return false;
  }
  return true;
}

inline bool CosetGraph::normality_check_eq6(unsigned n1, unsigned n2) {
  if (n1 < 1) throw std::invalid_argument("eq6 requires n1 >= 1");
  GrowthTable cog = cogrowth_table(n1 + n2);
  unsigned __int128 rhs = (unsigned __int128)cog.at(n1 - 1) +
                          (unsigned __int128)cog.increment(n1) * cog.at(n2);
  return cog.at(n1 + n2) <= rhs;
}

inline std::vector<Word> CosetGraph::nielsen_schreier_basis(unsigned depth) {
  std::vector<Vertex> order;
  std::map<Vertex, BfsTreeNode> tree;
  if (backend_ == GraphBackend::folded) {
    // The core is finite and contains every chord: hanging trees are
    // chord-free, so the basis below is the full free basis of H.
    bfs(0xFFFFFFF0u, false, order, tree);
  } else {
    bfs(depth, true, order, tree);
  }
  std::map<std::pair<Vertex, int>, bool> used;
  std::vector<Word> basis;
  for (Vertex v : order) {
    for (int idx = 0; idx < (int)deg_; ++idx) {
      Vertex u = at(v, idx);
      if (u == kNoVertex || !tree.count(u)) continue;
      // Skip the spanning tree edge into u and its twin.
      if (tree[u].parent == v && ab_.index(tree[u].in_letter) == idx) continue;
      if (tree[v].parent == u &&
          ab_.index(inverse(tree[v].in_letter)) == idx)
        continue;
      if (used[{v, idx}]) continue;
      used[{v, idx}] = true;
      used[{u, Alphabet::index_of_inverse(idx)}] = true;
      Word gen = multiply(
          multiply(word_of(v, tree),
                   Word::from_reduced({ab_.letter_at(idx)})),
          invert(word_of(u, tree)));
      Word inv_gen = invert(gen);
      basis.push_back(shortlex_less(inv_gen, gen) ? inv_gen : gen);
    }
  }
  std::sort(basis.begin(), basis.end(), ShortLexLess{});
  return basis;
}

inline bool CosetGraph::conjugate_cogrowth_shift(const Word& w, unsigned n) {
  if (backend_ != GraphBackend::folded)
    throw std::invalid_argument(
        "conjugate cogrowth shift needs a folded graph");
  std::vector<Word> conj_gens;
  conj_gens.reserve(origin_gens_.size());
  for (const Word& g : origin_gens_) conj_gens.push_back(conjugate(g, w));
  CosetGraph hw = CosetGraph::fold(ab_, conj_gens);
  GrowthTable shifted = cogrowth_table(n + 2 * (unsigned)w.size());
  GrowthTable conj = hw.cogrowth_table(n);
  for (unsigned i = 0; i <= n; ++i)
    if (conj.at(i) > shifted.at(i + 2 * w.size())) return false;
  return true;
}

inline void CosetGraph::check_involution() const {
  for (Vertex v = 0; v < vertex_count(); ++v)
    for (int idx = 0; idx < (int)deg_; ++idx) {
      Vertex u = at(v, idx);
      if (u == kNoVertex) continue;
      if (u >= vertex_count() ||
          at(u, Alphabet::index_of_inverse(idx)) != v)
        throw std::logic_error(
            "involution violated at vertex " + std::to_string(v) +
            " letter index " + std::to_string(idx));
    }
}

inline void CosetGraph::dump_edges(std::ostream& os) const {
  for (Vertex v = 0; v < vertex_count(); ++v)
    for (int idx = 0; idx < (int)deg_; idx += 2) {  // positive letters only
      Vertex u = at(v, idx);
      if (u == kNoVertex) continue;
      os << v << ' '
         << to_string(Word::from_reduced({ab_.letter_at(idx)})) << ' ' << u
         << '\n';
    }
}

// ---- subgroup files ---------------------------------------------------------

// One generator word per line; '#' starts a comment.
inline std::vector<Word> parse_subgroup_file(const Alphabet& ab,
                                             std::istream& in,
                                             bool allow_unreduced = false) {
  std::vector<Word> gens;
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::string token;
    for (char c : line)
      if (!std::isspace((unsigned char)c)) token.push_back(c);
    if (token.empty()) continue;
    gens.push_back(parse_word(ab, token, allow_unreduced));
  }
  return gens;
}

}  // namespace cogrow
