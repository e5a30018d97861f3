// intersection.hpp -- pullback of two coset graphs, realizing H1 ∩ H2 as the
// (root, root)-component of the product automaton, plus the growth-based
// sufficient condition for a nontrivial intersection.

#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "coset_graph.hpp"

namespace cogrow {

// Materializes the product automaton on the pairs reachable from
// (root, root) within the given BFS radius. A transition is defined on a
// pair exactly when both components are; membership agrees with the
// conjunction of the input memberships for traces inside the ball.
//
// Inputs with complete semantics (folded cores with their hanging trees,
// quotient graphs) never block; a construction-backend input raises
// horizon_error if its defined region is exhausted first.
inline CosetGraph intersect(CosetGraph& g1, CosetGraph& g2, unsigned horizon) {
  const Alphabet& ab = g1.alphabet();
  if (ab.rank != g2.alphabet().rank)
    throw std::invalid_argument("graphs live over different alphabets");

  std::map<std::pair<Vertex, Vertex>, Vertex> ids;
  std::vector<std::pair<Vertex, Vertex>> pairs{{0, 0}};
  std::vector<unsigned> dist{0};
  ids[{0, 0}] = 0;
  std::vector<Vertex> table(ab.degree(), kNoVertex);

  std::size_t head = 0;
  while (head < pairs.size()) {
    auto [v1, v2] = pairs[head];
    Vertex v = ids[{v1, v2}];
    unsigned d = dist[head++];
    if (d == horizon) continue;
    for (int idx = 0; idx < ab.degree(); ++idx) {
      Letter x = ab.letter_at(idx);
      Vertex t1 = g1.step_complete(v1, x);
      Vertex t2 = g2.step_complete(v2, x);
      auto [it, fresh] = ids.try_emplace({t1, t2}, (Vertex)ids.size());
      Vertex t = it->second;
      if (fresh) {
        pairs.emplace_back(t1, t2);
        dist.push_back(d + 1);
        table.resize(table.size() + ab.degree(), kNoVertex);
      }
      table[v * ab.degree() + idx] = t;
      table[t * ab.degree() + Alphabet::index_of_inverse(idx)] = v;
    }
  }
  // Distinct product vertices always project to distinct component pairs;
  // the ids map enforces it by construction.
  return CosetGraph::from_table(ab, std::move(table), horizon);
}

struct Prop11Result {
  bool ok = false;
  GrowthTable g1, g2, meet;  // cogrowth of H1, H2 and H1 ∩ H2
};

// max(Gamma_1, Gamma_2) <= Gamma_meet <= Gamma_1 * Gamma_2 at every level
// up to n; both bounds hold unconditionally, so a violation signals a
// bug rather than an interesting example.
inline Prop11Result prop11_check(CosetGraph& g1, CosetGraph& g2, unsigned n) {
  Prop11Result r;
  CosetGraph meet = intersect(g1, g2, n);
  r.g1 = g1.cogrowth_table(n);
  r.g2 = g2.cogrowth_table(n);
  r.meet = meet.cogrowth_table(n);
  r.ok = true;
  for (unsigned k = 0; k <= n; ++k) {
    Count lo = std::max(r.g1.at(k), r.g2.at(k));
    unsigned __int128 hi = (unsigned __int128)r.g1.at(k) * r.g2.at(k);
    if (r.meet.at(k) < lo || (unsigned __int128)r.meet.at(k) > hi) {
      r.ok = false;
      break;
    }
  }
  return r;
}

struct NontrivialityResult {
  bool witnessed = false;
  unsigned level = 0;            // first level with Gamma_1*Gamma_2 < Gamma_G
  std::optional<Word> element;   // explicit nontrivial member, when found
};

// One-sided intersection test: if at some level the product of
// the cogrowths is strictly below the ambient growth, the intersection is
// nontrivial. When witnessed, also hunts for a shortest nontrivial root loop
// of the product automaton as an explicit certificate.
inline NontrivialityResult sufficient_nontrivial(CosetGraph& g1,
                                                 CosetGraph& g2, unsigned n) {
  NontrivialityResult res;
  GrowthTable t1 = g1.cogrowth_table(n);
  GrowthTable t2 = g2.cogrowth_table(n);
  GrowthTable amb = free_group_growth(g1.alphabet().rank, n);
  for (unsigned k = 0; k <= n; ++k) {
    if ((unsigned __int128)t1.at(k) * t2.at(k) < amb.at(k)) {
      res.witnessed = true;
      res.level = k;
      break;
    }
  }
  if (!res.witnessed) return res;

  // BFS over (vertex, last letter) states of the product finds the shortest
  // reduced nonempty word tracing (root,root) to itself. Loops of length up
  // to 2n stay within the radius-n ball, so the search is complete there.
  CosetGraph meet = intersect(g1, g2, n);
  const Alphabet& ab = meet.alphabet();
  struct State {
    Vertex v;
    int last;  // letter index of the final letter
    unsigned len;
  };
  std::map<std::pair<Vertex, int>, std::pair<Vertex, int>> parent;
  std::vector<State> queue;
  for (int idx = 0; idx < ab.degree(); ++idx) {
    auto t = meet.step(0, ab.letter_at(idx));
    if (!t) continue;
    parent[{*t, idx}] = {kNoVertex, idx};
    queue.push_back({*t, idx, 1});
  }
  std::size_t head = 0;
  unsigned max_len = 2 * n;
  while (head < queue.size()) {
    State s = queue[head++];
    if (s.v == 0) {
      std::vector<Letter> letters;
      std::pair<Vertex, int> cur{s.v, s.last};
      while (true) {
        letters.push_back(ab.letter_at(cur.second));
        auto p = parent[cur];
        if (p.first == kNoVertex) break;
        cur = {p.first, p.second};
      }
      std::reverse(letters.begin(), letters.end());
      res.element = Word::from_reduced(std::move(letters));
      return res;
    }
    if (s.len == max_len) continue;
    for (int idx = 0; idx < ab.degree(); ++idx) {
      if (idx == Alphabet::index_of_inverse(s.last)) continue;
      auto t = meet.step(s.v, ab.letter_at(idx));
      if (!t) continue;
      if (parent.count({*t, idx})) continue;
      parent[{*t, idx}] = {s.v, s.last};
      queue.push_back({*t, idx, s.len + 1});
    }
  }
  return res;
}

}  // namespace cogrow
