// construction.hpp -- incremental builder of a Schreier transversal tree T
// and coset function pi for an essential subgroup of the rank-2 free group
// whose cogrowth tracks a prescribed CG function. Growth-shaping levels
// (g-sections) alternate with essentiality gadgets (e-sections) that force a
// power of each enumerated element into the subgroup and emit a replayable
// certificate.

#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "coset_graph.hpp"
#include "growth.hpp"
#include "word.hpp"

namespace cogrow {

struct EssentialityCertificate {
  enum class Kind { travel, tie };
  Word element;
  Count k = 0;      // power with pi(g^k) = root
  Count r = 0, s = 0;  // k = r + s + 1 for tie certificates
  Kind kind = Kind::travel;
};

struct SectionRecord {
  enum class Kind { grow, essential };
  Kind kind;
  unsigned from_depth;  // frontier before the section
  unsigned to_depth;    // frontier after it
  Word element;         // e-sections only
};

struct ConstructionReport {
  std::size_t certificates = 0;
  unsigned frontier = 0;
  unsigned interior = 0;
  std::size_t vertices = 0;
  bool budget_exhausted = false;
};

struct SandwichReport {
  GrowthTable alpha;     // target, to 2n
  GrowthTable tree;      // Gamma_T, to 2n
  GrowthTable cogrowth;  // Gamma_{G/H}, to n
  Count C = 0;
  bool greedy_ok = false;     // Gamma_T(i) <= alpha(i)
  bool lower_ok = false;      // alpha(i/C) <= Gamma_T(i)
  bool squeeze_ok = false;    // Gamma_T(i) <= Gamma_{G/H}(i) <= Gamma_T(2i)
  bool pi_length_ok = false;  // l(pi(w)) <= 2 l(w) for all words up to n
  bool all_ok() const {
    return greedy_ok && lower_ok && squeeze_ok && pi_length_ok;
  }
};

// A construction is strictly single-owner; exported graphs are independent
// copies, and distinct constructions run in parallel freely.
class EssentialConstruction {
 public:
  // Rejects bounded targets: any finite-index subgroup already realizes an
  // eventually-constant cogrowth, see finite_index_fallback.
  explicit EssentialConstruction(CGFunction alpha) : alpha_(std::move(alpha)) {
    if (alpha_.bounded())
      throw std::invalid_argument(
          "bounded target: use finite_index_fallback for eventually-constant "
          "cogrowth");
    validate_cg_prefix(alpha_, 2);
    cap_c_ = 1;
    while (((unsigned __int128)1 << cap_c_) * alpha_.ratio_den <
           alpha_.ratio_num)
      ++cap_c_;
    pi_.resize(4, kNoVertex);
    info_.push_back({kNoVertex, 0, 0, 0});
    levels_.push_back({0});
  }

  // An index-k stabilizer (k-cycle on the first generator, identity on the
  // second) has cogrowth eventually constant at k = alpha(r).
  static CosetGraph finite_index_fallback(const CGFunction& alpha) {
    if (!alpha.bounded())
      throw std::invalid_argument("fallback needs a bounded target");
    Count limit = partial_sums(alpha, *alpha.cutoff).at(*alpha.cutoff);
    PermutationRep rep;
    rep.degree = (std::size_t)limit;
    rep.images.resize(2);
    for (std::size_t g = 0; g < 2; ++g) {
      rep.images[g].resize(rep.degree);
      for (std::uint32_t p = 0; p < rep.degree; ++p)
        rep.images[g][p] = g == 0 ? (p + 1) % rep.degree : p;
    }
    return CosetGraph::from_permutations(rep);
  }

  // ---- observers ----------------------------------------------------------

  unsigned cap_c() const { return cap_c_; }
  unsigned frontier_depth() const { return frontier_; }
  unsigned interior_depth() const { return interior_; }
  std::size_t vertex_count() const { return info_.size(); }
  const std::vector<EssentialityCertificate>& certificates() const {
    return certs_;
  }
  const std::vector<SectionRecord>& schedule() const { return schedule_; }
  const std::vector<Vertex>& transitions() const { return pi_; }
  unsigned vertex_depth(Vertex v) const { return info_[v].depth; }

  std::size_t max_vertices() const { return max_vertices_; }
  void set_max_vertices(std::size_t cap) {
    if (cap == 0) throw std::invalid_argument("vertex cap must be positive");
    max_vertices_ = cap;
  }

  Word word_of(Vertex v) const {
    std::vector<Letter> letters;
    while (v != 0) {
      letters.push_back(info_[v].in_letter);
      v = info_[v].parent;
    }
    std::reverse(letters.begin(), letters.end());
    return Word::from_reduced(std::move(letters));
  }

  // Cumulative tree growth Gamma_T(0..n).
  GrowthTable tree_table(unsigned n) const {
    if (n > frontier_)
      throw horizon_error("tree not constructed to depth " + std::to_string(n));
    std::vector<Count> vals;
    Count sum = 0;
    for (unsigned i = 0; i <= n; ++i) {
      sum += i < levels_.size() ? levels_[i].size() : 0;
      vals.push_back(sum);
    }
    return GrowthTable(std::move(vals));
  }

  GrowthTable alpha_table(unsigned n) const {
    return partial_sums(alpha_, n);
  }

  // ---- g-section ----------------------------------------------------------

  // Extends the tree level by level up to target_depth, adding children in
  // ShortLex order at the fastest rate that never exceeds alpha. Children
  // avoid repeating the parent's incoming label (non-root vertices), which
  // keeps opposite-travel paths short inside growth regions. Levels below
  // the target are topped up where earlier e-sections left them thin; the
  // frontier level keeps a small reserve for the paths the next e-section
  // may append. Afterwards pi is completed on every vertex of depth
  // < target_depth - 1; boundary slots stay open so the tree can keep
  // growing. Idempotent when the target was already reached.
  void run_g_section(unsigned target_depth) {
    if (target_depth <= last_g_target_) return;
    ensure_alpha(target_depth);
    unsigned from = frontier_;
    ++g_sections_;
    for (unsigned level = 1; level <= target_depth; ++level) {
      if (levels_.size() <= level) levels_.push_back({});
      Count have = tree_count(level);
      Count cap = alpha_cache_[level];
      if (level == target_depth && cap > kReserve) cap -= kReserve;
      // The tree must gain at least one vertex per level to keep deepening.
      cap = std::max(cap, tree_count(level - 1) + 1);
      if (have >= cap) {
        if (levels_[level].empty())
          throw std::logic_error("tree growth stalled at level " +
                                 std::to_string(level));
        continue;
      }
      Count want = cap - have;
      sort_level(level - 1);
      for (Vertex p : levels_[level - 1]) {
        if (want == 0) break;
        for (int idx = 0; idx < 4 && want > 0; ++idx) {
          Letter x = Alphabet(2).letter_at(idx);
          if (pi_[p * 4 + idx] != kNoVertex) continue;
          if (info_[p].parent != kNoVertex) {
            if (x == inverse(info_[p].in_letter)) continue;
            if (x == info_[p].in_letter) continue;  // no-repeat rule
          }
          append_vertex(p, x, (int)g_sections_);
          --want;
        }
      }
      if (levels_[level].empty())
        throw std::logic_error("tree growth stalled at level " +
                               std::to_string(level));
    }
    // Close every remaining slot strictly inside the new tree.
    for (unsigned d = 0; d + 1 < target_depth; ++d) {
      sort_level(d);
      for (Vertex v : levels_[d])
        for (int idx = 0; idx < 4; ++idx)
          if (pi_[v * 4 + idx] == kNoVertex)
            opposite_travel(v, Alphabet(2).letter_at(idx));
    }
    interior_ = target_depth - 1;
    last_g_target_ = target_depth;
    schedule_.push_back(
        {SectionRecord::Kind::grow, from, frontier_, Word{}});
  }

  // Walks backwards along x-edges from g as far as pi allows and closes the
  // orbit with the chord pi(g x) = endpoint. Never touches a defined value.
  Vertex opposite_travel(Vertex g, Letter x) {
    Alphabet ab(2);
    int ix = ab.index(x);
    int inv_ix = Alphabet::index_of_inverse(ix);
    if (pi_[g * 4 + ix] != kNoVertex)
      throw std::logic_error("opposite travel on a defined slot");
    Vertex h = g;
    std::size_t guard = 0;
    while (pi_[h * 4 + inv_ix] != kNoVertex) {
      h = pi_[h * 4 + inv_ix];
      if (++guard > vertex_count())
        throw std::logic_error("sigma orbit cycles without an open slot");
    }
    pi_[g * 4 + ix] = h;
    pi_[h * 4 + inv_ix] = g;
    return h;
  }

  // ---- e-section ----------------------------------------------------------

  // Processes the next enumerated element g: travel from the root with
  // h1 then powers of the cyclically reduced core h2 certifies g directly
  // when the sigma-orbit closes through the base point; otherwise the two
  // power paths are appended and tied with the single chord
  // pi(u1 x) = u2 w^-1 (h2 = x w), forcing pi(g^{r+s+1}) = root.
  EssentialityCertificate run_e_section() {
    Word g = peek_element(cursor_);
    ++cursor_;
    unsigned from = frontier_;
    ++e_sections_;
    int tag = -(int)e_sections_;

    EssentialityCertificate cert;
    cert.element = g;
    if (g.empty()) {
      cert.k = 1;
      cert.kind = EssentialityCertificate::Kind::travel;
      certs_.push_back(cert);
      schedule_.push_back({SectionRecord::Kind::essential, from, frontier_, g});
      return cert;
    }

    CyclicDecomposition dec = cyclic_reduce(g);
    const Word& h1 = dec.conjugator;
    const Word& h2 = dec.core;
    std::size_t m = h2.size();

    // h1 leg, appending where undefined.
    Vertex v = 0;
    for (Letter y : h1.letters()) {
      Vertex t = pi_[v * 4 + Alphabet(2).index(y)];
      v = (t != kNoVertex) ? t : append_vertex(v, y, tag);
    }
    Vertex base = v;

    // Positive travel with powers of h2; once stuck, append the rest of the
    // current power and whole further powers until the fresh tail is longer
    // than one period. The tail endpoint is then out of reach of the
    // negative leg, which can share at most m-1 consecutive steps with it.
    Vertex cur = base;
    Count r = 0;
    bool appending = false;
    std::size_t appended = 0;
    while (true) {
      if (!appending && pi_[cur * 4 + Alphabet(2).index(h2[0])] == kNoVertex)
        appending = true;  // stuck exactly at a power boundary
      for (std::size_t j = 0; j < m; ++j) {
        Letter y = h2[j];
        if (!appending) {
          Vertex t = pi_[cur * 4 + Alphabet(2).index(y)];
          if (t != kNoVertex) {
            cur = t;
            continue;
          }
          appending = true;
        }
        cur = append_vertex(cur, y, tag);
        ++appended;
      }
      ++r;
      if (!appending && cur == base) {
        // Pure travel closed through the base: g^r lies in H already.
        cert.k = r;
        cert.kind = EssentialityCertificate::Kind::travel;
        verify_certificate(cert);
        certs_.push_back(cert);
        schedule_.push_back(
            {SectionRecord::Kind::essential, from, frontier_, g});
        return cert;
      }
      if (appending && appended >= m + 1) break;
      if (r > vertex_count() + 2)
        throw std::logic_error("positive travel failed to stick or close");
    }
    Vertex u1 = cur;

    // Negative travel with powers of h2^-1; it can never close through the
    // base once the positive travel stuck (the sigma-orbit of the base is a
    // simple path). Stops at the first power boundary after sticking.
    Word h2inv = invert(h2);
    cur = base;
    Count s = 0;
    while (true) {
      if (pi_[cur * 4 + Alphabet(2).index(h2inv[0])] == kNoVertex)
        break;  // stuck at a power boundary: u2 = cur, nothing appended
      bool neg_appending = false;
      for (std::size_t j = 0; j < m; ++j) {
        Letter y = h2inv[j];
        if (!neg_appending) {
          Vertex t = pi_[cur * 4 + Alphabet(2).index(y)];
          if (t != kNoVertex) {
            cur = t;
            continue;
          }
          neg_appending = true;
        }
        cur = append_vertex(cur, y, tag);
      }
      ++s;
      if (neg_appending) break;
      if (cur == base)
        throw std::logic_error(
            "negative travel closed although the positive travel stuck");
      if (s > vertex_count() + 2)
        throw std::logic_error("negative travel failed to stick");
    }
    Vertex u2 = cur;

    // Tie: with h2 = x w, hang a w^-1 segment at u2 and add the one chord
    // pi(u1 x) = segment endpoint. Cyclic reducedness of h2 keeps every slot
    // along the way open.
    Vertex t = u2;
    for (std::size_t j = m; j-- > 1;) t = append_vertex(t, inverse(h2[j]), tag);
    Letter x = h2[0];
    int ix = Alphabet(2).index(x);
    int inv_ix = Alphabet::index_of_inverse(ix);
    if (pi_[u1 * 4 + ix] != kNoVertex || pi_[t * 4 + inv_ix] != kNoVertex)
      throw std::logic_error("tie chord slot unexpectedly occupied");
    pi_[u1 * 4 + ix] = t;
    pi_[t * 4 + inv_ix] = u1;

    cert.k = r + s + 1;
    cert.r = r;
    cert.s = s;
    cert.kind = EssentialityCertificate::Kind::tie;
    verify_certificate(cert);
    certs_.push_back(cert);
    schedule_.push_back({SectionRecord::Kind::essential, from, frontier_, g});
    return cert;
  }

  // ---- driver -------------------------------------------------------------

  // Alternates g- and e-sections until the requested number of certificates
  // exists and the frontier reaches min_depth. Elements whose travel already
  // closes through the defined region are certified without any growth; for
  // the rest the preceding g-section is extended by a depth budget estimated
  // from the cyclic decomposition, with any overshoot made up by the next
  // round. Ends with a g-section so the interior seals the tree.
  ConstructionReport run_until(std::size_t elements, unsigned min_depth) {
    ConstructionReport rep;
    try {
      while (certs_.size() < elements) {
        Word g = peek_element(cursor_);
        if (travel_closes(g)) {
          run_e_section();
          continue;
        }
        CyclicDecomposition dec = cyclic_reduce(g);
        unsigned estimate =
            (unsigned)(dec.conjugator.size() + 4 * dec.core.size());
        unsigned length = std::max({estimate, carried_deficit_, 1u});
        unsigned base = std::max(frontier_, last_g_target_);
        run_g_section(base + length);
        carried_deficit_ = 0;
        unsigned before = frontier_;
        run_e_section();
        unsigned consumed = frontier_ - before;
        if (consumed > length) carried_deficit_ = consumed - length;
      }
      unsigned seal = std::max(min_depth, frontier_ + 1);
      run_g_section(seal);
    } catch (const horizon_error&) {
      rep.budget_exhausted = true;
    }
    rep.certificates = certs_.size();
    rep.frontier = frontier_;
    rep.interior = interior_;
    rep.vertices = vertex_count();
    return rep;
  }

  // ---- export and reporting -----------------------------------------------

  CosetGraph export_graph() const {
    return CosetGraph::from_table(Alphabet(2), pi_, interior_);
  }

  // Certificate replay against the current pi: traces the reduced power
  // g^k = h1 h2^k h1^-1 from the root.
  bool replay(const EssentialityCertificate& cert) const {
    if (cert.element.empty()) return true;
    CyclicDecomposition dec = cyclic_reduce(cert.element);
    auto walk = [&](Vertex v, const Word& w, bool* ok) {
      for (Letter y : w.letters()) {
        Vertex t = pi_[v * 4 + Alphabet(2).index(y)];
        if (t == kNoVertex) {
          *ok = false;
          return v;
        }
        v = t;
      }
      return v;
    };
    bool ok = true;
    Vertex v = walk(0, dec.conjugator, &ok);
    for (Count rep = 0; rep < cert.k && ok; ++rep)
      v = walk(v, dec.core, &ok);
    v = walk(v, invert(dec.conjugator), &ok);
    return ok && v == 0;
  }

  SandwichReport sandwich_report(unsigned n, Count C = 0) const {
    if (2 * n > interior_)
      throw horizon_error("sandwich report needs 2n within the interior");
    SandwichReport rep;
    rep.C = C ? C : 2 * (Count)cap_c_ + 2;
    rep.alpha = alpha_table(2 * n);
    rep.tree = tree_table(2 * n);

    rep.greedy_ok = true;
    for (unsigned i = 0; i <= 2 * n; ++i)
      if (rep.tree.at(i) > rep.alpha.at(i)) rep.greedy_ok = false;

    rep.lower_ok = true;
    for (unsigned i = 0; i <= 2 * n; ++i)
      if (rep.alpha.at(i / (unsigned)rep.C) > rep.tree.at(i))
        rep.lower_ok = false;

    CosetGraph graph = export_graph();
    rep.cogrowth = graph.cogrowth_table(n);
    rep.squeeze_ok = true;
    for (unsigned i = 0; i <= n; ++i) {
      if (rep.tree.at(i) > rep.cogrowth.at(i)) rep.squeeze_ok = false;
      if (rep.cogrowth.at(i) > rep.tree.at(2 * i)) rep.squeeze_ok = false;
    }

    rep.pi_length_ok = true;
    for (const Word& w : words_up_to_length(Alphabet(2), n)) {
      Vertex v = 0;
      bool ok = true;
      for (Letter y : w.letters()) {
        Vertex t = pi_[v * 4 + Alphabet(2).index(y)];
        if (t == kNoVertex) {
          ok = false;
          break;
        }
        v = t;
      }
      if (!ok || info_[v].depth > 2 * w.size()) rep.pi_length_ok = false;
    }
    return rep;
  }

  // Full scan of the Schreier identity pi(pi(g x) x^-1) = g over every
  // defined slot; injectivity of each sigma_x follows from it.
  void check_schreier_identity() const {
    for (Vertex v = 0; v < vertex_count(); ++v)
      for (int ix = 0; ix < 4; ++ix) {
        Vertex u = pi_[v * 4 + ix];
        if (u == kNoVertex) continue;
        if (pi_[u * 4 + Alphabet::index_of_inverse(ix)] != v)
          throw std::logic_error("schreier identity violated");
      }
  }

 private:
  struct VertexInfo {
    Vertex parent;
    Letter in_letter;
    unsigned depth;
    int section;  // 0 root, +k from g-section k, -k from e-section k
  };

  static constexpr Count kReserve = 3;  // room for one e-section per level

  void ensure_alpha(unsigned n) {
    if (alpha_cache_.size() > n) return;
    GrowthTable t = partial_sums(alpha_, n);
    alpha_cache_ = t.values();
  }

  Count tree_count(unsigned level) const {
    Count sum = 0;
    for (unsigned i = 0; i <= level && i < levels_.size(); ++i)
      sum += levels_[i].size();
    return sum;
  }

  void sort_level(unsigned d) {
    auto& lvl = levels_[d];
    std::sort(lvl.begin(), lvl.end(), [this](Vertex a, Vertex b) {
      return shortlex_less(word_of(a), word_of(b));
    });
  }

  Vertex append_vertex(Vertex parent, Letter x, int section) {
    if (vertex_count() >= max_vertices_)
      throw horizon_error("vertex budget exhausted (" +
                          std::to_string(max_vertices_) + ")");
    int ix = Alphabet(2).index(x);
    if (pi_[parent * 4 + ix] != kNoVertex)
      throw std::logic_error("appending over a defined slot");
    Vertex v = (Vertex)vertex_count();
    pi_.resize(pi_.size() + 4, kNoVertex);
    unsigned depth = info_[parent].depth + 1;
    info_.push_back({parent, x, depth, section});
    pi_[parent * 4 + ix] = v;
    pi_[v * 4 + Alphabet::index_of_inverse(ix)] = parent;
    if (levels_.size() <= depth) levels_.resize(depth + 1);
    levels_[depth].push_back(v);
    frontier_ = std::max(frontier_, depth);
    return v;
  }

  // Read-only probe: does the travel with powers of the core close through
  // the base point inside the currently defined region?
  bool travel_closes(const Word& g) const {
    if (g.empty()) return true;
    CyclicDecomposition dec = cyclic_reduce(g);
    Vertex v = 0;
    for (Letter y : dec.conjugator.letters()) {
      Vertex t = pi_[v * 4 + Alphabet(2).index(y)];
      if (t == kNoVertex) return false;
      v = t;
    }
    Vertex base = v, cur = v;
    std::size_t guard = 0;
    while (true) {
      for (Letter y : dec.core.letters()) {
        Vertex t = pi_[cur * 4 + Alphabet(2).index(y)];
        if (t == kNoVertex) return false;
        cur = t;
      }
      if (cur == base) return true;
      if (++guard > vertex_count() + 2)
        throw std::logic_error("travel probe neither closed nor stuck");
    }
  }

  Word peek_element(std::size_t i) {
    while (element_cache_.size() <= i) {
      auto lvl = words_of_length(Alphabet(2), next_element_length_++);
      element_cache_.insert(element_cache_.end(), lvl.begin(), lvl.end());
    }
    return element_cache_[i];
  }

  void verify_certificate(const EssentialityCertificate& cert) const {
    if (!replay(cert))
      throw std::logic_error("certificate replay failed for " +
                             to_string(cert.element));
  }

  CGFunction alpha_;
  unsigned cap_c_ = 1;
  std::vector<Vertex> pi_;
  std::vector<VertexInfo> info_;
  std::vector<std::vector<Vertex>> levels_;
  std::vector<Count> alpha_cache_{1};
  unsigned frontier_ = 0;
  unsigned interior_ = 0;
  unsigned last_g_target_ = 0;
  unsigned carried_deficit_ = 0;
  std::size_t g_sections_ = 0;
  std::size_t e_sections_ = 0;
  std::size_t cursor_ = 0;
  std::vector<Word> element_cache_;
  unsigned next_element_length_ = 0;
  std::vector<EssentialityCertificate> certs_;
  std::vector<SectionRecord> schedule_;
  std::size_t max_vertices_ = 1'000'000;
};

}  // namespace cogrow
