#include <catch2/catch.hpp>

#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "cogrow/coset_graph.hpp"

using namespace cogrow;

namespace {

const Alphabet kF2(2);

Word W(const std::string& s) { return parse_word(kF2, s); }

std::vector<Word> gens(std::initializer_list<const char*> words) {
  std::vector<Word> v;
  for (const char* w : words) v.push_back(W(w));
  return v;
}

// Brute-force membership in <gens>: closure of products of up to `factors`
// generators, pruned by reduced length.
bool brute_member(const std::vector<Word>& generators, const Word& w,
                  unsigned factors, std::size_t max_len) {
  std::set<Word, ShortLexLess> cur{Word{}};
  if (w.empty()) return true;
  std::vector<Word> sides;
  for (const Word& g : generators) {
    sides.push_back(g);
    sides.push_back(invert(g));
  }
  for (unsigned f = 0; f < factors; ++f) {
    std::set<Word, ShortLexLess> next = cur;
    for (const Word& u : cur)
      for (const Word& s : sides) {
        Word p = multiply(u, s);
        if (p.size() <= max_len) next.insert(p);
      }
    if (next.count(w)) return true;
    if (next.size() == cur.size()) break;
    cur = std::move(next);
  }
  return cur.count(w) > 0;
}

// Brute-force cogrowth: group all reduced words of length <= n into cosets
// using an exact membership predicate for H, then count cosets by the length
// of their shortest member.
GrowthTable brute_cogrowth(const std::function<bool(const Word&)>& in_h,
                           unsigned n) {
  auto words = words_up_to_length(kF2, n);
  std::vector<int> coset(words.size(), -1);
  std::vector<std::size_t> min_len;
  for (std::size_t i = 0; i < words.size(); ++i) {
    if (coset[i] >= 0) continue;
    coset[i] = (int)min_len.size();
    min_len.push_back(words[i].size());
    for (std::size_t j = i + 1; j < words.size(); ++j) {
      if (coset[j] >= 0) continue;
      // Same right coset Hu = Hv iff u v^-1 lies in H.
      if (in_h(multiply(words[i], invert(words[j])))) coset[j] = coset[i];
    }
  }
  std::vector<Count> vals(n + 1, 0);
  for (std::size_t len : min_len)
    for (std::size_t k = len; k <= n; ++k) vals[k] += 1;
  return GrowthTable(std::move(vals));
}

PermutationRep both_swap() {
  PermutationRep rep;
  rep.degree = 2;
  rep.images = {{1, 0}, {1, 0}};
  return rep;
}

CosetGraph z_shift() {
  // G/H = Z for H the normal closure of a: the image of a fixes, b shifts.
  return CosetGraph::from_callback(
      kF2,
      [](std::int64_t s, Letter x) {
        if (x == 1 || x == -1) return s;
        return x == 2 ? s + 1 : s - 1;
      },
      0);
}

CosetGraph z2_grid() {
  // G/H = Z^2 for H the commutator subgroup; labels encode (x, y) pairs.
  return CosetGraph::from_callback(
      kF2,
      [](std::int64_t s, Letter x) {
        std::int64_t a = s >> 20, b = s - (a << 20);
        if (x == 1) ++a;
        if (x == -1) --a;
        if (x == 2) ++b;
        if (x == -2) --b;
        return (a << 20) + b;
      },
      0);
}

}  // namespace

TEST_CASE("folding basic shapes", "[coset]") {
  CosetGraph g1 = CosetGraph::fold(kF2, gens({"a"}));
  CHECK(g1.vertex_count() == 1);
  CHECK(g1.step(0, 1) == 0u);
  CHECK_FALSE(g1.step(0, 2).has_value());

  CosetGraph g2 = CosetGraph::fold(kF2, gens({"aa", "b"}));
  CHECK(g2.vertex_count() == 2);
  CHECK(g2.contains(W("aa")));
  CHECK(g2.contains(W("b")));

  CosetGraph g3 = CosetGraph::fold(kF2, gens({"abAB"}));
  CHECK(g3.vertex_count() == 4);
  CHECK(g3.contains(W("abAB")));
  CHECK_FALSE(g3.contains(W("ab")));

  CosetGraph trivial = CosetGraph::fold(kF2, {});
  CHECK(trivial.vertex_count() == 1);
  CHECK(trivial.contains(Word{}));
  CHECK_FALSE(trivial.contains(W("a")));

  // Trivial generators fold away to the one-vertex graph.
  CosetGraph identity = CosetGraph::fold(kF2, gens({"1", "1"}));
  CHECK(identity.vertex_count() == 1);

  // Every generator traces root -> root on its own folded graph.
  for (auto& gs : {gens({"a"}), gens({"aa", "b"}), gens({"abAB"}),
                   gens({"ab", "ba"}), gens({"aab", "abb", "bb"})}) {
    CosetGraph g = CosetGraph::fold(kF2, gs);
    g.check_involution();
    for (const Word& w : gs) CHECK(g.contains(w));
  }
}

TEST_CASE("permutation backend", "[coset]") {
  CosetGraph k2 = CosetGraph::from_permutations(both_swap());
  CHECK(k2.vertex_count() == 2);
  CHECK(k2.contains(W("aa")));
  CHECK(k2.contains(W("ab")));
  CHECK_FALSE(k2.contains(W("a")));

  PermutationRep id1;
  id1.degree = 1;
  id1.images = {{0}, {0}};
  CosetGraph whole = CosetGraph::from_permutations(id1);
  CHECK(whole.vertex_count() == 1);
  CHECK(whole.contains(W("a")));
  CHECK(whole.contains(W("bA")));

  PermutationRep c3;
  c3.degree = 3;
  c3.images = {{1, 2, 0}, {0, 1, 2}};
  CosetGraph idx3 = CosetGraph::from_permutations(c3);
  CHECK(idx3.vertex_count() == 3);
  CHECK(idx3.contains(W("aaa")));
  CHECK(idx3.contains(W("b")));
  CHECK_FALSE(idx3.contains(W("a")));

  PermutationRep broken;
  broken.degree = 2;
  broken.images = {{0, 0}, {1, 0}};
  CHECK_THROWS_AS(CosetGraph::from_permutations(broken),
                  std::invalid_argument);
}

TEST_CASE("tracing and lazy trees", "[coset]") {
  CosetGraph g = CosetGraph::fold(kF2, gens({"a"}));
  TraceResult t = g.trace(W("a"));
  CHECK((t.complete && t.vertex == 0));

  t = g.trace(W("b"), 0, false);
  CHECK_FALSE(t.complete);
  CHECK(t.consumed == 0);
  CHECK(t.vertex == 0);

  t = g.trace(W("b"), 0, true);
  CHECK(t.complete);
  CHECK(t.vertex == 1);  // fresh hanging-tree vertex at depth 1
  CHECK(g.vertex_count() == 2);
  CHECK(g.core_size() == 1);

  CosetGraph k2 = CosetGraph::from_permutations(both_swap());
  t = k2.trace(W("ab"));
  CHECK((t.complete && t.vertex == 0));
}

TEST_CASE("membership", "[coset]") {
  CosetGraph g = CosetGraph::fold(kF2, gens({"a"}));
  CHECK(g.contains(power(W("a"), 10)));
  CHECK_FALSE(g.contains(W("baB")));

  CosetGraph k2 = CosetGraph::from_permutations(both_swap());
  CHECK(k2.contains(W("aa")));

  // Folded membership agrees with the brute-force generator closure on all
  // reduced words of length <= 6.
  for (auto& gs : {gens({"a"}), gens({"aa", "b"}), gens({"abAB"}),
                   gens({"aa", "ab"})}) {
    CosetGraph h = CosetGraph::fold(kF2, gs);
    for (const Word& w : words_up_to_length(kF2, 6))
      CHECK(h.contains(w) == brute_member(gs, w, 8, 10));
  }
}

TEST_CASE("minimal transversal and cogrowth", "[coset]") {
  CosetGraph g = CosetGraph::fold(kF2, gens({"a"}));
  Transversal tv = g.minimal_transversal(8);
  for (unsigned n = 0; n <= 8; ++n) {
    Count expect = 1;
    for (unsigned i = 0; i < n; ++i) expect *= 3;
    CHECK(tv.table.at(n) == expect);
  }
  // Representatives avoid an initial a or A: epsilon plus words starting b/B.
  for (const Word& w : tv.words)
    if (!w.empty()) CHECK((w[0] == 2 || w[0] == -2));

  CosetGraph k2 = CosetGraph::from_permutations(both_swap());
  Transversal tk = k2.minimal_transversal(5);
  CHECK(tk.table.values() == std::vector<Count>{1, 2, 2, 2, 2, 2});
  REQUIRE(tk.words.size() == 2);
  CHECK(tk.words[0].empty());
  CHECK(tk.words[1] == W("a"));

  CosetGraph z = z_shift();
  Transversal tz = z.minimal_transversal(6);
  for (unsigned n = 0; n <= 6; ++n) CHECK(tz.table.at(n) == 2 * n + 1);
  // The transversal consists of the powers of b.
  for (const Word& w : tz.words)
    for (Letter x : w.letters()) CHECK((x == 2 || x == -2));

  // Brute-force coset enumeration confirms the closed forms at small depth.
  auto in_gen_a = [&](const Word& w) {
    for (Letter x : w.letters())
      if (x != 1 && x != -1) return false;
    return true;
  };
  CHECK(brute_cogrowth(in_gen_a, 4) == g.cogrowth_table(4));

  auto in_kernel = [&](const Word& w) { return w.size() % 2 == 0; };
  CHECK(brute_cogrowth(in_kernel, 4) == k2.cogrowth_table(4));

  auto in_ncl_a = [&](const Word& w) {
    int sum = 0;
    for (Letter x : w.letters()) sum += (x == 2) - (x == -2);
    return sum == 0;
  };
  CHECK(brute_cogrowth(in_ncl_a, 4) == z.cogrowth_table(4));
}

TEST_CASE("transversals are prefix-closed and strictly increasing", "[coset]") {
  for (auto make : {+[]() { return CosetGraph::fold(kF2, gens({"a"})); },
                    +[]() { return CosetGraph::fold(kF2, gens({"aa", "ab"})); },
                    +[]() { return CosetGraph::from_permutations(both_swap()); },
                    +[]() { return z_shift(); }}) {
    CosetGraph g = make();
    Transversal tv = g.minimal_transversal(5);
    std::set<Word, ShortLexLess> seen;
    Word prev;
    for (std::size_t i = 0; i < tv.words.size(); ++i) {
      const Word& w = tv.words[i];
      if (i > 0) CHECK(shortlex_less(prev, w));
      prev = w;
      if (!w.empty()) {
        std::vector<Letter> p(w.letters().begin(), w.letters().end() - 1);
        CHECK(seen.count(Word::from_reduced(p)) == 1);
      }
      seen.insert(w);
    }
  }
}

TEST_CASE("callback backend demos", "[coset]") {
  CosetGraph z = z_shift();
  CHECK(z.contains(W("a")));
  CHECK_FALSE(z.contains(W("b")));
  CHECK(z.contains(W("baB")));
  CHECK(z.contains(W("abAB")));

  CosetGraph grid = z2_grid();
  CHECK(grid.cogrowth_table(2).at(2) == 13);
  CHECK(grid.contains(W("abAB")));
  CHECK_FALSE(grid.contains(W("ab")));

  // A non-involutive oracle is rejected at materialization time.
  CosetGraph bad = CosetGraph::from_callback(
      kF2, [](std::int64_t s, Letter x) { return x > 0 ? s + 1 : s + 2; }, 0);
  CHECK_THROWS_AS(bad.contains(W("a")), std::invalid_argument);
}

TEST_CASE("subgroup growth", "[coset]") {
  CosetGraph g = CosetGraph::fold(kF2, gens({"a"}));
  GrowthTable sg = g.subgroup_growth(6);
  for (unsigned n = 0; n <= 6; ++n) CHECK(sg.at(n) == 2 * n + 1);

  CosetGraph trivial = CosetGraph::fold(kF2, {});
  GrowthTable t1 = trivial.subgroup_growth(5);
  for (unsigned n = 0; n <= 5; ++n) CHECK(t1.at(n) == 1);

  // DP agrees with brute enumeration of reduced root loops.
  for (auto make :
       {+[]() { return CosetGraph::fold(kF2, gens({"a"})); },
        +[]() { return CosetGraph::fold(kF2, gens({"aa", "ab"})); },
        +[]() { return CosetGraph::fold(kF2, gens({"abAB"})); },
        +[]() { return CosetGraph::from_permutations(both_swap()); }}) {
    CosetGraph h = make();
    GrowthTable dp = h.subgroup_growth(6);
    Count count = 0;
    unsigned len = 0;
    std::vector<Count> brute;
    for (const Word& w : words_up_to_length(kF2, 6)) {
      while (w.size() > len) {
        brute.push_back(count);
        ++len;
      }
      if (h.contains(w)) ++count;
    }
    brute.push_back(count);
    CHECK(dp.values() == brute);
  }

  // On the index-2 kernel the level-2 value matches hand enumeration of the
  // 17 words of length <= 2: the empty word plus all 12 two-letter words.
  CosetGraph k2 = CosetGraph::from_permutations(both_swap());
  CHECK(k2.subgroup_growth(2).at(2) == 13);
}

TEST_CASE("sandwich identity eq5", "[coset]") {
  CosetGraph g = CosetGraph::fold(kF2, gens({"a"}));
  CHECK(g.sandwich_check_eq5(6));

  CosetGraph trivial = CosetGraph::fold(kF2, {});
  CHECK(trivial.sandwich_check_eq5(6));

  CosetGraph k2 = CosetGraph::from_permutations(both_swap());
  CHECK(k2.sandwich_check_eq5(8));
}

TEST_CASE("normal restriction eq6", "[coset]") {
  CosetGraph k2 = CosetGraph::from_permutations(both_swap());
  // Gamma(2)=2 <= Gamma(0) + gamma(1)*Gamma(1) = 1 + 1*2.
  CHECK(k2.normality_check_eq6(1, 1));

  CosetGraph z = z_shift();
  CHECK(z.normality_check_eq6(2, 2));

  PermutationRep id1;
  id1.degree = 1;
  id1.images = {{0}, {0}};
  CosetGraph whole = CosetGraph::from_permutations(id1);
  for (unsigned n1 = 1; n1 <= 3; ++n1)
    for (unsigned n2 = 0; n2 <= 3; ++n2)
      CHECK(whole.normality_check_eq6(n1, n2));

  CosetGraph grid = z2_grid();
  for (unsigned n1 = 1; n1 <= 3; ++n1)
    for (unsigned n2 = 0; n2 + n1 <= 6; ++n2)
      CHECK(grid.normality_check_eq6(n1, n2));

  CHECK_THROWS_AS(k2.normality_check_eq6(0, 2), std::invalid_argument);
}

TEST_CASE("nielsen-schreier basis", "[coset]") {
  CosetGraph k2 = CosetGraph::from_permutations(both_swap());
  auto basis = k2.nielsen_schreier_basis(4);
  REQUIRE(basis.size() == 3);  // index*(rank-1)+1 = 2*1+1
  CHECK(basis[0] == W("aa"));
  CHECK(basis[1] == W("ab"));
  CHECK(basis[2] == W("aB"));

  CosetGraph g = CosetGraph::fold(kF2, gens({"a"}));
  auto ba = g.nielsen_schreier_basis(2);
  REQUIRE(ba.size() == 1);
  CHECK(ba[0] == W("a"));

  PermutationRep c3;
  c3.degree = 3;
  c3.images = {{1, 2, 0}, {0, 1, 2}};
  CosetGraph idx3 = CosetGraph::from_permutations(c3);
  CHECK(idx3.nielsen_schreier_basis(4).size() == 4);  // 3*1+1

  // Refolding the basis reproduces the subgroup.
  for (auto make : {+[]() { return CosetGraph::from_permutations(both_swap()); },
                    +[]() { return CosetGraph::fold(kF2, gens({"aa", "ab"})); },
                    +[]() { return CosetGraph::fold(kF2, gens({"abAB"})); }}) {
    CosetGraph h = make();
    CosetGraph refolded = CosetGraph::fold(kF2, h.nielsen_schreier_basis(6));
    CHECK(refolded.cogrowth_table(6) == h.cogrowth_table(6));
  }
}

TEST_CASE("nested transversal containment", "[coset]") {
  // For H2 <= H1 the ShortLex-minimal transversal of H1 is contained in the
  // one of H2, level by level.
  std::vector<std::pair<std::vector<Word>, std::vector<Word>>> pairs = {
      {gens({"a"}), gens({"aa"})},
      {gens({"a"}), gens({"aaa"})},
      {gens({"b"}), gens({"bb"})},
      {gens({"aa", "b"}), gens({"aa"})},
      {gens({"aa", "b"}), gens({"aa", "bb"})},
      {gens({"ab"}), gens({"abab"})},
      {gens({"a", "b"}), gens({"aa", "ab"})},
      {gens({"aa", "ab"}), gens({"aa"})},
      {gens({"aa", "ab"}), gens({"abab", "aa"})},
      {gens({"ab", "ba"}), gens({"ab"})},
  };
  for (auto& [g1, g2] : pairs) {
    CosetGraph h1 = CosetGraph::fold(kF2, g1);
    CosetGraph h2 = CosetGraph::fold(kF2, g2);
    auto t1 = h1.minimal_transversal(5).words;
    auto t2 = h2.minimal_transversal(5).words;
    std::set<Word, ShortLexLess> set2(t2.begin(), t2.end());
    for (const Word& w : t1) CHECK(set2.count(w) == 1);
  }
}

TEST_CASE("conjugate cogrowth shift", "[coset]") {
  CosetGraph g = CosetGraph::fold(kF2, gens({"a"}));
  CHECK(g.conjugate_cogrowth_shift(W("b"), 5));
  CHECK(g.conjugate_cogrowth_shift(Word{}, 5));

  // A normal subgroup is fixed by conjugation, so the tables agree exactly.
  CosetGraph kernel = CosetGraph::fold(kF2, gens({"aa", "ab", "aB"}));
  CHECK(kernel.conjugate_cogrowth_shift(W("ab"), 5));
  CosetGraph conj = CosetGraph::fold(
      kF2, {conjugate(W("aa"), W("ab")), conjugate(W("ab"), W("ab")),
            conjugate(W("aB"), W("ab"))});
  CHECK(conj.cogrowth_table(5) == kernel.cogrowth_table(5));

  CosetGraph quotient = CosetGraph::from_permutations(both_swap());
  CHECK_THROWS_AS(quotient.conjugate_cogrowth_shift(W("a"), 3),
                  std::invalid_argument);
}

TEST_CASE("free group growth closed form matches enumeration", "[coset]") {
  GrowthTable t2 = free_group_growth(2, 5);
  for (unsigned n = 0; n <= 5; ++n)
    CHECK(t2.at(n) == words_up_to_length(kF2, n).size());
  GrowthTable t3 = free_group_growth(3, 4);
  Alphabet r3(3);
  for (unsigned n = 0; n <= 4; ++n)
    CHECK(t3.at(n) == words_up_to_length(r3, n).size());
}

TEST_CASE("graph dump and file parsing", "[coset]") {
  CosetGraph k2 = CosetGraph::from_permutations(both_swap());
  std::ostringstream os;
  k2.dump_edges(os);
  CHECK(os.str() == "0 a 1\n0 b 1\n1 a 0\n1 b 0\n");

  std::istringstream sub("# subgroup\naa\n ab # trailing\n\n");
  auto gs = parse_subgroup_file(kF2, sub);
  REQUIRE(gs.size() == 2);
  CHECK(gs[0] == W("aa"));
  CHECK(gs[1] == W("ab"));

  std::istringstream bad("aA\n");
  CHECK_THROWS_AS(parse_subgroup_file(kF2, bad), std::invalid_argument);
  std::istringstream ok("aA\n");
  CHECK(parse_subgroup_file(kF2, ok, true)[0].empty());

  std::istringstream perms("(1 2)(3 4)\nid\n");
  PermutationRep rep = parse_permutations(perms);
  CHECK(rep.degree == 4);
  CHECK(rep.images[0] == std::vector<std::uint32_t>{1, 0, 3, 2});
  CHECK(rep.images[1] == std::vector<std::uint32_t>{0, 1, 2, 3});
}
