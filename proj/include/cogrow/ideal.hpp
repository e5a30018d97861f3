// ideal.hpp -- growth and cogrowth of right ideals in the free associative
// algebra and the rational group algebra of a free group: ShortLex echelon
// bases over exact rationals, leading-monomial counting, standard-monomial
// transversals, colon-ideal search and essentiality reporting.

#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "growth.hpp"
#include "word.hpp"

namespace cogrow {

using Rational = boost::multiprecision::cpp_rational;

enum class AlgebraKind { free_assoc, group_algebra };

// Monomials are positive words in the free associative algebra and reduced
// words in the group algebra; right multiplication reduces in the latter.
struct AlgebraMode {
  AlgebraKind kind;
  Alphabet alphabet;

  AlgebraMode(AlgebraKind k, Alphabet ab) : kind(k), alphabet(ab) {}

  bool monomial_valid(const Word& w) const {
    for (Letter x : w.letters()) {
      if (!alphabet.valid(x)) return false;
      if (kind == AlgebraKind::free_assoc && x < 0) return false;
    }
    return true;
  }

  std::vector<Word> monomials_of_length(unsigned len) const {
    if (kind == AlgebraKind::group_algebra)
      return words_of_length(alphabet, len);
    std::vector<Word> level{Word{}};
    for (unsigned l = 0; l < len; ++l) {
      std::vector<Word> next;
      for (const Word& w : level)
        for (Letter x = 1; x <= alphabet.rank; ++x) {
          std::vector<Letter> v(w.letters());
          v.push_back(x);
          next.push_back(Word::from_reduced(std::move(v)));
        }
      level = std::move(next);
    }
    return level;
  }

  std::vector<Word> monomials_up_to(unsigned len) const {
    std::vector<Word> all;
    for (unsigned l = 0; l <= len; ++l) {
      auto lvl = monomials_of_length(l);
      all.insert(all.end(), lvl.begin(), lvl.end());
    }
    return all;
  }

  // Gamma_R(n) = dim R^(n): the number of monomials of length at most n.
  GrowthTable growth(unsigned n) const {
    if (kind == AlgebraKind::group_algebra)
      return free_group_growth(alphabet.rank, n);
    std::vector<Count> vals{1};
    Count level = 1;
    for (unsigned i = 1; i <= n; ++i) {
      level = checked_mul(level, (Count)alphabet.rank);
      vals.push_back(checked_add(vals.back(), level));
    }
    return GrowthTable(std::move(vals));
  }
};

inline AlgebraMode free_assoc(int rank = 2) {
  return AlgebraMode(AlgebraKind::free_assoc, Alphabet(rank));
}
inline AlgebraMode group_algebra(int rank = 2) {
  return AlgebraMode(AlgebraKind::group_algebra, Alphabet(rank));
}

// A polynomial over the rationals, stored leading-monomial-first. The length
// is the smallest n with p in R^(n); under ShortLex the leading monomial
// realizes it.
class Polynomial {
 public:
  Polynomial() = default;

  static Polynomial monomial(Word m, Rational c = 1) {
    Polynomial p;
    if (c != 0) p.terms_.emplace(std::move(m), std::move(c));
    return p;
  }

  static Polynomial one() { return monomial(Word{}); }

  bool zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }

  const Word& leading_monomial() const {
    if (zero()) throw std::invalid_argument("zero polynomial has no leading monomial");
    return terms_.begin()->first;
  }
  const Rational& leading_coefficient() const {
    if (zero()) throw std::invalid_argument("zero polynomial has no leading coefficient");
    return terms_.begin()->second;
  }
  std::size_t length() const { return zero() ? 0 : leading_monomial().size(); }

  Rational coefficient(const Word& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  const std::map<Word, Rational, ShortLexGreater>& terms() const {
    return terms_;
  }

  void add_term(const Word& m, const Rational& c) {
    if (c == 0) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
      terms_.emplace(m, c);
    } else {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  // this += c * p
  void axpy(const Rational& c, const Polynomial& p) {
    if (c == 0) return;
    for (const auto& [m, pc] : p.terms_) add_term(m, c * pc);
  }

  void scale(const Rational& c) {
    if (c == 0) {
      terms_.clear();
      return;
    }
    for (auto& [m, pc] : terms_) pc *= c;
  }

  // Right multiplication; reduction at the seam only matters in the group
  // algebra, positive monomials simply concatenate.
  Polynomial times_monomial([[maybe_unused]] const AlgebraMode& mode,
                            const Word& w) const {
    Polynomial out;
    for (const auto& [m, c] : terms_) out.add_term(multiply(m, w), c);
    return out;
  }

  Polynomial times([[maybe_unused]] const AlgebraMode& mode,
                   const Polynomial& q) const {
    Polynomial out;
    for (const auto& [mq, cq] : q.terms_)
      for (const auto& [mp, cp] : terms_)
        out.add_term(multiply(mp, mq), cp * cq);
    return out;
  }

  bool operator==(const Polynomial& o) const { return terms_ == o.terms_; }

 private:
  std::map<Word, Rational, ShortLexGreater> terms_;
};

inline std::string to_string(const Polynomial& p) {
  if (p.zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : p.terms()) {
    Rational a = c;
    if (first) {
      if (a < 0) {
        os << "-";
        a = -a;
      }
    } else {
      os << (a < 0 ? " - " : " + ");
      if (a < 0) a = -a;
    }
    if (a != 1 || m.empty()) {
      os << a.str();
      if (!m.empty()) os << "*";
    }
    if (!m.empty()) os << to_string(m);
    first = false;
  }
  return os.str();
}

// Term syntax: [coefficient][*]monomial with "1" for the identity monomial,
// e.g. "a - 1", "2*ab + 1", "3/2*ab - b".
inline Polynomial parse_polynomial(const AlgebraMode& mode,
                                   const std::string& text) {
  Polynomial p;
  std::size_t i = 0;
  auto skip_ws = [&] {
    while (i < text.size() && std::isspace((unsigned char)text[i])) ++i;
  };
  bool first = true;
  while (true) {
    skip_ws();
    if (i >= text.size()) break;
    Rational sign = 1;
    if (text[i] == '+' || text[i] == '-') {
      sign = text[i] == '-' ? -1 : 1;
      ++i;
      skip_ws();
    } else if (!first) {
      throw std::invalid_argument("expected + or - between terms: " + text);
    }
    std::size_t j = i;
    while (j < text.size() && (std::isdigit((unsigned char)text[j]) ||
                               text[j] == '/'))
      ++j;
    Rational coeff = 1;
    bool have_digits = j > i;
    if (have_digits) {
      try {
        coeff = Rational(text.substr(i, j - i));
      } catch (const std::exception&) {
        throw std::invalid_argument("bad coefficient in term: " + text);
      }
      i = j;
      skip_ws();
      if (i < text.size() && text[i] == '*') {
        ++i;
        skip_ws();
      }
    }
    std::size_t k = i;
    while (k < text.size() && std::isalpha((unsigned char)text[k])) ++k;
    Word mono;
    if (k > i) {
      mono = parse_word(mode.alphabet, text.substr(i, k - i));
      i = k;
    } else if (!have_digits) {
      throw std::invalid_argument("expected a term: " + text);
    }
    if (!mode.monomial_valid(mono))
      throw std::invalid_argument("monomial outside algebra: " + text);
    p.add_term(mono, sign * coeff);
    first = false;
  }
  return p;
}

// One polynomial per line, '#' comments.
inline std::vector<Polynomial> parse_ideal_file(const AlgebraMode& mode,
                                                std::istream& in) {
  std::vector<Polynomial> polys;
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    polys.push_back(parse_polynomial(mode, line));
  }
  return polys;
}

// Reduced row echelon span of the admitted generator products
// {g * w : length(g * w) <= horizon}, with ShortLex-greatest pivots over
// exact rationals. Every row is monic and fully reduced against the others.
class EchelonBasis {
 public:
  EchelonBasis(AlgebraMode mode, unsigned horizon)
      : mode_(std::move(mode)), horizon_(horizon) {}

  // ideal_basis: span of the right-multiples of the generators admitted by
  // the horizon.
  static EchelonBasis build(const AlgebraMode& mode,
                            const std::vector<Polynomial>& generators,
                            unsigned horizon,
                            std::size_t max_rows = 100'000) {
    EchelonBasis basis(mode, horizon);
    basis.max_rows_ = max_rows;
    for (const Polynomial& g : generators) {
      if (g.zero()) throw std::invalid_argument("zero ideal generator");
      if (g.length() > horizon)
        throw std::invalid_argument(
            "horizon below a generator length: " + std::to_string(horizon));
      for (const auto& [m, c] : g.terms())
        if (!mode.monomial_valid(m))
          throw std::invalid_argument("generator monomial outside algebra");
    }
    for (const Polynomial& g : generators) {
      // In the group algebra a long w can still cancel down to the horizon;
      // products never shorten in the free associative algebra.
      unsigned reach = mode.kind == AlgebraKind::group_algebra
                           ? horizon + (unsigned)g.length()
                           : horizon - (unsigned)g.length();
      for (const Word& w : mode.monomials_up_to(reach)) {
        Polynomial p = g.times_monomial(mode, w);
        if (p.length() <= horizon) basis.insert(p);
      }
    }
    return basis;
  }

  const AlgebraMode& mode() const { return mode_; }
  unsigned horizon() const { return horizon_; }
  std::size_t row_count() const { return rows_.size(); }

  const std::map<Word, Polynomial, ShortLexGreater>& rows() const {
    return rows_;
  }

  bool is_pivot(const Word& m) const { return rows_.count(m) > 0; }

  // Unique normal form of p modulo the span: no pivot monomial survives.
  Polynomial reduce(Polynomial p) const {
    Polynomial out;
    while (!p.zero()) {
      Word m = p.leading_monomial();
      Rational c = p.leading_coefficient();
      auto it = rows_.find(m);
      if (it != rows_.end()) {
        p.axpy(-c, it->second);
      } else {
        out.add_term(m, c);
        p.add_term(m, -c);
      }
    }
    return out;
  }

  // Returns true when the span grew. Keeps the basis fully inter-reduced.
  bool insert(Polynomial p) {
    p = reduce(std::move(p));
    if (p.zero()) return false;
    if (rows_.size() >= max_rows_)
      throw horizon_error("row budget exhausted (" +
                          std::to_string(max_rows_) + ")");
    p.scale(Rational(1) / p.leading_coefficient());
    Word pivot = p.leading_monomial();
    auto oc = occurs_.find(pivot);
    if (oc != occurs_.end()) {
      for (const Word& other : std::set<Word, ShortLexLess>(
               oc->second.begin(), oc->second.end())) {
        Polynomial& row = rows_.at(other);
        Rational c = row.coefficient(pivot);
        if (c == 0) continue;
        unindex(other, row);
        row.axpy(-c, p);
        index(other, row);
      }
    }
    index(pivot, p);
    rows_.emplace(std::move(pivot), std::move(p));
    return true;
  }

  // Gamma_I^{(m)}(n): rows whose pivot has length <= n. A certified lower
  // bound for the ideal growth, exact once the horizon has stabilized.
  Count growth_at(unsigned n) const {
    if (n > horizon_)
      throw horizon_error("level beyond the basis horizon");
    Count count = 0;
    for (const auto& [pivot, row] : rows_)
      if (pivot.size() <= n) ++count;
    return count;
  }

  GrowthTable growth_table(unsigned n) const {
    std::vector<Count> vals;
    for (unsigned i = 0; i <= n; ++i) vals.push_back(growth_at(i));
    return GrowthTable(std::move(vals));
  }

  // Monomials of length <= n that are not leading monomials: a basis of a
  // complement of the span, prefix-closed at stabilized horizons.
  std::vector<Word> standard_monomials(unsigned n) const {
    std::vector<Word> out;
    for (const Word& m : mode_.monomials_up_to(n))
      if (!is_pivot(m)) out.push_back(m);
    return out;
  }

 private:
  void index(const Word& pivot, const Polynomial& row) {
    for (const auto& [m, c] : row.terms())
      if (!(m == pivot)) occurs_[m].insert(pivot);
  }
  void unindex(const Word& pivot, const Polynomial& row) {
    for (const auto& [m, c] : row.terms()) {
      if (m == pivot) continue;
      auto it = occurs_.find(m);
      if (it == occurs_.end()) continue;
      it->second.erase(pivot);
      if (it->second.empty()) occurs_.erase(it);
    }
  }

  AlgebraMode mode_;
  unsigned horizon_;
  std::size_t max_rows_ = 100'000;
  std::map<Word, Polynomial, ShortLexGreater> rows_;
  std::map<Word, std::set<Word, ShortLexLess>, ShortLexGreater> occurs_;
};

inline GrowthTable algebra_growth(const AlgebraMode& mode, unsigned n) {
  return mode.growth(n);
}

inline Count ideal_growth(const EchelonBasis& basis, unsigned n) {
  return basis.growth_at(n);
}

// Gamma_{R/I}(n) = Gamma_R(n) - Gamma_I^{(m)}(n): the number of standard
// monomials of length <= n, an upper bound for the true cogrowth.
inline Count cogrowth(const AlgebraMode& mode, const EchelonBasis& basis,
                      unsigned n) {
  return mode.growth(n).at(n) - basis.growth_at(n);
}

struct StabilizeResult {
  unsigned m_star = 0;
  bool stable = false;
  Count value = 0;  // Gamma_I^{(m_star)}(n)
};

// Raises the horizon until Gamma_I^{(m)}(n) stops moving. Heuristic evidence
// of exactness, not proof; the group-algebra augmentation case can be
// certified against the subgroup oracle separately.
inline StabilizeResult stabilize(const AlgebraMode& mode,
                                 const std::vector<Polynomial>& generators,
                                 unsigned n, unsigned m0, unsigned budget = 8,
                                 std::size_t max_rows = 100'000) {
  unsigned m = std::max(m0, n);
  for (const Polynomial& g : generators)
    m = std::max(m, (unsigned)g.length());
  Count prev =
      ideal_growth(EchelonBasis::build(mode, generators, m, max_rows), n);
  for (unsigned step = 0; step < budget; ++step) {
    Count next = ideal_growth(
        EchelonBasis::build(mode, generators, m + 1, max_rows), n);
    if (next == prev) return {m, true, prev};
    prev = next;
    ++m;
  }
  return {m, false, prev};
}

// Searches for s with support length <= n0 and r*s reducible to zero by the
// basis, i.e. a certified element of the right quotient (I : r). Mirrors the
// dimension count: the residuals of r*g over all monomials g of length
// <= n0 must collide once Gamma_R(n0) exceeds the standard-monomial count.
inline std::optional<Polynomial> quotient_search(const AlgebraMode& mode,
                                                 const EchelonBasis& basis,
                                                 const Polynomial& r,
                                                 unsigned n0) {
  if (r.zero()) throw std::invalid_argument("quotient search needs r != 0");
  if (r.length() + n0 > basis.horizon())
    throw horizon_error(
        "basis horizon " + std::to_string(basis.horizon()) +
        " too small: need l(r) + n0 = " + std::to_string(r.length() + n0));
  // Echelon over residuals with combination tracking.
  std::map<Word, std::pair<Polynomial, Polynomial>, ShortLexGreater> tracked;
  for (const Word& g : mode.monomials_up_to(n0)) {
    Polynomial residual = basis.reduce(r.times_monomial(mode, g));
    Polynomial combo = Polynomial::monomial(g);
    while (!residual.zero()) {
      auto it = tracked.find(residual.leading_monomial());
      if (it == tracked.end()) break;
      Rational c = residual.leading_coefficient();
      residual.axpy(-c, it->second.first);
      combo.axpy(-c, it->second.second);
    }
    if (residual.zero()) {
      // combo is nonzero: it contains the fresh monomial g with coefficient 1.
      if (!basis.reduce(r.times(mode, combo)).zero())
        throw std::logic_error("colon certificate failed verification");
      return combo;
    }
    Rational lead = residual.leading_coefficient();
    residual.scale(Rational(1) / lead);
    combo.scale(Rational(1) / lead);
    Word pivot = residual.leading_monomial();
    tracked.emplace(std::move(pivot),
                    std::make_pair(std::move(residual), std::move(combo)));
  }
  return std::nullopt;
}

struct EssentialityReport {
  GrowthTable algebra;    // Gamma_R
  GrowthTable ideal;      // Gamma_I^{(m)}
  GrowthTable quotient;   // Gamma_{R/I}
  bool hypothesis_plausible = false;
  std::string verdict;
};

// Finite-horizon indicator for the essentiality criterion: the hypothesis
// needs the cogrowth to fall strictly behind the algebra growth, read here
// as a strictly shrinking ratio over the observed range. Never a proof.
inline EssentialityReport essentiality_report(
    const AlgebraMode& mode, const std::vector<Polynomial>& generators,
    unsigned n, unsigned m) {
  EchelonBasis basis = EchelonBasis::build(mode, generators, m);
  EssentialityReport rep;
  rep.algebra = mode.growth(n);
  rep.ideal = basis.growth_table(n);
  std::vector<Count> cg;
  for (unsigned i = 0; i <= n; ++i)
    cg.push_back(rep.algebra.at(i) - rep.ideal.at(i));
  rep.quotient = GrowthTable(std::move(cg));

  Count q_n = rep.quotient.at(n), r_n = rep.algebra.at(n);
  Count q_h = rep.quotient.at((n + 1) / 2), r_h = rep.algebra.at((n + 1) / 2);
  if (q_n == 0) {
    rep.hypothesis_plausible = true;
  } else {
    // The ratio Gamma_{R/I}/Gamma_R must at least halve when the horizon
    // doubles; equivalent growths settle on a constant ratio instead.
    rep.hypothesis_plausible =
        (unsigned __int128)q_n * r_h * 2 <= (unsigned __int128)q_h * r_n;
  }
  rep.verdict = rep.hypothesis_plausible
                    ? "consistent with essential (cogrowth falls behind "
                      "growth at this horizon)"
                    : "no verdict (cogrowth tracks growth at this horizon)";
  return rep;
}

// The right ideal generated by all h-1, h in H, equals the one generated by
// h-1 over any generating set of H: (h1 h2 - 1) = (h1 - 1) h2 + (h2 - 1) and
// (h^-1 - 1) = -(h - 1) h^-1.
inline std::vector<Polynomial> augmentation_ideal(
    const std::vector<Word>& subgroup_generators) {
  std::vector<Polynomial> polys;
  for (const Word& h : subgroup_generators) {
    Polynomial p = Polynomial::monomial(h);
    p.add_term(Word{}, -1);
    if (!p.zero()) polys.push_back(std::move(p));
  }
  return polys;
}

inline bool prefix_closed(const std::vector<Word>& monomials) {
  std::set<Word, ShortLexLess> set(monomials.begin(), monomials.end());
  for (const Word& w : monomials) {
    if (w.empty()) continue;
    std::vector<Letter> prefix(w.letters().begin(), w.letters().end() - 1);
    if (!set.count(Word::from_reduced(std::move(prefix)))) return false;
  }
  return true;
}

}  // namespace cogrow
