// growth.hpp -- cumulative growth tables, the CG class of admissible growth
// targets, and finite-horizon order witnesses between tables.

#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace cogrow {

using Count = std::uint64_t;

// Raised when a computation would need data beyond the resolvable horizon or
// past a resource budget.
struct horizon_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline Count checked_add(Count a, Count b) {
  Count r;
  if (__builtin_add_overflow(a, b, &r))
    throw std::overflow_error("growth count overflow");
  return r;
}

inline Count checked_mul(Count a, Count b) {
  Count r;
  if (__builtin_mul_overflow(a, b, &r))
    throw std::overflow_error("growth count overflow");
  return r;
}

// Cumulative counts Gamma(0..N). Nondecreasing by construction.
class GrowthTable {
 public:
  GrowthTable() : values_{1} {}

  explicit GrowthTable(std::vector<Count> values) : values_(std::move(values)) {
    if (values_.empty())
      throw std::invalid_argument("growth table must cover level 0");
    for (std::size_t i = 1; i < values_.size(); ++i)
      if (values_[i] < values_[i - 1])
        throw std::invalid_argument("growth table must be nondecreasing");
  }

  std::size_t horizon() const { return values_.size() - 1; }

  Count at(std::size_t n) const {
    if (n >= values_.size()) throw horizon_error("level beyond table horizon");
    return values_[n];
  }

  // gamma(n) = Gamma(n) - Gamma(n-1), with gamma(0) = Gamma(0).
  Count increment(std::size_t n) const {
    return n == 0 ? at(0) : at(n) - at(n - 1);
  }

  const std::vector<Count>& values() const { return values_; }

  bool operator==(const GrowthTable& o) const { return values_ == o.values_; }

 private:
  std::vector<Count> values_;
};

inline void emit_csv(const GrowthTable& t, std::ostream& os) {
  os << "n,Gamma,gamma\n";
  for (std::size_t n = 0; n <= t.horizon(); ++n)
    os << n << ',' << t.at(n) << ',' << t.increment(n) << '\n';
}

inline void emit_json(const GrowthTable& t, std::ostream& os) {
  os << "{\"horizon\": " << t.horizon() << ", \"values\": [";
  for (std::size_t n = 0; n <= t.horizon(); ++n)
    os << (n ? ", " : "") << t.at(n);
  os << "]}\n";
}

// A member of the class CG: an increment stream f with f_0 = 1, f_i >= 1
// below the cutoff r (and zero above it), and f_{i+1} <= d * f_i throughout.
// Increments are a pure function of the index, so any number of consumers can
// stream the same function independently.
struct CGFunction {
  std::function<Count(Count)> increment;
  std::optional<Count> cutoff;  // r; unbounded when absent
  Count ratio_num = 1;          // d as an exact fraction
  Count ratio_den = 1;
  std::string name;

  bool bounded() const { return cutoff.has_value(); }

  Count f(Count i) const {
    if (cutoff && i > *cutoff) return 0;
    return increment(i);
  }
};

// Checks the CG invariants on f_0..f_n and throws with the offending index.
inline void validate_cg_prefix(const CGFunction& a, Count n) {
  Count prev = 0;
  for (Count i = 0; i <= n; ++i) {
    Count fi = a.f(i);
    if (i == 0 && fi != 1)
      throw std::invalid_argument("CG violation at index 0: f_0 must be 1");
    bool below_cutoff = !a.cutoff || i <= *a.cutoff;
    if (below_cutoff && fi == 0)
      throw std::invalid_argument("CG violation at index " + std::to_string(i) +
                                  ": increment must be positive below cutoff");
    if (!below_cutoff && fi != 0)
      throw std::invalid_argument("CG violation at index " + std::to_string(i) +
                                  ": increment must vanish beyond cutoff");
    if (i > 0) {
      // f_i <= d * f_{i-1}  <=>  f_i * den <= num * f_{i-1}
      unsigned __int128 lhs = (unsigned __int128)fi * a.ratio_den;
      unsigned __int128 rhs = (unsigned __int128)a.ratio_num * prev;
      if (lhs > rhs)
        throw std::invalid_argument("CG violation at index " +
                                    std::to_string(i) +
                                    ": ratio bound d exceeded");
    }
    prev = fi;
  }
}

inline GrowthTable partial_sums(const CGFunction& a, Count n) {
  validate_cg_prefix(a, n);
  std::vector<Count> vals;
  vals.reserve(n + 1);
  Count sum = 0;
  for (Count i = 0; i <= n; ++i) {
    sum = checked_add(sum, a.f(i));
    vals.push_back(sum);
  }
  return GrowthTable(std::move(vals));
}

// Finite-horizon witness for Gamma_1 <= Gamma_2(C n): checks every level n
// with n within g1's horizon and C*n within g2's. This witnesses the relation
// on the available data only; it proves nothing asymptotic.
inline bool preorder_witness(const GrowthTable& g1, const GrowthTable& g2,
                             Count C) {
  if (C == 0) throw std::invalid_argument("preorder constant must be positive");
  bool any = false;
  for (std::size_t n = 0; n <= g1.horizon(); ++n) {
    Count cn;
    if (__builtin_mul_overflow((Count)n, C, &cn) || cn > g2.horizon()) break;
    any = true;
    if (g1.at(n) > g2.at(cn)) return false;
  }
  if (!any) throw std::invalid_argument("empty checkable range");
  return true;
}

inline bool equivalence_witness(const GrowthTable& g1, const GrowthTable& g2,
                                Count C) {
  return preorder_witness(g1, g2, C) && preorder_witness(g2, g1, C);
}

// ---- named families ------------------------------------------------------

inline Count ipow(Count base, Count exp) {
  Count r = 1;
  for (Count i = 0; i < exp; ++i) r = checked_mul(r, base);
  return r;
}

// Increments of n^k, floored at 1 so the stream stays in CG.
inline CGFunction cg_polynomial(unsigned k) {
  if (k < 1) throw std::invalid_argument("polynomial degree must be >= 1");
  CGFunction a;
  a.increment = [k](Count i) -> Count {
    if (i == 0) return 1;
    Count d = ipow(i, k) - ipow(i - 1, k);
    return d == 0 ? 1 : d;
  };
  // The increment ratio (i+1)^k - i^k over i^k - (i-1)^k is largest at i = 1.
  a.ratio_num = ipow(2, k) - 1;
  a.ratio_den = 1;
  a.name = "poly:" + std::to_string(k);
  return a;
}

inline CGFunction cg_exponential(Count base) {
  if (base < 2) throw std::invalid_argument("exponential base must be >= 2");
  CGFunction a;
  a.increment = [base](Count i) { return ipow(base, i); };
  a.ratio_num = base;
  a.ratio_den = 1;
  a.name = "exp:" + std::to_string(base);
  return a;
}

// Increments round(e^{i^beta}) for 0 < beta < 1. Since (i+1)^beta - i^beta
// never exceeds 1 the exact ratio is at most e, and rounding keeps it under 4.
inline CGFunction cg_intermediate(double beta) {
  if (!(beta > 0.0 && beta < 1.0))
    throw std::invalid_argument("intermediate exponent must satisfy 0<beta<1");
  CGFunction a;
  a.increment = [beta](Count i) -> Count {
    long double v = std::exp(std::pow((long double)i, (long double)beta));
    return (Count)std::llround((double)v);
  };
  a.ratio_num = 4;
  a.ratio_den = 1;
  std::ostringstream name;
  name << "interm:" << beta;
  a.name = name.str();
  return a;
}

// f = 1 up to the cutoff and 0 afterwards; partial sums reach r+1 and stay.
inline CGFunction cg_finite(Count r) {
  CGFunction a;
  a.increment = [](Count) -> Count { return 1; };
  a.cutoff = r;
  a.ratio_num = 1;
  a.ratio_den = 1;
  a.name = "finite:" + std::to_string(r);
  return a;
}

// Parses family specs of the form poly:K, exp:B, interm:BETA, finite:R.
inline CGFunction parse_family(const std::string& spec) {
  auto colon = spec.find(':');
  if (colon == std::string::npos)
    throw std::invalid_argument("family spec must look like kind:parameter");
  std::string kind = spec.substr(0, colon), arg = spec.substr(colon + 1);
  try {
    if (kind == "poly") return cg_polynomial((unsigned)std::stoul(arg));
    if (kind == "exp") return cg_exponential((Count)std::stoull(arg));
    if (kind == "interm") return cg_intermediate(std::stod(arg));
    if (kind == "finite") return cg_finite((Count)std::stoull(arg));
  } catch (const std::invalid_argument&) {
    throw;
  } catch (const std::exception&) {
    throw std::invalid_argument("bad family parameter: " + arg);
  }
  throw std::invalid_argument("unknown family kind: " + kind);
}

}  // namespace cogrow
