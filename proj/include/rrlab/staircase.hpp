#pragma once

#include <algorithm>
#include <optional>
#include <vector>

#include "rrlab/error.hpp"

namespace rrlab {

// Brute-force combinatorial engine for monomial ideals in 2 or 3 variables.
// Entirely independent of the Groebner machinery: exponent vectors only.
struct Staircase {
  int nvars = 0;
  std::vector<std::vector<int>> gens;  // minimal generators, canonically sorted

  static Staircase make(int nvars, std::vector<std::vector<int>> raw) {
    if (nvars < 1 || nvars > 3)
      throw Failure("UNSUPPORTED", "staircase oracle handles 1 to 3 variables");
    for (auto& g : raw)
      if (static_cast<int>(g.size()) != nvars)
        throw Failure("BAD_ARGUMENT", "exponent vector of wrong length");
    Staircase s;
    s.nvars = nvars;
    s.gens = minimalize(std::move(raw));
    return s;
  }

  bool operator==(const Staircase& o) const { return nvars == o.nvars && gens == o.gens; }
  bool operator!=(const Staircase& o) const { return !(*this == o); }

  bool is_zero() const { return gens.empty(); }

  static bool div(const std::vector<int>& a, const std::vector<int>& b) {
    for (size_t i = 0; i < a.size(); ++i)
      if (a[i] > b[i]) return false;
    return true;
  }

  static std::vector<std::vector<int>> minimalize(std::vector<std::vector<int>> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    std::vector<std::vector<int>> out;
    for (size_t i = 0; i < v.size(); ++i) {
      bool redundant = false;
      for (size_t j = 0; j < v.size() && !redundant; ++j)
        if (i != j && div(v[j], v[i])) redundant = true;  // duplicates already removed
      if (!redundant) out.push_back(v[i]);
    }
    return out;
  }
};

enum class StairOp { product, intersect, colon, sum };

inline Staircase stair_op(const Staircase& a, const Staircase& b, StairOp op) {
  if (a.nvars != b.nvars) throw Failure("RING_MISMATCH", "staircase variable counts differ");
  int n = a.nvars;
  std::vector<std::vector<int>> out;
  switch (op) {
    case StairOp::sum:
      out = a.gens;
      out.insert(out.end(), b.gens.begin(), b.gens.end());
      break;
    case StairOp::product:
      for (auto& x : a.gens)
        for (auto& y : b.gens) {
          std::vector<int> e(n);
          for (int i = 0; i < n; ++i) e[i] = x[i] + y[i];
          out.push_back(std::move(e));
        }
      break;
    case StairOp::intersect:
      for (auto& x : a.gens)
        for (auto& y : b.gens) {
          std::vector<int> e(n);
          for (int i = 0; i < n; ++i) e[i] = std::max(x[i], y[i]);
          out.push_back(std::move(e));
        }
      break;
    case StairOp::colon: {
      // (A : B) = intersection over generators y of B of (A : y), where
      // (A : y) is the truncated-subtraction shift of A by y.
      bool have = false;
      Staircase acc;
      for (auto& y : b.gens) {
        std::vector<std::vector<int>> shifted;
        for (auto& x : a.gens) {
          std::vector<int> e(n);
          for (int i = 0; i < n; ++i) e[i] = std::max(0, x[i] - y[i]);
          shifted.push_back(std::move(e));
        }
        Staircase part = Staircase::make(n, std::move(shifted));
        acc = have ? stair_op(acc, part, StairOp::intersect) : part;
        have = true;
      }
      if (!have) throw Failure("BAD_ARGUMENT", "colon by the zero staircase");
      return acc;
    }
  }
  return Staircase::make(n, std::move(out));
}

inline Staircase stair_power(const Staircase& a, int k) {
  if (k < 0) throw Failure("BAD_ARGUMENT", "negative staircase power");
  Staircase r = Staircase::make(a.nvars, {std::vector<int>(a.nvars, 0)});
  for (int i = 0; i < k; ++i) r = stair_op(r, a, StairOp::product);
  return r;
}

// Lattice points under the staircase; nullopt (INFINITE) when some axis has
// no pure power among the generators.
inline std::optional<long long> stair_length(const Staircase& s) {
  int n = s.nvars;
  std::vector<int> bound(n, -1);
  for (auto& g : s.gens) {
    int nz = -1;
    bool pure = true;
    for (int i = 0; i < n; ++i)
      if (g[i] > 0) {
        if (nz >= 0) {
          pure = false;
          break;
        }
        nz = i;
      }
    if (nz < 0) return 0;  // unit ideal
    if (pure && (bound[nz] < 0 || g[nz] < bound[nz])) bound[nz] = g[nz];
  }
  for (int i = 0; i < n; ++i)
    if (bound[i] < 0) return std::nullopt;
  long long count = 0;
  std::vector<int> e(n, 0);
  for (;;) {
    bool under = true;
    for (auto& g : s.gens)
      if (Staircase::div(g, e)) {
        under = false;
        break;
      }
    if (under) ++count;
    int i = 0;
    while (i < n) {
      if (++e[i] < bound[i]) break;
      e[i] = 0;
      ++i;
    }
    if (i == n) break;
  }
  return count;
}

// Brute-force Ratliff-Rush closure: union of the colon chain (I^{m+1} : I^m)
// until `window` consecutive equalities.  Sound for monomial ideals in a
// polynomial ring, where the whole chain stays monomial.
inline Staircase stair_rr(const Staircase& s, int window = 4, int cap = 40) {
  if (!stair_length(s))
    throw Failure("BAD_ARGUMENT", "stair_rr needs a finite (zero-dimensional) staircase");
  Staircase prev = s;
  int streak = 0;
  Staircase pow_m = s;  // I^m, starting at m = 1
  for (int m = 1; m <= cap; ++m) {
    Staircase pow_m1 = stair_op(pow_m, s, StairOp::product);  // I^{m+1}
    Staircase link = stair_op(pow_m1, pow_m, StairOp::colon);
    if (link == prev) {
      if (++streak >= window) return prev;
    } else {
      streak = 0;
      prev = link;
    }
    pow_m = pow_m1;
  }
  throw Failure("NO_STABILIZATION", "Ratliff-Rush chain still moving at oracle cap");
}

}  // namespace rrlab
