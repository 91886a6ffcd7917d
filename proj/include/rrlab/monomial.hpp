#pragma once

#include <algorithm>
#include <numeric>
#include <vector>

#include "rrlab/error.hpp"

namespace rrlab {

struct Monomial {
  std::vector<int> e;  // exponents, one per ring variable
  int deg = 0;         // cached sum of exponents

  static Monomial one(int nvars) {
    Monomial m;
    m.e.assign(nvars, 0);
    return m;
  }

  static Monomial of(std::vector<int> exps) {
    Monomial m;
    m.deg = std::accumulate(exps.begin(), exps.end(), 0);
    m.e = std::move(exps);
    return m;
  }

  static Monomial var(int i, int nvars, int pow = 1) {
    Monomial m = one(nvars);
    m.e[i] = pow;
    m.deg = pow;
    return m;
  }

  int nvars() const { return static_cast<int>(e.size()); }
  bool is_one() const { return deg == 0; }

  bool divides(const Monomial& m) const {
    if (deg > m.deg) return false;
    for (size_t i = 0; i < e.size(); ++i)
      if (e[i] > m.e[i]) return false;
    return true;
  }

  bool coprime(const Monomial& m) const {
    for (size_t i = 0; i < e.size(); ++i)
      if (e[i] > 0 && m.e[i] > 0) return false;
    return true;
  }

  Monomial operator*(const Monomial& m) const {
    Monomial r = *this;
    for (size_t i = 0; i < e.size(); ++i) r.e[i] += m.e[i];
    r.deg += m.deg;
    return r;
  }

  // Exact quotient; caller guarantees m | *this.
  Monomial divide(const Monomial& m) const {
    Monomial r = *this;
    for (size_t i = 0; i < e.size(); ++i) r.e[i] -= m.e[i];
    r.deg -= m.deg;
    return r;
  }

  static Monomial lcm(const Monomial& a, const Monomial& b) {
    Monomial r = a;
    r.deg = 0;
    for (size_t i = 0; i < a.e.size(); ++i) {
      r.e[i] = std::max(a.e[i], b.e[i]);
      r.deg += r.e[i];
    }
    return r;
  }

  bool operator==(const Monomial& m) const { return deg == m.deg && e == m.e; }
  bool operator!=(const Monomial& m) const { return !(*this == m); }
};

// Total multiplicative monomial orders with 1 minimal.  grevlex is
// degree-compatible; block(k) puts the first k variables before the rest
// (grevlex within each block), which is what elimination needs.
struct MonomialOrder {
  enum class Kind { grevlex, lex, block };
  Kind kind = Kind::grevlex;
  int block_size = 0;

  static MonomialOrder grevlex() { return {}; }
  static MonomialOrder lex() { return {Kind::lex, 0}; }
  static MonomialOrder block(int k) { return {Kind::block, k}; }

  bool operator==(const MonomialOrder& o) const {
    return kind == o.kind && (kind != Kind::block || block_size == o.block_size);
  }
  bool operator!=(const MonomialOrder& o) const { return !(*this == o); }

  // strict a < b
  bool less(const Monomial& a, const Monomial& b) const {
    switch (kind) {
      case Kind::grevlex:
        return grevlex_less(a.e, b.e, 0, static_cast<int>(a.e.size()));
      case Kind::lex:
        for (size_t i = 0; i < a.e.size(); ++i)
          if (a.e[i] != b.e[i]) return a.e[i] < b.e[i];
        return false;
      case Kind::block: {
        int k = std::min<int>(block_size, static_cast<int>(a.e.size()));
        if (int c = grevlex_cmp(a.e, b.e, 0, k)) return c < 0;
        return grevlex_less(a.e, b.e, k, static_cast<int>(a.e.size()));
      }
    }
    return false;
  }

 private:
  static int grevlex_cmp(const std::vector<int>& a, const std::vector<int>& b, int lo, int hi) {
    int da = 0, db = 0;
    for (int i = lo; i < hi; ++i) {
      da += a[i];
      db += b[i];
    }
    if (da != db) return da < db ? -1 : 1;
    for (int i = hi - 1; i >= lo; --i)
      if (a[i] != b[i]) return a[i] > b[i] ? -1 : 1;
    return 0;
  }
  static bool grevlex_less(const std::vector<int>& a, const std::vector<int>& b, int lo, int hi) {
    return grevlex_cmp(a, b, lo, hi) < 0;
  }
};

}  // namespace rrlab
