#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <tuple>
#include <vector>

#include "rrlab/poly.hpp"

namespace rrlab {

// Reduced Groebner basis: monic, auto-reduced, sorted ascending by leading
// monomial.  The reduced basis is the unique canonical representative of its
// ideal for the given order, so semantic ideal equality is list equality here.
struct GroebnerBasis {
  MonomialOrder ord;
  int nvars = 0;
  std::vector<Polynomial> gens;

  bool is_unit_ideal() const {
    return gens.size() == 1 && gens[0].nterms() == 1 && gens[0].terms()[0].m.is_one();
  }
};

namespace gbdetail {

using Terms = std::vector<Term>;  // sorted descending under the working order

inline Terms to_terms(const Polynomial& p, const MonomialOrder& ord) {
  Terms t = p.terms();
  if (!(ord == MonomialOrder::grevlex()))
    std::sort(t.begin(), t.end(),
              [&](const Term& a, const Term& b) { return ord.less(b.m, a.m); });
  return t;
}

// h - c * x^m * g, with the cancelling leading term of h skipped.
inline Terms sub_scaled(const Terms& h, const Coeff& c, const Monomial& m, const Terms& g,
                        const MonomialOrder& ord) {
  Terms out;
  out.reserve(h.size() + g.size());
  size_t ih = 1;  // h[0] cancels against the first term of c*m*g
  size_t ig = 1;
  while (ih < h.size() && ig < g.size()) {
    Monomial gm = g[ig].m * m;
    if (h[ih].m == gm) {
      Coeff v = h[ih].c - c * g[ig].c;
      if (!v.is_zero()) out.push_back({gm, v});
      ++ih;
      ++ig;
    } else if (ord.less(gm, h[ih].m)) {
      out.push_back(h[ih]);
      ++ih;
    } else {
      out.push_back({gm, -(c * g[ig].c)});
      ++ig;
    }
  }
  for (; ih < h.size(); ++ih) out.push_back(h[ih]);
  for (; ig < g.size(); ++ig) out.push_back({g[ig].m * m, -(c * g[ig].c)});
  return out;
}

struct BasisElem {
  Terms t;
  Monomial lm;
  Coeff lc_inv;
  bool alive = true;
};

// Full multivariate division: every term of the remainder is outside the
// leading-term ideal of the basis.
inline Terms reduce_full(Terms h, const std::vector<BasisElem>& B, const MonomialOrder& ord) {
  Terms rem;
  while (!h.empty()) {
    const Term lt = h.front();
    const BasisElem* red = nullptr;
    for (auto& b : B)
      if (b.alive && b.lm.divides(lt.m)) {
        red = &b;
        break;
      }
    if (red) {
      h = sub_scaled(h, lt.c * red->lc_inv, lt.m.divide(red->lm), red->t, ord);
    } else {
      rem.push_back(lt);
      h.erase(h.begin());
    }
  }
  return rem;
}

inline Terms spoly(const BasisElem& a, const BasisElem& b, const MonomialOrder& ord) {
  Monomial l = Monomial::lcm(a.lm, b.lm);
  Terms ua;
  ua.reserve(a.t.size());
  Monomial ma = l.divide(a.lm);
  for (auto& t : a.t) ua.push_back({t.m * ma, t.c * a.lc_inv});
  // ua now has leading term exactly l with coefficient 1; subtract the b side
  return sub_scaled(ua, b.lc_inv, l.divide(b.lm), b.t, ord);
}

}  // namespace gbdetail

inline Polynomial normal_form(const Polynomial& p, const GroebnerBasis& G) {
  if (p.is_zero()) return p;
  std::vector<gbdetail::BasisElem> B;
  B.reserve(G.gens.size());
  for (auto& g : G.gens) {
    gbdetail::BasisElem e;
    e.t = gbdetail::to_terms(g, G.ord);
    e.lm = e.t.front().m;
    e.lc_inv = e.t.front().c.inv();
    B.push_back(std::move(e));
  }
  auto r = gbdetail::reduce_full(gbdetail::to_terms(p, G.ord), B, G.ord);
  return Polynomial::from_terms(std::move(r));
}

// Buchberger with the product and chain criteria and normal (smallest-lcm)
// pair selection, followed by minimalization and tail reduction.
inline GroebnerBasis reduced_groebner(const std::vector<Polynomial>& gens, MonomialOrder ord,
                                      int nvars) {
  using namespace gbdetail;
  std::vector<BasisElem> B;

  // pending pair queue ordered by (lcm under ord, i, j)
  struct Pair {
    Monomial lcm;
    int i, j;
  };
  auto pair_less = [&ord](const Pair& a, const Pair& b) {
    if (a.lcm != b.lcm) return ord.less(a.lcm, b.lcm);
    return std::tie(a.i, a.j) < std::tie(b.i, b.j);
  };
  std::set<Pair, decltype(pair_less)> queue(pair_less);
  std::set<std::pair<int, int>> pending;

  auto add_elem = [&](Terms t) {
    BasisElem e;
    e.t = std::move(t);
    e.lm = e.t.front().m;
    e.lc_inv = e.t.front().c.inv();
    int n = static_cast<int>(B.size());
    for (int i = 0; i < n; ++i) {
      Pair p{Monomial::lcm(B[i].lm, e.lm), i, n};
      queue.insert(p);
      pending.insert({i, n});
    }
    B.push_back(std::move(e));
  };

  for (auto& g : gens)
    if (!g.is_zero()) add_elem(to_terms(g, ord));

  while (!queue.empty()) {
    Pair p = *queue.begin();
    queue.erase(queue.begin());
    pending.erase({p.i, p.j});
    const auto& gi = B[p.i];
    const auto& gj = B[p.j];
    if (gi.lm.coprime(gj.lm)) continue;
    // chain criterion: some gk divides the lcm and both companion pairs are done
    bool skip = false;
    for (int k = 0; k < static_cast<int>(B.size()) && !skip; ++k) {
      if (k == p.i || k == p.j) continue;
      if (!B[k].lm.divides(p.lcm)) continue;
      auto a = std::minmax(p.i, k);
      auto b = std::minmax(p.j, k);
      if (!pending.count({a.first, a.second}) && !pending.count({b.first, b.second})) skip = true;
    }
    if (skip) continue;
    Terms r = reduce_full(spoly(gi, gj, ord), B, ord);
    if (!r.empty()) add_elem(std::move(r));
  }

  // minimalize: keep an element only if no kept leading monomial divides its own
  std::vector<int> idx(B.size());
  for (size_t i = 0; i < B.size(); ++i) idx[i] = static_cast<int>(i);
  std::sort(idx.begin(), idx.end(), [&](int a, int b) {
    if (B[a].lm != B[b].lm) return ord.less(B[a].lm, B[b].lm);
    return a < b;
  });
  std::vector<int> kept;
  for (int i : idx) {
    bool redundant = false;
    for (int k : kept)
      if (B[k].lm.divides(B[i].lm)) {
        redundant = true;
        break;
      }
    if (!redundant)
      kept.push_back(i);
    else
      B[i].alive = false;
  }
  for (auto& b : B) b.alive = false;
  for (int k : kept) B[k].alive = true;

  // tail-reduce each kept element against the others and normalize monic
  GroebnerBasis G;
  G.ord = ord;
  G.nvars = nvars;
  for (int k : kept) {
    B[k].alive = false;
    Terms r = reduce_full(B[k].t, B, ord);
    B[k].alive = true;
    Coeff inv = r.front().c.inv();
    for (auto& t : r) t.c = t.c * inv;
    B[k].t = r;  // keep subsequent reductions against the reduced form
    B[k].lm = r.front().m;
    B[k].lc_inv = Coeff::integer(1, r.front().c.characteristic());
    G.gens.push_back(Polynomial::from_terms(std::move(r)));
  }
  return G;
}

// Exponent bound per variable: the least e with x_i^e in the leading-term
// ideal, or nullopt when no pure power exists.
inline std::vector<std::optional<int>> staircase_bounds(const GroebnerBasis& G) {
  std::vector<std::optional<int>> bound(G.nvars);
  for (auto& g : G.gens) {
    const Monomial& lm = leading_term(g, G.ord).m;
    int nz = -1;
    bool pure = true;
    for (int i = 0; i < G.nvars; ++i)
      if (lm.e[i] > 0) {
        if (nz >= 0) {
          pure = false;
          break;
        }
        nz = i;
      }
    if (!pure) continue;
    if (nz < 0) {  // unit ideal
      for (auto& b : bound) b = 0;
      return bound;
    }
    if (!bound[nz] || *bound[nz] > lm.e[nz]) bound[nz] = lm.e[nz];
  }
  return bound;
}

// Number of standard monomials (a k-basis of the quotient), or nullopt when
// the quotient is infinite-dimensional.  A quotient is infinite-dimensional
// exactly when some variable has no pure power among the leading monomials.
inline std::optional<long long> k_dimension(const GroebnerBasis& G) {
  if (G.is_unit_ideal()) return 0;
  auto bound = staircase_bounds(G);
  for (auto& b : bound)
    if (!b) return std::nullopt;
  std::vector<Monomial> lms;
  for (auto& g : G.gens) lms.push_back(leading_term(g, G.ord).m);
  long long count = 0;
  Monomial cur = Monomial::one(G.nvars);
  // odometer over the finite box below the pure-power bounds
  for (;;) {
    bool standard = true;
    for (auto& lm : lms)
      if (lm.divides(cur)) {
        standard = false;
        break;
      }
    if (standard) ++count;
    int i = 0;
    while (i < G.nvars) {
      cur.e[i] += 1;
      cur.deg += 1;
      if (cur.e[i] < *bound[i]) break;
      cur.deg -= cur.e[i];
      cur.e[i] = 0;
      ++i;
    }
    if (i == G.nvars) break;
  }
  return count;
}

// All standard monomials of degree <= cap, sorted grevlex-ascending.
inline std::vector<Monomial> standard_monomials(const GroebnerBasis& G, int degree_cap) {
  std::vector<Monomial> lms;
  for (auto& g : G.gens) lms.push_back(leading_term(g, G.ord).m);
  std::vector<Monomial> out;
  Monomial cur = Monomial::one(G.nvars);
  auto standard = [&](const Monomial& m) {
    for (auto& lm : lms)
      if (lm.divides(m)) return false;
    return true;
  };
  // DFS over exponent vectors with total degree <= cap
  auto rec = [&](auto&& self, int var) -> void {
    if (var == G.nvars) {
      if (standard(cur)) out.push_back(cur);
      return;
    }
    for (int e = 0; cur.deg + e <= degree_cap; ++e) {
      cur.e[var] = e;
      cur.deg += e;
      self(self, var + 1);
      cur.deg -= e;
      cur.e[var] = 0;
    }
  };
  rec(rec, 0);
  MonomialOrder grev = MonomialOrder::grevlex();
  std::sort(out.begin(), out.end(),
            [&](const Monomial& a, const Monomial& b) { return grev.less(a, b); });
  return out;
}

}  // namespace rrlab
