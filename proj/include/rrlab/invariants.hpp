#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rrlab/local.hpp"
#include "rrlab/rng.hpp"

namespace rrlab {

// C(a, b) with the convention C(a, b) = 0 for a < b or b < 0.
inline long long binom_ll(long long a, long long b) {
  if (b < 0 || a < b) return 0;
  b = std::min(b, a - b);
  long long r = 1;
  for (long long i = 1; i <= b; ++i) r = r * (a - b + i) / i;
  return r;
}

struct ReductionCert {
  IdealHandle J;
  IdealHandle I;
  int r = 0;                // least n with I^{n+1} = J I^n locally
  bool prev_checked = false;  // r > 0: the check at n = r-1 was run and failed
};

struct RRReport {
  IdealHandle I;
  IdealHandle rr_closure;
  int method_a_steps = 0;
  int method_b_steps = 0;
  bool agreement = false;
  int window = 2;
  Polynomial superficial_witness;
  std::map<int, bool> per_n;  // n -> (closure of I^n equals I^n locally)
};

struct VVTable {
  std::vector<bool> rows;  // rows[n-1]: J cap I^n = J I^{n-1} locally
  std::optional<int> first_failure;
};

struct HilbertData {
  std::vector<long long> H;  // H[n] = lambda(R/I^n), n = 0..cap(+3)
  std::vector<long long> e;  // e_0..e_d
  int n0 = 0;                // first n from which the polynomial matches H
  int d = 0;
};

struct AuditReport {
  std::string id;
  std::vector<std::pair<std::string, bool>> hypotheses;
  std::vector<std::pair<std::string, bool>> conclusions;
  bool hypotheses_hold = false;
  bool conclusion_holds = false;

  void hyp(const std::string& name, bool ok) { hypotheses.push_back({name, ok}); }
  void con(const std::string& name, bool ok) { conclusions.push_back({name, ok}); }
  void settle() {
    hypotheses_hold = true;
    for (auto& [n, ok] : hypotheses) hypotheses_hold = hypotheses_hold && ok;
    conclusion_holds = true;
    for (auto& [n, ok] : conclusions) conclusion_holds = conclusion_holds && ok;
  }
};

inline constexpr int kChainCapDefault = 12;

namespace vdetail {

// Random K-combination of the generators of I (never the zero draw).
inline Polynomial random_combination(const IdealHandle& I, Mcg64& rng) {
  const RingCtx& ring = *I.ring();
  for (;;) {
    Polynomial acc = Polynomial::zero();
    for (auto& g : I.gens()) {
      long long c = ring.characteristic > 0
                        ? static_cast<long long>(rng.below(ring.characteristic))
                        : static_cast<long long>(rng.below(201)) - 100;
      acc = add(acc, scale(g, ring.c(c)));
    }
    if (!acc.is_zero()) return acc;
  }
}

inline IdealHandle principal(const RingPtr& ring, const Polynomial& x) {
  return IdealHandle(ring, {x});
}

// Method A chain: L_t = (I^{t+1} : I^t), ascending, stop after `window`
// consecutive local equalities.
inline std::pair<IdealHandle, int> rr_chain_colon_powers(const IdealHandle& I, int window,
                                                         int cap) {
  IdealHandle prev = I;
  int run = 0;
  for (int t = 1; t <= cap; ++t) {
    IdealHandle cur = ideal_colon(ideal_power(I, t + 1), ideal_power(I, t));
    if (!local_contains(cur, prev))
      throw Failure("MONOTONE_VIOLATION", "Ratliff-Rush chain failed to ascend");
    run = local_equal(cur, prev) ? run + 1 : 0;
    prev = cur;
    if (run >= window) return {prev, t};
  }
  throw Failure("NO_STABILIZATION", "Ratliff-Rush chain still moving at cap");
}

// Stabilized value of the ascending chain C_t = (I^{n+t} : x^t) for a
// superficial nonzerodivisor x: the Ratliff-Rush closure of I^n.  Far cheaper
// than colon by powers of I since the divisor is principal.
inline std::pair<IdealHandle, int> rr_chain_superficial(const IdealHandle& I, int n,
                                                        const Polynomial& x, int window,
                                                        int cap) {
  IdealHandle prev = ideal_power(I, n);
  Polynomial xp = x;
  int run = 0;
  for (int t = 1; t <= cap; ++t) {
    IdealHandle cur = ideal_colon(ideal_power(I, n + t), principal(I.ring(), xp));
    run = local_equal(cur, prev) ? run + 1 : 0;
    prev = cur;
    if (run >= window) return {prev, t};
    xp = mul(xp, x);
  }
  throw Failure("NO_STABILIZATION", "superficial-element chain still moving at cap");
}

}  // namespace vdetail

// True iff x is a local nonzerodivisor lying in I with (I^{n+1} : x) = I^n
// locally for all n in [anchor, anchor + window].  When no anchor is given the
// smallest working one is found by scanning.  Window-certified, not a proof
// for all n.
inline bool superficial_check(const Polynomial& x, const IdealHandle& I, int window = 3,
                              int anchor = -1, int scan_cap = 8) {
  if (x.is_zero() || !local_member(x, I)) return false;
  if (!is_regular_local(x, I.ring())) return false;
  IdealHandle X = vdetail::principal(I.ring(), x);
  auto eq = [&](int n) {
    return local_equal(ideal_colon(ideal_power(I, n + 1), X), ideal_power(I, n));
  };
  if (anchor < 0) {
    anchor = -1;
    for (int n = 1; n <= scan_cap; ++n)
      if (eq(n)) {
        anchor = n;
        break;
      }
    if (anchor < 0) return false;
  }
  for (int n = anchor; n <= anchor + window; ++n)
    if (!eq(n)) return false;
  return true;
}

inline ReductionCert reduction_number(const IdealHandle& J, const IdealHandle& I,
                                      int cap = kChainCapDefault) {
  if (!local_contains_general(I, J))
    throw Failure("NOT_CONTAINED", "J is not inside I locally");
  ReductionCert cert;
  cert.J = J;
  cert.I = I;
  for (int r = 0; r <= cap; ++r) {
    bool eq = false;
    try {
      eq = local_equal(ideal_power(I, r + 1), ideal_product(J, ideal_power(I, r)));
    } catch (const Failure& f) {
      // a non-M-primary product certainly differs from I^{r+1}
      if (f.code() != "NOT_M_PRIMARY") throw;
    }
    if (eq) {
      cert.r = r;
      cert.prev_checked = r > 0;
      return cert;
    }
  }
  throw Failure("NOT_A_REDUCTION_WITHIN_CAP",
                "I^{r+1} != J I^r locally for every r up to the cap");
}

inline std::pair<IdealHandle, ReductionCert> find_minimal_reduction(const IdealHandle& I, int d,
                                                                    long long seed,
                                                                    int cap = kChainCapDefault,
                                                                    int retries = 20) {
  Mcg64 rng(static_cast<std::uint64_t>(seed));
  auto attempt = [&](int ngens, int tries) -> std::optional<std::pair<IdealHandle, ReductionCert>> {
    for (int t = 0; t < tries; ++t) {
      Mcg64 sub = rng.fork(static_cast<std::uint64_t>(ngens * 1000 + t));
      std::vector<Polynomial> gens;
      for (int i = 0; i < ngens; ++i) gens.push_back(vdetail::random_combination(I, sub));
      IdealHandle J(I.ring(), std::move(gens));
      try {
        return std::make_pair(J, reduction_number(J, I, cap));
      } catch (const Failure&) {
        continue;
      }
    }
    return std::nullopt;
  };
  if (auto hit = attempt(d, retries)) return *hit;
  // d generators never worked: if d-1 already give a reduction the supplied
  // dimension is wrong, otherwise the search simply failed
  if (d > 1 && attempt(d - 1, 3))
    throw Failure("BAD_DIMENSION", "a reduction with fewer than d generators exists");
  throw Failure("SEARCH_FAILED", "no d-generated reduction found within the retry budget");
}

inline RRReport ratliff_rush(const IdealHandle& I, int window = 2, long long seed = 1,
                             int cap = kChainCapDefault, int per_n_cap = 4,
                             int superficial_trials = 20) {
  RRReport rep;
  rep.I = I;
  rep.window = window;
  auto [closure_a, steps_a] = vdetail::rr_chain_colon_powers(I, window, cap);
  rep.rr_closure = closure_a;
  rep.method_a_steps = steps_a;

  // method B: (I^{t+1} : x^t) for a verified superficial nonzerodivisor x
  Mcg64 rng(static_cast<std::uint64_t>(seed));
  Polynomial x;
  bool found = false;
  for (int t = 0; t < superficial_trials && !found; ++t) {
    Polynomial cand = vdetail::random_combination(I, rng);
    if (superficial_check(cand, I, window)) {
      x = cand;
      found = true;
    }
  }
  if (!found)
    throw Failure("SUPERFICIAL_SEARCH_FAILED",
                  "no superficial element found for the second Ratliff-Rush method");
  rep.superficial_witness = x;
  {
    auto [closure_b, steps_b] = vdetail::rr_chain_superficial(I, 1, x, window, cap);
    rep.method_b_steps = steps_b;
    rep.agreement = local_equal(rep.rr_closure, closure_b);
  }

  if (!local_contains(rep.rr_closure, I))
    throw Failure("MONOTONE_VIOLATION", "closure does not contain the ideal");
  // closure has the same high powers: rr * I^s inside I^{s+1} at the
  // stabilization step
  if (!local_contains(ideal_power(I, rep.method_a_steps + 1),
                      ideal_product(rep.rr_closure, ideal_power(I, rep.method_a_steps))))
    throw Failure("MONOTONE_VIOLATION", "closure times I^s escapes I^{s+1}");

  for (int n = 1; n <= per_n_cap; ++n) {
    auto [cl, steps] = vdetail::rr_chain_superficial(I, n, x, window, cap);
    (void)steps;
    rep.per_n[n] = local_equal(cl, ideal_power(I, n));
  }
  return rep;
}

inline std::vector<Polynomial> tame_superficial_sequence(const IdealHandle& I, int d,
                                                         long long seed, int window = 3,
                                                         int retries = 20) {
  Mcg64 rng(static_cast<std::uint64_t>(seed));
  std::vector<Polynomial> xs;
  RingPtr cur_ring = I.ring();
  for (int i = 0; i < d; ++i) {
    bool found = false;
    for (int t = 0; t < retries && !found; ++t) {
      Mcg64 sub = rng.fork(static_cast<std::uint64_t>(i * 1000 + t));
      Polynomial x = vdetail::random_combination(I, sub);
      if (!superficial_check(x, I, window)) continue;  // tameness, original ring
      if (i > 0) {
        IdealHandle Ibar = in_ring(I, cur_ring);
        if (!superficial_check(x, Ibar, window)) continue;  // sequence property
      }
      xs.push_back(x);
      cur_ring = quotient_ctx(cur_ring, {x});
      found = true;
    }
    if (!found)
      throw Failure("SEARCH_FAILED", "no tame superficial element found at position " +
                                         std::to_string(i + 1));
  }
  // the sequence must generate a reduction
  reduction_number(IdealHandle(I.ring(), xs), I);
  return xs;
}

inline VVTable vv_table(const IdealHandle& J, const IdealHandle& I, int cap) {
  VVTable t;
  for (int n = 1; n <= cap; ++n) {
    bool ok = local_equal(ideal_intersect(J, ideal_power(I, n)),
                          ideal_product(J, ideal_power(I, n - 1)));
    t.rows.push_back(ok);
    if (!ok && !t.first_failure) t.first_failure = n;
  }
  return t;
}

// Longest prefix 1..t of true rows.
inline int vv_prefix(const VVTable& t) {
  int n = 0;
  while (n < static_cast<int>(t.rows.size()) && t.rows[n]) ++n;
  return n;
}

inline HilbertData hilbert(const IdealHandle& I, int d, int cap = -1) {
  if (cap < 0) cap = d + 6;
  if (cap < d + 4) throw Failure("BAD_ARGUMENT", "hilbert cap must be at least d+4");
  HilbertData h;
  h.d = d;
  for (int n = 0; n <= cap + 3; ++n)
    h.H.push_back(n == 0 ? 0 : local_length(ideal_power(I, n)));

  // solve for e_0..e_d on the last d+1 samples of [0, cap] in the basis
  // (-1)^i C(n+d-i-1, d-i)
  int rows = d + 1;
  std::vector<std::vector<Rational>> M(rows, std::vector<Rational>(rows + 1));
  for (int r = 0; r < rows; ++r) {
    long long n = cap - d + r;
    for (int i = 0; i <= d; ++i) {
      long long b = binom_ll(n + d - i - 1, d - i);
      M[r][i] = Rational(i % 2 == 0 ? b : -b);
    }
    M[r][rows] = Rational(h.H[static_cast<size_t>(n)]);
  }
  for (int c = 0; c < rows; ++c) {
    int piv = -1;
    for (int r = c; r < rows; ++r)
      if (M[r][c] != 0) {
        piv = r;
        break;
      }
    if (piv < 0) throw Failure("NO_STABLE_FIT", "singular Hilbert system");
    std::swap(M[c], M[piv]);
    for (int r = 0; r < rows; ++r) {
      if (r == c || M[r][c] == 0) continue;
      Rational f = M[r][c] / M[c][c];
      for (int j = c; j <= rows; ++j) M[r][j] -= f * M[c][j];
    }
  }
  for (int i = 0; i <= d; ++i) {
    Rational v = M[i][rows] / M[i][i];
    if (boost::multiprecision::denominator(v) != 1)
      throw Failure("NO_STABLE_FIT", "non-integral Hilbert coefficient");
    h.e.push_back(static_cast<long long>(boost::multiprecision::numerator(v)));
  }

  auto P = [&](long long n) {
    long long acc = 0;
    for (int i = 0; i <= d; ++i)
      acc += (i % 2 == 0 ? 1 : -1) * h.e[static_cast<size_t>(i)] * binom_ll(n + d - i - 1, d - i);
    return acc;
  };
  // validate on 3 points beyond the fit window
  for (int n = cap + 1; n <= cap + 3; ++n)
    if (P(n) != h.H[static_cast<size_t>(n)])
      throw Failure("NO_STABLE_FIT", "fitted polynomial fails beyond the sample window");
  int n0 = cap - d;
  while (n0 > 0 && P(n0 - 1) == h.H[static_cast<size_t>(n0 - 1)]) --n0;
  h.n0 = n0;
  return h;
}

// lambda(T_{n,k}) from Wang's exact sequence:
//   C(k+d-1, d-1) * lambda(I^n/JI^{n-1}) - lambda(J^k I^n / J^{k+1} I^{n-1}).
inline long long wang_torsion_length(const IdealHandle& I, const IdealHandle& J, int n, int k,
                                     int d) {
  if (n < 1 || k < 0) throw Failure("BAD_ARGUMENT", "wang needs n >= 1, k >= 0");
  long long a = local_quotient_length(ideal_power(I, n),
                                      ideal_product(J, ideal_power(I, n - 1)));
  long long b = local_quotient_length(
      ideal_product(ideal_power(J, k), ideal_power(I, n)),
      ideal_product(ideal_power(J, k + 1), ideal_power(I, n - 1)));
  long long t = binom_ll(k + d - 1, d - 1) * a - b;
  if (t < 0) throw Failure("NEGATIVE_LENGTH", "torsion length came out negative");
  return t;
}

inline AuditReport lemma32_check(const IdealHandle& I, const IdealHandle& J, int n, int d) {
  AuditReport rep;
  rep.id = "Lemma3.2";
  ReductionCert cert = reduction_number(J, I);
  rep.hyp("J is a verified reduction of I", true);
  rep.hyp("J has d generators", static_cast<int>(J.gens().size()) == d);
  HilbertData h = hilbert(I, d, std::max(d + 4, n + d + 3));
  long long e0 = h.e[0];
  long long lRI = local_length(I);
  rep.con("lambda(I/J) = e0 - lambda(R/I)",
          local_quotient_length(I, J) == e0 - lRI);
  if (n >= 1) {
    long long lhs = local_quotient_length(ideal_power(I, n + 1),
                                          ideal_product(ideal_power(J, n), I));
    long long rhs = e0 * binom_ll(n + d - 1, d) + lRI * binom_ll(n + d - 1, d - 1) -
                    h.H[static_cast<size_t>(n + 1)];
    rep.con("lambda(I^{n+1}/J^n I) matches the binomial formula", lhs == rhs);
  }
  (void)cert;
  rep.settle();
  return rep;
}

struct DepthFlags {
  bool depth_ge1 = false;
  std::optional<bool> cm_at_d2;
};

inline DepthFlags depth_flags(const IdealHandle& I, const IdealHandle& J, int d,
                              int window = 2, long long seed = 1) {
  DepthFlags f;
  RRReport rr = ratliff_rush(I, window, seed);
  f.depth_ge1 = true;
  for (auto& [n, ok] : rr.per_n) f.depth_ge1 = f.depth_ge1 && ok;
  if (d == 2) {
    ReductionCert cert = reduction_number(J, I);
    VVTable vv = vv_table(J, I, cert.r + 1);
    bool cm = true;
    for (bool row : vv.rows) cm = cm && row;
    f.cm_at_d2 = cm;
  }
  return f;
}

struct AuditParams {
  int d = 2;
  int k = 0;  // the k / t parameter of the audited statement, where one exists
  int window = 2;
  int cap = kChainCapDefault;
  long long seed = 1;
};

namespace vdetail {

inline void require_two_gens(const IdealHandle& J) {
  if (J.gens().size() != 2)
    throw Failure("BAD_ARGUMENT", "this statement needs J given by exactly two generators");
}

inline bool rr_all_powers_closed(const IdealHandle& I, const AuditParams& p, int per_n_cap = 4) {
  Mcg64 rng(static_cast<std::uint64_t>(p.seed));
  for (int t = 0; t < 20; ++t) {
    Polynomial x = random_combination(I, rng);
    if (!superficial_check(x, I, p.window)) continue;
    for (int n = 1; n <= per_n_cap; ++n) {
      auto [cl, steps] = rr_chain_superficial(I, n, x, p.window, p.cap);
      (void)steps;
      if (!local_equal(cl, ideal_power(I, n))) return false;
    }
    return true;
  }
  throw Failure("SUPERFICIAL_SEARCH_FAILED", "no superficial element for the depth check");
}

inline bool colon_eq(const IdealHandle& I, const Polynomial& x, int n) {
  // I^n : x = I^{n-1} locally
  return local_equal(ideal_colon(ideal_power(I, n), principal(I.ring(), x)),
                     ideal_power(I, n - 1));
}

}  // namespace vdetail

inline AuditReport proposition_audit(const std::string& id, const IdealHandle& I,
                                     const IdealHandle& J, const AuditParams& p = {}) {
  AuditReport rep;
  rep.id = id;
  const bool needs_d2 = id == "Prop2.1" || id == "Cor2.3" || id == "Prop2.4ii" ||
                        id == "Prop2.6" || id == "Lemma2.11" || id == "Prop2.12" ||
                        id == "Cor2.14ii";
  if (needs_d2 && p.d != 2)
    throw Failure("UNSUPPORTED_DIMENSION", id + " is a d = 2 statement");

  if (id == "Prop2.1") {
    // superficial sequence, VV from k+1 on; then RR-closed for all n iff
    // I^n : x_1 = I^{n-1} for n = 1..k
    vdetail::require_two_gens(J);
    const Polynomial &x1 = J.gens()[0], &x2 = J.gens()[1];
    rep.hyp("x1 superficial for I", superficial_check(x1, I, p.window));
    {
      RingPtr qr = quotient_ctx(I.ring(), {x1});
      rep.hyp("x2 superficial for I mod x1",
              superficial_check(x2, in_ring(I, qr), p.window));
    }
    VVTable vv = vv_table(J, I, p.cap);
    bool tail = true;
    for (int n = p.k + 1; n <= p.cap; ++n) tail = tail && vv.rows[static_cast<size_t>(n - 1)];
    rep.hyp("J cap I^n = J I^{n-1} for n >= k+1 (within cap)", tail);
    bool lhs = vdetail::rr_all_powers_closed(I, p);
    bool rhs = true;
    for (int n = 1; n <= p.k; ++n) rhs = rhs && vdetail::colon_eq(I, x1, n);
    rep.con("RR-closed powers <=> colon equalities up to k", lhs == rhs);
  } else if (id == "Cor2.3") {
    vdetail::require_two_gens(J);
    const Polynomial& x1 = J.gens()[0];
    rep.hyp("x1 superficial for I", superficial_check(x1, I, p.window));
    rep.hyp("r_J(I) = 2", reduction_number(J, I, p.cap).r == 2);
    bool lhs = vdetail::rr_all_powers_closed(I, p);
    bool rhs = vdetail::colon_eq(I, x1, 2);
    rep.con("RR-closed powers <=> I^2 : x1 = I", lhs == rhs);
  } else if (id == "Prop2.4ii") {
    rep.hyp("r_J(I) = 2", reduction_number(J, I, p.cap).r == 2);
    rep.hyp("I is Ratliff-Rush closed",
            local_equal(vdetail::rr_chain_colon_powers(I, p.window, p.cap).first, I));
    HilbertData h = hilbert(I, 2);
    rep.con("e2 = lambda(I^2/JI)",
            h.e[2] == local_quotient_length(ideal_power(I, 2), ideal_product(J, I)));
  } else if (id == "Prop2.6") {
    rep.hyp("I is Ratliff-Rush closed",
            local_equal(vdetail::rr_chain_colon_powers(I, p.window, p.cap).first, I));
    ReductionCert cert = reduction_number(J, I, p.cap);
    rep.hyp("J is a verified reduction", true);
    HilbertData h = hilbert(I, 2);
    auto P = [&](long long n) {
      long long acc = 0;
      for (int i = 0; i <= 2; ++i)
        acc += (i % 2 == 0 ? 1 : -1) * h.e[static_cast<size_t>(i)] *
               binom_ll(n + 2 - i - 1, 2 - i);
      return acc;
    };
    bool lhs = cert.r == 2;
    bool rhs = P(1) == h.H[1] && P(2) == h.H[2];
    rep.con("r_J(I) = 2 <=> P(n) = H(n) for n = 1, 2", lhs == rhs);
  } else if (id == "Rem2.7") {
    // if r of the image pair in R/(x1) is k and I^{k+1} : x1 = I^k, then
    // r_J(I) = k
    vdetail::require_two_gens(J);
    const Polynomial& x1 = J.gens()[0];
    RingPtr qr = quotient_ctx(I.ring(), {x1});
    int kbar = reduction_number(in_ring(J, qr), in_ring(I, qr), p.cap).r;
    rep.hyp("r of the images in R/(x1) equals k", kbar == p.k);
    rep.hyp("I^{k+1} : x1 = I^k", vdetail::colon_eq(I, x1, p.k + 1));
    rep.con("r_J(I) = k", reduction_number(J, I, p.cap).r == p.k);
  } else if (id == "Prop2.9") {
    // VV for n = 1..t and lambda(I^{t+1}/JI^t) <= 1 imply depth >= d-1; at
    // d = 2 that is depth >= 1, i.e. all powers RR-closed
    VVTable vv = vv_table(J, I, std::max(p.k, 1));
    bool pre = true;
    for (int n = 1; n <= p.k; ++n) pre = pre && vv.rows[static_cast<size_t>(n - 1)];
    rep.hyp("J cap I^n = J I^{n-1} for n = 1..t", pre);
    long long l = local_quotient_length(ideal_power(I, p.k + 1),
                                        ideal_product(J, ideal_power(I, p.k)));
    rep.hyp("lambda(I^{t+1}/JI^t) <= 1", l <= 1);
    rep.con("all powers Ratliff-Rush closed", vdetail::rr_all_powers_closed(I, p));
  } else if (id == "Lemma2.11") {
    vdetail::require_two_gens(J);
    const Polynomial &x1 = J.gens()[0], &x2 = J.gens()[1];
    long long l = local_quotient_length(ideal_intersect(J, ideal_power(I, 2)),
                                        ideal_product(J, I));
    rep.hyp("lambda(J cap I^2 / JI) <= 1", l <= 1);
    rep.con("I^2 : x1 = I or I^2 : x2 = I",
            vdetail::colon_eq(I, x1, 2) || vdetail::colon_eq(I, x2, 2));
  } else if (id == "Prop2.12") {
    VVTable vv = vv_table(J, I, p.cap);
    bool tail = true;
    for (int n = 3; n <= p.cap; ++n) tail = tail && vv.rows[static_cast<size_t>(n - 1)];
    rep.hyp("J cap I^n = J I^{n-1} for all n >= 3 (within cap)", tail);
    long long l = local_quotient_length(ideal_intersect(J, ideal_power(I, 2)),
                                        ideal_product(J, I));
    rep.hyp("lambda(J cap I^2 / IJ) <= 1", l <= 1);
    rep.con("all powers Ratliff-Rush closed", vdetail::rr_all_powers_closed(I, p));
  } else if (id == "Cor2.14ii") {
    vdetail::require_two_gens(J);
    const Polynomial &x1 = J.gens()[0], &x2 = J.gens()[1];
    rep.hyp("x1 superficial for I", superficial_check(x1, I, p.window));
    rep.hyp("x2 superficial for I", superficial_check(x2, I, p.window));
    {
      RingPtr qr = quotient_ctx(I.ring(), {x1});
      rep.hyp("x2 superficial for I mod x1",
              superficial_check(x2, in_ring(I, qr), p.window));
    }
    rep.hyp("r_J(I) = 2", reduction_number(J, I, p.cap).r == 2);
    bool lhs = local_equal(vdetail::rr_chain_colon_powers(I, p.window, p.cap).first, I);
    bool rhs = vdetail::rr_all_powers_closed(I, p);
    rep.con("I Ratliff-Rush closed <=> depth G(I) >= 1", lhs == rhs);
  } else {
    throw Failure("UNKNOWN_STATEMENT", "no audit named " + id);
  }
  rep.settle();
  return rep;
}

// Theorem 2.13 colon criterion: a^m I^n : x1 = a^m I^{n-1} for n in
// [k+1, n_cap], m in [0, m_cap], a = (x2..xd); plus the Ratliff-Rush
// consequence for the powers.  The a^m I^n ideals are not M-primary, so the
// comparisons go through the general local-membership test.
inline AuditReport colon_criterion_213(const IdealHandle& I, const std::vector<Polynomial>& xs,
                                       int k, int n_cap, int m_cap,
                                       const AuditParams& p = {}) {
  if (xs.size() < 2) throw Failure("BAD_ARGUMENT", "need a sequence of length d >= 2");
  AuditReport rep;
  rep.id = "Thm2.13";
  const RingPtr& ring = I.ring();
  IdealHandle J(ring, xs);
  IdealHandle a(ring, std::vector<Polynomial>(xs.begin() + 1, xs.end()));
  IdealHandle X1 = vdetail::principal(ring, xs[0]);

  for (size_t i = 0; i < xs.size(); ++i)
    rep.hyp("x" + std::to_string(i + 1) + " superficial for I (tame)",
            superficial_check(xs[i], I, p.window));
  if (k >= 1) {
    IdealHandle Ik = ideal_power(I, k);
    rep.hyp("I^k is Ratliff-Rush closed",
            local_equal(vdetail::rr_chain_colon_powers(Ik, p.window, p.cap).first, Ik));
  }
  {
    VVTable vv = vv_table(J, I, std::max(n_cap + 1, k + 2));
    bool tail = true;
    for (int n = k + 2; n <= static_cast<int>(vv.rows.size()); ++n)
      tail = tail && vv.rows[static_cast<size_t>(n - 1)];
    rep.hyp("J cap I^n = J I^{n-1} for n >= k+2 (within cap)", tail);
  }
  rep.settle();
  if (!rep.hypotheses_hold)
    throw Failure("HYPOTHESIS_FAILED", "a hypothesis of Theorem 2.13 does not hold");

  for (int n = k + 1; n <= n_cap; ++n)
    for (int m = 0; m <= m_cap; ++m) {
      IdealHandle am = ideal_power(a, m);
      IdealHandle lhs = ideal_colon(ideal_product(am, ideal_power(I, n)), X1);
      IdealHandle rhs = ideal_product(am, ideal_power(I, n - 1));
      rep.con("a^" + std::to_string(m) + " I^" + std::to_string(n) + " : x1 matches",
              local_equal_general(lhs, rhs));
    }
  for (int n = std::max(k, 1); n <= n_cap; ++n) {
    IdealHandle In = ideal_power(I, n);
    rep.con("I^" + std::to_string(n) + " is Ratliff-Rush closed",
            local_equal(vdetail::rr_chain_colon_powers(In, p.window, p.cap).first, In));
  }
  rep.settle();
  return rep;
}

struct InvarianceTrial {
  IdealHandle J;
  int vv_prefix = 0;
  std::vector<long long> lens;  // lens[n] = lambda(I^{n+1}/J I^n), n = 0..n_cap
};

struct InvarianceReport {
  std::vector<InvarianceTrial> trials;
  int common_prefix = 0;
  bool invariant_within_prefix = false;
  std::vector<std::string> divergences;  // beyond the prefix, with witnesses
};

inline InvarianceReport invariance_experiment(const IdealHandle& I, int d, int trials,
                                              long long seed, int n_cap) {
  InvarianceReport rep;
  for (int t = 0; t < trials; ++t) {
    InvarianceTrial tr;
    auto [J, cert] = find_minimal_reduction(I, d, seed + 7919LL * t);
    (void)cert;
    tr.J = J;
    tr.vv_prefix = vv_prefix(vv_table(J, I, n_cap + 1));
    for (int n = 0; n <= n_cap; ++n)
      tr.lens.push_back(local_quotient_length(ideal_power(I, n + 1),
                                              ideal_product(J, ideal_power(I, n))));
    rep.trials.push_back(std::move(tr));
  }
  rep.common_prefix = n_cap + 1;
  for (auto& tr : rep.trials) rep.common_prefix = std::min(rep.common_prefix, tr.vv_prefix);
  rep.invariant_within_prefix = true;
  for (int n = 0; n <= n_cap; ++n) {
    long long mn = rep.trials[0].lens[static_cast<size_t>(n)], mx = mn;
    for (auto& tr : rep.trials) {
      mn = std::min(mn, tr.lens[static_cast<size_t>(n)]);
      mx = std::max(mx, tr.lens[static_cast<size_t>(n)]);
    }
    if (mn != mx) {
      if (n <= rep.common_prefix) rep.invariant_within_prefix = false;
      rep.divergences.push_back("n=" + std::to_string(n) + " lengths range " +
                                std::to_string(mn) + ".." + std::to_string(mx));
    }
  }
  return rep;
}

}  // namespace rrlab
