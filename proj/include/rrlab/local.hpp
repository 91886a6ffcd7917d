#pragma once

#include <vector>

#include "rrlab/ideal.hpp"

namespace rrlab {

// All monomials of degree exactly d in n variables.
inline std::vector<Monomial> monomials_of_degree(int n, int d) {
  std::vector<Monomial> out;
  Monomial cur = Monomial::one(n);
  auto rec = [&](auto&& self, int var, int left) -> void {
    if (var == n - 1) {
      cur.e[var] = left;
      cur.deg += left;
      out.push_back(cur);
      cur.deg -= left;
      cur.e[var] = 0;
      return;
    }
    for (int e = 0; e <= left; ++e) {
      cur.e[var] = e;
      cur.deg += e;
      self(self, var + 1, left - e);
      cur.deg -= e;
      cur.e[var] = 0;
    }
  };
  if (d == 0)
    out.push_back(cur);
  else
    rec(rec, 0, d);
  return out;
}

// Q + M^N as an explicit handle.  Degree-N monomials already divisible by a
// monomial generator of Q are dropped up front; they are reducible anyway.
inline IdealHandle truncated(const IdealHandle& q, int N) {
  const RingCtx& ring = *q.ring();
  std::vector<Polynomial> gens = q.full_gens();
  std::vector<Monomial> mono_gens;
  for (auto& g : gens)
    if (g.nterms() == 1) mono_gens.push_back(g.terms()[0].m);
  std::vector<Polynomial> out = q.gens();
  for (auto& m : monomials_of_degree(ring.nvars(), N)) {
    bool covered = false;
    for (auto& mg : mono_gens)
      if (mg.divides(m)) {
        covered = true;
        break;
      }
    if (!covered) out.push_back(Polynomial::term(m, ring.c_one()));
  }
  return IdealHandle(q.ring(), std::move(out));
}

inline constexpr int kTruncationCapDefault = 40;

// Session-configurable truncation cap; a cap argument of -1 anywhere below
// means "use this".  Scoped overrides restore the previous value on exit.
inline int& truncation_cap() {
  static thread_local int cap = kTruncationCapDefault;
  return cap;
}

struct TruncationCapGuard {
  int saved;
  explicit TruncationCapGuard(int v) : saved(truncation_cap()) { truncation_cap() = v; }
  ~TruncationCapGuard() { truncation_cap() = saved; }
};

// Smallest N with lambda(S/(Q+M^N)) = lambda(S/(Q+M^{N+1})): certifies that Q
// is locally M-primary and that M^N lies in Q locally.
inline LocalCert truncation_exponent(const IdealHandle& q, int cap = -1) {
  if (cap < 0) cap = truncation_cap();
  {
    std::lock_guard<std::mutex> lk(q.impl()->mu);
    if (q.impl()->local_cert) return *q.impl()->local_cert;
  }
  long long prev = -1;
  for (int N = 1; N <= cap + 1; ++N) {
    auto dim = k_dimension(*truncated(q, N).gb());
    long long len = dim ? *dim : -1;
    if (len < 0) throw Failure("INTERNAL", "truncated quotient must be finite-dimensional");
    if (prev >= 0 && len == prev) {
      LocalCert cert{N - 1, prev, len};
      std::lock_guard<std::mutex> lk(q.impl()->mu);
      if (!q.impl()->local_cert) q.impl()->local_cert = cert;
      return *q.impl()->local_cert;
    }
    prev = len;
  }
  throw Failure("NOT_M_PRIMARY",
                "colength still growing at truncation cap " + std::to_string(cap));
}

// Length of the localized quotient R_loc / Q_loc.
inline long long local_length(const IdealHandle& q, int cap = -1) {
  return truncation_exponent(q, cap).len_N;
}

// b ⊆ a in the localization at the origin (both locally M-primary).
inline bool local_contains(const IdealHandle& a, const IdealHandle& b,
                           int cap = -1) {
  idetail::check_same_ring(a, b);
  int N = std::max(truncation_exponent(a, cap).N, truncation_exponent(b, cap).N);
  auto G = truncated(a, N).gb();
  for (auto& g : b.full_gens())
    if (!normal_form(g, *G).is_zero()) return false;
  return true;
}

inline bool local_equal(const IdealHandle& a, const IdealHandle& b,
                        int cap = -1) {
  idetail::check_same_ring(a, b);
  int N = std::max(truncation_exponent(a, cap).N, truncation_exponent(b, cap).N);
  return ideal_equal(truncated(a, N), truncated(b, N));
}

// lambda(A/B) for B ⊆ A locally, both locally M-primary.
inline long long local_quotient_length(const IdealHandle& a, const IdealHandle& b,
                                       int cap = -1) {
  if (!local_contains(a, b, cap))
    throw Failure("NOT_CONTAINED", "local_quotient_length: second ideal not inside the first");
  return local_length(b, cap) - local_length(a, cap);
}

// An ideal fails to be contained in the maximal ideal of the origin exactly
// when some reduced-basis element has a nonzero constant term.
inline bool meets_units_at_origin(const IdealHandle& a) {
  for (auto& g : a.gb()->gens)
    if (!g.constant_term().is_zero()) return true;
  return false;
}

// Membership in the localized ideal, with no M-primarity assumption:
// f ∈ A_loc iff (A : f) contains a unit at the origin.
inline bool local_member(const Polynomial& f, const IdealHandle& a) {
  if (f.is_zero()) return true;
  IdealHandle c(a.ring(), idetail::tidy_gens(idetail::colon_single(a, f)));
  return meets_units_at_origin(c);
}

inline bool local_contains_general(const IdealHandle& a, const IdealHandle& b) {
  idetail::check_same_ring(a, b);
  for (auto& g : b.gens())
    if (!local_member(g, a)) return false;
  return true;
}

inline bool local_equal_general(const IdealHandle& a, const IdealHandle& b) {
  return local_contains_general(a, b) && local_contains_general(b, a);
}

// x a nonzerodivisor on the localized ring R_loc = (S/I_R)_loc: the support of
// (I_R : x)/I_R must avoid the origin, i.e. (I_R : (I_R : x)) must contain a
// unit at the origin.
inline bool is_regular_local(const Polynomial& x, const RingPtr& ring) {
  if (x.is_zero()) return false;
  if (!x.constant_term().is_zero()) return true;  // unit at the origin
  if (ring->ambient.empty()) return true;         // polynomial ring: a domain
  RingPtr plain = make_ring(ring->vars, ring->characteristic);
  IdealHandle ir(plain, ring->ambient);
  IdealHandle q = ideal_colon(ir, IdealHandle(plain, {x}));
  IdealHandle c = ideal_colon(ir, q);
  return meets_units_at_origin(c);
}

}  // namespace rrlab
