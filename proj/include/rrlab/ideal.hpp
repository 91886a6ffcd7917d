#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "rrlab/groebner.hpp"
#include "rrlab/poly.hpp"

namespace rrlab {

class IdealHandle;

// Certificate that a truncation exponent makes local data exact: the two
// witnessed colengths are equal, which (with Q+M^{N+1} <= Q+M^N) forces
// Q+M^N = Q+M^{N+1}, hence M^N <= Q locally by Nakayama.
struct LocalCert {
  int N = 0;
  long long len_N = 0;
  long long len_N1 = 0;
};

struct IdealImpl {
  RingPtr ring;
  std::vector<Polynomial> gens;

  mutable std::mutex mu;
  mutable std::map<std::pair<int, int>, std::shared_ptr<const GroebnerBasis>> gb_cache;
  mutable std::map<int, std::shared_ptr<IdealImpl>> power_cache;
  mutable std::optional<LocalCert> local_cert;
};

// An ideal in the ambient ring (or, through the ring's ambient ideal, its full
// preimage when the ring is a quotient).  Handles are immutable values with a
// write-once Groebner cache; equality of handles is always semantic.
class IdealHandle {
 public:
  IdealHandle() = default;
  IdealHandle(RingPtr ring, std::vector<Polynomial> gens)
      : impl_(std::make_shared<IdealImpl>()) {
    impl_->ring = std::move(ring);
    impl_->gens = std::move(gens);
  }

  static IdealHandle unit(const RingPtr& ring) {
    return IdealHandle(ring, {Polynomial::constant(ring->c_one(), ring->nvars())});
  }
  static IdealHandle zero(const RingPtr& ring) { return IdealHandle(ring, {}); }

  // The maximal ideal of the origin: all variables (ambient absorbed).
  static IdealHandle maximal(const RingPtr& ring) {
    std::vector<Polynomial> g;
    for (int i = 0; i < ring->nvars(); ++i)
      g.push_back(Polynomial::term(Monomial::var(i, ring->nvars()), ring->c_one()));
    return IdealHandle(ring, std::move(g));
  }

  bool valid() const { return impl_ != nullptr; }
  const RingPtr& ring() const { return impl_->ring; }
  const std::vector<Polynomial>& gens() const { return impl_->gens; }

  // Generators of the represented ideal as a full preimage in the polynomial
  // ring: explicit generators plus the ring's ambient ideal.
  std::vector<Polynomial> full_gens() const {
    std::vector<Polynomial> g = impl_->gens;
    g.insert(g.end(), impl_->ring->ambient.begin(), impl_->ring->ambient.end());
    return g;
  }

  bool gens_all_zero() const {
    for (auto& g : impl_->gens)
      if (!g.is_zero()) return false;
    return true;
  }

  std::shared_ptr<const GroebnerBasis> gb(
      const MonomialOrder& ord = MonomialOrder::grevlex()) const {
    std::pair<int, int> key{static_cast<int>(ord.kind), ord.block_size};
    {
      std::lock_guard<std::mutex> lk(impl_->mu);
      auto it = impl_->gb_cache.find(key);
      if (it != impl_->gb_cache.end()) return it->second;
    }
    auto G = std::make_shared<GroebnerBasis>(
        reduced_groebner(full_gens(), ord, impl_->ring->nvars()));
    std::lock_guard<std::mutex> lk(impl_->mu);
    auto [it, inserted] = impl_->gb_cache.emplace(key, std::move(G));
    return it->second;  // first writer wins; the result is identical anyway
  }

  IdealImpl* impl() const { return impl_.get(); }
  std::shared_ptr<IdealImpl> impl_ptr() const { return impl_; }
  static IdealHandle wrap(std::shared_ptr<IdealImpl> impl) {
    IdealHandle h;
    h.impl_ = std::move(impl);
    return h;
  }

 private:
  std::shared_ptr<IdealImpl> impl_;
};

namespace idetail {

inline void check_same_ring(const IdealHandle& a, const IdealHandle& b) {
  if (!same_ring(*a.ring(), *b.ring()))
    throw Failure("RING_MISMATCH", "ideal operands live in different rings");
}

// Light generator cleanup: drop zeros, normalize monic, drop exact duplicates,
// and drop monomial generators divisible by other monomial generators.
inline std::vector<Polynomial> tidy_gens(std::vector<Polynomial> g) {
  std::vector<Polynomial> out;
  std::set<std::vector<std::pair<std::vector<int>, std::string>>> seen;
  MonomialOrder grev = MonomialOrder::grevlex();
  std::vector<Monomial> monos;
  for (auto& p : g) {
    if (p.is_zero()) continue;
    Polynomial q = monic(p, grev);
    std::vector<std::pair<std::vector<int>, std::string>> key;
    for (auto& t : q.terms()) key.push_back({t.m.e, t.c.str()});
    if (!seen.insert(key).second) continue;
    out.push_back(std::move(q));
  }
  // monomial-divisibility prune
  std::vector<bool> drop(out.size(), false);
  for (size_t i = 0; i < out.size(); ++i) {
    if (out[i].nterms() != 1) continue;
    for (size_t j = 0; j < out.size(); ++j) {
      if (i == j || drop[j] || out[j].nterms() != 1) continue;
      if (out[j].terms()[0].m.divides(out[i].terms()[0].m) &&
          out[j].terms()[0].m != out[i].terms()[0].m) {
        drop[i] = true;
        break;
      }
    }
  }
  std::vector<Polynomial> res;
  for (size_t i = 0; i < out.size(); ++i)
    if (!drop[i]) res.push_back(std::move(out[i]));
  return res;
}

}  // namespace idetail

inline IdealHandle ideal_sum(const IdealHandle& a, const IdealHandle& b) {
  idetail::check_same_ring(a, b);
  std::vector<Polynomial> g = a.gens();
  g.insert(g.end(), b.gens().begin(), b.gens().end());
  return IdealHandle(a.ring(), idetail::tidy_gens(std::move(g)));
}

// Pairwise products of the explicit generators; the ambient ideal is absorbed
// once by the handle semantics and never multiplied into itself.
inline IdealHandle ideal_product(const IdealHandle& a, const IdealHandle& b) {
  idetail::check_same_ring(a, b);
  std::vector<Polynomial> g;
  for (auto& x : a.gens())
    for (auto& y : b.gens()) g.push_back(mul(x, y));
  return IdealHandle(a.ring(), idetail::tidy_gens(std::move(g)));
}

inline IdealHandle ideal_power(const IdealHandle& a, int n) {
  if (n < 0) throw Failure("BAD_ARGUMENT", "negative ideal power");
  if (n == 0) return IdealHandle::unit(a.ring());
  if (n == 1) return a;
  {
    std::lock_guard<std::mutex> lk(a.impl()->mu);
    auto it = a.impl()->power_cache.find(n);
    if (it != a.impl()->power_cache.end()) return IdealHandle::wrap(it->second);
  }
  IdealHandle r = ideal_product(ideal_power(a, n - 1), a);
  std::lock_guard<std::mutex> lk(a.impl()->mu);
  auto [it, ins] = a.impl()->power_cache.emplace(n, r.impl_ptr());
  return IdealHandle::wrap(it->second);
}

// A eliminated to the subring without the variables in `drop`: block order
// with the dropped variables first, keep the basis elements free of them.
inline IdealHandle eliminate(const IdealHandle& a, const std::vector<int>& drop) {
  const RingCtx& ring = *a.ring();
  int n = ring.nvars();
  std::vector<bool> dropped(n, false);
  for (int d : drop) {
    if (d < 0 || d >= n) throw Failure("BAD_ARGUMENT", "eliminate: variable out of range");
    dropped[d] = true;
  }
  // permutation: dropped variables first
  std::vector<int> to_perm(n);  // old index -> permuted index
  int pos = 0;
  for (int i = 0; i < n; ++i)
    if (dropped[i]) to_perm[i] = pos++;
  int k = pos;
  for (int i = 0; i < n; ++i)
    if (!dropped[i]) to_perm[i] = pos++;

  auto permute = [&](const Polynomial& p, const std::vector<int>& perm) {
    std::vector<Term> ts;
    for (auto& t : p.terms()) {
      std::vector<int> e(n, 0);
      for (int i = 0; i < n; ++i) e[perm[i]] = t.m.e[i];
      ts.push_back({Monomial::of(std::move(e)), t.c});
    }
    return Polynomial::from_terms(std::move(ts));
  };

  std::vector<Polynomial> pgens;
  for (auto& g : a.full_gens()) pgens.push_back(permute(g, to_perm));
  GroebnerBasis G = reduced_groebner(pgens, MonomialOrder::block(k), n);

  std::vector<int> from_perm(n);
  for (int i = 0; i < n; ++i) from_perm[to_perm[i]] = i;
  std::vector<Polynomial> out;
  for (auto& g : G.gens) {
    bool free = true;
    for (auto& t : g.terms())
      for (int i = 0; i < k && free; ++i)
        if (t.m.e[i] > 0) free = false;
    if (free) out.push_back(permute(g, from_perm));
  }
  return IdealHandle(a.ring(), idetail::tidy_gens(std::move(out)));
}

namespace idetail {

// Exact division f / b in the polynomial ring (a domain); caller guarantees
// b | f, so leading-term division succeeds at every step.
inline Polynomial exact_divide(const Polynomial& f, const Polynomial& b) {
  MonomialOrder grev = MonomialOrder::grevlex();
  Term ltb = leading_term(b, grev);
  Coeff lcb_inv = ltb.c.inv();
  Polynomial h = f;
  std::vector<Term> q;
  while (!h.is_zero()) {
    Term lth = leading_term(h, grev);
    if (!ltb.m.divides(lth.m))
      throw Failure("INTERNAL", "exact_divide: divisor does not divide");
    Monomial m = lth.m.divide(ltb.m);
    Coeff c = lth.c * lcb_inv;
    q.push_back({m, c});
    h = sub(h, mul_term(b, m, c));
  }
  return Polynomial::from_terms(std::move(q));
}

// Generators of A_full ∩ (b) via the auxiliary-variable construction
// (eliminate t from t*A + (1-t)*(b) in the ring extended by t), then exact
// division by b, giving generators of (A_full : b) in the polynomial ring.
inline std::vector<Polynomial> colon_single(const IdealHandle& a, const Polynomial& b) {
  const RingCtx& ring = *a.ring();
  int n = ring.nvars();
  std::vector<std::string> evars;
  evars.push_back("@t");
  evars.insert(evars.end(), ring.vars.begin(), ring.vars.end());
  RingPtr ext = make_ring(evars, ring.characteristic);

  auto lift = [&](const Polynomial& p) {
    std::vector<Term> ts;
    for (auto& t : p.terms()) {
      std::vector<int> e(n + 1, 0);
      for (int i = 0; i < n; ++i) e[i + 1] = t.m.e[i];
      ts.push_back({Monomial::of(std::move(e)), t.c});
    }
    return Polynomial::from_terms(std::move(ts));
  };
  Polynomial t = Polynomial::term(Monomial::var(0, n + 1), ext->c_one());
  Polynomial one_minus_t = sub(Polynomial::constant(ext->c_one(), n + 1), t);

  std::vector<Polynomial> egens;
  for (auto& g : a.full_gens()) egens.push_back(mul(t, lift(g)));
  egens.push_back(mul(one_minus_t, lift(b)));

  IdealHandle eideal(ext, std::move(egens));
  IdealHandle inter = eliminate(eideal, {0});

  std::vector<Polynomial> out;
  for (auto& g : inter.gens()) {
    std::vector<Term> ts;
    for (auto& tm : g.terms()) {
      std::vector<int> e(tm.m.e.begin() + 1, tm.m.e.end());
      ts.push_back({Monomial::of(std::move(e)), tm.c});
    }
    out.push_back(exact_divide(Polynomial::from_terms(std::move(ts)), b));
  }
  return out;
}

}  // namespace idetail

inline IdealHandle ideal_intersect(const IdealHandle& a, const IdealHandle& b) {
  idetail::check_same_ring(a, b);
  const RingCtx& ring = *a.ring();
  int n = ring.nvars();
  std::vector<std::string> evars;
  evars.push_back("@t");
  evars.insert(evars.end(), ring.vars.begin(), ring.vars.end());
  RingPtr ext = make_ring(evars, ring.characteristic);

  auto lift = [&](const Polynomial& p) {
    std::vector<Term> ts;
    for (auto& t : p.terms()) {
      std::vector<int> e(n + 1, 0);
      for (int i = 0; i < n; ++i) e[i + 1] = t.m.e[i];
      ts.push_back({Monomial::of(std::move(e)), t.c});
    }
    return Polynomial::from_terms(std::move(ts));
  };
  Polynomial t = Polynomial::term(Monomial::var(0, n + 1), ext->c_one());
  Polynomial one_minus_t = sub(Polynomial::constant(ext->c_one(), n + 1), t);

  std::vector<Polynomial> egens;
  for (auto& g : a.full_gens()) egens.push_back(mul(t, lift(g)));
  for (auto& g : b.full_gens()) egens.push_back(mul(one_minus_t, lift(g)));

  IdealHandle eideal(ext, std::move(egens));
  IdealHandle inter = eliminate(eideal, {0});

  std::vector<Polynomial> out;
  for (auto& g : inter.gens()) {
    std::vector<Term> ts;
    for (auto& tm : g.terms()) {
      std::vector<int> e(tm.m.e.begin() + 1, tm.m.e.end());
      ts.push_back({Monomial::of(std::move(e)), tm.c});
    }
    out.push_back(Polynomial::from_terms(std::move(ts)));
  }
  return IdealHandle(a.ring(), idetail::tidy_gens(std::move(out)));
}

// (A : B) = intersection over the generators b of B of (A : b).  Colon by the
// zero ideal returns the unit ideal (flagged by callers, not an error).
inline IdealHandle ideal_colon(const IdealHandle& a, const IdealHandle& b) {
  idetail::check_same_ring(a, b);
  std::vector<Polynomial> bs;
  for (auto& g : b.gens())
    if (!g.is_zero()) bs.push_back(g);
  if (bs.empty()) return IdealHandle::unit(a.ring());
  IdealHandle acc;
  bool have = false;
  for (auto& g : bs) {
    IdealHandle c(a.ring(), idetail::tidy_gens(idetail::colon_single(a, g)));
    if (!have) {
      acc = c;
      have = true;
    } else {
      acc = ideal_intersect(acc, c);
    }
  }
  return acc;
}

inline bool ideal_member(const Polynomial& f, const IdealHandle& a) {
  return normal_form(f, *a.gb()).is_zero();
}

// Semantic equality: identical reduced Groebner bases.
inline bool ideal_equal(const IdealHandle& a, const IdealHandle& b) {
  idetail::check_same_ring(a, b);
  auto ga = a.gb();
  auto gb_ = b.gb();
  if (ga->gens.size() != gb_->gens.size()) return false;
  for (size_t i = 0; i < ga->gens.size(); ++i)
    if (ga->gens[i] != gb_->gens[i]) return false;
  return true;
}

inline bool ideal_contains(const IdealHandle& a, const IdealHandle& b) {
  idetail::check_same_ring(a, b);
  auto G = a.gb();
  for (auto& g : b.full_gens())
    if (!normal_form(g, *G).is_zero()) return false;
  return true;
}

// New context whose ambient ideal is the old ambient plus `extra`; every
// handle is reinterpretable in the new context via in_ring.
inline RingPtr quotient_ctx(const RingPtr& ring, const std::vector<Polynomial>& extra) {
  for (auto& g : extra)
    if (!g.constant_term().is_zero())
      throw Failure("BAD_AMBIENT", "quotient generator has nonzero constant term");
  std::vector<Polynomial> amb = ring->ambient;
  amb.insert(amb.end(), extra.begin(), extra.end());
  return make_ring(ring->vars, ring->characteristic, idetail::tidy_gens(std::move(amb)));
}

inline IdealHandle in_ring(const IdealHandle& a, const RingPtr& ring) {
  if (!same_ring(*a.ring(), *ring))
    throw Failure("RING_MISMATCH", "in_ring: incompatible variable lists");
  return IdealHandle(ring, a.gens());
}

}  // namespace rrlab
