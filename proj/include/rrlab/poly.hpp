#pragma once

#include <algorithm>
#include <cctype>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "rrlab/coeff.hpp"
#include "rrlab/error.hpp"
#include "rrlab/monomial.hpp"

namespace rrlab {

struct Term {
  Monomial m;
  Coeff c;
};

namespace detail {
struct GrevlexDesc {
  bool operator()(const Monomial& a, const Monomial& b) const {
    return MonomialOrder::grevlex().less(b, a);
  }
};
}  // namespace detail

// Sparse multivariate polynomial.  Terms are kept sorted grevlex-descending
// with no zero coefficients; the zero polynomial is the empty term list.
class Polynomial {
 public:
  Polynomial() = default;

  static Polynomial zero() { return {}; }

  static Polynomial from_terms(std::vector<Term> ts) {
    std::map<Monomial, Coeff, detail::GrevlexDesc> acc;
    for (auto& t : ts) {
      if (t.c.is_zero()) continue;
      auto it = acc.find(t.m);
      if (it == acc.end())
        acc.emplace(std::move(t.m), std::move(t.c));
      else {
        it->second = it->second + t.c;
        if (it->second.is_zero()) acc.erase(it);
      }
    }
    Polynomial p;
    p.t_.reserve(acc.size());
    for (auto& [m, c] : acc) p.t_.push_back({m, c});
    return p;
  }

  static Polynomial term(Monomial m, Coeff c) {
    Polynomial p;
    if (!c.is_zero()) p.t_.push_back({std::move(m), std::move(c)});
    return p;
  }

  static Polynomial constant(Coeff c, int nvars) { return term(Monomial::one(nvars), std::move(c)); }

  const std::vector<Term>& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }
  int nterms() const { return static_cast<int>(t_.size()); }

  // grevlex is degree-compatible, so the first term carries the max degree
  int degree() const { return t_.empty() ? -1 : t_.front().m.deg; }

  // Lowest total degree among terms (order of vanishing at the origin).
  int low_degree() const {
    int d = -1;
    for (auto& t : t_)
      if (d < 0 || t.m.deg < d) d = t.m.deg;
    return d;
  }

  Coeff constant_term() const {
    if (!t_.empty() && t_.back().m.is_one()) return t_.back().c;
    return Coeff();
  }

  bool operator==(const Polynomial& o) const {
    if (t_.size() != o.t_.size()) return false;
    for (size_t i = 0; i < t_.size(); ++i)
      if (t_[i].m != o.t_[i].m || t_[i].c != o.t_[i].c) return false;
    return true;
  }
  bool operator!=(const Polynomial& o) const { return !(*this == o); }

 private:
  std::vector<Term> t_;
};

inline Polynomial add(const Polynomial& a, const Polynomial& b) {
  std::vector<Term> ts;
  ts.reserve(a.terms().size() + b.terms().size());
  detail::GrevlexDesc before;
  auto ia = a.terms().begin(), ea = a.terms().end();
  auto ib = b.terms().begin(), eb = b.terms().end();
  while (ia != ea && ib != eb) {
    if (ia->m == ib->m) {
      Coeff c = ia->c + ib->c;
      if (!c.is_zero()) ts.push_back({ia->m, c});
      ++ia;
      ++ib;
    } else if (before(ia->m, ib->m)) {
      ts.push_back(*ia++);
    } else {
      ts.push_back(*ib++);
    }
  }
  ts.insert(ts.end(), ia, ea);
  ts.insert(ts.end(), ib, eb);
  return Polynomial::from_terms(std::move(ts));
}

inline Polynomial neg(const Polynomial& a) {
  std::vector<Term> ts = a.terms();
  for (auto& t : ts) t.c = -t.c;
  return Polynomial::from_terms(std::move(ts));
}

inline Polynomial sub(const Polynomial& a, const Polynomial& b) { return add(a, neg(b)); }

inline Polynomial mul_term(const Polynomial& a, const Monomial& m, const Coeff& c) {
  if (c.is_zero()) return Polynomial::zero();
  std::vector<Term> ts = a.terms();
  for (auto& t : ts) {
    t.m = t.m * m;
    t.c = t.c * c;
  }
  return Polynomial::from_terms(std::move(ts));
}

inline Polynomial mul(const Polynomial& a, const Polynomial& b) {
  std::vector<Term> ts;
  ts.reserve(a.terms().size() * b.terms().size());
  for (auto& ta : a.terms())
    for (auto& tb : b.terms()) ts.push_back({ta.m * tb.m, ta.c * tb.c});
  return Polynomial::from_terms(std::move(ts));
}

inline Polynomial scale(const Polynomial& a, const Coeff& c) {
  return mul_term(a, Monomial::one(a.is_zero() ? 0 : a.terms().front().m.nvars()), c);
}

// The ord-largest term of a nonzero polynomial.
inline Term leading_term(const Polynomial& p, const MonomialOrder& ord) {
  if (p.is_zero()) throw Failure("ZERO_POLYNOMIAL", "leading term of the zero polynomial");
  if (ord == MonomialOrder::grevlex()) return p.terms().front();
  const Term* best = &p.terms().front();
  for (auto& t : p.terms())
    if (ord.less(best->m, t.m)) best = &t;
  return *best;
}

inline Polynomial monic(const Polynomial& p, const MonomialOrder& ord) {
  if (p.is_zero()) return p;
  Coeff lc = leading_term(p, ord).c;
  if (lc.is_one()) return p;
  return scale(p, lc.inv());
}

// Ambient polynomial ring: variable names, characteristic, default order, and
// an optional defining ideal when working in a quotient R = S/I_R.  Ideals in
// R are represented by their full preimage in S, so the ambient generators are
// implicitly part of every ideal in this context.
struct RingCtx {
  std::vector<std::string> vars;
  long long characteristic = 0;  // 0 or an odd prime < 2^31
  MonomialOrder default_order = MonomialOrder::grevlex();
  std::vector<Polynomial> ambient;

  int nvars() const { return static_cast<int>(vars.size()); }

  int var_index(const std::string& name) const {
    for (size_t i = 0; i < vars.size(); ++i)
      if (vars[i] == name) return static_cast<int>(i);
    return -1;
  }

  Coeff c(long long v) const { return Coeff::integer(v, characteristic); }
  Coeff c_one() const { return c(1); }
};

using RingPtr = std::shared_ptr<const RingCtx>;

inline bool same_ring(const RingCtx& a, const RingCtx& b) {
  return a.vars == b.vars && a.characteristic == b.characteristic;
}

inline RingPtr make_ring(std::vector<std::string> vars, long long characteristic,
                         std::vector<Polynomial> ambient = {}) {
  if (vars.empty()) throw Failure("BAD_RING", "ring needs at least one variable");
  for (size_t i = 0; i < vars.size(); ++i)
    for (size_t j = i + 1; j < vars.size(); ++j)
      if (vars[i] == vars[j]) throw Failure("BAD_RING", "duplicate variable " + vars[i]);
  if (characteristic != 0) {
    if (characteristic == 2 || !is_prime_ll(characteristic) || characteristic >= (1LL << 31))
      throw Failure("BAD_RING", "characteristic must be 0 or an odd prime < 2^31");
  }
  for (auto& g : ambient)
    if (!g.constant_term().is_zero())
      throw Failure("BAD_AMBIENT", "ambient generator has nonzero constant term");
  auto r = std::make_shared<RingCtx>();
  r->vars = std::move(vars);
  r->characteristic = characteristic;
  r->ambient = std::move(ambient);
  return r;
}

// ---------------------------------------------------------------------------
// Parsing and deterministic printing.
//
// Grammar: a sum of terms `c*x^e*y*...` with optional `*` and `^1` elision and
// leading sign.  Division is rejected.
// ---------------------------------------------------------------------------

namespace detail {

struct PolyLexer {
  const std::string& s;
  size_t i = 0;

  void skip_ws() {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  }
  bool done() {
    skip_ws();
    return i >= s.size();
  }
  char peek() {
    skip_ws();
    return i < s.size() ? s[i] : '\0';
  }
};

}  // namespace detail

inline Polynomial parse_poly(const std::string& src, const RingCtx& ring) {
  detail::PolyLexer lx{src};
  std::vector<Term> terms;
  bool first = true;
  while (!lx.done()) {
    long long sign = 1;
    char c = lx.peek();
    if (c == '+' || c == '-') {
      sign = c == '-' ? -1 : 1;
      ++lx.i;
    } else if (!first) {
      throw Failure("PARSE_ERROR", "expected '+' or '-' before next term in '" + src + "'");
    }
    first = false;
    // one term: a product of integer and variable-power factors
    Coeff coeff = ring.c(sign);
    Monomial mono = Monomial::one(ring.nvars());
    bool saw_factor = false;
    for (;;) {
      char f = lx.peek();
      if (f == '*') {
        if (!saw_factor) throw Failure("PARSE_ERROR", "'*' without preceding factor");
        ++lx.i;
        f = lx.peek();
      } else if (saw_factor && !(std::isalnum(static_cast<unsigned char>(f)) || f == '_')) {
        break;  // end of term
      }
      if (f == '/')
        throw Failure("PARSE_ERROR", "division is not allowed in polynomial input");
      if (std::isdigit(static_cast<unsigned char>(f))) {
        long long v = 0;
        while (lx.i < lx.s.size() && std::isdigit(static_cast<unsigned char>(lx.s[lx.i]))) {
          v = v * 10 + (lx.s[lx.i] - '0');
          if (v > (1LL << 60)) throw Failure("PARSE_ERROR", "integer literal too large");
          ++lx.i;
        }
        coeff = coeff * ring.c(v);
        saw_factor = true;
      } else if (std::isalpha(static_cast<unsigned char>(f)) || f == '_') {
        std::string name;
        while (lx.i < lx.s.size() &&
               (std::isalnum(static_cast<unsigned char>(lx.s[lx.i])) || lx.s[lx.i] == '_')) {
          name += lx.s[lx.i];
          ++lx.i;
        }
        int vi = ring.var_index(name);
        if (vi < 0) throw Failure("PARSE_ERROR", "unknown variable '" + name + "'");
        int exp = 1;
        if (lx.peek() == '^') {
          ++lx.i;
          if (!std::isdigit(static_cast<unsigned char>(lx.peek())))
            throw Failure("PARSE_ERROR", "malformed exponent after '" + name + "^'");
          long long e = 0;
          while (lx.i < lx.s.size() && std::isdigit(static_cast<unsigned char>(lx.s[lx.i]))) {
            e = e * 10 + (lx.s[lx.i] - '0');
            if (e > 100000) throw Failure("PARSE_ERROR", "exponent too large");
            ++lx.i;
          }
          exp = static_cast<int>(e);
        }
        mono.e[vi] += exp;
        mono.deg += exp;
        saw_factor = true;
      } else if (!saw_factor) {
        throw Failure("PARSE_ERROR", "expected a term in '" + src + "'");
      } else {
        break;
      }
    }
    terms.push_back({std::move(mono), std::move(coeff)});
  }
  return Polynomial::from_terms(std::move(terms));
}

// Deterministic printing: grevlex-descending terms, explicit '^', '*'
// separators, canonical residues.  parse(print(p)) == p whenever all
// coefficients are integral.
inline std::string print_poly(const Polynomial& p, const RingCtx& ring) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (auto& t : p.terms()) {
    std::string cs = t.c.str();
    bool negative = !cs.empty() && cs[0] == '-';
    if (negative) cs = cs.substr(1);
    if (first) {
      if (negative) out += "-";
      first = false;
    } else {
      out += negative ? "-" : "+";
    }
    std::string vars;
    for (int i = 0; i < ring.nvars(); ++i) {
      if (t.m.e[i] == 0) continue;
      if (!vars.empty()) vars += "*";
      vars += ring.vars[i];
      if (t.m.e[i] > 1) vars += "^" + std::to_string(t.m.e[i]);
    }
    if (vars.empty()) {
      out += cs;
    } else if (cs == "1") {
      out += vars;
    } else {
      out += cs + "*" + vars;
    }
  }
  return out;
}

}  // namespace rrlab
