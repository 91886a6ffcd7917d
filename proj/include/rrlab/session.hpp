#pragma once

#include <cctype>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "rrlab/invariants.hpp"

namespace rrlab {

using Json = nlohmann::ordered_json;

struct SessionOptions {
  long long characteristic = 32003;  // used by repro presets and as ring default
  bool characteristic_forced = false;  // --char overrides ring declarations
  long long seed = 1;
  int window = 2;
  int cap = kTruncationCapDefault;
  int trials = 5;
  std::string format = "json";
};

struct Report {
  std::string command;
  bool ok = true;
  Json payload = Json::object();
  Json certs = Json::object();
  std::string error_code;
  std::string error_message;
};

struct Session {
  SessionOptions opts;
  RingPtr ring;
  std::string ring_name;
  std::map<std::string, IdealHandle> ideals;
  std::vector<std::pair<int, std::string>> commands;  // (line number, text)
};

namespace sdetail {

[[noreturn]] inline void parse_fail(int line, const std::string& msg) {
  throw Failure("PARSE_ERROR", "line " + std::to_string(line) + ": " + msg);
}

inline std::vector<std::string> split_ws(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  std::string w;
  while (in >> w) out.push_back(w);
  return out;
}

inline std::string strip(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

// contents of a [...] block, split on top-level commas
inline std::vector<std::string> bracket_list(const std::string& src, int line) {
  size_t open = src.find('[');
  size_t close = src.rfind(']');
  if (open == std::string::npos || close == std::string::npos || close < open)
    parse_fail(line, "expected a [...] list");
  std::vector<std::string> out;
  std::string body = src.substr(open + 1, close - open - 1);
  std::string cur;
  for (char c : body) {
    if (c == ',') {
      out.push_back(strip(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!strip(cur).empty()) out.push_back(strip(cur));
  for (auto& e : out)
    if (e.empty()) parse_fail(line, "empty entry in list");
  return out;
}

// ideal expressions: names combined with ^ (power), * (product), & (intersection),
// : (colon), + (sum); parentheses allowed; precedence ^ > * > & > : > +
class ExprParser {
 public:
  ExprParser(const std::string& src, const Session& s, int line)
      : src_(src), s_(s), line_(line) {}

  IdealHandle parse() {
    IdealHandle v = sum();
    skip_ws();
    if (pos_ != src_.size()) parse_fail(line_, "trailing input in ideal expression");
    return v;
  }

 private:
  IdealHandle sum() {
    IdealHandle v = colon();
    while (peek() == '+') {
      ++pos_;
      v = ideal_sum(v, colon());
    }
    return v;
  }
  IdealHandle colon() {
    IdealHandle v = inter();
    while (peek() == ':') {
      ++pos_;
      v = ideal_colon(v, inter());
    }
    return v;
  }
  IdealHandle inter() {
    IdealHandle v = prod();
    while (peek() == '&') {
      ++pos_;
      v = ideal_intersect(v, prod());
    }
    return v;
  }
  IdealHandle prod() {
    IdealHandle v = pow();
    while (peek() == '*') {
      ++pos_;
      v = ideal_product(v, pow());
    }
    return v;
  }
  IdealHandle pow() {
    IdealHandle v = atom();
    if (peek() == '^') {
      ++pos_;
      skip_ws();
      size_t start = pos_;
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
      if (start == pos_) parse_fail(line_, "expected an exponent after ^");
      v = ideal_power(v, std::stoi(src_.substr(start, pos_ - start)));
    }
    return v;
  }
  IdealHandle atom() {
    skip_ws();
    if (peek() == '(') {
      ++pos_;
      IdealHandle v = sum();
      skip_ws();
      if (peek() != ')') parse_fail(line_, "missing )");
      ++pos_;
      return v;
    }
    size_t start = pos_;
    while (pos_ < src_.size() &&
           (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
      ++pos_;
    if (start == pos_) parse_fail(line_, "expected an ideal name");
    std::string name = src_.substr(start, pos_ - start);
    auto it = s_.ideals.find(name);
    if (it == s_.ideals.end()) parse_fail(line_, "unbound ideal name '" + name + "'");
    return it->second;
  }
  char peek() {
    skip_ws();
    return pos_ < src_.size() ? src_[pos_] : '\0';
  }
  void skip_ws() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }

  std::string src_;
  const Session& s_;
  int line_;
  size_t pos_ = 0;
};

// words of the form key=value become options; everything else is positional
struct Args {
  std::vector<std::string> pos;
  std::map<std::string, std::string> kv;

  long long num(const std::string& key, long long dflt) const {
    auto it = kv.find(key);
    return it == kv.end() ? dflt : std::stoll(it->second);
  }
};

inline Args split_args(const std::vector<std::string>& words, size_t from) {
  Args a;
  for (size_t i = from; i < words.size(); ++i) {
    size_t eq = words[i].find('=');
    if (eq != std::string::npos && eq > 0 &&
        std::isalpha(static_cast<unsigned char>(words[i][0])))
      a.kv[words[i].substr(0, eq)] = words[i].substr(eq + 1);
    else
      a.pos.push_back(words[i]);
  }
  return a;
}

inline Json ideal_json(const IdealHandle& h) {
  std::vector<std::string> gens;
  for (auto& g : h.gens()) gens.push_back(print_poly(g, *h.ring()));
  std::sort(gens.begin(), gens.end());
  return Json(gens);
}

inline Json audit_json(const AuditReport& a) {
  Json j = Json::object();
  j["id"] = a.id;
  Json hyp = Json::array();
  for (auto& [name, ok] : a.hypotheses) hyp.push_back(Json{{"name", name}, {"ok", ok}});
  j["hypotheses"] = hyp;
  Json con = Json::array();
  for (auto& [name, ok] : a.conclusions) con.push_back(Json{{"name", name}, {"ok", ok}});
  j["conclusions"] = con;
  j["hypotheses_hold"] = a.hypotheses_hold;
  j["conclusion_holds"] = a.conclusion_holds;
  return j;
}

}  // namespace sdetail

inline Session parse_session(const std::string& src, const SessionOptions& opts = {}) {
  Session s;
  s.opts = opts;
  std::istringstream in(src);
  std::string line;
  int ln = 0;
  while (std::getline(in, line)) {
    ++ln;
    std::string t = sdetail::strip(line);
    if (t.empty() || t[0] == '#') continue;
    auto words = sdetail::split_ws(t);
    if (words[0] == "ring") {
      if (s.ring) sdetail::parse_fail(ln, "duplicate ring declaration");
      // ring NAME = char INT vars IDENT+ [mod [POLY, ...]]
      if (words.size() < 6 || words[2] != "=" || words[3] != "char")
        sdetail::parse_fail(ln, "malformed ring declaration");
      s.ring_name = words[1];
      long long p = 0;
      try {
        p = std::stoll(words[4]);
      } catch (...) {
        sdetail::parse_fail(ln, "bad characteristic");
      }
      if (s.opts.characteristic_forced) p = s.opts.characteristic;
      if (words[5] != "vars") sdetail::parse_fail(ln, "expected 'vars'");
      std::vector<std::string> vars;
      size_t i = 6;
      for (; i < words.size() && words[i] != "mod"; ++i) vars.push_back(words[i]);
      try {
        s.ring = make_ring(vars, p);
        if (i < words.size()) {  // mod [...]
          size_t mpos = t.find(" mod ");
          std::vector<Polynomial> amb;
          for (auto& g : sdetail::bracket_list(t.substr(mpos), ln))
            amb.push_back(parse_poly(g, *s.ring));
          s.ring = quotient_ctx(s.ring, amb);
        }
      } catch (const Failure& f) {
        sdetail::parse_fail(ln, f.what());
      }
    } else if (words[0] == "ideal") {
      if (!s.ring) sdetail::parse_fail(ln, "ideal before ring");
      if (words.size() < 3 || words[2] != "=") sdetail::parse_fail(ln, "malformed ideal binding");
      std::vector<Polynomial> gens;
      try {
        for (auto& g : sdetail::bracket_list(t, ln)) gens.push_back(parse_poly(g, *s.ring));
      } catch (const Failure& f) {
        sdetail::parse_fail(ln, f.what());
      }
      s.ideals[words[1]] = IdealHandle(s.ring, std::move(gens));
    } else {
      s.commands.push_back({ln, t});
    }
  }
  return s;
}

namespace sdetail {

inline Report run_command(Session& s, int line, const std::string& text) {
  Report rep;
  rep.command = text;
  auto words = split_ws(text);
  const std::string& cmd = words[0];
  Args args = split_args(words, 1);
  auto expr = [&](size_t i) -> IdealHandle {
    if (i >= args.pos.size()) parse_fail(line, cmd + ": missing ideal argument");
    return ExprParser(args.pos[i], s, line).parse();
  };
  const SessionOptions& o = s.opts;
  int window = static_cast<int>(args.num("window", o.window));
  long long seed = args.num("seed", o.seed);

  if (cmd == "repro") {
    if (args.pos.empty()) parse_fail(line, "repro needs a preset name");
    const std::string& which = args.pos[0];
    if (which == "ex2_15") {
      TruncationCapGuard guard(std::max(o.cap, 140));
      auto r = make_ring({"x", "y"}, o.characteristic);
      std::vector<Polynomial> ig, jg;
      for (auto* src : {"x^6", "x^4*y^2", "x^3*y^3", "x^2*y^4", "x*y^5", "y^6"})
        ig.push_back(parse_poly(src, *r));
      for (auto* src : {"x^6", "y^6+x^4*y^2"}) jg.push_back(parse_poly(src, *r));
      IdealHandle I(r, std::move(ig)), J(r, std::move(jg));
      ReductionCert cert = reduction_number(J, I);
      DepthFlags f = depth_flags(I, J, 2, window, seed);
      rep.payload["r"] = cert.r;
      rep.payload["depth_ge1"] = f.depth_ge1;
      rep.payload["cm"] = f.cm_at_d2.value();
      rep.certs["char"] = r->characteristic;
    } else if (which == "ex3_4") {
      auto base = make_ring({"x", "y", "z", "u", "v"}, o.characteristic);
      std::vector<Polynomial> amb;
      for (auto* src : {"x^2+y^5", "x*y+u^4", "x*z+v^3"})
        amb.push_back(parse_poly(src, *base));
      auto R = quotient_ctx(base, amb);
      IdealHandle m = IdealHandle::maximal(R);
      IdealHandle J1(R, {parse_poly("y", *R), parse_poly("z", *R)});
      IdealHandle J2(R, {parse_poly("z", *R), parse_poly("u", *R)});
      IdealHandle m4 = ideal_power(m, 4), m3 = ideal_power(m, 3);
      long long l1 = local_quotient_length(m4, ideal_product(J1, m3));
      long long l2 = local_quotient_length(m4, ideal_product(J2, m3));
      rep.payload["lambda_J1"] = l1;
      rep.payload["lambda_J2"] = l2;
      rep.payload["reference"] = Json{{"lambda_J1", 17}, {"lambda_J2", 20}};
      rep.payload["matches_reference"] = (l1 == 17 && l2 == 20);
      rep.certs["char"] = R->characteristic;
      rep.certs["N"] = truncation_exponent(ideal_product(J1, m3)).N;
    } else {
      parse_fail(line, "unknown repro preset '" + which + "'");
    }
    return rep;
  }

  if (!s.ring) parse_fail(line, "command before ring declaration");

  if (cmd == "length") {
    IdealHandle q = expr(0);
    LocalCert c = truncation_exponent(q);
    rep.payload["length"] = c.len_N;
    rep.certs["N"] = c.N;
  } else if (cmd == "length_quotient") {
    rep.payload["length"] = local_quotient_length(expr(0), expr(1));
  } else if (cmd == "equal_local") {
    rep.payload["equal"] = local_equal(expr(0), expr(1));
  } else if (cmd == "rr") {
    RRReport r = ratliff_rush(expr(0), window, seed);
    rep.payload["closure"] = ideal_json(r.rr_closure);
    rep.payload["agreement"] = r.agreement;
    Json per = Json::object();
    for (auto& [n, ok] : r.per_n) per[std::to_string(n)] = ok;
    rep.payload["per_n"] = per;
    rep.certs["window"] = r.window;
    rep.certs["method_a_steps"] = r.method_a_steps;
    rep.certs["method_b_steps"] = r.method_b_steps;
    rep.certs["seed"] = seed;
  } else if (cmd == "rednum") {
    ReductionCert c = reduction_number(expr(0), expr(1),
                                       static_cast<int>(args.num("cap", kChainCapDefault)));
    rep.payload["r"] = c.r;
  } else if (cmd == "minred") {
    auto [J, c] = find_minimal_reduction(expr(0), static_cast<int>(args.num("d", 2)), seed);
    rep.payload["J"] = ideal_json(J);
    rep.payload["r"] = c.r;
    rep.certs["seed"] = seed;
  } else if (cmd == "superficial") {
    if (args.pos.size() < 2) parse_fail(line, "superficial needs POLY and IDEAL");
    Polynomial x = parse_poly(args.pos[0], *s.ring);
    rep.payload["superficial"] = superficial_check(x, expr(1), window);
    rep.certs["window"] = window;
  } else if (cmd == "tame") {
    auto xs = tame_superficial_sequence(expr(0), static_cast<int>(args.num("d", 2)), seed,
                                        window);
    Json seq = Json::array();
    for (auto& x : xs) seq.push_back(print_poly(x, *s.ring));
    rep.payload["sequence"] = seq;
    rep.certs["seed"] = seed;
    rep.certs["window"] = window;
  } else if (cmd == "vv") {
    VVTable t = vv_table(expr(0), expr(1), static_cast<int>(args.num("cap", 6)));
    Json rows = Json::array();
    for (bool b : t.rows) rows.push_back(b);
    rep.payload["rows"] = rows;
    rep.payload["first_failure"] = t.first_failure ? Json(*t.first_failure) : Json(nullptr);
    rep.payload["prefix"] = vv_prefix(t);
  } else if (cmd == "hilbert") {
    HilbertData h = hilbert(expr(0), static_cast<int>(args.num("d", 2)),
                            static_cast<int>(args.num("cap", -1)));
    rep.payload["H"] = Json(h.H);
    rep.payload["e"] = Json(h.e);
    rep.payload["n0"] = h.n0;
  } else if (cmd == "wang") {
    rep.payload["length"] = wang_torsion_length(
        expr(0), expr(1), static_cast<int>(args.num("n", 1)),
        static_cast<int>(args.num("k", 1)), static_cast<int>(args.num("d", 2)));
  } else if (cmd == "lemma32") {
    rep.payload = audit_json(lemma32_check(expr(0), expr(1),
                                           static_cast<int>(args.num("n", 1)),
                                           static_cast<int>(args.num("d", 2))));
  } else if (cmd == "audit") {
    if (args.pos.empty()) parse_fail(line, "audit needs a statement id");
    AuditParams p;
    p.d = static_cast<int>(args.num("d", 2));
    p.k = static_cast<int>(args.num("k", 0));
    p.window = window;
    p.seed = seed;
    rep.payload = audit_json(proposition_audit(args.pos[0], expr(1), expr(2), p));
  } else if (cmd == "colon213") {
    int d = static_cast<int>(args.num("d", 2));
    IdealHandle I = expr(0);
    auto xs = tame_superficial_sequence(I, d, seed, window);
    AuditParams p;
    p.window = window;
    p.seed = seed;
    rep.payload = audit_json(colon_criterion_213(I, xs, static_cast<int>(args.num("k", 0)),
                                                 static_cast<int>(args.num("ncap", 3)),
                                                 static_cast<int>(args.num("mcap", 2)), p));
    rep.certs["seed"] = seed;
  } else if (cmd == "invariance") {
    InvarianceReport r = invariance_experiment(
        expr(0), static_cast<int>(args.num("d", 2)),
        static_cast<int>(args.num("trials", o.trials)), seed,
        static_cast<int>(args.num("ncap", 3)));
    Json trials = Json::array();
    for (auto& tr : r.trials)
      trials.push_back(Json{{"J", ideal_json(tr.J)},
                            {"vv_prefix", tr.vv_prefix},
                            {"lens", Json(tr.lens)}});
    rep.payload["trials"] = trials;
    rep.payload["common_prefix"] = r.common_prefix;
    rep.payload["invariant_within_prefix"] = r.invariant_within_prefix;
    rep.payload["divergences"] = Json(r.divergences);
    rep.certs["seed"] = seed;
  } else {
    parse_fail(line, "unknown command '" + cmd + "'");
  }
  return rep;
}

}  // namespace sdetail

inline std::vector<Report> execute(Session& s) {
  std::vector<Report> out;
  TruncationCapGuard guard(s.opts.cap);
  for (auto& [line, text] : s.commands) {
    try {
      out.push_back(sdetail::run_command(s, line, text));
    } catch (const Failure& f) {
      Report rep;
      rep.command = text;
      rep.ok = false;
      rep.error_code = f.code();
      rep.error_message = f.what();
      out.push_back(std::move(rep));
    }
  }
  return out;
}

inline std::string emit(const Report& rep, const std::string& format = "json") {
  if (format == "text") {
    std::string out = rep.command + " -> " + (rep.ok ? "ok" : "error");
    if (rep.ok)
      out += " " + rep.payload.dump();
    else
      out += " [" + rep.error_code + "] " + rep.error_message;
    return out + "\n";
  }
  Json j = Json::object();
  j["command"] = rep.command;
  j["ok"] = rep.ok;
  if (rep.ok) {
    j["payload"] = rep.payload;
    j["certs"] = rep.certs;
  } else {
    j["error"] = Json{{"code", rep.error_code}, {"message", rep.error_message}};
  }
  return j.dump() + "\n";
}

}  // namespace rrlab
