#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "rrlab/session.hpp"

using namespace rrlab;

namespace {

std::vector<Report> run(const std::string& src, SessionOptions opts = {}) {
  Session s = parse_session(src, opts);
  return execute(s);
}

Json parse_emit(const Report& r) { return Json::parse(emit(r)); }

}  // namespace

TEST_CASE("ring and ideal declarations with basic length queries") {
  auto reps = run(
      "ring R = char 32003 vars x y\n"
      "ideal m = [x, y]\n"
      "length m^2\n"
      "length_quotient m m^2\n");
  REQUIRE(reps.size() == 2);
  CHECK(reps[0].ok);
  CHECK(reps[0].payload["length"] == 3);
  CHECK(reps[0].certs["N"] == 2);
  CHECK(reps[1].payload["length"] == 2);
}

TEST_CASE("quotient rings via mod clause") {
  auto reps = run(
      "ring R = char 101 vars x y mod [x^2]\n"
      "ideal m = [x, y]\n"
      "length m^3\n");
  // k[x,y]/(x^2): m^3 = (x y^2, y^3), colength 1+2+2 = 5
  CHECK(reps[0].payload["length"] == 5);
}

TEST_CASE("ideal expression operators match the direct operations") {
  auto reps = run(
      "ring R = char 32003 vars x y\n"
      "ideal m = [x, y]\n"
      "ideal a = [x^2]\n"
      "ideal b = [y^3]\n"
      "length a+b\n"
      "length m^2*m\n"
      "length (a+b)&m^4\n"
      "equal_local m^2:m m\n");
  CHECK(reps[0].payload["length"] == 6);   // (x^2, y^3)
  CHECK(reps[1].payload["length"] == 6);   // m^3
  CHECK(reps[2].ok);
  CHECK(reps[3].payload["equal"] == true);
}

TEST_CASE("rr, rednum and vv commands") {
  auto reps = run(
      "ring R = char 32003 vars x y\n"
      "ideal m = [x, y]\n"
      "ideal I = [x^4, x^3*y, x*y^3, y^4]\n"
      "ideal J = [x^2, y^2+x*y]\n"
      "rr I\n"
      "rednum J m^2\n"
      "vv J m^2 cap=4\n");
  REQUIRE(reps.size() == 3);
  CHECK(reps[0].ok);
  // closure of (x^4, x^3y, xy^3, y^4) picks up x^2y^2
  auto closure = reps[0].payload["closure"].get<std::vector<std::string>>();
  bool has = false;
  for (auto& g : closure)
    if (g == "x^2*y^2") has = true;
  CHECK(has);
  CHECK(reps[0].payload["per_n"]["1"] == false);
  CHECK(reps[0].payload["agreement"] == true);
  CHECK(reps[1].payload["r"] == 1);
  CHECK(reps[2].payload["prefix"] == 4);
  CHECK(reps[2].payload["first_failure"].is_null());
}

TEST_CASE("minred, hilbert and invariance commands") {
  auto reps = run(
      "ring R = char 32003 vars x y\n"
      "ideal m = [x, y]\n"
      "minred m^2 d=2 seed=5\n"
      "hilbert m^2 d=2\n"
      "invariance m^2 d=2 trials=3 seed=9 ncap=3\n");
  CHECK(reps[0].payload["r"] == 1);
  CHECK(reps[0].payload["J"].size() == 2);
  CHECK(reps[1].payload["e"] == Json({4, 1, 0}));
  CHECK(reps[2].payload["invariant_within_prefix"] == true);
  CHECK(reps[2].payload["trials"].size() == 3);
  CHECK(reps[2].payload["divergences"].empty());
}

TEST_CASE("failures are embedded per command and later commands still run") {
  auto reps = run(
      "ring R = char 32003 vars x y\n"
      "ideal m = [x, y]\n"
      "ideal a = [x^2]\n"
      "rednum a m^2\n"
      "length nosuch\n"
      "length m\n");
  REQUIRE(reps.size() == 3);
  CHECK(!reps[0].ok);
  CHECK(reps[0].error_code == "NOT_A_REDUCTION_WITHIN_CAP");
  CHECK(!reps[1].ok);
  CHECK(reps[1].error_code == "PARSE_ERROR");
  CHECK(reps[1].error_message.find("nosuch") != std::string::npos);
  CHECK(reps[2].ok);
  CHECK(reps[2].payload["length"] == 1);
}

TEST_CASE("session level parse errors carry line numbers") {
  CHECK_THROWS_WITH_AS(parse_session("ring R = vars x y\n"),
                       doctest::Contains("line 1"), Failure);
  CHECK_THROWS_AS(run("ideal m = [x]\n"), Failure);           // ideal before ring
  CHECK_THROWS_AS(run("ring R = char 7 vars x\n"
                      "ring S = char 7 vars y\n"),
                  Failure);                                    // one ring per session
}

TEST_CASE("emitted reports are byte identical across runs") {
  const std::string src =
      "ring R = char 32003 vars x y\n"
      "ideal m = [x, y]\n"
      "ideal I = [x^4, x^3*y, x*y^3, y^4]\n"
      "rr I\n"
      "hilbert m^2 d=2\n"
      "minred m^2 d=2\n"
      "length I:m\n";
  auto fmt = [&] {
    std::string out;
    for (auto& r : run(src)) out += emit(r);
    return out;
  };
  std::string a = fmt(), b = fmt();
  CHECK(a == b);
  CHECK(!a.empty());
}

TEST_CASE("json schema has the advertised fields") {
  auto reps = run(
      "ring R = char 32003 vars x y\n"
      "ideal m = [x, y]\n"
      "length m\n"
      "length q\n");
  Json ok = parse_emit(reps[0]);
  CHECK(ok["command"] == "length m");
  CHECK(ok["ok"] == true);
  CHECK(ok.contains("payload"));
  CHECK(ok.contains("certs"));
  CHECK(!ok.contains("error"));
  Json bad = parse_emit(reps[1]);
  CHECK(bad["ok"] == false);
  CHECK(bad["error"]["code"] == "PARSE_ERROR");
  CHECK(!bad.contains("payload"));
}

TEST_CASE("text format emits one readable line per report") {
  auto reps = run(
      "ring R = char 7 vars x y\n"
      "ideal m = [x, y]\n"
      "length m\n");
  std::string t = emit(reps[0], "text");
  CHECK(t.find("length m -> ok") == 0);
  CHECK(t.back() == '\n');
}

TEST_CASE("char override replaces declared characteristics") {
  SessionOptions o;
  o.characteristic = 101;
  o.characteristic_forced = true;
  Session s = parse_session(
      "ring R = char 32003 vars x y\n"
      "ideal m = [x, y]\n"
      "length m\n",
      o);
  CHECK(s.ring->characteristic == 101);
}

TEST_CASE("audit and lemma32 commands produce hypothesis lists") {
  auto reps = run(
      "ring R = char 32003 vars x y\n"
      "ideal m = [x, y]\n"
      "ideal J = [x^2, y^2+x*y]\n"
      "audit Prop2.9 m^2 J k=1\n"
      "lemma32 m^2 J n=2 d=2\n");
  CHECK(reps[0].ok);
  CHECK(reps[0].payload["hypotheses_hold"] == true);
  CHECK(reps[0].payload["conclusion_holds"] == true);
  CHECK(reps[1].ok);
  CHECK(reps[1].payload["conclusion_holds"] == true);
  CHECK(reps[1].payload["hypotheses"].is_array());
}

TEST_CASE("repro presets report the frozen scenarios") {
  SessionOptions o;
  Session s = parse_session("repro ex3_4\n", o);
  auto reps = execute(s);
  REQUIRE(reps.size() == 1);
  CHECK(reps[0].ok);
  CHECK(reps[0].payload["lambda_J1"] == 14);
  CHECK(reps[0].payload["lambda_J2"] == 10);
  CHECK(reps[0].payload["reference"]["lambda_J1"] == 17);
  CHECK(reps[0].payload["reference"]["lambda_J2"] == 20);
  CHECK(reps[0].payload["matches_reference"] == false);
  CHECK(reps[0].certs["char"] == 32003);
}

TEST_CASE("repro ex2_15 confirms the reduction number and depth flags") {
  auto reps = run("repro ex2_15\n");
  REQUIRE(reps.size() == 1);
  CHECK(reps[0].ok);
  CHECK(reps[0].payload["r"] == 2);
  CHECK(reps[0].payload["depth_ge1"] == true);
  CHECK(reps[0].payload["cm"] == false);
}
