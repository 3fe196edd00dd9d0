#include <functional>
#include <random>

#include "doctest.h"
#include "generators.hpp"
#include "symwcet/error.hpp"
#include "symwcet/formula.hpp"

using namespace symwcet;
using namespace symwcet::testing;

namespace {

Formula F(const std::string& text) { return Formula::parse(text); }

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error raised");
  return ErrorKind::Syntax;
}

}  // namespace

TEST_SUITE("formula") {
  TEST_CASE("text forms round-trip") {
    for (const auto* text : {"(l=TOP,[|5])", "x", "(+ x y z)", "(max x y)", "(* 3 x)", "(* k x)",
                             "(pow x (l=TOP,[|1]) b2 n)", "(ann x b2 1)", "(ann x $h it)", "(l=b2,[9,8|4])",
                             "(max (+ (l=TOP,[|2]) x) (pow (ann y TOP 3) x $h 4))"}) {
      CAPTURE(text);
      CHECK(F(text).to_string() == text);
      CHECK(F(F(text).to_string()) == F(text));
    }
  }

  TEST_CASE("sums and maxima are flattened and ordered") {
    CHECK(F("(+ y (+ x (l=TOP,[|2])))").to_string() == "(+ (l=TOP,[|2]) x y)");
    CHECK(F("(max (max y x) x)").to_string() == "(max x x y)");
    CHECK(Formula::plus({}) == Formula::zero());
    CHECK(Formula::plus({F("x")}) == F("x"));
    CHECK(formula_order(F("(l=TOP,[|9])"), F("a")) < 0);
    CHECK(formula_order(F("a"), F("(* 2 a)")) < 0);
    CHECK(formula_order(F("(* 2 a)"), F("(+ a b)")) < 0);
  }

  TEST_CASE("malformed text") {
    for (const auto* text : {"", "(", "(+ x", "(pow x y)", "(* 2)", "(frob x)", "x y"}) {
      CAPTURE(text);
      CHECK(kind_of([&] { F(text); }) == ErrorKind::Syntax);
    }
    CHECK(kind_of([&] { F("(l=TOP,[2|5])"); }) == ErrorKind::InvalidValue);
    CHECK(F("(* k x)").to_string() == "(* k x)");
  }

  TEST_CASE("sizes and identifiers") {
    const auto w = F("(+ (l=TOP,[|2]) (pow (ann x $h k) y b2 n) (* 3 x))");
    CHECK(w.operand_count() == 4);
    const auto ids = identifiers(w);
    CHECK(ids.wcets == std::set<std::string>{"x", "y"});
    CHECK(ids.integers == std::set<std::string>{"k", "n"});
    CHECK(ids.loops == std::set<std::string>{"h"});
    CHECK(ids.all() == std::set<std::string>{"h", "k", "n", "x", "y"});
  }

  TEST_CASE("bound values") {
    CHECK(std::get<Cycles>(parse_bound_value("12")) == 12);
    CHECK(std::get<AbstractWcet>(parse_bound_value("(l=TOP,[|5])")) == AbstractWcet::constant(5));
    CHECK(std::get<std::string>(parse_bound_value("b2")) == "b2");
    CHECK(to_string(parse_bound_value("(loop=b2, [3|1])")) == "(loop=b2, [3|1])");
  }

  TEST_CASE("substitution and evaluation") {
    LoopLattice lat;
    lat.add("b1", std::nullopt);
    lat.add("b2", "b1");
    const auto w = F("(+ x (pow (ann y $h k) (l=TOP,[|1]) b2 n))");
    const Bindings rho{{"x", Cycles{4}}, {"y", Cycles{10}}, {"h", std::string("b2")}, {"k", Cycles{1}},
                       {"n", Cycles{3}}};
    // The body is (b2,[10|0]); three iterations give 10, the exit adds 1, x adds 4.
    CHECK(evaluate(w, rho, lat) == AbstractWcet::constant(15));
    CHECK(substitute(w, rho).to_string() == "(+ (l=TOP,[|4]) (pow (ann (l=TOP,[|10]) b2 1) (l=TOP,[|1]) b2 3))");
    CHECK(substitute(w, {{"n", Cycles{3}}}).to_string() == "(+ x (pow (ann y $h k) (l=TOP,[|1]) b2 3))");

    try {
      evaluate(w, {{"x", Cycles{1}}}, lat);
      FAIL("expected an error");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::UnboundIdentifier);
      const std::string msg = e.what();
      for (const auto* id : {"y", "h", "k", "n"}) CHECK(msg.find(id) != std::string::npos);
    }
    CHECK(kind_of([&] { substitute(w, {{"n", std::string("b1")}}); }) == ErrorKind::TypeMismatch);
    CHECK(kind_of([&] { substitute(w, {{"h", Cycles{2}}}); }) == ErrorKind::TypeMismatch);
    CHECK(kind_of([&] { evaluate(F("(ann x zz 1)"), {{"x", Cycles{1}}}, lat); }) == ErrorKind::UnknownLoop);
  }

  TEST_CASE("random formulas round-trip") {
    std::mt19937_64 rng(51);
    for (int i = 0; i < 500; ++i) {
      const auto w = random_formula(rng);
      CHECK(Formula::parse(w.to_string()) == w);
      CHECK(w.node_count() <= 30);
    }
  }
}
