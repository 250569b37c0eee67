#include "phplab/errors.hpp"
#include "phplab/formula.hpp"

#include "test_support.hpp"

#include <doctest.h>

using namespace phplab;

TEST_CASE("parsing examples") {
  CHECK(parse_formula("R(0,0)") == Formula::atom(0, 0));
  CHECK(parse_formula("E u <= 1 . R(u,0)") ==
        Formula::exists_le("u", 1, Formula::atom(Term::variable("u"), Term::constant(0))));
  CHECK(parse_formula("!(R(0,0) & R(1,1))") ==
        Formula::negation(Formula::conj(Formula::atom(0, 0), Formula::atom(1, 1))));
  CHECK(parse_formula("!R(0,0)") == Formula::neg_atom(0, 0));
  CHECK(parse_formula("!(R(0,0))") == Formula::negation(Formula::atom(0, 0)));
  CHECK(parse_formula("R(0,0) | R(1,1) & R(2,2)") ==
        Formula::disj(Formula::atom(0, 0), Formula::conj(Formula::atom(1, 1), Formula::atom(2, 2))));
}

TEST_CASE("parse errors carry positions") {
  try {
    parse_formula("R(0,0) &\n  R(x,1)");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
    CHECK(e.column() == 5);
  }
  CHECK_THROWS_AS(parse_formula("R(0,"), ParseError);
  CHECK_THROWS_AS(parse_formula("E u <= -1 . R(u,0)"), ParseError);
  CHECK_THROWS_AS(parse_formula("R(0,0) R(1,1)"), ParseError);
  CHECK_NOTHROW(parse_formula("R(x,y)", {"x", "y"}));
}

TEST_CASE("classification") {
  CHECK(classify(Formula::atom(0, 0)) == FormulaShape::Atomic);
  CHECK(classify(parse_formula("A u <= 2 . (R(u,0) | !R(u,1))")) == FormulaShape::SharplyBounded);
  CHECK(classify(parse_formula("E u <= 2 . A v <= 1 . R(u,v)")) ==
        FormulaShape::ExistentialPrefix);
  CHECK(classify(parse_formula("A u <= 2 . E v <= 1 . R(u,v)")) == FormulaShape::General);
  CHECK(classify(parse_formula("!(E u <= 2 . R(u,0))")) == FormulaShape::SharplyBounded);
  CHECK(classify(parse_formula("!(A u <= 2 . R(u,0))")) == FormulaShape::ExistentialPrefix);
  CHECK(to_string(FormulaShape::ExistentialPrefix) == "existential-prefix");
}

TEST_CASE("substitution") {
  const Term x = Term::variable("x");
  CHECK(substitute(Formula::atom(x, Term::constant(0)), "x", 2) == Formula::atom(2, 0));
  const Formula f = parse_formula("E u <= 1 . R(u,y)", {"y"});
  CHECK(substitute(f, "y", 0) == parse_formula("E u <= 1 . R(u,0)"));
  CHECK(substitute(Formula::atom(0, 0), "x", 5) == Formula::atom(0, 0));
  const Formula shadow = parse_formula("E u <= 1 . R(u,u)");
  CHECK(substitute(shadow, "u", 7) == shadow);
  CHECK(free_variables(f) == std::set<std::string>{"y"});
  CHECK_FALSE(is_closed(f));
}

TEST_CASE("printing round-trips on random formulas") {
  testing::FormulaGenerator gen(4, 11);
  for (int i = 0; i < 500; ++i) {
    const Formula f = gen.next(5);
    CHECK(parse_formula(to_string(f)) == f);
  }
}

TEST_CASE("classification does not become more general under substitution") {
  const Formula f = parse_formula("E u <= 2 . (R(u,x) & A v <= 1 . !R(v,x))", {"x"});
  for (int i = 0; i < 4; ++i) {
    CHECK(static_cast<int>(classify(substitute(f, "x", i))) <= static_cast<int>(classify(f)));
  }
}

TEST_CASE("pigeonhole instances") {
  const Formula plain = make_php_instance(PhpKind::Plain, 2, 1);
  CHECK(to_string(plain) == "E a <= 1 . !R(a,0) | R(0,0) & R(1,0)");
  const Formula onto = make_php_instance(PhpKind::Onto, 1, 1);
  CHECK(to_string(onto) == "!R(0,0) | !R(0,0)");
  const Formula weak = make_php_instance(PhpKind::Weak, 2, 1);
  CHECK(weak == plain);
  CHECK(is_closed(make_php_instance(PhpKind::Plain, 4, 3)));
  CHECK_THROWS_AS(make_php_instance(PhpKind::Weak, 3, 1), DomainError);
  CHECK_THROWS_AS(make_php_instance(PhpKind::Plain, 40, 39, 1000), BudgetError);

  // No injection from 3 pigeons into 2 holes: the instance holds in every world.
  const Formula php = make_php_instance(PhpKind::Plain, 3, 2);
  for (const auto& world : enumerate_conditions(Scale::make(2, 2))) {
    CHECK(testing::holds(php, world));
  }
}

TEST_CASE("depth and size") {
  CHECK(formula_depth(Formula::atom(0, 0)) == 0);
  CHECK(formula_depth(parse_formula("!(R(0,0) & R(1,1))")) == 2);
  CHECK(node_count(parse_formula("R(0,0) | R(1,1)")) == 3);
}
