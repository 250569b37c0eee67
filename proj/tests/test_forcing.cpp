#include "phplab/errors.hpp"
#include "phplab/forcing.hpp"

#include "test_support.hpp"

#include <doctest.h>

using namespace phplab;

namespace {

bool forces_text(const Condition& sigma, const std::string& text, int n, int k,
                 ExtensionRange range = ExtensionRange::Full) {
  ForcingContext ctx(Scale::make(n, k), {range});
  return ctx.forces(sigma, parse_formula(text));
}

}  // namespace

TEST_CASE("atomic clauses") {
  CHECK(forces_text(Condition{{0, 0}}, "R(0,0)", 3, 2));
  CHECK(forces_text(Condition{{0, 1}}, "!R(0,0)", 3, 2));
  CHECK(forces_text(Condition{{1, 0}}, "!R(0,0)", 3, 2));
  CHECK_FALSE(forces_text(Condition(), "R(0,0)", 3, 2));
  CHECK_FALSE(forces_text(Condition(), "!R(0,0)", 3, 2));
  // Out-of-range atoms are false, so their negations are forced everywhere.
  CHECK_FALSE(forces_text(Condition(), "R(9,0)", 3, 2));
  CHECK(forces_text(Condition(), "!R(0,9)", 3, 2));
}

TEST_CASE("excluded middle is forced below the full horizon") {
  CHECK(forces_text(Condition(), "R(0,0) | !R(0,0)", 3, 2));
  // With extensions capped at K, {(1,1),(2,2)} has no extension deciding R(0,0).
  CHECK_FALSE(forces_text(Condition(), "R(0,0) | !R(0,0)", 3, 2, ExtensionRange::HardHorizon));
}

TEST_CASE("preconditions") {
  ForcingContext ctx(Scale::make(3, 2));
  CHECK_THROWS_AS(ctx.forces(Condition{{0, 0}, {1, 1}, {2, 2}}, Formula::atom(0, 0)),
                  PreconditionError);
  CHECK_THROWS_AS(ctx.forces(Condition(), parse_formula("R(x,0)", {"x"})), ShapeError);
}

TEST_CASE("normalization") {
  CHECK(normalize(parse_formula("!(R(0,0))")) == Formula::neg_atom(0, 0));
  const Formula pushed = normalize(parse_formula("!(E u <= 1 . R(u,0) | A v <= 1 . R(v,1))"));
  CHECK(pushed == parse_formula("(A u <= 1 . !R(u,0)) & !(A v <= 1 . R(v,1))"));
  const Formula kept = normalize(parse_formula("!(R(0,0) & R(1,1))"));
  CHECK(kept.kind() == FormulaKind::Not);
  const Formula general = normalize(parse_formula("!(A u <= 1 . E v <= 1 . R(u,v))"));
  CHECK(general.kind() == FormulaKind::ExistsLe);
  CHECK(general.body().kind() == FormulaKind::ForallLe);
  CHECK(general.body().body().kind() == FormulaKind::NegAtom);
}

TEST_CASE("agreement with truth in all maximal extensions") {
  for (int n = 2; n <= 3; ++n) {
    const Scale s = Scale::make(n, 2);
    ForcingContext ctx(s);
    testing::FormulaGenerator gen(n, 2024 + static_cast<std::uint64_t>(n));
    const auto all = enumerate_conditions(s);
    for (int i = 0; i < 120; ++i) {
      const Formula f = gen.next(3);
      for (const auto& sigma : all) {
        CHECK_MESSAGE(ctx.forces(sigma, f) == testing::forced_by_maximal_extensions(sigma, f, n),
                      to_string(f) << " at " << sigma.to_string());
      }
    }
  }
}

TEST_CASE("monotonicity, consistency and conjunction") {
  const Scale s = Scale::make(3, 2);
  ForcingContext ctx(s);
  testing::FormulaGenerator gen(3, 99);
  const auto all = enumerate_conditions(s);
  for (int i = 0; i < 60; ++i) {
    const Formula f = gen.next(3);
    const Formula g = gen.next(2);
    for (const auto& sigma : all) {
      const bool fs = ctx.forces(sigma, f);
      if (fs) {
        for (const auto& tau : all) {
          if (extends(tau, sigma)) CHECK(ctx.forces(tau, f));
        }
      }
      const FormulaShape shape = classify(f);
      if (shape == FormulaShape::Atomic || shape == FormulaShape::SharplyBounded) {
        CHECK_FALSE((fs && ctx.forces(sigma, Formula::negation(f))));
      }
      CHECK(ctx.forces(sigma, Formula::conj(f, g)) == (fs && ctx.forces(sigma, g)));
    }
  }
}

TEST_CASE("negated atoms are forced exactly by conflicts") {
  const Scale s = Scale::make(3, 2);
  ForcingContext ctx(s);
  for (const auto& sigma : enumerate_conditions(s)) {
    for (int a = 0; a <= 3; ++a) {
      for (int b = 0; b < 3; ++b) {
        const bool conflict = (sigma.hole_of(a) && *sigma.hole_of(a) != b) ||
                              (sigma.pigeon_of(b) && *sigma.pigeon_of(b) != a);
        CHECK(ctx.forces(sigma, Formula::neg_atom(a, b)) == conflict);
      }
    }
  }
}

TEST_CASE("trace records clause ids") {
  ForcingContext ctx(Scale::make(3, 2), {ExtensionRange::Full, true, 5});
  ctx.forces(Condition(), parse_formula("R(0,0) | !R(0,0)"));
  CHECK(ctx.trace().size() == 5);
  CHECK(ctx.trace_truncated());
  for (const auto& e : ctx.trace()) CHECK((e.clause >= 1 && e.clause <= 7));
}

TEST_CASE("density") {
  const Scale s = Scale::make(3, 2);
  auto on_pigeon0 = [](const Condition& c) { return c.has_pigeon(0); };
  auto has00 = [](const Condition& c) { return c.contains({0, 0}); };
  CHECK(is_dense(on_pigeon0, s));
  CHECK_FALSE(is_dense(has00, s));
  CHECK(is_dense([](const Condition&) { return true; }, s));

  const Scale s4 = Scale::make(4, 2);
  const Condition sigma{{1, 0}};
  CHECK(is_dense_relative(on_pigeon0, sigma, s4));
  CHECK(is_dense_relative([&](const Condition& c) { return extends(c, sigma); }, sigma, s4));
  CHECK_FALSE(is_dense_relative([&](const Condition& c) { return !compatible(c, sigma); }, sigma,
                                s4));
  // Capped at K, {(1,1),(2,2)} cannot reach pigeon 0.
  CHECK_FALSE(is_dense(on_pigeon0, s, ExtensionRange::HardHorizon));
}
