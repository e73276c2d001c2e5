#include "doctest.h"
#include "rosserlog/countermodel.hpp"
#include "rosserlog/parse.hpp"
#include "rosserlog/syntax.hpp"

using namespace rosserlog;

namespace {

Decider& shared_decider() {
  static Decider d;
  return d;
}

}  // namespace

TEST_CASE("tableau countermodels re-verify") {
  Decider& d = shared_decider();
  Certificate c = gl_countermodel(d, parse("p -> []p"));
  CHECK(c.verified);
  CHECK(c.model.frame.n == 2);
  CHECK(!eval(c.model, c.focus, parse("p -> []p")));

  c = gl_countermodel(d, parse("<>~bot"));
  CHECK(c.model.frame.n == 1);

  CHECK_THROWS_AS(gl_countermodel(d, parse("[]([]p -> p) -> []p")), PreconditionError);
}

TEST_CASE("circ countermodels by bounded search") {
  Decider& d = shared_decider();
  SUBCASE("~[R]bot is refuted by the single point with empty relations") {
    SearchOutcome o = gro_countermodel(d, parse("~[R]bot"));
    REQUIRE(o.certificate.has_value());
    const Certificate& c = *o.certificate;
    CHECK(c.verified);
    CHECK(c.model.frame.n == 1);
    CHECK(c.model.frame.rosser_default.pairs().empty());
    CHECK(c.model.frame.effective(parse("bot")).pairs().empty());
    CHECK(c.focus == 0);
  }
  SUBCASE("[R]p is refuted through a falsifying Rosser successor") {
    SearchOutcome o = gro_countermodel(d, parse("[R]p"));
    REQUIRE(o.certificate.has_value());
    const Certificate& c = *o.certificate;
    const Relation& r = c.model.frame.effective(parse("p"));
    bool witness = false;
    for (auto [x, y] : r.pairs())
      if (x == c.focus && !c.model.valuation[y].count(parse("p"))) witness = true;
    CHECK(witness);
  }
  SUBCASE("provable input is an error") {
    CHECK_THROWS_AS(gro_countermodel(d, parse("[R]~bot")), PreconditionError);
  }
  SUBCASE("stats carry the closure-derived bound") {
    SearchOutcome o = gro_countermodel(d, parse("[R]p"));
    CHECK(o.stats.phi_size > 0);
    CHECK(o.stats.theoretical_bound > 6);
  }
}

TEST_CASE("full-logic countermodels are serial and non-trivial") {
  Decider& d = shared_decider();
  SUBCASE("[]p -> p gets a rooted certificate") {
    SearchOutcome o = gr_countermodel(d, parse("[]p -> p"));
    REQUIRE(o.certificate.has_value());
    const Certificate& c = *o.certificate;
    CHECK(is_nontrivial(c.model.frame));
    CHECK(is_serial(c.model.frame));
    CHECK(!eval(c.model, c.focus, parse("[]p -> p")));
  }
  SUBCASE("[R]bot forces a refuting serial successor") {
    SearchOutcome o = gr_countermodel(d, parse("[R]bot"));
    REQUIRE(o.certificate.has_value());
    const Certificate& c = *o.certificate;
    CHECK(is_serial(c.model.frame));
    CHECK(is_nontrivial(c.model.frame));
    const Relation& r = c.model.frame.effective(parse("bot"));
    CHECK(r.succ[c.focus] != 0);  // seriality forces a refuting successor
    CHECK(!eval(c.model, c.focus, parse("[R]bot")));
  }
  SUBCASE("provable input is an error") {
    CHECK_THROWS_AS(gr_countermodel(d, parse("~[R]bot")), PreconditionError);
  }
}

TEST_CASE("searched certificates re-verify under a fresh evaluator") {
  Decider& d = shared_decider();
  std::mt19937_64 rng(2222);
  int found = 0;
  for (int i = 0; i < 40; ++i) {
    Fml a = random_formula(rng, 1 + static_cast<int>(rng() % 8), {});
    if (d.decide_gr_circ(a).verdict != Verdict::Unprovable) continue;
    SearchOutcome o = gro_countermodel(d, a);
    REQUIRE_MESSAGE(o.certificate.has_value(), render(a));
    const Certificate& c = *o.certificate;
    CHECK(validate_gro_frame(c.model.frame).ok);
    Evaluator fresh(c.model);
    CHECK(!fresh.eval(c.focus, a));
    ++found;
  }
  CHECK(found > 5);
}

TEST_CASE("deterministic search order") {
  Decider& d = shared_decider();
  SearchOutcome a = gro_countermodel(d, parse("[]p -> p"));
  SearchOutcome b = gro_countermodel(d, parse("[]p -> p"));
  REQUIRE(a.certificate.has_value());
  REQUIRE(b.certificate.has_value());
  CHECK(a.certificate->model.frame.box == b.certificate->model.frame.box);
  CHECK(a.certificate->focus == b.certificate->focus);
  CHECK(a.stats.candidates == b.stats.candidates);
}

TEST_CASE("budget exhaustion reports unresolved, never a verdict") {
  SearchOptions tight;
  tight.max_worlds = 8;
  tight.max_candidates = 3;
  SearchOutcome o = search_countermodel(parse("[][][][]bot"), false, tight);
  CHECK(o.unresolved());
  CHECK(!o.stats.exhausted);
  CHECK(o.stats.candidates > 0);
}

TEST_CASE("deep chains are found within the default budget") {
  // Refuting k nested boxes of bot needs a chain of k+1 worlds.
  SearchOutcome o = search_countermodel(parse("[][][][]bot"), false, {});
  REQUIRE(o.certificate.has_value());
  CHECK(o.certificate->model.frame.n == 5);
}

TEST_CASE("exhaustive sweep finds nothing for provable formulas") {
  SearchOptions small;
  small.max_worlds = 3;
  for (const char* s : {"[R]~bot", "[R]p -> []p", "[]([]p -> p) -> []p"}) {
    SearchOutcome o = search_countermodel(parse(s), false, small);
    CAPTURE(s);
    CHECK(o.unresolved());
    CHECK(o.stats.exhausted);
  }
  // Serial sweep: provable in the full logic only.
  SearchOutcome o = search_countermodel(parse("~[R]bot"), true, small);
  CHECK(o.unresolved());
  CHECK(o.stats.exhausted);
}
