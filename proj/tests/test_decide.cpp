#include <atomic>
#include <thread>

#include "doctest.h"
#include "rosserlog/countermodel.hpp"
#include "rosserlog/decide.hpp"
#include "rosserlog/parse.hpp"
#include "rosserlog/syntax.hpp"

using namespace rosserlog;

namespace {

Decider& shared_decider() {
  static Decider d;
  return d;
}

bool prov(Logic l, Fml a) { return shared_decider().provable(l, a); }
bool prov(Logic l, const char* s) { return prov(l, parse(s)); }

}  // namespace

TEST_CASE("base tableau on the box fragment") {
  SUBCASE("theorems") {
    CHECK(prov(Logic::GL, "[]([]p -> p) -> []p"));
    CHECK(prov(Logic::GL, "[]bot | ~[]bot"));
    CHECK(prov(Logic::GL, "[](p -> q) -> ([]p -> []q)"));
    CHECK(prov(Logic::GL, "[]p -> [][]p"));
    CHECK(prov(Logic::GL, "[](p & q) -> []p"));
  }
  SUBCASE("non-theorems with verified refutations") {
    Decider& d = shared_decider();
    DecisionOutcome o = d.decide_gl(parse("p -> []p"));
    CHECK(o.verdict == Verdict::Unprovable);
    REQUIRE(o.countermodel.has_value());
    CHECK(!eval(*o.countermodel, o.focus, parse("p -> []p")));
    CHECK(validate_gro_frame(o.countermodel->frame).ok);

    o = d.decide_gl(parse("<>~bot"));
    CHECK(o.verdict == Verdict::Unprovable);
    REQUIRE(o.countermodel.has_value());
    CHECK(o.countermodel->frame.n == 1);  // a dead end refutes it

    CHECK(!prov(Logic::GL, "[]p -> p"));
    CHECK(!prov(Logic::GL, "p | q"));
    CHECK(!prov(Logic::GL, "[](p | q) -> ([]p | []q)"));
  }
  SUBCASE("indexed atoms are ordinary atoms") {
    CHECK(prov(Logic::GL, "q{p} -> q{p}"));
    CHECK(!prov(Logic::GL, "q{p} -> q{q}"));
    CHECK(!prov(Logic::GL, "q{p} -> p"));
  }
  SUBCASE("fragment violation") {
    CHECK_THROWS_AS(shared_decider().decide_gl(parse("[R]p")), FragmentError);
  }
}

TEST_CASE("separation facts across the tower") {
  CHECK(prov(Logic::GRCirc, "[R]~bot"));
  CHECK(!prov(Logic::GRMinus, "[R]~bot"));
  CHECK(prov(Logic::GR, "~[R]bot"));
  CHECK(!prov(Logic::GRCirc, "~[R]bot"));
  // No Rosser-positive theorems below circ, no Rosser-negative below full.
  for (const char* s : {"[R]bot", "[R]p", "[R]~bot", "[R][]p"}) {
    CHECK(!prov(Logic::GRMinus, parse(s)));
    CHECK(!prov(Logic::GRCirc, neg(parse(s))));
  }
}

TEST_CASE("axiom schemes hold in the three bimodal logics") {
  std::mt19937_64 rng(90210);
  FormulaGenOpts opts;
  for (int i = 0; i < 12; ++i) {
    Fml a = random_formula(rng, 1 + static_cast<int>(rng() % 5), opts);
    Fml b = random_formula(rng, 1 + static_cast<int>(rng() % 5), opts);
    Fml instances[] = {
        imp(box(imp(a, b)), imp(box(a), box(b))),
        imp(box(imp(box(a), a)), box(a)),
        imp(rbox(a), box(a)),
        imp(box(a), box(rbox(a))),
        imp(box(a), lor(box(falsum()), rbox(a))),
        imp(dia(rbox(a)), dia(a)),
    };
    for (Fml inst : instances) {
      CAPTURE(render(inst));
      CHECK(prov(Logic::GRMinus, inst));
      CHECK(prov(Logic::GRCirc, inst));
      CHECK(prov(Logic::GR, inst));
    }
  }
}

TEST_CASE("named theorems and refutations through the reductions") {
  CHECK(prov(Logic::GRMinus, "[R]p -> []p"));
  CHECK(prov(Logic::GRMinus, "<>[R]p -> <>p"));
  CHECK(!prov(Logic::GRMinus, "[R]~bot"));
  CHECK(prov(Logic::GRCirc, "[R]~bot"));
  CHECK(prov(Logic::GRCirc, "[](p -> q) -> ([]p -> []q)"));
  CHECK(!prov(Logic::GRCirc, "~[R]bot"));
  CHECK(prov(Logic::GR, "~[R]bot"));
  CHECK(!prov(Logic::GR, "[]p -> p"));
  CHECK(prov(Logic::GR, "[R]p -> []p"));
  CHECK(prov(Logic::GR, "[R](p | ~p)"));
  CHECK(!prov(Logic::GR, "[R]p"));
}

TEST_CASE("[R]-fragment logics ride their conservative extensions") {
  CHECK(prov(Logic::N, "[R](p | ~p)"));
  CHECK(prov(Logic::N, "[R]~bot"));
  CHECK(!prov(Logic::N, "~[R]bot"));
  CHECK(prov(Logic::NR, "~[R]bot"));
  CHECK(prov(Logic::NR, "[R]~bot"));
  CHECK(!prov(Logic::NR, "[R]p"));
  CHECK_THROWS_AS(shared_decider().decide_n(parse("[]p")), FragmentError);
  CHECK_THROWS_AS(shared_decider().decide_nr(parse("[]p | [R]p")), FragmentError);
}

TEST_CASE("dispatcher caching is deterministic") {
  Decider d;
  Fml a = parse("[R]p -> []p");
  DecisionOutcome first = d.decide(Logic::GR, a);
  DecisionOutcome second = d.decide(Logic::GR, a);
  CHECK(first.verdict == second.verdict);
  CHECK(second.stats.cache_hits > 0);
  CHECK(render(first.trace.gl_input) == render(second.trace.gl_input));
}

TEST_CASE("one decider may be shared across threads") {
  Decider d;
  std::vector<std::thread> workers;
  std::atomic<int> provable_count{0};
  for (int t = 0; t < 4; ++t) {
    workers.emplace_back([&d, &provable_count, t] {
      std::mt19937_64 rng(9000 + t);
      for (int i = 0; i < 25; ++i) {
        Fml a = random_formula(rng, 1 + static_cast<int>(rng() % 7), {});
        if (d.decide(Logic::GRCirc, a).verdict == Verdict::Provable) ++provable_count;
      }
    });
  }
  for (auto& w : workers) w.join();
  // Same work single-threaded gives the same tally.
  Decider fresh;
  int expected = 0;
  for (int t = 0; t < 4; ++t) {
    std::mt19937_64 rng(9000 + t);
    for (int i = 0; i < 25; ++i) {
      Fml a = random_formula(rng, 1 + static_cast<int>(rng() % 7), {});
      if (fresh.decide(Logic::GRCirc, a).verdict == Verdict::Provable) ++expected;
    }
  }
  CHECK(provable_count.load() == expected);
}

TEST_CASE("top translation via the circ oracle") {
  Decider& d = shared_decider();
  auto oracle = [&](Fml f) { return d.decide_gr_circ(f).verdict == Verdict::Provable; };
  CHECK(top_translation(parse("[]([R]~bot) | [R]p"), oracle) == parse("[]~bot | [R]p"));
  CHECK(top_translation(parse("[R]bot"), oracle) == parse("[R]bot"));
  Fml rosser_free = parse("[](p -> q) | ~p");
  CHECK(top_translation(rosser_free, oracle) == rosser_free);

  SUBCASE("idempotence on random formulas") {
    std::mt19937_64 rng(31337);
    for (int i = 0; i < 120; ++i) {
      Fml a = random_formula(rng, 1 + static_cast<int>(rng() % 9), {});
      Fml once = top_translation(a, oracle);
      CHECK(top_translation(once, oracle) == once);
    }
  }
}

TEST_CASE("theta guard via the full decider") {
  Decider& d = shared_decider();
  auto oracle = [&](Fml f) { return d.decide_gr(f).verdict == Verdict::Provable; };
  CHECK(theta(parse("[R]bot | [R](p | ~p)"), oracle) == parse("~[R]bot"));
  CHECK(theta(parse("[]p"), oracle) == parse("~bot"));
  CHECK(theta(parse("[R]bot"), oracle) == parse("~[R]bot"));
}

TEST_CASE("metamorphic equivalences between the routes") {
  Decider& d = shared_decider();
  std::mt19937_64 rng(777);
  FormulaGenOpts opts;
  auto circ_oracle = [&](Fml f) { return d.decide_gr_circ(f).verdict == Verdict::Provable; };
  for (int i = 0; i < 60; ++i) {
    Fml a = random_formula(rng, 1 + static_cast<int>(rng() % 10), opts);
    CAPTURE(render(a));
    bool gr = prov(Logic::GR, a);
    CHECK(gr == prov(Logic::GRCirc, box(a)));
    CHECK(gr == prov(Logic::GRMinus, box(a)));
    CHECK(prov(Logic::GRCirc, a) == prov(Logic::GRMinus, top_translation(a, circ_oracle)));
  }
  FormulaGenOpts box_only = opts;
  box_only.allow_rbox = false;
  FormulaGenOpts rbox_only = opts;
  rbox_only.allow_box = false;
  for (int i = 0; i < 40; ++i) {
    Fml a = random_formula(rng, 1 + static_cast<int>(rng() % 10), box_only);
    CHECK(prov(Logic::GR, a) == prov(Logic::GL, a));
    Fml b = random_formula(rng, 1 + static_cast<int>(rng() % 10), rbox_only);
    CHECK(prov(Logic::N, b) == prov(Logic::GRCirc, b));
    CHECK(prov(Logic::NR, b) == prov(Logic::GR, b));
  }
}

TEST_CASE("monotonicity and rule closure") {
  std::mt19937_64 rng(778);
  for (int i = 0; i < 60; ++i) {
    Fml a = random_formula(rng, 1 + static_cast<int>(rng() % 9), {});
    CAPTURE(render(a));
    bool gm = prov(Logic::GRMinus, a), gc = prov(Logic::GRCirc, a), gr = prov(Logic::GR, a);
    if (gm) CHECK(gc);
    if (gc) CHECK(gr);
    if (gc) CHECK(prov(Logic::GRCirc, rbox(a)));
    if (gr) CHECK(prov(Logic::GR, box(a)));
    if (prov(Logic::GR, neg(a))) CHECK(prov(Logic::GR, neg(rbox(a))));
  }
}

TEST_CASE("tableau verdicts agree with exhaustive semantic search") {
  Decider& d = shared_decider();
  std::mt19937_64 rng(424243);
  FormulaGenOpts box_only;
  box_only.allow_rbox = false;
  SearchOptions sweep;
  sweep.max_worlds = 4;
  int provable_seen = 0;
  for (int i = 0; i < 300; ++i) {
    Fml a = random_formula(rng, 1 + static_cast<int>(rng() % 8), box_only);
    DecisionOutcome o = d.decide_gl(a);
    if (o.verdict == Verdict::Provable) {
      ++provable_seen;
      SearchOutcome s = search_countermodel(a, false, sweep);
      CAPTURE(render(a));
      CHECK(s.unresolved());
      CHECK(s.stats.exhausted);
    } else {
      REQUIRE(o.countermodel.has_value());
      CHECK(!eval(*o.countermodel, o.focus, a));
    }
  }
  CHECK(provable_seen > 10);
}

TEST_CASE("full-logic verdicts agree with exhaustive serial search") {
  Decider& d = shared_decider();
  std::mt19937_64 rng(424244);
  SearchOptions sweep;
  sweep.max_worlds = 3;
  FmlVec pool;
  for (int i = 0; i < 400; ++i)
    pool.push_back(random_formula(rng, 1 + static_cast<int>(rng() % 7), {}));
  for (const char* s : {"~[R]bot", "[R]~bot", "[R]p -> []p", "~[R][R]bot",
                        "[]p -> ([]bot | [R]p)", "<>[R]q -> <>q"})
    pool.push_back(parse(s));
  int provable_seen = 0;
  for (Fml a : pool) {
    if (d.decide_gr(a).verdict != Verdict::Provable) continue;
    ++provable_seen;
    SearchOutcome s = search_countermodel(a, true, sweep);
    CAPTURE(render(a));
    CHECK(s.unresolved());
    CHECK(s.stats.exhausted);
  }
  CHECK(provable_seen > 10);
}

TEST_CASE("provable formulas hold on generated models") {
  Decider& d = shared_decider();
  std::mt19937_64 rng(779);
  FmlVec provable_samples;
  for (int i = 0; i < 120 && provable_samples.size() < 15; ++i) {
    Fml a = random_formula(rng, 1 + static_cast<int>(rng() % 8), {});
    if (d.decide_gr_circ(a).verdict == Verdict::Provable) provable_samples.push_back(a);
  }
  provable_samples.push_back(parse("[R]p -> []p"));
  provable_samples.push_back(parse("[R]~bot"));
  FmlVec keys;
  for (Fml a : provable_samples)
    for (Fml s : subformulas(a))
      if (s->kind() == Kind::RBox) keys.push_back(s->child());
  for (int i = 0; i < 40; ++i) {
    GRoModel m = random_model(rng(), 1 + static_cast<int>(rng() % 5), keys, {"p", "q", "r"});
    for (Fml a : provable_samples) {
      for (int w = 0; w < m.frame.n; ++w) {
        CAPTURE(render(a));
        CHECK(eval(m, w, a));
      }
    }
  }
}
