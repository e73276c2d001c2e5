#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>

#include "rosserlog/formula.hpp"
#include "rosserlog/frame.hpp"

namespace rosserlog {

enum class Logic { GL, N, NR, GRMinus, GRCirc, GR };

const char* logic_name(Logic l);                // gl, n, nr, grminus, grcirc, gr
std::optional<Logic> logic_from_name(std::string_view name);

enum class Verdict { Provable, Unprovable, Unresolved };
const char* verdict_name(Verdict v);

struct FragmentError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct DecisionStats {
  uint64_t cache_hits = 0;      // outer decision-cache hits during the call
  uint64_t oracle_calls = 0;    // recursive provability queries by translations
  uint64_t tableau_nodes = 0;   // saturated tableau states examined
};

// What the decision reduced to: the translated formula (for the routes
// that rewrite provable Rosser subformulas away) and the box-fragment
// formula handed to the base tableau.
struct TranslationTrace {
  Logic logic = Logic::GL;
  Fml input = nullptr;
  Fml top_translated = nullptr;
  Fml gl_input = nullptr;
};

struct DecisionOutcome {
  Verdict verdict = Verdict::Unresolved;
  // On Unprovable: a verified model refuting trace.gl_input at focus.
  std::optional<GRoModel> countermodel;
  World focus = 0;
  TranslationTrace trace;
  DecisionStats stats;
};

// The six decision procedures behind one dispatcher with a shared
// memoization cache keyed by (logic, formula). All routes are total;
// Unresolved never originates here. Calls are serialized internally, so
// a single Decider may be shared across threads.
class Decider {
public:
  DecisionOutcome decide(Logic logic, Fml a);
  bool provable(Logic logic, Fml a) { return decide(logic, a).verdict == Verdict::Provable; }

  // Base engine: analytic tableau for the box fragment (indexed atoms
  // allowed). Throws FragmentError if the input mentions [R].
  DecisionOutcome decide_gl(Fml a) { return decide(Logic::GL, a); }
  DecisionOutcome decide_gr_minus(Fml a) { return decide(Logic::GRMinus, a); }
  DecisionOutcome decide_gr_circ(Fml a) { return decide(Logic::GRCirc, a); }
  DecisionOutcome decide_gr(Fml a) { return decide(Logic::GR, a); }
  // [R]-fragment only; throws FragmentError if the input mentions [].
  DecisionOutcome decide_n(Fml a) { return decide(Logic::N, a); }
  DecisionOutcome decide_nr(Fml a) { return decide(Logic::NR, a); }

private:
  struct TreeModel {
    FmlVec atoms;
    std::vector<std::shared_ptr<const TreeModel>> kids;
  };
  struct SatResult {
    bool sat = false;
    std::shared_ptr<const TreeModel> model;
  };

  DecisionOutcome decide_nolock(Logic logic, Fml a);
  DecisionOutcome run_gl(Fml a);
  DecisionOutcome run_gr_minus(Fml a);
  DecisionOutcome run_gr_circ(Fml a);
  DecisionOutcome run_gr(Fml a);

  // Satisfiability of a finite set over finite transitive irreflexive
  // models; total, memoized on saturated states.
  SatResult glsat(const FmlVec& assumptions);
  SatResult glsat_saturated(FmlVec state);

  struct VecHash {
    size_t operator()(const FmlVec& v) const {
      size_t h = v.size();
      for (Fml f : v) h = h * 0x9e3779b97f4a7c15ull + f->id();
      return h;
    }
  };

  std::recursive_mutex mutex_;
  std::map<std::pair<int, Fml>, DecisionOutcome> cache_;
  std::unordered_map<FmlVec, SatResult, VecHash> sat_memo_;
  DecisionStats counters_;
};

// Converts the tableau's tree countermodel into a relational model whose
// frame passes validation: worlds in preorder, box the strict descendant
// relation, default Rosser relation the canonical completion.
Relation canonical_rosser_default(const Relation& box, bool serial);

}  // namespace rosserlog
