#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rosserlog/countermodel.hpp"
#include "rosserlog/decide.hpp"
#include "rosserlog/syntax.hpp"

namespace rosserlog {

// Cheap candidate normalization used to deduplicate enumeration streams:
// double-negation elimination, disjunction flattening with sorted
// deduplicated disjuncts, and constant folding. When descend_rbox is
// false, [R]-subterms are kept verbatim (they act as opaque bricks drawn
// from the endpoints).
Fml normalize(Fml a, bool descend_rbox = true);

enum class InterpolationMode { Lyndon, Craig };

struct Obligation {
  std::string description;
  bool pass = false;
};

struct InterpolantReport {
  bool resolved = false;  // false: candidate budget exhausted
  Fml interpolant = nullptr;
  std::vector<Obligation> obligations;
  uint64_t candidates_tested = 0;
  uint64_t candidates_generated = 0;
};

// Enumerates candidates in increasing size over the constrained
// signature (shared signed literals, shared signed [R]-subformulas, bot,
// ~, |, []), deduplicated by normalization, and returns the first one
// both implications of which the decider confirms. Requires
// decide(logic, A -> B) = Provable. Craig mode relaxes both scope
// conditions to their unsigned forms.
InterpolantReport lyndon_interpolant(Decider& d, Logic logic, Fml a, Fml b,
                                     uint64_t budget = 10'000,
                                     InterpolationMode mode = InterpolationMode::Lyndon);

struct UniformOptions {
  int depth = -1;     // modal-depth bound for the consequence pool; -1: md(A)
  int size_cap = 9;   // size bound for the consequence pool
  uint64_t pool_cap = 250'000;  // safety cap on enumerated pool entries
};

struct Clause3Evidence {
  int depth = 0;
  int size_cap = 0;
  uint64_t pool_size = 0;   // candidates enumerated within the bounds
  uint64_t premises = 0;    // pool entries provably implied by A
  uint64_t failures = 0;    // premises the candidate fails to imply
  Fml counterexample = nullptr;
  bool complete = true;     // pool enumeration finished within the caps
};

struct UniformReport {
  Logic logic = Logic::GL;
  Fml input = nullptr;
  FmlSet forget;
  Fml candidate = nullptr;
  bool scope_ok = false;    // exact: v(candidate) within v(A) \ P
  bool implied_ok = false;  // exact: decide(logic, A -> candidate)
  Clause3Evidence clause3;  // bounded
  // Pipeline trace.
  FmlSet q_forget;              // extended forget set Q
  Fml gl_engine_input = nullptr;  // conjunction handed to the base engine
  Fml rewritten = nullptr;        // rewritten input of the outer routes
  uint64_t kept_conjuncts = 0;
};

// Bounded base engine: the candidate is the conjunction of the P-free
// consequences of A over v(A) \ P within the depth and size bounds,
// pruned to a generating set (a new consequence already implied by the
// running conjunction is dropped). Exact obligations are decided
// exactly; clause 3 is certified only up to the stated bounds. The
// input must not mention [R]; indexed atoms are ordinary atoms.
UniformReport gl_uniform(Decider& d, Fml a, const FmlSet& p, UniformOptions opts = {});

// Rewrites through the indexed-atom translation: forgets Q = P plus the
// q{D} whose payload meets P, interpolates in the base engine, and maps
// the surviving q{D} back to [R]D. Obligations re-verified in the
// target logic.
UniformReport grminus_uniform(Decider& d, Fml a, const FmlSet& p, UniformOptions opts = {});

// First erases provably-necessitated [R]-subformulas, then runs the
// route above; obligations re-verified against the circ decider.
UniformReport grcirc_uniform(Decider& d, Fml a, const FmlSet& p, UniformOptions opts = {});

// Conjoins the refuted-payload guard, then runs the route above;
// obligations re-verified against the full decider.
UniformReport gr_uniform(Decider& d, Fml a, const FmlSet& p, UniformOptions opts = {});

struct UniformCheck {
  bool scope_ok = false;
  bool implied_ok = false;
  Clause3Evidence clause3;
};

// Clause 1 and 2 exactly; clause 3 by sweeping every P-free formula over
// v(A) \ P within the bounds ([R] included in the signature except for
// the base logic). Returns the first counterexample on failure.
UniformCheck verify_uniform(Decider& d, Fml candidate, Fml a, const FmlSet& p, Logic logic,
                            UniformOptions opts = {});

}  // namespace rosserlog
