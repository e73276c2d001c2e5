#pragma once

#include <functional>
#include <map>

#include "rosserlog/formula.hpp"

namespace rosserlog {

// S(A): all subformulas.
FmlSet subformulas(Fml a);

// (S+(A), S-(A)): positive and negative subformulas. Atoms and bot have
// no negative subformulas of their own; negation swaps the two sets,
// disjunction and the modal operators descend componentwise.
struct SignedSubformulas {
  FmlSet pos;
  FmlSet neg;
};
SignedSubformulas signed_subformulas(Fml a);

// v(A): the atoms occurring in A (named and indexed alike).
FmlSet variables(Fml a);

// tau(A): atoms split by sign of occurrence. An atom may appear on both
// sides.
struct SignedLiteralSet {
  FmlSet positives;  // v+(A)
  FmlSet negatives;  // v-(A)

  bool subset_of(const SignedLiteralSet& o) const;
  SignedLiteralSet intersect(const SignedLiteralSet& o) const;
};
SignedLiteralSet tau(Fml a);

// mu(C) = S+(C) together with ~D for every D in S-(C).
FmlSet mu(Fml c);

// The finite closure used for the countermodel-size metadata: S(C), the
// complements of S(C), the four box-bot constants, and six box-shaped
// companions for every [R]D in S(C). |phi_closure(C)| <= 8*|S(C)| + 4.
FmlSet phi_closure(Fml c);

// Complement: strips a top-level negation, otherwise prefixes one.
Fml complement(Fml a);

// S0(A): descent that stops at [R] (collecting the [R]-formula itself),
// in discovery order, deduplicated.
FmlVec s0(Fml a);

// The payloads D of the [R]-outermost subformulas [R]D of A, in S0
// discovery order.
FmlVec outermost_rosser(Fml a);

// Payloads of every [R]-subformula of A, outermost layer first, then
// recursively the ones inside each payload. The translation constraints
// must cover all of them: a payload's own dagger mentions the indexed
// atoms of the next layer down.
FmlVec rosser_payload_closure(Fml a);

// The box-fragment translation: every [R]-outermost occurrence [R]D
// becomes the indexed atom q{D}; everything else is preserved. The
// result mentions no [R].
Fml dagger(Fml a);

// The four-way conjunction tying q{D} to the Rosser behaviour of [R]D
// inside the box fragment:
//   (q{D} -> []D') & (q{D} -> []q{D}) & ([]D' -> ([]bot | q{D}))
//     & (<>q{D} -> <>D')          where D' = dagger(D).
Fml psi(Fml d);

// []A & A.
Fml boxdot(Fml a);

// Replaces every [R]-outermost occurrence [R]D whose payload the oracle
// certifies provable by ~bot; other occurrences are left untouched.
Fml top_translation(Fml a, const std::function<bool(Fml)>& provable_in_gr_circ);

// The conjunction of ~[R]C over all [R]C in S(A) whose negated payload
// the oracle certifies provable; ~bot when there are none. Conjuncts in
// subformula discovery order.
Fml theta(Fml a, const std::function<bool(Fml)>& provable_in_gr);

// Finite map from atoms to formulas; identity elsewhere. Homomorphic.
using Substitution = std::map<Fml, Fml, FmlLess>;
Fml substitute(Fml a, const Substitution& s);

// For each polarity *, every [R]D in S*(C) lies in S*(A) and S*(B).
bool ddag_holds(Fml c, Fml a, Fml b);

// tau(C) is contained componentwise in tau(A) meet tau(B).
bool lyndon_scope_holds(Fml c, Fml a, Fml b);

}  // namespace rosserlog
