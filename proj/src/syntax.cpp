#include "rosserlog/syntax.hpp"

#include <algorithm>

namespace rosserlog {

namespace {

void collect_subformulas(Fml a, FmlSet& out) {
  if (!out.insert(a).second) return;
  switch (a->kind()) {
    case Kind::Falsum:
    case Kind::Atom:
      return;
    case Kind::Neg:
    case Kind::Box:
    case Kind::RBox:
      collect_subformulas(a->child(), out);
      return;
    case Kind::Or:
      collect_subformulas(a->left(), out);
      collect_subformulas(a->right(), out);
      return;
  }
}

// sign: true = positive occurrence. Every subformula lands on the side
// of its occurrence; negation flips the side for its body.
void collect_signed(Fml a, bool sign, SignedSubformulas& out) {
  FmlSet& side = sign ? out.pos : out.neg;
  if (!side.insert(a).second) return;
  switch (a->kind()) {
    case Kind::Falsum:
    case Kind::Atom:
      return;
    case Kind::Neg:
      collect_signed(a->child(), !sign, out);
      return;
    case Kind::Box:
    case Kind::RBox:
      collect_signed(a->child(), sign, out);
      return;
    case Kind::Or:
      collect_signed(a->left(), sign, out);
      collect_signed(a->right(), sign, out);
      return;
  }
}

// Post-order subformula walk with stable discovery order.
void walk_subformulas(Fml a, FmlSet& seen, FmlVec& order) {
  if (!seen.insert(a).second) return;
  switch (a->kind()) {
    case Kind::Falsum:
    case Kind::Atom:
      break;
    case Kind::Neg:
    case Kind::Box:
    case Kind::RBox:
      walk_subformulas(a->child(), seen, order);
      break;
    case Kind::Or:
      walk_subformulas(a->left(), seen, order);
      walk_subformulas(a->right(), seen, order);
      break;
  }
  order.push_back(a);
}

}  // namespace

FmlSet subformulas(Fml a) {
  FmlSet out;
  collect_subformulas(a, out);
  return out;
}

SignedSubformulas signed_subformulas(Fml a) {
  SignedSubformulas out;
  collect_signed(a, true, out);
  return out;
}

FmlSet variables(Fml a) {
  FmlSet out;
  for (Fml s : subformulas(a))
    if (s->is_atom()) out.insert(s);
  return out;
}

bool SignedLiteralSet::subset_of(const SignedLiteralSet& o) const {
  return std::includes(o.positives.begin(), o.positives.end(), positives.begin(),
                       positives.end(), FmlLess{}) &&
         std::includes(o.negatives.begin(), o.negatives.end(), negatives.begin(),
                       negatives.end(), FmlLess{});
}

SignedLiteralSet SignedLiteralSet::intersect(const SignedLiteralSet& o) const {
  SignedLiteralSet out;
  std::set_intersection(positives.begin(), positives.end(), o.positives.begin(),
                        o.positives.end(), std::inserter(out.positives, out.positives.end()),
                        FmlLess{});
  std::set_intersection(negatives.begin(), negatives.end(), o.negatives.begin(),
                        o.negatives.end(), std::inserter(out.negatives, out.negatives.end()),
                        FmlLess{});
  return out;
}

SignedLiteralSet tau(Fml a) {
  SignedSubformulas s = signed_subformulas(a);
  SignedLiteralSet out;
  for (Fml f : s.pos)
    if (f->is_atom()) out.positives.insert(f);
  for (Fml f : s.neg)
    if (f->is_atom()) out.negatives.insert(f);
  return out;
}

FmlSet mu(Fml c) {
  SignedSubformulas s = signed_subformulas(c);
  FmlSet out = s.pos;
  for (Fml f : s.neg) out.insert(neg(f));
  return out;
}

Fml complement(Fml a) { return a->kind() == Kind::Neg ? a->child() : neg(a); }

FmlSet phi_closure(Fml c) {
  FmlSet out = subformulas(c);
  FmlSet base = out;
  for (Fml b : base) out.insert(complement(b));
  out.insert(falsum());
  out.insert(neg(falsum()));
  out.insert(box(falsum()));
  out.insert(neg(box(falsum())));
  for (Fml b : base) {
    if (b->kind() != Kind::RBox) continue;
    Fml d = b->child();
    out.insert(box(d));
    out.insert(neg(box(d)));
    out.insert(box(neg(b)));
    out.insert(dia(b));
    out.insert(box(b));
    out.insert(neg(box(b)));
  }
  return out;
}

namespace {

void collect_s0(Fml a, FmlSet& seen, FmlVec& out) {
  if (!seen.insert(a).second) return;
  switch (a->kind()) {
    case Kind::Falsum:
    case Kind::Atom:
    case Kind::RBox:
      out.push_back(a);
      return;
    case Kind::Neg:
    case Kind::Box:
      collect_s0(a->child(), seen, out);
      out.push_back(a);
      return;
    case Kind::Or:
      collect_s0(a->left(), seen, out);
      collect_s0(a->right(), seen, out);
      out.push_back(a);
      return;
  }
}

}  // namespace

FmlVec s0(Fml a) {
  FmlSet seen;
  FmlVec out;
  collect_s0(a, seen, out);
  return out;
}

FmlVec outermost_rosser(Fml a) {
  FmlVec out;
  for (Fml f : s0(a))
    if (f->kind() == Kind::RBox) out.push_back(f->child());
  return out;
}

FmlVec rosser_payload_closure(Fml a) {
  FmlVec out;
  FmlSet seen;
  FmlVec queue = outermost_rosser(a);
  for (size_t i = 0; i < queue.size(); ++i) {
    Fml d = queue[i];
    if (!seen.insert(d).second) continue;
    out.push_back(d);
    for (Fml inner : outermost_rosser(d)) queue.push_back(inner);
  }
  return out;
}

Fml dagger(Fml a) {
  switch (a->kind()) {
    case Kind::Falsum:
    case Kind::Atom:
      return a;
    case Kind::Neg:
      return neg(dagger(a->child()));
    case Kind::Box:
      return box(dagger(a->child()));
    case Kind::RBox:
      return qatom(a->child());
    case Kind::Or:
      return lor(dagger(a->left()), dagger(a->right()));
  }
  return a;
}

Fml psi(Fml d) {
  Fml q = qatom(d);
  Fml dt = dagger(d);
  Fml c1 = imp(q, box(dt));
  Fml c2 = imp(q, box(q));
  Fml c3 = imp(box(dt), lor(box(falsum()), q));
  Fml c4 = imp(dia(q), dia(dt));
  return land(land(land(c1, c2), c3), c4);
}

Fml boxdot(Fml a) { return land(box(a), a); }

Fml top_translation(Fml a, const std::function<bool(Fml)>& provable_in_gr_circ) {
  switch (a->kind()) {
    case Kind::Falsum:
    case Kind::Atom:
      return a;
    case Kind::Neg:
      return neg(top_translation(a->child(), provable_in_gr_circ));
    case Kind::Box:
      return box(top_translation(a->child(), provable_in_gr_circ));
    case Kind::RBox:
      return provable_in_gr_circ(a->child()) ? verum() : a;
    case Kind::Or:
      return lor(top_translation(a->left(), provable_in_gr_circ),
                 top_translation(a->right(), provable_in_gr_circ));
  }
  return a;
}

Fml theta(Fml a, const std::function<bool(Fml)>& provable_in_gr) {
  FmlSet seen;
  FmlVec order;
  walk_subformulas(a, seen, order);

  Fml conj = nullptr;
  for (Fml f : order) {
    if (f->kind() != Kind::RBox) continue;
    if (!provable_in_gr(neg(f->child()))) continue;
    Fml term = neg(f);
    conj = conj ? land(conj, term) : term;
  }
  return conj ? conj : verum();
}

Fml substitute(Fml a, const Substitution& s) {
  switch (a->kind()) {
    case Kind::Falsum:
      return a;
    case Kind::Atom: {
      auto it = s.find(a);
      return it != s.end() ? it->second : a;
    }
    case Kind::Neg:
      return neg(substitute(a->child(), s));
    case Kind::Box:
      return box(substitute(a->child(), s));
    case Kind::RBox:
      return rbox(substitute(a->child(), s));
    case Kind::Or:
      return lor(substitute(a->left(), s), substitute(a->right(), s));
  }
  return a;
}

bool ddag_holds(Fml c, Fml a, Fml b) {
  SignedSubformulas sc = signed_subformulas(c);
  SignedSubformulas sa = signed_subformulas(a);
  SignedSubformulas sb = signed_subformulas(b);
  for (Fml f : sc.pos)
    if (f->kind() == Kind::RBox && (!sa.pos.count(f) || !sb.pos.count(f))) return false;
  for (Fml f : sc.neg)
    if (f->kind() == Kind::RBox && (!sa.neg.count(f) || !sb.neg.count(f))) return false;
  return true;
}

bool lyndon_scope_holds(Fml c, Fml a, Fml b) {
  return tau(c).subset_of(tau(a).intersect(tau(b)));
}

}  // namespace rosserlog
