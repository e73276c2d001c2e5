#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace rosserlog {

// Core connectives of the bimodal language: falsum, atoms, negation,
// disjunction, the provability box [] and the Rosser box [R].
// Conjunction, implication, equivalence, top and the diamonds are
// parse-time sugar over these six.
enum class Kind : uint8_t { Falsum, Atom, Neg, Or, Box, RBox };

class Formula;
using Fml = const Formula*;

// Immutable, interned formula node. Two structurally equal formulas are
// always the same pointer, so pointer equality is structural equality and
// formulas can key maps and sets directly.
class Formula {
public:
  Kind kind() const { return kind_; }

  bool is_atom() const { return kind_ == Kind::Atom; }
  // Named atom ("p", "q", ...) vs indexed atom q{D} reserved for the
  // box-fragment translations. The two sorts never collide.
  bool is_named_atom() const { return kind_ == Kind::Atom && payload_ == nullptr; }
  bool is_indexed_atom() const { return kind_ == Kind::Atom && payload_ != nullptr; }
  const std::string& name() const { return name_; }
  Fml payload() const { return payload_; }

  Fml child() const { return lhs_; }  // Neg / Box / RBox
  Fml left() const { return lhs_; }
  Fml right() const { return rhs_; }

  // Dense id in interning order; stable within a process run.
  uint32_t id() const { return id_; }
  // Node count.
  int size() const { return size_; }
  // Maximal nesting of modal operators ([] and [R] both count).
  int modal_depth() const { return modal_depth_; }
  // Maximal nesting of [R] along any path.
  int rbox_depth() const { return rbox_depth_; }
  bool mentions_box() const { return has_box_; }
  bool mentions_rbox() const { return has_rbox_; }

private:
  friend class Interner;
  Formula() = default;

  Kind kind_ = Kind::Falsum;
  std::string name_;        // named atoms only
  Fml payload_ = nullptr;   // indexed atoms only
  Fml lhs_ = nullptr;
  Fml rhs_ = nullptr;
  uint32_t id_ = 0;
  int size_ = 1;
  int modal_depth_ = 0;
  int rbox_depth_ = 0;
  bool has_box_ = false;
  bool has_rbox_ = false;
};

// Interned constructors. Thread-safe; returned pointers live for the
// lifetime of the process.
Fml falsum();
Fml atom(std::string_view name);
Fml qatom(Fml payload);  // the indexed atom q{payload}
Fml neg(Fml a);
Fml lor(Fml a, Fml b);
Fml box(Fml a);
Fml rbox(Fml a);

// Derived sugar, normalized to the six constructors.
Fml verum();              // ~bot
Fml land(Fml a, Fml b);   // ~(~a | ~b)
Fml imp(Fml a, Fml b);    // ~a | b
Fml iff(Fml a, Fml b);    // (a -> b) & (b -> a)
Fml dia(Fml a);           // ~[]~a
Fml rdia(Fml a);          // ~[R]~a

// Total structural order, independent of interning order: by size, then
// kind, then contents. Used wherever output determinism matters.
int compare(Fml a, Fml b);

struct FmlLess {
  bool operator()(Fml a, Fml b) const { return compare(a, b) < 0; }
};

using FmlSet = std::set<Fml, FmlLess>;
using FmlVec = std::vector<Fml>;

// Canonical rendering in the ASCII core grammar (bot, names, q{...}, ~,
// |, [], [R]); parse(render(a)) == a.
std::string render(Fml a);

}  // namespace rosserlog
