#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "rosserlog/formula.hpp"

namespace rosserlog {

using World = int;
using WorldMask = uint64_t;

// Binary relation on up to 64 worlds, one successor mask per world.
struct Relation {
  std::vector<WorldMask> succ;

  Relation() = default;
  explicit Relation(int n) : succ(n, 0) {}

  int n() const { return static_cast<int>(succ.size()); }
  bool contains(World x, World y) const { return succ[x] >> y & 1; }
  void add(World x, World y) { succ[x] |= WorldMask{1} << y; }
  void remove(World x, World y) { succ[x] &= ~(WorldMask{1} << y); }

  bool is_irreflexive() const;
  bool is_transitive() const;
  // Every world has at least one successor.
  bool is_serial() const;
  void transitive_close();
  std::vector<std::pair<World, World>> pairs() const;

  bool operator==(const Relation& o) const { return succ == o.succ; }
};

// Worlds 0..n-1, the strict provability relation, and a formula-indexed
// family of Rosser relations represented as a default plus structural
// overrides.
struct GRoFrame {
  int n = 0;
  Relation box;
  Relation rosser_default;
  std::map<Fml, Relation, FmlLess> rosser_overrides;

  const Relation& effective(Fml key) const {
    auto it = rosser_overrides.find(key);
    return it != rosser_overrides.end() ? it->second : rosser_default;
  }
  // Worlds with no box successor.
  WorldMask maximal_worlds() const;
};

struct GRoModel {
  GRoFrame frame;
  std::vector<FmlSet> valuation;  // per world, the atoms true there
};

// One checked condition of the frame definition, with a witness on
// failure (unused witness slots are -1).
struct ConditionCheck {
  std::string condition;
  std::string relation;  // "box", "default", or the override key text
  bool pass = true;
  std::array<World, 3> witness = {-1, -1, -1};
};

struct FrameReport {
  bool ok = true;
  std::vector<ConditionCheck> checks;
  const ConditionCheck* first_failure() const;
  std::string summary() const;
};

// Checks: box transitive and irreflexive; for the default relation and
// every override R:
//   (i)   box is contained in R
//   (ii)  x box y and y R z imply x box z
//   (iii) x R y and x box z imply x box y
//   (iv)  x box y implies some z with y R z and x box z
FrameReport validate_gro_frame(const GRoFrame& f);

// Truth of a formula at a world. Box quantifies over the box relation,
// [R]B over the effective relation for the structural key B. Throws
// std::out_of_range on an unknown world and std::invalid_argument on a
// frame that fails validation (checked lazily, once per evaluator).
bool eval(const GRoModel& m, World w, Fml a);

// Per-model evaluator computing satisfying-world masks per subformula.
class Evaluator {
public:
  explicit Evaluator(const GRoModel& m) : m_(m) {}
  WorldMask mask(Fml a);
  bool eval(World w, Fml a);

private:
  void ensure_valid();

  const GRoModel& m_;
  std::map<Fml, WorldMask, FmlLess> cache_;
  bool checked_ = false;
};

// Every effective relation (default and overrides) is serial.
bool is_serial(const GRoFrame& f);

// At least two worlds and a box-root below every other world.
bool is_nontrivial(const GRoFrame& f);
std::optional<World> box_root(const GRoFrame& f);

// Extends every effective relation with a loop at each box-maximal
// world. Requires a valid input; the result is valid and serial.
GRoFrame serial_completion(const GRoFrame& f);

// Adds a fresh root below all worlds in box and every Rosser relation,
// with an empty valuation. Requires a serial model; preserves truth at
// the old worlds and yields a non-trivial valid model. The new root is
// world n of the input model.
GRoModel add_root(const GRoModel& m);

// Box-free frame family: worlds plus Rosser relations only.
struct NModel {
  int n = 0;
  Relation rosser_default;
  std::map<Fml, Relation, FmlLess> rosser_overrides;
  std::vector<FmlSet> valuation;

  const Relation& effective(Fml key) const {
    auto it = rosser_overrides.find(key);
    return it != rosser_overrides.end() ? it->second : rosser_default;
  }
};

// Evaluation with only the [R] clause modal. Throws std::invalid_argument
// if the formula mentions [].
bool eval_n(const NModel& m, World w, Fml a);

// Rooted strict-order model where the truth of each [R]B is data at
// every world rather than relation-derived.
struct GRMinusModel {
  int n = 0;
  Relation box;
  World root = 0;
  std::vector<FmlSet> rosser_atoms;  // per world: the B with [R]B true
  std::vector<FmlSet> valuation;
};

bool eval_grminus(const GRMinusModel& m, World w, Fml a);

struct GRMinusReport {
  bool ok = true;
  // One entry per axiom scheme 2..7: scheme index, pass, witness.
  struct SchemeCheck {
    int scheme;
    bool pass = true;
    World world = -1;
    Fml instance = nullptr;
  };
  std::vector<SchemeCheck> schemes;
  bool frame_ok = true;
  std::string frame_issue;
};

// Bounded validation: checks the frame shape (box transitive,
// irreflexive, root below all) and every instance of the modal axiom
// schemes with scheme letters drawn from axioms_over, at every world.
GRMinusReport validate_grminus_model(const GRMinusModel& m, const FmlSet& axioms_over);

// Validator-passing random frame: random strict-order DAG, transitively
// closed; each Rosser relation is box plus loops at maximal worlds plus
// admissible extra pairs, re-validated. Same seed, same frame.
GRoFrame random_frame(uint64_t seed, int n, const FmlVec& override_keys);

// Random model over a random frame with the given named atoms.
GRoModel random_model(uint64_t seed, int n, const FmlVec& override_keys,
                      const std::vector<std::string>& atoms);

struct FormulaGenOpts {
  std::vector<std::string> atoms = {"p", "q", "r"};
  bool allow_box = true;
  bool allow_rbox = true;
  int max_rbox_nesting = 2;  // cap on [R] nested inside [R]
};

// Size-exact, signature-respecting random formula. Same seed and
// options, same formula.
Fml random_formula(uint64_t seed, int size, const FormulaGenOpts& opts = {});
Fml random_formula(std::mt19937_64& rng, int size, const FormulaGenOpts& opts = {});

}  // namespace rosserlog
