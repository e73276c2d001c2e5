#pragma once

#include <optional>
#include <stdexcept>

#include "rosserlog/decide.hpp"
#include "rosserlog/frame.hpp"

namespace rosserlog {

struct PreconditionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// A refutation that has already been re-checked: the frame passes
// validation and the formula evaluates false at the focus world.
struct Certificate {
  GRoModel model;
  World focus = 0;
  Fml formula = nullptr;
  FrameReport frame_report;
  bool verified = false;
};

struct SearchOptions {
  int max_worlds = 8;
  uint64_t max_candidates = 50'000'000;
};

struct SearchStats {
  uint64_t candidates = 0;       // (frame, valuation, relation choice) triples tried
  int worlds_reached = 0;        // largest world count entered
  bool exhausted = false;        // swept everything up to max_worlds
  size_t phi_size = 0;           // |phi_closure(~A)|
  double theoretical_bound = 0;  // world bound from the chain construction; inf when huge
};

struct SearchOutcome {
  std::optional<Certificate> certificate;
  SearchStats stats;
  bool unresolved() const { return !certificate.has_value(); }
};

// Extracts and verifies the tableau countermodel. Throws
// PreconditionError when the formula is provable.
Certificate gl_countermodel(Decider& d, Fml a);

// Iterative-deepening search over validated finite frames, smallest
// world count first, relation cardinality and lexicographic encoding as
// tie-breakers. Throws PreconditionError when the formula is provable;
// an exhausted budget yields an Unresolved outcome, never a verdict.
SearchOutcome gro_countermodel(Decider& d, Fml a, const SearchOptions& opts = {});

// Same search over serial frames; a trivial hit is re-rooted into a
// non-trivial one. Certificates additionally satisfy is_nontrivial and
// is_serial.
SearchOutcome gr_countermodel(Decider& d, Fml a, const SearchOptions& opts = {});

// The raw bounded search with no provability precondition, exposed for
// cross-checking the decision procedures against the semantics.
SearchOutcome search_countermodel(Fml a, bool serial_only, const SearchOptions& opts = {});

}  // namespace rosserlog
