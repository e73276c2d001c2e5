#include "rosserlog/interpolate.hpp"

#include <algorithm>

namespace rosserlog {

Fml normalize(Fml a, bool descend_rbox) {
  switch (a->kind()) {
    case Kind::Falsum:
    case Kind::Atom:
      return a;
    case Kind::Neg: {
      Fml c = normalize(a->child(), descend_rbox);
      if (c->kind() == Kind::Neg) return c->child();
      return neg(c);
    }
    case Kind::Box:
      return box(normalize(a->child(), descend_rbox));
    case Kind::RBox:
      return descend_rbox ? rbox(normalize(a->child(), descend_rbox)) : a;
    case Kind::Or: {
      FmlVec parts;
      auto flatten = [&](auto&& self, Fml f) -> void {
        if (f->kind() == Kind::Or) {
          self(self, f->left());
          self(self, f->right());
          return;
        }
        Fml n = normalize(f, descend_rbox);
        if (n->kind() == Kind::Or) {
          self(self, n);  // double negations can surface new disjunctions
          return;
        }
        parts.push_back(n);
      };
      flatten(flatten, a->left());
      flatten(flatten, a->right());
      std::sort(parts.begin(), parts.end(), FmlLess{});
      parts.erase(std::unique(parts.begin(), parts.end()), parts.end());
      FmlVec kept;
      for (Fml f : parts) {
        if (f == falsum()) continue;          // bot | X = X
        if (f == verum()) return verum();     // top | X = top
        kept.push_back(f);
      }
      if (kept.empty()) return falsum();
      Fml out = kept[0];
      for (size_t i = 1; i < kept.size(); ++i) out = lor(out, kept[i]);
      return out;
    }
  }
  return a;
}

namespace {

// Level-wise enumeration of normalized formulas over a fixed signature,
// smallest size first. Every normal form within the caps appears exactly
// once.
class CandidateStream {
public:
  struct Config {
    FmlVec atoms;      // leaf atoms
    FmlVec blocks;     // opaque subterms inserted at their own size
    bool use_box = true;
    bool use_rbox = false;
    bool descend_rbox_in_normalize = true;
    int max_size = 24;
    int max_modal_depth = -1;  // -1: unbounded
    uint64_t max_generated = 2'000'000;
  };

  explicit CandidateStream(Config cfg) : cfg_(std::move(cfg)) {
    levels_.resize(cfg_.max_size + 1);
    std::sort(cfg_.atoms.begin(), cfg_.atoms.end(), FmlLess{});
    std::sort(cfg_.blocks.begin(), cfg_.blocks.end(), FmlLess{});
  }

  // Next fresh normalized candidate, or nullptr when exhausted.
  Fml next() {
    while (queue_pos_ >= queue_.size()) {
      if (current_size_ >= cfg_.max_size || generated_ > cfg_.max_generated) return nullptr;
      ++current_size_;
      fill_level(current_size_);
    }
    return queue_[queue_pos_++];
  }

  uint64_t generated() const { return generated_; }
  bool exhausted_within_caps() const {
    return current_size_ >= cfg_.max_size && queue_pos_ >= queue_.size() &&
           generated_ <= cfg_.max_generated;
  }

private:
  void offer(Fml raw) {
    ++generated_;
    Fml f = normalize(raw, cfg_.descend_rbox_in_normalize);
    if (f->size() > cfg_.max_size) return;
    if (cfg_.max_modal_depth >= 0 && f->modal_depth() > cfg_.max_modal_depth) return;
    if (!seen_.insert(f).second) return;
    levels_[f->size()].push_back(f);
    queue_.push_back(f);
  }

  void fill_level(int k) {
    if (k == 1) {
      offer(falsum());
      for (Fml at : cfg_.atoms) offer(at);
    } else {
      for (Fml x : levels_[k - 1]) offer(neg(x));
      if (cfg_.use_box)
        for (Fml x : levels_[k - 1]) offer(box(x));
      if (cfg_.use_rbox)
        for (Fml x : levels_[k - 1]) offer(rbox(x));
      for (int i = 1; i <= k - 2; ++i)
        for (Fml x : levels_[i])
          for (Fml y : levels_[k - 1 - i]) offer(lor(x, y));
    }
    for (Fml b : cfg_.blocks)
      if (b->size() == k) {
        ++generated_;
        if (seen_.insert(b).second) {
          levels_[k].push_back(b);
          queue_.push_back(b);
        }
      }
  }

  Config cfg_;
  std::vector<FmlVec> levels_;
  FmlVec queue_;
  size_t queue_pos_ = 0;
  FmlSet seen_;
  int current_size_ = 0;
  uint64_t generated_ = 0;
};

FmlVec shared_signed_rboxes(Fml a, Fml b) {
  SignedSubformulas sa = signed_subformulas(a);
  SignedSubformulas sb = signed_subformulas(b);
  FmlSet out;
  for (Fml f : sa.pos)
    if (f->kind() == Kind::RBox && sb.pos.count(f)) out.insert(f);
  for (Fml f : sa.neg)
    if (f->kind() == Kind::RBox && sb.neg.count(f)) out.insert(f);
  return FmlVec(out.begin(), out.end());
}

FmlVec shared_unsigned_rboxes(Fml a, Fml b) {
  FmlSet sa = subformulas(a), sb = subformulas(b), out;
  for (Fml f : sa)
    if (f->kind() == Kind::RBox && sb.count(f)) out.insert(f);
  return FmlVec(out.begin(), out.end());
}

}  // namespace

InterpolantReport lyndon_interpolant(Decider& d, Logic logic, Fml a, Fml b, uint64_t budget,
                                     InterpolationMode mode) {
  if (d.decide(logic, imp(a, b)).verdict != Verdict::Provable)
    throw PreconditionError("lyndon_interpolant: implication is not provable");

  InterpolantReport rep;

  SignedLiteralSet scope = tau(a).intersect(tau(b));
  FmlSet atom_set = scope.positives;
  atom_set.insert(scope.negatives.begin(), scope.negatives.end());
  FmlSet va = variables(a), vb = variables(b), craig_vars;
  std::set_intersection(va.begin(), va.end(), vb.begin(), vb.end(),
                        std::inserter(craig_vars, craig_vars.end()), FmlLess{});
  if (mode == InterpolationMode::Craig) atom_set = craig_vars;

  CandidateStream::Config cfg;
  cfg.atoms.assign(atom_set.begin(), atom_set.end());
  cfg.blocks = mode == InterpolationMode::Lyndon ? shared_signed_rboxes(a, b)
                                                 : shared_unsigned_rboxes(a, b);
  cfg.use_box = true;
  cfg.descend_rbox_in_normalize = false;
  CandidateStream stream(cfg);

  FmlSet sa_all = subformulas(a), sb_all = subformulas(b);
  auto craig_scope = [&](Fml c) {
    for (Fml v : variables(c))
      if (!craig_vars.count(v)) return false;
    for (Fml f : subformulas(c))
      if (f->kind() == Kind::RBox && (!sa_all.count(f) || !sb_all.count(f))) return false;
    return true;
  };

  while (Fml c = stream.next()) {
    bool in_scope = mode == InterpolationMode::Lyndon
                        ? lyndon_scope_holds(c, a, b) && ddag_holds(c, a, b)
                        : craig_scope(c);
    if (!in_scope) continue;
    if (++rep.candidates_tested > budget) break;
    if (d.decide(logic, imp(a, c)).verdict != Verdict::Provable) continue;
    if (d.decide(logic, imp(c, b)).verdict != Verdict::Provable) continue;

    rep.resolved = true;
    rep.interpolant = c;
    rep.obligations.push_back({"left implication A -> C", true});
    rep.obligations.push_back({"right implication C -> B", true});
    if (mode == InterpolationMode::Lyndon) {
      rep.obligations.push_back({"signed variable scope", lyndon_scope_holds(c, a, b)});
      rep.obligations.push_back({"signed Rosser-subformula scope", ddag_holds(c, a, b)});
    } else {
      rep.obligations.push_back({"variable scope", craig_scope(c)});
      rep.obligations.push_back({"Rosser-subformula scope", craig_scope(c)});
    }
    break;
  }
  rep.candidates_generated = stream.generated();
  return rep;
}

namespace {

CandidateStream make_pool(Fml a, const FmlSet& p, Logic logic, const UniformOptions& opts) {
  CandidateStream::Config cfg;
  FmlSet sig = variables(a);
  for (Fml v : p) sig.erase(v);
  cfg.atoms.assign(sig.begin(), sig.end());
  cfg.use_box = true;
  cfg.use_rbox = logic != Logic::GL;
  cfg.max_size = opts.size_cap;
  cfg.max_modal_depth = opts.depth;
  cfg.max_generated = opts.pool_cap;
  return CandidateStream(cfg);
}

int effective_depth(Fml a, const UniformOptions& opts) {
  return opts.depth >= 0 ? opts.depth : a->modal_depth();
}

bool scope_within(Fml candidate, Fml a, const FmlSet& p) {
  FmlSet allowed = variables(a);
  for (Fml v : p) allowed.erase(v);
  for (Fml v : variables(candidate))
    if (!allowed.count(v)) return false;
  return true;
}

}  // namespace

UniformCheck verify_uniform(Decider& d, Fml candidate, Fml a, const FmlSet& p, Logic logic,
                            UniformOptions opts) {
  opts.depth = effective_depth(a, opts);
  UniformCheck check;
  check.scope_ok = scope_within(candidate, a, p);
  check.implied_ok = d.decide(logic, imp(a, candidate)).verdict == Verdict::Provable;
  check.clause3.depth = opts.depth;
  check.clause3.size_cap = opts.size_cap;

  CandidateStream pool = make_pool(a, p, logic, opts);
  while (Fml b = pool.next()) {
    ++check.clause3.pool_size;
    if (d.decide(logic, imp(a, b)).verdict != Verdict::Provable) continue;
    ++check.clause3.premises;
    if (d.decide(logic, imp(candidate, b)).verdict != Verdict::Provable) {
      ++check.clause3.failures;
      if (!check.clause3.counterexample) check.clause3.counterexample = b;
    }
  }
  check.clause3.complete = pool.exhausted_within_caps();
  return check;
}

UniformReport gl_uniform(Decider& d, Fml a, const FmlSet& p, UniformOptions opts) {
  if (a->mentions_rbox())
    throw FragmentError("gl_uniform: input must be [R]-free");
  opts.depth = effective_depth(a, opts);

  UniformReport rep;
  rep.logic = Logic::GL;
  rep.input = a;
  rep.forget = p;

  CandidateStream pool = make_pool(a, p, Logic::GL, opts);
  Fml conj = nullptr;
  while (Fml b = pool.next()) {
    if (d.decide(Logic::GL, imp(a, b)).verdict != Verdict::Provable) continue;
    // Drop anything the running conjunction (initially the empty one,
    // i.e. plain theoremhood) already yields.
    if (d.decide(Logic::GL, imp(conj ? conj : verum(), b)).verdict == Verdict::Provable)
      continue;
    conj = conj ? land(conj, b) : b;
    ++rep.kept_conjuncts;
  }
  rep.candidate = conj ? conj : verum();

  UniformCheck check = verify_uniform(d, rep.candidate, a, p, Logic::GL, opts);
  rep.scope_ok = check.scope_ok;
  rep.implied_ok = check.implied_ok;
  rep.clause3 = check.clause3;
  return rep;
}

UniformReport grminus_uniform(Decider& d, Fml a, const FmlSet& p, UniformOptions opts) {
  opts.depth = effective_depth(a, opts);

  FmlVec payloads = rosser_payload_closure(a);
  FmlSet q = p;
  for (Fml payload : payloads) {
    FmlSet pv = variables(payload);
    bool meets_p = std::any_of(pv.begin(), pv.end(), [&](Fml v) { return p.count(v) > 0; });
    if (meets_p) q.insert(qatom(payload));
  }
  Fml engine_input = nullptr;
  for (Fml payload : payloads) {
    Fml term = boxdot(psi(payload));
    engine_input = engine_input ? land(engine_input, term) : term;
  }
  engine_input = engine_input ? land(engine_input, dagger(a)) : dagger(a);

  UniformReport inner = gl_uniform(d, engine_input, q, opts);

  Substitution sigma;
  for (Fml payload : payloads) sigma.emplace(qatom(payload), rbox(payload));
  Fml candidate = substitute(inner.candidate, sigma);

  UniformReport rep;
  rep.logic = Logic::GRMinus;
  rep.input = a;
  rep.forget = p;
  rep.candidate = candidate;
  rep.q_forget = q;
  rep.gl_engine_input = engine_input;
  rep.kept_conjuncts = inner.kept_conjuncts;

  UniformCheck check = verify_uniform(d, candidate, a, p, Logic::GRMinus, opts);
  rep.scope_ok = check.scope_ok;
  rep.implied_ok = check.implied_ok;
  rep.clause3 = check.clause3;
  return rep;
}

UniformReport grcirc_uniform(Decider& d, Fml a, const FmlSet& p, UniformOptions opts) {
  opts.depth = effective_depth(a, opts);
  Fml atop = top_translation(
      a, [&](Fml payload) { return d.decide_gr_circ(payload).verdict == Verdict::Provable; });
  UniformReport rep = grminus_uniform(d, atop, p, opts);
  rep.logic = Logic::GRCirc;
  rep.input = a;
  rep.rewritten = atop;

  UniformCheck check = verify_uniform(d, rep.candidate, a, p, Logic::GRCirc, opts);
  rep.scope_ok = check.scope_ok;
  rep.implied_ok = check.implied_ok;
  rep.clause3 = check.clause3;
  return rep;
}

UniformReport gr_uniform(Decider& d, Fml a, const FmlSet& p, UniformOptions opts) {
  opts.depth = effective_depth(a, opts);
  Fml guard =
      theta(a, [&](Fml f) { return d.decide_gr(f).verdict == Verdict::Provable; });
  Fml rewritten = land(guard, a);
  UniformReport rep = grcirc_uniform(d, rewritten, p, opts);
  rep.logic = Logic::GR;
  rep.input = a;
  rep.rewritten = rewritten;

  UniformCheck check = verify_uniform(d, rep.candidate, a, p, Logic::GR, opts);
  rep.scope_ok = check.scope_ok;
  rep.implied_ok = check.implied_ok;
  rep.clause3 = check.clause3;
  return rep;
}

}  // namespace rosserlog
