#include "rosserlog/decide.hpp"

#include <algorithm>

#include "rosserlog/syntax.hpp"

namespace rosserlog {

const char* logic_name(Logic l) {
  switch (l) {
    case Logic::GL: return "gl";
    case Logic::N: return "n";
    case Logic::NR: return "nr";
    case Logic::GRMinus: return "grminus";
    case Logic::GRCirc: return "grcirc";
    case Logic::GR: return "gr";
  }
  return "?";
}

std::optional<Logic> logic_from_name(std::string_view name) {
  if (name == "gl") return Logic::GL;
  if (name == "n") return Logic::N;
  if (name == "nr") return Logic::NR;
  if (name == "grminus") return Logic::GRMinus;
  if (name == "grcirc") return Logic::GRCirc;
  if (name == "gr") return Logic::GR;
  return std::nullopt;
}

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Provable: return "provable";
    case Verdict::Unprovable: return "unprovable";
    case Verdict::Unresolved: return "unresolved";
  }
  return "?";
}

namespace {

struct IdLess {
  bool operator()(Fml a, Fml b) const { return a->id() < b->id(); }
};

bool set_contains(const FmlVec& v, Fml f) {
  return std::binary_search(v.begin(), v.end(), f, IdLess{});
}

// Returns false if already present.
bool set_insert(FmlVec& v, Fml f) {
  auto it = std::lower_bound(v.begin(), v.end(), f, IdLess{});
  if (it != v.end() && *it == f) return false;
  v.insert(it, f);
  return true;
}

}  // namespace

Relation canonical_rosser_default(const Relation& box, bool serial) {
  Relation r = box;
  int n = r.n();
  std::vector<bool> has_pred(n, false);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      if (box.contains(x, y)) has_pred[y] = true;
  for (int x = 0; x < n; ++x)
    if (!box.succ[x] && (serial || has_pred[x])) r.add(x, x);
  return r;
}

// -- base tableau -----------------------------------------------------

Decider::SatResult Decider::glsat(const FmlVec& assumptions) {
  // Saturate under the non-branching rules; clashes close immediately.
  FmlVec state;
  FmlVec todo = assumptions;
  while (!todo.empty()) {
    Fml f = todo.back();
    todo.pop_back();
    if (f->kind() == Kind::Falsum) return {false, nullptr};
    if (set_contains(state, f)) continue;
    if (set_contains(state, complement(f))) return {false, nullptr};
    set_insert(state, f);
    if (f->kind() == Kind::Neg) {
      Fml c = f->child();
      if (c->kind() == Kind::Neg) {
        todo.push_back(c->child());
      } else if (c->kind() == Kind::Or) {
        todo.push_back(neg(c->left()));
        todo.push_back(neg(c->right()));
      }
      // ~bot, ~atom, ~[]B are inert here.
    }
    // Unit propagation for disjunctions whose one side is refuted.
    bool changed = true;
    while (changed && todo.empty()) {
      changed = false;
      for (Fml g : state) {
        if (g->kind() != Kind::Or) continue;
        Fml l = g->left(), r = g->right();
        if (set_contains(state, l) || set_contains(state, r)) continue;
        if (set_contains(state, complement(l))) {
          todo.push_back(r);
          changed = true;
          break;
        }
        if (set_contains(state, complement(r))) {
          todo.push_back(l);
          changed = true;
          break;
        }
      }
    }
  }
  return glsat_saturated(std::move(state));
}

Decider::SatResult Decider::glsat_saturated(FmlVec state) {
  auto memo = sat_memo_.find(state);
  if (memo != sat_memo_.end()) return memo->second;
  counters_.tableau_nodes++;

  // Branch on the first unresolved disjunction.
  for (Fml g : state) {
    if (g->kind() != Kind::Or) continue;
    if (set_contains(state, g->left()) || set_contains(state, g->right())) continue;
    FmlVec with_left = state;
    set_insert(with_left, g->left());
    SatResult res = glsat(with_left);
    if (!res.sat) {
      FmlVec with_right = state;
      set_insert(with_right, g->right());
      res = glsat(with_right);
    }
    sat_memo_.emplace(std::move(state), res);
    return res;
  }

  // Saturated propositional state: answer the diamond demands. Each
  // demand ~[]B spawns a successor holding the boxed content, []B and
  // ~B; the boxed part grows strictly, which bounds the recursion.
  FmlVec boxed_seed;
  for (Fml g : state)
    if (g->kind() == Kind::Box) {
      boxed_seed.push_back(g);
      boxed_seed.push_back(g->child());
    }
  auto node = std::make_shared<TreeModel>();
  for (Fml g : state)
    if (g->is_atom()) node->atoms.push_back(g);
  SatResult out{true, nullptr};
  for (Fml g : state) {
    if (g->kind() != Kind::Neg || g->child()->kind() != Kind::Box) continue;
    Fml b = g->child()->child();
    FmlVec seed = boxed_seed;
    seed.push_back(box(b));
    seed.push_back(neg(b));
    SatResult sub = glsat(seed);
    if (!sub.sat) {
      out = {false, nullptr};
      break;
    }
    node->kids.push_back(sub.model);
  }
  if (out.sat) out.model = node;
  sat_memo_.emplace(std::move(state), out);
  return out;
}

// -- routes -----------------------------------------------------------

DecisionOutcome Decider::run_gl(Fml a) {
  if (a->mentions_rbox()) throw FragmentError("decide: [R] is not part of the box fragment");
  DecisionOutcome out;
  out.trace = {Logic::GL, a, nullptr, a};
  SatResult res = glsat({neg(a)});
  if (!res.sat) {
    out.verdict = Verdict::Provable;
    return out;
  }
  out.verdict = Verdict::Unprovable;

  // Flatten the refuting tree into a relational model.
  GRoModel m;
  std::vector<const TreeModel*> stack = {res.model.get()};
  std::vector<std::pair<const TreeModel*, int>> order;  // node, parent index
  std::vector<int> parents = {-1};
  while (!stack.empty()) {
    const TreeModel* t = stack.back();
    stack.pop_back();
    int parent = parents.back();
    parents.pop_back();
    order.emplace_back(t, parent);
    int self = static_cast<int>(order.size()) - 1;
    for (auto it = t->kids.rbegin(); it != t->kids.rend(); ++it) {
      stack.push_back(it->get());
      parents.push_back(self);
    }
  }
  int n = static_cast<int>(order.size());
  m.frame.n = n;
  m.frame.box = Relation(n);
  m.valuation.resize(n);
  for (int w = 0; w < n; ++w) {
    for (Fml at : order[w].first->atoms) m.valuation[w].insert(at);
    for (int p = order[w].second; p >= 0; p = order[p].second) m.frame.box.add(p, w);
  }
  m.frame.rosser_default = canonical_rosser_default(m.frame.box, false);

  if (!validate_gro_frame(m.frame).ok || eval(m, 0, a))
    throw std::logic_error("refutation model failed verification");
  out.countermodel = std::move(m);
  out.focus = 0;
  return out;
}

DecisionOutcome Decider::run_gr_minus(Fml a) {
  Fml conj = nullptr;
  for (Fml d : rosser_payload_closure(a)) {
    Fml term = boxdot(psi(d));
    conj = conj ? land(conj, term) : term;
  }
  Fml gl_input = imp(conj ? conj : verum(), dagger(a));
  DecisionOutcome out = decide_nolock(Logic::GL, gl_input);
  out.trace = {Logic::GRMinus, a, nullptr, gl_input};
  return out;
}

DecisionOutcome Decider::run_gr_circ(Fml a) {
  uint64_t oracle_calls = 0;
  Fml atop = top_translation(a, [&](Fml d) {
    ++oracle_calls;
    return decide_nolock(Logic::GRCirc, d).verdict == Verdict::Provable;
  });
  DecisionOutcome out = decide_nolock(Logic::GRMinus, atop);
  out.trace.logic = Logic::GRCirc;
  out.trace.input = a;
  out.trace.top_translated = atop;
  out.stats.oracle_calls += oracle_calls;
  return out;
}

DecisionOutcome Decider::run_gr(Fml a) {
  DecisionOutcome out = decide_nolock(Logic::GRCirc, box(a));
  out.trace.logic = Logic::GR;
  out.trace.input = a;
  out.stats.oracle_calls += 1;
  return out;
}

DecisionOutcome Decider::decide_nolock(Logic logic, Fml a) {
  auto key = std::make_pair(static_cast<int>(logic), a);
  auto it = cache_.find(key);
  if (it != cache_.end()) {
    counters_.cache_hits++;
    DecisionOutcome out = it->second;
    out.stats.cache_hits = 1;
    return out;
  }

  uint64_t nodes_before = counters_.tableau_nodes;
  DecisionOutcome out;
  switch (logic) {
    case Logic::GL:
      out = run_gl(a);
      break;
    case Logic::GRMinus:
      out = run_gr_minus(a);
      break;
    case Logic::GRCirc:
      out = run_gr_circ(a);
      break;
    case Logic::GR:
      out = run_gr(a);
      break;
    case Logic::N:
      if (a->mentions_box()) throw FragmentError("decide: [] is not part of the [R]-fragment");
      out = decide_nolock(Logic::GRCirc, a);
      out.trace.logic = Logic::N;
      break;
    case Logic::NR:
      if (a->mentions_box()) throw FragmentError("decide: [] is not part of the [R]-fragment");
      out = decide_nolock(Logic::GR, a);
      out.trace.logic = Logic::NR;
      out.trace.input = a;
      break;
  }
  out.stats.tableau_nodes = counters_.tableau_nodes - nodes_before;
  cache_.emplace(key, out);
  return out;
}

DecisionOutcome Decider::decide(Logic logic, Fml a) {
  std::lock_guard<std::recursive_mutex> lock(mutex_);
  return decide_nolock(logic, a);
}

}  // namespace rosserlog
