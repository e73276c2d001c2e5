#include "rosserlog/frame.hpp"

#include <algorithm>
#include <bit>
#include <sstream>

#include "rosserlog/syntax.hpp"

namespace rosserlog {

bool Relation::is_irreflexive() const {
  for (int x = 0; x < n(); ++x)
    if (contains(x, x)) return false;
  return true;
}

bool Relation::is_transitive() const {
  for (int x = 0; x < n(); ++x)
    for (int y = 0; y < n(); ++y)
      if (contains(x, y) && (succ[y] & ~succ[x])) return false;
  return true;
}

bool Relation::is_serial() const {
  for (int x = 0; x < n(); ++x)
    if (!succ[x]) return false;
  return true;
}

void Relation::transitive_close() {
  for (int k = 0; k < n(); ++k)
    for (int x = 0; x < n(); ++x)
      if (contains(x, k)) succ[x] |= succ[k];
}

std::vector<std::pair<World, World>> Relation::pairs() const {
  std::vector<std::pair<World, World>> out;
  for (int x = 0; x < n(); ++x)
    for (int y = 0; y < n(); ++y)
      if (contains(x, y)) out.emplace_back(x, y);
  return out;
}

WorldMask GRoFrame::maximal_worlds() const {
  WorldMask m = 0;
  for (int x = 0; x < n; ++x)
    if (!box.succ[x]) m |= WorldMask{1} << x;
  return m;
}

const ConditionCheck* FrameReport::first_failure() const {
  for (const auto& c : checks)
    if (!c.pass) return &c;
  return nullptr;
}

std::string FrameReport::summary() const {
  if (ok) return "ok";
  const ConditionCheck* f = first_failure();
  std::ostringstream os;
  os << f->condition << " fails for relation " << f->relation << " at (";
  bool first = true;
  for (World w : f->witness) {
    if (w < 0) continue;
    if (!first) os << ",";
    os << w;
    first = false;
  }
  os << ")";
  return os.str();
}

namespace {

void check_rosser_relation(const GRoFrame& f, const Relation& r, const std::string& name,
                           FrameReport& rep) {
  auto push = [&](const char* cond, bool pass, World x, World y, World z) {
    rep.checks.push_back({cond, name, pass, {x, y, z}});
    rep.ok = rep.ok && pass;
  };
  if (r.n() != f.n) {
    push("relation carrier size", false, -1, -1, -1);
    return;
  }
  {  // (i) box within R
    bool pass = true;
    World wx = -1, wy = -1;
    for (int x = 0; x < f.n && pass; ++x)
      if (f.box.succ[x] & ~r.succ[x]) {
        pass = false;
        wx = x;
        wy = std::countr_zero(f.box.succ[x] & ~r.succ[x]);
      }
    push("(i) box within rosser", pass, wx, wy, -1);
  }
  {  // (ii) x box y, y R z => x box z
    bool pass = true;
    World wx = -1, wy = -1, wz = -1;
    for (int x = 0; x < f.n && pass; ++x)
      for (int y = 0; y < f.n && pass; ++y)
        if (f.box.contains(x, y) && (r.succ[y] & ~f.box.succ[x])) {
          pass = false;
          wx = x;
          wy = y;
          wz = std::countr_zero(r.succ[y] & ~f.box.succ[x]);
        }
    push("(ii) rosser steps stay above box", pass, wx, wy, wz);
  }
  {  // (iii) x R y, x box z => x box y
    bool pass = true;
    World wx = -1, wy = -1, wz = -1;
    for (int x = 0; x < f.n && pass; ++x)
      if (f.box.succ[x] && (r.succ[x] & ~f.box.succ[x])) {
        pass = false;
        wx = x;
        wy = std::countr_zero(r.succ[x] & ~f.box.succ[x]);
        wz = std::countr_zero(f.box.succ[x]);
      }
    push("(iii) rosser successors are box successors below the top", pass, wx, wy, wz);
  }
  {  // (iv) x box y => exists z: y R z and x box z
    bool pass = true;
    World wx = -1, wy = -1;
    for (int x = 0; x < f.n && pass; ++x)
      for (int y = 0; y < f.n && pass; ++y)
        if (f.box.contains(x, y) && !(r.succ[y] & f.box.succ[x])) {
          pass = false;
          wx = x;
          wy = y;
        }
    push("(iv) rosser witness above box", pass, wx, wy, -1);
  }
}

}  // namespace

FrameReport validate_gro_frame(const GRoFrame& f) {
  FrameReport rep;
  if (f.n <= 0 || f.n > 64) {
    rep.checks.push_back({"worlds non-empty and at most 64", "box", false, {-1, -1, -1}});
    rep.ok = false;
    return rep;
  }
  bool irr = true, trans = true;
  std::array<World, 3> w_irr = {-1, -1, -1}, w_trans = {-1, -1, -1};
  for (int x = 0; x < f.n && irr; ++x)
    if (f.box.contains(x, x)) {
      irr = false;
      w_irr = {x, -1, -1};
    }
  for (int x = 0; x < f.n && trans; ++x)
    for (int y = 0; y < f.n && trans; ++y)
      if (f.box.contains(x, y) && (f.box.succ[y] & ~f.box.succ[x])) {
        trans = false;
        w_trans = {x, y, std::countr_zero(f.box.succ[y] & ~f.box.succ[x])};
      }
  rep.checks.push_back({"box irreflexive", "box", irr, w_irr});
  rep.checks.push_back({"box transitive", "box", trans, w_trans});
  rep.ok = irr && trans;
  if (!rep.ok) return rep;

  check_rosser_relation(f, f.rosser_default, "default", rep);
  for (const auto& [key, r] : f.rosser_overrides) check_rosser_relation(f, r, render(key), rep);
  return rep;
}

WorldMask Evaluator::mask(Fml a) {
  auto it = cache_.find(a);
  if (it != cache_.end()) return it->second;
  const GRoFrame& f = m_.frame;
  WorldMask all = f.n >= 64 ? ~WorldMask{0} : (WorldMask{1} << f.n) - 1;
  WorldMask out = 0;
  switch (a->kind()) {
    case Kind::Falsum:
      out = 0;
      break;
    case Kind::Atom:
      for (int w = 0; w < f.n; ++w)
        if (m_.valuation[w].count(a)) out |= WorldMask{1} << w;
      break;
    case Kind::Neg:
      out = ~mask(a->child()) & all;
      break;
    case Kind::Or:
      out = mask(a->left()) | mask(a->right());
      break;
    case Kind::Box: {
      WorldMask body = mask(a->child());
      for (int w = 0; w < f.n; ++w)
        if (!(f.box.succ[w] & ~body)) out |= WorldMask{1} << w;
      break;
    }
    case Kind::RBox: {
      WorldMask body = mask(a->child());
      const Relation& r = f.effective(a->child());
      for (int w = 0; w < f.n; ++w)
        if (!(r.succ[w] & ~body)) out |= WorldMask{1} << w;
      break;
    }
  }
  cache_.emplace(a, out);
  return out;
}

void Evaluator::ensure_valid() {
  if (checked_) return;
  checked_ = true;
  FrameReport rep = validate_gro_frame(m_.frame);
  if (!rep.ok) throw std::invalid_argument("eval: invalid frame: " + rep.summary());
  if (m_.valuation.size() != static_cast<size_t>(m_.frame.n))
    throw std::invalid_argument("eval: valuation must cover every world");
}

bool Evaluator::eval(World w, Fml a) {
  if (w < 0 || w >= m_.frame.n) throw std::out_of_range("unknown world id");
  ensure_valid();
  return mask(a) >> w & 1;
}

bool eval(const GRoModel& m, World w, Fml a) { return Evaluator(m).eval(w, a); }

bool is_serial(const GRoFrame& f) {
  if (!f.rosser_default.is_serial()) return false;
  for (const auto& [key, r] : f.rosser_overrides)
    if (!r.is_serial()) return false;
  return true;
}

std::optional<World> box_root(const GRoFrame& f) {
  WorldMask all = f.n >= 64 ? ~WorldMask{0} : (WorldMask{1} << f.n) - 1;
  for (int r = 0; r < f.n; ++r)
    if ((f.box.succ[r] | WorldMask{1} << r) == all) return r;
  return std::nullopt;
}

bool is_nontrivial(const GRoFrame& f) { return f.n >= 2 && box_root(f).has_value(); }

GRoFrame serial_completion(const GRoFrame& f) {
  FrameReport rep = validate_gro_frame(f);
  if (!rep.ok) throw std::invalid_argument("serial_completion: invalid frame: " + rep.summary());
  GRoFrame out = f;
  WorldMask maxima = f.maximal_worlds();
  auto extend = [&](Relation& r) {
    for (int x = 0; x < f.n; ++x)
      if (maxima >> x & 1) r.add(x, x);
  };
  extend(out.rosser_default);
  for (auto& [key, r] : out.rosser_overrides) extend(r);
  return out;
}

GRoModel add_root(const GRoModel& m) {
  if (!is_serial(m.frame)) throw std::invalid_argument("add_root requires a serial model");
  GRoModel out;
  int n = m.frame.n;
  out.frame.n = n + 1;
  WorldMask olds = (WorldMask{1} << n) - 1;
  auto lift = [&](const Relation& r) {
    Relation e(n + 1);
    for (int x = 0; x < n; ++x) e.succ[x] = r.succ[x];
    e.succ[n] = olds;
    return e;
  };
  out.frame.box = lift(m.frame.box);
  out.frame.rosser_default = lift(m.frame.rosser_default);
  for (const auto& [key, r] : m.frame.rosser_overrides)
    out.frame.rosser_overrides.emplace(key, lift(r));
  out.valuation = m.valuation;
  out.valuation.emplace_back();
  return out;
}

bool eval_n(const NModel& m, World w, Fml a) {
  if (w < 0 || w >= m.n) throw std::out_of_range("unknown world id");
  switch (a->kind()) {
    case Kind::Falsum:
      return false;
    case Kind::Atom:
      return m.valuation[w].count(a) > 0;
    case Kind::Neg:
      return !eval_n(m, w, a->child());
    case Kind::Or:
      return eval_n(m, w, a->left()) || eval_n(m, w, a->right());
    case Kind::Box:
      throw std::invalid_argument("eval_n: [] is not part of the [R]-fragment");
    case Kind::RBox: {
      const Relation& r = m.effective(a->child());
      for (int x = 0; x < m.n; ++x)
        if (r.contains(w, x) && !eval_n(m, x, a->child())) return false;
      return true;
    }
  }
  return false;
}

bool eval_grminus(const GRMinusModel& m, World w, Fml a) {
  if (w < 0 || w >= m.n) throw std::out_of_range("unknown world id");
  switch (a->kind()) {
    case Kind::Falsum:
      return false;
    case Kind::Atom:
      return m.valuation[w].count(a) > 0;
    case Kind::Neg:
      return !eval_grminus(m, w, a->child());
    case Kind::Or:
      return eval_grminus(m, w, a->left()) || eval_grminus(m, w, a->right());
    case Kind::Box:
      for (int x = 0; x < m.n; ++x)
        if (m.box.contains(w, x) && !eval_grminus(m, x, a->child())) return false;
      return true;
    case Kind::RBox:
      return m.rosser_atoms[w].count(a->child()) > 0;
  }
  return false;
}

GRMinusReport validate_grminus_model(const GRMinusModel& m, const FmlSet& axioms_over) {
  GRMinusReport rep;
  if (!m.box.is_transitive() || !m.box.is_irreflexive()) {
    rep.frame_ok = false;
    rep.frame_issue = "box must be transitive and irreflexive";
  } else {
    WorldMask others = ((WorldMask{1} << m.n) - 1) & ~(WorldMask{1} << m.root);
    if ((m.box.succ[m.root] & others) != others) {
      rep.frame_ok = false;
      rep.frame_issue = "root must precede every other world";
    }
  }
  rep.ok = rep.frame_ok;

  auto check_scheme = [&](int scheme, Fml instance) {
    for (auto& s : rep.schemes)
      if (s.scheme == scheme && !s.pass) return;  // keep first witness
    for (int w = 0; w < m.n; ++w) {
      if (!eval_grminus(m, w, instance)) {
        for (auto& s : rep.schemes)
          if (s.scheme == scheme) {
            s.pass = false;
            s.world = w;
            s.instance = instance;
            rep.ok = false;
            return;
          }
      }
    }
  };

  for (int scheme = 2; scheme <= 7; ++scheme) rep.schemes.push_back({scheme, true, -1, nullptr});
  for (Fml a : axioms_over) {
    for (Fml b : axioms_over)
      check_scheme(2, imp(box(imp(a, b)), imp(box(a), box(b))));
    check_scheme(3, imp(box(imp(box(a), a)), box(a)));
    check_scheme(4, imp(rbox(a), box(a)));
    check_scheme(5, imp(box(a), box(rbox(a))));
    check_scheme(6, imp(box(a), lor(box(falsum()), rbox(a))));
    check_scheme(7, imp(dia(rbox(a)), dia(a)));
  }
  return rep;
}

GRoFrame random_frame(uint64_t seed, int n, const FmlVec& override_keys) {
  std::mt19937_64 rng(seed);
  if (n <= 0 || n > 64) throw std::invalid_argument("random_frame: world count out of range");
  GRoFrame f;
  f.n = n;
  f.box = Relation(n);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  for (int y = 1; y < n; ++y)
    for (int x = 0; x < y; ++x)
      if (coin(rng) < 0.4) f.box.add(x, y);
  f.box.transitive_close();

  WorldMask maxima = f.maximal_worlds();
  // Predecessors per world, and the admissible extra successors of each
  // maximal world: targets above every predecessor.
  std::vector<WorldMask> pred(n, 0), adm(n, 0);
  WorldMask all = n >= 64 ? ~WorldMask{0} : (WorldMask{1} << n) - 1;
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      if (f.box.contains(x, y)) pred[y] |= WorldMask{1} << x;
  for (int x = 0; x < n; ++x) {
    adm[x] = all;
    for (int w = 0; w < n; ++w)
      if (pred[x] >> w & 1) adm[x] &= f.box.succ[w];
  }

  auto make_relation = [&]() {
    Relation r = f.box;
    for (int x = 0; x < n; ++x) {
      if (!(maxima >> x & 1)) continue;
      r.add(x, x);
      for (int y = 0; y < n; ++y)
        if ((adm[x] >> y & 1) && coin(rng) < 0.3) r.add(x, y);
    }
    return r;
  };

  f.rosser_default = make_relation();
  for (Fml key : override_keys) f.rosser_overrides.emplace(key, make_relation());
  return f;
}

GRoModel random_model(uint64_t seed, int n, const FmlVec& override_keys,
                      const std::vector<std::string>& atoms) {
  GRoModel m;
  m.frame = random_frame(seed, n, override_keys);
  std::mt19937_64 rng(seed ^ 0x5bf03635u);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  m.valuation.resize(n);
  for (int w = 0; w < n; ++w)
    for (const std::string& p : atoms)
      if (coin(rng) < 0.5) m.valuation[w].insert(atom(p));
  return m;
}

namespace {

Fml gen_formula(std::mt19937_64& rng, int size, const FormulaGenOpts& opts, int rbox_left) {
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  if (size <= 1) {
    if (opts.atoms.empty() || coin(rng) < 0.15) return falsum();
    std::uniform_int_distribution<size_t> pick(0, opts.atoms.size() - 1);
    return atom(opts.atoms[pick(rng)]);
  }
  bool rbox_ok = opts.allow_rbox && rbox_left > 0;
  double w_neg = 1.0, w_box = opts.allow_box ? 1.0 : 0.0, w_rbox = rbox_ok ? 0.8 : 0.0;
  double w_or = size >= 3 ? 2.0 : 0.0;
  double total = w_neg + w_box + w_rbox + w_or;
  double roll = coin(rng) * total;
  if ((roll -= w_neg) < 0) return neg(gen_formula(rng, size - 1, opts, rbox_left));
  if ((roll -= w_box) < 0) return box(gen_formula(rng, size - 1, opts, rbox_left));
  if ((roll -= w_rbox) < 0) return rbox(gen_formula(rng, size - 1, opts, rbox_left - 1));
  std::uniform_int_distribution<int> split(1, size - 2);
  int ls = split(rng);
  Fml l = gen_formula(rng, ls, opts, rbox_left);
  Fml r = gen_formula(rng, size - 1 - ls, opts, rbox_left);
  return lor(l, r);
}

}  // namespace

Fml random_formula(std::mt19937_64& rng, int size, const FormulaGenOpts& opts) {
  if (size <= 0) throw std::invalid_argument("random_formula: size must be positive");
  return gen_formula(rng, size, opts, opts.max_rbox_nesting);
}

Fml random_formula(uint64_t seed, int size, const FormulaGenOpts& opts) {
  std::mt19937_64 rng(seed);
  return random_formula(rng, size, opts);
}

}  // namespace rosserlog
