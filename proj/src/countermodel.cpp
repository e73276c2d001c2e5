#include "rosserlog/countermodel.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <mutex>

#include "rosserlog/syntax.hpp"

namespace rosserlog {

namespace {

// Pair (i, j), i < j, encoded at bit j*(j-1)/2 + i. Enumerates every
// transitively closed edge set pointing from lower to higher world ids;
// every finite strict order is isomorphic to one of these.
std::vector<uint32_t> sorted_transitive_dags(int n) {
  static std::mutex mu;
  static std::map<int, std::vector<uint32_t>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;

  std::vector<uint32_t> out;
  // preds[k] for the partially built relation.
  std::vector<uint32_t> preds(n, 0);
  uint32_t encoding = 0;
  auto rec = [&](auto&& self, int k) -> void {
    if (k == n) {
      out.push_back(encoding);
      return;
    }
    int base = k * (k - 1) / 2;
    for (uint32_t in = 0; in < (1u << k); ++in) {
      // Predecessor-closed: anything below a chosen predecessor is in.
      bool closed = true;
      for (int x = 0; x < k && closed; ++x)
        if ((in >> x & 1) && (preds[x] & ~in)) closed = false;
      if (!closed) continue;
      preds[k] = in;
      encoding |= static_cast<uint32_t>(in) << base;
      self(self, k + 1);
      encoding &= ~(((1u << k) - 1u) << base);
      preds[k] = 0;
    }
  };
  rec(rec, 0);
  std::sort(out.begin(), out.end(), [](uint32_t a, uint32_t b) {
    int ca = std::popcount(a), cb = std::popcount(b);
    return ca != cb ? ca < cb : a < b;
  });
  cache.emplace(n, out);
  return out;
}

Relation decode_dag(uint32_t encoding, int n) {
  Relation r(n);
  for (int j = 1; j < n; ++j)
    for (int i = 0; i < j; ++i)
      if (encoding >> (j * (j - 1) / 2 + i) & 1) r.add(i, j);
  return r;
}

struct SearchContext {
  Fml target = nullptr;
  FmlVec topo;                    // subformulas, children first
  std::vector<int> index_of;      // topo index by formula id is impossible; use map
  std::map<Fml, int, FmlLess> index;
  FmlVec atoms;                   // all atoms of target
  FmlVec keys;                    // distinct Rosser payloads, ascending size
  bool serial_only = false;
};

SearchContext make_context(Fml a, bool serial_only) {
  SearchContext ctx;
  ctx.target = a;
  ctx.serial_only = serial_only;
  FmlSet subs = subformulas(a);
  ctx.topo.assign(subs.begin(), subs.end());
  std::sort(ctx.topo.begin(), ctx.topo.end(), FmlLess{});  // size-ascending: children first
  for (size_t i = 0; i < ctx.topo.size(); ++i) ctx.index.emplace(ctx.topo[i], static_cast<int>(i));
  FmlSet key_set;
  for (Fml f : ctx.topo) {
    if (f->is_atom()) ctx.atoms.push_back(f);
    if (f->kind() == Kind::RBox) key_set.insert(f->child());
  }
  ctx.keys.assign(key_set.begin(), key_set.end());  // FmlLess: ascending size
  return ctx;
}

// One fully specified candidate evaluation. Returns the mask of worlds
// refuting the target, or 0; fills the chosen override relations.
WorldMask eval_candidate(const SearchContext& ctx, const Relation& box,
                         const std::vector<WorldMask>& adm, WorldMask maxima,
                         WorldMask worlds_with_pred, const std::vector<WorldMask>& atom_masks,
                         uint64_t combo, std::vector<Relation>* chosen) {
  int n = box.n();
  WorldMask all = (n >= 64 ? ~WorldMask{0} : (WorldMask{1} << n) - 1);
  std::vector<WorldMask> mask(ctx.topo.size(), 0);
  std::vector<int> max_worlds;
  for (int w = 0; w < n; ++w)
    if (maxima >> w & 1) max_worlds.push_back(w);

  for (size_t i = 0; i < ctx.topo.size(); ++i) {
    Fml f = ctx.topo[i];
    switch (f->kind()) {
      case Kind::Falsum:
        mask[i] = 0;
        break;
      case Kind::Atom: {
        auto it = std::find(ctx.atoms.begin(), ctx.atoms.end(), f);
        mask[i] = atom_masks[it - ctx.atoms.begin()];
        break;
      }
      case Kind::Neg:
        mask[i] = ~mask[ctx.index.at(f->child())] & all;
        break;
      case Kind::Or:
        mask[i] = mask[ctx.index.at(f->left())] | mask[ctx.index.at(f->right())];
        break;
      case Kind::Box: {
        WorldMask body = mask[ctx.index.at(f->child())];
        for (int w = 0; w < n; ++w)
          if (!(box.succ[w] & ~body)) mask[i] |= WorldMask{1} << w;
        break;
      }
      case Kind::RBox: {
        Fml key = f->child();
        size_t key_idx = std::lower_bound(ctx.keys.begin(), ctx.keys.end(), key, FmlLess{}) -
                         ctx.keys.begin();
        WorldMask body = mask[ctx.index.at(key)];
        Relation rel = box;  // non-maximal worlds are forced to the box successors
        for (size_t mi = 0; mi < max_worlds.size(); ++mi) {
          int w = max_worlds[mi];
          bool force_false = combo >> (key_idx * max_worlds.size() + mi) & 1;
          WorldMask succ = force_false ? (adm[w] & ~body & all) : (adm[w] & body);
          bool need_nonempty =
              force_false || ctx.serial_only || (worlds_with_pred >> w & 1);
          if (need_nonempty && !succ) return 0;  // infeasible choice
          rel.succ[w] = succ;
        }
        if (chosen) (*chosen)[key_idx] = rel;
        for (int w = 0; w < n; ++w)
          if (!(rel.succ[w] & ~body)) mask[i] |= WorldMask{1} << w;
        break;
      }
    }
  }
  return ~mask[ctx.index.at(ctx.target)] & all;
}

void fill_phi_stats(Fml a, SearchStats& st) {
  FmlSet phi = phi_closure(neg(a));
  st.phi_size = phi.size();
  size_t boxed = 0;
  for (Fml f : phi)
    if (f->kind() == Kind::Box) ++boxed;
  // Chains of maximal inseparable pairs grow the boxed part strictly, so
  // worlds are bounded by (pairs)^(chain length): 2^(|phi|*(boxed+2)).
  st.theoretical_bound = std::pow(2.0, static_cast<double>(st.phi_size) *
                                           static_cast<double>(boxed + 2));
}

}  // namespace

SearchOutcome search_countermodel(Fml a, bool serial_only, const SearchOptions& opts) {
  SearchContext ctx = make_context(a, serial_only);
  SearchOutcome out;
  fill_phi_stats(a, out.stats);

  int max_n = std::min(opts.max_worlds, 16);
  for (int n = 1; n <= max_n; ++n) {
    out.stats.worlds_reached = n;
    WorldMask all = (WorldMask{1} << n) - 1;
    for (uint32_t enc : sorted_transitive_dags(n)) {
      Relation box = decode_dag(enc, n);
      WorldMask maxima = 0, with_pred = 0;
      for (int w = 0; w < n; ++w) {
        if (!box.succ[w]) maxima |= WorldMask{1} << w;
        with_pred |= box.succ[w];
      }
      std::vector<WorldMask> pred(n, 0), adm(n, all);
      for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
          if (box.contains(x, y)) pred[y] |= WorldMask{1} << x;
      for (int x = 0; x < n; ++x)
        for (int w = 0; w < n; ++w)
          if (pred[x] >> w & 1) adm[x] &= box.succ[w];

      int num_max = std::popcount(maxima);
      uint64_t combo_bits = static_cast<uint64_t>(ctx.keys.size()) * num_max;
      uint64_t num_combos = combo_bits >= 63 ? ~uint64_t{0} : uint64_t{1} << combo_bits;
      uint64_t num_vals = ctx.atoms.size() * n >= 63
                              ? ~uint64_t{0}
                              : uint64_t{1} << (ctx.atoms.size() * n);

      std::vector<WorldMask> atom_masks(ctx.atoms.size(), 0);
      for (uint64_t val = 0; val < num_vals; ++val) {
        for (size_t ai = 0; ai < ctx.atoms.size(); ++ai)
          atom_masks[ai] = (val >> (ai * n)) & all;
        std::vector<Relation> chosen(ctx.keys.size());
        for (uint64_t combo = 0; combo < num_combos; ++combo) {
          if (++out.stats.candidates > opts.max_candidates) return out;
          WorldMask refuted = eval_candidate(ctx, box, adm, maxima, with_pred, atom_masks,
                                             combo, &chosen);
          if (!refuted) continue;

          // Materialize and re-verify.
          GRoModel m;
          m.frame.n = n;
          m.frame.box = box;
          m.frame.rosser_default = canonical_rosser_default(box, serial_only);
          for (size_t ki = 0; ki < ctx.keys.size(); ++ki)
            m.frame.rosser_overrides.emplace(ctx.keys[ki], chosen[ki]);
          m.valuation.resize(n);
          for (size_t ai = 0; ai < ctx.atoms.size(); ++ai)
            for (int w = 0; w < n; ++w)
              if (atom_masks[ai] >> w & 1) m.valuation[w].insert(ctx.atoms[ai]);

          Certificate cert;
          cert.focus = std::countr_zero(refuted);
          if (serial_only && !is_nontrivial(m.frame)) {
            if (!is_serial(m.frame)) continue;
            m = add_root(m);
          }
          cert.model = std::move(m);
          cert.formula = a;
          cert.frame_report = validate_gro_frame(cert.model.frame);
          if (!cert.frame_report.ok) continue;
          if (eval(cert.model, cert.focus, a)) continue;
          if (serial_only &&
              (!is_serial(cert.model.frame) || !is_nontrivial(cert.model.frame)))
            continue;
          cert.verified = true;
          out.certificate = std::move(cert);
          return out;
        }
      }
    }
  }
  out.stats.exhausted = true;
  return out;
}

Certificate gl_countermodel(Decider& d, Fml a) {
  DecisionOutcome o = d.decide_gl(a);
  if (o.verdict == Verdict::Provable)
    throw PreconditionError("gl_countermodel: formula is provable");
  Certificate cert;
  cert.model = *o.countermodel;
  cert.focus = o.focus;
  cert.formula = a;
  cert.frame_report = validate_gro_frame(cert.model.frame);
  if (!cert.frame_report.ok || eval(cert.model, cert.focus, a))
    throw std::logic_error("gl_countermodel: certificate failed verification");
  cert.verified = true;
  return cert;
}

SearchOutcome gro_countermodel(Decider& d, Fml a, const SearchOptions& opts) {
  if (d.decide_gr_circ(a).verdict == Verdict::Provable)
    throw PreconditionError("gro_countermodel: formula is provable");
  return search_countermodel(a, false, opts);
}

SearchOutcome gr_countermodel(Decider& d, Fml a, const SearchOptions& opts) {
  if (d.decide_gr(a).verdict == Verdict::Provable)
    throw PreconditionError("gr_countermodel: formula is provable");
  return search_countermodel(a, true, opts);
}

}  // namespace rosserlog
