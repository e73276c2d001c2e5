#include "rosserlog/formula.hpp"

#include <algorithm>
#include <deque>
#include <memory>
#include <mutex>
#include <unordered_map>

namespace rosserlog {

namespace {

struct NodeKey {
  Kind kind;
  std::string name;
  Fml payload;
  Fml lhs;
  Fml rhs;

  bool operator==(const NodeKey& o) const {
    return kind == o.kind && payload == o.payload && lhs == o.lhs && rhs == o.rhs &&
           name == o.name;
  }
};

struct NodeKeyHash {
  size_t operator()(const NodeKey& k) const {
    size_t h = static_cast<size_t>(k.kind);
    auto mix = [&h](size_t v) { h = h * 0x9e3779b97f4a7c15ull + v + (h >> 31); };
    mix(std::hash<std::string>{}(k.name));
    mix(reinterpret_cast<size_t>(k.payload));
    mix(reinterpret_cast<size_t>(k.lhs));
    mix(reinterpret_cast<size_t>(k.rhs));
    return h;
  }
};

}  // namespace

class Interner {
public:
  static Interner& instance() {
    static Interner interner;
    return interner;
  }

  Fml get(NodeKey key) {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = table_.find(key);
    if (it != table_.end()) return it->second;

    nodes_.push_back(std::unique_ptr<Formula>(new Formula()));
    Formula& node = *nodes_.back();
    node.kind_ = key.kind;
    node.name_ = key.name;
    node.payload_ = key.payload;
    node.lhs_ = key.lhs;
    node.rhs_ = key.rhs;
    node.id_ = static_cast<uint32_t>(nodes_.size() - 1);

    switch (key.kind) {
      case Kind::Falsum:
        break;
      case Kind::Atom:
        if (key.payload) {
          node.size_ = 1 + key.payload->size();
          // Indexed atoms are opaque variables: the payload only fixes
          // identity, it does not contribute occurrences or depth.
        }
        break;
      case Kind::Neg:
      case Kind::Box:
      case Kind::RBox: {
        Fml c = key.lhs;
        node.size_ = 1 + c->size();
        node.modal_depth_ = c->modal_depth() + (key.kind != Kind::Neg ? 1 : 0);
        node.rbox_depth_ = c->rbox_depth() + (key.kind == Kind::RBox ? 1 : 0);
        node.has_box_ = c->mentions_box() || key.kind == Kind::Box;
        node.has_rbox_ = c->mentions_rbox() || key.kind == Kind::RBox;
        break;
      }
      case Kind::Or: {
        Fml l = key.lhs;
        Fml r = key.rhs;
        node.size_ = 1 + l->size() + r->size();
        node.modal_depth_ = std::max(l->modal_depth(), r->modal_depth());
        node.rbox_depth_ = std::max(l->rbox_depth(), r->rbox_depth());
        node.has_box_ = l->mentions_box() || r->mentions_box();
        node.has_rbox_ = l->mentions_rbox() || r->mentions_rbox();
        break;
      }
    }

    Fml result = &node;
    table_.emplace(std::move(key), result);
    return result;
  }

private:
  std::mutex mutex_;
  std::deque<std::unique_ptr<Formula>> nodes_;
  std::unordered_map<NodeKey, Fml, NodeKeyHash> table_;
};

Fml falsum() { return Interner::instance().get({Kind::Falsum, {}, nullptr, nullptr, nullptr}); }

Fml atom(std::string_view name) {
  return Interner::instance().get({Kind::Atom, std::string(name), nullptr, nullptr, nullptr});
}

Fml qatom(Fml payload) {
  return Interner::instance().get({Kind::Atom, {}, payload, nullptr, nullptr});
}

Fml neg(Fml a) { return Interner::instance().get({Kind::Neg, {}, nullptr, a, nullptr}); }

Fml lor(Fml a, Fml b) { return Interner::instance().get({Kind::Or, {}, nullptr, a, b}); }

Fml box(Fml a) { return Interner::instance().get({Kind::Box, {}, nullptr, a, nullptr}); }

Fml rbox(Fml a) { return Interner::instance().get({Kind::RBox, {}, nullptr, a, nullptr}); }

Fml verum() { return neg(falsum()); }

Fml land(Fml a, Fml b) { return neg(lor(neg(a), neg(b))); }

Fml imp(Fml a, Fml b) { return lor(neg(a), b); }

Fml iff(Fml a, Fml b) { return land(imp(a, b), imp(b, a)); }

Fml dia(Fml a) { return neg(box(neg(a))); }

Fml rdia(Fml a) { return neg(rbox(neg(a))); }

int compare(Fml a, Fml b) {
  if (a == b) return 0;
  if (a->size() != b->size()) return a->size() < b->size() ? -1 : 1;
  if (a->kind() != b->kind())
    return static_cast<int>(a->kind()) < static_cast<int>(b->kind()) ? -1 : 1;
  switch (a->kind()) {
    case Kind::Falsum:
      return 0;
    case Kind::Atom:
      if (a->is_named_atom() != b->is_named_atom()) return a->is_named_atom() ? -1 : 1;
      if (a->is_named_atom()) return a->name().compare(b->name());
      return compare(a->payload(), b->payload());
    case Kind::Neg:
    case Kind::Box:
    case Kind::RBox:
      return compare(a->child(), b->child());
    case Kind::Or: {
      int c = compare(a->left(), b->left());
      return c != 0 ? c : compare(a->right(), b->right());
    }
  }
  return 0;
}

namespace {

// Precedence: 1 = disjunction, 2 = unary. '|' is left-associative.
void render_into(Fml a, int min_prec, std::string& out) {
  switch (a->kind()) {
    case Kind::Falsum:
      out += "bot";
      return;
    case Kind::Atom:
      if (a->is_named_atom()) {
        out += a->name();
      } else {
        out += "q{";
        render_into(a->payload(), 1, out);
        out += '}';
      }
      return;
    case Kind::Neg:
    case Kind::Box:
    case Kind::RBox:
      out += a->kind() == Kind::Neg ? "~" : a->kind() == Kind::Box ? "[]" : "[R]";
      render_into(a->child(), 2, out);
      return;
    case Kind::Or: {
      bool parens = min_prec > 1;
      if (parens) out += '(';
      render_into(a->left(), 1, out);
      out += " | ";
      render_into(a->right(), 2, out);
      if (parens) out += ')';
      return;
    }
  }
}

}  // namespace

std::string render(Fml a) {
  std::string out;
  render_into(a, 1, out);
  return out;
}

}  // namespace rosserlog
