#include "modal/formula.hpp"

#include <algorithm>
#include <deque>
#include <mutex>
#include <set>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace modal {

struct Node {
  NodeKind kind;
  Atom atom;
  const Node* lhs;
  const Node* rhs;
  std::uint32_t height;
  std::uint32_t order;
  std::uint32_t size;
  std::uint64_t id;
};

namespace {

struct Key {
  NodeKind kind;
  Atom atom;
  const Node* lhs;
  const Node* rhs;
  bool operator==(const Key&) const = default;
};

struct KeyHash {
  std::size_t operator()(const Key& k) const noexcept {
    std::size_t h = static_cast<std::size_t>(k.kind) * 0x9e3779b97f4a7c15ULL;
    h ^= (static_cast<std::size_t>(k.atom.kind) << 40) ^ k.atom.index;
    h ^= std::hash<const void*>{}(k.lhs) + 0x9e3779b9 + (h << 6) + (h >> 2);
    h ^= std::hash<const void*>{}(k.rhs) + 0x9e3779b9 + (h << 6) + (h >> 2);
    return h;
  }
};

class Interner {
 public:
  const Node* get(const Key& k) {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = table_.find(k);
    if (it != table_.end()) return it->second;
    Node n{k.kind, k.atom, k.lhs, k.rhs, 0, 0, 1, nodes_.size()};
    switch (k.kind) {
      case NodeKind::Atom:
        n.order = k.atom.kind == AtomKind::Bottom ? 0 : atom_rank(k.atom);
        break;
      case NodeKind::Implies:
        n.height = std::max(k.lhs->height, k.rhs->height);
        n.order = std::max(k.lhs->order, k.rhs->order);
        n.size = 1 + k.lhs->size + k.rhs->size;
        break;
      case NodeKind::Box:
        n.height = k.lhs->height + 1;
        n.order = k.lhs->order;
        n.size = 1 + k.lhs->size;
        break;
    }
    nodes_.push_back(n);
    const Node* p = &nodes_.back();
    table_.emplace(k, p);
    return p;
  }

 private:
  std::mutex mu_;
  std::deque<Node> nodes_;
  std::unordered_map<Key, const Node*, KeyHash> table_;
};

Interner& interner() {
  static Interner in;
  return in;
}

}  // namespace

std::uint32_t atom_rank(const Atom& a) {
  if (a.kind == AtomKind::Bottom) throw std::invalid_argument("bottom has no rank");
  return a.kind == AtomKind::Var ? 2 * a.index : 2 * a.index + 1;
}

Atom atom_of_rank(std::uint32_t k) { return k % 2 == 0 ? Atom::var(k / 2) : Atom::constant(k / 2); }

std::string atom_name(const Atom& a) {
  switch (a.kind) {
    case AtomKind::Var: return "p" + std::to_string(a.index);
    case AtomKind::Const: return "c" + std::to_string(a.index);
    case AtomKind::Bottom: return "bot";
  }
  return "?";
}

Formula::Formula() : n_(interner().get({NodeKind::Atom, Atom::bottom(), nullptr, nullptr})) {}

Formula Formula::atom(const Atom& a) { return Formula(interner().get({NodeKind::Atom, a, nullptr, nullptr})); }

Formula Formula::implies(const Formula& a, const Formula& b) {
  return Formula(interner().get({NodeKind::Implies, Atom::bottom(), a.n_, b.n_}));
}

Formula Formula::box(const Formula& a) { return Formula(interner().get({NodeKind::Box, Atom::bottom(), a.n_, nullptr})); }

NodeKind Formula::kind() const { return n_->kind; }
bool Formula::is_bottom() const { return n_->kind == NodeKind::Atom && n_->atom.kind == AtomKind::Bottom; }
const Atom& Formula::atom_value() const { return n_->atom; }
Formula Formula::lhs() const { return Formula(n_->lhs); }
Formula Formula::rhs() const { return Formula(n_->rhs); }
Formula Formula::body() const { return Formula(n_->lhs); }
std::uint32_t Formula::height() const { return n_->height; }
std::uint32_t Formula::order() const { return n_->order; }
std::uint32_t Formula::size() const { return n_->size; }
std::uint64_t Formula::id() const { return n_->id; }

int structural_compare(const Formula& a, const Formula& b) {
  if (a == b) return 0;
  if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
  if (a.kind() != b.kind()) return a.kind() < b.kind() ? -1 : 1;
  switch (a.kind()) {
    case NodeKind::Atom: return a.atom_value() < b.atom_value() ? -1 : 1;
    case NodeKind::Box: return structural_compare(a.body(), b.body());
    case NodeKind::Implies: {
      int c = structural_compare(a.lhs(), b.lhs());
      return c != 0 ? c : structural_compare(a.rhs(), b.rhs());
    }
  }
  return 0;
}

Formula neg(const Formula& a) { return Formula::implies(a, Formula::bottom()); }
Formula top() { return neg(Formula::bottom()); }
Formula conj(const Formula& a, const Formula& b) { return neg(Formula::implies(a, neg(b))); }
Formula disj(const Formula& a, const Formula& b) { return Formula::implies(neg(a), b); }
Formula dia(const Formula& a) { return neg(Formula::box(neg(a))); }
Formula iff(const Formula& a, const Formula& b) { return conj(Formula::implies(a, b), Formula::implies(b, a)); }

Formula conj_all(const std::vector<Formula>& xs) {
  if (xs.empty()) return top();
  Formula acc = xs.front();
  for (std::size_t i = 1; i < xs.size(); ++i) acc = conj(acc, xs[i]);
  return acc;
}

Formula disj_all(const std::vector<Formula>& xs) {
  if (xs.empty()) return Formula::bottom();
  Formula acc = xs.front();
  for (std::size_t i = 1; i < xs.size(); ++i) acc = disj(acc, xs[i]);
  return acc;
}

std::optional<Formula> as_neg(const Formula& f) {
  if (f.is_implies() && f.rhs().is_bottom()) return f.lhs();
  return std::nullopt;
}

std::optional<Formula> as_dia(const Formula& f) {
  auto inner = as_neg(f);
  if (!inner || !inner->is_box()) return std::nullopt;
  return as_neg(inner->body());
}

std::optional<std::pair<Formula, Formula>> as_conj(const Formula& f) {
  auto inner = as_neg(f);
  if (!inner || !inner->is_implies()) return std::nullopt;
  auto b = as_neg(inner->rhs());
  if (!b) return std::nullopt;
  return std::make_pair(inner->lhs(), *b);
}

std::optional<std::pair<Formula, Formula>> as_disj(const Formula& f) {
  if (!f.is_implies()) return std::nullopt;
  auto a = as_neg(f.lhs());
  if (!a) return std::nullopt;
  return std::make_pair(*a, f.rhs());
}

std::uint32_t height(const Formula& f) { return f.height(); }
std::uint32_t order(const Formula& f) { return f.order(); }
bool in_language(const Formula& f, std::uint32_t h, std::uint32_t n) { return f.height() <= h && f.order() <= n; }

namespace {

void collect(const Formula& f, std::unordered_set<Formula>& seen, std::vector<Formula>& out) {
  if (seen.count(f)) return;
  if (f.is_implies()) {
    collect(f.lhs(), seen, out);
    collect(f.rhs(), seen, out);
  } else if (f.is_box()) {
    collect(f.body(), seen, out);
  }
  if (seen.insert(f).second) out.push_back(f);
}

}  // namespace

std::vector<Formula> sub_formulas(const Formula& f) { return sub_formulas(std::vector<Formula>{f}); }

std::vector<Formula> sub_formulas(const std::vector<Formula>& fs) {
  std::unordered_set<Formula> seen;
  std::vector<Formula> out;
  for (const auto& f : fs) collect(f, seen, out);
  return out;
}

std::vector<Atom> atoms_of(const Formula& f) { return atoms_of(std::vector<Formula>{f}); }

std::vector<Atom> atoms_of(const std::vector<Formula>& fs) {
  std::set<Atom> s;
  for (const auto& g : sub_formulas(fs))
    if (g.is_atom() && !g.is_bottom()) s.insert(g.atom_value());
  return {s.begin(), s.end()};
}

std::vector<std::uint32_t> variables_of(const Formula& f) {
  std::vector<std::uint32_t> out;
  for (const auto& a : atoms_of(f))
    if (a.kind == AtomKind::Var) out.push_back(a.index);
  return out;
}

Formula substitute(const Substitution& sigma, const Formula& f) {
  if (sigma.empty()) return f;
  std::unordered_map<Formula, Formula> memo;
  std::function<Formula(const Formula&)> go = [&](const Formula& g) -> Formula {
    auto it = memo.find(g);
    if (it != memo.end()) return it->second;
    Formula r;
    switch (g.kind()) {
      case NodeKind::Atom: {
        const Atom& a = g.atom_value();
        auto s = a.kind == AtomKind::Var ? sigma.find(a.index) : sigma.end();
        r = s != sigma.end() ? s->second : g;
        break;
      }
      case NodeKind::Implies: r = Formula::implies(go(g.lhs()), go(g.rhs())); break;
      case NodeKind::Box: r = Formula::box(go(g.body())); break;
    }
    memo.emplace(g, r);
    return r;
  };
  return go(f);
}

namespace {

bool match_into(const Formula& p, const Formula& t, Substitution& s) {
  if (p.is_atom()) {
    const Atom& a = p.atom_value();
    if (a.kind != AtomKind::Var) return p == t;
    auto [it, inserted] = s.emplace(a.index, t);
    return inserted || it->second == t;
  }
  if (p.kind() != t.kind()) return false;
  if (p.is_box()) return match_into(p.body(), t.body(), s);
  return match_into(p.lhs(), t.lhs(), s) && match_into(p.rhs(), t.rhs(), s);
}

}  // namespace

std::optional<Substitution> match_substitution(const Formula& pattern, const Formula& target) {
  Substitution s;
  if (!match_into(pattern, target, s)) return std::nullopt;
  return s;
}

Formula random_formula(std::mt19937_64& rng, std::uint32_t depth, std::uint32_t ranks) {
  std::uniform_int_distribution<std::uint32_t> pick(0, 9);
  const std::uint32_t c = depth == 0 ? 0 : pick(rng);
  if (c < 3) {
    std::uniform_int_distribution<std::uint32_t> atom(0, ranks);
    const std::uint32_t a = atom(rng);
    return a == ranks ? Formula::bottom() : Formula::atom(atom_of_rank(a));
  }
  if (c < 5) return Formula::box(random_formula(rng, depth - 1, ranks));
  Formula l = random_formula(rng, depth - 1, ranks);
  return Formula::implies(l, random_formula(rng, depth - 1, ranks));
}

}  // namespace modal
