#include "modal/tableau.hpp"

#include <map>
#include <memory>
#include <set>

namespace modal {

namespace {

struct Signed {
  bool positive;
  Formula f;
};

struct TreeNode {
  std::map<Atom, bool> lits;
  std::vector<std::unique_ptr<TreeNode>> children;
};

struct Branch {
  std::set<std::pair<std::uint64_t, bool>> seen;
  std::map<Atom, bool> lits;
  std::vector<Formula> box_true;
  std::vector<Formula> box_false;
};

std::unique_ptr<TreeNode> solve(std::vector<Signed> todo, Branch br) {
  while (!todo.empty()) {
    const Signed s = todo.back();
    todo.pop_back();
    if (!br.seen.insert({s.f.id(), s.positive}).second) continue;
    switch (s.f.kind()) {
      case NodeKind::Atom: {
        if (s.f.is_bottom()) {
          if (s.positive) return nullptr;
          break;
        }
        auto [it, inserted] = br.lits.emplace(s.f.atom_value(), s.positive);
        if (!inserted && it->second != s.positive) return nullptr;
        break;
      }
      case NodeKind::Implies:
        if (s.positive) {
          auto left = todo;
          left.push_back({false, s.f.lhs()});
          if (auto r = solve(std::move(left), br)) return r;
          todo.push_back({true, s.f.rhs()});
        } else {
          todo.push_back({true, s.f.lhs()});
          todo.push_back({false, s.f.rhs()});
        }
        break;
      case NodeKind::Box:
        (s.positive ? br.box_true : br.box_false).push_back(s.f.body());
        break;
    }
  }
  auto node = std::make_unique<TreeNode>();
  node->lits = br.lits;
  for (const auto& a : br.box_false) {
    std::vector<Signed> next{{false, a}};
    for (const auto& b : br.box_true) next.push_back({true, b});
    auto child = solve(std::move(next), Branch{});
    if (!child) return nullptr;
    node->children.push_back(std::move(child));
  }
  return node;
}

void flatten(const TreeNode& t, std::vector<const TreeNode*>& nodes, std::vector<std::pair<World, World>>& edges) {
  const auto me = static_cast<World>(nodes.size());
  nodes.push_back(&t);
  for (const auto& c : t.children) {
    edges.emplace_back(me, static_cast<World>(nodes.size()));
    flatten(*c, nodes, edges);
  }
}

}  // namespace

std::optional<Witness> k_tableau(const std::vector<Formula>& conjuncts) {
  std::vector<Signed> todo;
  for (const auto& f : conjuncts) todo.push_back({true, f});
  auto root = solve(std::move(todo), Branch{});
  if (!root) return std::nullopt;
  std::vector<const TreeNode*> nodes;
  std::vector<std::pair<World, World>> edges;
  flatten(*root, nodes, edges);
  const auto k = static_cast<std::uint32_t>(nodes.size());
  Frame frame(k, edges);
  AtomValuation val;
  for (const auto& a : atoms_of(conjuncts)) {
    std::vector<bool> col(k, false);
    for (World w = 0; w < k; ++w) {
      auto it = nodes[w]->lits.find(a);
      col[w] = it != nodes[w]->lits.end() && it->second;
    }
    val.emplace(a, std::move(col));
  }
  return Witness{make_model(frame, val, conjuncts), 0};
}

bool k_consistent(const std::vector<Formula>& conjuncts) { return k_tableau(conjuncts).has_value(); }

}  // namespace modal
