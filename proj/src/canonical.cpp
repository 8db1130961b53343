#include "modal/canonical.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <limits>
#include <numeric>
#include <optional>
#include <unordered_map>

namespace modal {

namespace {

std::string family_name(std::uint32_t h, std::uint32_t n) {
  return "C_{" + std::to_string(h) + "," + std::to_string(n) + "}";
}

// Lexicographic comparison of the ascending id sequences encoded by two masks.
bool sorted_set_less(std::uint64_t a, std::uint64_t b) {
  while (a != 0 && b != 0) {
    const int la = __builtin_ctzll(a);
    const int lb = __builtin_ctzll(b);
    if (la != lb) return la < lb;
    a &= a - 1;
    b &= b - 1;
  }
  return a == 0 && b != 0;
}

}  // namespace

CapExceeded::CapExceeded(std::uint32_t h, std::uint32_t n, std::string size, std::uint64_t cap)
    : std::runtime_error(family_name(h, n) + " has " + size + " members, exceeding the enumeration cap of " +
                         std::to_string(cap) + "; reduce h or n"),
      h_(h),
      n_(n),
      size_(std::move(size)) {}

std::uint64_t canonical_size(std::uint32_t h, std::uint32_t n) {
  if (n + 1 >= 64) return 0;
  if (h == 0) return 1ULL << (n + 1);
  const std::uint64_t below = canonical_size(h - 1, n);
  if (below == 0 || below + n + 1 >= 64) return 0;
  return 1ULL << (below + n + 1);
}

std::string canonical_size_expr(std::uint32_t h, std::uint32_t n) {
  const std::uint64_t exact = canonical_size(h, n);
  if (exact != 0) return std::to_string(exact);
  if (h == 0) return "2^" + std::to_string(n + 1);
  std::string below = canonical_size_expr(h - 1, n);
  if (below.find_first_not_of("0123456789") != std::string::npos) below = "(" + below + ")";
  const std::string tail = n + 1 < 64 ? std::to_string(1ULL << (n + 1)) : "2^" + std::to_string(n + 1);
  return "2^" + below + "·" + tail;
}

std::vector<std::uint32_t> CanonicalFormula::s_ids() const {
  std::vector<std::uint32_t> out;
  for (std::uint64_t m = S; m != 0; m &= m - 1) out.push_back(static_cast<std::uint32_t>(__builtin_ctzll(m)));
  return out;
}

const CanonicalFamily& CanonicalFamily::get(std::uint32_t h, std::uint32_t n, std::uint64_t cap) {
  const std::uint64_t size = canonical_size(h, n);
  if (size == 0 || size > cap) throw CapExceeded(h, n, canonical_size_expr(h, n), cap);
  static std::recursive_mutex mu;
  static std::map<std::pair<std::uint32_t, std::uint32_t>, std::unique_ptr<CanonicalFamily>> cache;
  std::lock_guard<std::recursive_mutex> lock(mu);
  auto key = std::make_pair(h, n);
  auto it = cache.find(key);
  if (it != cache.end()) return *it->second;
  std::unique_ptr<CanonicalFamily> fam(new CanonicalFamily(h, n));
  auto& ref = *fam;
  cache.emplace(key, std::move(fam));
  return ref;
}

CanonicalFamily::CanonicalFamily(std::uint32_t h, std::uint32_t n) : level_(h), n_(n) {
  const std::uint32_t tcount = 1U << (n + 1);
  if (h == 0) {
    for (std::uint32_t T = 0; T < tcount; ++T) {
      members_.push_back({0, n, T, 0, T});
      rendered_.push_back(hat(T, n));
    }
    return;
  }
  const CanonicalFamily& low = lower();
  lower_size_ = low.size();
  const std::uint64_t scount = 1ULL << lower_size_;
  std::vector<std::uint64_t> masks(scount);
  std::iota(masks.begin(), masks.end(), 0ULL);
  std::sort(masks.begin(), masks.end(), sorted_set_less);
  s_rank_.assign(scount, 0);
  for (std::uint64_t r = 0; r < scount; ++r) s_rank_[masks[r]] = static_cast<std::uint32_t>(r);
  members_.reserve(tcount * scount);
  for (std::uint32_t T = 0; T < tcount; ++T)
    for (std::uint64_t r = 0; r < scount; ++r)
      members_.push_back({h, n, T, masks[r], static_cast<std::uint32_t>(members_.size())});

  truncated_.resize(members_.size());
  rendered_.reserve(members_.size());
  for (const auto& m : members_) {
    if (h == 1) {
      truncated_[m.id] = m.T;
    } else {
      std::uint64_t s = 0;
      for (std::uint32_t b : m.s_ids()) s |= 1ULL << low.truncate(b);
      truncated_[m.id] = low.find(m.T, s);
    }
    std::vector<Formula> dias, alts;
    for (std::uint32_t b : m.s_ids()) {
      dias.push_back(dia(low.rendered(b)));
      alts.push_back(low.rendered(b));
    }
    rendered_.push_back(conj_all({conj_all(dias), Formula::box(disj_all(alts)), hat(m.T, n)}));
  }
}

std::uint32_t CanonicalFamily::find(std::uint32_t T, std::uint64_t S) const {
  if (level_ == 0) return T;
  return static_cast<std::uint32_t>((static_cast<std::uint64_t>(T) << lower_size_) + s_rank_.at(S));
}

const CanonicalFamily& CanonicalFamily::lower() const {
  if (level_ == 0) throw std::logic_error("level-0 family has no lower family");
  return get(level_ - 1, n_, std::numeric_limits<std::uint64_t>::max());
}

std::uint32_t CanonicalFamily::truncate(std::uint32_t id) const {
  if (level_ == 0) throw std::logic_error("level-0 members cannot be truncated");
  return truncated_.at(id);
}

const Formula& CanonicalFamily::rendered(std::uint32_t id) const { return rendered_.at(id); }

std::vector<CanonicalFormula> enumerate_canonical(std::uint32_t h, std::uint32_t n, std::uint64_t cap) {
  return CanonicalFamily::get(h, n, cap).members();
}

Formula hat(std::uint32_t T, std::uint32_t n) {
  std::vector<Formula> parts;
  for (std::uint32_t r = 0; r <= n; ++r) {
    Formula a = Formula::atom(atom_of_rank(r));
    parts.push_back((T >> r) & 1U ? a : neg(a));
  }
  return conj_all(parts);
}

Formula oplus(const std::vector<Formula>& xs) {
  std::vector<Formula> alts;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    std::vector<Formula> others;
    for (std::size_t j = 0; j < xs.size(); ++j)
      if (j != i) others.push_back(neg(xs[j]));
    alts.push_back(conj(xs[i], conj_all(others)));
  }
  return disj_all(alts);
}

Formula render_canonical(const CanonicalFormula& a) {
  return CanonicalFamily::get(a.level, a.n, std::numeric_limits<std::uint64_t>::max()).rendered(a.id);
}

bool canonical_decides(const CanonicalFormula& a, const Formula& phi) {
  if (!in_language(phi, a.level, a.n))
    throw std::invalid_argument("formula outside L_{" + std::to_string(a.level) + "," + std::to_string(a.n) + "}");
  switch (phi.kind()) {
    case NodeKind::Atom:
      if (phi.is_bottom()) return false;
      return (a.T >> atom_rank(phi.atom_value())) & 1U;
    case NodeKind::Implies:
      return !canonical_decides(a, phi.lhs()) || canonical_decides(a, phi.rhs());
    case NodeKind::Box: {
      const auto& low = CanonicalFamily::get(a.level - 1, a.n, std::numeric_limits<std::uint64_t>::max());
      for (std::uint32_t b : a.s_ids())
        if (!canonical_decides(low.member(b), phi.body())) return false;
      return true;
    }
  }
  return false;
}

std::vector<bool> canonical_extension(const CanonicalFamily& family, const Formula& phi) {
  const std::uint32_t h = family.level();
  if (!in_language(phi, h, family.n()))
    throw std::invalid_argument("formula outside L_{" + std::to_string(h) + "," + std::to_string(family.n()) + "}");
  std::vector<const CanonicalFamily*> fams(h + 1);
  fams[h] = &family;
  for (std::uint32_t k = h; k > 0; --k) fams[k - 1] = &fams[k]->lower();
  const std::vector<Formula> subs = sub_formulas(phi);
  std::unordered_map<Formula, std::size_t> index;
  for (std::size_t i = 0; i < subs.size(); ++i) index.emplace(subs[i], i);
  // ext[k][i] is the extension of subs[i] over C_{k,n}, for height(subs[i]) <= k.
  std::vector<std::vector<std::vector<bool>>> ext(h + 1, std::vector<std::vector<bool>>(subs.size()));
  for (std::uint32_t k = 0; k <= h; ++k) {
    const CanonicalFamily& F = *fams[k];
    for (std::size_t i = 0; i < subs.size(); ++i) {
      const Formula& g = subs[i];
      if (g.height() > k) continue;
      std::vector<bool> col(F.size(), false);
      if (g.is_atom()) {
        if (!g.is_bottom()) {
          const std::uint32_t r = atom_rank(g.atom_value());
          for (std::uint32_t x = 0; x < F.size(); ++x) col[x] = (F.member(x).T >> r) & 1U;
        }
      } else if (g.is_implies()) {
        const auto& a = ext[k][index.at(g.lhs())];
        const auto& b = ext[k][index.at(g.rhs())];
        for (std::uint32_t x = 0; x < F.size(); ++x) col[x] = !a[x] || b[x];
      } else {
        const auto& body = ext[k - 1][index.at(g.body())];
        std::uint64_t ok = 0;
        for (std::uint32_t y = 0; y < body.size(); ++y)
          if (body[y]) ok |= 1ULL << y;
        for (std::uint32_t x = 0; x < F.size(); ++x) col[x] = (F.member(x).S & ~ok) == 0;
      }
      ext[k][i] = std::move(col);
    }
  }
  return ext[h][index.at(phi)];
}

std::uint32_t projection_count(const CanonicalFormula& a) {
  if (a.level == 0) throw std::invalid_argument("level-0 canonical formulas have no projection");
  const auto& low = CanonicalFamily::get(a.level - 1, a.n, std::numeric_limits<std::uint64_t>::max());
  std::uint32_t count = 0;
  for (std::uint32_t b = 0; b < low.size(); ++b)
    if (canonical_decides(a, low.rendered(b))) ++count;
  return count;
}

CanonicalFormula project(const CanonicalFormula& a) {
  if (a.level == 0) throw std::invalid_argument("level-0 canonical formulas have no projection");
  const auto& low = CanonicalFamily::get(a.level - 1, a.n, std::numeric_limits<std::uint64_t>::max());
  std::optional<std::uint32_t> found;
  for (std::uint32_t b = 0; b < low.size(); ++b) {
    if (!canonical_decides(a, low.rendered(b))) continue;
    if (found) throw std::logic_error("projection is not unique");
    found = b;
  }
  if (!found) throw std::logic_error("projection is empty");
  return low.member(*found);
}

}  // namespace modal
