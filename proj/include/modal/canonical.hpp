#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "modal/formula.hpp"
#include "modal/sigma.hpp"

namespace modal {

inline constexpr std::uint64_t kDefaultCanonicalCap = 4096;

class CapExceeded : public std::runtime_error {
 public:
  CapExceeded(std::uint32_t h, std::uint32_t n, std::string size, std::uint64_t cap);
  [[nodiscard]] std::uint32_t h() const { return h_; }
  [[nodiscard]] std::uint32_t n() const { return n_; }
  [[nodiscard]] const std::string& size_expr() const { return size_; }

 private:
  std::uint32_t h_, n_;
  std::string size_;
};

// |C_{h,n}| as an exact decimal when it fits in 64 bits, else as 2^a·b.
std::string canonical_size_expr(std::uint32_t h, std::uint32_t n);
// Exact size, or nullopt-like 0 when it does not fit in 64 bits.
std::uint64_t canonical_size(std::uint32_t h, std::uint32_t n);

// Structural (S,T) form of a canonical formula. T is a bitmask over atom ranks
// 0..n; S is a bitmask over the ids of C_{level-1,n} (empty at level 0).
struct CanonicalFormula {
  std::uint32_t level = 0;
  std::uint32_t n = 0;
  std::uint32_t T = 0;
  std::uint64_t S = 0;
  std::uint32_t id = 0;

  [[nodiscard]] std::vector<std::uint32_t> s_ids() const;
  friend bool operator==(const CanonicalFormula&, const CanonicalFormula&) = default;
};

// C_{h,n} in (T, sorted S ids) lexicographic order; ids are positions.
class CanonicalFamily {
 public:
  // Cached; throws CapExceeded when |C_{h,n}| exceeds cap.
  static const CanonicalFamily& get(std::uint32_t h, std::uint32_t n, std::uint64_t cap = kDefaultCanonicalCap);

  [[nodiscard]] std::uint32_t level() const { return level_; }
  [[nodiscard]] std::uint32_t n() const { return n_; }
  [[nodiscard]] std::uint32_t size() const { return static_cast<std::uint32_t>(members_.size()); }
  [[nodiscard]] const CanonicalFormula& member(std::uint32_t id) const { return members_.at(id); }
  [[nodiscard]] const std::vector<CanonicalFormula>& members() const { return members_; }
  [[nodiscard]] std::uint32_t find(std::uint32_t T, std::uint64_t S) const;
  // C_{level-1,n}; throws at level 0.
  [[nodiscard]] const CanonicalFamily& lower() const;
  // Syntactic height-lowering: drop the innermost layer.
  [[nodiscard]] std::uint32_t truncate(std::uint32_t id) const;
  [[nodiscard]] const Formula& rendered(std::uint32_t id) const;

 private:
  CanonicalFamily(std::uint32_t h, std::uint32_t n);

  std::uint32_t level_, n_;
  std::uint32_t lower_size_ = 0;
  std::vector<CanonicalFormula> members_;
  std::vector<std::uint32_t> s_rank_;  // S mask -> rank in sorted-set order
  std::vector<std::uint32_t> truncated_;
  std::vector<Formula> rendered_;
};

std::vector<CanonicalFormula> enumerate_canonical(std::uint32_t h, std::uint32_t n,
                                                  std::uint64_t cap = kDefaultCanonicalCap);

Formula hat(std::uint32_t T, std::uint32_t n);
Formula oplus(const std::vector<Formula>& xs);
Formula render_canonical(const CanonicalFormula& a);

// K-provability of a -> phi by the select recursion. Throws
// std::invalid_argument when phi lies outside L_{level,n}.
bool canonical_decides(const CanonicalFormula& a, const Formula& phi);

// decides(a, phi) for every member of the family at once.
std::vector<bool> canonical_extension(const CanonicalFamily& family, const Formula& phi);

// Unique member of C_{level-1,n} entailed by a, found by search. Throws
// std::logic_error when zero or several match.
CanonicalFormula project(const CanonicalFormula& a);
// Number of members of C_{level-1,n} entailed by a.
std::uint32_t projection_count(const CanonicalFormula& a);

enum class ConsistencyRoute { Structural, Elimination, Cluster, OracleBounded };
std::string route_name(ConsistencyRoute r);

// Route used for a sigma (throws for sigma mixing L with other axioms).
ConsistencyRoute consistency_route(const SigmaSpec& sigma);

// Sigma-consistency of every member of C_{h,n}; cached.
const std::vector<bool>& consistent_members(std::uint32_t h, std::uint32_t n, const SigmaSpec& sigma);
bool sigma_consistent(const CanonicalFormula& a, const SigmaSpec& sigma);

// Sigma-consistency of phi: some sigma-consistent member of C_{h,n} entails
// it, for h and n the height and order of phi. Throws CapExceeded.
bool pipeline_consistent(const Formula& phi, const SigmaSpec& sigma, std::uint64_t cap = kDefaultCanonicalCap);

// Bounded oracle check of the same question, for cross-validation.
bool oracle_consistent(const CanonicalFormula& a, const SigmaSpec& sigma, std::uint32_t max_worlds);

// Sigma-consistency of a ∧ <>b for a, b in the same family. Supported for
// sigma within {T,B,4,D} and for GL.
bool diamond_consistent(const CanonicalFormula& a, const CanonicalFormula& b, const SigmaSpec& sigma);

// Filtration relation used by the elimination procedure at a's level.
bool elimination_edge(const CanonicalFamily& family, std::uint32_t a, std::uint32_t b, const SigmaSpec& sigma);

}  // namespace modal
