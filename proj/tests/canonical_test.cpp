#include <gtest/gtest.h>

#include <chrono>
#include <random>

#include "corpus.hpp"
#include "modal/canonical.hpp"
#include "modal/oracle.hpp"
#include "modal/parser.hpp"

using namespace modal;

namespace {

OracleConfig cfg(std::uint32_t k, SigmaSpec s = {}) {
  OracleConfig c;
  c.max_worlds = k;
  c.sigma = s;
  return c;
}

std::vector<SigmaSpec> elimination_sigmas() {
  auto out = subsets_tb4d();
  out.push_back(SigmaSpec::gl());
  return out;
}

// Model over the surviving members of C_{h,n}, related by the elimination edge.
struct TypeModel {
  std::vector<std::uint32_t> ids;
  Frame frame;
  AtomValuation val;
};

TypeModel type_model(const CanonicalFamily& F, const SigmaSpec& sigma) {
  TypeModel m;
  const auto& alive = consistent_members(F.level(), F.n(), sigma);
  for (std::uint32_t x = 0; x < F.size(); ++x)
    if (alive[x]) m.ids.push_back(x);
  const auto k = static_cast<std::uint32_t>(m.ids.size());
  m.frame = Frame(k);
  for (std::uint32_t a = 0; a < k; ++a)
    for (std::uint32_t b = 0; b < k; ++b)
      if (F.level() > 0 && elimination_edge(F, m.ids[a], m.ids[b], sigma)) m.frame.set_rel(a, b);
  for (std::uint32_t r = 0; r <= F.n(); ++r) {
    std::vector<bool> col(k);
    for (std::uint32_t a = 0; a < k; ++a) col[a] = (F.member(m.ids[a]).T >> r) & 1U;
    m.val.emplace(atom_of_rank(r), col);
  }
  return m;
}

}  // namespace

TEST(Sizes, SmallFamilies) {
  EXPECT_EQ(enumerate_canonical(0, 0).size(), 2u);
  EXPECT_EQ(enumerate_canonical(1, 0).size(), 8u);
  EXPECT_EQ(enumerate_canonical(1, 1).size(), 64u);
  EXPECT_EQ(enumerate_canonical(2, 0).size(), 512u);
  EXPECT_EQ(canonical_size(0, 3), 16u);
}

TEST(Sizes, CapReportsSizeExpression) {
  const auto t0 = std::chrono::steady_clock::now();
  try {
    enumerate_canonical(2, 1);
    FAIL();
  } catch (const CapExceeded& e) {
    EXPECT_EQ(e.size_expr(), "2^64·4");
    EXPECT_NE(std::string(e.what()).find("C_{2,1} has 2^64·4 members"), std::string::npos);
  }
  EXPECT_LT(std::chrono::steady_clock::now() - t0, std::chrono::seconds(1));
  EXPECT_THROW(enumerate_canonical(3, 0, 1000), CapExceeded);
}

TEST(Ids, OrderedByTThenSortedS) {
  const auto& F = CanonicalFamily::get(1, 0);
  std::vector<std::pair<std::uint32_t, std::vector<std::uint32_t>>> keys;
  for (const auto& a : F.members()) keys.emplace_back(a.T, a.s_ids());
  for (std::size_t i = 0; i + 1 < keys.size(); ++i) EXPECT_LT(keys[i], keys[i + 1]);
  for (std::uint32_t i = 0; i < F.size(); ++i) {
    EXPECT_EQ(F.member(i).id, i);
    EXPECT_EQ(F.find(F.member(i).T, F.member(i).S), i);
  }
}

TEST(Hat, Examples) {
  EXPECT_EQ(hat(1, 1), parse("p0 & !c0"));
  EXPECT_EQ(hat(0, 0), parse("!p0"));
  EXPECT_EQ(hat(1, 0), parse("p0"));
}

TEST(Oplus, Examples) {
  std::vector<Formula> c00;
  for (const auto& a : enumerate_canonical(0, 0)) c00.push_back(render_canonical(a));
  EXPECT_TRUE(oracle_valid(iff(oplus(c00), parse("p0 | !p0")), cfg(2)).valid);
  Formula a = parse("p0"), b = parse("p1");
  EXPECT_TRUE(oracle_valid(iff(oplus({a}), a), cfg(2)).valid);
  EXPECT_EQ(oplus({a, b}), disj(conj(a, neg(b)), conj(b, neg(a))));
  EXPECT_EQ(oplus({}), Formula::bottom());
}

TEST(Render, Examples) {
  const auto& F0 = CanonicalFamily::get(0, 0);
  const auto& F1 = CanonicalFamily::get(1, 0);
  EXPECT_EQ(render_canonical(F0.member(1)), parse("p0"));
  EXPECT_EQ(render_canonical(F1.member(F1.find(1, 0))), conj_all({top(), parse("[]bot"), parse("p0")}));
  EXPECT_EQ(render_canonical(F1.member(F1.find(1, 0b10))), conj_all({parse("<>p0"), parse("[]p0"), parse("p0")}));
}

TEST(Decides, Examples) {
  const auto& F1 = CanonicalFamily::get(1, 0);
  const auto& a = F1.member(F1.find(1, 0b10));
  EXPECT_TRUE(canonical_decides(a, parse("[]p0")));
  EXPECT_TRUE(oracle_valid(Formula::implies(render_canonical(a), parse("[]p0")), cfg(3)).valid);
  EXPECT_TRUE(canonical_decides(CanonicalFamily::get(0, 0).member(1), parse("p0")));
  const auto& e = F1.member(F1.find(1, 0));
  EXPECT_FALSE(canonical_decides(e, parse("<>p0")));
  EXPECT_TRUE(canonical_decides(e, parse("!<>p0")));
  EXPECT_TRUE(oracle_valid(Formula::implies(render_canonical(e), parse("!<>p0")), cfg(3)).valid);
  EXPECT_THROW(canonical_decides(e, parse("[][]p0")), std::invalid_argument);
  EXPECT_THROW(canonical_decides(e, parse("p1")), std::invalid_argument);
}

// decides(a, phi) must match K-validity of a -> phi. The structural model of a
// (root plus one world per S member) has 1+|S| worlds, which is the bound used.
TEST(Decides, AgreesWithOracleValidity) {
  std::mt19937_64 rng(41);
  const std::pair<std::uint32_t, std::uint32_t> grid[] = {{0, 0}, {0, 1}, {1, 0}, {1, 1}};
  for (auto [h, n] : grid) {
    const auto& F = CanonicalFamily::get(h, n);
    for (int i = 0; i < 40; ++i) {
      Formula phi = testing_corpus::random_in_language(rng, h, n, 4);
      const auto ext = canonical_extension(F, phi);
      for (const auto& a : F.members()) {
        const auto width = static_cast<std::uint32_t>(a.s_ids().size());
        if (width > 2) continue;
        const bool d = canonical_decides(a, phi);
        ASSERT_EQ(d, ext[a.id]);
        const bool v = oracle_valid(Formula::implies(render_canonical(a), phi), cfg(1 + width)).valid;
        ASSERT_EQ(d, v) << "alpha " << a.id << " phi " << render(phi);
      }
    }
  }
}

TEST(Decides, Dichotomy) {
  std::mt19937_64 rng(43);
  const auto& F = CanonicalFamily::get(2, 0);
  for (int i = 0; i < 100; ++i) {
    Formula phi = testing_corpus::random_in_language(rng, 2, 0, 5);
    const auto pos = canonical_extension(F, phi);
    const auto negx = canonical_extension(F, neg(phi));
    for (std::uint32_t x = 0; x < F.size(); ++x) EXPECT_NE(pos[x], negx[x]);
  }
}

TEST(Partition, EveryWorldSatisfiesExactlyOneMember) {
  for (auto [h, n] : {std::pair{0u, 0u}, {0u, 1u}, {1u, 0u}, {1u, 1u}}) {
    std::vector<Formula> rendered;
    for (const auto& a : enumerate_canonical(h, n)) rendered.push_back(render_canonical(a));
    std::vector<Formula> atoms;
    for (std::uint32_t r = 0; r <= n; ++r) atoms.push_back(Formula::atom(atom_of_rank(r)));
    for (const auto& f : enumerate_frames(cfg(2))) {
      const std::uint32_t k = f.size();
      for (std::uint64_t v = 0; v < (1ULL << ((n + 1) * k)); ++v) {
        AtomValuation val;
        for (std::uint32_t j = 0; j <= n; ++j) {
          std::vector<bool> col(k);
          for (World w = 0; w < k; ++w) col[w] = (v >> (j * k + w)) & 1ULL;
          val.emplace(atom_of_rank(j), col);
        }
        for (World w = 0; w < k; ++w) {
          int hits = 0;
          for (const auto& r : rendered) hits += eval_recursive(f, val, w, r) ? 1 : 0;
          ASSERT_EQ(hits, 1);
        }
      }
    }
  }
}

TEST(Project, Examples) {
  const auto& F1 = CanonicalFamily::get(1, 0);
  for (std::uint64_t S = 0; S < 4; ++S) {
    EXPECT_EQ(project(F1.member(F1.find(1, S))), CanonicalFamily::get(0, 0).member(1));
    EXPECT_EQ(project(F1.member(F1.find(0, S))), CanonicalFamily::get(0, 0).member(0));
  }
}

TEST(Project, UniqueAndEqualToTruncation) {
  for (auto [h, n] : {std::pair{1u, 0u}, {1u, 1u}, {2u, 0u}}) {
    const auto& F = CanonicalFamily::get(h, n);
    for (const auto& a : F.members()) {
      ASSERT_EQ(projection_count(a), 1u);
      EXPECT_EQ(project(a).id, F.truncate(a.id));
    }
  }
}

TEST(Consistency, Examples) {
  for (const auto& a : enumerate_canonical(1, 0)) EXPECT_TRUE(sigma_consistent(a, {}));
  const auto& F1 = CanonicalFamily::get(1, 0);
  EXPECT_FALSE(sigma_consistent(F1.member(F1.find(1, 0)), SigmaSpec{Axiom::D}));
  EXPECT_FALSE(oracle_consistent(F1.member(F1.find(1, 0)), SigmaSpec{Axiom::D}, 3));
  EXPECT_TRUE(sigma_consistent(CanonicalFamily::get(0, 0).member(1), SigmaSpec{Axiom::T}));
}

TEST(Consistency, Routes) {
  EXPECT_EQ(consistency_route({}), ConsistencyRoute::Structural);
  EXPECT_EQ(consistency_route(SigmaSpec::parse("T,4")), ConsistencyRoute::Elimination);
  EXPECT_EQ(consistency_route(SigmaSpec::gl()), ConsistencyRoute::Elimination);
  EXPECT_EQ(consistency_route(SigmaSpec::parse("4,5")), ConsistencyRoute::Cluster);
  EXPECT_EQ(consistency_route(SigmaSpec::parse("4,.2")), ConsistencyRoute::OracleBounded);
  EXPECT_THROW(consistency_route(SigmaSpec::parse("L,T")), std::invalid_argument);
}

// Satisfiable members are never eliminated.
TEST(Consistency, OracleSatisfiableImpliesConsistent) {
  for (const auto& sigma : elimination_sigmas())
    for (auto [h, n, k] : {std::tuple{1u, 0u, 4u}, {1u, 1u, 3u}, {2u, 0u, 3u}})
      for (const auto& a : enumerate_canonical(h, n))
        if (oracle_consistent(a, sigma, k)) ASSERT_TRUE(sigma_consistent(a, sigma)) << sigma.to_string() << " " << a.id;
}

// Surviving members are realised: the elimination model is a sigma-frame and
// each survivor forces its own rendering.
TEST(Consistency, SurvivorsAreRealised) {
  for (const auto& sigma : elimination_sigmas())
    for (auto [h, n] : {std::pair{1u, 0u}, {1u, 1u}, {2u, 0u}}) {
      const auto& F = CanonicalFamily::get(h, n);
      TypeModel m = type_model(F, sigma);
      ASSERT_TRUE(check_appropriate(m.frame, sigma)) << sigma.to_string();
      std::vector<Formula> rendered;
      for (auto id : m.ids) rendered.push_back(F.rendered(id));
      auto model = make_model(m.frame, m.val, rendered);
      for (std::uint32_t a = 0; a < m.ids.size(); ++a) ASSERT_TRUE(eval(model, a, rendered[a])) << sigma.to_string();
    }
}

TEST(Consistency, EuclideanRouteMatchesOracle) {
  for (const char* s : {"5", "4,5", "4,5,D", "5,D", "T,5", "B,5", "T,4,5", "5,.2", "T,B,4,5,D,.2"}) {
    const SigmaSpec sigma = SigmaSpec::parse(s);
    for (auto [h, n] : {std::pair{1u, 0u}, {2u, 0u}})
      for (const auto& a : enumerate_canonical(h, n))
        ASSERT_EQ(sigma_consistent(a, sigma), oracle_consistent(a, sigma, 3)) << s << " " << h << " " << a.id;
    for (const auto& a : enumerate_canonical(1, 1))
      if (oracle_consistent(a, sigma, 4)) ASSERT_TRUE(sigma_consistent(a, sigma)) << s;
  }
}

TEST(DiamondConsistency, AgreesWithOracle) {
  for (const auto& sigma : elimination_sigmas()) {
    const auto& F = CanonicalFamily::get(1, 0);
    for (const auto& a : F.members())
      for (const auto& b : F.members()) {
        const bool sat = oracle_satisfiable({render_canonical(a), dia(render_canonical(b))}, cfg(4, sigma)).has_value();
        ASSERT_EQ(diamond_consistent(a, b, sigma), sat) << sigma.to_string() << " " << a.id << " " << b.id;
      }
  }
}

TEST(DiamondConsistency, SoundOnLargerFamilies) {
  std::mt19937_64 rng(47);
  for (const auto& sigma : elimination_sigmas())
    for (auto [h, n] : {std::pair{1u, 1u}, {2u, 0u}}) {
      const auto& F = CanonicalFamily::get(h, n);
      std::uniform_int_distribution<std::uint32_t> pick(0, F.size() - 1);
      for (int i = 0; i < 150; ++i) {
        const auto& a = F.member(pick(rng));
        const auto& b = F.member(pick(rng));
        if (oracle_satisfiable({render_canonical(a), dia(render_canonical(b))}, cfg(3, sigma)))
          ASSERT_TRUE(diamond_consistent(a, b, sigma)) << sigma.to_string();
      }
    }
}
