#include <gtest/gtest.h>

#include "corpus.hpp"
#include "modal/oracle.hpp"
#include "modal/parser.hpp"
#include "modal/weak_model.hpp"

using namespace modal;

namespace {

SigmaSpec S(const char* s) { return SigmaSpec::parse(s); }

bool contained(const Frame& a, const Frame& b) {
  for (auto [x, y] : a.edges())
    if (!b.rel(x, y)) return false;
  return true;
}

// Small grid of targets: h <= 1 with n = 0, and h = 0 with n <= 1.
std::vector<Formula> grid() {
  std::vector<Formula> out;
  for (const auto& f : testing_corpus::exhaustive(5, 0, 1)) out.push_back(f);
  for (const auto& f : testing_corpus::exhaustive(5, 1, 0)) out.push_back(f);
  return out;
}

}  // namespace

TEST(CModel, TargetWorldsForP0) {
  WeakModel m = build_c_model(parse("p0"), {});
  EXPECT_EQ(m.size(), 8u);
  EXPECT_EQ(m.target_worlds().size(), 4u);
  WeakModelOptions literal;
  literal.worlds = WorldSet::EntailTarget;
  WeakModel l = build_c_model(parse("p0"), {}, literal);
  EXPECT_EQ(l.size(), 4u);
  const auto& F = CanonicalFamily::get(1, 0);
  for (auto id : l.ids) EXPECT_EQ(F.member(id).T, 1u);
}

TEST(CModel, FrameLemmas) {
  EXPECT_TRUE(is_reflexive(build_c_model(parse("p0"), S("T")).frame));
  EXPECT_TRUE(is_serial(build_c_model(parse("p0"), S("D")).frame));
  EXPECT_TRUE(is_symmetric(build_c_model(parse("p0"), S("B")).frame));
  EXPECT_TRUE(verify_weak_model(build_c_model(parse("p0"), S("T")), parse("p0"), S("T")).ok());
}

TEST(MModel, FrameLemmasAndInclusion) {
  for (const char* s : {"4", "T,4", "4,D", "T,4,D"}) {
    const Formula phi = parse("<>p0 -> []p0");
    WeakModel m = build_m_model(phi, S(s));
    EXPECT_TRUE(is_transitive(m.frame)) << s;
    if (S(s).has(Axiom::T)) EXPECT_TRUE(is_reflexive(m.frame)) << s;
    if (S(s).has(Axiom::D)) EXPECT_TRUE(is_serial(m.frame)) << s;
    WeakModel c = build_c_model(phi, S(s));
    ASSERT_EQ(c.ids, m.ids);
    EXPECT_TRUE(contained(c.frame, m.frame)) << s;
    EXPECT_TRUE(verify_weak_model(m, phi, S(s)).ok()) << s;
  }
}

TEST(MMModel, FrameLemmasAndInclusion) {
  for (const char* s : {"4,B", "T,4,B", "4,B,D", "T,B,4,D"}) {
    const Formula phi = parse("p0 -> <>p0");
    WeakModel m = build_mm_model(phi, S(s));
    EXPECT_TRUE(is_symmetric(m.frame) && is_transitive(m.frame)) << s;
    if (S(s).has(Axiom::T)) EXPECT_TRUE(is_reflexive(m.frame)) << s;
    WeakModel c = build_c_model(phi, S(s));
    EXPECT_TRUE(contained(c.frame, m.frame)) << s;
    EXPECT_TRUE(verify_weak_model(m, phi, S(s)).ok()) << s;
  }
}

TEST(DModel, FrameLemmasAndTarget) {
  const Formula phi = parse("![]bot");
  WeakModel d = build_d_model(phi);
  EXPECT_TRUE(is_transitive(d.frame));
  EXPECT_TRUE(is_irreflexive(d.frame));
  EXPECT_TRUE(is_cwf(d.frame));
  auto r = verify_weak_model(d, phi, SigmaSpec::gl());
  EXPECT_TRUE(r.ok());
  for (World w : d.target_worlds()) EXPECT_TRUE(eval(d.kripke(), w, phi));
  // m under GL contains c under GL.
  WeakModel m = build_m_model(phi, SigmaSpec::gl());
  WeakModel c = build_c_model(phi, SigmaSpec::gl());
  EXPECT_TRUE(contained(c.frame, m.frame));
  EXPECT_TRUE(contained(d.frame, m.frame));
}

TEST(DModel, EveryWorldHasFiniteDepth) {
  // Worlds with a box-bottom conjunct are the dead ends of the d-relation.
  WeakModel d = build_d_model(parse("<>p0"));
  auto k = extend_valuation(d.frame, d.atom_valuation(), sub_formulas(parse("[]bot")));
  for (World w = 0; w < d.size(); ++w) EXPECT_EQ(d.frame.successors(w).empty(), k.value(w, parse("[]bot")));
  EXPECT_THROW(build_d_model(parse("p0 & !p0")), InconsistentTarget);
}

TEST(Builders, StructuralRelationsMatch) {
  for (auto [h, n] : {std::pair{1u, 0u}, {1u, 1u}, {2u, 0u}}) {
    const auto& F = CanonicalFamily::get(h, n);
    WeakModelOptions opt;
    opt.h = h - 1;
    opt.n = n;
    const Formula phi = parse("p0 | !p0");
    for (auto [rel, check] : {std::pair{WeakRelation::M, &structural_m}, {WeakRelation::D, &structural_d},
                              {WeakRelation::S, &structural_s}}) {
      WeakModel m = rel == WeakRelation::D   ? build_d_model(phi, opt)
                    : rel == WeakRelation::S ? build_s_model(phi, S("4,5"), opt)
                                             : build_m_model(phi, S("4"), opt);
      for (World a = 0; a < m.size(); ++a)
        for (World b = 0; b < m.size(); ++b)
          ASSERT_EQ(m.frame.rel(a, b), check(F, m.ids[a], m.ids[b])) << relation_name(rel);
    }
  }
}

TEST(Verify, DetectsCorruptedEntry) {
  WeakModel m = build_c_model(parse("<>p0"), S("T"));
  ASSERT_TRUE(verify_weak_model(m, parse("<>p0"), S("T")).ok());
  m.val.at(parse("<>p0"))[2] = !m.val.at(parse("<>p0"))[2];
  auto r = verify_weak_model(m, parse("<>p0"), S("T"));
  EXPECT_FALSE(r.clauses);
  ASSERT_EQ(r.failures.size(), 1u);
  EXPECT_EQ(r.failures[0].world, 2u);
  EXPECT_EQ(r.failures[0].formula, parse("<>p0"));
}

TEST(Verify, TargetOnlyWorldSetBreaksTruthLemma) {
  // The witness world for <>!p0 does not entail the target, so it is missing.
  const Formula phi = parse("p0 & <>!p0");
  WeakModelOptions literal;
  literal.worlds = WorldSet::EntailTarget;
  auto r = verify_weak_model(build_c_model(phi, {}, literal), phi, {});
  EXPECT_FALSE(r.clauses);
  EXPECT_TRUE(verify_weak_model(build_c_model(phi, {}), phi, {}).ok());
}

TEST(Dispatch, CaseSplit) {
  EXPECT_EQ(dispatch_relation(S("T,B")), WeakRelation::C);
  EXPECT_EQ(dispatch_relation(S("4,D")), WeakRelation::M);
  EXPECT_EQ(dispatch_relation(S("4,B")), WeakRelation::MM);
  EXPECT_EQ(dispatch_relation(SigmaSpec::gl()), WeakRelation::D);
  EXPECT_THROW(dispatch_relation(S("5")), UnsupportedSigma);
  EXPECT_THROW(build_weak_model(parse("p0"), S("T,.2")), UnsupportedSigma);
  EXPECT_EQ(build_weak_model(parse("p0"), S("4,B")).relation, WeakRelation::MM);
}

TEST(Errors, InconsistentAndCap) {
  EXPECT_THROW(build_c_model(parse("p0 & !p0"), {}), InconsistentTarget);
  EXPECT_THROW(build_c_model(parse("[]bot"), S("D")), InconsistentTarget);
  EXPECT_THROW(build_c_model(parse("[][]p0 -> c0"), {}), CapExceeded);
}

TEST(TruthLemma, EveryBuilderOnGrid) {
  std::vector<SigmaSpec> sigmas = subsets_tb4d();
  sigmas.push_back(SigmaSpec::gl());
  for (const auto& sigma : sigmas)
    for (const auto& phi : grid()) {
      WeakModel m;
      try {
        m = build_weak_model(phi, sigma);
      } catch (const InconsistentTarget&) {
        continue;
      }
      auto r = verify_weak_model(m, phi, sigma);
      ASSERT_TRUE(r.ok()) << sigma.to_string() << " " << render(phi);
    }
}

TEST(SModel, FourFiveGridPasses) {
  for (const char* s : {"4,5", "4,5,D"})
    for (const auto& phi : grid()) {
      WeakModel m;
      try {
        m = build_s_model(phi, S(s));
      } catch (const InconsistentTarget&) {
        continue;
      }
      auto r = verify_weak_model(m, phi, S(s));
      ASSERT_TRUE(r.ok()) << s << " " << render(phi);
      if (S(s).has(Axiom::D)) EXPECT_TRUE(is_serial(m.frame));
    }
}

TEST(SModel, FiveAloneFailsWithOneBoxLevel) {
  // A root seeing only the p0 world of a two-world cluster entails <>p0 but
  // has no s-successor.
  const Formula phi = parse("<>p0");
  WeakModel m = build_s_model(phi, S("5"));
  auto r = verify_weak_model(m, phi, S("5"));
  EXPECT_FALSE(r.clauses);
  EXPECT_TRUE(r.appropriate);
  EXPECT_TRUE(verify_weak_model(build_s_model(phi, S("4,5")), phi, S("4,5")).ok());
}
