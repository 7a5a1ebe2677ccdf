#include <gtest/gtest.h>

#include <functional>

#include "mcg/certificates.hpp"
#include "support.hpp"

using namespace mcg;

namespace {

const SurfaceModel& model3() {
  static const SurfaceModel m = SurfaceModel::build(3);
  return m;
}

bool theorem2_passes(const Theorem2Certificate& c, const SurfaceModel& m) {
  try {
    return verify_theorem2(c, m).verified();
  } catch (const Error&) {
    return false;
  }
}

bool lantern_passes(const LanternCertificate& c, const SurfaceModel& m) {
  try {
    return verify_lantern(c, m).verified();
  } catch (const Error&) {
    return false;
  }
}

/// Every word of a certificate that a single-factor mutation can touch.
std::vector<std::pair<std::string, MappingClassWord*>> mutable_words(LanternCertificate& l) {
  std::vector<std::pair<std::string, MappingClassWord*>> out;
  for (auto& [name, w] : l.twist_words) out.emplace_back("twist " + name, &w);
  if (l.reference_twist_a) out.emplace_back("reference", &*l.reference_twist_a);
  return out;
}

struct Mutation {
  std::string label;
  std::function<void(MappingClassWord&)> apply;
};

std::vector<Mutation> single_factor_mutations(const MappingClassWord& w, const SurfaceModel& m) {
  std::vector<Mutation> out;
  const auto names = mcg::testing::twist_names(m);
  for (std::size_t i = 0; i < w.size(); ++i) {
    auto edit = [i](std::function<void(std::vector<Factor>&)> fn) {
      return [i, fn](MappingClassWord& target) {
        std::vector<Factor> f = target.factors();
        fn(f);
        target = MappingClassWord(std::move(f));
      };
    };
    const std::string at = "factor " + std::to_string(i);
    out.push_back({"delete " + at, edit([i](std::vector<Factor>& f) { f.erase(f.begin() + static_cast<long>(i)); })});
    out.push_back({"negate " + at, edit([i](std::vector<Factor>& f) { f[i].exponent = -f[i].exponent; })});
    for (const std::string& n : names)
      if (n != w.factors()[i].name)
        out.push_back({"rename " + at + " to " + n, edit([i, n](std::vector<Factor>& f) { f[i].name = n; })});
  }
  return out;
}

}  // namespace

TEST(Builtin, LanternNonseparating) {
  const auto c = std::get<LanternCertificate>(builtin_certificate("lantern_nonsep_g3"));
  EXPECT_EQ(c.genus, 3);
  EXPECT_EQ(c.curves.size(), 7u);
  EXPECT_FALSE(is_separating(c.curves.at("a"), model3()));
  const LanternReport r = verify_lantern(c, model3());
  EXPECT_TRUE(r.invariant_failures.empty());
  EXPECT_TRUE(r.relation);
  EXPECT_TRUE(r.verified());
}

TEST(Builtin, LanternSeparating) {
  const auto c = std::get<LanternCertificate>(builtin_certificate("lantern_sep_g3"));
  EXPECT_TRUE(is_separating(c.curves.at("a"), model3()));
  const LanternReport r = verify_lantern(c, model3());
  EXPECT_TRUE(r.invariant_failures.empty());
  EXPECT_TRUE(r.fixes_a);
  EXPECT_TRUE(r.fixes_disjoint);
  ASSERT_TRUE(r.matches_reference);
  EXPECT_TRUE(*r.matches_reference);
  EXPECT_TRUE(r.verified());
}

TEST(Builtin, Theorem2HasTwoCommutators) {
  const auto c = std::get<Theorem2Certificate>(builtin_certificate("thm2_nonsep_g3"));
  EXPECT_EQ(theorem2_pairs(c).size(), 2u);
}

TEST(Builtin, UnknownName) { EXPECT_THROW(builtin_certificate("lantern_g2"), InvalidArgument); }

TEST(Builtin, AllPassInvariantsAtLoad) {
  for (const std::string& n : builtin_names()) EXPECT_NO_THROW(builtin_certificate(n)) << n;
}

// Each stored twist word is w*t*w^-1 and w^-1 carries the table curve of t to the named curve.
TEST(Builtin, ConjugatorsCarryTableCurves) {
  for (auto v : {LanternVariant::nonseparating, LanternVariant::separating}) {
    const LanternCertificate c = builtin_lantern(v);
    for (const auto& [name, w] : c.twist_words) {
      const auto cf = conjugate_form(w);
      ASSERT_TRUE(cf) << name;
      EXPECT_EQ(act_on_curve(cf->conjugator.inverse(), model3().twist(cf->base).curve, model3()), c.curves.at(name))
          << name;
    }
  }
}

TEST(Builtin, BoundaryTwistsCommute) {
  for (auto v : {LanternVariant::nonseparating, LanternVariant::separating}) {
    const LanternCertificate c = builtin_lantern(v);
    const auto& t = c.twist_words;
    EXPECT_TRUE(mc_equal(t.at("a1") * t.at("a2"), t.at("a2") * t.at("a1"), model3()));
    EXPECT_TRUE(mc_equal(t.at("a1") * t.at("a3"), t.at("a3") * t.at("a1"), model3()));
    EXPECT_TRUE(mc_equal(t.at("a2") * t.at("a3"), t.at("a3") * t.at("a2"), model3()));
    EXPECT_TRUE(mc_equal(lantern_twist_a(c) * t.at("a1"), t.at("a1") * lantern_twist_a(c), model3()));
  }
}

TEST(VerifyLantern, GenusMismatch) {
  EXPECT_THROW(verify_lantern(builtin_lantern(LanternVariant::nonseparating), SurfaceModel::build(4)),
               InvalidArgument);
}

TEST(VerifyLantern, SwappedTwistWordsFail) {
  LanternCertificate c = builtin_lantern(LanternVariant::nonseparating);
  std::swap(c.twist_words.at("b1"), c.twist_words.at("b2"));
  const LanternReport r = verify_lantern(c, model3());
  EXPECT_FALSE(r.verified());
  EXPECT_FALSE(r.invariant_failures.empty());
}

// The relation itself, with the invariant layer out of the way.
TEST(VerifyLantern, DroppingATwistBreaksRelation) {
  LanternCertificate c = builtin_lantern(LanternVariant::nonseparating);
  const auto& t = c.twist_words;
  EXPECT_FALSE(mc_equal(t.at("a") * t.at("a1") * t.at("a2"), t.at("b1") * t.at("b2") * t.at("b3"), model3()));
  EXPECT_FALSE(mc_equal(t.at("a") * t.at("a1") * t.at("a2") * t.at("a3"), t.at("b2") * t.at("b1") * t.at("b3"),
                        model3()));
}

TEST(VerifyLantern, SeparatingDetectsWrongReference) {
  LanternCertificate c = builtin_lantern(LanternVariant::separating);
  c.reference_twist_a = MappingClassWord::named("alpha1").pow(6);
  EXPECT_FALSE(verify_lantern(c, model3()).verified());
}

TEST(VerifyLantern, VariantMismatchIsAnInvariantFailure) {
  LanternCertificate c = builtin_lantern(LanternVariant::nonseparating);
  c.variant = LanternVariant::separating;
  EXPECT_FALSE(verify_lantern(c, model3()).invariant_failures.empty());
}

TEST(TwoCommutators, BothVariantsWithConditions) {
  for (auto v : {LanternVariant::nonseparating, LanternVariant::separating}) {
    const Theorem2Report r = verify_theorem2(builtin_theorem2(v), model3());
    EXPECT_TRUE(r.f_a1_b2) << to_string(v);
    EXPECT_TRUE(r.f_b1_a2) << to_string(v);
    EXPECT_TRUE(r.k_b3_a3) << to_string(v);
    EXPECT_TRUE(r.factorization.verified) << to_string(v);
    EXPECT_EQ(r.factorization.commutator_count, 2);
    EXPECT_TRUE(r.verified());
  }
}

// Every equality survives inclusion into a larger surface.
TEST(TwoCommutators, StableUnderInclusion) {
  for (int g : {4, 5}) {
    const SurfaceModel m = SurfaceModel::build(g);
    for (auto v : {LanternVariant::nonseparating, LanternVariant::separating})
      EXPECT_TRUE(verify_theorem2(builtin_theorem2(v), m).verified()) << "g=" << g << " " << to_string(v);
  }
}

TEST(TwoCommutators, GenusTooSmall) {
  EXPECT_THROW(verify_theorem2(builtin_theorem2(LanternVariant::nonseparating), SurfaceModel::build(2)),
               InvalidArgument);
}

// The substitution t_{F(a1)} = f^-1 t_a1 f on the certificate's own data.
TEST(TwoCommutators, ConjugationBySubstitution) {
  const Theorem2Certificate c = builtin_theorem2(LanternVariant::nonseparating);
  const auto& t = c.lantern.twist_words;
  EXPECT_TRUE(mc_equal(c.f.inverse() * t.at("a1") * c.f, t.at("b2"), model3()));
  EXPECT_TRUE(mc_equal(c.f.inverse() * t.at("b1") * c.f, t.at("a2"), model3()));
  EXPECT_TRUE(mc_equal(c.k.inverse() * t.at("b3") * c.k, t.at("a3"), model3()));
}

TEST(PowerBound, Counts) {
  EXPECT_EQ(remark1_count(1, GenusRegime::g_ge_3), 2);
  EXPECT_EQ(remark1_count(2, GenusRegime::g_ge_3), 3);
  EXPECT_EQ(remark1_count(3, GenusRegime::g_ge_3), 5);
  EXPECT_EQ(remark1_count(3, GenusRegime::g_ge_4), 4);
  EXPECT_EQ(remark1_count(4, GenusRegime::g_ge_4), 4);
  EXPECT_THROW(remark1_count(0, GenusRegime::g_ge_3), InvalidArgument);
}

TEST(PowerCertificateTest, Examples) {
  const Theorem2Certificate c = builtin_theorem2(LanternVariant::nonseparating);
  const CommutatorList pairs = theorem2_pairs(c);

  const PowerReport one = verify_power_certificate({1, "a", pairs}, c.lantern, model3());
  EXPECT_TRUE(one.verified);
  EXPECT_EQ(one.commutator_count, 2);
  EXPECT_EQ(one.bound, 2);
  EXPECT_TRUE(one.within_bound);

  EXPECT_FALSE(verify_power_certificate({1, "a", {}}, c.lantern, model3()).verified);

  CommutatorList doubled = pairs;
  doubled.insert(doubled.end(), pairs.begin(), pairs.end());
  const PowerReport two = verify_power_certificate({2, "a", doubled}, c.lantern, model3());
  EXPECT_TRUE(two.verified);
  EXPECT_EQ(two.commutator_count, 4);
  EXPECT_EQ(two.bound, 3);
  EXPECT_FALSE(two.within_bound);

  EXPECT_THROW(verify_power_certificate({0, "a", pairs}, c.lantern, model3()), InvalidArgument);
  EXPECT_THROW(verify_power_certificate({1, "zz", pairs}, c.lantern, model3()), UnresolvedName);
}

// Every single-factor mutation (delete, negate, rename to any other table
// twist) of any stored word of any builtin flips at least one check.
TEST(Mutation, EverySingleFactorMutationIsDetected) {
  int total = 0;
  std::vector<std::string> undetected;
  for (auto v : {LanternVariant::nonseparating, LanternVariant::separating}) {
    const LanternCertificate lantern = builtin_lantern(v);
    {
      LanternCertificate probe = lantern;
      for (auto& [label, word] : mutable_words(probe)) {
        const MappingClassWord original = *word;
        for (const Mutation& mu : single_factor_mutations(original, model3())) {
          mu.apply(*word);
          ++total;
          if (lantern_passes(probe, model3())) undetected.push_back(lantern.name + " " + label + " " + mu.label);
          *word = original;
        }
      }
    }
    const Theorem2Certificate thm = builtin_theorem2(v);
    Theorem2Certificate probe = thm;
    std::vector<std::pair<std::string, MappingClassWord*>> words = mutable_words(probe.lantern);
    words.emplace_back("f", &probe.f);
    words.emplace_back("k", &probe.k);
    for (auto& [label, word] : words) {
      const MappingClassWord original = *word;
      for (const Mutation& mu : single_factor_mutations(original, model3())) {
        mu.apply(*word);
        ++total;
        if (theorem2_passes(probe, model3())) undetected.push_back(thm.lantern.name + " " + label + " " + mu.label);
        *word = original;
      }
    }
  }
  EXPECT_GT(total, 1000);
  for (const std::string& u : undetected) ADD_FAILURE() << "undetected: " << u;
}
