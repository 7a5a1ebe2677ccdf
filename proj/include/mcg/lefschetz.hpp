#pragma once

// Lefschetz fibrations as combinatorial monodromy data: vanishing cycles and
// images of the base handles. Validation checks the global relation
//
//   t_{c_1} * ... * t_{c_n} = [psi(x_1), psi(y_1)] * ... * [psi(x_h), psi(y_h)]
//
// with products in the apply-first order.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mcg/certificates.hpp"
#include "mcg/engine.hpp"
#include "mcg/obstructions.hpp"
#include "mcg/surface.hpp"

namespace mcg {

struct VanishingCycle {
  MappingClassWord twist;  // usually a conjugated table twist
  CurveClass curve;
};

struct FibrationSpec {
  int fiber_genus = 1;
  int base_genus = 0;
  std::vector<VanishingCycle> cycles;
  std::vector<MappingClassWord> monodromy;  // psi(x_1), psi(y_1), ..., psi(x_h), psi(y_h)
  AuxTable aux;
};

enum class Verdict { EXACT_RELATIVE, EXACT_GENUS1, SUFFICIENT_CENTRAL, HOMOLOGICAL_ONLY, OBSTRUCTED, REFUTED };

inline std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::EXACT_RELATIVE: return "EXACT_RELATIVE";
    case Verdict::EXACT_GENUS1: return "EXACT_GENUS1";
    case Verdict::SUFFICIENT_CENTRAL: return "SUFFICIENT_CENTRAL";
    case Verdict::HOMOLOGICAL_ONLY: return "HOMOLOGICAL_ONLY";
    case Verdict::OBSTRUCTED: return "OBSTRUCTED";
    case Verdict::REFUTED: return "REFUTED";
  }
  return "?";
}

struct CheckResult {
  std::string name;
  bool passed = false;
};

struct ValidationReport {
  Verdict verdict = Verdict::REFUTED;
  std::vector<CheckResult> details;
  CycleCensus census;
  std::optional<int> central_power;  // k with product = t_delta^k, for SUFFICIENT_CENTRAL

  std::optional<bool> check(const std::string& name) const {
    for (const CheckResult& c : details)
      if (c.name == name) return c.passed;
    return std::nullopt;
  }
};

inline std::int64_t euler_characteristic(int g, int h, std::int64_t n) {
  return static_cast<std::int64_t>(2 - 2 * g) * (2 - 2 * h) + n;
}

inline std::int64_t euler_characteristic(const FibrationSpec& spec) {
  return euler_characteristic(spec.fiber_genus, spec.base_genus, static_cast<std::int64_t>(spec.cycles.size()));
}

struct FeasiblePoint {
  std::int64_t sigma = 0;
  std::int64_t chi = 0;
  std::int64_t c1sq = 0;
  friend bool operator==(const FeasiblePoint&, const FeasiblePoint&) = default;
};

/// Signatures allowed by 0 <= c1^2 <= 10 chi with chi integral, where
/// c1^2 = 3 sigma + 2e and chi = (sigma + e) / 4.
inline std::vector<FeasiblePoint> feasibility(int g, int h, std::int64_t n) {
  if (g < 1) throw InvalidArgument("feasibility: fiber genus must be >= 1");
  if (h < 1) throw InvalidArgument("feasibility: base genus must be >= 1");
  if (n < 0) throw InvalidArgument("feasibility: negative number of singular fibers");
  const std::int64_t e = euler_characteristic(g, h, n);
  // 3 sigma + 2e >= 0 and 12 sigma + 8e <= 10 sigma + 10e give -2e/3 <= sigma <= e.
  std::int64_t lo = -2 * e / 3;
  if (3 * lo < -2 * e) ++lo;
  std::vector<FeasiblePoint> out;
  for (std::int64_t s = lo; s <= e; ++s) {
    if (((s + e) % 4 + 4) % 4 != 0) continue;
    const FeasiblePoint p{s, (s + e) / 4, 3 * s + 2 * e};
    if (p.c1sq >= 0 && p.c1sq <= 10 * p.chi) out.push_back(p);
  }
  return out;
}

/// Homology action of a word, multiplying transvection matrices of the
/// expanded table twists. The word m1 * m2 acts by H(m2) H(m1).
inline IntMatrix homology_of(const MappingClassWord& m, const SurfaceModel& model, const AuxTable& aux = {}) {
  IntMatrix out = IntMatrix::identity(model.rank());
  const MappingClassWord flat = aux.expand(m);
  for (const Factor& f : flat.factors()) {
    const TwistEntry& t = model.twist(*TwistName::parse(f.name));
    IntMatrix step = transvection_matrix(t.homology_class);
    if (f.exponent < 0) {
      // (T - I)^2 = 0, so the inverse transvection is 2I - T.
      for (int i = 0; i < model.rank(); ++i)
        for (int j = 0; j < model.rank(); ++j) step(i, j) = (i == j ? 2 : 0) - step(i, j);
    }
    out = step * out;
  }
  return out;
}

inline MappingClassWord cycle_product(const FibrationSpec& spec) {
  MappingClassWord out;
  for (const VanishingCycle& c : spec.cycles) out *= c.twist;
  return out;
}

inline MappingClassWord handle_product(const FibrationSpec& spec) {
  MappingClassWord out;
  for (std::size_t i = 0; i + 1 < spec.monodromy.size(); i += 2) out *= commutator(spec.monodromy[i], spec.monodromy[i + 1]);
  return out;
}

/// Structural problems with a spec; empty when well formed.
inline std::vector<std::string> spec_failures(const FibrationSpec& spec, const SurfaceModel& model) {
  std::vector<std::string> out;
  if (spec.fiber_genus < 1) out.push_back("fiber genus must be >= 1");
  if (spec.base_genus < 0) out.push_back("base genus must be >= 0");
  if (model.genus() != spec.fiber_genus)
    out.push_back("model genus " + std::to_string(model.genus()) + " != fiber genus " +
                  std::to_string(spec.fiber_genus));
  if (spec.cycles.empty()) out.push_back("a fibration needs at least one singular fiber");
  if (spec.monodromy.size() != 2 * static_cast<std::size_t>(std::max(spec.base_genus, 0)))
    out.push_back("expected " + std::to_string(2 * spec.base_genus) + " monodromy images, got " +
                  std::to_string(spec.monodromy.size()));
  if (!out.empty()) return out;

  for (std::size_t j = 0; j < spec.cycles.size(); ++j) {
    const VanishingCycle& c = spec.cycles[j];
    const std::string tag = "cycle " + std::to_string(j + 1);
    if (c.curve.trivial()) {
      out.push_back(tag + " is trivial");
      continue;
    }
    if (c.curve.canonical().max_generator() > model.rank()) {
      out.push_back(tag + " uses generators outside the fiber");
      continue;
    }
    if (c.curve == curve_class(model.boundary_word())) {
      out.push_back(tag + " is boundary-parallel");
      continue;
    }
    try {
      if (auto cf = conjugate_form(c.twist, spec.aux)) {
        if (curve_of(*cf, model) != c.curve) out.push_back(tag + ": twist word is about a different curve");
        continue;
      }
      // Not a conjugated table twist: require the necessary properties of t_c.
      if (act_on_curve(c.twist, c.curve, model, spec.aux) != c.curve)
        out.push_back(tag + ": twist word does not fix its curve");
      else if (homology_of(c.twist, model, spec.aux) !=
               transvection_matrix(abelianize(c.curve.canonical(), model.genus())))
        out.push_back(tag + ": twist word has the wrong homology action");
    } catch (const Error& e) {
      out.push_back(tag + ": " + e.what());
    }
  }
  for (const MappingClassWord& m : spec.monodromy) try {
      (void)spec.aux.expand(m);
    } catch (const Error& e) {
      out.push_back(std::string("monodromy: ") + e.what());
    }
  return out;
}

inline void require_well_formed(const FibrationSpec& spec, const SurfaceModel& model) {
  const auto f = spec_failures(spec, model);
  if (!f.empty()) throw InvalidArgument("malformed fibration spec: " + f.front());
}

inline std::vector<CurveClass> cycle_curves(const FibrationSpec& spec) {
  std::vector<CurveClass> out;
  for (const VanishingCycle& c : spec.cycles) out.push_back(c.curve);
  return out;
}

struct ValidateOptions {
  int central_min = 1;
  int central_max = -1;  // -1 means 4g+4
};

inline ValidationReport validate(const FibrationSpec& spec, const SurfaceModel& model, ValidateOptions opt = {}) {
  require_well_formed(spec, model);
  const int g = spec.fiber_genus, h = spec.base_genus;
  const auto n = static_cast<std::int64_t>(spec.cycles.size());
  ValidationReport r;
  r.census = classify_cycles(cycle_curves(spec), model);

  bool obstructed = false;
  auto note = [&](std::string name, bool ok) {
    r.details.push_back({std::move(name), ok});
    return ok;
  };
  if (g == 1) obstructed |= !note("genus1_mod12", genus1_obstruction(n));
  if (g == 2) obstructed |= !note("genus2_mod10", genus2_obstruction(r.census));
  if (h >= 1) obstructed |= !note("signature_feasible", !feasibility(g, h, n).empty());
  if (obstructed) {
    r.verdict = Verdict::OBSTRUCTED;
    return r;
  }

  const MappingClassWord lhs = cycle_product(spec), rhs = handle_product(spec);
  const bool homology = note("homology_equal", homology_of(lhs, model, spec.aux) == homology_of(rhs, model, spec.aux));

  if (g == 1) {
    // The closed torus mapping class group is SL(2,Z), so this check is exact.
    r.verdict = homology ? Verdict::EXACT_GENUS1 : Verdict::REFUTED;
    note("sl2_equal", homology);
    return r;
  }

  const Endomorphism el = evaluate(lhs, model, spec.aux);
  const Endomorphism er = evaluate(rhs, model, spec.aux);
  if (note("relative_equal", endo_equal(el, er))) {
    r.verdict = Verdict::EXACT_RELATIVE;
    return r;
  }
  if (h == 0) {
    const int kmax = opt.central_max < 0 ? 4 * g + 4 : opt.central_max;
    for (int k = std::max(opt.central_min, 1); k <= kmax; ++k) {
      if (endo_equal(el, model.boundary_twist(k))) {
        r.central_power = k;
        break;
      }
    }
    if (note("central_power", r.central_power.has_value())) {
      r.verdict = Verdict::SUFFICIENT_CENTRAL;
      return r;
    }
  }
  r.verdict = homology ? Verdict::HOMOLOGICAL_ONLY : Verdict::REFUTED;
  return r;
}

inline std::int64_t reducible_fiber_count(const FibrationSpec& spec, const SurfaceModel& model) {
  require_well_formed(spec, model);
  return classify_cycles(cycle_curves(spec), model).s_separating;
}

/// One singular fiber over a genus-h base, g >= 3, h >= 2: the vanishing cycle
/// is the lantern curve a and the first two handles carry the two commutators
/// for t_a. Remaining handles have trivial monodromy.
inline FibrationSpec build_theorem1_spec(int g, int h, LanternVariant variant) {
  if (g < 3) throw InvalidArgument("build_theorem1_spec: fiber genus must be >= 3");
  if (h < 2) throw InvalidArgument("build_theorem1_spec: base genus must be >= 2");
  const Theorem2Certificate c = builtin_theorem2(variant);
  FibrationSpec s;
  s.fiber_genus = g;
  s.base_genus = h;
  s.aux.define("f", c.f);
  s.aux.define("k", c.k);
  const MappingClassWord ta = variant == LanternVariant::nonseparating ? lantern_twist_a(c.lantern)
                                                                       : *c.lantern.reference_twist_a;
  s.cycles.push_back({ta, c.lantern.curves.at("a")});
  const auto& t = c.lantern.twist_words;
  s.monodromy = {t.at("b1") * t.at("a1").inverse(), MappingClassWord::named("f", -1), t.at("b3"),
                 MappingClassWord::named("k", -1)};
  for (int i = 2; i < h; ++i) {
    s.monodromy.emplace_back();
    s.monodromy.emplace_back();
  }
  return s;
}

/// Fiber sum with the trivial bundle over a genus-extra surface.
inline FibrationSpec extend_base_by_fiber_sum(const FibrationSpec& spec, int extra_genus, const SurfaceModel& model) {
  if (extra_genus < 1) throw InvalidArgument("extend_base_by_fiber_sum: extra genus must be >= 1");
  const Verdict v = validate(spec, model).verdict;
  if (v != Verdict::EXACT_RELATIVE && v != Verdict::EXACT_GENUS1)
    throw InvalidArgument("extend_base_by_fiber_sum: input spec validates only as " + to_string(v));
  FibrationSpec out = spec;
  out.base_genus += extra_genus;
  for (int i = 0; i < 2 * extra_genus; ++i) out.monodromy.emplace_back();
  return out;
}

struct BoundsEntry {
  int lower = 1;
  std::optional<int> upper;
  std::string notes;
};

/// Known lower and upper bounds on the minimal number of singular fibers of a
/// relatively minimal genus-g fibration over a genus-h base.
inline BoundsEntry known_bounds(int g, int h) {
  if (g < 1) throw InvalidArgument("known_bounds: fiber genus must be >= 1");
  if (h < 0) throw InvalidArgument("known_bounds: base genus must be >= 0");
  if (g == 1) return {12, 12, "count divisible by 12; realized"};
  if (g == 2 && h == 0) return {7, 8, "exactly one of 7, 8"};
  if (g == 2) return {5, 8, "equals 5 for all sufficiently large h; threshold not known"};
  if (h >= 2) return {1, 1, "a single separating or nonseparating fiber suffices"};
  if (h == 1) return {2, std::nullopt, "one fiber is ruled out by the signature bound"};
  const int lower = std::max(2, (4 * g + 2 + 4) / 5);
  return {lower, g % 2 == 0 ? 2 * g + 4 : 2 * g + 10, "sphere base"};
}

}  // namespace mcg
