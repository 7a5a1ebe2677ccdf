#pragma once

// Mapping classes as words in named twists and named auxiliary classes.
//
// Composition follows the apply-first convention: in the word m1 * m2 the
// class m1 acts first. This is the opposite of function composition.

#include <cstdlib>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mcg/surface.hpp"
#include "mcg/word.hpp"

namespace mcg {

struct Factor {
  std::string name;  // a table twist ("alpha1") or an auxiliary label
  int exponent = 1;  // nonzero
  friend bool operator==(const Factor&, const Factor&) = default;
};

class MappingClassWord {
 public:
  MappingClassWord() = default;
  MappingClassWord(std::initializer_list<Factor> factors) {
    for (const Factor& f : factors) push(f);
  }
  explicit MappingClassWord(std::vector<Factor> factors) {
    for (Factor& f : factors) push(std::move(f));
  }

  static MappingClassWord twist(const TwistName& t, int exponent = 1) { return {{t.str(), exponent}}; }
  static MappingClassWord named(std::string name, int exponent = 1) { return {{std::move(name), exponent}}; }

  const std::vector<Factor>& factors() const { return factors_; }
  bool empty() const { return factors_.empty(); }
  std::size_t size() const { return factors_.size(); }

  MappingClassWord inverse() const {
    MappingClassWord out;
    for (auto it = factors_.rbegin(); it != factors_.rend(); ++it) out.factors_.push_back({it->name, -it->exponent});
    return out;
  }

  MappingClassWord pow(int n) const {
    const MappingClassWord base = n < 0 ? inverse() : *this;
    MappingClassWord out;
    for (int i = 0; i < std::abs(n); ++i) out *= base;
    return out;
  }

  MappingClassWord& operator*=(const MappingClassWord& rhs) {
    for (const Factor& f : rhs.factors_) factors_.push_back(f);
    return *this;
  }
  friend MappingClassWord operator*(MappingClassWord lhs, const MappingClassWord& rhs) { return lhs *= rhs; }

  friend bool operator==(const MappingClassWord&, const MappingClassWord&) = default;

 private:
  void push(Factor f) {
    if (f.exponent == 0) throw InvalidArgument("mapping class factor '" + f.name + "' has exponent 0");
    factors_.push_back(std::move(f));
  }
  std::vector<Factor> factors_;
};

/// [u, v] = u v u^-1 v^-1 in the apply-first convention.
inline MappingClassWord commutator(const MappingClassWord& u, const MappingClassWord& v) {
  return u * v * u.inverse() * v.inverse();
}

/// t_{phi(c)} written as phi^-1 * t_c * phi.
inline MappingClassWord conjugated_twist(const MappingClassWord& phi, const TwistName& t) {
  return phi.inverse() * MappingClassWord::twist(t) * phi;
}

inline std::string to_string(const MappingClassWord& m) {
  if (m.empty()) return "1";
  std::string out;
  for (std::size_t i = 0; i < m.size(); ++i) {
    const Factor& f = m.factors()[i];
    if (i) out += '*';
    out += TwistName::parse(f.name) ? "t[" + f.name + "]" : f.name;
    if (f.exponent != 1) out += "^" + std::to_string(f.exponent);
  }
  return out;
}

/// Named auxiliary mapping classes. A definition may only refer to table
/// twists and to labels defined earlier, so the table is acyclic.
class AuxTable {
 public:
  void define(const std::string& label, MappingClassWord def) {
    if (TwistName::parse(label)) throw InvalidArgument("aux label '" + label + "' shadows a table twist");
    if (defs_.count(label)) throw InvalidArgument("aux label '" + label + "' defined twice");
    for (const Factor& f : def.factors())
      if (!TwistName::parse(f.name) && !defs_.count(f.name))
        throw UnresolvedName("aux '" + label + "' refers to undefined name '" + f.name + "'");
    defs_.emplace(label, std::move(def));
  }

  bool contains(const std::string& label) const { return defs_.count(label) != 0; }
  const MappingClassWord& at(const std::string& label) const {
    auto it = defs_.find(label);
    if (it == defs_.end()) throw UnresolvedName("undefined mapping class '" + label + "'");
    return it->second;
  }
  const std::map<std::string, MappingClassWord>& definitions() const { return defs_; }

  /// Rewrites a word over table twists only, each factor with exponent +-1.
  MappingClassWord expand(const MappingClassWord& m) const {
    std::vector<Factor> out;
    expand_into(m, out);
    MappingClassWord w;
    for (Factor& f : out) w *= MappingClassWord{std::move(f)};
    return w;
  }

 private:
  void expand_into(const MappingClassWord& m, std::vector<Factor>& out) const {
    for (const Factor& f : m.factors()) {
      const int reps = std::abs(f.exponent);
      if (TwistName::parse(f.name)) {
        for (int i = 0; i < reps; ++i) out.push_back({f.name, f.exponent > 0 ? 1 : -1});
        continue;
      }
      const MappingClassWord& def = at(f.name);
      const MappingClassWord body = f.exponent > 0 ? def : def.inverse();
      for (int i = 0; i < reps; ++i) expand_into(body, out);
    }
  }

  std::map<std::string, MappingClassWord> defs_;
};

/// Homomorphism from words (apply-first) to endomorphisms under compose().
inline Endomorphism evaluate(const MappingClassWord& m, const SurfaceModel& model, const AuxTable& aux = {}) {
  Endomorphism result = Endomorphism::identity(model.rank());
  for (const Factor& f : m.factors()) {
    const int reps = std::abs(f.exponent);
    if (auto t = TwistName::parse(f.name)) {
      const TwistEntry& e = model.twist(*t);
      const Endomorphism& step = f.exponent > 0 ? e.automorphism : e.inverse_automorphism;
      for (int i = 0; i < reps; ++i) result = compose(result, step);
      continue;
    }
    const MappingClassWord& def = aux.at(f.name);
    const Endomorphism step = evaluate(f.exponent > 0 ? def : def.inverse(), model, aux);
    for (int i = 0; i < reps; ++i) result = compose(result, step);
  }
  return result;
}

inline bool mc_equal(const MappingClassWord& m1, const MappingClassWord& m2, const SurfaceModel& model,
                     const AuxTable& aux = {}) {
  return endo_equal(evaluate(m1, model, aux), evaluate(m2, model, aux));
}

inline CurveClass act_on_curve(const MappingClassWord& m, const CurveClass& c, const SurfaceModel& model,
                               const AuxTable& aux = {}) {
  return curve_class(apply(evaluate(m, model, aux), c.canonical()));
}

using CommutatorList = std::vector<std::pair<MappingClassWord, MappingClassWord>>;

inline MappingClassWord commutator_product(const CommutatorList& cl) {
  MappingClassWord out;
  for (const auto& [u, v] : cl) out *= commutator(u, v);
  return out;
}

struct FactorizationReport {
  bool verified = false;
  int commutator_count = 0;
};

inline FactorizationReport verify_commutator_factorization(const MappingClassWord& target, const CommutatorList& cl,
                                                           const SurfaceModel& model, const AuxTable& aux = {}) {
  return {mc_equal(target, commutator_product(cl), model, aux), static_cast<int>(cl.size())};
}

/// Splits a fully expanded word of the form w * t * w^-1 with t a table twist.
struct ConjugateForm {
  MappingClassWord conjugator;
  TwistName base;
};

inline std::optional<ConjugateForm> conjugate_form(const MappingClassWord& m, const AuxTable& aux = {}) {
  const MappingClassWord flat = aux.expand(m);
  const auto& f = flat.factors();
  if (f.size() % 2 == 0) return std::nullopt;
  const std::size_t mid = f.size() / 2;
  if (f[mid].exponent != 1) return std::nullopt;
  for (std::size_t i = 0; i < mid; ++i) {
    const Factor& l = f[mid - 1 - i];
    const Factor& r = f[mid + 1 + i];
    if (l.name != r.name || l.exponent != -r.exponent) return std::nullopt;
  }
  return ConjugateForm{MappingClassWord(std::vector<Factor>(f.begin(), f.begin() + static_cast<std::ptrdiff_t>(mid))),
                       *TwistName::parse(f[mid].name)};
}

/// The curve whose twist a conjugate form w * t_c * w^-1 is: w^-1 applied to c.
inline CurveClass curve_of(const ConjugateForm& cf, const SurfaceModel& model) {
  return act_on_curve(cf.conjugator.inverse(), model.twist(cf.base).curve, model);
}

}  // namespace mcg
