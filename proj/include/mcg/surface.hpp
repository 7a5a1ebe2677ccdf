#pragma once

// The once-holed genus-g surface: pi_1 is free on x1, y1, ..., xg, yg and the
// boundary reads delta = [x1,y1][x2,y2]...[xg,yg]. Mapping classes act on
// pi_1 (based on the boundary) faithfully, so twist equalities are decided by
// comparing generator images.

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mcg/word.hpp"

namespace mcg {

using HomologyVector = std::vector<std::int64_t>;

/// Square integer matrix; column j is the image of basis vector j.
class IntMatrix {
 public:
  IntMatrix() = default;
  explicit IntMatrix(int n) : n_(n), data_(static_cast<std::size_t>(n) * n, 0) {}
  IntMatrix(int n, std::initializer_list<std::int64_t> row_major) : IntMatrix(n) {
    if (row_major.size() != data_.size()) throw InvalidArgument("IntMatrix: wrong entry count");
    std::copy(row_major.begin(), row_major.end(), data_.begin());
  }

  static IntMatrix identity(int n) {
    IntMatrix m(n);
    for (int i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  int size() const { return n_; }
  std::int64_t& operator()(int r, int c) { return data_[static_cast<std::size_t>(r) * n_ + c]; }
  std::int64_t operator()(int r, int c) const { return data_[static_cast<std::size_t>(r) * n_ + c]; }

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
    if (a.n_ != b.n_) throw RankMismatch("matrix sizes differ");
    IntMatrix out(a.n_);
    for (int i = 0; i < a.n_; ++i)
      for (int k = 0; k < a.n_; ++k) {
        const std::int64_t aik = a(i, k);
        if (aik == 0) continue;
        for (int j = 0; j < a.n_; ++j) out(i, j) += aik * b(k, j);
      }
    return out;
  }

  HomologyVector operator*(const HomologyVector& v) const {
    if (static_cast<int>(v.size()) != n_) throw RankMismatch("matrix/vector sizes differ");
    HomologyVector out(v.size(), 0);
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j) out[static_cast<std::size_t>(i)] += (*this)(i, j) * v[static_cast<std::size_t>(j)];
    return out;
  }

  IntMatrix pow(int k) const {
    IntMatrix out = identity(n_);
    for (int i = 0; i < k; ++i) out = out * *this;
    return out;
  }

  /// Fraction-free (Bareiss) elimination; exact for the small matrices used here.
  std::int64_t determinant() const {
    if (n_ == 0) return 1;
    IntMatrix m = *this;
    std::int64_t sign = 1, prev = 1;
    for (int k = 0; k < n_ - 1; ++k) {
      if (m(k, k) == 0) {
        int p = k + 1;
        while (p < n_ && m(p, k) == 0) ++p;
        if (p == n_) return 0;
        for (int j = 0; j < n_; ++j) std::swap(m(k, j), m(p, j));
        sign = -sign;
      }
      for (int i = k + 1; i < n_; ++i)
        for (int j = k + 1; j < n_; ++j) m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
      prev = m(k, k);
    }
    return sign * m(n_ - 1, n_ - 1);
  }

  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

 private:
  int n_ = 0;
  std::vector<std::int64_t> data_;
};

inline HomologyVector abelianize(const Word& w, int genus) {
  if (w.max_generator() > 2 * genus) throw RankMismatch("abelianize: word outside rank 2g");
  HomologyVector v(static_cast<std::size_t>(2 * genus), 0);
  for (Letter l : w.letters()) v[static_cast<std::size_t>(std::abs(l) - 1)] += l > 0 ? 1 : -1;
  return v;
}

/// Intersection form with <x_i, y_i> = +1 = -<y_i, x_i>.
inline std::int64_t symplectic_pairing(const HomologyVector& u, const HomologyVector& v) {
  if (u.size() != v.size() || u.size() % 2 != 0) throw RankMismatch("symplectic_pairing: length mismatch");
  std::int64_t s = 0;
  for (std::size_t i = 0; i + 1 < u.size(); i += 2) s += u[i] * v[i + 1] - u[i + 1] * v[i];
  return s;
}

/// Right-twist transvection v -> v + <v, h> h.
inline IntMatrix transvection_matrix(const HomologyVector& h) {
  const int n = static_cast<int>(h.size());
  IntMatrix m = IntMatrix::identity(n);
  for (int j = 0; j < n; ++j) {
    HomologyVector e(h.size(), 0);
    e[static_cast<std::size_t>(j)] = 1;
    const std::int64_t p = symplectic_pairing(e, h);
    for (int i = 0; i < n; ++i) m(i, j) += p * h[static_cast<std::size_t>(i)];
  }
  return m;
}

/// Induced map on H_1 of the rank-2g free group.
inline IntMatrix homology_matrix(const Endomorphism& e) {
  const int n = e.rank();
  if (n % 2 != 0) throw RankMismatch("homology_matrix: odd rank");
  IntMatrix m(n);
  for (int j = 0; j < n; ++j) {
    const HomologyVector col = abelianize(e.images()[static_cast<std::size_t>(j)], n / 2);
    for (int i = 0; i < n; ++i) m(i, j) = col[static_cast<std::size_t>(i)];
  }
  return m;
}

/// Closed-torus transvections for the meridian x and longitude y: {T_a, T_b}.
inline std::pair<IntMatrix, IntMatrix> sl2_twist_matrices() {
  return {transvection_matrix({1, 0}), transvection_matrix({0, 1})};
}

enum class TwistKind { alpha, beta, gamma };

/// One of the 3g-1 standard twist curves:
///   alpha_i = x_i, beta_i = y_i, gamma_i = x_i y_i^-1 x_{i+1}^-1 y_i.
/// alpha_i meets beta_i once, gamma_i meets beta_i and beta_{i+1} once, all
/// other pairs are disjoint.
struct TwistName {
  TwistKind kind = TwistKind::alpha;
  int index = 1;

  std::string str() const {
    const char* k = kind == TwistKind::alpha ? "alpha" : kind == TwistKind::beta ? "beta" : "gamma";
    return k + std::to_string(index);
  }

  static std::optional<TwistName> parse(std::string_view s) {
    for (auto [prefix, kind] : {std::pair{std::string_view("alpha"), TwistKind::alpha},
                                std::pair{std::string_view("beta"), TwistKind::beta},
                                std::pair{std::string_view("gamma"), TwistKind::gamma}}) {
      if (s.size() <= prefix.size() || s.substr(0, prefix.size()) != prefix) continue;
      const std::string_view digits = s.substr(prefix.size());
      if (digits[0] == '0') return std::nullopt;
      int v = 0;
      for (char c : digits) {
        if (c < '0' || c > '9' || v > 100000) return std::nullopt;
        v = v * 10 + (c - '0');
      }
      return TwistName{kind, v};
    }
    return std::nullopt;
  }

  friend auto operator<=>(const TwistName&, const TwistName&) = default;
};

struct TwistEntry {
  TwistName name;
  Endomorphism automorphism;
  Endomorphism inverse_automorphism;
  CurveClass curve;
  HomologyVector homology_class;
};

enum class Adjacency { disjoint, meet_once };

class SurfaceModel;
struct ConsistencyReport {
  std::vector<std::string> failures;
  bool ok() const { return failures.empty(); }
};
ConsistencyReport check_consistency(const SurfaceModel& model);

class SurfaceModel {
 public:
  /// Builds the model and runs the consistency suite; throws if any check fails.
  static SurfaceModel build(int genus) {
    if (genus < 1) throw InvalidArgument("surface genus must be >= 1");
    SurfaceModel m(genus);
    const ConsistencyReport rep = check_consistency(m);
    if (!rep.ok()) throw InvariantViolation("twist table failed consistency: " + rep.failures.front());
    return m;
  }

  int genus() const { return genus_; }
  int rank() const { return 2 * genus_; }
  const Word& boundary_word() const { return boundary_; }
  const std::map<TwistName, TwistEntry>& twists() const { return table_; }

  const TwistEntry* find(const TwistName& n) const {
    auto it = table_.find(n);
    return it == table_.end() ? nullptr : &it->second;
  }
  const TwistEntry& twist(const TwistName& n) const {
    if (const TwistEntry* e = find(n)) return *e;
    throw UnresolvedName("no twist " + n.str() + " in genus-" + std::to_string(genus_) + " model");
  }

  /// Declared intersection pattern of the standard curves.
  Adjacency adjacency(const TwistName& a, const TwistName& b) const {
    auto once = [](const TwistName& p, const TwistName& q) {
      if (p.kind == TwistKind::alpha && q.kind == TwistKind::beta) return p.index == q.index;
      if (p.kind == TwistKind::gamma && q.kind == TwistKind::beta)
        return q.index == p.index || q.index == p.index + 1;
      return false;
    };
    return once(a, b) || once(b, a) ? Adjacency::meet_once : Adjacency::disjoint;
  }

  /// The boundary twist: conjugation by delta.
  Endomorphism boundary_twist(int power = 1) const {
    const Word d = boundary_.pow(power);
    std::vector<Word> images;
    for (int k = 1; k <= rank(); ++k) images.push_back(conjugate(d, Word{k}));
    return Endomorphism(std::move(images));
  }

 private:
  explicit SurfaceModel(int genus) : genus_(genus) {
    for (int i = 1; i <= genus; ++i) boundary_ *= commutator(Word::x(i), Word::y(i));
    for (int i = 1; i <= genus; ++i) {
      add(TwistKind::alpha, i, Word::x(i));
      add(TwistKind::beta, i, Word::y(i));
    }
    for (int i = 1; i < genus; ++i)
      add(TwistKind::gamma, i, Word::x(i) * Word::y(i).inverse() * Word::x(i + 1).inverse() * Word::y(i));
  }

  void add(TwistKind kind, int i, const Word& curve) {
    const int r = rank();
    std::vector<Word> fwd = Endomorphism::identity(r).images();
    std::vector<Word> bwd = fwd;
    auto at = [](std::vector<Word>& v, int gen) -> Word& { return v[static_cast<std::size_t>(gen - 1)]; };
    const Word x = Word::x(i), y = Word::y(i);
    switch (kind) {
      case TwistKind::alpha:
        at(fwd, 2 * i) = y * x.inverse();
        at(bwd, 2 * i) = y * x;
        break;
      case TwistKind::beta:
        at(fwd, 2 * i - 1) = x * y;
        at(bwd, 2 * i - 1) = x * y.inverse();
        break;
      case TwistKind::gamma: {
        const Word xn = Word::x(i + 1), yn = Word::y(i + 1);
        const Word c = y * x.inverse() * y.inverse();  // y_i x_i^-1 y_i^-1
        at(fwd, 2 * i) = c * xn * y;
        at(fwd, 2 * i + 1) = c * xn * y * x * y.inverse();
        at(fwd, 2 * i + 2) = yn * xn.inverse() * y * x * y.inverse();
        at(bwd, 2 * i) = xn.inverse() * y * x;
        at(bwd, 2 * i + 1) = xn.inverse() * y * x * y.inverse() * xn * y * x.inverse() * y.inverse() * xn;
        at(bwd, 2 * i + 2) = yn * y * x.inverse() * y.inverse() * xn;
        break;
      }
    }
    TwistEntry e{TwistName{kind, i}, Endomorphism(std::move(fwd)), Endomorphism(std::move(bwd)),
                 curve_class(curve), abelianize(curve, genus_)};
    table_.emplace(e.name, std::move(e));
  }

  int genus_;
  Word boundary_;
  std::map<TwistName, TwistEntry> table_;
};

/// Separating iff null-homologous; trivial and boundary-parallel classes are rejected.
inline bool is_separating(const CurveClass& c, const SurfaceModel& model) {
  if (c.trivial()) throw InvalidArgument("is_separating: trivial curve class");
  if (c == curve_class(model.boundary_word()))
    throw InvalidArgument("is_separating: curve is boundary-parallel");
  for (std::int64_t v : abelianize(c.canonical(), model.genus()))
    if (v != 0) return false;
  return true;
}

/// Boundary fixed, inverses, braid/commutation per the adjacency table and
/// the abelianization square. Every failure is reported, not just the first.
inline ConsistencyReport check_consistency(const SurfaceModel& model) {
  ConsistencyReport rep;
  const Endomorphism id = Endomorphism::identity(model.rank());
  const Word& delta = model.boundary_word();
  if (static_cast<int>(delta.size()) != 4 * model.genus() || cyclic_reduce(delta) != delta)
    rep.failures.push_back("boundary word is not cyclically reduced of length 4g");
  if (static_cast<int>(model.twists().size()) != 3 * model.genus() - 1)
    rep.failures.push_back("twist table does not have 3g-1 entries");

  for (const auto& [name, t] : model.twists()) {
    const std::string n = name.str();
    if (apply(t.automorphism, delta) != delta) rep.failures.push_back(n + " moves the boundary word");
    if (!endo_equal(compose(t.automorphism, t.inverse_automorphism), id) ||
        !endo_equal(compose(t.inverse_automorphism, t.automorphism), id))
      rep.failures.push_back(n + " inverse does not invert");
    if (curve_class(apply(t.automorphism, t.curve.canonical())) != t.curve)
      rep.failures.push_back(n + " does not fix its own curve");
    if (homology_matrix(t.automorphism) != transvection_matrix(t.homology_class))
      rep.failures.push_back(n + " does not abelianize to its transvection");
  }

  for (const auto& [na, ta] : model.twists())
    for (const auto& [nb, tb] : model.twists()) {
      if (!(na < nb)) continue;
      const Endomorphism st = compose(ta.automorphism, tb.automorphism);
      const Endomorphism ts = compose(tb.automorphism, ta.automorphism);
      if (model.adjacency(na, nb) == Adjacency::disjoint) {
        if (!endo_equal(st, ts)) rep.failures.push_back(na.str() + "," + nb.str() + " declared disjoint but do not commute");
      } else {
        if (!endo_equal(compose(st, ta.automorphism), compose(ts, tb.automorphism)))
          rep.failures.push_back(na.str() + "," + nb.str() + " declared adjacent but fail the braid relation");
        if (endo_equal(st, ts)) rep.failures.push_back(na.str() + "," + nb.str() + " declared adjacent but commute");
      }
    }
  return rep;
}

}  // namespace mcg
