// Acceptance run: one PASS/FAIL line per criterion, exit 1 if any fails.

#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "mcg/cli.hpp"
#include "support.hpp"

using namespace mcg;
using Clock = std::chrono::steady_clock;

namespace {

// Pinned limits, in seconds.
constexpr double kLanternLimit = 1.0;
constexpr double kTwoCommutatorLimit = 5.0;
constexpr double kSuiteLimit = 60.0;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome {
  bool pass = true;
  std::string note;
  void require(bool ok, const std::string& what) {
    if (ok) return;
    pass = false;
    note += (note.empty() ? "" : "; ") + what;
  }
};

int failures = 0;

void report(int id, const std::string& title, const std::function<Outcome()>& body) {
  const auto t0 = Clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o.pass = false;
    o.note = std::string("exception: ") + e.what();
  }
  if (!o.pass) ++failures;
  std::printf("criterion %2d %s  %-44s %7.3fs  %s\n", id, o.pass ? "PASS" : "FAIL", title.c_str(), seconds_since(t0),
              o.note.c_str());
  std::fflush(stdout);
}

struct Proc {
  int code = -1;
  std::string out;
};

Proc sh(const std::string& cmd) {
  Proc p;
  FILE* f = popen((cmd + " 2>&1").c_str(), "r");
  if (!f) return p;
  char buf[4096];
  while (std::fgets(buf, sizeof buf, f)) p.out += buf;
  const int st = pclose(f);
  p.code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return p;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  for (std::string item; std::getline(ss, item, ',');)
    if (!item.empty()) out.push_back(item);
  return out;
}

bool lantern_ok(const LanternCertificate& c, const SurfaceModel& m) {
  try {
    return verify_lantern(c, m).verified();
  } catch (const Error&) {
    return false;
  }
}

bool theorem2_ok(const Theorem2Certificate& c, const SurfaceModel& m) {
  try {
    return verify_theorem2(c, m).verified();
  } catch (const Error&) {
    return false;
  }
}

/// Applies every delete / negate / rename mutation to w in place, calling
/// check after each; returns the number of mutations that went unnoticed.
int mutate_all(MappingClassWord& w, const SurfaceModel& m, const std::function<bool()>& still_passes, int& total) {
  const MappingClassWord original = w;
  const auto names = mcg::testing::twist_names(m);
  int missed = 0;
  auto attempt = [&](std::vector<Factor> f) {
    w = MappingClassWord(std::move(f));
    ++total;
    if (still_passes()) ++missed;
    w = original;
  };
  for (std::size_t i = 0; i < original.size(); ++i) {
    std::vector<Factor> f = original.factors();
    f.erase(f.begin() + static_cast<long>(i));
    attempt(f);
    f = original.factors();
    f[i].exponent = -f[i].exponent;
    attempt(f);
    for (const std::string& n : names) {
      if (n == original.factors()[i].name) continue;
      f = original.factors();
      f[i].name = n;
      attempt(f);
    }
  }
  return missed;
}

}  // namespace

int main() {
  const auto suite_start = Clock::now();
  const SurfaceModel m3 = SurfaceModel::build(3), m4 = SurfaceModel::build(4);

  report(1, "lantern relation, genus 3", [&] {
    Outcome o;
    const auto t0 = Clock::now();
    const LanternReport r = verify_lantern(builtin_lantern(LanternVariant::nonseparating), SurfaceModel::build(3));
    const double dt = seconds_since(t0);
    o.require(r.verified() && r.relation, "relation does not hold");
    o.require(SurfaceModel::build(3).rank() == 6, "rank is not 6");
    o.require(dt < kLanternLimit, "took " + std::to_string(dt) + "s");
    return o;
  });

  report(2, "two commutators, both variants, genus 3 and 4", [&] {
    Outcome o;
    const auto t0 = Clock::now();
    for (auto v : {LanternVariant::nonseparating, LanternVariant::separating})
      for (const SurfaceModel* m : {&m3, &m4}) {
        const Theorem2Report r = verify_theorem2(builtin_theorem2(v), *m);
        const std::string at = to_string(v) + " g" + std::to_string(m->genus());
        o.require(r.f_a1_b2, at + ": F(a1) != b2");
        o.require(r.f_b1_a2, at + ": F(b1) != a2");
        o.require(r.k_b3_a3, at + ": K(b3) != a3");
        o.require(r.factorization.verified && r.factorization.commutator_count == 2, at + ": factorization");
        o.require(r.lantern.verified(), at + ": lantern");
      }
    const double dt = seconds_since(t0);
    o.require(dt < kTwoCommutatorLimit, "took " + std::to_string(dt) + "s");
    return o;
  });

  report(3, "one singular fiber over genus 2", [&] {
    Outcome o;
    for (auto v : {LanternVariant::nonseparating, LanternVariant::separating}) {
      const FibrationSpec s = build_theorem1_spec(3, 2, v);
      const std::string tag = to_string(v) + ": ";
      o.require(s.cycles.size() == 1, tag + "n != 1");
      o.require(validate(s, m3).verdict == Verdict::EXACT_RELATIVE, tag + "not EXACT_RELATIVE");
      o.require(euler_characteristic(s) == (2 - 2 * 3) * (2 - 2 * 2) + 1, tag + "e != 9");
      const FibrationSpec t = extend_base_by_fiber_sum(s, 1, m3);
      o.require(t.base_genus == 3 && validate(t, m3).verdict == Verdict::EXACT_RELATIVE, tag + "extension verdict");
      o.require(euler_characteristic(t) == 17, tag + "extended e != 17");
      o.require(reducible_fiber_count(s, m3) == (v == LanternVariant::separating ? 1 : 0), tag + "reducible count");
    }
    return o;
  });

  report(4, "signature arithmetic over the torus", [&] {
    Outcome o;
    for (int g = 1; g <= 50; ++g) o.require(feasibility(g, 1, 1).empty(), "g=" + std::to_string(g) + " nonempty");
    for (int g = 1; g <= 50; ++g) {
      const std::int64_t e = euler_characteristic(g, 1, 12);
      std::vector<FeasiblePoint> brute;
      for (std::int64_t s = -1000; s <= 1000; ++s) {
        if ((s + e) % 4 != 0) continue;
        const std::int64_t chi = (s + e) / 4, c = 3 * s + 2 * e;
        if (0 <= c && c <= 10 * chi) brute.push_back({s, chi, c});
      }
      const auto got = feasibility(g, 1, 12);
      o.require(got == brute, "g=" + std::to_string(g) + " differs from brute force");
      std::vector<std::int64_t> sig;
      for (const auto& p : got) sig.push_back(p.sigma);
      o.require(sig == std::vector<std::int64_t>{-8, -4, 0, 4, 8, 12}, "g=" + std::to_string(g) + " sigma set");
    }
    return o;
  });

  report(5, "genus 1", [&] {
    Outcome o;
    for (int n = 0; n <= 60; ++n) o.require(genus1_obstruction(n) == (n % 12 == 0), "n=" + std::to_string(n));
    const SurfaceModel m1 = SurfaceModel::build(1);
    FibrationSpec s;
    s.fiber_genus = 1;
    for (int i = 0; i < 6; ++i)
      for (TwistKind k : {TwistKind::alpha, TwistKind::beta})
        s.cycles.push_back({MappingClassWord::twist({k, 1}), m1.twist({k, 1}).curve});
    o.require(validate(s, m1).verdict == Verdict::EXACT_GENUS1, "(ab)^6 not EXACT_GENUS1");
    const auto [ta, tb] = sl2_twist_matrices();
    o.require((ta * tb).pow(6) == IntMatrix::identity(2), "(TaTb)^6 != I");
    return o;
  });

  report(6, "genus 2", [&] {
    Outcome o;
    int best = 1000, at_best = 0;
    CycleCensus where;
    for (int n = 0; n <= 20; ++n)
      for (int s = 0; s <= 20; ++s) {
        const bool pass = genus2_obstruction({n, s});
        o.require(pass == ((n + 2 * s) % 10 == 0), "n=" + std::to_string(n) + " s=" + std::to_string(s));
        if (!pass || n + s == 0) continue;
        if (n + s < best) best = n + s, at_best = 0, where = {n, s};
        if (n + s == best) ++at_best;
      }
    o.require(best == 5 && at_best == 1 && where == CycleCensus{0, 5}, "minimum is not 5 at (0,5) only");
    return o;
  });

  report(7, "model consistency, genus 1 to 4", [&] {
    Outcome o;
    for (int g = 1; g <= 4; ++g) {
      const SurfaceModel m = SurfaceModel::build(g);
      const ConsistencyReport r = check_consistency(m);
      o.require(r.ok(), "g=" + std::to_string(g) + ": " + (r.failures.empty() ? "" : r.failures.front()));
      o.require(static_cast<int>(m.twists().size()) == 3 * g - 1, "g=" + std::to_string(g) + " entry count");
    }
    int equal = 0;
    for (int i = 0; i < 500; ++i) {
      const MappingClassWord a = mcg::testing::random_mapping_class(m3, 20);
      // Every other pair is equal by inserting a cancelling pair.
      MappingClassWord b = mcg::testing::random_mapping_class(m3, 20);
      if (i % 2 == 0) {
        std::vector<Factor> f = a.factors();
        const auto at = f.begin() + mcg::testing::uniform(0, static_cast<int>(f.size()));
        f.insert(f.insert(at, {"gamma2", -1}), {"gamma2", 1});
        b = MappingClassWord(std::move(f));
      }
      if (!mc_equal(a, b, m3)) continue;
      ++equal;
      if (homology_matrix(evaluate(a, m3)) != homology_matrix(evaluate(b, m3))) o.require(false, "homology differs");
    }
    o.require(equal >= 250, "too few equal pairs");
    return o;
  });

  report(8, "word properties", [&] {
    Outcome o;
    using namespace mcg::testing;
    for (int t = 0; t < 1000; ++t) {
      std::vector<Letter> raw = random_letters(6, 25);
      const Word expected(raw);
      for (int k = uniform(1, 6); k > 0; --k) {
        const Letter l = random_letter(6);
        const auto at = raw.begin() + uniform(0, static_cast<int>(raw.size()));
        raw.insert(raw.insert(at, -l), l);
      }
      if (Word(raw) != expected) o.require(false, "confluence trial " + std::to_string(t));
    }
    for (int t = 0; t < 500; ++t) {
      const Word w = random_word(6, 15), u = random_word(6, 10);
      const CurveClass c = curve_class(w);
      if (curve_class(conjugate(u, w)) != c || curve_class(w.inverse()) != c)
        o.require(false, "curve class trial " + std::to_string(t));
    }
    for (int t = 0; t < 500; ++t) {
      const Endomorphism e1 = random_endomorphism(4, 4), e2 = random_endomorphism(4, 4);
      const Word w = random_word(4, 12);
      if (apply(compose(e1, e2), w) != apply(e2, apply(e1, w))) o.require(false, "order law trial " + std::to_string(t));
    }
    return o;
  });

  report(9, "single-factor mutations detected", [&] {
    Outcome o;
    int total = 0, missed = 0;
    for (auto v : {LanternVariant::nonseparating, LanternVariant::separating}) {
      Theorem2Certificate c = builtin_theorem2(v);
      std::vector<MappingClassWord*> words{&c.f, &c.k};
      for (auto& [name, w] : c.lantern.twist_words) words.push_back(&w);
      if (c.lantern.reference_twist_a) words.push_back(&*c.lantern.reference_twist_a);
      for (MappingClassWord* w : words) {
        missed += mutate_all(*w, m3, [&] { return theorem2_ok(c, m3); }, total);
      }
      LanternCertificate l = builtin_lantern(v);
      for (auto& [name, w] : l.twist_words) missed += mutate_all(w, m3, [&] { return lantern_ok(l, m3); }, total);
    }
    o.require(missed == 0, std::to_string(missed) + " of " + std::to_string(total) + " undetected");
    if (o.pass) o.note = std::to_string(total) + " mutations";
    return o;
  });

  report(10, "cli round trip, exit codes, suite time", [&] {
    Outcome o;
    for (const auto& e : std::filesystem::directory_iterator(CORPUS_DIR)) {
      if (e.path().extension() != ".mcg") continue;
      const dsl::CertificateFile f = dsl::parse(slurp(e.path()));
      o.require(dsl::parse(dsl::print(f)) == f, "round trip " + e.path().filename().string());
    }

    const std::string bin = MCGCERT_PATH, corpus = CORPUS_DIR, data = TEST_DATA_DIR;
    struct Case {
      std::string args;
      int code;
      std::string expect;
    };
    const std::vector<Case> cases{
        {"verify " + corpus + "/lantern_nonsep_g3.mcg", 0, "VERIFIED"},
        {"verify " + corpus + "/thm2_sep_g3.mcg", 0, "exit 0"},
        {"--report machine verify " + corpus + "/thm2_nonsep_g3.mcg", 0, "claim=two_commutators verdict=VERIFIED"},
        {"verify " + data + "/lantern_swapped.mcg", 1, "REFUTED"},
        {"verify " + data + "/genus1_single.mcg", 2, "OBSTRUCTED"},
        {"verify " + data + "/genus2_short.mcg", 2, "OBSTRUCTED"},
        {"verify " + data + "/syntax_error.mcg", 3, "6:1"},
        {"verify " + data + "/undefined_name.mcg", 3, "error"},
        {"validate " + corpus + "/genus1_twelve.mcg", 0, "EXACT_GENUS1"},
        {"validate " + corpus + "/genus2_chain.mcg", 0, "SUFFICIENT_CENTRAL"},
        {"certify-theorem2 --genus 3 --variant nonseparating", 0, "VERIFIED"},
        {"certify-theorem2 --genus 4 --variant separating", 0, "VERIFIED"},
        {"certify-theorem2 --genus 2", 3, "error"},
        {"bounds 2 0", 0, "lower=7 upper=8"},
        {"feasibility 5 1 1", 0, "EMPTY"},
        {"feasibility 2 1 12", 0, "sigma=12"},
        {"--report machine selftest", 0, "verdict=PASS"},
        {"twist-table --genus 2", 0, "beta2"},
        {"export lantern_sep_g3", 0, "[claims]"},
        {"no-such-command", 3, ""},
    };
    for (const Case& c : cases) {
      const Proc p = sh(bin + " " + c.args);
      o.require(p.code == c.code, "'" + c.args + "' exit " + std::to_string(p.code));
      o.require(p.out.find(c.expect) != std::string::npos, "'" + c.args + "' output");
    }

    // The unit binaries are rerun here so the wall clock covers everything.
    double unit_time = 0;
    for (const std::string& b : split_commas(UNIT_TEST_BINARIES)) {
      const auto t0 = Clock::now();
      const Proc p = sh(b + " --gtest_brief=1");
      unit_time += seconds_since(t0);
      o.require(p.code == 0, std::filesystem::path(b).filename().string() + " failed");
    }
    const double total = seconds_since(suite_start);
    o.require(total < kSuiteLimit, "suite took " + std::to_string(total) + "s");
    if (o.pass) {
      char buf[96];
      std::snprintf(buf, sizeof buf, "%zu cli runs, unit suites %.2fs, total %.2fs", cases.size(), unit_time, total);
      o.note = buf;
    }
    return o;
  });

  std::printf("%s\n", failures == 0 ? "ALL CRITERIA PASS" : "SOME CRITERIA FAIL");
  return failures == 0 ? 0 : 1;
}
