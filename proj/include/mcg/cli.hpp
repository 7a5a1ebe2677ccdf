#pragma once

// Command-line front end. run() is the whole program; tools/mcgcert.cpp only
// forwards argv.
//
// Exit codes: 0 verified, 1 some claim refuted, 2 some claim obstructed or
// undecided, 3 malformed input, 4 internal invariant violation.

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "mcg/certificates.hpp"
#include "mcg/dsl.hpp"
#include "mcg/lefschetz.hpp"
#include "mcg/surface.hpp"

namespace mcg::cli {

enum Exit : int { ok = 0, refuted = 1, undecided = 2, malformed = 3, internal = 4 };

inline int exit_for(dsl::ClaimStatus s) {
  switch (s) {
    case dsl::ClaimStatus::verified: return ok;
    case dsl::ClaimStatus::refuted: return refuted;
    default: return undecided;
  }
}

/// Worst status wins: refuted, then obstructed or unknown, then verified.
inline int combine_exit(int a, int b) {
  auto rank = [](int c) { return c == refuted ? 2 : c == undecided ? 1 : 0; };
  return rank(a) >= rank(b) ? a : b;
}

struct Context {
  std::ostream& out;
  std::ostream& err;
  bool machine = false;
};

namespace detail {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidArgument("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::string join(const std::vector<std::string>& v) {
  std::string s;
  for (const std::string& x : v) s += (s.empty() ? "" : " ") + x;
  return s;
}

inline void emit(Context& c, const std::string& name, const std::string& verdict, const std::vector<std::string>& notes) {
  if (c.machine)
    c.out << "claim=" << name << " verdict=" << verdict << '\n';
  else
    c.out << name << ": " << verdict << (notes.empty() ? "" : "  (" + join(notes) + ")") << '\n';
}

inline dsl::Document load_file(const std::string& path) {
  const std::string text = read_file(path);
  try {
    return dsl::load(text);
  } catch (const dsl::DslError& e) {
    throw InvalidArgument(path + ":" + e.what());
  }
}

inline int cmd_verify(Context& c, const std::string& path) {
  const dsl::Document doc = load_file(path);
  int code = ok;
  for (const dsl::ResolvedClaim& rc : doc.claims) {
    const dsl::ClaimOutcome o = dsl::check_claim(rc, doc);
    std::vector<std::string> notes{o.kind};
    if (o.verdict) notes.push_back(to_string(*o.verdict));
    notes.insert(notes.end(), o.notes.begin(), o.notes.end());
    emit(c, o.name, to_string(o.status), notes);
    code = combine_exit(code, exit_for(o.status));
  }
  if (!c.machine) c.out << doc.claims.size() << " claim(s), exit " << code << '\n';
  return code;
}

inline int cmd_validate(Context& c, const std::string& path) {
  const dsl::Document doc = load_file(path);
  int code = ok, seen = 0;
  for (const dsl::ResolvedClaim& rc : doc.claims) {
    if (rc.kind != "fibration_valid") continue;
    ++seen;
    const dsl::ClaimOutcome o = dsl::check_claim(rc, doc);
    emit(c, o.name, to_string(*o.verdict), o.notes);
    code = combine_exit(code, exit_for(o.status));
  }
  if (seen == 0) throw InvalidArgument(path + ": no fibration_valid claims");
  return code;
}

inline int cmd_theorem2(Context& c, int genus, const std::string& variant_name) {
  const auto variant = parse_variant(variant_name);
  if (!variant) throw InvalidArgument("unknown variant '" + variant_name + "'");
  if (genus < 3) throw InvalidArgument("the two-commutator certificate needs genus >= 3");
  const SurfaceModel model = SurfaceModel::build(genus);
  const Theorem2Certificate cert = builtin_theorem2(*variant);
  const Theorem2Report r = verify_theorem2(cert, model);
  auto v = [](bool b) { return std::string(b ? "VERIFIED" : "REFUTED"); };
  std::vector<std::string> lnotes{"variant=" + to_string(*variant), "genus=" + std::to_string(genus)};
  for (const std::string& f : r.lantern.invariant_failures) lnotes.push_back("invariant: " + f);
  emit(c, "lantern", v(r.lantern.verified()), lnotes);
  emit(c, "f_a1_b2", v(r.f_a1_b2), {});
  emit(c, "f_b1_a2", v(r.f_b1_a2), {});
  emit(c, "k_b3_a3", v(r.k_b3_a3), {});
  emit(c, "two_commutators", v(r.factorization.verified),
       {"commutators=" + std::to_string(r.factorization.commutator_count)});
  return r.verified() ? ok : refuted;
}

inline int cmd_bounds(Context& c, int g, int h) {
  const BoundsEntry b = known_bounds(g, h);
  c.out << "lower=" << b.lower << " upper=" << (b.upper ? std::to_string(*b.upper) : "unknown") << '\n';
  if (!c.machine) c.out << "note: " << b.notes << '\n';
  return ok;
}

inline int cmd_feasibility(Context& c, int g, int h, long n) {
  const auto pts = feasibility(g, h, n);
  if (!c.machine) c.out << "e=" << euler_characteristic(g, h, n) << '\n';
  if (pts.empty()) c.out << "EMPTY\n";
  for (const FeasiblePoint& p : pts) c.out << "sigma=" << p.sigma << " chi=" << p.chi << " c1sq=" << p.c1sq << '\n';
  return ok;
}

inline int cmd_selftest(Context& c) {
  bool all = true;
  auto line = [&](const std::string& name, bool pass, const std::string& note = "") {
    all = all && pass;
    if (c.machine)
      c.out << "check=" << name << " verdict=" << (pass ? "PASS" : "FAIL") << '\n';
    else
      c.out << name << ": " << (pass ? "PASS" : "FAIL") << (note.empty() ? "" : "  " + note) << '\n';
  };
  for (int g = 1; g <= 4; ++g) {
    const SurfaceModel m = SurfaceModel::build(g);
    const ConsistencyReport r = check_consistency(m);
    line("consistency_g" + std::to_string(g), r.ok(), std::to_string(m.twists().size()) + " twists");
  }
  const SurfaceModel m3 = SurfaceModel::build(3);
  for (const std::string& name : builtin_names()) {
    const BuiltinCertificate b = builtin_certificate(name);
    const bool pass = std::holds_alternative<LanternCertificate>(b)
                          ? verify_lantern(std::get<LanternCertificate>(b), m3).verified()
                          : verify_theorem2(std::get<Theorem2Certificate>(b), m3).verified();
    line(name, pass);
  }
  if (!all) throw InvariantViolation("selftest failed");
  return ok;
}

inline std::string vector_string(const HomologyVector& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + ")";
}

inline int cmd_twist_table(Context& c, int genus) {
  const SurfaceModel m = SurfaceModel::build(genus);
  c.out << "genus=" << genus << " boundary=" << to_string(m.boundary_word()) << '\n';
  for (const auto& [name, t] : m.twists()) {
    c.out << name.str() << " curve=" << to_string(t.curve) << " homology=" << vector_string(t.homology_class) << '\n';
    if (c.machine) continue;
    for (int k = 1; k <= m.rank(); ++k) {
      const Word& img = t.automorphism.image(k);
      if (img == Word{k}) continue;
      c.out << "  " << letter_name(k) << " -> " << to_string(img) << '\n';
    }
  }
  return ok;
}

}  // namespace detail

/// Maps exceptions escaping a subcommand to exit codes.
template <class F>
int guarded(std::ostream& err, F&& body) {
  try {
    return body();
  } catch (const InvariantViolation& e) {
    err << "internal error: " << e.what() << '\n';
    return internal;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return malformed;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return internal;
  }
}

/// args excludes the program name.
inline int run(const std::vector<std::string>& args, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"Checks mapping class group certificates and Lefschetz fibration data."};
  app.name("mcgcert");
  app.require_subcommand(1);
  std::string report = "text";
  app.add_option("--report", report, "Output format")->check(CLI::IsMember({"text", "machine"}));

  std::string file;
  int g = 0, h = 0, genus = 3;
  long n = 0;
  std::string variant = "nonseparating", builtin;

  auto* verify = app.add_subcommand("verify", "Check every claim in a certificate file");
  verify->add_option("FILE", file)->required();
  auto* validate_cmd = app.add_subcommand("validate", "Validate the fibration specs in a file");
  validate_cmd->add_option("FILE", file)->required();
  auto* thm2 = app.add_subcommand("certify-theorem2", "Verify the builtin two-commutator certificate");
  thm2->add_option("--genus", genus, "Surface genus (>= 3)");
  thm2->add_option("--variant", variant, "nonseparating or separating");
  auto* bounds = app.add_subcommand("bounds", "Known bounds on the minimal number of singular fibers");
  bounds->add_option("G", g)->required();
  bounds->add_option("H", h)->required();
  auto* feas = app.add_subcommand("feasibility", "Signatures allowed by the c1^2 inequalities");
  feas->add_option("G", g)->required();
  feas->add_option("H", h)->required();
  feas->add_option("N", n)->required();
  auto* self = app.add_subcommand("selftest", "Run the model consistency suites and builtin certificates");
  auto* table = app.add_subcommand("twist-table", "Print the standard twist automorphisms");
  table->add_option("--genus", genus, "Surface genus (>= 1)");
  auto* exp = app.add_subcommand("export", "Print a builtin certificate as a certificate file");
  exp->add_option("NAME", builtin)->required()->check(CLI::IsMember(builtin_names()));

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? ok : malformed;
  }

  Context ctx{out, err, report == "machine"};
  return guarded(err, [&]() -> int {
    if (*verify) return detail::cmd_verify(ctx, file);
    if (*validate_cmd) return detail::cmd_validate(ctx, file);
    if (*thm2) return detail::cmd_theorem2(ctx, genus, variant);
    if (*bounds) return detail::cmd_bounds(ctx, g, h);
    if (*feas) return detail::cmd_feasibility(ctx, g, h, n);
    if (*self) return detail::cmd_selftest(ctx);
    if (*table) return detail::cmd_twist_table(ctx, genus);
    if (*exp) {
      out << dsl::print(dsl::export_builtin(builtin));
      return ok;
    }
    return malformed;
  });
}

}  // namespace mcg::cli
