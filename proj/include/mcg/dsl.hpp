#pragma once

// Text format for certificates and fibration specs.
//
//   file    := section+
//   section := "[surface]" "genus" "=" INT | "[curves]" assign* | "[aux]" assign* | "[claims]" claim*
//   assign  := NAME "=" expr
//   claim   := NAME ":" kind "(" arglist ")"
//   arglist := (arg ("," arg)*)?
//   arg     := INT | expr ("->" expr)?
//   expr    := term ("*" term)*
//   term    := atom ("^" SIGNED_INT)?
//   atom    := "t[" NAME "]" | "[" expr "," expr "]" | "(" expr ")" | NAME | GEN
//   GEN     := "x" INT | "y" INT
//
// In "f*g" the class f is applied first. "#" starts a comment that runs to
// the end of the line.
//
// In [curves] expressions denote free-group words. In [aux] and [claims] they
// denote mapping classes: t[alpha1] is a table twist, t[c] for a curve c is
// the twist word stored as the [aux] entry named c, and a bare NAME is an
// [aux] entry.

#include <cctype>
#include <charconv>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "mcg/certificates.hpp"
#include "mcg/engine.hpp"
#include "mcg/lefschetz.hpp"

namespace mcg::dsl {

/// Positions do not take part in structural equality.
struct SourcePos {
  int line = 1;
  int column = 1;
  friend bool operator==(const SourcePos&, const SourcePos&) { return true; }
};

class DslError : public Error {
 public:
  DslError(const std::string& msg, SourcePos pos)
      : Error(std::to_string(pos.line) + ":" + std::to_string(pos.column) + ": " + msg), pos_(pos) {}
  int line() const { return pos_.line; }
  int column() const { return pos_.column; }

 private:
  SourcePos pos_;
};

class SyntaxError : public DslError {
 public:
  using DslError::DslError;
};

class NameError : public DslError {
 public:
  using DslError::DslError;
};

// ---- syntax tree ----

enum class AtomKind { twist, commutator, group, name, generator };

struct Expr;

struct Atom {
  AtomKind kind = AtomKind::name;
  std::string name;        // twist target, NAME or GEN text
  std::vector<Expr> sub;   // two operands of a commutator, one for a group
  SourcePos pos;
  bool operator==(const Atom&) const;
};

struct Term {
  Atom atom;
  std::optional<int> exponent;
  friend bool operator==(const Term&, const Term&) = default;
};

struct Expr {
  std::vector<Term> terms;
  friend bool operator==(const Expr&, const Expr&) = default;
};

inline bool Atom::operator==(const Atom& o) const { return kind == o.kind && name == o.name && sub == o.sub; }

struct Arg {
  enum class Kind { integer, expr, maps } kind = Kind::expr;
  long value = 0;
  Expr lhs;
  Expr rhs;  // maps only
  SourcePos pos;
  friend bool operator==(const Arg&, const Arg&) = default;
};

struct Assign {
  std::string name;
  Expr expr;
  SourcePos pos;
  friend bool operator==(const Assign&, const Assign&) = default;
};

struct Claim {
  std::string name;
  std::string kind;
  std::vector<Arg> args;
  SourcePos pos;
  friend bool operator==(const Claim&, const Claim&) = default;
};

enum class SectionKind { surface, curves, aux, claims };

struct Section {
  SectionKind kind = SectionKind::surface;
  int genus = 0;
  std::vector<Assign> assigns;
  std::vector<Claim> claims;
  SourcePos pos;
  friend bool operator==(const Section&, const Section&) = default;
};

struct CertificateFile {
  std::vector<Section> sections;
  friend bool operator==(const CertificateFile&, const CertificateFile&) = default;
};

inline const std::vector<std::string>& claim_kinds() {
  static const std::vector<std::string> k{"lantern", "two_commutators", "power_factorization", "fibration_valid",
                                          "acts_on"};
  return k;
}

inline bool is_generator_name(std::string_view s) {
  if (s.size() < 2 || (s[0] != 'x' && s[0] != 'y') || s[1] == '0') return false;
  for (std::size_t i = 1; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  return true;
}

// ---- lexer ----

namespace detail {

enum class Tok { name, integer, lbrack, rbrack, lparen, rparen, comma, star, caret, equals, colon, arrow, minus, end };

struct Token {
  Tok kind;
  std::string text;
  SourcePos pos;
};

inline std::string describe(const Token& t) {
  if (t.kind == Tok::end) return "end of input";
  return "'" + t.text + "'";
}

inline std::vector<Token> lex(std::string_view src) {
  std::vector<Token> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < src.size()) {
    const char c = src[i];
    const SourcePos pos{line, col};
    if (c == '#') {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_')) ++j;
      out.push_back({Tok::name, std::string(src.substr(i, j - i)), pos});
      advance(j - i);
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      out.push_back({Tok::integer, std::string(src.substr(i, j - i)), pos});
      advance(j - i);
      continue;
    }
    if (src.substr(i, 2) == "->") {
      out.push_back({Tok::arrow, "->", pos});
      advance(2);
      continue;
    }
    if (src.substr(i, 3) == "\xE2\x86\x92") {  // U+2192
      out.push_back({Tok::arrow, "->", pos});
      i += 3;
      ++col;
      continue;
    }
    Tok k;
    switch (c) {
      case '[': k = Tok::lbrack; break;
      case ']': k = Tok::rbrack; break;
      case '(': k = Tok::lparen; break;
      case ')': k = Tok::rparen; break;
      case ',': k = Tok::comma; break;
      case '*': k = Tok::star; break;
      case '^': k = Tok::caret; break;
      case '=': k = Tok::equals; break;
      case ':': k = Tok::colon; break;
      case '-': k = Tok::minus; break;
      default: throw SyntaxError(std::string("unexpected character '") + c + "'", pos);
    }
    out.push_back({k, std::string(1, c), pos});
    advance(1);
  }
  out.push_back({Tok::end, "", {line, col}});
  return out;
}

class Parser {
 public:
  explicit Parser(std::string_view src) : toks_(lex(src)) {}

  CertificateFile file() {
    CertificateFile f;
    if (peek().kind == Tok::end) throw SyntaxError("expected a section header", peek().pos);
    while (peek().kind != Tok::end) f.sections.push_back(section());
    return f;
  }

 private:
  const Token& peek(std::size_t ahead = 0) const { return toks_[std::min(pos_ + ahead, toks_.size() - 1)]; }
  Token take() { return toks_[std::min(pos_++, toks_.size() - 1)]; }

  Token expect(Tok k, const char* what) {
    if (peek().kind != k) throw SyntaxError(std::string("expected ") + what + ", found " + describe(peek()), peek().pos);
    return take();
  }

  int integer(const Token& t) {
    int v = 0;
    auto [p, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
    if (ec != std::errc() || p != t.text.data() + t.text.size())
      throw SyntaxError("integer out of range '" + t.text + "'", t.pos);
    return v;
  }

  Section section() {
    Section s;
    s.pos = expect(Tok::lbrack, "a section header").pos;
    const Token name = expect(Tok::name, "a section name");
    expect(Tok::rbrack, "']'");
    if (name.text == "surface") {
      s.kind = SectionKind::surface;
      const Token kw = expect(Tok::name, "'genus'");
      if (kw.text != "genus") throw SyntaxError("expected 'genus', found " + describe(kw), kw.pos);
      expect(Tok::equals, "'='");
      s.genus = integer(expect(Tok::integer, "an integer"));
    } else if (name.text == "curves" || name.text == "aux") {
      s.kind = name.text == "curves" ? SectionKind::curves : SectionKind::aux;
      while (peek().kind == Tok::name) s.assigns.push_back(assign());
    } else if (name.text == "claims") {
      s.kind = SectionKind::claims;
      while (peek().kind == Tok::name) s.claims.push_back(claim());
    } else {
      throw SyntaxError("unknown section '" + name.text + "'", name.pos);
    }
    if (peek().kind != Tok::lbrack && peek().kind != Tok::end)
      throw SyntaxError("expected a definition or a section header, found " + describe(peek()), peek().pos);
    return s;
  }

  Assign assign() {
    Assign a;
    const Token n = take();
    a.name = n.text;
    a.pos = n.pos;
    expect(Tok::equals, "'='");
    a.expr = expr();
    return a;
  }

  Claim claim() {
    Claim c;
    const Token n = take();
    c.name = n.text;
    c.pos = n.pos;
    expect(Tok::colon, "':'");
    const Token kind = expect(Tok::name, "a claim kind");
    c.kind = kind.text;
    expect(Tok::lparen, "'('");
    if (peek().kind != Tok::rparen) {
      c.args.push_back(arg());
      while (peek().kind == Tok::comma) {
        take();
        c.args.push_back(arg());
      }
    }
    expect(Tok::rparen, "')'");
    return c;
  }

  Arg arg() {
    Arg a;
    a.pos = peek().pos;
    if (peek().kind == Tok::integer) {
      a.kind = Arg::Kind::integer;
      a.value = integer(take());
      return a;
    }
    a.lhs = expr();
    if (peek().kind == Tok::arrow) {
      take();
      a.kind = Arg::Kind::maps;
      a.rhs = expr();
    }
    return a;
  }

  Expr expr() {
    Expr e;
    e.terms.push_back(term());
    while (peek().kind == Tok::star) {
      take();
      e.terms.push_back(term());
    }
    return e;
  }

  Term term() {
    Term t;
    t.atom = atom();
    if (peek().kind == Tok::caret) {
      take();
      const bool neg = peek().kind == Tok::minus;
      if (neg) take();
      const int v = integer(expect(Tok::integer, "an exponent"));
      t.exponent = neg ? -v : v;
    }
    return t;
  }

  Atom atom() {
    Atom a;
    a.pos = peek().pos;
    if (peek().kind == Tok::name && peek().text == "t" && peek(1).kind == Tok::lbrack) {
      take();
      take();
      a.kind = AtomKind::twist;
      a.name = expect(Tok::name, "a twist name").text;
      expect(Tok::rbrack, "']'");
      return a;
    }
    switch (peek().kind) {
      case Tok::lbrack:
        take();
        a.kind = AtomKind::commutator;
        a.sub.push_back(expr());
        expect(Tok::comma, "','");
        a.sub.push_back(expr());
        expect(Tok::rbrack, "']'");
        return a;
      case Tok::lparen:
        take();
        a.kind = AtomKind::group;
        a.sub.push_back(expr());
        expect(Tok::rparen, "')'");
        return a;
      case Tok::name:
        a.name = take().text;
        a.kind = is_generator_name(a.name) ? AtomKind::generator : AtomKind::name;
        return a;
      default:
        throw SyntaxError("expected an expression, found " + describe(peek()), peek().pos);
    }
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline CertificateFile parse(std::string_view text) { return detail::Parser(text).file(); }

// ---- printer ----

inline std::string print(const Expr& e);

inline std::string print(const Atom& a) {
  switch (a.kind) {
    case AtomKind::twist: return "t[" + a.name + "]";
    case AtomKind::commutator: return "[" + print(a.sub.at(0)) + ", " + print(a.sub.at(1)) + "]";
    case AtomKind::group: return "(" + print(a.sub.at(0)) + ")";
    case AtomKind::name:
    case AtomKind::generator: return a.name;
  }
  return "";
}

inline std::string print(const Expr& e) {
  std::string out;
  for (std::size_t i = 0; i < e.terms.size(); ++i) {
    if (i) out += '*';
    out += print(e.terms[i].atom);
    if (e.terms[i].exponent) out += "^" + std::to_string(*e.terms[i].exponent);
  }
  return out;
}

inline std::string print(const Arg& a) {
  switch (a.kind) {
    case Arg::Kind::integer: return std::to_string(a.value);
    case Arg::Kind::expr: return print(a.lhs);
    case Arg::Kind::maps: return print(a.lhs) + " -> " + print(a.rhs);
  }
  return "";
}

inline std::string print(const CertificateFile& f) {
  std::ostringstream os;
  for (std::size_t i = 0; i < f.sections.size(); ++i) {
    const Section& s = f.sections[i];
    if (i) os << '\n';
    switch (s.kind) {
      case SectionKind::surface:
        os << "[surface]\ngenus = " << s.genus << '\n';
        break;
      case SectionKind::curves:
      case SectionKind::aux:
        os << (s.kind == SectionKind::curves ? "[curves]\n" : "[aux]\n");
        for (const Assign& a : s.assigns) os << a.name << " = " << print(a.expr) << '\n';
        break;
      case SectionKind::claims:
        os << "[claims]\n";
        for (const Claim& c : s.claims) {
          os << c.name << ": " << c.kind << '(';
          for (std::size_t k = 0; k < c.args.size(); ++k) os << (k ? ", " : "") << print(c.args[k]);
          os << ")\n";
        }
        break;
    }
  }
  return os.str();
}

// ---- resolution ----

struct LanternClaim {
  LanternCertificate cert;
};
struct CommutatorClaim {
  MappingClassWord target;
  CommutatorList pairs;
};
struct PowerClaim {
  int n = 1;
  MappingClassWord target;
  CommutatorList pairs;
};
struct FibrationClaim {
  FibrationSpec spec;
};
struct ActsOnClaim {
  MappingClassWord map;
  std::string from;
  std::string to;
};

struct ResolvedClaim {
  std::string name;
  std::string kind;
  std::variant<LanternClaim, CommutatorClaim, PowerClaim, FibrationClaim, ActsOnClaim> body;
};

/// A certificate file with every name bound.
struct Document {
  int genus = 0;
  std::optional<SurfaceModel> model;
  std::map<std::string, Word> curve_words;
  std::map<std::string, CurveClass> curves;
  AuxTable aux;
  std::vector<ResolvedClaim> claims;

  const SurfaceModel& surface() const { return *model; }
};

namespace detail {

class Resolver {
 public:
  Document run(const CertificateFile& f) {
    bool have_genus = false;
    for (const Section& s : f.sections) {
      if (s.kind == SectionKind::surface) {
        if (have_genus) throw NameError("genus defined twice", s.pos);
        if (s.genus < 1) throw NameError("genus must be >= 1", s.pos);
        have_genus = true;
        doc_.genus = s.genus;
        doc_.model = SurfaceModel::build(s.genus);
        continue;
      }
      if (!have_genus) throw NameError("the [surface] section must come first", s.pos);
      for (const Assign& a : s.assigns) (s.kind == SectionKind::curves ? define_curve(a) : define_aux(a));
      for (const Claim& c : s.claims) doc_.claims.push_back(claim(c));
    }
    if (!have_genus) throw NameError("missing [surface] section", SourcePos{});
    return std::move(doc_);
  }

 private:
  void check_fresh(const std::string& name, SourcePos pos, bool curve) {
    if (is_generator_name(name) || name == "t") throw NameError("'" + name + "' is reserved", pos);
    if (TwistName::parse(name)) throw NameError("'" + name + "' shadows a table twist", pos);
    if (curve ? doc_.curves.count(name) : doc_.aux.contains(name))
      throw NameError("'" + name + "' defined twice", pos);
  }

  void define_curve(const Assign& a) {
    check_fresh(a.name, a.pos, true);
    const Word w = word(a.expr);
    const CurveClass c = curve_class(w);
    if (c.trivial()) throw NameError("curve '" + a.name + "' is trivial", a.pos);
    doc_.curve_words[a.name] = w;
    doc_.curves[a.name] = c;
  }

  void define_aux(const Assign& a) {
    check_fresh(a.name, a.pos, false);
    doc_.aux.define(a.name, mapping(a.expr));
  }

  Word word(const Expr& e) {
    Word out;
    for (const Term& t : e.terms) out *= word(t.atom).pow(t.exponent.value_or(1));
    return out;
  }

  Word word(const Atom& a) {
    switch (a.kind) {
      case AtomKind::generator: {
        int i = 0;
        const auto [ptr, ec] = std::from_chars(a.name.data() + 1, a.name.data() + a.name.size(), i);
        if (ec != std::errc() || i > doc_.genus) throw NameError("generator " + a.name + " outside genus " + std::to_string(doc_.genus), a.pos);
        return a.name[0] == 'x' ? Word::x(i) : Word::y(i);
      }
      case AtomKind::name: {
        auto it = doc_.curve_words.find(a.name);
        if (it == doc_.curve_words.end()) throw NameError("undefined curve '" + a.name + "'", a.pos);
        return it->second;
      }
      case AtomKind::commutator: return commutator(word(a.sub[0]), word(a.sub[1]));
      case AtomKind::group: return word(a.sub[0]);
      case AtomKind::twist: break;
    }
    throw NameError("twist t[" + a.name + "] in a curve definition", a.pos);
  }

  bool table_twist(const std::string& n) const { return doc_.model->find(*TwistName::parse(n)) != nullptr; }

  MappingClassWord twist_ref(const Atom& a) {
    if (TwistName::parse(a.name)) {
      if (!table_twist(a.name))
        throw NameError("no twist " + a.name + " in genus " + std::to_string(doc_.genus), a.pos);
      return MappingClassWord::named(a.name);
    }
    if (!doc_.curves.count(a.name)) throw NameError("undefined curve '" + a.name + "'", a.pos);
    if (!doc_.aux.contains(a.name))
      throw NameError("no twist word for curve '" + a.name + "'; define it in [aux]", a.pos);
    return MappingClassWord::named(a.name);
  }

  MappingClassWord mapping(const Expr& e) {
    MappingClassWord out;
    for (const Term& t : e.terms) out *= mapping(t.atom).pow(t.exponent.value_or(1));
    return out;
  }

  MappingClassWord mapping(const Atom& a) {
    switch (a.kind) {
      case AtomKind::twist: return twist_ref(a);
      case AtomKind::name:
        if (!doc_.aux.contains(a.name)) throw NameError("undefined mapping class '" + a.name + "'", a.pos);
        return MappingClassWord::named(a.name);
      case AtomKind::commutator: return commutator(mapping(a.sub[0]), mapping(a.sub[1]));
      case AtomKind::group: return mapping(a.sub[0]);
      case AtomKind::generator: break;
    }
    throw NameError("generator " + a.name + " where a mapping class is expected", a.pos);
  }

  CommutatorList commutators(const Arg& arg) {
    if (arg.kind != Arg::Kind::expr) throw NameError("expected a product of commutators", arg.pos);
    CommutatorList out;
    for (const Term& t : arg.lhs.terms) {
      if (t.atom.kind != AtomKind::commutator || t.exponent)
        throw NameError("expected a product of commutators [u, v]", t.atom.pos);
      out.emplace_back(mapping(t.atom.sub[0]), mapping(t.atom.sub[1]));
    }
    return out;
  }

  std::string curve_name(const Expr& e, SourcePos pos) {
    if (e.terms.size() != 1 || e.terms[0].exponent || e.terms[0].atom.kind != AtomKind::name)
      throw NameError("expected a curve name", pos);
    const std::string& n = e.terms[0].atom.name;
    if (!doc_.curves.count(n)) throw NameError("undefined curve '" + n + "'", e.terms[0].atom.pos);
    return n;
  }

  const Expr& expr_arg(const Arg& a) {
    if (a.kind != Arg::Kind::expr) throw NameError("expected an expression", a.pos);
    return a.lhs;
  }

  void arity(const Claim& c, std::size_t n) {
    if (c.args.size() != n)
      throw NameError(c.kind + " takes " + std::to_string(n) + " arguments, got " + std::to_string(c.args.size()),
                      c.pos);
  }

  ResolvedClaim claim(const Claim& c) {
    ResolvedClaim r{c.name, c.kind, {}};
    if (c.kind == "lantern") {
      arity(c, 7);
      LanternCertificate cert;
      cert.name = c.name;
      cert.genus = doc_.genus;
      cert.aux = doc_.aux;
      const auto& roles = lantern_curve_names();
      std::vector<std::string> names;
      for (std::size_t i = 0; i < roles.size(); ++i) {
        names.push_back(curve_name(expr_arg(c.args[i]), c.args[i].pos));
        cert.curves[roles[i]] = doc_.curves.at(names.back());
      }
      bool sep = false;
      try {
        sep = is_separating(cert.curves.at("a"), surface());
      } catch (const Error& e) {
        throw NameError(std::string("curve a: ") + e.what(), c.args[0].pos);
      }
      cert.variant = sep ? LanternVariant::separating : LanternVariant::nonseparating;
      for (std::size_t i = 0; i < roles.size(); ++i) {
        const bool optional = i == 0 && sep;
        if (!doc_.aux.contains(names[i])) {
          if (optional) continue;
          throw NameError("no twist word for curve '" + names[i] + "'; define it in [aux]", c.args[i].pos);
        }
        if (optional)
          cert.reference_twist_a = MappingClassWord::named(names[i]);
        else
          cert.twist_words[roles[i]] = MappingClassWord::named(names[i]);
      }
      if (sep) cert.disjoint_from_a.assign(roles.begin() + 1, roles.end());
      r.body = LanternClaim{std::move(cert)};
    } else if (c.kind == "two_commutators") {
      arity(c, 2);
      CommutatorClaim cc{mapping(expr_arg(c.args[0])), commutators(c.args[1])};
      if (cc.pairs.size() != 2)
        throw NameError("two_commutators needs exactly two commutators, got " + std::to_string(cc.pairs.size()),
                        c.args[1].pos);
      r.body = std::move(cc);
    } else if (c.kind == "power_factorization") {
      arity(c, 3);
      if (c.args[0].kind != Arg::Kind::integer || c.args[0].value < 1)
        throw NameError("power must be a positive integer", c.args[0].pos);
      r.body = PowerClaim{static_cast<int>(c.args[0].value), mapping(expr_arg(c.args[1])), commutators(c.args[2])};
    } else if (c.kind == "fibration_valid") {
      if (c.args.empty() || c.args[0].kind != Arg::Kind::integer)
        throw NameError("fibration_valid needs the base genus first", c.pos);
      FibrationClaim fc;
      FibrationSpec& s = fc.spec;
      s.fiber_genus = doc_.genus;
      s.base_genus = static_cast<int>(c.args[0].value);
      s.aux = doc_.aux;
      const std::size_t handles = 2 * static_cast<std::size_t>(s.base_genus);
      if (c.args.size() < 2 + handles)
        throw NameError("fibration_valid needs at least one cycle and " + std::to_string(handles) +
                            " monodromy images",
                        c.pos);
      const std::size_t ncycles = c.args.size() - 1 - handles;
      for (std::size_t j = 1; j <= ncycles; ++j) {
        const Expr& e = expr_arg(c.args[j]);
        if (e.terms.size() != 1 || e.terms[0].exponent || e.terms[0].atom.kind != AtomKind::twist)
          throw NameError("a vanishing cycle is written t[NAME]", c.args[j].pos);
        const Atom& a = e.terms[0].atom;
        const MappingClassWord w = twist_ref(a);
        const CurveClass curve =
            TwistName::parse(a.name) ? surface().twist(*TwistName::parse(a.name)).curve : doc_.curves.at(a.name);
        s.cycles.push_back({w, curve});
      }
      for (std::size_t j = 1 + ncycles; j < c.args.size(); ++j) s.monodromy.push_back(mapping(expr_arg(c.args[j])));
      r.body = std::move(fc);
    } else if (c.kind == "acts_on") {
      arity(c, 2);
      if (c.args[1].kind != Arg::Kind::maps) throw NameError("expected FROM -> TO", c.args[1].pos);
      r.body = ActsOnClaim{mapping(expr_arg(c.args[0])), curve_name(c.args[1].lhs, c.args[1].pos),
                           curve_name(c.args[1].rhs, c.args[1].pos)};
    } else {
      throw NameError("unknown claim kind '" + c.kind + "'", c.pos);
    }
    return r;
  }

  const SurfaceModel& surface() const { return *doc_.model; }

  Document doc_;
};

}  // namespace detail

inline Document resolve(const CertificateFile& f) {
  try {
    return detail::Resolver().run(f);
  } catch (const DslError&) {
    throw;
  } catch (const InvariantViolation&) {
    throw;
  } catch (const Error& e) {
    throw NameError(e.what(), SourcePos{});
  }
}

inline Document load(std::string_view text) { return resolve(parse(text)); }

// ---- claim checking ----

enum class ClaimStatus { verified, unknown, obstructed, refuted };

inline std::string to_string(ClaimStatus s) {
  switch (s) {
    case ClaimStatus::verified: return "VERIFIED";
    case ClaimStatus::unknown: return "UNKNOWN";
    case ClaimStatus::obstructed: return "OBSTRUCTED";
    case ClaimStatus::refuted: return "REFUTED";
  }
  return "?";
}

struct ClaimOutcome {
  std::string name;
  std::string kind;
  ClaimStatus status = ClaimStatus::refuted;
  std::optional<Verdict> verdict;  // fibration_valid only
  std::vector<std::string> notes;
};

inline ClaimStatus status_of(Verdict v) {
  switch (v) {
    case Verdict::EXACT_RELATIVE:
    case Verdict::EXACT_GENUS1:
    case Verdict::SUFFICIENT_CENTRAL: return ClaimStatus::verified;
    case Verdict::HOMOLOGICAL_ONLY: return ClaimStatus::unknown;
    case Verdict::OBSTRUCTED: return ClaimStatus::obstructed;
    case Verdict::REFUTED: return ClaimStatus::refuted;
  }
  return ClaimStatus::refuted;
}

inline std::string yes_no(bool b) { return b ? "yes" : "no"; }

inline ClaimOutcome check_claim(const ResolvedClaim& rc, const Document& doc) {
  ClaimOutcome out{rc.name, rc.kind, ClaimStatus::refuted, std::nullopt, {}};
  const SurfaceModel& model = doc.surface();
  auto set = [&](bool ok) { out.status = ok ? ClaimStatus::verified : ClaimStatus::refuted; };

  if (auto* l = std::get_if<LanternClaim>(&rc.body)) {
    const LanternReport r = verify_lantern(l->cert, model);
    out.notes.push_back("variant=" + to_string(l->cert.variant));
    for (const std::string& f : r.invariant_failures) out.notes.push_back("invariant: " + f);
    if (r.invariant_failures.empty()) {
      if (l->cert.variant == LanternVariant::nonseparating) {
        out.notes.push_back("relation=" + yes_no(r.relation));
      } else {
        out.notes.push_back("fixes_a=" + yes_no(r.fixes_a));
        out.notes.push_back("fixes_disjoint=" + yes_no(r.fixes_disjoint));
        if (r.matches_reference) out.notes.push_back("matches_reference=" + yes_no(*r.matches_reference));
      }
    }
    set(r.verified());
  } else if (auto* c = std::get_if<CommutatorClaim>(&rc.body)) {
    const FactorizationReport r = verify_commutator_factorization(c->target, c->pairs, model, doc.aux);
    out.notes.push_back("commutators=" + std::to_string(r.commutator_count));
    set(r.verified);
  } else if (auto* p = std::get_if<PowerClaim>(&rc.body)) {
    const FactorizationReport r = verify_commutator_factorization(p->target.pow(p->n), p->pairs, model, doc.aux);
    out.notes.push_back("commutators=" + std::to_string(r.commutator_count));
    if (doc.genus >= 3) {
      const int bound = remark1_count(p->n, doc.genus >= 4 ? GenusRegime::g_ge_4 : GenusRegime::g_ge_3);
      out.notes.push_back("bound=" + std::to_string(bound));
      if (r.commutator_count > bound) out.notes.push_back("suboptimal");
    }
    set(r.verified);
  } else if (auto* f = std::get_if<FibrationClaim>(&rc.body)) {
    const ValidationReport r = validate(f->spec, model);
    out.verdict = r.verdict;
    out.status = status_of(r.verdict);
    out.notes.push_back("n=" + std::to_string(f->spec.cycles.size()));
    out.notes.push_back("e=" + std::to_string(euler_characteristic(f->spec)));
    for (const CheckResult& d : r.details) out.notes.push_back(d.name + "=" + yes_no(d.passed));
    if (r.central_power) out.notes.push_back("boundary_power=" + std::to_string(*r.central_power));
  } else if (auto* a = std::get_if<ActsOnClaim>(&rc.body)) {
    const CurveClass img = act_on_curve(a->map, doc.curves.at(a->from), model, doc.aux);
    out.notes.push_back("image=" + to_string(img));
    set(img == doc.curves.at(a->to));
  }
  return out;
}

// ---- builtin certificates as files ----

namespace detail {

inline Atom name_atom(AtomKind k, std::string n) { return Atom{k, std::move(n), {}, {}}; }

inline Expr to_expr(const MappingClassWord& m) {
  Expr e;
  for (const Factor& f : m.factors()) {
    const AtomKind k = TwistName::parse(f.name) ? AtomKind::twist : AtomKind::name;
    e.terms.push_back({name_atom(k, f.name), f.exponent == 1 ? std::nullopt : std::optional<int>(f.exponent)});
  }
  return e;
}

inline Expr to_expr(const Word& w) {
  Expr e;
  for (Letter l : w.letters()) {
    const std::string g = letter_name(l < 0 ? -l : l);
    e.terms.push_back({name_atom(AtomKind::generator, g), l < 0 ? std::optional<int>(-1) : std::nullopt});
  }
  return e;
}

inline Expr single(AtomKind k, const std::string& n, std::optional<int> exp = std::nullopt) {
  return Expr{{Term{name_atom(k, n), exp}}};
}

inline Arg expr_arg(Expr e) { return Arg{Arg::Kind::expr, 0, std::move(e), {}, {}}; }
inline Arg maps_arg(const std::string& from, const std::string& to) {
  return Arg{Arg::Kind::maps, 0, single(AtomKind::name, from), single(AtomKind::name, to), {}};
}

inline Term comm_term(Expr u, Expr v) {
  Atom a{AtomKind::commutator, "", {std::move(u), std::move(v)}, {}};
  return Term{std::move(a), std::nullopt};
}

}  // namespace detail

/// The curve words used by the builtins, for export; classes are compared at load.
inline std::map<std::string, Word> builtin_curve_words(LanternVariant v) {
  const Word x1 = Word::x(1), x2 = Word::x(2), x3 = Word::x(3);
  if (v == LanternVariant::nonseparating)
    return {{"a", x1 * x2 * x3}, {"a1", x1},      {"a2", x2},      {"a3", x3},
            {"b1", x1 * x2},     {"b2", x1 * x3}, {"b3", x2 * x3}};
  const Word p = commutator(x1, Word::y(1));
  return {{"a", p}, {"a1", x2}, {"a2", x3}, {"a3", p * x2 * x3}, {"b1", p * x2}, {"b2", p * x3}, {"b3", x2 * x3}};
}

/// Writes a builtin certificate as a certificate file.
inline CertificateFile export_builtin(const std::string& name) {
  using namespace detail;
  const BuiltinCertificate bc = builtin_certificate(name);
  const bool thm2 = std::holds_alternative<Theorem2Certificate>(bc);
  const LanternCertificate& l = thm2 ? std::get<Theorem2Certificate>(bc).lantern : std::get<LanternCertificate>(bc);
  CertificateFile f;
  Section surface{SectionKind::surface, l.genus, {}, {}, {}};
  Section curves{SectionKind::curves, 0, {}, {}, {}};
  Section aux{SectionKind::aux, 0, {}, {}, {}};
  Section claims{SectionKind::claims, 0, {}, {}, {}};
  const auto words = builtin_curve_words(l.variant);
  for (const std::string& r : lantern_curve_names()) curves.assigns.push_back({r, to_expr(words.at(r)), {}});
  for (const std::string& r : lantern_curve_names()) {
    if (auto it = l.twist_words.find(r); it != l.twist_words.end())
      aux.assigns.push_back({r, to_expr(it->second), {}});
    else if (r == "a" && l.reference_twist_a)
      aux.assigns.push_back({r, to_expr(*l.reference_twist_a), {}});
  }
  Claim lantern{"lantern", "lantern", {}, {}};
  for (const std::string& r : lantern_curve_names()) lantern.args.push_back(expr_arg(single(AtomKind::name, r)));
  claims.claims.push_back(lantern);
  if (thm2) {
    const Theorem2Certificate& t = std::get<Theorem2Certificate>(bc);
    aux.assigns.push_back({"f", to_expr(t.f), {}});
    aux.assigns.push_back({"k", to_expr(t.k), {}});
    Expr first_u{{Term{name_atom(AtomKind::twist, "b1"), {}}, Term{name_atom(AtomKind::twist, "a1"), -1}}};
    Expr product{{comm_term(first_u, single(AtomKind::name, "f", -1)),
                  comm_term(single(AtomKind::twist, "b3"), single(AtomKind::name, "k", -1))}};
    claims.claims.push_back({"two_commutators", "two_commutators",
                             {expr_arg(single(AtomKind::twist, "a")), expr_arg(product)}, {}});
    claims.claims.push_back({"f_a1_b2", "acts_on", {expr_arg(single(AtomKind::name, "f")), maps_arg("a1", "b2")}, {}});
    claims.claims.push_back({"f_b1_a2", "acts_on", {expr_arg(single(AtomKind::name, "f")), maps_arg("b1", "a2")}, {}});
    claims.claims.push_back({"k_b3_a3", "acts_on", {expr_arg(single(AtomKind::name, "k")), maps_arg("b3", "a3")}, {}});
    Claim fib{"one_fiber_over_genus2", "fibration_valid", {}, {}};
    fib.args.push_back(Arg{Arg::Kind::integer, 2, {}, {}, {}});
    fib.args.push_back(expr_arg(single(AtomKind::twist, "a")));
    fib.args.push_back(expr_arg(first_u));
    fib.args.push_back(expr_arg(single(AtomKind::name, "f", -1)));
    fib.args.push_back(expr_arg(single(AtomKind::twist, "b3")));
    fib.args.push_back(expr_arg(single(AtomKind::name, "k", -1)));
    claims.claims.push_back(fib);
  }
  f.sections = {surface, curves, aux, claims};
  return f;
}

}  // namespace mcg::dsl
