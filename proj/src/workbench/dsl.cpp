#include "qlab/workbench/dsl.hpp"

#include <cctype>
#include <fstream>
#include <map>
#include <sstream>

namespace qlab::dsl {

[[noreturn]] void fail_at(ErrorKind kind, const Span& at, const std::string& message) {
  throw Error(kind, std::to_string(at.line) + ":" + std::to_string(at.col) + ": " + message);
}

const std::vector<GeneratorInfo>& generators() {
  static const std::vector<GeneratorInfo> g = {
      {"powerset", "frame", "powerset(n)"},
      {"chain", "frame", "chain(n)"},
      {"two", "based", "two()"},
      {"rel", "based", "rel(n), 1 <= n <= 3"},
      {"retract", "based", "retract(n)"},
      {"paperQ1", "based", "paperQ1()"},
      {"paperQ2", "based", "paperQ2()"},
      {"pairgroupoid", "groupoid", "pairgroupoid(n)"},
      {"groupgroupoid", "groupoid", "groupgroupoid([[row], ...])"},
      {"zmod", "groupoid", "zmod(k)"},
      {"partition", "groupoid", "partition([[block], ...])"},
      {"trivial", "groupoid", "trivial()"},
  };
  return g;
}

namespace {

bool ident_char(unsigned char c) {
  return std::isalnum(c) || c == '_' || c == '.' || c == '\'' || c == '+' || c == '-';
}

enum class Tok { ident, punct, end };

struct Token {
  Tok kind = Tok::end;
  std::string text;
  bool quoted = false;
  Span span;
};

class Lexer {
 public:
  explicit Lexer(std::string_view s) : s_(s) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_space();
      Token t;
      t.span = {line_, col_};
      if (i_ >= s_.size()) {
        out.push_back(t);
        return out;
      }
      const char c = s_[i_];
      if (c == '"') {
        t.kind = Tok::ident;
        t.quoted = true;
        t.text = quoted(t.span);
      } else if (starts("->") || starts("<=")) {
        t.kind = Tok::punct;
        t.text = std::string(s_.substr(i_, 2));
        advance(2);
      } else if (starts("⊗") || starts("∨") || starts("⊥")) {
        t.kind = Tok::punct;
        t.text = std::string(s_.substr(i_, 3));  // all three are 3 bytes in UTF-8
        advance(3);
      } else if (ident_char(static_cast<unsigned char>(c))) {
        t.kind = Tok::ident;
        while (i_ < s_.size() && ident_char(static_cast<unsigned char>(s_[i_])) && !starts("->")) {
          t.text += s_[i_];
          advance(1);
        }
      } else if (std::string_view("{}()[];:,=").find(c) != std::string_view::npos) {
        t.kind = Tok::punct;
        t.text = std::string(1, c);
        advance(1);
      } else {
        fail_at(ErrorKind::SyntaxError, t.span, "unexpected character '" + std::string(1, c) + "'");
      }
      out.push_back(std::move(t));
    }
  }

 private:
  bool starts(std::string_view p) const { return s_.substr(i_, p.size()) == p; }

  void advance(std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i_) {
      if (s_[i_] == '\n') {
        ++line_;
        col_ = 1;
      } else if ((static_cast<unsigned char>(s_[i_]) & 0xC0) != 0x80) {
        ++col_;  // columns count code points
      }
    }
  }

  void skip_space() {
    while (i_ < s_.size()) {
      if (std::isspace(static_cast<unsigned char>(s_[i_]))) {
        advance(1);
      } else if (s_[i_] == '#') {
        while (i_ < s_.size() && s_[i_] != '\n') advance(1);
      } else {
        return;
      }
    }
  }

  std::string quoted(const Span& at) {
    advance(1);
    std::string out;
    for (;;) {
      if (i_ >= s_.size() || s_[i_] == '\n') fail_at(ErrorKind::SyntaxError, at, "unterminated string");
      const char c = s_[i_];
      if (c == '"') {
        advance(1);
        return out;
      }
      if (c == '\\') {
        advance(1);
        if (i_ >= s_.size()) fail_at(ErrorKind::SyntaxError, at, "unterminated string");
      }
      out += s_[i_];
      advance(1);
    }
  }

  std::string_view s_;
  std::size_t i_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
};

enum class Kind { lattice, frame, quantale, based, support, upsilon, groupoid };

std::string_view kind_name(Kind k) {
  switch (k) {
    case Kind::lattice: return "lattice";
    case Kind::frame: return "frame";
    case Kind::quantale: return "quantale";
    case Kind::based: return "based quantale";
    case Kind::support: return "support";
    case Kind::upsilon: return "upsilon";
    case Kind::groupoid: return "groupoid";
  }
  return "?";
}

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : t_(std::move(toks)) {}

  SpecDocument run() {
    SpecDocument doc;
    while (peek().kind != Tok::end) doc.decls.push_back(decl());
    return doc;
  }

 private:
  const Token& peek() const { return t_[p_]; }
  Token next() { return t_[p_ == t_.size() - 1 ? p_ : p_++]; }

  bool is_punct(std::string_view p) const { return peek().kind == Tok::punct && peek().text == p; }
  bool is_keyword(std::string_view k) const { return peek().kind == Tok::ident && !peek().quoted && peek().text == k; }

  [[noreturn]] void unexpected(const std::string& wanted) const {
    const Token& t = peek();
    const std::string got = t.kind == Tok::end ? "end of input" : "'" + t.text + "'";
    fail_at(ErrorKind::SyntaxError, t.span, "expected " + wanted + ", found " + got);
  }

  void expect(std::string_view p) {
    if (!is_punct(p)) unexpected("'" + std::string(p) + "'");
    next();
  }
  void keyword(std::string_view k) {
    if (!is_keyword(k)) unexpected("'" + std::string(k) + "'");
    next();
  }
  bool accept(std::string_view p) {
    if (!is_punct(p)) return false;
    next();
    return true;
  }

  Name ident(const char* what = "identifier") {
    if (peek().kind != Tok::ident) unexpected(what);
    Token t = next();
    return {std::move(t.text), t.span};
  }

  // Entries of a table section run until ';' or '}'; commas are optional.
  template <class F>
  void entries(F&& one) {
    while (!is_punct(";") && !is_punct("}")) {
      one();
      accept(",");
    }
  }

  Arrow1 arrow1() {
    Arrow1 a;
    a.from = ident();
    expect("->");
    a.to = ident();
    return a;
  }

  Arrow2 arrow2() {
    Arrow2 a;
    a.left = ident();
    a.right = ident();
    expect("->");
    a.to = ident();
    return a;
  }

  std::vector<Arrow1> map_block() {
    std::vector<Arrow1> out;
    expect("{");
    entries([&] { out.push_back(arrow1()); });
    expect("}");
    return out;
  }

  // Declares a name; references are resolved against earlier declarations
  // only, which keeps the document acyclic.
  void declare(const Name& n, Kind k) {
    if (auto it = names_.find(n.text); it != names_.end())
      fail_at(ErrorKind::DuplicateName, n.span, "'" + n.text + "' is already declared");
    names_.emplace(n.text, k);
  }

  void resolve(const Name& n, std::initializer_list<Kind> allowed) {
    auto it = names_.find(n.text);
    if (it == names_.end()) fail_at(ErrorKind::UnresolvedName, n.span, "unknown structure '" + n.text + "'");
    for (Kind k : allowed)
      if (it->second == k) return;
    std::string want;
    for (Kind k : allowed) want += (want.empty() ? "" : " or ") + std::string(kind_name(k));
    fail_at(ErrorKind::UnresolvedName, n.span,
            "'" + n.text + "' is a " + std::string(kind_name(it->second)) + ", expected a " + want);
  }

  Decl decl() {
    if (peek().kind != Tok::ident || peek().quoted) unexpected("a declaration");
    const std::string k = peek().text;
    if (k == "lattice") return lattice();
    if (k == "frame") return frame();
    if (k == "quantale") return quantale();
    if (k == "based") return based();
    if (k == "support" || k == "upsilon") return map_decl();
    if (k == "groupoid") return groupoid();
    if (k == "generate") return generate();
    if (k == "check") return check();
    unexpected("a declaration");
  }

  LatticeDecl lattice() {
    keyword("lattice");
    LatticeDecl d;
    d.name = ident("lattice name");
    expect("{");
    keyword("elems");
    std::map<std::string, bool> seen;
    while (peek().kind == Tok::ident) {
      Name e = ident();
      if (seen[e.text]) fail_at(ErrorKind::DuplicateName, e.span, "element '" + e.text + "' listed twice");
      seen[e.text] = true;
      d.elems.push_back(std::move(e));
      accept(",");
    }
    if (d.elems.empty()) unexpected("an element");
    if (accept(";") && is_keyword("order")) {
      next();
      entries([&] {
        Arrow1 a;
        a.from = ident();
        expect("<=");
        a.to = ident();
        d.order.push_back(std::move(a));
      });
      accept(";");
    }
    expect("}");
    declare(d.name, Kind::lattice);
    return d;
  }

  FrameDecl frame() {
    keyword("frame");
    FrameDecl d;
    d.name = ident("frame name");
    expect("=");
    keyword("check");
    d.lattice = ident("lattice name");
    resolve(d.lattice, {Kind::lattice});
    declare(d.name, Kind::frame);
    return d;
  }

  QuantaleDecl quantale() {
    keyword("quantale");
    QuantaleDecl d;
    d.name = ident("quantale name");
    keyword("on");
    d.lattice = ident("lattice name");
    resolve(d.lattice, {Kind::lattice, Kind::frame});
    expect("{");
    bool mult = false, inv = false;
    while (!is_punct("}")) {
      if (is_keyword("mult") && !mult) {
        next();
        expect(":");
        mult = true;
        entries([&] { d.mult.push_back(arrow2()); });
      } else if (is_keyword("inv") && !inv) {
        next();
        expect(":");
        inv = true;
        entries([&] { d.inv.push_back(arrow1()); });
      } else if (is_keyword("unit") && !d.unit) {
        next();
        d.unit = ident("unit element");
      } else {
        unexpected("'mult:', 'inv:' or 'unit'");
      }
      if (!accept(";")) break;
    }
    expect("}");
    declare(d.name, Kind::quantale);
    return d;
  }

  BasedDecl based() {
    keyword("based");
    BasedDecl d;
    d.name = ident("structure name");
    expect("=");
    d.quantale = ident("quantale name");
    resolve(d.quantale, {Kind::quantale});
    keyword("over");
    d.frame = ident("frame name");
    resolve(d.frame, {Kind::frame, Kind::lattice});
    expect("{");
    bool lact = false, ract = false;
    while (!is_punct("}")) {
      if (is_keyword("lact") && !lact) {
        next();
        expect(":");
        lact = true;
        entries([&] { d.lact.push_back(arrow2()); });
      } else if (is_keyword("ract") && !ract) {
        next();
        expect(":");
        ract = true;
        entries([&] { d.ract.push_back(arrow2()); });
      } else {
        unexpected("'lact:' or 'ract:'");
      }
      if (!accept(";")) break;
    }
    expect("}");
    declare(d.name, Kind::based);
    return d;
  }

  MapDecl map_decl() {
    MapDecl d;
    d.kind = is_keyword("support") ? MapDecl::Kind::support : MapDecl::Kind::upsilon;
    next();
    d.name = ident("map name");
    keyword("on");
    d.based = ident("based quantale name");
    resolve(d.based, {Kind::based});
    d.values = map_block();
    declare(d.name, d.kind == MapDecl::Kind::support ? Kind::support : Kind::upsilon);
    return d;
  }

  std::vector<MstarEntry> mstar_block() {
    std::vector<MstarEntry> out;
    expect("{");
    entries([&] {
      MstarEntry e;
      e.arrow = ident();
      expect("->");
      if (!accept("⊥")) {
        do {
          PureTerm t;
          t.left = ident();
          expect("⊗");
          t.right = ident();
          e.join.push_back(std::move(t));
        } while (accept("∨"));
      }
      out.push_back(std::move(e));
    });
    expect("}");
    return out;
  }

  GroupoidDecl groupoid() {
    keyword("groupoid");
    GroupoidDecl d;
    d.name = ident("groupoid name");
    expect("{");
    keyword("objects");
    d.objects = ident("frame name");
    resolve(d.objects, {Kind::frame, Kind::lattice});
    expect(";");
    keyword("arrows");
    d.arrows = ident("frame name");
    resolve(d.arrows, {Kind::frame, Kind::lattice});
    for (auto [key, field] : {std::pair{"dstar", &d.dstar}, {"rstar", &d.rstar}, {"ustar", &d.ustar},
                              {"istar", &d.istar}}) {
      expect(";");
      keyword(key);
      *field = map_block();
    }
    if (accept(";") && is_keyword("mstar")) {
      next();
      d.mstar = mstar_block();
      accept(";");
    }
    expect("}");
    declare(d.name, Kind::groupoid);
    return d;
  }

  GenArg gen_arg() {
    GenArg a;
    a.span = peek().span;
    if (accept("[")) {
      while (!is_punct("]")) {
        a.list.push_back(gen_arg());
        if (!accept(",")) break;
      }
      expect("]");
      return a;
    }
    const Name n = ident("a number or a list");
    try {
      std::size_t used = 0;
      a.number = std::stoll(n.text, &used);
      if (used != n.text.size()) throw std::invalid_argument(n.text);
    } catch (const std::exception&) {
      fail_at(ErrorKind::SyntaxError, n.span, "expected a number, found '" + n.text + "'");
    }
    return a;
  }

  GenerateDecl generate() {
    keyword("generate");
    GenerateDecl d;
    d.name = ident("structure name");
    expect("=");
    d.generator = ident("generator name");
    const GeneratorInfo* info = nullptr;
    for (const auto& g : generators())
      if (g.name == d.generator.text) info = &g;
    if (!info) fail_at(ErrorKind::UnresolvedName, d.generator.span, "unknown generator '" + d.generator.text + "'");
    expect("(");
    while (!is_punct(")")) {
      d.args.push_back(gen_arg());
      if (!accept(",")) break;
    }
    expect(")");
    const Kind k = info->kind == "frame" ? Kind::frame : info->kind == "based" ? Kind::based : Kind::groupoid;
    declare(d.name, k);
    return d;
  }

  CheckDecl check() {
    keyword("check");
    CheckDecl d;
    d.target = ident("structure name");
    if (!names_.count(d.target.text))
      fail_at(ErrorKind::UnresolvedName, d.target.span, "unknown structure '" + d.target.text + "'");
    expect(":");
    do {
      CheckItem item;
      item.check = ident("check name");
      if (accept("=")) {
        const Name v = ident("'pass' or 'fail'");
        if (v.text != "pass" && v.text != "fail")
          fail_at(ErrorKind::SyntaxError, v.span, "expected 'pass' or 'fail', found '" + v.text + "'");
        item.expect_pass = v.text == "pass";
      }
      d.items.push_back(std::move(item));
    } while (accept(","));
    return d;
  }

  std::vector<Token> t_;
  std::size_t p_ = 0;
  std::map<std::string, Kind> names_;
};

void print_arrow1s(std::ostringstream& o, const std::vector<Arrow1>& v, std::string_view sep) {
  for (std::size_t i = 0; i < v.size(); ++i)
    o << (i ? ", " : "") << quote_id(v[i].from.text) << sep << quote_id(v[i].to.text);
}

void print_arrow2s(std::ostringstream& o, const std::vector<Arrow2>& v) {
  for (std::size_t i = 0; i < v.size(); ++i)
    o << (i ? ", " : "") << quote_id(v[i].left.text) << ' ' << quote_id(v[i].right.text) << " -> "
      << quote_id(v[i].to.text);
}

void print_map(std::ostringstream& o, const std::vector<Arrow1>& v) {
  o << "{ ";
  print_arrow1s(o, v, " -> ");
  o << (v.empty() ? "}" : " }");
}

void print_arg(std::ostringstream& o, const GenArg& a) {
  if (a.number) {
    o << *a.number;
    return;
  }
  o << '[';
  for (std::size_t i = 0; i < a.list.size(); ++i) {
    if (i) o << ", ";
    print_arg(o, a.list[i]);
  }
  o << ']';
}

struct Printer {
  std::ostringstream& o;

  void operator()(const LatticeDecl& d) {
    o << "lattice " << quote_id(d.name.text) << " { elems";
    for (const auto& e : d.elems) o << ' ' << quote_id(e.text);
    o << "; order ";
    print_arrow1s(o, d.order, "<=");
    o << " }\n";
  }
  void operator()(const FrameDecl& d) {
    o << "frame " << quote_id(d.name.text) << " = check " << quote_id(d.lattice.text) << '\n';
  }
  void operator()(const QuantaleDecl& d) {
    o << "quantale " << quote_id(d.name.text) << " on " << quote_id(d.lattice.text) << " {\n  mult: ";
    print_arrow2s(o, d.mult);
    o << ";\n  inv: ";
    print_arrow1s(o, d.inv, " -> ");
    if (d.unit) o << ";\n  unit " << quote_id(d.unit->text);
    o << "\n}\n";
  }
  void operator()(const BasedDecl& d) {
    o << "based " << quote_id(d.name.text) << " = " << quote_id(d.quantale.text) << " over "
      << quote_id(d.frame.text) << " {\n  lact: ";
    print_arrow2s(o, d.lact);
    o << ";\n  ract: ";
    print_arrow2s(o, d.ract);
    o << "\n}\n";
  }
  void operator()(const MapDecl& d) {
    o << (d.kind == MapDecl::Kind::support ? "support " : "upsilon ") << quote_id(d.name.text) << " on "
      << quote_id(d.based.text) << ' ';
    print_map(o, d.values);
    o << '\n';
  }
  void operator()(const GroupoidDecl& d) {
    o << "groupoid " << quote_id(d.name.text) << " {\n  objects " << quote_id(d.objects.text) << ";\n  arrows "
      << quote_id(d.arrows.text);
    for (auto [key, field] :
         {std::pair{"dstar", &d.dstar}, {"rstar", &d.rstar}, {"ustar", &d.ustar}, {"istar", &d.istar}}) {
      o << ";\n  " << key << ' ';
      print_map(o, *field);
    }
    if (d.mstar) {
      o << ";\n  mstar {";
      for (std::size_t i = 0; i < d.mstar->size(); ++i) {
        const auto& e = (*d.mstar)[i];
        o << (i ? ",\n    " : "\n    ") << quote_id(e.arrow.text) << " -> ";
        if (e.join.empty()) o << "⊥";
        for (std::size_t j = 0; j < e.join.size(); ++j)
          o << (j ? " ∨ " : "") << quote_id(e.join[j].left.text) << "⊗" << quote_id(e.join[j].right.text);
      }
      o << "\n  }";
    }
    o << "\n}\n";
  }
  void operator()(const GenerateDecl& d) {
    o << "generate " << quote_id(d.name.text) << " = " << quote_id(d.generator.text) << '(';
    for (std::size_t i = 0; i < d.args.size(); ++i) {
      if (i) o << ", ";
      print_arg(o, d.args[i]);
    }
    o << ")\n";
  }
  void operator()(const CheckDecl& d) {
    o << "check " << quote_id(d.target.text) << " : ";
    for (std::size_t i = 0; i < d.items.size(); ++i) {
      o << (i ? ", " : "") << quote_id(d.items[i].check.text);
      if (d.items[i].expect_pass) o << (*d.items[i].expect_pass ? "=pass" : "=fail");
    }
    o << '\n';
  }
};

}  // namespace

std::string quote_id(std::string_view id) {
  bool bare = !id.empty() && id.find("->") == std::string_view::npos;
  for (unsigned char c : id) bare = bare && ident_char(c);
  if (bare) return std::string(id);
  std::string out = "\"";
  for (char c : id) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + '"';
}

SpecDocument parse_spec(std::string_view text) { return Parser(Lexer(text).run()).run(); }

SpecDocument parse_spec_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::SyntaxError, path + ": cannot open file");
  std::ostringstream s;
  s << in.rdbuf();
  try {
    return parse_spec(s.str());
  } catch (const Error& e) {
    std::string msg = e.what();
    const std::string kind = std::string(to_string(e.kind())) + ": ";
    if (msg.rfind(kind, 0) == 0) msg.erase(0, kind.size());
    throw Error(e.kind(), path + ":" + msg, e.witness());
  }
}

std::string print_spec(const SpecDocument& doc) {
  std::ostringstream o;
  for (const auto& d : doc.decls) std::visit(Printer{o}, d);
  return o.str();
}

const Name& decl_name(const Decl& d) {
  return std::visit(
      [](const auto& x) -> const Name& {
        if constexpr (std::is_same_v<std::decay_t<decltype(x)>, CheckDecl>)
          return x.target;
        else
          return x.name;
      },
      d);
}

}  // namespace qlab::dsl
