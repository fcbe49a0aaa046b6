#include "lpcheck/syntax.hpp"

#include <cctype>

#include "parse_internal.hpp"

namespace lpcheck {

SyntaxError::SyntaxError(const std::string& message, std::size_t line, std::size_t column)
    : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
      message_(message),
      line_(line),
      column_(column) {}

bool is_reserved_word(std::string_view word) { return word == "in" || word == "by"; }

namespace parse {

namespace {

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

}  // namespace

std::vector<Token> lex(std::string_view text, std::size_t first_line) {
  std::vector<Token> out;
  std::size_t line = first_line;
  std::size_t col = 1;
  std::size_t i = 0;
  auto push = [&](Tok k, std::size_t len) {
    out.push_back({k, std::string(text.substr(i, len)), line, col});
    i += len;
    col += len;
  };
  while (i < text.size()) {
    char c = text[i];
    if (c == '\n') {
      ++line;
      col = 1;
      ++i;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      ++col;
      continue;
    }
    if (c == '#') {
      while (i < text.size() && text[i] != '\n') ++i;
      continue;
    }
    auto at = [&](std::size_t k) { return i + k < text.size() ? text[i + k] : '\0'; };
    if (ident_start(c)) {
      std::size_t n = 1;
      while (ident_char(at(n))) ++n;
      bool upper = std::isupper(static_cast<unsigned char>(c)) != 0;
      push(upper ? Tok::UpperIdent : Tok::LowerIdent, n);
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t n = 1;
      while (std::isdigit(static_cast<unsigned char>(at(n)))) ++n;
      while (std::islower(static_cast<unsigned char>(at(n)))) ++n;
      if (ident_char(at(n))) throw SyntaxError("malformed step id", line, col);
      push(Tok::Number, n);
      continue;
    }
    switch (c) {
      case '(': push(Tok::LParen, 1); continue;
      case ')': push(Tok::RParen, 1); continue;
      case '{': push(Tok::LBrace, 1); continue;
      case '}': push(Tok::RBrace, 1); continue;
      case '[': push(Tok::LBrack, 1); continue;
      case ']': push(Tok::RBrack, 1); continue;
      case '&': push(Tok::Amp, 1); continue;
      case '~': push(Tok::Tilde, 1); continue;
      case ',': push(Tok::Comma, 1); continue;
      case ';': push(Tok::Semicolon, 1); continue;
      case '|':
        if (at(1) == '-' && at(2) != '>') push(Tok::Turnstile, 2);
        else push(Tok::Bar, 1);
        continue;
      case '-':
        if (at(1) == '>') {
          push(Tok::Arrow, 2);
          continue;
        }
        break;
      case '<':
        if (at(1) == '-' && at(2) == '>') {
          push(Tok::Iff, 3);
          continue;
        }
        break;
      case ':':
        if (at(1) == '=') push(Tok::Assign, 2);
        else push(Tok::Colon, 1);
        continue;
      default:
        break;
    }
    throw SyntaxError(std::string("unexpected character '") + c + "'", line, col);
  }
  out.push_back({Tok::End, "", line, col});
  return out;
}

std::string describe(Tok kind) {
  switch (kind) {
    case Tok::LowerIdent: return "identifier";
    case Tok::UpperIdent: return "constant";
    case Tok::Number: return "step id";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::LBrace: return "'{'";
    case Tok::RBrace: return "'}'";
    case Tok::LBrack: return "'['";
    case Tok::RBrack: return "']'";
    case Tok::Bar: return "'|'";
    case Tok::Amp: return "'&'";
    case Tok::Tilde: return "'~'";
    case Tok::Arrow: return "'->'";
    case Tok::Iff: return "'<->'";
    case Tok::Turnstile: return "'|-'";
    case Tok::Comma: return "','";
    case Tok::Colon: return "':'";
    case Tok::Assign: return "':='";
    case Tok::Semicolon: return "';'";
    case Tok::End: return "end of input";
  }
  return "token";
}

const Token& TokenStream::peek(std::size_t ahead) const {
  std::size_t k = pos_ + ahead;
  return k < toks_.size() ? toks_[k] : toks_.back();
}

bool TokenStream::at_word(std::string_view w) const {
  return at(Tok::LowerIdent) && peek().text == w;
}

const Token& TokenStream::next() {
  const Token& t = peek();
  if (pos_ < toks_.size() - 1) ++pos_;
  return t;
}

const Token& TokenStream::expect(Tok k, std::string_view what) {
  if (!at(k)) fail("expected " + std::string(what) + ", found " + (at_end() ? describe(Tok::End) : "'" + peek().text + "'"));
  return next();
}

void TokenStream::expect_word(std::string_view w) {
  if (!at_word(w)) fail("expected '" + std::string(w) + "'");
  next();
}

void TokenStream::fail(const std::string& message) const { fail_at(peek(), message); }

void TokenStream::fail_at(const Token& t, const std::string& message) const {
  throw SyntaxError(message, t.line, t.column);
}

Formula TokenStream::formula() { return iff_level(); }

Judgment TokenStream::judgment() {
  if (at(Tok::Turnstile)) {
    next();
    return Judgment::theorem(formula());
  }
  Formula first = formula();
  if (at(Tok::Turnstile)) {
    next();
    return Judgment::consequence(first, formula());
  }
  return Judgment::theorem(first);
}

Formula TokenStream::iff_level() {
  Formula l = imp_level();
  if (at(Tok::Iff)) {
    next();
    Formula r = iff_level();
    return Formula::iff(l, r);
  }
  return l;
}

Formula TokenStream::imp_level() {
  Formula l = or_level();
  if (at(Tok::Arrow)) {
    next();
    Formula r = imp_level();
    return Formula::imp(l, r);
  }
  return l;
}

Formula TokenStream::or_level() {
  Formula l = and_level();
  while (at(Tok::Bar)) {
    next();
    l = Formula::disj(l, and_level());
  }
  return l;
}

Formula TokenStream::and_level() {
  Formula l = unary();
  while (at(Tok::Amp)) {
    next();
    l = Formula::conj(l, unary());
  }
  return l;
}

Formula TokenStream::unary() {
  if (at(Tok::Tilde)) {
    next();
    return Formula::negate(unary());
  }
  return primary();
}

Formula TokenStream::membership(Term lhs) {
  expect_word("in");
  Term rhs = term();
  return Formula::member(std::move(lhs), std::move(rhs));
}

Formula TokenStream::truth_application(const Token& predicate) {
  const Token& open = expect(Tok::LBrack, "'['");
  Term arg;
  if (at(Tok::UpperIdent) && at(Tok::RBrack, 1) ) {
    arg = Term::constant(next().text);
  } else {
    Formula inner = formula();
    try {
      arg = Term::quote(inner);
    } catch (const FormulaError& e) {
      fail_at(open, e.what());
    }
  }
  expect(Tok::RBrack, "']'");
  return Formula::truth(std::move(arg), predicate.text);
}

Formula TokenStream::primary() {
  const Token& t = peek();
  switch (t.kind) {
    case Tok::LParen: {
      next();
      Formula f = formula();
      expect(Tok::RParen, "')'");
      return f;
    }
    case Tok::LowerIdent: {
      if (is_reserved_word(t.text)) fail("unexpected reserved word '" + t.text + "'");
      next();
      if (at_word("in")) return membership(Term::var(t.text));
      return Formula::atom(t.text);
    }
    case Tok::UpperIdent: {
      next();
      if (at(Tok::LBrack)) return truth_application(t);
      if (at_word("in")) return membership(Term::constant(t.text));
      return Formula::named(t.text);
    }
    case Tok::LBrace:
    case Tok::LBrack: {
      Term lhs = term();
      return membership(std::move(lhs));
    }
    default:
      fail(t.kind == Tok::End ? "expected a formula, found end of input"
                              : "expected a formula, found '" + t.text + "'");
  }
}

Term TokenStream::term() {
  const Token& t = peek();
  switch (t.kind) {
    case Tok::LowerIdent:
      if (is_reserved_word(t.text)) fail("unexpected reserved word '" + t.text + "'");
      next();
      return Term::var(t.text);
    case Tok::UpperIdent:
      next();
      return Term::constant(t.text);
    case Tok::LBrace: {
      next();
      const Token& v = expect(Tok::LowerIdent, "a bound variable");
      if (is_reserved_word(v.text)) fail_at(v, "reserved word used as a variable");
      std::string bound = v.text;
      expect(Tok::Bar, "'|'");
      Formula body = formula();
      expect(Tok::RBrace, "'}'");
      return Term::set_abs(std::move(bound), std::move(body));
    }
    case Tok::LBrack: {
      const Token& open = next();
      Formula inner = formula();
      expect(Tok::RBrack, "']'");
      try {
        return Term::quote(inner);
      } catch (const FormulaError& e) {
        fail_at(open, e.what());
      }
    }
    default:
      fail(t.kind == Tok::End ? "expected a term, found end of input" : "expected a term, found '" + t.text + "'");
  }
}

}  // namespace parse

Formula parse_formula(std::string_view text) {
  parse::TokenStream ts(parse::lex(text));
  Formula f = ts.formula();
  if (!ts.at_end()) ts.fail("unexpected '" + ts.peek().text + "' after formula");
  return f;
}

Term parse_term(std::string_view text) {
  parse::TokenStream ts(parse::lex(text));
  Term t = ts.term();
  if (!ts.at_end()) ts.fail("unexpected '" + ts.peek().text + "' after term");
  return t;
}

// ---------------------------------------------------------------------------
// Printing

namespace {

enum Prec { kIff = 1, kImp = 2, kOr = 3, kAnd = 4, kNot = 5, kAtomic = 6 };

void render(const Formula& f, int ctx, std::string& out);

void render(const Term& t, std::string& out) {
  switch (t.kind()) {
    case Term::Kind::Var:
    case Term::Kind::Const:
      out += t.name();
      return;
    case Term::Kind::SetAbs:
      out += '{';
      out += t.name();
      out += " | ";
      render(t.body(), 0, out);
      out += '}';
      return;
    case Term::Kind::Quote:
      out += '[';
      render(t.body(), 0, out);
      out += ']';
      return;
  }
}

void render(const Formula& f, int ctx, std::string& out) {
  auto bracket = [&](int prec, auto&& body) {
    bool paren = prec < ctx;
    if (paren) out += '(';
    body();
    if (paren) out += ')';
  };
  if (auto halves = as_iff(f)) {
    bracket(kIff, [&] {
      render(halves->first, kIff + 1, out);
      out += " <-> ";
      render(halves->second, kIff, out);
    });
    return;
  }
  switch (f.kind()) {
    case Formula::Kind::Atom:
    case Formula::Kind::Named:
      out += f.name();
      return;
    case Formula::Kind::Truth:
      out += f.name();
      out += '[';
      if (f.term().kind() == Term::Kind::Const) out += f.term().name();
      else render(f.term().body(), 0, out);
      out += ']';
      return;
    case Formula::Kind::Member:
      render(f.term(), out);
      out += " in ";
      render(f.rhs_term(), out);
      return;
    case Formula::Kind::Not:
      out += '~';
      render(f.left(), kNot, out);
      return;
    case Formula::Kind::And:
      bracket(kAnd, [&] {
        render(f.left(), kAnd, out);
        out += " & ";
        render(f.right(), kAnd + 1, out);
      });
      return;
    case Formula::Kind::Or:
      bracket(kOr, [&] {
        render(f.left(), kOr, out);
        out += " | ";
        render(f.right(), kOr + 1, out);
      });
      return;
    case Formula::Kind::Imp:
      bracket(kImp, [&] {
        render(f.left(), kImp + 1, out);
        out += " -> ";
        render(f.right(), kImp, out);
      });
      return;
  }
}

}  // namespace

std::string render_formula(const Formula& f) {
  std::string out;
  render(f, 0, out);
  return out;
}

std::string render_term(const Term& t) {
  std::string out;
  render(t, out);
  return out;
}

}  // namespace lpcheck
