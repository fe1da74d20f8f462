// Recursive-descent parser and minimal-parenthesis printer.
//
// Precedence, loosest first: <->, -> (right associative), |, &, then the
// unary operators ~, [a], <a>, C, E, <C>, <E>. Binary & | <-> associate left.
#include <cctype>
#include <sstream>

#include "altlab/formula.hpp"

namespace altlab {

ParseError::ParseError(const std::string& what, std::size_t position)
    : Error("parse error at " + std::to_string(position) + ": " + what), position_(position) {}

UnknownAgentError::UnknownAgentError(const std::string& agent)
    : Error("unknown agent '" + agent + "'"), agent_(agent) {}

namespace {

bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

bool is_keyword(std::string_view s) { return s == "C" || s == "E" || s == "true" || s == "false"; }

enum class Tok { Ident, Not, And, Or, Implies, Iff, LParen, RParen, BoxOpen, BoxClose, DiaOpen, DiaClose, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t pos;
};

class Lexer {
 public:
  explicit Lexer(std::string_view s) : src_(s) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      skip_space();
      if (i_ >= src_.size()) {
        out.push_back({Tok::End, {}, i_});
        return out;
      }
      std::size_t start = i_;
      char c = src_[i_];
      if (ident_char(c)) {
        while (i_ < src_.size() && ident_char(src_[i_])) ++i_;
        out.push_back({Tok::Ident, std::string(src_.substr(start, i_ - start)), start});
        continue;
      }
      if (src_.compare(i_, 3, "<->") == 0) {
        i_ += 3;
        out.push_back({Tok::Iff, "<->", start});
        continue;
      }
      if (src_.compare(i_, 2, "->") == 0) {
        i_ += 2;
        out.push_back({Tok::Implies, "->", start});
        continue;
      }
      ++i_;
      switch (c) {
        case '~':
          out.push_back({Tok::Not, "~", start});
          break;
        case '&':
          out.push_back({Tok::And, "&", start});
          break;
        case '|':
          out.push_back({Tok::Or, "|", start});
          break;
        case '(':
          out.push_back({Tok::LParen, "(", start});
          break;
        case ')':
          out.push_back({Tok::RParen, ")", start});
          break;
        case '[':
          out.push_back({Tok::BoxOpen, "[", start});
          break;
        case ']':
          out.push_back({Tok::BoxClose, "]", start});
          break;
        case '<':
          out.push_back({Tok::DiaOpen, "<", start});
          break;
        case '>':
          out.push_back({Tok::DiaClose, ">", start});
          break;
        default:
          throw ParseError(std::string("unexpected character '") + c + "'", start);
      }
    }
  }

 private:
  void skip_space() {
    while (i_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[i_]))) ++i_;
  }

  std::string_view src_;
  std::size_t i_ = 0;
};

class Parser {
 public:
  Parser(std::vector<Token> toks, const std::vector<std::string>* universe)
      : toks_(std::move(toks)), universe_(universe) {}

  Formula parse_all() {
    Formula f = parse_iff();
    if (peek().kind != Tok::End) throw ParseError("unexpected '" + peek().text + "'", peek().pos);
    return f;
  }

 private:
  const Token& peek() const { return toks_[i_]; }
  const Token& next() { return toks_[i_++]; }

  void expect(Tok kind, const char* what) {
    if (peek().kind != kind) {
      throw ParseError(std::string("expected ") + what, peek().pos);
    }
    ++i_;
  }

  Formula parse_iff() {
    Formula f = parse_implies();
    while (peek().kind == Tok::Iff) {
      next();
      f = Formula::iff(f, parse_implies());
    }
    return f;
  }

  Formula parse_implies() {
    Formula f = parse_or();
    if (peek().kind == Tok::Implies) {
      next();
      return Formula::implies(f, parse_implies());
    }
    return f;
  }

  Formula parse_or() {
    Formula f = parse_and();
    while (peek().kind == Tok::Or) {
      next();
      f = Formula::disj(f, parse_and());
    }
    return f;
  }

  Formula parse_and() {
    Formula f = parse_unary();
    while (peek().kind == Tok::And) {
      next();
      f = Formula::conj(f, parse_unary());
    }
    return f;
  }

  std::string agent_name(const Token& t) {
    if (t.kind != Tok::Ident) throw ParseError("expected agent name", t.pos);
    if (!is_valid_agent_name(t.text)) throw ParseError("invalid agent name '" + t.text + "'", t.pos);
    if (universe_ != nullptr) {
      bool known = false;
      for (const auto& a : *universe_) known = known || a == t.text;
      if (!known) throw UnknownAgentError(t.text);
    }
    return t.text;
  }

  Formula parse_unary() {
    const Token& t = next();
    switch (t.kind) {
      case Tok::Not:
        return Formula::negation(parse_unary());
      case Tok::LParen: {
        Formula f = parse_iff();
        expect(Tok::RParen, "')'");
        return f;
      }
      case Tok::BoxOpen: {
        std::string a = agent_name(next());
        expect(Tok::BoxClose, "']'");
        return Formula::box(a, parse_unary());
      }
      case Tok::DiaOpen: {
        const Token& inner = next();
        if (inner.kind == Tok::Ident && (inner.text == "C" || inner.text == "E")) {
          expect(Tok::DiaClose, "'>'");
          Formula body = parse_unary();
          return inner.text == "C" ? Formula::common_dual(body) : Formula::everyone_dual(body);
        }
        std::string a = agent_name(inner);
        expect(Tok::DiaClose, "'>'");
        return Formula::diamond(a, parse_unary());
      }
      case Tok::Ident:
        if (t.text == "C") return Formula::common(parse_unary());
        if (t.text == "E") return Formula::everyone(parse_unary());
        if (t.text == "true") return Formula::verum();
        if (t.text == "false") return Formula::falsum();
        return Formula::atom(t.text);
      case Tok::End:
        throw ParseError("unexpected end of input", t.pos);
      default:
        throw ParseError("unexpected '" + t.text + "'", t.pos);
    }
  }

  std::vector<Token> toks_;
  std::size_t i_ = 0;
  const std::vector<std::string>* universe_;
};

// Binding strength used by the printer.
int precedence(Op op) {
  switch (op) {
    case Op::Iff:
      return 1;
    case Op::Implies:
      return 2;
    case Op::Or:
      return 3;
    case Op::And:
      return 4;
    default:
      return 5;
  }
}

void emit(const Formula& f, std::ostringstream& out);

void emit_at(const Formula& f, int min_prec, std::ostringstream& out) {
  if (precedence(f.op()) < min_prec) {
    out << '(';
    emit(f, out);
    out << ')';
  } else {
    emit(f, out);
  }
}

// After a bracketed modality, separate an identifier-like operand by a space.
void emit_operand_after_bracket(const Formula& f, std::ostringstream& out) {
  Op op = f.op();
  bool word = op == Op::Atom || op == Op::True || op == Op::False || op == Op::Common || op == Op::Everyone;
  if (word) out << ' ';
  emit_at(f, 5, out);
}

void emit(const Formula& f, std::ostringstream& out) {
  int p = precedence(f.op());
  switch (f.op()) {
    case Op::Atom:
      out << f.name();
      return;
    case Op::False:
      out << "false";
      return;
    case Op::True:
      out << "true";
      return;
    case Op::Not:
      out << '~';
      emit_at(f.operand(), 5, out);
      return;
    case Op::Box:
      out << '[' << f.name() << ']';
      emit_operand_after_bracket(f.operand(), out);
      return;
    case Op::Diamond:
      out << '<' << f.name() << '>';
      emit_operand_after_bracket(f.operand(), out);
      return;
    case Op::CommonDual:
      out << "<C>";
      emit_operand_after_bracket(f.operand(), out);
      return;
    case Op::EveryoneDual:
      out << "<E>";
      emit_operand_after_bracket(f.operand(), out);
      return;
    case Op::Common:
      out << "C ";
      emit_at(f.operand(), 5, out);
      return;
    case Op::Everyone:
      out << "E ";
      emit_at(f.operand(), 5, out);
      return;
    case Op::And:
    case Op::Or:
    case Op::Iff:
      emit_at(f.lhs(), p, out);
      out << (f.op() == Op::And ? " & " : f.op() == Op::Or ? " | " : " <-> ");
      emit_at(f.rhs(), p + 1, out);
      return;
    case Op::Implies:
      emit_at(f.lhs(), p + 1, out);
      out << " -> ";
      emit_at(f.rhs(), p, out);
      return;
  }
}

}  // namespace

bool is_valid_agent_name(std::string_view name) {
  if (name.empty() || is_keyword(name)) return false;
  for (char c : name) {
    if (!ident_char(c)) return false;
  }
  return true;
}

Formula parse_formula(std::string_view text) {
  Parser p(Lexer(text).run(), nullptr);
  return p.parse_all();
}

Formula parse_formula(std::string_view text, const std::vector<std::string>& universe) {
  Parser p(Lexer(text).run(), &universe);
  return p.parse_all();
}

std::string render(const Formula& f) {
  std::ostringstream out;
  emit(f, out);
  return out.str();
}

}  // namespace altlab
