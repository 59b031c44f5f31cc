#include "koz/dsl.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace koz {

namespace {

struct Token {
  enum class Kind { ident, number, symbol, end, eof };
  Kind kind = Kind::eof;
  std::string text;  // ident text, number digits, or symbol character
  int line = 0;
  int col = 0;
};

class Lexer {
 public:
  explicit Lexer(const std::string& text) : text_(text) { advance(); }

  const Token& peek() const { return tok_; }
  Token take() {
    Token t = tok_;
    advance();
    return t;
  }

  /// Raw remainder of the current line (for free-form name statements),
  /// including the already-lexed lookahead token.
  std::string rest_of_line() {
    std::string out;
    if (tok_.kind == Token::Kind::ident || tok_.kind == Token::Kind::number ||
        tok_.kind == Token::Kind::symbol)
      out = tok_.text;
    while (pos_ < text_.size() && text_[pos_] != '\n' && text_[pos_] != '#' &&
           text_[pos_] != ';')
      out += text_[pos_++];
    size_t b = out.find_first_not_of(" \t");
    size_t e = out.find_last_not_of(" \t");
    out = (b == std::string::npos) ? "" : out.substr(b, e - b + 1);
    advance();
    return out;
  }

 private:
  void advance() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
      } else if (c == ' ' || c == '\t' || c == '\r') {
        ++pos_;
        ++col_;
      } else {
        break;
      }
    }
    if (pos_ >= text_.size()) {
      tok_ = {Token::Kind::eof, "", line_, col_};
      return;
    }
    char c = text_[pos_];
    int line = line_, col = col_;
    if (c == '\n' || c == ';') {
      ++pos_;
      if (c == '\n') {
        ++line_;
        col_ = 1;
      } else {
        ++col_;
      }
      tok_ = {Token::Kind::end, std::string(1, c), line, col};
      return;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::string digits;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        digits += text_[pos_++];
        ++col_;
      }
      tok_ = {Token::Kind::number, digits, line, col};
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::string id;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
        id += text_[pos_++];
        ++col_;
      }
      tok_ = {Token::Kind::ident, id, line, col};
      return;
    }
    static const std::string symbols = "*^+-=/";
    if (symbols.find(c) != std::string::npos) {
      ++pos_;
      ++col_;
      tok_ = {Token::Kind::symbol, std::string(1, c), line, col};
      return;
    }
    throw ParseError(line, col, std::string("unexpected character '") + c + "'");
  }

  const std::string& text_;
  size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
  Token tok_;
};

[[noreturn]] void fail(const Token& t, const std::string& msg) {
  throw ParseError(t.line, t.col, msg + " (got " +
                                      (t.kind == Token::Kind::eof
                                           ? "end of input"
                                           : t.kind == Token::Kind::end ? "end of statement"
                                                                        : "'" + t.text + "'") +
                                      ")");
}

bool at_statement_end(const Lexer& lx) {
  return lx.peek().kind == Token::Kind::end || lx.peek().kind == Token::Kind::eof;
}

void expect_statement_end(Lexer& lx) {
  if (!at_statement_end(lx)) fail(lx.peek(), "expected end of statement");
  if (lx.peek().kind == Token::Kind::end) lx.take();
}

BigInt parse_bigint(const std::string& digits) {
  return BigInt(digits);
}

/// Scalar literal: [-] INT [/ INT]
Scalar parse_scalar_literal(Lexer& lx, const Field& F) {
  bool neg = false;
  if (lx.peek().kind == Token::Kind::symbol && lx.peek().text == "-") {
    lx.take();
    neg = true;
  }
  Token num = lx.take();
  if (num.kind != Token::Kind::number) fail(num, "expected a number");
  Scalar v(parse_bigint(num.text));
  if (lx.peek().kind == Token::Kind::symbol && lx.peek().text == "/") {
    lx.take();
    Token den = lx.take();
    if (den.kind != Token::Kind::number) fail(den, "expected a denominator");
    BigInt d = parse_bigint(den.text);
    if (d == 0) fail(den, "zero denominator");
    v /= Scalar(d);
  }
  if (neg) v = -v;
  return F.canon(v);
}

long parse_int_token(Lexer& lx, const std::string& what) {
  Token t = lx.take();
  if (t.kind != Token::Kind::number) fail(t, "expected " + what);
  return std::stol(t.text);
}

/// Noncommutative polynomial as per-degree coefficient maps.
using Poly = std::map<int, std::map<WordIndex, Scalar>>;

struct PolyContext {
  const Field& F;
  const std::map<std::string, Scalar>& params;
  const std::map<std::string, int>& gens;
};

// factor := scalar-literal | ident, optionally followed by ^ INT
// term   := factor (* factor)*
// poly   := [+|-] term ((+|-) term)*
void parse_term(Lexer& lx, const PolyContext& ctx, bool negate, Poly& out) {
  Scalar coef = ctx.F.from_int(negate ? -1 : 1);
  std::vector<int> letters;
  bool first = true;
  while (true) {
    Token t = lx.peek();
    bool is_scalar;
    Scalar sval;
    int letter = -1;
    if (t.kind == Token::Kind::number) {
      sval = parse_scalar_literal(lx, ctx.F);
      is_scalar = true;
    } else if (t.kind == Token::Kind::ident) {
      lx.take();
      auto pit = ctx.params.find(t.text);
      auto git = ctx.gens.find(t.text);
      if (pit != ctx.params.end()) {
        sval = pit->second;
        is_scalar = true;
      } else if (git != ctx.gens.end()) {
        letter = git->second;
        is_scalar = false;
      } else {
        fail(t, "unknown identifier '" + t.text + "'");
      }
    } else {
      fail(t, first ? "expected a term" : "expected a factor after '*'");
    }
    first = false;
    long power = 1;
    if (lx.peek().kind == Token::Kind::symbol && lx.peek().text == "^") {
      lx.take();
      power = parse_int_token(lx, "an exponent");
      if (power < 1) fail(lx.peek(), "exponent must be >= 1");
    }
    if (is_scalar) {
      for (long i = 0; i < power; ++i) coef = ctx.F.mul(coef, sval);
    } else {
      for (long i = 0; i < power; ++i) letters.push_back(letter);
    }
    if (lx.peek().kind == Token::Kind::symbol && lx.peek().text == "*") {
      lx.take();
      continue;
    }
    break;
  }
  if (ctx.F.is_zero(coef)) return;
  int deg = static_cast<int>(letters.size());
  WordIndex w = word_from_letters(letters, static_cast<int>(ctx.gens.size()));
  auto& slot = out[deg][w];
  slot = ctx.F.add(slot, coef);
  if (ctx.F.is_zero(slot)) {
    out[deg].erase(w);
    if (out[deg].empty()) out.erase(deg);
  }
}

Poly parse_poly(Lexer& lx, const PolyContext& ctx) {
  Poly out;
  bool neg = false;
  if (lx.peek().kind == Token::Kind::symbol &&
      (lx.peek().text == "-" || lx.peek().text == "+")) {
    neg = (lx.take().text == "-");
  }
  parse_term(lx, ctx, neg, out);
  while (lx.peek().kind == Token::Kind::symbol &&
         (lx.peek().text == "+" || lx.peek().text == "-")) {
    neg = (lx.take().text == "-");
    parse_term(lx, ctx, neg, out);
  }
  return out;
}

TensorElement poly_part(const Field& F, int d, const Poly& p, int deg) {
  TensorElement t = TensorElement::zero(d, deg);
  auto it = p.find(deg);
  if (it == p.end()) return t;
  for (const auto& [w, c] : it->second) t.coords.push_back({w, c});
  return t;
}

Field parse_field_statement(Lexer& lx) {
  Token t = lx.take();
  if (t.kind != Token::Kind::ident) fail(t, "expected 'rational' or 'prime'");
  if (t.text == "rational") return Field::rationals();
  if (t.text == "prime") return Field::prime(parse_int_token(lx, "a prime modulus"));
  fail(t, "expected 'rational' or 'prime'");
}

}  // namespace

PresentationDocument parse_presentation(const std::string& text) {
  Lexer lx(text);
  PresentationDocument doc;
  std::map<std::string, Scalar> params;
  std::map<std::string, int> gens;
  bool n_declared = false;

  while (lx.peek().kind != Token::Kind::eof) {
    if (lx.peek().kind == Token::Kind::end) {
      lx.take();
      continue;
    }
    Token head = lx.take();
    if (head.kind != Token::Kind::ident) fail(head, "expected a statement keyword");
    if (head.text == "field") {
      doc.field = parse_field_statement(lx);
      expect_statement_end(lx);
    } else if (head.text == "name") {
      doc.name = lx.rest_of_line();
    } else if (head.text == "param") {
      Token id = lx.take();
      if (id.kind != Token::Kind::ident) fail(id, "expected a parameter name");
      Token eq = lx.take();
      if (eq.kind != Token::Kind::symbol || eq.text != "=") fail(eq, "expected '='");
      params[id.text] = parse_scalar_literal(lx, doc.field);
      expect_statement_end(lx);
    } else if (head.text == "generators") {
      if (!gens.empty()) fail(head, "generators already declared");
      while (lx.peek().kind == Token::Kind::ident) {
        Token id = lx.take();
        if (gens.count(id.text)) fail(id, "duplicate generator '" + id.text + "'");
        gens[id.text] = static_cast<int>(doc.generators.size());
        doc.generators.push_back(id.text);
      }
      if (doc.generators.empty()) fail(lx.peek(), "expected at least one generator");
      expect_statement_end(lx);
    } else if (head.text == "N") {
      doc.N = static_cast<int>(parse_int_token(lx, "the homogeneity degree"));
      if (doc.N < 2) fail(head, "homogeneity degree must be >= 2");
      if (!doc.relations.empty()) fail(head, "N must precede the relations");
      n_declared = true;
      expect_statement_end(lx);
    } else if (head.text == "relation") {
      if (doc.generators.empty()) fail(head, "generators must precede the relations");
      (void)n_declared;
      PolyContext ctx{doc.field, params, gens};
      Poly lhs = parse_poly(lx, ctx);
      Poly rhs;
      if (lx.peek().kind == Token::Kind::symbol && lx.peek().text == "=") {
        lx.take();
        rhs = parse_poly(lx, ctx);
      }
      expect_statement_end(lx);
      for (const auto& [deg, terms] : lhs)
        if (deg > doc.N && !terms.empty())
          fail(head, "relation degree exceeds N = " + std::to_string(doc.N));
      for (const auto& [deg, terms] : rhs)
        if (deg >= doc.N && !terms.empty())
          fail(head, "right-hand side must have degree strictly below N");
      // f = lhs - rhs = 0 as top - sum(lower): lower[k] = rhs_k - lhs_k.
      PresentationDocument::Relation rel;
      rel.top = poly_part(doc.field, doc.d(), lhs, doc.N);
      if (rel.top.is_zero()) fail(head, "relation has no degree-N part");
      for (int k = 0; k < doc.N; ++k) {
        TensorElement lo = te_add(doc.field, poly_part(doc.field, doc.d(), rhs, k),
                                  te_scale(doc.field, poly_part(doc.field, doc.d(), lhs, k),
                                           doc.field.from_int(-1)));
        rel.lower.push_back(lo);
      }
      doc.relations.push_back(std::move(rel));
    } else {
      fail(head, "unknown statement '" + head.text + "'");
    }
  }
  if (doc.generators.empty()) throw ParseError(1, 1, "document declares no generators");
  return doc;
}

bool PresentationDocument::is_homogeneous() const {
  for (const auto& r : relations)
    for (const auto& lo : r.lower)
      if (!lo.is_zero()) return false;
  return true;
}

HomogeneousPresentation PresentationDocument::to_homogeneous() const {
  if (!is_homogeneous())
    throw PreconditionError("presentation has lower-degree relation parts");
  std::vector<SparseVec> rows;
  for (const auto& r : relations) rows.push_back(r.top.coords);
  HomogeneousPresentation p{d(), N, TensorSubspace(field, d(), N, rows), name, generators};
  p.validate();
  return p;
}

NonhomogeneousPresentation PresentationDocument::to_nonhomogeneous() const {
  long r = static_cast<long>(relations.size());
  // Well-definedness: combinations of tops that vanish must kill the lower
  // parts as well.
  SparseMatrix tops(word_count(d(), N), r);  // columns = relation tops
  for (long j = 0; j < r; ++j)
    for (const auto& [w, c] : relations[static_cast<size_t>(j)].top.coords)
      tops.set(field, w, j, c);
  SparseMatrix ker = kernel(field, tops);
  for (WordIndex kv = 0; kv < ker.rows; ++kv) {
    const SparseVec& comb = ker.row[static_cast<size_t>(kv)];
    for (int k = 0; k < N; ++k) {
      TensorElement acc = TensorElement::zero(d(), k);
      for (const auto& [j, c] : comb)
        acc = te_add(field, acc,
                     te_scale(field, relations[static_cast<size_t>(j)].lower[static_cast<size_t>(k)], c));
      if (!acc.is_zero()) {
        std::string witness;
        for (const auto& [j, c] : comb) {
          if (!witness.empty()) witness += " + ";
          witness += scalar_str(field, c) + "*relation[" + std::to_string(j) + "]";
        }
        throw ParseError(1, 1,
                         "lower-degree parts are not well-defined on the relation space "
                         "(vanishing combination " + witness + " has nonzero lower part)");
      }
    }
  }

  NonhomogeneousPresentation out;
  out.d = d();
  out.N = N;
  out.name = name;
  std::vector<SparseVec> rows;
  for (const auto& rel : relations) rows.push_back(rel.top.coords);
  out.R = TensorSubspace(field, d(), N, rows);
  out.phi.assign(static_cast<size_t>(N), {});
  for (long i = 0; i < out.R.dim(); ++i) {
    SparseVec comb;
    if (!sm_solve(field, tops, out.R.basis()[static_cast<size_t>(i)], comb))
      throw PreconditionError("internal error: echelon basis not in the relation span");
    for (int k = 0; k < N; ++k) {
      TensorElement acc = TensorElement::zero(d(), k);
      for (const auto& [j, c] : comb)
        acc = te_add(field, acc,
                     te_scale(field, relations[static_cast<size_t>(j)].lower[static_cast<size_t>(k)], c));
      out.phi[static_cast<size_t>(k)].push_back(acc);
    }
  }
  out.validate();
  return out;
}

PotentialDocument parse_potential(const std::string& text) {
  Lexer lx(text);
  PotentialDocument doc;
  std::map<std::string, Scalar> params;
  std::map<WordIndex, Scalar> entries;
  bool m_declared = false;

  while (lx.peek().kind != Token::Kind::eof) {
    if (lx.peek().kind == Token::Kind::end) {
      lx.take();
      continue;
    }
    Token head = lx.take();
    if (head.kind != Token::Kind::ident) fail(head, "expected a statement keyword");
    if (head.text == "field") {
      doc.field = parse_field_statement(lx);
      expect_statement_end(lx);
    } else if (head.text == "name") {
      doc.name = lx.rest_of_line();
    } else if (head.text == "param") {
      Token id = lx.take();
      if (id.kind != Token::Kind::ident) fail(id, "expected a parameter name");
      Token eq = lx.take();
      if (eq.kind != Token::Kind::symbol || eq.text != "=") fail(eq, "expected '='");
      params[id.text] = parse_scalar_literal(lx, doc.field);
      expect_statement_end(lx);
    } else if (head.text == "generators") {
      while (lx.peek().kind == Token::Kind::ident) doc.generators.push_back(lx.take().text);
      if (doc.generators.empty()) fail(lx.peek(), "expected at least one generator");
      expect_statement_end(lx);
    } else if (head.text == "m") {
      doc.m = static_cast<int>(parse_int_token(lx, "the potential degree"));
      if (doc.m < 1) fail(head, "potential degree must be >= 1");
      m_declared = true;
      expect_statement_end(lx);
    } else if (head.text == "coef") {
      if (!m_declared) fail(head, "m must precede the coefficients");
      if (doc.generators.empty()) fail(head, "generators must precede the coefficients");
      std::vector<int> letters;
      for (int i = 0; i < doc.m; ++i) {
        long idx = parse_int_token(lx, "a generator index");
        if (idx < 0 || idx >= doc.d())
          fail(head, "generator index " + std::to_string(idx) + " out of range");
        letters.push_back(static_cast<int>(idx));
      }
      Token eq = lx.take();
      if (eq.kind != Token::Kind::symbol || eq.text != "=") fail(eq, "expected '='");
      Scalar v;
      if (lx.peek().kind == Token::Kind::ident) {
        Token id = lx.take();
        auto it = params.find(id.text);
        if (it == params.end()) fail(id, "unknown parameter '" + id.text + "'");
        v = it->second;
      } else {
        v = parse_scalar_literal(lx, doc.field);
      }
      expect_statement_end(lx);
      if (doc.field.is_zero(v)) fail(head, "zero coefficient entry");
      WordIndex w = word_from_letters(letters, doc.d());
      if (entries.count(w)) fail(head, "duplicate coefficient entry");
      entries[w] = v;
    } else {
      fail(head, "unknown statement '" + head.text + "'");
    }
  }
  if (doc.generators.empty()) throw ParseError(1, 1, "document declares no generators");
  if (entries.empty()) throw ParseError(1, 1, "potential has no coefficients");
  doc.w = TensorElement{doc.d(), doc.m, sv_normalized(doc.field, std::move(entries))};
  return doc;
}

RepresentationDocument parse_representation(const std::string& text) {
  Lexer lx(text);
  RepresentationDocument doc;
  bool dim_declared = false;

  while (lx.peek().kind != Token::Kind::eof) {
    if (lx.peek().kind == Token::Kind::end) {
      lx.take();
      continue;
    }
    Token head = lx.take();
    if (head.kind != Token::Kind::ident) fail(head, "expected a statement keyword");
    if (head.text == "field") {
      doc.field = parse_field_statement(lx);
      expect_statement_end(lx);
    } else if (head.text == "name") {
      doc.name = lx.rest_of_line();
    } else if (head.text == "side") {
      Token t = lx.take();
      if (t.kind != Token::Kind::ident || (t.text != "left" && t.text != "right"))
        fail(t, "expected 'left' or 'right'");
      doc.rep.side =
          t.text == "left" ? Representation::Side::left : Representation::Side::right;
      expect_statement_end(lx);
    } else if (head.text == "dim") {
      doc.rep.dimV = parse_int_token(lx, "the module dimension");
      if (doc.rep.dimV < 0) fail(head, "dimension must be >= 0");
      dim_declared = true;
      expect_statement_end(lx);
    } else if (head.text == "matrix") {
      if (!dim_declared) fail(head, "dim must precede the matrices");
      long n = doc.rep.dimV;
      SparseMatrix m(n, n);
      for (long r = 0; r < n; ++r)
        for (long c = 0; c < n; ++c) {
          Scalar v = parse_scalar_literal(lx, doc.field);
          if (!doc.field.is_zero(v)) m.set(doc.field, r, c, v);
        }
      expect_statement_end(lx);
      doc.rep.rho.push_back(std::move(m));
    } else {
      fail(head, "unknown statement '" + head.text + "'");
    }
  }
  if (!dim_declared) throw ParseError(1, 1, "document declares no dimension");
  if (doc.rep.rho.empty()) throw ParseError(1, 1, "document declares no matrices");
  return doc;
}

std::string scalar_str(const Field& F, const Scalar& c) {
  Scalar v = F.canon(c);
  std::ostringstream os;
  BigInt num = boost::multiprecision::numerator(v);
  BigInt den = boost::multiprecision::denominator(v);
  os << num;
  if (den != 1) os << "/" << den;
  return os.str();
}

namespace {

std::string field_line(const Field& F) {
  return F.is_rational() ? "field rational\n"
                         : "field prime " + std::to_string(F.modulus()) + "\n";
}

std::string poly_str(const Field& F, const std::vector<std::string>& gens,
                     const std::vector<std::pair<int, SparseVec>>& parts) {
  std::string out;
  int d = static_cast<int>(gens.size());
  bool first = true;
  for (const auto& [deg, coords] : parts) {
    for (const auto& [w, c] : coords) {
      Scalar v = F.canon(c);
      bool neg = v < 0;
      Scalar mag = neg ? Scalar(-v) : v;
      if (first) {
        if (neg) out += "-";
        first = false;
      } else {
        out += neg ? " - " : " + ";
      }
      std::string term;
      if (mag != 1 || deg == 0) term = scalar_str(F, mag);
      auto letters = word_letters(w, d, deg);
      for (int l : letters) {
        if (!term.empty()) term += "*";
        term += gens[static_cast<size_t>(l)];
      }
      out += term;
    }
  }
  return first ? "0" : out;
}

}  // namespace

std::string tensor_str(const Field& F, const std::vector<std::string>& gens,
                       const TensorElement& t) {
  return poly_str(F, gens, {{t.degree, t.coords}});
}

std::string print_presentation(const PresentationDocument& doc) {
  std::string out;
  if (!doc.name.empty()) out += "name " + doc.name + "\n";
  out += field_line(doc.field);
  out += "generators";
  for (const auto& g : doc.generators) out += " " + g;
  out += "\nN " + std::to_string(doc.N) + "\n";
  for (const auto& rel : doc.relations) {
    out += "relation " + poly_str(doc.field, doc.generators, {{doc.N, rel.top.coords}});
    std::vector<std::pair<int, SparseVec>> lows;
    for (int k = 0; k < doc.N; ++k)
      if (!rel.lower[static_cast<size_t>(k)].is_zero())
        lows.push_back({k, rel.lower[static_cast<size_t>(k)].coords});
    if (!lows.empty())
      out += " = " + poly_str(doc.field, doc.generators, lows);
    out += "\n";
  }
  return out;
}

std::string print_potential(const PotentialDocument& doc) {
  std::string out;
  if (!doc.name.empty()) out += "name " + doc.name + "\n";
  out += field_line(doc.field);
  out += "generators";
  for (const auto& g : doc.generators) out += " " + g;
  out += "\nm " + std::to_string(doc.m) + "\n";
  for (const auto& [w, c] : doc.w.coords) {
    out += "coef";
    for (int l : word_letters(w, doc.d(), doc.m)) out += " " + std::to_string(l);
    out += " = " + scalar_str(doc.field, c) + "\n";
  }
  return out;
}

std::string print_representation(const RepresentationDocument& doc) {
  std::string out;
  if (!doc.name.empty()) out += "name " + doc.name + "\n";
  out += field_line(doc.field);
  out += "side ";
  out += doc.rep.side == Representation::Side::left ? "left" : "right";
  out += "\ndim " + std::to_string(doc.rep.dimV) + "\n";
  for (const auto& m : doc.rep.rho) {
    out += "matrix";
    for (long r = 0; r < doc.rep.dimV; ++r)
      for (long c = 0; c < doc.rep.dimV; ++c) out += " " + scalar_str(doc.field, m.get(r, c));
    out += "\n";
  }
  return out;
}

}  // namespace koz
