#include <cctype>
#include <unordered_map>

#include "hda/langset.hpp"

namespace hda {

namespace {

ExprPtr node(Expr::Kind k, ExprPtr a = nullptr, ExprPtr b = nullptr) {
  auto e = std::make_shared<Expr>();
  e->kind = k;
  e->lhs = std::move(a);
  e->rhs = std::move(b);
  return e;
}

}  // namespace

ExprPtr make_empty() { return node(Expr::Kind::Empty); }
ExprPtr make_eps() { return node(Expr::Kind::Eps); }

ExprPtr make_atom(char label, bool src, bool tgt) {
  auto e = std::make_shared<Expr>();
  e->kind = Expr::Kind::Atom;
  e->label = label;
  e->src = src;
  e->tgt = tgt;
  return e;
}

ExprPtr make_union(ExprPtr a, ExprPtr b) { return node(Expr::Kind::Union, std::move(a), std::move(b)); }
ExprPtr make_glue(ExprPtr a, ExprPtr b) { return node(Expr::Kind::Glue, std::move(a), std::move(b)); }
ExprPtr make_par(ExprPtr a, ExprPtr b) { return node(Expr::Kind::Par, std::move(a), std::move(b)); }
ExprPtr make_plus(ExprPtr a) { return node(Expr::Kind::Plus, std::move(a)); }

namespace {

class Parser {
 public:
  explicit Parser(const std::string& s) : s_(s) {}

  ExprPtr run() {
    ExprPtr e = parse_union();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) {
    throw Error(ErrorKind::Syntax, msg + " at position " + std::to_string(pos_));
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(const char* tok) {
    skip();
    size_t n = std::char_traits<char>::length(tok);
    if (s_.compare(pos_, n, tok) != 0) return false;
    pos_ += n;
    return true;
  }

  ExprPtr parse_union() {
    ExprPtr e = parse_glue();
    while (eat("+")) e = make_union(e, parse_glue());
    return e;
  }
  ExprPtr parse_glue() {
    ExprPtr e = parse_par();
    while (eat(";")) e = make_glue(e, parse_par());
    return e;
  }
  ExprPtr parse_par() {
    ExprPtr e = parse_postfix();
    while (eat("||")) e = make_par(e, parse_postfix());
    return e;
  }
  ExprPtr parse_postfix() {
    ExprPtr e = parse_primary();
    while (eat("^+")) e = make_plus(e);
    return e;
  }
  ExprPtr parse_primary() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    if (eat("(")) {
      ExprPtr e = parse_union();
      if (!eat(")")) fail("expected ')'");
      return e;
    }
    if (eat("0")) return make_empty();
    if (eat("1")) return make_eps();
    bool src = false, tgt = false;
    if (s_[pos_] == '.') {
      src = true;
      ++pos_;
    }
    if (pos_ >= s_.size() || !std::isalpha(static_cast<unsigned char>(s_[pos_])))
      fail("expected atom");
    char label = s_[pos_++];
    if (pos_ < s_.size() && s_[pos_] == '.') {
      tgt = true;
      ++pos_;
    }
    return make_atom(label, src, tgt);
  }

  const std::string& s_;
  size_t pos_ = 0;
};

int level(const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::Union: return 0;
    case Expr::Kind::Glue: return 1;
    case Expr::Kind::Par: return 2;
    case Expr::Kind::Plus: return 3;
    default: return 4;
  }
}

std::string print(const Expr& e, int need) {
  std::string s;
  switch (e.kind) {
    case Expr::Kind::Empty: s = "0"; break;
    case Expr::Kind::Eps: s = "1"; break;
    case Expr::Kind::Atom:
      if (e.src) s += '.';
      s += e.label;
      if (e.tgt) s += '.';
      break;
    case Expr::Kind::Union: s = print(*e.lhs, 0) + " + " + print(*e.rhs, 1); break;
    case Expr::Kind::Glue: s = print(*e.lhs, 1) + " ; " + print(*e.rhs, 2); break;
    case Expr::Kind::Par: s = print(*e.lhs, 2) + " || " + print(*e.rhs, 3); break;
    case Expr::Kind::Plus: s = print(*e.lhs, 3) + "^+"; break;
  }
  return level(e) < need ? "(" + s + ")" : s;
}

}  // namespace

ExprPtr parse_expr(const std::string& text) { return Parser(text).run(); }

std::string to_string(const ExprPtr& e) { return print(*e, 0); }

bool same_tree(const ExprPtr& a, const ExprPtr& b) {
  if (a == b) return true;
  if (!a || !b || a->kind != b->kind) return false;
  if (a->kind == Expr::Kind::Atom)
    return a->label == b->label && a->src == b->src && a->tgt == b->tgt;
  return same_tree(a->lhs, b->lhs) && same_tree(a->rhs, b->rhs);
}

int plus_count(const ExprPtr& e) {
  if (!e) return 0;
  return (e->kind == Expr::Kind::Plus) + plus_count(e->lhs) + plus_count(e->rhs);
}

int depth(const ExprPtr& e) {
  if (!e) return 0;
  if (!e->lhs) return 0;
  return 1 + std::max(depth(e->lhs), depth(e->rhs));
}

std::string expr_alphabet(const ExprPtr& e) {
  std::string out;
  auto walk = [&](auto&& self, const ExprPtr& x) -> void {
    if (!x) return;
    if (x->kind == Expr::Kind::Atom && out.find(x->label) == std::string::npos) out += x->label;
    self(self, x->lhs);
    self(self, x->rhs);
  };
  walk(walk, e);
  std::sort(out.begin(), out.end());
  return out;
}

Language eval_expr(const ExprPtr& root, Truncation t) {
  std::unordered_map<const Expr*, Language> memo;
  auto go = [&](auto&& self, const ExprPtr& e) -> const Language& {
    auto it = memo.find(e.get());
    if (it != memo.end()) return it->second;
    Language r{{}, t};
    switch (e->kind) {
      case Expr::Kind::Empty: break;
      case Expr::Kind::Eps: r = principal(epsilon(), t); break;
      case Expr::Kind::Atom: r = principal(singleton(e->label, e->src, e->tgt), t); break;
      case Expr::Kind::Union: r = lang_union(self(self, e->lhs), self(self, e->rhs)); break;
      case Expr::Kind::Glue: r = lang_glue(self(self, e->lhs), self(self, e->rhs)); break;
      case Expr::Kind::Par: r = lang_parallel(self(self, e->lhs), self(self, e->rhs)); break;
      case Expr::Kind::Plus: r = lang_plus(self(self, e->lhs)); break;
    }
    return memo.emplace(e.get(), std::move(r)).first->second;
  };
  return go(go, root);
}

}  // namespace hda
