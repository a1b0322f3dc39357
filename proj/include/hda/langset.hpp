#pragma once

#include <memory>
#include <set>
#include <string>

#include "hda/ipomset.hpp"

namespace hda {

// Window bound. Sizes are half-integers and are kept doubled.
struct Truncation {
  int size2 = 0;
  int width = 0;

  static Truncation of(int size, int width) { return {2 * size, width}; }
  bool admits(const Ipomset& p) const;
  auto operator<=>(const Truncation&) const = default;
};

std::string to_string(const Truncation& t);

struct Language {
  std::set<Ipomset> members;
  Truncation trunc;

  bool contains(const Ipomset& p) const { return members.count(p) != 0; }
  size_t size() const { return members.size(); }
  bool operator==(const Language&) const = default;
};

Language empty_language(Truncation t);
// {p} down-closed and cut to the window.
Language principal(const Ipomset& p, Truncation t);
Language from_members(const std::set<Ipomset>& s, Truncation t);

Language lang_union(const Language& l, const Language& m);
Language lang_glue(const Language& l, const Language& m);
Language lang_parallel(const Language& l, const Language& m);
Language lang_plus(const Language& l);
Language lang_minus_identities(const Language& l);
Language lang_reverse(const Language& l);
Language restrict_window(const Language& l, Truncation t);
bool lang_equal(const Language& l, const Language& m);
bool lang_subset(const Language& l, const Language& m);

// Checks the down-closed-within-window invariant.
bool is_window_closed(const Language& l);

// Header line plus one sorted literal per line.
std::string dump(const Language& l);

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
  enum class Kind { Empty, Eps, Atom, Union, Glue, Par, Plus };
  Kind kind;
  char label = 0;
  bool src = false;
  bool tgt = false;
  ExprPtr lhs, rhs;
};

ExprPtr make_empty();
ExprPtr make_eps();
ExprPtr make_atom(char label, bool src = false, bool tgt = false);
ExprPtr make_union(ExprPtr a, ExprPtr b);
ExprPtr make_glue(ExprPtr a, ExprPtr b);
ExprPtr make_par(ExprPtr a, ExprPtr b);
ExprPtr make_plus(ExprPtr a);

ExprPtr parse_expr(const std::string& text);
std::string to_string(const ExprPtr& e);
bool same_tree(const ExprPtr& a, const ExprPtr& b);
int plus_count(const ExprPtr& e);
int depth(const ExprPtr& e);
std::string expr_alphabet(const ExprPtr& e);

// Subexpressions shared by pointer are evaluated once.
Language eval_expr(const ExprPtr& e, Truncation t);

}  // namespace hda
