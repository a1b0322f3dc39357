#include <gtest/gtest.h>

#include "corpus.hpp"
#include "hda/kleene.hpp"
#include "hda/pathlang.hpp"
#include "hda/surgery.hpp"

using namespace hda;

namespace {

const Truncation kWin = Truncation::of(3, 2);

Language lang(const Hda& x, Truncation t = kWin) { return enumerate_language(x, t); }
Language eval(const std::string& text, Truncation t = kWin) { return eval_expr(parse_expr(text), t); }

}  // namespace

TEST(Compile, Atoms) {
  Hda a = compile(parse_expr("a"));
  ASSERT_EQ(a.size(), 3);
  ASSERT_EQ(a.start.size(), 1u);
  ASSERT_EQ(a.accept.size(), 1u);
  const int e = 2;
  EXPECT_EQ(a.cells[e].d0[0], a.start[0]);
  EXPECT_EQ(a.cells[e].d1[0], a.accept[0]);
  EXPECT_TRUE(validate(a).empty());

  Hda sa = compile(parse_expr(".a"));
  EXPECT_EQ(sa.cells[sa.start[0]].dim(), 1);
  EXPECT_EQ(sa.cells[sa.accept[0]].dim(), 0);
  EXPECT_EQ(lang(sa).members, std::set<Ipomset>{singleton('a', true, false)});

  EXPECT_EQ(lang(compile(parse_expr("0"))).size(), 0u);
  EXPECT_EQ(lang(compile(parse_expr("1"))).members, std::set<Ipomset>{epsilon()});
}

TEST(Compile, Operators) {
  for (const char* text : {"a || b", "a ; b", "a + b", "(a ; b)^+", ".a ; a.", "(a || b) ; c", "a ; 1 ; b"}) {
    Hda x = compile(parse_expr(text));
    EXPECT_TRUE(validate(x).empty()) << text;
    EXPECT_EQ(x.kind, Kind::Plain);
    EXPECT_EQ(lang(x), eval(text)) << text;
  }
}

TEST(Compile, SharedSubterms) {
  ExprPtr a = parse_expr("a ; b");
  ExprPtr e = make_union(a, a);
  EXPECT_EQ(lang(compile(e)), eval("a ; b"));
}

TEST(Automaton, SingleEdge) {
  Hda x = corpus::fixture("atom_a");
  Automaton a = interleaving_automaton(x);
  EXPECT_EQ(a.states, 3);
  ASSERT_EQ(a.transitions.size(), 2u);
  std::set<Ilo> letters;
  for (const Transition& t : a.transitions) letters.insert(t.letter);
  EXPECT_EQ(letters, (std::set<Ilo>{Ilo{"a", 0, 1}, Ilo{"a", 1, 0}}));
  EXPECT_EQ(a.start, x.start);
  EXPECT_EQ(a.accept, x.accept);
}

TEST(Automaton, StepCount) {
  Hda x = corpus::fixture("fig1");
  size_t want = 0;
  for (const Cell& c : x.cells) want += 2 * ((size_t{1} << c.dim()) - 1);
  EXPECT_EQ(interleaving_automaton(x).transitions.size(), want);
  // Every lower and upper face contributes one step into or out of a cube.
  Hda cube = standard_cube(Ilo{"ab", 0, 0}).pc;
  cube.start.clear();
  cube.accept.clear();
  EXPECT_EQ(interleaving_automaton(cube).transitions.size(), 2u * (3 + 1 + 1 + 1 + 1));
}

TEST(Automaton, RejectsIdentityOverlap) {
  Hda x = epsilon_hda();
  try {
    interleaving_automaton(x);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::IdentityOverlap);
  }
}

TEST(Extract, Examples) {
  EXPECT_EQ(eval_expr(extract(corpus::fixture("atom_a")), kWin), eval("a"));
  EXPECT_EQ(to_string(extract(epsilon_hda())), "1");
  EXPECT_EQ(to_string(extract(empty_hda())), "0");
  const Truncation t = Truncation::of(4, 3);
  Hda x = corpus::fixture("fig1");
  EXPECT_EQ(eval_expr(extract(x), t), lang(x, t));
}

TEST(Extract, LetterExpressions) {
  EXPECT_EQ(to_string(letter_expr(Ilo{})), "1");
  Language l = eval_expr(letter_expr(Ilo{"ab", 1, 2}), kWin);
  EXPECT_TRUE(l.contains(discrete(Ilo{"ab", 1, 2})));
}

TEST(RoundTrip, CompileThenExtract) {
  const Truncation t = Truncation::of(4, 3);
  for (const ExprPtr& e : corpus::expressions(60)) {
    Language want = eval_expr(e, t);
    Hda x = compile(e);
    EXPECT_EQ(lang(x, t), want) << to_string(e);
    EXPECT_EQ(eval_expr(extract(x), t), want) << to_string(e);
  }
}

TEST(RoundTrip, ExtractOnCorpus) {
  for (const auto& h : corpus::hdas(60)) EXPECT_EQ(eval_expr(extract(h.hda), kWin), lang(h.hda)) << h.name;
  for (const auto& h : corpus::ihdas(30)) EXPECT_EQ(eval_expr(extract(h.hda), kWin), lang(h.hda)) << h.name;
}
