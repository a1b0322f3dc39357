#include <gtest/gtest.h>

#include <set>

#include "corpus.hpp"
#include "hda/pathlang.hpp"
#include "hda/pcset.hpp"
#include "hda/surgery.hpp"
#include "oracles.hpp"

using namespace hda;

namespace {

const Truncation kWin = Truncation::of(3, 2);

Hda edge(char label) {
  Hda h;
  int v0 = h.add_cell(Ilo{}, "v0"), v1 = h.add_cell(Ilo{}, "v1");
  int e = h.add_cell(Ilo{std::string(1, label), 0, 0}, "e");
  h.cells[e].d0 = {v0};
  h.cells[e].d1 = {v1};
  h.start = {v0};
  h.accept = {v1};
  return h;
}

Hda point(bool marked) {
  Hda h;
  int v = h.add_cell(Ilo{}, "v");
  if (marked) h.start = h.accept = {v};
  return h;
}

int find(const Hda& h, const std::string& name) {
  for (int c = 0; c < h.size(); ++c)
    if (h.cells[c].name == name) return c;
  return -1;
}

std::vector<Ilo> all_ilos(int max_len) {
  std::vector<std::string> words{""};
  for (size_t k = 0; k < words.size(); ++k)
    if (static_cast<int>(words[k].size()) < max_len)
      for (char c : std::string("ab")) words.push_back(words[k] + c);
  std::vector<Ilo> out;
  for (const std::string& w : words) {
    Mask all = low_bits(static_cast<int>(w.size()));
    for (Mask s = 0; s <= all; ++s)
      for (Mask t = 0; t <= all; ++t) out.push_back(Ilo{w, s, t});
  }
  return out;
}

}  // namespace

TEST(Validate, Fixtures) {
  for (const auto& h : corpus::hdas(30)) EXPECT_TRUE(validate(h.hda).empty()) << h.name;
  for (const auto& h : corpus::ihdas(20)) EXPECT_TRUE(validate(h.hda).empty()) << h.name;
  EXPECT_TRUE(validate(corpus::fixture("fig1")).empty());
}

TEST(Validate, MismatchedSquare) {
  Hda h = corpus::fixture("cube_ab");
  for (Cell& c : h.cells)
    if (c.dim() == 1 && c.iev.labels == "b") {
      c.iev.labels = "a";
      break;
    }
  EXPECT_FALSE(validate(h).empty());
  EXPECT_THROW(require_valid(h, "square"), Error);
}

TEST(Validate, InterfaceRulesForStartAndAccept) {
  Hda h = corpus::fixture("cube_sa_bt");
  EXPECT_TRUE(validate(h).empty());
  h.start = {find(h, "[|]")};
  EXPECT_FALSE(validate(h).empty());
}

TEST(Face, Examples) {
  Cube c = standard_cube(Ilo{"ab", 0, 0});
  const Hda& x = c.pc;
  EXPECT_EQ(face(x, c.top(), 1, 0), c.at(1, 0));
  EXPECT_EQ(face(x, c.top(), 0, 0), c.top());
  int one = face(x, face(x, c.top(), 0, 2), 1, 0);
  int two = face(x, face(x, c.top(), 1, 0), 0, 1);
  EXPECT_EQ(one, two);
  EXPECT_EQ(one, c.at(1, 2));
  Cube v = standard_cube(Ilo{"ab", 1, 2});
  EXPECT_EQ(try_face(v.pc, v.top(), 1, 0), -1);
  EXPECT_THROW(face(v.pc, v.top(), 1, 0), Error);
  EXPECT_THROW(face(x, c.top(), 1, 1), Error);
}

TEST(StandardCube, Counts) {
  EXPECT_EQ(standard_cube(Ilo{"ab", 0, 0}).pc.size(), 9);
  EXPECT_EQ(standard_cube(Ilo{"ab", 1, 2}).pc.size(), 4);
  EXPECT_EQ(standard_cube(Ilo{}).pc.size(), 1);
  for (const Ilo& u : all_ilos(3)) {
    Cube c = standard_cube(u);
    EXPECT_TRUE(validate(c.pc).empty()) << to_string(u);
    int free_s = u.size() - popcount(u.src), free_t = u.size() - popcount(u.tgt);
    int want = 0;
    for (Mask a = 0; a <= u.all(); ++a)
      for (Mask b = 0; b <= u.all(); ++b)
        if (!(a & b) && !(a & u.src) && !(b & u.tgt)) ++want;
    EXPECT_EQ(c.pc.size(), want);
    EXPECT_LE(c.pc.size(), (1 << free_s) * (1 << free_t));
  }
}

TEST(StandardCube, MatchesFixtures) {
  Hda cube = standard_cube(Ilo{"ab", 0, 0}).pc;
  Hda fix = corpus::fixture("cube_ab");
  fix.start.clear();
  fix.accept.clear();
  EXPECT_TRUE(oracle::isomorphic(cube, fix));
  Hda icube = standard_cube(Ilo{"ab", 1, 2}).pc;
  Hda ifix = corpus::fixture("cube_sa_bt");
  ifix.start.clear();
  ifix.accept.clear();
  EXPECT_TRUE(oracle::isomorphic(icube, ifix));
}

TEST(Yoneda, Examples) {
  Cube c = standard_cube(Ilo{"ab", 0, 0});
  EXPECT_EQ(yoneda(c.pc, c.top(), c), identity_map(c.pc));
  Hda x = corpus::fixture("fig1");
  int sq = find(x, "x");
  PcMap f = yoneda(x, sq);
  EXPECT_EQ(f.size(), 9u);
  EXPECT_EQ(std::set<int>(f.begin(), f.end()).size(), 9u);
  EXPECT_TRUE(check_map(f, standard_cube(x.cells[sq].iev).pc, x, false).empty());
  // The upper b-face of x is the lower c-face of y.
  int y = find(x, "y");
  EXPECT_EQ(face(x, sq, 0, 2), face(x, y, 2, 0));
}

TEST(Yoneda, ImageIsFaceClosed) {
  for (const auto& h : corpus::hdas(40)) {
    for (int c = 0; c < h.hda.size(); ++c) {
      PcMap f = yoneda(h.hda, c);
      std::set<int> im(f.begin(), f.end());
      for (int d : im)
        for (int k = 0; k < h.hda.cells[d].dim(); ++k) {
          EXPECT_TRUE(im.count(h.hda.cells[d].d0[k]));
          EXPECT_TRUE(im.count(h.hda.cells[d].d1[k]));
        }
    }
  }
}

TEST(Reverse, Involution) {
  for (const auto& h : corpus::hdas(40)) {
    Hda r = reverse(h.hda);
    EXPECT_EQ(r.start, h.hda.accept);
    EXPECT_EQ(r.accept, h.hda.start);
    EXPECT_TRUE(oracle::isomorphic(reverse(r), h.hda));
    EXPECT_EQ(enumerate_language(r, kWin), lang_reverse(enumerate_language(h.hda, kWin))) << h.name;
  }
  Language sa = enumerate_language(corpus::fixture("atom_sa"), kWin);
  Language at = enumerate_language(reverse(corpus::fixture("atom_at")), kWin);
  EXPECT_EQ(sa, at);
}

TEST(Tensor, Examples) {
  Hda sq = tensor(edge('a'), edge('b'));
  Hda cube = corpus::fixture("cube_ab");
  EXPECT_TRUE(oracle::isomorphic(sq, cube));
  Hda x = corpus::fixture("fig1");
  EXPECT_TRUE(oracle::isomorphic(tensor(x, point(true)), x));
  const Truncation t = Truncation::of(4, 3);
  Hda e = edge('d');
  EXPECT_EQ(enumerate_language(tensor(x, e), t), lang_parallel(enumerate_language(x, t), enumerate_language(e, t)));
}

TEST(Tensor, RandomLaw) {
  oracle::Rng rng(12);
  for (int k = 0; k < 60; ++k) {
    Hda x = oracle::random_hda(rng, 8, "ab"), y = oracle::random_hda(rng, 8, "ab");
    Hda t = tensor(x, y);
    EXPECT_TRUE(validate(t).empty());
    EXPECT_EQ(enumerate_language(t, kWin), lang_parallel(enumerate_language(x, kWin), enumerate_language(y, kWin)));
  }
}

TEST(Coproduct, Laws) {
  Hda x = corpus::fixture("fig1");
  EXPECT_TRUE(oracle::isomorphic(coproduct(Hda{}, x), x));
  Hda a = corpus::fixture("atom_a"), b = corpus::fixture("atom_sa");
  Hda ab = coproduct(a, b);
  EXPECT_EQ(ab.size(), a.size() + b.size());
  EXPECT_EQ(enumerate_language(ab, kWin), lang_union(enumerate_language(a, kWin), enumerate_language(b, kWin)));
}

TEST(Resolve, Examples) {
  Hda r = resolve(corpus::fixture("res_segment"));
  EXPECT_EQ(r.size(), 6);
  int edges = 0;
  for (const Cell& c : r.cells) edges += c.dim() == 1;
  EXPECT_EQ(edges, 4);
  EXPECT_TRUE(validate(r).empty());
  Hda p = resolve(point(true));
  EXPECT_EQ(p.size(), 1);
  const Truncation t = Truncation::of(4, 3);
  Hda x = corpus::fixture("fig1");
  EXPECT_EQ(enumerate_language(resolve(x), t), enumerate_language(x, t));
  EXPECT_THROW(resolve(corpus::fixture("cube_sa_bt")), Error);
}

TEST(Resolve, CellCount) {
  for (const auto& h : corpus::hdas(40)) {
    int want = 0;
    for (const Cell& c : h.hda.cells) want += 1 << (2 * c.dim());
    EXPECT_EQ(resolve(h.hda).size(), want);
  }
}

TEST(Close, Examples) {
  Hda v = standard_cube(Ilo{"ab", 1, 2}).pc;
  v.kind = Kind::Interfaces;
  EXPECT_TRUE(oracle::isomorphic(close(v), standard_cube(Ilo{"ab", 0, 0}).pc));
  Hda x = corpus::fixture("fig1");
  Hda xi = x;
  xi.kind = Kind::Interfaces;
  Hda c = close(xi);
  EXPECT_EQ(c.kind, Kind::Plain);
  EXPECT_TRUE(oracle::isomorphic(c, x));
  const Truncation t = Truncation::of(4, 3);
  Hda p = start_properize(accept_properize(trim(resolve(x))));
  EXPECT_EQ(enumerate_language(close(p), t), enumerate_language(x, t));
}

TEST(Close, AllCubes) {
  for (const Ilo& u : all_ilos(3)) {
    Hda v = standard_cube(u).pc;
    v.kind = Kind::Interfaces;
    EXPECT_TRUE(oracle::isomorphic(close(v), standard_cube(Ilo{u.labels, 0, 0}).pc)) << to_string(u);
  }
}

TEST(Close, PreservesLanguages) {
  const Truncation t = Truncation::of(4, 3);
  for (const auto& h : corpus::ihdas()) {
    Hda c = close(h.hda);
    EXPECT_TRUE(validate(c).empty()) << h.name;
    EXPECT_EQ(enumerate_language(c, t), enumerate_language(h.hda, t)) << h.name;
  }
}

TEST(Close, PreservesInitialAndFinalInclusions) {
  for (const auto& h : corpus::ihdas(30)) {
    CubeFamily s = start_map(h.hda);
    if (!classify_inclusion(s.map, s.pc, h.hda).initial) continue;
    if (!classify_inclusion(s.map, s.pc, h.hda).injective) continue;
    // Cl of the start family into Cl(x) via the [c;0,0] cells and their faces.
    ClosureIndex from_idx, to_idx;
    Hda from = close(s.pc, &from_idx), to = close(h.hda, &to_idx);
    PcMap f(from.size(), -1);
    for (int c = 0; c < s.pc.size(); ++c) {
      const int n = s.pc.cells[c].dim();
      for (Mask a = 0; a <= low_bits(n); ++a)
        for (Mask b = 0; b <= low_bits(n); ++b) {
          if (a & b) continue;
          int src = from_idx.at[c][a | b << n];
          if (src >= 0) f[src] = to_idx.at[s.map[c]][a | b << n];
        }
    }
    EXPECT_TRUE(check_map(f, from, to, false).empty()) << h.name;
    InclusionInfo info = classify_inclusion(f, from, to);
    EXPECT_TRUE(info.injective && info.initial) << h.name;
  }
}

TEST(Trim, KeepsLanguage) {
  for (const auto& h : corpus::hdas(60)) {
    Hda t = trim(h.hda);
    EXPECT_TRUE(validate(t).empty());
    EXPECT_LE(t.size(), h.hda.size());
    EXPECT_EQ(enumerate_language(t, kWin), enumerate_language(h.hda, kWin)) << h.name;
  }
}

TEST(Quotient, IdentifiesFaces) {
  Hda two = coproduct(edge('a'), edge('a'));
  // Identify the two edges; their endpoints follow.
  Quotient q = quotient(two, {{2, 5}});
  EXPECT_EQ(q.result.size(), 3);
  EXPECT_TRUE(check_map(q.proj, two, q.result, true).empty());
  EXPECT_THROW(quotient(two, {{0, 2}}), Error);
}

TEST(Json, RoundTrip) {
  for (const auto& h : corpus::hdas(30)) {
    Hda back = from_json(to_json(h.hda));
    EXPECT_EQ(to_json(back), to_json(h.hda));
    EXPECT_TRUE(oracle::isomorphic(back, h.hda));
  }
  EXPECT_THROW(from_json("{\"kind\": \"hda\"}"), Error);
  EXPECT_THROW(from_json("not json"), Error);
}
