#include "corpus.hpp"

#include <set>

#include "oracles.hpp"

namespace corpus {

using hda::ExprPtr;

std::vector<ExprPtr> expressions(int count) {
  oracle::Rng rng(20221014);
  auto pick = [&](int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng); };
  auto leaf = [&]() -> ExprPtr {
    switch (pick(12)) {
      case 0: return hda::make_empty();
      case 1: return hda::make_eps();
      case 2: return hda::make_atom('a', true, false);
      case 3: return hda::make_atom('b', false, true);
      case 4: return hda::make_atom('a', false, true);
      case 5: return hda::make_atom('b', true, false);
      case 6: return hda::make_atom('a', true, true);
      case 7: case 8: return hda::make_atom('b');
      default: return hda::make_atom('a');
    }
  };
  auto gen = [&](auto&& self, int d) -> ExprPtr {
    if (d == 0 || pick(4) == 0) return leaf();
    switch (pick(7)) {
      case 0: case 1: return hda::make_union(self(self, d - 1), self(self, d - 1));
      case 2: case 3: return hda::make_glue(self(self, d - 1), self(self, d - 1));
      case 4: case 5: return hda::make_par(self(self, d - 1), self(self, d - 1));
      default: return hda::make_plus(self(self, d - 1));
    }
  };
  std::vector<ExprPtr> out;
  std::set<std::string> seen;
  for (const char* fixed : {"a", "a ; b", "a || b", "a^+", "(a ; b)^+", ".a", "a.", ".a.", "0", "1",
                            "a + b", "(a || b) ; a", "(a + 1)^+", ".a ; a.", "a. ; .a"}) {
    ExprPtr e = hda::parse_expr(fixed);
    seen.insert(hda::to_string(e));
    out.push_back(e);
  }
  while (static_cast<int>(out.size()) < count) {
    ExprPtr e = gen(gen, 3);
    if (hda::plus_count(e) > 1 || hda::depth(e) > 3) continue;
    if (!seen.insert(hda::to_string(e)).second) continue;
    out.push_back(e);
  }
  return out;
}

hda::Hda fixture(const std::string& name) { return hda::load_hda(std::string(FIXTURE_DIR) + "/" + name + ".json"); }

std::vector<NamedHda> hdas(int count) {
  std::vector<NamedHda> out;
  for (const char* name : {"fig1", "ab", "atom_empty", "atom_eps", "atom_a", "atom_sa", "atom_at",
                           "atom_sat", "cube_ab", "res_segment"})
    out.push_back({name, fixture(name)});
  oracle::Rng rng(7);
  for (int k = 0; static_cast<int>(out.size()) < count; ++k)
    out.push_back({"random" + std::to_string(k), oracle::random_hda(rng, 10, "ab")});
  return out;
}

std::vector<NamedHda> ihdas(int count) {
  std::vector<NamedHda> out;
  for (const char* name : {"nonproper_left", "nonproper_middle", "nonproper_right", "cube_sa_bt", "spider_census"})
    out.push_back({name, fixture(name)});
  for (const auto& h : hdas(count)) {
    if (static_cast<int>(out.size()) >= count) break;
    hda::Hda r = hda::trim(hda::resolve(h.hda));
    if (r.size() <= 60) out.push_back({"res_" + h.name, r});
  }
  return out;
}

}  // namespace corpus
