#include <algorithm>
#include <map>
#include <tuple>

#include "hda/surgery.hpp"

namespace hda {

namespace {

struct CubeCache {
  std::map<Ilo, Cube> cubes;
  const Cube& get(const Ilo& u) {
    auto it = cubes.find(u);
    if (it == cubes.end()) it = cubes.emplace(u, standard_cube(u)).first;
    return it->second;
  }
};

// Up-closed families of subsets of `free` inside `allowed` (indexed by subset).
void up_sets(Mask free, const std::vector<bool>& allowed, std::vector<std::vector<Mask>>& out) {
  std::vector<Mask> subsets;
  for (Mask a = free;; a = (a - 1) & free) {
    subsets.push_back(a);
    if (!a) break;
  }
  std::stable_sort(subsets.begin(), subsets.end(),
                   [](Mask a, Mask b) { return popcount(a) > popcount(b); });
  std::vector<bool> in(std::size_t(free) + 1, false);
  std::vector<Mask> chosen;
  auto rec = [&](auto&& self, size_t k) -> void {
    if (k == subsets.size()) {
      out.push_back(chosen);
      return;
    }
    Mask a = subsets[k];
    self(self, k + 1);
    if (!allowed[a]) return;
    for (Mask rest = free & ~a; rest; rest &= rest - 1)
      if (!in[a | (rest & -rest)]) return;
    in[a] = true;
    chosen.push_back(a);
    self(self, k + 1);
    chosen.pop_back();
    in[a] = false;
  };
  rec(rec, 0);
}

std::vector<Mask> minimal_elements(const std::vector<Mask>& family) {
  std::vector<Mask> gens;
  for (Mask a : family) {
    bool minimal = true;
    for (Mask b : family)
      if (b != a && (b & a) == b) minimal = false;
    if (minimal) gens.push_back(a);
  }
  return gens;
}

// All maps on the sub-ipc-set of the cube given by `family`, lifting the cube
// of x through h. `lower` selects the A coordinate (K) or the B coordinate (L).
void enumerate_lifts(const Hda& x, int c, const Cube& cube, const std::vector<Mask>& family,
                     bool lower, const Hda& src, const std::vector<std::vector<int>>& inv,
                     std::vector<std::vector<int>>& out) {
  if (family.empty()) {
    out.emplace_back(cube.pc.size(), -1);
    return;
  }
  std::vector<Mask> gens = minimal_elements(family);
  std::vector<std::vector<int>> cand;
  for (Mask g : gens) {
    int face_cell = lower ? try_face(x, c, g, 0) : try_face(x, c, 0, g);
    cand.push_back(inv[face_cell]);
  }
  std::vector<int> pick(gens.size());
  auto rec = [&](auto&& self, size_t k) -> void {
    if (k < gens.size()) {
      for (int y : cand[k]) {
        pick[k] = y;
        self(self, k + 1);
      }
      return;
    }
    std::vector<int> phi(cube.pc.size(), -1);
    for (int q = 0; q < cube.pc.size(); ++q) {
      Mask a = cube.a_of[q], b = cube.b_of[q];
      Mask coord = lower ? a : b;
      for (size_t i = 0; i < gens.size(); ++i) {
        Mask g = gens[i];
        if ((coord & g) != g) continue;
        int v = lower ? try_face(src, pick[i], squeeze(a & ~g, g), squeeze(b, g))
                      : try_face(src, pick[i], squeeze(a, g), squeeze(b & ~g, g));
        if (v < 0) return;
        if (phi[q] >= 0 && phi[q] != v) return;
        phi[q] = v;
      }
    }
    out.push_back(std::move(phi));
  };
  rec(rec, 0);
}

}  // namespace

Cylinder cylinder(const Hda& x, const Hda& y, const PcMap& f, const Hda& z, const PcMap& g) {
  for (const auto& [m, from] : {std::pair{&f, &y}, std::pair{&g, &z}}) {
    auto problems = check_map(*m, *from, x, false);
    if (!problems.empty()) throw Error(ErrorKind::InvalidMap, "cylinder: " + problems.front());
  }
  std::vector<std::vector<int>> finv(x.size()), ginv(x.size());
  for (int c = 0; c < y.size(); ++c) finv[f[c]].push_back(c);
  for (int c = 0; c < z.size(); ++c) ginv[g[c]].push_back(c);
  for (int c = 0; c < x.size(); ++c)
    if (!finv[c].empty() && !ginv[c].empty())
      throw Error(ErrorKind::ImagesNotDisjoint, "cylinder: images meet at " + cell_label(x, c));

  CubeCache cache;
  Cylinder r;
  r.cyl.kind = Kind::Interfaces;
  r.cyl.alphabet = x.alphabet;
  using Key = std::tuple<int, std::vector<int>, std::vector<int>>;
  std::map<Key, int> index;
  std::vector<int> base;
  for (int c = 0; c < x.size(); ++c) {
    const Ilo& u = x.cells[c].iev;
    const Cube& cube = cache.get(u);
    std::vector<std::vector<int>> ks, ls;
    for (bool lower : {true, false}) {
      const auto& inv = lower ? finv : ginv;
      Mask free = u.all() & ~(lower ? u.src : u.tgt);
      std::vector<bool> allowed(std::size_t(free) + 1, false);
      bool any = false;
      for (Mask a = free;; a = (a - 1) & free) {
        int fc = lower ? try_face(x, c, a, 0) : try_face(x, c, 0, a);
        allowed[a] = fc >= 0 && !inv[fc].empty();
        any = any || allowed[a];
        if (!a) break;
      }
      std::vector<std::vector<Mask>> families;
      if (any) up_sets(free, allowed, families);
      else families.emplace_back();
      auto& dest = lower ? ks : ls;
      for (const auto& fam : families)
        enumerate_lifts(x, c, cube, fam, lower, lower ? y : z, inv, dest);
    }
    for (const auto& k : ks)
      for (const auto& l : ls) {
        index.emplace(Key{c, k, l}, r.cyl.size());
        r.cyl.add_cell(u);
        base.push_back(c);
        r.phi.push_back(k);
        r.psi.push_back(l);
      }
    check_cell_limit(r.cyl.size(), "cylinder");
  }

  auto restrict_map = [&](const std::vector<int>& m, const Cube& big, const Cube& small, int pos,
                          bool upper) {
    std::vector<int> out(small.pc.size(), -1);
    for (int q = 0; q < small.pc.size(); ++q) {
      Mask a = spread(small.a_of[q], bit(pos)), b = spread(small.b_of[q], bit(pos));
      if (upper) b |= bit(pos);
      else a |= bit(pos);
      out[q] = m[big.at(a, b)];
    }
    return out;
  };
  for (int k = 0; k < r.cyl.size(); ++k) {
    const int c = base[k];
    const Cell& xc = x.cells[c];
    const Cube& big = cache.get(xc.iev);
    for (int i = 0; i < xc.dim(); ++i)
      for (bool upper : {false, true}) {
        int fc = upper ? xc.d1[i] : xc.d0[i];
        if (fc < 0) continue;
        const Cube& small = cache.get(x.cells[fc].iev);
        Key key{fc, restrict_map(r.phi[k], big, small, i, upper),
                restrict_map(r.psi[k], big, small, i, upper)};
        auto it = index.find(key);
        if (it == index.end()) throw Error(ErrorKind::InvalidHda, "cylinder: face outside the cylinder");
        (upper ? r.cyl.cells[k].d1 : r.cyl.cells[k].d0)[i] = it->second;
      }
  }

  r.p = base;
  r.j.resize(x.size());
  for (int c = 0; c < x.size(); ++c) {
    const int n = cache.get(x.cells[c].iev).pc.size();
    r.j[c] = index.at(Key{c, std::vector<int>(n, -1), std::vector<int>(n, -1)});
  }
  auto tilde = [&](const Hda& src, const PcMap& m, bool lower) {
    PcMap out(src.size());
    for (int c = 0; c < src.size(); ++c) {
      const Cube& cube = cache.get(src.cells[c].iev);
      std::vector<int> full = yoneda(src, c, cube), none(cube.pc.size(), -1);
      out[c] = lower ? index.at(Key{m[c], full, none}) : index.at(Key{m[c], none, full});
    }
    return out;
  };
  r.f_tilde = tilde(y, f, true);
  r.g_tilde = tilde(z, g, false);
  return r;
}

Hda start_properize(const Hda& x) {
  CubeFamily fam = start_map(x);
  Cylinder c = cylinder(x, fam.pc, fam.map, Hda{}, PcMap{});
  Hda r = std::move(c.cyl);
  r.kind = x.kind;
  for (int t : fam.tops) r.start.push_back(c.f_tilde[t]);
  for (int k = 0; k < r.size(); ++k)
    if (x.is_accept(c.p[k])) r.accept.push_back(k);
  r.normalize_marks();
  return r;
}

Hda accept_properize(const Hda& x) { return reverse(start_properize(reverse(x))); }

Spider build_spider(const Hda& xin) {
  Spider s;
  s.source = xin.kind == Kind::Plain ? trim(resolve(xin)) : xin;
  const Hda& x = s.source;
  CubeFamily st = start_map(x), ac = accept_map(x);
  std::vector<bool> in_start(x.size(), false);
  for (int c : st.map) in_start[c] = true;
  for (int c : ac.map)
    if (in_start[c]) throw Error(ErrorKind::NotSeparated, "start and accept images meet at " + cell_label(x, c));
  for (int y : x.accept)
    for (int v : x.start)
      if (x.cells[y].iev.labels == x.cells[v].iev.labels) s.pairs.emplace_back(y, v);
  std::vector<int> bot_cells, top_cells;
  for (auto [y, v] : s.pairs) bot_cells.push_back(v);
  for (int v : x.start) bot_cells.push_back(v);
  for (auto [y, v] : s.pairs) top_cells.push_back(y);
  for (int y : x.accept) top_cells.push_back(y);
  CubeFamily jb = cube_family(x, bot_cells), jt = cube_family(x, top_cells);
  s.cyl = cylinder(x, jb.pc, jb.map, jt.pc, jt.map);
  for (int t : jb.tops) s.start_copy.push_back(s.cyl.f_tilde[t]);
  for (int t : jt.tops) s.accept_copy.push_back(s.cyl.g_tilde[t]);
  const size_t g = s.pairs.size();
  for (size_t k = g; k < s.start_copy.size(); ++k) s.cyl.cyl.start.push_back(s.start_copy[k]);
  for (size_t k = g; k < s.accept_copy.size(); ++k) s.cyl.cyl.accept.push_back(s.accept_copy[k]);
  s.cyl.cyl.normalize_marks();
  return s;
}

Hda spider_plus(const Hda& xin) {
  Spider s = build_spider(xin);
  ClosureIndex idx;
  Hda cs = close(s.cyl.cyl, &idx);
  check_cell_limit(cs.size(), "spider closure");
  Hda weld;
  PcMap f, g;
  for (size_t k = 0; k < s.pairs.size(); ++k) {
    Cube cube = standard_cube(Ilo{s.source.cells[s.pairs[k].second].iev.labels, 0, 0});
    PcMap fk = yoneda(cs, idx.at[s.start_copy[k]][0], cube);
    PcMap gk = yoneda(cs, idx.at[s.accept_copy[k]][0], cube);
    f.insert(f.end(), fk.begin(), fk.end());
    g.insert(g.end(), gk.begin(), gk.end());
    weld = coproduct(weld, cube.pc);
  }
  return trim(self_glue(cs, weld, f, g));
}

}  // namespace hda
