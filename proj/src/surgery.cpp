#include <algorithm>
#include <map>
#include <set>

#include "hda/surgery.hpp"

namespace hda {

namespace {

int g_cell_limit = 400000;

[[noreturn]] void precondition(const std::string& what) { throw Error(ErrorKind::PreconditionViolation, what); }

Hda with_marks(Hda x, std::vector<int> start, std::vector<int> accept) {
  x.start = std::move(start);
  x.accept = std::move(accept);
  x.normalize_marks();
  return x;
}

std::vector<bool> image_of(const PcMap& f, int n) {
  std::vector<bool> in(n, false);
  for (int c : f) in[c] = true;
  return in;
}

}  // namespace

void set_cell_limit(int cells) { g_cell_limit = cells; }
int cell_limit() { return g_cell_limit; }

void check_cell_limit(int cells, const char* what) {
  if (cells > g_cell_limit)
    throw Error(ErrorKind::CellLimit, std::string(what) + " exceeds " + std::to_string(g_cell_limit) + " cells");
}

bool is_initial_subset(const Hda& x, const std::vector<bool>& in) {
  for (int c = 0; c < x.size(); ++c)
    if (!in[c])
      for (int f : x.cells[c].d1)
        if (f >= 0 && in[f]) return false;
  return true;
}

bool is_final_subset(const Hda& x, const std::vector<bool>& in) {
  for (int c = 0; c < x.size(); ++c)
    if (!in[c])
      for (int f : x.cells[c].d0)
        if (f >= 0 && in[f]) return false;
  return true;
}

InclusionInfo classify_inclusion(const PcMap& f, const Hda& from, const Hda& to) {
  auto problems = check_map(f, from, to, false);
  if (!problems.empty()) throw Error(ErrorKind::InvalidMap, problems.front());
  InclusionInfo info;
  std::set<int> seen(f.begin(), f.end());
  info.injective = seen.size() == f.size();
  auto in = image_of(f, to.size());
  info.initial = info.injective && is_initial_subset(to, in);
  info.final = info.injective && is_final_subset(to, in);
  return info;
}

bool is_minimal_cell(const Hda& x, int c) {
  auto below = coreachable_to(x, {c});
  auto above = reachable_from(x, {c});
  for (int d = 0; d < x.size(); ++d)
    if (below[d] && !above[d]) return false;
  return true;
}

bool is_maximal_cell(const Hda& x, int c) { return is_minimal_cell(reverse(x), c); }

bool is_acyclic(const Hda& x) {
  // Kahn's algorithm on the step graph d0(c) -> c -> d1(c).
  std::vector<std::vector<int>> out(x.size());
  std::vector<int> indeg(x.size(), 0);
  for (int c = 0; c < x.size(); ++c) {
    for (int f : x.cells[c].d0)
      if (f >= 0) out[f].push_back(c);
    for (int f : x.cells[c].d1)
      if (f >= 0) out[c].push_back(f);
  }
  for (const auto& o : out)
    for (int d : o) ++indeg[d];
  std::vector<int> stack;
  for (int c = 0; c < x.size(); ++c)
    if (!indeg[c]) stack.push_back(c);
  int done = 0;
  while (!stack.empty()) {
    int c = stack.back();
    stack.pop_back();
    ++done;
    for (int d : out[c])
      if (--indeg[d] == 0) stack.push_back(d);
  }
  return done == x.size();
}

CubeFamily cube_family(const Hda& x, const std::vector<int>& cells) {
  CubeFamily fam;
  fam.pc.kind = x.kind;
  fam.pc.alphabet = x.alphabet;
  for (int c : cells) {
    Cube cube = standard_cube(x.cells[c].iev);
    PcMap m = yoneda(x, c, cube);
    fam.tops.push_back(fam.pc.size() + cube.top());
    fam.map.insert(fam.map.end(), m.begin(), m.end());
    fam.pc = coproduct(fam.pc, cube.pc);
  }
  fam.pc.kind = x.kind;
  fam.pc.alphabet = x.alphabet;
  return fam;
}

CubeFamily start_map(const Hda& x) { return cube_family(x, x.start); }
CubeFamily accept_map(const Hda& x) { return cube_family(x, x.accept); }

bool is_start_proper(const Hda& x) {
  CubeFamily fam = start_map(x);
  return classify_inclusion(fam.map, fam.pc, x).initial;
}

bool is_accept_proper(const Hda& x) {
  CubeFamily fam = accept_map(x);
  return classify_inclusion(fam.map, fam.pc, x).final;
}

bool is_proper(const Hda& x) {
  if (!is_start_proper(x) || !is_accept_proper(x)) return false;
  auto in = image_of(start_map(x).map, x.size());
  for (int c : accept_map(x).map)
    if (in[c]) return false;
  return true;
}

std::vector<Hda> decompose_simple(const Hda& x) {
  std::vector<Hda> out;
  for (int s : x.start)
    for (int a : x.accept) out.push_back(with_marks(x, {s}, {a}));
  return out;
}

Hda subtract_identities(const Hda& x) {
  const bool plain = x.kind == Kind::Plain;
  const Hda r = plain ? resolve(x) : x;
  std::vector<Hda> parts;
  for (const Hda& part : decompose_simple(r)) {
    Hda t = trim(part);
    if (t.start.empty() || t.accept.empty()) continue;
    Hda y = start_properize(t);
    std::vector<int> keep;
    std::set_difference(y.accept.begin(), y.accept.end(), y.start.begin(), y.start.end(),
                        std::back_inserter(keep));
    y.accept = keep;
    parts.push_back(trim(y));
  }
  Hda out = coproduct(parts);
  out.kind = r.kind;
  out.alphabet = x.alphabet;
  return plain ? close(out) : out;
}

Hda glue_hdas(const Hda& x, const Hda& y) {
  if (x.accept.size() != 1) throw Error(ErrorKind::NotSimple, "left operand must have exactly one accept cell");
  if (y.start.size() != 1) throw Error(ErrorKind::NotSimple, "right operand must have exactly one start cell");
  const int xa = x.accept[0], ys = y.start[0];
  if (!(x.cells[xa].iev == y.cells[ys].iev))
    throw Error(ErrorKind::ShapeMismatch, "accept and start cells carry different events");
  Hda both = coproduct(x, y);
  const int off = x.size();
  Cube cube = standard_cube(x.cells[xa].iev);
  PcMap fx = yoneda(x, xa, cube), fy = yoneda(y, ys, cube);
  std::vector<std::pair<int, int>> ident;
  for (int k = 0; k < cube.pc.size(); ++k) ident.emplace_back(fx[k], fy[k] + off);
  std::vector<int> start(x.start), accept;
  for (int a : y.accept) accept.push_back(a + off);
  Quotient q = quotient(with_marks(both, start, accept), ident);
  check_cell_limit(q.result.size(), "gluing");
  return q.result;
}

Hda seq_glue(const std::vector<Hda>& parts, const std::vector<Hda>& gluers, const std::vector<PcMap>& f,
             const std::vector<PcMap>& g) {
  const size_t n = parts.size();
  if (n == 0) precondition("sequential gluing needs at least one part");
  if (gluers.size() + 1 != n || f.size() + 1 != n || g.size() + 1 != n)
    precondition("sequential gluing needs n-1 gluers and maps");
  std::vector<int> off(n, 0);
  for (size_t k = 1; k < n; ++k) off[k] = off[k - 1] + parts[k - 1].size();
  std::vector<std::vector<bool>> used(n);
  for (size_t k = 0; k < n; ++k) used[k].assign(parts[k].size(), false);
  for (size_t k = 0; k + 1 < n; ++k) {
    const std::string tag = " (gluer " + std::to_string(k + 1) + ")";
    if (!check_map(f[k], gluers[k], parts[k + 1], false).empty()) precondition("f is not a map" + tag);
    if (!check_map(g[k], gluers[k], parts[k], false).empty()) precondition("g is not a map" + tag);
    if (!classify_inclusion(f[k], gluers[k], parts[k + 1]).initial) precondition("f is not an initial inclusion" + tag);
    if (!classify_inclusion(g[k], gluers[k], parts[k]).final) precondition("g is not a final inclusion" + tag);
    if (!is_acyclic(gluers[k])) precondition("gluer is not acyclic" + tag);
    for (int c : g[k]) used[k][c] = true;
  }
  for (size_t k = 1; k < n; ++k)
    for (int c : f[k - 1])
      if (used[k][c]) precondition("images of consecutive gluers meet in part " + std::to_string(k + 1));
  Hda all = coproduct(parts);
  all.kind = parts.front().kind;
  std::vector<std::pair<int, int>> ident;
  for (size_t k = 0; k + 1 < n; ++k)
    for (int c = 0; c < gluers[k].size(); ++c) ident.emplace_back(g[k][c] + off[k], f[k][c] + off[k + 1]);
  std::vector<int> start, accept;
  for (int s : parts.front().start) start.push_back(s);
  for (int a : parts.back().accept) accept.push_back(a + off[n - 1]);
  Quotient q = quotient(with_marks(all, start, accept), ident);
  check_cell_limit(q.result.size(), "sequential gluing");
  return q.result;
}

Hda self_glue(const Hda& x, const Hda& y, const PcMap& f, const PcMap& g) {
  if (!check_map(f, y, x, false).empty()) precondition("f is not a map");
  if (!check_map(g, y, x, false).empty()) precondition("g is not a map");
  if (!classify_inclusion(f, y, x).initial) precondition("f is not an initial inclusion");
  if (!classify_inclusion(g, y, x).final) precondition("g is not a final inclusion");
  if (!is_acyclic(y)) precondition("gluer is not acyclic");
  std::vector<int> owner(x.size(), 0);
  auto claim = [&](int c, int who, const char* what) {
    if (owner[c] && owner[c] != who) precondition(std::string("images overlap at ") + cell_label(x, c) + " (" + what + ")");
    owner[c] = who;
  };
  for (int c : f) claim(c, 1, "f");
  for (int c : g) claim(c, 2, "g");
  for (int c : x.start) claim(c, 3, "start");
  for (int c : x.accept) claim(c, 4, "accept");
  std::vector<std::pair<int, int>> ident;
  for (int c = 0; c < y.size(); ++c) ident.emplace_back(f[c], g[c]);
  return quotient(x, ident).result;
}

Hda glue_compose(const Hda& x, const Hda& y) {
  auto prepare = [](const Hda& h, bool left) {
    Hda r = trim(h.kind == Kind::Plain ? resolve(h) : h);
    std::vector<Hda> parts;
    for (const Hda& part : decompose_simple(r)) {
      Hda t = trim(part);
      if (t.start.empty() || t.accept.empty()) continue;
      parts.push_back(close(left ? accept_properize(t) : start_properize(t)));
    }
    return parts;
  };
  std::vector<Hda> left = prepare(x, true), right = prepare(y, false);
  std::vector<Hda> out;
  for (const Hda& l : left)
    for (const Hda& r : right) {
      if (!(l.cells[l.accept[0]].iev == r.cells[r.start[0]].iev)) continue;
      out.push_back(trim(glue_hdas(l, r)));
    }
  Hda res = coproduct(out);
  res.kind = Kind::Plain;
  for (const Hda* h : {&x, &y})
    for (char c : h->alphabet)
      if (res.alphabet.find(c) == std::string::npos) res.alphabet += c;
  std::sort(res.alphabet.begin(), res.alphabet.end());
  check_cell_limit(res.size(), "gluing composition");
  return res;
}

Hda identity_part(const Hda& x) {
  std::set<std::string> shapes;
  for (int c : x.start)
    if (x.is_accept(c)) shapes.insert(x.cells[c].iev.labels);
  Hda out;
  for (const auto& labels : shapes) {
    Cube cube = standard_cube(Ilo{labels, 0, 0});
    Hda h = with_marks(cube.pc, {cube.top()}, {cube.top()});
    out = coproduct(out, h);
  }
  out.kind = Kind::Plain;
  out.alphabet = x.alphabet;
  return out;
}

Hda kleene_plus(const Hda& xin) {
  const Hda x = xin.kind == Kind::Plain ? xin : close(xin);
  Hda ids = identity_part(x);
  Hda rest = trim(subtract_identities(x));
  if (rest.start.empty() || rest.accept.empty()) return ids;
  const int bound = 2 * rest.dim() + 1;
  std::vector<Hda> powers{rest};
  auto separated = [](const Hda& h) {
    Hda r = trim(resolve(h));
    auto in = image_of(start_map(r).map, r.size());
    for (int c : accept_map(r).map)
      if (in[c]) return false;
    return true;
  };
  while (!separated(powers.back())) {
    if (static_cast<int>(powers.size()) >= bound)
      throw Error(ErrorKind::NotSeparated, "no separating power up to " + std::to_string(bound));
    powers.push_back(trim(glue_compose(powers.back(), rest)));
  }
  Hda sep_plus = spider_plus(powers.back());
  Hda out;
  if (powers.size() == 1) {
    out = coproduct(ids, sep_plus);
  } else {
    Hda prefix = coproduct(powers);
    prefix.kind = Kind::Plain;
    out = coproduct(std::vector<Hda>{ids, prefix, glue_compose(prefix, sep_plus)});
  }
  out.kind = Kind::Plain;
  out.alphabet = x.alphabet;
  return trim(out);
}

bool has_flp(const PcMap& p, const Hda& from, const Hda& to) {
  std::vector<std::vector<int>> inv(to.size());
  for (int c = 0; c < from.size(); ++c) inv[p[c]].push_back(c);
  for (int x = 0; x < to.size(); ++x) {
    const Ilo& u = to.cells[x].iev;
    const Mask free = u.all() & ~u.src;
    for (Mask a = free; a; a = (a - 1) & free) {
      int lo = try_face(to, x, a, 0);
      if (lo < 0) continue;
      for (int y : inv[lo]) {
        bool found = false;
        for (int z : inv[x])
          if (try_face(from, z, a, 0) == y) found = true;
        if (!found) return false;
      }
    }
  }
  return true;
}

bool has_plp(const PcMap& p, const Hda& from, const Hda& to) {
  return has_flp(p, reverse(from), reverse(to));
}

bool has_tlp(const PcMap& p, const Hda& from, const Hda& to, const std::vector<int>& s,
             const std::vector<int>& t) {
  std::vector<std::vector<int>> inv(to.size());
  for (int c = 0; c < from.size(); ++c) inv[p[c]].push_back(c);
  std::vector<bool> target(to.size(), false);
  for (int c : t) target[c] = true;
  std::vector<std::vector<std::pair<int, Mask>>> cof(to.size()), cof_from(from.size());
  for (int c = 0; c < to.size(); ++c) {
    const Mask free = to.cells[c].iev.all() & ~to.cells[c].iev.src;
    for (Mask a = free; a; a = (a - 1) & free) {
      int lo = try_face(to, c, a, 0);
      if (lo >= 0) cof[lo].emplace_back(c, a);
    }
  }
  for (int c = 0; c < from.size(); ++c) {
    const Mask free = from.cells[c].iev.all() & ~from.cells[c].iev.src;
    for (Mask a = free; a; a = (a - 1) & free) {
      int lo = try_face(from, c, a, 0);
      if (lo >= 0) cof_from[lo].emplace_back(c, a);
    }
  }
  // State: a cell of `to` and the set of endpoints of lifts of the path so far.
  std::set<std::pair<int, std::vector<int>>> seen;
  std::vector<std::pair<int, std::vector<int>>> stack;
  for (int x : s)
    for (int y : inv[x]) stack.push_back({x, {y}});
  while (!stack.empty()) {
    auto [x, lifts] = stack.back();
    stack.pop_back();
    std::sort(lifts.begin(), lifts.end());
    lifts.erase(std::unique(lifts.begin(), lifts.end()), lifts.end());
    if (!seen.emplace(x, lifts).second) continue;
    if (target[x])
      for (int z : inv[x])
        if (!std::binary_search(lifts.begin(), lifts.end(), z)) return false;
    for (auto [up, a] : cof[x]) {
      std::vector<int> next;
      for (int l : lifts)
        for (auto [c, b] : cof_from[l])
          if (b == a && p[c] == up) next.push_back(c);
      stack.push_back({up, next});
    }
    const Ilo& u = to.cells[x].iev;
    const Mask free = u.all() & ~u.tgt;
    for (Mask b = free; b; b = (b - 1) & free) {
      int lo = try_face(to, x, 0, b);
      if (lo < 0) continue;
      std::vector<int> next;
      for (int l : lifts) {
        int d = try_face(from, l, 0, b);
        if (d >= 0) next.push_back(d);
      }
      stack.push_back({lo, next});
    }
  }
  return true;
}

}  // namespace hda
