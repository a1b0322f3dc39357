#include "hda/pcset.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

namespace hda {

int Hda::add_cell(Ilo iev, std::string name) {
  Cell c;
  c.d0.assign(iev.size(), -1);
  c.d1.assign(iev.size(), -1);
  c.iev = std::move(iev);
  c.name = std::move(name);
  cells.push_back(std::move(c));
  return size() - 1;
}

bool Hda::is_start(int c) const { return std::binary_search(start.begin(), start.end(), c); }
bool Hda::is_accept(int c) const { return std::binary_search(accept.begin(), accept.end(), c); }

int Hda::dim() const {
  int d = 0;
  for (const auto& c : cells) d = std::max(d, c.dim());
  return d;
}

void Hda::normalize_marks() {
  for (auto* v : {&start, &accept}) {
    std::sort(v->begin(), v->end());
    v->erase(std::unique(v->begin(), v->end()), v->end());
  }
}

std::string cell_label(const Hda& x, int c) {
  if (c >= 0 && c < x.size() && !x.cells[c].name.empty()) return x.cells[c].name;
  return "#" + std::to_string(c);
}

std::string infer_alphabet(const Hda& x) {
  std::string a;
  for (const auto& c : x.cells)
    for (char l : c.iev.labels)
      if (a.find(l) == std::string::npos) a += l;
  std::sort(a.begin(), a.end());
  return a;
}

int try_face(const Hda& x, int c, Mask a, Mask b) {
  if (a & b) return -1;
  const Ilo& u = x.cells[c].iev;
  if ((a | b) & ~u.all()) return -1;
  if ((a & u.src) || (b & u.tgt)) return -1;
  for (int i = u.size() - 1; i >= 0 && c >= 0; --i) {
    if (a >> i & 1) c = x.cells[c].d0[i];
    else if (b >> i & 1) c = x.cells[c].d1[i];
  }
  return c;
}

int face(const Hda& x, int c, Mask a, Mask b) {
  if (c < 0 || c >= x.size()) throw Error(ErrorKind::IllegalFace, "no such cell");
  int r = try_face(x, c, a, b);
  if (r < 0)
    throw Error(ErrorKind::IllegalFace, "face of " + cell_label(x, c) + " violates interfaces or disjointness");
  return r;
}

std::vector<std::string> validate(const Hda& x) {
  std::vector<std::string> out;
  const int n = x.size();
  auto bad = [&](int c, const std::string& msg) { out.push_back(cell_label(x, c) + ": " + msg); };
  for (int c = 0; c < n; ++c) {
    const Cell& cell = x.cells[c];
    const Ilo& u = cell.iev;
    const int d = u.size();
    if (static_cast<int>(cell.d0.size()) != d || static_cast<int>(cell.d1.size()) != d) {
      bad(c, "face arrays do not match dimension");
      continue;
    }
    if ((u.src | u.tgt) & ~u.all()) bad(c, "interface flags outside carrier");
    if (x.kind == Kind::Plain && (u.src | u.tgt)) bad(c, "interface flags on a plain precubical set");
    for (char l : u.labels)
      if (!x.alphabet.empty() && x.alphabet.find(l) == std::string::npos)
        bad(c, std::string("label '") + l + "' not in alphabet");
    for (int i = 0; i < d; ++i) {
      for (int nu = 0; nu < 2; ++nu) {
        int f = nu ? cell.d1[i] : cell.d0[i];
        bool allowed = !((nu ? u.tgt : u.src) >> i & 1);
        std::string which = std::string(nu ? "upper" : "lower") + " face " + std::to_string(i);
        if (f < -1 || f >= n) {
          bad(c, which + " out of range");
          continue;
        }
        if (allowed && f < 0) bad(c, which + " missing");
        if (!allowed && f >= 0) bad(c, which + " present on an interface event");
        if (f < 0) continue;
        if (!(x.cells[f].iev == restrict(u, u.all() & ~bit(i))))
          bad(c, which + " has mismatched ilo-set " + to_string(x.cells[f].iev));
      }
    }
  }
  if (!out.empty()) return out;
  for (int c = 0; c < n; ++c) {
    const int d = x.cells[c].dim();
    for (int i = 0; i < d; ++i)
      for (int j = i + 1; j < d; ++j)
        for (int nu = 0; nu < 2; ++nu)
          for (int mu = 0; mu < 2; ++mu) {
            const Cell& cell = x.cells[c];
            int fj = mu ? cell.d1[j] : cell.d0[j];
            int fi = nu ? cell.d1[i] : cell.d0[i];
            if (fj < 0 || fi < 0) continue;
            int one = nu ? x.cells[fj].d1[i] : x.cells[fj].d0[i];
            int two = mu ? x.cells[fi].d1[j - 1] : x.cells[fi].d0[j - 1];
            if (one != two)
              bad(c, "faces at positions " + std::to_string(i) + "," + std::to_string(j) + " do not commute");
          }
  }
  for (int s : x.start) {
    if (s < 0 || s >= n) {
      out.push_back("start cell out of range");
      continue;
    }
    const Ilo& u = x.cells[s].iev;
    if (x.kind == Kind::Interfaces && u.src != u.all()) bad(s, "start cell with S != U");
  }
  for (int a : x.accept) {
    if (a < 0 || a >= n) {
      out.push_back("accept cell out of range");
      continue;
    }
    const Ilo& u = x.cells[a].iev;
    if (x.kind == Kind::Interfaces && u.tgt != u.all()) bad(a, "accept cell with T != U");
  }
  return out;
}

void require_valid(const Hda& x, const std::string& what) {
  auto v = validate(x);
  if (v.empty()) return;
  std::string msg = what + ":";
  for (const auto& s : v) msg += " " + s + ";";
  throw Error(ErrorKind::InvalidHda, msg);
}

Cube standard_cube(const Ilo& u) {
  Cube cube;
  const int n = u.size();
  cube.n = n;
  cube.pc.kind = (u.src | u.tgt) ? Kind::Interfaces : Kind::Plain;
  cube.index.assign(std::size_t(1) << (2 * n), -1);
  const Mask all = u.all();
  for (Mask a = 0; a <= all; ++a) {
    if (a & u.src) continue;
    for (Mask b = 0; b <= all; ++b) {
      if ((b & a) || (b & u.tgt)) continue;
      cube.index[a | b << n] = cube.pc.add_cell(restrict(u, all & ~(a | b)));
      cube.a_of.push_back(a);
      cube.b_of.push_back(b);
    }
  }
  for (int c = 0; c < cube.pc.size(); ++c) {
    Mask a = cube.a_of[c], b = cube.b_of[c], rest = all & ~(a | b);
    int k = 0;
    for (int g = 0; g < n; ++g) {
      if (!(rest >> g & 1)) continue;
      if (!(u.src >> g & 1)) cube.pc.cells[c].d0[k] = cube.at(a | bit(g), b);
      if (!(u.tgt >> g & 1)) cube.pc.cells[c].d1[k] = cube.at(a, b | bit(g));
      ++k;
    }
  }
  cube.pc.alphabet = infer_alphabet(cube.pc);
  return cube;
}

PcMap yoneda(const Hda& x, int c, const Cube& cube) {
  PcMap f(cube.pc.size());
  for (int k = 0; k < cube.pc.size(); ++k) f[k] = face(x, c, cube.a_of[k], cube.b_of[k]);
  return f;
}

PcMap yoneda(const Hda& x, int c) { return yoneda(x, c, standard_cube(x.cells[c].iev)); }

std::vector<std::string> check_map(const PcMap& f, const Hda& from, const Hda& to, bool marks) {
  std::vector<std::string> out;
  if (static_cast<int>(f.size()) != from.size()) {
    out.push_back("map is not total");
    return out;
  }
  for (int c = 0; c < from.size(); ++c) {
    int fc = f[c];
    if (fc < 0 || fc >= to.size()) {
      out.push_back(cell_label(from, c) + ": image out of range");
      continue;
    }
    const Cell& a = from.cells[c];
    const Cell& b = to.cells[fc];
    if (!(a.iev == b.iev)) {
      out.push_back(cell_label(from, c) + ": ilo-set not preserved");
      continue;
    }
    for (int i = 0; i < a.dim(); ++i) {
      int l = a.d0[i] < 0 ? -1 : f[a.d0[i]];
      int u = a.d1[i] < 0 ? -1 : f[a.d1[i]];
      if (l != b.d0[i] || u != b.d1[i])
        out.push_back(cell_label(from, c) + ": face " + std::to_string(i) + " not preserved");
    }
  }
  if (marks && out.empty()) {
    for (int s : from.start)
      if (!to.is_start(f[s])) out.push_back(cell_label(from, s) + ": start not preserved");
    for (int a : from.accept)
      if (!to.is_accept(f[a])) out.push_back(cell_label(from, a) + ": accept not preserved");
  }
  return out;
}

PcMap identity_map(const Hda& x) {
  PcMap f(x.size());
  std::iota(f.begin(), f.end(), 0);
  return f;
}

PcMap compose(const PcMap& g, const PcMap& f) {
  PcMap h(f.size());
  for (size_t i = 0; i < f.size(); ++i) h[i] = g[f[i]];
  return h;
}

Hda reverse(const Hda& x) {
  Hda r = x;
  for (auto& c : r.cells) {
    std::swap(c.d0, c.d1);
    std::swap(c.iev.src, c.iev.tgt);
  }
  std::swap(r.start, r.accept);
  return r;
}

Hda coproduct(const Hda& x, const Hda& y) {
  Hda r = x;
  if (y.kind == Kind::Interfaces) r.kind = Kind::Interfaces;
  const int off = x.size();
  for (const auto& c : y.cells) {
    Cell d = c;
    for (auto* v : {&d.d0, &d.d1})
      for (int& f : *v)
        if (f >= 0) f += off;
    r.cells.push_back(std::move(d));
  }
  for (int s : y.start) r.start.push_back(s + off);
  for (int a : y.accept) r.accept.push_back(a + off);
  for (char l : y.alphabet)
    if (r.alphabet.find(l) == std::string::npos) r.alphabet += l;
  std::sort(r.alphabet.begin(), r.alphabet.end());
  if (!x.cells.empty() && !y.cells.empty())
    for (auto& c : r.cells) c.name.clear();
  r.normalize_marks();
  return r;
}

Hda coproduct(const std::vector<Hda>& parts) {
  Hda r;
  for (const auto& p : parts) r = coproduct(r, p);
  return r;
}

Hda tensor(const Hda& x, const Hda& y) {
  Hda r;
  r.kind = (x.kind == Kind::Interfaces || y.kind == Kind::Interfaces) ? Kind::Interfaces : Kind::Plain;
  const int ny = y.size();
  for (int i = 0; i < x.size(); ++i)
    for (int j = 0; j < ny; ++j) {
      const Ilo& u = x.cells[i].iev;
      const Ilo& v = y.cells[j].iev;
      r.add_cell(Ilo{u.labels + v.labels, u.src | v.src << u.size(), u.tgt | v.tgt << u.size()});
    }
  for (int i = 0; i < x.size(); ++i)
    for (int j = 0; j < ny; ++j) {
      Cell& c = r.cells[i * ny + j];
      const Cell& a = x.cells[i];
      const Cell& b = y.cells[j];
      for (int k = 0; k < a.dim(); ++k) {
        if (a.d0[k] >= 0) c.d0[k] = a.d0[k] * ny + j;
        if (a.d1[k] >= 0) c.d1[k] = a.d1[k] * ny + j;
      }
      for (int k = 0; k < b.dim(); ++k) {
        if (b.d0[k] >= 0) c.d0[a.dim() + k] = i * ny + b.d0[k];
        if (b.d1[k] >= 0) c.d1[a.dim() + k] = i * ny + b.d1[k];
      }
    }
  for (int s : x.start)
    for (int t : y.start) r.start.push_back(s * ny + t);
  for (int s : x.accept)
    for (int t : y.accept) r.accept.push_back(s * ny + t);
  r.alphabet = x.alphabet;
  for (char l : y.alphabet)
    if (r.alphabet.find(l) == std::string::npos) r.alphabet += l;
  std::sort(r.alphabet.begin(), r.alphabet.end());
  r.normalize_marks();
  return r;
}

Hda resolve(const Hda& x) {
  if (x.kind != Kind::Plain) throw Error(ErrorKind::PreconditionViolation, "resolve expects a plain HDA");
  Hda r;
  r.kind = Kind::Interfaces;
  r.alphabet = x.alphabet;
  std::vector<int> base(x.size());
  for (int c = 0; c < x.size(); ++c) {
    const Ilo& u = x.cells[c].iev;
    base[c] = r.size();
    for (Mask t = 0; t <= u.all(); ++t)
      for (Mask s = 0; s <= u.all(); ++s) r.add_cell(Ilo{u.labels, s, t});
  }
  auto id = [&](int c, Mask s, Mask t) { return base[c] + int(s + (t << x.cells[c].dim())); };
  for (int c = 0; c < x.size(); ++c) {
    const Cell& cell = x.cells[c];
    const Ilo& u = cell.iev;
    for (Mask t = 0; t <= u.all(); ++t)
      for (Mask s = 0; s <= u.all(); ++s) {
        Cell& rc = r.cells[id(c, s, t)];
        for (int i = 0; i < u.size(); ++i) {
          Mask si = squeeze(s, bit(i)), ti = squeeze(t, bit(i));
          if (!(s >> i & 1)) rc.d0[i] = id(cell.d0[i], si, ti);
          if (!(t >> i & 1)) rc.d1[i] = id(cell.d1[i], si, ti);
        }
      }
  }
  for (int c : x.start) {
    Mask all = x.cells[c].iev.all();
    for (Mask t = 0; t <= all; ++t) r.start.push_back(id(c, all, t));
  }
  for (int c : x.accept) {
    Mask all = x.cells[c].iev.all();
    for (Mask s = 0; s <= all; ++s) r.accept.push_back(id(c, s, all));
  }
  r.normalize_marks();
  return r;
}

Hda close(const Hda& x, ClosureIndex* index) {
  Hda r;
  r.kind = Kind::Plain;
  r.alphabet = x.alphabet;
  ClosureIndex local;
  ClosureIndex& ix = index ? *index : local;
  ix.at.assign(x.size(), {});
  for (int c = 0; c < x.size(); ++c) {
    const Ilo& u = x.cells[c].iev;
    const int d = u.size();
    ix.at[c].assign(std::size_t(1) << (2 * d), -1);
    for (Mask a = 0; a <= u.all(); ++a) {
      if (a & ~u.src) continue;
      for (Mask b = 0; b <= u.all(); ++b) {
        if ((b & ~u.tgt) || (a & b)) continue;
        Ilo v = restrict(Ilo{u.labels, 0, 0}, u.all() & ~(a | b));
        ix.at[c][a | b << d] = r.add_cell(v);
      }
    }
  }
  for (int c = 0; c < x.size(); ++c) {
    const Cell& cell = x.cells[c];
    const Ilo& u = cell.iev;
    const int d = u.size();
    for (Mask a = 0; a <= u.all(); ++a)
      for (Mask b = 0; b <= u.all(); ++b) {
        int me = ix.at[c][a | b << d];
        if (me < 0) continue;
        Cell& rc = r.cells[me];
        Mask rest = u.all() & ~(a | b);
        int k = 0;
        for (int g = 0; g < d; ++g) {
          if (!(rest >> g & 1)) continue;
          if (u.src >> g & 1) {
            rc.d0[k] = ix.at[c][(a | bit(g)) | b << d];
          } else {
            int f = cell.d0[g];
            rc.d0[k] = ix.at[f][squeeze(a, bit(g)) | squeeze(b, bit(g)) << (d - 1)];
          }
          if (u.tgt >> g & 1) {
            rc.d1[k] = ix.at[c][a | (b | bit(g)) << d];
          } else {
            int f = cell.d1[g];
            rc.d1[k] = ix.at[f][squeeze(a, bit(g)) | squeeze(b, bit(g)) << (d - 1)];
          }
          ++k;
        }
      }
  }
  for (int c : x.start) r.start.push_back(ix.at[c][0]);
  for (int c : x.accept) r.accept.push_back(ix.at[c][0]);
  r.normalize_marks();
  return r;
}

Hda close(const Hda& x) { return close(x, nullptr); }

Hda restrict_cells(const Hda& x, const std::vector<bool>& keep, PcMap* incl) {
  std::vector<int> id(x.size(), -1);
  Hda r;
  r.kind = x.kind;
  r.alphabet = x.alphabet;
  for (int c = 0; c < x.size(); ++c)
    if (keep[c]) {
      id[c] = r.size();
      r.cells.push_back(x.cells[c]);
    }
  for (auto& c : r.cells)
    for (auto* v : {&c.d0, &c.d1})
      for (int& f : *v)
        if (f >= 0) {
          if (id[f] < 0) throw Error(ErrorKind::InvalidHda, "restriction is not closed under faces");
          f = id[f];
        }
  for (int s : x.start)
    if (id[s] >= 0) r.start.push_back(id[s]);
  for (int a : x.accept)
    if (id[a] >= 0) r.accept.push_back(id[a]);
  r.normalize_marks();
  if (incl) {
    incl->clear();
    for (int c = 0; c < x.size(); ++c)
      if (id[c] >= 0) incl->push_back(c);
  }
  return r;
}

namespace {

std::vector<std::vector<int>> successor_lists(const Hda& x, bool forward) {
  std::vector<std::vector<int>> adj(x.size());
  for (int c = 0; c < x.size(); ++c) {
    for (int f : x.cells[c].d1)
      if (f >= 0) (forward ? adj[c] : adj[f]).push_back(forward ? f : c);
    for (int f : x.cells[c].d0)
      if (f >= 0) (forward ? adj[f] : adj[c]).push_back(forward ? c : f);
  }
  return adj;
}

std::vector<bool> bfs(const std::vector<std::vector<int>>& adj, const std::vector<int>& from) {
  std::vector<bool> seen(adj.size(), false);
  std::deque<int> q;
  for (int s : from)
    if (!seen[s]) {
      seen[s] = true;
      q.push_back(s);
    }
  while (!q.empty()) {
    int c = q.front();
    q.pop_front();
    for (int d : adj[c])
      if (!seen[d]) {
        seen[d] = true;
        q.push_back(d);
      }
  }
  return seen;
}

}  // namespace

std::vector<bool> reachable_from(const Hda& x, const std::vector<int>& from) {
  return bfs(successor_lists(x, true), from);
}

std::vector<bool> coreachable_to(const Hda& x, const std::vector<int>& to) {
  return bfs(successor_lists(x, false), to);
}

Hda trim(const Hda& x) {
  auto fwd = reachable_from(x, x.start);
  auto bwd = coreachable_to(x, x.accept);
  std::vector<bool> keep(x.size(), false);
  std::vector<int> stack;
  for (int c = 0; c < x.size(); ++c)
    if (fwd[c] && bwd[c]) {
      keep[c] = true;
      stack.push_back(c);
    }
  while (!stack.empty()) {
    int c = stack.back();
    stack.pop_back();
    for (auto* v : {&x.cells[c].d0, &x.cells[c].d1})
      for (int f : *v)
        if (f >= 0 && !keep[f]) {
          keep[f] = true;
          stack.push_back(f);
        }
  }
  return restrict_cells(x, keep);
}

Quotient quotient(const Hda& x, const std::vector<std::pair<int, int>>& identify) {
  std::vector<int> parent(x.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  };
  std::deque<std::pair<int, int>> work(identify.begin(), identify.end());
  while (!work.empty()) {
    auto [a, b] = work.front();
    work.pop_front();
    int ra = find(a), rb = find(b);
    if (ra == rb) continue;
    if (!(x.cells[a].iev == x.cells[b].iev))
      throw Error(ErrorKind::ShapeMismatch,
                  "identified cells " + cell_label(x, a) + " and " + cell_label(x, b) + " differ in shape");
    if (rb < ra) std::swap(ra, rb);
    parent[rb] = ra;
    const Cell& ca = x.cells[a];
    const Cell& cb = x.cells[b];
    for (int i = 0; i < ca.dim(); ++i) {
      if (ca.d0[i] >= 0) work.emplace_back(ca.d0[i], cb.d0[i]);
      if (ca.d1[i] >= 0) work.emplace_back(ca.d1[i], cb.d1[i]);
    }
  }
  Quotient q;
  q.result.kind = x.kind;
  q.result.alphabet = x.alphabet;
  std::vector<int> id(x.size(), -1);
  for (int c = 0; c < x.size(); ++c) {
    int r = find(c);
    if (id[r] < 0) {
      id[r] = q.result.size();
      q.result.cells.push_back(x.cells[r]);
    }
  }
  q.proj.resize(x.size());
  for (int c = 0; c < x.size(); ++c) q.proj[c] = id[find(c)];
  for (auto& c : q.result.cells)
    for (auto* v : {&c.d0, &c.d1})
      for (int& f : *v)
        if (f >= 0) f = q.proj[f];
  for (int s : x.start) q.result.start.push_back(q.proj[s]);
  for (int a : x.accept) q.result.accept.push_back(q.proj[a]);
  q.result.normalize_marks();
  return q;
}

}  // namespace hda
