#include "hda/pathlang.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace hda {

namespace {

[[noreturn]] void bad_path(const std::string& msg) { throw Error(ErrorKind::InvalidPath, msg); }

// Incremental ev(alpha): events so far plus the positions of the current cell.
struct EvBuilder {
  std::string labels;
  std::vector<Mask> prec;
  std::vector<Mask> ev;
  Mask src = 0;
  std::vector<int> active;

  explicit EvBuilder(const Ilo& u) {
    const int n = u.size();
    labels = u.labels;
    prec.assign(n, 0);
    ev.assign(n, 0);
    for (int i = 0; i < n; ++i) {
      ev[i] = low_bits(n) & ~low_bits(i + 1);
      active.push_back(i);
    }
    src = low_bits(n);
  }

  Mask active_mask() const {
    Mask m = 0;
    for (int e : active) m |= bit(e);
    return m;
  }

  void up(const Ilo& x, Mask a) {
    Mask done = low_bits(static_cast<int>(labels.size())) & ~active_mask();
    std::vector<int> next;
    size_t k = 0;
    for (int i = 0; i < x.size(); ++i) {
      if (a >> i & 1) {
        int e = static_cast<int>(labels.size());
        if (e >= kMaxEvents) throw Error(ErrorKind::AxiomViolation, "path has too many events");
        labels += x.labels[i];
        prec.push_back(0);
        ev.push_back(0);
        for (int d = 0; d < e; ++d)
          if (done >> d & 1) prec[d] |= bit(e);
        next.push_back(e);
      } else {
        next.push_back(active[k++]);
      }
    }
    for (size_t p = 0; p < next.size(); ++p)
      for (size_t q = p + 1; q < next.size(); ++q) ev[next[p]] |= bit(next[q]);
    active = std::move(next);
  }

  void down(Mask b) {
    std::vector<int> next;
    for (size_t i = 0; i < active.size(); ++i)
      if (!(b >> i & 1)) next.push_back(active[i]);
    active = std::move(next);
  }

  Ipomset result() const { return from_relations(labels, prec, ev, src, active_mask()); }
};

}  // namespace

void check_path(const Hda& x, const Path& p) {
  if (p.cells.empty()) bad_path("empty path");
  if (p.steps.size() + 1 != p.cells.size()) bad_path("steps and cells do not line up");
  for (int c : p.cells)
    if (c < 0 || c >= x.size()) bad_path("cell out of range");
  for (size_t k = 0; k < p.steps.size(); ++k) {
    const Step& s = p.steps[k];
    if (!s.events) bad_path("empty step");
    int prev = p.cells[k], next = p.cells[k + 1];
    bool ok = s.dir == Dir::Up ? try_face(x, next, s.events, 0) == prev
                               : try_face(x, prev, 0, s.events) == next;
    if (!ok) bad_path("step " + std::to_string(k + 1) + " does not match a face");
  }
}

bool is_accepting(const Hda& x, const Path& p) {
  return !p.cells.empty() && x.is_start(p.cells.front()) && x.is_accept(p.cells.back());
}

Ipomset ev_path(const Hda& x, const Path& p) {
  check_path(x, p);
  EvBuilder b(x.cells[p.cells.front()].iev);
  for (size_t k = 0; k < p.steps.size(); ++k) {
    if (p.steps[k].dir == Dir::Up) b.up(x.cells[p.cells[k + 1]].iev, p.steps[k].events);
    else b.down(p.steps[k].events);
  }
  return b.result();
}

Path sparse_normal_form(const Hda& x, const Path& p) {
  check_path(x, p);
  Path r;
  r.cells.push_back(p.cells.front());
  for (size_t k = 0; k < p.steps.size(); ++k) {
    Step s = p.steps[k];
    if (!r.steps.empty() && r.steps.back().dir == s.dir) {
      Step& last = r.steps.back();
      if (s.dir == Dir::Up) last.events = s.events | spread(last.events, s.events);
      else last.events = last.events | spread(s.events, last.events);
      r.cells.back() = p.cells[k + 1];
    } else {
      r.steps.push_back(s);
      r.cells.push_back(p.cells[k + 1]);
    }
  }
  return r;
}

Path concat(const Path& a, const Path& b) {
  if (a.cells.back() != b.cells.front()) bad_path("paths are not concatenable");
  Path r = a;
  r.steps.insert(r.steps.end(), b.steps.begin(), b.steps.end());
  r.cells.insert(r.cells.end(), b.cells.begin() + 1, b.cells.end());
  return r;
}

Path map_path(const PcMap& f, const Path& p) {
  Path r = p;
  for (int& c : r.cells) c = f[c];
  return r;
}

namespace {

int find_cell(const Hda& x, const std::string& tok) {
  for (int c = 0; c < x.size(); ++c)
    if (x.cells[c].name == tok) return c;
  std::string digits = tok[0] == '#' ? tok.substr(1) : tok;
  if (!digits.empty() && std::all_of(digits.begin(), digits.end(), ::isdigit)) {
    int c = std::stoi(digits);
    if (c < x.size()) return c;
  }
  bad_path("unknown cell '" + tok + "'");
}

std::string sorted_labels(const Ilo& u, Mask m) {
  std::string s;
  for (int i = 0; i < u.size(); ++i)
    if (m >> i & 1) s += u.labels[i];
  std::sort(s.begin(), s.end());
  return s;
}

}  // namespace

Path parse_path(const Hda& x, const std::string& text) {
  std::istringstream in(text);
  std::vector<std::string> toks;
  for (std::string t; in >> t;) toks.push_back(t);
  if (toks.empty() || toks.size() % 2 == 0) bad_path("expected 'cell (U{..}|D{..}) cell ...'");
  Path p;
  p.cells.push_back(find_cell(x, toks[0]));
  for (size_t k = 1; k < toks.size(); k += 2) {
    const std::string& st = toks[k];
    if (st.size() < 3 || (st[0] != 'U' && st[0] != 'D') || st[1] != '{' || st.back() != '}')
      bad_path("bad step token '" + st + "'");
    std::string want;
    for (char c : st.substr(2, st.size() - 3))
      if (c != ',' && c != ' ') want += c;
    std::sort(want.begin(), want.end());
    int prev = p.cells.back(), next = find_cell(x, toks[k + 1]);
    Dir dir = st[0] == 'U' ? Dir::Up : Dir::Down;
    const Ilo& big = x.cells[dir == Dir::Up ? next : prev].iev;
    bool found = false;
    for (Mask m = 1; m <= big.all() && !found; ++m) {
      if (sorted_labels(big, m) != want) continue;
      bool ok = dir == Dir::Up ? try_face(x, next, m, 0) == prev : try_face(x, prev, 0, m) == next;
      if (ok) {
        p.steps.push_back({dir, m});
        found = true;
      }
    }
    if (!found) bad_path("no face matches step '" + st + "' before cell '" + toks[k + 1] + "'");
    p.cells.push_back(next);
  }
  return p;
}

std::string format_path(const Hda& x, const Path& p) {
  std::string s = cell_label(x, p.cells.front());
  for (size_t k = 0; k < p.steps.size(); ++k) {
    const Step& st = p.steps[k];
    const Ilo& big = x.cells[st.dir == Dir::Up ? p.cells[k + 1] : p.cells[k]].iev;
    std::string ls;
    for (int i = 0; i < big.size(); ++i)
      if (st.events >> i & 1) {
        if (!ls.empty()) ls += ',';
        ls += big.labels[i];
      }
    s += std::string(st.dir == Dir::Up ? " U{" : " D{") + ls + "} " + cell_label(x, p.cells[k + 1]);
  }
  return s;
}

std::vector<std::vector<Coface>> lower_cofaces(const Hda& x) {
  std::vector<std::vector<Coface>> cof(x.size());
  for (int c = 0; c < x.size(); ++c) {
    const Ilo& u = x.cells[c].iev;
    const Mask free = u.all() & ~u.src;
    for (Mask a = free; a; a = (a - 1) & free) {
      int y = try_face(x, c, a, 0);
      if (y >= 0) cof[y].push_back({c, a});
    }
  }
  return cof;
}

Language enumerate_language(const Hda& x, Truncation t) {
  Language out{{}, t};
  const auto cof = lower_cofaces(x);
  std::set<std::pair<int, Ipomset>> seen;
  auto explore = [&](auto&& self, int c, const EvBuilder& b) -> void {
    Ipomset p = b.result();
    const int size2 = twice_size(p);
    if (size2 > t.size2 || width(p) > t.width) return;
    if (!seen.emplace(c, p).second) return;
    if (x.is_accept(c)) out.members.insert(p);
    for (const Coface& up : cof[c]) {
      if (size2 + popcount(up.events) > t.size2 || x.cells[up.cell].dim() > t.width) continue;
      EvBuilder nb = b;
      nb.up(x.cells[up.cell].iev, up.events);
      self(self, up.cell, nb);
    }
    const Ilo& u = x.cells[c].iev;
    const Mask free = u.all() & ~u.tgt;
    for (Mask m = free; m; m = (m - 1) & free) {
      if (size2 + popcount(m) > t.size2) continue;
      int y = try_face(x, c, 0, m);
      if (y < 0) continue;
      EvBuilder nb = b;
      nb.down(m);
      self(self, y, nb);
    }
  };
  for (int s : x.start) {
    if (x.cells[s].dim() > t.width) continue;
    explore(explore, s, EvBuilder(x.cells[s].iev));
  }
  return out;
}

TrackObject track_object(const Ipomset& p) {
  if (!is_interval(p)) throw Error(ErrorKind::NotInterval, to_literal(p));
  TrackObject tr;
  tr.p = p;
  const int n = p.events();
  if (n > 12) throw Error(ErrorKind::PreconditionViolation, "track object too large");
  int total = 1;
  for (int i = 0; i < n; ++i) total *= 3;
  auto code = [&](const std::vector<std::uint8_t>& c) {
    int v = 0;
    for (int i = n - 1; i >= 0; --i) v = v * 3 + c[i];
    return v;
  };
  std::vector<int> id(total, -1);
  std::vector<std::vector<int>> running;
  std::vector<std::uint8_t> c(n, 0);
  for (int v = 0; v < total; ++v) {
    int w = v;
    for (int i = 0; i < n; ++i) {
      c[i] = static_cast<std::uint8_t>(w % 3);
      w /= 3;
    }
    bool ok = true;
    for (int i = 0; i < n && ok; ++i)
      for (int j = 0; j < n && ok; ++j)
        if (p.less(i, j)) {
          // allowed pairs (0,0) (e,0) (1,0) (1,e) (1,1)
          if (c[i] == 0 && c[j] != 0) ok = false;
          if (c[i] == 1 && c[j] != 0) ok = false;
        }
    if (!ok) continue;
    std::vector<int> act;
    for (int i = 0; i < n; ++i)
      if (c[i] == 1) act.push_back(i);
    std::sort(act.begin(), act.end(), [&](int a, int b) { return p.evord[a] >> b & 1; });
    std::string labels;
    for (int e : act) labels += p.labels[e];
    id[v] = tr.hda.add_cell(Ilo{labels, 0, 0});
    tr.cuts.push_back(c);
    running.push_back(act);
  }
  for (int k = 0; k < tr.hda.size(); ++k) {
    for (size_t pos = 0; pos < running[k].size(); ++pos) {
      auto lo = tr.cuts[k], hi = tr.cuts[k];
      lo[running[k][pos]] = 0;
      hi[running[k][pos]] = 2;
      tr.hda.cells[k].d0[pos] = id[code(lo)];
      tr.hda.cells[k].d1[pos] = id[code(hi)];
    }
  }
  std::vector<std::uint8_t> bot(n), top(n);
  for (int i = 0; i < n; ++i) {
    bot[i] = (p.src >> i & 1) ? 1 : 0;
    top[i] = (p.tgt >> i & 1) ? 1 : 2;
  }
  tr.bottom = id[code(bot)];
  tr.top = id[code(top)];
  tr.hda.start = {tr.bottom};
  tr.hda.accept = {tr.top};
  tr.hda.alphabet = infer_alphabet(tr.hda);
  return tr;
}

bool member_by_paths(const Hda& x, const Ipomset& p) {
  if (!is_interval(p)) return false;
  Truncation t{twice_size(p), width(p)};
  return enumerate_language(x, t).contains(p);
}

bool member_by_track(const Hda& xin, const Ipomset& p) {
  if (!is_interval(p)) return false;
  const Hda x = xin.kind == Kind::Interfaces ? close(xin) : xin;
  TrackObject tr = track_object(p);
  const Hda& t = tr.hda;
  std::vector<int> order(t.size());
  for (int k = 0; k < t.size(); ++k) order[k] = k;
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return t.cells[a].dim() > t.cells[b].dim(); });
  std::map<Ilo, std::vector<int>> by_shape;
  for (int c = 0; c < x.size(); ++c) by_shape[x.cells[c].iev].push_back(c);
  std::vector<int> img(t.size(), -1);
  std::vector<int> trail;
  auto assign = [&](int tc, int xc) -> bool {
    const Ilo& u = t.cells[tc].iev;
    for (Mask a = 0; a <= u.all(); ++a)
      for (Mask b = 0; b <= u.all(); ++b) {
        if (a & b) continue;
        int tf = try_face(t, tc, a, b);
        int xf = try_face(x, xc, a, b);
        if (xf < 0) return false;
        if (img[tf] < 0) {
          img[tf] = xf;
          trail.push_back(tf);
        } else if (img[tf] != xf) {
          return false;
        }
      }
    if (img[tr.bottom] >= 0 && !x.is_start(img[tr.bottom])) return false;
    if (img[tr.top] >= 0 && !x.is_accept(img[tr.top])) return false;
    return true;
  };
  auto search = [&](auto&& self, size_t k) -> bool {
    while (k < order.size() && img[order[k]] >= 0) ++k;
    if (k == order.size()) return true;
    int tc = order[k];
    auto it = by_shape.find(t.cells[tc].iev);
    if (it == by_shape.end()) return false;
    for (int xc : it->second) {
      size_t mark = trail.size();
      if (assign(tc, xc) && self(self, k + 1)) return true;
      while (trail.size() > mark) {
        img[trail.back()] = -1;
        trail.pop_back();
      }
    }
    return false;
  };
  return search(search, 0);
}

bool bounded_weak_equivalence(const PcMap& f, const Hda& from, const Hda& to, Truncation t) {
  auto problems = check_map(f, from, to, true);
  if (!problems.empty()) throw Error(ErrorKind::InvalidMap, problems.front());
  const auto cof_from = lower_cofaces(from);
  const auto cof_to = lower_cofaces(to);
  std::set<std::tuple<int, std::vector<int>, int>> seen;
  auto lifted = [&](const std::vector<int>& lifts) {
    for (int l : lifts)
      if (from.is_accept(l)) return true;
    return false;
  };
  auto explore = [&](auto&& self, int y, std::vector<int> lifts, int used) -> bool {
    std::sort(lifts.begin(), lifts.end());
    lifts.erase(std::unique(lifts.begin(), lifts.end()), lifts.end());
    if (!seen.emplace(y, lifts, used).second) return true;
    if (to.is_accept(y) && !lifted(lifts)) return false;
    for (const Coface& up : cof_to[y]) {
      int u = used + popcount(up.events);
      if (u > t.size2) continue;
      std::vector<int> next;
      for (int l : lifts)
        for (const Coface& lc : cof_from[l])
          if (lc.events == up.events && f[lc.cell] == up.cell) next.push_back(lc.cell);
      if (!self(self, up.cell, next, u)) return false;
    }
    const Ilo& iv = to.cells[y].iev;
    const Mask free = iv.all() & ~iv.tgt;
    for (Mask m = free; m; m = (m - 1) & free) {
      int u = used + popcount(m);
      if (u > t.size2) continue;
      int z = try_face(to, y, 0, m);
      if (z < 0) continue;
      std::vector<int> next;
      for (int l : lifts) next.push_back(try_face(from, l, 0, m));
      if (!self(self, z, next, u)) return false;
    }
    return true;
  };
  for (int y : to.start) {
    std::vector<int> lifts;
    for (int s : from.start)
      if (f[s] == y) lifts.push_back(s);
    if (!explore(explore, y, lifts, 0)) return false;
  }
  return true;
}

}  // namespace hda
