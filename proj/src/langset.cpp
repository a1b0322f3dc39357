#include "hda/langset.hpp"

#include <algorithm>
#include <map>
#include <vector>

namespace hda {

bool Truncation::admits(const Ipomset& p) const {
  return twice_size(p) <= size2 && hda::width(p) <= width && is_interval(p);
}

std::string to_string(const Truncation& t) {
  std::string s = std::to_string(t.size2 / 2);
  if (t.size2 % 2) s += ".5";
  return "size<=" + s + " width<=" + std::to_string(t.width);
}

Language empty_language(Truncation t) { return Language{{}, t}; }

Language from_members(const std::set<Ipomset>& s, Truncation t) {
  Language l{{}, t};
  std::set<Ipomset> in;
  for (const auto& p : s)
    if (t.admits(p)) in.insert(p);
  for (const auto& p : down_close(in))
    if (t.admits(p)) l.members.insert(p);
  return l;
}

Language principal(const Ipomset& p, Truncation t) { return from_members({p}, t); }

namespace {

void same_window(const Language& l, const Language& m) {
  if (l.trunc != m.trunc)
    throw Error(ErrorKind::TruncationMismatch, to_string(l.trunc) + " vs " + to_string(m.trunc));
}

// Interval orders reachable from p || q by adding precedence pairs that cross
// between the two blocks, leaving each block's own order untouched.
void cross_extensions(const Ipomset& p, const Ipomset& q, Truncation t, std::set<Ipomset>& out) {
  const int np = p.events(), nq = q.events(), n = np + nq;
  if (n > kMaxEvents) return;
  const Mask pm = low_bits(np), qm = low_bits(nq) << np;
  const std::string labels = p.labels + q.labels;
  const Mask src = p.src | q.src << np, tgt = p.tgt | q.tgt << np;
  std::vector<Mask> prec0(n), ev(n);
  for (int i = 0; i < np; ++i) {
    prec0[i] = p.prec[i];
    ev[i] = p.evord[i] | qm;
  }
  for (int j = 0; j < nq; ++j) {
    prec0[np + j] = q.prec[j] << np;
    ev[np + j] = q.evord[j] << np;
  }
  std::set<std::vector<Mask>> seen{prec0};
  std::vector<std::vector<Mask>> stack{prec0};
  while (!stack.empty()) {
    std::vector<Mask> prec = std::move(stack.back());
    stack.pop_back();
    Ipomset r{labels, prec, ev, src, tgt};
    if (is_interval(r) && width(r) <= t.width) out.insert(from_relations(labels, prec, ev, src, tgt));
    for (int x = 0; x < n; ++x) {
      if (tgt >> x & 1) continue;
      Mask other = (x < np) ? qm : pm;
      for (int y = 0; y < n; ++y) {
        if (!(other >> y & 1) || (src >> y & 1)) continue;
        if ((prec[x] >> y & 1) || (prec[y] >> x & 1)) continue;
        std::vector<Mask> nx = prec;
        Mask after = prec[y] | bit(y);
        bool ok = true;
        for (int u = 0; u < n && ok; ++u) {
          if (u != x && !(prec[u] >> x & 1)) continue;
          nx[u] |= after;
          Mask own = (u < np) ? pm : qm;
          if ((nx[u] & own) != (prec0[u] & own)) ok = false;
        }
        if (!ok) continue;
        if (seen.insert(nx).second) stack.push_back(std::move(nx));
      }
    }
  }
}

std::string target_key(const Ipomset& p) { return target_ilo(p).labels; }
std::string source_key(const Ipomset& p) { return source_ilo(p).labels; }

}  // namespace

Language lang_union(const Language& l, const Language& m) {
  same_window(l, m);
  Language r = l;
  r.members.insert(m.members.begin(), m.members.end());
  return r;
}

Language lang_glue(const Language& l, const Language& m) {
  same_window(l, m);
  const Truncation t = l.trunc;
  std::map<std::string, std::vector<const Ipomset*>> by_source;
  for (const auto& q : m.members) by_source[source_key(q)].push_back(&q);
  std::set<Ipomset> raw;
  for (const auto& p : l.members) {
    auto it = by_source.find(target_key(p));
    if (it == by_source.end()) continue;
    const int sp = twice_size(p);
    for (const Ipomset* q : it->second) {
      if (sp + twice_size(*q) > t.size2) continue;
      raw.insert(glue(p, *q));
    }
  }
  return from_members(raw, t);
}

Language lang_parallel(const Language& l, const Language& m) {
  same_window(l, m);
  const Truncation t = l.trunc;
  std::set<Ipomset> out;
  for (const auto& p : l.members) {
    const int sp = twice_size(p);
    for (const auto& q : m.members)
      if (sp + twice_size(q) <= t.size2) cross_extensions(p, q, t, out);
  }
  Language r{{}, t};
  for (auto& p : out)
    if (t.admits(p)) r.members.insert(p);
  return r;
}

Language lang_plus(const Language& l) {
  const Truncation t = l.trunc;
  Language ids{{}, t}, rest{{}, t};
  for (const auto& p : l.members) (is_identity(p) ? ids : rest).members.insert(p);
  Language acc = rest;
  Language delta = rest;
  while (!delta.members.empty()) {
    Language next = lang_glue(rest, delta);
    delta.members.clear();
    for (const auto& p : next.members)
      if (acc.members.insert(p).second) delta.members.insert(p);
  }
  return lang_union(ids, acc);
}

Language lang_minus_identities(const Language& l) {
  Language r{{}, l.trunc};
  for (const auto& p : l.members)
    if (!is_identity(p)) r.members.insert(p);
  return r;
}

Language lang_reverse(const Language& l) {
  Language r{{}, l.trunc};
  for (const auto& p : l.members) r.members.insert(reverse(p));
  return r;
}

Language restrict_window(const Language& l, Truncation t) {
  Language r{{}, t};
  for (const auto& p : l.members)
    if (t.admits(p)) r.members.insert(p);
  return r;
}

bool lang_equal(const Language& l, const Language& m) {
  same_window(l, m);
  return l.members == m.members;
}

bool lang_subset(const Language& l, const Language& m) {
  same_window(l, m);
  return std::includes(m.members.begin(), m.members.end(), l.members.begin(), l.members.end());
}

bool is_window_closed(const Language& l) {
  for (const auto& p : l.members)
    if (!l.trunc.admits(p)) return false;
  for (const auto& p : down_close(l.members))
    if (!l.contains(p)) return false;
  return true;
}

std::string dump(const Language& l) {
  std::vector<std::pair<int, std::string>> rows;
  for (const auto& p : l.members) rows.emplace_back(twice_size(p), to_literal(p));
  std::sort(rows.begin(), rows.end());
  std::string s = "# language " + to_string(l.trunc) + " members=" + std::to_string(rows.size()) + "\n";
  for (const auto& [_, lit] : rows) s += lit + "\n";
  return s;
}

}  // namespace hda
