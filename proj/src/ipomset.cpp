#include "hda/ipomset.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <sstream>

namespace hda {

const char* error_kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::Syntax: return "SyntaxError";
    case ErrorKind::AxiomViolation: return "AxiomViolation";
    case ErrorKind::InterfaceMismatch: return "InterfaceMismatch";
    case ErrorKind::NotInterval: return "NotInterval";
    case ErrorKind::TruncationMismatch: return "TruncationMismatch";
    case ErrorKind::IllegalFace: return "IllegalFace";
    case ErrorKind::InvalidHda: return "InvalidHda";
    case ErrorKind::InvalidPath: return "InvalidPath";
    case ErrorKind::InvalidMap: return "InvalidMap";
    case ErrorKind::ShapeMismatch: return "ShapeMismatch";
    case ErrorKind::NotSimple: return "NotSimple";
    case ErrorKind::PreconditionViolation: return "PreconditionViolation";
    case ErrorKind::ImagesNotDisjoint: return "ImagesNotDisjoint";
    case ErrorKind::NotSeparated: return "NotSeparated";
    case ErrorKind::IdentityOverlap: return "IdentityOverlap";
    case ErrorKind::CellLimit: return "CellLimit";
  }
  return "Error";
}

Mask squeeze(Mask m, Mask removed) {
  Mask out = 0;
  int k = 0;
  for (int i = 0; i < 32; ++i) {
    if (removed >> i & 1) continue;
    if (m >> i & 1) out |= bit(k);
    ++k;
  }
  return out;
}

Mask spread(Mask m, Mask removed) {
  Mask out = 0;
  int k = 0;
  for (int i = 0; i < 32 && (m >> k); ++i) {
    if (removed >> i & 1) continue;
    if (m >> k & 1) out |= bit(i);
    ++k;
  }
  return out;
}

Ilo restrict(const Ilo& u, Mask keep) {
  Ilo r;
  for (int i = 0; i < u.size(); ++i)
    if (keep >> i & 1) r.labels += u.labels[i];
  Mask drop = u.all() & ~keep;
  r.src = squeeze(u.src & keep, drop);
  r.tgt = squeeze(u.tgt & keep, drop);
  return r;
}

std::string to_string(const Ilo& u) {
  std::string s = "[";
  for (int i = 0; i < u.size(); ++i) {
    if (i) s += ";";
    if (u.src >> i & 1) s += '.';
    s += u.labels[i];
    if (u.tgt >> i & 1) s += '.';
  }
  return s + "]";
}

namespace {

void close_transitively(std::vector<Mask>& r) {
  const int n = static_cast<int>(r.size());
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      if (r[i] >> k & 1) r[i] |= r[k];
}

bool acyclic(std::vector<Mask> r) {
  close_transitively(r);
  for (size_t i = 0; i < r.size(); ++i)
    if (r[i] >> i & 1) return false;
  return true;
}

Ipomset permute(const std::string& labels, const std::vector<Mask>& prec,
                const std::vector<Mask>& ev, Mask s, Mask t, const std::vector<int>& perm) {
  const int n = static_cast<int>(perm.size());
  std::vector<int> inv(n);
  for (int k = 0; k < n; ++k) inv[perm[k]] = k;
  auto map = [&](Mask m) {
    Mask out = 0;
    for (int i = 0; i < n; ++i)
      if (m >> i & 1) out |= bit(inv[i]);
    return out;
  };
  Ipomset p;
  p.labels.resize(n);
  p.prec.resize(n);
  p.evord.resize(n);
  for (int k = 0; k < n; ++k) {
    int o = perm[k];
    p.labels[k] = labels[o];
    p.prec[k] = map(prec[o]);
    p.evord[k] = map(ev[o]);
  }
  p.src = map(s);
  p.tgt = map(t);
  return p;
}

int relation_code(const std::vector<Mask>& prec, const std::vector<Mask>& ev, int u, int v) {
  if (prec[u] >> v & 1) return 0;
  if (prec[v] >> u & 1) return 1;
  if (ev[u] >> v & 1) return 2;
  return 3;
}

// prec closed, ev essential and complete on incomparable pairs.
Ipomset finish(const std::string& labels, const std::vector<Mask>& prec,
               const std::vector<Mask>& ev, Mask s, Mask t) {
  const int n = static_cast<int>(labels.size());
  std::vector<int> score(n);
  std::vector<bool> seen(n, false);
  bool transitive = true;
  for (int i = 0; i < n; ++i) {
    score[i] = popcount(prec[i] | ev[i]);
    if (seen[score[i]]) transitive = false;
    else seen[score[i]] = true;
  }
  std::vector<int> perm(n);
  if (transitive) {
    for (int i = 0; i < n; ++i) perm[n - 1 - score[i]] = i;
    return permute(labels, prec, ev, s, t, perm);
  }
  // Cyclic precedence-plus-event-order: lexicographically least listing.
  std::vector<std::vector<int>> beam{{}};
  for (int k = 0; k < n; ++k) {
    std::vector<int> best;
    std::vector<std::vector<int>> next;
    for (const auto& part : beam) {
      Mask used = 0;
      for (int v : part) used |= bit(v);
      for (int v = 0; v < n; ++v) {
        if (used >> v & 1) continue;
        std::vector<int> chunk{labels[v], int(s >> v & 1), int(t >> v & 1)};
        for (int u : part) chunk.push_back(relation_code(prec, ev, u, v));
        if (next.empty() || chunk < best) {
          best = chunk;
          next.clear();
        } else if (chunk > best) {
          continue;
        }
        auto ext = part;
        ext.push_back(v);
        next.push_back(std::move(ext));
      }
    }
    beam = std::move(next);
  }
  return permute(labels, prec, ev, s, t, beam.front());
}

[[noreturn]] void axiom(const std::string& msg) { throw Error(ErrorKind::AxiomViolation, msg); }

}  // namespace

Ipomset from_relations(std::string labels, std::vector<Mask> prec, std::vector<Mask> evord,
                       Mask src, Mask tgt) {
  const int n = static_cast<int>(labels.size());
  if (n > kMaxEvents) axiom("too many events");
  if (static_cast<int>(prec.size()) != n || static_cast<int>(evord.size()) != n)
    axiom("relation arity mismatch");
  const Mask all = low_bits(n);
  if ((src | tgt) & ~all) axiom("interface outside carrier");
  close_transitively(prec);
  for (int i = 0; i < n; ++i)
    if (prec[i] >> i & 1) axiom("cyclic precedence");
  std::vector<Mask> ev(n, 0);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if ((prec[i] >> j & 1) || (prec[j] >> i & 1)) continue;
      bool ij = evord[i] >> j & 1, ji = evord[j] >> i & 1;
      if (ij == ji) axiom(ij ? "cyclic event order" : "pair neither ordered nor event-ordered");
      if (ij) ev[i] |= bit(j);
      else ev[j] |= bit(i);
    }
  }
  if (!acyclic(ev)) axiom("cyclic event order");
  for (int i = 0; i < n; ++i) {
    if ((tgt >> i & 1) && prec[i]) axiom("target interface element is not maximal");
    if (src & prec[i]) axiom("source interface element is not minimal");
  }
  return finish(labels, prec, ev, src, tgt);
}

Ipomset canonicalize(const RawIposet& raw) {
  const int n = static_cast<int>(raw.labels.size());
  if (n > kMaxEvents) axiom("too many events");
  std::vector<Mask> prec(n, 0), ev(n, 0);
  auto in_range = [n](int i) { return i >= 0 && i < n; };
  for (auto [i, j] : raw.prec) {
    if (!in_range(i) || !in_range(j)) axiom("precedence pair out of range");
    prec[i] |= bit(j);
  }
  for (auto [i, j] : raw.evord) {
    if (!in_range(i) || !in_range(j)) axiom("event order pair out of range");
    ev[i] |= bit(j);
  }
  close_transitively(ev);
  for (int i = 0; i < n; ++i)
    if (ev[i] >> i & 1) axiom("cyclic event order");
  return from_relations(raw.labels, prec, ev, raw.src, raw.tgt);
}

void check_canonical(const Ipomset& p) {
  const int n = p.events();
  if (static_cast<int>(p.prec.size()) != n || static_cast<int>(p.evord.size()) != n)
    axiom("relation arity mismatch");
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if ((p.evord[i] >> j & 1) && p.comparable(i, j)) axiom("event order stored on comparable pair");
  std::vector<Mask> closed = p.prec;
  close_transitively(closed);
  if (closed != p.prec) axiom("precedence not transitively closed");
  Ipomset q = from_relations(p.labels, p.prec, p.evord, p.src, p.tgt);
  if (!(q == p)) axiom("not in canonical listing");
}

Ipomset discrete(const Ilo& u) {
  const int n = u.size();
  std::vector<Mask> prec(n, 0), ev(n, 0);
  for (int i = 0; i < n; ++i) ev[i] = low_bits(n) & ~low_bits(i + 1);
  return from_relations(u.labels, prec, ev, u.src, u.tgt);
}

Ipomset identity(const Ilo& u) { return discrete(Ilo{u.labels, u.all(), u.all()}); }

Ipomset epsilon() { return Ipomset{}; }

Ipomset singleton(char label, bool in_src, bool in_tgt) {
  return discrete(Ilo{std::string(1, label), in_src ? 1u : 0u, in_tgt ? 1u : 0u});
}

namespace {

// Interface events of an antichain mask, listed in event order.
std::vector<int> ordered(const Ipomset& p, Mask m) {
  std::vector<int> v;
  for (int i = 0; i < p.events(); ++i)
    if (m >> i & 1) v.push_back(i);
  std::sort(v.begin(), v.end(), [&](int a, int b) { return p.evord[a] >> b & 1; });
  return v;
}

Ilo interface_ilo(const Ipomset& p, Mask m) {
  Ilo u;
  for (int i : ordered(p, m)) u.labels += p.labels[i];
  u.src = u.tgt = u.all();
  return u;
}

}  // namespace

Ilo source_ilo(const Ipomset& p) { return interface_ilo(p, p.src); }
Ilo target_ilo(const Ipomset& p) { return interface_ilo(p, p.tgt); }

bool glue_defined(const Ipomset& p, const Ipomset& q) {
  return target_ilo(p).labels == source_ilo(q).labels;
}

Ipomset glue(const Ipomset& p, const Ipomset& q) {
  std::vector<int> tp = ordered(p, p.tgt), sq = ordered(q, q.src);
  if (tp.size() != sq.size()) throw Error(ErrorKind::InterfaceMismatch, "interface sizes differ");
  const int np = p.events(), nq = q.events();
  std::vector<int> qmap(nq, -1);
  for (size_t k = 0; k < tp.size(); ++k) {
    if (p.labels[tp[k]] != q.labels[sq[k]])
      throw Error(ErrorKind::InterfaceMismatch, "interface labels differ");
    qmap[sq[k]] = tp[k];
  }
  std::string labels = p.labels;
  for (int j = 0; j < nq; ++j) {
    if (qmap[j] >= 0) continue;
    qmap[j] = static_cast<int>(labels.size());
    labels += q.labels[j];
  }
  const int n = static_cast<int>(labels.size());
  if (n > kMaxEvents) throw Error(ErrorKind::AxiomViolation, "too many events");
  auto mapq = [&](Mask m) {
    Mask out = 0;
    for (int j = 0; j < nq; ++j)
      if (m >> j & 1) out |= bit(qmap[j]);
    return out;
  };
  std::vector<Mask> prec(n, 0), ev(n, 0);
  for (int i = 0; i < np; ++i) {
    prec[i] = p.prec[i];
    ev[i] = p.evord[i];
  }
  for (int j = 0; j < nq; ++j) {
    prec[qmap[j]] |= mapq(q.prec[j]);
    ev[qmap[j]] |= mapq(q.evord[j]);
  }
  Mask qnew = mapq(low_bits(nq) & ~q.src);
  for (int i = 0; i < np; ++i)
    if (!(p.tgt >> i & 1)) prec[i] |= qnew;
  return from_relations(labels, prec, ev, p.src, mapq(q.tgt));
}

Ipomset parallel(const Ipomset& p, const Ipomset& q) {
  const int np = p.events(), nq = q.events(), n = np + nq;
  if (n > kMaxEvents) throw Error(ErrorKind::AxiomViolation, "too many events");
  std::vector<Mask> prec(n, 0), ev(n, 0);
  const Mask qall = low_bits(nq) << np;
  for (int i = 0; i < np; ++i) {
    prec[i] = p.prec[i];
    ev[i] = p.evord[i] | qall;
  }
  for (int j = 0; j < nq; ++j) {
    prec[np + j] = q.prec[j] << np;
    ev[np + j] = q.evord[j] << np;
  }
  return from_relations(p.labels + q.labels, prec, ev, p.src | q.src << np, p.tgt | q.tgt << np);
}

Ipomset reverse(const Ipomset& p) {
  const int n = p.events();
  std::vector<Mask> prec(n, 0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (p.less(i, j)) prec[j] |= bit(i);
  return from_relations(p.labels, prec, p.evord, p.tgt, p.src);
}

bool subsumes(const Ipomset& p, const Ipomset& q) {
  const int n = p.events();
  if (q.events() != n || popcount(p.src) != popcount(q.src) || popcount(p.tgt) != popcount(q.tgt))
    return false;
  std::string lp = p.labels, lq = q.labels;
  std::sort(lp.begin(), lp.end());
  std::sort(lq.begin(), lq.end());
  if (lp != lq) return false;
  std::vector<int> f(n, -1);
  Mask used = 0;
  auto fits = [&](int i, int j) {
    if (p.labels[i] != q.labels[j]) return false;
    if ((p.src >> i & 1) != (q.src >> j & 1) || (p.tgt >> i & 1) != (q.tgt >> j & 1)) return false;
    for (int k = 0; k < i; ++k) {
      int fk = f[k];
      if (q.less(fk, j) && !p.less(k, i)) return false;
      if (q.less(j, fk) && !p.less(i, k)) return false;
      if (!p.comparable(k, i)) {
        if ((p.evord[k] >> i & 1) && !(q.evord[fk] >> j & 1)) return false;
        if ((p.evord[i] >> k & 1) && !(q.evord[j] >> fk & 1)) return false;
      }
    }
    return true;
  };
  auto search = [&](auto&& self, int i) -> bool {
    if (i == n) return true;
    for (int j = 0; j < n; ++j) {
      if (used >> j & 1) continue;
      if (!fits(i, j)) continue;
      f[i] = j;
      used |= bit(j);
      if (self(self, i + 1)) return true;
      used &= ~bit(j);
    }
    f[i] = -1;
    return false;
  };
  return search(search, 0);
}

int width(const Ipomset& p) {
  const int n = p.events();
  std::vector<int> match(n, -1);
  auto augment = [&](auto&& self, int u, Mask& seen) -> bool {
    for (int v = 0; v < n; ++v) {
      if (!p.less(u, v) || (seen >> v & 1)) continue;
      seen |= bit(v);
      if (match[v] < 0 || self(self, match[v], seen)) {
        match[v] = u;
        return true;
      }
    }
    return false;
  };
  int matched = 0;
  for (int u = 0; u < n; ++u) {
    Mask seen = 0;
    if (augment(augment, u, seen)) ++matched;
  }
  return n - matched;
}

int twice_size(const Ipomset& p) { return 2 * p.events() - popcount(p.src) - popcount(p.tgt); }

bool is_interval(const Ipomset& p) {
  const int n = p.events();
  std::vector<Mask> pred(n, 0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (p.less(i, j)) pred[j] |= bit(i);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if ((pred[i] & ~pred[j]) && (pred[j] & ~pred[i])) return false;
  return true;
}

bool is_identity(const Ipomset& p) {
  const Mask all = low_bits(p.events());
  return p.src == all && p.tgt == all;
}

namespace {

void sequentializations(const Ipomset& p, std::vector<Ipomset>& out) {
  const int n = p.events();
  for (int x = 0; x < n; ++x) {
    if (p.tgt >> x & 1) continue;
    for (int y = 0; y < n; ++y) {
      if (x == y || (p.src >> y & 1) || p.comparable(x, y)) continue;
      std::vector<Mask> prec = p.prec;
      Mask after = p.prec[y] | bit(y);
      for (int u = 0; u < n; ++u)
        if (u == x || p.less(u, x)) prec[u] |= after;
      std::vector<Mask> ev = p.evord;
      for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v)
          if (prec[u] >> v & 1) {
            ev[u] &= ~bit(v);
            ev[v] &= ~bit(u);
          }
      Ipomset q{p.labels, prec, ev, p.src, p.tgt};
      if (!is_interval(q)) continue;
      out.push_back(finish(q.labels, q.prec, q.evord, q.src, q.tgt));
    }
  }
}

}  // namespace

std::set<Ipomset> down_close(const std::set<Ipomset>& s) {
  std::set<Ipomset> seen;
  std::deque<const Ipomset*> queue;
  for (const auto& p : s) {
    if (!is_interval(p)) throw Error(ErrorKind::NotInterval, to_literal(p));
    auto [it, fresh] = seen.insert(p);
    if (fresh) queue.push_back(&*it);
  }
  std::vector<Ipomset> next;
  while (!queue.empty()) {
    const Ipomset* p = queue.front();
    queue.pop_front();
    next.clear();
    sequentializations(*p, next);
    for (auto& q : next) {
      auto [it, fresh] = seen.insert(std::move(q));
      if (fresh) queue.push_back(&*it);
    }
  }
  return seen;
}

std::set<Ipomset> down_close(const Ipomset& p) { return down_close(std::set<Ipomset>{p}); }

std::string to_literal(const Ipomset& p) {
  const int n = p.events();
  std::string s = "events:";
  for (int i = 0; i < n; ++i) {
    s += i ? ", " : " ";
    if (p.src >> i & 1) s += '.';
    s += p.labels[i];
    if (p.tgt >> i & 1) s += '.';
  }
  std::vector<std::string> order, evord;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (p.less(i, j)) {
        bool covering = true;
        for (int k = 0; k < n && covering; ++k)
          if (p.less(i, k) && p.less(k, j)) covering = false;
        if (covering) order.push_back(std::to_string(i) + "<" + std::to_string(j));
      }
      if (i > j && (p.evord[i] >> j & 1)) evord.push_back(std::to_string(i) + "<" + std::to_string(j));
    }
  }
  auto clause = [&](const char* name, const std::vector<std::string>& items) {
    if (items.empty()) return;
    s += "; ";
    s += name;
    s += ":";
    for (size_t k = 0; k < items.size(); ++k) s += (k ? ", " : " ") + items[k];
  };
  clause("order", order);
  clause("evord", evord);
  return s;
}

namespace {

std::string trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r\n"), e = s.find_last_not_of(" \t\r\n");
  return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

[[noreturn]] void bad_literal(const std::string& msg) {
  throw Error(ErrorKind::Syntax, "ipomset literal: " + msg);
}

std::pair<int, int> parse_pair(const std::string& item, int n) {
  auto parts = split(item, '<');
  if (parts.size() != 2) bad_literal("expected i<j, got '" + item + "'");
  try {
    size_t used = 0;
    std::string a = trim(parts[0]), b = trim(parts[1]);
    int i = std::stoi(a, &used);
    if (used != a.size()) bad_literal("bad index '" + a + "'");
    int j = std::stoi(b, &used);
    if (used != b.size()) bad_literal("bad index '" + b + "'");
    if (i < 0 || j < 0 || i >= n || j >= n) bad_literal("index out of range in '" + item + "'");
    return {i, j};
  } catch (const std::logic_error&) {
    bad_literal("bad pair '" + item + "'");
  }
}

}  // namespace

Ipomset parse_ipomset(const std::string& text) {
  std::string labels;
  Mask src = 0, tgt = 0;
  std::vector<std::pair<int, int>> order, evord;
  bool have_events = false;
  for (const auto& raw_clause : split(text, ';')) {
    std::string clause = trim(raw_clause);
    if (clause.empty()) continue;
    size_t colon = clause.find(':');
    if (colon == std::string::npos) bad_literal("clause without ':' in '" + clause + "'");
    std::string name = trim(clause.substr(0, colon)), body = trim(clause.substr(colon + 1));
    if (name == "events") {
      if (have_events) bad_literal("duplicate events clause");
      have_events = true;
      if (body.empty()) continue;
      for (const auto& raw_tok : split(body, ',')) {
        std::string tok = trim(raw_tok);
        bool s = false, t = false;
        if (!tok.empty() && tok.front() == '.') {
          s = true;
          tok.erase(0, 1);
        }
        if (!tok.empty() && tok.back() == '.') {
          t = true;
          tok.pop_back();
        }
        if (tok.size() != 1 || !std::isalpha(static_cast<unsigned char>(tok[0])))
          bad_literal("bad event token '" + trim(raw_tok) + "'");
        int i = static_cast<int>(labels.size());
        if (i >= kMaxEvents) bad_literal("too many events");
        if (s) src |= bit(i);
        if (t) tgt |= bit(i);
        labels += tok[0];
      }
    } else if (name == "order" || name == "evord") {
      if (!have_events) bad_literal("events clause must come first");
      auto& dst = name == "order" ? order : evord;
      if (body.empty()) continue;
      for (const auto& item : split(body, ','))
        dst.push_back(parse_pair(item, static_cast<int>(labels.size())));
    } else {
      bad_literal("unknown clause '" + name + "'");
    }
  }
  if (!have_events) bad_literal("missing events clause");
  const int n = static_cast<int>(labels.size());
  std::vector<Mask> prec(n, 0), ev(n, 0);
  for (auto [i, j] : order) prec[i] |= bit(j);
  close_transitively(prec);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) ev[i] |= bit(j);
  for (auto [i, j] : evord) {
    ev[i] |= bit(j);
    ev[j] &= ~bit(i);
  }
  return from_relations(labels, prec, ev, src, tgt);
}

}  // namespace hda
