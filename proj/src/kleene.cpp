#include "hda/kleene.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "hda/surgery.hpp"

namespace hda {

Hda empty_hda() { return Hda{}; }

Hda epsilon_hda() {
  Hda h;
  int v = h.add_cell(Ilo{}, "v");
  h.start = {v};
  h.accept = {v};
  return h;
}

// A single edge, marked at its endpoints or on the edge itself.
Hda atom_hda(char label, bool src, bool tgt) {
  Hda h;
  h.alphabet = std::string(1, label);
  int v0 = h.add_cell(Ilo{}, "v0");
  int v1 = h.add_cell(Ilo{}, "v1");
  int e = h.add_cell(Ilo{std::string(1, label), 0, 0}, "e");
  h.cells[e].d0[0] = v0;
  h.cells[e].d1[0] = v1;
  h.start = {src ? e : v0};
  h.accept = {tgt ? e : v1};
  return h;
}

Hda compile(const ExprPtr& root) {
  std::map<const Expr*, Hda> memo;
  auto rec = [&](auto&& self, const ExprPtr& e) -> Hda {
    auto it = memo.find(e.get());
    if (it != memo.end()) return it->second;
    Hda h;
    switch (e->kind) {
      case Expr::Kind::Empty: h = empty_hda(); break;
      case Expr::Kind::Eps: h = epsilon_hda(); break;
      case Expr::Kind::Atom: h = atom_hda(e->label, e->src, e->tgt); break;
      case Expr::Kind::Union: h = coproduct(self(self, e->lhs), self(self, e->rhs)); break;
      case Expr::Kind::Par: h = trim(tensor(self(self, e->lhs), self(self, e->rhs))); break;
      case Expr::Kind::Glue: h = glue_compose(self(self, e->lhs), self(self, e->rhs)); break;
      case Expr::Kind::Plus: h = kleene_plus(self(self, e->lhs)); break;
    }
    h.kind = Kind::Plain;
    std::string alpha = expr_alphabet(e);
    for (char c : h.alphabet)
      if (alpha.find(c) == std::string::npos) alpha += c;
    std::sort(alpha.begin(), alpha.end());
    h.alphabet = alpha;
    check_cell_limit(h.size(), "compiled HDA");
    memo.emplace(e.get(), h);
    return h;
  };
  return rec(rec, root);
}

Automaton interleaving_automaton(const Hda& x) {
  for (int c : x.start)
    if (x.is_accept(c))
      throw Error(ErrorKind::IdentityOverlap, cell_label(x, c) + " is both a start and an accept cell");
  Automaton a;
  a.states = x.size();
  a.start = x.start;
  a.accept = x.accept;
  for (int c = 0; c < x.size(); ++c) {
    const Ilo& u = x.cells[c].iev;
    const Mask all = u.all();
    for (Mask m = all & ~u.src; m; m = (m - 1) & all & ~u.src) {
      int lo = try_face(x, c, m, 0);
      if (lo >= 0) a.transitions.push_back({lo, c, Ilo{u.labels, all & ~m, all}});
    }
    for (Mask m = all & ~u.tgt; m; m = (m - 1) & all & ~u.tgt) {
      int hi = try_face(x, c, 0, m);
      if (hi >= 0) a.transitions.push_back({c, hi, Ilo{u.labels, all, all & ~m}});
    }
  }
  return a;
}

ExprPtr letter_expr(const Ilo& letter) {
  ExprPtr e;
  for (int i = 0; i < letter.size(); ++i) {
    ExprPtr atom = make_atom(letter.labels[i], letter.src >> i & 1, letter.tgt >> i & 1);
    e = e ? make_par(e, atom) : atom;
  }
  return e ? e : make_eps();
}

ExprPtr extract(const Hda& x) {
  ExprPtr ids;
  std::set<std::string> seen;
  for (int c : x.start)
    if (x.is_accept(c) && seen.insert(x.cells[c].iev.labels).second) {
      const std::string& l = x.cells[c].iev.labels;
      ExprPtr e = letter_expr(Ilo{l, x.cells[c].iev.all(), x.cells[c].iev.all()});
      ids = ids ? make_union(ids, e) : e;
    }

  // Positive-length accepting runs, between a fresh source and a fresh sink.
  Hda y = x;
  y.start.clear();
  y.accept.clear();
  Automaton a = interleaving_automaton(y);
  const int n = a.states, q0 = n, qf = n + 1;
  std::vector<std::map<int, ExprPtr>> out(n + 2), in(n + 2);
  auto add = [&](int i, int k, const ExprPtr& e) {
    auto& slot = out[i][k];
    slot = slot ? make_union(slot, e) : e;
    in[k][i] = slot;
  };
  std::map<Ilo, ExprPtr> letters;
  for (const Transition& t : a.transitions) {
    auto it = letters.find(t.letter);
    if (it == letters.end()) it = letters.emplace(t.letter, letter_expr(t.letter)).first;
    const ExprPtr& e = it->second;
    add(t.from, t.to, e);
    if (x.is_start(t.from)) add(q0, t.to, e);
    if (x.is_accept(t.to)) add(t.from, qf, e);
    if (x.is_start(t.from) && x.is_accept(t.to)) add(q0, qf, e);
  }
  std::vector<bool> alive(n, true);
  for (int round = 0; round < n; ++round) {
    int j = -1;
    size_t best = 0;
    for (int s = 0; s < n; ++s) {
      if (!alive[s]) continue;
      size_t deg = out[s].size() + in[s].size() - 2 * out[s].count(s);
      if (j < 0 || deg < best) {
        j = s;
        best = deg;
      }
    }
    alive[j] = false;
    ExprPtr loop = out[j].count(j) ? make_plus(out[j][j]) : nullptr;
    std::vector<std::pair<int, ExprPtr>> preds, succs;
    for (auto& [i, e] : in[j])
      if (i != j) preds.emplace_back(i, e);
    for (auto& [k, e] : out[j])
      if (k != j) succs.emplace_back(k, e);
    for (auto& [i, e] : preds) out[i].erase(j);
    for (auto& [k, e] : succs) in[k].erase(j);
    out[j].clear();
    in[j].clear();
    for (auto& [i, eij] : preds) {
      ExprPtr via = loop ? make_glue(eij, loop) : nullptr;
      for (auto& [k, ejk] : succs) {
        ExprPtr e = make_glue(eij, ejk);
        if (via) e = make_union(e, make_glue(via, ejk));
        add(i, k, e);
      }
    }
  }
  ExprPtr runs = out[q0].count(qf) ? out[q0][qf] : nullptr;
  if (ids && runs) return make_union(ids, runs);
  if (ids) return ids;
  if (runs) return runs;
  return make_empty();
}

}  // namespace hda
