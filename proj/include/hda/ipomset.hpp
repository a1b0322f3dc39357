#pragma once

#include <compare>
#include <cstdint>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "hda/error.hpp"

namespace hda {

using Mask = std::uint32_t;
constexpr int kMaxEvents = 32;

inline Mask bit(int i) { return Mask(1) << i; }
inline Mask low_bits(int n) { return n >= 32 ? ~Mask(0) : bit(n) - 1; }
inline int popcount(Mask m) { return __builtin_popcount(m); }

// Drop the positions in `removed` from `m`, shifting higher bits down.
Mask squeeze(Mask m, Mask removed);
// Inverse of squeeze: spread the bits of `m` over the positions outside `removed`.
Mask spread(Mask m, Mask removed);

// Ordered labelled set with interfaces. Position order is the event order.
struct Ilo {
  std::string labels;
  Mask src = 0;
  Mask tgt = 0;

  int size() const { return static_cast<int>(labels.size()); }
  Mask all() const { return low_bits(size()); }
  auto operator<=>(const Ilo&) const = default;
};

// Sub-ilo-set on the positions of `keep` with interfaces inherited.
Ilo restrict(const Ilo& u, Mask keep);
std::string to_string(const Ilo& u);

// An ipomset in canonical form. prec is transitively closed; evord holds the
// event order only on <-incomparable pairs (the essential part).
struct Ipomset {
  std::string labels;
  std::vector<Mask> prec;   // prec[i] has bit j iff i < j
  std::vector<Mask> evord;  // evord[i] has bit j iff i comes before j, i and j incomparable
  Mask src = 0;
  Mask tgt = 0;

  int events() const { return static_cast<int>(labels.size()); }
  bool less(int i, int j) const { return prec[i] >> j & 1; }
  bool comparable(int i, int j) const { return less(i, j) || less(j, i); }
  auto operator<=>(const Ipomset&) const = default;
};

// Labelled iposet with an arbitrary (not necessarily essential) event order.
struct RawIposet {
  std::string labels;
  std::vector<std::pair<int, int>> prec;
  std::vector<std::pair<int, int>> evord;
  Mask src = 0;
  Mask tgt = 0;
};

Ipomset canonicalize(const RawIposet& raw);

// Builds from closed-or-not precedence masks and an event order that must cover
// every incomparable pair (entries on comparable pairs are ignored).
Ipomset from_relations(std::string labels, std::vector<Mask> prec, std::vector<Mask> evord,
                       Mask src, Mask tgt);

Ipomset discrete(const Ilo& u);
Ipomset identity(const Ilo& u);
Ipomset epsilon();
Ipomset singleton(char label, bool in_src, bool in_tgt);

Ilo source_ilo(const Ipomset& p);
Ilo target_ilo(const Ipomset& p);

Ipomset glue(const Ipomset& p, const Ipomset& q);
bool glue_defined(const Ipomset& p, const Ipomset& q);
Ipomset parallel(const Ipomset& p, const Ipomset& q);
Ipomset reverse(const Ipomset& p);

// True iff p is subsumed by q.
bool subsumes(const Ipomset& p, const Ipomset& q);

int width(const Ipomset& p);
// Twice the size |P| - (|S|+|T|)/2, to keep it integral.
int twice_size(const Ipomset& p);
bool is_interval(const Ipomset& p);
bool is_identity(const Ipomset& p);

std::set<Ipomset> down_close(const std::set<Ipomset>& s);
std::set<Ipomset> down_close(const Ipomset& p);

std::string to_literal(const Ipomset& p);
Ipomset parse_ipomset(const std::string& text);

// Throws AxiomViolation if the fields do not describe a canonical ipomset.
void check_canonical(const Ipomset& p);

}  // namespace hda
