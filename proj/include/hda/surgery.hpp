#pragma once

#include <vector>

#include "hda/langset.hpp"
#include "hda/pcset.hpp"

namespace hda {

// Aborts constructions whose output would exceed this many cells.
void set_cell_limit(int cells);
int cell_limit();
void check_cell_limit(int cells, const char* what);

struct InclusionInfo {
  bool injective = false;
  bool initial = false;
  bool final = false;
};

InclusionInfo classify_inclusion(const PcMap& f, const Hda& from, const Hda& to);
bool is_initial_subset(const Hda& x, const std::vector<bool>& in);
bool is_final_subset(const Hda& x, const std::vector<bool>& in);
bool is_minimal_cell(const Hda& x, int c);
bool is_maximal_cell(const Hda& x, int c);
bool is_acyclic(const Hda& x);

// Coproduct of the standard cubes of `cells` with the map into x.
struct CubeFamily {
  Hda pc;
  PcMap map;
  std::vector<int> tops;  // top cell of the k-th cube
};

CubeFamily cube_family(const Hda& x, const std::vector<int>& cells);
CubeFamily start_map(const Hda& x);
CubeFamily accept_map(const Hda& x);

bool is_start_proper(const Hda& x);
bool is_accept_proper(const Hda& x);
bool is_proper(const Hda& x);

struct Cylinder {
  Hda cyl;
  PcMap j, p, f_tilde, g_tilde;
  // Per cylinder cell, phi and psi on the cube of its base cell (-1 outside K, L).
  std::vector<std::vector<int>> phi, psi;
};

// Cyl(f, g) for f : y -> x and g : z -> x with disjoint images.
Cylinder cylinder(const Hda& x, const Hda& y, const PcMap& f, const Hda& z, const PcMap& g);

Hda start_properize(const Hda& x);
Hda accept_properize(const Hda& x);

std::vector<Hda> decompose_simple(const Hda& x);
Hda subtract_identities(const Hda& x);

// Identifies the accept cell of x with the start cell of y along their cube.
Hda glue_hdas(const Hda& x, const Hda& y);

// Colimit of parts[0] <- gluers[0] -> parts[1] <- ... with g[k] into parts[k]
// (final) and f[k] into parts[k+1] (initial).
Hda seq_glue(const std::vector<Hda>& parts, const std::vector<Hda>& gluers,
             const std::vector<PcMap>& f, const std::vector<PcMap>& g);

// Coequalizer of f, g : y -> x.
Hda self_glue(const Hda& x, const Hda& y, const PcMap& f, const PcMap& g);

// Recognizer of Lang(x) * Lang(y) for HDAs or iHDAs; the result is an HDA.
Hda glue_compose(const Hda& x, const Hda& y);

struct Spider {
  Hda source;  // the iHDA the spider was built from
  std::vector<std::pair<int, int>> pairs;  // G as (accept cell, start cell)
  Cylinder cyl;
  std::vector<int> start_copy;   // spO(y, x) per cube of J_bot: G first, then one per start
  std::vector<int> accept_copy;  // spI(y, x) per cube of J_top: G first, then one per accept
};

Spider build_spider(const Hda& x);
Hda spider_plus(const Hda& x);
Hda kleene_plus(const Hda& x);

// Recognizer of the identities accepted by x.
Hda identity_part(const Hda& x);

bool has_flp(const PcMap& p, const Hda& from, const Hda& to);
bool has_plp(const PcMap& p, const Hda& from, const Hda& to);
bool has_tlp(const PcMap& p, const Hda& from, const Hda& to, const std::vector<int>& s,
             const std::vector<int>& t);

}  // namespace hda
