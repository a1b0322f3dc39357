#pragma once

#include <string>
#include <vector>

#include "hda/ipomset.hpp"

namespace hda {

struct Cell {
  Ilo iev;
  std::vector<int> d0;  // lower elementary face per event position, -1 if absent
  std::vector<int> d1;  // upper elementary face per event position, -1 if absent
  std::string name;

  int dim() const { return iev.size(); }
};

enum class Kind { Plain, Interfaces };

// A finite precubical set (or ipc-set) together with start and accept cells.
struct Hda {
  Kind kind = Kind::Plain;
  std::string alphabet;
  std::vector<Cell> cells;
  std::vector<int> start;
  std::vector<int> accept;

  int size() const { return static_cast<int>(cells.size()); }
  int add_cell(Ilo iev, std::string name = {});
  bool is_start(int c) const;
  bool is_accept(int c) const;
  int dim() const;
  // Sorts and deduplicates the start and accept lists.
  void normalize_marks();
};

// Cell-to-cell function between two cell tables.
using PcMap = std::vector<int>;

std::vector<std::string> validate(const Hda& x);
void require_valid(const Hda& x, const std::string& what);

// Composite face: unstart positions A, terminate positions B. -1 if illegal.
int try_face(const Hda& x, int c, Mask a, Mask b);
int face(const Hda& x, int c, Mask a, Mask b);

struct Cube {
  Hda pc;
  int n = 0;
  std::vector<int> index;  // [A|B] stored at A | B << n, -1 if not a cell
  std::vector<Mask> a_of, b_of;

  int at(Mask a, Mask b) const { return index[a | b << n]; }
  int top() const { return at(0, 0); }
};

Cube standard_cube(const Ilo& u);
PcMap yoneda(const Hda& x, int c, const Cube& cube);
PcMap yoneda(const Hda& x, int c);

// Checks that f commutes with faces and preserves ilo-sets; with marks = true
// also that start and accept cells are preserved.
std::vector<std::string> check_map(const PcMap& f, const Hda& from, const Hda& to, bool marks);
PcMap identity_map(const Hda& x);
PcMap compose(const PcMap& g, const PcMap& f);  // g after f

Hda reverse(const Hda& x);
Hda coproduct(const Hda& x, const Hda& y);
Hda coproduct(const std::vector<Hda>& parts);
Hda tensor(const Hda& x, const Hda& y);
Hda resolve(const Hda& x);
Hda close(const Hda& x);

// Index of the cell [x;A,B] in close(x) for masks A, B over x's positions.
struct ClosureIndex {
  std::vector<std::vector<int>> at;  // at[x][A | B << dim]
};
Hda close(const Hda& x, ClosureIndex* index);

// Sub-table on the cells flagged in keep (must be face-closed). Returns the
// inclusion map from the new table into x through `incl` when non-null.
Hda restrict_cells(const Hda& x, const std::vector<bool>& keep, PcMap* incl = nullptr);
// Keeps the faces of cells lying between some start and some accept cell.
Hda trim(const Hda& x);

// Cells reachable from `from` along x -> d1 and d0 -> x links.
std::vector<bool> reachable_from(const Hda& x, const std::vector<int>& from);
std::vector<bool> coreachable_to(const Hda& x, const std::vector<int>& to);

// Union-find quotient with congruence closure over face links.
struct Quotient {
  Hda result;
  PcMap proj;
};
Quotient quotient(const Hda& x, const std::vector<std::pair<int, int>>& identify);

std::string cell_label(const Hda& x, int c);
std::string infer_alphabet(const Hda& x);

std::string to_json(const Hda& x);
Hda from_json(const std::string& text);
Hda load_hda(const std::string& path);
void save_hda(const Hda& x, const std::string& path);

}  // namespace hda
