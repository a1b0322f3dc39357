#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hda/langset.hpp"
#include "hda/pcset.hpp"

namespace hda {

enum class Dir { Up, Down };

// Up: cells[k-1] = d0_A(cells[k]), A over positions of cells[k].
// Down: cells[k] = d1_B(cells[k-1]), B over positions of cells[k-1].
struct Step {
  Dir dir;
  Mask events;
  bool operator==(const Step&) const = default;
};

struct Path {
  std::vector<int> cells;
  std::vector<Step> steps;
  bool operator==(const Path&) const = default;
};

void check_path(const Hda& x, const Path& p);
bool is_accepting(const Hda& x, const Path& p);
Ipomset ev_path(const Hda& x, const Path& p);
Path sparse_normal_form(const Hda& x, const Path& p);
Path concat(const Path& a, const Path& b);
Path map_path(const PcMap& f, const Path& p);

Path parse_path(const Hda& x, const std::string& text);
std::string format_path(const Hda& x, const Path& p);

// Every (x, A) with d0_A(x) = y, A nonempty, grouped by y.
struct Coface {
  int cell;
  Mask events;
};
std::vector<std::vector<Coface>> lower_cofaces(const Hda& x);

Language enumerate_language(const Hda& x, Truncation t);

// Cuts are stored per event of p: 0 not started, 1 running, 2 terminated.
struct TrackObject {
  Ipomset p;
  Hda hda;
  std::vector<std::vector<std::uint8_t>> cuts;
  int bottom = -1;
  int top = -1;
};

TrackObject track_object(const Ipomset& p);

bool member_by_paths(const Hda& x, const Ipomset& p);
bool member_by_track(const Hda& x, const Ipomset& p);

bool bounded_weak_equivalence(const PcMap& f, const Hda& from, const Hda& to, Truncation t);

}  // namespace hda
