#pragma once

#include <string>
#include <vector>

#include "hda/langset.hpp"
#include "hda/pcset.hpp"

namespace corpus {

// Deterministic sample: depth <= 3, labels a and b, at most one plus.
std::vector<hda::ExprPtr> expressions(int count = 220);

struct NamedHda {
  std::string name;
  hda::Hda hda;
};

hda::Hda fixture(const std::string& name);
// Hand-built fixtures followed by random HDAs, `count` in total, <= 10 cells, dim <= 2.
std::vector<NamedHda> hdas(int count = 110);
// iHDA fixtures plus resolutions of the plain corpus.
std::vector<NamedHda> ihdas(int count = 40);

}  // namespace corpus
