#pragma once

#include <vector>

#include "hda/langset.hpp"
#include "hda/pcset.hpp"

namespace hda {

Hda empty_hda();
Hda epsilon_hda();
Hda atom_hda(char label, bool src, bool tgt);

// Subexpressions shared by pointer are compiled once.
Hda compile(const ExprPtr& e);

struct Transition {
  int from;
  int to;
  Ilo letter;  // the discrete ipomset <S|U|T> read by the step
};

struct Automaton {
  int states = 0;
  std::vector<Transition> transitions;
  std::vector<int> start;
  std::vector<int> accept;
};

// States are cells; one transition per up-step and per down-step.
Automaton interleaving_automaton(const Hda& x);

ExprPtr letter_expr(const Ilo& letter);
ExprPtr extract(const Hda& x);

}  // namespace hda
