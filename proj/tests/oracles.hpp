#pragma once

#include <random>
#include <set>
#include <string>

#include "hda/ipomset.hpp"
#include "hda/pcset.hpp"

namespace oracle {

using Rng = std::mt19937_64;

// Arbitrary ipomset: random DAG, random full event order, random interfaces.
hda::Ipomset random_ipomset(Rng& rng, int n, const std::string& alphabet);
// Interval ipomset from random integer endpoints.
hda::Ipomset random_interval(Rng& rng, int n, const std::string& alphabet);
// Interval ipomset whose source interface, read in event order, spells `src`.
hda::Ipomset random_interval_with_source(Rng& rng, int extra, const std::string& src,
                                          const std::string& alphabet);

// Permutation search for a subsumption bijection.
bool subsumes(const hda::Ipomset& p, const hda::Ipomset& q);
// Searches integer endpoints b < e with x < y iff e(x) < b(y).
bool has_interval_representation(const hda::Ipomset& p);
// Largest antichain by subset enumeration.
int width(const hda::Ipomset& p);
// Every order on the carrier extending p's that respects interfaces and is
// interval, found without pruning at intermediate stages.
std::set<hda::Ipomset> down_close(const hda::Ipomset& p);

// Small random HDA, dimension <= 2.
hda::Hda random_hda(Rng& rng, int max_cells, const std::string& alphabet);

// Isomorphism of cell tables that respects ilo-sets, faces, start and accept.
bool isomorphic(const hda::Hda& x, const hda::Hda& y);

}  // namespace oracle
