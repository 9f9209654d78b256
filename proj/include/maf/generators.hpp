#pragma once

#include <cstdint>
#include <random>

#include "maf/tree_pair.hpp"

namespace maf {

// All randomness comes from std::mt19937_64 seeded with the given value and
// std::uniform_int_distribution (libstdc++), so outputs are reproducible on
// that standard library.
using Rng = std::mt19937_64;

// Uniform rooted binary topology on labels "1".."n", grown by inserting each
// leaf on a uniformly chosen edge (the edge above the root included).
RootedBinaryTree random_tree(int n, Rng& rng);

// k random subtree-prune-regraft moves on a copy of the tree. A move never
// regrafts onto the edge it was pruned from.
RootedBinaryTree random_spr(const RootedBinaryTree& tree, int k, Rng& rng);

struct GenMode {
  enum Kind { kUniform, kRspr };
  Kind kind = kUniform;
  int k = 0;
};

// Deterministic for (n, seed, mode). Throws InputError for n < 2 or for
// k >= n in k_rspr mode.
TreePair random_pair(int n, uint64_t seed, GenMode mode = {});

}  // namespace maf
