#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "lowreg/bitset.hpp"
#include "lowreg/errors.hpp"

namespace lowreg {

constexpr int kNoParent = -1;

// Rooted tree as a parent array; validated to be connected and acyclic.
struct RootedTree {
    int root = 0;
    std::vector<int> parent;  // parent[root] == kNoParent
    std::vector<int> bfs_order;
    std::vector<std::vector<int>> children;

    RootedTree() = default;
    RootedTree(int root_index, std::vector<int> parent_array);

    int size() const { return static_cast<int>(parent.size()); }
};

// Level sets from the root: levels[0] = L1 = {r}, levels[i] = vertices at
// distance i. Odd levels (L1, L3, ...) form color class X, even levels Y.
struct LevelStructure {
    std::vector<std::vector<int>> levels;
    std::vector<int> color_x;  // union of odd levels, contains the root
    std::vector<int> color_y;  // union of even levels
    std::vector<int> level_of;  // 1-based level index per vertex

    int depth() const { return static_cast<int>(levels.size()); }
};

LevelStructure level_sets(const RootedTree& t);

// Seed-deterministic random tree whose color classes hit (x_target, y_target)
// exactly and whose level sizes respect even_cap / odd_cap (even levels L2,
// L4, ... vs odd levels L3, L5, ...; L1 is always the single root).
RootedTree gen_random_tree_with_caps(int x_target, int y_target, int even_cap,
                                     int odd_cap, uint64_t seed);

}  // namespace lowreg
