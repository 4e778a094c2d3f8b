#include "lowreg/tree.hpp"

#include <algorithm>
#include <string>

#include "lowreg/rng.hpp"

namespace lowreg {

RootedTree::RootedTree(int root_index, std::vector<int> parent_array)
    : root(root_index), parent(std::move(parent_array)) {
    int n = size();
    if (n == 0) throw MalformedTree("empty tree");
    if (root < 0 || root >= n) throw MalformedTree("root index out of range");
    if (parent[static_cast<size_t>(root)] != kNoParent)
        throw MalformedTree("root must have no parent");
    children.assign(static_cast<size_t>(n), {});
    for (int v = 0; v < n; ++v) {
        int p = parent[static_cast<size_t>(v)];
        if (v == root) continue;
        if (p < 0 || p >= n) throw MalformedTree("vertex " + std::to_string(v) + " has invalid parent");
        children[static_cast<size_t>(p)].push_back(v);
    }
    for (auto& c : children) std::sort(c.begin(), c.end());

    bfs_order.reserve(static_cast<size_t>(n));
    bfs_order.push_back(root);
    for (size_t head = 0; head < bfs_order.size(); ++head)
        for (int c : children[static_cast<size_t>(bfs_order[head])]) bfs_order.push_back(c);
    if (static_cast<int>(bfs_order.size()) != n)
        throw MalformedTree("parent array is not connected and acyclic");
}

LevelStructure level_sets(const RootedTree& t) {
    if (t.size() == 0) throw MalformedTree("empty tree");
    LevelStructure ls;
    ls.level_of.assign(static_cast<size_t>(t.size()), 0);
    ls.levels.push_back({t.root});
    ls.level_of[static_cast<size_t>(t.root)] = 1;
    while (true) {
        std::vector<int> next;
        for (int v : ls.levels.back())
            for (int c : t.children[static_cast<size_t>(v)]) next.push_back(c);
        if (next.empty()) break;
        std::sort(next.begin(), next.end());
        for (int v : next) ls.level_of[static_cast<size_t>(v)] = ls.depth() + 1;
        ls.levels.push_back(std::move(next));
    }
    for (int i = 0; i < ls.depth(); ++i) {
        auto& dst = (i % 2 == 0) ? ls.color_x : ls.color_y;  // levels[0] is L1, odd
        dst.insert(dst.end(), ls.levels[static_cast<size_t>(i)].begin(),
                   ls.levels[static_cast<size_t>(i)].end());
    }
    std::sort(ls.color_x.begin(), ls.color_x.end());
    std::sort(ls.color_y.begin(), ls.color_y.end());
    return ls;
}

namespace {

// Random composition of total into `parts` values in [1, cap].
std::vector<int> random_composition(int total, int parts, int cap, Rng& rng) {
    std::vector<int> sizes(static_cast<size_t>(parts), 1);
    int extra = total - parts;
    // room[i] = cap - 1 slots; spread extras one at a time over parts with room
    while (extra > 0) {
        std::vector<int> open;
        for (int i = 0; i < parts; ++i)
            if (sizes[static_cast<size_t>(i)] < cap) open.push_back(i);
        int pick = open[static_cast<size_t>(rng.below(open.size()))];
        ++sizes[static_cast<size_t>(pick)];
        --extra;
    }
    return sizes;
}

}  // namespace

RootedTree gen_random_tree_with_caps(int x_target, int y_target, int even_cap,
                                     int odd_cap, uint64_t seed) {
    if (even_cap < 1 || odd_cap < 1) throw InfeasibleTargets("caps must be >= 1");
    if (x_target < 1) throw InfeasibleTargets("x_target must cover the root");
    if (y_target < 0) throw InfeasibleTargets("negative y_target");

    // Levels alternate X, Y, X, Y, ...; the root level is X and has size 1.
    // E even levels need E interleaved odd levels below the root chain, so:
    //   y_target in [E, E * even_cap], x_target in [O, O * odd_cap] with
    //   O in {E, E + 1} counting the root level.
    int chosen_e = -1, chosen_o = -1;
    if (y_target == 0) {
        if (x_target == 1) {
            chosen_e = 0;
            chosen_o = 1;
        }
    } else {
        int e_min = (y_target + even_cap - 1) / even_cap;
        for (int e = e_min; e <= y_target && chosen_e < 0; ++e) {
            for (int o : {e, e + 1}) {
                // the root level is a fixed singleton, so x capacity is
                // 1 + (o - 1) * odd_cap
                if (x_target >= o &&
                    1 + static_cast<long long>(o - 1) * odd_cap >= x_target) {
                    chosen_e = e;
                    chosen_o = o;
                    break;
                }
            }
        }
    }
    if (chosen_e < 0)
        throw InfeasibleTargets("no level plan reaches x=" + std::to_string(x_target) +
                                ", y=" + std::to_string(y_target) + " under caps (" +
                                std::to_string(even_cap) + ", " + std::to_string(odd_cap) + ")");

    Rng rng(seed);
    // Root level is a fixed singleton; remaining X spreads over chosen_o - 1
    // deeper odd levels, Y over chosen_e even levels.
    std::vector<int> odd_sizes{1};
    if (chosen_o > 1) {
        auto rest = random_composition(x_target - 1, chosen_o - 1, odd_cap, rng);
        odd_sizes.insert(odd_sizes.end(), rest.begin(), rest.end());
    }
    std::vector<int> even_sizes =
        chosen_e > 0 ? random_composition(y_target, chosen_e, even_cap, rng) : std::vector<int>{};

    std::vector<int> level_sizes;
    for (size_t i = 0; i < odd_sizes.size() || i < even_sizes.size(); ++i) {
        if (i < odd_sizes.size()) level_sizes.push_back(odd_sizes[i]);
        if (i < even_sizes.size()) level_sizes.push_back(even_sizes[i]);
    }

    int n = x_target + y_target;
    std::vector<int> parent(static_cast<size_t>(n), kNoParent);
    int next_id = 1;  // vertex 0 is the root; ids assigned level by level
    std::vector<int> prev_level{0};
    for (size_t li = 1; li < level_sizes.size(); ++li) {
        std::vector<int> cur;
        for (int i = 0; i < level_sizes[li]; ++i) {
            int v = next_id++;
            int p = prev_level[static_cast<size_t>(rng.below(prev_level.size()))];
            parent[static_cast<size_t>(v)] = p;
            cur.push_back(v);
        }
        prev_level = std::move(cur);
    }
    return RootedTree(0, std::move(parent));
}

}  // namespace lowreg
