#pragma once

#include <string>
#include <utility>
#include <vector>

namespace treepack {

// A labeled tree on m vertices, stored as sorted adjacency lists plus a
// degree array. Vertices are 0-based contiguous integers. Adjacency is
// kept sorted so every traversal order is reproducible.
struct Tree {
    int m = 0;
    std::vector<std::vector<int>> adj;
    std::vector<int> deg;

    Tree() = default;
    explicit Tree(int vertices) : m(vertices), adj(vertices), deg(vertices, 0) {}

    void add_edge(int u, int v);
    void sort_adjacency();

    // Connected, acyclic, and degree bookkeeping consistent.
    bool is_valid() const;

    // Edges as (min,max) pairs in lexicographic order.
    std::vector<std::pair<int, int>> edges() const;

    // Builds and validates; throws malformed_input on a non-tree.
    static Tree from_edges(int m, const std::vector<std::pair<int, int>>& edges);
};

// A forest on m vertices given by its edge list. Invariant:
// edges.size() == m - components.
struct Forest {
    int m = 0;
    std::vector<std::pair<int, int>> edges;
    int components = 0;

    static Forest from_edges(int m, std::vector<std::pair<int, int>> edges);
};

// Decodes a Pruefer sequence of length m-2 into the unique labeled tree
// with that sequence. Entries must lie in [0, m).
Tree prufer_decode(const std::vector<int>& seq, int m);

// Inverse of prufer_decode (repeatedly strip the smallest leaf).
std::vector<int> prufer_encode(const Tree& t);

// The one or two center vertices (midpoints of a longest path).
std::vector<int> tree_centers(const Tree& t);

// Canonical code: equal iff the trees are isomorphic. Computed by rooting
// at the center (bicentral trees take the lexicographically smaller of the
// two rootings) and recursively concatenating sorted child codes.
std::string ahu_canonical(const Tree& t);

}  // namespace treepack
