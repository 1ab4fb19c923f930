#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "treepack/coloring.hpp"
#include "treepack/tree.hpp"

namespace treepack {

// One packing instance: the host order n, the host variant (kn packs into
// a clique on n vertices, kn1 into n+1), and the ordered trees T_1..T_t
// with |T_i| = n-i+1.
struct TreeFamily {
    int n = 0;
    bool extra_vertex = false;  // kn1
    std::vector<Tree> trees;

    int t() const { return static_cast<int>(trees.size()); }
    int host_order() const { return n + (extra_vertex ? 1 : 0); }
    std::string variant() const { return extra_vertex ? "kn1" : "kn"; }

    // |T_i| == n-i+1 for all i; throws malformed_input otherwise.
    void validate() const;
};

// Instance file. Line 1: "n t variant". Then t lines, line i holding the
// Pruefer sequence of T_i ("-" when the sequence is empty).
TreeFamily read_instance(std::istream& in);
TreeFamily read_instance_file(const std::string& path);
void write_instance(std::ostream& out, const TreeFamily& fam);
void write_instance_file(const std::string& path, const TreeFamily& fam);

// Coloring file. Line 1: "N t". Then one line "u v c" per colored edge,
// lexicographically sorted. Duplicate edges are rejected at load.
EdgeColoring read_coloring(std::istream& in, int* t_out = nullptr);
EdgeColoring read_coloring_file(const std::string& path, int* t_out = nullptr);
void write_coloring(std::ostream& out, const EdgeColoring& col, int t);
void write_coloring_file(const std::string& path, const EdgeColoring& col, int t);
std::string coloring_to_string(const EdgeColoring& col, int t);

}  // namespace treepack
