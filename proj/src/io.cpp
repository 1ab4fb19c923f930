#include "treepack/io.hpp"

#include <fstream>
#include <sstream>

#include "treepack/errors.hpp"

namespace treepack {

void TreeFamily::validate() const {
    if (n < 2) throw malformed_input("instance requires n >= 2");
    if (t() > n - 1) throw malformed_input("instance has too many trees");
    for (int i = 1; i <= t(); ++i) {
        const Tree& tr = trees[i - 1];
        if (tr.m != n - i + 1)
            throw malformed_input("tree " + std::to_string(i) + " has " + std::to_string(tr.m) +
                                  " vertices, expected " + std::to_string(n - i + 1));
        if (!tr.is_valid()) throw malformed_input("tree " + std::to_string(i) + " is not a tree");
    }
}

TreeFamily read_instance(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw malformed_input("empty instance file");
    std::istringstream head(line);
    int n = 0, t = 0;
    std::string variant;
    if (!(head >> n >> t >> variant)) throw malformed_input("bad instance header");
    if (variant != "kn" && variant != "kn1")
        throw malformed_input("unknown variant '" + variant + "'");
    if (n < 2 || t < 0 || t > n - 1) throw malformed_input("bad instance dimensions");

    TreeFamily fam;
    fam.n = n;
    fam.extra_vertex = (variant == "kn1");
    fam.trees.reserve(t);
    for (int i = 1; i <= t; ++i) {
        if (!std::getline(in, line))
            throw malformed_input("instance file ends before tree " + std::to_string(i));
        int m = n - i + 1;
        std::vector<int> seq;
        std::istringstream row(line);
        std::string tok;
        while (row >> tok) {
            if (tok == "-") break;
            std::size_t pos = 0;
            int v = std::stoi(tok, &pos);
            if (pos != tok.size()) throw malformed_input("bad token '" + tok + "'");
            seq.push_back(v);
        }
        if (static_cast<int>(seq.size()) != m - 2)
            throw malformed_input("tree " + std::to_string(i) + ": expected " +
                                  std::to_string(m - 2) + " sequence entries, got " +
                                  std::to_string(seq.size()));
        fam.trees.push_back(prufer_decode(seq, m));
    }
    fam.validate();
    return fam;
}

TreeFamily read_instance_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw malformed_input("cannot open instance file '" + path + "'");
    return read_instance(in);
}

void write_instance(std::ostream& out, const TreeFamily& fam) {
    out << fam.n << ' ' << fam.t() << ' ' << fam.variant() << '\n';
    for (const Tree& tr : fam.trees) {
        std::vector<int> seq = prufer_encode(tr);
        if (seq.empty()) {
            out << "-\n";
            continue;
        }
        for (std::size_t j = 0; j < seq.size(); ++j) {
            if (j) out << ' ';
            out << seq[j];
        }
        out << '\n';
    }
}

void write_instance_file(const std::string& path, const TreeFamily& fam) {
    std::ofstream out(path);
    if (!out) throw malformed_input("cannot write instance file '" + path + "'");
    write_instance(out, fam);
}

EdgeColoring read_coloring(std::istream& in, int* t_out) {
    std::string line;
    if (!std::getline(in, line)) throw malformed_input("empty coloring file");
    std::istringstream head(line);
    int n = 0, t = 0;
    if (!(head >> n >> t) || n < 1 || t < 0) throw malformed_input("bad coloring header");
    if (t_out) *t_out = t;
    EdgeColoring col(n);
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream row(line);
        int u = 0, v = 0, c = 0;
        if (!(row >> u >> v >> c)) throw malformed_input("bad coloring line '" + line + "'");
        if (u < 0 || v < 0 || u >= n || v >= n || u == v || c < 1 || c > t)
            throw malformed_input("coloring entry out of range: '" + line + "'");
        col.color_edge(u, v, c);  // duplicate lines trip the write-once rule
    }
    return col;
}

EdgeColoring read_coloring_file(const std::string& path, int* t_out) {
    std::ifstream in(path);
    if (!in) throw malformed_input("cannot open coloring file '" + path + "'");
    return read_coloring(in, t_out);
}

void write_coloring(std::ostream& out, const EdgeColoring& col, int t) {
    out << col.order() << ' ' << t << '\n';
    int n = col.order();
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) {
            int c = col.color(u, v);
            if (c != 0) out << u << ' ' << v << ' ' << c << '\n';
        }
}

void write_coloring_file(const std::string& path, const EdgeColoring& col, int t) {
    std::ofstream out(path);
    if (!out) throw malformed_input("cannot write coloring file '" + path + "'");
    write_coloring(out, col, t);
}

std::string coloring_to_string(const EdgeColoring& col, int t) {
    std::ostringstream out;
    write_coloring(out, col, t);
    return out.str();
}

}  // namespace treepack
