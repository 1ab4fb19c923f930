#include "treepack/tree.hpp"

#include <algorithm>
#include <numeric>
#include <queue>

#include "treepack/errors.hpp"

namespace treepack {

void Tree::add_edge(int u, int v) {
    adj[u].push_back(v);
    adj[v].push_back(u);
    ++deg[u];
    ++deg[v];
}

void Tree::sort_adjacency() {
    for (auto& a : adj) std::sort(a.begin(), a.end());
}

bool Tree::is_valid() const {
    if (m <= 0 || static_cast<int>(adj.size()) != m || static_cast<int>(deg.size()) != m)
        return false;
    long edge_ends = 0;
    for (int v = 0; v < m; ++v) {
        if (deg[v] != static_cast<int>(adj[v].size())) return false;
        edge_ends += deg[v];
    }
    if (edge_ends != 2L * (m - 1)) return false;
    // connectivity; acyclicity follows from the edge count
    std::vector<char> seen(m, 0);
    std::queue<int> q;
    q.push(0);
    seen[0] = 1;
    int reached = 1;
    while (!q.empty()) {
        int v = q.front();
        q.pop();
        for (int w : adj[v])
            if (!seen[w]) {
                seen[w] = 1;
                ++reached;
                q.push(w);
            }
    }
    return reached == m;
}

std::vector<std::pair<int, int>> Tree::edges() const {
    std::vector<std::pair<int, int>> out;
    out.reserve(m > 0 ? m - 1 : 0);
    for (int v = 0; v < m; ++v)
        for (int w : adj[v])
            if (v < w) out.emplace_back(v, w);
    std::sort(out.begin(), out.end());
    return out;
}

Tree Tree::from_edges(int m, const std::vector<std::pair<int, int>>& edges) {
    if (m <= 0) throw malformed_input("tree must have at least one vertex");
    Tree t(m);
    for (auto [u, v] : edges) {
        if (u < 0 || u >= m || v < 0 || v >= m || u == v)
            throw malformed_input("edge endpoint out of range");
        t.add_edge(u, v);
    }
    t.sort_adjacency();
    if (!t.is_valid()) throw malformed_input("edge list does not form a tree");
    return t;
}

namespace {

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    bool unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        parent[b] = a;
        return true;
    }
};

}  // namespace

Forest Forest::from_edges(int m, std::vector<std::pair<int, int>> edges) {
    if (m < 0) throw malformed_input("forest order must be non-negative");
    UnionFind uf(m);
    for (auto [u, v] : edges) {
        if (u < 0 || u >= m || v < 0 || v >= m || u == v)
            throw malformed_input("forest edge endpoint out of range");
        if (!uf.unite(u, v)) throw malformed_input("forest edge list contains a cycle");
    }
    std::sort(edges.begin(), edges.end());
    Forest f;
    f.m = m;
    f.components = m - static_cast<int>(edges.size());
    f.edges = std::move(edges);
    return f;
}

Tree prufer_decode(const std::vector<int>& seq, int m) {
    if (m < 2) throw malformed_input("prufer_decode requires m >= 2");
    if (static_cast<int>(seq.size()) != m - 2)
        throw malformed_input("prufer sequence must have length m-2");
    for (int s : seq)
        if (s < 0 || s >= m) throw malformed_input("prufer sequence entry out of range");

    std::vector<int> count(m, 1);
    for (int s : seq) ++count[s];

    std::priority_queue<int, std::vector<int>, std::greater<int>> leaves;
    for (int v = 0; v < m; ++v)
        if (count[v] == 1) leaves.push(v);

    Tree t(m);
    for (int s : seq) {
        int leaf = leaves.top();
        leaves.pop();
        t.add_edge(leaf, s);
        if (--count[s] == 1) leaves.push(s);
    }
    int a = leaves.top();
    leaves.pop();
    int b = leaves.top();
    t.add_edge(a, b);
    t.sort_adjacency();
    return t;
}

std::vector<int> prufer_encode(const Tree& t) {
    if (t.m < 2) throw malformed_input("prufer_encode requires m >= 2");
    std::vector<int> count = t.deg;
    std::vector<char> removed(t.m, 0);
    std::priority_queue<int, std::vector<int>, std::greater<int>> leaves;
    for (int v = 0; v < t.m; ++v)
        if (count[v] == 1) leaves.push(v);

    std::vector<int> seq;
    seq.reserve(t.m - 2);
    for (int step = 0; step < t.m - 2; ++step) {
        int leaf = leaves.top();
        leaves.pop();
        removed[leaf] = 1;
        int parent = -1;
        for (int w : t.adj[leaf])
            if (!removed[w]) {
                parent = w;
                break;
            }
        seq.push_back(parent);
        if (--count[parent] == 1) leaves.push(parent);
    }
    return seq;
}

std::vector<int> tree_centers(const Tree& t) {
    if (t.m == 1) return {0};
    std::vector<int> degree = t.deg;
    std::vector<char> gone(t.m, 0);
    std::vector<int> layer;
    for (int v = 0; v < t.m; ++v)
        if (degree[v] <= 1) layer.push_back(v);
    int remaining = t.m;
    while (remaining > 2) {
        std::vector<int> next;
        for (int v : layer) {
            gone[v] = 1;
            --remaining;
            for (int w : t.adj[v])
                if (!gone[w] && --degree[w] == 1) next.push_back(w);
        }
        layer = std::move(next);
    }
    std::sort(layer.begin(), layer.end());
    return layer;
}

namespace {

// Rooted canonical code, computed bottom-up (no recursion; trees can be
// deep paths).
std::string rooted_code(const Tree& t, int root) {
    std::vector<int> order;
    order.reserve(t.m);
    std::vector<int> parent(t.m, -1);
    order.push_back(root);
    parent[root] = root;
    for (std::size_t i = 0; i < order.size(); ++i) {
        int v = order[i];
        for (int w : t.adj[v])
            if (parent[w] == -1) {
                parent[w] = v;
                order.push_back(w);
            }
    }
    std::vector<std::string> code(t.m);
    for (std::size_t i = order.size(); i-- > 0;) {
        int v = order[i];
        std::vector<std::string> child_codes;
        for (int w : t.adj[v])
            if (w != v && parent[w] == v) child_codes.push_back(std::move(code[w]));
        std::sort(child_codes.begin(), child_codes.end());
        std::string& c = code[v];
        std::size_t len = 2;
        for (const auto& cc : child_codes) len += cc.size();
        c.reserve(len);
        c.push_back('(');
        for (const auto& cc : child_codes) c += cc;
        c.push_back(')');
    }
    return std::move(code[root]);
}

}  // namespace

std::string ahu_canonical(const Tree& t) {
    if (t.m == 1) return "()";
    std::vector<int> centers = tree_centers(t);
    std::string best = rooted_code(t, centers[0]);
    if (centers.size() == 2) {
        std::string other = rooted_code(t, centers[1]);
        if (other < best) best = std::move(other);
    }
    return best;
}

}  // namespace treepack
