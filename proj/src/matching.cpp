#include "treepack/matching.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace treepack {

namespace {

struct Matcher {
    int a_size, b_size;
    std::vector<std::vector<int>> adj;   // per a, ascending b
    std::vector<int> match_a, match_b;   // -1 = free
    std::vector<char> visited_b;

    explicit Matcher(const BipartiteAvail& g) : a_size(g.a_size), b_size(g.b_size) {
        adj.resize(a_size);
        for (int a = 0; a < a_size; ++a)
            for (int b = 0; b < b_size; ++b)
                if (g.available(a, b)) adj[a].push_back(b);
        match_a.assign(a_size, -1);
        match_b.assign(b_size, -1);
    }

    bool augment(int a) {
        for (int b : adj[a]) {
            if (visited_b[b]) continue;
            visited_b[b] = 1;
            if (match_b[b] == -1 || augment(match_b[b])) {
                match_a[a] = b;
                match_b[b] = a;
                return true;
            }
        }
        return false;
    }

    void run() {
        // greedy seed keeps the augmenting phase short on dense views
        for (int a = 0; a < a_size; ++a)
            for (int b : adj[a]) {
                if (match_b[b] == -1) {
                    match_a[a] = b;
                    match_b[b] = a;
                    break;
                }
            }
        for (int a = 0; a < a_size; ++a) {
            if (match_a[a] != -1) continue;
            visited_b.assign(b_size, 0);
            augment(a);
        }
    }

    // Hall-style deficiency witness grown from the unmatched A-vertices by
    // alternating free/matched edges.
    std::vector<int> deficiency_witness() const {
        std::vector<char> in_s(a_size, 0), in_nb(b_size, 0);
        std::vector<int> stack;
        for (int a = 0; a < a_size; ++a)
            if (match_a[a] == -1) {
                in_s[a] = 1;
                stack.push_back(a);
            }
        while (!stack.empty()) {
            int a = stack.back();
            stack.pop_back();
            for (int b : adj[a]) {
                if (in_nb[b]) continue;
                in_nb[b] = 1;
                int a2 = match_b[b];
                if (a2 != -1 && !in_s[a2]) {
                    in_s[a2] = 1;
                    stack.push_back(a2);
                }
            }
        }
        std::vector<int> witness;
        for (int a = 0; a < a_size; ++a)
            if (in_s[a]) witness.push_back(a);
        return witness;
    }

    Matching matching() const {
        Matching m;
        for (int a = 0; a < a_size; ++a)
            if (match_a[a] != -1) m.emplace_back(a, match_a[a]);
        return m;
    }
};

}  // namespace

Matching max_matching(const BipartiteAvail& g) {
    Matcher m(g);
    m.run();
    return m.matching();
}

DefectiveMatching matching_after_forests(const BipartiteAvail& g, int k) {
    if (k < 0) throw malformed_input("k must be non-negative");
    Matcher m(g);
    m.run();
    int need = g.a_size - k;
    int size = 0;
    for (int a = 0; a < g.a_size; ++a)
        if (m.match_a[a] != -1) ++size;
    if (size < need)
        throw infeasible("defective matching too small: " + std::to_string(size) + " < " +
                             std::to_string(need) + " (caller broke the forest-removal contract)",
                         m.deficiency_witness());
    DefectiveMatching out;
    out.matching = m.matching();
    for (int a = 0; a < g.a_size; ++a)
        if (m.match_a[a] == -1) out.uncovered_a.push_back(a);
    return out;
}

Matching perfect_matching_after_matchings(const BipartiteAvail& g, int k) {
    if (g.a_size != g.b_size)
        throw malformed_input("perfect matching requires equal class sizes");
    if (k < 0 || 2 * k > g.a_size)
        throw malformed_input("perfect matching requires a >= 2k");
    Matcher m(g);
    m.run();
    for (int a = 0; a < g.a_size; ++a)
        if (m.match_a[a] == -1)
            throw infeasible("no perfect matching (caller broke the matching-removal contract)",
                             m.deficiency_witness());
    return m.matching();
}

std::vector<std::vector<int>> pack_star_forest(const BipartiteAvail& g, const StarDemand& d,
                                               int k) {
    if (d.centers.size() != d.leaf_counts.size())
        throw malformed_input("star demand: centers and leaf counts differ in length");
    long total = std::accumulate(d.leaf_counts.begin(), d.leaf_counts.end(), 0L);
    if (total > g.b_size - k)
        throw infeasible("star demands " + std::to_string(total) + " exceed |B| - k = " +
                         std::to_string(g.b_size - k));
    std::vector<char> claimed(g.b_size, 0);
    std::vector<std::vector<int>> leaves(d.centers.size());
    for (std::size_t i = 0; i < d.centers.size(); ++i) {
        int a = d.centers[i];
        int want = d.leaf_counts[i];
        if (want < 0) throw malformed_input("negative leaf demand");
        auto& mine = leaves[i];
        for (int b = 0; b < g.b_size && static_cast<int>(mine.size()) < want; ++b) {
            if (!claimed[b] && g.available(a, b)) {
                claimed[b] = 1;
                mine.push_back(b);
            }
        }
        if (static_cast<int>(mine.size()) < want)
            throw infeasible("star center " + std::to_string(a) + " stranded at " +
                                 std::to_string(mine.size()) + "/" + std::to_string(want) +
                                 " leaves (caller broke the degree contract)",
                             {a});
    }
    return leaves;
}

}  // namespace treepack
