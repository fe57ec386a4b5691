#include "graphlim/graph.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

namespace graphlim {

namespace {

void add_edge(Graph& g, std::uint32_t a, std::uint32_t b) {
    g.neighbors[a].push_back(b);
    g.neighbors[b].push_back(a);
}

void finalize(Graph& g) {
    for (auto& nb : g.neighbors) {
        std::sort(nb.begin(), nb.end());
        nb.erase(std::unique(nb.begin(), nb.end()), nb.end());
    }
}

}  // namespace

Graph cycle_graph(int m) {
    if (m < 3) throw std::invalid_argument("cycle_graph: m must be at least 3");
    Graph g;
    g.n = std::size_t(m);
    g.neighbors.resize(g.n);
    for (int i = 0; i < m; ++i) add_edge(g, std::uint32_t(i), std::uint32_t((i + 1) % m));
    finalize(g);
    g.tag = {GraphFamily::cycle, 0, m};
    return g;
}

Graph cube_graph(int N) {
    if (N < 1) throw std::invalid_argument("cube_graph: N must be at least 1");
    if (N > 20) throw std::invalid_argument("cube_graph: N too large for dense work");
    Graph g;
    g.n = std::size_t(1) << N;
    g.neighbors.resize(g.n);
    for (std::uint32_t v = 0; v < g.n; ++v)
        for (int b = 0; b < N; ++b) {
            const std::uint32_t w = v ^ (1u << b);
            if (w > v) add_edge(g, v, w);
        }
    finalize(g);
    g.tag = {GraphFamily::cube, N, 0};
    return g;
}

Graph cartesian_product(const Graph& ga, const Graph& gb) {
    if (!is_connected(ga) || !is_connected(gb))
        throw std::invalid_argument("cartesian_product: factors must be connected");
    Graph g;
    g.n = ga.n * gb.n;
    g.neighbors.resize(g.n);
    // (u in G, v in H) -> v*|G| + u, so each copy of G is contiguous.
    for (std::uint32_t v = 0; v < gb.n; ++v) {
        for (std::uint32_t u = 0; u < ga.n; ++u) {
            const std::uint32_t base = v * std::uint32_t(ga.n);
            for (std::uint32_t u2 : ga.neighbors[u])
                if (u2 > u) add_edge(g, base + u, base + u2);
            for (std::uint32_t v2 : gb.neighbors[v])
                if (v2 > v) add_edge(g, base + u, v2 * std::uint32_t(ga.n) + u);
        }
    }
    finalize(g);
    if (ga.tag.family == GraphFamily::cube && gb.tag.family == GraphFamily::cycle)
        g.tag = {GraphFamily::cartesian_cube_cycle, ga.tag.N, gb.tag.m};
    return g;
}

Graph vertex_substitution(int N, int m) {
    if (N < 1) throw std::invalid_argument("vertex_substitution: N must be at least 1");
    if (m < 3) throw std::invalid_argument("vertex_substitution: m must be at least 3");
    const Graph cube = cube_graph(N);
    Graph g;
    g.n = std::size_t(m) << N;
    g.neighbors.resize(g.n);
    const std::uint32_t side = std::uint32_t(cube.n);
    for (int k = 0; k < m; ++k) {
        const std::uint32_t base = std::uint32_t(k) * side;
        for (std::uint32_t u = 0; u < side; ++u)
            for (std::uint32_t u2 : cube.neighbors[u])
                if (u2 > u) add_edge(g, base + u, base + u2);
        // v_1 of block k ~ v_0 of block k+1
        add_edge(g, base + side - 1, std::uint32_t((k + 1) % m) * side);
    }
    finalize(g);
    g.tag = {GraphFamily::substitution, N, m};
    return g;
}

Matrix<double> laplacian(const Graph& g) {
    Matrix<double> l(g.n, g.n);
    for (std::size_t v = 0; v < g.n; ++v) {
        l(v, v) = double(g.neighbors[v].size());
        for (std::uint32_t w : g.neighbors[v]) l(v, w) = -1.0;
    }
    return l;
}

bool is_connected(const Graph& g) {
    if (g.n == 0) return false;
    std::vector<char> seen(g.n, 0);
    std::vector<std::uint32_t> stack{0};
    seen[0] = 1;
    std::size_t count = 1;
    while (!stack.empty()) {
        const std::uint32_t v = stack.back();
        stack.pop_back();
        for (std::uint32_t w : g.neighbors[v])
            if (!seen[w]) {
                seen[w] = 1;
                ++count;
                stack.push_back(w);
            }
    }
    return count == g.n;
}

InducedSubgraph induced_subgraph(const Graph& g, std::span<const std::uint32_t> vertices) {
    if (vertices.empty()) throw std::invalid_argument("induced_subgraph: empty vertex set");
    std::vector<std::uint32_t> sorted(vertices.begin(), vertices.end());
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    if (sorted.size() != vertices.size())
        throw std::invalid_argument("induced_subgraph: duplicate vertices");
    for (std::uint32_t v : sorted)
        if (v >= g.n) throw std::invalid_argument("induced_subgraph: vertex out of range");

    std::unordered_map<std::uint32_t, std::uint32_t> remap;
    remap.reserve(sorted.size());
    for (std::uint32_t i = 0; i < sorted.size(); ++i) remap[sorted[i]] = i;

    InducedSubgraph out;
    out.graph.n = sorted.size();
    out.graph.neighbors.resize(sorted.size());
    out.original_index = sorted;
    for (std::uint32_t i = 0; i < sorted.size(); ++i)
        for (std::uint32_t w : g.neighbors[sorted[i]]) {
            auto it = remap.find(w);
            if (it != remap.end() && it->second > i) add_edge(out.graph, i, it->second);
        }
    finalize(out.graph);
    out.connected = is_connected(out.graph);
    return out;
}

Rational::Rational(long long n, long long d) {
    if (d == 0) throw std::invalid_argument("Rational: zero denominator");
    if (d < 0) {
        n = -n;
        d = -d;
    }
    const long long g = std::gcd(n < 0 ? -n : n, d);
    num = g ? n / g : n;
    den = g ? d / g : d;
}

Rational clusterness_ratio(const Graph& g,
                           const std::vector<std::vector<std::uint32_t>>& partition) {
    std::vector<int> owner(g.n, -1);
    for (std::size_t j = 0; j < partition.size(); ++j)
        for (std::uint32_t v : partition[j]) {
            if (v >= g.n || owner[v] != -1)
                throw std::invalid_argument("clusterness_ratio: partition is not a disjoint cover");
            owner[v] = int(j);
        }
    for (std::size_t v = 0; v < g.n; ++v)
        if (owner[v] == -1)
            throw std::invalid_argument("clusterness_ratio: partition does not cover the graph");

    long long intra = 0, total = 0;
    for (std::size_t v = 0; v < g.n; ++v)
        for (std::uint32_t w : g.neighbors[v]) {
            ++total;
            if (owner[v] == owner[w]) ++intra;
        }
    return Rational(intra, total);
}

std::vector<std::vector<std::uint32_t>> block_partition(int N, int m) {
    const std::uint32_t side = 1u << N;
    std::vector<std::vector<std::uint32_t>> parts(m);
    for (int k = 0; k < m; ++k) {
        parts[k].resize(side);
        for (std::uint32_t u = 0; u < side; ++u) parts[k][u] = std::uint32_t(k) * side + u;
    }
    return parts;
}

void write_edge_list(std::ostream& os, const Graph& g) {
    for (std::size_t v = 0; v < g.n; ++v)
        for (std::uint32_t w : g.neighbors[v])
            if (w > v) os << v << ' ' << w << '\n';
}

}  // namespace graphlim
