#pragma once

#include <cstdint>
#include <numeric>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "graphlim/matrix.hpp"

namespace graphlim {

enum class GraphFamily { generic, cycle, cube, substitution, cartesian_cube_cycle };

/// Construction provenance of a graph, enough to recover its vertex
/// indexing convention. For cube-on-cycle families the flat index is
/// block-major / slice-major: vertex v of block (slice) k sits at k*2^N + v.
struct FamilyTag {
    GraphFamily family = GraphFamily::generic;
    int N = 0;
    int m = 0;
};

/// Simple unweighted undirected graph, held as sorted adjacency lists.
/// Every constructor in this module produces a connected graph with a fixed
/// deterministic vertex indexing.
struct Graph {
    std::size_t n = 0;
    std::vector<std::vector<std::uint32_t>> neighbors;
    FamilyTag tag;

    std::size_t degree(std::size_t v) const { return neighbors[v].size(); }
    std::size_t edge_count() const {
        std::size_t s = 0;
        for (const auto& nb : neighbors) s += nb.size();
        return s / 2;
    }
};

/// Cube vertices are bitstrings (eps_1,...,eps_N) with flat index
/// sum eps_i 2^(N-i); the all-zeros vertex is index 0 and the all-ones vertex
/// is index 2^N - 1.
inline std::uint32_t cube_vertex_zero(int /*N*/) { return 0; }
inline std::uint32_t cube_vertex_one(int N) { return (1u << N) - 1; }
inline std::size_t block_index(int N, int block, std::uint32_t v) {
    return (std::size_t(block) << N) + v;
}

Graph cycle_graph(int m);
Graph cube_graph(int N);
Graph cartesian_product(const Graph& g, const Graph& h);

/// A cube copy replaces each cycle vertex; consecutive copies are joined by
/// the single edge v_1 of block k ~ v_0 of block k+1 (mod m).
Graph vertex_substitution(int N, int m);

/// Unnormalized Laplacian L = D - A, exactly symmetric as stored.
Matrix<double> laplacian(const Graph& g);

bool is_connected(const Graph& g);

struct InducedSubgraph {
    Graph graph;
    std::vector<std::uint32_t> original_index;  // new index -> old index
    bool connected = true;
};

InducedSubgraph induced_subgraph(const Graph& g, std::span<const std::uint32_t> vertices);

/// Exact ratio of two integers, reduced, denominator positive.
struct Rational {
    long long num = 0;
    long long den = 1;

    Rational() = default;
    Rational(long long n, long long d);
    double value() const { return double(num) / double(den); }
    bool operator==(const Rational& o) const { return num == o.num && den == o.den; }
};

/// (mean intra-cluster degree) / (mean total degree) for a disjoint cover of
/// the vertex set.
Rational clusterness_ratio(const Graph& g, const std::vector<std::vector<std::uint32_t>>& partition);

/// Vertex sets of the cube blocks (or slices) of a substitution or Cartesian
/// cube-on-cycle graph, in block order.
std::vector<std::vector<std::uint32_t>> block_partition(int N, int m);

/// One "i j" pair per line, 0-based, i < j.
void write_edge_list(std::ostream& os, const Graph& g);

}  // namespace graphlim
