#pragma once

#include "rainbow/colored_kn.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace rainbow {

// Finite hypergraph with named vertex families tracked for perfectness
// accounting. Edges are sorted lists of distinct vertex ids.
struct Hypergraph {
    int vertex_count = 0;
    std::vector<std::vector<int>> edges;
    std::vector<std::pair<std::string, std::vector<int>>> families;

    void add_edge(std::vector<int> vs);
    void add_family(std::string name, std::vector<int> members);
    void validate() const;

    std::string to_json() const;
    static Hypergraph load_json(const std::string &text);
};

struct DegreeStats {
    long long min_degree = 0;
    long long max_degree = 0;
    long long max_codegree = 0; // Delta^c
};

DegreeStats degree_stats(const Hypergraph &h);

struct FamilyCoverage {
    std::string name;
    long long size = 0;
    long long uncovered = 0;
    double threshold_base = 0; // max(|F|, |V|^{2/5})
};

struct MatchingReport {
    std::vector<int> matching; // pairwise vertex-disjoint edge indices
    long long covered_vertices = 0;
    double coverage = 0; // covered / vertex_count
    std::vector<FamilyCoverage> families;
    double gamma_effective = 0; // max over families of uncovered / threshold_base
    int rounds_run = 0;

    std::string to_json() const;
};

// Semi-random nibble: per round every surviving edge activates independently
// with probability bite / D-hat (D-hat = current average vertex degree over
// surviving vertices); a maximal conflict-free subset of the activated edges
// (scanned in random order) is kept and its vertices are deleted. After
// `rounds` rounds a final greedy pass runs over the remaining edges in random
// order. Deterministic per seed.
MatchingReport nibble_matching(const Hypergraph &h, double bite, int rounds, std::uint64_t seed);

// random-order greedy maximal matching; baseline against the nibble
MatchingReport greedy_matching(const Hypergraph &h, std::uint64_t seed);

struct GammaCheck {
    bool ok = false;
    std::vector<FamilyCoverage> ledger;
};

// (gamma, F)-perfectness: every family F has at most
// gamma * max(|F|, |V|^{2/5}) uncovered vertices
GammaCheck check_gamma_perfect(const Hypergraph &h, const std::vector<int> &matching, double gamma);

// generator for nibble experiments: roughly `degree`-regular `edge_size`-uniform
// hypergraph with max codegree <= max_codegree
Hypergraph random_regular_hypergraph(int vertex_count, int edge_size, int degree, int max_codegree,
                                     std::uint64_t seed);

// ---------------------------------------------------------------------------
// rainbow-cycle encoding

// Vertex layout of the cycle hypergraph (flattened ids):
//   [0, C(n,2))                 edge ids of K_n
//   C(n,2) + i*n + v            pair (i, v), i in [0,t)
//   C(n,2) + t*n + i*(n-1) + c  pair (i, c)
struct CycleHypergraph {
    Hypergraph h;
    int n = 0;
    int t = 0;
    int cycle_len = 0;

    long long vertex_of_edge(long long edge_id) const { return edge_id; }
    long long vertex_of_iv(int i, int v) const { return edge_count(n) + static_cast<long long>(i) * n + v; }
    long long vertex_of_ic(int i, int c) const {
        return edge_count(n) + static_cast<long long>(t) * n + static_cast<long long>(i) * (n - 1) + c;
    }
};

struct CycleEnumeration {
    bool exhaustive = true;
    long long sample_count = 0;
    std::uint64_t seed = 0;

    static CycleEnumeration Exhaustive() { return {true, 0, 0}; }
    static CycleEnumeration Sampled(long long k, std::uint64_t seed) { return {false, k, seed}; }
};

// One hyperedge per rainbow cycle F of length `cycle_len` with V(F) c V_i and
// colours(F) c C_i, per index i; families as in the path-decomposition proof.
// Exhaustive enumeration supports cycle_len in {3,4,5} only.
CycleHypergraph build_cycle_hypergraph(const EdgeColouredKn &g,
                                       const std::vector<std::vector<int>> &vertex_sets,
                                       const std::vector<std::vector<int>> &colour_sets,
                                       int cycle_len, const CycleEnumeration &mode);

struct IndexedCycle {
    int index = 0;                 // i
    std::vector<Edge> edges;       // the cycle's K_n edges
};

// Decode a matching of the cycle hypergraph into per-index cycle sets and
// re-verify the three disjointness properties (vertex- and colour-disjoint
// within an index, edge-disjoint across). Throws std::logic_error on an
// encoding inconsistency.
std::vector<std::vector<IndexedCycle>> extract_disjoint_families(const CycleHypergraph &ch,
                                                                 const std::vector<int> &matching);

} // namespace rainbow
