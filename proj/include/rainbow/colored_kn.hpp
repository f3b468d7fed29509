#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace rainbow {

// Unordered vertex pair, stored with u < v.
struct Edge {
    int u = 0;
    int v = 0;

    Edge() = default;
    Edge(int a, int b) : u(a < b ? a : b), v(a < b ? b : a) {}

    bool operator==(const Edge &o) const { return u == o.u && v == o.v; }
    bool operator<(const Edge &o) const { return u != o.u ? u < o.u : v < o.v; }
};

// Dense id of edge {u,v} in the row-major upper-triangular layout of K_n.
inline long long edge_index(int n, int u, int v) {
    if (u > v) std::swap(u, v);
    return static_cast<long long>(u) * n - static_cast<long long>(u) * (u + 1) / 2 + (v - u - 1);
}

Edge edge_from_index(int n, long long id);

inline long long edge_count(int n) { return static_cast<long long>(n) * (n - 1) / 2; }

// A set of edges over [0, n).
struct EdgeSet {
    std::vector<Edge> edges;

    EdgeSet() = default;
    explicit EdgeSet(std::vector<Edge> e) : edges(std::move(e)) {}

    std::size_t size() const { return edges.size(); }
    bool empty() const { return edges.empty(); }
    void add(int u, int v) { edges.emplace_back(u, v); }

    // sorted + deduplicated copy; throws std::invalid_argument on out-of-range
    // endpoints or duplicates when validate(n) is called
    void validate(int n) const;
};

// Complete graph on an even number of vertices with an edge colouring.
// A *valid* instance is a 1-factorization: colours 0..n-2, every colour class a
// perfect matching. Raw instances (possibly invalid) can be constructed from a
// colour table and checked with verify_factorization.
class EdgeColouredKn {
  public:
    EdgeColouredKn() = default;

    // takes ownership of a flat upper-triangular colour table (size n(n-1)/2)
    static EdgeColouredKn from_colours(int n, std::vector<int> colours);

    int n() const { return n_; }
    int colour_count() const { return n_ - 1; }
    int colour(int u, int v) const { return colours_[edge_index(n_, u, v)]; }
    int colour(const Edge &e) const { return colour(e.u, e.v); }
    const std::vector<int> &colour_table() const { return colours_; }

    // edges of one colour class, in index order
    std::vector<Edge> colour_class(int c) const;

    std::string to_json() const;
    // throws std::invalid_argument with a positioned message on malformed input
    // or violated type invariants
    static EdgeColouredKn load_json(const std::string &text);
    // shape checks only; colouring may violate the factorization invariants
    // (feed to verify_factorization for a report)
    static EdgeColouredKn load_json_raw(const std::string &text);

  private:
    int n_ = 0;
    std::vector<int> colours_;
};

struct FactorizationViolation {
    std::string kind;    // "colour-range" | "colour-class-degree" | "colour-class-size"
    int witness = -1;    // offending colour or vertex
    int observed = 0;
    std::string detail;
};

// round-robin (circle method) 1-factorization; n even >= 2
EdgeColouredKn generate_circle_factorization(int n);

// Backtracking proper edge colouring with n-1 colours, random colour order per
// edge, restart budget 1000. Variety across seeds, uniformity not claimed.
// Throws std::runtime_error if the budget is exhausted.
EdgeColouredKn generate_random_factorization(int n, std::uint64_t seed);

// empty iff every colour class is a perfect matching and colour count is n-1
std::vector<FactorizationViolation> verify_factorization(const EdgeColouredKn &g);

bool is_rainbow(const EdgeColouredKn &g, const EdgeSet &s);

// m-boundedness of a leftover triple, literal thresholds of (B1)-(B3)
struct BoundednessViolation {
    std::string kind; // set-size | vertex-incidence | vertex-degree | colour-incidence | colour-multiplicity
    int witness = -1; // index i, vertex v, or colour c depending on kind
    long long observed = 0;
};

struct BoundednessReport {
    long long m = 0;
    std::vector<BoundednessViolation> violations;
    bool bounded() const { return violations.empty(); }
};

BoundednessReport check_bounded(const EdgeColouredKn &g, const EdgeSet &leftover,
                                const std::vector<std::vector<int>> &vertex_sets,
                                const std::vector<std::vector<int>> &colour_sets, long long m);

struct DecompositionCheck {
    bool ok = false;
    std::vector<std::string> diagnostics;
};

// true iff parts are pairwise edge-disjoint, cover every edge of K_n, and each
// part is a rainbow spanning tree
DecompositionCheck verify_decomposition(const EdgeColouredKn &g, const std::vector<EdgeSet> &parts);

// Independent assignment of universe elements to |weights| cells (plus a
// remainder cell when the weights sum to less than 1). Deterministic per seed.
// Returns cell index per element.
std::vector<int> random_split(std::size_t universe_size, const std::vector<double> &weights,
                              std::uint64_t seed);

inline int split_cell_count(const std::vector<double> &weights) {
    double s = 0;
    for (double w : weights) s += w;
    return static_cast<int>(weights.size()) + (s < 1.0 - 1e-9 ? 1 : 0);
}

} // namespace rainbow
