#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace rainbow {

// ---------------------------------------------------------------------------
// bipartite matching

struct BipartiteMatching {
    std::vector<int> match_left;  // left -> right or -1
    std::vector<int> match_right; // right -> left or -1
    int size = 0;
    // Kőnig vertex cover certifying maximality (|cover| == size)
    std::vector<int> cover_left;
    std::vector<int> cover_right;
};

// maximum matching (Hopcroft-Karp) with a Kőnig cover witness
BipartiteMatching bipartite_max_matching(int left_size, int right_size,
                                         const std::vector<std::vector<int>> &adjacency);

// ---------------------------------------------------------------------------
// max flow

struct FlowArc {
    int from = 0;
    int to = 0;
    long long capacity = 0;
};

struct FlowNetwork {
    int node_count = 0;
    int source = 0;
    int sink = 0;
    std::vector<FlowArc> arcs;

    void add_arc(int from, int to, long long cap) { arcs.push_back({from, to, cap}); }
    void validate() const; // capacities >= 0, no in-arcs at source / out-arcs at sink
};

struct MaxFlowResult {
    long long value = 0;
    std::vector<long long> arc_flow;     // parallel to arcs
    std::vector<char> min_cut_side;      // node -> 1 if on the source side of the certified cut
    long long cut_capacity = 0;          // equals value
};

// Dinic; the returned cut is the residual-reachability cut and certifies optimality
MaxFlowResult max_flow(const FlowNetwork &net);

// ---------------------------------------------------------------------------
// robustly matchable bipartite graphs

// Bipartite graph on (X, Y u Z); right side indexed with Y first (0..y_size-1)
// then Z (y_size..y_size+z_size-1). The defining contract: for every Y' c Y
// with |Y'| = |X|-|Z|, the graph H[X, Y' u Z] has a perfect matching.
struct Rmbg {
    int x_size = 0;
    int y_size = 0;
    int z_size = 0;
    std::vector<std::vector<int>> adj; // per x, sorted neighbour ids in Y u Z

    int right_size() const { return y_size + z_size; }
    int deficiency() const { return x_size - z_size; } // = |Y'|
    void validate() const;

    int max_degree() const;

    std::string to_json() const;                    // {"m": ..., "adj": ...} when parts are (3m,2m,2m)
    static Rmbg load_json(const std::string &text); // inverse of to_json
};

enum class RobustVerdict { proven, refuted, sampled_pass };

struct RobustCheckResult {
    RobustVerdict verdict = RobustVerdict::refuted;
    std::vector<int> failing_y_prime; // witness when refuted
    long long subsets_checked = 0;
};

struct RobustMode {
    bool exhaustive = true;
    long long sample_count = 0; // for sampled mode
    std::uint64_t seed = 0;

    static RobustMode Exhaustive() { return {true, 0, 0}; }
    static RobustMode Sampled(long long k, std::uint64_t seed) { return {false, k, seed}; }
};

// Exhaustive mode iterates every Y' (budget: at most 10^6 subsets, otherwise a
// std::runtime_error asks the caller to switch to sampled mode).
RobustCheckResult is_robustly_matchable(const Rmbg &h, const RobustMode &mode);

struct RobustMatchResult {
    bool found = false;
    std::vector<int> match_x;        // x -> right id, all matched when found
    std::vector<int> hall_violator;  // subset of X with |N(S)| < |S| when not found
};

// perfect matching of H[X, Y' u Z]; on failure the Hall violator doubles as a
// robustness counterexample
RobustMatchResult robust_match(const Rmbg &h, const std::vector<int> &y_prime);

// Randomized search for a verified RMBG(3m, 2m, 2m) with max degree <= max_degree.
// Throws std::runtime_error when the attempt budget is exhausted.
Rmbg search_rmbg(int m, int max_degree, std::uint64_t seed, int budget = 200);

// Supergraph of h that is (4d,3d)-regular, built from the max-flow construction;
// throws std::runtime_error when the flow problem is infeasible.
Rmbg regularize(const Rmbg &h, int d);

} // namespace rainbow
