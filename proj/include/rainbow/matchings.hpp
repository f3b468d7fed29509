#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace rainbow {

// Balanced coloured bipartite graph. Vertices carry global ids (a_ids/b_ids)
// so matchings from different graphs can be compared edge-wise; edges use
// local part indices.
struct ColouredBipartite {
    std::vector<int> a_ids;
    std::vector<int> b_ids;
    struct CEdge {
        int a = 0; // index into a_ids
        int b = 0; // index into b_ids
        int colour = 0;
    };
    std::vector<CEdge> edges;

    int n() const { return static_cast<int>(a_ids.size()); }
    void validate() const;
    long long max_colour_multiplicity() const;
};

struct QuasirandomCheck {
    bool ok = false;
    // worst relative deviations and their witnesses
    double worst_degree_ratio = 0; // |deg/(d*n) - 1|
    int worst_degree_vertex = -1;  // local id, A side if < n else B side offset
    double worst_codegree_ratio = 0;
    std::pair<int, int> worst_codegree_pair{-1, -1};
};

// degree and same-side codegree window (1 +- eps) around d*n and d^2*n
QuasirandomCheck is_quasirandom(const ColouredBipartite &g, double eps, double d);

struct RainbowPmResult {
    bool found = false;
    std::vector<int> matching;        // a -> b (local), when found
    std::vector<long long> conflict_trace; // per accepted move within the final run
    long long switches_used = 0;
    int restarts = 0;
    std::string reason; // for not-found outcomes
};

// Rainbow perfect matching by conflict-minimizing local search over
// alternating 4-cycle switches, with random restarts; exhaustive-search
// fallback for n <= 8 (disable to test the pure local search).
RainbowPmResult rainbow_perfect_matching(const ColouredBipartite &g, long long colour_cap,
                                         long long switch_budget, std::uint64_t seed,
                                         bool allow_exhaustive_fallback = true);

// complete enumeration over all perfect matchings; intended for small n
RainbowPmResult exhaustive_rainbow_pm(const ColouredBipartite &g);

struct DisjointPmTaskResult {
    bool ok = false;
    // per task: matched pairs as (a_gid, b_gid, colour); empty when skipped
    std::vector<std::vector<std::array<int, 3>>> matchings;
    std::vector<int> skipped;   // task indices that hit the busy-residual branch
    int completed_prefix = 0;   // tasks processed before a hard failure
    std::string failure;        // set when !ok
};

struct PreconditionReport {
    bool ok = true;
    std::vector<std::string> violations;
};

// the Lemma-5.8 preconditions on overlapping tasks; n is the universe size
PreconditionReport check_disjoint_pm_preconditions(const std::vector<ColouredBipartite> &tasks,
                                                   double mu, int universe_size);

// Randomized greedy edge-disjoint rainbow PMs: per task, generate up to
// r = min(ceil(105 mu^{3/2} n), budget_r) edge-disjoint rainbow PMs of the
// residual graph and pick one uniformly; tasks whose residual is too busy are
// recorded as skips. Throws std::invalid_argument on precondition violations.
DisjointPmTaskResult greedy_disjoint_rainbow_pms(const std::vector<ColouredBipartite> &tasks,
                                                 double mu, int universe_size, long long budget_r,
                                                 std::uint64_t seed);

} // namespace rainbow
