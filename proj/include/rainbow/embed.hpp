#pragma once

#include "rainbow/colored_kn.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace rainbow {

// small rooted pattern to embed
struct PatternGraph {
    int vertex_count = 0;
    std::vector<std::pair<int, int>> edges;

    std::vector<std::vector<int>> adjacency() const;
    int max_degree() const;
};

struct IndexEmbedTask {
    PatternGraph pattern;
    std::vector<int> roots;        // pattern vertex ids, independent in the pattern
    std::vector<int> root_images;  // injective placement into the host
    std::vector<int> target_vertices; // V_i
    std::vector<int> allowed_colours; // C_i
};

// Host graph plus the per-index patterns. `gamma` drives the busy-vertex
// threshold sqrt(gamma)*n and the degree-ledger audit bound.
struct EmbeddingTask {
    const EdgeColouredKn *host = nullptr;
    std::vector<IndexEmbedTask> indices;
    int max_pattern_degree = 0;
    double gamma = 0.01;

    void validate() const;
};

struct EmbedStuck {
    int index = -1;          // s
    int pattern_vertex = -1; // x
    int placed_neighbours = 0;
    std::string exclusion_breakdown;
};

struct EmbeddingResult {
    bool ok = false;
    std::vector<std::vector<int>> placements; // per index: pattern vertex -> host vertex
    std::vector<long long> host_degree;       // accumulated degree per host vertex
    long long max_host_degree = 0;
    EmbedStuck stuck;                         // populated when !ok
};

// candidate images for one pattern vertex: common neighbours of the placed
// images S inside V_i joined by allowed colours, minus the exclusions
std::vector<int> candidate_set(const EdgeColouredKn &g, const std::vector<int> &placed_images,
                               const std::vector<int> &target_vertices,
                               const std::vector<int> &allowed_colours,
                               const std::vector<char> &used_vertices,
                               const std::vector<char> &used_colours,
                               const std::vector<char> &avoided,
                               const std::vector<char> &consumed_edges);

// greedy rooted rainbow embedding of all indices in order; edge-disjoint
// across indices, rainbow with colours in C_i within each index
EmbeddingResult greedy_embed(const EmbeddingTask &task, std::uint64_t seed);

} // namespace rainbow
