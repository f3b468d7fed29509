#pragma once

#include <string>
#include <vector>

namespace rainbow {

// Explicit tree with optional structural labels.
struct TreeShape {
    std::vector<std::vector<int>> adj;
    std::vector<int> spine;  // v_0..v_l when built by build_T
    std::vector<int> b_set;  // pendant-matched B vertices

    int vertex_count() const { return static_cast<int>(adj.size()); }
    long long edge_count() const;
    int max_degree() const;
    bool is_tree() const; // connected and acyclic

    void add_edge(int u, int v);

    std::string to_json() const; // parent-array encoding with label annotations
    static TreeShape load_json(const std::string &text);
};

// The decomposition target: a spine v_0..v_l with 510 two-edge paths at every
// interior fifth spine vertex (255 at v_0 and v_{5r}) and a pendant matching
// of size b at the tail. l := n - 1020r - b - 1.
// Requires r >= 1, b >= 1, l > r + b and 5r <= l.
TreeShape build_T(int n, int r, int b);

// Max-degree-3 variant: the star connectors are replaced by once-subdivided
// binary trees with 256 leaves per matching side, roots joined by a subdivided
// two-edge path. Vertex accounting (see delta3_* constants in trees.cpp):
//   n = 2045r - 3 + L + b with tail-path length L := n - 2045r - b + 3 >= b+1.
TreeShape build_T_delta3(int n, int r, int b);

// derived arithmetic of the delta<=3 variant, exposed for tests
struct Delta3Arithmetic {
    static constexpr int leaves_per_side = 256;      // 2^8
    static constexpr int binary_internal = 255;      // internal vertices of a 256-leaf binary tree
    static constexpr int binary_edges = 510;         // edges of that tree
    static constexpr int matching_vertices = 512;    // per absorber matching
    static constexpr int end_connector_vertices = binary_internal + binary_edges;       // 765
    static constexpr int mid_connector_vertices = 2 * end_connector_vertices + 3;       // 1533
    static int tail_length(int n, int r, int b) { return n - 2045 * r - b + 3; }
};

// R-connector of a k-uniform matching: per hyperedge, k+1 new vertices, a
// perfect matching onto the hyperedge and a star from the extra vertex.
struct Connector {
    int base_vertex_count = 0;   // ids [0, base) are V(R)
    int total_vertices = 0;      // new vertices appended after base ids
    std::vector<std::pair<int, int>> edges;
};

Connector build_connector(const std::vector<std::vector<int>> &hyperedges);

// AHU form rooted at the centroid (lexicographically smaller side for
// bicentroidal trees); equal strings iff isomorphic
std::string canonical_form(const TreeShape &t);

bool tree_isomorphic(const TreeShape &a, const TreeShape &b);

} // namespace rainbow
