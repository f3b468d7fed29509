#include "rainbow/trees.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <functional>
#include <queue>
#include <stdexcept>

namespace rainbow {

void TreeShape::add_edge(int u, int v) {
    int need = std::max(u, v) + 1;
    if (static_cast<int>(adj.size()) < need) adj.resize(need);
    adj[u].push_back(v);
    adj[v].push_back(u);
}

long long TreeShape::edge_count() const {
    long long deg = 0;
    for (const auto &nb : adj) deg += static_cast<long long>(nb.size());
    return deg / 2;
}

int TreeShape::max_degree() const {
    int d = 0;
    for (const auto &nb : adj) d = std::max(d, static_cast<int>(nb.size()));
    return d;
}

bool TreeShape::is_tree() const {
    const int n = vertex_count();
    if (n == 0) return false;
    if (edge_count() != n - 1) return false;
    std::vector<char> seen(n, 0);
    std::queue<int> q;
    q.push(0);
    seen[0] = 1;
    int reached = 1;
    while (!q.empty()) {
        int v = q.front();
        q.pop();
        for (int u : adj[v])
            if (!seen[u]) {
                seen[u] = 1;
                ++reached;
                q.push(u);
            }
    }
    return reached == n;
}

std::string TreeShape::to_json() const {
    // parent array rooted at 0 (BFS); -1 for the root
    const int n = vertex_count();
    std::vector<int> parent(n, -1);
    std::vector<char> seen(n, 0);
    std::queue<int> q;
    if (n > 0) {
        q.push(0);
        seen[0] = 1;
    }
    while (!q.empty()) {
        int v = q.front();
        q.pop();
        for (int u : adj[v])
            if (!seen[u]) {
                seen[u] = 1;
                parent[u] = v;
                q.push(u);
            }
    }
    nlohmann::json j;
    j["n"] = n;
    j["parent"] = parent;
    j["labels"] = {{"spine", spine}, {"b_set", b_set}};
    return j.dump();
}

TreeShape TreeShape::load_json(const std::string &text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error &e) {
        throw std::invalid_argument(std::string("tree: JSON parse error: ") + e.what());
    }
    int n = j.at("n").get<int>();
    auto parent = j.at("parent").get<std::vector<int>>();
    if (static_cast<int>(parent.size()) != n)
        throw std::invalid_argument("tree: parent array length != n");
    TreeShape t;
    t.adj.resize(n);
    int roots = 0;
    for (int v = 0; v < n; ++v) {
        if (parent[v] < 0) {
            ++roots;
            continue;
        }
        if (parent[v] >= n) throw std::invalid_argument("tree: parent id out of range");
        t.add_edge(v, parent[v]);
    }
    if (n > 0 && roots != 1) throw std::invalid_argument("tree: expected exactly one root");
    if (j.contains("labels")) {
        t.spine = j["labels"].value("spine", std::vector<int>{});
        t.b_set = j["labels"].value("b_set", std::vector<int>{});
    }
    if (!t.is_tree()) throw std::invalid_argument("tree: parent array does not encode a tree");
    return t;
}

TreeShape build_T(int n, int r, int b) {
    if (r < 1) throw std::invalid_argument("build_T: r must be >= 1");
    if (b < 1) throw std::invalid_argument("build_T: b must be >= 1");
    const long long l = static_cast<long long>(n) - 1020LL * r - b - 1;
    if (l <= r + b)
        throw std::invalid_argument("build_T: need l = n - 1020r - b - 1 > r + b, got l = " +
                                    std::to_string(l));
    if (5LL * r > l)
        throw std::invalid_argument("build_T: spine too short for the attachment points (5r > l)");

    TreeShape t;
    t.adj.resize(n);
    int next = 0;
    t.spine.resize(l + 1);
    for (long long i = 0; i <= l; ++i) t.spine[i] = next++;
    for (long long i = 0; i < l; ++i) t.add_edge(t.spine[i], t.spine[i + 1]);

    auto attach_paths = [&](int at, int count) {
        for (int k = 0; k < count; ++k) {
            int mid = next++;
            int leaf = next++;
            t.add_edge(at, mid);
            t.add_edge(mid, leaf);
        }
    };
    attach_paths(t.spine[0], 255);
    attach_paths(t.spine[5 * r], 255);
    for (int k = 1; k <= r - 1; ++k) attach_paths(t.spine[5 * k], 510);

    for (int i = 0; i < b; ++i) {
        int bv = next++;
        t.b_set.push_back(bv);
        t.add_edge(bv, t.spine[l - b + 1 + i]);
    }
    if (next != n) throw std::logic_error("build_T: vertex accounting is off");
    return t;
}

namespace {

// perfect binary tree whose leaves are the existing vertices targets[lo..hi);
// internal vertices are new. Returns the root.
int build_binary_over(TreeShape &t, int &next, const std::vector<int> &targets, int lo, int hi) {
    if (hi - lo == 1) return targets[lo];
    int root = next++;
    if (static_cast<int>(t.adj.size()) < next) t.adj.resize(next);
    int mid = lo + (hi - lo) / 2;
    int a = build_binary_over(t, next, targets, lo, mid);
    int b = build_binary_over(t, next, targets, mid, hi);
    t.add_edge(root, a);
    t.add_edge(root, b);
    return root;
}

void subdivide_all(TreeShape &t, int &next, const std::vector<std::pair<int, int>> &edges) {
    for (auto [u, v] : edges) {
        auto &nu = t.adj[u];
        auto &nv = t.adj[v];
        nu.erase(std::find(nu.begin(), nu.end(), v));
        nv.erase(std::find(nv.begin(), nv.end(), u));
        int mid = next++;
        if (static_cast<int>(t.adj.size()) < next) t.adj.resize(next);
        t.add_edge(u, mid);
        t.add_edge(mid, v);
    }
}

std::vector<std::pair<int, int>> snapshot_edges(const TreeShape &t, int from_id) {
    std::vector<std::pair<int, int>> out;
    for (int u = from_id; u < t.vertex_count(); ++u)
        for (int v : t.adj[u])
            if (v > u || v < from_id) out.emplace_back(u, v);
    // each edge with at least one endpoint >= from_id, listed once
    std::vector<std::pair<int, int>> dedup;
    for (auto [u, v] : out) {
        int a = std::min(u, v), b = std::max(u, v);
        dedup.emplace_back(a, b);
    }
    std::sort(dedup.begin(), dedup.end());
    dedup.erase(std::unique(dedup.begin(), dedup.end()), dedup.end());
    return dedup;
}

} // namespace

TreeShape build_T_delta3(int n, int r, int b) {
    if (r < 1) throw std::invalid_argument("build_T_delta3: r must be >= 1");
    if (b < 1) throw std::invalid_argument("build_T_delta3: b must be >= 1");
    const long long L = Delta3Arithmetic::tail_length(n, r, b);
    if (L < b + 1)
        throw std::invalid_argument("build_T_delta3: need tail length n - 2045r - b + 3 >= b + 1, got " +
                                    std::to_string(L));

    const int S = Delta3Arithmetic::leaves_per_side;
    TreeShape t;
    t.adj.resize(1);
    int next = 0;

    // r matchings: heads[k], tails[k] are the 256-vertex sides of matching k.
    // The tree carries exactly one edge per matching (the absorbed one); the
    // other endpoints stay leaves of their binary trees.
    std::vector<std::vector<int>> heads(r), tails(r);
    for (int k = 0; k < r; ++k) {
        for (int i = 0; i < S; ++i) {
            int a = next++, c = next++;
            if (static_cast<int>(t.adj.size()) < next) t.adj.resize(next);
            tails[k].push_back(a);
            heads[k].push_back(c);
            if (i == 0) t.add_edge(a, c);
        }
    }

    // connectors, built un-subdivided first, then every connector edge subdivided
    int connector_from = next;

    // start connector: binary tree with leaf set tails[0]
    build_binary_over(t, next, tails[0], 0, S);
    // interior connectors between heads[k] and tails[k+1]
    for (int k = 0; k + 1 < r; ++k) {
        int ra = build_binary_over(t, next, heads[k], 0, S);
        int rb = build_binary_over(t, next, tails[k + 1], 0, S);
        int x = next++;
        if (static_cast<int>(t.adj.size()) < next) t.adj.resize(next);
        t.add_edge(ra, x);
        t.add_edge(x, rb);
    }
    // finish connector on heads[r-1]
    int finish_root = build_binary_over(t, next, heads[r - 1], 0, S);

    // one subdivision per connector edge gives max degree 3
    auto connector_edges = snapshot_edges(t, connector_from);
    subdivide_all(t, next, connector_edges);

    // tail path hanging off the finish root, with B matched to its last b vertices
    std::vector<int> path;
    for (long long i = 0; i < L; ++i) {
        int v = next++;
        if (static_cast<int>(t.adj.size()) < next) t.adj.resize(next);
        path.push_back(v);
        t.add_edge(i == 0 ? finish_root : path[i - 1], v);
    }
    for (int i = 0; i < b; ++i) {
        int bv = next++;
        if (static_cast<int>(t.adj.size()) < next) t.adj.resize(next);
        t.b_set.push_back(bv);
        t.add_edge(bv, path[L - b + i]);
    }

    if (next != n)
        throw std::logic_error("build_T_delta3: vertex accounting is off (built " +
                               std::to_string(next) + " of " + std::to_string(n) + ")");
    t.adj.resize(n);
    return t;
}

Connector build_connector(const std::vector<std::vector<int>> &hyperedges) {
    Connector out;
    std::vector<char> used;
    int base = 0;
    for (const auto &he : hyperedges)
        for (int v : he) base = std::max(base, v + 1);
    used.assign(base, 0);
    out.base_vertex_count = base;
    int next = base;
    std::size_t k = hyperedges.empty() ? 0 : hyperedges.front().size();
    for (const auto &he : hyperedges) {
        if (he.size() != k) throw std::invalid_argument("build_connector: mixed hyperedge sizes");
        for (int v : he) {
            if (v < 0) throw std::invalid_argument("build_connector: negative vertex id");
            if (used[v]) throw std::invalid_argument("build_connector: hyperedges overlap");
            used[v] = 1;
        }
        int star = next + static_cast<int>(k); // v_{R,k+1}
        for (std::size_t i = 0; i < k; ++i) {
            out.edges.emplace_back(he[i], next + static_cast<int>(i));
            out.edges.emplace_back(next + static_cast<int>(i), star);
        }
        next += static_cast<int>(k) + 1;
    }
    out.total_vertices = next;
    return out;
}

namespace {

// centroid(s): vertices minimizing the maximum subtree size
std::vector<int> centroids(const TreeShape &t) {
    const int n = t.vertex_count();
    if (n == 1) return {0};
    std::vector<int> size(n, 1), parent(n, -1), order;
    order.reserve(n);
    std::vector<int> stack = {0};
    std::vector<char> seen(n, 0);
    seen[0] = 1;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        order.push_back(v);
        for (int u : t.adj[v])
            if (!seen[u]) {
                seen[u] = 1;
                parent[u] = v;
                stack.push_back(u);
            }
    }
    for (auto it = order.rbegin(); it != order.rend(); ++it)
        if (parent[*it] >= 0) size[parent[*it]] += size[*it];
    std::vector<int> cs;
    int best = n + 1;
    for (int v = 0; v < n; ++v) {
        int mx = n - size[v];
        for (int u : t.adj[v])
            if (parent[u] == v) mx = std::max(mx, size[u]);
        if (mx < best) {
            best = mx;
            cs = {v};
        } else if (mx == best) {
            cs.push_back(v);
        }
    }
    return cs;
}

std::string ahu(const TreeShape &t, int root, int blocked) {
    // iterative post-order to avoid deep recursion on long paths
    const int n = t.vertex_count();
    std::vector<int> parent(n, -2), order;
    order.reserve(n);
    std::vector<int> stack = {root};
    parent[root] = -1;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        order.push_back(v);
        for (int u : t.adj[v]) {
            if (u == blocked || parent[u] != -2) continue;
            parent[u] = v;
            stack.push_back(u);
        }
    }
    std::vector<std::vector<std::string>> children(n);
    std::vector<std::string> code(n);
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        int v = *it;
        std::sort(children[v].begin(), children[v].end());
        std::string s = "(";
        for (const auto &c : children[v]) s += c;
        s += ")";
        code[v] = std::move(s);
        if (parent[v] >= 0) children[parent[v]].push_back(code[v]);
    }
    return code[root];
}

} // namespace

std::string canonical_form(const TreeShape &t) {
    if (!t.is_tree()) throw std::invalid_argument("canonical_form: input is not a tree");
    auto cs = centroids(t);
    if (cs.size() == 1) return ahu(t, cs[0], -1);
    // bicentroid: the two halves across the central edge, order-independent
    std::string a = ahu(t, cs[0], cs[1]);
    std::string b = ahu(t, cs[1], cs[0]);
    if (b < a) std::swap(a, b);
    return "(" + a + b + ")";
}

bool tree_isomorphic(const TreeShape &a, const TreeShape &b) {
    if (a.vertex_count() != b.vertex_count()) return false;
    return canonical_form(a) == canonical_form(b);
}

} // namespace rainbow
