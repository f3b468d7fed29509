#include "rainbow/rmbg.hpp"
#include "rainbow/rng.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <limits>
#include <queue>
#include <set>
#include <stdexcept>

namespace rainbow {

// ---------------------------------------------------------------------------
// Hopcroft-Karp

namespace {

struct HopcroftKarp {
    const std::vector<std::vector<int>> &adj;
    int nl, nr;
    std::vector<int> match_l, match_r, dist;

    HopcroftKarp(int l, int r, const std::vector<std::vector<int>> &a)
        : adj(a), nl(l), nr(r), match_l(l, -1), match_r(r, -1), dist(l) {}

    bool bfs() {
        std::queue<int> q;
        bool found = false;
        for (int u = 0; u < nl; ++u) {
            if (match_l[u] < 0) {
                dist[u] = 0;
                q.push(u);
            } else {
                dist[u] = -1;
            }
        }
        while (!q.empty()) {
            int u = q.front();
            q.pop();
            for (int v : adj[u]) {
                int w = match_r[v];
                if (w < 0) {
                    found = true;
                } else if (dist[w] < 0) {
                    dist[w] = dist[u] + 1;
                    q.push(w);
                }
            }
        }
        return found;
    }

    bool dfs(int u) {
        for (int v : adj[u]) {
            int w = match_r[v];
            if (w < 0 || (dist[w] == dist[u] + 1 && dfs(w))) {
                match_l[u] = v;
                match_r[v] = u;
                return true;
            }
        }
        dist[u] = -1;
        return false;
    }

    int run() {
        int size = 0;
        while (bfs()) {
            for (int u = 0; u < nl; ++u)
                if (match_l[u] < 0 && dfs(u)) ++size;
        }
        return size;
    }
};

} // namespace

BipartiteMatching bipartite_max_matching(int left_size, int right_size,
                                         const std::vector<std::vector<int>> &adjacency) {
    if (static_cast<int>(adjacency.size()) != left_size)
        throw std::invalid_argument("bipartite_max_matching: adjacency size != left_size");
    for (const auto &nb : adjacency)
        for (int v : nb)
            if (v < 0 || v >= right_size)
                throw std::invalid_argument("bipartite_max_matching: neighbour out of range");

    HopcroftKarp hk(left_size, right_size, adjacency);
    BipartiteMatching out;
    out.size = hk.run();
    out.match_left = hk.match_l;
    out.match_right = hk.match_r;

    // Kőnig: alternating reachability from unmatched left vertices.
    // cover = (L \ reach_L) u (R n reach_R)
    std::vector<char> reach_l(left_size, 0), reach_r(right_size, 0);
    std::queue<int> q;
    for (int u = 0; u < left_size; ++u)
        if (out.match_left[u] < 0) {
            reach_l[u] = 1;
            q.push(u);
        }
    while (!q.empty()) {
        int u = q.front();
        q.pop();
        for (int v : adjacency[u]) {
            if (out.match_left[u] == v) continue; // left->right along non-matching edges
            if (!reach_r[v]) {
                reach_r[v] = 1;
                int w = out.match_right[v];
                if (w >= 0 && !reach_l[w]) {
                    reach_l[w] = 1;
                    q.push(w);
                }
            }
        }
    }
    for (int u = 0; u < left_size; ++u)
        if (!reach_l[u]) out.cover_left.push_back(u);
    for (int v = 0; v < right_size; ++v)
        if (reach_r[v]) out.cover_right.push_back(v);
    return out;
}

// ---------------------------------------------------------------------------
// Dinic

void FlowNetwork::validate() const {
    if (node_count <= 0) throw std::invalid_argument("FlowNetwork: empty node set");
    if (source < 0 || source >= node_count || sink < 0 || sink >= node_count || source == sink)
        throw std::invalid_argument("FlowNetwork: bad source/sink");
    for (const FlowArc &a : arcs) {
        if (a.from < 0 || a.from >= node_count || a.to < 0 || a.to >= node_count)
            throw std::invalid_argument("FlowNetwork: arc endpoint out of range");
        if (a.capacity < 0) throw std::invalid_argument("FlowNetwork: negative capacity");
        if (a.to == source) throw std::invalid_argument("FlowNetwork: in-arc at source");
        if (a.from == sink) throw std::invalid_argument("FlowNetwork: out-arc at sink");
    }
}

namespace {

struct Dinic {
    struct E {
        int to;
        long long cap;
        int rev;
        int orig = -1; // index into the input arc list, -1 for reverse arcs
    };
    std::vector<std::vector<E>> g;
    std::vector<int> level, iter;

    explicit Dinic(int n) : g(n), level(n), iter(n) {}

    void add_edge(int from, int to, long long cap, int orig) {
        g[from].push_back({to, cap, static_cast<int>(g[to].size()), orig});
        g[to].push_back({from, 0, static_cast<int>(g[from].size()) - 1, -1});
    }

    bool bfs(int s, int t) {
        std::fill(level.begin(), level.end(), -1);
        std::queue<int> q;
        level[s] = 0;
        q.push(s);
        while (!q.empty()) {
            int v = q.front();
            q.pop();
            for (const E &e : g[v]) {
                if (e.cap > 0 && level[e.to] < 0) {
                    level[e.to] = level[v] + 1;
                    q.push(e.to);
                }
            }
        }
        return level[t] >= 0;
    }

    long long dfs(int v, int t, long long f) {
        if (v == t) return f;
        for (int &i = iter[v]; i < static_cast<int>(g[v].size()); ++i) {
            E &e = g[v][i];
            if (e.cap > 0 && level[v] < level[e.to]) {
                long long d = dfs(e.to, t, std::min(f, e.cap));
                if (d > 0) {
                    e.cap -= d;
                    g[e.to][e.rev].cap += d;
                    return d;
                }
            }
        }
        return 0;
    }

    long long run(int s, int t) {
        long long flow = 0;
        while (bfs(s, t)) {
            std::fill(iter.begin(), iter.end(), 0);
            long long f;
            while ((f = dfs(s, t, std::numeric_limits<long long>::max())) > 0) flow += f;
        }
        return flow;
    }
};

} // namespace

MaxFlowResult max_flow(const FlowNetwork &net) {
    net.validate();
    Dinic dinic(net.node_count);
    for (std::size_t i = 0; i < net.arcs.size(); ++i)
        dinic.add_edge(net.arcs[i].from, net.arcs[i].to, net.arcs[i].capacity, static_cast<int>(i));

    MaxFlowResult res;
    res.value = dinic.run(net.source, net.sink);

    res.arc_flow.assign(net.arcs.size(), 0);
    for (int v = 0; v < net.node_count; ++v)
        for (const auto &e : dinic.g[v])
            if (e.orig >= 0) res.arc_flow[e.orig] = net.arcs[e.orig].capacity - e.cap;

    // residual reachability from the source certifies a min cut
    res.min_cut_side.assign(net.node_count, 0);
    std::queue<int> q;
    res.min_cut_side[net.source] = 1;
    q.push(net.source);
    while (!q.empty()) {
        int v = q.front();
        q.pop();
        for (const auto &e : dinic.g[v]) {
            if (e.cap > 0 && !res.min_cut_side[e.to]) {
                res.min_cut_side[e.to] = 1;
                q.push(e.to);
            }
        }
    }
    res.cut_capacity = 0;
    for (const FlowArc &a : net.arcs)
        if (res.min_cut_side[a.from] && !res.min_cut_side[a.to]) res.cut_capacity += a.capacity;
    return res;
}

// ---------------------------------------------------------------------------
// RMBG

void Rmbg::validate() const {
    if (x_size < 0 || y_size < 0 || z_size < 0)
        throw std::invalid_argument("Rmbg: negative part size");
    if (x_size - z_size < 0)
        throw std::invalid_argument("Rmbg: |X| < |Z| makes the robustness quantifier ill-posed");
    if (static_cast<int>(adj.size()) != x_size)
        throw std::invalid_argument("Rmbg: adjacency size != |X|");
    for (const auto &nb : adj) {
        int prev = -1;
        for (int v : nb) {
            if (v < 0 || v >= right_size()) throw std::invalid_argument("Rmbg: neighbour out of range");
            if (v <= prev) throw std::invalid_argument("Rmbg: adjacency not sorted/unique");
            prev = v;
        }
    }
}

int Rmbg::max_degree() const {
    std::vector<int> right_deg(right_size(), 0);
    int d = 0;
    for (const auto &nb : adj) {
        d = std::max(d, static_cast<int>(nb.size()));
        for (int v : nb) ++right_deg[v];
    }
    for (int v = 0; v < right_size(); ++v) d = std::max(d, right_deg[v]);
    return d;
}

std::string Rmbg::to_json() const {
    nlohmann::json j;
    if (x_size % 3 == 0 && y_size == z_size && y_size * 3 == x_size * 2)
        j["m"] = x_size / 3;
    else
        j["parts"] = {x_size, y_size, z_size};
    j["adj"] = adj;
    return j.dump();
}

Rmbg Rmbg::load_json(const std::string &text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error &e) {
        throw std::invalid_argument(std::string("rmbg: JSON parse error: ") + e.what());
    }
    Rmbg h;
    if (j.contains("m")) {
        int m = j["m"].get<int>();
        h.x_size = 3 * m;
        h.y_size = h.z_size = 2 * m;
    } else if (j.contains("parts")) {
        auto p = j["parts"].get<std::vector<int>>();
        if (p.size() != 3) throw std::invalid_argument("rmbg: 'parts' must have 3 entries");
        h.x_size = p[0];
        h.y_size = p[1];
        h.z_size = p[2];
    } else {
        throw std::invalid_argument("rmbg: expected field 'm' or 'parts'");
    }
    h.adj = j["adj"].get<std::vector<std::vector<int>>>();
    for (auto &nb : h.adj) std::sort(nb.begin(), nb.end());
    h.validate();
    return h;
}

namespace {

// maximum matching of X into the allowed right vertices, with Hall witness
RobustMatchResult match_into(const Rmbg &h, const std::vector<char> &right_allowed) {
    std::vector<std::vector<int>> adj(h.x_size);
    for (int x = 0; x < h.x_size; ++x)
        for (int v : h.adj[x])
            if (right_allowed[v]) adj[x].push_back(v);
    auto bm = bipartite_max_matching(h.x_size, h.right_size(), adj);
    RobustMatchResult res;
    if (bm.size == h.x_size) {
        res.found = true;
        res.match_x = bm.match_left;
        return res;
    }
    // Hall violator: X-vertices alternating-reachable from an unmatched one;
    // their joint neighbourhood is smaller than they are
    std::vector<char> reach_l(h.x_size, 0), reach_r(h.right_size(), 0);
    std::queue<int> q;
    for (int x = 0; x < h.x_size; ++x)
        if (bm.match_left[x] < 0) {
            reach_l[x] = 1;
            q.push(x);
        }
    while (!q.empty()) {
        int x = q.front();
        q.pop();
        for (int v : adj[x]) {
            if (!reach_r[v]) {
                reach_r[v] = 1;
                int w = bm.match_right[v];
                if (w >= 0 && !reach_l[w]) {
                    reach_l[w] = 1;
                    q.push(w);
                }
            }
        }
    }
    for (int x = 0; x < h.x_size; ++x)
        if (reach_l[x]) res.hall_violator.push_back(x);
    return res;
}

std::vector<char> allowed_mask(const Rmbg &h, const std::vector<int> &y_prime) {
    std::vector<char> mask(h.right_size(), 0);
    for (int v = h.y_size; v < h.right_size(); ++v) mask[v] = 1; // all of Z
    for (int y : y_prime) {
        if (y < 0 || y >= h.y_size) throw std::invalid_argument("robust_match: Y' id out of range");
        if (mask[y]) throw std::invalid_argument("robust_match: duplicate Y' id");
        mask[y] = 1;
    }
    return mask;
}

long long binomial_capped(long long n, long long k, long long cap) {
    if (k < 0 || k > n) return 0;
    k = std::min(k, n - k);
    long long r = 1;
    for (long long i = 1; i <= k; ++i) {
        r = r * (n - k + i) / i;
        if (r > cap) return cap + 1;
    }
    return r;
}

} // namespace

RobustMatchResult robust_match(const Rmbg &h, const std::vector<int> &y_prime) {
    h.validate();
    if (static_cast<int>(y_prime.size()) != h.deficiency())
        throw std::invalid_argument("robust_match: |Y'| must equal |X| - |Z|");
    return match_into(h, allowed_mask(h, y_prime));
}

RobustCheckResult is_robustly_matchable(const Rmbg &h, const RobustMode &mode) {
    h.validate();
    RobustCheckResult res;
    const int k = h.deficiency();

    if (mode.exhaustive) {
        if (binomial_capped(h.y_size, k, 1000000) > 1000000)
            throw std::runtime_error(
                "is_robustly_matchable: exhaustive budget exceeded (C(|Y|,|X|-|Z|) > 10^6); "
                "switch to sampled mode");
        std::vector<int> y_prime(k);
        for (int i = 0; i < k; ++i) y_prime[i] = i;
        while (true) {
            ++res.subsets_checked;
            auto m = robust_match(h, y_prime);
            if (!m.found) {
                res.verdict = RobustVerdict::refuted;
                res.failing_y_prime = y_prime;
                return res;
            }
            // next k-subset of [0, y_size)
            int i = k - 1;
            while (i >= 0 && y_prime[i] == h.y_size - k + i) --i;
            if (i < 0) break;
            ++y_prime[i];
            for (int j = i + 1; j < k; ++j) y_prime[j] = y_prime[j - 1] + 1;
        }
        res.verdict = RobustVerdict::proven;
        return res;
    }

    std::mt19937_64 rng(mode.seed ^ 0xa02bdbf7bb3c0a7ULL);
    std::vector<int> ids(h.y_size);
    for (int i = 0; i < h.y_size; ++i) ids[i] = i;
    for (long long draw = 0; draw < mode.sample_count; ++draw) {
        shuffle_vec(ids, rng);
        std::vector<int> y_prime(ids.begin(), ids.begin() + k);
        ++res.subsets_checked;
        auto m = robust_match(h, y_prime);
        if (!m.found) {
            res.verdict = RobustVerdict::refuted;
            res.failing_y_prime = y_prime;
            return res;
        }
    }
    res.verdict = RobustVerdict::sampled_pass;
    return res;
}

Rmbg search_rmbg(int m, int max_degree, std::uint64_t seed, int budget) {
    if (m < 1) throw std::invalid_argument("search_rmbg: m must be >= 1");
    if (max_degree < 1) throw std::invalid_argument("search_rmbg: max_degree must be >= 1");

    std::mt19937_64 rng(seed ^ 0x6a09e667f3bcc909ULL);
    const int x_size = 3 * m, y_size = 2 * m, z_size = 2 * m;
    const int right = y_size + z_size;

    for (int attempt = 0; attempt < budget; ++attempt) {
        // X-degree target ramps up across attempts, capped by both sides
        int want = std::min({max_degree, right, 3 + attempt / 4 + static_cast<int>(rand_below(rng, 3))});
        Rmbg h;
        h.x_size = x_size;
        h.y_size = y_size;
        h.z_size = z_size;
        h.adj.assign(x_size, {});
        std::vector<int> right_deg(right, 0);
        std::vector<int> order(right);
        for (int i = 0; i < right; ++i) order[i] = i;
        bool ok = true;
        for (int x = 0; x < x_size && ok; ++x) {
            shuffle_vec(order, rng);
            // low-degree right vertices first keeps the candidate near-regular
            std::stable_sort(order.begin(), order.end(),
                             [&](int a, int b) { return right_deg[a] < right_deg[b]; });
            for (int v : order) {
                if (static_cast<int>(h.adj[x].size()) >= want) break;
                if (right_deg[v] >= max_degree) continue;
                h.adj[x].push_back(v);
                ++right_deg[v];
            }
            if (static_cast<int>(h.adj[x].size()) < std::min(want, 3)) ok = false;
            std::sort(h.adj[x].begin(), h.adj[x].end());
        }
        if (!ok) continue;

        bool feasible_exhaustive = binomial_capped(y_size, m, 1000000) <= 1000000;
        auto check = is_robustly_matchable(
            h, feasible_exhaustive ? RobustMode::Exhaustive() : RobustMode::Sampled(10000, seed + attempt));
        if (check.verdict == RobustVerdict::proven || check.verdict == RobustVerdict::sampled_pass)
            return h;
    }
    throw std::runtime_error("search_rmbg: budget exhausted without a verified candidate (m=" +
                             std::to_string(m) + ", max_degree=" + std::to_string(max_degree) + ")");
}

Rmbg regularize(const Rmbg &h, int d) {
    h.validate();
    if (h.x_size % 3 != 0 || h.y_size != h.z_size || 2 * h.x_size != 3 * h.y_size)
        throw std::invalid_argument("regularize: parts must be (3m, 2m, 2m)");
    const int m = h.x_size / 3;
    const int right = h.right_size();
    if (4 * d > right || 3 * d > h.x_size)
        throw std::invalid_argument("regularize: d too large for the parts (need 4d <= |YuZ|, 3d <= |X|)");

    std::vector<int> right_deg(right, 0);
    for (const auto &nb : h.adj)
        for (int v : nb) ++right_deg[v];
    for (int x = 0; x < h.x_size; ++x)
        if (static_cast<int>(h.adj[x].size()) > 4 * d)
            throw std::invalid_argument("regularize: some d_H(x) > 4d (negative capacity)");
    for (int v = 0; v < right; ++v)
        if (right_deg[v] > 3 * d)
            throw std::invalid_argument("regularize: some d_H(y) > 3d (negative capacity)");

    // nodes: 0 = source, 1..x_size = X, then Y u Z, last = sink.
    // sx capacity 4d - d_H(x), yt capacity 3d - d_H(y), non-edges capacity 1.
    FlowNetwork net;
    net.node_count = h.x_size + right + 2;
    net.source = 0;
    net.sink = net.node_count - 1;
    auto xn = [&](int x) { return 1 + x; };
    auto yn = [&](int v) { return 1 + h.x_size + v; };
    for (int x = 0; x < h.x_size; ++x)
        net.add_arc(net.source, xn(x), 4 * d - static_cast<int>(h.adj[x].size()));
    std::vector<std::vector<char>> present(h.x_size, std::vector<char>(right, 0));
    for (int x = 0; x < h.x_size; ++x)
        for (int v : h.adj[x]) present[x][v] = 1;
    for (int x = 0; x < h.x_size; ++x)
        for (int v = 0; v < right; ++v)
            if (!present[x][v]) net.add_arc(xn(x), yn(v), 1);
    for (int v = 0; v < right; ++v) net.add_arc(yn(v), net.sink, 3 * d - right_deg[v]);

    long long e_h = 0;
    for (const auto &nb : h.adj) e_h += static_cast<long long>(nb.size());
    const long long target = 12LL * d * m - e_h;

    auto flow = max_flow(net);
    if (flow.value != target)
        throw std::runtime_error("regularize: infeasible (max flow " + std::to_string(flow.value) +
                                 " < required " + std::to_string(target) + ")");

    Rmbg out = h;
    for (std::size_t i = 0; i < net.arcs.size(); ++i) {
        const FlowArc &a = net.arcs[i];
        if (a.from != net.source && a.to != net.sink && flow.arc_flow[i] == 1)
            out.adj[a.from - 1].push_back(a.to - 1 - h.x_size);
    }
    for (auto &nb : out.adj) std::sort(nb.begin(), nb.end());
    out.validate();
    return out;
}

} // namespace rainbow
