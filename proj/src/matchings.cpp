#include "rainbow/matchings.hpp"
#include "rainbow/rmbg.hpp"
#include "rainbow/rng.hpp"

#include <algorithm>
#include <limits>
#include <cmath>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>

namespace rainbow {

void ColouredBipartite::validate() const {
    if (a_ids.size() != b_ids.size())
        throw std::invalid_argument("ColouredBipartite: parts must be balanced");
    std::set<std::pair<int, int>> seen;
    for (const auto &e : edges) {
        if (e.a < 0 || e.a >= n() || e.b < 0 || e.b >= n())
            throw std::invalid_argument("ColouredBipartite: edge endpoint out of range");
        if (e.colour < 0) throw std::invalid_argument("ColouredBipartite: negative colour");
        if (!seen.insert({e.a, e.b}).second)
            throw std::invalid_argument("ColouredBipartite: duplicate edge");
    }
}

long long ColouredBipartite::max_colour_multiplicity() const {
    std::map<int, long long> cnt;
    long long mx = 0;
    for (const auto &e : edges) mx = std::max(mx, ++cnt[e.colour]);
    return mx;
}

QuasirandomCheck is_quasirandom(const ColouredBipartite &g, double eps, double d) {
    g.validate();
    const int n = g.n();
    QuasirandomCheck out;
    if (n == 0) {
        out.ok = true;
        return out;
    }
    // adjacency bitsets per side
    const int words = (n + 63) / 64;
    std::vector<std::uint64_t> a_adj(static_cast<std::size_t>(n) * words, 0);
    std::vector<std::uint64_t> b_adj(static_cast<std::size_t>(n) * words, 0);
    std::vector<long long> a_deg(n, 0), b_deg(n, 0);
    for (const auto &e : g.edges) {
        a_adj[static_cast<std::size_t>(e.a) * words + e.b / 64] |= 1ULL << (e.b % 64);
        b_adj[static_cast<std::size_t>(e.b) * words + e.a / 64] |= 1ULL << (e.a % 64);
        ++a_deg[e.a];
        ++b_deg[e.b];
    }
    const double deg_target = d * n;
    const double codeg_target = d * d * n;

    auto consider_degree = [&](int v, long long deg, bool a_side) {
        double ratio = deg_target > 0 ? std::abs(deg / deg_target - 1.0)
                                      : (deg == 0 ? 0.0 : 1e18);
        if (ratio > out.worst_degree_ratio) {
            out.worst_degree_ratio = ratio;
            out.worst_degree_vertex = a_side ? v : n + v;
        }
    };
    for (int v = 0; v < n; ++v) {
        consider_degree(v, a_deg[v], true);
        consider_degree(v, b_deg[v], false);
    }
    auto scan_codegrees = [&](const std::vector<std::uint64_t> &adj) {
        for (int u = 0; u < n; ++u) {
            for (int v = u + 1; v < n; ++v) {
                long long common = 0;
                const std::uint64_t *pu = &adj[static_cast<std::size_t>(u) * words];
                const std::uint64_t *pv = &adj[static_cast<std::size_t>(v) * words];
                for (int w = 0; w < words; ++w) common += __builtin_popcountll(pu[w] & pv[w]);
                double ratio = codeg_target > 0 ? std::abs(common / codeg_target - 1.0)
                                                : (common == 0 ? 0.0 : 1e18);
                if (ratio > out.worst_codegree_ratio) {
                    out.worst_codegree_ratio = ratio;
                    out.worst_codegree_pair = {u, v};
                }
            }
        }
    };
    scan_codegrees(a_adj);
    scan_codegrees(b_adj);
    out.ok = out.worst_degree_ratio <= eps && out.worst_codegree_ratio <= eps;
    return out;
}

namespace {

struct ColourMatrix {
    int n;
    std::vector<int> cell; // colour or -1
    explicit ColourMatrix(const ColouredBipartite &g) : n(g.n()), cell(static_cast<std::size_t>(n) * n, -1) {
        for (const auto &e : g.edges) cell[static_cast<std::size_t>(e.a) * n + e.b] = e.colour;
    }
    int colour(int a, int b) const { return cell[static_cast<std::size_t>(a) * n + b]; }
    bool has(int a, int b) const { return colour(a, b) >= 0; }
};

long long conflict_count(const std::vector<long long> &colour_cnt) {
    long long c = 0;
    for (long long k : colour_cnt)
        if (k > 1) c += k - 1;
    return c;
}

} // namespace

RainbowPmResult exhaustive_rainbow_pm(const ColouredBipartite &g) {
    g.validate();
    const int n = g.n();
    RainbowPmResult res;
    ColourMatrix cm(g);
    int max_colour = 0;
    for (const auto &e : g.edges) max_colour = std::max(max_colour, e.colour);
    std::vector<char> used_b(n, 0), used_c(max_colour + 1, 0);
    std::vector<int> match(n, -1);
    std::function<bool(int)> rec = [&](int a) -> bool {
        if (a == n) return true;
        for (int b = 0; b < n; ++b) {
            if (used_b[b] || !cm.has(a, b)) continue;
            int c = cm.colour(a, b);
            if (used_c[c]) continue;
            used_b[b] = 1;
            used_c[c] = 1;
            match[a] = b;
            if (rec(a + 1)) return true;
            used_b[b] = 0;
            used_c[c] = 0;
            match[a] = -1;
        }
        return false;
    };
    if (rec(0)) {
        res.found = true;
        res.matching = match;
    } else {
        res.reason = "exhaustive search: no rainbow perfect matching exists";
    }
    return res;
}

RainbowPmResult rainbow_perfect_matching(const ColouredBipartite &g, long long colour_cap,
                                         long long switch_budget, std::uint64_t seed,
                                         bool allow_exhaustive_fallback) {
    g.validate();
    if (g.max_colour_multiplicity() > colour_cap)
        throw std::invalid_argument("rainbow_perfect_matching: a colour exceeds the cap of " +
                                    std::to_string(colour_cap));
    const int n = g.n();
    RainbowPmResult res;
    if (n == 0) {
        res.found = true;
        return res;
    }

    ColourMatrix cm(g);
    int max_colour = 0;
    for (const auto &e : g.edges) max_colour = std::max(max_colour, e.colour);

    std::mt19937_64 rng(seed ^ 0xc0ac29b7c97c50ddULL);

    std::vector<std::vector<int>> adj(n);
    for (const auto &e : g.edges) adj[e.a].push_back(e.b);

    auto initial_pm = [&]() -> std::vector<int> {
        // shuffled copies so each restart starts from a different matching
        std::vector<std::vector<int>> shuffled = adj;
        for (auto &nb : shuffled) shuffle_vec(nb, rng);
        auto bm = bipartite_max_matching(n, n, shuffled);
        if (bm.size < n) return {};
        return bm.match_left;
    };

    const long long stall_limit = std::max<long long>(50, 40LL * n);
    long long switches = 0;

    while (switches < switch_budget) {
        std::vector<int> match = initial_pm();
        if (match.empty()) {
            res.reason = "no perfect matching exists";
            res.switches_used = switches;
            return res;
        }
        ++res.restarts;
        std::vector<long long> colour_cnt(max_colour + 1, 0);
        for (int a = 0; a < n; ++a) ++colour_cnt[cm.colour(a, match[a])];
        long long conflicts = conflict_count(colour_cnt);
        res.conflict_trace.clear();
        res.conflict_trace.push_back(conflicts);

        // sequential counter updates handle colour aliasing (c1 == c2 etc.)
        auto remove_colour = [&](int c) {
            if (colour_cnt[c] > 1) --conflicts;
            --colour_cnt[c];
        };
        auto add_colour = [&](int c) {
            if (colour_cnt[c] >= 1) ++conflicts;
            ++colour_cnt[c];
        };

        long long since_improvement = 0;
        while (conflicts > 0 && switches < switch_budget && since_improvement < stall_limit) {
            ++switches;
            ++since_improvement;
            // a uniformly random conflicted matched edge
            std::vector<int> conflicted;
            for (int a = 0; a < n; ++a)
                if (colour_cnt[cm.colour(a, match[a])] > 1) conflicted.push_back(a);
            int a1 = conflicted[rand_below(rng, conflicted.size())];
            int a2 = static_cast<int>(rand_below(rng, n));
            if (a2 == a1) continue;
            int b1 = match[a1], b2 = match[a2];
            if (!cm.has(a1, b2) || !cm.has(a2, b1)) continue;
            int c1 = cm.colour(a1, b1), c2 = cm.colour(a2, b2);
            int d1 = cm.colour(a1, b2), d2 = cm.colour(a2, b1);
            long long before = conflicts;
            remove_colour(c1);
            remove_colour(c2);
            add_colour(d1);
            add_colour(d2);
            if (conflicts > before) {
                remove_colour(d2);
                remove_colour(d1);
                add_colour(c2);
                add_colour(c1);
                continue;
            }
            match[a1] = b2;
            match[a2] = b1;
            if (conflicts < before) since_improvement = 0;
            res.conflict_trace.push_back(conflicts);
        }
        if (conflicts == 0) {
            res.found = true;
            res.matching = match;
            res.switches_used = switches;
            return res;
        }
    }

    if (allow_exhaustive_fallback && n <= 8) {
        auto ex = exhaustive_rainbow_pm(g);
        ex.switches_used = switches;
        ex.restarts = res.restarts;
        if (!ex.found) ex.reason = "exhaustive fallback: no rainbow perfect matching exists";
        return ex;
    }
    res.switches_used = switches;
    res.reason = "switch budget exhausted (existence not disproved)";
    return res;
}

PreconditionReport check_disjoint_pm_preconditions(const std::vector<ColouredBipartite> &tasks,
                                                   double mu, int universe_size) {
    PreconditionReport rep;
    const double n = universe_size;
    const int t = static_cast<int>(tasks.size());
    std::vector<std::set<int>> universes(t);
    for (int i = 0; i < t; ++i) {
        tasks[i].validate();
        for (int gid : tasks[i].a_ids) universes[i].insert(gid);
        for (int gid : tasks[i].b_ids) universes[i].insert(gid);
        if (static_cast<double>(universes[i].size()) < mu * n)
            rep.violations.push_back("task " + std::to_string(i) + ": |U_i| = " +
                                     std::to_string(universes[i].size()) + " < mu*n");
        std::map<int, long long> col;
        for (const auto &e : tasks[i].edges) ++col[e.colour];
        for (const auto &[c, k] : col)
            if (static_cast<double>(k) > 2 * mu * mu * n)
                rep.violations.push_back("task " + std::to_string(i) + ": colour " +
                                         std::to_string(c) + " appears " + std::to_string(k) +
                                         " > 2 mu^2 n times");
    }
    for (int i = 0; i < t; ++i)
        for (int j = i + 1; j < t; ++j) {
            long long common = 0;
            for (int gid : universes[i]) common += universes[j].count(gid);
            if (static_cast<double>(common) > 5 * mu * mu * n)
                rep.violations.push_back("tasks " + std::to_string(i) + "," + std::to_string(j) +
                                         ": |U_i n U_j| = " + std::to_string(common) +
                                         " > 5 mu^2 n");
        }
    std::map<int, int> membership;
    for (int i = 0; i < t; ++i)
        for (int gid : universes[i]) ++membership[gid];
    for (const auto &[gid, k] : membership)
        if (static_cast<double>(k) > 3 * mu * t)
            rep.violations.push_back("vertex " + std::to_string(gid) + " belongs to " +
                                     std::to_string(k) + " > 3 mu t tasks");
    rep.ok = rep.violations.empty();
    return rep;
}

DisjointPmTaskResult greedy_disjoint_rainbow_pms(const std::vector<ColouredBipartite> &tasks,
                                                 double mu, int universe_size, long long budget_r,
                                                 std::uint64_t seed) {
    auto pre = check_disjoint_pm_preconditions(tasks, mu, universe_size);
    if (!pre.ok) {
        std::string msg = "greedy_disjoint_rainbow_pms: preconditions violated:";
        for (const auto &v : pre.violations) msg += "\n  " + v;
        throw std::invalid_argument(msg);
    }
    const int t = static_cast<int>(tasks.size());
    const double n = universe_size;
    const long long r_full = static_cast<long long>(std::ceil(105.0 * std::pow(mu, 1.5) * n));
    const long long r = std::max<long long>(1, std::min(r_full, budget_r));
    const double busy_threshold = std::pow(mu, 1.5) * n;

    DisjointPmTaskResult out;
    out.matchings.assign(t, {});
    std::set<std::pair<int, int>> used; // global vertex pairs, order normalized

    std::mt19937_64 rng(seed ^ 0x3f84d5b5b5470917ULL);

    for (int s = 0; s < t; ++s) {
        const auto &g = tasks[s];
        // residual max degree of the used-edge graph inside U_s
        long long max_deg = 0;
        {
            std::set<int> u_s(g.a_ids.begin(), g.a_ids.end());
            u_s.insert(g.b_ids.begin(), g.b_ids.end());
            std::map<int, long long> deg;
            for (const auto &e : used) {
                if (u_s.count(e.first) && u_s.count(e.second)) {
                    ++deg[e.first];
                    ++deg[e.second];
                }
            }
            for (const auto &[v, dv] : deg) max_deg = std::max(max_deg, dv);
        }
        if (static_cast<double>(max_deg) > busy_threshold) {
            out.skipped.push_back(s);
            out.completed_prefix = s + 1;
            continue;
        }

        ColouredBipartite residual = g;
        residual.edges.clear();
        for (const auto &e : g.edges) {
            int ga = g.a_ids[e.a], gb = g.b_ids[e.b];
            if (!used.count({std::min(ga, gb), std::max(ga, gb)})) residual.edges.push_back(e);
        }

        // up to r edge-disjoint rainbow PM candidates of the residual graph
        std::vector<std::vector<int>> candidates;
        ColouredBipartite work = residual;
        for (long long j = 0; j < r; ++j) {
            RainbowPmResult pm;
            try {
                pm = rainbow_perfect_matching(work, std::numeric_limits<long long>::max(),
                                              20000 + 200LL * g.n(), rand_u64(rng));
            } catch (const std::invalid_argument &) {
                break;
            }
            if (!pm.found) break;
            candidates.push_back(pm.matching);
            std::set<std::pair<int, int>> cand_edges;
            for (int a = 0; a < g.n(); ++a) cand_edges.insert({a, pm.matching[a]});
            ColouredBipartite next = work;
            next.edges.clear();
            for (const auto &e : work.edges)
                if (!cand_edges.count({e.a, e.b})) next.edges.push_back(e);
            work = std::move(next);
        }
        if (candidates.empty()) {
            out.failure = "task " + std::to_string(s) + ": no rainbow PM candidate in the residual graph";
            out.completed_prefix = s;
            return out;
        }
        const auto &pick = candidates[rand_below(rng, candidates.size())];
        ColourMatrix cm(residual);
        for (int a = 0; a < g.n(); ++a) {
            int b = pick[a];
            int ga = g.a_ids[a], gb = g.b_ids[b];
            used.insert({std::min(ga, gb), std::max(ga, gb)});
            out.matchings[s].push_back({ga, gb, cm.colour(a, b)});
        }
        out.completed_prefix = s + 1;
    }
    out.ok = true;
    return out;
}

} // namespace rainbow
