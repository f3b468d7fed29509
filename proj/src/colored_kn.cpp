#include "rainbow/colored_kn.hpp"
#include "rainbow/rng.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <set>
#include <stdexcept>

namespace rainbow {

Edge edge_from_index(int n, long long id) {
    // row u holds n-1-u entries; walk rows (id decode is not on hot paths)
    int u = 0;
    long long row = n - 1;
    while (id >= row) {
        id -= row;
        --row;
        ++u;
    }
    return Edge(u, u + 1 + static_cast<int>(id));
}

void EdgeSet::validate(int n) const {
    std::set<Edge> seen;
    for (const Edge &e : edges) {
        if (e.u < 0 || e.v >= n || e.u == e.v)
            throw std::invalid_argument("EdgeSet: endpoint out of range: {" + std::to_string(e.u) +
                                        "," + std::to_string(e.v) + "}");
        if (!seen.insert(e).second)
            throw std::invalid_argument("EdgeSet: duplicate edge {" + std::to_string(e.u) + "," +
                                        std::to_string(e.v) + "}");
    }
}

EdgeColouredKn EdgeColouredKn::from_colours(int n, std::vector<int> colours) {
    if (n < 2 || n % 2 != 0) throw std::invalid_argument("EdgeColouredKn: n must be even and >= 2");
    if (static_cast<long long>(colours.size()) != edge_count(n))
        throw std::invalid_argument("EdgeColouredKn: colour table has wrong size");
    EdgeColouredKn g;
    g.n_ = n;
    g.colours_ = std::move(colours);
    return g;
}

std::vector<Edge> EdgeColouredKn::colour_class(int c) const {
    std::vector<Edge> out;
    for (int u = 0; u < n_; ++u)
        for (int v = u + 1; v < n_; ++v)
            if (colour(u, v) == c) out.emplace_back(u, v);
    return out;
}

std::string EdgeColouredKn::to_json() const {
    nlohmann::json j;
    j["n"] = n_;
    j["colours"] = colours_;
    return j.dump();
}

EdgeColouredKn EdgeColouredKn::load_json(const std::string &text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error &e) {
        throw std::invalid_argument(std::string("instance: JSON parse error: ") + e.what());
    }
    if (!j.is_object() || !j.contains("n") || !j.contains("colours"))
        throw std::invalid_argument("instance: expected object with fields 'n' and 'colours'");
    if (!j["n"].is_number_integer()) throw std::invalid_argument("instance: 'n' must be an integer");
    int n = j["n"].get<int>();
    if (n < 2 || n % 2 != 0)
        throw std::invalid_argument("instance: 'n' = " + std::to_string(n) + " is not even and >= 2");
    if (!j["colours"].is_array())
        throw std::invalid_argument("instance: 'colours' must be an array");
    std::vector<int> colours;
    colours.reserve(j["colours"].size());
    for (std::size_t k = 0; k < j["colours"].size(); ++k) {
        const auto &el = j["colours"][k];
        if (!el.is_number_integer())
            throw std::invalid_argument("instance: colours[" + std::to_string(k) +
                                        "] is not an integer");
        colours.push_back(el.get<int>());
    }
    if (static_cast<long long>(colours.size()) != edge_count(n))
        throw std::invalid_argument("instance: 'colours' has length " +
                                    std::to_string(colours.size()) + ", expected " +
                                    std::to_string(edge_count(n)));
    EdgeColouredKn g = from_colours(n, std::move(colours));
    auto violations = verify_factorization(g);
    if (!violations.empty())
        throw std::invalid_argument("instance: not a 1-factorization: " + violations.front().detail);
    return g;
}

EdgeColouredKn EdgeColouredKn::load_json_raw(const std::string &text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error &e) {
        throw std::invalid_argument(std::string("instance: JSON parse error: ") + e.what());
    }
    if (!j.is_object() || !j.contains("n") || !j.contains("colours"))
        throw std::invalid_argument("instance: expected object with fields 'n' and 'colours'");
    int n = j["n"].get<int>();
    if (n < 2 || n % 2 != 0)
        throw std::invalid_argument("instance: 'n' = " + std::to_string(n) + " is not even and >= 2");
    std::vector<int> colours = j["colours"].get<std::vector<int>>();
    if (static_cast<long long>(colours.size()) != edge_count(n))
        throw std::invalid_argument("instance: 'colours' has length " +
                                    std::to_string(colours.size()) + ", expected " +
                                    std::to_string(edge_count(n)));
    return from_colours(n, std::move(colours));
}

EdgeColouredKn generate_circle_factorization(int n) {
    if (n < 2 || n % 2 != 0) throw std::invalid_argument("circle factorization: n must be even >= 2");
    std::vector<int> colours(edge_count(n), -1);
    if (n == 2) {
        colours[0] = 0;
        return EdgeColouredKn::from_colours(n, std::move(colours));
    }
    const int m = n - 1; // vertices 0..m-1 on the circle, vertex n-1 in the centre
    for (int r = 0; r < m; ++r) {
        colours[edge_index(n, r, n - 1)] = r;
        for (int k = 1; k <= (n - 2) / 2; ++k) {
            int a = (r + k) % m;
            int b = ((r - k) % m + m) % m;
            colours[edge_index(n, a, b)] = r;
        }
    }
    return EdgeColouredKn::from_colours(n, std::move(colours));
}

EdgeColouredKn generate_random_factorization(int n, std::uint64_t seed) {
    if (n < 2 || n % 2 != 0)
        throw std::invalid_argument("random factorization: n must be even >= 2");
    const int colours_n = n - 1;
    const long long m = edge_count(n);
    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);

    // edges ordered by vertex pair; colour chosen per edge by backtracking over
    // a per-edge random colour order. vertex_mask[v] has bit c set when some
    // edge at v already uses colour c.
    std::vector<Edge> edges;
    edges.reserve(m);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) edges.emplace_back(u, v);

    for (int attempt = 0; attempt < 1000; ++attempt) {
        std::vector<char> used(static_cast<std::size_t>(n) * colours_n, 0);
        auto is_used = [&](int v, int c) { return used[static_cast<std::size_t>(v) * colours_n + c]; };
        auto set_used = [&](int v, int c, char x) {
            used[static_cast<std::size_t>(v) * colours_n + c] = x;
        };
        std::vector<int> assigned(m, -1);
        std::vector<std::vector<int>> order(m);
        std::vector<int> pos(m, 0);
        long long idx = 0;
        long long steps = 0;
        const long long step_budget = 200000 + 2000 * m;
        bool failed = false;
        while (idx < m) {
            if (++steps > step_budget) {
                failed = true;
                break;
            }
            Edge e = edges[idx];
            if (pos[idx] == 0) {
                order[idx].clear();
                for (int c = 0; c < colours_n; ++c)
                    if (!is_used(e.u, c) && !is_used(e.v, c)) order[idx].push_back(c);
                shuffle_vec(order[idx], rng);
            }
            if (pos[idx] < static_cast<int>(order[idx].size())) {
                int c = order[idx][pos[idx]++];
                assigned[idx] = c;
                set_used(e.u, c, 1);
                set_used(e.v, c, 1);
                ++idx;
            } else {
                pos[idx] = 0;
                if (idx == 0) {
                    failed = true;
                    break;
                }
                --idx;
                Edge prev = edges[idx];
                int c = assigned[idx];
                set_used(prev.u, c, 0);
                set_used(prev.v, c, 0);
                assigned[idx] = -1;
            }
        }
        if (!failed && idx == m) {
            auto g = EdgeColouredKn::from_colours(n, std::move(assigned));
            if (verify_factorization(g).empty()) return g;
            throw std::logic_error("random factorization: internal check failed");
        }
    }
    throw std::runtime_error("random factorization: retry budget (1000) exhausted for n=" +
                             std::to_string(n));
}

std::vector<FactorizationViolation> verify_factorization(const EdgeColouredKn &g) {
    std::vector<FactorizationViolation> out;
    const int n = g.n();
    const int colours_n = n - 1;
    for (int u = 0; u < n; ++u) {
        for (int v = u + 1; v < n; ++v) {
            int c = g.colour(u, v);
            if (c < 0 || c >= colours_n) {
                out.push_back({"colour-range", c, 1,
                               "edge {" + std::to_string(u) + "," + std::to_string(v) +
                                   "} has colour " + std::to_string(c) + " outside [0," +
                                   std::to_string(colours_n - 1) + "]"});
            }
        }
    }
    if (!out.empty()) return out;

    // per colour: every vertex covered exactly once
    std::vector<std::vector<int>> degree(colours_n, std::vector<int>(n, 0));
    std::vector<long long> class_size(colours_n, 0);
    for (int u = 0; u < n; ++u) {
        for (int v = u + 1; v < n; ++v) {
            int c = g.colour(u, v);
            ++degree[c][u];
            ++degree[c][v];
            ++class_size[c];
        }
    }
    for (int c = 0; c < colours_n; ++c) {
        for (int v = 0; v < n; ++v) {
            if (degree[c][v] != 1) {
                out.push_back({"colour-class-degree", v, degree[c][v],
                               "colour " + std::to_string(c) + " covers vertex " +
                                   std::to_string(v) + " " + std::to_string(degree[c][v]) +
                                   " times"});
            }
        }
        if (class_size[c] != n / 2) {
            out.push_back({"colour-class-size", c, static_cast<int>(class_size[c]),
                           "colour " + std::to_string(c) + " has " + std::to_string(class_size[c]) +
                               " edges, expected " + std::to_string(n / 2)});
        }
    }
    return out;
}

bool is_rainbow(const EdgeColouredKn &g, const EdgeSet &s) {
    std::vector<char> seen(g.colour_count(), 0);
    for (const Edge &e : s.edges) {
        int c = g.colour(e);
        if (seen[c]) return false;
        seen[c] = 1;
    }
    return true;
}

BoundednessReport check_bounded(const EdgeColouredKn &g, const EdgeSet &leftover,
                                const std::vector<std::vector<int>> &vertex_sets,
                                const std::vector<std::vector<int>> &colour_sets, long long m) {
    if (vertex_sets.size() != colour_sets.size())
        throw std::invalid_argument("check_bounded: |Vs| != |Cs|");
    BoundednessReport rep;
    rep.m = m;
    const int n = g.n();
    const int colours_n = g.colour_count();
    const int t = static_cast<int>(vertex_sets.size());

    // (B1) set sizes
    for (int i = 0; i < t; ++i) {
        if (static_cast<long long>(vertex_sets[i].size()) > m)
            rep.violations.push_back({"set-size", i, static_cast<long long>(vertex_sets[i].size())});
        if (static_cast<long long>(colour_sets[i].size()) > m)
            rep.violations.push_back({"set-size", i, static_cast<long long>(colour_sets[i].size())});
    }
    // (B2) vertex incidences and degrees
    std::vector<long long> vertex_inc(n, 0), vertex_deg(n, 0);
    for (int i = 0; i < t; ++i)
        for (int v : vertex_sets[i]) ++vertex_inc.at(v);
    for (const Edge &e : leftover.edges) {
        ++vertex_deg.at(e.u);
        ++vertex_deg.at(e.v);
    }
    for (int v = 0; v < n; ++v) {
        if (vertex_inc[v] > m) rep.violations.push_back({"vertex-incidence", v, vertex_inc[v]});
        if (vertex_deg[v] > m) rep.violations.push_back({"vertex-degree", v, vertex_deg[v]});
    }
    // (B3) colour incidences and multiplicities
    std::vector<long long> colour_inc(colours_n, 0), colour_mult(colours_n, 0);
    for (int i = 0; i < t; ++i)
        for (int c : colour_sets[i]) ++colour_inc.at(c);
    for (const Edge &e : leftover.edges) ++colour_mult.at(g.colour(e));
    for (int c = 0; c < colours_n; ++c) {
        if (colour_inc[c] > m) rep.violations.push_back({"colour-incidence", c, colour_inc[c]});
        if (colour_mult[c] > m) rep.violations.push_back({"colour-multiplicity", c, colour_mult[c]});
    }
    return rep;
}

namespace {

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(n) {
        for (int i = 0; i < n; ++i) parent[i] = i;
    }
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    bool unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        parent[b] = a;
        return true;
    }
};

} // namespace

DecompositionCheck verify_decomposition(const EdgeColouredKn &g, const std::vector<EdgeSet> &parts) {
    DecompositionCheck res;
    const int n = g.n();
    std::vector<char> used(edge_count(n), 0);
    // overlap scan first so a repeated edge is always reported as such
    for (std::size_t p = 0; p < parts.size(); ++p) {
        for (const Edge &e : parts[p].edges) {
            if (e.u < 0 || e.v >= n || e.u == e.v) {
                res.diagnostics.push_back("part " + std::to_string(p) + ": edge out of range");
                return res;
            }
            long long id = edge_index(n, e.u, e.v);
            if (used[id]) {
                res.diagnostics.push_back("overlap: edge {" + std::to_string(e.u) + "," +
                                          std::to_string(e.v) + "} appears twice");
                return res;
            }
            used[id] = 1;
        }
    }
    for (std::size_t p = 0; p < parts.size(); ++p) {
        const EdgeSet &part = parts[p];
        if (static_cast<int>(part.edges.size()) != n - 1) {
            res.diagnostics.push_back("part " + std::to_string(p) + ": has " +
                                      std::to_string(part.edges.size()) + " edges, a spanning tree of K_" +
                                      std::to_string(n) + " needs " + std::to_string(n - 1));
            return res;
        }
        UnionFind uf(n);
        for (const Edge &e : part.edges) {
            if (!uf.unite(e.u, e.v)) {
                res.diagnostics.push_back("part " + std::to_string(p) + ": contains a cycle");
                return res;
            }
        }
        // n-1 acyclic edges on n vertices => spanning tree
        if (!is_rainbow(g, part)) {
            res.diagnostics.push_back("part " + std::to_string(p) + ": not rainbow");
            return res;
        }
    }
    for (long long id = 0; id < edge_count(n); ++id) {
        if (!used[id]) {
            Edge e = edge_from_index(n, id);
            res.diagnostics.push_back("edge {" + std::to_string(e.u) + "," + std::to_string(e.v) +
                                      "} not covered");
            return res;
        }
    }
    res.ok = true;
    return res;
}

std::vector<int> random_split(std::size_t universe_size, const std::vector<double> &weights,
                              std::uint64_t seed) {
    double sum = 0;
    for (double w : weights) {
        if (w < 0) throw std::invalid_argument("random_split: negative weight");
        sum += w;
    }
    if (sum > 1.0 + 1e-9) throw std::invalid_argument("random_split: weights sum to more than 1");
    const int remainder_cell = static_cast<int>(weights.size());
    std::mt19937_64 rng(seed ^ 0xd1b54a32d192ed03ULL);
    std::vector<int> cell(universe_size, remainder_cell);
    for (std::size_t x = 0; x < universe_size; ++x) {
        double u = rand_unit(rng);
        double acc = 0;
        for (std::size_t i = 0; i < weights.size(); ++i) {
            acc += weights[i];
            if (u < acc) {
                cell[x] = static_cast<int>(i);
                break;
            }
        }
        // sum within 1e-9 of 1: round the sliver into the last cell
        if (cell[x] == remainder_cell && sum >= 1.0 - 1e-9 && !weights.empty())
            cell[x] = remainder_cell - 1;
    }
    return cell;
}

} // namespace rainbow
