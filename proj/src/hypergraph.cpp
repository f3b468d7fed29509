#include "rainbow/hypergraph.hpp"
#include "rainbow/rng.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>

namespace rainbow {

void Hypergraph::add_edge(std::vector<int> vs) {
    std::sort(vs.begin(), vs.end());
    edges.push_back(std::move(vs));
}

void Hypergraph::add_family(std::string name, std::vector<int> members) {
    std::sort(members.begin(), members.end());
    families.emplace_back(std::move(name), std::move(members));
}

void Hypergraph::validate() const {
    for (const auto &e : edges) {
        if (e.size() < 2) throw std::invalid_argument("Hypergraph: edge with fewer than 2 vertices");
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] < 0 || e[i] >= vertex_count)
                throw std::invalid_argument("Hypergraph: edge vertex out of range");
            if (i > 0 && e[i] == e[i - 1])
                throw std::invalid_argument("Hypergraph: repeated vertex in edge");
        }
    }
    for (const auto &[name, members] : families)
        for (int v : members)
            if (v < 0 || v >= vertex_count)
                throw std::invalid_argument("Hypergraph: family '" + name + "' member out of range");
}

std::string Hypergraph::to_json() const {
    nlohmann::json j;
    j["vertex_count"] = vertex_count;
    j["edges"] = edges;
    nlohmann::json fam = nlohmann::json::object();
    for (const auto &[name, members] : families) fam[name] = members;
    j["families"] = fam;
    return j.dump();
}

Hypergraph Hypergraph::load_json(const std::string &text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error &e) {
        throw std::invalid_argument(std::string("hypergraph: JSON parse error: ") + e.what());
    }
    Hypergraph h;
    h.vertex_count = j.at("vertex_count").get<int>();
    for (auto &e : j.at("edges")) h.add_edge(e.get<std::vector<int>>());
    if (j.contains("families"))
        for (auto &[name, members] : j["families"].items())
            h.add_family(name, members.get<std::vector<int>>());
    h.validate();
    return h;
}

DegreeStats degree_stats(const Hypergraph &h) {
    DegreeStats s;
    std::vector<long long> deg(h.vertex_count, 0);
    std::map<std::pair<int, int>, long long> codeg;
    for (const auto &e : h.edges) {
        for (std::size_t a = 0; a < e.size(); ++a) {
            ++deg[e[a]];
            for (std::size_t b = a + 1; b < e.size(); ++b) ++codeg[{e[a], e[b]}];
        }
    }
    if (h.vertex_count > 0) {
        s.min_degree = *std::min_element(deg.begin(), deg.end());
        s.max_degree = *std::max_element(deg.begin(), deg.end());
    }
    for (const auto &[pair, c] : codeg) s.max_codegree = std::max(s.max_codegree, c);
    return s;
}

namespace {

MatchingReport finalize_report(const Hypergraph &h, std::vector<int> matching, int rounds_run) {
    std::sort(matching.begin(), matching.end());
    std::vector<char> covered(h.vertex_count, 0);
    for (int ei : matching) {
        for (int v : h.edges[ei]) {
            if (covered[v]) throw std::logic_error("matching not vertex-disjoint");
            covered[v] = 1;
        }
    }
    MatchingReport rep;
    rep.matching = std::move(matching);
    rep.rounds_run = rounds_run;
    for (int v = 0; v < h.vertex_count; ++v) rep.covered_vertices += covered[v];
    rep.coverage = h.vertex_count ? static_cast<double>(rep.covered_vertices) / h.vertex_count : 1.0;
    const double floor = std::pow(static_cast<double>(h.vertex_count), 0.4);
    rep.gamma_effective = 0;
    for (const auto &[name, members] : h.families) {
        FamilyCoverage fc;
        fc.name = name;
        fc.size = static_cast<long long>(members.size());
        for (int v : members) fc.uncovered += !covered[v];
        fc.threshold_base = std::max(static_cast<double>(fc.size), floor);
        if (fc.threshold_base > 0)
            rep.gamma_effective = std::max(rep.gamma_effective, fc.uncovered / fc.threshold_base);
        rep.families.push_back(std::move(fc));
    }
    return rep;
}

} // namespace

std::string MatchingReport::to_json() const {
    nlohmann::json j;
    j["matching_size"] = matching.size();
    j["matching"] = matching;
    j["covered_vertices"] = covered_vertices;
    j["coverage"] = coverage;
    j["gamma_effective"] = gamma_effective;
    j["rounds_run"] = rounds_run;
    nlohmann::json fams = nlohmann::json::array();
    for (const auto &f : families) {
        fams.push_back({{"name", f.name},
                        {"size", f.size},
                        {"uncovered", f.uncovered},
                        {"threshold_base", f.threshold_base}});
    }
    j["families"] = fams;
    return j.dump(2);
}

MatchingReport nibble_matching(const Hypergraph &h, double bite, int rounds, std::uint64_t seed) {
    if (!(bite > 0) || bite > 1) throw std::invalid_argument("nibble_matching: bite must be in (0,1]");
    h.validate();
    std::mt19937_64 rng(seed ^ 0x243f6a8885a308d3ULL);

    std::vector<char> covered(h.vertex_count, 0);
    std::vector<int> alive;
    alive.reserve(h.edges.size());
    for (std::size_t i = 0; i < h.edges.size(); ++i) alive.push_back(static_cast<int>(i));

    std::vector<int> matching;
    std::vector<int> activated;
    std::vector<char> seen(h.vertex_count, 0);

    for (int round = 0; round < rounds && !alive.empty(); ++round) {
        long long incidence = 0;
        long long free_vertices = 0;
        std::fill(seen.begin(), seen.end(), 0);
        for (int ei : alive) {
            incidence += static_cast<long long>(h.edges[ei].size());
            for (int v : h.edges[ei]) seen[v] = 1;
        }
        for (int v = 0; v < h.vertex_count; ++v) free_vertices += seen[v];
        if (free_vertices == 0) break;
        double avg_degree = static_cast<double>(incidence) / static_cast<double>(free_vertices);
        double p = std::min(1.0, bite / std::max(1.0, avg_degree));

        activated.clear();
        for (int ei : alive)
            if (rand_unit(rng) < p) activated.push_back(ei);
        shuffle_vec(activated, rng);
        for (int ei : activated) {
            bool free = true;
            for (int v : h.edges[ei])
                if (covered[v]) {
                    free = false;
                    break;
                }
            if (!free) continue;
            matching.push_back(ei);
            for (int v : h.edges[ei]) covered[v] = 1;
        }
        std::vector<int> next;
        next.reserve(alive.size());
        for (int ei : alive) {
            bool ok = true;
            for (int v : h.edges[ei])
                if (covered[v]) {
                    ok = false;
                    break;
                }
            if (ok) next.push_back(ei);
        }
        alive.swap(next);
    }

    // final greedy pass in random order
    shuffle_vec(alive, rng);
    for (int ei : alive) {
        bool free = true;
        for (int v : h.edges[ei])
            if (covered[v]) {
                free = false;
                break;
            }
        if (!free) continue;
        matching.push_back(ei);
        for (int v : h.edges[ei]) covered[v] = 1;
    }
    return finalize_report(h, std::move(matching), rounds);
}

MatchingReport greedy_matching(const Hypergraph &h, std::uint64_t seed) {
    h.validate();
    std::mt19937_64 rng(seed ^ 0x452821e638d01377ULL);
    std::vector<int> order(h.edges.size());
    for (std::size_t i = 0; i < h.edges.size(); ++i) order[i] = static_cast<int>(i);
    shuffle_vec(order, rng);
    std::vector<char> covered(h.vertex_count, 0);
    std::vector<int> matching;
    for (int ei : order) {
        bool free = true;
        for (int v : h.edges[ei])
            if (covered[v]) {
                free = false;
                break;
            }
        if (!free) continue;
        matching.push_back(ei);
        for (int v : h.edges[ei]) covered[v] = 1;
    }
    return finalize_report(h, std::move(matching), 0);
}

GammaCheck check_gamma_perfect(const Hypergraph &h, const std::vector<int> &matching, double gamma) {
    auto rep = finalize_report(h, matching, 0);
    GammaCheck out;
    out.ledger = rep.families;
    out.ok = true;
    for (const auto &f : out.ledger)
        if (static_cast<double>(f.uncovered) > gamma * f.threshold_base) out.ok = false;
    return out;
}

Hypergraph random_regular_hypergraph(int vertex_count, int edge_size, int degree, int max_codegree,
                                     std::uint64_t seed) {
    if (edge_size < 2 || degree < 1 || max_codegree < 1)
        throw std::invalid_argument("random_regular_hypergraph: bad parameters");
    std::mt19937_64 rng(seed ^ 0x13198a2e03707344ULL);
    Hypergraph h;
    h.vertex_count = vertex_count;

    std::vector<int> deg(vertex_count, 0);
    std::map<std::pair<int, int>, int> codeg;
    std::set<std::vector<int>> present;

    // draw edges from the pool of vertices still below the target degree,
    // rejecting duplicates and codegree violations
    long long target_edges = static_cast<long long>(vertex_count) * degree / edge_size;
    long long failures = 0;
    while (static_cast<long long>(h.edges.size()) < target_edges && failures < 80LL * target_edges) {
        std::vector<int> pool;
        for (int v = 0; v < vertex_count; ++v)
            if (deg[v] < degree) pool.push_back(v);
        if (static_cast<int>(pool.size()) < edge_size) break;
        std::vector<int> pick;
        std::set<int> chosen;
        while (static_cast<int>(pick.size()) < edge_size) {
            int v = pool[rand_below(rng, pool.size())];
            if (chosen.insert(v).second) pick.push_back(v);
        }
        std::sort(pick.begin(), pick.end());
        bool ok = !present.count(pick);
        for (std::size_t a = 0; a < pick.size() && ok; ++a)
            for (std::size_t b = a + 1; b < pick.size() && ok; ++b) {
                auto it = codeg.find({pick[a], pick[b]});
                if (it != codeg.end() && it->second + 1 > max_codegree) ok = false;
            }
        if (!ok) {
            ++failures;
            continue;
        }
        for (std::size_t a = 0; a < pick.size(); ++a) {
            ++deg[pick[a]];
            for (std::size_t b = a + 1; b < pick.size(); ++b) ++codeg[{pick[a], pick[b]}];
        }
        present.insert(pick);
        h.edges.push_back(std::move(pick));
    }
    return h;
}

// ---------------------------------------------------------------------------
// rainbow-cycle encoding

namespace {

// rotate so the smallest vertex is first, direction with the smaller second vertex
std::vector<int> canonical_cycle(const std::vector<int> &cyc) {
    const int L = static_cast<int>(cyc.size());
    int pos = 0;
    for (int i = 1; i < L; ++i)
        if (cyc[i] < cyc[pos]) pos = i;
    std::vector<int> fwd(L), bwd(L);
    for (int i = 0; i < L; ++i) {
        fwd[i] = cyc[(pos + i) % L];
        bwd[i] = cyc[(pos - i + L) % L];
    }
    return std::min(fwd, bwd);
}

} // namespace

CycleHypergraph build_cycle_hypergraph(const EdgeColouredKn &g,
                                       const std::vector<std::vector<int>> &vertex_sets,
                                       const std::vector<std::vector<int>> &colour_sets,
                                       int cycle_len, const CycleEnumeration &mode) {
    if (vertex_sets.size() != colour_sets.size())
        throw std::invalid_argument("build_cycle_hypergraph: |Vs| != |Cs|");
    if (cycle_len < 3) throw std::invalid_argument("build_cycle_hypergraph: cycle length must be >= 3");
    if (mode.exhaustive && cycle_len > 5)
        throw std::runtime_error(
            "build_cycle_hypergraph: exhaustive enumeration capped at cycle length 5; use sampled mode");

    const int n = g.n();
    const int t = static_cast<int>(vertex_sets.size());
    CycleHypergraph ch;
    ch.n = n;
    ch.t = t;
    ch.cycle_len = cycle_len;
    ch.h.vertex_count = static_cast<int>(edge_count(n) + static_cast<long long>(t) * n +
                                         static_cast<long long>(t) * (n - 1));

    for (int i = 0; i < t; ++i) {
        std::vector<char> v_ok(n, 0), c_ok(n - 1, 0);
        for (int v : vertex_sets[i]) v_ok.at(v) = 1;
        for (int c : colour_sets[i]) c_ok.at(c) = 1;

        auto emit = [&](const std::vector<int> &cyc) {
            std::vector<int> vs;
            vs.reserve(3 * cycle_len);
            for (int k = 0; k < cycle_len; ++k) {
                int u = cyc[k], v = cyc[(k + 1) % cycle_len];
                vs.push_back(static_cast<int>(ch.vertex_of_edge(edge_index(n, u, v))));
                vs.push_back(static_cast<int>(ch.vertex_of_ic(i, g.colour(u, v))));
            }
            for (int v : cyc) vs.push_back(static_cast<int>(ch.vertex_of_iv(i, v)));
            ch.h.add_edge(std::move(vs));
        };

        auto rainbow_in_ci = [&](const std::vector<int> &cyc) {
            std::set<int> used;
            for (int k = 0; k < cycle_len; ++k) {
                int c = g.colour(cyc[k], cyc[(k + 1) % cycle_len]);
                if (!c_ok[c] || !used.insert(c).second) return false;
            }
            return true;
        };

        std::vector<int> verts;
        for (int v = 0; v < n; ++v)
            if (v_ok[v]) verts.push_back(v);

        if (mode.exhaustive) {
            // smallest vertex first, direction fixed by second < last
            std::vector<int> cyc(cycle_len);
            std::function<void(int)> rec = [&](int depth) {
                if (depth == cycle_len) {
                    if (cyc[1] > cyc[cycle_len - 1]) return;
                    if (rainbow_in_ci(cyc)) emit(cyc);
                    return;
                }
                for (int v : verts) {
                    if (v <= cyc[0]) continue;
                    bool dup = false;
                    for (int k = 1; k < depth; ++k)
                        if (cyc[k] == v) dup = true;
                    if (dup) continue;
                    cyc[depth] = v;
                    rec(depth + 1);
                }
            };
            for (int v : verts) {
                cyc[0] = v;
                rec(1);
            }
        } else {
            std::mt19937_64 rng = sub_rng(mode.seed, static_cast<std::uint64_t>(i));
            if (static_cast<int>(verts.size()) < cycle_len) continue;
            std::set<std::vector<int>> seen;
            for (long long draw = 0; draw < mode.sample_count; ++draw) {
                std::vector<int> cyc;
                std::set<int> used;
                while (static_cast<int>(cyc.size()) < cycle_len) {
                    int v = verts[rand_below(rng, verts.size())];
                    if (used.insert(v).second) cyc.push_back(v);
                }
                if (!rainbow_in_ci(cyc)) continue;
                auto key = canonical_cycle(cyc);
                if (seen.insert(key).second) emit(key);
            }
        }
    }
    ch.h.validate();

    // families as in the approximate-decomposition proof: per-index vertex and
    // colour slices, per-vertex pair sets and boundaries, per-colour pair sets
    // and colour classes
    for (int i = 0; i < t; ++i) {
        std::vector<int> fv, fc;
        for (int v : vertex_sets[i]) fv.push_back(static_cast<int>(ch.vertex_of_iv(i, v)));
        for (int c : colour_sets[i]) fc.push_back(static_cast<int>(ch.vertex_of_ic(i, c)));
        ch.h.add_family("slice_V_" + std::to_string(i), std::move(fv));
        ch.h.add_family("slice_C_" + std::to_string(i), std::move(fc));
    }
    for (int v = 0; v < n; ++v) {
        std::vector<int> pairs, boundary;
        for (int i = 0; i < t; ++i) pairs.push_back(static_cast<int>(ch.vertex_of_iv(i, v)));
        for (int u = 0; u < n; ++u)
            if (u != v) boundary.push_back(static_cast<int>(edge_index(n, u, v)));
        ch.h.add_family("vertex_pairs_" + std::to_string(v), std::move(pairs));
        ch.h.add_family("boundary_" + std::to_string(v), std::move(boundary));
    }
    for (int c = 0; c < n - 1; ++c) {
        std::vector<int> pairs, cls;
        for (int i = 0; i < t; ++i) pairs.push_back(static_cast<int>(ch.vertex_of_ic(i, c)));
        for (const Edge &e : g.colour_class(c))
            cls.push_back(static_cast<int>(edge_index(n, e.u, e.v)));
        ch.h.add_family("colour_pairs_" + std::to_string(c), std::move(pairs));
        ch.h.add_family("colour_class_" + std::to_string(c), std::move(cls));
    }
    return ch;
}

std::vector<std::vector<IndexedCycle>> extract_disjoint_families(const CycleHypergraph &ch,
                                                                 const std::vector<int> &matching) {
    const int n = ch.n;
    const long long edge_ids = edge_count(n);
    const long long iv_end = edge_ids + static_cast<long long>(ch.t) * n;
    std::vector<std::vector<IndexedCycle>> out(ch.t);
    std::vector<std::vector<std::vector<int>>> colours_of(ch.t); // per index, per cycle

    for (int ei : matching) {
        if (ei < 0 || ei >= static_cast<int>(ch.h.edges.size()))
            throw std::logic_error("extract_disjoint_families: matching edge index out of range");
        const auto &he = ch.h.edges[ei];
        IndexedCycle cyc;
        std::vector<int> cols;
        int index = -1;
        for (int hv : he) {
            if (hv < edge_ids) {
                cyc.edges.push_back(edge_from_index(n, hv));
            } else if (hv < iv_end) {
                int i = static_cast<int>((hv - edge_ids) / n);
                if (index >= 0 && index != i)
                    throw std::logic_error("extract_disjoint_families: hyperedge mixes indices");
                index = i;
            } else {
                long long rest = hv - iv_end;
                int i = static_cast<int>(rest / (n - 1));
                int c = static_cast<int>(rest % (n - 1));
                if (index >= 0 && index != i)
                    throw std::logic_error("extract_disjoint_families: hyperedge mixes indices");
                index = i;
                cols.push_back(c);
            }
        }
        if (index < 0 || cyc.edges.size() != static_cast<std::size_t>(ch.cycle_len) ||
            cols.size() != static_cast<std::size_t>(ch.cycle_len))
            throw std::logic_error("extract_disjoint_families: malformed hyperedge");
        cyc.index = index;
        out[index].push_back(std::move(cyc));
        colours_of[index].push_back(std::move(cols));
    }

    // re-verify the three disjointness properties rather than trusting them
    std::set<long long> all_edges;
    for (int i = 0; i < ch.t; ++i) {
        std::set<int> verts;
        std::set<int> cols;
        for (std::size_t k = 0; k < out[i].size(); ++k) {
            std::set<int> cyc_verts;
            for (const Edge &e : out[i][k].edges) {
                if (!all_edges.insert(edge_index(n, e.u, e.v)).second)
                    throw std::logic_error("extract_disjoint_families: edge reused across cycles");
                cyc_verts.insert(e.u);
                cyc_verts.insert(e.v);
            }
            for (int v : cyc_verts)
                if (!verts.insert(v).second)
                    throw std::logic_error("extract_disjoint_families: vertex reused within an index");
            for (int c : colours_of[i][k])
                if (!cols.insert(c).second)
                    throw std::logic_error("extract_disjoint_families: colour reused within an index");
        }
    }
    return out;
}

} // namespace rainbow
