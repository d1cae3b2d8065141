#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <vector>

#include "graphrag/errors.hpp"
#include "graphrag/graph.hpp"
#include "graphrag/random.hpp"

namespace graphrag {

namespace {

// Compact weighted undirected graph used across aggregation levels. Level 0
// carries the 0/1 simple projection; aggregated levels carry summed weights
// and self-loops.
struct FlatGraph {
    int n = 0;
    std::vector<std::map<int, double>> adj;  // neighbor -> weight, no self-loops
    std::vector<double> self_loop;           // self-loop weight, counted once
    std::vector<double> degree;              // sum of adj weights + 2 * self_loop
    double two_m = 0.0;

    void finalize() {
        degree.assign(static_cast<std::size_t>(n), 0.0);
        two_m = 0.0;
        for (int v = 0; v < n; ++v) {
            double d = 2.0 * self_loop[static_cast<std::size_t>(v)];
            for (const auto& [u, w] : adj[static_cast<std::size_t>(v)]) {
                (void)u;
                d += w;
            }
            degree[static_cast<std::size_t>(v)] = d;
            two_m += d;
        }
    }
};

std::vector<int> shuffled_order(int n, Rng& rng) {
    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    rng.shuffle(order);
    return order;
}

// Gain of moving v from its community to `target`:
//   dQ = 2(e_vd - e_vc)/2m - resolution * 2 k_v (K_d - K_{c\v}) / (2m)^2
double move_gain(double e_to_target, double e_to_current, double k_v, double tot_target,
                 double tot_current_minus_v, double two_m, double resolution) {
    const double term1 = 2.0 * (e_to_target - e_to_current) / two_m;
    const double term2 =
        resolution * 2.0 * k_v * (tot_target - tot_current_minus_v) / (two_m * two_m);
    return term1 - term2;
}

// Queue-based local moving. Candidate targets are the communities of v's
// neighbors; only strictly positive gains move, ties prefer the lowest
// community id, zero gain keeps the current community.
bool local_move(const FlatGraph& g, std::vector<int>& labels, Rng& rng, double resolution) {
    if (g.two_m == 0.0) return false;
    std::vector<double> comm_tot(static_cast<std::size_t>(g.n), 0.0);
    for (int v = 0; v < g.n; ++v) {
        comm_tot[static_cast<std::size_t>(labels[static_cast<std::size_t>(v)])] +=
            g.degree[static_cast<std::size_t>(v)];
    }

    std::deque<int> queue;
    std::vector<bool> queued(static_cast<std::size_t>(g.n), true);
    for (int v : shuffled_order(g.n, rng)) queue.push_back(v);

    bool any_moved = false;
    while (!queue.empty()) {
        const int v = queue.front();
        queue.pop_front();
        queued[static_cast<std::size_t>(v)] = false;

        const int current = labels[static_cast<std::size_t>(v)];
        std::map<int, double> edges_to;
        for (const auto& [u, w] : g.adj[static_cast<std::size_t>(v)]) {
            edges_to[labels[static_cast<std::size_t>(u)]] += w;
        }
        const double e_current = edges_to.count(current) ? edges_to[current] : 0.0;
        const double k_v = g.degree[static_cast<std::size_t>(v)];
        const double tot_minus = comm_tot[static_cast<std::size_t>(current)] - k_v;

        int best = current;
        double best_gain = 0.0;
        for (const auto& [cand, e_cand] : edges_to) {
            if (cand == current) continue;
            const double gain =
                move_gain(e_cand, e_current, k_v, comm_tot[static_cast<std::size_t>(cand)],
                          tot_minus, g.two_m, resolution);
            if (gain > best_gain) {
                best_gain = gain;
                best = cand;
            }
        }
        if (best == current) continue;

        comm_tot[static_cast<std::size_t>(current)] -= k_v;
        comm_tot[static_cast<std::size_t>(best)] += k_v;
        labels[static_cast<std::size_t>(v)] = best;
        any_moved = true;
        for (const auto& [u, w] : g.adj[static_cast<std::size_t>(v)]) {
            (void)w;
            if (!queued[static_cast<std::size_t>(u)] &&
                labels[static_cast<std::size_t>(u)] != best) {
                queue.push_back(u);
                queued[static_cast<std::size_t>(u)] = true;
            }
        }
    }
    return any_moved;
}

// Refinement phase: starting from singletons, each node may join a refined
// community of a neighbor inside its own local-moving community. Single pass;
// only nodes still alone move, which keeps refined communities connected.
std::vector<int> refine(const FlatGraph& g, const std::vector<int>& parent, Rng& rng,
                        double resolution) {
    std::vector<int> refined(static_cast<std::size_t>(g.n));
    std::iota(refined.begin(), refined.end(), 0);
    if (g.two_m == 0.0) return refined;

    std::vector<double> tot(static_cast<std::size_t>(g.n), 0.0);
    std::vector<int> size(static_cast<std::size_t>(g.n), 1);
    for (int v = 0; v < g.n; ++v) {
        tot[static_cast<std::size_t>(v)] = g.degree[static_cast<std::size_t>(v)];
    }

    for (int v : shuffled_order(g.n, rng)) {
        if (size[static_cast<std::size_t>(refined[static_cast<std::size_t>(v)])] > 1) continue;

        std::map<int, double> edges_to;
        for (const auto& [u, w] : g.adj[static_cast<std::size_t>(v)]) {
            if (parent[static_cast<std::size_t>(u)] != parent[static_cast<std::size_t>(v)]) continue;
            edges_to[refined[static_cast<std::size_t>(u)]] += w;
        }
        const int current = refined[static_cast<std::size_t>(v)];
        const double k_v = g.degree[static_cast<std::size_t>(v)];
        int best = current;
        double best_gain = 0.0;
        for (const auto& [cand, e_cand] : edges_to) {
            if (cand == current) continue;
            const double gain = move_gain(e_cand, 0.0, k_v, tot[static_cast<std::size_t>(cand)],
                                          tot[static_cast<std::size_t>(current)] - k_v, g.two_m,
                                          resolution);
            if (gain > best_gain) {
                best_gain = gain;
                best = cand;
            }
        }
        if (best == current) continue;
        tot[static_cast<std::size_t>(current)] -= k_v;
        tot[static_cast<std::size_t>(best)] += k_v;
        size[static_cast<std::size_t>(current)] -= 1;
        size[static_cast<std::size_t>(best)] += 1;
        refined[static_cast<std::size_t>(v)] = best;
    }
    return refined;
}

// Renumber labels to 0..k-1 preserving ascending label order.
int compact_labels(std::vector<int>& labels) {
    std::map<int, int> remap;
    for (int label : labels) remap.emplace(label, 0);
    int next = 0;
    for (auto& [old_label, new_label] : remap) {
        (void)old_label;
        new_label = next++;
    }
    for (int& label : labels) label = remap[label];
    return next;
}

}  // namespace

CommunityHierarchy detect_communities(const KnowledgeGraph& graph, std::uint64_t seed,
                                      int max_levels, double resolution) {
    const auto ids = graph.node_ids();
    if (ids.empty()) throw_data("detect_communities: graph has no nodes");
    if (max_levels < 1) throw_data("detect_communities: max_levels must be >= 1");

    std::map<std::string, int> index_of;
    for (std::size_t i = 0; i < ids.size(); ++i) index_of[ids[i]] = static_cast<int>(i);

    FlatGraph g;
    g.n = static_cast<int>(ids.size());
    g.adj.assign(static_cast<std::size_t>(g.n), {});
    g.self_loop.assign(static_cast<std::size_t>(g.n), 0.0);
    for (const auto& [a, b] : graph.simple_edges()) {
        const int u = index_of[a];
        const int v = index_of[b];
        g.adj[static_cast<std::size_t>(u)][v] = 1.0;
        g.adj[static_cast<std::size_t>(v)][u] = 1.0;
    }
    g.finalize();

    // members[i] = original node indices carried by current node i
    std::vector<std::vector<int>> members(static_cast<std::size_t>(g.n));
    for (int v = 0; v < g.n; ++v) members[static_cast<std::size_t>(v)] = {v};

    std::vector<int> labels(static_cast<std::size_t>(g.n));
    std::iota(labels.begin(), labels.end(), 0);

    Rng rng(seed);
    CommunityHierarchy hierarchy;
    int next_community_id = 0;

    for (int level = 0;; ++level) {
        const bool moved = local_move(g, labels, rng, resolution);
        if (level > 0 && !moved) break;  // pass with no improving move

        const int community_count = compact_labels(labels);

        // Project to original node ids.
        Partition partition;
        for (int v = 0; v < g.n; ++v) {
            for (int orig : members[static_cast<std::size_t>(v)]) {
                partition.assignment[ids[static_cast<std::size_t>(orig)]] =
                    next_community_id + labels[static_cast<std::size_t>(v)];
            }
        }
        partition.modularity = modularity(graph, partition);
        hierarchy.levels.push_back(partition);

        std::vector<Community> level_communities(static_cast<std::size_t>(community_count));
        for (int c = 0; c < community_count; ++c) {
            level_communities[static_cast<std::size_t>(c)].id = next_community_id + c;
            level_communities[static_cast<std::size_t>(c)].level = level;
        }
        for (const auto& [node, comm] : partition.assignment) {
            level_communities[static_cast<std::size_t>(comm - next_community_id)].members.insert(
                node);
        }
        const auto& triples = graph.triples();
        for (std::size_t t = 0; t < triples.size(); ++t) {
            const int cs = partition.assignment.at(triples[t].subject);
            const int co = partition.assignment.at(triples[t].object);
            if (cs == co) {
                level_communities[static_cast<std::size_t>(cs - next_community_id)]
                    .induced_edges.push_back(t);
            }
        }
        for (auto& c : level_communities) hierarchy.communities.push_back(std::move(c));
        next_community_id += community_count;

        if (community_count == 1 || level + 1 >= max_levels) break;

        std::vector<int> refined = refine(g, labels, rng, resolution);
        const int refined_count = compact_labels(refined);
        if (refined_count == g.n) break;  // no contraction possible

        // Aggregate refined communities into super-nodes.
        FlatGraph next;
        next.n = refined_count;
        next.adj.assign(static_cast<std::size_t>(next.n), {});
        next.self_loop.assign(static_cast<std::size_t>(next.n), 0.0);
        std::vector<std::vector<int>> next_members(static_cast<std::size_t>(next.n));
        std::vector<int> next_labels(static_cast<std::size_t>(next.n), -1);
        for (int v = 0; v < g.n; ++v) {
            const int rv = refined[static_cast<std::size_t>(v)];
            auto& bucket = next_members[static_cast<std::size_t>(rv)];
            bucket.insert(bucket.end(), members[static_cast<std::size_t>(v)].begin(),
                          members[static_cast<std::size_t>(v)].end());
            next_labels[static_cast<std::size_t>(rv)] = labels[static_cast<std::size_t>(v)];
            next.self_loop[static_cast<std::size_t>(rv)] += g.self_loop[static_cast<std::size_t>(v)];
            for (const auto& [u, w] : g.adj[static_cast<std::size_t>(v)]) {
                if (u <= v) continue;  // each undirected edge once
                const int ru = refined[static_cast<std::size_t>(u)];
                if (ru == rv) {
                    next.self_loop[static_cast<std::size_t>(rv)] += w;
                } else {
                    next.adj[static_cast<std::size_t>(rv)][ru] += w;
                    next.adj[static_cast<std::size_t>(ru)][rv] += w;
                }
            }
        }
        next.finalize();
        for (auto& bucket : next_members) std::sort(bucket.begin(), bucket.end());

        g = std::move(next);
        members = std::move(next_members);
        labels = std::move(next_labels);
        compact_labels(labels);
    }

    return hierarchy;
}

}  // namespace graphrag
