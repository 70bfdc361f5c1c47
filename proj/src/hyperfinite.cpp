#include "schreierlab/hyperfinite.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <queue>
#include <set>
#include <unordered_set>

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/boyer_myrvold_planar_test.hpp>

namespace schreierlab {

FinitelySupportedMean FinitelySupportedMean::uniform_on(std::vector<VertexId> w) {
    std::sort(w.begin(), w.end());
    w.erase(std::unique(w.begin(), w.end()), w.end());
    if (w.empty()) throw error(errc::precondition, "mean support must be nonempty");
    return FinitelySupportedMean{std::move(w)};
}

bool FinitelySupportedMean::contains(VertexId v) const {
    return std::binary_search(support.begin(), support.end(), v);
}

Rational FinitelySupportedMean::mass(const std::vector<VertexId>& subset) const {
    std::set<VertexId> distinct(subset.begin(), subset.end());
    std::int64_t hit = 0;
    for (VertexId v : distinct)
        if (contains(v)) ++hit;
    return Rational(hit, size());
}

Rational isoperimetric(const LabeledGraph& g, const std::vector<VertexId>& F) {
    if (F.empty()) throw error(errc::precondition, "isoperimetric constant of the empty set");
    std::unordered_set<VertexId> in;
    for (VertexId v : F) {
        if (!g.has_vertex(v))
            throw error(errc::malformed_input, "set vertex " + std::to_string(v) + " not in graph");
        in.insert(v);
    }
    std::int64_t outgoing = 0;
    for (const auto& e : g.edges()) {
        bool u_in = in.count(e.u) != 0, v_in = in.count(e.v) != 0;
        if (u_in != v_in) ++outgoing;
    }
    return Rational(outgoing, (std::int64_t)in.size());
}

namespace {

std::vector<VertexId> box_candidate(const LabeledGraph& g, const GridWindow& coords,
                                    const std::vector<std::int64_t>& center, std::int64_t side) {
    int d = coords.dimension();
    std::vector<std::int64_t> lo(d), len(d);
    for (int i = 0; i < d; ++i) {
        lo[i] = center[i] - (side - 1) / 2;
        len[i] = side;
    }
    std::vector<VertexId> out;
    std::vector<std::int64_t> c(d);
    std::vector<std::int64_t> idx(d, 0);
    while (true) {
        for (int i = 0; i < d; ++i) c[i] = lo[i] + idx[i];
        if (coords.contains(c)) {
            VertexId id = coords.encode(c);
            if (g.has_vertex(id)) out.push_back(id);
        }
        int axis = d - 1;
        while (axis >= 0 && ++idx[axis] == len[axis]) idx[axis--] = 0;
        if (axis < 0) break;
    }
    return out;
}

} // namespace

FolnerResult folner_search(const LabeledGraph& g, VertexId basepoint, const Rational& target_eps,
                           std::int64_t max_size, FolnerShape shape, const GridWindow* coords) {
    if (!g.has_vertex(basepoint))
        throw error(errc::malformed_input, "basepoint not in graph");
    if (max_size < 1) throw error(errc::precondition, "max_size must be >= 1");
    if (shape == FolnerShape::Box && coords == nullptr)
        throw error(errc::precondition, "box-shaped search needs grid coordinates");

    FolnerResult res;
    res.best_seen = Rational((std::int64_t)g.degree_bound() + 1);
    bool any = false;

    auto consider = [&](std::vector<VertexId> cand) -> bool {
        if (cand.empty() || (std::int64_t)cand.size() > max_size) return false;
        Rational c = isoperimetric(g, cand);
        if (!any || c < res.best_seen) res.best_seen = c;
        any = true;
        if (c <= target_eps) {
            res.found = true;
            res.set = std::move(cand);
            std::sort(res.set.begin(), res.set.end());
            res.constant = c;
            return true;
        }
        return false;
    };

    if (shape == FolnerShape::GraphBall) {
        std::vector<VertexId> cur{basepoint};
        std::unordered_set<VertexId> seen{basepoint};
        std::vector<VertexId> frontier{basepoint};
        while (true) {
            if (consider(cur)) return res;
            if ((std::int64_t)cur.size() > max_size) break;
            std::vector<VertexId> next;
            for (VertexId v : frontier)
                for (auto [ni, ei] : g.adjacency(g.index_of(v))) {
                    VertexId w = g.vertex_at(ni);
                    if (seen.insert(w).second) next.push_back(w);
                }
            if (next.empty()) break; // ball reached the whole component
            for (VertexId w : next) cur.push_back(w);
            frontier = std::move(next);
        }
    } else {
        auto center = coords->decode(basepoint);
        for (std::int64_t side = 1;; ++side) {
            auto cand = box_candidate(g, *coords, center, side);
            if ((std::int64_t)cand.size() > max_size) break;
            bool grown = side == 1 || cand.size() > box_candidate(g, *coords, center, side - 1).size();
            if (consider(std::move(cand))) return res;
            if (!grown) break; // box stopped growing inside the window
        }
    }
    res.found = false;
    res.constant = res.best_seen;
    return res;
}

DisjointifyResult disjointify(const std::vector<std::vector<VertexId>>& sets,
                              const std::vector<Rational>& loss_schedule) {
    DisjointifyResult res;
    std::set<VertexId> used;
    std::size_t next_index = 0;
    for (std::size_t k = 1;; ++k) {
        if (next_index >= sets.size()) {
            res.ok = true;
            return res;
        }
        Rational delta;
        if (k <= loss_schedule.size()) {
            delta = loss_schedule[k - 1];
        } else {
            std::int64_t den = 1; // default schedule 10^-k, saturating at int64 scale
            for (std::size_t j = 0; j < std::min<std::size_t>(k, 18); ++j) den *= 10;
            delta = Rational(1, den);
        }
        bool picked = false;
        for (std::size_t n = next_index; n < sets.size(); ++n) {
            std::set<VertexId> fn(sets[n].begin(), sets[n].end());
            std::vector<VertexId> trimmed;
            for (VertexId v : fn)
                if (!used.count(v)) trimmed.push_back(v);
            // |F'| > (1 - delta)|F|
            if (Rational((std::int64_t)trimmed.size()) >
                (Rational(1) - delta) * Rational((std::int64_t)fn.size())) {
                used.insert(trimmed.begin(), trimmed.end());
                res.picked.push_back(n);
                res.trimmed.push_back(std::move(trimmed));
                next_index = n + 1;
                picked = true;
                break;
            }
        }
        if (!picked) {
            res.ok = false;
            res.blocking_step = k;
            return res;
        }
    }
}

Rational edge_measure(const LabeledGraph& sub, const FinitelySupportedMean& mean) {
    for (VertexId v : sub.vertices())
        if (!mean.contains(v))
            throw error(errc::precondition,
                        "subgraph vertex " + std::to_string(v) + " outside the mean's support");
    std::int64_t degree_sum = 2 * (std::int64_t)sub.edge_count() + (std::int64_t)sub.loop_count();
    return Rational(degree_sum, 2 * mean.size());
}

DensityBoundVerdict check_density_bound(const LabeledGraph& R, const Rational& alpha,
                                        const FinitelySupportedMean& mean) {
    if (R.loop_count() > 0)
        throw error(errc::unsupported_input, "density bound expects a loop-free subgraph");
    auto [comp, count] = R.components();
    std::vector<std::int64_t> verts(count, 0), edges(count, 0);
    for (std::uint32_t i = 0; i < R.vertex_count(); ++i) ++verts[comp[i]];
    for (const auto& e : R.edges()) ++edges[comp[R.index_of(e.u)]];
    for (std::uint32_t c = 0; c < count; ++c) {
        if (Rational(edges[c], verts[c]) < alpha) {
            VertexId witness = 0;
            for (std::uint32_t i = 0; i < R.vertex_count(); ++i)
                if (comp[i] == c) {
                    witness = R.vertex_at(i);
                    break;
                }
            throw error(errc::precondition,
                        "component of vertex " + std::to_string(witness) + " has edge density " +
                            Rational(edges[c], verts[c]).str() + " below alpha " + alpha.str());
        }
    }
    DensityBoundVerdict v;
    v.lhs = alpha * mean.mass(R.vertices());
    v.rhs = edge_measure(R, mean);
    v.holds = v.lhs <= v.rhs;
    return v;
}

bool certificate_valid(const LabeledGraph& g, const PartitionCertificate& cert) {
    std::vector<char> edge_removed, vertex_removed;
    std::size_t removed = 0;
    if (cert.mode == RemovalMode::Edge) {
        edge_removed.assign(g.edge_count(), 0);
        for (auto [u, v] : cert.removed_edges) {
            auto ei = g.find_edge(u, v);
            if (!ei) return false;
            if (edge_removed[*ei]) return false;
            edge_removed[*ei] = 1;
        }
        removed = cert.removed_edges.size();
    } else {
        vertex_removed.assign(g.vertex_count(), 0);
        for (VertexId v : cert.removed_vertices) {
            if (!g.has_vertex(v)) return false;
            if (vertex_removed[g.index_of(v)]) return false;
            vertex_removed[g.index_of(v)] = 1;
        }
        removed = cert.removed_vertices.size();
    }
    auto [comp, count] = g.components_excluding(edge_removed, vertex_removed);
    std::vector<std::int64_t> sizes(count, 0);
    for (std::uint32_t i = 0; i < g.vertex_count(); ++i)
        if (comp[i] != UINT32_MAX) ++sizes[comp[i]];
    for (std::int64_t s : sizes)
        if (s > cert.K) return false;
    return cert.epsilon == Rational((std::int64_t)removed, (std::int64_t)g.vertex_count());
}

namespace {

constexpr std::size_t kEnumerateEdgeGuard = 25;
constexpr std::size_t kEnumerateVertexGuard = 20;
constexpr std::size_t kBranchBoundEdgeGuard = 160;
constexpr std::size_t kBranchBoundVertexGuard = 64;

struct RollbackDsu {
    std::vector<std::int32_t> parent;
    std::vector<std::int64_t> size;
    std::vector<std::pair<std::int32_t, std::int32_t>> trail;

    explicit RollbackDsu(std::size_t n) : parent(n), size(n, 1) {
        std::iota(parent.begin(), parent.end(), 0);
    }
    std::int32_t find(std::int32_t x) const {
        while (parent[x] != x) x = parent[x];
        return x;
    }
    void unite(std::int32_t a, std::int32_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return;
        if (size[a] < size[b]) std::swap(a, b);
        parent[b] = a;
        size[a] += size[b];
        trail.push_back({b, a});
    }
    std::size_t mark() const { return trail.size(); }
    void rollback(std::size_t m) {
        while (trail.size() > m) {
            auto [b, a] = trail.back();
            trail.pop_back();
            parent[b] = b;
            size[a] -= size[b];
        }
    }
};

// Brandes betweenness (unweighted), used only to order branch-and-bound.
std::vector<double> edge_betweenness(const LabeledGraph& g) {
    const std::uint32_t n = (std::uint32_t)g.vertex_count();
    std::vector<double> score(g.edge_count(), 0.0);
    std::vector<std::int64_t> sigma(n);
    std::vector<std::int32_t> dist(n);
    std::vector<double> delta(n);
    std::vector<std::uint32_t> stack;
    std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> preds(n);
    for (std::uint32_t s = 0; s < n; ++s) {
        std::fill(sigma.begin(), sigma.end(), 0);
        std::fill(dist.begin(), dist.end(), -1);
        std::fill(delta.begin(), delta.end(), 0.0);
        for (auto& p : preds) p.clear();
        stack.clear();
        sigma[s] = 1;
        dist[s] = 0;
        std::queue<std::uint32_t> q;
        q.push(s);
        while (!q.empty()) {
            std::uint32_t v = q.front();
            q.pop();
            stack.push_back(v);
            for (auto [w, ei] : g.adjacency(v)) {
                if (dist[w] < 0) {
                    dist[w] = dist[v] + 1;
                    q.push(w);
                }
                if (dist[w] == dist[v] + 1) {
                    sigma[w] += sigma[v];
                    preds[w].push_back({v, ei});
                }
            }
        }
        for (std::size_t i = stack.size(); i-- > 0;) {
            std::uint32_t w = stack[i];
            for (auto [v, ei] : preds[w]) {
                double share = (double)sigma[v] / (double)sigma[w] * (1.0 + delta[w]);
                score[ei] += share;
                delta[v] += share;
            }
        }
    }
    return score;
}

bool components_fit(const LabeledGraph& g, const std::vector<char>& edge_removed,
                    const std::vector<char>& vertex_removed, std::int64_t K) {
    auto [comp, count] = g.components_excluding(edge_removed, vertex_removed);
    std::vector<std::int64_t> sizes(count, 0);
    for (std::uint32_t i = 0; i < g.vertex_count(); ++i)
        if (comp[i] != UINT32_MAX)
            if (++sizes[comp[i]] > K) return false;
    return true;
}

// All cardinality-k subsets in lexicographic order, by increasing k.
template <typename Check>
std::optional<std::vector<std::size_t>> enumerate_min_subset(std::size_t m, Check check) {
    for (std::size_t k = 0; k <= m; ++k) {
        std::vector<std::size_t> pick(k);
        std::iota(pick.begin(), pick.end(), 0);
        while (true) {
            if (check(pick)) return pick;
            if (k == 0) break;
            std::size_t i = k;
            while (i-- > 0) {
                if (pick[i] != i + m - k) {
                    ++pick[i];
                    for (std::size_t j = i + 1; j < k; ++j) pick[j] = pick[j - 1] + 1;
                    break;
                }
                if (i == 0) {
                    i = SIZE_MAX;
                    break;
                }
            }
            if (i == SIZE_MAX) break;
        }
    }
    return std::nullopt;
}

struct EdgeBnB {
    const LabeledGraph& g;
    std::int64_t K;
    std::vector<std::size_t> order; // edge indices, heaviest betweenness first
    RollbackDsu dsu;
    std::vector<char> removed, best_removed;
    std::size_t best;

    EdgeBnB(const LabeledGraph& gr, std::int64_t k, std::size_t initial_best,
            std::vector<char> initial_removed)
        : g(gr), K(k), dsu(gr.vertex_count()), removed(gr.edge_count(), 0),
          best_removed(std::move(initial_removed)), best(initial_best) {
        auto bw = edge_betweenness(g);
        order.resize(g.edge_count());
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            if (bw[a] != bw[b]) return bw[a] > bw[b];
            return a < b;
        });
    }

    // removals still needed if every undecided edge were kept
    std::size_t lower_bound(std::size_t from) {
        std::size_t m = dsu.mark();
        for (std::size_t i = from; i < order.size(); ++i) {
            const auto& e = g.edges()[order[i]];
            dsu.unite((std::int32_t)g.index_of(e.u), (std::int32_t)g.index_of(e.v));
        }
        std::int64_t lb = 0;
        std::set<std::int32_t> roots;
        for (std::uint32_t v = 0; v < g.vertex_count(); ++v) roots.insert(dsu.find((std::int32_t)v));
        for (std::int32_t r : roots) lb += (dsu.size[r] + K - 1) / K - 1;
        dsu.rollback(m);
        return (std::size_t)lb;
    }

    void recurse(std::size_t i, std::size_t removed_count) {
        if (removed_count >= best) return;
        if (i == order.size()) {
            best = removed_count;
            best_removed = removed;
            return;
        }
        if (removed_count + lower_bound(i) >= best) return;
        const auto& e = g.edges()[order[i]];
        std::int32_t a = dsu.find((std::int32_t)g.index_of(e.u));
        std::int32_t b = dsu.find((std::int32_t)g.index_of(e.v));
        if (a == b || dsu.size[a] + dsu.size[b] <= K) {
            std::size_t m = dsu.mark();
            dsu.unite(a, b);
            recurse(i + 1, removed_count);
            dsu.rollback(m);
        }
        removed[order[i]] = 1;
        recurse(i + 1, removed_count + 1);
        removed[order[i]] = 0;
    }
};

struct VertexBnB {
    const LabeledGraph& g;
    std::int64_t K;
    std::vector<std::uint32_t> order; // dense indices, high degree first
    std::vector<char> state;          // 0 undecided, 1 kept, 2 removed
    std::vector<char> best_removed;
    std::size_t best;

    VertexBnB(const LabeledGraph& gr, std::int64_t k, std::size_t initial_best,
              std::vector<char> initial_removed)
        : g(gr), K(k), state(gr.vertex_count(), 0), best_removed(std::move(initial_removed)),
          best(initial_best) {
        order.resize(g.vertex_count());
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
            int da = g.plain_degree(g.vertex_at(a)), db = g.plain_degree(g.vertex_at(b));
            if (da != db) return da > db;
            return a < b;
        });
    }

    bool kept_component_fits(std::uint32_t seed) {
        std::int64_t count = 0;
        std::vector<std::uint32_t> stack{seed};
        std::set<std::uint32_t> seen{seed};
        while (!stack.empty()) {
            std::uint32_t x = stack.back();
            stack.pop_back();
            if (++count > K) return false;
            for (auto [y, ei] : g.adjacency(x))
                if (state[y] == 1 && seen.insert(y).second) stack.push_back(y);
        }
        return true;
    }

    void recurse(std::size_t i, std::size_t removed_count) {
        if (removed_count >= best) return;
        if (i == order.size()) {
            best = removed_count;
            best_removed.assign(g.vertex_count(), 0);
            for (std::uint32_t v = 0; v < g.vertex_count(); ++v)
                if (state[v] == 2) best_removed[v] = 1;
            return;
        }
        std::uint32_t v = order[i];
        state[v] = 1;
        if (kept_component_fits(v)) recurse(i + 1, removed_count);
        state[v] = 2;
        recurse(i + 1, removed_count + 1);
        state[v] = 0;
    }
};

PartitionCertificate make_edge_certificate(const LabeledGraph& g, std::int64_t K,
                                           const std::vector<char>& removed) {
    PartitionCertificate cert;
    cert.mode = RemovalMode::Edge;
    cert.K = K;
    for (std::size_t ei = 0; ei < g.edge_count(); ++ei)
        if (removed[ei]) cert.removed_edges.push_back({g.edges()[ei].u, g.edges()[ei].v});
    std::sort(cert.removed_edges.begin(), cert.removed_edges.end());
    cert.epsilon = Rational((std::int64_t)cert.removed_edges.size(), (std::int64_t)g.vertex_count());
    return cert;
}

PartitionCertificate make_vertex_certificate(const LabeledGraph& g, std::int64_t K,
                                             const std::vector<char>& removed) {
    PartitionCertificate cert;
    cert.mode = RemovalMode::Vertex;
    cert.K = K;
    for (std::uint32_t i = 0; i < g.vertex_count(); ++i)
        if (removed[i]) cert.removed_vertices.push_back(g.vertex_at(i));
    std::sort(cert.removed_vertices.begin(), cert.removed_vertices.end());
    cert.epsilon =
        Rational((std::int64_t)cert.removed_vertices.size(), (std::int64_t)g.vertex_count());
    return cert;
}

} // namespace

PartitionCertificate partition_exact(const LabeledGraph& g, std::int64_t K, RemovalMode mode,
                                     ExactMethod method) {
    if (K < 1) throw error(errc::precondition, "component bound K must be >= 1");
    if (g.vertex_count() == 0)
        throw error(errc::precondition, "partition of the empty graph is undefined");

    const std::size_t m = g.edge_count(), n = g.vertex_count();
    if (mode == RemovalMode::Edge) {
        bool enumerate = method == ExactMethod::Enumerate ||
                         (method == ExactMethod::Auto && m <= kEnumerateEdgeGuard);
        if (enumerate) {
            if (m > kEnumerateEdgeGuard)
                throw error(errc::capacity,
                            "subset enumeration is guarded to " +
                                std::to_string(kEnumerateEdgeGuard) +
                                " edges; use branch-and-bound or partition_heuristic");
            std::vector<char> removed(m, 0);
            auto pick = enumerate_min_subset(m, [&](const std::vector<std::size_t>& sel) {
                std::fill(removed.begin(), removed.end(), 0);
                for (std::size_t ei : sel) removed[ei] = 1;
                return components_fit(g, removed, {}, K);
            });
            std::fill(removed.begin(), removed.end(), 0);
            for (std::size_t ei : *pick) removed[ei] = 1;
            return make_edge_certificate(g, K, removed);
        }
        if (m > kBranchBoundEdgeGuard)
            throw error(errc::capacity, "instance exceeds the exact-search guard of " +
                                            std::to_string(kBranchBoundEdgeGuard) +
                                            " edges; use partition_heuristic");
        auto warm = partition_heuristic(g, K, HeuristicStrategy::BfsChunks, RemovalMode::Edge);
        std::vector<char> warm_removed(m, 0);
        for (auto [u, v] : warm.removed_edges) warm_removed[*g.find_edge(u, v)] = 1;
        EdgeBnB bnb(g, K, warm.removed_edges.size() + 1, warm_removed);
        bnb.recurse(0, 0);
        return make_edge_certificate(g, K, bnb.best_removed);
    }

    bool enumerate = method == ExactMethod::Enumerate ||
                     (method == ExactMethod::Auto && n <= kEnumerateVertexGuard);
    if (enumerate) {
        if (n > kEnumerateVertexGuard)
            throw error(errc::capacity, "subset enumeration is guarded to " +
                                            std::to_string(kEnumerateVertexGuard) +
                                            " vertices; use branch-and-bound or partition_heuristic");
        std::vector<char> removed(n, 0);
        auto pick = enumerate_min_subset(n, [&](const std::vector<std::size_t>& sel) {
            std::fill(removed.begin(), removed.end(), 0);
            for (std::size_t vi : sel) removed[vi] = 1;
            return components_fit(g, {}, removed, K);
        });
        std::fill(removed.begin(), removed.end(), 0);
        for (std::size_t vi : *pick) removed[vi] = 1;
        return make_vertex_certificate(g, K, removed);
    }
    if (n > kBranchBoundVertexGuard)
        throw error(errc::capacity, "instance exceeds the exact-search guard of " +
                                        std::to_string(kBranchBoundVertexGuard) +
                                        " vertices; use partition_heuristic");
    auto warm = partition_heuristic(g, K, HeuristicStrategy::BfsChunks, RemovalMode::Vertex);
    std::vector<char> warm_removed(n, 0);
    for (VertexId v : warm.removed_vertices) warm_removed[g.index_of(v)] = 1;
    VertexBnB bnb(g, K, warm.removed_vertices.size() + 1, warm_removed);
    bnb.recurse(0, 0);
    return make_vertex_certificate(g, K, bnb.best_removed);
}

bool is_planar(const LabeledGraph& g) {
    using BoostGraph = boost::adjacency_list<boost::vecS, boost::vecS, boost::undirectedS>;
    BoostGraph bg(g.vertex_count());
    for (const auto& e : g.edges())
        boost::add_edge(g.index_of(e.u), g.index_of(e.v), bg);
    return boost::boyer_myrvold_planarity_test(bg);
}

namespace {

// Deterministic BFS order within each component, rooted at the smallest id.
std::vector<std::vector<std::uint32_t>> component_bfs_orders(const LabeledGraph& g) {
    std::vector<char> seen(g.vertex_count(), 0);
    std::vector<std::vector<std::uint32_t>> orders;
    for (std::uint32_t s = 0; s < g.vertex_count(); ++s) {
        if (seen[s]) continue;
        std::vector<std::uint32_t> order;
        std::queue<std::uint32_t> q;
        q.push(s);
        seen[s] = 1;
        while (!q.empty()) {
            std::uint32_t x = q.front();
            q.pop();
            order.push_back(x);
            for (auto [y, ei] : g.adjacency(x))
                if (!seen[y]) {
                    seen[y] = 1;
                    q.push(y);
                }
        }
        orders.push_back(std::move(order));
    }
    return orders;
}

void bfs_chunks_edge(const LabeledGraph& g, std::int64_t K, std::vector<char>& removed) {
    std::vector<std::int32_t> chunk(g.vertex_count(), -1);
    std::int32_t next_chunk = 0;
    for (const auto& order : component_bfs_orders(g)) {
        for (std::size_t i = 0; i < order.size(); ++i) {
            if (i % K == 0) ++next_chunk;
            chunk[order[i]] = next_chunk;
        }
    }
    for (std::size_t ei = 0; ei < g.edge_count(); ++ei) {
        const auto& e = g.edges()[ei];
        if (chunk[g.index_of(e.u)] != chunk[g.index_of(e.v)]) removed[ei] = 1;
    }
}

// Grow regions of K vertices; their outside frontiers are removed, so the
// kept regions are pairwise non-adjacent.
void bfs_chunks_vertex(const LabeledGraph& g, std::int64_t K, std::vector<char>& removed) {
    std::vector<char> assigned(g.vertex_count(), 0);
    for (std::uint32_t s = 0; s < g.vertex_count(); ++s) {
        if (assigned[s]) continue;
        std::vector<std::uint32_t> region;
        std::queue<std::uint32_t> q;
        q.push(s);
        assigned[s] = 1;
        while (!q.empty() && (std::int64_t)region.size() < K) {
            std::uint32_t x = q.front();
            q.pop();
            if (removed[x]) continue;
            region.push_back(x);
            for (auto [y, ei] : g.adjacency(x))
                if (!assigned[y]) {
                    assigned[y] = 1;
                    q.push(y);
                }
        }
        // everything still queued borders the region: remove it
        while (!q.empty()) {
            removed[q.front()] = 1;
            q.pop();
        }
        for (std::uint32_t x : region)
            for (auto [y, ei] : g.adjacency(x))
                if (!assigned[y]) {
                    assigned[y] = 1;
                    removed[y] = 1;
                }
    }
}

// Recursive balanced BFS-level cuts.
void level_split(const LabeledGraph& g, const std::vector<std::uint32_t>& piece, std::int64_t K,
                 RemovalMode mode, std::vector<char>& removed_edges,
                 std::vector<char>& removed_vertices) {
    if ((std::int64_t)piece.size() <= K) return;

    std::set<std::uint32_t> in(piece.begin(), piece.end());
    auto alive = [&](std::uint32_t y, std::uint32_t ei) {
        if (!in.count(y)) return false;
        if (mode == RemovalMode::Vertex && removed_vertices[y]) return false;
        if (mode == RemovalMode::Edge && removed_edges[ei]) return false;
        return true;
    };
    auto bfs_levels = [&](std::uint32_t root) {
        std::map<std::uint32_t, std::int32_t> level;
        std::vector<std::uint32_t> frontier{root};
        level[root] = 0;
        std::int32_t depth = 0;
        while (!frontier.empty()) {
            std::vector<std::uint32_t> next;
            for (std::uint32_t x : frontier)
                for (auto [y, ei] : g.adjacency(x)) {
                    if (!alive(y, ei) || level.count(y)) continue;
                    level[y] = depth + 1;
                    next.push_back(y);
                }
            frontier = std::move(next);
            ++depth;
        }
        return level;
    };

    // the piece may have fallen apart under earlier cuts: recurse per part
    auto reach = bfs_levels(piece.front());
    if (reach.size() < piece.size()) {
        std::vector<std::uint32_t> here, rest;
        for (std::uint32_t x : piece) (reach.count(x) ? here : rest).push_back(x);
        level_split(g, here, K, mode, removed_edges, removed_vertices);
        level_split(g, rest, K, mode, removed_edges, removed_vertices);
        return;
    }

    // far-point BFS for a diameter-ish layering
    std::uint32_t far = piece.front();
    for (const auto& [v, d] : reach)
        if (d > reach.at(far)) far = v;
    auto level = bfs_levels(far);

    std::int32_t h = 0;
    for (const auto& [v, d] : level) h = std::max(h, d);
    if (h == 0) return; // single vertex; nothing to cut

    // pick the cut between levels t and t+1: balanced if possible, then by
    // fewest crossing edges
    std::vector<std::int64_t> level_size(h + 1, 0);
    std::vector<std::int64_t> level_cut(h, 0);
    for (const auto& [v, d] : level) ++level_size[d];
    for (std::uint32_t x : piece)
        for (auto [y, ei] : g.adjacency(x))
            if (alive(y, ei) && level.at(y) == level.at(x) + 1) ++level_cut[level.at(x)];
    std::int64_t total = (std::int64_t)piece.size();
    std::int64_t best_t = -1, best_cut = 0, best_balance = 0;
    std::int64_t below = 0;
    for (std::int32_t t = 0; t < h; ++t) {
        below += level_size[t];
        std::int64_t balance = std::max(below, total - below);
        std::int64_t cut = level_cut[t];
        bool balanced = 3 * balance <= 2 * total;
        bool had_balanced = best_t >= 0 && 3 * best_balance <= 2 * total;
        bool better;
        if (best_t < 0)
            better = true;
        else if (balanced != had_balanced)
            better = balanced;
        else if (balanced)
            better = cut < best_cut;
        else
            better = balance < best_balance || (balance == best_balance && cut < best_cut);
        if (better) {
            best_t = t;
            best_cut = cut;
            best_balance = balance;
        }
    }

    std::vector<std::uint32_t> lo, hi;
    for (std::uint32_t x : piece) (level.at(x) <= best_t ? lo : hi).push_back(x);
    if (mode == RemovalMode::Edge) {
        for (std::uint32_t x : lo) {
            if (level.at(x) != best_t) continue;
            for (auto [y, ei] : g.adjacency(x))
                if (alive(y, ei) && level.at(y) == best_t + 1) removed_edges[ei] = 1;
        }
    } else {
        // remove the whole cut level; it stays out of both sides
        std::vector<std::uint32_t> lo2;
        for (std::uint32_t x : lo)
            if (level.at(x) == best_t)
                removed_vertices[x] = 1;
            else
                lo2.push_back(x);
        lo = std::move(lo2);
    }
    level_split(g, lo, K, mode, removed_edges, removed_vertices);
    level_split(g, hi, K, mode, removed_edges, removed_vertices);
}

} // namespace

PartitionCertificate partition_heuristic(const LabeledGraph& g, std::int64_t K,
                                         HeuristicStrategy strategy, RemovalMode mode) {
    if (K < 1) throw error(errc::precondition, "component bound K must be >= 1");
    if (g.vertex_count() == 0)
        throw error(errc::precondition, "partition of the empty graph is undefined");

    std::vector<char> removed_edges(g.edge_count(), 0);
    std::vector<char> removed_vertices(g.vertex_count(), 0);

    if (strategy == HeuristicStrategy::BfsChunks) {
        if (mode == RemovalMode::Edge)
            bfs_chunks_edge(g, K, removed_edges);
        else
            bfs_chunks_vertex(g, K, removed_vertices);
    } else {
        if (!is_planar(g))
            throw error(errc::strategy_unavailable,
                        "planar separator strategy requires a planar graph");
        auto [comp, count] = g.components();
        std::vector<std::vector<std::uint32_t>> pieces(count);
        for (std::uint32_t i = 0; i < g.vertex_count(); ++i) pieces[comp[i]].push_back(i);
        for (auto& piece : pieces)
            level_split(g, piece, K, mode, removed_edges, removed_vertices);
    }

    PartitionCertificate cert = mode == RemovalMode::Edge
                                    ? make_edge_certificate(g, K, removed_edges)
                                    : make_vertex_certificate(g, K, removed_vertices);
    if (!certificate_valid(g, cert))
        throw error(errc::precondition, "heuristic produced an invalid certificate");
    return cert;
}

FilterResult filter_components(const LabeledGraph& g_delta,
                               const std::vector<std::pair<VertexId, VertexId>>& removed_edges,
                               const Rational& sqrt_eps) {
    auto [comp, count] = g_delta.components();
    std::vector<std::int64_t> verts(count, 0), inside(count, 0);
    for (std::uint32_t i = 0; i < g_delta.vertex_count(); ++i) ++verts[comp[i]];
    std::int64_t inside_total = 0;
    for (auto [u, v] : removed_edges) {
        if (!g_delta.has_vertex(u) || !g_delta.has_vertex(v)) continue;
        std::uint32_t cu = comp[g_delta.index_of(u)], cv = comp[g_delta.index_of(v)];
        if (cu != cv) continue;
        ++inside[cu];
        ++inside_total;
    }
    FilterResult res;
    std::vector<char> bad(count, 0);
    for (std::uint32_t c = 0; c < count; ++c) {
        if (sqrt_eps == Rational(0))
            bad[c] = inside[c] > 0;
        else
            bad[c] = Rational(inside[c], verts[c]) >= sqrt_eps;
    }
    for (std::uint32_t i = 0; i < g_delta.vertex_count(); ++i)
        (bad[comp[i]] ? res.bad : res.good).push_back(g_delta.vertex_at(i));
    std::sort(res.good.begin(), res.good.end());
    std::sort(res.bad.begin(), res.bad.end());
    std::int64_t n = (std::int64_t)g_delta.vertex_count();
    res.mass_good = Rational((std::int64_t)res.good.size(), n);
    res.mass_bad = Rational((std::int64_t)res.bad.size(), n);
    res.removed_inside_measure = Rational(inside_total, n);
    return res;
}

ActionGraphResult action_graph(const std::vector<VertexId>& folner_set,
                               const PermutationAction& f2_action) {
    auto sch = schreier(f2_action, folner_set);
    return ActionGraphResult{std::move(sch.graph), sch.boundary_drops};
}

} // namespace schreierlab
