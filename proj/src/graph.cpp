#include "schreierlab/graph.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <set>

namespace schreierlab {

void LabeledGraph::add_vertex(VertexId v) {
    if (finalized_) throw error(errc::precondition, "graph is finalized");
    vertices_.push_back(v);
}

void LabeledGraph::add_edge(VertexId u, VertexId v, const std::string& label) {
    if (finalized_) throw error(errc::precondition, "graph is finalized");
    if (u == v) throw error(errc::malformed_input, "edge endpoints must differ; use add_loop");
    raw_edges_.push_back({std::min(u, v), std::max(u, v), label});
}

void LabeledGraph::add_loop(VertexId v, const std::string& label) {
    if (finalized_) throw error(errc::precondition, "graph is finalized");
    raw_loops_.push_back({v, label});
}

LabelId LabeledGraph::intern(const std::string& label) {
    auto it = label_index_.find(label);
    if (it != label_index_.end()) return it->second;
    LabelId id = (LabelId)label_names_.size();
    label_names_.push_back(label);
    label_index_[label] = id;
    return id;
}

void LabeledGraph::finalize() {
    if (finalized_) return;

    std::sort(vertices_.begin(), vertices_.end());
    vertices_.erase(std::unique(vertices_.begin(), vertices_.end()), vertices_.end());
    index_.reserve(vertices_.size());
    for (std::uint32_t i = 0; i < vertices_.size(); ++i) index_[vertices_[i]] = i;

    // intern labels in lexicographic order so LabelId order == name order
    std::set<std::string> all_labels;
    for (const auto& e : raw_edges_) all_labels.insert(e.label);
    for (const auto& l : raw_loops_) all_labels.insert(l.second);
    for (const auto& s : all_labels) intern(s);

    std::map<std::pair<VertexId, VertexId>, std::vector<LabelId>> grouped;
    for (const auto& e : raw_edges_) {
        if (!index_.count(e.u) || !index_.count(e.v))
            throw error(errc::malformed_input, "edge endpoint not among declared vertices");
        grouped[{e.u, e.v}].push_back(label_index_.at(e.label));
    }
    edges_.reserve(grouped.size());
    for (auto& [key, labels] : grouped) {
        std::sort(labels.begin(), labels.end());
        edges_.push_back({key.first, key.second, std::move(labels)});
    }

    loops_.assign(vertices_.size(), {});
    for (const auto& [v, label] : raw_loops_) {
        if (!index_.count(v))
            throw error(errc::malformed_input, "loop vertex not among declared vertices");
        loops_[index_.at(v)].push_back(label_index_.at(label));
    }
    for (auto& ls : loops_) std::sort(ls.begin(), ls.end());

    adj_.assign(vertices_.size(), {});
    for (std::uint32_t ei = 0; ei < edges_.size(); ++ei) {
        std::uint32_t ui = index_.at(edges_[ei].u), vi = index_.at(edges_[ei].v);
        adj_[ui].push_back({vi, ei});
        adj_[vi].push_back({ui, ei});
    }
    for (auto& a : adj_) std::sort(a.begin(), a.end());

    raw_edges_.clear();
    raw_edges_.shrink_to_fit();
    raw_loops_.clear();
    raw_loops_.shrink_to_fit();
    finalized_ = true;

    if (degree_bound_ > 0) {
        for (VertexId v : vertices_)
            if (degree(v) > degree_bound_)
                throw error(errc::malformed_input,
                            "vertex " + std::to_string(v) + " exceeds degree bound " +
                                std::to_string(degree_bound_));
    }
}

void LabeledGraph::require_finalized() const {
    if (!finalized_) throw error(errc::precondition, "graph not finalized");
}

std::uint32_t LabeledGraph::index_of(VertexId v) const {
    auto it = index_.find(v);
    if (it == index_.end())
        throw error(errc::malformed_input, "vertex " + std::to_string(v) + " not in graph");
    return it->second;
}

std::optional<std::size_t> LabeledGraph::find_edge(VertexId u, VertexId v) const {
    require_finalized();
    if (u > v) std::swap(u, v);
    auto it = std::lower_bound(edges_.begin(), edges_.end(), std::make_pair(u, v),
                               [](const Edge& e, const std::pair<VertexId, VertexId>& k) {
                                   return std::make_pair(e.u, e.v) < k;
                               });
    if (it == edges_.end() || it->u != u || it->v != v) return std::nullopt;
    return (std::size_t)(it - edges_.begin());
}

std::vector<std::string> LabeledGraph::edge_label_names(const Edge& e) const {
    std::vector<std::string> out;
    out.reserve(e.labels.size());
    for (LabelId l : e.labels) out.push_back(label_names_[l]);
    return out;
}

std::size_t LabeledGraph::loop_count() const {
    std::size_t n = 0;
    for (const auto& ls : loops_) n += ls.size();
    return n;
}

int LabeledGraph::degree(VertexId v) const {
    std::uint32_t i = index_of(v);
    int d = (int)loops_[i].size();
    for (auto [n, ei] : adj_[i]) d += (int)edges_[ei].labels.size();
    return d;
}

int LabeledGraph::plain_degree(VertexId v) const {
    return (int)adj_[index_of(v)].size();
}

int LabeledGraph::measure_degree(VertexId v) const {
    std::uint32_t i = index_of(v);
    return (int)adj_[i].size() + (int)loops_[i].size();
}

std::pair<std::vector<std::uint32_t>, std::uint32_t> LabeledGraph::components() const {
    return components_excluding({}, {});
}

std::pair<std::vector<std::uint32_t>, std::uint32_t>
LabeledGraph::components_excluding(const std::vector<char>& edge_removed,
                                   const std::vector<char>& vertex_removed) const {
    require_finalized();
    const std::uint32_t n = (std::uint32_t)vertices_.size();
    std::vector<std::uint32_t> comp(n, UINT32_MAX);
    std::uint32_t count = 0;
    std::vector<std::uint32_t> stack;
    for (std::uint32_t s = 0; s < n; ++s) {
        if (comp[s] != UINT32_MAX) continue;
        if (!vertex_removed.empty() && vertex_removed[s]) continue;
        comp[s] = count;
        stack.push_back(s);
        while (!stack.empty()) {
            std::uint32_t x = stack.back();
            stack.pop_back();
            for (auto [y, ei] : adj_[x]) {
                if (!edge_removed.empty() && edge_removed[ei]) continue;
                if (!vertex_removed.empty() && vertex_removed[y]) continue;
                if (comp[y] == UINT32_MAX) {
                    comp[y] = count;
                    stack.push_back(y);
                }
            }
        }
        ++count;
    }
    return {std::move(comp), count};
}

std::vector<std::uint32_t> LabeledGraph::bfs_distances(VertexId from) const {
    require_finalized();
    std::vector<std::uint32_t> dist(vertices_.size(), UINT32_MAX);
    std::queue<std::uint32_t> q;
    std::uint32_t s = index_of(from);
    dist[s] = 0;
    q.push(s);
    while (!q.empty()) {
        std::uint32_t x = q.front();
        q.pop();
        for (auto [y, ei] : adj_[x])
            if (dist[y] == UINT32_MAX) {
                dist[y] = dist[x] + 1;
                q.push(y);
            }
    }
    return dist;
}

LabeledGraph LabeledGraph::induced(const std::vector<VertexId>& subset) const {
    require_finalized();
    LabeledGraph out;
    out.set_degree_bound(degree_bound_);
    std::set<VertexId> in(subset.begin(), subset.end());
    for (VertexId v : in) {
        if (!has_vertex(v))
            throw error(errc::malformed_input, "subset vertex " + std::to_string(v) + " not in graph");
        out.add_vertex(v);
        for (LabelId l : loops_[index_of(v)]) out.add_loop(v, label_names_[l]);
    }
    // walk adjacency of the subset rather than the whole edge list, so small
    // subgraphs of big graphs stay cheap
    for (VertexId v : in) {
        for (auto [ni, ei] : adj_[index_of(v)]) {
            const Edge& e = edges_[ei];
            if (e.u != v) continue; // visit each edge from its smaller endpoint
            if (!in.count(e.v)) continue;
            for (LabelId l : e.labels) out.add_edge(e.u, e.v, label_names_[l]);
        }
    }
    out.finalize();
    return out;
}

LabeledGraph LabeledGraph::without_loops() const {
    require_finalized();
    LabeledGraph out;
    out.set_degree_bound(degree_bound_);
    for (VertexId v : vertices_) out.add_vertex(v);
    for (const Edge& e : edges_)
        for (LabelId l : e.labels) out.add_edge(e.u, e.v, label_names_[l]);
    out.finalize();
    return out;
}

bool LabeledGraph::operator==(const LabeledGraph& o) const {
    if (vertices_ != o.vertices_ || degree_bound_ != o.degree_bound_) return false;
    if (edges_.size() != o.edges_.size()) return false;
    for (std::size_t i = 0; i < edges_.size(); ++i) {
        if (edges_[i].u != o.edges_[i].u || edges_[i].v != o.edges_[i].v) return false;
        if (edge_label_names(edges_[i]) != o.edge_label_names(o.edges_[i])) return false;
    }
    for (std::uint32_t i = 0; i < vertices_.size(); ++i) {
        std::vector<std::string> a, b;
        for (LabelId l : loops_[i]) a.push_back(label_names_[l]);
        for (LabelId l : o.loops_[i]) b.push_back(o.label_names_[l]);
        if (a != b) return false;
    }
    return true;
}

RootedBall ball(const LabeledGraph& g, VertexId v, int r) {
    if (!g.has_vertex(v))
        throw error(errc::malformed_input, "ball root " + std::to_string(v) + " not in graph");
    if (r < 0) throw error(errc::precondition, "ball radius must be >= 0");
    // truncated BFS: cost proportional to the ball, not the ambient graph
    std::unordered_map<std::uint32_t, int> dist;
    std::vector<std::uint32_t> frontier{g.index_of(v)};
    dist[g.index_of(v)] = 0;
    for (int depth = 1; depth <= r && !frontier.empty(); ++depth) {
        std::vector<std::uint32_t> next;
        for (std::uint32_t x : frontier)
            for (auto [y, ei] : g.adjacency(x))
                if (!dist.count(y)) {
                    dist[y] = depth;
                    next.push_back(y);
                }
        frontier = std::move(next);
    }
    std::vector<VertexId> inside;
    inside.reserve(dist.size());
    for (const auto& [i, d] : dist) inside.push_back(g.vertex_at(i));
    RootedBall b;
    b.graph = g.induced(inside);
    b.root = v;
    b.radius = r;
    return b;
}

EdgeColoring proper_edge_coloring(const LabeledGraph& g) {
    if (g.loop_count() > 0)
        throw error(errc::unsupported_input, "proper edge coloring requires a loop-free graph");
    EdgeColoring col;
    col.color_of_edge.assign(g.edge_count(), -1);
    for (std::size_t ei = 0; ei < g.edge_count(); ++ei) {
        const auto& e = g.edges()[ei];
        std::set<int> used;
        for (VertexId end : {e.u, e.v})
            for (auto [n, other] : g.adjacency(g.index_of(end)))
                if (col.color_of_edge[other] >= 0) used.insert(col.color_of_edge[other]);
        int c = 0;
        while (used.count(c)) ++c;
        col.color_of_edge[ei] = c;
        col.colors = std::max(col.colors, c + 1);
    }
    return col;
}

LabeledGraph coloring_as_labeled_graph(const LabeledGraph& g, const EdgeColoring& col) {
    LabeledGraph out;
    out.set_degree_bound(g.degree_bound());
    for (VertexId v : g.vertices()) out.add_vertex(v);
    for (std::size_t ei = 0; ei < g.edge_count(); ++ei) {
        const auto& e = g.edges()[ei];
        out.add_edge(e.u, e.v, "c" + std::to_string(col.color_of_edge[ei] + 1));
    }
    out.finalize();
    return out;
}

std::vector<BasicSubgraph> basic_subgraph_decomposition(const LabeledGraph& g) {
    LabeledGraph base = g.loop_count() > 0 ? g.without_loops() : g;
    if (base.edge_count() == 0) return {};
    EdgeColoring col = proper_edge_coloring(base);
    std::vector<BasicSubgraph> out(col.colors);
    for (std::size_t ei = 0; ei < base.edge_count(); ++ei) {
        const auto& e = base.edges()[ei];
        out[col.color_of_edge[ei]].pairs.push_back({e.u, e.v});
    }
    return out;
}

} // namespace schreierlab
