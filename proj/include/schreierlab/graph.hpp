#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "schreierlab/errors.hpp"

namespace schreierlab {

using VertexId = std::int64_t;
using LabelId = std::uint16_t;

// Finite bounded-degree graph with optional loops and per-edge generator
// labels. The one graph container of the library: Schreier graphs, amoebas,
// T_n action graphs, grids all live here.
//
// Label semantics: an edge record {u,v} with u < v carries label g exactly
// when g maps u to v. Inverse generators are recorded under their own name
// ("s^-1"), so the directed dynamics is recoverable from the undirected
// container. Order-2 generators need no direction at all.
//
// deg(v) counts labeled incidences: each edge label at v contributes 1, each
// loop contributes 1.
class LabeledGraph {
public:
    struct Edge {
        VertexId u, v;               // u < v
        std::vector<LabelId> labels; // sorted, nonempty
    };

    // -- construction (before finalize) --
    void add_vertex(VertexId v);
    void add_edge(VertexId u, VertexId v, const std::string& label);
    void add_loop(VertexId v, const std::string& label);
    void set_degree_bound(int d) { degree_bound_ = d; }
    // Sorts everything into canonical order, builds the adjacency index and
    // checks the degree bound. The graph is immutable afterwards.
    void finalize();

    bool finalized() const { return finalized_; }

    // -- queries --
    std::size_t vertex_count() const { return vertices_.size(); }
    const std::vector<VertexId>& vertices() const { return vertices_; }
    bool has_vertex(VertexId v) const { return index_.count(v) != 0; }
    std::uint32_t index_of(VertexId v) const;
    VertexId vertex_at(std::uint32_t i) const { return vertices_[i]; }

    const std::vector<Edge>& edges() const { return edges_; }
    std::size_t edge_count() const { return edges_.size(); }
    std::optional<std::size_t> find_edge(VertexId u, VertexId v) const;

    const std::vector<std::string>& label_names() const { return label_names_; }
    const std::string& label_name(LabelId l) const { return label_names_.at(l); }
    std::vector<std::string> edge_label_names(const Edge& e) const;
    // loop labels of v, sorted; empty if none
    const std::vector<LabelId>& loop_labels_at(std::uint32_t idx) const { return loops_[idx]; }
    const std::vector<LabelId>& loop_labels(VertexId v) const { return loops_[index_of(v)]; }
    std::size_t loop_count() const; // total individual loops

    int degree_bound() const { return degree_bound_; }

    // labeled degree: edge-label incidences + loops
    int degree(VertexId v) const;
    // plain degree: distinct incident edges, loops ignored
    int plain_degree(VertexId v) const;
    // plain degree + loop count; what edge measures integrate
    int measure_degree(VertexId v) const;

    // neighbors of dense index i as (neighbor dense index, edge index)
    const std::vector<std::pair<std::uint32_t, std::uint32_t>>& adjacency(std::uint32_t i) const {
        return adj_[i];
    }

    // component id per dense index (plain edges), and component count
    std::pair<std::vector<std::uint32_t>, std::uint32_t> components() const;
    // same but ignoring removed edges (by edge index) / removed vertices
    std::pair<std::vector<std::uint32_t>, std::uint32_t>
    components_excluding(const std::vector<char>& edge_removed,
                         const std::vector<char>& vertex_removed) const;

    // BFS distances from a vertex, plain edges; UINT32_MAX for unreachable
    std::vector<std::uint32_t> bfs_distances(VertexId from) const;

    // induced subgraph on a vertex subset: edges with both endpoints inside,
    // loops at included vertices; vertex ids preserved
    LabeledGraph induced(const std::vector<VertexId>& subset) const;
    LabeledGraph without_loops() const;

    bool operator==(const LabeledGraph& o) const;

private:
    LabelId intern(const std::string& label);
    void require_finalized() const;

    std::vector<VertexId> vertices_;
    std::unordered_map<VertexId, std::uint32_t> index_;
    std::vector<Edge> edges_;
    std::vector<std::vector<LabelId>> loops_;
    std::vector<std::string> label_names_;
    std::unordered_map<std::string, LabelId> label_index_;
    std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> adj_;
    int degree_bound_ = 0;
    bool finalized_ = false;

    // pre-finalize staging
    struct RawEdge { VertexId u, v; std::string label; };
    std::vector<RawEdge> raw_edges_;
    std::vector<std::pair<VertexId, std::string>> raw_loops_;
};

// A ball extracted from an ambient graph, rooted and radius-tagged.
struct RootedBall {
    LabeledGraph graph;
    VertexId root;
    int radius = 0;
};

// Induced rooted subgraph on {u : dist(u,v) <= r}, loops included.
RootedBall ball(const LabeledGraph& g, VertexId v, int r);

// A partial bijection t: A -> B whose pairs are ambient edges.
struct BasicSubgraph {
    std::vector<std::pair<VertexId, VertexId>> pairs; // (a, t(a))
};

struct EdgeColoring {
    int colors = 0;
    std::vector<int> color_of_edge; // by edge index of the input graph
};

// Greedy proper edge coloring with <= 2d-1 colors; rejects loops. Exposes any
// bounded-degree graph as a Schreier graph of C2 * ... * C2 (one order-2
// generator per color class).
EdgeColoring proper_edge_coloring(const LabeledGraph& g);

// Relabels g's edges by their color classes c1..cn.
LabeledGraph coloring_as_labeled_graph(const LabeledGraph& g, const EdgeColoring& col);

// Edge-disjoint cover of E(g) by partial matchings, one per color class.
std::vector<BasicSubgraph> basic_subgraph_decomposition(const LabeledGraph& g);

} // namespace schreierlab
