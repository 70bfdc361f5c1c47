#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "schreierlab/actions.hpp"
#include "schreierlab/graph.hpp"
#include "schreierlab/rational.hpp"
#include "schreierlab/words.hpp"

namespace schreierlab {

// Normalized counting measure on a finite support: every point weighs 1/|W|.
struct FinitelySupportedMean {
    std::vector<VertexId> support; // sorted, distinct

    static FinitelySupportedMean uniform_on(std::vector<VertexId> w);
    Rational mass(const std::vector<VertexId>& subset) const;
    bool contains(VertexId v) const;
    std::int64_t size() const { return (std::int64_t)support.size(); }
};

// |outgoing edges of F| / |F|, exact.
Rational isoperimetric(const LabeledGraph& g, const std::vector<VertexId>& F);

enum class FolnerShape { GraphBall, Box };

struct FolnerResult {
    bool found = false;
    std::vector<VertexId> set;  // on success: connected, contains basepoint
    Rational constant;          // isoperimetric constant of `set`, or best seen
    Rational best_seen;         // smallest constant over all candidates tried
};

// Grows balls around the basepoint (graph-metric by default; L-infinity boxes
// when grid coordinates are supplied) and returns the first candidate with
// isoperimetric constant <= target_eps and size <= max_size. Failure is a
// value carrying the best constant found.
FolnerResult folner_search(const LabeledGraph& g, VertexId basepoint, const Rational& target_eps,
                           std::int64_t max_size, FolnerShape shape = FolnerShape::GraphBall,
                           const GridWindow* coords = nullptr);

struct DisjointifyResult {
    bool ok = false;
    std::vector<std::size_t> picked;                  // indices into the input sequence
    std::vector<std::vector<VertexId>> trimmed;       // picked sets minus earlier picks
    std::size_t blocking_step = 0;                    // 1-based, set when !ok
};

// Greedy extraction of pairwise-disjoint trimmed sets: step k admits the next
// set whose untrimmed share exceeds 1 - delta_k. Default schedule 10^-k.
DisjointifyResult disjointify(const std::vector<std::vector<VertexId>>& sets,
                              const std::vector<Rational>& loss_schedule = {});

// (1/2) sum_{x in W} deg_sub(x) / |W|; loops contribute 1 to the degree.
// Every vertex of `sub` must lie in the mean's support.
Rational edge_measure(const LabeledGraph& sub, const FinitelySupportedMean& mean);

struct DensityBoundVerdict {
    Rational lhs; // alpha * mass(V(R))
    Rational rhs; // edge measure of R
    bool holds = false;
};

// Checks alpha*mu(V(R)) <= mu_E(R) after verifying every component of R has
// edge density >= alpha (loop-free R). A density violation is a precondition
// error naming the component.
DensityBoundVerdict check_density_bound(const LabeledGraph& R, const Rational& alpha,
                                        const FinitelySupportedMean& mean);

enum class RemovalMode { Edge, Vertex };

struct PartitionCertificate {
    RemovalMode mode = RemovalMode::Edge;
    std::int64_t K = 0;
    std::vector<std::pair<VertexId, VertexId>> removed_edges; // edge mode
    std::vector<VertexId> removed_vertices;                   // vertex mode
    Rational epsilon;                                         // |removed| / |V|

    std::size_t removed_count() const {
        return mode == RemovalMode::Edge ? removed_edges.size() : removed_vertices.size();
    }
};

// Recomputes components after removal and checks the size bound and epsilon.
bool certificate_valid(const LabeledGraph& g, const PartitionCertificate& cert);

enum class ExactMethod { Auto, Enumerate, BranchAndBound };

// Minimum-removal partition into components of size <= K. Subset enumeration
// up to 25 edges (20 vertices), branch-and-bound on betweenness-ordered edges
// beyond; instances past the search guard raise a capacity error pointing at
// the heuristic.
PartitionCertificate partition_exact(const LabeledGraph& g, std::int64_t K,
                                     RemovalMode mode = RemovalMode::Edge,
                                     ExactMethod method = ExactMethod::Auto);

enum class HeuristicStrategy { BfsChunks, PlanarSeparator };

// Valid certificate with no optimality promise. bfs_chunks cuts BFS orders
// into K-sized runs; planar_separator checks planarity, then recursively
// splits by balanced BFS-level cuts until pieces fit.
PartitionCertificate partition_heuristic(const LabeledGraph& g, std::int64_t K,
                                         HeuristicStrategy strategy, RemovalMode mode = RemovalMode::Edge);

bool is_planar(const LabeledGraph& g);

struct FilterResult {
    std::vector<VertexId> good;  // union of good components
    std::vector<VertexId> bad;   // union of bad components
    Rational mass_good;          // |good| / |V(g)|
    Rational mass_bad;
    Rational removed_inside_measure; // mu_E of removed edges inside components
};

// Splits the components of g_delta by the density of removed edges inside
// them: a component Z is bad when |removed inside Z| / |V(Z)| reaches
// sqrt_eps (for sqrt_eps = 0: when any removed edge lies inside).
FilterResult filter_components(const LabeledGraph& g_delta,
                               const std::vector<std::pair<VertexId, VertexId>>& removed_edges,
                               const Rational& sqrt_eps);

struct ActionGraphResult {
    LabeledGraph graph;
    std::int64_t defect = 0; // generator images leaving the set, over s,t,s^-1,t^-1
};

// The T_n builder: directed-labeled restriction of an F2-action to a Folner
// set; fixed points become loops, edges leaving the set are dropped and
// counted as the almost-invariance defect.
ActionGraphResult action_graph(const std::vector<VertexId>& folner_set,
                               const PermutationAction& f2_action);

} // namespace schreierlab
