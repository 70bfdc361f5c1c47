#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include "schreierlab/graph.hpp"
#include "schreierlab/localstats.hpp"
#include "schreierlab/hyperfinite.hpp"
#include "schreierlab/rational.hpp"
#include "schreierlab/words.hpp"

namespace schreierlab {

// One basic cycle: a loop, a double edge (2-cycle), or a longer simple cycle.
// For k >= 2 cycles, labels[i] sits on the step verts[i] -> verts[(i+1) % k];
// a 2-cycle lists its two parallel labels as the two steps.
struct BasicCycle {
    bool is_loop = false;
    std::vector<VertexId> verts;     // loop: single vertex
    std::vector<std::string> labels; // loop: single label

    VertexId loop_vertex() const { return verts.front(); }
    std::size_t length() const { return labels.size(); }
};

struct VerifyReport {
    bool ok = true;
    std::string violation; // first violated invariant, with witness
};

// Checks the amoeba axioms: connectivity, one incidence of each label
// A,B,C,D per vertex, loops labeled C/D and appearing 0 or 2 per vertex,
// every block a simple cycle, pairwise cycle intersections of at most one
// vertex, and cycle-tree acyclicity (union-find on the incidence structure).
VerifyReport verify_amoeba(const LabeledGraph& g);

class Amoeba {
public:
    static Amoeba minimal();
    // throws malformed-input with the verify report when g is not an amoeba
    static Amoeba from_graph(LabeledGraph g);

    const LabeledGraph& graph() const { return g_; }
    const std::vector<BasicCycle>& basic_cycles() const { return cycles_; }
    std::size_t vertex_count() const { return g_.vertex_count(); }

    // the Gamma = C2*C2*C2*C2 action: follow the uniquely labeled edge, stay
    // put on a loop
    VertexId act(const std::string& generator, VertexId v) const;
    VertexId act_label(LabelId label, VertexId v) const;
    VertexId act_word(const Word& w, VertexId v) const; // word over c2_star(4)

    static const Presentation& group(); // C2*C2*C2*C2 with generators A,B,C,D

private:
    Amoeba() = default;
    LabeledGraph g_;
    std::vector<BasicCycle> cycles_;
    std::vector<std::array<std::uint32_t, 4>> action_; // vertex idx x label -> idx
    friend Amoeba amoeba_from_verified(LabeledGraph g);
};

struct CycleMove {
    std::size_t cycle_id; // index into basic_cycles(); must not be a loop
};
struct LoopMove {
    VertexId vertex; // must carry exactly two loops
};
using Move = std::variant<CycleMove, LoopMove>;

// All moves applicable to a: one CycleMove per non-loop basic cycle, one
// LoopMove per two-loop vertex; deterministic order.
std::vector<Move> valid_moves(const Amoeba& a);

struct Covering {
    std::unordered_map<VertexId, VertexId> map; // source vertex -> target vertex
};

VerifyReport verify_covering(const Amoeba& source, const Amoeba& target, const Covering& phi);

struct DoubleResult {
    Amoeba amoeba;
    Covering covering;
};

// Two-fold covering: unroll a non-loop basic cycle to double length, or
// replace a two-loop pair by a 2-cycle between the lifts; everything else is
// duplicated on two sheets. Sheet 0 keeps the original vertex ids.
DoubleResult double_amoeba(const Amoeba& a, const Move& move);

// Largest k with a loop-free, cycle-free ball of radius k around v;
// -1 when v itself carries a loop.
int tree_radius(const Amoeba& a, VertexId v);

struct AmoebaTower {
    std::vector<Amoeba> levels;
    std::vector<Covering> coverings;  // coverings[i]: levels[i+1] -> levels[i]
    std::vector<VertexId> basepoints; // basepoints[i] in levels[i]
    std::vector<int> radii;           // tree_radius at the basepoint per level
    std::vector<std::pair<int, std::size_t>> schedule; // k -> level index n_k

    // composite covering map from level `from` down to level `to`
    VertexId project(std::size_t from, std::size_t to, VertexId v) const;
    std::optional<std::size_t> scheduled_level(int k) const;
};

inline constexpr std::int64_t kDefaultVertexBudget = 1 << 20;

// Nearest-cycle-first tower construction from the minimal amoeba: while the
// basepoint's tree radius is below k, double the spoiling cycle closest to
// the basepoint (ties by cycle id), lifting the basepoint to the smaller id.
AmoebaTower build_tower(int k_target, std::int64_t vertex_budget = kDefaultVertexBudget);
void extend_tower(AmoebaTower& tower, int k_target,
                  std::int64_t vertex_budget = kDefaultVertexBudget);

struct FreenessWitness {
    std::size_t level; // m
    VertexId point;    // moved point in the fiber over q
};

// Finite-level witness that the cylinder over q in level n contains a point
// moved by gamma: climbs to a level whose basepoint ball of radius
// dist(q, p_n) + |gamma| is a tree, walks the fiber, verifies the move.
FreenessWitness freeness_witness(const AmoebaTower& tower, const Word& gamma, std::size_t n,
                                 VertexId q);

struct LevelStats {
    std::size_t level = 0;
    std::int64_t vertices = 0;
    PartitionCertificate certificate; // planar-separator heuristic, edge mode
    BallCensus ball_census;           // labeled census at the requested radius
    bool fibers_ok = true;            // covering into the previous level is 2-to-1
    bool transitive = true;           // Gamma-orbit of one vertex is everything
    Rational census_gap;              // distance to the previous level's census
};

std::vector<LevelStats> level_stats(const AmoebaTower& tower, std::int64_t K, int radius);

} // namespace schreierlab
