#include "schreierlab/amoeba.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <queue>
#include <set>

namespace schreierlab {

namespace {

const std::array<const char*, 4> kLabels = {"A", "B", "C", "D"};

struct MultiEdge {
    std::uint32_t u, v;
    LabelId label;
};

struct MultiGraph {
    std::vector<MultiEdge> medges; // loops excluded
    std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> madj; // (other, medge id)
};

MultiGraph expand_multigraph(const LabeledGraph& g) {
    MultiGraph mg;
    mg.madj.assign(g.vertex_count(), {});
    for (const auto& e : g.edges()) {
        std::uint32_t ui = g.index_of(e.u), vi = g.index_of(e.v);
        for (LabelId l : e.labels) {
            std::uint32_t id = (std::uint32_t)mg.medges.size();
            mg.medges.push_back({ui, vi, l});
            mg.madj[ui].push_back({vi, id});
            mg.madj[vi].push_back({ui, id});
        }
    }
    return mg;
}

// Iterative biconnected components over the multigraph; returns blocks as
// lists of medge ids. Parallel edges land in a common 2-cycle block because
// only the exact entering edge is skipped as the tree edge.
std::vector<std::vector<std::uint32_t>> blocks_of(const MultiGraph& mg, std::size_t n) {
    constexpr std::uint32_t kNone = UINT32_MAX;
    std::vector<std::int64_t> disc(n, -1), low(n, 0);
    std::vector<std::uint32_t> edge_stack;
    std::vector<std::vector<std::uint32_t>> blocks;
    struct Frame {
        std::uint32_t v;
        std::uint32_t parent_medge;
        std::size_t next;
    };
    std::int64_t timer = 0;
    std::vector<Frame> st;
    for (std::uint32_t root = 0; root < n; ++root) {
        if (disc[root] >= 0) continue;
        disc[root] = low[root] = timer++;
        st.push_back({root, kNone, 0});
        while (!st.empty()) {
            Frame& f = st.back();
            if (f.next < mg.madj[f.v].size()) {
                auto [w, me] = mg.madj[f.v][f.next++];
                if (me == f.parent_medge) continue;
                if (disc[w] < 0) {
                    edge_stack.push_back(me);
                    disc[w] = low[w] = timer++;
                    st.push_back({w, me, 0});
                } else if (disc[w] < disc[f.v]) {
                    edge_stack.push_back(me);
                    low[f.v] = std::min(low[f.v], disc[w]);
                }
            } else {
                std::uint32_t v = f.v;
                std::uint32_t pm = f.parent_medge;
                st.pop_back();
                if (st.empty()) continue;
                std::uint32_t u = st.back().v;
                low[u] = std::min(low[u], low[v]);
                if (low[v] >= disc[u]) {
                    std::vector<std::uint32_t> blk;
                    while (true) {
                        std::uint32_t me = edge_stack.back();
                        edge_stack.pop_back();
                        blk.push_back(me);
                        if (me == pm) break;
                    }
                    blocks.push_back(std::move(blk));
                }
            }
        }
    }
    return blocks;
}

struct CycleAnalysis {
    bool ok = true;
    std::string violation;
    std::vector<BasicCycle> cycles;
};

// Derives the basic cycles (loops + cycle blocks) and checks invariants
// (i)-(iii): cover by simple cycles, pairwise intersections, tree pattern.
CycleAnalysis derive_cycles(const LabeledGraph& g) {
    CycleAnalysis out;
    auto fail = [&](const std::string& msg) {
        out.ok = false;
        out.violation = msg;
        return out;
    };

    MultiGraph mg = expand_multigraph(g);
    auto blocks = blocks_of(mg, g.vertex_count());

    for (const auto& blk : blocks) {
        if (blk.size() == 1) {
            const auto& me = mg.medges[blk[0]];
            return fail("edge {" + std::to_string(g.vertex_at(me.u)) + "," +
                        std::to_string(g.vertex_at(me.v)) + "} lies on no cycle");
        }
        // a simple cycle: #edges == #vertices, every vertex incident twice
        std::map<std::uint32_t, std::vector<std::pair<std::uint32_t, LabelId>>> local;
        for (std::uint32_t meid : blk) {
            const auto& me = mg.medges[meid];
            local[me.u].push_back({me.v, me.label});
            local[me.v].push_back({me.u, me.label});
        }
        if (local.size() != blk.size())
            return fail("block at vertex " + std::to_string(g.vertex_at(local.begin()->first)) +
                        " is not a simple cycle");
        for (const auto& [vi, inc] : local)
            if (inc.size() != 2)
                return fail("vertex " + std::to_string(g.vertex_at(vi)) +
                            " has " + std::to_string(inc.size()) + " incidences inside one block");

        // deterministic traversal from the smallest vertex id
        std::uint32_t start = local.begin()->first;
        for (const auto& [vi, inc] : local)
            if (g.vertex_at(vi) < g.vertex_at(start)) start = vi;
        BasicCycle cyc;
        if (blk.size() == 2) {
            // double edge: order the two parallel labels ascending
            const auto& me0 = mg.medges[blk[0]];
            std::uint32_t other = me0.u == start ? me0.v : me0.u;
            std::vector<LabelId> ls = {mg.medges[blk[0]].label, mg.medges[blk[1]].label};
            std::sort(ls.begin(), ls.end());
            cyc.verts = {g.vertex_at(start), g.vertex_at(other)};
            cyc.labels = {g.label_name(ls[0]), g.label_name(ls[1])};
        } else {
            std::uint32_t prev = start;
            auto& first_inc = local[start];
            std::sort(first_inc.begin(), first_inc.end(),
                      [&](auto& a, auto& b) { return g.vertex_at(a.first) < g.vertex_at(b.first); });
            std::uint32_t cur = first_inc[0].first;
            cyc.verts.push_back(g.vertex_at(start));
            cyc.labels.push_back(g.label_name(first_inc[0].second));
            while (cur != start) {
                cyc.verts.push_back(g.vertex_at(cur));
                // in a cycle of length >= 3 the two neighbors differ
                const auto& inc = local[cur];
                auto step = inc[0].first == prev ? inc[1] : inc[0];
                cyc.labels.push_back(g.label_name(step.second));
                prev = cur;
                cur = step.first;
            }
        }
        out.cycles.push_back(std::move(cyc));
    }

    // loops are their own basic cycles
    for (std::uint32_t i = 0; i < g.vertex_count(); ++i)
        for (LabelId l : g.loop_labels_at(i)) {
            BasicCycle cyc;
            cyc.is_loop = true;
            cyc.verts = {g.vertex_at(i)};
            cyc.labels = {g.label_name(l)};
            out.cycles.push_back(std::move(cyc));
        }

    std::sort(out.cycles.begin(), out.cycles.end(), [](const BasicCycle& a, const BasicCycle& b) {
        if (a.verts.front() != b.verts.front()) return a.verts.front() < b.verts.front();
        if (a.length() != b.length()) return a.length() < b.length();
        if (a.verts != b.verts) return a.verts < b.verts;
        return a.labels < b.labels;
    });

    // pairwise intersections and the tree pattern, via per-vertex cycle lists
    std::unordered_map<VertexId, std::vector<std::size_t>> through;
    for (std::size_t c = 0; c < out.cycles.size(); ++c)
        for (VertexId v : out.cycles[c].verts) through[v].push_back(c);
    std::map<std::pair<std::size_t, std::size_t>, int> pair_count;
    for (const auto& [v, cs] : through)
        for (std::size_t i = 0; i < cs.size(); ++i)
            for (std::size_t j = i + 1; j < cs.size(); ++j) ++pair_count[{cs[i], cs[j]}];
    for (const auto& [pair, count] : pair_count)
        if (count > 1)
            return fail("basic cycles " + std::to_string(pair.first) + " and " +
                        std::to_string(pair.second) + " share " + std::to_string(count) +
                        " vertices");

    // tree pattern: the cycle/shared-vertex incidence structure is acyclic
    {
        std::unordered_map<VertexId, std::size_t> shared_node;
        std::size_t nodes = out.cycles.size();
        for (const auto& [v, cs] : through)
            if (cs.size() >= 2) shared_node[v] = nodes++;
        std::vector<std::size_t> parent(nodes);
        for (std::size_t i = 0; i < nodes; ++i) parent[i] = i;
        std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
            while (parent[x] != x) x = parent[x] = parent[parent[x]];
            return x;
        };
        for (const auto& [v, node] : shared_node)
            for (std::size_t c : through[v]) {
                std::size_t a = find(c), b = find(node);
                if (a == b)
                    return fail("cycle pattern around vertex " + std::to_string(v) +
                                " is not a tree");
                parent[a] = b;
            }
    }
    return out;
}

} // namespace

VerifyReport verify_amoeba(const LabeledGraph& g) {
    VerifyReport rep;
    auto fail = [&](const std::string& msg) {
        rep.ok = false;
        rep.violation = msg;
        return rep;
    };
    if (!g.finalized()) return fail("graph not finalized");
    if (g.vertex_count() == 0) return fail("amoeba must be nonempty");

    // connectivity (loops do not connect anything)
    auto [comp, count] = g.components();
    if (count != 1) return fail("graph has " + std::to_string(count) + " components");

    // labels are A,B,C,D with exactly one incidence each per vertex
    for (const auto& name : g.label_names())
        if (std::find(kLabels.begin(), kLabels.end(), name) == kLabels.end())
            return fail("label \"" + name + "\" is not one of A,B,C,D");
    for (VertexId v : g.vertices()) {
        std::map<std::string, int> inc;
        std::uint32_t vi = g.index_of(v);
        for (auto [ni, ei] : g.adjacency(vi))
            for (LabelId l : g.edges()[ei].labels) ++inc[g.label_name(l)];
        for (LabelId l : g.loop_labels_at(vi)) ++inc[g.label_name(l)];
        for (const char* want : kLabels)
            if (inc[want] != 1)
                return fail("vertex " + std::to_string(v) + " has " + std::to_string(inc[want]) +
                            " incidences of label " + want);
    }

    // loops: labels C or D, multiplicity 0 or 2
    for (std::uint32_t i = 0; i < g.vertex_count(); ++i) {
        const auto& loops = g.loop_labels_at(i);
        for (LabelId l : loops) {
            const std::string& name = g.label_name(l);
            if (name != "C" && name != "D")
                return fail("loop at vertex " + std::to_string(g.vertex_at(i)) + " labeled " +
                            name + "; loops must be C or D");
        }
        if (loops.size() != 0 && loops.size() != 2)
            return fail("vertex " + std::to_string(g.vertex_at(i)) + " carries " +
                        std::to_string(loops.size()) + " loops");
    }

    auto cyc = derive_cycles(g);
    if (!cyc.ok) return fail(cyc.violation);
    return rep;
}

const Presentation& Amoeba::group() {
    static const Presentation p = Presentation::c2_star(4);
    return p;
}

Amoeba Amoeba::from_graph(LabeledGraph g) {
    if (!g.finalized()) g.finalize();
    auto rep = verify_amoeba(g);
    if (!rep.ok) throw error(errc::malformed_input, "not an amoeba: " + rep.violation);
    Amoeba a;
    a.g_ = std::move(g);
    auto cyc = derive_cycles(a.g_);
    a.cycles_ = std::move(cyc.cycles);

    // action table: one target per label per vertex, guaranteed by the axioms
    a.action_.assign(a.g_.vertex_count(), {0, 0, 0, 0});
    for (std::uint32_t i = 0; i < a.g_.vertex_count(); ++i)
        for (int l = 0; l < 4; ++l) a.action_[i][l] = i;
    for (const auto& e : a.g_.edges()) {
        std::uint32_t ui = a.g_.index_of(e.u), vi = a.g_.index_of(e.v);
        for (LabelId l : e.labels) {
            int pos = (int)(std::find(kLabels.begin(), kLabels.end(), a.g_.label_name(l)) -
                            kLabels.begin());
            a.action_[ui][pos] = vi;
            a.action_[vi][pos] = ui;
        }
    }
    return a;
}

Amoeba Amoeba::minimal() {
    LabeledGraph g;
    g.set_degree_bound(4);
    g.add_vertex(0);
    g.add_vertex(1);
    g.add_edge(0, 1, "A");
    g.add_edge(0, 1, "B");
    g.add_loop(0, "C");
    g.add_loop(0, "D");
    g.add_loop(1, "C");
    g.add_loop(1, "D");
    g.finalize();
    return from_graph(std::move(g));
}

VertexId Amoeba::act(const std::string& generator, VertexId v) const {
    auto it = std::find(kLabels.begin(), kLabels.end(), generator);
    if (it == kLabels.end())
        throw error(errc::malformed_input, "unknown generator \"" + generator + "\"");
    return g_.vertex_at(action_[g_.index_of(v)][it - kLabels.begin()]);
}

VertexId Amoeba::act_label(LabelId label, VertexId v) const {
    int pos = (int)(std::find(kLabels.begin(), kLabels.end(), g_.label_name(label)) -
                    kLabels.begin());
    return g_.vertex_at(action_[g_.index_of(v)][pos]);
}

VertexId Amoeba::act_word(const Word& w, VertexId v) const {
    VertexId cur = v;
    const auto& ls = w.letters();
    for (std::size_t i = ls.size(); i-- > 0;)
        cur = g_.vertex_at(action_[g_.index_of(cur)][ls[i].gen]);
    return cur;
}

std::vector<Move> valid_moves(const Amoeba& a) {
    std::vector<Move> out;
    for (std::size_t c = 0; c < a.basic_cycles().size(); ++c)
        if (!a.basic_cycles()[c].is_loop) out.push_back(CycleMove{c});
    for (VertexId v : a.graph().vertices())
        if (a.graph().loop_labels(v).size() == 2) out.push_back(LoopMove{v});
    return out;
}

VerifyReport verify_covering(const Amoeba& source, const Amoeba& target, const Covering& phi) {
    VerifyReport rep;
    auto fail = [&](const std::string& msg) {
        rep.ok = false;
        rep.violation = msg;
        return rep;
    };
    if (phi.map.size() != source.vertex_count()) return fail("covering map is not total");
    std::unordered_map<VertexId, int> fiber;
    for (const auto& [src, dst] : phi.map) {
        if (!source.graph().has_vertex(src)) return fail("covering source vertex missing");
        if (!target.graph().has_vertex(dst)) return fail("covering target vertex missing");
        ++fiber[dst];
    }
    for (VertexId v : target.graph().vertices())
        if (fiber[v] != 2)
            return fail("fiber over vertex " + std::to_string(v) + " has size " +
                        std::to_string(fiber[v]));
    // equivariance for every generator doubles as label-preservation plus
    // star bijectivity, since both levels carry one incidence per label
    for (const auto& [src, dst] : phi.map)
        for (const char* gen : kLabels)
            if (phi.map.at(source.act(gen, src)) != target.act(gen, dst))
                return fail(std::string("covering does not commute with generator ") + gen +
                            " at vertex " + std::to_string(src));
    return rep;
}

DoubleResult double_amoeba(const Amoeba& a, const Move& move) {
    const LabeledGraph& g = a.graph();
    VertexId min_id = g.vertices().front(), max_id = g.vertices().back();
    VertexId offset = max_id - min_id + 1;
    auto lift = [offset](VertexId v, int sheet) { return v + (sheet ? offset : 0); };

    LabeledGraph h;
    h.set_degree_bound(4);
    for (VertexId v : g.vertices()) {
        h.add_vertex(lift(v, 0));
        h.add_vertex(lift(v, 1));
    }

    if (std::holds_alternative<CycleMove>(move)) {
        std::size_t cid = std::get<CycleMove>(move).cycle_id;
        if (cid >= a.basic_cycles().size())
            throw error(errc::malformed_input, "no basic cycle with id " + std::to_string(cid));
        const BasicCycle& cyc = a.basic_cycles()[cid];
        if (cyc.is_loop)
            throw error(errc::precondition,
                        "cycle move needs a non-loop basic cycle; use a loop move");

        // everything outside the cycle is duplicated per sheet
        std::set<std::pair<VertexId, VertexId>> cycle_records;
        const std::size_t k = cyc.length();
        for (std::size_t i = 0; i < k; ++i) {
            VertexId u = cyc.verts[i], v = cyc.verts[(i + 1) % k];
            cycle_records.insert({std::min(u, v), std::max(u, v)});
        }
        for (const auto& e : g.edges()) {
            if (cycle_records.count({e.u, e.v})) continue;
            for (LabelId l : e.labels)
                for (int sheet = 0; sheet < 2; ++sheet)
                    h.add_edge(lift(e.u, sheet), lift(e.v, sheet), g.label_name(l));
        }
        for (std::uint32_t i = 0; i < g.vertex_count(); ++i)
            for (LabelId l : g.loop_labels_at(i))
                for (int sheet = 0; sheet < 2; ++sheet)
                    h.add_loop(lift(g.vertex_at(i), sheet), g.label_name(l));

        // unroll: all steps stay inside their sheet except the closing one
        for (std::size_t i = 0; i < k; ++i) {
            VertexId u = cyc.verts[i], v = cyc.verts[(i + 1) % k];
            const std::string& label = cyc.labels[i];
            if (i + 1 < k) {
                h.add_edge(lift(u, 0), lift(v, 0), label);
                h.add_edge(lift(u, 1), lift(v, 1), label);
            } else {
                h.add_edge(lift(u, 0), lift(v, 1), label);
                h.add_edge(lift(u, 1), lift(v, 0), label);
            }
        }
    } else {
        VertexId x = std::get<LoopMove>(move).vertex;
        if (!g.has_vertex(x))
            throw error(errc::malformed_input, "no vertex " + std::to_string(x));
        const auto& loops = g.loop_labels(x);
        if (loops.size() != 2)
            throw error(errc::precondition,
                        "loop move needs a vertex with exactly two loops; vertex " +
                            std::to_string(x) + " has " + std::to_string(loops.size()));

        for (const auto& e : g.edges())
            for (LabelId l : e.labels)
                for (int sheet = 0; sheet < 2; ++sheet)
                    h.add_edge(lift(e.u, sheet), lift(e.v, sheet), g.label_name(l));
        for (std::uint32_t i = 0; i < g.vertex_count(); ++i) {
            VertexId v = g.vertex_at(i);
            for (LabelId l : g.loop_labels_at(i)) {
                if (v == x) continue; // the chosen pair becomes a 2-cycle
                for (int sheet = 0; sheet < 2; ++sheet)
                    h.add_loop(lift(v, sheet), g.label_name(l));
            }
        }
        h.add_edge(lift(x, 0), lift(x, 1), g.label_name(loops[0]));
        h.add_edge(lift(x, 0), lift(x, 1), g.label_name(loops[1]));
    }

    h.finalize();
    DoubleResult res{Amoeba::from_graph(std::move(h)), Covering{}};
    for (VertexId v : g.vertices()) {
        res.covering.map[lift(v, 0)] = v;
        res.covering.map[lift(v, 1)] = v;
    }
    auto rep = verify_covering(res.amoeba, a, res.covering);
    if (!rep.ok)
        throw error(errc::precondition, "doubling produced an invalid covering: " + rep.violation);
    return res;
}

int tree_radius(const Amoeba& a, VertexId v) {
    auto dist = a.graph().bfs_distances(v);
    int best = (int)a.vertex_count() + 1;
    for (const BasicCycle& cyc : a.basic_cycles()) {
        int obstruction;
        if (cyc.is_loop) {
            obstruction = (int)dist[a.graph().index_of(cyc.loop_vertex())];
        } else {
            obstruction = 0;
            for (VertexId u : cyc.verts)
                obstruction = std::max(obstruction, (int)dist[a.graph().index_of(u)]);
        }
        best = std::min(best, obstruction);
    }
    return best - 1;
}

VertexId AmoebaTower::project(std::size_t from, std::size_t to, VertexId v) const {
    if (from < to || from >= levels.size())
        throw error(errc::precondition, "bad level pair in tower projection");
    VertexId cur = v;
    for (std::size_t i = from; i > to; --i) cur = coverings[i - 1].map.at(cur);
    return cur;
}

std::optional<std::size_t> AmoebaTower::scheduled_level(int k) const {
    for (const auto& [kk, level] : schedule)
        if (kk == k) return level;
    return std::nullopt;
}

namespace {

// The spoiler closest to the basepoint among cycles inside the radius-k ball,
// ties broken by cycle id.
std::optional<Move> nearest_spoiler(const Amoeba& a, VertexId basepoint, int k) {
    auto dist = a.graph().bfs_distances(basepoint);
    std::optional<Move> best;
    int best_near = 0;
    std::size_t best_id = 0;
    for (std::size_t c = 0; c < a.basic_cycles().size(); ++c) {
        const BasicCycle& cyc = a.basic_cycles()[c];
        int near = INT32_MAX, far = 0;
        for (VertexId u : cyc.verts) {
            int d = (int)dist[a.graph().index_of(u)];
            near = std::min(near, d);
            far = std::max(far, d);
        }
        int obstruction = cyc.is_loop ? near : far;
        if (obstruction > k) continue; // not inside the ball
        if (!best || near < best_near || (near == best_near && c < best_id)) {
            best_near = near;
            best_id = c;
            if (cyc.is_loop)
                best = LoopMove{cyc.loop_vertex()};
            else
                best = CycleMove{c};
        }
    }
    return best;
}

} // namespace

void extend_tower(AmoebaTower& tower, int k_target, std::int64_t vertex_budget) {
    if (k_target < 1) throw error(errc::precondition, "k_target must be >= 1");
    if (tower.levels.empty()) {
        tower.levels.push_back(Amoeba::minimal());
        tower.basepoints.push_back(0);
        tower.radii.push_back(tree_radius(tower.levels[0], 0));
    }
    int next_k = tower.schedule.empty() ? 1 : tower.schedule.back().first + 1;
    for (int k = next_k; k <= k_target; ++k) {
        while (tower.radii.back() < k) {
            const Amoeba& cur = tower.levels.back();
            VertexId p = tower.basepoints.back();
            if (2 * (std::int64_t)cur.vertex_count() > vertex_budget)
                throw error(errc::capacity,
                            "vertex budget " + std::to_string(vertex_budget) +
                                " exceeded while extending the tower to k = " + std::to_string(k));
            auto spoiler = nearest_spoiler(cur, p, k);
            if (!spoiler)
                throw error(errc::precondition, "no spoiling cycle although radius < k");
            auto doubled = double_amoeba(cur, *spoiler);
            // both lifts of p are p and p+offset; the smaller id is p itself
            tower.levels.push_back(std::move(doubled.amoeba));
            tower.coverings.push_back(std::move(doubled.covering));
            tower.basepoints.push_back(p);
            tower.radii.push_back(tree_radius(tower.levels.back(), p));
        }
        tower.schedule.push_back({k, tower.levels.size() - 1});
    }
}

AmoebaTower build_tower(int k_target, std::int64_t vertex_budget) {
    AmoebaTower tower;
    extend_tower(tower, k_target, vertex_budget);
    return tower;
}

FreenessWitness freeness_witness(const AmoebaTower& tower, const Word& gamma, std::size_t n,
                                 VertexId q) {
    if (gamma.empty())
        throw error(errc::precondition, "freeness witness needs a nontrivial reduced word");
    if (n >= tower.levels.size()) throw error(errc::precondition, "no such tower level");
    const Amoeba& gn = tower.levels[n];
    if (!gn.graph().has_vertex(q))
        throw error(errc::malformed_input, "vertex " + std::to_string(q) + " not in level");

    auto dist_n = gn.graph().bfs_distances(tower.basepoints[n]);
    int d = (int)dist_n[gn.graph().index_of(q)];
    int needed = d + (int)gamma.length();

    std::size_t m = SIZE_MAX;
    for (std::size_t i = n; i < tower.levels.size(); ++i)
        if (tower.radii[i] >= needed) {
            m = i;
            break;
        }
    if (m == SIZE_MAX)
        throw error(errc::capacity, "tower schedule does not reach k = " + std::to_string(needed) +
                                        "; extend the tower");

    const Amoeba& gm = tower.levels[m];
    auto dist_m = gm.graph().bfs_distances(tower.basepoints[m]);
    for (std::uint32_t i = 0; i < gm.vertex_count(); ++i) {
        if ((int)dist_m[i] != d) continue;
        VertexId r = gm.graph().vertex_at(i);
        if (tower.project(m, n, r) != q) continue;
        if (gm.act_word(gamma, r) != r) return FreenessWitness{m, r};
    }
    throw error(errc::precondition,
                "no moved fiber point at distance " + std::to_string(d) +
                    "; the tree ball argument should have produced one");
}

std::vector<LevelStats> level_stats(const AmoebaTower& tower, std::int64_t K, int radius) {
    if (tower.levels.empty()) throw error(errc::precondition, "tower has no levels");
    std::vector<LevelStats> out;
    for (std::size_t i = 0; i < tower.levels.size(); ++i) {
        const Amoeba& a = tower.levels[i];
        LevelStats st;
        st.level = i;
        st.vertices = (std::int64_t)a.vertex_count();
        st.certificate =
            partition_heuristic(a.graph(), K, HeuristicStrategy::PlanarSeparator, RemovalMode::Edge);
        st.ball_census = census(a.graph(), radius, true);

        if (i > 0) {
            std::unordered_map<VertexId, int> fiber;
            for (const auto& [src, dst] : tower.coverings[i - 1].map) ++fiber[dst];
            for (VertexId v : tower.levels[i - 1].graph().vertices())
                if (fiber[v] != 2) st.fibers_ok = false;
            st.census_gap = census_distance(st.ball_census, out.back().ball_census);
        }

        // Gamma-orbit of the first vertex
        std::set<VertexId> orbit;
        std::vector<VertexId> stack{a.graph().vertices().front()};
        orbit.insert(stack.front());
        while (!stack.empty()) {
            VertexId v = stack.back();
            stack.pop_back();
            for (const char* gen : {"A", "B", "C", "D"}) {
                VertexId w = a.act(gen, v);
                if (orbit.insert(w).second) stack.push_back(w);
            }
        }
        st.transitive = orbit.size() == a.vertex_count();
        out.push_back(std::move(st));
    }
    return out;
}

} // namespace schreierlab
