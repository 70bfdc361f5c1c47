#include "schreierlab/localstats.hpp"

#include <algorithm>
#include <cstring>
#include <queue>
#include <set>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace schreierlab {

namespace {

constexpr std::uint8_t kCodeVersion = 1;
constexpr std::size_t kSearchBudget = 1u << 21;

struct BallView {
    int n = 0;
    int root = 0;
    std::vector<int> depth;
    std::vector<std::vector<std::pair<int, std::uint16_t>>> adj; // (neighbor, pair code)
    std::vector<std::uint16_t> loop_code; // label mask when labeled, count otherwise
};

// Flattens a rooted ball into dense indices with per-pair u16 codes.
BallView make_view(const RootedBall& b, bool labeled) {
    const LabeledGraph& g = b.graph;
    BallView view;
    view.n = (int)g.vertex_count();
    view.root = (int)g.index_of(b.root);

    if ((int)g.label_names().size() > 16 && labeled)
        throw error(errc::capacity, "canonical codes support at most 16 distinct labels");

    view.depth.assign(view.n, -1);
    std::queue<int> q;
    view.depth[view.root] = 0;
    q.push(view.root);
    while (!q.empty()) {
        int x = q.front();
        q.pop();
        for (auto [y, ei] : g.adjacency((std::uint32_t)x))
            if (view.depth[y] < 0) {
                view.depth[y] = view.depth[x] + 1;
                q.push((int)y);
            }
    }
    for (int i = 0; i < view.n; ++i)
        if (view.depth[i] < 0)
            throw error(errc::malformed_input, "rooted graph has vertices disconnected from root");

    view.adj.assign(view.n, {});
    for (const auto& e : g.edges()) {
        int ui = (int)g.index_of(e.u), vi = (int)g.index_of(e.v);
        std::uint16_t code = 1;
        if (labeled) {
            code = 0;
            for (LabelId l : e.labels) code |= (std::uint16_t)(1u << l);
        }
        view.adj[ui].push_back({vi, code});
        view.adj[vi].push_back({ui, code});
    }
    view.loop_code.assign(view.n, 0);
    for (int i = 0; i < view.n; ++i) {
        const auto& loops = g.loop_labels_at((std::uint32_t)i);
        if (labeled) {
            std::uint16_t mask = 0;
            for (LabelId l : loops) mask |= (std::uint16_t)(1u << l);
            view.loop_code[i] = mask;
        } else {
            view.loop_code[i] = (std::uint16_t)loops.size();
        }
    }
    return view;
}

void push_u16(std::vector<std::uint8_t>& out, std::uint16_t v) {
    out.push_back((std::uint8_t)(v >> 8));
    out.push_back((std::uint8_t)(v & 0xff));
}

struct Minimizer {
    const BallView& view;
    std::vector<std::uint8_t> best;
    bool have_best = false;
    std::size_t expansions = 0;

    std::vector<int> order;
    std::vector<int> pos; // position in order, -1 if unplaced
    std::vector<std::uint8_t> current;

    explicit Minimizer(const BallView& v) : view(v), pos(v.n, -1) {}

    // pair codes of the candidate to the placed prefix, then its loop code
    std::vector<std::uint8_t> encode_row(int candidate) const {
        int placed = (int)order.size();
        std::vector<std::uint16_t> to_prefix(placed, 0);
        for (auto [y, code] : view.adj[candidate])
            if (pos[y] >= 0) to_prefix[pos[y]] = code;
        std::vector<std::uint8_t> out;
        out.reserve(2 * placed + 2);
        for (int j = 0; j < placed; ++j) push_u16(out, to_prefix[j]);
        push_u16(out, view.loop_code[candidate]);
        return out;
    }

    // The transposition u <-> w is an automorphism fixing everything else
    // exactly when their incidences to third vertices agree; branches from
    // two such candidates generate the same encodings, so one suffices.
    bool interchangeable(int u, int w) const {
        if (view.loop_code[u] != view.loop_code[w]) return false;
        auto side = [&](int a, int b) {
            std::vector<std::pair<int, std::uint16_t>> s;
            for (auto [y, code] : view.adj[a])
                if (y != b) s.push_back({y, code});
            std::sort(s.begin(), s.end());
            return s;
        };
        return side(u, w) == side(w, u);
    }

    void run() {
        pos[view.root] = 0;
        order.push_back(view.root);
        push_u16(current, view.loop_code[view.root]);
        descend();
    }

    void descend() {
        if ((int)order.size() == view.n) {
            if (!have_best || current < best) {
                best = current;
                have_best = true;
            }
            return;
        }
        if (++expansions > kSearchBudget)
            throw error(errc::capacity, "canonical form search budget exceeded");

        // candidates: unplaced vertices of minimal depth (depth-monotone orders)
        int min_depth = INT32_MAX;
        for (int i = 0; i < view.n; ++i)
            if (pos[i] < 0) min_depth = std::min(min_depth, view.depth[i]);

        // only lexicographically minimal rows can extend an optimal order
        std::vector<std::pair<std::vector<std::uint8_t>, int>> rows;
        for (int i = 0; i < view.n; ++i) {
            if (pos[i] >= 0 || view.depth[i] != min_depth) continue;
            rows.push_back({encode_row(i), i});
        }
        std::sort(rows.begin(), rows.end());
        const auto& min_row = rows.front().first;

        std::vector<int> branch;
        for (const auto& [row, i] : rows) {
            if (row != min_row) break;
            bool dup = false;
            for (int b : branch)
                if (interchangeable(b, i)) {
                    dup = true;
                    break;
                }
            if (!dup) branch.push_back(i);
        }

        std::size_t base = current.size();
        for (int i : branch) {
            current.insert(current.end(), min_row.begin(), min_row.end());
            // prune: a prefix already above the best encoding cannot win
            if (!have_best ||
                std::memcmp(current.data(), best.data(), current.size()) <= 0) {
                pos[i] = (int)order.size();
                order.push_back(i);
                descend();
                order.pop_back();
                pos[i] = -1;
            }
            current.resize(base);
        }
    }
};

} // namespace

bool RootedBallCode::labeled() const {
    if (bytes.size() < 2) throw error(errc::malformed_input, "truncated ball code");
    return bytes[1] != 0;
}

std::string RootedBallCode::hex() const {
    static const char* digits = "0123456789abcdef";
    std::string out;
    out.reserve(bytes.size() * 2);
    for (std::uint8_t b : bytes) {
        out.push_back(digits[b >> 4]);
        out.push_back(digits[b & 0xf]);
    }
    return out;
}

RootedBallCode RootedBallCode::from_hex(const std::string& s) {
    if (s.size() % 2 != 0) throw error(errc::malformed_input, "odd-length hex code");
    auto nibble = [](char c) -> int {
        if (c >= '0' && c <= '9') return c - '0';
        if (c >= 'a' && c <= 'f') return c - 'a' + 10;
        if (c >= 'A' && c <= 'F') return c - 'A' + 10;
        throw error(errc::malformed_input, "bad hex digit");
    };
    RootedBallCode code;
    code.bytes.reserve(s.size() / 2);
    for (std::size_t i = 0; i < s.size(); i += 2)
        code.bytes.push_back((std::uint8_t)((nibble(s[i]) << 4) | nibble(s[i + 1])));
    return code;
}

RootedBallCode canonical_code(const RootedBall& b, bool labeled) {
    BallView view = make_view(b, labeled);

    RootedBallCode code;
    code.bytes.push_back(kCodeVersion);
    code.bytes.push_back(labeled ? 1 : 0);
    std::uint32_t n = (std::uint32_t)view.n;
    for (int shift = 24; shift >= 0; shift -= 8)
        code.bytes.push_back((std::uint8_t)((n >> shift) & 0xff));
    if (labeled) {
        const auto& names = b.graph.label_names(); // already sorted lexicographically
        code.bytes.push_back((std::uint8_t)names.size());
        for (const auto& name : names) {
            code.bytes.push_back((std::uint8_t)name.size());
            code.bytes.insert(code.bytes.end(), name.begin(), name.end());
        }
    }

    Minimizer m(view);
    m.run();
    code.bytes.insert(code.bytes.end(), m.best.begin(), m.best.end());
    return code;
}

Rational BallCensus::frequency(const RootedBallCode& c) const {
    auto it = counts.find(c);
    return Rational(it == counts.end() ? 0 : it->second, total);
}

namespace {

BallCensus census_impl(const LabeledGraph& g, int r, bool labeled, bool parallel) {
    if (r < 0) throw error(errc::precondition, "census radius must be >= 0");
    if (g.vertex_count() == 0)
        throw error(errc::malformed_input, "census of the empty graph is undefined");
    BallCensus out;
    out.radius = r;
    out.labeled = labeled;
    out.total = (std::int64_t)g.vertex_count();

    const std::int64_t n = out.total;
    if (!parallel) {
        for (std::int64_t i = 0; i < n; ++i) {
            RootedBallCode c = canonical_code(ball(g, g.vertex_at((std::uint32_t)i), r), labeled);
            ++out.counts[c];
        }
        return out;
    }

#ifdef _OPENMP
    std::vector<std::map<RootedBallCode, std::int64_t>> partial(omp_get_max_threads());
#pragma omp parallel for schedule(dynamic, 64)
    for (std::int64_t i = 0; i < n; ++i) {
        RootedBallCode c = canonical_code(ball(g, g.vertex_at((std::uint32_t)i), r), labeled);
        ++partial[omp_get_thread_num()][c];
    }
    for (const auto& part : partial)
        for (const auto& [code, count] : part) out.counts[code] += count;
    return out;
#else
    return census_impl(g, r, labeled, false);
#endif
}

} // namespace

BallCensus census(const LabeledGraph& g, int r, bool labeled) {
    return census_impl(g, r, labeled, true);
}

BallCensus census_serial(const LabeledGraph& g, int r, bool labeled) {
    return census_impl(g, r, labeled, false);
}

Rational census_distance(const BallCensus& a, const BallCensus& b) {
    if (a.radius != b.radius)
        throw error(errc::mismatch, "census distance needs equal radii");
    if (a.labeled != b.labeled)
        throw error(errc::mismatch, "census distance needs equal labeledness");
    std::set<RootedBallCode> codes;
    for (const auto& [c, k] : a.counts) codes.insert(c);
    for (const auto& [c, k] : b.counts) codes.insert(c);
    Rational sum;
    for (const auto& c : codes) sum += (a.frequency(c) - b.frequency(c)).abs();
    return sum * Rational(1, 2);
}

} // namespace schreierlab
