#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <unordered_map>
#include <vector>

#include "schreierlab/graph.hpp"
#include "schreierlab/rational.hpp"
#include "schreierlab/words.hpp"

namespace schreierlab {

// Window of the bi-infinite anchor sequence {i_n} with signs f(i_n). Blocks
// [i_n, i_{n+1}] of even n are s-cycles (direction by f(i_n)), odd blocks are
// t-cycles; the other generator fixes block interiors.
struct F2ZConfig {
    std::int64_t n_min = 0;            // index of anchors.front()
    std::vector<std::int64_t> anchors; // strictly increasing
    std::vector<int> signs;            // +1 / -1, one per anchor

    std::int64_t n_max() const { return n_min + (std::int64_t)anchors.size() - 1; }
    void validate() const;

    // Quasi-periodic default: anchor gaps 2 + (n mod 3), f(i_n) = +1 iff
    // n = 0,1 (mod 4), anchors extended until they cover [-radius, radius]
    // with one spare block on each side.
    static F2ZConfig default_config(std::int64_t radius);

    std::string to_text() const;
    static F2ZConfig from_text(const std::string& text);

    bool operator==(const F2ZConfig& o) const {
        return n_min == o.n_min && anchors == o.anchors && signs == o.signs;
    }
};

// A finitely generated group acting on integer points of a finite window.
// Generator maps return nullopt where the action's knowledge ends; callers
// translate that into boundary handling.
class PermutationAction {
public:
    using GenFn = std::function<std::optional<std::int64_t>(std::int64_t)>;

    PermutationAction(Presentation p, std::vector<GenFn> forward, std::vector<GenFn> inverse);

    const Presentation& presentation() const { return pres_; }

    std::optional<std::int64_t> apply(int gen, int exponent, std::int64_t x) const;
    // symbol index into presentation().symmetric_symbols()
    std::optional<std::int64_t> apply_symbol(int symbol, std::int64_t x) const;
    int symbol_count() const { return (int)symbols_.size(); }
    const std::string& symbol_name(int symbol) const { return symbols_[symbol]; }

private:
    Presentation pres_;
    std::vector<GenFn> fwd_, inv_;
    std::vector<std::string> symbols_;
};

// The explicit F2-action on Z: s cycles even anchor blocks, t cycles odd
// ones, directions chosen by the sign function.
PermutationAction f2z_build(const F2ZConfig& config);

// Action from explicit generator tables (user-supplied permutations).
PermutationAction table_action(const Presentation& p,
                               std::vector<std::unordered_map<std::int64_t, std::int64_t>> tables);

// d-dimensional box window with row-major integer point ids.
struct GridWindow {
    std::vector<std::pair<std::int64_t, std::int64_t>> box; // inclusive [lo, hi] per axis

    int dimension() const { return (int)box.size(); }
    std::int64_t size() const;
    bool contains(const std::vector<std::int64_t>& c) const;
    std::int64_t encode(const std::vector<std::int64_t>& c) const;
    std::vector<std::int64_t> decode(std::int64_t id) const;
    std::vector<VertexId> all_ids() const;
};

// Translations of Z^d restricted to the box; generators x1..xd (x,y for
// d <= 2). Point ids are the box encoding.
PermutationAction zd_translation_action(const GridWindow& w);

// Right-to-left evaluation of w on x; throws boundary_escape if any
// intermediate point leaves the action's window.
std::int64_t act_word(const PermutationAction& a, const Word& w, std::int64_t x);

// Follow one generator's cycle from x. Returns the full cycle if it closes
// within max_steps, nullopt if evaluation escapes first.
std::optional<std::vector<std::int64_t>> generator_orbit(const PermutationAction& a, int symbol,
                                                         std::int64_t x,
                                                         std::size_t max_steps = 1u << 22);

struct FaithfulnessReport {
    // all nontrivial reduced words of length <= max_len in enumeration order,
    // with the least window point each moves (nullopt = fixes whole window)
    std::vector<std::pair<Word, std::optional<std::int64_t>>> witnesses;
    std::int64_t boundary_skips = 0; // points skipped because evaluation escaped
};

FaithfulnessReport faithfulness_witnesses(const PermutationAction& a, int max_len,
                                          const std::vector<std::int64_t>& window);
// Straight-line single-threaded reference; the parallel kernel must agree.
FaithfulnessReport faithfulness_witnesses_serial(const PermutationAction& a, int max_len,
                                                 const std::vector<std::int64_t>& window);

// phi: Z -> Z^d with unit steps between consecutive images (K = 1).
// d = 1 is the identity; d = 2 walks half-plane shells, positive indices in
// the upper half-plane, negative in the lower.
class SnakeBijection {
public:
    static SnakeBijection line();
    static SnakeBijection plane();

    int dimension() const { return dim_; }
    std::int64_t step_bound() const { return 1; } // K
    std::vector<std::int64_t> map(std::int64_t n) const;
    static std::int64_t l1(const std::vector<std::int64_t>& a, const std::vector<std::int64_t>& b);

private:
    explicit SnakeBijection(int d) : dim_(d) {}
    int dim_;
};

struct DisplacementProfile {
    std::vector<Rational> fraction; // fraction[n-1] = share of window with d(g(x),x) >= K*n
    Rational boundary_correction;   // (orbits cut by the window boundary) / |window|
    std::int64_t step_bound = 1;    // K
    bool within_bound = true;       // fraction(n) <= 1/n + boundary_correction for all n
};

DisplacementProfile displacement_profile(const PermutationAction& a, int symbol,
                                         const std::vector<std::int64_t>& window,
                                         const std::optional<SnakeBijection>& bijection,
                                         int n_max);
DisplacementProfile displacement_profile_serial(const PermutationAction& a, int symbol,
                                                const std::vector<std::int64_t>& window,
                                                const std::optional<SnakeBijection>& bijection,
                                                int n_max);

struct SchreierResult {
    LabeledGraph graph;
    std::int64_t boundary_drops = 0; // directed generator images falling outside the window
};

// Schreier graph of the action on the window; each generator image inside
// the window becomes a labeled edge (or loop at a fixed point), images
// leaving the window are dropped and counted.
SchreierResult schreier(const PermutationAction& a, const std::vector<VertexId>& window);

inline std::vector<std::int64_t> interval_window(std::int64_t lo, std::int64_t hi) {
    std::vector<std::int64_t> w;
    for (std::int64_t x = lo; x <= hi; ++x) w.push_back(x);
    return w;
}

} // namespace schreierlab
