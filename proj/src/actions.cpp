#include "schreierlab/actions.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_set>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace schreierlab {

void F2ZConfig::validate() const {
    if (anchors.size() < 2)
        throw error(errc::malformed_input, "f2z config needs at least two anchors");
    if (signs.size() != anchors.size())
        throw error(errc::malformed_input, "f2z config needs one sign per anchor");
    for (std::size_t i = 0; i + 1 < anchors.size(); ++i)
        if (anchors[i] >= anchors[i + 1])
            throw error(errc::malformed_input, "anchors must be strictly increasing");
    for (int s : signs)
        if (s != 1 && s != -1) throw error(errc::malformed_input, "signs must be +1 or -1");
}

namespace {
std::int64_t floor_mod(std::int64_t a, std::int64_t m) { return ((a % m) + m) % m; }
} // namespace

F2ZConfig F2ZConfig::default_config(std::int64_t radius) {
    if (radius < 1) throw error(errc::precondition, "default config radius must be >= 1");
    auto gap = [](std::int64_t n) { return 2 + floor_mod(n, 3); };
    auto sign = [](std::int64_t n) { return floor_mod(n, 4) <= 1 ? 1 : -1; };

    F2ZConfig cfg;
    // walk left from i_0 = 0 until the anchor before -radius, then right past +radius,
    // one spare block each side so both extreme points sit in interior blocks
    std::int64_t n = 0, i = 0;
    while (i > -radius) {
        --n;
        i -= gap(n);
    }
    --n;
    i -= gap(n);
    cfg.n_min = n;
    std::int64_t cur = i;
    while (true) {
        cfg.anchors.push_back(cur);
        cfg.signs.push_back(sign(n));
        if (cur > radius) {
            cfg.anchors.push_back(cur + gap(n));
            cfg.signs.push_back(sign(n + 1));
            break;
        }
        cur += gap(n);
        ++n;
    }
    cfg.validate();
    return cfg;
}

std::string F2ZConfig::to_text() const {
    std::ostringstream out;
    out << "n_min " << n_min << "\n";
    out << "anchors";
    for (std::int64_t a : anchors) out << ' ' << a;
    out << "\nsigns";
    for (int s : signs) out << ' ' << (s > 0 ? '+' : '-');
    out << "\n";
    return out.str();
}

F2ZConfig F2ZConfig::from_text(const std::string& text) {
    F2ZConfig cfg;
    std::istringstream in(text);
    std::string key;
    bool saw_nmin = false, saw_anchors = false, saw_signs = false;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        ls >> key;
        if (key == "n_min") {
            ls >> cfg.n_min;
            saw_nmin = true;
        } else if (key == "anchors") {
            std::int64_t a;
            while (ls >> a) cfg.anchors.push_back(a);
            saw_anchors = true;
        } else if (key == "signs") {
            std::string tok;
            while (ls >> tok) {
                if (tok == "+" || tok == "+1" || tok == "1")
                    cfg.signs.push_back(1);
                else if (tok == "-" || tok == "-1")
                    cfg.signs.push_back(-1);
                else
                    throw error(errc::malformed_input, "bad sign token \"" + tok + "\"");
            }
            saw_signs = true;
        } else {
            throw error(errc::malformed_input, "unknown f2z config key \"" + key + "\"");
        }
    }
    if (!saw_nmin || !saw_anchors || !saw_signs)
        throw error(errc::malformed_input, "f2z config needs n_min, anchors and signs lines");
    cfg.validate();
    return cfg;
}

PermutationAction::PermutationAction(Presentation p, std::vector<GenFn> forward,
                                     std::vector<GenFn> inverse)
    : pres_(std::move(p)), fwd_(std::move(forward)), inv_(std::move(inverse)) {
    if ((int)fwd_.size() != pres_.rank() || (int)inv_.size() != pres_.rank())
        throw error(errc::malformed_input, "one generator map per generator required");
    symbols_ = pres_.symmetric_symbols();
}

std::optional<std::int64_t> PermutationAction::apply(int gen, int exponent, std::int64_t x) const {
    if (gen < 0 || gen >= pres_.rank())
        throw error(errc::malformed_input, "generator index out of range");
    if (pres_.involutive() || exponent == 1) return fwd_[gen](x);
    return inv_[gen](x);
}

std::optional<std::int64_t> PermutationAction::apply_symbol(int symbol, std::int64_t x) const {
    if (symbol < 0 || symbol >= (int)symbols_.size())
        throw error(errc::malformed_input, "symbol index out of range");
    if (pres_.involutive()) return fwd_[symbol](x);
    return apply(symbol / 2, symbol % 2 == 0 ? 1 : -1, x);
}

namespace {

struct F2ZCore {
    F2ZConfig cfg;

    // largest k with anchors[k] <= j, or -1
    std::int64_t block_left_of(std::int64_t j) const {
        auto it = std::upper_bound(cfg.anchors.begin(), cfg.anchors.end(), j);
        return (std::int64_t)(it - cfg.anchors.begin()) - 1;
    }

    // generator parity: 0 for s (even blocks cycle), 1 for t (odd blocks cycle)
    std::optional<std::int64_t> step(int parity, bool forward, std::int64_t j) const {
        std::int64_t k = block_left_of(j);
        if (k < 0 || (k == (std::int64_t)cfg.anchors.size() - 1 && j > cfg.anchors.back()))
            return std::nullopt;
        // j == anchors[k] belongs to blocks k-1 and k; the cycling block is the
        // one whose global index has the generator's parity
        if (j == cfg.anchors[k]) {
            std::int64_t n = cfg.n_min + k;
            std::int64_t blk = (floor_mod(n, 2) == parity) ? k : k - 1;
            if (blk < 0 || blk + 1 >= (std::int64_t)cfg.anchors.size()) return std::nullopt;
            return cycle_step(blk, forward, j);
        }
        // interior point of block k
        std::int64_t n = cfg.n_min + k;
        if (floor_mod(n, 2) != parity) return j; // fixed inside the other parity's blocks
        if (k + 1 >= (std::int64_t)cfg.anchors.size()) return std::nullopt;
        return cycle_step(k, forward, j);
    }

    std::int64_t cycle_step(std::int64_t blk, bool forward, std::int64_t j) const {
        std::int64_t L = cfg.anchors[blk], R = cfg.anchors[blk + 1];
        int f = cfg.signs[blk];
        bool up = (f == 1) == forward; // sign -1 cycles downward; inverse flips
        if (up) return j < R ? j + 1 : L;
        return j > L ? j - 1 : R;
    }
};

} // namespace

PermutationAction f2z_build(const F2ZConfig& config) {
    config.validate();
    auto core = std::make_shared<F2ZCore>(F2ZCore{config});
    std::vector<PermutationAction::GenFn> fwd = {
        [core](std::int64_t j) { return core->step(0, true, j); },
        [core](std::int64_t j) { return core->step(1, true, j); }};
    std::vector<PermutationAction::GenFn> inv = {
        [core](std::int64_t j) { return core->step(0, false, j); },
        [core](std::int64_t j) { return core->step(1, false, j); }};
    return PermutationAction(Presentation::f2(), std::move(fwd), std::move(inv));
}

PermutationAction table_action(const Presentation& p,
                               std::vector<std::unordered_map<std::int64_t, std::int64_t>> tables) {
    if ((int)tables.size() != p.rank())
        throw error(errc::malformed_input, "one table per generator required");
    std::vector<PermutationAction::GenFn> fwd, inv;
    for (const auto& t : tables) {
        auto fwd_tab = std::make_shared<std::unordered_map<std::int64_t, std::int64_t>>(t);
        auto inv_tab = std::make_shared<std::unordered_map<std::int64_t, std::int64_t>>();
        for (const auto& [x, y] : t) {
            if (inv_tab->count(y))
                throw error(errc::malformed_input, "generator table is not injective");
            (*inv_tab)[y] = x;
        }
        fwd.push_back([fwd_tab](std::int64_t x) -> std::optional<std::int64_t> {
            auto it = fwd_tab->find(x);
            if (it == fwd_tab->end()) return std::nullopt;
            return it->second;
        });
        inv.push_back([inv_tab](std::int64_t x) -> std::optional<std::int64_t> {
            auto it = inv_tab->find(x);
            if (it == inv_tab->end()) return std::nullopt;
            return it->second;
        });
    }
    return PermutationAction(p, std::move(fwd), std::move(inv));
}

std::int64_t GridWindow::size() const {
    std::int64_t n = 1;
    for (auto [lo, hi] : box) {
        if (lo > hi) throw error(errc::malformed_input, "empty box axis");
        n *= hi - lo + 1;
    }
    return n;
}

bool GridWindow::contains(const std::vector<std::int64_t>& c) const {
    for (std::size_t i = 0; i < box.size(); ++i)
        if (c[i] < box[i].first || c[i] > box[i].second) return false;
    return true;
}

std::int64_t GridWindow::encode(const std::vector<std::int64_t>& c) const {
    std::int64_t id = 0;
    for (std::size_t i = 0; i < box.size(); ++i)
        id = id * (box[i].second - box[i].first + 1) + (c[i] - box[i].first);
    return id;
}

std::vector<std::int64_t> GridWindow::decode(std::int64_t id) const {
    std::vector<std::int64_t> c(box.size());
    for (std::size_t i = box.size(); i-- > 0;) {
        std::int64_t len = box[i].second - box[i].first + 1;
        c[i] = box[i].first + id % len;
        id /= len;
    }
    return c;
}

std::vector<VertexId> GridWindow::all_ids() const {
    std::vector<VertexId> out(size());
    for (std::int64_t i = 0; i < (std::int64_t)out.size(); ++i) out[i] = i;
    return out;
}

PermutationAction zd_translation_action(const GridWindow& w) {
    int d = w.dimension();
    if (d < 1) throw error(errc::malformed_input, "grid needs at least one axis");
    std::vector<std::string> names;
    if (d == 1)
        names = {"x"};
    else if (d == 2)
        names = {"x", "y"};
    else
        for (int i = 0; i < d; ++i) names.push_back("x" + std::to_string(i + 1));
    auto win = std::make_shared<GridWindow>(w);
    std::vector<PermutationAction::GenFn> fwd, inv;
    for (int axis = 0; axis < d; ++axis) {
        auto shift = [win, axis](int delta) {
            return [win, axis, delta](std::int64_t id) -> std::optional<std::int64_t> {
                auto c = win->decode(id);
                c[axis] += delta;
                if (!win->contains(c)) return std::nullopt;
                return win->encode(c);
            };
        };
        fwd.push_back(shift(+1));
        inv.push_back(shift(-1));
    }
    return PermutationAction(Presentation::free_group(names), std::move(fwd), std::move(inv));
}

std::int64_t act_word(const PermutationAction& a, const Word& w, std::int64_t x) {
    std::int64_t cur = x;
    const auto& ls = w.letters();
    for (std::size_t i = ls.size(); i-- > 0;) {
        auto next = a.apply(ls[i].gen, ls[i].exponent, cur);
        if (!next) {
            // the applied prefix is the suffix of w evaluated so far
            std::vector<Letter> applied(ls.begin() + i, ls.end());
            Word prefix(a.presentation(), applied);
            throw boundary_escape(x, cur, prefix.str(a.presentation()));
        }
        cur = *next;
    }
    return cur;
}

std::optional<std::vector<std::int64_t>> generator_orbit(const PermutationAction& a, int symbol,
                                                         std::int64_t x, std::size_t max_steps) {
    std::vector<std::int64_t> orbit{x};
    std::int64_t cur = x;
    for (std::size_t i = 0; i < max_steps; ++i) {
        auto next = a.apply_symbol(symbol, cur);
        if (!next) return std::nullopt;
        if (*next == x) return orbit;
        orbit.push_back(*next);
        cur = *next;
    }
    return std::nullopt;
}

namespace {

FaithfulnessReport faithfulness_impl(const PermutationAction& a, int max_len,
                                     const std::vector<std::int64_t>& window, bool parallel) {
    if (max_len < 1) throw error(errc::precondition, "max_len must be >= 1");
    auto words = enumerate_reduced(a.presentation(), max_len);
    // drop the identity: the sweep is over nontrivial words
    words.erase(words.begin());

    FaithfulnessReport rep;
    rep.witnesses.assign(words.size(), {Word(), std::nullopt});
    std::vector<std::int64_t> skips(words.size(), 0);

#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 8) if (parallel)
#endif
    for (std::int64_t wi = 0; wi < (std::int64_t)words.size(); ++wi) {
        std::optional<std::int64_t> witness;
        for (std::int64_t x : window) {
            try {
                if (act_word(a, words[wi], x) != x) {
                    witness = x;
                    break;
                }
            } catch (const boundary_escape&) {
                ++skips[wi];
            }
        }
        rep.witnesses[wi] = {words[wi], witness};
    }
    for (std::int64_t s : skips) rep.boundary_skips += s;
    return rep;
}

} // namespace

FaithfulnessReport faithfulness_witnesses(const PermutationAction& a, int max_len,
                                          const std::vector<std::int64_t>& window) {
    return faithfulness_impl(a, max_len, window, true);
}

FaithfulnessReport faithfulness_witnesses_serial(const PermutationAction& a, int max_len,
                                                 const std::vector<std::int64_t>& window) {
    return faithfulness_impl(a, max_len, window, false);
}

SnakeBijection SnakeBijection::line() { return SnakeBijection(1); }
SnakeBijection SnakeBijection::plane() { return SnakeBijection(2); }

namespace {

// Ray covering the upper half-plane y >= 0 by square shells; shell k ends at
// (k,0) for even k >= 2 and at (-k,0) for odd k, entries alternate sides so
// consecutive cells are always adjacent.
std::pair<std::int64_t, std::int64_t> half_plane_ray(std::int64_t m) {
    if (m == 0) return {0, 0};
    // cells up to and including shell k: (k+1)(2k+1)
    std::int64_t k = 1;
    while ((k + 1) * (2 * k + 1) <= m) ++k;
    std::int64_t p = m - k * (2 * k - 1); // position within shell k, 0..4k
    bool from_right = (k % 2 == 1);
    std::int64_t x, y;
    if (p <= k) { // climb the entry side
        x = k;
        y = p;
    } else if (p <= 3 * k) { // cross the top
        x = k - (p - k);
        y = k;
    } else { // descend the far side
        x = -k;
        y = k - (p - 3 * k);
    }
    if (!from_right) x = -x;
    return {x, y};
}

} // namespace

std::vector<std::int64_t> SnakeBijection::map(std::int64_t n) const {
    if (dim_ == 1) return {n};
    if (n >= 0) {
        auto [x, y] = half_plane_ray(n);
        return {x, y};
    }
    auto [x, y] = half_plane_ray(-1 - n); // mirrored into y <= -1
    return {x, -1 - y};
}

std::int64_t SnakeBijection::l1(const std::vector<std::int64_t>& a,
                                const std::vector<std::int64_t>& b) {
    std::int64_t d = 0;
    for (std::size_t i = 0; i < a.size(); ++i) d += std::llabs(a[i] - b[i]);
    return d;
}

namespace {

DisplacementProfile displacement_impl(const PermutationAction& a, int symbol,
                                      const std::vector<std::int64_t>& window,
                                      const std::optional<SnakeBijection>& bijection, int n_max,
                                      bool parallel) {
    if (window.empty()) throw error(errc::precondition, "window must be nonempty");
    if (n_max < 1) throw error(errc::precondition, "n_max must be >= 1");
    DisplacementProfile prof;
    prof.step_bound = bijection ? bijection->step_bound() : 1;

    const std::int64_t W = (std::int64_t)window.size();
    std::vector<std::int64_t> disp(W, 0); // -1 marks escape
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (parallel)
#endif
    for (std::int64_t i = 0; i < W; ++i) {
        std::int64_t x = window[i];
        auto y = a.apply_symbol(symbol, x);
        if (!y) {
            disp[i] = -1;
            continue;
        }
        if (bijection)
            disp[i] = SnakeBijection::l1(bijection->map(*y), bijection->map(x));
        else
            disp[i] = std::llabs(*y - x);
    }

    for (int n = 1; n <= n_max; ++n) {
        std::int64_t count = 0;
        std::int64_t threshold = prof.step_bound * n;
        for (std::int64_t i = 0; i < W; ++i)
            if (disp[i] >= threshold || disp[i] < 0) ++count; // escapes counted displaced
        prof.fraction.emplace_back(count, W);
    }

    // orbits meeting the window but not contained in it; a non-closing orbit
    // is explored in both directions so its window points land in one piece
    std::unordered_set<std::int64_t> win(window.begin(), window.end());
    std::unordered_set<std::int64_t> seen;
    const int inverse_symbol =
        a.presentation().involutive() ? symbol : (symbol % 2 == 0 ? symbol + 1 : symbol - 1);
    std::int64_t cut = 0;
    for (std::int64_t x : window) {
        if (seen.count(x)) continue;
        std::vector<std::int64_t> piece;
        bool whole = true;
        auto orbit = generator_orbit(a, symbol, x);
        if (orbit) {
            piece = *orbit;
            for (std::int64_t p : piece)
                if (!win.count(p)) whole = false;
        } else {
            whole = false;
            piece.push_back(x);
            std::int64_t cur = x;
            for (std::size_t i = 0; i < (std::size_t)4 * window.size() + 4; ++i) {
                auto next = a.apply_symbol(symbol, cur);
                if (!next || *next == x) break;
                piece.push_back(*next);
                cur = *next;
            }
            cur = x;
            for (std::size_t i = 0; i < (std::size_t)4 * window.size() + 4; ++i) {
                auto prev = a.apply_symbol(inverse_symbol, cur);
                if (!prev || *prev == x) break;
                piece.push_back(*prev);
                cur = *prev;
            }
        }
        for (std::int64_t p : piece)
            if (win.count(p)) seen.insert(p);
        if (!whole) ++cut;
    }
    prof.boundary_correction = Rational(cut, W);

    for (int n = 1; n <= n_max; ++n)
        if (prof.fraction[n - 1] > Rational(1, n) + prof.boundary_correction)
            prof.within_bound = false;
    return prof;
}

} // namespace

DisplacementProfile displacement_profile(const PermutationAction& a, int symbol,
                                         const std::vector<std::int64_t>& window,
                                         const std::optional<SnakeBijection>& bijection,
                                         int n_max) {
    return displacement_impl(a, symbol, window, bijection, n_max, true);
}

DisplacementProfile displacement_profile_serial(const PermutationAction& a, int symbol,
                                                const std::vector<std::int64_t>& window,
                                                const std::optional<SnakeBijection>& bijection,
                                                int n_max) {
    return displacement_impl(a, symbol, window, bijection, n_max, false);
}

SchreierResult schreier(const PermutationAction& a, const std::vector<VertexId>& window) {
    SchreierResult res;
    std::unordered_set<std::int64_t> win(window.begin(), window.end());
    for (VertexId v : window) res.graph.add_vertex(v);
    res.graph.set_degree_bound(a.symbol_count());
    for (VertexId x : window) {
        for (int sym = 0; sym < a.symbol_count(); ++sym) {
            auto y = a.apply_symbol(sym, x);
            if (!y || !win.count(*y)) {
                ++res.boundary_drops;
                continue;
            }
            if (*y == x)
                res.graph.add_loop(x, a.symbol_name(sym));
            else if (*y > x)
                res.graph.add_edge(x, *y, a.symbol_name(sym));
            // moves downward are recorded when the partner symbol is visited
        }
    }
    res.graph.finalize();
    return res;
}

} // namespace schreierlab
