#pragma once

// Atom rearrangement: 1D swap networks and the three-stage
// horizontal / vertical / horizontal (HVH) plan for 2D grids.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <string>
#include <vector>

#include "olmesh/clements.hpp"
#include "olmesh/errors.hpp"
#include "olmesh/native_gates.hpp"
#include "olmesh/numerics.hpp"
#include "olmesh/rng.hpp"

namespace olmesh {

/// map[i] is the destination index of the content at source index i.
struct Permutation {
    std::vector<std::size_t> map;

    std::size_t size() const noexcept { return map.size(); }

    static Permutation identity(std::size_t n) {
        Permutation p;
        p.map.resize(n);
        std::iota(p.map.begin(), p.map.end(), std::size_t{0});
        return p;
    }

    void validate() const {
        std::vector<bool> seen(map.size(), false);
        for (std::size_t i = 0; i < map.size(); ++i) {
            const auto t = map[i];
            if (t >= map.size()) throw ValidationError("Permutation: target " + std::to_string(t) + " out of range");
            if (seen[t]) throw ValidationError("Permutation: target " + std::to_string(t) + " used twice");
            seen[t] = true;
        }
    }

    friend bool operator==(const Permutation&, const Permutation&) = default;
};

inline Permutation random_permutation(std::size_t n, Rng& rng) {
    Permutation p = Permutation::identity(n);
    for (std::size_t i = n; i > 1; --i) std::swap(p.map[i - 1], p.map[rng.below(i)]);
    return p;
}

struct SwapLayer {
    Parity parity = Parity::Even;
    std::vector<bool> swaps;  // pair k acts on modes (first + 2k, first + 2k + 1)

    std::size_t first_mode() const { return parity == Parity::Even ? 0 : 1; }
};

struct SwapNetwork {
    std::size_t width = 0;
    std::vector<SwapLayer> layers;

    std::size_t depth() const noexcept { return layers.size(); }

    std::size_t swap_count() const {
        std::size_t n = 0;
        for (const auto& l : layers) n += static_cast<std::size_t>(std::count(l.swaps.begin(), l.swaps.end(), true));
        return n;
    }

    /// Two-mode gate slots (SWAP and identity alike).
    std::size_t gate_count() const {
        std::size_t n = 0;
        for (const auto& l : layers) n += l.swaps.size();
        return n;
    }
};

inline std::size_t pairs_in_layer(std::size_t width, Parity parity) {
    const std::size_t first = parity == Parity::Even ? 0 : 1;
    return width > first + 1 ? (width - first) / 2 : 0;
}

/// Moves contents through the network; result[pos] is what ends at pos.
template <class T>
std::vector<T> apply_network(const SwapNetwork& net, std::vector<T> contents) {
    if (contents.size() != net.width) throw DimensionError("apply_network: width mismatch");
    for (const auto& layer : net.layers) {
        const auto first = layer.first_mode();
        for (std::size_t k = 0; k < layer.swaps.size(); ++k) {
            if (layer.swaps[k]) std::swap(contents[first + 2 * k], contents[first + 2 * k + 1]);
        }
    }
    return contents;
}

/// Brick-wall SWAP/identity network realizing p, built by odd-even
/// transposition sort of the destination indices. Layers alternate parity
/// starting even; trailing all-identity layers are dropped, so depth <= N.
inline SwapNetwork swap_network_1d(const Permutation& p) {
    p.validate();
    const std::size_t n = p.size();
    SwapNetwork net;
    net.width = n;
    std::vector<std::size_t> dest = p.map;  // destination of the content at each position
    std::size_t last_active = 0;
    for (std::size_t round = 0; round < n; ++round) {
        SwapLayer layer;
        layer.parity = round % 2 == 0 ? Parity::Even : Parity::Odd;
        layer.swaps.assign(pairs_in_layer(n, layer.parity), false);
        const auto first = layer.first_mode();
        for (std::size_t k = 0; k < layer.swaps.size(); ++k) {
            const std::size_t i = first + 2 * k;
            if (dest[i] > dest[i + 1]) {
                std::swap(dest[i], dest[i + 1]);
                layer.swaps[k] = true;
                last_active = round + 1;
            }
        }
        net.layers.push_back(std::move(layer));
    }
    net.layers.resize(last_active);
    return net;
}

inline constexpr double kSwapTheta = 3.0 * kPi / 2.0;
inline constexpr double kSwapPhi = kPi;

/// One gate per pair per layer: SWAP as (3pi/2, pi), identity as (0, 0).
inline GivensCircuit network_to_circuit(const SwapNetwork& net) {
    if (net.width == 0) throw DimensionError("network_to_circuit: width must be positive");
    GivensCircuit c;
    c.dim = net.width;
    c.diagonal_phases.assign(net.width, 0.0);
    for (std::size_t l = 0; l < net.layers.size(); ++l) {
        const auto& layer = net.layers[l];
        if (layer.swaps.size() != pairs_in_layer(net.width, layer.parity)) {
            throw ValidationError("network_to_circuit: layer " + std::to_string(l) + " has wrong pair count");
        }
        const auto first = layer.first_mode();
        for (std::size_t k = 0; k < layer.swaps.size(); ++k) {
            GivensGate g;
            g.mode_low = first + 2 * k;
            g.theta = layer.swaps[k] ? kSwapTheta : 0.0;
            g.phi = layer.swaps[k] ? kSwapPhi : 0.0;
            g.layer = l;
            c.gates.push_back(g);
        }
    }
    return c;
}

// ---------------------------------------------------------------------------
// 2D rearrangement

struct Cell {
    std::size_t row = 0;
    std::size_t col = 0;
    friend bool operator==(const Cell&, const Cell&) = default;
};

struct Move {
    Cell source;
    Cell target;
};

/// An injective assignment of occupied source cells to target cells on an
/// L x L grid. A full grid with L*L moves is a bijection.
struct GridTargets {
    std::size_t l = 0;
    std::vector<Move> moves;

    void validate() const {
        if (l == 0) throw DimensionError("GridTargets: L must be positive");
        std::vector<bool> src(l * l, false);
        std::vector<bool> dst(l * l, false);
        for (const auto& m : moves) {
            if (m.source.row >= l || m.source.col >= l || m.target.row >= l || m.target.col >= l) {
                throw ValidationError("GridTargets: cell outside the " + std::to_string(l) + "x" + std::to_string(l) + " grid");
            }
            const auto s = m.source.row * l + m.source.col;
            const auto t = m.target.row * l + m.target.col;
            if (src[s]) throw ValidationError("GridTargets: source cell used twice");
            if (dst[t]) throw ValidationError("GridTargets: target cell used twice");
            src[s] = dst[t] = true;
        }
    }

    /// Full grid from a permutation of cell indices (row-major).
    static GridTargets from_cell_permutation(std::size_t l, const Permutation& p) {
        if (p.size() != l * l) throw DimensionError("GridTargets: permutation size must be L*L");
        GridTargets t;
        t.l = l;
        for (std::size_t i = 0; i < p.size(); ++i) {
            t.moves.push_back({{i / l, i % l}, {p.map[i] / l, p.map[i] % l}});
        }
        return t;
    }
};

struct Atom2D {
    Cell source;
    std::size_t intermediate_col = 0;
    Cell target;
};

struct HvhPlan {
    std::size_t l = 0;
    std::size_t l_buffer = 0;
    std::size_t l_ext = 0;
    std::vector<Permutation> stage1;  // per row, over l_ext columns
    std::vector<Permutation> stage2;  // per column (l_ext of them), over L rows
    std::vector<Permutation> stage3;  // per row, over l_ext columns
    std::vector<Atom2D> atoms;        // row-major source order
};

namespace detail {

// Fills the unassigned entries of a partial map with the unused destinations,
// both taken in ascending order.
inline Permutation complete_permutation(std::vector<long> partial) {
    const std::size_t n = partial.size();
    std::vector<bool> used(n, false);
    for (long t : partial) {
        if (t >= 0) used[static_cast<std::size_t>(t)] = true;
    }
    Permutation p;
    p.map.resize(n);
    std::size_t next_free = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (partial[i] >= 0) {
            p.map[i] = static_cast<std::size_t>(partial[i]);
            continue;
        }
        while (used[next_free]) ++next_free;
        p.map[i] = next_free;
        used[next_free] = true;
    }
    return p;
}

// Greedy intermediate-column assignment for a fixed buffer width. Returns false
// if some atom finds no admissible column. `order` lists moves in row-major
// source order.
inline bool assign_intermediate_columns(std::size_t l, std::size_t l_ext, const std::vector<Move>& order,
                                        std::vector<std::size_t>& columns) {
    std::vector<char> row_uses(l * l_ext, 0);     // (source row, column) taken
    std::vector<char> col_targets(l_ext * l, 0);  // (column, target row) taken
    columns.assign(order.size(), 0);
    for (std::size_t a = 0; a < order.size(); ++a) {
        const auto& m = order[a];
        bool placed = false;
        for (std::size_t c = 0; c < l_ext; ++c) {
            if (row_uses[m.source.row * l_ext + c] || col_targets[c * l + m.target.row]) continue;
            row_uses[m.source.row * l_ext + c] = 1;
            col_targets[c * l + m.target.row] = 1;
            columns[a] = c;
            placed = true;
            break;
        }
        if (!placed) return false;
    }
    return true;
}

inline std::vector<Move> row_major(std::vector<Move> moves) {
    std::sort(moves.begin(), moves.end(), [](const Move& a, const Move& b) {
        return a.source.row != b.source.row ? a.source.row < b.source.row : a.source.col < b.source.col;
    });
    return moves;
}

}  // namespace detail

/// Smallest buffer width for which the greedy succeeds (restart on failure).
inline std::size_t greedy_buffer_width(const GridTargets& targets) {
    const auto order = detail::row_major(targets.moves);
    std::vector<std::size_t> columns;
    for (std::size_t buffer = 0;; ++buffer) {
        if (detail::assign_intermediate_columns(targets.l, targets.l + buffer, order, columns)) return buffer;
        if (buffer + 1 >= targets.l) {
            // L-1 buffer columns always suffice; reaching here is a bug.
            throw ConsistencyError("greedy_buffer_width: exceeded L-1 buffer columns");
        }
    }
}

/// Plans a conflict-free HVH rearrangement.
///
/// Atoms are taken in row-major source order; each gets the smallest
/// intermediate column not yet used in its source row and not yet holding an
/// atom bound for the same target row. The buffer grows by one column and the
/// pass restarts whenever an atom cannot be placed.
inline HvhPlan hvh_plan(const GridTargets& targets) {
    targets.validate();
    const std::size_t l = targets.l;
    const auto order = detail::row_major(targets.moves);
    const std::size_t buffer = greedy_buffer_width(targets);
    std::vector<std::size_t> columns;
    detail::assign_intermediate_columns(l, l + buffer, order, columns);

    HvhPlan plan;
    plan.l = l;
    plan.l_buffer = buffer;
    plan.l_ext = l + buffer;
    std::vector<std::vector<long>> s1(l, std::vector<long>(plan.l_ext, -1));
    std::vector<std::vector<long>> s2(plan.l_ext, std::vector<long>(l, -1));
    std::vector<std::vector<long>> s3(l, std::vector<long>(plan.l_ext, -1));
    for (std::size_t a = 0; a < order.size(); ++a) {
        const auto& m = order[a];
        const auto ci = columns[a];
        plan.atoms.push_back({m.source, ci, m.target});
        s1[m.source.row][m.source.col] = static_cast<long>(ci);
        s2[ci][m.source.row] = static_cast<long>(m.target.row);
        s3[m.target.row][ci] = static_cast<long>(m.target.col);
    }
    for (auto& p : s1) plan.stage1.push_back(detail::complete_permutation(std::move(p)));
    for (auto& p : s2) plan.stage2.push_back(detail::complete_permutation(std::move(p)));
    for (auto& p : s3) plan.stage3.push_back(detail::complete_permutation(std::move(p)));
    return plan;
}

/// Executes the three stages on a grid of atom ids and checks that no cell is
/// ever doubly occupied and every atom ends on its target. Throws
/// ValidationError describing the first violation.
inline void validate_plan(const HvhPlan& plan, const GridTargets& targets) {
    const std::size_t l = plan.l;
    const std::size_t w = plan.l_ext;
    if (plan.l_ext != plan.l + plan.l_buffer) throw ValidationError("HvhPlan: l_ext != l + l_buffer");
    if (plan.l > 0 && plan.l_buffer + 1 > plan.l) throw ValidationError("HvhPlan: buffer exceeds L-1");
    if (plan.stage1.size() != l || plan.stage2.size() != w || plan.stage3.size() != l) {
        throw ValidationError("HvhPlan: wrong number of stage permutations");
    }
    for (const auto& p : plan.stage1) {
        if (p.size() != w) throw ValidationError("HvhPlan: stage1 permutation has wrong width");
        p.validate();
    }
    for (const auto& p : plan.stage2) {
        if (p.size() != l) throw ValidationError("HvhPlan: stage2 permutation has wrong height");
        p.validate();
    }
    for (const auto& p : plan.stage3) {
        if (p.size() != w) throw ValidationError("HvhPlan: stage3 permutation has wrong width");
        p.validate();
    }

    constexpr long kEmpty = -1;
    std::vector<long> grid(l * w, kEmpty);
    for (std::size_t a = 0; a < targets.moves.size(); ++a) {
        const auto& s = targets.moves[a].source;
        grid[s.row * w + s.col] = static_cast<long>(a);
    }
    auto place = [&](std::vector<long>& next, std::size_t r, std::size_t c, long atom, const char* stage) {
        if (atom == kEmpty) return;
        if (next[r * w + c] != kEmpty) throw ValidationError(std::string("HvhPlan: collision after ") + stage);
        next[r * w + c] = atom;
    };
    std::vector<long> next(l * w, kEmpty);
    for (std::size_t r = 0; r < l; ++r)
        for (std::size_t c = 0; c < w; ++c) place(next, r, plan.stage1[r].map[c], grid[r * w + c], "stage 1");
    grid.swap(next);
    std::fill(next.begin(), next.end(), kEmpty);
    for (std::size_t c = 0; c < w; ++c)
        for (std::size_t r = 0; r < l; ++r) place(next, plan.stage2[c].map[r], c, grid[r * w + c], "stage 2");
    grid.swap(next);
    std::fill(next.begin(), next.end(), kEmpty);
    for (std::size_t r = 0; r < l; ++r)
        for (std::size_t c = 0; c < w; ++c) place(next, r, plan.stage3[r].map[c], grid[r * w + c], "stage 3");
    for (std::size_t a = 0; a < targets.moves.size(); ++a) {
        const auto& t = targets.moves[a].target;
        if (next[t.row * w + t.col] != static_cast<long>(a)) throw ValidationError("HvhPlan: atom misses its target");
    }
}

struct HvhNetworks {
    std::vector<SwapNetwork> stage1;
    std::vector<SwapNetwork> stage2;
    std::vector<SwapNetwork> stage3;

    static std::size_t max_depth(const std::vector<SwapNetwork>& nets) {
        std::size_t d = 0;
        for (const auto& n : nets) d = std::max(d, n.depth());
        return d;
    }

    /// Stages run one after another; networks within a stage run in parallel.
    std::size_t depth() const { return max_depth(stage1) + max_depth(stage2) + max_depth(stage3); }

    std::size_t swap_count() const {
        std::size_t n = 0;
        for (const auto* v : {&stage1, &stage2, &stage3})
            for (const auto& net : *v) n += net.swap_count();
        return n;
    }

    std::size_t gate_count() const {
        std::size_t n = 0;
        for (const auto* v : {&stage1, &stage2, &stage3})
            for (const auto& net : *v) n += net.gate_count();
        return n;
    }
};

inline HvhNetworks plan_to_networks(const HvhPlan& plan) {
    HvhNetworks out;
    for (const auto& p : plan.stage1) out.stage1.push_back(swap_network_1d(p));
    for (const auto& p : plan.stage2) out.stage2.push_back(swap_network_1d(p));
    for (const auto& p : plan.stage3) out.stage3.push_back(swap_network_1d(p));
    return out;
}

struct BufferStats {
    std::size_t l = 0;
    std::size_t samples = 0;
    double mean = 0.0;
    double std = 0.0;
    std::vector<std::size_t> histogram;  // index = l_buffer
};

namespace detail {

inline BufferStats summarize_buffers(std::size_t l, const std::vector<std::size_t>& buffers) {
    BufferStats s;
    s.l = l;
    s.samples = buffers.size();
    s.histogram.assign(std::max<std::size_t>(l, 1), 0);
    double sum = 0.0;
    for (auto b : buffers) {
        ++s.histogram.at(b);
        sum += static_cast<double>(b);
    }
    s.mean = sum / static_cast<double>(buffers.size());
    double ss = 0.0;
    for (auto b : buffers) ss += (static_cast<double>(b) - s.mean) * (static_cast<double>(b) - s.mean);
    s.std = buffers.size() > 1 ? std::sqrt(ss / static_cast<double>(buffers.size() - 1)) : 0.0;
    return s;
}

}  // namespace detail

/// Greedy buffer widths over uniformly random full-grid bijections. Sample i
/// uses rng.substream(i).
inline BufferStats buffer_stats(std::size_t l, std::size_t samples, const Rng& rng) {
    if (l == 0) throw DimensionError("buffer_stats: L must be positive");
    if (samples == 0) throw ValidationError("buffer_stats: samples must be positive");
    std::vector<std::size_t> buffers(samples);
    for (std::size_t i = 0; i < samples; ++i) {
        Rng sample_rng = rng.substream(i);
        const auto p = random_permutation(l * l, sample_rng);
        buffers[i] = greedy_buffer_width(GridTargets::from_cell_permutation(l, p));
    }
    return detail::summarize_buffers(l, buffers);
}

/// Greedy buffer widths over every bijection of the L x L grid. Only
/// tractable for L <= 3.
inline BufferStats buffer_stats_exhaustive(std::size_t l) {
    if (l == 0 || l > 3) throw DimensionError("buffer_stats_exhaustive: L must be 1, 2 or 3");
    Permutation p = Permutation::identity(l * l);
    std::vector<std::size_t> buffers;
    do {
        buffers.push_back(greedy_buffer_width(GridTargets::from_cell_permutation(l, p)));
    } while (std::next_permutation(p.map.begin(), p.map.end()));
    return detail::summarize_buffers(l, buffers);
}

}  // namespace olmesh
