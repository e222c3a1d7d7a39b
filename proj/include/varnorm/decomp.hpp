#pragma once

#include <bit>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "varnorm/types.hpp"
#include "varnorm/variation.hpp"

namespace varnorm {

/// Dyadic index block (k 2^i, (k+1) 2^i]  (1-based integer points
/// k 2^i + 1 .. (k+1) 2^i).
struct DyadicInterval {
    std::size_t k = 0;  // offset
    unsigned i = 0;     // level; block length is 2^i

    std::size_t lo() const { return (k << i) + 1; }
    std::size_t hi() const { return (k + 1) << i; }
    std::size_t length() const { return std::size_t{1} << i; }

    bool operator==(const DyadicInterval&) const = default;
};

/// Writes the integer interval (lo, hi] (0 <= lo < hi <= 2^level) as a
/// disjoint union of dyadic blocks, at most two per size and at most
/// 2*level blocks in total.  Greedy: repeatedly take the largest aligned
/// block that fits; block sizes rise then fall, so each size appears at
/// most once in each phase.
inline std::vector<DyadicInterval> binary_decompose(std::size_t lo, std::size_t hi, unsigned level) {
    if (level >= 63) throw std::invalid_argument("binary_decompose: level out of range");
    const std::size_t top = std::size_t{1} << level;
    if (!(lo < hi) || hi > top)
        throw std::invalid_argument("binary_decompose: interval must be a nonempty subset of (0, 2^level]");

    std::vector<DyadicInterval> out;
    std::size_t cur = lo;
    while (cur < hi) {
        unsigned i = (cur == 0) ? level
                                : std::min<unsigned>(level, static_cast<unsigned>(std::countr_zero(cur)));
        while ((std::size_t{1} << i) > hi - cur) --i;
        out.push_back(DyadicInterval{cur >> i, i});
        cur += std::size_t{1} << i;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Mass tree: the admissible-interval hierarchy driven by squared-coefficient
// mass.  Each nonempty interval I splits as  left | splitter | right  where
// left is the maximal prefix with mass strictly below half of M(I) and right
// is the maximal suffix with mass at most half, so M(node at level k) <= 2^-k
// and every index is the splitter of exactly one node.
// ---------------------------------------------------------------------------

struct MassNode {
    std::size_t lo = 1, hi = 0;  // 1-based inclusive; empty iff lo > hi
    double mass = 0.0;           // normalized
    std::size_t splitter = 0;    // 0 for empty nodes
    int level = 0;
    int parent = -1, left = -1, right = -1;

    bool empty() const { return lo > hi; }
    std::size_t length() const { return empty() ? 0 : hi - lo + 1; }
};

struct MassTree {
    std::vector<MassNode> nodes;          // nodes[0] is the root [1, N]
    std::vector<std::vector<int>> levels; // node ids per level (empty children included)
    std::vector<double> weights;          // normalized; index 0 unused
    double normalization = 1.0;           // raw total mass
    int depth = 0;                        // deepest level holding a nonempty node
    std::size_t n = 0;

    double interval_mass(std::size_t lo, std::size_t hi) const {
        double s = 0.0;
        for (std::size_t t = lo; t <= hi; ++t) s += weights[t];
        return s;
    }
};

inline MassTree build_mass_tree(const std::vector<double>& raw) {
    if (raw.empty()) throw std::invalid_argument("build_mass_tree: empty weight vector");
    double total = 0.0;
    for (double w : raw) {
        if (!(w >= 0.0) || !std::isfinite(w))
            throw std::invalid_argument("build_mass_tree: weights must be finite and nonnegative");
        total += w;
    }
    if (total <= 0.0) throw std::invalid_argument("build_mass_tree: all weights are zero");

    MassTree tree;
    tree.n = raw.size();
    tree.normalization = total;
    tree.weights.resize(raw.size() + 1, 0.0);
    for (std::size_t i = 0; i < raw.size(); ++i) tree.weights[i + 1] = raw[i] / total;

    tree.nodes.push_back(MassNode{1, raw.size(), 1.0, 0, 0, -1, -1, -1});
    tree.levels.push_back({0});

    std::vector<int> frontier{0};
    while (!frontier.empty()) {
        std::vector<int> next;
        std::vector<int> level_ids;
        for (int id : frontier) {
            const std::size_t lo = tree.nodes[id].lo, hi = tree.nodes[id].hi;
            const double mass = tree.nodes[id].mass;
            const int child_level = tree.nodes[id].level + 1;

            std::size_t split;
            MassNode lnode, rnode;
            if (mass == 0.0) {
                // all-zero interval: split at the leftmost point so that the
                // splitter bijection stays intact
                split = lo;
                lnode = MassNode{lo, lo - 1, 0.0, 0, child_level, id, -1, -1};
                rnode = MassNode{lo + 1, hi, 0.0, 0, child_level, id, -1, -1};
            } else {
                const double half = 0.5 * mass;
                double acc = 0.0;
                std::size_t a = lo - 1;
                for (std::size_t t = lo; t <= hi; ++t) {
                    if (!(acc + tree.weights[t] < half)) break;
                    acc += tree.weights[t];
                    a = t;
                }
                double acc2 = 0.0;
                std::size_t b = hi + 1;
                for (std::size_t t = hi; t >= lo; --t) {
                    if (!(acc2 + tree.weights[t] <= half)) break;
                    acc2 += tree.weights[t];
                    b = t;
                    if (t == lo) break;
                }
                if (b != a + 2)
                    throw std::logic_error("build_mass_tree: splitter uniqueness violated");
                split = a + 1;
                lnode = MassNode{lo, a, acc, 0, child_level, id, -1, -1};
                rnode = MassNode{b, hi, acc2, 0, child_level, id, -1, -1};
            }

            tree.nodes[id].splitter = split;
            int lid = static_cast<int>(tree.nodes.size());
            tree.nodes.push_back(lnode);
            int rid = static_cast<int>(tree.nodes.size());
            tree.nodes.push_back(rnode);
            tree.nodes[id].left = lid;
            tree.nodes[id].right = rid;
            level_ids.push_back(lid);
            level_ids.push_back(rid);
            if (!tree.nodes[lid].empty()) next.push_back(lid);
            if (!tree.nodes[rid].empty()) next.push_back(rid);
        }
        if (!level_ids.empty()) tree.levels.push_back(std::move(level_ids));
        if (!next.empty()) tree.depth = tree.nodes[next.front()].level;
        frontier = std::move(next);
    }
    return tree;
}

/// Cover of an arbitrary interval J by (admissible left) + point + (admissible
/// right), adjacent in order, with total mass at most 2 M(J).
struct IntervalCover {
    int left_node = -1;   // id into MassTree::nodes, -1 when empty
    std::size_t point = 0;
    int right_node = -1;

    std::size_t lo = 0, hi = 0;  // span of the cover
    double mass = 0.0;
};

inline IntervalCover cover_interval(const MassTree& tree, std::size_t lo, std::size_t hi) {
    if (lo < 1 || hi > tree.n || lo > hi)
        throw std::invalid_argument("cover_interval: J must be a nonempty subinterval of [1, N]");

    // descend to the shallowest node whose splitter lies inside J; such a
    // node exists because every index is some node's splitter
    int id = 0;
    while (!(tree.nodes[id].splitter >= lo && tree.nodes[id].splitter <= hi)) {
        id = (hi < tree.nodes[id].splitter) ? tree.nodes[id].left : tree.nodes[id].right;
    }
    const std::size_t point = tree.nodes[id].splitter;

    IntervalCover cover;
    cover.point = point;
    cover.lo = point;
    cover.hi = point;
    cover.mass = tree.weights[point];

    if (lo < point) {
        // deepest admissible interval sharing its right endpoint with J_l
        int L = tree.nodes[id].left;
        for (;;) {
            int R = tree.nodes[L].right;
            if (R >= 0 && !tree.nodes[R].empty() && tree.nodes[R].lo <= lo)
                L = R;
            else
                break;
        }
        cover.left_node = L;
        cover.lo = tree.nodes[L].lo;
        cover.mass += tree.nodes[L].mass;
    }
    if (hi > point) {
        int R = tree.nodes[id].right;
        for (;;) {
            int L = tree.nodes[R].left;
            if (L >= 0 && !tree.nodes[L].empty() && tree.nodes[L].hi >= hi)
                R = L;
            else
                break;
        }
        cover.right_node = R;
        cover.hi = tree.nodes[R].hi;
        cover.mass += tree.nodes[R].mass;
    }
    return cover;
}

// ---------------------------------------------------------------------------
// Good/bad interval classification
// ---------------------------------------------------------------------------

struct IntervalClass {
    std::size_t lo = 0, hi = 0;
    int level = 0;
    double mass = 0.0;
    double sup_value = 0.0;  // max_{I subset of the interval} |S_I|
    bool good = true;
};

/// Marks every nonempty admissible interval GOOD when
///   (max subinterval sum magnitude)^2 <= B * M(interval) * ln ln N.
inline std::vector<IntervalClass> classify_good_bad(const MassTree& tree, const PartialSumPath& path,
                                                    double B, std::size_t n_system) {
    if (n_system < 16) throw std::invalid_argument("classify_good_bad: N must be at least 16");
    if (path.steps() != tree.n)
        throw std::invalid_argument("classify_good_bad: path length does not match the tree");
    if (!(B > 0.0)) throw std::invalid_argument("classify_good_bad: B must be positive");

    const double lll = std::log(std::log(static_cast<double>(n_system)));
    std::vector<IntervalClass> out;
    for (const MassNode& node : tree.nodes) {
        if (node.empty()) continue;
        IntervalClass c;
        c.lo = node.lo;
        c.hi = node.hi;
        c.level = node.level;
        c.mass = node.mass;
        c.sup_value = detail::span_diameter(path, node.lo - 1, node.hi).first;
        c.good = c.sup_value * c.sup_value <= B * node.mass * lll;
        out.push_back(c);
    }
    return out;
}

}  // namespace varnorm
