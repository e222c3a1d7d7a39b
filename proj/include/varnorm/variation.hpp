#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "varnorm/types.hpp"

namespace varnorm {

// p-variation of a finite path:
//   V^p(S) = sup over families of disjoint index intervals {I} of
//            (sum_I |S_{max I} - S_{min I - 1}|^p)^{1/p}.
//
// The supremum over families equals the supremum over covering partitions
// (breakpoint chains 0 = n_0 < ... < n_K = N): a covering partition is a
// family, and any family extends to a covering partition by inserting the
// gap intervals, whose terms are >= 0.  All kernels below therefore work
// with chains.

namespace detail {

inline void require_valid_p(double p) {
    if (!(p >= 1.0)) throw std::invalid_argument("variation exponent p must satisfy p >= 1");
    if (!std::isfinite(p))
        throw std::invalid_argument("finite-p variation kernels reject p = infinity; use sup_variation");
}

// Chain DP restricted to a candidate breakpoint set.
//   best(j) = max_{i<j} best(i) + |S_{c_j} - S_{c_i}|^p,   best(0) = 0.
// Ties resolved by fewer intervals, then lexicographically smallest chain.
inline VariationResult chain_dp(const PartialSumPath& path, double p,
                                const std::vector<std::size_t>& cand, Method tag) {
    const std::size_t m = cand.size();
    VariationResult res;
    res.p = p;
    res.method = tag;
    if (m <= 1) {
        res.breakpoints.assign(cand.begin(), cand.end());
        if (res.breakpoints.empty()) res.breakpoints.push_back(0);
        return res;
    }

    std::vector<double> re(m), im(m);
    for (std::size_t i = 0; i < m; ++i) {
        re[i] = path.sums[cand[i]].real();
        im[i] = path.sums[cand[i]].imag();
    }

    std::vector<double> best(m, 0.0);
    std::vector<std::uint32_t> cnt(m, 0), pred(m, 0);

    // Materializes the chain (in candidate positions) ending at position i.
    auto chain_of = [&](std::uint32_t i) {
        std::vector<std::uint32_t> c;
        for (std::uint32_t v = i;; v = pred[v]) {
            c.push_back(v);
            if (v == 0) break;
        }
        std::reverse(c.begin(), c.end());
        return c;
    };
    auto lex_smaller = [&](std::uint32_t a, std::uint32_t b) {
        return chain_of(a) < chain_of(b);
    };

    const bool sq = (p == 2.0);
    for (std::size_t j = 1; j < m; ++j) {
        const double rj = re[j], ij = im[j];
        double bv = -1.0;
        std::uint32_t bc = 0, bp = 0;
        for (std::size_t i = 0; i < j; ++i) {
            const double dr = rj - re[i], di = ij - im[i];
            const double d2 = dr * dr + di * di;
            const double v = best[i] + (sq ? d2 : std::pow(std::sqrt(d2), p));
            if (v > bv) {
                bv = v;
                bc = cnt[i] + 1;
                bp = static_cast<std::uint32_t>(i);
            } else if (v == bv) {
                const std::uint32_t c = cnt[i] + 1;
                if (c < bc || (c == bc && lex_smaller(static_cast<std::uint32_t>(i), bp))) {
                    bc = c;
                    bp = static_cast<std::uint32_t>(i);
                }
            }
        }
        best[j] = bv;
        cnt[j] = bc;
        pred[j] = bp;
    }

    const double acc = best[m - 1];
    res.value = (acc == 0.0) ? 0.0 : (sq ? std::sqrt(acc) : std::pow(acc, 1.0 / p));
    for (std::uint32_t v : chain_of(static_cast<std::uint32_t>(m - 1)))
        res.breakpoints.push_back(cand[v]);
    return res;
}

inline std::vector<std::size_t> all_indices(std::size_t n) {
    std::vector<std::size_t> idx(n + 1);
    for (std::size_t i = 0; i <= n; ++i) idx[i] = i;
    return idx;
}

// Max of |S_b - S_a| over a <= a' < b' <= b, i.e. the diameter of the point
// set {S_a, ..., S_b} in the plane.  Real-valued runs reduce to max - min;
// complex runs go through a convex hull first.
inline std::pair<double, std::pair<std::size_t, std::size_t>> span_diameter(
    const PartialSumPath& path, std::size_t lo, std::size_t hi) {
    if (hi <= lo) return {0.0, {lo, lo}};
    bool real = true;
    for (std::size_t i = lo; i <= hi; ++i)
        if (path.sums[i].imag() != 0.0) {
            real = false;
            break;
        }
    if (real) {
        std::size_t imin = lo, imax = lo;
        for (std::size_t i = lo + 1; i <= hi; ++i) {
            if (path.sums[i].real() < path.sums[imin].real()) imin = i;
            if (path.sums[i].real() > path.sums[imax].real()) imax = i;
        }
        std::size_t a = std::min(imin, imax), b = std::max(imin, imax);
        return {path.sums[imax].real() - path.sums[imin].real(), {a, b}};
    }

    struct Pt {
        double x, y;
        std::size_t idx;
    };
    std::vector<Pt> pts;
    pts.reserve(hi - lo + 1);
    for (std::size_t i = lo; i <= hi; ++i)
        pts.push_back({path.sums[i].real(), path.sums[i].imag(), i});
    std::sort(pts.begin(), pts.end(), [](const Pt& a, const Pt& b) {
        return a.x < b.x || (a.x == b.x && a.y < b.y);
    });
    auto cross = [](const Pt& o, const Pt& a, const Pt& b) {
        return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
    };
    std::vector<Pt> hull(2 * pts.size());
    std::size_t k = 0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        while (k >= 2 && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
        hull[k++] = pts[i];
    }
    for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
        while (k >= t && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
        hull[k++] = pts[i];
    }
    hull.resize(k > 1 ? k - 1 : k);

    double best = 0.0;
    std::pair<std::size_t, std::size_t> arg{lo, lo};
    for (std::size_t i = 0; i < hull.size(); ++i)
        for (std::size_t j = i + 1; j < hull.size(); ++j) {
            double dx = hull[i].x - hull[j].x, dy = hull[i].y - hull[j].y;
            double d2 = dx * dx + dy * dy;
            if (d2 > best) {
                best = d2;
                arg = {std::min(hull[i].idx, hull[j].idx), std::max(hull[i].idx, hull[j].idx)};
            }
        }
    return {std::sqrt(best), arg};
}

}  // namespace detail

/// Exact p-variation by the O(N^2) chain dynamic program.
inline VariationResult variation_exact(const PartialSumPath& path, double p) {
    detail::require_valid_p(p);
    return detail::chain_dp(path, p, detail::all_indices(path.steps()), Method::ExactDp);
}

/// Literal enumeration of all 2^(N-1) breakpoint chains; the independent
/// correctness oracle for the DP.  Guarded to N <= 20.
inline VariationResult variation_bruteforce(const PartialSumPath& path, double p) {
    detail::require_valid_p(p);
    const std::size_t n = path.steps();
    if (n > 20) throw std::invalid_argument("variation_bruteforce: N > 20 exceeds the enumeration budget");

    VariationResult res;
    res.p = p;
    res.method = Method::BruteForce;
    if (n == 0) {
        res.breakpoints = {0};
        return res;
    }

    const std::uint32_t interior = static_cast<std::uint32_t>(n - 1);
    double best = -1.0;
    std::vector<std::size_t> best_chain;
    std::vector<std::size_t> chain;
    for (std::uint32_t mask = 0; mask < (1u << interior); ++mask) {
        chain.clear();
        chain.push_back(0);
        for (std::uint32_t b = 0; b < interior; ++b)
            if (mask & (1u << b)) chain.push_back(b + 1);
        chain.push_back(n);
        double acc = 0.0;
        for (std::size_t l = 1; l < chain.size(); ++l) {
            double d = std::abs(path.sums[chain[l]] - path.sums[chain[l - 1]]);
            acc += (p == 2.0) ? d * d : std::pow(d, p);
        }
        if (acc > best || (acc == best && (chain.size() < best_chain.size() ||
                                           (chain.size() == best_chain.size() && chain < best_chain)))) {
            best = acc;
            best_chain = chain;
        }
    }
    res.value = (best <= 0.0) ? 0.0 : ((p == 2.0) ? std::sqrt(best) : std::pow(best, 1.0 / p));
    res.breakpoints = std::move(best_chain);
    return res;
}

/// V^infinity functional: max over index intervals I of |sum_{n in I} a_n|
///                      = max_{0 <= a < b <= N} |S_b - S_a|.
/// Satisfies max_m |S_m| <= value <= 2 max_m |S_m|.
inline VariationResult sup_variation(const PartialSumPath& path) {
    VariationResult res;
    res.p = std::numeric_limits<double>::infinity();
    res.method = Method::Sup;
    if (path.steps() == 0) {
        res.breakpoints = {0};
        return res;
    }
    auto [d, arg] = detail::span_diameter(path, 0, path.steps());
    res.value = d;
    res.breakpoints = {arg.first, arg.second};
    if (arg.first == arg.second) res.breakpoints = {arg.first};
    return res;
}

/// Level-wise dyadic block bound
///   B = sum_{i=0}^{l} sqrt( sum_k |S over block (k 2^i, (k+1) 2^i]|^2 )
/// after zero-padding the increments up to the next power of two.
/// Every chain interval splits into dyadic blocks with at most two per size,
/// which gives variation_exact(path, 2).value <= sqrt(2) * B.
inline double dyadic_upper_bound(const PartialSumPath& path) {
    const std::size_t n = path.steps();
    if (n == 0) return 0.0;
    std::size_t padded = 1;
    while (padded < n) padded <<= 1;

    std::vector<cplx> level = increments_of(path);
    level.resize(padded, cplx(0.0, 0.0));

    double total = 0.0;
    for (;;) {
        double s = 0.0;
        for (const cplx& z : level) s += std::norm(z);
        total += std::sqrt(s);
        if (level.size() == 1) break;
        std::vector<cplx> next(level.size() / 2);
        for (std::size_t k = 0; k < next.size(); ++k) next[k] = level[2 * k] + level[2 * k + 1];
        level = std::move(next);
    }
    return total;
}

/// Exact V^2 of the lacunary-difference sequence
///   {S_1, S_2 - S_1, S_4 - S_2, ...} truncated at N
/// (the final partial sum S_N is appended when N is not a power of two).
inline VariationResult lacunary_variation(const PartialSumPath& path) {
    const std::size_t n = path.steps();
    if (n == 0) {
        VariationResult res;
        res.method = Method::Lacunary;
        res.breakpoints = {0};
        return res;
    }
    std::vector<std::size_t> marks;
    for (std::size_t t = 1; t <= n; t <<= 1) marks.push_back(t);
    if (marks.back() != n) marks.push_back(n);

    std::vector<cplx> diffs(marks.size());
    cplx prev(0.0, 0.0);
    for (std::size_t i = 0; i < marks.size(); ++i) {
        diffs[i] = path.sums[marks[i]] - prev;
        prev = path.sums[marks[i]];
    }
    VariationResult res = variation_exact(prefix_path(diffs), 2.0);
    res.method = Method::Lacunary;
    return res;
}

/// A block partition of [1, N] into consecutive runs, given as inclusive
/// 1-based (lo, hi) pairs in order.
using BlockSpans = std::vector<std::pair<std::size_t, std::size_t>>;

enum class RestrictedMode { BlockLevel, WithinBlock };

namespace detail {
inline void require_partition(const BlockSpans& blocks, std::size_t n) {
    if (n == 0) {
        if (!blocks.empty()) throw std::invalid_argument("blocks given for an empty path");
        return;
    }
    std::size_t expect = 1;
    for (const auto& [lo, hi] : blocks) {
        if (lo != expect || hi < lo || hi > n)
            throw std::invalid_argument("blocks do not partition [1, N] into consecutive runs");
        expect = hi + 1;
    }
    if (expect != n + 1)
        throw std::invalid_argument("blocks do not partition [1, N] into consecutive runs");
}
}  // namespace detail

/// Restricted square variation of a block partition.
///
/// BlockLevel: exact V^2 of the sequence of whole-block sums (partitions
/// using only unions of blocks).  WithinBlock: combines the exact V^2 of
/// each block's sub-path in quadrature (partitions whose intervals each
/// stay inside one block).
inline VariationResult restricted_variation(const PartialSumPath& path, const BlockSpans& blocks,
                                            RestrictedMode mode) {
    detail::require_partition(blocks, path.steps());
    VariationResult res;
    res.p = 2.0;
    if (mode == RestrictedMode::BlockLevel) {
        std::vector<cplx> sums(blocks.size());
        for (std::size_t b = 0; b < blocks.size(); ++b)
            sums[b] = path.sums[blocks[b].second] - path.sums[blocks[b].first - 1];
        VariationResult inner = variation_exact(prefix_path(sums), 2.0);
        res.value = inner.value;
        res.method = Method::BlockLevel;
        // Map chain positions over blocks back to path indices.
        for (std::size_t pos : inner.breakpoints)
            res.breakpoints.push_back(pos == 0 ? 0 : blocks[pos - 1].second);
        return res;
    }

    res.method = Method::WithinBlock;
    double acc = 0.0;
    for (const auto& [lo, hi] : blocks) {
        std::vector<cplx> inc;
        inc.reserve(hi - lo + 1);
        for (std::size_t m = lo; m <= hi; ++m) inc.push_back(path.sums[m] - path.sums[m - 1]);
        VariationResult inner = variation_exact(prefix_path(inc), 2.0);
        acc += inner.value * inner.value;
        for (std::size_t pos : inner.breakpoints) {
            std::size_t global = lo - 1 + pos;
            if (res.breakpoints.empty() || res.breakpoints.back() != global)
                res.breakpoints.push_back(global);
        }
    }
    res.value = std::sqrt(acc);
    return res;
}

/// Exact p-variation of a real-valued path with the DP restricted to local
/// extrema of the running sum (plus the endpoints).
///
/// Justification: t -> |t - a|^p + |b - t|^p is convex for p >= 1, so an
/// interior breakpoint strictly inside a monotone run can slide to either
/// end of the run without decreasing the chain value.  Some optimal chain
/// therefore uses only extremum indices.
inline VariationResult extrema_pruned_variation(const PartialSumPath& path, double p) {
    detail::require_valid_p(p);
    if (!path.real_valued())
        throw std::invalid_argument("extrema_pruned_variation requires a real-valued path");
    const std::size_t n = path.steps();
    std::vector<std::size_t> cand;
    cand.push_back(0);
    for (std::size_t m = 1; m + 1 <= n && n >= 2 && m <= n - 1; ++m) {
        double a = path.sums[m].real() - path.sums[m - 1].real();
        double b = path.sums[m + 1].real() - path.sums[m].real();
        if (a * b <= 0.0) cand.push_back(m);
    }
    if (n >= 1) cand.push_back(n);
    return detail::chain_dp(path, p, cand, Method::ExtremaPruned);
}

}  // namespace varnorm
