#pragma once

#include <complex>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace varnorm {

using cplx = std::complex<double>;

inline bool is_finite(double x) { return std::isfinite(x); }
inline bool is_finite(const cplx& z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
}

/// A finite sequence of complex increments a_1..a_N (N may be 0).
struct IncrementSeq {
    std::vector<cplx> items;

    std::size_t size() const { return items.size(); }
};

inline IncrementSeq make_increment_seq(std::vector<cplx> items) {
    for (const cplx& z : items)
        if (!is_finite(z)) throw std::invalid_argument("increment sequence contains a non-finite entry");
    return IncrementSeq{std::move(items)};
}

/// Running sums S_0 = 0, S_m = S_{m-1} + a_m of an increment sequence.
struct PartialSumPath {
    std::vector<cplx> sums;  // length N+1, sums[0] == 0

    std::size_t steps() const { return sums.empty() ? 0 : sums.size() - 1; }

    bool real_valued() const {
        for (const cplx& z : sums)
            if (z.imag() != 0.0) return false;
        return true;
    }
};

inline PartialSumPath prefix_path(const IncrementSeq& seq) {
    PartialSumPath p;
    p.sums.resize(seq.items.size() + 1);
    p.sums[0] = cplx(0.0, 0.0);
    for (std::size_t m = 0; m < seq.items.size(); ++m) {
        if (!is_finite(seq.items[m]))
            throw std::invalid_argument("increment sequence contains a non-finite entry");
        p.sums[m + 1] = p.sums[m] + seq.items[m];
    }
    return p;
}

inline PartialSumPath prefix_path(const std::vector<cplx>& increments) {
    return prefix_path(IncrementSeq{increments});
}

inline std::vector<cplx> increments_of(const PartialSumPath& path) {
    std::vector<cplx> inc(path.steps());
    for (std::size_t m = 0; m < inc.size(); ++m) inc[m] = path.sums[m + 1] - path.sums[m];
    return inc;
}

/// Coefficient vector a_1..a_N together with its squared l2 mass.
struct CoeffSeq {
    std::vector<cplx> coeffs;
    double total_mass = 0.0;  // sum of |a_n|^2

    std::size_t size() const { return coeffs.size(); }
};

inline double squared_mass(const std::vector<cplx>& coeffs) {
    double s = 0.0;
    for (const cplx& z : coeffs) s += std::norm(z);
    return s;
}

inline CoeffSeq make_coeff_seq(std::vector<cplx> coeffs) {
    for (const cplx& z : coeffs)
        if (!is_finite(z)) throw std::invalid_argument("coefficient sequence contains a non-finite entry");
    CoeffSeq c;
    c.total_mass = squared_mass(coeffs);
    c.coeffs = std::move(coeffs);
    return c;
}

enum class Method {
    ExactDp,
    BruteForce,
    DyadicUpper,
    ExtremaPruned,
    Lacunary,
    BlockLevel,
    WithinBlock,
    Sup,
};

inline std::string to_string(Method m) {
    switch (m) {
        case Method::ExactDp: return "exact_dp";
        case Method::BruteForce: return "brute_force";
        case Method::DyadicUpper: return "dyadic_upper";
        case Method::ExtremaPruned: return "extrema_pruned";
        case Method::Lacunary: return "lacunary";
        case Method::BlockLevel: return "block_level";
        case Method::WithinBlock: return "within_block";
        case Method::Sup: return "sup";
    }
    return "?";
}

/// Value of a p-variation functional plus the witnessing breakpoint chain.
///
/// `breakpoints` is a strictly increasing index list n_0 < ... < n_K into the
/// path (indices in [0, N]).  For the chain methods (exact_dp, brute_force,
/// extrema_pruned) the value equals (sum_l |S_{n_l} - S_{n_{l-1}}|^p)^{1/p}.
struct VariationResult {
    double value = 0.0;
    double p = 2.0;  // +infinity for the sup functional
    std::vector<std::size_t> breakpoints;
    Method method = Method::ExactDp;
};

/// Re-evaluates the chain formula from the stored breakpoints.
inline double value_from_breakpoints(const PartialSumPath& path, const VariationResult& r) {
    double acc = 0.0;
    for (std::size_t l = 1; l < r.breakpoints.size(); ++l) {
        double d = std::abs(path.sums[r.breakpoints[l]] - path.sums[r.breakpoints[l - 1]]);
        acc += (r.p == 2.0) ? d * d : std::pow(d, r.p);
    }
    if (acc == 0.0) return 0.0;
    return (r.p == 2.0) ? std::sqrt(acc) : std::pow(acc, 1.0 / r.p);
}

}  // namespace varnorm
