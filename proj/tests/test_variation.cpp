#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <vector>

#include "varnorm/rng.hpp"
#include "varnorm/types.hpp"
#include "varnorm/variation.hpp"

using namespace varnorm;
using Catch::Approx;

namespace {

PartialSumPath path_of(std::initializer_list<cplx> inc) {
    return prefix_path(std::vector<cplx>(inc));
}

std::vector<cplx> random_complex_seq(Rng& rng, std::size_t n) {
    std::vector<cplx> v(n);
    for (auto& z : v) z = cplx(rng.normal(), rng.normal());
    return v;
}

std::vector<cplx> random_real_seq(Rng& rng, std::size_t n) {
    std::vector<cplx> v(n);
    for (auto& z : v) z = cplx(rng.normal(), 0.0);
    return v;
}

}  // namespace

TEST_CASE("prefix_path cumulative sums", "[varcore]") {
    CHECK(prefix_path(std::vector<cplx>{}).sums == std::vector<cplx>{cplx(0, 0)});
    auto p = path_of({1, 1, 1});
    CHECK(p.sums == std::vector<cplx>{{0, 0}, {1, 0}, {2, 0}, {3, 0}});
    auto q = path_of({1, -1});
    CHECK(q.sums == std::vector<cplx>{{0, 0}, {1, 0}, {0, 0}});
    CHECK_THROWS_AS(prefix_path(std::vector<cplx>{cplx(std::nan(""), 0)}), std::invalid_argument);
}

TEST_CASE("variation_exact pinned examples", "[varcore]") {
    CHECK(variation_exact(path_of({cplx(3, 0)}), 2.0).value == Approx(3.0));

    // same-sign reals merge: single full interval is optimal
    auto r = variation_exact(path_of({1, 1, 1, 1}), 2.0);
    CHECK(r.value == Approx(4.0));
    CHECK(r.breakpoints == std::vector<std::size_t>{0, 4});

    // alternating: four singleton intervals, value sqrt(4) = 2 (frozen from
    // the brute-force enumeration below)
    auto alt = variation_exact(path_of({1, -1, 1, -1}), 2.0);
    CHECK(alt.value == Approx(2.0));
    CHECK(alt.breakpoints == std::vector<std::size_t>{0, 1, 2, 3, 4});

    CHECK(variation_exact(prefix_path(std::vector<cplx>{}), 2.0).value == 0.0);
    CHECK_THROWS_AS(variation_exact(path_of({1}), 0.5), std::invalid_argument);
    CHECK_THROWS_AS(variation_exact(path_of({1}), std::numeric_limits<double>::infinity()),
                    std::invalid_argument);
}

TEST_CASE("variation_bruteforce pinned examples and guard", "[varcore]") {
    CHECK(variation_bruteforce(path_of({1, -1, 1, -1}), 2.0).value == Approx(2.0));
    CHECK(variation_bruteforce(prefix_path(std::vector<cplx>{}), 1.5).value == 0.0);
    CHECK(variation_bruteforce(path_of({cplx(2, 0)}), 3.0).value == Approx(2.0));
    PartialSumPath big = prefix_path(std::vector<cplx>(21, cplx(1, 0)));
    CHECK_THROWS_AS(variation_bruteforce(big, 2.0), std::invalid_argument);
}

TEST_CASE("oracle equivalence: DP vs brute force", "[varcore]") {
    Rng rng(20250810);
    const double ps[] = {1.0, 1.5, 2.0, 3.0};
    for (int inst = 0; inst < 200; ++inst) {
        std::size_t n = rng.below(13);
        auto path = prefix_path(random_complex_seq(rng, n));
        for (double p : ps) {
            auto a = variation_exact(path, p);
            auto b = variation_bruteforce(path, p);
            REQUIRE(a.value == Approx(b.value).epsilon(1e-12).margin(1e-300));
            REQUIRE(a.breakpoints == b.breakpoints);
        }
    }
}

TEST_CASE("sup_variation pinned examples and two-sided bound", "[varcore]") {
    CHECK(sup_variation(path_of({1, 1, 1})).value == Approx(3.0));
    CHECK(sup_variation(path_of({1, -2, 1})).value == Approx(2.0));
    CHECK(sup_variation(path_of({cplx(0, 1), cplx(0, 1)})).value == Approx(2.0));

    Rng rng(7);
    for (int inst = 0; inst < 200; ++inst) {
        std::size_t n = 1 + rng.below(40);
        auto path = prefix_path(random_complex_seq(rng, n));
        double sup = sup_variation(path).value;
        double maxpre = 0.0;
        for (const auto& s : path.sums) maxpre = std::max(maxpre, std::abs(s));
        REQUIRE(sup >= maxpre - 1e-12);
        REQUIRE(sup <= 2.0 * maxpre + 1e-12);
        // brute-force pair check on small instances
        if (n <= 12) {
            double brute = 0.0;
            for (std::size_t a = 0; a <= n; ++a)
                for (std::size_t b = a + 1; b <= n; ++b)
                    brute = std::max(brute, std::abs(path.sums[b] - path.sums[a]));
            REQUIRE(sup == Approx(brute).epsilon(1e-12));
        }
    }
}

TEST_CASE("dyadic_upper_bound pinned examples", "[varcore]") {
    CHECK(dyadic_upper_bound(path_of({1, 1, 1, 1})) == Approx(2.0 + 2.0 * std::sqrt(2.0) + 4.0));
    CHECK(dyadic_upper_bound(path_of({cplx(3, 4)})) == Approx(5.0));
    CHECK(dyadic_upper_bound(path_of({1, -1, 1, -1})) == Approx(2.0));
}

TEST_CASE("dyadic sandwich on random paths", "[varcore]") {
    Rng rng(11);
    for (int inst = 0; inst < 100; ++inst) {
        std::size_t n = 1 + rng.below(50);
        auto path = prefix_path(random_complex_seq(rng, n));
        double v2 = variation_exact(path, 2.0).value;
        REQUIRE(v2 <= std::sqrt(2.0) * dyadic_upper_bound(path) + 1e-9);
    }
}

TEST_CASE("lacunary_variation pinned examples", "[varcore]") {
    auto r = lacunary_variation(path_of({1, 1, 1, 1}));
    CHECK(r.value == Approx(4.0));
    CHECK(r.method == Method::Lacunary);
    CHECK(lacunary_variation(path_of({cplx(0, 2)})).value == Approx(2.0));
    CHECK(lacunary_variation(path_of({1, -1, 0, 0})).value == Approx(std::sqrt(2.0)));
}

TEST_CASE("restricted_variation pinned examples", "[varcore]") {
    auto path = path_of({1, -1, 1, -1});
    BlockSpans blocks{{1, 2}, {3, 4}};
    CHECK(restricted_variation(path, blocks, RestrictedMode::BlockLevel).value == Approx(0.0).margin(1e-15));
    CHECK(restricted_variation(path, blocks, RestrictedMode::WithinBlock).value == Approx(2.0));

    // single block: block-level variation is |S_N|
    Rng rng(3);
    for (int inst = 0; inst < 20; ++inst) {
        std::size_t n = 1 + rng.below(12);
        auto p = prefix_path(random_complex_seq(rng, n));
        BlockSpans whole{{1, n}};
        CHECK(restricted_variation(p, whole, RestrictedMode::BlockLevel).value ==
              Approx(std::abs(p.sums[n])).margin(1e-12));
    }

    CHECK_THROWS_AS(restricted_variation(path, BlockSpans{{1, 2}}, RestrictedMode::BlockLevel),
                    std::invalid_argument);
    CHECK_THROWS_AS(restricted_variation(path, BlockSpans{{1, 2}, {2, 4}}, RestrictedMode::WithinBlock),
                    std::invalid_argument);
}

TEST_CASE("split inequality with factor 3", "[varcore]") {
    Rng rng(13);
    for (int inst = 0; inst < 200; ++inst) {
        std::size_t n = 2 + rng.below(40);
        auto path = prefix_path(random_complex_seq(rng, n));
        // random consecutive block partition
        BlockSpans blocks;
        std::size_t lo = 1;
        while (lo <= n) {
            std::size_t hi = std::min(n, lo + rng.below(6));
            blocks.push_back({lo, hi});
            lo = hi + 1;
        }
        double v = variation_exact(path, 2.0).value;
        double vl = restricted_variation(path, blocks, RestrictedMode::BlockLevel).value;
        double vs = restricted_variation(path, blocks, RestrictedMode::WithinBlock).value;
        REQUIRE(v * v <= 3.0 * (vl * vl + vs * vs) + 1e-9);
    }
}

TEST_CASE("extrema_pruned_variation agrees with the oracle", "[varcore]") {
    auto mono = extrema_pruned_variation(path_of({1, 1, 1, 1}), 2.0);
    CHECK(mono.value == Approx(4.0));
    CHECK(mono.breakpoints == std::vector<std::size_t>{0, 4});

    CHECK(extrema_pruned_variation(path_of({1, -1, 1, -1}), 2.0).value == Approx(2.0));

    auto p3 = path_of({2, -1, 3});
    CHECK(extrema_pruned_variation(p3, 2.0).value == Approx(variation_exact(p3, 2.0).value));

    CHECK_THROWS_AS(extrema_pruned_variation(path_of({cplx(0, 1)}), 2.0), std::invalid_argument);

    Rng rng(17);
    const double ps[] = {1.0, 1.5, 2.0, 3.0};
    for (int inst = 0; inst < 200; ++inst) {
        std::size_t n = rng.below(13);
        auto path = prefix_path(random_real_seq(rng, n));
        for (double p : ps) {
            REQUIRE(extrema_pruned_variation(path, p).value ==
                    Approx(variation_bruteforce(path, p).value).epsilon(1e-12).margin(1e-300));
        }
    }
}

TEST_CASE("monotonicity in p and norm axioms", "[varcore]") {
    Rng rng(23);
    for (int inst = 0; inst < 100; ++inst) {
        std::size_t n = 1 + rng.below(16);
        auto a = random_complex_seq(rng, n);
        auto b = random_complex_seq(rng, n);
        auto pa = prefix_path(a);

        // nondecreasing as p decreases
        double v1 = variation_exact(pa, 1.0).value;
        double v15 = variation_exact(pa, 1.5).value;
        double v2 = variation_exact(pa, 2.0).value;
        double v3 = variation_exact(pa, 3.0).value;
        REQUIRE(v1 + 1e-12 >= v15);
        REQUIRE(v15 + 1e-12 >= v2);
        REQUIRE(v2 + 1e-12 >= v3);

        // homogeneity
        cplx c(rng.normal(), rng.normal());
        std::vector<cplx> scaled(n);
        for (std::size_t i = 0; i < n; ++i) scaled[i] = c * a[i];
        REQUIRE(variation_exact(prefix_path(scaled), 2.0).value ==
                Approx(std::abs(c) * v2).epsilon(1e-10).margin(1e-12));

        // triangle inequality
        std::vector<cplx> sum(n);
        for (std::size_t i = 0; i < n; ++i) sum[i] = a[i] + b[i];
        REQUIRE(variation_exact(prefix_path(sum), 2.0).value <=
                v2 + variation_exact(prefix_path(b), 2.0).value + 1e-9);

        // domination of the sup functional by every finite p
        double sup = sup_variation(pa).value;
        REQUIRE(v3 >= sup - 1e-12);
        REQUIRE(v2 >= sup - 1e-12);
    }
}

TEST_CASE("append monotonicity and breakpoint recomputation", "[varcore]") {
    Rng rng(29);
    for (int inst = 0; inst < 100; ++inst) {
        std::size_t n = 1 + rng.below(20);
        auto inc = random_complex_seq(rng, n);
        auto path = prefix_path(inc);
        auto r = variation_exact(path, 2.0);

        REQUIRE(value_from_breakpoints(path, r) == Approx(r.value).epsilon(1e-12).margin(1e-300));

        inc.push_back(cplx(rng.normal(), rng.normal()));
        double grown = variation_exact(prefix_path(inc), 2.0).value;
        REQUIRE(grown + 1e-12 >= r.value);
    }
}
