#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <span>
#include <vector>

#include <pagerank_lab/graph.hpp>
#include <pagerank_lab/pagerank.hpp>

#include "support/dense_oracle.hpp"
#include "support/graph_gen.hpp"

using namespace pagerank_lab;

namespace {

CsrGraph two_cycle() {
    EdgeList el;
    el.vertex_count = 2;
    el.edges = {{0, 1}, {1, 0}};
    return build_csr(el);
}

// leaves 1 and 2 point at vertex 0, which dangles
CsrGraph star3() {
    EdgeList el;
    el.vertex_count = 3;
    el.edges = {{1, 0}, {2, 0}};
    return build_csr(el);
}

// closed-form star ranks: r0 = (1+2a)/(3+2a), r1 = r2 = 1/(3+2a)
std::vector<double> star3_exact(double alpha) {
    const double c = 1.0 / (3.0 + 2.0 * alpha);
    return {(1.0 + 2.0 * alpha) * c, c, c};
}

CsrGraph tiny_web() {
    EdgeList el;
    el.vertex_count = 6;
    el.edges = {{0, 1}, {0, 2}, {1, 2}, {2, 0}, {3, 2}, {4, 0}, {4, 3}, {2, 4}, {1, 5}};
    return build_csr(el);
}

} // namespace

TEST_CASE("two-cycle converges to uniform in one iteration for any alpha") {
    const CsrGraph g = two_cycle();
    for (const double alpha : {0.0, 0.5, 0.85, 1.0}) {
        const auto r = pagerank(g, {.alpha = alpha, .tolerance = 1e-6});
        CHECK(r.iterations == 1);
        CHECK(r.converged);
        CHECK(r.ranks[0] == doctest::Approx(0.5).epsilon(1e-12));
        CHECK(r.ranks[1] == doctest::Approx(0.5).epsilon(1e-12));
    }
}

TEST_CASE("single dangling vertex holds all rank") {
    EdgeList el;
    el.vertex_count = 1;
    const auto r = pagerank(build_csr(el), {.alpha = 0.85});
    CHECK(r.iterations == 1);
    CHECK(r.converged);
    CHECK(r.ranks[0] == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("star graph matches the analytic fixed point and the dense oracle") {
    const CsrGraph g = star3();
    const auto exact = star3_exact(0.85);
    CHECK(exact[0] == doctest::Approx(0.574468).epsilon(1e-6));
    CHECK(exact[1] == doctest::Approx(0.212766).epsilon(1e-6));

    const PageRankConfig cfg{.alpha = 0.85, .tolerance = 1e-10};
    const auto r = pagerank(g, cfg);
    REQUIRE(r.converged);
    for (int v = 0; v < 3; ++v)
        CHECK(r.ranks[v] == doctest::Approx(exact[v]).epsilon(1e-6));

    EdgeList el;
    el.vertex_count = 3;
    el.edges = {{1, 0}, {2, 0}};
    const auto oracle = testing::dense_pagerank(el, cfg);
    for (int v = 0; v < 3; ++v)
        CHECK(oracle.ranks[v] == doctest::Approx(exact[v]).epsilon(1e-6));
}

TEST_CASE("empty graph is rejected") {
    CsrGraph g;
    CHECK_THROWS_AS(pagerank(g, {}), std::invalid_argument);
}

TEST_CASE("config validation") {
    const CsrGraph g = two_cycle();
    CHECK_THROWS_AS(pagerank(g, {.alpha = 1.5}), std::invalid_argument);
    CHECK_THROWS_AS(pagerank(g, {.alpha = -0.1}), std::invalid_argument);
    CHECK_THROWS_AS(pagerank(g, {.tolerance = 0.0}), std::invalid_argument);
    CHECK_THROWS_AS(pagerank(g, {.max_iterations = 0}), std::invalid_argument);
}

TEST_CASE("estimator matches the documented spot values") {
    CHECK(estimate_iterations(0.85, 1e-6) == 85);
    CHECK(estimate_iterations(0.95, 1e-6) == 269);
    CHECK(estimate_iterations(0.75, 1e-6) == 48);
    CHECK(estimate_iterations(0.85, 1e-9) == 128);
    CHECK(estimate_iterations(0.85, 1e-3) == 43);
}

TEST_CASE("estimator rejects arguments outside (0, 1)") {
    CHECK_THROWS_AS(estimate_iterations(1.0, 1e-6), std::invalid_argument);
    CHECK_THROWS_AS(estimate_iterations(0.0, 1e-6), std::invalid_argument);
    CHECK_THROWS_AS(estimate_iterations(0.85, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(estimate_iterations(0.85, 0.0), std::invalid_argument);
    CHECK(estimate_iterations(0.5, 0.99) >= 1);
}

TEST_CASE("rank sum stays 1 within 1e-9 on every iteration") {
    std::mt19937 rng(11);
    std::vector<CsrGraph> graphs{two_cycle(), star3(), tiny_web()};
    for (int trial = 0; trial < 10; ++trial)
        graphs.push_back(
            build_csr(testing::random_digraph(rng, 2 + rng() % 40, 0.2, true)));

    for (const CsrGraph& g : graphs) {
        const auto check_sum = [](int, std::span<const double> ranks, double) {
            long double sum = 0.0L;
            for (const double r : ranks) sum += r;
            CHECK(std::fabs(static_cast<double>(sum) - 1.0) <= 1e-9);
        };
        pagerank(g, {.alpha = 0.85, .tolerance = 1e-9}, check_sum);
    }
}

TEST_CASE("ranks stay above the teleport floor after the first iteration") {
    std::mt19937 rng(13);
    for (int trial = 0; trial < 10; ++trial) {
        const auto g = build_csr(testing::random_digraph(rng, 2 + rng() % 30, 0.25, true));
        const double alpha = 0.85;
        const double floor = (1.0 - alpha) / g.vertex_count;
        const auto check_floor = [&](int, std::span<const double> ranks, double) {
            for (const double r : ranks) CHECK(r >= floor * (1 - 1e-12));
        };
        pagerank(g, {.alpha = alpha, .tolerance = 1e-8}, check_floor);
    }
}

TEST_CASE("iteration counts respect the norm speed ordering") {
    std::mt19937 rng(17);
    for (int trial = 0; trial < 20; ++trial) {
        const auto g = build_csr(testing::random_digraph(rng, 3 + rng() % 40, 0.2, true));
        for (const double alpha : {0.7, 0.85, 0.95}) {
            const int l1 =
                pagerank(g, {.alpha = alpha, .norm = NormKind::L1}).iterations;
            const int l2 =
                pagerank(g, {.alpha = alpha, .norm = NormKind::L2}).iterations;
            const int linf =
                pagerank(g, {.alpha = alpha, .norm = NormKind::LInf}).iterations;
            CHECK(linf <= l2);
            CHECK(l2 <= l1);
        }
    }
}

TEST_CASE("iterations are non-decreasing in alpha on the fixture graphs") {
    std::mt19937 rng(19);
    const std::vector<CsrGraph> graphs{star3(), tiny_web(),
                                       build_csr(testing::scale_free_web(rng, 300))};
    const std::vector<double> grid{0.50, 0.55, 0.60, 0.65, 0.70, 0.75,
                                   0.80, 0.85, 0.90, 0.95, 1.00};
    for (const CsrGraph& g : graphs) {
        for (const NormKind norm : all_norms) {
            int prev = 0;
            for (const double alpha : grid) {
                const int iters =
                    pagerank(g, {.alpha = alpha, .tolerance = 1e-6, .norm = norm})
                        .iterations;
                CHECK(iters >= prev);
                prev = iters;
            }
        }
    }
}

TEST_CASE("iterations are non-increasing as the tolerance grows") {
    std::mt19937 rng(23);
    for (int trial = 0; trial < 10; ++trial) {
        const auto g = build_csr(testing::random_digraph(rng, 3 + rng() % 40, 0.2, true));
        int prev = 0;
        // ascending tolerances
        for (const double tol : {1e-10, 1e-8, 1e-6, 1e-4, 1e-2, 1e0}) {
            const int iters = pagerank(g, {.alpha = 0.85, .tolerance = tol}).iterations;
            if (prev != 0) CHECK(iters <= prev);
            prev = iters;
        }
    }
}

TEST_CASE("regular dangling-free graphs converge in a single iteration") {
    const auto g = build_csr(testing::regular_ring(1000, 3));
    CHECK(g.dangling.empty());
    for (const NormKind norm : all_norms) {
        for (const double tol : {1e0, 1e-6, 1e-10}) {
            const auto r = pagerank(g, {.alpha = 0.85, .tolerance = tol, .norm = norm});
            CHECK(r.iterations == 1);
            CHECK(r.converged);
        }
    }
}

TEST_CASE("engine matches the dense oracle on random digraphs") {
    std::mt19937 rng(29);
    for (int trial = 0; trial < 40; ++trial) {
        const auto el =
            testing::random_digraph(rng, 2 + rng() % 49, 0.1 + 0.4 * (rng() % 100) / 100.0,
                                    trial % 2 == 0);
        const PageRankConfig cfg{.alpha = 0.5 + 0.45 * (rng() % 100) / 100.0,
                                 .tolerance = (trial % 3 == 0) ? 1e-8 : 1e-6,
                                 .norm = all_norms[trial % 3]};
        const auto got = pagerank(build_csr(el), cfg);
        const auto want = testing::dense_pagerank(el, cfg);
        REQUIRE(got.iterations == want.iterations);
        CHECK(got.converged == want.converged);
        CHECK(error_norm(NormKind::LInf, got.ranks, want.ranks) <= 1e-8);
    }
}

TEST_CASE("iteration cap reports non-convergence honestly") {
    const CsrGraph g = tiny_web();
    const auto r = pagerank(g, {.alpha = 1.0, .tolerance = 1e-15, .max_iterations = 50});
    CHECK(r.iterations == 50);
    CHECK(!r.converged);

    const auto capped = pagerank(g, {.alpha = 0.85, .tolerance = 1e-12, .max_iterations = 2});
    CHECK(capped.iterations == 2);
    CHECK(!capped.converged);
}

TEST_CASE("reference error is zero for the reference itself and for fixed points") {
    const CsrGraph star = star3();
    const auto ref = reference_ranks(star);
    CHECK(reference_error(star, ref) == 0.0);

    const CsrGraph cyc = two_cycle();
    for (const double alpha : {0.5, 0.75, 0.95}) {
        const auto r = pagerank(cyc, {.alpha = alpha});
        CHECK(reference_error(cyc, r.ranks) <= 1e-12);
    }
}

TEST_CASE("reference error matches the closed-form distance on the star graph") {
    const CsrGraph g = star3();
    const auto exact75 = star3_exact(0.75);
    const auto exact85 = star3_exact(0.85);
    double expected = 0;
    for (int v = 0; v < 3; ++v) expected += std::fabs(exact75[v] - exact85[v]);

    const auto r = pagerank(g, {.alpha = 0.75, .tolerance = 1e-12});
    CHECK(reference_error(g, r.ranks) == doctest::Approx(expected).epsilon(1e-4));
    CHECK(reference_error(g, r.ranks) > 0.0);
}
