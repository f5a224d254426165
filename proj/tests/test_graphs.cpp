#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <limits>

#include "streamnet/errors.hpp"
#include "streamnet/graphs.hpp"
#include "support.hpp"

using namespace streamnet;
using streamnet::testing::TestRng;

namespace {

Eigen::MatrixXd symmetric_from_upper(int p, const std::vector<double>& upper) {
    Eigen::MatrixXd m = Eigen::MatrixXd::Identity(p, p);
    std::size_t t = 0;
    for (int i = 0; i < p; ++i) {
        for (int j = i + 1; j < p; ++j) {
            m(i, j) = upper[t];
            m(j, i) = upper[t];
            ++t;
        }
    }
    return m;
}

// Definition-level domination filter used as the oracle for pareto_front.
std::vector<ParetoPoint> brute_force_front(std::vector<ParetoPoint> pts) {
    // collapse exact objective ties to the smallest (lambda, tau)
    std::vector<ParetoPoint> unique;
    for (const auto& pt : pts) {
        bool merged = false;
        for (auto& u : unique) {
            if (u.edges_k == pt.edges_k && u.error_val == pt.error_val) {
                if (pt.lambda < u.lambda || (pt.lambda == u.lambda && pt.tau < u.tau)) u = pt;
                merged = true;
                break;
            }
        }
        if (!merged) unique.push_back(pt);
    }
    std::vector<ParetoPoint> front;
    for (const auto& a : unique) {
        bool dominated = false;
        for (const auto& b : unique) {
            if (b.edges_k <= a.edges_k && b.error_val <= a.error_val &&
                (b.edges_k < a.edges_k || b.error_val < a.error_val)) {
                dominated = true;
                break;
            }
        }
        if (!dominated) front.push_back(a);
    }
    return front;
}

bool same_point_set(std::vector<ParetoPoint> a, std::vector<ParetoPoint> b) {
    auto key = [](const ParetoPoint& p) {
        return std::tuple(p.edges_k, p.error_val, p.lambda, p.tau);
    };
    auto cmp = [&key](const ParetoPoint& x, const ParetoPoint& y) { return key(x) < key(y); };
    std::sort(a.begin(), a.end(), cmp);
    std::sort(b.begin(), b.end(), cmp);
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (key(a[i]) != key(b[i])) return false;
    }
    return true;
}

} // namespace

TEST_CASE("graph basics") {
    Graph g(4);
    g.add_edge(2, 0);
    g.add_edge(0, 2); // duplicate, normalized order
    g.add_edge(1, 2);
    CHECK(g.edge_count() == 2);
    CHECK(g.has_edge(0, 2));
    CHECK(g.has_edge(2, 0));
    CHECK(!g.has_edge(0, 1));
    CHECK(g.neighbors(2) == std::vector<int>{0, 1});
    CHECK(g.is_isolated(3));
    CHECK_THROWS_AS(g.add_edge(1, 1), ValidationError);
    CHECK_THROWS_AS(g.add_edge(0, 4), ValidationError);
    CHECK(Graph::complete(5).edge_count() == 10);
    CHECK(Graph::max_edges(34) == 561);
}

TEST_CASE("threshold_graph follows the strict magnitude rule") {
    const Eigen::MatrixXd theta = symmetric_from_upper(3, {0.3, 0.1, 0.05});
    CHECK(threshold_graph(theta, 0.0).edge_count() == 3);
    CHECK(threshold_graph(theta, 0.08).edge_count() == 2);
    CHECK(threshold_graph(theta, std::numeric_limits<double>::infinity()).edge_count() == 0);
    CHECK(threshold_graph(theta, 0.1).edge_count() == 1); // strict >
}

TEST_CASE("threshold_graph edge count is non-increasing in tau") {
    TestRng rng(5);
    for (int round = 0; round < 50; ++round) {
        const int p = 3 + static_cast<int>(rng.below(8));
        const Eigen::MatrixXd theta = streamnet::testing::random_spd(p, rng);
        int prev = threshold_graph(theta, 0.0).edge_count();
        for (double tau = 0.02; tau <= 0.5; tau += 0.02) {
            const int count = threshold_graph(theta, tau).edge_count();
            CHECK(count <= prev);
            prev = count;
        }
    }
}

TEST_CASE("tau_for_edge_budget meets the budget and handles ties") {
    SUBCASE("full budget keeps everything") {
        TestRng rng(9);
        const Eigen::MatrixXd theta = streamnet::testing::random_spd(5, rng);
        const double tau = tau_for_edge_budget(theta, 10);
        CHECK(threshold_graph(theta, tau).edge_count() == 10);
    }
    SUBCASE("zero budget excludes everything") {
        const Eigen::MatrixXd theta = symmetric_from_upper(3, {0.3, 0.1, 0.05});
        const double tau = tau_for_edge_budget(theta, 0);
        CHECK(tau == 0.3);
        CHECK(threshold_graph(theta, tau).edge_count() == 0);
    }
    SUBCASE("tied magnitudes survive together") {
        const Eigen::MatrixXd theta = symmetric_from_upper(3, {0.5, 0.5, 0.2});
        const double tau = tau_for_edge_budget(theta, 2);
        const Graph g = threshold_graph(theta, tau);
        CHECK(g.edge_count() == 2);
        CHECK(g.has_edge(0, 1));
        CHECK(g.has_edge(0, 2));
        // budget 1 cannot split the tie, so it falls to zero edges
        CHECK(threshold_graph(theta, tau_for_edge_budget(theta, 1)).edge_count() == 0);
    }
    SUBCASE("budget is an upper bound everywhere, exact without ties") {
        TestRng rng(13);
        for (int round = 0; round < 50; ++round) {
            const int p = 3 + static_cast<int>(rng.below(8));
            const Eigen::MatrixXd theta = streamnet::testing::random_spd(p, rng);
            const int full = static_cast<int>(Graph::max_edges(p));
            for (int k = 0; k <= full; ++k) {
                const int count =
                    threshold_graph(theta, tau_for_edge_budget(theta, k)).edge_count();
                CHECK(count <= k);
                CHECK(count == k); // continuous random magnitudes never tie
            }
        }
        CHECK_THROWS_AS((void)tau_for_edge_budget(Eigen::MatrixXd::Identity(3, 3), 4),
                        ValidationError);
    }
}

TEST_CASE("haversine distance matches a textbook value") {
    // one degree of longitude on the equator
    CHECK(haversine_km(0, 0, 0, 1) == doctest::Approx(111.195).epsilon(1e-3));
    CHECK(haversine_km(52.0, 13.0, 52.0, 13.0) == 0.0);
}

TEST_CASE("distance_graph links nearest neighbours on a parallel") {
    std::vector<GaugeMetadata> meta(3);
    for (int i = 0; i < 3; ++i) {
        meta[static_cast<std::size_t>(i)].nwsli = "G" + std::to_string(i);
        meta[static_cast<std::size_t>(i)].latitude = 40.0;
        meta[static_cast<std::size_t>(i)].drainage_area_km2 = 1.0;
    }
    meta[0].longitude = 0.0;
    meta[1].longitude = 1.0;
    meta[2].longitude = 3.0;
    const Graph g = distance_graph(meta, 1);
    CHECK(g.edge_count() == 2);
    CHECK(g.has_edge(0, 1));
    CHECK(g.has_edge(1, 2));

    const Graph full = distance_graph(meta, 2);
    CHECK(full.edge_count() == 3);

    meta[1].longitude = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS((void)distance_graph(meta, 1), ValidationError);
}

TEST_CASE("correlation_graph links the strongest pairs") {
    Eigen::MatrixXd s = Eigen::MatrixXd::Identity(4, 4);
    s(0, 1) = s(1, 0) = 0.9;
    s(2, 3) = s(3, 2) = 0.8;
    s(0, 2) = s(2, 0) = 0.1;
    s(1, 3) = s(3, 1) = 0.2;
    const Graph g = correlation_graph(CovarianceMatrix{s}, 1);
    CHECK(g.has_edge(0, 1));
    CHECK(g.has_edge(2, 3));
    CHECK(g.edge_count() == 2);
    CHECK(correlation_graph(CovarianceMatrix{s}, 3) == Graph::complete(4));
    CHECK_THROWS_AS((void)correlation_graph(CovarianceMatrix{s}, 4), ValidationError);
}

TEST_CASE("nearest-style unions stay within p/2..p edges for m = 1") {
    TestRng rng(21);
    for (int round = 0; round < 20; ++round) {
        const int p = 4 + static_cast<int>(rng.below(12));
        std::vector<GaugeMetadata> meta(static_cast<std::size_t>(p));
        for (int i = 0; i < p; ++i) {
            meta[static_cast<std::size_t>(i)].nwsli = "G" + std::to_string(i);
            meta[static_cast<std::size_t>(i)].latitude = rng.uniform(30, 45);
            meta[static_cast<std::size_t>(i)].longitude = rng.uniform(-90, -70);
            meta[static_cast<std::size_t>(i)].drainage_area_km2 = 1.0;
        }
        const int edges = distance_graph(meta, 1).edge_count();
        CHECK(edges * 2 >= p);
        CHECK(edges <= p);
    }
}

TEST_CASE("constrain_roles removes same-role edges only") {
    Graph g(4);
    g.add_edge(0, 1);
    g.add_edge(0, 2);
    g.add_edge(2, 3);
    SUBCASE("empty role sets change nothing") {
        CHECK(constrain_roles(g, {}, {}) == g);
    }
    SUBCASE("donor-donor edges vanish") {
        const Graph out = constrain_roles(g, {0, 1}, {});
        CHECK(!out.has_edge(0, 1));
        CHECK(out.has_edge(0, 2));
        CHECK(out.has_edge(2, 3));
    }
    SUBCASE("target-target edges vanish") {
        const Graph out = constrain_roles(g, {}, {0, 2});
        CHECK(!out.has_edge(0, 2));
        CHECK(out.has_edge(0, 1));
        CHECK(out.has_edge(2, 3));
    }
    SUBCASE("overlapping roles are rejected") {
        CHECK_THROWS_AS((void)constrain_roles(g, {1}, {1}), ValidationError);
    }
}

TEST_CASE("pareto_front worked example") {
    auto mk = [](int k, double err) {
        ParetoPoint pt;
        pt.edges_k = k;
        pt.error_val = err;
        return pt;
    };
    const auto front = pareto_front({mk(10, 0.5), mk(20, 0.3), mk(15, 0.6)});
    REQUIRE(front.size() == 2);
    CHECK(front[0].edges_k == 10);
    CHECK(front[1].edges_k == 20);

    const auto single = pareto_front({mk(7, 0.9)});
    REQUIRE(single.size() == 1);
    CHECK(single[0].edges_k == 7);

    CHECK(pareto_front({}).empty());
}

TEST_CASE("pareto_front equals the brute-force filter on random points") {
    TestRng rng(33);
    std::vector<ParetoPoint> pts;
    for (int i = 0; i < 1000; ++i) {
        ParetoPoint pt;
        pt.edges_k = static_cast<int>(rng.below(60));
        pt.error_val = std::round(rng.uniform01() * 50) / 50.0; // force ties
        pt.lambda = rng.uniform01();
        pt.tau = rng.uniform01();
        pts.push_back(pt);
    }
    const auto fast = pareto_front(pts);
    const auto slow = brute_force_front(pts);
    CHECK(same_point_set(fast, slow));

    // no dominated pair survives
    for (const auto& a : fast) {
        for (const auto& b : fast) {
            if (&a == &b) continue;
            const bool dominates = b.edges_k <= a.edges_k && b.error_val <= a.error_val &&
                                   (b.edges_k < a.edges_k || b.error_val < a.error_val);
            CHECK(!dominates);
        }
    }
}
