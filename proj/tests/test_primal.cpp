#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>

#include "oracles.hpp"
#include "uppertail/families.hpp"
#include "uppertail/primal.hpp"

using namespace uppertail;

namespace {

std::vector<std::string> member_labels(const PrimalFamily& fam) {
    std::vector<std::string> out;
    for (VertexSet s : fam.members) out.push_back(format_vertex_set(s, fam.host.order()));
    return out;
}

} // namespace

TEST_CASE("snail primal lattice") {
    PrimalFamily fam = primal_family(snail());
    CHECK(member_labels(fam) == std::vector<std::string>{
                                    "123", "1234", "1237", "12345", "12346", "12347",
                                    "123456", "123457", "123467", "1234567"});
    CHECK(fam.min_vertex_count == 3);

    SUBCASE("covering relations") {
        auto ups = covering_primals(fam, parse_vertex_set("1,2,3,4", 7));
        std::vector<VertexSet> expected = {parse_vertex_set("1,2,3,4,5", 7),
                                           parse_vertex_set("1,2,3,4,6", 7),
                                           parse_vertex_set("1,2,3,4,7", 7)};
        CHECK(ups == expected);
        CHECK_FALSE(covers(fam, parse_vertex_set("1,2,3", 7), parse_vertex_set("1,2,3,4,7", 7)));
        CHECK(covers(fam, parse_vertex_set("1,2,3", 7), parse_vertex_set("1,2,3,4", 7)));
        CHECK_THROWS_AS(covering_primals(fam, parse_vertex_set("1,2", 7)),
                        std::invalid_argument);
    }

    SUBCASE("grading chain") {
        GradingChain chain = grading(fam);
        REQUIRE(chain.chain.size() == 3);
        CHECK(format_vertex_set(chain.chain[0], 7) == "123");
        CHECK(format_vertex_set(chain.chain[1], 7) == "12347");
        CHECK(format_vertex_set(chain.chain[2], 7) == "1234567");
        for (size_t i = 0; i + 1 < chain.chain.size(); ++i) {
            CHECK((chain.chain[i] & ~chain.chain[i + 1]) == 0);
            CHECK(chain.chain[i] != chain.chain[i + 1]);
            CHECK(fam.is_member(chain.chain[i]));
        }
    }

    SUBCASE("zeta values from the worked example") {
        ZetaResult z = zeta(fam);
        CHECK(z.zeta == Rational(7, 3));
        CHECK(format_vertex_set(z.witness_G, 7) == "1234");
        REQUIRE(z.witness_covers.size() == 3);
        auto value_of = [&](const char* label) {
            VertexSet g = parse_vertex_set(label, 7);
            for (auto& [s, v] : z.per_G_values)
                if (s == g) return v;
            return Rational(-1);
        };
        CHECK(value_of("1,2,3") == Rational(5, 2));
        CHECK(value_of("1,2,3,4,7") == Rational(7, 2));
    }

    SUBCASE("counterexample verdict with witness") {
        CounterexampleVerdict v = counterexample_check(fam);
        CHECK(v.is_counterexample);
        CHECK(format_vertex_set(v.witness_G, 7) == "1234");
        CHECK(format_vertex_set(v.witness_K, 7) == "1234567");
        CHECK(v.witness_covers.size() == 3);
        CHECK(Rational(set_size(v.witness_K), 3) < Rational(v.min_vertex_count));
    }
}

TEST_CASE("degenerate and strictly balanced lattices") {
    PrimalFamily c4 = primal_family(oracles::cycle_graph(4));
    CHECK(c4.members.size() == 1);
    CHECK(c4.members[0] == oracles::cycle_graph(4).full_set());
    CHECK(covering_primals(c4, c4.members[0]).empty());
    CHECK(claim_suite(c4).pass());
    CHECK_THROWS_AS(zeta(c4), std::invalid_argument);
    CHECK_FALSE(counterexample_check(c4).is_counterexample);
    GradingChain chain = grading(c4);
    CHECK(chain.chain == std::vector<VertexSet>{c4.members[0]});

    PrimalFamily k2 = primal_family(Graph(2, {{0, 1}}));
    CHECK(claim_suite(k2).pass());

    // unbalanced host: grading refuses
    CHECK_THROWS_AS(grading(fig2_example()), std::invalid_argument);
}

TEST_CASE("cycle-pendant lattices") {
    PrimalFamily fam = primal_family(cycle_pendant(3, 2));
    CHECK(fam.members.size() == 4);
    CHECK(fam.min_vertex_count == 3);
    GradingChain chain = grading(fam);
    REQUIRE(chain.chain.size() == 2);
    CHECK(chain.chain[0] == parse_vertex_set("1,2,3", 5));
    CHECK(chain.chain[1] == cycle_pendant(3, 2).full_set());

    for (int l = 3; l <= 6; ++l)
        for (int r = 1; r <= 3; ++r) {
            Graph h = cycle_pendant(l, r);
            PrimalFamily f = primal_family(h);
            CHECK(f.min_vertex_count == l);
            CounterexampleVerdict v = counterexample_check(f);
            CHECK(v.is_counterexample == (r >= 2));
            ZetaResult z = zeta(f);
            CHECK(z.zeta == Rational(l + r, r));
        }
}

TEST_CASE("badnews small cases") {
    for (int r : {2, 3}) {
        Graph h = badnews(r);
        PrimalFamily fam = primal_family(h);
        CHECK(fam.min_vertex_count == 6);
        CHECK(fam.members.size() == (1u << r)); // G plus any subset of the r arms
        CHECK(zeta(fam).zeta == Rational(3 * r + 6, r));
        CHECK(claim_suite(fam).pass());
        CHECK(counterexample_check(fam).is_counterexample == (Rational(3 * r + 6, r) < Rational(6)));
    }
}

TEST_CASE("claim suite on generated and random graphs") {
    CHECK(claim_suite(snail()).pass());
    CHECK(claim_suite(fig2_example()).pass());
    CHECK(claim_suite(cycle_pendant(5, 3)).pass());
    for (std::uint64_t seed = 500; seed < 530; ++seed) {
        Graph g = oracles::random_connected_graph(9, seed);
        ClaimSuiteReport rep = claim_suite(g);
        INFO("seed ", seed, " witness: ", rep.counterwitness);
        CHECK(rep.pass());
    }
}

TEST_CASE("prefix rule equals brute-force subset minimization") {
    std::vector<Graph> hosts = {snail(), fig2_example()};
    for (int l = 3; l <= 6; ++l)
        for (int r = 1; r <= 3; ++r) hosts.push_back(cycle_pendant(l, r));
    for (const Graph& h : hosts) {
        PrimalFamily fam = primal_family(h);
        if (fam.cover_edges.empty()) continue;
        ZetaResult z = zeta(fam);
        Rational global_brute(0, 1);
        bool any = false;
        for (VertexSet g : fam.members) {
            auto ups = covering_primals(fam, g);
            if (ups.empty()) continue;
            Rational brute = oracles::zeta_subsets_brute(g, ups);
            Rational via_prefix(-1);
            for (auto& [s, v] : z.per_G_values)
                if (s == g) via_prefix = v;
            CHECK(via_prefix == brute);
            if (!any || brute < global_brute) {
                global_brute = brute;
                any = true;
            }
        }
        CHECK(z.zeta == global_brute);
    }
}

TEST_CASE("union closure holds across members") {
    for (const Graph& h : {snail(), cycle_pendant(4, 3), fig2_example()}) {
        PrimalFamily fam = primal_family(h);
        for (VertexSet a : fam.members)
            for (VertexSet b : fam.members) CHECK(fam.is_member(a | b));
    }
}

TEST_CASE("member densities recomputed independently") {
    for (const Graph& h : {snail(), fig2_example(), badnews(3)}) {
        PrimalFamily fam = primal_family(h);
        for (VertexSet s : fam.members) {
            Graph sub = induced_subgraph(h, s);
            CHECK(Rational(sub.edge_count(), sub.order()) == fam.m);
        }
    }
}

TEST_CASE("order cap") {
    CHECK_THROWS_AS(primal_family(badnews(8)), FeasibilityError); // 30 vertices
}
