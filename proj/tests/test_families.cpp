#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>

#include "oracles.hpp"
#include "uppertail/families.hpp"
#include "uppertail/primal.hpp"

using namespace uppertail;

TEST_CASE("cycle_pendant shapes") {
    Graph g32 = cycle_pendant(3, 2);
    CHECK(g32.order() == 5);
    CHECK(g32.edge_count() == 5);
    CHECK(g32.max_degree() == 4);

    Graph g63 = cycle_pendant(6, 3);
    CHECK(g63.order() == 9);
    CHECK(g63.edge_count() == 9);

    Graph g31 = cycle_pendant(3, 1);
    CHECK(is_balanced(g31));
    CHECK(m_density(g31).density.value == Rational(1));
    CHECK(primal_family(g31).min_vertex_count == 3);

    CHECK_THROWS_AS(cycle_pendant(2, 1), std::invalid_argument);
    CHECK_THROWS_AS(cycle_pendant(3, 0), std::invalid_argument);
    CHECK_THROWS_AS(cycle_pendant(30, 3), FeasibilityError);
}

TEST_CASE("snail fixture") {
    Graph s = snail();
    CHECK(s.order() == 7);
    CHECK(s.edge_count() == 7);
    CHECK(m_density(s).density.value == Rational(1));
    CHECK(s.degree(0) == 3); // vertex 1
    CHECK(s.degree(3) == 3); // vertex 4
    std::vector<std::pair<int, int>> expected = {{0, 1}, {0, 2}, {0, 3}, {1, 2},
                                                 {1, 6}, {3, 4}, {3, 5}};
    CHECK(s.edges() == expected);
}

TEST_CASE("badnews family") {
    CHECK_THROWS_AS(badnews(1), std::invalid_argument);
    CHECK_THROWS_AS(badnews(9), FeasibilityError);
    for (int r : {2, 3, 7}) {
        Graph h = badnews(r);
        CHECK(h.order() == 3 * r + 6);
        CHECK(h.edge_count() == 4 * r + 8);
        CHECK(induced_subgraph(h, (1u << 6) - 1).edge_count() == 8);
    }
    CHECK(m_density(badnews(3)).density.value == Rational(4, 3));
    CHECK(is_balanced(badnews(3)));
}

TEST_CASE("fig2 fixture") {
    Graph h = fig2_example();
    CHECK(h.order() == 10);
    CHECK(h.edge_count() == 19);
    CHECK(m_density(h).density.value == Rational(2));
    Graph k5_part = induced_subgraph(h, (1u << 5) - 1);
    CHECK(k5_part.edge_count() == 10);
    CHECK(counterexample_check(h).is_counterexample);
}

TEST_CASE("glue construction") {
    // J = K5 plus one apex adjacent to x1, x2.
    Graph j(6, {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {1, 2}, {1, 3}, {1, 4},
                {2, 3}, {2, 4}, {3, 4}, {0, 5}, {1, 5}});
    GlueSpec spec;
    spec.j = j;
    spec.g_vertices = (1u << 5) - 1;

    SUBCASE("three copies: the Fig.-2 core") {
        spec.copies = 3;
        Graph k = glue(spec);
        CHECK(k.order() == 8);
        CHECK(k.edge_count() == 16);
        CHECK(Rational(k.edge_count(), k.order()) == Rational(2));
        CHECK(m_density(k).density.value == Rational(2));
        CHECK(primal_family(k).min_vertex_count == 5);
    }

    SUBCASE("one copy is J itself") {
        spec.copies = 1;
        Graph k = glue(spec);
        CHECK(k.order() == j.order());
        CHECK(k.edge_count() == j.edge_count());
        CHECK(count_copies(k, j) == 1);
        CHECK(count_copies(j, k) == 1);
    }

    SUBCASE("six copies cross the counterexample boundary") {
        for (int r : {1, 2, 3, 6}) {
            spec.copies = r;
            Graph k = glue(spec);
            CounterexampleVerdict v = counterexample_check(k);
            CHECK(v.is_counterexample == (Rational(5 + r, r) < Rational(5)));
            ZetaResult z = zeta(primal_family(k));
            CHECK(z.zeta == Rational(5 + r, r));
        }
    }

    SUBCASE("invariants rejected up front") {
        GlueSpec bad = spec;
        bad.g_vertices = (1u << 4) - 1; // K4 is not primal for J
        bad.copies = 2;
        CHECK_THROWS_AS(glue(bad), std::invalid_argument);

        GlueSpec unbalanced = spec;
        unbalanced.j = fig2_example(); // m = 2 but e/v = 19/10: not balanced
        unbalanced.g_vertices = (1u << 5) - 1;
        CHECK_THROWS_AS(glue(unbalanced), std::invalid_argument);

        GlueSpec toobig = spec;
        toobig.copies = 30;
        CHECK_THROWS_AS(glue(toobig), FeasibilityError);
    }
}

TEST_CASE("badnews primal structure matches the closed form") {
    // Every member is G plus a subset of the r arms (r-1 units, one path).
    Graph h = badnews(3);
    PrimalFamily fam = primal_family(h);
    VertexSet g = (1u << 6) - 1;
    std::vector<VertexSet> arms;
    arms.push_back(g | (0x7u << 6));      // unit 1
    arms.push_back(g | (0x7u << 9));      // unit 2
    arms.push_back(g | (0x7u << 12));     // path internals
    std::set<VertexSet> expected;
    for (std::uint32_t sub = 0; sub < 8; ++sub) {
        VertexSet m = g;
        for (int i = 0; i < 3; ++i)
            if ((sub >> i) & 1u) m |= arms[i];
        expected.insert(m);
    }
    std::set<VertexSet> got(fam.members.begin(), fam.members.end());
    CHECK(got == expected);
}

TEST_CASE("every generator output passes the claim suite") {
    CHECK(claim_suite(snail()).pass());
    CHECK(claim_suite(fig2_example()).pass());
    CHECK(claim_suite(badnews(2)).pass());
    for (int l = 3; l <= 5; ++l)
        for (int r = 1; r <= 3; ++r) CHECK(claim_suite(cycle_pendant(l, r)).pass());
}
