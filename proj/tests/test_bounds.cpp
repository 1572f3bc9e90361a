#include <doctest.h>

#include <string>

#include "latdom/bounds.hpp"
#include "latdom/graph.hpp"
#include "latdom/solver.hpp"

using namespace latdom;

namespace {

bool mentions(const std::string& text, const std::string& piece) {
    return text.find(piece) != std::string::npos;
}

} // namespace

TEST_CASE("structure detection recognizes the canonical generators") {
    for (int n = 1; n <= 8; ++n)
        CHECK(detect_structure(LatinSquare::cyclic(n)) == StructureInfo::cyclic());
    CHECK(detect_structure(LatinSquare::q_step(2, 3)) == StructureInfo::q_step(2, 3));
    CHECK(detect_structure(LatinSquare::q_step(3, 2)) == StructureInfo::q_step(3, 2));
    CHECK(detect_structure(LatinSquare::q_step(2, 2)) == StructureInfo::q_step(2, 2));

    // A one-step square is the cyclic square, and is reported as such.
    CHECK(detect_structure(LatinSquare::q_step(1, 6)) == StructureInfo::cyclic());

    const Isotopy swap_rows({2, 1, 3, 4, 5}, {1, 2, 3, 4, 5}, {1, 2, 3, 4, 5});
    const LatinSquare shuffled = apply_isotopy(LatinSquare::cyclic(5), swap_rows);
    CHECK(detect_structure(shuffled) == StructureInfo::general());
}

TEST_CASE("domination brackets for small orders are exact") {
    for (int n = 2; n <= 4; ++n) {
        const auto rep = gamma_bounds(n);
        CAPTURE(n);
        REQUIRE(rep.exact.has_value());
        CHECK(rep.exact->value == n - 1);
        CHECK(rep.lower.value == n - 1);
        CHECK(rep.upper.value == n - 1);
        CHECK(mentions(rep.exact->source, "small-order"));
    }
    const auto five = gamma_bounds(5);
    REQUIRE(five.exact.has_value());
    CHECK(five.exact->value == 3);
    CHECK(five.lower.value == 2);
    CHECK(five.upper.value == 3);
    CHECK_THROWS_AS(gamma_bounds(1), std::invalid_argument);
}

TEST_CASE("domination bracket at order 9 tightens with cyclic structure") {
    const auto plain = gamma_bounds(9);
    CHECK(plain.lower.value == 4);
    CHECK(plain.upper.value == 7);
    CHECK_FALSE(plain.exact.has_value());

    const auto cyc = gamma_bounds(9, StructureInfo::cyclic());
    CHECK(cyc.lower.value == 4);
    CHECK(cyc.upper.value == 6);
    CHECK(mentions(cyc.upper.source, "diagonal-band"));
}

TEST_CASE("k-tuple bracket for order 8, demand 1") {
    const auto rep = ktds_bounds(8, 1);
    CHECK(rep.lower.value == 5);
    CHECK(mentions(rep.lower.source, "(4n-2)/7"));
    CHECK(rep.upper.value == 7);
    CHECK_FALSE(rep.exact.has_value());
}

TEST_CASE("q-step knowledge closes the order-6 demand-1 bracket") {
    const auto rep = ktds_bounds(6, 1, StructureInfo::q_step(2, 3));
    CHECK(rep.lower.value == 4);
    CHECK(rep.upper.value == 4);
    REQUIRE(rep.exact.has_value());
    CHECK(rep.exact->value == 4);
    CHECK(mentions(rep.exact->source, "bounds meet"));
    CHECK(mentions(rep.upper.source, "q-step"));
}

TEST_CASE("q-step tightening with few blocks uses the other size") {
    const auto rep = ktds_bounds(12, 1, StructureInfo::q_step(4, 3));
    CHECK(rep.lower.value == 7);
    CHECK(rep.upper.value == 10);
    CHECK(mentions(rep.upper.source, "m <= q"));
}

TEST_CASE("known exact k-tuple values") {
    {
        const auto rep = ktds_bounds(5, 2);
        REQUIRE(rep.exact.has_value());
        CHECK(rep.exact->value == 5);
    }
    {
        const auto rep = ktds_bounds(4, 9);
        REQUIRE(rep.exact.has_value());
        CHECK(rep.exact->value == 16);
        CHECK(mentions(rep.exact->source, "full open neighborhood"));
    }
    {
        const auto rep = ktds_bounds(3, 1);
        REQUIRE(rep.exact.has_value());
        CHECK(rep.exact->value == 2);
    }
    {
        // Order 2 escapes the even-demand formula: the graph is K4 and
        // three vertices are needed, not a * n = 2.
        const auto rep = ktds_bounds(2, 2);
        REQUIRE(rep.exact.has_value());
        CHECK(rep.exact->value == 3);
    }
    {
        const auto rep = ktds_bounds(2, 3);
        REQUIRE(rep.exact.has_value());
        CHECK(rep.exact->value == 4);
    }
}

TEST_CASE("bound requests outside the feasible range are rejected") {
    CHECK_THROWS_AS(ktds_bounds(4, 10), InfeasibleError);
    CHECK_THROWS_AS(ktds_bounds(4, 0), std::invalid_argument);
    CHECK_THROWS_AS(ktds_bounds(1, 1), std::invalid_argument);
}

TEST_CASE("brackets are always ordered and documented") {
    for (int n = 2; n <= 10; ++n) {
        for (const auto& st : {StructureInfo::general(), StructureInfo::cyclic()}) {
            const auto grep = gamma_bounds(n, st);
            CHECK(grep.lower.value <= grep.upper.value);
            CHECK(!grep.sources.empty());
            if (grep.exact) {
                CHECK(grep.lower.value <= grep.exact->value);
                CHECK(grep.exact->value <= grep.upper.value);
            }
            for (int k = 1; k <= max_feasible_k(n); ++k) {
                const auto rep = ktds_bounds(n, k, st);
                CAPTURE(n);
                CAPTURE(k);
                CHECK(rep.lower.value <= rep.upper.value);
                CHECK(rep.lower.value >= k + 1);
                CHECK(!rep.sources.empty());
                if (rep.exact) {
                    CHECK(rep.lower.value <= rep.exact->value);
                    CHECK(rep.exact->value <= rep.upper.value);
                }
            }
        }
    }
}

TEST_CASE("solver results land inside the closed-form brackets") {
    for (int n = 2; n <= 5; ++n) {
        const LatinSquareGraph g(LatinSquare::cyclic(n));
        const auto st = StructureInfo::cyclic();
        {
            const auto rep = gamma_bounds(n, st);
            const auto cert = solve_exact(g, DominationMode::dominating());
            CHECK(rep.lower.value <= cert.size);
            CHECK(cert.size <= rep.upper.value);
            if (rep.exact) CHECK(cert.size == rep.exact->value);
            CHECK(consistency_check(rep, cert).ok);
        }
        for (int k = 1; k <= max_feasible_k(n); ++k) {
            const auto rep = ktds_bounds(n, k, st);
            const auto cert = solve_exact(g, DominationMode::ktuple_total(k));
            CAPTURE(n);
            CAPTURE(k);
            CHECK(rep.lower.value <= cert.size);
            CHECK(cert.size <= rep.upper.value);
            if (rep.exact) CHECK(cert.size == rep.exact->value);
            CHECK(consistency_check(rep, cert).ok);
        }
    }
    {
        const LatinSquareGraph g(LatinSquare::q_step(2, 2));
        const auto rep = gamma_bounds(4, detect_structure(g.square()));
        const auto cert = solve_exact(g, DominationMode::dominating());
        CHECK(cert.size == 3);
        CHECK(consistency_check(rep, cert).ok);
    }
}

TEST_CASE("consistency check flags impossible sizes") {
    const LatinSquare sq = LatinSquare::cyclic(5);
    const auto rep = gamma_bounds(5);

    VertexSet tiny(5);
    tiny.add(1, 1);
    const DominationCertificate fake{sq, DominationMode::dominating(), tiny, 1, false, "exact"};
    const auto res = consistency_check(rep, fake);
    CHECK_FALSE(res.ok);
    CHECK(mentions(res.message, "below the lower bound"));
}

TEST_CASE("consistency check holds optimal claims to the upper bound") {
    const LatinSquare sq = LatinSquare::cyclic(5);
    const auto rep = gamma_bounds(5);

    VertexSet four(5);
    for (int c = 1; c <= 4; ++c) four.add(1, c);

    const DominationCertificate claimed{sq, DominationMode::dominating(), four, 4, true, "exact"};
    const auto bad = consistency_check(rep, claimed);
    CHECK_FALSE(bad.ok);
    CHECK(mentions(bad.message, "above the upper bound"));
    CHECK(mentions(bad.message, "contradicts the established value"));

    // The same size as a mere upper bound is fine.
    const DominationCertificate modest{sq, DominationMode::dominating(), four, 4, false, "greedy"};
    CHECK(consistency_check(rep, modest).ok);
}

TEST_CASE("consistency check refuses mismatched instances") {
    const auto rep = gamma_bounds(5);
    const LatinSquare other = LatinSquare::cyclic(4);
    const DominationCertificate cert{other, DominationMode::dominating(), VertexSet(4), 0, false,
                                     "greedy"};
    CHECK_THROWS_AS(consistency_check(rep, cert), MismatchError);

    const LatinSquare right = LatinSquare::cyclic(5);
    const DominationCertificate wrong_mode{right, DominationMode::ktuple_total(1), VertexSet(5), 0,
                                           false, "greedy"};
    CHECK_THROWS_AS(consistency_check(rep, wrong_mode), MismatchError);
}
