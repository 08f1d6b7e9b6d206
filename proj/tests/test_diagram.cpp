#include "doctest.h"

#include "khk/diagram.hpp"
#include "khk/errors.hpp"
#include "support.hpp"

using namespace khk;

TEST_CASE("parse U gives the crossingless unknot") {
    LinkDiagram d = parse_pd("U");
    CHECK(d.crossing_count() == 0);
    CHECK(d.component_count() == 1);
    CHECK(crossing_signs(d) == std::pair(0, 0));
}

TEST_CASE("parse Hopf code") {
    LinkDiagram d = parse_pd("X(1,3,2,4) X(3,1,4,2)");
    CHECK(d.crossing_count() == 2);
    CHECK(d.component_count() == 2);
    // this diagram is the negative Hopf link under the canonical orientation
    CHECK(crossing_signs(d) == std::pair(0, 2));
}

TEST_CASE("comments and multi-line records") {
    LinkDiagram d = parse_pd("# a Hopf diagram\nX(1,3,2,4)\nX(3,1,4,2)\n");
    CHECK(d.crossing_count() == 2);
}

TEST_CASE("label multiplicity is validated") {
    CHECK_THROWS_AS(parse_pd("X(1,2,2,3)"), ValidationError);
    CHECK_THROWS_WITH_AS(parse_pd("X(1,1,5,6) X(2,2,3,3)"), doctest::Contains("label 5"),
                         ValidationError);
}

TEST_CASE("syntax errors carry positions") {
    CHECK_THROWS_WITH_AS(parse_pd("X(1,3,2,4) Y(1)"), doctest::Contains("col 12"), ParseError);
    CHECK_THROWS_AS(parse_pd("X(1,2,3)"), ParseError);
    CHECK_THROWS_AS(parse_pd("X(1,2,3,0)"), ParseError);
}

TEST_CASE("mirror swaps crossing signs and is an involution") {
    LinkDiagram hopf = parse_pd("X(1,3,2,4) X(3,1,4,2)");
    LinkDiagram m = mirror(hopf);
    CHECK(crossing_signs(m) == std::pair(2, 0));
    CHECK(mirror(m) == hopf);

    LinkDiagram trefoil = testsup::braid_closure(2, {1, 1, 1});
    CHECK(crossing_signs(trefoil) == std::pair(3, 0));
    CHECK(crossing_signs(mirror(trefoil)) == std::pair(0, 3));
    CHECK(mirror(mirror(trefoil)) == trefoil);
}

TEST_CASE("disjoint union adds counts") {
    LinkDiagram u = parse_pd("U");
    LinkDiagram uu = disjoint_union(u, u);
    CHECK(uu.crossing_count() == 0);
    CHECK(uu.component_count() == 2);

    LinkDiagram hopf = parse_pd("X(1,3,2,4) X(3,1,4,2)");
    LinkDiagram hu = disjoint_union(hopf, u);
    CHECK(hu.crossing_count() == 2);
    CHECK(hu.component_count() == 3);

    LinkDiagram hh = disjoint_union(hopf, mirror(hopf));
    CHECK(hh.crossing_count() == 4);
    CHECK(hh.component_count() == 4);
    CHECK(hh.n_plus() == hopf.n_plus() + mirror(hopf).n_plus());
    CHECK(hh.n_minus() == hopf.n_minus() + mirror(hopf).n_minus());
}

TEST_CASE("r1 kink on the crossingless unknot") {
    LinkDiagram u = parse_pd("U");
    ArcLabel arc = u.free_loops().at(0);

    LinkDiagram plus = add_r1_kink(u, arc, +1);
    CHECK(plus.crossing_count() == 1);
    CHECK(plus.component_count() == 1);
    CHECK(crossing_signs(plus) == std::pair(1, 0));

    LinkDiagram minus = add_r1_kink(u, arc, -1);
    CHECK(minus.crossing_count() == 1);
    CHECK(crossing_signs(minus) == std::pair(0, 1));
}

TEST_CASE("r1 kink splits a crossing arc") {
    LinkDiagram trefoil = testsup::braid_closure(2, {1, 1, 1});
    for (ArcLabel arc : trefoil.arcs()) {
        for (int h : {+1, -1}) {
            LinkDiagram k = add_r1_kink(trefoil, arc, h);
            CHECK(k.crossing_count() == trefoil.crossing_count() + 1);
            CHECK(k.component_count() == trefoil.component_count());
            auto [np, nm] = crossing_signs(k);
            CHECK(np == trefoil.n_plus() + (h > 0 ? 1 : 0));
            CHECK(nm == trefoil.n_minus() + (h > 0 ? 0 : 1));
        }
    }
    CHECK_THROWS_AS(add_r1_kink(trefoil, 999, +1), ValidationError);
}

TEST_CASE("r2 fingers insert a cancelling pair") {
    LinkDiagram uu = parse_pd("U U");
    auto loops = uu.free_loops();
    LinkDiagram r2 = add_r2_fingers(uu, loops[0], loops[1]);
    CHECK(r2.crossing_count() == 2);
    CHECK(r2.component_count() == 2);
    CHECK(r2.n_plus() == 1);
    CHECK(r2.n_minus() == 1);
    CHECK(is_planar(r2));

    LinkDiagram trefoil = testsup::braid_closure(2, {1, 1, 1});
    auto arcs = trefoil.arcs();
    int applied = 0;
    for (ArcLabel a1 : arcs)
        for (ArcLabel a2 : arcs) {
            if (a1 == a2) continue;
            LinkDiagram t2;
            try {
                t2 = add_r2_fingers(trefoil, a1, a2);
            } catch (const ValidationError&) {
                continue; // arcs that cobound no region are rejected
            }
            ++applied;
            CHECK(t2.crossing_count() == 5);
            CHECK(t2.component_count() == 1);
            CHECK(t2.n_plus() == 4);
            CHECK(t2.n_minus() == 1);
            CHECK(is_planar(t2));
        }
    CHECK(applied == 18); // ordered cofacial pairs of the standard trefoil

    CHECK_THROWS_AS(add_r2_fingers(trefoil, arcs[0], arcs[0]), ValidationError);
    CHECK_THROWS_AS(add_r2_fingers(trefoil, 999, arcs[0]), ValidationError);
}

TEST_CASE("r2 rejects arcs that share no region") {
    // in the Hopf diagram the two arcs of one circle are separated by the
    // other circle, so no two-crossing finger connects them
    LinkDiagram hopf = parse_pd("X(1,3,2,4) X(3,1,4,2)");
    CHECK_THROWS_AS(add_r2_fingers(hopf, 1, 2), ValidationError);
    CHECK_THROWS_AS(add_r2_fingers(hopf, 3, 4), ValidationError);
    CHECK_NOTHROW(add_r2_fingers(hopf, 1, 4));
    CHECK_NOTHROW(add_r2_fingers(hopf, 2, 3));
}

TEST_CASE("planarity of codes") {
    CHECK(is_planar(parse_pd("U")));
    CHECK(is_planar(parse_pd("X(1,1,2,2)")));
    CHECK(is_planar(parse_pd("X(1,3,2,4) X(3,1,4,2)")));
    CHECK(is_planar(testsup::braid_closure(3, {1, -2, 1, -2})));
    // doubled tuple: a virtual code (two circles crossing twice with the
    // same local chirality cannot close up in the plane)
    CHECK_FALSE(is_planar(parse_pd("X(1,3,2,4) X(1,3,2,4)")));
}

TEST_CASE("arc closure: components partition the arcs") {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 30; ++trial) {
        LinkDiagram d = testsup::random_diagram(rng, 9);
        auto comps = d.components();
        size_t total = 0;
        for (auto& c : comps) total += c.size();
        CHECK(total == d.arcs().size() + d.free_loops().size());
        CHECK(static_cast<int>(comps.size()) == d.component_count());
        CHECK(d.n_plus() + d.n_minus() == d.crossing_count());
    }
}

TEST_CASE("sign involution under mirror for random diagrams") {
    std::mt19937 rng(11);
    for (int trial = 0; trial < 30; ++trial) {
        LinkDiagram d = testsup::random_diagram(rng, 9);
        auto [p, m] = crossing_signs(d);
        CHECK(crossing_signs(mirror(d)) == std::pair(m, p));
    }
}

TEST_CASE("moves always produce valid diagrams") {
    std::mt19937 rng(13);
    for (int trial = 0; trial < 20; ++trial) {
        LinkDiagram d = testsup::random_diagram(rng, 7);
        auto arcs = d.arcs();
        if (arcs.size() < 2) continue;
        LinkDiagram k = add_r1_kink(d, arcs[trial % arcs.size()], trial % 2 ? 1 : -1);
        CHECK(k.n_plus() + k.n_minus() == k.crossing_count()); // from_oriented re-validated
        CHECK(is_planar(k));
        int applied = 0;
        for (ArcLabel a1 : arcs) {
            for (ArcLabel a2 : arcs) {
                if (a1 == a2) continue;
                try {
                    LinkDiagram f = add_r2_fingers(d, a1, a2);
                    CHECK(f.n_plus() + f.n_minus() == f.crossing_count());
                    CHECK(f.component_count() == d.component_count());
                    CHECK(is_planar(f));
                    ++applied;
                } catch (const ValidationError&) {
                }
                if (applied) break;
            }
            if (applied) break;
        }
        CHECK(applied == 1); // every diagram admits some finger move
    }
}

TEST_CASE("pd_code round trip") {
    LinkDiagram hopf = parse_pd("X(1,3,2,4) X(3,1,4,2)");
    CHECK(parse_pd(hopf.pd_code()).component_count() == 2);
    LinkDiagram u = parse_pd("U");
    CHECK(u.pd_code() == "U");
}
