#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "trackalg/fixtures.hpp"
#include "trackalg/pseudo.hpp"

using namespace trackalg;

namespace {

Budget budget(uint64_t cases = 60000, uint64_t seed = 21) {
    Budget b;
    b.max_cases = cases;
    b.seed = seed;
    return b;
}

Graph tc_graph() {
    Graph g;
    g.vertices = {"*"};
    g.edges = {{"x", 0, 0}};
    return g;
}

ConstructedPseudo tc_pseudo(const TwistedFixture& f, PseudoOptions opts = {}) {
    return build_pseudo_padic(*f.cat, *f.lin, tc_graph(), {Elem{0, 1}}, 2, budget(), opts);
}

} // namespace

TEST_CASE("strict finite pseudo-functor passes coherence") {
    DenormFixture f = fixture_denorm(m2_table());
    FinitePseudo p = FinitePseudo::strict(*f.cat, *f.cat, TrackFunctor::identity(*f.cat));
    Report r = check_coherence_finite(p, budget());
    CHECK(r.ok());
}

TEST_CASE("perturbing gammac at one entry fails pasting with a witness") {
    DenormFixture f = fixture_denorm(m2_table());
    FinitePseudo p = FinitePseudo::strict(*f.cat, *f.cat, TrackFunctor::identity(*f.cat));
    const TruncComplex1& h = f.cat->hom(0, 0);
    p.gammac = [&h](int, int, int, const Elem& x, const Elem& y) {
        // a single triple-incident bad value: Gamma(x-basis, x-basis) = t
        if (x == Elem{0, 1, 0} && y == Elem{0, 1, 0}) return Elem{0, 1};
        return h.c1.zero();
    };
    Report r = check_coherence_finite(p, budget());
    CHECK_FALSE(r.ok());
    const LawResult* law = r.find("pasting");
    REQUIRE(law != nullptr);
    CHECK_FALSE(law->pass);
    CHECK_FALSE(law->witness.is_null());
}

TEST_CASE("construction on the twisted fixture passes coherence at word bound 2") {
    TwistedFixture f = fixture_tc(budget());
    ConstructedPseudo p = tc_pseudo(f);
    Report r = check_coherence(p, 2, budget(400000));
    for (const auto& law : r.laws) {
        INFO(law.name, " ", law.witness.dump());
        CHECK(law.pass);
    }
    CHECK(r.find("pasting")->exhaustive);
}

TEST_CASE("some gammac value is nonzero on the twisted fixture") {
    TwistedFixture f = fixture_tc(budget());
    ConstructedPseudo p = tc_pseudo(f);
    // Gamma(x-edge, 2*identity) picks up the twist through Gamma(2)
    LinComb xw = word_comb(p.ring(), edge_word(p.graph(), 0));
    LinComb two = scale_comb(2, word_comb(p.ring(), id_word(0)));
    CHECK(p.gammac(xw, two) == Elem{1});
}

TEST_CASE("scalar lifts: shifting by p^2 changes nothing") {
    TwistedFixture f = fixture_tc(budget());
    ConstructedPseudo p = tc_pseudo(f);
    PseudoOptions shifted;
    shifted.scalar_lift_shift = 4;
    ConstructedPseudo q = tc_pseudo(f, shifted);
    UniquenessVerdict v = uniqueness_probe(p, q, 3, budget());
    CHECK(v.preconditions_ok);
    CHECK(v.equal);
}

TEST_CASE("term order does not matter") {
    TwistedFixture f = fixture_tc(budget());
    ConstructedPseudo p = tc_pseudo(f);
    PseudoOptions rev;
    rev.reverse_terms = true;
    ConstructedPseudo q = tc_pseudo(f, rev);
    UniquenessVerdict v = uniqueness_probe(p, q, 3, budget());
    CHECK(v.preconditions_ok);
    CHECK(v.equal);
}

TEST_CASE("a shift that is not a multiple of p^2 is detected") {
    TwistedFixture f = fixture_tc(budget());
    ConstructedPseudo p = tc_pseudo(f);
    PseudoOptions bad;
    bad.scalar_lift_shift = 1;
    ConstructedPseudo q = tc_pseudo(f, bad);
    UniquenessVerdict v = uniqueness_probe(p, q, 2, budget());
    CHECK_FALSE(v.equal);
}

TEST_CASE("Gamma(x, p^2 y) and Gamma(p x, y) are identities") {
    TwistedFixture f = fixture_tc(budget());
    ConstructedPseudo p = tc_pseudo(f);
    Word xw = edge_word(p.graph(), 0);
    Word yw = id_word(0);
    // the scalar step with d = p^2 = 4 evaluates through Gamma(4) = id
    CHECK(p.target().hom(0, 0).c1.is_zero(p.scalar_step(xw, 4, yw)));
    CHECK(p.target().hom(0, 0).c1.is_zero(p.scalar_step(xw, 4, edge_word(p.graph(), 0))));
    // Gamma(p x, y) = p Gamma(x, y) = 0
    LinComb px = scale_comb(2, word_comb(p.ring(), xw));
    BoundedMorphisms ys = bounded_morphisms(p.graph(), p.ring(), 0, 0, 2);
    for (uint64_t i = 0; i < ys.total(); ++i)
        CHECK(p.target().hom(0, 0).c1.is_zero(p.gammac(px, ys.decode(i))));
}

TEST_CASE("rewriting 5y - 2y versus 3y yields equal values") {
    TwistedFixture f = fixture_tc(budget());
    ConstructedPseudo p = tc_pseudo(f);
    const auto& T = p.target();
    const FinAbGroup& c1 = T.hom(0, 0).c1;
    const FinAbGroup& c0 = T.hom(0, 0).c0;
    Word xw = edge_word(p.graph(), 0);
    for (const Word& yw : bounded_morphisms(p.graph(), p.ring(), 0, 0, 2).words) {
        Elem sy = p.s_word(yw);
        Elem a = p.s_word(xw);
        // two-term evaluation of Gamma(x, 5y + (-2)y) per the expansion ledger
        Elem two_term = c1.add(
            c1.add(p.scalar_step(xw, 5, yw), p.scalar_step(xw, -2 + 4, yw)),
            iterated_gamma(T, p.linearity(), 0, 0, 0, a,
                           {c0.scale(5, sy), c0.scale(-2, sy)})
                .moore);
        Elem one_term = p.scalar_step(xw, 3, yw);
        CHECK(two_term == one_term);
    }
}

TEST_CASE("all-words input keeps gammac at zero") {
    TwistedFixture f = fixture_tc(budget());
    ConstructedPseudo p = tc_pseudo(f);
    auto words = bounded_morphisms(p.graph(), p.ring(), 0, 0, 3).words;
    for (const Word& w : words)
        for (const Word& v : words)
            CHECK(p.target().hom(0, 0).c1.is_zero(
                p.gammac(word_comb(p.ring(), w), word_comb(p.ring(), v))));
}

TEST_CASE("padic build refuses instances that are not p-torsion") {
    QuadraticPairCategory q6(6, 1);
    QuadraticLinearity lin6(q6);
    Graph g;
    g.vertices = {"rk0", "rk1"};
    g.edges = {{"E", 1, 1}};
    Mat one = {{1}};
    Elem lift = q6.pack0(1, 1, one, std::vector<Elem>(5, Elem{0}));
    CHECK_THROWS_AS(build_pseudo_padic(q6, lin6, g, {lift}, 2, budget()), RefusalError);
}

TEST_CASE("padic build refuses a non-generating graph") {
    TwistedFixture f = fixture_tc(budget());
    Graph g;
    g.vertices = {"*"};
    // no edges at all: only the unit class is reachable
    CHECK_THROWS_AS(build_pseudo_padic(*f.cat, *f.lin, g, {}, 2, budget()), RefusalError);
}

TEST_CASE("integral build works on the non-2-torsion quadratic variant") {
    QuadraticPairCategory q6(6, 1);
    QuadraticLinearity lin6(q6);
    Graph g;
    g.vertices = {"rk0", "rk1"};
    g.edges = {{"E", 1, 1}};
    Mat one = {{1}};
    Elem lift = q6.pack0(1, 1, one, std::vector<Elem>(5, Elem{0}));
    Budget b = budget(4000, 11);
    ConstructedPseudo p = build_pseudo_integral(q6, lin6, g, {lift}, b);
    Report r = check_coherence(p, 2, b, 2);
    for (const auto& law : r.laws) {
        INFO(law.name, " ", law.witness.dump());
        CHECK(law.pass);
    }
    // Gamma(x,-y) is forced by the square through Gamma(-1)
    Word xw = edge_word(p.graph(), 0);
    for (const Word& yw : {edge_word(p.graph(), 0)}) {
        Elem got = p.gammac(word_comb(p.ring(), xw),
                            scale_comb(-1, word_comb(p.ring(), yw)));
        Track gm1 = gamma_int(q6, lin6, 1, 1, p.s_word(xw), -1);
        Elem forced = q6.rwhisk(1, 1, 1, gm1.moore, p.s_word(yw));
        CHECK(got == q6.hom(1, 1).c1.reduce(forced));
    }
}
