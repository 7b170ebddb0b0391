#include <doctest.h>

#include "helpers.hpp"

using namespace foldbox;
using namespace foldbox::testutil;

TEST_CASE("strict double categories embed as pseudo ones with identity associator") {
    const auto& cat = catalog::get();
    for (const DoubleCategory* d : {&cat.box_bc2, &cat.qtg2.d, &cat.htg2}) {
        PseudoDoubleCategory p = strict_as_pseudo(*d);
        CHECK(validate_pseudo_double(p).valid());
        for (const auto& [key, val] : p.associator) {
            const SquareRec* s = p.d.square(val);
            CHECK(s->top == s->bottom);
            CHECK(p.d.v_id_sq.at(s->top) == val);
        }
    }
}

TEST_CASE("transport twist on the quintets of the C2->C4 two-group") {
    const auto& cat = catalog::get();
    TwistSearch tw = find_transport_twist(cat.qtg1.d);
    REQUIRE(tw.found);
    CHECK(tw.nontrivial_associators >= 1);
    CHECK(validate_pseudo_double(tw.twisted).valid());

    // identity relabel reproduces the strict embedding exactly
    std::map<Id, Id> identity;
    for (const Morphism& m : cat.qtg1.d.hmor) identity[m.id] = m.id;
    CHECK(transport_twist(cat.qtg1.d, identity, {}) == strict_as_pseudo(cat.qtg1.d));
}

TEST_CASE("twist preconditions: witnesses and units") {
    const auto& cat = catalog::get();

    // box BC3: a nontrivial relabeling exists (swap g1, g2) but no invertible
    // witness square relates parallel distinct morphisms in a box category
    std::map<Id, Id> relabel{{"e", "e"}, {"g1", "g2"}, {"g2", "g1"}};
    CHECK_THROWS_WITH_AS(transport_twist(cat.box_bc3, relabel, {}),
                         doctest::Contains("NotInvertibleWitness"), OpError);
    TwistSearch none = find_transport_twist(cat.box_bc3);
    CHECK_FALSE(none.found);
    CHECK_FALSE(none.reason.empty());

    // moving an identity morphism is refused
    std::map<Id, Id> bad{{"e", "g1"}, {"g1", "e"}, {"g2", "g2"}};
    CHECK_THROWS_WITH_AS(transport_twist(cat.box_bc3, bad, {}), doctest::Contains("UnitNotFixed"),
                         OpError);
}

TEST_CASE("corrupting an associator entry is caught") {
    const auto& cat = catalog::get();

    // same-boundary corruption: in the strict embedding of the C3-kernel
    // quintets every endo boundary carries three cells
    {
        PseudoDoubleCategory broken = strict_as_pseudo(cat.qtg2.d);
        bool mutated = false;
        for (auto& [key, val] : broken.associator) {
            const SquareRec* s = broken.d.square(val);
            for (const SquareRec& cand : broken.d.squares) {
                if (cand.top == s->top && cand.bottom == s->bottom && cand.left == s->left &&
                    cand.right == s->right && cand.id != val) {
                    val = cand.id;
                    mutated = true;
                    break;
                }
            }
            if (mutated) break;
        }
        REQUIRE(mutated);
        ValidationReport r = validate_pseudo_double(broken);
        CHECK_FALSE(r.valid());
        CHECK((has_tag(r, "PENTAGON") || has_tag(r, "ALPHA_NATURALITY") || has_tag(r, "TRIANGLE")));
    }

    // boundary-breaking corruption on a genuine twist (the C2->C4 quintets
    // have singleton hom classes, so any other value moves the boundary)
    {
        TwistSearch tw = find_transport_twist(cat.qtg1.d);
        REQUIRE(tw.found);
        PseudoDoubleCategory broken = tw.twisted;
        for (auto& [key, val] : broken.associator) {
            const SquareRec* s = broken.d.square(val);
            if (s->top == s->bottom) continue;
            val = broken.d.v_id_sq.at(s->top);
            break;
        }
        ValidationReport r = validate_pseudo_double(broken);
        CHECK_FALSE(r.valid());
        CHECK((has_tag(r, "ALPHA_BOUNDARY") || has_tag(r, "PENTAGON") ||
               has_tag(r, "ALPHA_NATURALITY")));
    }
}

TEST_CASE("pseudo folding agrees with the strict folding verdict when alpha is trivial") {
    const auto& cat = catalog::get();
    PseudoDoubleCategory p = strict_as_pseudo(cat.qtg2.d);

    CHECK(validate_pseudo_folding(p, cat.qtg2_fold).valid() ==
          validate_folding(cat.qtg2.d, cat.qtg2_fold).valid());

    Folding broken = cat.qtg2_fold;
    Id ih_t = cat.qtg2.d.h_id_sq.at("t");
    broken.lambda[ih_t] = "2c(h1|t)";
    CHECK_FALSE(validate_folding(cat.qtg2.d, broken).valid());
    CHECK_FALSE(validate_pseudo_folding(p, broken).valid());

    // the catalog folding does not survive the twist unchanged
    TwistSearch tw = find_transport_twist(cat.qtg1.d);
    REQUIRE(tw.found);
    CHECK_FALSE(validate_pseudo_folding(tw.twisted, cat.qtg1_fold).valid());
}

TEST_CASE("pseudo I-category validator") {
    const auto& cat = catalog::get();
    XModUnderGroup under{cat.xm3, catalog::c2(), {{"e", "e"}, {"t", "t"}}};
    ICatAlgebra x = algebra_from_xmod_under(under);
    PseudoICatAlgebra p = strict_as_pseudo_icat(x);
    CHECK(validate_pseudo_icat(p).valid());

    PseudoICatAlgebra broken = p;
    // overwrite one associator entry with a non-identity endomorphism
    for (auto& [key, val] : broken.associator) {
        const IdPair* home = broken.x.morphism_home(val);
        const FinCategory& hom = broken.x.hom.at(*home);
        const Morphism* m = hom.morphism(val);
        for (const Morphism& cand : hom.morphisms) {
            if (cand.src == m->src && cand.tgt == m->tgt && cand.id != val) {
                val = cand.id;
                goto mutated;
            }
        }
    }
mutated:
    ValidationReport r = validate_pseudo_icat(broken);
    CHECK_FALSE(r.valid());
    CHECK((has_tag(r, "PENTAGON") || has_tag(r, "ALPHA_NATURALITY") || has_tag(r, "TRIANGLE") ||
           has_tag(r, "ALPHA_MODIFICATION")));
}

TEST_CASE("the Y-condition on associators over holonomy composites") {
    const auto& cat = catalog::get();
    // on a strict embedding every alpha entry is the identity, so the
    // condition holds for the quintet folding
    PseudoDoubleCategory p = strict_as_pseudo(cat.qtg1.d);
    ValidationReport r = validate_pseudo_folding(p, cat.qtg1_fold);
    CHECK(r.valid());
    CHECK_FALSE(has_tag(r, "HOLONOMY_ALPHA_ID"));
}
