#include <doctest.h>

#include "helpers.hpp"

using namespace foldbox;
using namespace foldbox::testutil;

namespace {

FinCategory terminal_category() {
    FinCategory c;
    c.objects = {"*"};
    c.morphisms = {{"1", "*", "*"}};
    c.identity = {{"*", "1"}};
    c.comp = {{{"1", "1"}, "1"}};
    return c;
}

FinGroupoid bc2_with_tt(const Id& tt) {
    FinGroupoid g = group_to_one_object_groupoid(catalog::c2());
    g.cat.comp[{"t", "t"}] = tt;
    return g;
}

}  // namespace

TEST_CASE("terminal category is valid") {
    CHECK(validate_category(terminal_category()).valid());
}

TEST_CASE("empty category is valid") {
    FinCategory empty;
    CHECK(validate_category(empty).valid());
}

TEST_CASE("BC2 is a valid groupoid") {
    CHECK(validate_groupoid(group_to_one_object_groupoid(catalog::c2())).valid());
}

TEST_CASE("BC2 with t.t=t: category axioms hold, groupoid axioms fail") {
    FinGroupoid broken = bc2_with_tt("t");

    // independent oracle: exhaustively check all 8 triples and the unit laws
    // of the mutated table. The 2-element table with tt=t is the semilattice
    // monoid, so plain category validation must come back clean.
    auto mul = [&](const Id& a, const Id& b) { return broken.cat.comp.at({a, b}); };
    bool assoc = true, units = true;
    for (const Id a : {"e", "t"})
        for (const Id b : {"e", "t"})
            for (const Id c : {"e", "t"})
                if (mul(a, mul(b, c)) != mul(mul(a, b), c)) assoc = false;
    for (const Id a : {"e", "t"})
        if (mul("e", a) != a || mul(a, "e") != a) units = false;
    CHECK(assoc);
    CHECK(units);
    CHECK(validate_category(broken.cat).valid());

    // as a groupoid the stored inverse of t no longer works
    ValidationReport r = validate_groupoid(broken);
    CHECK_FALSE(r.valid());
    CHECK((has_tag(r, "INV_LEFT") || has_tag(r, "INV_RIGHT")));
}

TEST_CASE("group_to_one_object_groupoid") {
    FinGroup trivial;
    trivial.elements = {"e"};
    trivial.unit = "e";
    trivial.mul = {{{"e", "e"}, "e"}};
    trivial.inv = {{"e", "e"}};
    FinGroupoid t = group_to_one_object_groupoid(trivial);
    CHECK(t.cat.objects.size() == 1);
    CHECK(t.cat.morphisms.size() == 1);
    CHECK(validate_groupoid(t).valid());

    FinGroupoid bc2 = group_to_one_object_groupoid(catalog::c2());
    CHECK(bc2.cat.morphisms.size() == 2);
    CHECK(validate_groupoid(bc2).valid());

    FinGroupoid bs3 = group_to_one_object_groupoid(catalog::s3());
    CHECK(bs3.cat.morphisms.size() == 6);
    CHECK(bs3.cat.comp.size() == 36);  // |G|^2 composable pairs
    CHECK(validate_groupoid(bs3).valid());

    // reading the elements back is the identity on the group
    CHECK(one_object_groupoid_to_group(bs3) == catalog::s3());
    CHECK(group_to_one_object_groupoid(catalog::c2(), "*") == bc2);
}

TEST_CASE("iso_search on groups") {
    FinGroup c2 = catalog::c2();
    IsoResult self = iso_search_group(c2, c2, 100000);
    REQUIRE(self.status == IsoStatus::Witness);
    // identity witness when searching a structure against itself
    for (const auto& [a, b] : self.witness.forward.at("elements")) CHECK(a == b);

    CHECK(iso_search_group(c2, catalog::c3(), 100000).status == IsoStatus::NoIso);

    // S3 vs C6: same size; the element-order multisets differ
    FinGroup s3 = catalog::s3(), c6 = catalog::c6();
    std::multiset<int> orders_s3, orders_c6;
    for (const Id& x : s3.elements) {
        int k = 1;
        Id cur = x;
        while (cur != s3.unit) cur = s3.times(cur, x), ++k;
        orders_s3.insert(k);
    }
    for (const Id& x : c6.elements) {
        int k = 1;
        Id cur = x;
        while (cur != c6.unit) cur = c6.times(cur, x), ++k;
        orders_c6.insert(k);
    }
    CHECK(orders_s3 != orders_c6);
    CHECK(iso_search_group(s3, c6, 1000000).status == IsoStatus::NoIso);
}

TEST_CASE("iso_search on categories and 2-categories") {
    const auto& cat = catalog::get();
    IsoResult self = iso_search_category(cat.bs3.cat, cat.bs3.cat, 1000000);
    REQUIRE(self.status == IsoStatus::Witness);
    for (const auto& [a, b] : self.witness.forward.at("morphisms")) CHECK(a == b);

    CHECK(iso_search_category(cat.bc2.cat, cat.bc3.cat, 1000000).status == IsoStatus::NoIso);

    IsoResult tself = iso_search_two_category(cat.tg2.tg.cat, cat.tg2.tg.cat, 2000000);
    CHECK(tself.status == IsoStatus::Witness);
}

TEST_CASE("every single-entry corruption of a groupoid comp table is caught") {
    for (const FinGroup& g : {catalog::c2(), catalog::c4(), catalog::s3()}) {
        FinGroupoid base = group_to_one_object_groupoid(g);
        for (const auto& [key, val] : base.cat.comp) {
            for (const Id& other : g.elements) {
                if (other == val) continue;
                FinGroupoid broken = base;
                broken.cat.comp[key] = other;
                ValidationReport r = validate_groupoid(broken);
                CHECK_MESSAGE(!r.valid(), "uncaught mutation ", key.first, ",", key.second, "->", other);
            }
        }
    }
}

TEST_CASE("functor and natural transformation validators") {
    const auto& cat = catalog::get();
    FunctorData id;
    for (const Id& o : cat.bs3.cat.objects) id.obj_map[o] = o;
    for (const Morphism& m : cat.bs3.cat.morphisms) id.mor_map[m.id] = m.id;
    CHECK(validate_functor(cat.bs3.cat, cat.bs3.cat, id, {}).valid());

    FunctorData broken = id;
    broken.mor_map["r"] = "r2";
    ValidationReport r = validate_functor(cat.bs3.cat, cat.bs3.cat, broken, {});
    CHECK_FALSE(r.valid());
    CHECK(has_tag(r, "FUNCTOR_COMPOSITION"));

    // conjugation by r is a functor; a transformation id => conj_r needs a
    // component that actually conjugates
    FunctorData conj;
    FinGroup s3 = catalog::s3();
    conj.obj_map["*"] = "*";
    for (const Morphism& m : cat.bs3.cat.morphisms)
        conj.mor_map[m.id] = s3.times(s3.times("r", m.id), s3.inverse("r"));
    CHECK(validate_functor(cat.bs3.cat, cat.bs3.cat, conj, {}).valid());

    NatTransformData sigma;
    sigma.components["*"] = "r";
    CHECK(validate_nat_transform(cat.bs3.cat, cat.bs3.cat, id, conj, sigma, {}).valid());
    sigma.components["*"] = "s";
    CHECK_FALSE(validate_nat_transform(cat.bs3.cat, cat.bs3.cat, id, conj, sigma, {}).valid());
}

TEST_CASE("two-category validator catches table corruption") {
    const auto& cat = catalog::get();
    CHECK(validate_two_category(cat.tg2.tg.cat).valid());

    TwoCategory broken = cat.tg2.tg.cat;
    auto it = broken.hcomp_two.begin();
    for (const TwoCellRec& c : broken.two_cells) {
        if (c.id != it->second) {
            it->second = c.id;
            break;
        }
    }
    CHECK_FALSE(validate_two_category(broken).valid());
}

TEST_CASE("structural errors are distinct from axiom violations") {
    FinCategory c = terminal_category();
    c.comp.erase({"1", "1"});
    ValidationReport r = validate_category(c);
    CHECK_FALSE(r.well_formed());
    CHECK(has_tag(r, "NON_TOTAL_TABLE"));

    FinCategory dangling = terminal_category();
    dangling.morphisms.push_back({"f", "*", "ghost"});
    r = validate_category(dangling);
    CHECK(has_tag(r, "DANGLING_REFERENCE"));
}

TEST_CASE("size caps are enforced and overridable") {
    FinGroup big = catalog::cyclic(20);
    Caps tight;
    tight.max_morphisms = 10;
    ValidationReport r = validate_group(big, tight);
    CHECK(has_tag(r, "CAP_EXCEEDED"));
    CHECK(validate_group(big, Caps{}).valid());
}
