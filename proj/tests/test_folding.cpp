#include <doctest.h>

#include "helpers.hpp"

using namespace foldbox;
using namespace foldbox::testutil;

TEST_CASE("identity folding on quintets is valid") {
    const auto& cat = catalog::get();
    CHECK(validate_folding(cat.qtg1.d, cat.qtg1_fold).valid());
    CHECK(validate_folding(cat.qtg2.d, cat.qtg2_fold).valid());
}

TEST_CASE("the folding on a box category is unique") {
    const auto& cat = catalog::get();
    CHECK(validate_folding(cat.box_bc2, cat.box_bc2_fold).valid());
    // in a box category every boundary class is a singleton, so the lambda
    // table is forced entry by entry: exhaustive search over candidate tables
    // reduces to checking each folded boundary has exactly one filler
    std::map<std::vector<Id>, int> by_boundary;
    for (const SquareRec& s : cat.box_bc2.squares) by_boundary[{s.top, s.bottom, s.left, s.right}]++;
    for (const auto& [bd, n] : by_boundary) CHECK(n == 1);
    // and the holonomy is forced too: bar(t) must square to e and fold
    // boundaries must exist, leaving bar = id as the only valid choice
    Folding wrong = cat.box_bc2_fold;
    wrong.holonomy.bar["t"] = "e";
    CHECK_FALSE(validate_folding(cat.box_bc2, wrong).valid());
}

TEST_CASE("corrupting folding axiom (iv) is reported as FOLD_AX_IV") {
    const auto& cat = catalog::get();
    Folding broken = cat.qtg2_fold;
    // reassign lambda(i^h_t) to a different cell with the same boundary
    Id ih_t = cat.qtg2.d.h_id_sq.at("t");
    REQUIRE(broken.lambda.at(ih_t) == "2c(e|t)");
    broken.lambda[ih_t] = "2c(h1|t)";
    ValidationReport r = validate_folding(cat.qtg2.d, broken);
    CHECK_FALSE(r.valid());
    CHECK(has_tag(r, "FOLD_AX_IV"));
}

TEST_CASE("folding_from_connection on quintets gives the identity folding") {
    const auto& cat = catalog::get();
    ConnectionPair cp = connection_from_folding(cat.qtg1.d, cat.qtg1_fold);
    CHECK(validate_connection_pair(cat.qtg1.d, cp).valid());
    Folding rebuilt = folding_from_connection(cat.qtg1.d, cp);
    CHECK(rebuilt == cat.qtg1_fold);

    // oracle: [Gamma'(j) alpha Gamma(k)] equals the identity fold of alpha
    for (const SquareRec& s : cat.qtg1.d.squares) {
        Id mid = sq_beside(cat.qtg1.d, cp.gamma_prime.at(s.left), s.id);
        Id folded = sq_beside(cat.qtg1.d, mid, cp.gamma.at(s.right));
        CHECK(folded == cat.qtg1.cell_of.at(s.id));
    }

    // lambda of a horizontal identity square is the vertical identity on jbar
    for (const Morphism& j : cat.qtg1.d.vmor)
        CHECK(rebuilt.lambda.at(cat.qtg1.d.h_id_sq.at(j.id)) ==
              cat.qtg1.d.v_id_sq.at(rebuilt.holonomy.bar.at(j.id)));
}

TEST_CASE("connection pair identities and round trips") {
    const auto& cat = catalog::get();
    for (const auto& e : cat.folded()) {
        CAPTURE(e.name);
        ConnectionPair cp = connection_from_folding(e.d, e.fold);
        // Gamma(1^v_A) = i_A
        for (const auto& [a, j] : e.d.v_id_mor) {
            CHECK(cp.gamma.at(j) == e.d.h_id_sq.at(j));
            CHECK(cp.gamma_prime.at(j) == e.d.h_id_sq.at(j));
        }
        CHECK(folding_from_connection(e.d, cp) == e.fold);
        CHECK(connection_from_folding(e.d, folding_from_connection(e.d, cp)) == cp);
    }
}

TEST_CASE("connection_from_folding rejects non-bijective lambda tables") {
    const auto& cat = catalog::get();
    Folding broken = cat.qtg2_fold;
    // map two squares of one boundary class to the same image
    const DoubleCategory& d = cat.qtg2.d;
    std::map<std::vector<Id>, std::vector<Id>> classes;
    for (const SquareRec& s : d.squares) classes[{s.top, s.bottom, s.left, s.right}].push_back(s.id);
    // collapse lambda on the Gamma boundary class of t so the preimage of
    // i^v_{tbar} there is lost
    Id tbar = broken.holonomy.bar.at("t");
    std::vector<Id> gamma_class = classes.at({tbar, d.h_id_mor.at("*"), "t", d.v_id_mor.at("*")});
    REQUIRE(gamma_class.size() >= 2);
    Id hit;
    for (const Id& s : gamma_class)
        if (broken.lambda.at(s) == d.v_id_sq.at(tbar)) hit = s;
    REQUIRE(!hit.empty());
    for (const Id& s : gamma_class)
        if (s != hit) broken.lambda[hit] = broken.lambda.at(s);
    CHECK_THROWS_WITH_AS(connection_from_folding(d, broken), doctest::Contains("MissingPreimage"),
                         OpError);
}

TEST_CASE("folding_iso: self pair and conjugated twin") {
    const auto& cat = catalog::get();
    const DoubleCategory& d = cat.qtg2.d;

    FoldingIso self = folding_iso(d, cat.qtg2_fold, cat.qtg2_fold);
    CHECK(validate_folding_morphism(d, cat.qtg2_fold, cat.qtg2_fold, self.fwd).valid());
    // theta(1^v) = i_* and both stacks are identities
    for (const auto& [a, j] : d.v_id_mor) CHECK(self.fwd.theta.at(j) == d.h_id_sq.at(j));
    for (const Morphism& j : d.vmor) {
        Id jbar = cat.qtg2_fold.holonomy.bar.at(j.id);
        CHECK(sq_above(d, self.fwd.theta.at(j.id), self.bwd.theta.at(j.id)) == d.v_id_sq.at(jbar));
        CHECK(sq_above(d, self.bwd.theta.at(j.id), self.fwd.theta.at(j.id)) == d.v_id_sq.at(jbar));
    }

    std::map<Id, Id> theta{{"e", d.h_id_sq.at("e")}, {"t", "2c(h1|t)"}};
    Folding twin = conjugate_folding(d, cat.qtg2_fold, theta);
    REQUIRE(validate_folding(d, twin).valid());
    REQUIRE(twin != cat.qtg2_fold);
    FoldingIso iso = folding_iso(d, cat.qtg2_fold, twin);
    CHECK(validate_folding_morphism(d, cat.qtg2_fold, twin, iso.fwd).valid());
    for (const Morphism& j : d.vmor) {
        Id b1 = cat.qtg2_fold.holonomy.bar.at(j.id);
        Id b2 = twin.holonomy.bar.at(j.id);
        CHECK(sq_above(d, iso.fwd.theta.at(j.id), iso.bwd.theta.at(j.id)) == d.v_id_sq.at(b1));
        CHECK(sq_above(d, iso.bwd.theta.at(j.id), iso.fwd.theta.at(j.id)) == d.v_id_sq.at(b2));
    }
}

TEST_CASE("thin structures on box categories") {
    const auto& cat = catalog::get();
    const DoubleCategory& d = cat.box_bc2;
    ConnectionPair cp = connection_from_folding(d, cat.box_bc2_fold);
    ThinStructure th = connection_to_thin(d, cp);
    CHECK(validate_thin_structure(d, th).valid());
    // every square of box BC2 is thin
    CHECK(th.theta.size() == d.squares.size());
    // the filler of the identity boundary is i_A
    CHECK(th.theta.at({"e", "e", "e", "e"}) == d.h_id_sq.at("e"));
    // round trip
    CHECK(thin_to_connection(d, th) == cp);

    // a corrupted entry breaks functoriality or boundary
    ThinStructure broken = th;
    for (auto& [bd, val] : broken.theta) {
        if (bd != std::vector<Id>{"e", "e", "e", "e"}) {
            val = d.h_id_sq.at("e");
            break;
        }
    }
    CHECK_FALSE(validate_thin_structure(d, broken).valid());

    // errors: non-edge-symmetric bases and nontrivial holonomies are refused
    CHECK_THROWS_WITH_AS(connection_to_thin(cat.htg2, connection_from_folding(cat.htg2, cat.htg2_fold)),
                         doctest::Contains("NotEdgeSymmetric"), OpError);
    ConnectionPair twisted = cp;
    twisted.holonomy.bar["t"] = "e";
    CHECK_THROWS_WITH_AS(connection_to_thin(d, twisted), doctest::Contains("NontrivialHolonomy"), OpError);
}

TEST_CASE("mixed composition") {
    const auto& cat = catalog::get();
    const DoubleCategory& d = cat.box_bs3;
    Holonomy h = cat.box_bs3_fold.holonomy;
    using K = MixedTerm::Kind;

    // 1^h_C ∘ j recovers bar(j); f ∘ 1^v_A = f
    for (const Morphism& j : d.vmor) {
        MixedTerm r = mixed_then(d, h, {K::VMor, j.id}, {K::HMor, d.h_id_mor.at(j.tgt)});
        CHECK(r.kind == K::HMor);
        CHECK(r.id == h.bar.at(j.id));
        MixedTerm l = mixed_then(d, h, {K::HMor, d.h_id_mor.at(j.src)}, {K::VMor, j.id});
        CHECK(l.id == h.bar.at(j.id));
    }
    for (const Morphism& f : d.hmor) {
        MixedTerm r = mixed_then(d, h, {K::VMor, d.v_id_mor.at(f.src)}, {K::HMor, f.id});
        CHECK(r.id == f.id);
    }

    // in box BS3, f∘j is the group product f*j
    FinGroup g = catalog::s3();
    for (const Morphism& j : d.vmor)
        for (const Morphism& f : d.hmor) {
            MixedTerm r = mixed_then(d, h, {K::VMor, j.id}, {K::HMor, f.id});
            CHECK(r.id == g.times(f.id, j.id));
        }

    // associativity and units over all mixed triples (hmor/vmor combinations)
    std::vector<MixedTerm> terms;
    for (const Morphism& f : d.hmor) terms.push_back({K::HMor, f.id});
    for (const Morphism& j : d.vmor) terms.push_back({K::VMor, j.id});
    for (const MixedTerm& a : terms)
        for (const MixedTerm& b : terms)
            for (const MixedTerm& c : terms) {
                MixedTerm ab = mixed_then(d, h, a, b);
                MixedTerm bc = mixed_then(d, h, b, c);
                CHECK(mixed_then(d, h, ab, c).id == mixed_then(d, h, a, bc).id);
            }

    // cells mix with vertical morphisms through i^v of the holonomy
    const DoubleCategory& q = cat.qtg2.d;
    Holonomy qh = cat.qtg2_fold.holonomy;
    Id cell = "2c(h1|t)";
    MixedTerm whisk = mixed_then(q, qh, {K::VMor, "t"}, {K::HCell, cell});
    CHECK(whisk.kind == K::HCell);
    CHECK(whisk.id == sq_beside(q, q.v_id_sq.at("t"), cell));

    CHECK_THROWS_AS(mixed_then(d, h, {K::HMor, "r"}, {K::HMor, "nonexistent"}), OpError);
}

TEST_CASE("extend_with_holonomy") {
    const auto& cat = catalog::get();
    HolonomyExtension ext = extend_with_holonomy(cat.box_bc2, cat.box_bc2_fold.holonomy);
    CHECK(ext.extended.hmor.size() == 4);  // two original plus two included
    CHECK(validate_double_category(ext.extended).valid());
    CHECK(validate_holonomy(ext.extended, ext.inclusion).valid());
    CHECK(validate_double_functor(ext.extended, cat.box_bc2, ext.projection).valid());
    // the inclusion holonomy is injective
    std::set<Id> img;
    for (const auto& [j, f] : ext.inclusion.bar) img.insert(f);
    CHECK(img.size() == ext.inclusion.bar.size());
    // projection preserves the holonomies
    for (const Morphism& j : cat.box_bc2.vmor)
        CHECK(ext.projection.hmor_map.at(ext.inclusion.bar.at(j.id)) ==
              cat.box_bc2_fold.holonomy.bar.at(j.id));

    // a base with only trivial vertical morphisms gains only identity copies
    HolonomyExtension triv = extend_with_holonomy(cat.htg2, cat.htg2_fold.holonomy);
    CHECK(triv.extended.hmor.size() == cat.htg2.hmor.size() + cat.htg2.vmor.size());
    CHECK(validate_double_category(triv.extended).valid());

    // the richer quintet base also extends to a valid double category
    HolonomyExtension qe = extend_with_holonomy(cat.qtg2.d, cat.qtg2_fold.holonomy);
    CHECK(validate_double_category(qe.extended).valid());
    CHECK(validate_double_functor(qe.extended, cat.qtg2.d, qe.projection).valid());
}

TEST_CASE("factor_square_vertically") {
    const auto& cat = catalog::get();

    // degenerate split (1^v ; j) recomposes
    {
        const DoubleCategory& d = cat.qtg2.d;
        for (const SquareRec& s : d.squares) {
            Id one = d.v_id_mor.at(d.vertical(s.left)->src);
            auto [a1, a2] = factor_square_vertically(d, cat.qtg2_fold, s.id, one, s.left);
            CHECK(sq_above(d, a1, a2) == s.id);
        }
    }

    // in box BS3 the factors are the unique commutative squares with the
    // split edges; recomposition holds for every square and every legal split
    {
        const DoubleCategory& d = cat.box_bs3;
        FinGroup g = catalog::s3();
        int checked = 0;
        for (const SquareRec& s : d.squares) {
            for (const Id& j1 : g.elements) {
                Id j2 = g.times(s.left, g.inverse(j1));  // j2*j1 = left
                auto [a1, a2] = factor_square_vertically(d, cat.box_bs3_fold, s.id, j1, j2);
                CHECK(sq_above(d, a1, a2) == s.id);
                CHECK(d.square(a1)->left == j1);
                CHECK(d.square(a2)->left == j2);
                ++checked;
            }
            // right-edge mode
            for (const Id& k1 : g.elements) {
                Id k2 = g.times(s.right, g.inverse(k1));
                auto [a1, a2] =
                    factor_square_vertically(d, cat.box_bs3_fold, s.id, k1, k2, FactorSide::Right);
                CHECK(sq_above(d, a1, a2) == s.id);
                CHECK(d.square(a1)->right == k1);
                CHECK(d.square(a2)->right == k2);
            }
        }
        CHECK(checked == 216 * 6);

        CHECK_THROWS_WITH_AS(
            factor_square_vertically(d, cat.box_bs3_fold, d.squares.front().id, "r", "r"),
            doctest::Contains("SplitMismatch"), OpError);
    }
}

TEST_CASE("folding morphism validator catches naturality breaks") {
    const auto& cat = catalog::get();
    const DoubleCategory& d = cat.qtg2.d;
    std::map<Id, Id> theta{{"e", d.h_id_sq.at("e")}, {"t", "2c(h1|t)"}};
    Folding twin = conjugate_folding(d, cat.qtg2_fold, theta);
    FoldingIso iso = folding_iso(d, cat.qtg2_fold, twin);
    FoldingMorphism broken = iso.fwd;
    broken.theta["t"] = "2c(h2|t)";
    ValidationReport r = validate_folding_morphism(d, cat.qtg2_fold, twin, broken);
    CHECK_FALSE(r.valid());
    CHECK(has_tag(r, "FM_NATURALITY"));
}
