#pragma once

// Crossed modules, their morphisms and homotopies, 2-groups, and the
// constructive equivalences: 2-groups vs crossed modules in both directions,
// homotopies vs vertical transformations, crossed modules under a group vs
// double groups with folding, and conjugation 2-cells.

#include "foldbox/algebra.hpp"

namespace foldbox {

struct CrossedModule {
    FinGroup h;
    FinGroup g;
    std::map<Id, Id> boundary;      // H -> G
    std::map<IdPair, Id> action;    // (g, a) -> ^g a

    friend bool operator==(const CrossedModule&, const CrossedModule&) = default;

    Id act(const Id& g_, const Id& a) const;
};

struct XModMorphism {
    std::map<Id, Id> p;  // H -> H'
    std::map<Id, Id> q;  // G -> G'

    friend bool operator==(const XModMorphism&, const XModMorphism&) = default;
};

struct CrossedHomotopy {
    std::map<Id, Id> nu;  // G -> H'

    friend bool operator==(const CrossedHomotopy&, const CrossedHomotopy&) = default;
};

// One-object 2-category with all 1-cells and 2-cells invertible, plus the
// inverse tables.
struct TwoGroup {
    TwoCategory cat;
    std::map<Id, Id> inv_one;   // 1-cell -> inverse under horizontal composition
    std::map<Id, Id> vinv_two;  // 2-cell -> vertical inverse
    std::map<Id, Id> hinv_two;  // 2-cell -> horizontal inverse

    friend bool operator==(const TwoGroup&, const TwoGroup&) = default;
};

struct ConjugationTwoCell {
    Id w;  // element of the target's G'
};

// Crossed module under a group: homomorphism P: I -> G.
struct XModUnderGroup {
    CrossedModule xm;
    FinGroup i;
    std::map<Id, Id> p;  // I -> G

    friend bool operator==(const XModUnderGroup&, const XModUnderGroup&) = default;
};

// Component family of a vertical-transformation-style 2-cell between the
// 2-group functors induced by two crossed module morphisms.
struct TwoGroupCell {
    std::map<Id, Id> comp;  // 1-cell of source 2-group -> 2-cell of target
};

// ---- validators ----

ValidationReport validate_crossed_module(const CrossedModule& m, const Caps& caps = {});
ValidationReport validate_xmod_morphism(const CrossedModule& src, const CrossedModule& tgt,
                                        const XModMorphism& f, const Caps& caps = {});
ValidationReport validate_homotopy(const CrossedModule& src, const CrossedModule& tgt,
                                   const XModMorphism& m1, const XModMorphism& m2,
                                   const CrossedHomotopy& nu, const Caps& caps = {});
ValidationReport validate_two_group(const TwoGroup& t, const Caps& caps = {});
ValidationReport validate_conjugation_two_cell(const CrossedModule& src, const CrossedModule& tgt,
                                               const XModMorphism& m1, const XModMorphism& m2,
                                               const ConjugationTwoCell& w, const Caps& caps = {});
ValidationReport validate_xmod_under_group(const XModUnderGroup& x, const Caps& caps = {});

// Vertical-transformation conditions for a 2-group cell family sigma between
// the functors induced by m1 and m2.
ValidationReport validate_two_group_cell(const CrossedModule& src, const CrossedModule& tgt,
                                         const XModMorphism& m1, const XModMorphism& m2,
                                         const TwoGroupCell& sigma, const Caps& caps = {});

// ---- Brown–Spencer ----

// 2-cells are pairs 2c(a|g) in H⋊G with source g and target boundary(a)*g.
struct TwoGroupData {
    TwoGroup tg;
    std::map<Id, Id> cell_h;  // 2-cell -> H component
    std::map<Id, Id> cell_g;  // 2-cell -> G component (source 1-cell)
};

TwoGroupData two_group_from_xmod(const CrossedModule& m);
TwoGroup two_group_from_two_category(const TwoCategory& c);  // checks invertibility
CrossedModule xmod_from_two_group(const TwoGroup& t);

// Round-trip witness m -> xmod_from_two_group(two_group_from_xmod(m)):
// identity on G, a -> 2c(a|e) on H. Verified by the caller via
// validate_xmod_morphism and bijectivity.
XModMorphism brown_spencer_unit(const CrossedModule& m);

// ---- homotopies vs vertical transformations ----

TwoGroupCell nu_to_sigma(const CrossedModule& src, const CrossedModule& tgt,
                         const XModMorphism& m1, const CrossedHomotopy& nu);
CrossedHomotopy sigma_to_nu(const CrossedModule& src, const CrossedModule& tgt,
                            const XModMorphism& m1, const TwoGroupCell& sigma);

// The two compositions of homotopies.
CrossedHomotopy compose_homotopy_vertical(const CrossedModule& tgt, const CrossedHomotopy& nu1,
                                          const CrossedHomotopy& nu2);
XModMorphism compose_xmod_morphism(const XModMorphism& first, const XModMorphism& second);
CrossedHomotopy compose_homotopy_horizontal(const CrossedModule& mid, const CrossedModule& tgt,
                                            const XModMorphism& m1_prime, const XModMorphism& m2,
                                            const CrossedHomotopy& nu1, const CrossedHomotopy& nu2);

// ---- Theorem WZ: the under-I condition in both representations ----

struct UnderIReport {
    bool nu_condition = false;     // nu(P(j)) = e for all j
    bool sigma_condition = false;  // sigma^{P(j)} = i for all j
    std::vector<Issue> witnesses;
};

UnderIReport check_under_I(const XModUnderGroup& src, const XModUnderGroup& tgt,
                           const XModMorphism& m1, const XModMorphism& m2,
                           const CrossedHomotopy& nu);

// ---- double groups with folding vs crossed modules under groups ----

// Throws NotADoubleGroup if some morphism or square lacks an inverse.
XModUnderGroup double_group_to_xmod(const DoubleCategory& d, const Folding& f);
FoldedDouble xmod_to_double_group(const XModUnderGroup& x);

// Witness for the double -> xmod -> double round trip (maps d into the
// reconstruction); verified by replay.
DoubleFunctorData double_group_roundtrip_witness(const DoubleCategory& d, const Folding& f);

}  // namespace foldbox
