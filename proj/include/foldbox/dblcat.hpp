#pragma once

// Finite double categories: both square compositions as explicit tables,
// double functors, horizontal/vertical transformations, extraction of the
// horizontal/vertical 2-categories, canonical generators (quintets,
// commutative squares, H/V embeddings, adjunctions), and rectangular grid
// pasting.
//
// Square boundary convention (paper diagram): a square has a top and bottom
// horizontal morphism and a left and right vertical morphism,
//     A --top--> B
//     |          |
//   left       right
//     v          v
//     C -bottom-> D
// Horizontal composition [a b] glues right(a) = left(b); vertical composition
// [a ; b] glues bottom(a) = top(b). Tables are keyed in diagram order:
// hcomp_sq[(a,b)] = [a b], vcomp_sq[(a,b)] = [a ; b], and likewise
// hcomp_mor[(f1,f2)] = [f1 f2] (f1 first), vcomp_mor[(j1,j2)] = [j1 ; j2].

#include "foldbox/fincat.hpp"

namespace foldbox {

struct SquareRec {
    Id id;
    Id top;
    Id bottom;
    Id left;
    Id right;

    friend bool operator==(const SquareRec&, const SquareRec&) = default;
};

struct DoubleCategory {
    std::vector<Id> objects;
    std::vector<Morphism> hmor;
    std::vector<Morphism> vmor;
    std::vector<SquareRec> squares;
    std::map<IdPair, Id> hcomp_mor;  // (f1,f2) -> [f1 f2]
    std::map<IdPair, Id> vcomp_mor;  // (j1,j2) -> [j1 ; j2]
    std::map<IdPair, Id> hcomp_sq;   // (a,b) -> [a b]
    std::map<IdPair, Id> vcomp_sq;   // (a,b) -> [a ; b]
    std::map<Id, Id> h_id_mor;       // A -> 1^h_A
    std::map<Id, Id> v_id_mor;       // A -> 1^v_A
    std::map<Id, Id> h_id_sq;        // vmor j -> i^h_j
    std::map<Id, Id> v_id_sq;        // hmor f -> i^v_f

    friend bool operator==(const DoubleCategory&, const DoubleCategory&) = default;

    const SquareRec* square(const Id& id) const;
    const Morphism* horizontal(const Id& id) const;
    const Morphism* vertical(const Id& id) const;
};

// Lookup helpers; all throw OpError(ShapeMismatch) on missing entries.
Id h_then(const DoubleCategory& d, const Id& f1, const Id& f2);    // [f1 f2]
Id v_then(const DoubleCategory& d, const Id& j1, const Id& j2);    // [j1 ; j2]
Id sq_beside(const DoubleCategory& d, const Id& a, const Id& b);   // [a b]
Id sq_above(const DoubleCategory& d, const Id& a, const Id& b);    // [a ; b]
Id h_identity(const DoubleCategory& d, const Id& object);          // 1^h_A
Id v_identity(const DoubleCategory& d, const Id& object);          // 1^v_A
Id h_id_square(const DoubleCategory& d, const Id& vmor);           // i^h_j
Id v_id_square(const DoubleCategory& d, const Id& hmor);           // i^v_f

bool is_edge_symmetric(const DoubleCategory& d);

struct DoubleFunctorData {
    std::map<Id, Id> obj_map;
    std::map<Id, Id> hmor_map;
    std::map<Id, Id> vmor_map;
    std::map<Id, Id> sq_map;

    friend bool operator==(const DoubleFunctorData&, const DoubleFunctorData&) = default;
};

struct VerticalTransformationData {
    std::map<Id, Id> comp_obj;   // object -> vmor of target
    std::map<Id, Id> comp_hmor;  // hmor of source -> square of target
};

struct HorizontalTransformationData {
    std::map<Id, Id> comp_obj;   // object -> hmor of target
    std::map<Id, Id> comp_vmor;  // vmor of source -> square of target
};

// ---- validators ----

ValidationReport validate_double_category(const DoubleCategory& d, const Caps& caps = {});
ValidationReport validate_double_functor(const DoubleCategory& src, const DoubleCategory& tgt,
                                         const DoubleFunctorData& f, const Caps& caps = {});
ValidationReport validate_vertical_transformation(const DoubleCategory& src, const DoubleCategory& tgt,
                                                  const DoubleFunctorData& f, const DoubleFunctorData& g,
                                                  const VerticalTransformationData& sigma,
                                                  const Caps& caps = {});
ValidationReport validate_horizontal_transformation(const DoubleCategory& src, const DoubleCategory& tgt,
                                                    const DoubleFunctorData& f, const DoubleFunctorData& g,
                                                    const HorizontalTransformationData& theta,
                                                    const Caps& caps = {});

// ---- extraction ----

// Objects, horizontal morphisms, and the squares whose left and right sides
// are vertical identities. `vertical_two_category` is the transpose.
TwoCategory horizontal_two_category(const DoubleCategory& d);
TwoCategory vertical_two_category(const DoubleCategory& d);

// ---- generators ----

// Quintets: squares over (f,j,k,g) are the 2-cells k∘f => g∘j of `c`.
// Squares with identity vertical sides keep their underlying 2-cell id; all
// other squares get the canonical id q(f,j,k,g,cell).
DoubleCategory quintets(const TwoCategory& c);

// Quintets plus the square -> underlying 2-cell map.
struct QuintetData {
    DoubleCategory d;
    std::map<Id, Id> cell_of;
};
QuintetData quintets_with_cells(const TwoCategory& c);

// Commutative squares of a category: one square s(f,j,k,g) per boundary with
// g∘j = k∘f.
DoubleCategory commutative_squares(const FinCategory& i);

DoubleCategory h_embed(const TwoCategory& c);
DoubleCategory v_embed(const TwoCategory& c);

// Adjunctions of `c`: vertical morphisms are quadruples (j1,j2,eta,eps)
// satisfying the triangle identities, directed along the right adjoint j1.
DoubleCategory adjunctions(const TwoCategory& c);

struct AdjunctionData {
    DoubleCategory d;
    std::map<Id, Id> cell_of;         // square -> underlying 2-cell
    std::map<Id, Id> right_adjoint;   // vmor -> right adjoint 1-cell
};
AdjunctionData adjunctions_with_data(const TwoCategory& c);

// The forgetful double functor from adjunctions(c) to quintets(c).
DoubleFunctorData adjunctions_to_quintets(const TwoCategory& c);

// Backtracking isomorphism search over all four sorts, with optional folding
// preservation; identity-first candidate order.
IsoResult iso_search_double_category(const DoubleCategory& a, const DoubleCategory& b,
                                     std::uint64_t budget);

// ---- pasting ----

// Composes a rectangular grid rows-then-columns. With `check_interchange`,
// recomputes columns-then-rows and throws on disagreement.
Id grid_compose(const DoubleCategory& d, const std::vector<std::vector<Id>>& grid,
                bool check_interchange = false);

}  // namespace foldbox
