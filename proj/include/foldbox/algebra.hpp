#pragma once

// Strict algebras over the 2-theory of categories with underlying category I
// ("I-categories"), their morphisms and 2-cells, 2-functors under I, and the
// constructive equivalences between I-categories, double categories with
// folding, and identity-on-objects 2-functors.

#include "foldbox/folding.hpp"

namespace foldbox {

// A strict 2-functor X: I^2 -> Cat with composition and unit operations, all
// as tables. Hom categories use globally disjoint id spaces, so the circ
// tables can be keyed by plain id pairs.
struct ICatAlgebra {
    FinCategory base;                        // I
    std::map<IdPair, FinCategory> hom;       // (A,B) -> X_{A,B}
    std::map<IdPair, FunctorData> transition;  // (j,k) -> X_{j,k}
    std::map<IdPair, Id> circ_obj;           // (g,f) -> g∘f on hom objects
    std::map<IdPair, Id> circ_mor;           // (b,a) -> b∘a on hom morphisms
    std::map<Id, Id> unit;                   // B -> object 1_B of X_{B,B}

    friend bool operator==(const ICatAlgebra&, const ICatAlgebra&) = default;

    // location of a hom object / hom morphism: (A,B) pair, or nullptr
    const IdPair* object_home(const Id& f) const;
    const IdPair* morphism_home(const Id& m) const;
};

struct AlgebraMorphism {
    std::map<IdPair, FunctorData> comps;  // (A,B) -> F_{A,B}
};

struct AlgebraTwoCell {
    std::map<IdPair, NatTransformData> comps;  // (A,B) -> sigma_{A,B}
};

// Identity-on-objects strict 2-functor P: I -> C.
struct TwoFunctorUnderI {
    FinCategory base;    // I
    TwoCategory target;  // C, with Obj C = Obj I
    std::map<Id, Id> p;  // I-morphism -> 1-cell

    friend bool operator==(const TwoFunctorUnderI&, const TwoFunctorUnderI&) = default;
};

// ---- validators ----

ValidationReport validate_icat_algebra(const ICatAlgebra& x, const Caps& caps = {});

// All strict algebra checks except, optionally, associativity of circ (the
// pseudo validator replaces that axiom with associator coherence).
ValidationReport validate_icat_algebra_core(const ICatAlgebra& x, const Caps& caps, bool check_assoc);
ValidationReport validate_algebra_morphism(const ICatAlgebra& x, const ICatAlgebra& y,
                                           const AlgebraMorphism& f, const Caps& caps = {});
ValidationReport validate_algebra_two_cell(const ICatAlgebra& x, const ICatAlgebra& y,
                                           const AlgebraMorphism& f, const AlgebraMorphism& g,
                                           const AlgebraTwoCell& sigma, const Caps& caps = {});
ValidationReport validate_two_functor_under_i(const TwoFunctorUnderI& z, const Caps& caps = {});

// ---- operations ----

// Inverse table of a category, if it is a groupoid.
std::optional<std::map<Id, Id>> groupoid_inverses(const FinCategory& c);

// P(j) := X_{j^{-1},1}(1) = X_{1,j}(1); throws NotAGroupoid /
// DefiningExpressionsDisagree. This is the functor K of the X->Z comparison.
TwoFunctorUnderI associated_two_functor(const ICatAlgebra& x);

struct ModificationEquivReport {
    bool cond_i = false;   // sigma is a modification
    bool cond_ii = false;  // sigma^{P(j)} = i_{P'(j)} for all j
    std::vector<Issue> witnesses;
};

// The two equivalent forms of the modification condition, each evaluated
// exhaustively and independently. Throws PreconditionViolated unless sigma's
// components are natural and compatible with composition and unit.
ModificationEquivReport check_modification_equiv(const ICatAlgebra& x, const ICatAlgebra& y,
                                                 const AlgebraMorphism& f, const AlgebraMorphism& g,
                                                 const AlgebraTwoCell& sigma);

struct FoldedDouble {
    DoubleCategory d;
    Folding folding;

    friend bool operator==(const FoldedDouble&, const FoldedDouble&) = default;
};

// Y -> Z: the 2-category is the horizontal one, P is the holonomy.
TwoFunctorUnderI functor_L(const DoubleCategory& d, const Folding& f);

// Z -> Y: squares over (f,j,k,g) are the 2-cells P(k)∘f => g∘P(j); the
// folding bijection is the identity on cells.
FoldedDouble functor_M(const TwoFunctorUnderI& z);

// X -> Y directly from the algebra tables (independently of M∘K; the
// agreement of the two routes is a theorem exercised by tests).
FoldedDouble functor_J(const ICatAlgebra& x);

// X -> Z; alias of associated_two_functor.
TwoFunctorUnderI functor_K(const ICatAlgebra& x);

// Z -> X: X_{A,B} := C(A,B), X_{j,k}(f) := P(k)∘f∘P(j^{-1}).
ICatAlgebra reconstruct_X(const TwoFunctorUnderI& z);

// The isomorphism witness M(L(D)) ≅ D: identity on objects and edges,
// lambda-conjugation on squares (maps D -> M(L(D))).
DoubleFunctorData mld_witness(const DoubleCategory& d, const Folding& f);

// Square id scheme shared by M, J, and the quintet-style constructions:
// squares with identity vertical sides keep the bare cell id, all others are
// q(f,j,k,g,cell). `base` is the vertical edge category.
Id generalized_quintet_square_id(const FinCategory& base, const Id& f, const Id& j, const Id& k,
                                 const Id& g, const Id& cell);

// ---- canonical forms (sort carriers by id; tables are already maps) ----

FinCategory canonical(FinCategory c);
TwoCategory canonical(TwoCategory c);
DoubleCategory canonical(DoubleCategory d);
TwoFunctorUnderI canonical(TwoFunctorUnderI z);

}  // namespace foldbox
