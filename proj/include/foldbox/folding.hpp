#pragma once

// Holonomies, foldings, connection pairs, thin structures; the constructive
// conversions between them; folding uniqueness up to isomorphism; mixed
// composition; the holonomy extension D'; and vertical factorization of
// squares along a split of an edge.

#include "foldbox/dblcat.hpp"

namespace foldbox {

// Object-fixing assignment of a horizontal morphism to each vertical one,
// functorial for vertical composition.
struct Holonomy {
    std::map<Id, Id> bar;  // vmor -> hmor

    friend bool operator==(const Holonomy&, const Holonomy&) = default;
};

// Holonomy plus per-boundary bijections sending each square to a square with
// top [f kbar], bottom [jbar g] and identity vertical sides.
struct Folding {
    Holonomy holonomy;
    std::map<Id, Id> lambda;  // square -> square

    friend bool operator==(const Folding&, const Folding&) = default;
};

struct ConnectionPair {
    Holonomy holonomy;
    std::map<Id, Id> gamma;        // j -> square (jbar, j, 1^v, 1^h)
    std::map<Id, Id> gamma_prime;  // j -> square (1^h, 1^v, j, jbar)

    friend bool operator==(const ConnectionPair&, const ConnectionPair&) = default;
};

// Thin structure on an edge-symmetric double category: the thin filler of
// each commutative boundary (f,j,k,g), i.e. a double functor from the
// commutative squares of the edge category that fixes objects and morphisms.
struct ThinStructure {
    std::map<std::vector<Id>, Id> theta;  // (f,j,k,g) -> square

    friend bool operator==(const ThinStructure&, const ThinStructure&) = default;
};

// Morphism between two foldings on the same double category: a square
// theta(j) from bar1(j) to bar2(j) with identity sides, per vertical j.
struct FoldingMorphism {
    std::map<Id, Id> theta;  // vmor -> square

    friend bool operator==(const FoldingMorphism&, const FoldingMorphism&) = default;
};

// ---- validators ----

ValidationReport validate_holonomy(const DoubleCategory& d, const Holonomy& h, const Caps& caps = {});
ValidationReport validate_folding(const DoubleCategory& d, const Folding& f, const Caps& caps = {});
ValidationReport validate_connection_pair(const DoubleCategory& d, const ConnectionPair& cp,
                                          const Caps& caps = {});
ValidationReport validate_thin_structure(const DoubleCategory& d, const ThinStructure& th,
                                         const Caps& caps = {});
ValidationReport validate_folding_morphism(const DoubleCategory& d, const Folding& f1,
                                           const Folding& f2, const FoldingMorphism& fm,
                                           const Caps& caps = {});

// ---- conversions ----

// Lambda(alpha) := [Gamma'(j) alpha Gamma(k)].
Folding folding_from_connection(const DoubleCategory& d, const ConnectionPair& cp);

// Gamma(j) and Gamma'(j) are the unique Lambda-preimages of i^v_{jbar} at the
// connection boundaries; throws MissingPreimage if the tables are not
// bijective there.
ConnectionPair connection_from_folding(const DoubleCategory& d, const Folding& f);

struct FoldingIso {
    FoldingMorphism fwd;  // theta j = Lambda2(Gamma1(j))
    FoldingMorphism bwd;  // inverse, Lambda2(Gamma1'(j))
};

// The canonical isomorphism between any two foldings on the same base.
FoldingIso folding_iso(const DoubleCategory& d, const Folding& f1, const Folding& f2);

// Thin structures vs connection pairs with trivial holonomy (edge-symmetric
// base required).
ThinStructure connection_to_thin(const DoubleCategory& d, const ConnectionPair& cp);
ConnectionPair thin_to_connection(const DoubleCategory& d, const ThinStructure& th);

// ---- mixed composition ----

struct MixedTerm {
    enum class Kind { HMor, VMor, HCell } kind;  // HCell: square with identity sides
    Id id;
};

// second∘first in the sense of the holonomy-induced mixed composition; the
// result is a horizontal morphism or a 2-cell of the horizontal 2-category.
MixedTerm mixed_then(const DoubleCategory& d, const Holonomy& h, const MixedTerm& first,
                     const MixedTerm& second);

// ---- holonomy extension ----

struct HolonomyExtension {
    DoubleCategory extended;       // D' with hmor(D') = hmor(D) + inc(vmor(D))
    Holonomy inclusion;            // j -> inc(j), injective by construction
    DoubleFunctorData projection;  // D' -> D, preserves the holonomies
};

HolonomyExtension extend_with_holonomy(const DoubleCategory& d, const Holonomy& h);

// ---- vertical factorization (unique composites) ----

enum class FactorSide { Left, Right };

// Factors alpha as [alpha1 ; alpha2] extending the split of its left (or
// right) edge into part1 ; part2. Throws SplitMismatch if the split does not
// compose to that edge.
std::pair<Id, Id> factor_square_vertically(const DoubleCategory& d, const Folding& f,
                                           const Id& alpha, const Id& part1, const Id& part2,
                                           FactorSide side = FactorSide::Left);

// ---- canonical foldings ----

Folding quintet_folding(const QuintetData& q);
Folding commutative_squares_folding(const DoubleCategory& box);  // unique folding on a box category
Folding h_embed_folding(const DoubleCategory& hd);               // trivial vmor: identity folding
Folding adjunction_folding(const AdjunctionData& ad);            // holonomy = right adjoint

// Conjugates a folding by a functorial family of invertible trivial-sided
// squares theta(j): jbar => jbar; produces a second folding with the same
// holonomy (the "conjugated twin").
Folding conjugate_folding(const DoubleCategory& d, const Folding& base,
                          const std::map<Id, Id>& theta);

// Vertical-composition inverse of a square, if any.
std::optional<Id> vcomp_inverse(const DoubleCategory& d, const Id& square);

}  // namespace foldbox
