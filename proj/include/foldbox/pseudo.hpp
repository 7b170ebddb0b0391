#pragma once

// Pseudo double categories with strict units, pseudo I-categories with strict
// units, pseudo foldings with strict holonomy, and a transport-twist generator
// that produces coherent non-strict examples from strict ones.

#include "foldbox/xmod.hpp"

namespace foldbox {

// Associator keys use the paper's subscript order {h,g,f} with f applied
// first: alpha_{h,g,f} is a square with identity vertical sides from
// h∘(g∘f) = [[f g] h] to (h∘g)∘f = [f [g h]].
struct PseudoDoubleCategory {
    DoubleCategory d;  // hcomp_mor / hcomp_sq need not be associative
    std::map<std::vector<Id>, Id> associator;
    std::map<Id, Id> lambda_unitor;  // f -> square; strict units require i^v_f
    std::map<Id, Id> rho_unitor;

    friend bool operator==(const PseudoDoubleCategory&, const PseudoDoubleCategory&) = default;
};

struct PseudoICatAlgebra {
    ICatAlgebra x;  // circ need not be associative
    std::map<std::vector<Id>, Id> associator;  // {h,g,f} -> morphism h∘(g∘f) -> (h∘g)∘f

    friend bool operator==(const PseudoICatAlgebra&, const PseudoICatAlgebra&) = default;
};

// A pseudo folding with strict holonomy is carried by the same data as a
// strict folding; the axioms are checked after inserting the coherence cells.
using PseudoFolding = Folding;

// ---- validators ----

ValidationReport validate_pseudo_double(const PseudoDoubleCategory& p, const Caps& caps = {});
ValidationReport validate_pseudo_icat(const PseudoICatAlgebra& p, const Caps& caps = {});
ValidationReport validate_pseudo_folding(const PseudoDoubleCategory& p, const PseudoFolding& f,
                                         const Caps& caps = {});

// ---- operations ----

PseudoDoubleCategory strict_as_pseudo(const DoubleCategory& d);
PseudoICatAlgebra strict_as_pseudo_icat(const ICatAlgebra& x);

// Transport of structure along a relabeling of horizontal morphisms.
// `relabel` must be a bijection on hmor ids fixing sources, targets, and the
// identity morphisms; `witnesses` supplies, for every morphism moved by the
// relabeling, an invertible square f => relabel(f) with identity sides.
PseudoDoubleCategory transport_twist(const DoubleCategory& d, const std::map<Id, Id>& relabel,
                                     const std::map<Id, Id>& witnesses);

struct TwistSearch {
    bool found = false;
    PseudoDoubleCategory twisted;
    std::map<Id, Id> relabel;
    std::size_t nontrivial_associators = 0;
    std::string reason;  // when !found: why no admissible relabeling exists
};

// Exhaustive search for a transposition relabeling with invertible witnesses
// whose transport has at least one non-identity associator entry.
TwistSearch find_transport_twist(const DoubleCategory& d);

}  // namespace foldbox
