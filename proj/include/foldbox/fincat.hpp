#pragma once

// Finite 1- and 2-categorical substrate: explicit-table categories, groupoids,
// groups, functors, natural transformations, and strict 2-categories, with
// exhaustive validators and isomorphism search.

#include <optional>

#include "foldbox/core.hpp"

namespace foldbox {

struct Morphism {
    Id id;
    Id src;
    Id tgt;

    friend bool operator==(const Morphism&, const Morphism&) = default;
};

// Category as explicit tables. comp is stored sparsely as (g, f) -> g∘f over
// exactly the composable pairs; totality is checked, not assumed.
struct FinCategory {
    std::vector<Id> objects;
    std::vector<Morphism> morphisms;
    std::map<Id, Id> identity;      // object -> morphism
    std::map<IdPair, Id> comp;      // (g, f) -> g∘f, tgt f = src g

    friend bool operator==(const FinCategory&, const FinCategory&) = default;

    const Morphism* morphism(const Id& id) const;
    bool has_object(const Id& id) const;
};

struct FinGroupoid {
    FinCategory cat;
    std::map<Id, Id> inv;  // morphism -> inverse morphism

    friend bool operator==(const FinGroupoid&, const FinGroupoid&) = default;
};

struct FinGroup {
    std::vector<Id> elements;
    Id unit;
    std::map<IdPair, Id> mul;  // (a, b) -> a*b, total
    std::map<Id, Id> inv;

    friend bool operator==(const FinGroup&, const FinGroup&) = default;

    Id times(const Id& a, const Id& b) const;
    Id inverse(const Id& a) const;
};

// Object/morphism maps of a functor; source and target structures are passed
// alongside wherever the maps are interpreted.
struct FunctorData {
    std::map<Id, Id> obj_map;
    std::map<Id, Id> mor_map;

    friend bool operator==(const FunctorData&, const FunctorData&) = default;
};

struct NatTransformData {
    std::map<Id, Id> components;  // object of source -> morphism of target

    friend bool operator==(const NatTransformData&, const NatTransformData&) = default;
};

struct TwoCellRec {
    Id id;
    Id src;  // 1-cell
    Id tgt;  // 1-cell, parallel to src

    friend bool operator==(const TwoCellRec&, const TwoCellRec&) = default;
};

// Strict 2-category as tables. vcomp_two/hcomp_two are keyed (b, a) -> b∘a
// with a applied first, matching the category comp convention.
struct TwoCategory {
    std::vector<Id> objects;
    std::vector<Morphism> one_cells;
    std::vector<TwoCellRec> two_cells;
    std::map<Id, Id> id_one;            // object -> identity 1-cell
    std::map<IdPair, Id> hcomp_one;     // (g, f) -> g∘f
    std::map<Id, Id> id_two;            // 1-cell -> identity 2-cell
    std::map<IdPair, Id> vcomp_two;     // (b, a) -> b⊙a
    std::map<IdPair, Id> hcomp_two;     // (b, a) -> b∘a

    friend bool operator==(const TwoCategory&, const TwoCategory&) = default;

    const Morphism* one_cell(const Id& id) const;
    const TwoCellRec* two_cell(const Id& id) const;
};

// ---- temporal-order helpers (first argument is applied first) ----

// g∘f in a category; throws OpError(ShapeMismatch) if the pair is absent.
Id cat_then(const FinCategory& c, const Id& f, const Id& g);
Id two_then_one(const TwoCategory& c, const Id& f, const Id& g);       // g∘f of 1-cells
Id two_then_v(const TwoCategory& c, const Id& a, const Id& b);         // b⊙a of 2-cells
Id two_then_h(const TwoCategory& c, const Id& a, const Id& b);         // b∘a of 2-cells

// Hom category X(A,B) of a 2-category: objects are 1-cells A->B, morphisms the
// 2-cells between them, composition the vertical composition.
FinCategory hom_category(const TwoCategory& c, const Id& a, const Id& b);

// ---- validators ----

ValidationReport validate_category(const FinCategory& c, const Caps& caps = {});
ValidationReport validate_groupoid(const FinGroupoid& g, const Caps& caps = {});
ValidationReport validate_group(const FinGroup& g, const Caps& caps = {});
ValidationReport validate_functor(const FinCategory& src, const FinCategory& tgt,
                                  const FunctorData& f, const Caps& caps = {});
ValidationReport validate_nat_transform(const FinCategory& src, const FinCategory& tgt,
                                        const FunctorData& f, const FunctorData& g,
                                        const NatTransformData& sigma, const Caps& caps = {});
ValidationReport validate_two_category(const TwoCategory& c, const Caps& caps = {});

struct TwoFunctorData {
    std::map<Id, Id> obj_map;
    std::map<Id, Id> one_map;
    std::map<Id, Id> two_map;

    friend bool operator==(const TwoFunctorData&, const TwoFunctorData&) = default;
};

ValidationReport validate_two_functor(const TwoCategory& src, const TwoCategory& tgt,
                                      const TwoFunctorData& f, const Caps& caps = {});

// ---- operations ----

FinGroupoid group_to_one_object_groupoid(const FinGroup& g, const Id& object_name = "*");

// Read the group back off a one-object groupoid (inverse of the embedding).
FinGroup one_object_groupoid_to_group(const FinGroupoid& g);

struct IsoWitness {
    // forward[sort][id] = image id; backward is the verified inverse.
    std::map<std::string, std::map<Id, Id>> forward;
    std::map<std::string, std::map<Id, Id>> backward;
};

enum class IsoStatus { Witness, NoIso, BudgetExceeded };

struct IsoResult {
    IsoStatus status = IsoStatus::NoIso;
    IsoWitness witness;
    std::uint64_t nodes = 0;
};

IsoResult iso_search_group(const FinGroup& a, const FinGroup& b, std::uint64_t budget);
IsoResult iso_search_category(const FinCategory& a, const FinCategory& b, std::uint64_t budget);
IsoResult iso_search_two_category(const TwoCategory& a, const TwoCategory& b, std::uint64_t budget);

}  // namespace foldbox
