#pragma once

// Shared helpers for the unit and acceptance suites: tag queries, algebra
// setups built from crossed modules under groups, and candidate generators
// for modification 2-cells and homotopies.

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "foldbox/catalog.hpp"
#include "foldbox/cli.hpp"

namespace foldbox::testutil {

inline bool has_tag(const ValidationReport& r, const std::string& tag) {
    for (const Issue& v : r.violations)
        if (v.tag == tag) return true;
    for (const Issue& v : r.structural)
        if (v.tag == tag) return true;
    return false;
}

inline std::string first_tags(const ValidationReport& r, std::size_t n = 4) {
    std::vector<std::string> tags;
    for (const Issue& v : r.structural) tags.push_back("S:" + v.tag);
    for (const Issue& v : r.violations) tags.push_back("V:" + v.tag);
    if (tags.size() > n) tags.resize(n);
    return join_ids(tags, " ");
}

// Algebra over a one-object groupoid built from a crossed module under a
// group, via the 2-group and the reconstruction functor.
inline ICatAlgebra algebra_from_xmod_under(const XModUnderGroup& x) {
    TwoGroupData c = two_group_from_xmod(x.xm);
    TwoFunctorUnderI z;
    z.base = group_to_one_object_groupoid(x.i).cat;
    z.target = c.tg.cat;
    for (const Id& j : x.i.elements) z.p[j] = x.p.at(j);
    return reconstruct_X(z);
}

inline AlgebraMorphism identity_algebra_morphism(const ICatAlgebra& x) {
    AlgebraMorphism m;
    for (const auto& [ab, cat] : x.hom) {
        FunctorData f;
        for (const Id& o : cat.objects) f.obj_map[o] = o;
        for (const Morphism& mo : cat.morphisms) f.mor_map[mo.id] = mo.id;
        m.comps[ab] = std::move(f);
    }
    return m;
}

// For trivial-boundary crossed modules: the endomorphism killing the H part
// of every cell 2c(a|g) -> 2c(e|g).
inline AlgebraMorphism kill_h_morphism(const ICatAlgebra& x, const CrossedModule& xm) {
    AlgebraMorphism m;
    for (const auto& [ab, cat] : x.hom) {
        FunctorData f;
        for (const Id& o : cat.objects) f.obj_map[o] = o;
        for (const Morphism& mo : cat.morphisms) {
            // cell ids have the shape 2c(a|g); rebuild with a = e
            const std::string& id = mo.id;
            auto bar = id.rfind('|');
            Id g = id.substr(bar + 1, id.size() - bar - 2);
            f.mor_map[mo.id] = "2c(" + xm.h.unit + "|" + g + ")";
        }
        m.comps[ab] = std::move(f);
    }
    return m;
}

struct CandidateSetup {
    std::string name;
    ICatAlgebra x;
    AlgebraMorphism f, g;
};

// Exhaustively enumerates component families sigma: F => G satisfying the
// modification-equivalence preconditions; budget-limited cartesian product.
inline std::vector<AlgebraTwoCell> enumerate_candidates(const CandidateSetup& s,
                                                        std::size_t budget = 100000) {
    std::vector<AlgebraTwoCell> out;
    // collect per-(A,B,object) option lists
    struct Slot {
        IdPair ab;
        Id obj;
        std::vector<Id> options;
    };
    std::vector<Slot> slots;
    std::size_t total = 1;
    for (const auto& [ab, cat] : s.x.hom) {
        for (const Id& o : cat.objects) {
            Slot slot{ab, o, {}};
            Id src = s.f.comps.at(ab).obj_map.at(o);
            Id tgt = s.g.comps.at(ab).obj_map.at(o);
            for (const Morphism& m : cat.morphisms)
                if (m.src == src && m.tgt == tgt) slot.options.push_back(m.id);
            if (slot.options.empty()) return out;
            total *= slot.options.size();
            if (total > budget) return out;
            slots.push_back(std::move(slot));
        }
    }
    std::vector<std::size_t> pick(slots.size(), 0);
    while (true) {
        AlgebraTwoCell cell;
        for (const auto& [ab, cat] : s.x.hom) cell.comps[ab] = {};
        for (std::size_t i = 0; i < slots.size(); ++i)
            cell.comps[slots[i].ab].components[slots[i].obj] = slots[i].options[pick[i]];
        try {
            check_modification_equiv(s.x, s.x, s.f, s.g, cell);
            out.push_back(std::move(cell));
        } catch (const OpError&) {
        }
        std::size_t i = 0;
        while (i < pick.size() && ++pick[i] == slots[i].options.size()) pick[i++] = 0;
        if (i == pick.size()) break;
    }
    return out;
}

// All homotopies between two crossed module morphisms, by exhaustive
// enumeration of functions nu: G -> H' (budget-limited).
inline std::vector<CrossedHomotopy> enumerate_homotopies(const CrossedModule& src,
                                                         const CrossedModule& tgt,
                                                         const XModMorphism& m1,
                                                         const XModMorphism& m2,
                                                         std::size_t budget = 300000) {
    std::vector<CrossedHomotopy> out;
    std::size_t total = 1;
    for (std::size_t i = 0; i < src.g.elements.size(); ++i) {
        total *= tgt.h.elements.size();
        if (total > budget) return out;
    }
    std::vector<std::size_t> pick(src.g.elements.size(), 0);
    while (true) {
        CrossedHomotopy nu;
        for (std::size_t i = 0; i < src.g.elements.size(); ++i)
            nu.nu[src.g.elements[i]] = tgt.h.elements[pick[i]];
        if (validate_homotopy(src, tgt, m1, m2, nu).valid()) out.push_back(std::move(nu));
        std::size_t i = 0;
        while (i < pick.size() && ++pick[i] == tgt.h.elements.size()) pick[i++] = 0;
        if (i == pick.size()) break;
    }
    return out;
}

// Inner-conjugation endomorphism pair of xm_c3_s3 by the element w.
inline XModMorphism conjugation_endo_xm2(const CrossedModule& xm2, const Id& w) {
    XModMorphism m;
    std::map<Id, Id> to_g{{"e", "e"}, {"g1", "r"}, {"g2", "r2"}};
    std::map<Id, Id> from_g{{"e", "e"}, {"r", "g1"}, {"r2", "g2"}};
    for (const Id& g : xm2.g.elements) m.q[g] = xm2.g.times(xm2.g.times(w, g), xm2.g.inverse(w));
    for (const Id& a : xm2.h.elements)
        m.p[a] = from_g.at(xm2.g.times(xm2.g.times(w, to_g.at(a)), xm2.g.inverse(w)));
    return m;
}

}  // namespace foldbox::testutil
