#include "foldbox/algebra.hpp"

#include <algorithm>
#include <set>
#include <unordered_map>

namespace foldbox {

namespace {

struct HomIndex {
    std::map<Id, IdPair> obj_home;
    std::map<Id, IdPair> mor_home;
    bool ok = true;

    explicit HomIndex(const ICatAlgebra& x) {
        for (const auto& [ab, cat] : x.hom) {
            for (const Id& o : cat.objects)
                if (!obj_home.emplace(o, ab).second) ok = false;
            for (const Morphism& m : cat.morphisms)
                if (!mor_home.emplace(m.id, ab).second) ok = false;
        }
    }
};

}  // namespace

const IdPair* ICatAlgebra::object_home(const Id& f) const {
    for (const auto& [ab, cat] : hom)
        if (cat.has_object(f)) return &ab;
    return nullptr;
}

const IdPair* ICatAlgebra::morphism_home(const Id& m) const {
    for (const auto& [ab, cat] : hom)
        if (cat.morphism(m)) return &ab;
    return nullptr;
}

// ---------------------------------------------------------------------------
// validators
// ---------------------------------------------------------------------------

ValidationReport validate_icat_algebra(const ICatAlgebra& x, const Caps& caps) {
    return validate_icat_algebra_core(x, caps, true);
}

ValidationReport validate_icat_algebra_core(const ICatAlgebra& x, const Caps& caps, bool check_assoc) {
    ValidationReport r;
    r.absorb(validate_category(x.base, caps), "base category I");
    if (!r.well_formed()) return r;

    for (const Id& a : x.base.objects)
        for (const Id& b : x.base.objects)
            if (!x.hom.count({a, b}))
                r.structural_error("NON_TOTAL_TABLE", {a, b}, "hom category missing for (" + a + "," + b + ")");
    for (const auto& [ab, cat] : x.hom) {
        if (!x.base.has_object(ab.first) || !x.base.has_object(ab.second))
            r.structural_error("DANGLING_REFERENCE", {ab.first, ab.second}, "hom category at unknown objects");
        r.absorb(validate_category(cat, caps), "hom(" + ab.first + "," + ab.second + ")");
    }
    HomIndex hidx(x);
    if (!hidx.ok)
        r.structural_error("DUPLICATE_ID", {}, "hom categories do not have disjoint id spaces");
    if (!r.well_formed()) return r;

    // transitions exist for every pair of base morphisms and are functors
    for (const Morphism& j : x.base.morphisms)
        for (const Morphism& k : x.base.morphisms)
            if (!x.transition.count({j.id, k.id}))
                r.structural_error("NON_TOTAL_TABLE", {j.id, k.id}, "transition missing for (" + j.id + "," + k.id + ")");
    for (const auto& [jk, fun] : x.transition) {
        const Morphism* j = x.base.morphism(jk.first);
        const Morphism* k = x.base.morphism(jk.second);
        if (!j || !k) {
            r.structural_error("DANGLING_REFERENCE", {jk.first, jk.second}, "transition at unknown base morphisms");
            continue;
        }
        r.absorb(validate_functor(x.hom.at({j->src, k->src}), x.hom.at({j->tgt, k->tgt}), fun, caps),
                 "transition(" + jk.first + "," + jk.second + ")");
    }

    // unit objects
    for (const Id& b : x.base.objects) {
        auto it = x.unit.find(b);
        if (it == x.unit.end())
            r.structural_error("NON_TOTAL_TABLE", {b}, "unit missing for object " + b);
        else if (!x.hom.at({b, b}).has_object(it->second))
            r.structural_error("DANGLING_REFERENCE", {b, it->second}, "unit of " + b + " is not an object of hom(" + b + "," + b + ")");
    }

    // circ tables: defined exactly on matching pairs
    for (const auto& [key, val] : x.circ_obj) {
        auto g = hidx.obj_home.find(key.first);
        auto f = hidx.obj_home.find(key.second);
        if (g == hidx.obj_home.end() || f == hidx.obj_home.end()) {
            r.structural_error("DANGLING_REFERENCE", {key.first, key.second}, "circ_obj entry references unknown object");
            continue;
        }
        if (f->second.second != g->second.first) {
            r.structural_error("NON_COMPOSABLE_ENTRY", {key.first, key.second}, "circ_obj on mismatched homs");
            continue;
        }
        auto v = hidx.obj_home.find(val);
        if (v == hidx.obj_home.end() || v->second != IdPair{f->second.first, g->second.second})
            r.violation("CIRC_SHAPE", {key.first, key.second, val}, "g∘f lands in the wrong hom category");
    }
    for (const auto& [abf, catf] : x.hom)
        for (const auto& [abg, catg] : x.hom) {
            if (abf.second != abg.first) continue;
            for (const Id& f : catf.objects)
                for (const Id& g : catg.objects)
                    if (!x.circ_obj.count({g, f}))
                        r.structural_error("NON_TOTAL_TABLE", {g, f}, "circ_obj missing (" + g + "," + f + ")");
            for (const Morphism& a : catf.morphisms)
                for (const Morphism& b : catg.morphisms)
                    if (!x.circ_mor.count({b.id, a.id}))
                        r.structural_error("NON_TOTAL_TABLE", {b.id, a.id}, "circ_mor missing (" + b.id + "," + a.id + ")");
        }
    for (const auto& [key, val] : x.circ_mor) {
        auto b = hidx.mor_home.find(key.first);
        auto a = hidx.mor_home.find(key.second);
        if (b == hidx.mor_home.end() || a == hidx.mor_home.end()) {
            r.structural_error("DANGLING_REFERENCE", {key.first, key.second}, "circ_mor entry references unknown morphism");
            continue;
        }
        if (a->second.second != b->second.first) {
            r.structural_error("NON_COMPOSABLE_ENTRY", {key.first, key.second}, "circ_mor on mismatched homs");
            continue;
        }
        auto v = hidx.mor_home.find(val);
        if (v == hidx.mor_home.end() || v->second != IdPair{a->second.first, b->second.second}) {
            r.violation("CIRC_SHAPE", {key.first, key.second, val}, "b∘a lands in the wrong hom category");
            continue;
        }
        // endpoints: (b∘a): (g∘f) -> (g'∘f')
        const FinCategory& catf = x.hom.at(a->second);
        const FinCategory& catg = x.hom.at(b->second);
        const FinCategory& catv = x.hom.at(v->second);
        const Morphism* ma = catf.morphism(key.second);
        const Morphism* mb = catg.morphism(key.first);
        const Morphism* mv = catv.morphism(val);
        auto s = x.circ_obj.find({mb->src, ma->src});
        auto t = x.circ_obj.find({mb->tgt, ma->tgt});
        if (s != x.circ_obj.end() && t != x.circ_obj.end() &&
            (mv->src != s->second || mv->tgt != t->second))
            r.violation("CIRC_SHAPE", {key.first, key.second, val}, "b∘a has the wrong endpoints");
    }
    if (!r.well_formed()) return r;

    auto tr = [&](const Id& j, const Id& k) -> const FunctorData& { return x.transition.at({j, k}); };

    // X is a functor on I^2
    for (const Id& a : x.base.objects)
        for (const Id& b : x.base.objects) {
            const FunctorData& f = tr(x.base.identity.at(a), x.base.identity.at(b));
            for (const auto& [o, io] : f.obj_map)
                if (o != io) r.violation("X_FUNCTOR_ID", {a, b, o}, "X_{1,1} moves object " + o);
            for (const auto& [m, im] : f.mor_map)
                if (m != im) r.violation("X_FUNCTOR_ID", {a, b, m}, "X_{1,1} moves morphism " + m);
        }
    for (const Morphism& j : x.base.morphisms)
        for (const Morphism& j2 : x.base.morphisms) {
            if (j.tgt != j2.src) continue;
            Id jj = cat_then(x.base, j.id, j2.id);
            for (const Morphism& k : x.base.morphisms)
                for (const Morphism& k2 : x.base.morphisms) {
                    if (k.tgt != k2.src) continue;
                    Id kk = cat_then(x.base, k.id, k2.id);
                    const FunctorData& lhs = tr(jj, kk);
                    const FunctorData& f1 = tr(j.id, k.id);
                    const FunctorData& f2 = tr(j2.id, k2.id);
                    for (const auto& [o, io] : f1.obj_map)
                        if (lhs.obj_map.at(o) != f2.obj_map.at(io)) {
                            r.violation("X_FUNCTOR_COMP", {j.id, k.id, j2.id, k2.id, o},
                                        "X is not functorial on objects at " + o);
                        }
                    for (const auto& [m, im] : f1.mor_map)
                        if (lhs.mor_map.at(m) != f2.mor_map.at(im))
                            r.violation("X_FUNCTOR_COMP", {j.id, k.id, j2.id, k2.id, m},
                                        "X is not functorial on morphisms at " + m);
                }
        }

    // circ is a functor (preserves hom identities and hom composition)
    for (const auto& [abf, catf] : x.hom)
        for (const auto& [abg, catg] : x.hom) {
            if (abf.second != abg.first) continue;
            for (const Id& f : catf.objects)
                for (const Id& g : catg.objects) {
                    Id gf = x.circ_obj.at({g, f});
                    const FinCategory& cat_gf = x.hom.at({abf.first, abg.second});
                    if (x.circ_mor.at({catg.identity.at(g), catf.identity.at(f)}) != cat_gf.identity.at(gf))
                        r.violation("CIRC_FUNCTOR", {g, f}, "i_g ∘ i_f != i_{g∘f}");
                }
            for (const auto& [keyf, a21] : catf.comp)
                for (const auto& [keyg, b21] : catg.comp) {
                    // keyf = (a2, a1) with a1 first; keyg = (b2, b1)
                    Id lhs = x.circ_mor.at({b21, a21});
                    Id c1 = x.circ_mor.at({keyg.second, keyf.second});
                    Id c2 = x.circ_mor.at({keyg.first, keyf.first});
                    const FinCategory& cat_gf = x.hom.at({abf.first, abg.second});
                    auto it = cat_gf.comp.find({c2, c1});
                    if (it != cat_gf.comp.end() && it->second != lhs)
                        r.violation("CIRC_FUNCTOR", {keyg.first, keyf.first, keyg.second, keyf.second},
                                    "circ does not preserve vertical composition");
                }
        }

    // strict 2-naturality of circ
    for (const Morphism& j : x.base.morphisms)
        for (const Morphism& k : x.base.morphisms)
            for (const Morphism& l : x.base.morphisms) {
                const FinCategory& catf = x.hom.at({j.src, k.src});
                const FinCategory& catg = x.hom.at({k.src, l.src});
                const FunctorData& tjk = tr(j.id, k.id);
                const FunctorData& tkl = tr(k.id, l.id);
                const FunctorData& tjl = tr(j.id, l.id);
                for (const Id& f : catf.objects)
                    for (const Id& g : catg.objects) {
                        Id lhs = tjl.obj_map.at(x.circ_obj.at({g, f}));
                        Id rhs = x.circ_obj.at({tkl.obj_map.at(g), tjk.obj_map.at(f)});
                        if (lhs != rhs)
                            r.violation("TWO_NATURALITY", {j.id, k.id, l.id, g, f},
                                        "X_{j,l}(g∘f) != X_{k,l}(g)∘X_{j,k}(f)");
                    }
                for (const Morphism& a : catf.morphisms)
                    for (const Morphism& b : catg.morphisms) {
                        Id lhs = tjl.mor_map.at(x.circ_mor.at({b.id, a.id}));
                        Id rhs = x.circ_mor.at({tkl.mor_map.at(b.id), tjk.mor_map.at(a.id)});
                        if (lhs != rhs)
                            r.violation("TWO_NATURALITY", {j.id, k.id, l.id, b.id, a.id},
                                        "naturality of circ fails on morphisms");
                    }
            }

    // eta naturality
    for (const Morphism& k : x.base.morphisms) {
        const FunctorData& t = tr(k.id, k.id);
        if (t.obj_map.at(x.unit.at(k.src)) != x.unit.at(k.tgt))
            r.violation("ETA_NATURALITY", {k.id}, "X_{k,k}(1) != 1 at " + k.id);
        const FinCategory& hs = x.hom.at({k.src, k.src});
        const FinCategory& ht = x.hom.at({k.tgt, k.tgt});
        if (t.mor_map.at(hs.identity.at(x.unit.at(k.src))) != ht.identity.at(x.unit.at(k.tgt)))
            r.violation("ETA_NATURALITY", {k.id}, "X_{k,k}(i_1) != i_1 at " + k.id);
    }

    // associativity of circ
    if (check_assoc)
    for (const auto& [abf, catf] : x.hom)
        for (const auto& [abg, catg] : x.hom) {
            if (abf.second != abg.first) continue;
            for (const auto& [abh, cath] : x.hom) {
                if (abg.second != abh.first) continue;
                for (const Id& f : catf.objects)
                    for (const Id& g : catg.objects)
                        for (const Id& h : cath.objects) {
                            Id lhs = x.circ_obj.at({h, x.circ_obj.at({g, f})});
                            Id rhs = x.circ_obj.at({x.circ_obj.at({h, g}), f});
                            if (lhs != rhs)
                                r.violation("ASSOC_CIRC", {h, g, f}, "h∘(g∘f) != (h∘g)∘f");
                        }
                for (const Morphism& a : catf.morphisms)
                    for (const Morphism& b : catg.morphisms)
                        for (const Morphism& cmor : cath.morphisms) {
                            Id lhs = x.circ_mor.at({cmor.id, x.circ_mor.at({b.id, a.id})});
                            Id rhs = x.circ_mor.at({x.circ_mor.at({cmor.id, b.id}), a.id});
                            if (lhs != rhs)
                                r.violation("ASSOC_CIRC", {cmor.id, b.id, a.id},
                                            "associativity of circ fails on morphisms");
                        }
            }
        }

    // unit triangles
    for (const auto& [ab, cat] : x.hom) {
        const Id& ua = x.unit.at(ab.first);
        const Id& ub = x.unit.at(ab.second);
        const FinCategory& ha = x.hom.at({ab.first, ab.first});
        const FinCategory& hb = x.hom.at({ab.second, ab.second});
        for (const Id& f : cat.objects) {
            if (x.circ_obj.at({ub, f}) != f)
                r.violation("UNIT_TRIANGLE", {f}, "1∘f != f at " + f);
            if (x.circ_obj.at({f, ua}) != f)
                r.violation("UNIT_TRIANGLE", {f}, "f∘1 != f at " + f);
        }
        for (const Morphism& m : cat.morphisms) {
            if (x.circ_mor.at({hb.identity.at(ub), m.id}) != m.id)
                r.violation("UNIT_TRIANGLE", {m.id}, "i_1∘a != a at " + m.id);
            if (x.circ_mor.at({m.id, ha.identity.at(ua)}) != m.id)
                r.violation("UNIT_TRIANGLE", {m.id}, "a∘i_1 != a at " + m.id);
        }
    }
    r.sort();
    return r;
}

ValidationReport validate_algebra_morphism(const ICatAlgebra& x, const ICatAlgebra& y,
                                           const AlgebraMorphism& f, const Caps& caps) {
    ValidationReport r;
    for (const Id& a : x.base.objects)
        for (const Id& b : x.base.objects)
            if (!f.comps.count({a, b}))
                r.structural_error("NON_TOTAL_TABLE", {a, b}, "component functor missing at (" + a + "," + b + ")");
    if (!r.well_formed()) return r;
    for (const auto& [ab, fun] : f.comps)
        r.absorb(validate_functor(x.hom.at(ab), y.hom.at(ab), fun, caps),
                 "component (" + ab.first + "," + ab.second + ")");
    if (!r.well_formed()) return r;

    for (const Morphism& j : x.base.morphisms)
        for (const Morphism& k : x.base.morphisms) {
            const FunctorData& src_t = x.transition.at({j.id, k.id});
            const FunctorData& tgt_t = y.transition.at({j.id, k.id});
            const FunctorData& f_src = f.comps.at({j.src, k.src});
            const FunctorData& f_tgt = f.comps.at({j.tgt, k.tgt});
            for (const auto& [o, io] : src_t.obj_map)
                if (f_tgt.obj_map.at(io) != tgt_t.obj_map.at(f_src.obj_map.at(o)))
                    r.violation("MOR_TWO_NATURAL", {j.id, k.id, o}, "2-naturality fails on object " + o);
            for (const auto& [m, im] : src_t.mor_map)
                if (f_tgt.mor_map.at(im) != tgt_t.mor_map.at(f_src.mor_map.at(m)))
                    r.violation("MOR_TWO_NATURAL", {j.id, k.id, m}, "2-naturality fails on morphism " + m);
        }
    for (const auto& [key, gf] : x.circ_obj) {
        const IdPair* hg = x.object_home(key.first);
        const IdPair* hf = x.object_home(key.second);
        const IdPair* hgf = x.object_home(gf);
        if (!hg || !hf || !hgf) continue;
        Id lhs = f.comps.at(*hgf).obj_map.at(gf);
        Id rhs = y.circ_obj.at({f.comps.at(*hg).obj_map.at(key.first), f.comps.at(*hf).obj_map.at(key.second)});
        if (lhs != rhs) r.violation("MOR_PRESERVES_CIRC", {key.first, key.second}, "F(g∘f) != F(g)∘F(f)");
    }
    for (const auto& [key, ba] : x.circ_mor) {
        const IdPair* hb = x.morphism_home(key.first);
        const IdPair* ha = x.morphism_home(key.second);
        const IdPair* hba = x.morphism_home(ba);
        if (!hb || !ha || !hba) continue;
        Id lhs = f.comps.at(*hba).mor_map.at(ba);
        Id rhs = y.circ_mor.at({f.comps.at(*hb).mor_map.at(key.first), f.comps.at(*ha).mor_map.at(key.second)});
        if (lhs != rhs) r.violation("MOR_PRESERVES_CIRC", {key.first, key.second}, "F(b∘a) != F(b)∘F(a)");
    }
    for (const Id& b : x.base.objects) {
        if (f.comps.at({b, b}).obj_map.at(x.unit.at(b)) != y.unit.at(b))
            r.violation("MOR_PRESERVES_UNIT", {b}, "F(1_" + b + ") != 1_" + b);
        const FinCategory& hx = x.hom.at({b, b});
        const FinCategory& hy = y.hom.at({b, b});
        if (f.comps.at({b, b}).mor_map.at(hx.identity.at(x.unit.at(b))) != hy.identity.at(y.unit.at(b)))
            r.violation("MOR_PRESERVES_UNIT", {b}, "F(i_1) != i_1 at " + b);
    }
    r.sort();
    return r;
}

ValidationReport validate_algebra_two_cell(const ICatAlgebra& x, const ICatAlgebra& y,
                                           const AlgebraMorphism& f, const AlgebraMorphism& g,
                                           const AlgebraTwoCell& sigma, const Caps& caps) {
    ValidationReport r;
    for (const Id& a : x.base.objects)
        for (const Id& b : x.base.objects)
            if (!sigma.comps.count({a, b}))
                r.structural_error("NON_TOTAL_TABLE", {a, b}, "component missing at (" + a + "," + b + ")");
    if (!r.well_formed()) return r;
    for (const auto& [ab, nt] : sigma.comps)
        r.absorb(validate_nat_transform(x.hom.at(ab), y.hom.at(ab), f.comps.at(ab), g.comps.at(ab), nt, caps),
                 "component (" + ab.first + "," + ab.second + ")");
    if (!r.well_formed()) return r;

    auto comp_at = [&](const IdPair& ab, const Id& obj) { return sigma.comps.at(ab).components.at(obj); };

    for (const Morphism& j : x.base.morphisms)
        for (const Morphism& k : x.base.morphisms) {
            const FunctorData& xt = x.transition.at({j.id, k.id});
            const FunctorData& yt = y.transition.at({j.id, k.id});
            IdPair src_ab{j.src, k.src};
            IdPair tgt_ab{j.tgt, k.tgt};
            for (const Id& obj : x.hom.at(src_ab).objects) {
                if (yt.mor_map.at(comp_at(src_ab, obj)) != comp_at(tgt_ab, xt.obj_map.at(obj)))
                    r.violation("MODIFICATION", {j.id, k.id, obj},
                                "Y_{j,k}(sigma^f) != sigma^{X_{j,k}(f)} at f=" + obj);
            }
        }
    for (const auto& [key, gf] : x.circ_obj) {
        const IdPair* hg = x.object_home(key.first);
        const IdPair* hf = x.object_home(key.second);
        const IdPair* hgf = x.object_home(gf);
        if (!hg || !hf || !hgf) continue;
        Id lhs = y.circ_mor.at({comp_at(*hg, key.first), comp_at(*hf, key.second)});
        if (lhs != comp_at(*hgf, gf))
            r.violation("CELL_COMPOSITION", {key.first, key.second}, "sigma^g ∘ sigma^f != sigma^{g∘f}");
    }
    for (const Id& a : x.base.objects) {
        const FinCategory& hy = y.hom.at({a, a});
        if (comp_at({a, a}, x.unit.at(a)) != hy.identity.at(y.unit.at(a)))
            r.violation("CELL_UNIT", {a}, "sigma^{1_" + a + "} != i_{1_" + a + "}");
    }
    r.sort();
    return r;
}

ValidationReport validate_two_functor_under_i(const TwoFunctorUnderI& z, const Caps& caps) {
    ValidationReport r;
    r.absorb(validate_category(z.base, caps), "base category I");
    r.absorb(validate_two_category(z.target, caps), "target 2-category");
    std::set<Id> bo(z.base.objects.begin(), z.base.objects.end());
    std::set<Id> to(z.target.objects.begin(), z.target.objects.end());
    if (bo != to) r.structural_error("UNDER_I_OBJECTS", {}, "Obj C != Obj I");
    for (const Morphism& j : z.base.morphisms)
        if (!z.p.count(j.id)) r.structural_error("NON_TOTAL_TABLE", {j.id}, "P missing " + j.id);
    if (!r.well_formed()) return r;

    for (const Morphism& j : z.base.morphisms) {
        const Morphism* c = z.target.one_cell(z.p.at(j.id));
        if (!c) {
            r.structural_error("DANGLING_REFERENCE", {j.id, z.p.at(j.id)}, "P value unknown");
            continue;
        }
        if (c->src != j.src || c->tgt != j.tgt)
            r.violation("P_ENDPOINTS", {j.id}, "P(" + j.id + ") is not identity-on-objects");
    }
    if (!r.well_formed()) return r;
    for (const auto& [a, j] : z.base.identity)
        if (z.p.at(j) != z.target.id_one.at(a))
            r.violation("P_UNIT", {a}, "P(1_" + a + ") != 1^h_" + a);
    for (const auto& [key, kj] : z.base.comp) {
        auto it = z.target.hcomp_one.find({z.p.at(key.first), z.p.at(key.second)});
        if (it != z.target.hcomp_one.end() && it->second != z.p.at(kj))
            r.violation("P_COMPOSITION", {key.first, key.second}, "P does not preserve composition");
    }
    r.sort();
    return r;
}

// ---------------------------------------------------------------------------
// operations
// ---------------------------------------------------------------------------

std::optional<std::map<Id, Id>> groupoid_inverses(const FinCategory& c) {
    std::map<Id, Id> inv;
    for (const Morphism& f : c.morphisms) {
        bool found = false;
        for (const Morphism& g : c.morphisms) {
            if (g.src != f.tgt || g.tgt != f.src) continue;
            auto l = c.comp.find({g.id, f.id});
            auto rr = c.comp.find({f.id, g.id});
            if (l == c.comp.end() || rr == c.comp.end()) continue;
            if (l->second == c.identity.at(f.src) && rr->second == c.identity.at(f.tgt)) {
                inv[f.id] = g.id;
                found = true;
                break;
            }
        }
        if (!found) return std::nullopt;
    }
    return inv;
}

TwoFunctorUnderI associated_two_functor(const ICatAlgebra& x) {
    auto inv = groupoid_inverses(x.base);
    if (!inv) throw OpError("NotAGroupoid", "associated_two_functor: base category is not a groupoid");

    TwoFunctorUnderI z;
    z.base = x.base;
    z.target.objects = x.base.objects;
    for (const auto& [ab, cat] : x.hom) {
        for (const Id& o : cat.objects) z.target.one_cells.push_back({o, ab.first, ab.second});
        for (const Morphism& m : cat.morphisms) z.target.two_cells.push_back({m.id, m.src, m.tgt});
        for (const auto& [o, i] : cat.identity) z.target.id_two[o] = i;
        for (const auto& [key, val] : cat.comp) z.target.vcomp_two[key] = val;
    }
    for (const Id& b : x.base.objects) z.target.id_one[b] = x.unit.at(b);
    z.target.hcomp_one = x.circ_obj;
    z.target.hcomp_two = x.circ_mor;

    for (const Morphism& j : x.base.morphisms) {
        Id via_inv = x.transition.at({inv->at(j.id), x.base.identity.at(j.tgt)}).obj_map.at(x.unit.at(j.tgt));
        Id via_fwd = x.transition.at({x.base.identity.at(j.src), j.id}).obj_map.at(x.unit.at(j.src));
        if (via_inv != via_fwd)
            throw OpError("DefiningExpressionsDisagree",
                          "the two defining expressions for P(" + j.id + ") differ (" + via_inv + " vs " + via_fwd + ")");
        z.p[j.id] = via_fwd;
    }
    return z;
}

ModificationEquivReport check_modification_equiv(const ICatAlgebra& x, const ICatAlgebra& y,
                                                 const AlgebraMorphism& f, const AlgebraMorphism& g,
                                                 const AlgebraTwoCell& sigma) {
    // Preconditions: components natural, compatible with circ and unit.
    for (const auto& [ab, nt] : sigma.comps) {
        ValidationReport nr = validate_nat_transform(x.hom.at(ab), y.hom.at(ab), f.comps.at(ab),
                                                     g.comps.at(ab), nt);
        if (!nr.valid())
            throw OpError("PreconditionViolated", "component at (" + ab.first + "," + ab.second + ") is not natural");
    }
    auto comp_at = [&](const IdPair& ab, const Id& obj) { return sigma.comps.at(ab).components.at(obj); };
    for (const auto& [key, gf] : x.circ_obj) {
        const IdPair* hg = x.object_home(key.first);
        const IdPair* hf = x.object_home(key.second);
        const IdPair* hgf = x.object_home(gf);
        Id lhs = y.circ_mor.at({comp_at(*hg, key.first), comp_at(*hf, key.second)});
        if (lhs != comp_at(*hgf, gf))
            throw OpError("PreconditionViolated", "sigma is not compatible with composition");
    }
    for (const Id& a : x.base.objects) {
        const FinCategory& hy = y.hom.at({a, a});
        if (comp_at({a, a}, x.unit.at(a)) != hy.identity.at(y.unit.at(a)))
            throw OpError("PreconditionViolated", "sigma is not compatible with the unit");
    }

    ModificationEquivReport rep;
    rep.cond_i = true;
    for (const Morphism& j : x.base.morphisms)
        for (const Morphism& k : x.base.morphisms) {
            const FunctorData& xt = x.transition.at({j.id, k.id});
            const FunctorData& yt = y.transition.at({j.id, k.id});
            IdPair src_ab{j.src, k.src};
            IdPair tgt_ab{j.tgt, k.tgt};
            for (const Id& obj : x.hom.at(src_ab).objects)
                if (yt.mor_map.at(comp_at(src_ab, obj)) != comp_at(tgt_ab, xt.obj_map.at(obj))) {
                    rep.cond_i = false;
                    rep.witnesses.push_back({"MODIFICATION", {j.id, k.id, obj}, "condition (i) fails"});
                }
        }

    TwoFunctorUnderI zx = associated_two_functor(x);
    TwoFunctorUnderI zy = associated_two_functor(y);
    rep.cond_ii = true;
    for (const Morphism& j : x.base.morphisms) {
        IdPair ac{j.src, j.tgt};
        Id pj = zx.p.at(j.id);
        Id ppj = zy.p.at(j.id);
        if (comp_at(ac, pj) != y.hom.at(ac).identity.at(ppj)) {
            rep.cond_ii = false;
            rep.witnesses.push_back({"UNDER_P", {j.id}, "condition (ii) fails at " + j.id});
        }
    }
    return rep;
}

TwoFunctorUnderI functor_L(const DoubleCategory& d, const Folding& f) {
    if (!validate_folding(d, f).valid()) throw OpError("InvalidInput", "functor_L: folding invalid");
    TwoFunctorUnderI z;
    z.base.objects = d.objects;
    z.base.morphisms = d.vmor;
    z.base.identity = d.v_id_mor;
    for (const auto& [key, val] : d.vcomp_mor) z.base.comp[{key.second, key.first}] = val;
    z.target = horizontal_two_category(d);
    z.p = f.holonomy.bar;
    return z;
}

Id generalized_quintet_square_id(const FinCategory& base, const Id& f, const Id& j, const Id& k,
                                 const Id& g, const Id& cell) {
    const Morphism* jm = base.morphism(j);
    const Morphism* km = base.morphism(k);
    bool trivial = (j == base.identity.at(jm->src)) && (k == base.identity.at(km->src));
    if (trivial) return cell;
    (void)g;
    return "q(" + f + "," + j + "," + k + "," + g + "," + cell + ")";
}

FoldedDouble functor_M(const TwoFunctorUnderI& z) {
    if (!validate_two_functor_under_i(z).valid()) throw OpError("InvalidInput", "functor_M: input invalid");
    FoldedDouble out;
    DoubleCategory& d = out.d;
    d.objects = z.base.objects;
    d.vmor = z.base.morphisms;
    d.v_id_mor = z.base.identity;
    for (const auto& [key, val] : z.base.comp) d.vcomp_mor[{key.second, key.first}] = val;
    d.hmor = z.target.one_cells;
    d.h_id_mor = z.target.id_one;
    for (const auto& [key, val] : z.target.hcomp_one) d.hcomp_mor[{key.second, key.first}] = val;

    const TwoCategory& c = z.target;
    auto pj = [&](const Id& j) { return z.p.at(j); };

    // squares: cells P(k)∘f => g∘P(j)
    std::map<std::vector<Id>, Id> by_data;
    std::map<Id, Id> cell_of;
    std::map<Id, std::vector<const Morphism*>> hmor_by_src;
    for (const Morphism& m : d.hmor) hmor_by_src[m.src].push_back(&m);
    for (const Morphism& j : d.vmor)
        for (const Morphism& k : d.vmor)
            for (const Morphism* f : hmor_by_src.count(j.src) ? hmor_by_src.at(j.src) : std::vector<const Morphism*>{}) {
                if (f->tgt != k.src) continue;
                Id kf = two_then_one(c, f->id, pj(k.id));
                for (const Morphism* g : hmor_by_src.count(j.tgt) ? hmor_by_src.at(j.tgt) : std::vector<const Morphism*>{}) {
                    if (g->tgt != k.tgt) continue;
                    Id gj = two_then_one(c, pj(j.id), g->id);
                    for (const TwoCellRec& cell : c.two_cells) {
                        if (cell.src != kf || cell.tgt != gj) continue;
                        Id id = generalized_quintet_square_id(z.base, f->id, j.id, k.id, g->id, cell.id);
                        d.squares.push_back({id, f->id, g->id, j.id, k.id});
                        by_data[{f->id, j.id, k.id, g->id, cell.id}] = id;
                        cell_of[id] = cell.id;
                    }
                }
            }

    for (const SquareRec& a : d.squares)
        for (const SquareRec& b : d.squares) {
            if (a.right == b.left) {
                const Morphism* at = z.target.one_cell(a.top);
                const Morphism* bt = z.target.one_cell(b.top);
                if (at->tgt == bt->src) {
                    Id e = two_then_v(c, two_then_h(c, c.id_two.at(a.top), cell_of.at(b.id)),
                                      two_then_h(c, cell_of.at(a.id), c.id_two.at(b.bottom)));
                    Id top = two_then_one(c, a.top, b.top);
                    Id bot = two_then_one(c, a.bottom, b.bottom);
                    d.hcomp_sq[{a.id, b.id}] = by_data.at({top, a.left, b.right, bot, e});
                }
            }
            if (a.bottom == b.top) {
                const Morphism* al = z.base.morphism(a.left);
                const Morphism* bl = z.base.morphism(b.left);
                if (al->tgt == bl->src) {
                    Id e = two_then_v(c, two_then_h(c, cell_of.at(a.id), c.id_two.at(pj(b.right))),
                                      two_then_h(c, c.id_two.at(pj(a.left)), cell_of.at(b.id)));
                    Id left = cat_then(z.base, a.left, b.left);
                    Id right = cat_then(z.base, a.right, b.right);
                    d.vcomp_sq[{a.id, b.id}] = by_data.at({a.top, left, right, b.bottom, e});
                }
            }
        }
    for (const Morphism& j : d.vmor)
        d.h_id_sq[j.id] = by_data.at({c.id_one.at(j.src), j.id, j.id, c.id_one.at(j.tgt), c.id_two.at(pj(j.id))});
    for (const Morphism& f : d.hmor)
        d.v_id_sq[f.id] = by_data.at({f.id, d.v_id_mor.at(f.src), d.v_id_mor.at(f.tgt), f.id, c.id_two.at(f.id)});

    out.folding.holonomy.bar = z.p;
    for (const auto& [id, cell] : cell_of) out.folding.lambda[id] = cell;
    return out;
}

FoldedDouble functor_J(const ICatAlgebra& x) {
    if (!validate_icat_algebra(x).valid()) throw OpError("InvalidInput", "functor_J: algebra invalid");
    auto inv = groupoid_inverses(x.base);
    if (!inv) throw OpError("NotAGroupoid", "functor_J: base category is not a groupoid");

    FoldedDouble out;
    DoubleCategory& d = out.d;
    d.objects = x.base.objects;
    d.vmor = x.base.morphisms;
    d.v_id_mor = x.base.identity;
    for (const auto& [key, val] : x.base.comp) d.vcomp_mor[{key.second, key.first}] = val;

    // holonomy jbar computed from the transitions (same as P)
    std::map<Id, Id> bar;
    for (const Morphism& j : x.base.morphisms) {
        Id via_inv = x.transition.at({inv->at(j.id), x.base.identity.at(j.tgt)}).obj_map.at(x.unit.at(j.tgt));
        Id via_fwd = x.transition.at({x.base.identity.at(j.src), j.id}).obj_map.at(x.unit.at(j.src));
        if (via_inv != via_fwd)
            throw OpError("DefiningExpressionsDisagree", "holonomy expressions differ at " + j.id);
        bar[j.id] = via_fwd;
    }

    for (const auto& [ab, cat] : x.hom)
        for (const Id& o : cat.objects) d.hmor.push_back({o, ab.first, ab.second});
    for (const Id& a : x.base.objects) d.h_id_mor[a] = x.unit.at(a);
    for (const auto& [key, val] : x.circ_obj) d.hcomp_mor[{key.second, key.first}] = val;

    std::map<std::vector<Id>, Id> by_data;
    std::map<Id, Id> cell_of;
    for (const Morphism& j : x.base.morphisms)
        for (const Morphism& k : x.base.morphisms) {
            const FinCategory& homf = x.hom.at({j.src, k.src});
            const FinCategory& homg = x.hom.at({j.tgt, k.tgt});
            const FinCategory& homAD = x.hom.at({j.src, k.tgt});
            for (const Id& f : homf.objects) {
                Id kf = x.circ_obj.at({bar.at(k.id), f});
                for (const Id& g : homg.objects) {
                    Id gj = x.circ_obj.at({g, bar.at(j.id)});
                    for (const Morphism& cell : homAD.morphisms) {
                        if (cell.src != kf || cell.tgt != gj) continue;
                        Id id = generalized_quintet_square_id(x.base, f, j.id, k.id, g, cell.id);
                        d.squares.push_back({id, f, g, j.id, k.id});
                        by_data[{f, j.id, k.id, g, cell.id}] = id;
                        cell_of[id] = cell.id;
                    }
                }
            }
        }

    auto hom_of_obj = [&](const Id& o) { return *x.object_home(o); };
    auto hom_identity = [&](const Id& o) {
        const FinCategory& h = x.hom.at(hom_of_obj(o));
        return h.identity.at(o);
    };
    auto vcomp_in_hom = [&](const Id& first, const Id& then) {
        const IdPair* home = x.morphism_home(first);
        return cat_then(x.hom.at(*home), first, then);
    };

    for (const SquareRec& a : d.squares)
        for (const SquareRec& b : d.squares) {
            if (a.right == b.left) {
                const IdPair ha = hom_of_obj(a.top);
                const IdPair hb = hom_of_obj(b.top);
                if (ha.second == hb.first) {
                    Id first = x.circ_mor.at({cell_of.at(b.id), hom_identity(a.top)});
                    Id then = x.circ_mor.at({hom_identity(b.bottom), cell_of.at(a.id)});
                    Id e = vcomp_in_hom(first, then);
                    Id top = x.circ_obj.at({b.top, a.top});
                    Id bot = x.circ_obj.at({b.bottom, a.bottom});
                    d.hcomp_sq[{a.id, b.id}] = by_data.at({top, a.left, b.right, bot, e});
                }
            }
            if (a.bottom == b.top) {
                const Morphism* al = x.base.morphism(a.left);
                const Morphism* bl = x.base.morphism(b.left);
                if (al->tgt == bl->src) {
                    Id first = x.circ_mor.at({hom_identity(bar.at(b.right)), cell_of.at(a.id)});
                    Id then = x.circ_mor.at({cell_of.at(b.id), hom_identity(bar.at(a.left))});
                    Id e = vcomp_in_hom(first, then);
                    Id left = cat_then(x.base, a.left, b.left);
                    Id right = cat_then(x.base, a.right, b.right);
                    d.vcomp_sq[{a.id, b.id}] = by_data.at({a.top, left, right, b.bottom, e});
                }
            }
        }
    for (const Morphism& j : x.base.morphisms)
        d.h_id_sq[j.id] = by_data.at({x.unit.at(j.src), j.id, j.id, x.unit.at(j.tgt), hom_identity(bar.at(j.id))});
    for (const Morphism& hm : d.hmor)
        d.v_id_sq[hm.id] =
            by_data.at({hm.id, x.base.identity.at(hm.src), x.base.identity.at(hm.tgt), hm.id, hom_identity(hm.id)});

    out.folding.holonomy.bar = bar;
    for (const auto& [id, cell] : cell_of) out.folding.lambda[id] = cell;
    return out;
}

TwoFunctorUnderI functor_K(const ICatAlgebra& x) { return associated_two_functor(x); }

ICatAlgebra reconstruct_X(const TwoFunctorUnderI& z) {
    if (!validate_two_functor_under_i(z).valid()) throw OpError("InvalidInput", "reconstruct_X: input invalid");
    auto inv = groupoid_inverses(z.base);
    if (!inv) throw OpError("NotAGroupoid", "reconstruct_X: base category is not a groupoid");

    ICatAlgebra x;
    x.base = z.base;
    for (const Id& a : z.base.objects)
        for (const Id& b : z.base.objects) x.hom[{a, b}] = hom_category(z.target, a, b);
    x.circ_obj = z.target.hcomp_one;
    x.circ_mor = z.target.hcomp_two;
    for (const Id& b : z.base.objects) x.unit[b] = z.target.id_one.at(b);

    for (const Morphism& j : z.base.morphisms)
        for (const Morphism& k : z.base.morphisms) {
            FunctorData t;
            Id pjinv = z.p.at(inv->at(j.id));
            Id pk = z.p.at(k.id);
            const FinCategory& src = x.hom.at({j.src, k.src});
            for (const Id& f : src.objects)
                t.obj_map[f] = two_then_one(z.target, two_then_one(z.target, pjinv, f), pk);
            for (const Morphism& m : src.morphisms)
                t.mor_map[m.id] = two_then_h(z.target,
                                             two_then_h(z.target, z.target.id_two.at(pjinv), m.id),
                                             z.target.id_two.at(pk));
            x.transition[{j.id, k.id}] = std::move(t);
        }
    return x;
}

DoubleFunctorData mld_witness(const DoubleCategory& d, const Folding& f) {
    DoubleFunctorData w;
    for (const Id& a : d.objects) w.obj_map[a] = a;
    for (const Morphism& m : d.hmor) w.hmor_map[m.id] = m.id;
    for (const Morphism& m : d.vmor) w.vmor_map[m.id] = m.id;
    // a square alpha maps to the M-square over the same boundary whose cell is
    // lambda(alpha); reconstruct that id with the M id scheme.
    FinCategory vbase;
    vbase.objects = d.objects;
    vbase.morphisms = d.vmor;
    vbase.identity = d.v_id_mor;
    for (const auto& [key, val] : d.vcomp_mor) vbase.comp[{key.second, key.first}] = val;
    for (const SquareRec& s : d.squares)
        w.sq_map[s.id] = generalized_quintet_square_id(vbase, s.top, s.left, s.right, s.bottom, f.lambda.at(s.id));
    return w;
}

// ---------------------------------------------------------------------------
// canonical forms
// ---------------------------------------------------------------------------

FinCategory canonical(FinCategory c) {
    std::sort(c.objects.begin(), c.objects.end());
    std::sort(c.morphisms.begin(), c.morphisms.end(),
              [](const Morphism& a, const Morphism& b) { return a.id < b.id; });
    return c;
}

TwoCategory canonical(TwoCategory c) {
    std::sort(c.objects.begin(), c.objects.end());
    std::sort(c.one_cells.begin(), c.one_cells.end(),
              [](const Morphism& a, const Morphism& b) { return a.id < b.id; });
    std::sort(c.two_cells.begin(), c.two_cells.end(),
              [](const TwoCellRec& a, const TwoCellRec& b) { return a.id < b.id; });
    return c;
}

DoubleCategory canonical(DoubleCategory d) {
    std::sort(d.objects.begin(), d.objects.end());
    auto mless = [](const Morphism& a, const Morphism& b) { return a.id < b.id; };
    std::sort(d.hmor.begin(), d.hmor.end(), mless);
    std::sort(d.vmor.begin(), d.vmor.end(), mless);
    std::sort(d.squares.begin(), d.squares.end(),
              [](const SquareRec& a, const SquareRec& b) { return a.id < b.id; });
    return d;
}

TwoFunctorUnderI canonical(TwoFunctorUnderI z) {
    z.base = canonical(std::move(z.base));
    z.target = canonical(std::move(z.target));
    return z;
}

}  // namespace foldbox
