#include "foldbox/xmod.hpp"

#include <algorithm>
#include <set>

namespace foldbox {

namespace {

Id cell_id(const Id& a, const Id& g) { return "2c(" + a + "|" + g + ")"; }

void check_hom_total(ValidationReport& r, const std::map<Id, Id>& m, const FinGroup& dom,
                     const FinGroup& cod, const char* what) {
    std::set<Id> codset(cod.elements.begin(), cod.elements.end());
    for (const Id& x : dom.elements)
        if (!m.count(x)) r.structural_error("NON_TOTAL_TABLE", {x}, std::string(what) + " missing " + x);
    for (const auto& [a, b] : m) {
        if (std::find(dom.elements.begin(), dom.elements.end(), a) == dom.elements.end())
            r.structural_error("DANGLING_REFERENCE", {a}, std::string(what) + " key " + a + " unknown");
        else if (!codset.count(b))
            r.structural_error("DANGLING_REFERENCE", {a, b}, std::string(what) + " value " + b + " unknown");
    }
}

void check_hom_axiom(ValidationReport& r, const std::map<Id, Id>& m, const FinGroup& dom,
                     const FinGroup& cod, const char* tag) {
    for (const Id& a : dom.elements)
        for (const Id& b : dom.elements)
            if (m.at(dom.times(a, b)) != cod.times(m.at(a), m.at(b)))
                r.violation(tag, {a, b}, std::string(tag) + ": image of product differs at (" + a + "," + b + ")");
}

}  // namespace

Id CrossedModule::act(const Id& g_, const Id& a) const {
    auto it = action.find({g_, a});
    if (it == action.end()) throw OpError("ShapeMismatch", "action undefined at (" + g_ + "," + a + ")");
    return it->second;
}

// ---------------------------------------------------------------------------
// validators
// ---------------------------------------------------------------------------

ValidationReport validate_crossed_module(const CrossedModule& m, const Caps& caps) {
    ValidationReport r;
    r.absorb(validate_group(m.h, caps), "group H");
    r.absorb(validate_group(m.g, caps), "group G");
    if (!r.well_formed()) return r;

    check_hom_total(r, m.boundary, m.h, m.g, "boundary");
    std::set<Id> hset(m.h.elements.begin(), m.h.elements.end());
    std::set<Id> gset(m.g.elements.begin(), m.g.elements.end());
    for (const Id& g : m.g.elements)
        for (const Id& a : m.h.elements)
            if (!m.action.count({g, a}))
                r.structural_error("NON_TOTAL_TABLE", {g, a}, "action missing (" + g + "," + a + ")");
    for (const auto& [key, val] : m.action)
        if (!gset.count(key.first) || !hset.count(key.second) || !hset.count(val))
            r.structural_error("DANGLING_REFERENCE", {key.first, key.second, val}, "action entry references unknown element");
    if (!r.well_formed()) return r;

    check_hom_axiom(r, m.boundary, m.h, m.g, "XM_BOUNDARY_HOM");
    if (m.boundary.at(m.h.unit) != m.g.unit)
        r.violation("XM_BOUNDARY_HOM", {m.h.unit}, "boundary does not preserve the unit");

    for (const Id& a : m.h.elements) {
        if (m.act(m.g.unit, a) != a)
            r.violation("ACTION_UNIT", {a}, "^e a != a at " + a);
    }
    for (const Id& g : m.g.elements) {
        for (const Id& a : m.h.elements)
            for (const Id& b : m.h.elements)
                if (m.act(g, m.h.times(a, b)) != m.h.times(m.act(g, a), m.act(g, b)))
                    r.violation("ACTION_MULT", {g, a, b}, "^g(ab) != ^g a ^g b");
        for (const Id& g2 : m.g.elements)
            for (const Id& a : m.h.elements)
                if (m.act(g, m.act(g2, a)) != m.act(m.g.times(g, g2), a))
                    r.violation("ACTION_COMP", {g, g2, a}, "^g(^g2 a) != ^(g g2) a");
    }
    for (const Id& g : m.g.elements)
        for (const Id& a : m.h.elements) {
            Id lhs = m.boundary.at(m.act(g, a));
            Id rhs = m.g.times(m.g.times(g, m.boundary.at(a)), m.g.inverse(g));
            if (lhs != rhs) r.violation("CM1", {g, a}, "CM1 fails at (" + g + "," + a + ")");
        }
    for (const Id& b : m.h.elements)
        for (const Id& a : m.h.elements) {
            Id lhs = m.act(m.boundary.at(b), a);
            Id rhs = m.h.times(m.h.times(b, a), m.h.inverse(b));
            if (lhs != rhs) r.violation("CM2", {b, a}, "CM2 (Peiffer) fails at (" + b + "," + a + ")");
        }
    r.sort();
    return r;
}

ValidationReport validate_xmod_morphism(const CrossedModule& src, const CrossedModule& tgt,
                                        const XModMorphism& f, const Caps& caps) {
    ValidationReport r;
    (void)caps;
    check_hom_total(r, f.p, src.h, tgt.h, "p");
    check_hom_total(r, f.q, src.g, tgt.g, "q");
    if (!r.well_formed()) return r;
    check_hom_axiom(r, f.p, src.h, tgt.h, "MOR_HOM_P");
    check_hom_axiom(r, f.q, src.g, tgt.g, "MOR_HOM_Q");
    for (const Id& a : src.h.elements)
        if (f.q.at(src.boundary.at(a)) != tgt.boundary.at(f.p.at(a)))
            r.violation("MOR_SQUARE", {a}, "q∂ != ∂'p at " + a);
    for (const Id& g : src.g.elements)
        for (const Id& a : src.h.elements)
            if (f.p.at(src.act(g, a)) != tgt.act(f.q.at(g), f.p.at(a)))
                r.violation("MOR_EQUIVARIANT", {g, a}, "p(^g a) != ^{q g} p(a)");
    r.sort();
    return r;
}

ValidationReport validate_homotopy(const CrossedModule& src, const CrossedModule& tgt,
                                   const XModMorphism& m1, const XModMorphism& m2,
                                   const CrossedHomotopy& nu, const Caps& caps) {
    ValidationReport r;
    (void)caps;
    check_hom_total(r, nu.nu, src.g, tgt.h, "nu");
    if (!r.well_formed()) return r;
    for (const Id& f : src.g.elements) {
        Id lhs = tgt.g.times(tgt.boundary.at(nu.nu.at(f)), m1.q.at(f));
        if (lhs != m2.q.at(f))
            r.violation("HOMOTOPY_BOUNDARY", {f}, "(∂'nu(f)) q1(f) != q2(f) at " + f);
    }
    for (const Id& a : src.h.elements)
        for (const Id& f : src.g.elements) {
            Id g = src.g.times(src.boundary.at(a), f);
            Id lhs = tgt.h.times(m2.p.at(a), nu.nu.at(f));
            Id rhs = tgt.h.times(nu.nu.at(g), m1.p.at(a));
            if (lhs != rhs) r.violation("HOMOTOPY_NATURAL", {a, f}, "p2(a)nu(f) != nu(∂(a)f)p1(a)");
        }
    for (const Id& g : src.g.elements)
        for (const Id& f : src.g.elements) {
            Id lhs = tgt.h.times(nu.nu.at(g), tgt.act(m1.q.at(g), nu.nu.at(f)));
            if (lhs != nu.nu.at(src.g.times(g, f)))
                r.violation("DERIVATION_RULE", {g, f}, "nu(g)·^{q1 g}nu(f) != nu(gf)");
        }
    r.sort();
    return r;
}

ValidationReport validate_two_group(const TwoGroup& t, const Caps& caps) {
    ValidationReport r;
    r.absorb(validate_two_category(t.cat, caps), "underlying 2-category");
    if (t.cat.objects.size() != 1)
        r.violation("TG_ONE_OBJECT", {}, "a 2-group has exactly one object");
    if (!r.well_formed()) return r;

    const Id one = t.cat.id_one.begin()->second;
    for (const Morphism& g : t.cat.one_cells) {
        auto it = t.inv_one.find(g.id);
        if (it == t.inv_one.end()) {
            r.structural_error("NON_TOTAL_TABLE", {g.id}, "inv_one missing " + g.id);
            continue;
        }
        try {
            if (two_then_one(t.cat, g.id, it->second) != one || two_then_one(t.cat, it->second, g.id) != one)
                r.violation("TG_ONECELL_INV", {g.id}, "1-cell inverse law fails at " + g.id);
        } catch (const OpError&) {
            r.violation("TG_ONECELL_INV", {g.id}, "1-cell inverse is not composable at " + g.id);
        }
    }
    for (const TwoCellRec& a : t.cat.two_cells) {
        auto vi = t.vinv_two.find(a.id);
        if (vi == t.vinv_two.end()) {
            r.structural_error("NON_TOTAL_TABLE", {a.id}, "vinv_two missing " + a.id);
        } else {
            try {
                if (two_then_v(t.cat, a.id, vi->second) != t.cat.id_two.at(a.src) ||
                    two_then_v(t.cat, vi->second, a.id) != t.cat.id_two.at(a.tgt))
                    r.violation("TG_VINV", {a.id}, "vertical inverse law fails at " + a.id);
            } catch (const OpError&) {
                r.violation("TG_VINV", {a.id}, "vertical inverse not composable at " + a.id);
            }
        }
        auto hi = t.hinv_two.find(a.id);
        if (hi == t.hinv_two.end()) {
            r.structural_error("NON_TOTAL_TABLE", {a.id}, "hinv_two missing " + a.id);
        } else {
            try {
                Id ione = t.cat.id_two.at(one);
                if (two_then_h(t.cat, a.id, hi->second) != ione || two_then_h(t.cat, hi->second, a.id) != ione)
                    r.violation("TG_HINV", {a.id}, "horizontal inverse law fails at " + a.id);
            } catch (const OpError&) {
                r.violation("TG_HINV", {a.id}, "horizontal inverse not composable at " + a.id);
            }
        }
    }
    r.sort();
    return r;
}

ValidationReport validate_conjugation_two_cell(const CrossedModule& src, const CrossedModule& tgt,
                                               const XModMorphism& m1, const XModMorphism& m2,
                                               const ConjugationTwoCell& w, const Caps& caps) {
    ValidationReport r;
    (void)caps;
    if (std::find(tgt.g.elements.begin(), tgt.g.elements.end(), w.w) == tgt.g.elements.end()) {
        r.structural_error("DANGLING_REFERENCE", {w.w}, "w is not an element of G'");
        return r;
    }
    for (const Id& g : src.g.elements) {
        Id lhs = tgt.g.times(tgt.g.times(w.w, m1.q.at(g)), tgt.g.inverse(w.w));
        if (lhs != m2.q.at(g))
            r.violation("CONJ_Q", {g}, "w q1(g) w^{-1} != q2(g) at " + g);
    }
    for (const Id& a : src.h.elements)
        if (tgt.act(w.w, m1.p.at(a)) != m2.p.at(a))
            r.violation("CONJ_P", {a}, "^w p1(a) != p2(a) at " + a);
    r.sort();
    return r;
}

ValidationReport validate_xmod_under_group(const XModUnderGroup& x, const Caps& caps) {
    ValidationReport r;
    r.absorb(validate_crossed_module(x.xm, caps), "crossed module");
    r.absorb(validate_group(x.i, caps), "group I");
    if (!r.well_formed()) return r;
    check_hom_total(r, x.p, x.i, x.xm.g, "P");
    if (!r.well_formed()) return r;
    check_hom_axiom(r, x.p, x.i, x.xm.g, "P_HOM");
    if (x.p.at(x.i.unit) != x.xm.g.unit)
        r.violation("P_HOM", {x.i.unit}, "P does not preserve the unit");
    r.sort();
    return r;
}

ValidationReport validate_two_group_cell(const CrossedModule& src, const CrossedModule& tgt,
                                         const XModMorphism& m1, const XModMorphism& m2,
                                         const TwoGroupCell& sigma, const Caps& caps) {
    ValidationReport r;
    (void)caps;
    TwoGroupData cs = two_group_from_xmod(src);
    TwoGroupData ct = two_group_from_xmod(tgt);
    auto f1_one = [&](const Id& g) { return m1.q.at(g); };
    auto f2_one = [&](const Id& g) { return m2.q.at(g); };
    auto f1_two = [&](const Id& c) { return cell_id(m1.p.at(cs.cell_h.at(c)), m1.q.at(cs.cell_g.at(c))); };
    auto f2_two = [&](const Id& c) { return cell_id(m2.p.at(cs.cell_h.at(c)), m2.q.at(cs.cell_g.at(c))); };

    for (const Id& g : src.g.elements)
        if (!sigma.comp.count(g))
            r.structural_error("NON_TOTAL_TABLE", {g}, "component missing for " + g);
    if (!r.well_formed()) return r;

    for (const Id& g : src.g.elements) {
        const TwoCellRec* c = ct.tg.cat.two_cell(sigma.comp.at(g));
        if (!c) {
            r.structural_error("DANGLING_REFERENCE", {g, sigma.comp.at(g)}, "component is not a 2-cell");
            continue;
        }
        if (c->src != f1_one(g) || c->tgt != f2_one(g))
            r.violation("VT2G_COMPONENT", {g}, "component at " + g + " has wrong boundary");
    }
    if (!r.well_formed()) return r;

    // naturality over every 2-cell of the source 2-group
    for (const TwoCellRec& gamma : cs.tg.cat.two_cells) {
        Id lhs = two_then_v(ct.tg.cat, f1_two(gamma.id), sigma.comp.at(gamma.tgt));
        Id rhs = two_then_v(ct.tg.cat, sigma.comp.at(gamma.src), f2_two(gamma.id));
        if (lhs != rhs) r.violation("VT2G_NATURAL", {gamma.id}, "naturality fails at " + gamma.id);
    }
    // compatibility with horizontal composition
    for (const Id& g : src.g.elements)
        for (const Id& f : src.g.elements) {
            Id lhs = two_then_h(ct.tg.cat, sigma.comp.at(f), sigma.comp.at(g));
            if (lhs != sigma.comp.at(src.g.times(g, f)))
                r.violation("VT2G_COMPOSITE", {g, f}, "sigma^g ∘ sigma^f != sigma^{gf}");
        }
    if (sigma.comp.at(src.g.unit) != ct.tg.cat.id_two.at(tgt.g.unit))
        r.violation("VT2G_UNIT", {src.g.unit}, "sigma^e != i_e");
    r.sort();
    return r;
}

// ---------------------------------------------------------------------------
// Brown–Spencer constructions
// ---------------------------------------------------------------------------

TwoGroupData two_group_from_xmod(const CrossedModule& m) {
    if (!validate_crossed_module(m).valid())
        throw OpError("InvalidInput", "two_group_from_xmod: crossed module invalid");
    TwoGroupData out;
    TwoCategory& c = out.tg.cat;
    c.objects = {"*"};
    for (const Id& g : m.g.elements) c.one_cells.push_back({g, "*", "*"});
    c.id_one["*"] = m.g.unit;
    for (const auto& [key, val] : m.g.mul) c.hcomp_one[key] = val;  // (b,a) -> b·a = b∘a

    for (const Id& a : m.h.elements)
        for (const Id& g : m.g.elements)
            c.two_cells.push_back({cell_id(a, g), g, m.g.times(m.boundary.at(a), g)});
    for (const Id& g : m.g.elements) c.id_two[g] = cell_id(m.h.unit, g);

    for (const Id& a1 : m.h.elements)
        for (const Id& g1 : m.g.elements) {
            Id first = cell_id(a1, g1);
            Id mid = m.g.times(m.boundary.at(a1), g1);
            for (const Id& a2 : m.h.elements) {
                // vertical: (a2, ∂(a1)g1) after (a1, g1)
                c.vcomp_two[{cell_id(a2, mid), first}] = cell_id(m.h.times(a2, a1), g1);
            }
            // horizontal: (b, gb) ∘ (a1, g1) = (b·^{gb}a1, gb·g1)
            for (const Id& b : m.h.elements)
                for (const Id& gb : m.g.elements)
                    c.hcomp_two[{cell_id(b, gb), first}] =
                        cell_id(m.h.times(b, m.act(gb, a1)), m.g.times(gb, g1));
        }

    for (const Id& g : m.g.elements) out.tg.inv_one[g] = m.g.inverse(g);
    for (const Id& a : m.h.elements)
        for (const Id& g : m.g.elements) {
            Id id = cell_id(a, g);
            out.tg.vinv_two[id] = cell_id(m.h.inverse(a), m.g.times(m.boundary.at(a), g));
            Id ginv = m.g.inverse(g);
            out.tg.hinv_two[id] = cell_id(m.act(ginv, m.h.inverse(a)), ginv);
            out.cell_h[id] = a;
            out.cell_g[id] = g;
        }
    return out;
}

TwoGroup two_group_from_two_category(const TwoCategory& c) {
    if (!validate_two_category(c).valid())
        throw OpError("InvalidInput", "two_group_from_two_category: 2-category invalid");
    if (c.objects.size() != 1) throw OpError("NotADoubleGroup", "not a one-object 2-category");
    TwoGroup t;
    t.cat = c;
    const Id one = c.id_one.begin()->second;
    for (const Morphism& g : c.one_cells) {
        bool found = false;
        for (const Morphism& h : c.one_cells) {
            auto a = c.hcomp_one.find({g.id, h.id});
            auto b = c.hcomp_one.find({h.id, g.id});
            if (a != c.hcomp_one.end() && b != c.hcomp_one.end() && a->second == one && b->second == one) {
                t.inv_one[g.id] = h.id;
                found = true;
                break;
            }
        }
        if (!found) throw OpError("NotADoubleGroup", "1-cell " + g.id + " has no inverse");
    }
    Id ione = c.id_two.at(one);
    for (const TwoCellRec& a : c.two_cells) {
        bool foundv = false, foundh = false;
        for (const TwoCellRec& b : c.two_cells) {
            if (!foundv && b.src == a.tgt && b.tgt == a.src) {
                auto x = c.vcomp_two.find({b.id, a.id});
                auto y = c.vcomp_two.find({a.id, b.id});
                if (x != c.vcomp_two.end() && y != c.vcomp_two.end() &&
                    x->second == c.id_two.at(a.src) && y->second == c.id_two.at(a.tgt)) {
                    t.vinv_two[a.id] = b.id;
                    foundv = true;
                }
            }
            if (!foundh) {
                auto x = c.hcomp_two.find({b.id, a.id});
                auto y = c.hcomp_two.find({a.id, b.id});
                if (x != c.hcomp_two.end() && y != c.hcomp_two.end() && x->second == ione &&
                    y->second == ione) {
                    t.hinv_two[a.id] = b.id;
                    foundh = true;
                }
            }
        }
        if (!foundv) throw OpError("NotADoubleGroup", "2-cell " + a.id + " has no vertical inverse");
        if (!foundh) throw OpError("NotADoubleGroup", "2-cell " + a.id + " has no horizontal inverse");
    }
    return t;
}

CrossedModule xmod_from_two_group(const TwoGroup& t) {
    if (!validate_two_group(t).valid()) throw OpError("InvalidInput", "xmod_from_two_group: 2-group invalid");
    CrossedModule m;
    const TwoCategory& c = t.cat;
    const Id one = c.id_one.begin()->second;

    for (const Morphism& g : c.one_cells) m.g.elements.push_back(g.id);
    m.g.unit = one;
    m.g.mul = c.hcomp_one;
    m.g.inv = t.inv_one;

    for (const TwoCellRec& a : c.two_cells)
        if (a.src == one) m.h.elements.push_back(a.id);
    m.h.unit = c.id_two.at(one);
    for (const Id& a : m.h.elements)
        for (const Id& b : m.h.elements) m.h.mul[{a, b}] = two_then_h(c, b, a);  // a∘b
    for (const Id& a : m.h.elements) m.h.inv[a] = t.hinv_two.at(a);

    for (const Id& a : m.h.elements) m.boundary[a] = c.two_cell(a)->tgt;
    for (const Id& g : m.g.elements)
        for (const Id& a : m.h.elements) {
            Id inner = two_then_h(c, c.id_two.at(t.inv_one.at(g)), a);
            m.action[{g, a}] = two_then_h(c, inner, c.id_two.at(g));
        }
    return m;
}

XModMorphism brown_spencer_unit(const CrossedModule& m) {
    XModMorphism w;
    for (const Id& g : m.g.elements) w.q[g] = g;
    for (const Id& a : m.h.elements) w.p[a] = cell_id(a, m.g.unit);
    return w;
}

// ---------------------------------------------------------------------------
// homotopies vs vertical transformations
// ---------------------------------------------------------------------------

TwoGroupCell nu_to_sigma(const CrossedModule& src, const CrossedModule& tgt,
                         const XModMorphism& m1, const CrossedHomotopy& nu) {
    (void)tgt;
    TwoGroupCell out;
    for (const Id& g : src.g.elements) out.comp[g] = cell_id(nu.nu.at(g), m1.q.at(g));
    return out;
}

CrossedHomotopy sigma_to_nu(const CrossedModule& src, const CrossedModule& tgt,
                            const XModMorphism& m1, const TwoGroupCell& sigma) {
    TwoGroupData ct = two_group_from_xmod(tgt);
    CrossedHomotopy out;
    for (const Id& g : src.g.elements) {
        Id q1g = m1.q.at(g);
        Id inner = two_then_h(ct.tg.cat, ct.tg.cat.id_two.at(tgt.g.inverse(q1g)), sigma.comp.at(g));
        out.nu[g] = ct.cell_h.at(inner);
    }
    return out;
}

CrossedHomotopy compose_homotopy_vertical(const CrossedModule& tgt, const CrossedHomotopy& nu1,
                                          const CrossedHomotopy& nu2) {
    CrossedHomotopy out;
    for (const auto& [f, v1] : nu1.nu) out.nu[f] = tgt.h.times(nu2.nu.at(f), v1);
    return out;
}

XModMorphism compose_xmod_morphism(const XModMorphism& first, const XModMorphism& second) {
    XModMorphism out;
    for (const auto& [a, b] : first.p) out.p[a] = second.p.at(b);
    for (const auto& [a, b] : first.q) out.q[a] = second.q.at(b);
    return out;
}

CrossedHomotopy compose_homotopy_horizontal(const CrossedModule& mid, const CrossedModule& tgt,
                                            const XModMorphism& m1_prime, const XModMorphism& m2,
                                            const CrossedHomotopy& nu1, const CrossedHomotopy& nu2) {
    (void)mid;
    CrossedHomotopy out;
    for (const auto& [f, v1] : nu1.nu)
        out.nu[f] = tgt.h.times(nu2.nu.at(m1_prime.q.at(f)), m2.p.at(v1));
    return out;
}

// ---------------------------------------------------------------------------
// Theorem WZ
// ---------------------------------------------------------------------------

UnderIReport check_under_I(const XModUnderGroup& src, const XModUnderGroup& tgt,
                           const XModMorphism& m1, const XModMorphism& m2,
                           const CrossedHomotopy& nu) {
    if (!validate_homotopy(src.xm, tgt.xm, m1, m2, nu).valid())
        throw OpError("InvalidInput", "check_under_I: nu is not a homotopy");
    UnderIReport rep;
    rep.nu_condition = true;
    rep.sigma_condition = true;
    TwoGroupData ct = two_group_from_xmod(tgt.xm);
    TwoGroupCell sigma = nu_to_sigma(src.xm, tgt.xm, m1, nu);
    for (const Id& j : src.i.elements) {
        Id pj = src.p.at(j);
        if (nu.nu.at(pj) != tgt.xm.h.unit) {
            rep.nu_condition = false;
            rep.witnesses.push_back({"UNDER_I_NU", {j}, "nu(P(" + j + ")) != e"});
        }
        if (sigma.comp.at(pj) != ct.tg.cat.id_two.at(m1.q.at(pj))) {
            rep.sigma_condition = false;
            rep.witnesses.push_back({"UNDER_I_SIGMA", {j}, "sigma^{P(" + j + ")} is not an identity 2-cell"});
        }
    }
    return rep;
}

// ---------------------------------------------------------------------------
// double groups with folding
// ---------------------------------------------------------------------------

XModUnderGroup double_group_to_xmod(const DoubleCategory& d, const Folding& f) {
    if (!validate_double_category(d).valid() || !validate_folding(d, f).valid())
        throw OpError("InvalidInput", "double_group_to_xmod: input invalid");
    if (d.objects.size() != 1) throw OpError("NotADoubleGroup", "not a one-object double category");

    // every square must be invertible both ways
    for (const SquareRec& s : d.squares) {
        if (!vcomp_inverse(d, s.id))
            throw OpError("NotADoubleGroup", "square " + s.id + " has no vertical inverse");
        bool hfound = false;
        for (const SquareRec& x : d.squares) {
            if (x.left != s.right || x.right != s.left) continue;
            auto a = d.hcomp_sq.find({s.id, x.id});
            auto b = d.hcomp_sq.find({x.id, s.id});
            if (a == d.hcomp_sq.end() || b == d.hcomp_sq.end()) continue;
            auto ia = d.h_id_sq.find(s.left);
            auto ib = d.h_id_sq.find(s.right);
            if (ia != d.h_id_sq.end() && ib != d.h_id_sq.end() && a->second == ia->second &&
                b->second == ib->second) {
                hfound = true;
                break;
            }
        }
        if (!hfound) throw OpError("NotADoubleGroup", "square " + s.id + " has no horizontal inverse");
    }

    XModUnderGroup out;
    const Id star = d.objects.front();

    for (const Morphism& j : d.vmor) out.i.elements.push_back(j.id);
    out.i.unit = d.v_id_mor.at(star);
    for (const auto& [key, val] : d.vcomp_mor) out.i.mul[{key.second, key.first}] = val;  // a·b = [b ; a]
    auto iinv = groupoid_inverses(FinCategory{{star}, d.vmor, d.v_id_mor, [&] {
                                                  std::map<IdPair, Id> comp;
                                                  for (const auto& [key, val] : d.vcomp_mor)
                                                      comp[{key.second, key.first}] = val;
                                                  return comp;
                                              }()});
    if (!iinv) throw OpError("NotADoubleGroup", "vertical morphisms do not form a group");
    out.i.inv = *iinv;

    TwoGroup horiz = two_group_from_two_category(horizontal_two_category(d));
    out.xm = xmod_from_two_group(horiz);
    out.p = f.holonomy.bar;
    return out;
}

FoldedDouble xmod_to_double_group(const XModUnderGroup& x) {
    if (!validate_xmod_under_group(x).valid())
        throw OpError("InvalidInput", "xmod_to_double_group: input invalid");
    TwoGroupData c = two_group_from_xmod(x.xm);
    TwoFunctorUnderI z;
    FinGroupoid bi = group_to_one_object_groupoid(x.i);
    z.base = bi.cat;
    z.target = c.tg.cat;
    for (const Id& j : x.i.elements) z.p[j] = x.p.at(j);
    return functor_M(z);
}

DoubleFunctorData double_group_roundtrip_witness(const DoubleCategory& d, const Folding& f) {
    XModUnderGroup x = double_group_to_xmod(d, f);
    const Id star = d.objects.front();

    FinCategory vbase;
    vbase.objects = {star};
    vbase.morphisms = d.vmor;
    vbase.identity = d.v_id_mor;
    for (const auto& [key, val] : d.vcomp_mor) vbase.comp[{key.second, key.first}] = val;

    // translate a trivial-sided square (2-cell of HD) into an H⋊G cell id
    auto phi = [&](const Id& gamma) {
        const SquareRec* s = d.square(gamma);
        Id g1 = s->top;
        Id g1inv = x.xm.g.inverse(g1);
        Id hpart = sq_beside(d, d.v_id_sq.at(g1inv), gamma);
        return cell_id(hpart, g1);
    };

    DoubleFunctorData w;
    w.obj_map[star] = star;
    for (const Morphism& m : d.hmor) w.hmor_map[m.id] = m.id;
    for (const Morphism& m : d.vmor) w.vmor_map[m.id] = m.id;
    for (const SquareRec& s : d.squares)
        w.sq_map[s.id] =
            generalized_quintet_square_id(vbase, s.top, s.left, s.right, s.bottom, phi(f.lambda.at(s.id)));
    return w;
}

}  // namespace foldbox
