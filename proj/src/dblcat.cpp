#include "foldbox/dblcat.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <unordered_map>

namespace foldbox {

namespace {

template <typename T>
std::unordered_map<std::string, const T*> index_by_id(const std::vector<T>& xs) {
    std::unordered_map<std::string, const T*> out;
    for (const T& x : xs) out.emplace(x.id, &x);
    return out;
}

Id table_get(const std::map<IdPair, Id>& t, const Id& a, const Id& b, const char* name) {
    auto it = t.find({a, b});
    if (it == t.end())
        throw OpError("ShapeMismatch", std::string(name) + " undefined at (" + a + "," + b + ")");
    return it->second;
}

Id map_get(const std::map<Id, Id>& t, const Id& a, const char* name) {
    auto it = t.find(a);
    if (it == t.end()) throw OpError("ShapeMismatch", std::string(name) + " undefined at " + a);
    return it->second;
}

}  // namespace

const SquareRec* DoubleCategory::square(const Id& id) const {
    for (const SquareRec& s : squares)
        if (s.id == id) return &s;
    return nullptr;
}

const Morphism* DoubleCategory::horizontal(const Id& id) const {
    for (const Morphism& m : hmor)
        if (m.id == id) return &m;
    return nullptr;
}

const Morphism* DoubleCategory::vertical(const Id& id) const {
    for (const Morphism& m : vmor)
        if (m.id == id) return &m;
    return nullptr;
}

Id h_then(const DoubleCategory& d, const Id& f1, const Id& f2) { return table_get(d.hcomp_mor, f1, f2, "hcomp_mor"); }
Id v_then(const DoubleCategory& d, const Id& j1, const Id& j2) { return table_get(d.vcomp_mor, j1, j2, "vcomp_mor"); }
Id sq_beside(const DoubleCategory& d, const Id& a, const Id& b) { return table_get(d.hcomp_sq, a, b, "hcomp_sq"); }
Id sq_above(const DoubleCategory& d, const Id& a, const Id& b) { return table_get(d.vcomp_sq, a, b, "vcomp_sq"); }
Id h_identity(const DoubleCategory& d, const Id& object) { return map_get(d.h_id_mor, object, "h_id_mor"); }
Id v_identity(const DoubleCategory& d, const Id& object) { return map_get(d.v_id_mor, object, "v_id_mor"); }
Id h_id_square(const DoubleCategory& d, const Id& vmor) { return map_get(d.h_id_sq, vmor, "h_id_sq"); }
Id v_id_square(const DoubleCategory& d, const Id& hmor) { return map_get(d.v_id_sq, hmor, "v_id_sq"); }

bool is_edge_symmetric(const DoubleCategory& d) {
    return d.hmor == d.vmor && d.hcomp_mor == d.vcomp_mor && d.h_id_mor == d.v_id_mor;
}

// ---------------------------------------------------------------------------
// validate_double_category
// ---------------------------------------------------------------------------

ValidationReport validate_double_category(const DoubleCategory& d, const Caps& caps) {
    ValidationReport r;
    if (d.objects.size() > caps.max_objects)
        r.structural_error("CAP_EXCEEDED", {}, "object count exceeds cap");
    if (d.hmor.size() > caps.max_morphisms || d.vmor.size() > caps.max_morphisms)
        r.structural_error("CAP_EXCEEDED", {}, "morphism count exceeds cap");
    if (d.squares.size() > caps.max_squares)
        r.structural_error("CAP_EXCEEDED", {}, "square count exceeds cap");
    if (!r.structural.empty()) return r;

    Caps sq_caps = caps;
    sq_caps.max_objects = caps.max_morphisms;
    sq_caps.max_morphisms = caps.max_squares;

    // The two edge categories.
    FinCategory hcat{d.objects, d.hmor, d.h_id_mor, {}};
    for (const auto& [key, val] : d.hcomp_mor) hcat.comp[{key.second, key.first}] = val;
    r.absorb(validate_category(hcat, caps), "horizontal edge category");

    FinCategory vcat{d.objects, d.vmor, d.v_id_mor, {}};
    for (const auto& [key, val] : d.vcomp_mor) vcat.comp[{key.second, key.first}] = val;
    r.absorb(validate_category(vcat, caps), "vertical edge category");

    auto hix = index_by_id(d.hmor);
    auto vix = index_by_id(d.vmor);
    auto six = index_by_id(d.squares);

    std::vector<Id> sids;
    for (const SquareRec& s : d.squares) sids.push_back(s.id);
    {
        std::set<Id> seen;
        for (const Id& id : sids)
            if (!seen.insert(id).second)
                r.structural_error("DUPLICATE_ID", {id}, "duplicate square id " + id);
    }

    bool boundaries_ok = true;
    for (const SquareRec& s : d.squares) {
        const Morphism* t = hix.count(s.top) ? hix.at(s.top) : nullptr;
        const Morphism* b = hix.count(s.bottom) ? hix.at(s.bottom) : nullptr;
        const Morphism* l = vix.count(s.left) ? vix.at(s.left) : nullptr;
        const Morphism* rr = vix.count(s.right) ? vix.at(s.right) : nullptr;
        if (!t || !b || !l || !rr) {
            r.structural_error("DANGLING_REFERENCE", {s.id}, "square " + s.id + " references unknown boundary morphism");
            boundaries_ok = false;
            continue;
        }
        if (t->src != l->src || t->tgt != rr->src || b->src != l->tgt || b->tgt != rr->tgt)
            r.violation("SQUARE_BOUNDARY", {s.id}, "square " + s.id + " has incompatible boundary");
    }
    if (!boundaries_ok || !r.well_formed()) {
        r.sort();
        return r;
    }

    // Square categories: squares as morphisms left->right under [a b], and
    // top->bottom under [a ; b].
    {
        FinCategory sq_h_cat;
        for (const Morphism& j : d.vmor) sq_h_cat.objects.push_back(j.id);
        for (const SquareRec& s : d.squares) sq_h_cat.morphisms.push_back({s.id, s.left, s.right});
        sq_h_cat.identity = d.h_id_sq;
        for (const auto& [key, val] : d.hcomp_sq) sq_h_cat.comp[{key.second, key.first}] = val;
        r.absorb(validate_category(sq_h_cat, sq_caps), "squares under horizontal composition");
    }
    {
        FinCategory sq_v_cat;
        for (const Morphism& f : d.hmor) sq_v_cat.objects.push_back(f.id);
        for (const SquareRec& s : d.squares) sq_v_cat.morphisms.push_back({s.id, s.top, s.bottom});
        sq_v_cat.identity = d.v_id_sq;
        for (const auto& [key, val] : d.vcomp_sq) sq_v_cat.comp[{key.second, key.first}] = val;
        r.absorb(validate_category(sq_v_cat, sq_caps), "squares under vertical composition");
    }

    // Composite boundaries must match the edge compositions.
    for (const auto& [key, val] : d.hcomp_sq) {
        const SquareRec* a = six.count(key.first) ? six.at(key.first) : nullptr;
        const SquareRec* b = six.count(key.second) ? six.at(key.second) : nullptr;
        const SquareRec* v = six.count(val) ? six.at(val) : nullptr;
        if (!a || !b || !v || a->right != b->left) continue;
        auto t = d.hcomp_mor.find({a->top, b->top});
        auto bo = d.hcomp_mor.find({a->bottom, b->bottom});
        if (t != d.hcomp_mor.end() && v->top != t->second)
            r.violation("SQ_HCOMP_BOUNDARY", {key.first, key.second, val}, "top of [a b] is not [top a, top b]");
        if (bo != d.hcomp_mor.end() && v->bottom != bo->second)
            r.violation("SQ_HCOMP_BOUNDARY", {key.first, key.second, val}, "bottom of [a b] is not [bottom a, bottom b]");
    }
    for (const auto& [key, val] : d.vcomp_sq) {
        const SquareRec* a = six.count(key.first) ? six.at(key.first) : nullptr;
        const SquareRec* b = six.count(key.second) ? six.at(key.second) : nullptr;
        const SquareRec* v = six.count(val) ? six.at(val) : nullptr;
        if (!a || !b || !v || a->bottom != b->top) continue;
        auto l = d.vcomp_mor.find({a->left, b->left});
        auto rr = d.vcomp_mor.find({a->right, b->right});
        if (l != d.vcomp_mor.end() && v->left != l->second)
            r.violation("SQ_VCOMP_BOUNDARY", {key.first, key.second, val}, "left of [a ; b] is not [left a ; left b]");
        if (rr != d.vcomp_mor.end() && v->right != rr->second)
            r.violation("SQ_VCOMP_BOUNDARY", {key.first, key.second, val}, "right of [a ; b] is not [right a ; right b]");
    }

    // Identity squares sit on identity edges.
    for (const auto& [j, sq] : d.h_id_sq) {
        const SquareRec* s = six.count(sq) ? six.at(sq) : nullptr;
        const Morphism* jm = vix.count(j) ? vix.at(j) : nullptr;
        if (!s || !jm) continue;
        auto t = d.h_id_mor.find(jm->src);
        auto b = d.h_id_mor.find(jm->tgt);
        if (t != d.h_id_mor.end() && b != d.h_id_mor.end() &&
            (s->top != t->second || s->bottom != b->second))
            r.violation("H_ID_SQ_BOUNDARY", {j, sq}, "i^h_" + j + " does not sit on identity horizontal edges");
    }
    for (const auto& [f, sq] : d.v_id_sq) {
        const SquareRec* s = six.count(sq) ? six.at(sq) : nullptr;
        const Morphism* fm = hix.count(f) ? hix.at(f) : nullptr;
        if (!s || !fm) continue;
        auto l = d.v_id_mor.find(fm->src);
        auto rr = d.v_id_mor.find(fm->tgt);
        if (l != d.v_id_mor.end() && rr != d.v_id_mor.end() &&
            (s->left != l->second || s->right != rr->second))
            r.violation("V_ID_SQ_BOUNDARY", {f, sq}, "i^v_" + f + " does not sit on identity vertical edges");
    }

    // Identity squares are compatible with composition.
    for (const auto& [key, f12] : d.hcomp_mor) {
        auto a = d.v_id_sq.find(key.first);
        auto b = d.v_id_sq.find(key.second);
        auto v = d.v_id_sq.find(f12);
        if (a == d.v_id_sq.end() || b == d.v_id_sq.end() || v == d.v_id_sq.end()) continue;
        auto comp = d.hcomp_sq.find({a->second, b->second});
        if (comp != d.hcomp_sq.end() && comp->second != v->second)
            r.violation("UNIT_COMPAT_V", {key.first, key.second}, "[i^v_f1 i^v_f2] != i^v_[f1 f2]");
    }
    for (const auto& [key, j12] : d.vcomp_mor) {
        auto a = d.h_id_sq.find(key.first);
        auto b = d.h_id_sq.find(key.second);
        auto v = d.h_id_sq.find(j12);
        if (a == d.h_id_sq.end() || b == d.h_id_sq.end() || v == d.h_id_sq.end()) continue;
        auto comp = d.vcomp_sq.find({a->second, b->second});
        if (comp != d.vcomp_sq.end() && comp->second != v->second)
            r.violation("UNIT_COMPAT_H", {key.first, key.second}, "[i^h_j1 ; i^h_j2] != i^h_[j1 ; j2]");
    }

    // i^h on a vertical identity equals i^v on the matching horizontal identity.
    for (const Id& a : d.objects) {
        auto vi = d.v_id_mor.find(a);
        auto hi = d.h_id_mor.find(a);
        if (vi == d.v_id_mor.end() || hi == d.h_id_mor.end()) continue;
        auto hs = d.h_id_sq.find(vi->second);
        auto vs = d.v_id_sq.find(hi->second);
        if (hs != d.h_id_sq.end() && vs != d.v_id_sq.end() && hs->second != vs->second)
            r.violation("CORNER_IDENTITY", {a}, "i^h_{1^v} != i^v_{1^h} at object " + a);
    }

    // Interchange over every composable 2x2 block, on interned dense tables.
    {
        const int ns = static_cast<int>(d.squares.size());
        std::unordered_map<std::string, int> sid;
        for (int i = 0; i < ns; ++i) sid[d.squares[i].id] = i;
        const bool dense = static_cast<std::size_t>(ns) * ns <= (1u << 24);
        std::vector<int> hq_m, vq_m;
        std::unordered_map<std::uint64_t, int> hq_s, vq_s;
        auto intern_tbl = [&](const std::map<IdPair, Id>& t, std::vector<int>& mat,
                              std::unordered_map<std::uint64_t, int>& sparse) {
            if (dense) mat.assign(static_cast<std::size_t>(ns) * ns, -1);
            for (const auto& [key, val] : t) {
                auto a = sid.find(key.first);
                auto b = sid.find(key.second);
                auto v = sid.find(val);
                if (a == sid.end() || b == sid.end() || v == sid.end()) continue;
                if (dense)
                    mat[static_cast<std::size_t>(a->second) * ns + b->second] = v->second;
                else
                    sparse[(static_cast<std::uint64_t>(a->second) << 32) | static_cast<std::uint32_t>(b->second)] =
                        v->second;
            }
        };
        intern_tbl(d.hcomp_sq, hq_m, hq_s);
        intern_tbl(d.vcomp_sq, vq_m, vq_s);
        auto hq = [&](int a, int b) -> int {
            if (dense) return hq_m[static_cast<std::size_t>(a) * ns + b];
            auto it = hq_s.find((static_cast<std::uint64_t>(a) << 32) | static_cast<std::uint32_t>(b));
            return it == hq_s.end() ? -1 : it->second;
        };
        auto vq = [&](int a, int b) -> int {
            if (dense) return vq_m[static_cast<std::size_t>(a) * ns + b];
            auto it = vq_s.find((static_cast<std::uint64_t>(a) << 32) | static_cast<std::uint32_t>(b));
            return it == vq_s.end() ? -1 : it->second;
        };
        // gammas by top edge; deltas by (top, left) pair
        std::unordered_map<std::string, std::vector<int>> by_top;
        std::map<IdPair, std::vector<int>> by_top_left;
        for (int i = 0; i < ns; ++i) {
            by_top[d.squares[i].top].push_back(i);
            by_top_left[{d.squares[i].top, d.squares[i].left}].push_back(i);
        }

        for (const auto& [key, ab_id] : d.hcomp_sq) {
            auto ai = sid.find(key.first);
            auto bi = sid.find(key.second);
            auto abi = sid.find(ab_id);
            if (ai == sid.end() || bi == sid.end() || abi == sid.end()) continue;
            const SquareRec& a = d.squares[ai->second];
            const SquareRec& b = d.squares[bi->second];
            auto git = by_top.find(a.bottom);
            if (git == by_top.end()) continue;
            for (int gi : git->second) {
                const SquareRec& g = d.squares[gi];
                int ag = vq(ai->second, gi);
                if (ag < 0) continue;
                auto dit = by_top_left.find({b.bottom, g.right});
                if (dit == by_top_left.end()) continue;
                for (int di : dit->second) {
                    int gd = hq(gi, di);
                    int bd = vq(bi->second, di);
                    if (gd < 0 || bd < 0) continue;
                    int lhs = vq(abi->second, gd);
                    int rhs = hq(ag, bd);
                    if (lhs >= 0 && rhs >= 0 && lhs != rhs)
                        r.violation("INTERCHANGE", {a.id, b.id, g.id, d.squares[di].id},
                                    "interchange fails on block [" + a.id + " " + b.id + " / " + g.id + " " +
                                        d.squares[di].id + "]");
                }
            }
        }
    }
    r.sort();
    return r;
}

// ---------------------------------------------------------------------------
// double functors and transformations
// ---------------------------------------------------------------------------

ValidationReport validate_double_functor(const DoubleCategory& src, const DoubleCategory& tgt,
                                         const DoubleFunctorData& f, const Caps& caps) {
    ValidationReport r;
    (void)caps;
    auto shx = index_by_id(src.hmor);
    auto svx = index_by_id(src.vmor);
    auto ssx = index_by_id(src.squares);
    auto thx = index_by_id(tgt.hmor);
    auto tvx = index_by_id(tgt.vmor);
    auto tsx = index_by_id(tgt.squares);
    std::set<Id> sobj(src.objects.begin(), src.objects.end());
    std::set<Id> tobj(tgt.objects.begin(), tgt.objects.end());

    auto check_total = [&](const std::map<Id, Id>& m, auto&& domain_ids, const char* what) {
        for (const Id& id : domain_ids)
            if (!m.count(id)) r.structural_error("NON_TOTAL_TABLE", {id}, std::string(what) + " missing " + id);
    };
    std::vector<Id> hids, vids, qids;
    for (const Morphism& m : src.hmor) hids.push_back(m.id);
    for (const Morphism& m : src.vmor) vids.push_back(m.id);
    for (const SquareRec& s : src.squares) qids.push_back(s.id);
    check_total(f.obj_map, src.objects, "obj_map");
    check_total(f.hmor_map, hids, "hmor_map");
    check_total(f.vmor_map, vids, "vmor_map");
    check_total(f.sq_map, qids, "sq_map");
    for (const auto& [k, v] : f.obj_map)
        if (!sobj.count(k) || !tobj.count(v)) r.structural_error("DANGLING_REFERENCE", {k, v}, "obj_map entry invalid");
    for (const auto& [k, v] : f.hmor_map)
        if (!shx.count(k) || !thx.count(v)) r.structural_error("DANGLING_REFERENCE", {k, v}, "hmor_map entry invalid");
    for (const auto& [k, v] : f.vmor_map)
        if (!svx.count(k) || !tvx.count(v)) r.structural_error("DANGLING_REFERENCE", {k, v}, "vmor_map entry invalid");
    for (const auto& [k, v] : f.sq_map)
        if (!ssx.count(k) || !tsx.count(v)) r.structural_error("DANGLING_REFERENCE", {k, v}, "sq_map entry invalid");
    if (!r.well_formed()) return r;

    auto FO = [&](const Id& x) { return f.obj_map.at(x); };
    auto FH = [&](const Id& x) { return f.hmor_map.at(x); };
    auto FV = [&](const Id& x) { return f.vmor_map.at(x); };
    auto FS = [&](const Id& x) { return f.sq_map.at(x); };

    for (const Morphism& m : src.hmor) {
        const Morphism* im = thx.at(FH(m.id));
        if (im->src != FO(m.src) || im->tgt != FO(m.tgt))
            r.violation("DF_ENDPOINTS", {m.id}, "horizontal image of " + m.id + " has wrong endpoints");
    }
    for (const Morphism& m : src.vmor) {
        const Morphism* im = tvx.at(FV(m.id));
        if (im->src != FO(m.src) || im->tgt != FO(m.tgt))
            r.violation("DF_ENDPOINTS", {m.id}, "vertical image of " + m.id + " has wrong endpoints");
    }
    for (const SquareRec& s : src.squares) {
        const SquareRec* is = tsx.at(FS(s.id));
        if (is->top != FH(s.top) || is->bottom != FH(s.bottom) || is->left != FV(s.left) || is->right != FV(s.right))
            r.violation("DF_BOUNDARY", {s.id}, "square image of " + s.id + " has wrong boundary");
    }
    auto check_table = [&](const std::map<IdPair, Id>& st, const std::map<IdPair, Id>& tt,
                           auto&& fmap, const char* tag) {
        for (const auto& [key, val] : st) {
            auto it = tt.find({fmap(key.first), fmap(key.second)});
            if (it != tt.end() && it->second != fmap(val))
                r.violation(tag, {key.first, key.second}, "composition not preserved");
        }
    };
    check_table(src.hcomp_mor, tgt.hcomp_mor, FH, "DF_HCOMP_MOR");
    check_table(src.vcomp_mor, tgt.vcomp_mor, FV, "DF_VCOMP_MOR");
    check_table(src.hcomp_sq, tgt.hcomp_sq, FS, "DF_HCOMP_SQ");
    check_table(src.vcomp_sq, tgt.vcomp_sq, FS, "DF_VCOMP_SQ");
    for (const auto& [a, m] : src.h_id_mor) {
        auto it = tgt.h_id_mor.find(FO(a));
        if (it != tgt.h_id_mor.end() && it->second != FH(m))
            r.violation("DF_UNIT", {a}, "1^h not preserved at " + a);
    }
    for (const auto& [a, m] : src.v_id_mor) {
        auto it = tgt.v_id_mor.find(FO(a));
        if (it != tgt.v_id_mor.end() && it->second != FV(m))
            r.violation("DF_UNIT", {a}, "1^v not preserved at " + a);
    }
    for (const auto& [j, s] : src.h_id_sq) {
        auto it = tgt.h_id_sq.find(FV(j));
        if (it != tgt.h_id_sq.end() && it->second != FS(s))
            r.violation("DF_UNIT", {j}, "i^h not preserved at " + j);
    }
    for (const auto& [ff, s] : src.v_id_sq) {
        auto it = tgt.v_id_sq.find(FH(ff));
        if (it != tgt.v_id_sq.end() && it->second != FS(s))
            r.violation("DF_UNIT", {ff}, "i^v not preserved at " + ff);
    }
    r.sort();
    return r;
}

ValidationReport validate_vertical_transformation(const DoubleCategory& src, const DoubleCategory& tgt,
                                                  const DoubleFunctorData& f, const DoubleFunctorData& g,
                                                  const VerticalTransformationData& sigma,
                                                  const Caps& caps) {
    ValidationReport r;
    (void)caps;
    auto tvx = index_by_id(tgt.vmor);
    auto tsx = index_by_id(tgt.squares);

    for (const Id& a : src.objects)
        if (!sigma.comp_obj.count(a)) r.structural_error("NON_TOTAL_TABLE", {a}, "comp_obj missing " + a);
    for (const Morphism& m : src.hmor)
        if (!sigma.comp_hmor.count(m.id)) r.structural_error("NON_TOTAL_TABLE", {m.id}, "comp_hmor missing " + m.id);
    for (const auto& [a, j] : sigma.comp_obj)
        if (!tvx.count(j)) r.structural_error("DANGLING_REFERENCE", {a, j}, "comp_obj value unknown");
    for (const auto& [m, s] : sigma.comp_hmor)
        if (!tsx.count(s)) r.structural_error("DANGLING_REFERENCE", {m, s}, "comp_hmor value unknown");
    if (!r.well_formed()) return r;

    for (const Id& a : src.objects) {
        const Morphism* j = tvx.at(sigma.comp_obj.at(a));
        if (j->src != f.obj_map.at(a) || j->tgt != g.obj_map.at(a))
            r.violation("VT_COMPONENT", {a}, "component vmor at " + a + " has wrong endpoints");
    }
    for (const Morphism& m : src.hmor) {
        const SquareRec* s = tsx.at(sigma.comp_hmor.at(m.id));
        if (s->top != f.hmor_map.at(m.id) || s->bottom != g.hmor_map.at(m.id) ||
            s->left != sigma.comp_obj.at(m.src) || s->right != sigma.comp_obj.at(m.tgt))
            r.violation("VT_BOUNDARY", {m.id}, "component square at " + m.id + " has wrong boundary");
    }
    for (const auto& [a, hid] : src.h_id_mor) {
        auto it = tgt.h_id_sq.find(sigma.comp_obj.at(a));
        if (it != tgt.h_id_sq.end() && sigma.comp_hmor.at(hid) != it->second)
            r.violation("VT_UNIT", {a}, "sigma(1^h) != i^h_{sigma A} at " + a);
    }
    for (const auto& [key, f12] : src.hcomp_mor) {
        auto comp = tgt.hcomp_sq.find({sigma.comp_hmor.at(key.first), sigma.comp_hmor.at(key.second)});
        if (comp != tgt.hcomp_sq.end() && comp->second != sigma.comp_hmor.at(f12))
            r.violation("VT_COMPOSITE", {key.first, key.second}, "sigma[f g] != [sigma f, sigma g]");
    }
    for (const SquareRec& s : src.squares) {
        auto lhs = tgt.vcomp_sq.find({f.sq_map.at(s.id), sigma.comp_hmor.at(s.bottom)});
        auto rhs = tgt.vcomp_sq.find({sigma.comp_hmor.at(s.top), g.sq_map.at(s.id)});
        if (lhs != tgt.vcomp_sq.end() && rhs != tgt.vcomp_sq.end() && lhs->second != rhs->second)
            r.violation("VT_EXCHANGE", {s.id}, "exchange condition fails at square " + s.id);
    }
    r.sort();
    return r;
}

ValidationReport validate_horizontal_transformation(const DoubleCategory& src, const DoubleCategory& tgt,
                                                    const DoubleFunctorData& f, const DoubleFunctorData& g,
                                                    const HorizontalTransformationData& theta,
                                                    const Caps& caps) {
    ValidationReport r;
    (void)caps;
    auto thx = index_by_id(tgt.hmor);
    auto tsx = index_by_id(tgt.squares);

    for (const Id& a : src.objects)
        if (!theta.comp_obj.count(a)) r.structural_error("NON_TOTAL_TABLE", {a}, "comp_obj missing " + a);
    for (const Morphism& m : src.vmor)
        if (!theta.comp_vmor.count(m.id)) r.structural_error("NON_TOTAL_TABLE", {m.id}, "comp_vmor missing " + m.id);
    for (const auto& [a, h] : theta.comp_obj)
        if (!thx.count(h)) r.structural_error("DANGLING_REFERENCE", {a, h}, "comp_obj value unknown");
    for (const auto& [m, s] : theta.comp_vmor)
        if (!tsx.count(s)) r.structural_error("DANGLING_REFERENCE", {m, s}, "comp_vmor value unknown");
    if (!r.well_formed()) return r;

    for (const Id& a : src.objects) {
        const Morphism* h = thx.at(theta.comp_obj.at(a));
        if (h->src != f.obj_map.at(a) || h->tgt != g.obj_map.at(a))
            r.violation("HT_COMPONENT", {a}, "component hmor at " + a + " has wrong endpoints");
    }
    for (const Morphism& m : src.vmor) {
        const SquareRec* s = tsx.at(theta.comp_vmor.at(m.id));
        if (s->left != f.vmor_map.at(m.id) || s->right != g.vmor_map.at(m.id) ||
            s->top != theta.comp_obj.at(m.src) || s->bottom != theta.comp_obj.at(m.tgt))
            r.violation("HT_BOUNDARY", {m.id}, "component square at " + m.id + " has wrong boundary");
    }
    for (const auto& [a, vid] : src.v_id_mor) {
        auto it = tgt.v_id_sq.find(theta.comp_obj.at(a));
        if (it != tgt.v_id_sq.end() && theta.comp_vmor.at(vid) != it->second)
            r.violation("HT_UNIT", {a}, "theta(1^v) != i^v_{theta A} at " + a);
    }
    for (const auto& [key, j12] : src.vcomp_mor) {
        auto comp = tgt.vcomp_sq.find({theta.comp_vmor.at(key.first), theta.comp_vmor.at(key.second)});
        if (comp != tgt.vcomp_sq.end() && comp->second != theta.comp_vmor.at(j12))
            r.violation("HT_COMPOSITE", {key.first, key.second}, "theta[j1 ; j2] != [theta j1 ; theta j2]");
    }
    for (const SquareRec& s : src.squares) {
        auto lhs = tgt.hcomp_sq.find({f.sq_map.at(s.id), theta.comp_vmor.at(s.right)});
        auto rhs = tgt.hcomp_sq.find({theta.comp_vmor.at(s.left), g.sq_map.at(s.id)});
        if (lhs != tgt.hcomp_sq.end() && rhs != tgt.hcomp_sq.end() && lhs->second != rhs->second)
            r.violation("HT_EXCHANGE", {s.id}, "exchange condition fails at square " + s.id);
    }
    r.sort();
    return r;
}

// ---------------------------------------------------------------------------
// extraction
// ---------------------------------------------------------------------------

TwoCategory horizontal_two_category(const DoubleCategory& d) {
    TwoCategory c;
    c.objects = d.objects;
    c.one_cells = d.hmor;
    c.id_one = d.h_id_mor;
    for (const auto& [key, val] : d.hcomp_mor) c.hcomp_one[{key.second, key.first}] = val;

    std::set<Id> vident;
    for (const auto& [a, j] : d.v_id_mor) vident.insert(j);
    std::set<Id> keep;
    for (const SquareRec& s : d.squares) {
        if (vident.count(s.left) && vident.count(s.right)) {
            c.two_cells.push_back({s.id, s.top, s.bottom});
            keep.insert(s.id);
        }
    }
    for (const auto& [f, s] : d.v_id_sq) c.id_two[f] = s;
    for (const auto& [key, val] : d.vcomp_sq)
        if (keep.count(key.first) && keep.count(key.second) && keep.count(val))
            c.vcomp_two[{key.second, key.first}] = val;
    for (const auto& [key, val] : d.hcomp_sq)
        if (keep.count(key.first) && keep.count(key.second) && keep.count(val))
            c.hcomp_two[{key.second, key.first}] = val;
    return c;
}

TwoCategory vertical_two_category(const DoubleCategory& d) {
    TwoCategory c;
    c.objects = d.objects;
    c.one_cells = d.vmor;
    c.id_one = d.v_id_mor;
    for (const auto& [key, val] : d.vcomp_mor) c.hcomp_one[{key.second, key.first}] = val;

    std::set<Id> hident;
    for (const auto& [a, f] : d.h_id_mor) hident.insert(f);
    std::set<Id> keep;
    for (const SquareRec& s : d.squares) {
        if (hident.count(s.top) && hident.count(s.bottom)) {
            c.two_cells.push_back({s.id, s.left, s.right});
            keep.insert(s.id);
        }
    }
    for (const auto& [j, s] : d.h_id_sq) c.id_two[j] = s;
    for (const auto& [key, val] : d.hcomp_sq)
        if (keep.count(key.first) && keep.count(key.second) && keep.count(val))
            c.vcomp_two[{key.second, key.first}] = val;
    for (const auto& [key, val] : d.vcomp_sq)
        if (keep.count(key.first) && keep.count(key.second) && keep.count(val))
            c.hcomp_two[{key.second, key.first}] = val;
    return c;
}

// ---------------------------------------------------------------------------
// generators
// ---------------------------------------------------------------------------

namespace {

std::string quintet_square_id(const TwoCategory& c, const Id& f, const Id& j, const Id& k,
                              const Id& g, const Id& cell) {
    const Morphism* fm = c.one_cell(f);
    const bool trivial = (j == c.id_one.at(fm->src)) && (k == c.id_one.at(fm->tgt));
    if (trivial) return cell;
    (void)g;
    return "q(" + f + "," + j + "," + k + "," + g + "," + cell + ")";
}

// Quintet-style square table: square records plus cell lookup maps.
struct QuintetBuild {
    DoubleCategory d;
    // square id -> underlying 2-cell
    std::map<Id, Id> cell_of;
    // (f,j,k,g,cell) -> square id
    std::map<std::vector<Id>, Id> by_data;
};

QuintetBuild build_quintets(const TwoCategory& c) {
    QuintetBuild out;
    DoubleCategory& d = out.d;
    d.objects = c.objects;
    d.hmor = c.one_cells;
    d.vmor = c.one_cells;
    d.h_id_mor = c.id_one;
    d.v_id_mor = c.id_one;
    for (const auto& [key, val] : c.hcomp_one) {
        d.hcomp_mor[{key.second, key.first}] = val;
        d.vcomp_mor[{key.second, key.first}] = val;
    }

    // factorizations of each 1-cell u: pairs (f,k) with k∘f = u
    std::map<Id, std::vector<IdPair>> fact;
    for (const auto& [key, val] : c.hcomp_one) fact[val].push_back({key.second, key.first});  // (f,k)

    for (const TwoCellRec& cell : c.two_cells) {
        for (const auto& [f, k] : fact[cell.src]) {
            for (const auto& [j, g] : fact[cell.tgt]) {
                const Morphism* fm = c.one_cell(f);
                const Morphism* jm = c.one_cell(j);
                if (fm->src != jm->src) continue;  // both factorizations start at A
                Id id = quintet_square_id(c, f, j, k, g, cell.id);
                if (out.by_data.count({f, j, k, g, cell.id})) continue;
                d.squares.push_back({id, f, g, j, k});
                out.cell_of[id] = cell.id;
                out.by_data[{f, j, k, g, cell.id}] = id;
            }
        }
    }

    auto sq_lookup = [&](const Id& f, const Id& j, const Id& k, const Id& g, const Id& cell) {
        return out.by_data.at({f, j, k, g, cell});
    };

    for (const SquareRec& a : d.squares) {
        for (const SquareRec& b : d.squares) {
            // horizontal: right(a) = left(b)
            if (a.right == b.left) {
                const Morphism* at = c.one_cell(a.top);
                const Morphism* bt = c.one_cell(b.top);
                if (at->tgt == bt->src) {
                    const Id& ca = out.cell_of.at(a.id);
                    const Id& cb = out.cell_of.at(b.id);
                    Id e = two_then_v(c, two_then_h(c, c.id_two.at(a.top), cb),
                                      two_then_h(c, ca, c.id_two.at(b.bottom)));
                    Id top = two_then_one(c, a.top, b.top);
                    Id bot = two_then_one(c, a.bottom, b.bottom);
                    d.hcomp_sq[{a.id, b.id}] = sq_lookup(top, a.left, b.right, bot, e);
                }
            }
            // vertical: bottom(a) = top(b)
            if (a.bottom == b.top) {
                const Morphism* al = c.one_cell(a.left);
                const Morphism* bl = c.one_cell(b.left);
                if (al->tgt == bl->src) {
                    const Id& ca = out.cell_of.at(a.id);
                    const Id& cb = out.cell_of.at(b.id);
                    Id e = two_then_v(c, two_then_h(c, ca, c.id_two.at(b.right)),
                                      two_then_h(c, c.id_two.at(a.left), cb));
                    Id left = two_then_one(c, a.left, b.left);
                    Id right = two_then_one(c, a.right, b.right);
                    d.vcomp_sq[{a.id, b.id}] = sq_lookup(a.top, left, right, b.bottom, e);
                }
            }
        }
    }
    for (const Morphism& j : d.vmor) {
        d.h_id_sq[j.id] = sq_lookup(c.id_one.at(j.src), j.id, j.id, c.id_one.at(j.tgt), c.id_two.at(j.id));
    }
    for (const Morphism& f : d.hmor) {
        d.v_id_sq[f.id] = sq_lookup(f.id, c.id_one.at(f.src), c.id_one.at(f.tgt), f.id, c.id_two.at(f.id));
    }
    return out;
}

}  // namespace

DoubleCategory quintets(const TwoCategory& c) {
    if (!validate_two_category(c).valid()) throw OpError("InvalidInput", "quintets: base 2-category invalid");
    return build_quintets(c).d;
}

QuintetData quintets_with_cells(const TwoCategory& c) {
    if (!validate_two_category(c).valid()) throw OpError("InvalidInput", "quintets: base 2-category invalid");
    QuintetBuild b = build_quintets(c);
    return {std::move(b.d), std::move(b.cell_of)};
}

DoubleCategory commutative_squares(const FinCategory& i) {
    if (!validate_category(i).valid()) throw OpError("InvalidInput", "commutative_squares: base category invalid");
    DoubleCategory d;
    d.objects = i.objects;
    d.hmor = i.morphisms;
    d.vmor = i.morphisms;
    d.h_id_mor = i.identity;
    d.v_id_mor = i.identity;
    for (const auto& [key, val] : i.comp) {
        d.hcomp_mor[{key.second, key.first}] = val;
        d.vcomp_mor[{key.second, key.first}] = val;
    }
    auto sq_id = [](const Id& f, const Id& j, const Id& k, const Id& g) {
        return "s(" + f + "," + j + "," + k + "," + g + ")";
    };
    auto comp = [&](const Id& f, const Id& g) {  // f then g
        auto it = i.comp.find({g, f});
        return it == i.comp.end() ? std::optional<Id>() : std::optional<Id>(it->second);
    };
    for (const Morphism& f : i.morphisms)
        for (const Morphism& j : i.morphisms) {
            if (j.src != f.src) continue;
            for (const Morphism& k : i.morphisms) {
                if (k.src != f.tgt) continue;
                auto kf = comp(f.id, k.id);
                if (!kf) continue;
                for (const Morphism& g : i.morphisms) {
                    if (g.src != j.tgt || g.tgt != k.tgt) continue;
                    auto gj = comp(j.id, g.id);
                    if (!gj || *gj != *kf) continue;
                    d.squares.push_back({sq_id(f.id, j.id, k.id, g.id), f.id, g.id, j.id, k.id});
                }
            }
        }
    for (const SquareRec& a : d.squares)
        for (const SquareRec& b : d.squares) {
            if (a.right == b.left) {
                auto top = comp(a.top, b.top);
                auto bot = comp(a.bottom, b.bottom);
                if (top && bot) d.hcomp_sq[{a.id, b.id}] = sq_id(*top, a.left, b.right, *bot);
            }
            if (a.bottom == b.top) {
                auto left = comp(a.left, b.left);
                auto right = comp(a.right, b.right);
                if (left && right) d.vcomp_sq[{a.id, b.id}] = sq_id(a.top, *left, *right, b.bottom);
            }
        }
    for (const Morphism& j : i.morphisms)
        d.h_id_sq[j.id] = sq_id(i.identity.at(j.src), j.id, j.id, i.identity.at(j.tgt));
    for (const Morphism& f : i.morphisms)
        d.v_id_sq[f.id] = sq_id(f.id, i.identity.at(f.src), i.identity.at(f.tgt), f.id);
    return d;
}

namespace {
Id embed_vid(const Id& object) { return "1v(" + object + ")"; }
Id embed_hid(const Id& object) { return "1h(" + object + ")"; }
}  // namespace

DoubleCategory h_embed(const TwoCategory& c) {
    if (!validate_two_category(c).valid()) throw OpError("InvalidInput", "h_embed: base 2-category invalid");
    DoubleCategory d;
    d.objects = c.objects;
    d.hmor = c.one_cells;
    d.h_id_mor = c.id_one;
    for (const auto& [key, val] : c.hcomp_one) d.hcomp_mor[{key.second, key.first}] = val;
    for (const Id& a : c.objects) {
        d.vmor.push_back({embed_vid(a), a, a});
        d.v_id_mor[a] = embed_vid(a);
        d.vcomp_mor[{embed_vid(a), embed_vid(a)}] = embed_vid(a);
    }
    for (const TwoCellRec& t : c.two_cells) {
        const Morphism* f = c.one_cell(t.src);
        d.squares.push_back({t.id, t.src, t.tgt, embed_vid(f->src), embed_vid(f->tgt)});
    }
    for (const auto& [key, val] : c.hcomp_two) d.hcomp_sq[{key.second, key.first}] = val;
    for (const auto& [key, val] : c.vcomp_two) d.vcomp_sq[{key.second, key.first}] = val;
    for (const Id& a : c.objects) d.h_id_sq[embed_vid(a)] = c.id_two.at(c.id_one.at(a));
    d.v_id_sq = c.id_two;
    return d;
}

DoubleCategory v_embed(const TwoCategory& c) {
    if (!validate_two_category(c).valid()) throw OpError("InvalidInput", "v_embed: base 2-category invalid");
    DoubleCategory d;
    d.objects = c.objects;
    d.vmor = c.one_cells;
    d.v_id_mor = c.id_one;
    for (const auto& [key, val] : c.hcomp_one) d.vcomp_mor[{key.second, key.first}] = val;
    for (const Id& a : c.objects) {
        d.hmor.push_back({embed_hid(a), a, a});
        d.h_id_mor[a] = embed_hid(a);
        d.hcomp_mor[{embed_hid(a), embed_hid(a)}] = embed_hid(a);
    }
    for (const TwoCellRec& t : c.two_cells) {
        const Morphism* f = c.one_cell(t.src);
        d.squares.push_back({t.id, embed_hid(f->src), embed_hid(f->tgt), t.src, t.tgt});
    }
    // horizontal square composition composes the 2-cells vertically, and the
    // vertical square composition composes them horizontally.
    for (const auto& [key, val] : c.vcomp_two) d.hcomp_sq[{key.second, key.first}] = val;
    for (const auto& [key, val] : c.hcomp_two) d.vcomp_sq[{key.second, key.first}] = val;
    d.h_id_sq = c.id_two;
    for (const Id& a : c.objects) d.v_id_sq[embed_hid(a)] = c.id_two.at(c.id_one.at(a));
    return d;
}

namespace {

struct Adjunction {
    Id j1, j2, eta, eps;
    Id id() const { return "adj(" + j1 + "," + j2 + "," + eta + "," + eps + ")"; }
};

std::vector<Adjunction> enumerate_adjunctions(const TwoCategory& c) {
    std::vector<Adjunction> out;
    for (const Morphism& j1 : c.one_cells) {
        for (const Morphism& j2 : c.one_cells) {
            if (j2.src != j1.tgt || j2.tgt != j1.src) continue;
            Id j1j2 = two_then_one(c, j2.id, j1.id);  // j1∘j2 : C -> C
            Id j2j1 = two_then_one(c, j1.id, j2.id);  // j2∘j1 : A -> A
            Id oneC = c.id_one.at(j1.tgt);
            Id oneA = c.id_one.at(j1.src);
            for (const TwoCellRec& eta : c.two_cells) {
                if (eta.src != oneC || eta.tgt != j1j2) continue;
                for (const TwoCellRec& eps : c.two_cells) {
                    if (eps.src != j2j1 || eps.tgt != oneA) continue;
                    Id t1 = two_then_v(c, two_then_h(c, c.id_two.at(j1.id), eta.id),
                                       two_then_h(c, eps.id, c.id_two.at(j1.id)));
                    if (t1 != c.id_two.at(j1.id)) continue;
                    Id t2 = two_then_v(c, two_then_h(c, eta.id, c.id_two.at(j2.id)),
                                       two_then_h(c, c.id_two.at(j2.id), eps.id));
                    if (t2 != c.id_two.at(j2.id)) continue;
                    out.push_back({j1.id, j2.id, eta.id, eps.id});
                }
            }
        }
    }
    return out;
}

}  // namespace

AdjunctionData adjunctions_with_data(const TwoCategory& c) {
    if (!validate_two_category(c).valid()) throw OpError("InvalidInput", "adjunctions: base 2-category invalid");
    std::map<IdPair, std::size_t> hom_sizes;
    for (const Morphism& m : c.one_cells) hom_sizes[{m.src, m.tgt}]++;
    for (const auto& [key, n] : hom_sizes)
        if (n > 8) throw OpError("CapExceeded", "adjunction enumeration limited to 8 one-cells per hom");

    std::vector<Adjunction> adjs = enumerate_adjunctions(c);
    std::map<std::vector<Id>, Id> adj_by_data;
    std::map<Id, Adjunction> adj_by_id;
    DoubleCategory d;
    d.objects = c.objects;
    d.hmor = c.one_cells;
    d.h_id_mor = c.id_one;
    for (const auto& [key, val] : c.hcomp_one) d.hcomp_mor[{key.second, key.first}] = val;
    for (const Adjunction& a : adjs) {
        const Morphism* j1 = c.one_cell(a.j1);
        d.vmor.push_back({a.id(), j1->src, j1->tgt});
        adj_by_data[{a.j1, a.j2, a.eta, a.eps}] = a.id();
        adj_by_id[a.id()] = a;
    }
    for (const Id& obj : c.objects) {
        Id one = c.id_one.at(obj);
        Id i = c.id_two.at(one);
        auto it = adj_by_data.find({one, one, i, i});
        if (it == adj_by_data.end()) throw OpError("InvalidInput", "identity adjunction missing at " + obj);
        d.v_id_mor[obj] = it->second;
    }
    for (const Adjunction& a : adjs) {
        for (const Adjunction& b : adjs) {
            const Morphism* a1 = c.one_cell(a.j1);
            const Morphism* b1 = c.one_cell(b.j1);
            if (b1->src != a1->tgt) continue;
            Id j1c = two_then_one(c, a.j1, b.j1);
            Id j2c = two_then_one(c, b.j2, a.j2);
            Id w = two_then_h(c, two_then_h(c, c.id_two.at(b.j2), a.eta), c.id_two.at(b.j1));
            Id eta = two_then_v(c, b.eta, w);
            Id w2 = two_then_h(c, two_then_h(c, c.id_two.at(a.j1), b.eps), c.id_two.at(a.j2));
            Id eps = two_then_v(c, w2, a.eps);
            auto it = adj_by_data.find({j1c, j2c, eta, eps});
            if (it == adj_by_data.end())
                throw OpError("InvalidInput", "composite adjunction fails triangle identities");
            d.vcomp_mor[{a.id(), b.id()}] = it->second;
        }
    }
    // squares: 2-cells k1∘f => g∘j1
    std::map<std::vector<Id>, Id> by_data;
    std::map<Id, Id> cell_of;
    auto sq_id = [&](const Id& f, const Id& aj, const Id& ak, const Id& g, const Id& cell) {
        const Adjunction& ja = adj_by_id.at(aj);
        const Adjunction& ka = adj_by_id.at(ak);
        const Morphism* fm = c.one_cell(f);
        bool trivial = ja.j1 == c.id_one.at(fm->src) && ja.j2 == c.id_one.at(fm->src) &&
                       ka.j1 == c.id_one.at(fm->tgt) && ka.j2 == c.id_one.at(fm->tgt) &&
                       ja.eta == c.id_two.at(ja.j1) && ka.eta == c.id_two.at(ka.j1) &&
                       ja.eps == c.id_two.at(ja.j1) && ka.eps == c.id_two.at(ka.j1);
        if (trivial) return cell;
        return "q(" + f + "," + aj + "," + ak + "," + g + "," + cell + ")";
    };
    for (const Morphism& f : c.one_cells) {
        for (const Adjunction& ja : adjs) {
            const Morphism* j1 = c.one_cell(ja.j1);
            if (j1->src != f.src) continue;
            for (const Adjunction& ka : adjs) {
                const Morphism* k1 = c.one_cell(ka.j1);
                if (k1->src != f.tgt) continue;
                Id k1f = two_then_one(c, f.id, ka.j1);
                for (const Morphism& g : c.one_cells) {
                    if (g.src != j1->tgt || g.tgt != k1->tgt) continue;
                    Id gj1 = two_then_one(c, ja.j1, g.id);
                    for (const TwoCellRec& cell : c.two_cells) {
                        if (cell.src != k1f || cell.tgt != gj1) continue;
                        Id id = sq_id(f.id, ja.id(), ka.id(), g.id, cell.id);
                        d.squares.push_back({id, f.id, g.id, ja.id(), ka.id()});
                        by_data[{f.id, ja.id(), ka.id(), g.id, cell.id}] = id;
                        cell_of[id] = cell.id;
                    }
                }
            }
        }
    }
    for (const SquareRec& a : d.squares) {
        for (const SquareRec& b : d.squares) {
            if (a.right == b.left) {
                const Morphism* at = c.one_cell(a.top);
                const Morphism* bt = c.one_cell(b.top);
                if (at->tgt == bt->src) {
                    Id e = two_then_v(c, two_then_h(c, c.id_two.at(a.top), cell_of.at(b.id)),
                                      two_then_h(c, cell_of.at(a.id), c.id_two.at(b.bottom)));
                    Id top = two_then_one(c, a.top, b.top);
                    Id bot = two_then_one(c, a.bottom, b.bottom);
                    d.hcomp_sq[{a.id, b.id}] = by_data.at({top, a.left, b.right, bot, e});
                }
            }
            if (a.bottom == b.top) {
                const Adjunction& al = adj_by_id.at(a.left);
                const Adjunction& bl = adj_by_id.at(b.left);
                const Morphism* a1 = c.one_cell(al.j1);
                const Morphism* b1 = c.one_cell(bl.j1);
                if (a1->tgt == b1->src) {
                    Id e = two_then_v(c, two_then_h(c, cell_of.at(a.id), c.id_two.at(adj_by_id.at(b.right).j1)),
                                      two_then_h(c, c.id_two.at(al.j1), cell_of.at(b.id)));
                    Id left = d.vcomp_mor.at({a.left, b.left});
                    Id right = d.vcomp_mor.at({a.right, b.right});
                    d.vcomp_sq[{a.id, b.id}] = by_data.at({a.top, left, right, b.bottom, e});
                }
            }
        }
    }
    for (const Morphism& v : d.vmor) {
        const Adjunction& a = adj_by_id.at(v.id);
        const Morphism* j1 = c.one_cell(a.j1);
        d.h_id_sq[v.id] = by_data.at({c.id_one.at(j1->src), v.id, v.id, c.id_one.at(j1->tgt), c.id_two.at(a.j1)});
    }
    for (const Morphism& f : d.hmor) {
        d.v_id_sq[f.id] = by_data.at({f.id, d.v_id_mor.at(f.src), d.v_id_mor.at(f.tgt), f.id, c.id_two.at(f.id)});
    }
    AdjunctionData out;
    out.d = std::move(d);
    out.cell_of = std::move(cell_of);
    for (const auto& [id, a] : adj_by_id) out.right_adjoint[id] = a.j1;
    return out;
}

DoubleCategory adjunctions(const TwoCategory& c) { return adjunctions_with_data(c).d; }

DoubleFunctorData adjunctions_to_quintets(const TwoCategory& c) {
    AdjunctionData ad = adjunctions_with_data(c);
    DoubleFunctorData f;
    for (const Id& a : ad.d.objects) f.obj_map[a] = a;
    for (const Morphism& m : ad.d.hmor) f.hmor_map[m.id] = m.id;
    for (const Morphism& v : ad.d.vmor) f.vmor_map[v.id] = ad.right_adjoint.at(v.id);
    for (const SquareRec& s : ad.d.squares) {
        Id j = ad.right_adjoint.at(s.left);
        Id k = ad.right_adjoint.at(s.right);
        f.sq_map[s.id] = quintet_square_id(c, s.top, j, k, s.bottom, ad.cell_of.at(s.id));
    }
    return f;
}

// ---------------------------------------------------------------------------
// isomorphism search
// ---------------------------------------------------------------------------

namespace {

// Generic staged backtracker: map source items to target items bijectively,
// consistent with a set of pair tables, trying same-index first.
struct StageSearch {
    std::uint64_t budget;
    std::uint64_t nodes = 0;
    bool exhausted = false;

    bool tick() {
        if (budget == 0) {
            exhausted = true;
            return false;
        }
        --budget;
        ++nodes;
        return true;
    }
};

}  // namespace

IsoResult iso_search_double_category(const DoubleCategory& a, const DoubleCategory& b,
                                     std::uint64_t budget) {
    IsoResult res;
    if (a.objects.size() != b.objects.size() || a.hmor.size() != b.hmor.size() ||
        a.vmor.size() != b.vmor.size() || a.squares.size() != b.squares.size()) {
        res.status = IsoStatus::NoIso;
        return res;
    }
    StageSearch ss{budget};

    std::map<Id, Id> omap, hmap, vmap, smap;
    std::set<Id> oused, hused, vused, sused;

    auto table_ok = [](const std::map<IdPair, Id>& ta, const std::map<IdPair, Id>& tb,
                       const std::map<Id, Id>& m) {
        for (const auto& [key, val] : ta) {
            auto f = m.find(key.first);
            auto s = m.find(key.second);
            auto v = m.find(val);
            if (f == m.end() || s == m.end() || v == m.end()) continue;
            auto it = tb.find({f->second, s->second});
            if (it == tb.end() || it->second != v->second) return false;
        }
        return true;
    };
    auto map_ok = [](const std::map<Id, Id>& ma, const std::map<Id, Id>& mb, const std::map<Id, Id>& dom,
                     const std::map<Id, Id>& cod) {
        for (const auto& [k, v] : ma) {
            auto dk = dom.find(k);
            auto cv = cod.find(v);
            if (dk == dom.end() || cv == cod.end()) continue;
            auto it = mb.find(dk->second);
            if (it == mb.end() || it->second != cv->second) return false;
        }
        return true;
    };

    auto consistent = [&]() {
        // endpoint compatibility is enforced during assignment; check tables
        if (!table_ok(a.hcomp_mor, b.hcomp_mor, hmap)) return false;
        if (!table_ok(a.vcomp_mor, b.vcomp_mor, vmap)) return false;
        if (!table_ok(a.hcomp_sq, b.hcomp_sq, smap)) return false;
        if (!table_ok(a.vcomp_sq, b.vcomp_sq, smap)) return false;
        if (!map_ok(a.h_id_mor, b.h_id_mor, omap, hmap)) return false;
        if (!map_ok(a.v_id_mor, b.v_id_mor, omap, vmap)) return false;
        if (!map_ok(a.h_id_sq, b.h_id_sq, vmap, smap)) return false;
        if (!map_ok(a.v_id_sq, b.v_id_sq, hmap, smap)) return false;
        return true;
    };

    auto mor_candidates = [&](const Morphism& m, const std::vector<Morphism>& pool,
                              const std::set<Id>& used) {
        std::vector<Id> out;
        auto push_if = [&](const Morphism& c) {
            if (used.count(c.id)) return;
            auto s = omap.find(m.src);
            auto t = omap.find(m.tgt);
            if (s != omap.end() && c.src != s->second) return;
            if (t != omap.end() && c.tgt != t->second) return;
            out.push_back(c.id);
        };
        for (const Morphism& c : pool)
            if (c.id == m.id) push_if(c);
        for (const Morphism& c : pool)
            if (c.id != m.id) push_if(c);
        return out;
    };

    std::function<bool(std::size_t)> assign_squares = [&](std::size_t i) -> bool {
        if (i == a.squares.size()) return consistent();
        const SquareRec& s = a.squares[i];
        std::vector<Id> cands;
        auto push_if = [&](const SquareRec& c) {
            if (sused.count(c.id)) return;
            if (c.top != hmap.at(s.top) || c.bottom != hmap.at(s.bottom)) return;
            if (c.left != vmap.at(s.left) || c.right != vmap.at(s.right)) return;
            cands.push_back(c.id);
        };
        for (const SquareRec& c : b.squares)
            if (c.id == s.id) push_if(c);
        for (const SquareRec& c : b.squares)
            if (c.id != s.id) push_if(c);
        for (const Id& cid : cands) {
            if (!ss.tick()) return false;
            smap[s.id] = cid;
            sused.insert(cid);
            bool ok = true;
            // early consistency on the square tables restricted to assigned ids
            ok = table_ok(a.hcomp_sq, b.hcomp_sq, smap) && table_ok(a.vcomp_sq, b.vcomp_sq, smap);
            if (ok && assign_squares(i + 1)) return true;
            smap.erase(s.id);
            sused.erase(cid);
            if (ss.exhausted) return false;
        }
        return false;
    };

    std::function<bool(std::size_t)> assign_vmor = [&](std::size_t i) -> bool {
        if (i == a.vmor.size()) return assign_squares(0);
        const Morphism& m = a.vmor[i];
        for (const Id& cid : mor_candidates(m, b.vmor, vused)) {
            if (!ss.tick()) return false;
            vmap[m.id] = cid;
            vused.insert(cid);
            if (table_ok(a.vcomp_mor, b.vcomp_mor, vmap) && assign_vmor(i + 1)) return true;
            vmap.erase(m.id);
            vused.erase(cid);
            if (ss.exhausted) return false;
        }
        return false;
    };

    std::function<bool(std::size_t)> assign_hmor = [&](std::size_t i) -> bool {
        if (i == a.hmor.size()) return assign_vmor(0);
        const Morphism& m = a.hmor[i];
        for (const Id& cid : mor_candidates(m, b.hmor, hused)) {
            if (!ss.tick()) return false;
            hmap[m.id] = cid;
            hused.insert(cid);
            if (table_ok(a.hcomp_mor, b.hcomp_mor, hmap) && assign_hmor(i + 1)) return true;
            hmap.erase(m.id);
            hused.erase(cid);
            if (ss.exhausted) return false;
        }
        return false;
    };

    std::function<bool(std::size_t)> assign_obj = [&](std::size_t i) -> bool {
        if (i == a.objects.size()) return assign_hmor(0);
        const Id& o = a.objects[i];
        std::vector<Id> cands;
        for (const Id& c : b.objects)
            if (c == o && !oused.count(c)) cands.push_back(c);
        for (const Id& c : b.objects)
            if (c != o && !oused.count(c)) cands.push_back(c);
        for (const Id& cid : cands) {
            if (!ss.tick()) return false;
            omap[o] = cid;
            oused.insert(cid);
            if (assign_obj(i + 1)) return true;
            omap.erase(o);
            oused.erase(cid);
            if (ss.exhausted) return false;
        }
        return false;
    };

    bool ok = assign_obj(0);
    res.nodes = ss.nodes;
    if (ss.exhausted && !ok) {
        res.status = IsoStatus::BudgetExceeded;
        return res;
    }
    if (!ok) {
        res.status = IsoStatus::NoIso;
        return res;
    }
    res.status = IsoStatus::Witness;
    auto invert = [](const std::map<Id, Id>& m) {
        std::map<Id, Id> out;
        for (const auto& [k, v] : m) out[v] = k;
        return out;
    };
    res.witness.forward["objects"] = omap;
    res.witness.forward["hmor"] = hmap;
    res.witness.forward["vmor"] = vmap;
    res.witness.forward["squares"] = smap;
    res.witness.backward["objects"] = invert(omap);
    res.witness.backward["hmor"] = invert(hmap);
    res.witness.backward["vmor"] = invert(vmap);
    res.witness.backward["squares"] = invert(smap);
    return res;
}

// ---------------------------------------------------------------------------
// grid pasting
// ---------------------------------------------------------------------------

Id grid_compose(const DoubleCategory& d, const std::vector<std::vector<Id>>& grid,
                bool check_interchange) {
    if (grid.empty() || grid.front().empty()) throw OpError("InvalidInput", "empty grid");
    const std::size_t rows = grid.size(), cols = grid.front().size();
    for (const auto& row : grid)
        if (row.size() != cols) throw OpError("InvalidInput", "ragged grid");

    std::map<Id, const SquareRec*> six;
    for (const SquareRec& s : d.squares) six[s.id] = &s;
    for (std::size_t rr = 0; rr < rows; ++rr)
        for (std::size_t cc = 0; cc < cols; ++cc) {
            auto it = six.find(grid[rr][cc]);
            if (it == six.end())
                throw OpError("BoundaryMismatch", "unknown square at cell (" + std::to_string(rr) + "," + std::to_string(cc) + ")");
        }
    for (std::size_t rr = 0; rr < rows; ++rr)
        for (std::size_t cc = 0; cc + 1 < cols; ++cc)
            if (six.at(grid[rr][cc])->right != six.at(grid[rr][cc + 1])->left)
                throw OpError("BoundaryMismatch",
                              "right/left mismatch at cell (" + std::to_string(rr) + "," + std::to_string(cc) + ")");
    for (std::size_t rr = 0; rr + 1 < rows; ++rr)
        for (std::size_t cc = 0; cc < cols; ++cc)
            if (six.at(grid[rr][cc])->bottom != six.at(grid[rr + 1][cc])->top)
                throw OpError("BoundaryMismatch",
                              "bottom/top mismatch at cell (" + std::to_string(rr) + "," + std::to_string(cc) + ")");

    auto compose_row = [&](const std::vector<Id>& row) {
        Id acc = row.front();
        for (std::size_t i = 1; i < row.size(); ++i) acc = sq_beside(d, acc, row[i]);
        return acc;
    };
    Id result = compose_row(grid.front());
    for (std::size_t rr = 1; rr < rows; ++rr) result = sq_above(d, result, compose_row(grid[rr]));

    if (check_interchange) {
        Id byCols;
        for (std::size_t cc = 0; cc < cols; ++cc) {
            Id col = grid[0][cc];
            for (std::size_t rr = 1; rr < rows; ++rr) col = sq_above(d, col, grid[rr][cc]);
            byCols = (cc == 0) ? col : sq_beside(d, byCols, col);
        }
        if (byCols != result)
            throw OpError("InterchangeMismatch", "rows-first and columns-first composites differ");
    }
    return result;
}

}  // namespace foldbox
