#include "foldbox/folding.hpp"

#include <algorithm>
#include <set>
#include <unordered_map>

namespace foldbox {

namespace {

struct SquareIndex {
    std::unordered_map<std::string, const SquareRec*> by_id;
    std::map<std::vector<Id>, std::vector<const SquareRec*>> by_boundary;  // (top,bottom,left,right)

    explicit SquareIndex(const DoubleCategory& d) {
        for (const SquareRec& s : d.squares) {
            by_id.emplace(s.id, &s);
            by_boundary[{s.top, s.bottom, s.left, s.right}].push_back(&s);
        }
    }
    const SquareRec* get(const Id& id) const {
        auto it = by_id.find(id);
        return it == by_id.end() ? nullptr : it->second;
    }
    const std::vector<const SquareRec*>* boundary(const Id& top, const Id& bottom, const Id& left,
                                                  const Id& right) const {
        auto it = by_boundary.find(std::vector<Id>{top, bottom, left, right});
        return it == by_boundary.end() ? nullptr : &it->second;
    }
};

// i_A: the identity square with identity boundary at object A.
Id corner_identity(const DoubleCategory& d, const Id& a) {
    return d.h_id_sq.at(d.v_id_mor.at(a));
}

bool is_vertical_identity(const DoubleCategory& d, const Id& j) {
    for (const auto& [a, v] : d.v_id_mor)
        if (v == j) return true;
    return false;
}

}  // namespace

ValidationReport validate_holonomy(const DoubleCategory& d, const Holonomy& h, const Caps& caps) {
    ValidationReport r;
    (void)caps;
    std::unordered_map<std::string, const Morphism*> hix, vix;
    for (const Morphism& m : d.hmor) hix.emplace(m.id, &m);
    for (const Morphism& m : d.vmor) vix.emplace(m.id, &m);

    for (const Morphism& j : d.vmor)
        if (!h.bar.count(j.id))
            r.structural_error("NON_TOTAL_TABLE", {j.id}, "bar missing for vertical morphism " + j.id);
    for (const auto& [j, f] : h.bar) {
        if (!vix.count(j)) {
            r.structural_error("DANGLING_REFERENCE", {j}, "bar key " + j + " is not a vertical morphism");
            continue;
        }
        if (!hix.count(f)) {
            r.structural_error("DANGLING_REFERENCE", {j, f}, "bar value " + f + " is not a horizontal morphism");
            continue;
        }
        if (hix.at(f)->src != vix.at(j)->src || hix.at(f)->tgt != vix.at(j)->tgt)
            r.violation("HOLONOMY_ENDPOINTS", {j, f}, "bar(" + j + ") does not share endpoints with " + j);
    }
    if (!r.well_formed()) return r;

    for (const auto& [a, j] : d.v_id_mor)
        if (h.bar.at(j) != d.h_id_mor.at(a))
            r.violation("HOLONOMY_UNIT", {a, j}, "bar(1^v_" + a + ") != 1^h_" + a);
    for (const auto& [key, j12] : d.vcomp_mor) {
        auto comp = d.hcomp_mor.find({h.bar.at(key.first), h.bar.at(key.second)});
        if (comp != d.hcomp_mor.end() && comp->second != h.bar.at(j12))
            r.violation("HOLONOMY_COMPOSITION", {key.first, key.second},
                        "bar([" + key.first + " ; " + key.second + "]) != [bar ; bar]");
    }
    r.sort();
    return r;
}

ValidationReport validate_folding(const DoubleCategory& d, const Folding& f, const Caps& caps) {
    ValidationReport r = validate_holonomy(d, f.holonomy, caps);
    if (!r.well_formed()) return r;
    SquareIndex six(d);

    for (const SquareRec& s : d.squares)
        if (!f.lambda.count(s.id))
            r.structural_error("NON_TOTAL_TABLE", {s.id}, "lambda missing for square " + s.id);
    for (const auto& [a, b] : f.lambda) {
        if (!six.get(a)) r.structural_error("DANGLING_REFERENCE", {a}, "lambda key " + a + " unknown");
        if (!six.get(b)) r.structural_error("DANGLING_REFERENCE", {a, b}, "lambda value " + b + " unknown");
    }
    if (!r.well_formed()) return r;

    const auto& bar = f.holonomy.bar;
    auto folded_boundary = [&](const SquareRec& s) -> std::optional<std::vector<Id>> {
        auto top = d.hcomp_mor.find({s.top, bar.at(s.right)});
        auto bottom = d.hcomp_mor.find({bar.at(s.left), s.bottom});
        if (top == d.hcomp_mor.end() || bottom == d.hcomp_mor.end()) return std::nullopt;
        const Morphism* l = d.vertical(s.left);
        const Morphism* rr = d.vertical(s.right);
        return std::vector<Id>{top->second, bottom->second, d.v_id_mor.at(l->src), d.v_id_mor.at(rr->tgt)};
    };

    // Boundary shape of every fold image.
    for (const SquareRec& s : d.squares) {
        auto fb = folded_boundary(s);
        if (!fb) continue;
        const SquareRec* img = six.get(f.lambda.at(s.id));
        if (std::vector<Id>{img->top, img->bottom, img->left, img->right} != *fb)
            r.violation("FOLD_BOUNDARY", {s.id, img->id}, "lambda(" + s.id + ") has the wrong folded boundary");
    }

    // Per-boundary bijectivity.
    std::map<std::vector<Id>, std::vector<const SquareRec*>> classes;
    for (const SquareRec& s : d.squares) classes[{s.top, s.bottom, s.left, s.right}].push_back(&s);
    for (const auto& [bd, members] : classes) {
        auto fb = folded_boundary(*members.front());
        if (!fb) continue;
        const auto* targets = six.boundary((*fb)[0], (*fb)[1], (*fb)[2], (*fb)[3]);
        std::set<Id> images;
        for (const SquareRec* s : members) {
            Id img = f.lambda.at(s->id);
            if (!images.insert(img).second)
                r.violation("FOLD_BIJECTIVE", {s->id, img}, "lambda is not injective on boundary class of " + s->id);
        }
        std::size_t target_count = targets ? targets->size() : 0;
        if (images.size() != target_count) {
            r.violation("FOLD_BIJECTIVE", bd,
                        "lambda is not onto the folded boundary class (" + std::to_string(images.size()) +
                            " images, " + std::to_string(target_count) + " targets)");
        } else if (targets) {
            for (const SquareRec* t : *targets)
                if (!images.count(t->id))
                    r.violation("FOLD_BIJECTIVE", {t->id}, "square " + t->id + " is not a lambda image of its class");
        }
    }

    // (i) identity on squares with identity vertical sides.
    for (const SquareRec& s : d.squares) {
        if (is_vertical_identity(d, s.left) && is_vertical_identity(d, s.right)) {
            if (f.lambda.at(s.id) != s.id)
                r.violation("FOLD_AX_I", {s.id}, "lambda moves the trivially-bounded square " + s.id);
        }
    }

    auto lam = [&](const Id& s) { return f.lambda.at(s); };
    auto iv = [&](const Id& hm) { return d.v_id_sq.at(hm); };

    // (ii) horizontal composition.
    for (const auto& [key, ab] : d.hcomp_sq) {
        const SquareRec* a = six.get(key.first);
        const SquareRec* b = six.get(key.second);
        if (!a || !b) continue;
        try {
            Id row1 = sq_beside(d, iv(a->top), lam(b->id));
            Id row2 = sq_beside(d, lam(a->id), iv(b->bottom));
            if (sq_above(d, row1, row2) != lam(ab))
                r.violation("FOLD_AX_II", {a->id, b->id}, "lambda does not preserve [" + a->id + " " + b->id + "]");
        } catch (const OpError&) {
            // missing composites already reported by the double-category validator
        }
    }

    // (iii) vertical composition.
    for (const auto& [key, ab] : d.vcomp_sq) {
        const SquareRec* a = six.get(key.first);
        const SquareRec* b = six.get(key.second);
        if (!a || !b) continue;
        try {
            Id row1 = sq_beside(d, lam(a->id), iv(bar.at(b->right)));
            Id row2 = sq_beside(d, iv(bar.at(a->left)), lam(b->id));
            if (sq_above(d, row1, row2) != lam(ab))
                r.violation("FOLD_AX_III", {a->id, b->id}, "lambda does not preserve [" + a->id + " ; " + b->id + "]");
        } catch (const OpError&) {
        }
    }

    // (iv) identity squares.
    for (const auto& [j, ih] : d.h_id_sq) {
        if (f.lambda.at(ih) != iv(bar.at(j)))
            r.violation("FOLD_AX_IV", {j}, "lambda(i^h_" + j + ") != i^v_{bar " + j + "}");
    }
    r.sort();
    return r;
}

ValidationReport validate_connection_pair(const DoubleCategory& d, const ConnectionPair& cp,
                                          const Caps& caps) {
    ValidationReport r = validate_holonomy(d, cp.holonomy, caps);
    if (!r.well_formed()) return r;
    SquareIndex six(d);
    const auto& bar = cp.holonomy.bar;

    for (const Morphism& j : d.vmor) {
        if (!cp.gamma.count(j.id))
            r.structural_error("NON_TOTAL_TABLE", {j.id}, "gamma missing for " + j.id);
        if (!cp.gamma_prime.count(j.id))
            r.structural_error("NON_TOTAL_TABLE", {j.id}, "gamma_prime missing for " + j.id);
    }
    for (const auto& [j, s] : cp.gamma)
        if (!six.get(s)) r.structural_error("DANGLING_REFERENCE", {j, s}, "gamma value unknown");
    for (const auto& [j, s] : cp.gamma_prime)
        if (!six.get(s)) r.structural_error("DANGLING_REFERENCE", {j, s}, "gamma_prime value unknown");
    if (!r.well_formed()) return r;

    for (const Morphism& j : d.vmor) {
        const SquareRec* g = six.get(cp.gamma.at(j.id));
        if (g->top != bar.at(j.id) || g->left != j.id || g->right != d.v_id_mor.at(j.tgt) ||
            g->bottom != d.h_id_mor.at(j.tgt))
            r.violation("CONN_BOUNDARY_GAMMA", {j.id, g->id}, "Gamma(" + j.id + ") has the wrong boundary");
        const SquareRec* gp = six.get(cp.gamma_prime.at(j.id));
        if (gp->top != d.h_id_mor.at(j.src) || gp->left != d.v_id_mor.at(j.src) || gp->right != j.id ||
            gp->bottom != bar.at(j.id))
            r.violation("CONN_BOUNDARY_GAMMA_PRIME", {j.id, gp->id}, "Gamma'(" + j.id + ") has the wrong boundary");
    }
    for (const auto& [a, j] : d.v_id_mor) {
        Id ia = corner_identity(d, a);
        if (cp.gamma.at(j) != ia)
            r.violation("CONN_IDENTITY", {a, j}, "Gamma(1^v_" + a + ") != i_" + a);
        if (cp.gamma_prime.at(j) != ia)
            r.violation("CONN_IDENTITY", {a, j}, "Gamma'(1^v_" + a + ") != i_" + a);
    }
    for (const auto& [key, j12] : d.vcomp_mor) {
        const Id& j1 = key.first;
        const Id& j2 = key.second;
        try {
            Id row1 = sq_beside(d, cp.gamma.at(j1), d.v_id_sq.at(bar.at(j2)));
            Id row2 = sq_beside(d, d.h_id_sq.at(j2), cp.gamma.at(j2));
            if (sq_above(d, row1, row2) != cp.gamma.at(j12))
                r.violation("TRANSPORT_LAW_GAMMA", {j1, j2}, "transport law fails for Gamma at [" + j1 + " ; " + j2 + "]");
            Id p1 = sq_beside(d, cp.gamma_prime.at(j1), d.h_id_sq.at(j1));
            Id p2 = sq_beside(d, d.v_id_sq.at(bar.at(j1)), cp.gamma_prime.at(j2));
            if (sq_above(d, p1, p2) != cp.gamma_prime.at(j12))
                r.violation("TRANSPORT_LAW_GAMMA_PRIME", {j1, j2},
                            "transport law fails for Gamma' at [" + j1 + " ; " + j2 + "]");
        } catch (const OpError&) {
        }
    }
    for (const Morphism& j : d.vmor) {
        try {
            if (sq_beside(d, cp.gamma_prime.at(j.id), cp.gamma.at(j.id)) != d.v_id_sq.at(bar.at(j.id)))
                r.violation("CONN_AX_III_H", {j.id}, "[Gamma'(j) Gamma(j)] != i^v_{bar j} at " + j.id);
            if (sq_above(d, cp.gamma_prime.at(j.id), cp.gamma.at(j.id)) != d.h_id_sq.at(j.id))
                r.violation("CONN_AX_III_V", {j.id}, "[Gamma'(j) ; Gamma(j)] != i^h_j at " + j.id);
        } catch (const OpError&) {
        }
    }
    r.sort();
    return r;
}

ValidationReport validate_thin_structure(const DoubleCategory& d, const ThinStructure& th,
                                         const Caps& caps) {
    ValidationReport r;
    (void)caps;
    if (!is_edge_symmetric(d)) {
        r.structural_error("NOT_EDGE_SYMMETRIC", {}, "thin structures require an edge-symmetric base");
        return r;
    }
    SquareIndex six(d);
    std::unordered_map<std::string, const Morphism*> mix;
    for (const Morphism& m : d.hmor) mix.emplace(m.id, &m);

    auto comp = [&](const Id& a, const Id& b) -> std::optional<Id> {  // a then b
        auto it = d.hcomp_mor.find({a, b});
        return it == d.hcomp_mor.end() ? std::optional<Id>() : std::optional<Id>(it->second);
    };

    // Enumerate commuting boundaries of the edge category.
    std::set<std::vector<Id>> commuting;
    for (const Morphism& f : d.hmor)
        for (const Morphism& j : d.hmor) {
            if (j.src != f.src) continue;
            for (const Morphism& k : d.hmor) {
                if (k.src != f.tgt) continue;
                auto kf = comp(f.id, k.id);
                if (!kf) continue;
                for (const Morphism& g : d.hmor) {
                    if (g.src != j.tgt || g.tgt != k.tgt) continue;
                    auto gj = comp(j.id, g.id);
                    if (gj && *gj == *kf) commuting.insert({f.id, j.id, k.id, g.id});
                }
            }
        }
    for (const auto& bd : commuting)
        if (!th.theta.count(bd))
            r.structural_error("NON_TOTAL_TABLE", bd, "theta missing a commuting boundary");
    for (const auto& [bd, s] : th.theta) {
        if (!commuting.count(bd)) {
            r.violation("THIN_UNIQUE", bd, "theta defined on a non-commuting boundary");
            continue;
        }
        const SquareRec* sq = six.get(s);
        if (!sq) {
            r.structural_error("DANGLING_REFERENCE", {s}, "theta value " + s + " unknown");
            continue;
        }
        if (sq->top != bd[0] || sq->left != bd[1] || sq->right != bd[2] || sq->bottom != bd[3])
            r.violation("THIN_BOUNDARY", bd, "thin filler has the wrong boundary");
    }
    if (!r.well_formed()) return r;

    for (const Morphism& f : d.hmor) {
        Id ia = d.v_id_mor.at(f.src);
        Id ib = d.v_id_mor.at(f.tgt);
        auto it = th.theta.find({f.id, ia, ib, f.id});
        if (it != th.theta.end() && it->second != d.v_id_sq.at(f.id))
            r.violation("THIN_UNIT", {f.id}, "thin filler of (f,1,1,f) is not i^v_f at " + f.id);
        auto it2 = th.theta.find({d.h_id_mor.at(f.src), f.id, f.id, d.h_id_mor.at(f.tgt)});
        if (it2 != th.theta.end() && it2->second != d.h_id_sq.at(f.id))
            r.violation("THIN_UNIT", {f.id}, "thin filler of (1,j,j,1) is not i^h_j at " + f.id);
    }

    // Functoriality for both compositions of commutative squares.
    for (const auto& [b1, s1] : th.theta) {
        for (const auto& [b2, s2] : th.theta) {
            // horizontal: right of b1 = left of b2
            if (b1[2] == b2[1]) {
                auto top = comp(b1[0], b2[0]);
                auto bot = comp(b1[3], b2[3]);
                if (top && bot) {
                    auto whole = th.theta.find({*top, b1[1], b2[2], *bot});
                    if (whole != th.theta.end()) {
                        try {
                            if (sq_beside(d, s1, s2) != whole->second)
                                r.violation("THIN_FUNCTORIAL_H", {s1, s2}, "thin fillers do not compose horizontally");
                        } catch (const OpError&) {
                        }
                    }
                }
            }
            // vertical: bottom of b1 = top of b2
            if (b1[3] == b2[0]) {
                auto left = comp(b1[1], b2[1]);
                auto right = comp(b1[2], b2[2]);
                if (left && right) {
                    auto whole = th.theta.find({b1[0], *left, *right, b2[3]});
                    if (whole != th.theta.end()) {
                        try {
                            if (sq_above(d, s1, s2) != whole->second)
                                r.violation("THIN_FUNCTORIAL_V", {s1, s2}, "thin fillers do not compose vertically");
                        } catch (const OpError&) {
                        }
                    }
                }
            }
        }
    }
    r.sort();
    return r;
}

ValidationReport validate_folding_morphism(const DoubleCategory& d, const Folding& f1,
                                           const Folding& f2, const FoldingMorphism& fm,
                                           const Caps& caps) {
    ValidationReport r;
    (void)caps;
    SquareIndex six(d);
    for (const Morphism& j : d.vmor)
        if (!fm.theta.count(j.id))
            r.structural_error("NON_TOTAL_TABLE", {j.id}, "theta missing for " + j.id);
    for (const auto& [j, s] : fm.theta)
        if (!six.get(s)) r.structural_error("DANGLING_REFERENCE", {j, s}, "theta value unknown");
    if (!r.well_formed()) return r;

    const auto& bar1 = f1.holonomy.bar;
    const auto& bar2 = f2.holonomy.bar;
    for (const Morphism& j : d.vmor) {
        const SquareRec* s = six.get(fm.theta.at(j.id));
        if (s->top != bar1.at(j.id) || s->bottom != bar2.at(j.id) ||
            s->left != d.v_id_mor.at(j.src) || s->right != d.v_id_mor.at(j.tgt))
            r.violation("FM_BOUNDARY", {j.id, s->id}, "theta(" + j.id + ") has the wrong boundary");
    }
    for (const auto& [a, j] : d.v_id_mor)
        if (fm.theta.at(j) != corner_identity(d, a))
            r.violation("FM_IDENTITY", {a, j}, "theta(1^v_" + a + ") != i_" + a);
    for (const auto& [key, j12] : d.vcomp_mor) {
        try {
            if (sq_beside(d, fm.theta.at(key.first), fm.theta.at(key.second)) != fm.theta.at(j12))
                r.violation("FM_COMPOSITION", {key.first, key.second},
                            "theta([" + key.first + " ; " + key.second + "]) != [theta theta]");
        } catch (const OpError&) {
        }
    }
    for (const SquareRec& s : d.squares) {
        try {
            Id lhs = sq_above(d, f1.lambda.at(s.id),
                              sq_beside(d, fm.theta.at(s.left), d.v_id_sq.at(s.bottom)));
            Id rhs = sq_above(d, sq_beside(d, d.v_id_sq.at(s.top), fm.theta.at(s.right)),
                              f2.lambda.at(s.id));
            if (lhs != rhs) r.violation("FM_NATURALITY", {s.id}, "naturality fails at square " + s.id);
        } catch (const OpError&) {
        }
    }
    r.sort();
    return r;
}

// ---------------------------------------------------------------------------
// conversions
// ---------------------------------------------------------------------------

Folding folding_from_connection(const DoubleCategory& d, const ConnectionPair& cp) {
    if (!validate_connection_pair(d, cp).valid())
        throw OpError("InvalidInput", "folding_from_connection: connection pair invalid");
    Folding out;
    out.holonomy = cp.holonomy;
    for (const SquareRec& s : d.squares) {
        Id mid = sq_beside(d, cp.gamma_prime.at(s.left), s.id);
        out.lambda[s.id] = sq_beside(d, mid, cp.gamma.at(s.right));
    }
    return out;
}

ConnectionPair connection_from_folding(const DoubleCategory& d, const Folding& f) {
    // Light gate only: the preimage search below doubles as the bijectivity
    // check and reports MissingPreimage with the witness boundary.
    if (!validate_holonomy(d, f.holonomy).valid())
        throw OpError("InvalidInput", "connection_from_folding: holonomy invalid");
    for (const SquareRec& s : d.squares)
        if (!f.lambda.count(s.id))
            throw OpError("InvalidInput", "connection_from_folding: lambda missing " + s.id);
    SquareIndex six(d);
    ConnectionPair cp;
    cp.holonomy = f.holonomy;
    for (const Morphism& j : d.vmor) {
        Id jbar = f.holonomy.bar.at(j.id);
        Id target = d.v_id_sq.at(jbar);
        // Gamma(j): unique preimage of i^v_{jbar} at boundary (jbar, 1^h, j, 1^v)
        const auto* g_cands = six.boundary(jbar, d.h_id_mor.at(j.tgt), j.id, d.v_id_mor.at(j.tgt));
        std::vector<Id> hits;
        if (g_cands)
            for (const SquareRec* s : *g_cands)
                if (f.lambda.at(s->id) == target) hits.push_back(s->id);
        if (hits.size() != 1)
            throw OpError("MissingPreimage",
                          "lambda is not bijective at the Gamma boundary of " + j.id + " (" +
                              std::to_string(hits.size()) + " preimages)");
        cp.gamma[j.id] = hits.front();

        const auto* gp_cands = six.boundary(d.h_id_mor.at(j.src), jbar, d.v_id_mor.at(j.src), j.id);
        hits.clear();
        if (gp_cands)
            for (const SquareRec* s : *gp_cands)
                if (f.lambda.at(s->id) == target) hits.push_back(s->id);
        if (hits.size() != 1)
            throw OpError("MissingPreimage",
                          "lambda is not bijective at the Gamma' boundary of " + j.id + " (" +
                              std::to_string(hits.size()) + " preimages)");
        cp.gamma_prime[j.id] = hits.front();
    }
    return cp;
}

FoldingIso folding_iso(const DoubleCategory& d, const Folding& f1, const Folding& f2) {
    ConnectionPair cp1 = connection_from_folding(d, f1);
    FoldingIso out;
    for (const Morphism& j : d.vmor) {
        out.fwd.theta[j.id] = f2.lambda.at(cp1.gamma.at(j.id));
        out.bwd.theta[j.id] = f2.lambda.at(cp1.gamma_prime.at(j.id));
    }
    return out;
}

ThinStructure connection_to_thin(const DoubleCategory& d, const ConnectionPair& cp) {
    if (!is_edge_symmetric(d)) throw OpError("NotEdgeSymmetric", "connection_to_thin: base not edge-symmetric");
    for (const auto& [j, f] : cp.holonomy.bar)
        if (f != j) throw OpError("NontrivialHolonomy", "connection_to_thin: bar(" + j + ") != " + j);
    if (!validate_connection_pair(d, cp).valid())
        throw OpError("InvalidInput", "connection_to_thin: connection pair invalid");

    ThinStructure th;
    auto comp = [&](const Id& a, const Id& b) -> std::optional<Id> {
        auto it = d.hcomp_mor.find({a, b});
        return it == d.hcomp_mor.end() ? std::optional<Id>() : std::optional<Id>(it->second);
    };
    for (const Morphism& f : d.hmor)
        for (const Morphism& j : d.hmor) {
            if (j.src != f.src) continue;
            for (const Morphism& k : d.hmor) {
                if (k.src != f.tgt) continue;
                auto kf = comp(f.id, k.id);
                if (!kf) continue;
                for (const Morphism& g : d.hmor) {
                    if (g.src != j.tgt || g.tgt != k.tgt) continue;
                    auto gj = comp(j.id, g.id);
                    if (!gj || *gj != *kf) continue;
                    // rows: [i^v_f Gamma'(k)], i^v_{[f k]}, [Gamma(j) i^v_g]
                    Id r1 = sq_beside(d, d.v_id_sq.at(f.id), cp.gamma_prime.at(k.id));
                    Id r2 = d.v_id_sq.at(*kf);
                    Id r3 = sq_beside(d, cp.gamma.at(j.id), d.v_id_sq.at(g.id));
                    th.theta[{f.id, j.id, k.id, g.id}] = sq_above(d, sq_above(d, r1, r2), r3);
                }
            }
        }
    return th;
}

ConnectionPair thin_to_connection(const DoubleCategory& d, const ThinStructure& th) {
    if (!is_edge_symmetric(d)) throw OpError("NotEdgeSymmetric", "thin_to_connection: base not edge-symmetric");
    if (!validate_thin_structure(d, th).valid())
        throw OpError("InvalidInput", "thin_to_connection: thin structure invalid");
    ConnectionPair cp;
    for (const Morphism& j : d.vmor) {
        cp.holonomy.bar[j.id] = j.id;
        Id idA = d.h_id_mor.at(j.src);
        Id idC = d.h_id_mor.at(j.tgt);
        cp.gamma[j.id] = th.theta.at({j.id, j.id, idC, idC});
        cp.gamma_prime[j.id] = th.theta.at({idA, idA, j.id, j.id});
    }
    return cp;
}

// ---------------------------------------------------------------------------
// mixed composition
// ---------------------------------------------------------------------------

MixedTerm mixed_then(const DoubleCategory& d, const Holonomy& h, const MixedTerm& first,
                     const MixedTerm& second) {
    using K = MixedTerm::Kind;
    auto as_hmor = [&](const MixedTerm& t) -> Id {
        if (t.kind == K::VMor) return h.bar.at(t.id);
        return t.id;
    };
    auto as_cell = [&](const MixedTerm& t) -> Id {
        if (t.kind == K::HCell) return t.id;
        return d.v_id_sq.at(as_hmor(t));  // i^v of the (bar of the) morphism
    };
    if (first.kind == K::HCell || second.kind == K::HCell)
        return {K::HCell, sq_beside(d, as_cell(first), as_cell(second))};
    return {K::HMor, h_then(d, as_hmor(first), as_hmor(second))};
}

// ---------------------------------------------------------------------------
// holonomy extension
// ---------------------------------------------------------------------------

namespace {
Id inc_id(const Id& j) { return "inc(" + j + ")"; }
Id ivinc_id(const Id& j) { return "ivinc(" + j + ")"; }
Id ihx_id(const Id& j) { return "ihx(" + j + ")"; }
}  // namespace

HolonomyExtension extend_with_holonomy(const DoubleCategory& d, const Holonomy& h) {
    if (!validate_holonomy(d, h).valid()) throw OpError("InvalidInput", "extend_with_holonomy: holonomy invalid");
    HolonomyExtension out;
    DoubleCategory& e = out.extended;
    e.objects = d.objects;
    e.vmor = d.vmor;
    e.vcomp_mor = d.vcomp_mor;
    e.v_id_mor = d.v_id_mor;
    e.hmor = d.hmor;
    for (const Morphism& j : d.vmor) e.hmor.push_back({inc_id(j.id), j.src, j.tgt});

    std::set<Id> videntities;
    for (const auto& [a, j] : d.v_id_mor) videntities.insert(j);

    for (const Id& a : d.objects) e.h_id_mor[a] = inc_id(d.v_id_mor.at(a));

    // horizontal composition of the extended morphisms: mixed composition
    e.hcomp_mor = d.hcomp_mor;
    for (const Morphism& j : d.vmor) {
        for (const Morphism& f : d.hmor) {
            if (j.tgt == f.src) e.hcomp_mor[{inc_id(j.id), f.id}] = h_then(d, h.bar.at(j.id), f.id);
            if (f.tgt == j.src) e.hcomp_mor[{f.id, inc_id(j.id)}] = h_then(d, f.id, h.bar.at(j.id));
        }
        for (const Morphism& k : d.vmor)
            if (j.tgt == k.src) e.hcomp_mor[{inc_id(j.id), inc_id(k.id)}] = inc_id(v_then(d, j.id, k.id));
    }

    // squares
    e.squares = d.squares;
    for (const Morphism& j : d.vmor)
        e.squares.push_back({ivinc_id(j.id), inc_id(j.id), inc_id(j.id), d.v_id_mor.at(j.src), d.v_id_mor.at(j.tgt)});
    for (const Morphism& j : d.vmor)
        if (!videntities.count(j.id))
            e.squares.push_back({ihx_id(j.id), inc_id(d.v_id_mor.at(j.src)), inc_id(d.v_id_mor.at(j.tgt)), j.id, j.id});

    auto ihx = [&](const Id& j) -> Id {
        return videntities.count(j) ? ivinc_id(j) : ihx_id(j);
    };

    e.v_id_sq = d.v_id_sq;
    for (const Morphism& j : d.vmor) e.v_id_sq[inc_id(j.id)] = ivinc_id(j.id);
    for (const Morphism& j : d.vmor) e.h_id_sq[j.id] = ihx(j.id);

    // horizontal square composition
    e.hcomp_sq = d.hcomp_sq;
    for (const Morphism& j : d.vmor) {
        for (const SquareRec& s : d.squares) {
            if (s.left == d.v_id_mor.at(j.tgt))
                e.hcomp_sq[{ivinc_id(j.id), s.id}] = sq_beside(d, d.v_id_sq.at(h.bar.at(j.id)), s.id);
            if (s.right == d.v_id_mor.at(j.src))
                e.hcomp_sq[{s.id, ivinc_id(j.id)}] = sq_beside(d, s.id, d.v_id_sq.at(h.bar.at(j.id)));
        }
        for (const Morphism& k : d.vmor)
            if (j.tgt == k.src)
                e.hcomp_sq[{ivinc_id(j.id), ivinc_id(k.id)}] = ivinc_id(v_then(d, j.id, k.id));
    }
    for (const Morphism& j : d.vmor) {
        if (videntities.count(j.id)) continue;
        for (const SquareRec& s : e.squares) {
            if (s.left == j.id) e.hcomp_sq[{ihx_id(j.id), s.id}] = s.id;
            if (s.right == j.id) e.hcomp_sq[{s.id, ihx_id(j.id)}] = s.id;
        }
    }

    // vertical square composition
    e.vcomp_sq = d.vcomp_sq;
    for (const Morphism& j : d.vmor) e.vcomp_sq[{ivinc_id(j.id), ivinc_id(j.id)}] = ivinc_id(j.id);
    for (const Morphism& j : d.vmor)
        for (const Morphism& k : d.vmor) {
            if (j.tgt != k.src) continue;
            if (videntities.count(j.id) && videntities.count(k.id)) continue;  // handled above
            Id jk = v_then(d, j.id, k.id);
            e.vcomp_sq[{ihx(j.id), ihx(k.id)}] = ihx(jk);
        }

    for (const Morphism& j : d.vmor) out.inclusion.bar[j.id] = inc_id(j.id);

    DoubleFunctorData& p = out.projection;
    for (const Id& a : d.objects) p.obj_map[a] = a;
    for (const Morphism& f : d.hmor) p.hmor_map[f.id] = f.id;
    for (const Morphism& j : d.vmor) p.hmor_map[inc_id(j.id)] = h.bar.at(j.id);
    for (const Morphism& j : d.vmor) p.vmor_map[j.id] = j.id;
    for (const SquareRec& s : d.squares) p.sq_map[s.id] = s.id;
    for (const Morphism& j : d.vmor) p.sq_map[ivinc_id(j.id)] = d.v_id_sq.at(h.bar.at(j.id));
    for (const Morphism& j : d.vmor)
        if (!videntities.count(j.id)) p.sq_map[ihx_id(j.id)] = d.h_id_sq.at(j.id);
    return out;
}

// ---------------------------------------------------------------------------
// vertical factorization
// ---------------------------------------------------------------------------

std::pair<Id, Id> factor_square_vertically(const DoubleCategory& d, const Folding& f,
                                           const Id& alpha, const Id& part1, const Id& part2,
                                           FactorSide side) {
    const SquareRec* a = d.square(alpha);
    if (!a) throw OpError("InvalidInput", "unknown square " + alpha);
    auto split = d.vcomp_mor.find({part1, part2});
    if (split == d.vcomp_mor.end())
        throw OpError("SplitMismatch", "[" + part1 + " ; " + part2 + "] is not composable");
    ConnectionPair cp = connection_from_folding(d, f);

    if (side == FactorSide::Left) {
        if (split->second != a->left)
            throw OpError("SplitMismatch", "split does not compose to the left edge of " + alpha);
        Id helper = sq_above(d, d.h_id_sq.at(part1), cp.gamma_prime.at(part2));
        Id alpha1 = sq_beside(d, helper, alpha);
        Id alpha2 = sq_beside(d, cp.gamma.at(part2), d.v_id_sq.at(a->bottom));
        return {alpha1, alpha2};
    }
    if (split->second != a->right)
        throw OpError("SplitMismatch", "split does not compose to the right edge of " + alpha);
    Id alpha1 = sq_beside(d, d.v_id_sq.at(a->top), cp.gamma_prime.at(part1));
    Id helper = sq_above(d, cp.gamma.at(part1), d.h_id_sq.at(part2));
    Id alpha2 = sq_beside(d, alpha, helper);
    return {alpha1, alpha2};
}

// ---------------------------------------------------------------------------
// canonical foldings
// ---------------------------------------------------------------------------

Folding quintet_folding(const QuintetData& q) {
    Folding out;
    for (const Morphism& j : q.d.vmor) out.holonomy.bar[j.id] = j.id;
    for (const SquareRec& s : q.d.squares) out.lambda[s.id] = q.cell_of.at(s.id);
    return out;
}

Folding commutative_squares_folding(const DoubleCategory& box) {
    SquareIndex six(box);
    Folding out;
    for (const Morphism& j : box.vmor) out.holonomy.bar[j.id] = j.id;
    for (const SquareRec& s : box.squares) {
        Id top = h_then(box, s.top, s.right);
        Id bottom = h_then(box, s.left, s.bottom);
        const Morphism* l = box.vertical(s.left);
        const Morphism* rr = box.vertical(s.right);
        const auto* cands = six.boundary(top, bottom, box.v_id_mor.at(l->src), box.v_id_mor.at(rr->tgt));
        if (!cands || cands->size() != 1)
            throw OpError("InvalidInput", "commutative squares folding: filler not unique at " + s.id);
        out.lambda[s.id] = cands->front()->id;
    }
    return out;
}

Folding h_embed_folding(const DoubleCategory& hd) {
    Folding out;
    for (const Morphism& j : hd.vmor) out.holonomy.bar[j.id] = hd.h_id_mor.at(j.src);
    for (const SquareRec& s : hd.squares) out.lambda[s.id] = s.id;
    return out;
}

Folding adjunction_folding(const AdjunctionData& ad) {
    Folding out;
    for (const Morphism& j : ad.d.vmor) out.holonomy.bar[j.id] = ad.right_adjoint.at(j.id);
    for (const SquareRec& s : ad.d.squares) out.lambda[s.id] = ad.cell_of.at(s.id);
    return out;
}

std::optional<Id> vcomp_inverse(const DoubleCategory& d, const Id& square) {
    const SquareRec* s = d.square(square);
    if (!s) return std::nullopt;
    for (const SquareRec& x : d.squares) {
        if (x.top != s->bottom || x.bottom != s->top) continue;
        auto down = d.vcomp_sq.find({square, x.id});
        auto up = d.vcomp_sq.find({x.id, square});
        if (down == d.vcomp_sq.end() || up == d.vcomp_sq.end()) continue;
        auto ivt = d.v_id_sq.find(s->top);
        auto ivb = d.v_id_sq.find(s->bottom);
        if (ivt != d.v_id_sq.end() && ivb != d.v_id_sq.end() && down->second == ivt->second &&
            up->second == ivb->second)
            return x.id;
    }
    return std::nullopt;
}

Folding conjugate_folding(const DoubleCategory& d, const Folding& base,
                          const std::map<Id, Id>& theta) {
    // theta must be a functorial family of invertible cells jbar => jbar.
    for (const Morphism& j : d.vmor) {
        if (!theta.count(j.id)) throw OpError("InvalidInput", "theta missing " + j.id);
        const SquareRec* t = d.square(theta.at(j.id));
        Id jbar = base.holonomy.bar.at(j.id);
        if (!t || t->top != jbar || t->bottom != jbar)
            throw OpError("InvalidInput", "theta(" + j.id + ") is not an endo-cell of bar " + j.id);
    }
    for (const auto& [a, j] : d.v_id_mor)
        if (theta.at(j) != corner_identity(d, a))
            throw OpError("InvalidInput", "theta is not unit-normalized at " + a);
    for (const auto& [key, j12] : d.vcomp_mor)
        if (sq_beside(d, theta.at(key.first), theta.at(key.second)) != theta.at(j12))
            throw OpError("InvalidInput", "theta is not functorial at [" + key.first + " ; " + key.second + "]");

    std::map<Id, Id> theta_inv;
    for (const auto& [j, t] : theta) {
        auto inv = vcomp_inverse(d, t);
        if (!inv) throw OpError("NotInvertibleWitness", "theta(" + j + ") has no vertical inverse");
        theta_inv[j] = *inv;
    }

    Folding out;
    out.holonomy = base.holonomy;
    for (const SquareRec& s : d.squares) {
        Id pre = sq_beside(d, d.v_id_sq.at(s.top), theta_inv.at(s.right));
        Id post = sq_beside(d, theta.at(s.left), d.v_id_sq.at(s.bottom));
        out.lambda[s.id] = sq_above(d, sq_above(d, pre, base.lambda.at(s.id)), post);
    }
    return out;
}

}  // namespace foldbox
