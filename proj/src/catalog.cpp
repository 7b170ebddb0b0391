#include "foldbox/catalog.hpp"

#include <array>

namespace foldbox::catalog {

namespace {

// group from a permutation model: elements indexed, mul by composing
FinGroup group_from_perms(const std::vector<Id>& names, const std::vector<std::array<int, 3>>& perms) {
    const int n = static_cast<int>(names.size());
    auto compose = [](const std::array<int, 3>& a, const std::array<int, 3>& b) {
        // (a*b)(x) = a(b(x))
        return std::array<int, 3>{a[b[0]], a[b[1]], a[b[2]]};
    };
    auto find = [&](const std::array<int, 3>& p) {
        for (int i = 0; i < n; ++i)
            if (perms[i] == p) return i;
        throw OpError("InvalidInput", "permutation model is not closed");
    };
    FinGroup g;
    g.elements = names;
    g.unit = names[0];
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) g.mul[{names[i], names[j]}] = names[find(compose(perms[i], perms[j]))];
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j)
            if (g.mul.at({names[i], names[j]}) == g.unit) {
                g.inv[names[i]] = names[j];
                break;
            }
    }
    return g;
}

}  // namespace

FinGroup cyclic(int n, const std::string& stem) {
    FinGroup g;
    auto name = [&](int k) { return k == 0 ? Id("e") : Id(stem + std::to_string(k)); };
    for (int k = 0; k < n; ++k) g.elements.push_back(name(k));
    g.unit = "e";
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) g.mul[{name(a), name(b)}] = name((a + b) % n);
    for (int a = 0; a < n; ++a) g.inv[name(a)] = name((n - a) % n);
    return g;
}

FinGroup c2() {
    FinGroup g;
    g.elements = {"e", "t"};
    g.unit = "e";
    g.mul = {{{"e", "e"}, "e"}, {{"e", "t"}, "t"}, {{"t", "e"}, "t"}, {{"t", "t"}, "e"}};
    g.inv = {{"e", "e"}, {"t", "t"}};
    return g;
}

FinGroup c3() { return cyclic(3); }

FinGroup c4() { return cyclic(4, "c"); }

FinGroup c6() { return cyclic(6, "u"); }

FinGroup s3() {
    // permutations of {0,1,2}: e, r=(012), r2=(021), s=(01), sr, sr2
    std::vector<Id> names{"e", "r", "r2", "s", "sr", "sr2"};
    std::vector<std::array<int, 3>> perms{
        {0, 1, 2},  // e
        {1, 2, 0},  // r
        {2, 0, 1},  // r2
        {1, 0, 2},  // s
        {0, 2, 1},  // sr  = s∘r
        {2, 1, 0},  // sr2 = s∘r2
    };
    return group_from_perms(names, perms);
}

FinGroup klein() {
    FinGroup g;
    g.elements = {"e", "a", "b", "ab"};
    g.unit = "e";
    auto idx = [&](const Id& x) {
        for (std::size_t i = 0; i < g.elements.size(); ++i)
            if (g.elements[i] == x) return static_cast<int>(i);
        return -1;
    };
    // xor on 2-bit codes e=00 a=01 b=10 ab=11
    for (const Id& x : g.elements)
        for (const Id& y : g.elements) g.mul[{x, y}] = g.elements[idx(x) ^ idx(y)];
    for (const Id& x : g.elements) g.inv[x] = x;
    return g;
}

CrossedModule xm_c2_c4() {
    CrossedModule m;
    m.h = c2();
    m.g = c4();
    m.boundary = {{"e", "e"}, {"t", "c2"}};
    for (const Id& g : m.g.elements)
        for (const Id& a : m.h.elements) m.action[{g, a}] = a;
    return m;
}

CrossedModule xm_c3_s3() {
    CrossedModule m;
    m.h = c3();
    m.g = s3();
    m.boundary = {{"e", "e"}, {"g1", "r"}, {"g2", "r2"}};
    // conjugation: ^sigma r^i, written back in H coordinates
    std::map<Id, Id> to_g{{"e", "e"}, {"g1", "r"}, {"g2", "r2"}};
    std::map<Id, Id> from_g{{"e", "e"}, {"r", "g1"}, {"r2", "g2"}};
    for (const Id& g : m.g.elements)
        for (const Id& a : m.h.elements) {
            Id conj = m.g.times(m.g.times(g, to_g.at(a)), m.g.inverse(g));
            m.action[{g, a}] = from_g.at(conj);
        }
    return m;
}

CrossedModule xm_c3_c2_inv() { return xm_cn_c2_inv(3); }

CrossedModule xm_cn_c2_inv(int n) {
    CrossedModule m;
    m.h = cyclic(n, "h");
    m.g = c2();
    for (const Id& a : m.h.elements) m.boundary[a] = "e";
    for (const Id& a : m.h.elements) {
        m.action[{"e", a}] = a;
        m.action[{"t", a}] = m.h.inverse(a);
    }
    return m;
}

CrossedModule xm_klein_s3() {
    CrossedModule m;
    m.h = klein();
    m.g = s3();
    for (const Id& a : m.h.elements) m.boundary[a] = "e";
    // S3 permutes the involutions a, b, ab via its permutation model
    std::vector<Id> invol{"a", "b", "ab"};
    std::map<Id, std::array<int, 3>> perm{
        {"e", {0, 1, 2}}, {"r", {1, 2, 0}},  {"r2", {2, 0, 1}},
        {"s", {1, 0, 2}}, {"sr", {0, 2, 1}}, {"sr2", {2, 1, 0}},
    };
    for (const Id& g : m.g.elements) {
        m.action[{g, "e"}] = "e";
        for (int i = 0; i < 3; ++i) m.action[{g, invol[i]}] = invol[perm.at(g)[i]];
    }
    return m;
}

std::vector<FoldedEntry> Catalog::folded() const {
    return {
        {"box_bc2", box_bc2, box_bc2_fold},
        {"box_bc3", box_bc3, box_bc3_fold},
        {"box_bs3", box_bs3, box_bs3_fold},
        {"quintets_tg1", qtg1.d, qtg1_fold},
        {"quintets_tg2", qtg2.d, qtg2_fold},
        {"h_embed_tg2", htg2, htg2_fold},
        {"adjunctions_tg2", adtg2.d, adtg2_fold},
        {"double_group_c4", dg1.d, dg1.folding},
        {"double_group_c2_c4", dg2.d, dg2.folding},
    };
}

const Catalog& get() {
    static const Catalog cat = [] {
        Catalog c;
        c.bc2 = group_to_one_object_groupoid(c2());
        c.bc3 = group_to_one_object_groupoid(c3());
        c.bs3 = group_to_one_object_groupoid(s3());
        c.terminal.objects = {"*"};
        c.terminal.morphisms = {{"1", "*", "*"}};
        c.terminal.identity = {{"*", "1"}};
        c.terminal.comp = {{{"1", "1"}, "1"}};

        c.box_bc2 = commutative_squares(c.bc2.cat);
        c.box_bc3 = commutative_squares(c.bc3.cat);
        c.box_bs3 = commutative_squares(c.bs3.cat);
        c.box_bc2_fold = commutative_squares_folding(c.box_bc2);
        c.box_bc3_fold = commutative_squares_folding(c.box_bc3);
        c.box_bs3_fold = commutative_squares_folding(c.box_bs3);

        c.xm1 = xm_c2_c4();
        c.xm2 = xm_c3_s3();
        c.xm3 = xm_c3_c2_inv();

        c.tg1 = two_group_from_xmod(c.xm1);
        c.tg2 = two_group_from_xmod(c.xm3);
        c.qtg1 = quintets_with_cells(c.tg1.tg.cat);
        c.qtg2 = quintets_with_cells(c.tg2.tg.cat);
        c.qtg1_fold = quintet_folding(c.qtg1);
        c.qtg2_fold = quintet_folding(c.qtg2);

        c.htg2 = h_embed(c.tg2.tg.cat);
        c.vtg2 = v_embed(c.tg2.tg.cat);
        c.htg2_fold = h_embed_folding(c.htg2);

        c.adtg2 = adjunctions_with_data(c.tg2.tg.cat);
        c.adtg2_fold = adjunction_folding(c.adtg2);

        c.dg1_src.xm = c.xm1;
        c.dg1_src.i = c4();
        for (const Id& x : c.dg1_src.i.elements) c.dg1_src.p[x] = x;
        c.dg1 = xmod_to_double_group(c.dg1_src);

        c.dg2_src.xm = c.xm1;
        c.dg2_src.i = c2();
        c.dg2_src.p = {{"e", "e"}, {"t", "c2"}};
        c.dg2 = xmod_to_double_group(c.dg2_src);
        return c;
    }();
    return cat;
}

}  // namespace foldbox::catalog
