#include "foldbox/codec.hpp"

#include <set>

namespace foldbox {

namespace {

void put_list(Document& doc, const std::string& name, const std::vector<Id>& xs) {
    auto& t = doc.tables[name];
    for (const Id& x : xs) t.push_back({x});
}

void put_morphisms(Document& doc, const std::string& name, const std::vector<Morphism>& ms) {
    auto& t = doc.tables[name];
    for (const Morphism& m : ms) t.push_back({m.id, m.src, m.tgt});
}

void put_map(Document& doc, const std::string& name, const std::map<Id, Id>& m) {
    auto& t = doc.tables[name];
    for (const auto& [k, v] : m) t.push_back({k, v});
}

void put_pair_map(Document& doc, const std::string& name, const std::map<IdPair, Id>& m) {
    auto& t = doc.tables[name];
    for (const auto& [k, v] : m) t.push_back({k.first, k.second, v});
}

void put_scalar(Document& doc, const std::string& name, const Id& v) { doc.tables[name] = {{v}}; }

std::vector<Morphism> get_morphisms(const Document& doc, const std::string& name) {
    std::vector<Morphism> out;
    std::set<Id> seen;
    for (const auto& row : doc.table(name)) {
        if (!seen.insert(row[0]).second)
            throw ParseError(0, "duplicate id '" + row[0] + "' in section " + name);
        out.push_back({row[0], row[1], row[2]});
    }
    return out;
}

std::vector<Id> get_list(const Document& doc, const std::string& name) {
    std::vector<Id> out;
    std::set<Id> seen;
    for (const auto& row : doc.table(name)) {
        if (!seen.insert(row[0]).second)
            throw ParseError(0, "duplicate id '" + row[0] + "' in section " + name);
        out.push_back(row[0]);
    }
    return out;
}

std::map<Id, Id> get_map(const Document& doc, const std::string& name) {
    std::map<Id, Id> out;
    for (const auto& row : doc.table(name)) {
        if (out.count(row[0]))
            throw ParseError(0, "duplicate key '" + row[0] + "' in section " + name);
        out[row[0]] = row[1];
    }
    return out;
}

std::map<IdPair, Id> get_pair_map(const Document& doc, const std::string& name) {
    std::map<IdPair, Id> out;
    for (const auto& row : doc.table(name)) {
        IdPair key{row[0], row[1]};
        if (out.count(key))
            throw ParseError(0, "duplicate key '" + row[0] + "," + row[1] + "' in section " + name);
        out[key] = row[2];
    }
    return out;
}

Document make_doc(const std::string& kind) {
    Document doc;
    doc.schema_version = 1;
    doc.kind = kind;
    return doc;
}

void require_kind(const Document& doc, std::initializer_list<const char*> kinds) {
    for (const char* k : kinds)
        if (doc.kind == k) return;
    throw OpError("UnknownKind", "document kind '" + doc.kind + "' not accepted here");
}

}  // namespace

void check_document_shape(const Document& doc) {
    if (!kind_known(doc.kind)) throw OpError("UnknownKind", "unknown kind " + doc.kind);
    const auto& schema = kind_schema(doc.kind);
    for (const auto& [name, rows] : doc.tables) {
        const SectionSpec* spec = nullptr;
        for (const SectionSpec& s : schema)
            if (s.name == name) spec = &s;
        if (!spec) throw ParseError(0, "unknown section '" + name + "' for kind " + doc.kind);
        for (const auto& row : rows)
            if (row.size() != spec->arity)
                throw ParseError(0, "section '" + name + "' expects " + std::to_string(spec->arity) +
                                        " tokens, got " + std::to_string(row.size()));
    }
}

// ---- fincat ----

Document encode_category(const FinCategory& c) {
    Document doc = make_doc("category");
    put_list(doc, "objects", c.objects);
    put_morphisms(doc, "morphisms", c.morphisms);
    put_map(doc, "identity", c.identity);
    put_pair_map(doc, "comp", c.comp);
    return doc;
}

namespace {
FinCategory decode_category_sections(const Document& doc, const std::string& prefix = "") {
    FinCategory c;
    c.objects = get_list(doc, prefix + "objects");
    c.morphisms = get_morphisms(doc, prefix + "morphisms");
    c.identity = get_map(doc, prefix + "identity");
    c.comp = get_pair_map(doc, prefix + "comp");
    return c;
}
}  // namespace

FinCategory decode_category(const Document& doc) {
    require_kind(doc, {"category", "groupoid"});
    check_document_shape(doc);
    return decode_category_sections(doc);
}

Document encode_groupoid(const FinGroupoid& g) {
    Document doc = encode_category(g.cat);
    doc.kind = "groupoid";
    put_map(doc, "inv", g.inv);
    return doc;
}

FinGroupoid decode_groupoid(const Document& doc) {
    require_kind(doc, {"groupoid"});
    check_document_shape(doc);
    FinGroupoid g;
    g.cat = decode_category_sections(doc);
    g.inv = get_map(doc, "inv");
    return g;
}

namespace {
void encode_group_sections(Document& doc, const FinGroup& g, const std::string& prefix) {
    put_list(doc, prefix + "elements", g.elements);
    put_scalar(doc, prefix + "unit", g.unit);
    put_pair_map(doc, prefix + "mul", g.mul);
    put_map(doc, prefix + "inv", g.inv);
}
FinGroup decode_group_sections(const Document& doc, const std::string& prefix) {
    FinGroup g;
    g.elements = get_list(doc, prefix + "elements");
    g.unit = doc.as_scalar(prefix + "unit");
    g.mul = get_pair_map(doc, prefix + "mul");
    g.inv = get_map(doc, prefix + "inv");
    return g;
}
}  // namespace

Document encode_group(const FinGroup& g) {
    Document doc = make_doc("group");
    encode_group_sections(doc, g, "");
    return doc;
}

FinGroup decode_group(const Document& doc) {
    require_kind(doc, {"group"});
    check_document_shape(doc);
    return decode_group_sections(doc, "");
}

Document encode_functor(const FunctorData& f) {
    Document doc = make_doc("functor");
    put_map(doc, "obj_map", f.obj_map);
    put_map(doc, "mor_map", f.mor_map);
    return doc;
}

FunctorData decode_functor(const Document& doc) {
    require_kind(doc, {"functor"});
    check_document_shape(doc);
    return {get_map(doc, "obj_map"), get_map(doc, "mor_map")};
}

Document encode_nat_transform(const NatTransformData& n) {
    Document doc = make_doc("nat_transform");
    put_map(doc, "components", n.components);
    return doc;
}

NatTransformData decode_nat_transform(const Document& doc) {
    require_kind(doc, {"nat_transform"});
    check_document_shape(doc);
    return {get_map(doc, "components")};
}

namespace {
void encode_two_category_sections(Document& doc, const TwoCategory& c, const std::string& prefix) {
    put_list(doc, prefix + "objects", c.objects);
    put_morphisms(doc, prefix + "one_cells", c.one_cells);
    auto& t = doc.tables[prefix + "two_cells"];
    for (const TwoCellRec& cell : c.two_cells) t.push_back({cell.id, cell.src, cell.tgt});
    put_map(doc, prefix + "id_one", c.id_one);
    put_pair_map(doc, prefix + "hcomp_one", c.hcomp_one);
    put_map(doc, prefix + "id_two", c.id_two);
    put_pair_map(doc, prefix + "vcomp_two", c.vcomp_two);
    put_pair_map(doc, prefix + "hcomp_two", c.hcomp_two);
}
TwoCategory decode_two_category_sections(const Document& doc, const std::string& prefix) {
    TwoCategory c;
    c.objects = get_list(doc, prefix + "objects");
    c.one_cells = get_morphisms(doc, prefix + "one_cells");
    std::set<Id> seen;
    for (const auto& row : doc.table(prefix + "two_cells")) {
        if (!seen.insert(row[0]).second)
            throw ParseError(0, "duplicate id '" + row[0] + "' in section " + prefix + "two_cells");
        c.two_cells.push_back({row[0], row[1], row[2]});
    }
    c.id_one = get_map(doc, prefix + "id_one");
    c.hcomp_one = get_pair_map(doc, prefix + "hcomp_one");
    c.id_two = get_map(doc, prefix + "id_two");
    c.vcomp_two = get_pair_map(doc, prefix + "vcomp_two");
    c.hcomp_two = get_pair_map(doc, prefix + "hcomp_two");
    return c;
}
}  // namespace

Document encode_two_category(const TwoCategory& c) {
    Document doc = make_doc("two_category");
    encode_two_category_sections(doc, c, "");
    return doc;
}

TwoCategory decode_two_category(const Document& doc) {
    require_kind(doc, {"two_category", "two_group"});
    check_document_shape(doc);
    return decode_two_category_sections(doc, "");
}

// ---- dblcat ----

namespace {
void encode_double_sections(Document& doc, const DoubleCategory& d) {
    put_list(doc, "objects", d.objects);
    put_morphisms(doc, "hmor", d.hmor);
    put_morphisms(doc, "vmor", d.vmor);
    auto& t = doc.tables["squares"];
    for (const SquareRec& s : d.squares) t.push_back({s.id, s.top, s.bottom, s.left, s.right});
    put_map(doc, "h_id_mor", d.h_id_mor);
    put_map(doc, "v_id_mor", d.v_id_mor);
    put_pair_map(doc, "hcomp_mor", d.hcomp_mor);
    put_pair_map(doc, "vcomp_mor", d.vcomp_mor);
    put_map(doc, "h_id_sq", d.h_id_sq);
    put_map(doc, "v_id_sq", d.v_id_sq);
    put_pair_map(doc, "hcomp_sq", d.hcomp_sq);
    put_pair_map(doc, "vcomp_sq", d.vcomp_sq);
}
DoubleCategory decode_double_sections(const Document& doc) {
    DoubleCategory d;
    d.objects = get_list(doc, "objects");
    d.hmor = get_morphisms(doc, "hmor");
    d.vmor.clear();
    std::set<Id> seen_v;
    for (const auto& row : doc.table("vmor")) {
        if (!seen_v.insert(row[0]).second)
            throw ParseError(0, "duplicate id '" + row[0] + "' in section vmor");
        d.vmor.push_back({row[0], row[1], row[2]});
    }
    std::set<Id> seen;
    for (const auto& row : doc.table("squares")) {
        if (!seen.insert(row[0]).second)
            throw ParseError(0, "duplicate id '" + row[0] + "' in section squares");
        d.squares.push_back({row[0], row[1], row[2], row[3], row[4]});
    }
    d.h_id_mor = get_map(doc, "h_id_mor");
    d.v_id_mor = get_map(doc, "v_id_mor");
    d.hcomp_mor = get_pair_map(doc, "hcomp_mor");
    d.vcomp_mor = get_pair_map(doc, "vcomp_mor");
    d.h_id_sq = get_map(doc, "h_id_sq");
    d.v_id_sq = get_map(doc, "v_id_sq");
    d.hcomp_sq = get_pair_map(doc, "hcomp_sq");
    d.vcomp_sq = get_pair_map(doc, "vcomp_sq");
    return d;
}
}  // namespace

Document encode_double_category(const DoubleCategory& d) {
    Document doc = make_doc("double_category");
    encode_double_sections(doc, d);
    return doc;
}

DoubleCategory decode_double_category(const Document& doc) {
    require_kind(doc, {"double_category", "folded_double_category", "pseudo_double_category"});
    check_document_shape(doc);
    return decode_double_sections(doc);
}

Document encode_double_functor(const DoubleFunctorData& f) {
    Document doc = make_doc("double_functor");
    put_map(doc, "obj_map", f.obj_map);
    put_map(doc, "hmor_map", f.hmor_map);
    put_map(doc, "vmor_map", f.vmor_map);
    put_map(doc, "sq_map", f.sq_map);
    return doc;
}

DoubleFunctorData decode_double_functor(const Document& doc) {
    require_kind(doc, {"double_functor"});
    check_document_shape(doc);
    return {get_map(doc, "obj_map"), get_map(doc, "hmor_map"), get_map(doc, "vmor_map"),
            get_map(doc, "sq_map")};
}

Document encode_vertical_transformation(const VerticalTransformationData& v) {
    Document doc = make_doc("vertical_transformation");
    put_map(doc, "comp_obj", v.comp_obj);
    put_map(doc, "comp_hmor", v.comp_hmor);
    return doc;
}

VerticalTransformationData decode_vertical_transformation(const Document& doc) {
    require_kind(doc, {"vertical_transformation"});
    check_document_shape(doc);
    return {get_map(doc, "comp_obj"), get_map(doc, "comp_hmor")};
}

Document encode_horizontal_transformation(const HorizontalTransformationData& h) {
    Document doc = make_doc("horizontal_transformation");
    put_map(doc, "comp_obj", h.comp_obj);
    put_map(doc, "comp_vmor", h.comp_vmor);
    return doc;
}

HorizontalTransformationData decode_horizontal_transformation(const Document& doc) {
    require_kind(doc, {"horizontal_transformation"});
    check_document_shape(doc);
    return {get_map(doc, "comp_obj"), get_map(doc, "comp_vmor")};
}

// ---- folding ----

Document encode_holonomy(const Holonomy& h) {
    Document doc = make_doc("holonomy");
    put_map(doc, "bar", h.bar);
    return doc;
}

Holonomy decode_holonomy(const Document& doc) {
    require_kind(doc, {"holonomy"});
    check_document_shape(doc);
    return {get_map(doc, "bar")};
}

Document encode_folding(const Folding& f, const std::string& kind) {
    Document doc = make_doc(kind);
    put_map(doc, "bar", f.holonomy.bar);
    put_map(doc, "lambda", f.lambda);
    return doc;
}

Folding decode_folding(const Document& doc) {
    require_kind(doc, {"folding", "pseudo_folding"});
    check_document_shape(doc);
    Folding f;
    f.holonomy.bar = get_map(doc, "bar");
    f.lambda = get_map(doc, "lambda");
    return f;
}

Document encode_connection_pair(const ConnectionPair& cp) {
    Document doc = make_doc("connection_pair");
    put_map(doc, "bar", cp.holonomy.bar);
    put_map(doc, "gamma", cp.gamma);
    put_map(doc, "gamma_prime", cp.gamma_prime);
    return doc;
}

ConnectionPair decode_connection_pair(const Document& doc) {
    require_kind(doc, {"connection_pair"});
    check_document_shape(doc);
    ConnectionPair cp;
    cp.holonomy.bar = get_map(doc, "bar");
    cp.gamma = get_map(doc, "gamma");
    cp.gamma_prime = get_map(doc, "gamma_prime");
    return cp;
}

Document encode_thin_structure(const ThinStructure& t) {
    Document doc = make_doc("thin_structure");
    auto& tbl = doc.tables["theta"];
    for (const auto& [key, val] : t.theta) tbl.push_back({key[0], key[1], key[2], key[3], val});
    return doc;
}

ThinStructure decode_thin_structure(const Document& doc) {
    require_kind(doc, {"thin_structure"});
    check_document_shape(doc);
    ThinStructure t;
    for (const auto& row : doc.table("theta")) {
        std::vector<Id> key{row[0], row[1], row[2], row[3]};
        if (t.theta.count(key)) throw ParseError(0, "duplicate theta boundary");
        t.theta[key] = row[4];
    }
    return t;
}

Document encode_folding_morphism(const FoldingMorphism& m) {
    Document doc = make_doc("folding_morphism");
    put_map(doc, "theta", m.theta);
    return doc;
}

FoldingMorphism decode_folding_morphism(const Document& doc) {
    require_kind(doc, {"folding_morphism"});
    check_document_shape(doc);
    return {get_map(doc, "theta")};
}

Document encode_folded_double(const FoldedDouble& fd) {
    Document doc = make_doc("folded_double_category");
    encode_double_sections(doc, fd.d);
    put_map(doc, "bar", fd.folding.holonomy.bar);
    put_map(doc, "lambda", fd.folding.lambda);
    return doc;
}

FoldedDouble decode_folded_double(const Document& doc) {
    require_kind(doc, {"folded_double_category"});
    check_document_shape(doc);
    FoldedDouble fd;
    fd.d = decode_double_sections(doc);
    fd.folding.holonomy.bar = get_map(doc, "bar");
    fd.folding.lambda = get_map(doc, "lambda");
    return fd;
}

// ---- algebra ----

namespace {
void encode_icat_sections(Document& doc, const ICatAlgebra& x) {
    put_list(doc, "base_objects", x.base.objects);
    put_morphisms(doc, "base_morphisms", x.base.morphisms);
    put_map(doc, "base_identity", x.base.identity);
    put_pair_map(doc, "base_comp", x.base.comp);
    auto& ho = doc.tables["hom_objects"];
    auto& hm = doc.tables["hom_morphisms"];
    auto& hi = doc.tables["hom_identity"];
    auto& hc = doc.tables["hom_comp"];
    for (const auto& [ab, cat] : x.hom) {
        for (const Id& o : cat.objects) ho.push_back({ab.first, ab.second, o});
        for (const Morphism& m : cat.morphisms) hm.push_back({ab.first, ab.second, m.id, m.src, m.tgt});
        for (const auto& [o, i] : cat.identity) hi.push_back({ab.first, ab.second, o, i});
        for (const auto& [key, val] : cat.comp) hc.push_back({ab.first, ab.second, key.first, key.second, val});
    }
    auto& to = doc.tables["transition_obj"];
    auto& tm = doc.tables["transition_mor"];
    for (const auto& [jk, fun] : x.transition) {
        for (const auto& [o, io] : fun.obj_map) to.push_back({jk.first, jk.second, o, io});
        for (const auto& [m, im] : fun.mor_map) tm.push_back({jk.first, jk.second, m, im});
    }
    put_pair_map(doc, "circ_obj", x.circ_obj);
    put_pair_map(doc, "circ_mor", x.circ_mor);
    put_map(doc, "unit", x.unit);
}

ICatAlgebra decode_icat_sections(const Document& doc) {
    ICatAlgebra x;
    x.base.objects = get_list(doc, "base_objects");
    x.base.morphisms = get_morphisms(doc, "base_morphisms");
    x.base.identity = get_map(doc, "base_identity");
    x.base.comp = get_pair_map(doc, "base_comp");
    for (const Id& a : x.base.objects)
        for (const Id& b : x.base.objects) x.hom[{a, b}] = FinCategory{};
    for (const auto& row : doc.table("hom_objects")) x.hom[{row[0], row[1]}].objects.push_back(row[2]);
    for (const auto& row : doc.table("hom_morphisms"))
        x.hom[{row[0], row[1]}].morphisms.push_back({row[2], row[3], row[4]});
    for (const auto& row : doc.table("hom_identity")) x.hom[{row[0], row[1]}].identity[row[2]] = row[3];
    for (const auto& row : doc.table("hom_comp")) x.hom[{row[0], row[1]}].comp[{row[2], row[3]}] = row[4];
    for (const auto& row : doc.table("transition_obj")) x.transition[{row[0], row[1]}].obj_map[row[2]] = row[3];
    for (const auto& row : doc.table("transition_mor")) x.transition[{row[0], row[1]}].mor_map[row[2]] = row[3];
    x.circ_obj = get_pair_map(doc, "circ_obj");
    x.circ_mor = get_pair_map(doc, "circ_mor");
    x.unit = get_map(doc, "unit");
    return x;
}
}  // namespace

Document encode_icat_algebra(const ICatAlgebra& x) {
    Document doc = make_doc("icat_algebra");
    encode_icat_sections(doc, x);
    return doc;
}

ICatAlgebra decode_icat_algebra(const Document& doc) {
    require_kind(doc, {"icat_algebra", "pseudo_icat_algebra"});
    check_document_shape(doc);
    return decode_icat_sections(doc);
}

Document encode_algebra_morphism(const AlgebraMorphism& m) {
    Document doc = make_doc("algebra_morphism");
    auto& co = doc.tables["comps_obj"];
    auto& cm = doc.tables["comps_mor"];
    for (const auto& [ab, fun] : m.comps) {
        for (const auto& [o, io] : fun.obj_map) co.push_back({ab.first, ab.second, o, io});
        for (const auto& [x, ix] : fun.mor_map) cm.push_back({ab.first, ab.second, x, ix});
    }
    return doc;
}

AlgebraMorphism decode_algebra_morphism(const Document& doc) {
    require_kind(doc, {"algebra_morphism"});
    check_document_shape(doc);
    AlgebraMorphism m;
    for (const auto& row : doc.table("comps_obj")) m.comps[{row[0], row[1]}].obj_map[row[2]] = row[3];
    for (const auto& row : doc.table("comps_mor")) m.comps[{row[0], row[1]}].mor_map[row[2]] = row[3];
    return m;
}

Document encode_algebra_two_cell(const AlgebraTwoCell& c) {
    Document doc = make_doc("algebra_two_cell");
    auto& t = doc.tables["comps"];
    for (const auto& [ab, nt] : c.comps)
        for (const auto& [o, m] : nt.components) t.push_back({ab.first, ab.second, o, m});
    return doc;
}

AlgebraTwoCell decode_algebra_two_cell(const Document& doc) {
    require_kind(doc, {"algebra_two_cell"});
    check_document_shape(doc);
    AlgebraTwoCell c;
    for (const auto& row : doc.table("comps")) c.comps[{row[0], row[1]}].components[row[2]] = row[3];
    return c;
}

Document encode_two_functor_under_i(const TwoFunctorUnderI& z) {
    Document doc = make_doc("two_functor_under_i");
    put_list(doc, "base_objects", z.base.objects);
    put_morphisms(doc, "base_morphisms", z.base.morphisms);
    put_map(doc, "base_identity", z.base.identity);
    put_pair_map(doc, "base_comp", z.base.comp);
    encode_two_category_sections(doc, z.target, "c_");
    put_map(doc, "p", z.p);
    return doc;
}

TwoFunctorUnderI decode_two_functor_under_i(const Document& doc) {
    require_kind(doc, {"two_functor_under_i"});
    check_document_shape(doc);
    TwoFunctorUnderI z;
    z.base.objects = get_list(doc, "base_objects");
    z.base.morphisms = get_morphisms(doc, "base_morphisms");
    z.base.identity = get_map(doc, "base_identity");
    z.base.comp = get_pair_map(doc, "base_comp");
    z.target = decode_two_category_sections(doc, "c_");
    z.p = get_map(doc, "p");
    return z;
}

// ---- xmod ----

namespace {
void encode_xmod_sections(Document& doc, const CrossedModule& m) {
    encode_group_sections(doc, m.h, "h_");
    encode_group_sections(doc, m.g, "g_");
    put_map(doc, "boundary", m.boundary);
    put_pair_map(doc, "action", m.action);
}
CrossedModule decode_xmod_sections(const Document& doc) {
    CrossedModule m;
    m.h = decode_group_sections(doc, "h_");
    m.g = decode_group_sections(doc, "g_");
    m.boundary = get_map(doc, "boundary");
    m.action = get_pair_map(doc, "action");
    return m;
}
}  // namespace

Document encode_crossed_module(const CrossedModule& m) {
    Document doc = make_doc("crossed_module");
    encode_xmod_sections(doc, m);
    return doc;
}

CrossedModule decode_crossed_module(const Document& doc) {
    require_kind(doc, {"crossed_module", "crossed_module_under_group"});
    check_document_shape(doc);
    return decode_xmod_sections(doc);
}

Document encode_xmod_under_group(const XModUnderGroup& x) {
    Document doc = make_doc("crossed_module_under_group");
    encode_xmod_sections(doc, x.xm);
    encode_group_sections(doc, x.i, "i_");
    put_map(doc, "p", x.p);
    return doc;
}

XModUnderGroup decode_xmod_under_group(const Document& doc) {
    require_kind(doc, {"crossed_module_under_group"});
    check_document_shape(doc);
    XModUnderGroup x;
    x.xm = decode_xmod_sections(doc);
    x.i = decode_group_sections(doc, "i_");
    x.p = get_map(doc, "p");
    return x;
}

Document encode_xmod_morphism(const XModMorphism& m) {
    Document doc = make_doc("xmod_morphism");
    put_map(doc, "p", m.p);
    put_map(doc, "q", m.q);
    return doc;
}

XModMorphism decode_xmod_morphism(const Document& doc) {
    require_kind(doc, {"xmod_morphism"});
    check_document_shape(doc);
    return {get_map(doc, "p"), get_map(doc, "q")};
}

Document encode_homotopy(const CrossedHomotopy& h) {
    Document doc = make_doc("homotopy");
    put_map(doc, "nu", h.nu);
    return doc;
}

CrossedHomotopy decode_homotopy(const Document& doc) {
    require_kind(doc, {"homotopy"});
    check_document_shape(doc);
    return {get_map(doc, "nu")};
}

Document encode_two_group(const TwoGroup& t) {
    Document doc = make_doc("two_group");
    encode_two_category_sections(doc, t.cat, "");
    put_map(doc, "inv_one", t.inv_one);
    put_map(doc, "vinv_two", t.vinv_two);
    put_map(doc, "hinv_two", t.hinv_two);
    return doc;
}

TwoGroup decode_two_group(const Document& doc) {
    require_kind(doc, {"two_group"});
    check_document_shape(doc);
    TwoGroup t;
    t.cat = decode_two_category_sections(doc, "");
    t.inv_one = get_map(doc, "inv_one");
    t.vinv_two = get_map(doc, "vinv_two");
    t.hinv_two = get_map(doc, "hinv_two");
    return t;
}

Document encode_conjugation_two_cell(const ConjugationTwoCell& w) {
    Document doc = make_doc("conjugation_two_cell");
    put_scalar(doc, "w", w.w);
    return doc;
}

ConjugationTwoCell decode_conjugation_two_cell(const Document& doc) {
    require_kind(doc, {"conjugation_two_cell"});
    check_document_shape(doc);
    return {doc.as_scalar("w")};
}

// ---- pseudo ----

Document encode_pseudo_double(const PseudoDoubleCategory& p) {
    Document doc = make_doc("pseudo_double_category");
    encode_double_sections(doc, p.d);
    auto& t = doc.tables["associator"];
    for (const auto& [key, val] : p.associator) t.push_back({key[0], key[1], key[2], val});
    put_map(doc, "lambda_unitor", p.lambda_unitor);
    put_map(doc, "rho_unitor", p.rho_unitor);
    return doc;
}

PseudoDoubleCategory decode_pseudo_double(const Document& doc) {
    require_kind(doc, {"pseudo_double_category"});
    check_document_shape(doc);
    PseudoDoubleCategory p;
    p.d = decode_double_sections(doc);
    for (const auto& row : doc.table("associator")) {
        std::vector<Id> key{row[0], row[1], row[2]};
        if (p.associator.count(key)) throw ParseError(0, "duplicate associator key");
        p.associator[key] = row[3];
    }
    p.lambda_unitor = get_map(doc, "lambda_unitor");
    p.rho_unitor = get_map(doc, "rho_unitor");
    return p;
}

Document encode_pseudo_icat(const PseudoICatAlgebra& p) {
    Document doc = make_doc("pseudo_icat_algebra");
    encode_icat_sections(doc, p.x);
    auto& t = doc.tables["associator"];
    for (const auto& [key, val] : p.associator) t.push_back({key[0], key[1], key[2], val});
    return doc;
}

PseudoICatAlgebra decode_pseudo_icat(const Document& doc) {
    require_kind(doc, {"pseudo_icat_algebra"});
    check_document_shape(doc);
    PseudoICatAlgebra p;
    p.x = decode_icat_sections(doc);
    for (const auto& row : doc.table("associator")) {
        std::vector<Id> key{row[0], row[1], row[2]};
        if (p.associator.count(key)) throw ParseError(0, "duplicate associator key");
        p.associator[key] = row[3];
    }
    return p;
}

}  // namespace foldbox
