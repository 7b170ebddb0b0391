#include "foldbox/document.hpp"

#include <algorithm>
#include <sstream>

namespace foldbox {

const std::vector<std::vector<Id>>& Document::table(const std::string& name) const {
    static const std::vector<std::vector<Id>> empty;
    auto it = tables.find(name);
    return it == tables.end() ? empty : it->second;
}

std::map<Id, Id> Document::as_map(const std::string& name) const {
    std::map<Id, Id> out;
    for (const auto& row : table(name)) out[row.at(0)] = row.at(1);
    return out;
}

std::map<IdPair, Id> Document::as_pair_map(const std::string& name) const {
    std::map<IdPair, Id> out;
    for (const auto& row : table(name)) out[{row.at(0), row.at(1)}] = row.at(2);
    return out;
}

std::vector<Id> Document::as_list(const std::string& name) const {
    std::vector<Id> out;
    for (const auto& row : table(name)) out.push_back(row.at(0));
    return out;
}

Id Document::as_scalar(const std::string& name) const {
    const auto& t = table(name);
    if (t.size() != 1 || t.front().size() != 1)
        throw OpError("ParseError", "section " + name + " is not a single scalar");
    return t.front().front();
}

namespace {

std::vector<SectionSpec> cat_sections() {
    return {{"objects", 1}, {"morphisms", 3}, {"identity", 2}, {"comp", 3}};
}

std::vector<SectionSpec> two_cat_sections(const std::string& prefix = "") {
    return {{prefix + "objects", 1},   {prefix + "one_cells", 3}, {prefix + "two_cells", 3},
            {prefix + "id_one", 2},    {prefix + "hcomp_one", 3}, {prefix + "id_two", 2},
            {prefix + "vcomp_two", 3}, {prefix + "hcomp_two", 3}};
}

std::vector<SectionSpec> dbl_sections() {
    return {{"objects", 1},  {"hmor", 3},      {"vmor", 3},      {"squares", 5},
            {"h_id_mor", 2}, {"v_id_mor", 2},  {"hcomp_mor", 3}, {"vcomp_mor", 3},
            {"h_id_sq", 2},  {"v_id_sq", 2},   {"hcomp_sq", 3},  {"vcomp_sq", 3}};
}

std::vector<SectionSpec> group_sections(const std::string& prefix = "") {
    return {{prefix + "elements", 1}, {prefix + "unit", 1}, {prefix + "mul", 3}, {prefix + "inv", 2}};
}

std::vector<SectionSpec> icat_sections() {
    std::vector<SectionSpec> s = {{"base_objects", 1},   {"base_morphisms", 3}, {"base_identity", 2},
                                  {"base_comp", 3},      {"hom_objects", 3},    {"hom_morphisms", 5},
                                  {"hom_identity", 4},   {"hom_comp", 5},       {"transition_obj", 4},
                                  {"transition_mor", 4}, {"circ_obj", 3},       {"circ_mor", 3},
                                  {"unit", 2}};
    return s;
}

std::vector<SectionSpec> concat(std::vector<SectionSpec> a, std::vector<SectionSpec> b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

const std::map<std::string, std::vector<SectionSpec>>& schemas() {
    static const std::map<std::string, std::vector<SectionSpec>> table = [] {
        std::map<std::string, std::vector<SectionSpec>> s;
        s["category"] = cat_sections();
        s["groupoid"] = concat(cat_sections(), {{"inv", 2}});
        s["group"] = group_sections();
        s["functor"] = {{"obj_map", 2}, {"mor_map", 2}};
        s["nat_transform"] = {{"components", 2}};
        s["two_category"] = two_cat_sections();
        s["double_category"] = dbl_sections();
        s["double_functor"] = {{"obj_map", 2}, {"hmor_map", 2}, {"vmor_map", 2}, {"sq_map", 2}};
        s["vertical_transformation"] = {{"comp_obj", 2}, {"comp_hmor", 2}};
        s["horizontal_transformation"] = {{"comp_obj", 2}, {"comp_vmor", 2}};
        s["holonomy"] = {{"bar", 2}};
        s["folding"] = {{"bar", 2}, {"lambda", 2}};
        s["connection_pair"] = {{"bar", 2}, {"gamma", 2}, {"gamma_prime", 2}};
        s["thin_structure"] = {{"theta", 5}};
        s["folding_morphism"] = {{"theta", 2}};
        s["folded_double_category"] = concat(dbl_sections(), {{"bar", 2}, {"lambda", 2}});
        s["icat_algebra"] = icat_sections();
        s["algebra_morphism"] = {{"comps_obj", 4}, {"comps_mor", 4}};
        s["algebra_two_cell"] = {{"comps", 4}};
        s["two_functor_under_i"] =
            concat(concat({{"base_objects", 1}, {"base_morphisms", 3}, {"base_identity", 2}, {"base_comp", 3}},
                          two_cat_sections("c_")),
                   {{"p", 2}});
        s["crossed_module"] = concat(group_sections("h_"),
                                     concat(group_sections("g_"), {{"boundary", 2}, {"action", 3}}));
        s["crossed_module_under_group"] =
            concat(concat(group_sections("h_"), concat(group_sections("g_"), {{"boundary", 2}, {"action", 3}})),
                   concat(group_sections("i_"), {{"p", 2}}));
        s["xmod_morphism"] = {{"p", 2}, {"q", 2}};
        s["homotopy"] = {{"nu", 2}};
        s["two_group"] = concat(two_cat_sections(), {{"inv_one", 2}, {"vinv_two", 2}, {"hinv_two", 2}});
        s["conjugation_two_cell"] = {{"w", 1}};
        s["pseudo_double_category"] =
            concat(dbl_sections(), {{"associator", 4}, {"lambda_unitor", 2}, {"rho_unitor", 2}});
        s["pseudo_icat_algebra"] = concat(icat_sections(), {{"associator", 4}});
        s["pseudo_folding"] = {{"bar", 2}, {"lambda", 2}};
        return s;
    }();
    return table;
}

}  // namespace

const std::vector<SectionSpec>& kind_schema(const std::string& kind) {
    auto it = schemas().find(kind);
    if (it == schemas().end()) throw OpError("UnknownKind", "unknown kind " + kind);
    return it->second;
}

bool kind_known(const std::string& kind) { return schemas().count(kind) > 0; }

std::vector<std::string> known_kinds() {
    std::vector<std::string> out;
    for (const auto& [k, v] : schemas()) out.push_back(k);
    return out;
}

namespace {

std::vector<std::string> split_tokens(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream ss(line);
    std::string tok;
    while (ss >> tok) out.push_back(tok);
    return out;
}

}  // namespace

Document parse_document(const std::string& text) {
    Document doc;
    doc.schema_version = -1;
    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    std::string current_section;
    bool kind_seen = false;

    while (std::getline(in, raw)) {
        ++lineno;
        if (!raw.empty() && raw.back() == '\r') raw.pop_back();
        std::string trimmed = raw;
        std::size_t firstns = trimmed.find_first_not_of(" \t");
        if (firstns == std::string::npos) continue;  // blank
        if (trimmed[firstns] == '#') continue;       // comment

        bool indented = firstns > 0;
        std::vector<std::string> toks = split_tokens(raw);

        if (doc.schema_version < 0) {
            if (indented || toks.size() != 2 || toks[0] != "fbx")
                throw ParseError(lineno, "expected header 'fbx <version>'");
            try {
                doc.schema_version = std::stoi(toks[1]);
            } catch (...) {
                throw ParseError(lineno, "bad schema version '" + toks[1] + "'");
            }
            if (doc.schema_version != 1)
                throw ParseError(lineno, "SchemaVersionMismatch: unsupported version " + toks[1]);
            continue;
        }
        if (!kind_seen) {
            if (indented || toks.size() != 2 || toks[0] != "kind")
                throw ParseError(lineno, "expected 'kind <kind>' after the header");
            doc.kind = toks[1];
            kind_seen = true;
            continue;
        }
        if (!indented) {
            if (toks[0] == "meta") {
                if (toks.size() < 2) throw ParseError(lineno, "meta line needs a key");
                std::string value;
                for (std::size_t i = 2; i < toks.size(); ++i) {
                    if (i > 2) value += " ";
                    value += toks[i];
                }
                doc.meta[toks[1]] = value;
                continue;
            }
            if (toks.size() == 1 && !toks[0].empty() && toks[0].back() == ':') {
                current_section = toks[0].substr(0, toks[0].size() - 1);
                if (current_section.empty()) throw ParseError(lineno, "empty section name");
                if (doc.tables.count(current_section))
                    throw ParseError(lineno, "duplicate section '" + current_section + "'");
                doc.tables[current_section] = {};
                continue;
            }
            throw ParseError(lineno, "expected a section header or meta line");
        }
        if (current_section.empty()) throw ParseError(lineno, "row outside of any section");
        doc.tables[current_section].push_back(toks);
    }
    if (doc.schema_version < 0) throw ParseError(lineno, "empty document");
    if (!kind_seen) throw ParseError(lineno, "missing 'kind' line");
    return doc;
}

std::string serialize_document(const Document& doc) {
    std::string out = "fbx " + std::to_string(doc.schema_version) + "\n";
    out += "kind " + doc.kind + "\n";
    for (const auto& [k, v] : doc.meta) out += "meta " + k + (v.empty() ? "" : " " + v) + "\n";

    std::vector<std::string> order;
    if (kind_known(doc.kind)) {
        for (const SectionSpec& s : kind_schema(doc.kind)) order.push_back(s.name);
        for (const auto& [name, rows] : doc.tables)
            if (std::find(order.begin(), order.end(), name) == order.end()) order.push_back(name);
    } else {
        for (const auto& [name, rows] : doc.tables) order.push_back(name);
    }
    for (const std::string& name : order) {
        auto it = doc.tables.find(name);
        if (it == doc.tables.end() || it->second.empty()) continue;
        out += name + ":\n";
        std::vector<std::vector<Id>> rows = it->second;
        std::sort(rows.begin(), rows.end());
        rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
        for (const auto& row : rows) {
            out += " ";
            for (const Id& tok : row) out += " " + tok;
            out += "\n";
        }
    }
    return out;
}

}  // namespace foldbox
