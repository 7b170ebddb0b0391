#include "foldbox/cli.hpp"

#include <chrono>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include <json.hpp>

namespace foldbox {

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw OpError("BadInvocation", "cannot open file " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& bytes) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw OpError("BadInvocation", "cannot write file " + path);
    out << bytes;
}

Document load(const std::string& path) { return parse_document(read_file(path)); }

}  // namespace

void RunReport::finish() {
    exit_code = 0;
    for (const TargetReport& t : targets) {
        if (!t.report.structural.empty()) exit_code = std::max(exit_code, 2);
        else if (!t.report.violations.empty()) exit_code = std::max(exit_code, 1);
    }
}

std::size_t dependency_count(const std::string& kind) {
    static const std::map<std::string, std::size_t> deps{
        {"functor", 2},
        {"nat_transform", 4},
        {"double_functor", 2},
        {"vertical_transformation", 4},
        {"horizontal_transformation", 4},
        {"holonomy", 1},
        {"folding", 1},
        {"connection_pair", 1},
        {"thin_structure", 1},
        {"pseudo_folding", 1},
        {"folding_morphism", 3},
        {"algebra_morphism", 2},
        {"algebra_two_cell", 4},
        {"xmod_morphism", 2},
        {"homotopy", 4},
        {"conjugation_two_cell", 4},
    };
    auto it = deps.find(kind);
    return it == deps.end() ? 0 : it->second;
}

bool kind_self_contained(const std::string& kind) { return dependency_count(kind) == 0; }

ValidationReport validate_document(const Document& main, const std::vector<Document>& deps,
                                   const Caps& caps) {
    const std::string& k = main.kind;
    auto need = dependency_count(k);
    if (deps.size() != need)
        throw OpError("BadInvocation", "kind " + k + " needs " + std::to_string(need) + " dependency files, got " +
                                           std::to_string(deps.size()));

    if (k == "category") return validate_category(decode_category(main), caps);
    if (k == "groupoid") return validate_groupoid(decode_groupoid(main), caps);
    if (k == "group") return validate_group(decode_group(main), caps);
    if (k == "two_category") return validate_two_category(decode_two_category(main), caps);
    if (k == "double_category") return validate_double_category(decode_double_category(main), caps);
    if (k == "folded_double_category") {
        FoldedDouble fd = decode_folded_double(main);
        ValidationReport r = validate_double_category(fd.d, caps);
        r.absorb(validate_folding(fd.d, fd.folding, caps), "folding");
        r.sort();
        return r;
    }
    if (k == "icat_algebra") return validate_icat_algebra(decode_icat_algebra(main), caps);
    if (k == "two_functor_under_i") return validate_two_functor_under_i(decode_two_functor_under_i(main), caps);
    if (k == "crossed_module") return validate_crossed_module(decode_crossed_module(main), caps);
    if (k == "crossed_module_under_group") return validate_xmod_under_group(decode_xmod_under_group(main), caps);
    if (k == "two_group") return validate_two_group(decode_two_group(main), caps);
    if (k == "pseudo_double_category") return validate_pseudo_double(decode_pseudo_double(main), caps);
    if (k == "pseudo_icat_algebra") return validate_pseudo_icat(decode_pseudo_icat(main), caps);

    if (k == "functor")
        return validate_functor(decode_category(deps[0]), decode_category(deps[1]), decode_functor(main), caps);
    if (k == "nat_transform")
        return validate_nat_transform(decode_category(deps[2]), decode_category(deps[3]),
                                      decode_functor(deps[0]), decode_functor(deps[1]),
                                      decode_nat_transform(main), caps);
    if (k == "double_functor")
        return validate_double_functor(decode_double_category(deps[0]), decode_double_category(deps[1]),
                                       decode_double_functor(main), caps);
    if (k == "vertical_transformation")
        return validate_vertical_transformation(decode_double_category(deps[2]), decode_double_category(deps[3]),
                                                decode_double_functor(deps[0]), decode_double_functor(deps[1]),
                                                decode_vertical_transformation(main), caps);
    if (k == "horizontal_transformation")
        return validate_horizontal_transformation(decode_double_category(deps[2]), decode_double_category(deps[3]),
                                                  decode_double_functor(deps[0]), decode_double_functor(deps[1]),
                                                  decode_horizontal_transformation(main), caps);
    if (k == "holonomy")
        return validate_holonomy(decode_double_category(deps[0]), decode_holonomy(main), caps);
    if (k == "folding")
        return validate_folding(decode_double_category(deps[0]), decode_folding(main), caps);
    if (k == "connection_pair")
        return validate_connection_pair(decode_double_category(deps[0]), decode_connection_pair(main), caps);
    if (k == "thin_structure")
        return validate_thin_structure(decode_double_category(deps[0]), decode_thin_structure(main), caps);
    if (k == "pseudo_folding")
        return validate_pseudo_folding(decode_pseudo_double(deps[0]), decode_folding(main), caps);
    if (k == "folding_morphism")
        return validate_folding_morphism(decode_double_category(deps[2]), decode_folding(deps[0]),
                                         decode_folding(deps[1]), decode_folding_morphism(main), caps);
    if (k == "algebra_morphism")
        return validate_algebra_morphism(decode_icat_algebra(deps[0]), decode_icat_algebra(deps[1]),
                                         decode_algebra_morphism(main), caps);
    if (k == "algebra_two_cell")
        return validate_algebra_two_cell(decode_icat_algebra(deps[2]), decode_icat_algebra(deps[3]),
                                         decode_algebra_morphism(deps[0]), decode_algebra_morphism(deps[1]),
                                         decode_algebra_two_cell(main), caps);
    if (k == "xmod_morphism")
        return validate_xmod_morphism(decode_crossed_module(deps[0]), decode_crossed_module(deps[1]),
                                      decode_xmod_morphism(main), caps);
    if (k == "homotopy")
        return validate_homotopy(decode_crossed_module(deps[2]), decode_crossed_module(deps[3]),
                                 decode_xmod_morphism(deps[0]), decode_xmod_morphism(deps[1]),
                                 decode_homotopy(main), caps);
    if (k == "conjugation_two_cell")
        return validate_conjugation_two_cell(decode_crossed_module(deps[2]), decode_crossed_module(deps[3]),
                                             decode_xmod_morphism(deps[0]), decode_xmod_morphism(deps[1]),
                                             decode_conjugation_two_cell(main), caps);
    throw OpError("UnknownKind", "no validator for kind " + k);
}

std::map<std::string, std::size_t> document_counts(const Document& doc) {
    std::map<std::string, std::size_t> out;
    for (const auto& [name, rows] : doc.tables) out[name] = rows.size();
    return out;
}

std::string emit_report(const RunReport& r, const std::string& format) {
    if (format == "structured") {
        nlohmann::json j;
        j["command"] = r.command;
        j["exit"] = r.exit_code;
        j["notes"] = r.notes;
        auto& targets = j["targets"];
        targets = nlohmann::json::array();
        for (const TargetReport& t : r.targets) {
            nlohmann::json tj;
            tj["path"] = t.path;
            tj["kind"] = t.kind;
            tj["verdict"] = t.report.valid() ? "ok" : (!t.report.structural.empty() ? "structural-error" : "invalid");
            auto render = [](const std::vector<Issue>& issues) {
                nlohmann::json arr = nlohmann::json::array();
                for (const Issue& v : issues)
                    arr.push_back({{"tag", v.tag}, {"tuple", v.tuple}, {"message", v.message}});
                return arr;
            };
            tj["violations"] = render(t.report.violations);
            tj["structural"] = render(t.report.structural);
            tj["counts"] = t.counts;
            targets.push_back(tj);
        }
        return j.dump(2) + "\n";
    }
    std::ostringstream out;
    out << "command: " << r.command << "\n";
    for (const TargetReport& t : r.targets) {
        out << t.path << " [" << t.kind << "]: ";
        if (t.report.valid()) {
            out << "OK\n";
        } else {
            out << t.report.structural.size() << " structural error(s), " << t.report.violations.size()
                << " violation(s)\n";
            for (const Issue& v : t.report.structural)
                out << "  structural " << v.tag << " (" << join_ids(v.tuple) << "): " << v.message << "\n";
            for (const Issue& v : t.report.violations)
                out << "  violation " << v.tag << " (" << join_ids(v.tuple) << "): " << v.message << "\n";
        }
        if (!t.counts.empty()) {
            out << "  counts:";
            for (const auto& [name, n] : t.counts) out << " " << name << "=" << n;
            out << "\n";
        }
    }
    for (const std::string& n : r.notes) out << "note: " << n << "\n";
    out << "elapsed: " << r.seconds << "s\n";
    out << "exit: " << r.exit_code << "\n";
    return out.str();
}

namespace {

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
};

TargetReport make_target(const std::string& path, const Document& doc,
                         const std::vector<Document>& deps, const Caps& caps, bool with_counts) {
    TargetReport t;
    t.path = path;
    t.kind = doc.kind;
    try {
        t.report = validate_document(doc, deps, caps);
    } catch (const ParseError& e) {
        t.report.structural_error("PARSE_ERROR", {}, e.what());
    } catch (const OpError& e) {
        t.report.structural_error(e.code, {}, e.what());
    }
    if (with_counts) t.counts = document_counts(doc);
    return t;
}

}  // namespace

RunReport cmd_validate(const CommandArgs& args) {
    Timer timer;
    RunReport r;
    r.command = "validate";
    if (args.files.empty()) throw OpError("BadInvocation", "validate needs at least one file");
    Document first = load(args.files.front());
    if (!args.kind.empty() && args.kind != first.kind) {
        bool compatible = (args.kind == "double_category" && first.kind == "folded_double_category") ||
                          (args.kind == "category" && first.kind == "groupoid") ||
                          (args.kind == "two_category" && first.kind == "two_group");
        if (compatible) {
            Document narrowed = first;
            narrowed.kind = args.kind;
            if (args.kind == "double_category") {
                narrowed.tables.erase("bar");
                narrowed.tables.erase("lambda");
            }
            first = narrowed;
        } else {
            throw OpError("BadInvocation", "file has kind " + first.kind + ", expected " + args.kind);
        }
    }
    if (dependency_count(first.kind) > 0) {
        std::vector<Document> deps;
        for (std::size_t i = 1; i < args.files.size(); ++i) deps.push_back(load(args.files[i]));
        r.targets.push_back(make_target(args.files.front(), first, deps, args.caps, false));
    } else {
        r.targets.push_back(make_target(args.files.front(), first, {}, args.caps, false));
        for (std::size_t i = 1; i < args.files.size(); ++i) {
            Document doc = load(args.files[i]);
            r.targets.push_back(make_target(args.files[i], doc, {}, args.caps, false));
        }
    }
    r.finish();
    r.seconds = timer.seconds();
    return r;
}

RunReport cmd_report(const CommandArgs& args) {
    Timer timer;
    RunReport r;
    r.command = "report";
    if (args.files.empty()) throw OpError("BadInvocation", "report needs at least one file");
    Document first = load(args.files.front());
    if (dependency_count(first.kind) > 0) {
        std::vector<Document> deps;
        for (std::size_t i = 1; i < args.files.size(); ++i) deps.push_back(load(args.files[i]));
        r.targets.push_back(make_target(args.files.front(), first, deps, args.caps, true));
    } else {
        for (const std::string& path : args.files) {
            Document doc = load(path);
            r.targets.push_back(make_target(path, doc, {}, args.caps, true));
        }
    }
    r.finish();
    r.seconds = timer.seconds();
    return r;
}

namespace {

FinGroup group_by_name(const std::string& name) {
    if (name == "C2") return catalog::c2();
    if (name == "C3") return catalog::c3();
    if (name == "C4") return catalog::c4();
    if (name == "C6") return catalog::c6();
    if (name == "S3") return catalog::s3();
    if (name == "C2xC2") return catalog::klein();
    throw OpError("BadInvocation", "unknown group name " + name + " (use C2,C3,C4,C6,S3,C2xC2 or --order N)");
}

}  // namespace

RunReport cmd_generate(const CommandArgs& args) {
    Timer timer;
    RunReport r;
    r.command = "generate";
    Document out_doc;
    if (args.kind == "commutative_squares") {
        FinCategory base;
        if (!args.group.empty()) {
            base = group_to_one_object_groupoid(group_by_name(args.group)).cat;
        } else if (args.order > 0) {
            base = group_to_one_object_groupoid(catalog::cyclic(args.order)).cat;
        } else if (!args.files.empty()) {
            base = decode_category(load(args.files.front()));
        } else {
            throw OpError("BadInvocation", "commutative_squares needs --group, --order, or a base category file");
        }
        DoubleCategory d = commutative_squares(base);
        FoldedDouble fd{d, commutative_squares_folding(d)};
        out_doc = encode_folded_double(fd);
    } else if (args.kind == "quintets" || args.kind == "h_embed" || args.kind == "v_embed" ||
               args.kind == "adjunctions") {
        if (args.files.empty()) throw OpError("BadInvocation", args.kind + " needs a two_category file");
        TwoCategory base = decode_two_category(load(args.files.front()));
        if (args.kind == "quintets") {
            QuintetData q = quintets_with_cells(base);
            out_doc = encode_folded_double({q.d, quintet_folding(q)});
        } else if (args.kind == "h_embed") {
            DoubleCategory d = h_embed(base);
            out_doc = encode_folded_double({d, h_embed_folding(d)});
        } else if (args.kind == "v_embed") {
            out_doc = encode_double_category(v_embed(base));
        } else {
            AdjunctionData ad = adjunctions_with_data(base);
            out_doc = encode_folded_double({ad.d, adjunction_folding(ad)});
        }
    } else {
        throw OpError("BadInvocation", "unknown generate kind " + args.kind);
    }
    if (!args.out.empty()) write_file(args.out, serialize_document(out_doc));
    TargetReport t;
    t.path = args.out.empty() ? "(generated)" : args.out;
    t.kind = out_doc.kind;
    t.counts = document_counts(out_doc);
    r.targets.push_back(std::move(t));
    r.notes.push_back("generated " + args.kind);
    r.finish();
    r.seconds = timer.seconds();
    return r;
}

RunReport cmd_convert(const CommandArgs& args) {
    Timer timer;
    RunReport r;
    r.command = "convert";
    if (args.files.empty()) throw OpError("BadInvocation", "convert needs an input file");
    Document in = load(args.files.front());
    Document out_doc;
    const std::string& c = args.kind;

    if (c == "group_to_groupoid") {
        out_doc = encode_groupoid(group_to_one_object_groupoid(decode_group(in)));
    } else if (c == "horizontal_two_category" || c == "vertical_two_category") {
        DoubleCategory d = decode_double_category(in);
        out_doc = encode_two_category(c == "horizontal_two_category" ? horizontal_two_category(d)
                                                                     : vertical_two_category(d));
    } else if (c == "connection_from_folding") {
        FoldedDouble fd = decode_folded_double(in);
        out_doc = encode_connection_pair(connection_from_folding(fd.d, fd.folding));
    } else if (c == "folding_from_connection") {
        if (args.files.size() < 2) throw OpError("BadInvocation", "needs connection_pair and base files");
        DoubleCategory d = decode_double_category(load(args.files[1]));
        ConnectionPair cp = decode_connection_pair(in);
        out_doc = encode_folding(folding_from_connection(d, cp));
    } else if (c == "connection_to_thin") {
        if (args.files.size() < 2) throw OpError("BadInvocation", "needs connection_pair and base files");
        DoubleCategory d = decode_double_category(load(args.files[1]));
        out_doc = encode_thin_structure(connection_to_thin(d, decode_connection_pair(in)));
    } else if (c == "thin_to_connection") {
        if (args.files.size() < 2) throw OpError("BadInvocation", "needs thin_structure and base files");
        DoubleCategory d = decode_double_category(load(args.files[1]));
        out_doc = encode_connection_pair(thin_to_connection(d, decode_thin_structure(in)));
    } else if (c == "two_group_from_xmod") {
        out_doc = encode_two_group(two_group_from_xmod(decode_crossed_module(in)).tg);
    } else if (c == "xmod_from_two_group") {
        out_doc = encode_crossed_module(xmod_from_two_group(decode_two_group(in)));
    } else if (c == "functor_l") {
        FoldedDouble fd = decode_folded_double(in);
        out_doc = encode_two_functor_under_i(functor_L(fd.d, fd.folding));
    } else if (c == "functor_m") {
        out_doc = encode_folded_double(functor_M(decode_two_functor_under_i(in)));
    } else if (c == "functor_j") {
        out_doc = encode_folded_double(functor_J(decode_icat_algebra(in)));
    } else if (c == "functor_k") {
        out_doc = encode_two_functor_under_i(functor_K(decode_icat_algebra(in)));
    } else if (c == "reconstruct_x") {
        out_doc = encode_icat_algebra(reconstruct_X(decode_two_functor_under_i(in)));
    } else if (c == "strict_as_pseudo") {
        out_doc = encode_pseudo_double(strict_as_pseudo(decode_double_category(in)));
    } else if (c == "transport_twist") {
        TwistSearch tw = find_transport_twist(decode_double_category(in));
        if (!tw.found) {
            r.notes.push_back("no admissible twist: " + tw.reason);
            r.finish();
            r.seconds = timer.seconds();
            return r;
        }
        r.notes.push_back("twist with " + std::to_string(tw.nontrivial_associators) +
                          " non-identity associator entries");
        out_doc = encode_pseudo_double(tw.twisted);
    } else if (c == "extend_with_holonomy") {
        FoldedDouble fd = decode_folded_double(in);
        HolonomyExtension ext = extend_with_holonomy(fd.d, fd.folding.holonomy);
        out_doc = encode_double_category(ext.extended);
    } else if (c == "double_group_to_xmod") {
        FoldedDouble fd = decode_folded_double(in);
        out_doc = encode_xmod_under_group(double_group_to_xmod(fd.d, fd.folding));
    } else if (c == "xmod_to_double_group") {
        out_doc = encode_folded_double(xmod_to_double_group(decode_xmod_under_group(in)));
    } else {
        throw OpError("BadInvocation", "unknown conversion " + c);
    }
    if (!args.out.empty()) write_file(args.out, serialize_document(out_doc));
    TargetReport t;
    t.path = args.out.empty() ? "(converted)" : args.out;
    t.kind = out_doc.kind;
    t.counts = document_counts(out_doc);
    r.targets.push_back(std::move(t));
    r.notes.push_back("converted via " + c);
    r.finish();
    r.seconds = timer.seconds();
    return r;
}

namespace {

void note_check(RunReport& r, const std::string& what, bool ok) {
    r.notes.push_back(what + ": " + (ok ? "ok" : "FAILED"));
    if (!ok) r.exit_code = std::max(r.exit_code, 1);
}

}  // namespace

RunReport cmd_roundtrip(const CommandArgs& args) {
    Timer timer;
    RunReport r;
    r.command = "roundtrip";
    const std::string& t = args.theorem;
    if (args.files.empty()) throw OpError("BadInvocation", "roundtrip needs input files");
    Document in = load(args.files.front());

    if (t == "fold_connection") {
        FoldedDouble fd = decode_folded_double(in);
        ConnectionPair cp = connection_from_folding(fd.d, fd.folding);
        Folding back = folding_from_connection(fd.d, cp);
        note_check(r, "FoldConnection: folding -> connection -> folding identity", back == fd.folding);
        ConnectionPair cp2 = connection_from_folding(fd.d, back);
        note_check(r, "FoldConnection: connection -> folding -> connection identity", cp2 == cp);
        if (r.exit_code == 0) r.notes.push_back("identity round trip");
    } else if (t == "folding_unique") {
        FoldedDouble fd = decode_folded_double(in);
        Folding second = fd.folding;
        if (args.files.size() > 1) second = decode_folding(load(args.files[1]));
        FoldingIso iso = folding_iso(fd.d, fd.folding, second);
        bool ok = validate_folding_morphism(fd.d, fd.folding, second, iso.fwd).valid();
        for (const Morphism& j : fd.d.vmor) {
            Id jbar1 = fd.folding.holonomy.bar.at(j.id);
            Id jbar2 = second.holonomy.bar.at(j.id);
            ok = ok && sq_above(fd.d, iso.fwd.theta.at(j.id), iso.bwd.theta.at(j.id)) == fd.d.v_id_sq.at(jbar1);
            ok = ok && sq_above(fd.d, iso.bwd.theta.at(j.id), iso.fwd.theta.at(j.id)) == fd.d.v_id_sq.at(jbar2);
        }
        note_check(r, "FoldingUnique: canonical iso with two-sided inverse", ok);
    } else if (t == "yz") {
        if (in.kind == "two_functor_under_i") {
            TwoFunctorUnderI z = decode_two_functor_under_i(in);
            FoldedDouble m = functor_M(z);
            TwoFunctorUnderI back = functor_L(m.d, m.folding);
            note_check(r, "YZ: L(M(z)) = z exactly", canonical(back) == canonical(z));
        } else {
            FoldedDouble fd = decode_folded_double(in);
            FoldedDouble mld = functor_M(functor_L(fd.d, fd.folding));
            DoubleFunctorData w = mld_witness(fd.d, fd.folding);
            bool ok = validate_double_functor(fd.d, mld.d, w, args.caps).valid();
            std::set<Id> image;
            for (const auto& [a, b] : w.sq_map) image.insert(b);
            ok = ok && image.size() == mld.d.squares.size();
            note_check(r, "YZ: M(L(D)) iso witness replay", ok);
        }
    } else if (t == "xz") {
        if (in.kind == "two_functor_under_i") {
            TwoFunctorUnderI z = decode_two_functor_under_i(in);
            ICatAlgebra x = reconstruct_X(z);
            note_check(r, "XZ: reconstruct_X output validates", validate_icat_algebra(x, args.caps).valid());
            note_check(r, "XZ: K(reconstruct_X(z)) = z exactly", canonical(functor_K(x)) == canonical(z));
        } else {
            ICatAlgebra x = decode_icat_algebra(in);
            TwoFunctorUnderI z = functor_K(x);
            ICatAlgebra x2 = reconstruct_X(z);
            note_check(r, "XZ: reconstruct_X(K(x)) validates", validate_icat_algebra(x2, args.caps).valid());
            note_check(r, "XZ: K(reconstruct_X(K(x))) = K(x) exactly",
                       canonical(functor_K(x2)) == canonical(z));
        }
    } else if (t == "xy") {
        ICatAlgebra x = decode_icat_algebra(in);
        FoldedDouble j = functor_J(x);
        FoldedDouble mk = functor_M(functor_K(x));
        note_check(r, "XY: J(X) = M(K(X)) structurally",
                   canonical(j.d) == canonical(mk.d) && j.folding == mk.folding);
        note_check(r, "XY: J(X) validates",
                   validate_double_category(j.d, args.caps).valid() && validate_folding(j.d, j.folding, args.caps).valid());
        note_check(r, "XY: K = L∘J", canonical(functor_L(j.d, j.folding)) == canonical(functor_K(x)));
    } else if (t == "brown_spencer") {
        CrossedModule m = decode_crossed_module(in);
        TwoGroupData tg = two_group_from_xmod(m);
        CrossedModule back = xmod_from_two_group(tg.tg);
        XModMorphism unit = brown_spencer_unit(m);
        bool ok = validate_xmod_morphism(m, back, unit, args.caps).valid();
        std::set<Id> himg, gimg;
        for (const auto& [a, b] : unit.p) himg.insert(b);
        for (const auto& [a, b] : unit.q) gimg.insert(b);
        ok = ok && himg.size() == back.h.elements.size() && gimg.size() == back.g.elements.size();
        note_check(r, "BrownSpencer: xmod -> 2-group -> xmod isomorphism", ok);
        note_check(r, "BrownSpencer: 2-cell count = |H||G|",
                   tg.tg.cat.two_cells.size() == m.h.elements.size() * m.g.elements.size());
    } else if (t == "special_extension") {
        if (in.kind == "crossed_module_under_group") {
            XModUnderGroup x = decode_xmod_under_group(in);
            FoldedDouble dg = xmod_to_double_group(x);
            XModUnderGroup back = double_group_to_xmod(dg.d, dg.folding);
            bool ok = back.i == x.i && back.p == x.p && back.xm.g == x.xm.g;
            XModMorphism unit = brown_spencer_unit(x.xm);
            ok = ok && validate_xmod_morphism(x.xm, back.xm, unit, args.caps).valid();
            note_check(r, "SpecialExtension: xmod-under-group -> double group -> back", ok);
        } else {
            FoldedDouble fd = decode_folded_double(in);
            XModUnderGroup x = double_group_to_xmod(fd.d, fd.folding);
            FoldedDouble rebuilt = xmod_to_double_group(x);
            DoubleFunctorData w = double_group_roundtrip_witness(fd.d, fd.folding);
            bool ok = validate_double_functor(fd.d, rebuilt.d, w, args.caps).valid();
            std::set<Id> image;
            for (const auto& [a, b] : w.sq_map) image.insert(b);
            ok = ok && image.size() == rebuilt.d.squares.size();
            note_check(r, "SpecialExtension: double group -> xmod-under-group -> back (witness replay)", ok);
        }
    } else if (t == "thin") {
        FoldedDouble fd = decode_folded_double(in);
        ConnectionPair cp = connection_from_folding(fd.d, fd.folding);
        ThinStructure th = connection_to_thin(fd.d, cp);
        ConnectionPair cp2 = thin_to_connection(fd.d, th);
        note_check(r, "BrownMosa: connection -> thin -> connection identity", cp2 == cp);
        note_check(r, "BrownMosa: thin structure validates", validate_thin_structure(fd.d, th, args.caps).valid());
    } else if (t == "wz") {
        if (args.files.size() < 5)
            throw OpError("BadInvocation",
                          "wz needs: homotopy m1 m2 under_src under_tgt (crossed_module_under_group files)");
        CrossedHomotopy nu = decode_homotopy(in);
        XModMorphism m1 = decode_xmod_morphism(load(args.files[1]));
        XModMorphism m2 = decode_xmod_morphism(load(args.files[2]));
        XModUnderGroup src = decode_xmod_under_group(load(args.files[3]));
        XModUnderGroup tgt = decode_xmod_under_group(load(args.files[4]));
        UnderIReport rep = check_under_I(src, tgt, m1, m2, nu);
        note_check(r, "WZ: under-I verdicts agree", rep.nu_condition == rep.sigma_condition);
        r.notes.push_back(std::string("nu condition: ") + (rep.nu_condition ? "holds" : "fails"));
    } else {
        throw OpError("BadInvocation", "unknown theorem " + t);
    }
    r.notes.insert(r.notes.begin(), "theorem: " + t);
    r.seconds = timer.seconds();
    return r;
}

// ---------------------------------------------------------------------------
// mutation harness
// ---------------------------------------------------------------------------

std::vector<std::string> mutable_sections(const std::string& kind) {
    if (kind == "category") return {"identity", "comp"};
    if (kind == "groupoid") return {"identity", "comp", "inv"};
    if (kind == "group") return {"mul", "inv"};
    if (kind == "two_category")
        return {"id_one", "hcomp_one", "id_two", "vcomp_two", "hcomp_two"};
    if (kind == "two_group")
        return {"id_one", "hcomp_one", "id_two", "vcomp_two", "hcomp_two", "inv_one", "vinv_two", "hinv_two"};
    if (kind == "double_category")
        return {"h_id_mor", "v_id_mor", "hcomp_mor", "vcomp_mor", "h_id_sq", "v_id_sq", "hcomp_sq", "vcomp_sq"};
    if (kind == "folded_double_category")
        return {"h_id_mor", "v_id_mor", "hcomp_mor", "vcomp_mor", "h_id_sq", "v_id_sq", "hcomp_sq",
                "vcomp_sq", "bar", "lambda"};
    if (kind == "crossed_module") return {"h_mul", "h_inv", "g_mul", "g_inv", "action"};
    if (kind == "crossed_module_under_group")
        return {"h_mul", "h_inv", "g_mul", "g_inv", "action", "i_mul", "i_inv", "p"};
    if (kind == "icat_algebra")
        return {"base_identity", "base_comp", "hom_identity", "hom_comp", "transition_obj",
                "transition_mor", "circ_obj", "circ_mor", "unit"};
    if (kind == "pseudo_double_category")
        return {"h_id_mor", "v_id_mor", "vcomp_mor", "h_id_sq", "v_id_sq", "vcomp_sq", "associator"};
    if (kind == "two_functor_under_i")
        return {"base_identity", "base_comp", "c_id_one", "c_hcomp_one", "c_id_two", "c_vcomp_two",
                "c_hcomp_two", "p"};
    return {};
}

std::vector<MutationOutcome> run_mutations(const Document& doc, const std::vector<Document>& deps,
                                           int count, std::uint64_t seed, const Caps& caps) {
    std::vector<MutationOutcome> outcomes;
    std::mt19937_64 rng(seed);

    // candidate (section, row index) pairs with >1 distinct value in the pool
    struct Slot {
        std::string section;
        std::size_t row;
    };
    std::vector<Slot> slots;
    std::map<std::string, std::vector<Id>> pools;
    for (const std::string& sec : mutable_sections(doc.kind)) {
        auto it = doc.tables.find(sec);
        if (it == doc.tables.end()) continue;
        std::set<Id> pool;
        for (const auto& row : it->second) pool.insert(row.back());
        if (pool.size() < 2) continue;
        pools[sec] = std::vector<Id>(pool.begin(), pool.end());
        for (std::size_t i = 0; i < it->second.size(); ++i) slots.push_back({sec, i});
    }
    bool fresh_only = slots.empty();
    if (fresh_only) {
        // tiny structures (e.g. the terminal category) have no same-sort
        // replacement values; fall back to unknown-id corruption
        for (const std::string& sec : mutable_sections(doc.kind)) {
            auto it = doc.tables.find(sec);
            if (it == doc.tables.end()) continue;
            for (std::size_t i = 0; i < it->second.size(); ++i) slots.push_back({sec, i});
        }
    }
    if (slots.empty()) return outcomes;

    for (int n = 0; n < count; ++n) {
        const Slot& slot = slots[rng() % slots.size()];
        Document mutated = doc;
        auto& row = mutated.tables.at(slot.section)[slot.row];
        Id replacement;
        if (fresh_only) {
            replacement = "__mutant__";
        } else {
            const std::vector<Id>& pool = pools.at(slot.section);
            replacement = row.back();
            while (replacement == row.back()) replacement = pool[rng() % pool.size()];
        }
        MutationOutcome out;
        out.table = slot.section;
        out.before = row;
        row.back() = replacement;
        out.after = row;
        ValidationReport rep;
        try {
            rep = validate_document(mutated, deps, caps);
        } catch (const std::exception&) {
            // decode-level rejection also counts as caught
            out.caught = true;
            outcomes.push_back(std::move(out));
            continue;
        }
        out.caught = !rep.violations.empty() || !rep.structural.empty();
        outcomes.push_back(std::move(out));
    }
    return outcomes;
}

}  // namespace foldbox
