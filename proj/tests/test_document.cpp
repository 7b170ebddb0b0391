#include <doctest.h>

#include <fstream>
#include <sstream>

#include "helpers.hpp"

using namespace foldbox;
using namespace foldbox::testutil;

namespace {

std::string fixture_path(const std::string& name) {
    return std::string(FOLDBOX_SOURCE_DIR) + "/tests/fixtures/" + name;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE_MESSAGE(in.good(), "missing fixture ", path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("golden file: canonical box BC2 round-trips byte-identically") {
    std::string bytes = slurp(fixture_path("sq_bc2.fbx"));
    Document doc = parse_document(bytes);
    CHECK(serialize_document(doc) == bytes);
    // and it decodes to exactly the generated structure
    FoldedDouble fd = decode_folded_double(doc);
    CHECK(fd.d == canonical(catalog::get().box_bc2));
    CHECK(fd.folding == catalog::get().box_bc2_fold);
}

TEST_CASE("parse then serialize canonicalizes row order and comments") {
    std::string messy =
        "fbx 1\n"
        "kind group\n"
        "# a comment line\n"
        "meta name C2\n"
        "elements:\n"
        "  t\n"
        "  e\n\n"
        "unit:\n"
        "  e\n"
        "mul:\n"
        "  t t e\n"
        "  e e e\n"
        "  t e t\n"
        "  e t t\n"
        "inv:\n"
        "  t t\n"
        "  e e\n";
    Document doc = parse_document(messy);
    // decoding preserves file order; the canonical serialization sorts it
    CHECK(decode_group(parse_document(serialize_document(doc))) == catalog::c2());
    std::string canonical_bytes = serialize_document(doc);
    // serializing the parse of the canonical bytes is a fixed point
    CHECK(serialize_document(parse_document(canonical_bytes)) == canonical_bytes);
    // rows are sorted
    CHECK(canonical_bytes.find("  e\n  t\n") != std::string::npos);
}

TEST_CASE("encode/decode round trips on in-memory values") {
    const auto& cat = catalog::get();
    CHECK(decode_group(encode_group(catalog::s3())) == catalog::s3());
    CHECK(decode_groupoid(encode_groupoid(cat.bs3)) == cat.bs3);
    CHECK(decode_two_category(encode_two_category(cat.tg1.tg.cat)) == cat.tg1.tg.cat);
    {
        DoubleCategory d = decode_double_category(encode_double_category(cat.box_bc3));
        CHECK(canonical(d) == canonical(cat.box_bc3));
    }
    {
        FoldedDouble fd{cat.qtg2.d, cat.qtg2_fold};
        FoldedDouble back = decode_folded_double(encode_folded_double(fd));
        CHECK(canonical(back.d) == canonical(fd.d));
        CHECK(back.folding == fd.folding);
    }
    CHECK(decode_crossed_module(encode_crossed_module(cat.xm2)) == cat.xm2);
    {
        XModUnderGroup x = cat.dg2_src;
        CHECK(decode_xmod_under_group(encode_xmod_under_group(x)) == x);
    }
    {
        TwoFunctorUnderI z = functor_L(cat.box_bc2, cat.box_bc2_fold);
        TwoFunctorUnderI back = decode_two_functor_under_i(encode_two_functor_under_i(z));
        CHECK(canonical(back) == canonical(z));
    }
    {
        XModUnderGroup under{cat.xm3, catalog::c2(), {{"e", "e"}, {"t", "t"}}};
        ICatAlgebra x = algebra_from_xmod_under(under);
        CHECK(decode_icat_algebra(encode_icat_algebra(x)) == x);
    }
    {
        PseudoDoubleCategory p = strict_as_pseudo(cat.box_bc2);
        CHECK(decode_pseudo_double(encode_pseudo_double(p)) == p);
    }
}

TEST_CASE("an empty-object category file is a valid document") {
    Document doc = parse_document("fbx 1\nkind category\n");
    CHECK(doc.kind == "category");
    FinCategory c = decode_category(doc);
    CHECK(validate_category(c).valid());
}

TEST_CASE("parse errors") {
    CHECK_THROWS_AS(parse_document(""), ParseError);
    CHECK_THROWS_WITH_AS(parse_document("fbx 2\nkind group\n"), doctest::Contains("SchemaVersionMismatch"),
                         ParseError);
    CHECK_THROWS_AS(parse_document("kind group\n"), ParseError);
    CHECK_THROWS_AS(parse_document("fbx 1\nkind group\n  stray row\n"), ParseError);
    CHECK_THROWS_AS(parse_document("fbx 1\nkind group\nelements:\nelements:\n"), ParseError);

    // duplicate morphism id is a parse-level rejection naming the id
    std::string dup =
        "fbx 1\nkind category\nobjects:\n  *\nmorphisms:\n  f * *\n  f * *\nidentity:\n  * f\n";
    CHECK_THROWS_WITH_AS(decode_category(parse_document(dup)), doctest::Contains("'f'"), ParseError);

    // unknown kinds and wrong arities are rejected at shape checking
    Document bad = parse_document("fbx 1\nkind mystery\n");
    CHECK_THROWS_AS(check_document_shape(bad), OpError);
    Document arity = parse_document("fbx 1\nkind group\nelements:\n  a b\n");
    CHECK_THROWS_AS(check_document_shape(arity), ParseError);
}

TEST_CASE("validate_document dispatch with dependencies") {
    const auto& cat = catalog::get();
    Document base = encode_double_category(cat.qtg2.d);
    Document fold = encode_folding(cat.qtg2_fold);
    CHECK(validate_document(fold, {base}).valid());

    Document holo = encode_holonomy(cat.qtg2_fold.holonomy);
    CHECK(validate_document(holo, {base}).valid());

    // missing dependencies are a bad invocation
    CHECK_THROWS_WITH_AS(validate_document(fold, {}), doctest::Contains("BadInvocation"), OpError);

    // folded documents validate standalone
    Document folded = encode_folded_double({cat.qtg2.d, cat.qtg2_fold});
    CHECK(validate_document(folded, {}).valid());
}

TEST_CASE("mutation harness catches seeded corruption") {
    const auto& cat = catalog::get();
    Document doc = encode_folded_double({cat.box_bc2, cat.box_bc2_fold});
    auto outcomes = run_mutations(doc, {}, 25, 12345);
    CHECK(outcomes.size() == 25);
    for (const MutationOutcome& o : outcomes) {
        CAPTURE(o.table);
        CAPTURE(join_ids(o.before, " "));
        CAPTURE(join_ids(o.after, " "));
        CHECK(o.caught);
    }
}

TEST_CASE("structured reports are deterministic and carry the tag vocabulary") {
    const auto& cat = catalog::get();
    RunReport r;
    r.command = "validate";
    TargetReport t;
    t.path = "box.fbx";
    t.kind = "double_category";
    DoubleCategory broken = cat.box_bc2;
    broken.h_id_sq["t"] = broken.v_id_sq.at("t");
    t.report = validate_double_category(broken);
    r.targets.push_back(t);
    r.finish();
    CHECK(r.exit_code == 1);
    std::string s1 = emit_report(r, "structured");
    std::string s2 = emit_report(r, "structured");
    CHECK(s1 == s2);
    CHECK(s1.find("\"tag\"") != std::string::npos);
    std::string text = emit_report(r, "text");
    CHECK(text.find("violation") != std::string::npos);
}
