// foldbox: validate, convert, generate, and round-trip finite double
// categories, foldings, I-category algebras, 2-groups, and crossed modules
// stored as .fbx table files.

#include <cstdlib>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "foldbox/cli.hpp"

namespace {

int emit(const foldbox::RunReport& report, const std::string& format, const std::string& out_path) {
    std::string rendered = foldbox::emit_report(report, format);
    if (!out_path.empty()) {
        std::ofstream out(out_path, std::ios::binary);
        if (!out) {
            std::cerr << "cannot write " << out_path << "\n";
            return 3;
        }
        out << rendered;
    } else {
        std::cout << rendered;
    }
    return report.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"foldbox: finite double categories, foldings, and crossed modules as tables"};
    app.require_subcommand(1);

    foldbox::CommandArgs args;
    std::string format = "text";
    std::string report_out;

    if (const char* cap = std::getenv("FOLDBOX_CAP")) {
        long v = std::strtol(cap, nullptr, 10);
        if (v > 0) {
            args.caps.max_objects = static_cast<std::size_t>(v);
            args.caps.max_morphisms = static_cast<std::size_t>(v);
            args.caps.max_squares = static_cast<std::size_t>(v) * v;
        }
    }

    long cap_flag = 0;
    std::vector<std::string> in_files;
    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--format", format)->check(CLI::IsMember({"text", "structured"}));
        cmd->add_option("--out", args.out);
        cmd->add_option("--cap", cap_flag);
        cmd->add_option("--in", in_files, "input files (same as positional)");
        cmd->add_option("files", args.files);
    };

    CLI::App* validate = app.add_subcommand("validate", "validate structures against their axioms");
    validate->add_option("--kind", args.kind);
    add_common(validate);

    CLI::App* report = app.add_subcommand("report", "parse, validate, and count a structure");
    report->add_option("--kind", args.kind);
    add_common(report);

    CLI::App* generate = app.add_subcommand("generate", "generate a canonical structure");
    generate->add_option("--kind", args.kind)->required();
    generate->add_option("--group", args.group);
    generate->add_option("--order", args.order);
    add_common(generate);

    CLI::App* convert = app.add_subcommand("convert", "run a constructive conversion");
    convert->add_option("--kind", args.kind)->required();
    add_common(convert);

    CLI::App* roundtrip = app.add_subcommand("roundtrip", "exercise a theorem's round trip");
    roundtrip->add_option("--theorem", args.theorem)->required();
    add_common(roundtrip);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 3;
    }

    if (cap_flag > 0) {
        args.caps.max_objects = static_cast<std::size_t>(cap_flag);
        args.caps.max_morphisms = static_cast<std::size_t>(cap_flag);
        args.caps.max_squares = static_cast<std::size_t>(cap_flag) * static_cast<std::size_t>(cap_flag);
    }
    args.files.insert(args.files.begin(), in_files.begin(), in_files.end());

    // report output goes to --out only for generate/convert payloads; the
    // rendered report itself always goes to stdout for those commands.
    try {
        foldbox::RunReport result;
        if (validate->parsed()) {
            report_out = args.out;
            args.out.clear();
            result = foldbox::cmd_validate(args);
        } else if (report->parsed()) {
            report_out = args.out;
            args.out.clear();
            result = foldbox::cmd_report(args);
        } else if (generate->parsed()) {
            result = foldbox::cmd_generate(args);
        } else if (convert->parsed()) {
            result = foldbox::cmd_convert(args);
        } else if (roundtrip->parsed()) {
            result = foldbox::cmd_roundtrip(args);
        }
        return emit(result, format, report_out);
    } catch (const foldbox::ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const foldbox::OpError& e) {
        if (e.code == "BadInvocation" || e.code == "UnknownKind") {
            std::cerr << "error: " << e.what() << "\n";
            return 3;
        }
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
