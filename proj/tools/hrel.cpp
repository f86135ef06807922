// hrel: parse rep-files, derive generators, verify the commutation
// relations of the built-in catalog and emit machine-readable reports.
//
// Exit codes: 0 pass, 1 verification failure, 2 usage/config error,
// 3 I/O error, 4 numerical failure.

#include <cstdlib>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "hrel/hrel.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitVerifyFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;
constexpr int kExitNumeric = 4;

void print_parse_error(const std::string& path, const hrel::parse_error& err) {
    std::cerr << path << ":" << err.span.line << ":" << err.span.col
              << ": error: " << err.what();
    if (!err.expected.empty()) std::cerr << " (expected: " << err.expected << ")";
    std::cerr << "\n";
}

int load_program(const std::string& path, hrel::RepProgram& out) {
    std::string text;
    try {
        text = hrel::slurp_file(path);
    } catch (const hrel::io_error& err) {
        std::cerr << "error: " << err.what() << "\n";
        return kExitIo;
    }
    try {
        out = hrel::parse_repfile(text);
    } catch (const hrel::parse_error& err) {
        print_parse_error(path, err);
        return kExitUsage;
    }
    auto diags = hrel::validate_program(out);
    if (!diags.empty()) {
        for (const auto& d : diags)
            std::cerr << path << ":" << d.span.line << ":" << d.span.col
                      << ": error: " << d.message << "\n";
        return kExitUsage;
    }
    return kExitPass;
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw hrel::io_error("cannot open '" + out_path + "' for writing");
    out << text;
}

int cmd_parse(const std::string& path) {
    hrel::RepProgram prog;
    int rc = load_program(path, prog);
    if (rc == kExitPass) std::cout << "OK\n";
    return rc;
}

int cmd_derive(const std::string& path, const std::string& omega,
               const std::string& format, double step, const std::string& out_path) {
    hrel::RepProgram prog;
    int rc = load_program(path, prog);
    if (rc != kExitPass) return rc;

    std::vector<int> selected;
    if (omega == "all") {
        for (size_t k = 0; k < prog.params.size(); ++k) selected.push_back(int(k));
    } else {
        int idx = prog.param_index(omega);
        if (idx < 0) {
            std::cerr << "error: no parameter named '" << omega << "'\n";
            return kExitUsage;
        }
        selected.push_back(idx);
    }

    std::vector<hrel::DerivedGenerator> derived;
    try {
        for (size_t r = 0; r < prog.reps.size(); ++r) {
            const bool affine_coord =
                prog.reps[r].kind == hrel::RepKind::Coordinate &&
                prog.reps[r].expr->kind == hrel::ExprKind::Affine;
            for (int w : selected) {
                hrel::DerivedGenerator d;
                d.gen = hrel::generator(prog, int(r), w);
                d.omega_name = prog.params[size_t(w)].name;
                auto fd = hrel::fd_crosscheck(prog, int(r), w, step);
                d.fd_discrepancy = fd.discrepancy;
                d.fd_step = fd.step;
                if (affine_coord) d.flow = hrel::affine_flow(prog, int(r), w);
                derived.push_back(std::move(d));
            }
        }
    } catch (const hrel::numeric_error& err) {
        std::cerr << "error: " << err.what() << "\n";
        return kExitNumeric;
    }

    if (format == "json") {
        emit(hrel::derived_to_json(path, derived).dump(2) + "\n", out_path);
        return kExitPass;
    }
    std::ostringstream out;
    for (const auto& d : derived) {
        out << d.gen.rep_name << " / d" << d.omega_name << ":\n"
            << hrel::format_complex_matrix(d.gen.matrix)
            << "  fd discrepancy " << std::scientific << std::setprecision(3)
            << d.fd_discrepancy << " (step " << d.fd_step << ")\n";
        if (d.flow) {
            out << "  delta " << std::defaultfloat << d.flow->delta_det
                << " (trace route " << d.flow->delta_trace << "), shift [";
            for (size_t k = 0; k < d.flow->shift_part.size(); ++k)
                out << (k ? ", " : "") << d.flow->shift_part[k];
            out << "]\n";
        }
    }
    emit(out.str(), out_path);
    return kExitPass;
}

int cmd_verify(bool all, std::vector<std::string> selection, hrel::VerifyOptions opt,
               const std::string& format, const std::string& out_path) {
    std::vector<std::string> names;
    if (!all) {
        if (selection.empty()) {
            std::cerr << "error: pass --all or at least one --relation\n";
            return kExitUsage;
        }
        if (!hrel::expand_relation_selection(selection, names)) {
            std::cerr << "error: unknown relation in selection; known names:";
            for (const auto& n : hrel::relation_names()) std::cerr << " " << n;
            std::cerr << " fock-charge\n";
            return kExitUsage;
        }
    }

    hrel::SuiteReport suite;
    try {
        suite = hrel::run_suite(names, opt);
    } catch (const hrel::numeric_error& err) {
        std::cerr << "error: " << err.what() << "\n";
        return kExitNumeric;
    } catch (const hrel::io_error& err) {
        std::cerr << "error: " << err.what() << "\n";
        return kExitIo;
    } catch (const hrel::parse_error& err) {
        std::cerr << "error: catalog file broken: " << err.what() << "\n";
        return kExitIo;
    }

    try {
        if (format == "json") emit(hrel::suite_to_json(suite).dump(2) + "\n", out_path);
        else emit(hrel::suite_to_table(suite), out_path);
    } catch (const hrel::io_error& err) {
        std::cerr << "error: " << err.what() << "\n";
        return kExitIo;
    }
    return suite.pass ? kExitPass : kExitVerifyFail;
}

int cmd_report(const std::string& path, const std::string& format) {
    std::string text;
    try {
        text = hrel::slurp_file(path);
    } catch (const hrel::io_error& err) {
        std::cerr << "error: " << err.what() << "\n";
        return kExitIo;
    }
    hrel::Json doc = hrel::Json::parse(text, nullptr, false);
    if (doc.is_discarded() || !doc.contains("relations")) {
        std::cerr << "error: '" << path << "' is not a verification report\n";
        return kExitUsage;
    }
    if (format == "json") {
        std::cout << doc.dump(2) << "\n";
        return doc.value("pass", false) ? kExitPass : kExitVerifyFail;
    }
    hrel::SuiteReport suite;
    suite.pass = doc.value("pass", false);
    suite.seed = doc.value("seed", 0UL);
    for (const auto& rel : doc["relations"]) {
        hrel::VerificationReport r;
        r.name = rel.value("name", "");
        r.mode = rel.value("mode", "");
        r.pass = rel.value("pass", false);
        r.ms = rel.value("ms", 0.0);
        for (const auto& rec : rel["records"])
            r.records.push_back({rec.value("omega", ""), rec.value("residual", 0.0),
                                 rec.value("tolerance", 0.0), rec.value("pass", false),
                                 rec.value("method", "dual")});
        suite.relations.push_back(std::move(r));
    }
    std::cout << hrel::suite_to_table(suite);
    return suite.pass ? kExitPass : kExitVerifyFail;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Derive and verify Heisenberg commutation relations from "
                 "parametrized group representations"};
    app.require_subcommand(1);

    std::string path, omega = "all", format = "table", out_path;
    double step = 1e-6;

    auto* parse = app.add_subcommand("parse", "Parse and validate a rep-file");
    parse->add_option("path", path, "rep-file path")->required();

    auto* derive =
        app.add_subcommand("derive", "Extract generators with FD cross-checks");
    derive->add_option("path", path, "rep-file path")->required();
    derive->add_option("--omega", omega, "parameter name or 'all'");
    derive->add_option("--format", format, "json|table")
        ->check(CLI::IsMember({"json", "table"}));
    derive->add_option("--step", step, "finite-difference step");
    derive->add_option("--out", out_path, "write output to a file");

    hrel::VerifyOptions opt;
    if (const char* env_seed = std::getenv("HREL_SEED"))
        opt.seed = std::strtoul(env_seed, nullptr, 10);
    opt.catalog_dir = HREL_DEFAULT_CATALOG_DIR;

    bool all = false, physical = false;
    double tol = -1.0;
    std::vector<std::string> selection;
    auto* verify = app.add_subcommand("verify", "Run relation verifications");
    verify->add_flag("--all", all, "verify every relation");
    verify->add_option("--relation", selection, "relation name (repeatable)");
    verify->add_option("--degree", opt.degree, "polynomial degree")
        ->check(CLI::Range(1, 31));
    verify->add_option("--cutoff", opt.cutoff, "number-operator cutoff")
        ->check(CLI::Range(2, 1024));
    verify->add_option("--step", opt.fd_step, "finite-difference step");
    verify->add_option("--tol", tol, "override every record tolerance");
    verify->add_option("--seed", opt.seed, "PRNG seed for sampled checks");
    verify->add_option("--format", format, "json|table")
        ->check(CLI::IsMember({"json", "table"}));
    verify->add_option("--out", out_path, "write the report to a file");
    verify->add_flag("--physical", physical,
                     "rescale generators by i*hbar with hbar = 1");
    verify->add_option("--charge", opt.charge, "charge q for the phase relations");
    verify->add_option("--unit-charge", opt.unit_charge, "unit charge e (nonzero)");
    verify->add_option("--catalog", opt.catalog_dir, "catalog directory");

    std::string report_path, report_format = "table";
    auto* report = app.add_subcommand("report", "Render an existing report file");
    report->add_option("path", report_path, "report JSON path")->required();
    report->add_option("--format", report_format, "json|table")
        ->check(CLI::IsMember({"json", "table"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : kExitUsage;
    }

    try {
        if (parse->parsed()) return cmd_parse(path);
        if (derive->parsed()) {
            if (step < 1e-9 || step > 1e-2) {
                std::cerr << "error: --step must lie in [1e-9, 1e-2]\n";
                return kExitUsage;
            }
            return cmd_derive(path, omega, format, step, out_path);
        }
        if (verify->parsed()) {
            opt.physical_rescale = physical;
            if (tol >= 0.0) {
                if (tol == 0.0) {
                    std::cerr << "error: --tol must be positive\n";
                    return kExitUsage;
                }
                opt.tolerance_override = tol;
            }
            if (opt.fd_step < 1e-9 || opt.fd_step > 1e-2) {
                std::cerr << "error: --step must lie in [1e-9, 1e-2]\n";
                return kExitUsage;
            }
            if (opt.unit_charge == 0.0) {
                std::cerr << "error: --unit-charge must be nonzero\n";
                return kExitUsage;
            }
            return cmd_verify(all, selection, opt, format, out_path);
        }
        if (report->parsed()) return cmd_report(report_path, report_format);
    } catch (const hrel::numeric_error& err) {
        std::cerr << "error: " << err.what() << "\n";
        return kExitNumeric;
    } catch (const hrel::eval_error& err) {
        std::cerr << "error: " << err.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << "\n";
        return kExitNumeric;
    }
    return kExitUsage;
}
