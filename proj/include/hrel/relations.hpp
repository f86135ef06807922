#pragma once

#include <cstdio>
#include <map>

#include "hrel/verifier.hpp"

namespace hrel {

namespace detail {

inline RepProgram load_catalog_program(const VerifyOptions& opt, const char* file) {
    std::string path = opt.catalog_dir + "/" + file;
    RepProgram prog = parse_repfile(slurp_file(path));
    auto diags = validate_program(prog);
    if (!diags.empty())
        throw eval_error("catalog file '" + path + "' failed validation: " +
                         diags.front().message);
    return prog;
}

inline std::string format_value(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

/// Phase program matching the requested charge and unit charge; the shipped
/// phase_u1.rep is this text with q = e = 1.
inline RepProgram phase_program(double q, double e) {
    std::string text = "param b = 0;\n";
    text += "let q = " + format_value(q) + ";\n";
    text += "let e = " + format_value(e) + ";\n";
    text += "let coef = (-q)*inv([[i*e]]);\n";
    text += "rep I : component = exp(coef*b);\n";
    return parse_repfile(text);
}

/// Expected structure constants of [K_p, K_q] in the catalog pair basis,
/// from the eta-contracted commutation pattern.
inline std::vector<double> expected_so13_coefficients(int p, int q) {
    std::vector<double> coeff(6, 0.0);
    auto [mu, nu] = omega_pairs()[size_t(p)];
    auto [rho, sigma] = omega_pairs()[size_t(q)];
    auto eta = [](int a, int b) { return a == b ? (a == 0 ? -1.0 : 1.0) : 0.0; };
    auto accumulate = [&](double c, int a, int b) {
        if (c == 0.0 || a == b) return;
        for (size_t k = 0; k < 6; ++k) {
            auto [x, y] = omega_pairs()[k];
            if (x == a && y == b) { coeff[k] += c; return; }
            if (x == b && y == a) { coeff[k] -= c; return; }
        }
    };
    accumulate(eta(nu, rho), mu, sigma);
    accumulate(-eta(mu, rho), nu, sigma);
    accumulate(-eta(nu, sigma), mu, rho);
    accumulate(eta(mu, sigma), nu, rho);
    return coeff;
}

inline double jacobi_residual(const std::vector<CMatrix>& gens) {
    double worst = 0.0;
    for (size_t a = 0; a < gens.size(); ++a)
        for (size_t b = a + 1; b < gens.size(); ++b)
            for (size_t c = b + 1; c < gens.size(); ++c) {
                CMatrix sum = commutator(gens[a], commutator(gens[b], gens[c]));
                sum += commutator(gens[b], commutator(gens[c], gens[a]));
                sum += commutator(gens[c], commutator(gens[a], gens[b]));
                worst = std::max(worst, sum.max_abs());
            }
    return worst;
}

}  // namespace detail

/// Generator oracle relation: dual-number generators against central
/// finite differences for every catalog rep and parameter, plus a
/// two-step refinement check (the discrepancy must not grow when the
/// step shrinks from 1e-4 to 1e-6).
inline VerificationReport verify_generator_oracle(const VerifyOptions& opt) {
    detail::Timer timer;
    VerificationReport report;
    report.name = "generator-oracle";
    report.mode = "spacetime";

    const char* files[] = {"poincare_scalar.rep", "poincare_vector.rep",
                           "poincare_spinor.rep", "phase_u1.rep",
                           "dilation_affine.rep"};
    for (const char* file : files) {
        RepProgram prog = detail::load_catalog_program(opt, file);
        std::string stem(file);
        stem = stem.substr(0, stem.find('.'));
        for (size_t r = 0; r < prog.reps.size(); ++r) {
            for (size_t w = 0; w < prog.params.size(); ++w) {
                FdCrosscheck fd = fd_crosscheck(prog, int(r), int(w), opt.fd_step);
                std::string label = stem + "/" + prog.reps[r].name + "/" +
                                    prog.params[w].name;
                report.add(label, fd.discrepancy,
                           opt.tolerance_override.value_or(1e-6), "fd");

                double coarse = fd_crosscheck(prog, int(r), int(w), 1e-4).discrepancy;
                double fine = fd_crosscheck(prog, int(r), int(w), 1e-6).discrepancy;
                report.add("richardson:" + label, std::max(0.0, fine - coarse),
                           opt.tolerance_override.value_or(1e-15), "fd");
            }
        }
    }
    report.ms = timer.ms();
    return report;
}

/// Algebra closure relation: commutators of extracted generators expand in
/// the generator span with the eta-contracted coefficients; translations on
/// the polynomial realization commute; Jacobi identities hold.
inline VerificationReport verify_algebra_closure(const VerifyOptions& opt) {
    detail::Timer timer;
    VerificationReport report;
    report.name = "algebra-closure";
    report.mode = "spacetime";

    auto closure_records = [&](const std::string& label, const RepProgram& prog,
                               const char* rep_name) {
        int rep = prog.rep_index(rep_name);
        std::vector<CMatrix> gens;
        for (int w = 0; w < 6; ++w) gens.push_back(generator(prog, rep, w).matrix);

        ClosureResult closure = algebra_closure(gens);
        report.add(label + ":closure", closure.max_residual,
                   opt.tolerance_override.value_or(1e-9));

        double coeff_err = closure.full_rank ? 0.0 : 1.0;
        if (closure.full_rank) {
            for (int p = 0; p < 6; ++p)
                for (int q = 0; q < 6; ++q) {
                    auto expected = detail::expected_so13_coefficients(p, q);
                    for (int g = 0; g < 6; ++g)
                        coeff_err = std::max(
                            coeff_err, std::abs(closure.coefficients[size_t(p)][size_t(q)]
                                                                    [size_t(g)] -
                                                expected[size_t(g)]));
                }
        }
        report.add(label + ":coefficients", coeff_err,
                   opt.tolerance_override.value_or(1e-9));
        report.add("jacobi:" + label, detail::jacobi_residual(gens),
                   opt.tolerance_override.value_or(1e-9));
    };

    closure_records("lorentz-vector",
                    detail::load_catalog_program(opt, "poincare_vector.rep"), "D_vector");
    closure_records("lorentz-spinor",
                    detail::load_catalog_program(opt, "poincare_spinor.rep"), "D_spinor");

    // Full Poincare action on the scalar polynomial realization.
    PolySpace space(opt.degree, 1);
    std::vector<CMatrix> poincare;
    for (size_t k = 0; k < 6; ++k) {
        auto [mu, nu] = omega_pairs()[k];
        poincare.push_back(space.rotation_matrix(mu, nu, CMatrix(1, 1)));
    }
    double translation_residual = 0.0;
    std::vector<CMatrix> translations;
    for (int mu = 0; mu < 4; ++mu) translations.push_back(space.partial_matrix(mu));
    for (int mu = 0; mu < 4; ++mu)
        for (int nu = mu + 1; nu < 4; ++nu)
            translation_residual = std::max(
                translation_residual,
                commutator(translations[size_t(mu)], translations[size_t(nu)]).max_abs());
    report.add("poincare-polyspace:translations", translation_residual,
               opt.tolerance_override.value_or(1e-12));

    for (auto& t : translations) poincare.push_back(std::move(t));
    ClosureResult closure = algebra_closure(poincare);
    report.add("poincare-polyspace:closure", closure.max_residual,
               opt.tolerance_override.value_or(1e-9));

    report.ms = timer.ms();
    return report;
}

/// Internal U(1) relation: the dual derivative of the phase pullback equals
/// the analytic charge generator -q/(ie); the quadratic exponent family has
/// a vanishing generator at the identity.
inline VerificationReport verify_internal_phase(const VerifyOptions& opt) {
    detail::Timer timer;
    RepProgram prog = detail::phase_program(opt.charge, opt.unit_charge);
    auto diags = validate_program(prog);
    if (!diags.empty()) throw eval_error("phase program failed validation");

    VerificationReport report;
    report.name = "internal-u1";
    report.mode = "internal";

    PolySpace space(opt.degree, 1);
    CMatrix lhs = detail::pullback_derivative(prog, space, -1, 0, 0, false);

    PhaseCatalogEntry entry(opt.charge, opt.unit_charge);
    CMatrix intrinsic(1, 1);
    intrinsic(0, 0) = entry.component_generator();
    CMatrix rhs = space.component_action(intrinsic);

    const Complex rescale = opt.physical_rescale ? Complex(0.0, 1.0) : Complex(1.0, 0.0);
    lhs = rescale * lhs;
    rhs = rescale * rhs;
    detail::require_finite(lhs, report.name);
    report.add("b", max_abs_diff(lhs, rhs), opt.tolerance_override.value_or(1e-12));

    // General exponential family with f(b) = b^2: f'(b0) = 0 at b0 = 0.
    RepProgram quad = parse_repfile("param b = 0; rep F : component = exp([[b*b]]);");
    CMatrix quad_lhs = detail::pullback_derivative(quad, space, -1, 0, 0, false);
    report.add("family-f-quadratic", quad_lhs.max_abs(),
               opt.tolerance_override.value_or(1e-14));

    report.ms = timer.ms();
    return report;
}

/// All relation names, in registry order.
inline std::vector<std::string> relation_names() {
    return {"poincare-scalar", "poincare-vector", "poincare-spinor", "dilation-affine",
            "translation-h",  "internal-u1",     "bundle-scalar",   "bundle-vector",
            "bundle-spinor",  "fock-global",     "fock-local",      "frame-scalar",
            "frame-vector",   "frame-spinor",    "generator-oracle", "algebra-closure"};
}

/// Expand selection aliases; returns false for an unknown name.
inline bool expand_relation_selection(const std::vector<std::string>& requested,
                                      std::vector<std::string>& out) {
    auto known = relation_names();
    for (const auto& name : requested) {
        if (name == "fock-charge") {  // both charge relations
            out.push_back("fock-global");
            out.push_back("fock-local");
            continue;
        }
        if (std::find(known.begin(), known.end(), name) == known.end()) return false;
        out.push_back(name);
    }
    return true;
}

/// Run one relation by name.
inline VerificationReport run_relation(const std::string& name, const VerifyOptions& opt) {
    auto catalog_local = [&](const char* file, RelationMode mode,
                             std::optional<Spin> spin) {
        return verify_local(name, detail::load_catalog_program(opt, file), mode, spin,
                            opt);
    };

    if (name == "poincare-scalar")
        return catalog_local("poincare_scalar.rep", RelationMode::Spacetime, Spin::Scalar);
    if (name == "poincare-vector")
        return catalog_local("poincare_vector.rep", RelationMode::Spacetime, Spin::Vector);
    if (name == "poincare-spinor")
        return catalog_local("poincare_spinor.rep", RelationMode::Spacetime, Spin::Spinor);
    if (name == "dilation-affine")
        return catalog_local("dilation_affine.rep", RelationMode::Spacetime, std::nullopt);
    if (name == "bundle-scalar")
        return catalog_local("poincare_scalar.rep", RelationMode::Bundle, Spin::Scalar);
    if (name == "bundle-vector")
        return catalog_local("poincare_vector.rep", RelationMode::Bundle, Spin::Vector);
    if (name == "bundle-spinor")
        return catalog_local("poincare_spinor.rep", RelationMode::Bundle, Spin::Spinor);
    if (name == "translation-h") {
        RepProgram prog = parse_repfile(translation_mixing_program());
        std::vector<CMatrix> h(4, CMatrix(2, 2));
        h[0] = CMatrix{{0, 1}, {0, 0}};
        return verify_translation_with_H(name, prog, h, opt);
    }
    if (name == "internal-u1") return verify_internal_phase(opt);
    if (name == "fock-global")
        return verify_global_charge(name, RelationMode::FockGlobal, opt);
    if (name == "fock-local")
        return verify_global_charge(name, RelationMode::FockLocal, opt);
    if (name == "frame-scalar")
        return verify_frame_independence(name, Spin::Scalar, opt);
    if (name == "frame-vector")
        return verify_frame_independence(name, Spin::Vector, opt);
    if (name == "frame-spinor")
        return verify_frame_independence(name, Spin::Spinor, opt);
    if (name == "generator-oracle") return verify_generator_oracle(opt);
    if (name == "algebra-closure") return verify_algebra_closure(opt);
    throw eval_error("unknown relation '" + name + "'");
}

/// Run a selection of relations (all of them when `names` is empty) and
/// aggregate the suite report; relations and records are emitted in sorted
/// order so aggregation is order-independent.
inline SuiteReport run_suite(std::vector<std::string> names, const VerifyOptions& opt) {
    if (names.empty()) names = relation_names();
    std::sort(names.begin(), names.end());
    names.erase(std::unique(names.begin(), names.end()), names.end());

    SuiteReport suite;
    suite.seed = opt.seed;
    for (const auto& name : names) {
        VerificationReport rep = run_relation(name, opt);
        std::stable_sort(rep.records.begin(), rep.records.end(),
                         [](const RelationRecord& a, const RelationRecord& b) {
                             return a.omega < b.omega;
                         });
        suite.pass = suite.pass && rep.pass;
        suite.relations.push_back(std::move(rep));
    }
    return suite;
}

}  // namespace hrel
