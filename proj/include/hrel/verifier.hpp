#pragma once

#include <algorithm>
#include <chrono>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "hrel/autodiff.hpp"
#include "hrel/catalog.hpp"
#include "hrel/fock.hpp"
#include "hrel/io.hpp"
#include "hrel/parser.hpp"
#include "hrel/polyspace.hpp"

namespace hrel {

enum class RelationMode { Spacetime, Internal, Bundle, FockGlobal, FockLocal };

inline const char* to_string(RelationMode m) {
    switch (m) {
        case RelationMode::Spacetime: return "spacetime";
        case RelationMode::Internal: return "internal";
        case RelationMode::Bundle: return "bundle";
        case RelationMode::FockGlobal: return "fock-global";
        case RelationMode::FockLocal: return "fock-local";
    }
    return "?";
}

struct RelationRecord {
    std::string omega;
    double residual = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    std::string method = "dual";
};

struct VerificationReport {
    std::string name;
    std::string mode;
    std::vector<RelationRecord> records;
    bool pass = true;
    double ms = 0.0;

    void add(std::string omega, double residual, double tolerance,
             std::string method = "dual") {
        bool ok = residual <= tolerance;
        pass = pass && ok;
        records.push_back({std::move(omega), residual, tolerance, ok, std::move(method)});
    }
};

struct SuiteReport {
    std::vector<VerificationReport> relations;
    bool pass = true;
    unsigned long seed = 42;
};

struct VerifyOptions {
    int degree = 4;
    int cutoff = 8;
    double fd_step = 1e-6;
    std::optional<double> tolerance_override;
    unsigned long seed = 42;
    bool physical_rescale = false;
    double charge = 1.0;
    double unit_charge = 1.0;
    std::string catalog_dir = "catalog";
};

/// Constant invertible change of the component frame.
struct FrameChange {
    CMatrix a;
    CMatrix a_inv;
    double condition = 0.0;

    explicit FrameChange(CMatrix m) : a(std::move(m)) {
        a_inv = a.inverse();
        condition = a.one_norm() * a_inv.one_norm();
        if (!(condition < 1e8))
            throw eval_error("ill-conditioned frame change (condition estimate " +
                             std::to_string(condition) + ")");
        if (max_abs_diff(a * a_inv, CMatrix::identity(a.rows())) > 1e-12)
            throw eval_error("frame change fails to invert cleanly");
    }
};

namespace detail {

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double ms() const {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                         start)
            .count();
    }
};

inline int find_rep(const RepProgram& prog, RepKind kind) {
    for (size_t k = 0; k < prog.reps.size(); ++k)
        if (prog.reps[k].kind == kind) return int(k);
    return -1;
}

inline void require_finite(const CMatrix& m, const std::string& relation) {
    if (!m.all_finite())
        throw numeric_error("non-finite value while verifying relation '" + relation + "'");
}

/// Dual-number derivative at the identity of the pullback operator family
/// for one parameter: the left side of every local relation here.
inline CMatrix pullback_derivative(const RepProgram& prog, const PolySpace& space,
                                   int coord_rep, int comp_rep, int omega,
                                   bool include_coordinates) {
    Evaluator<DualComplex> ev(prog, prog.identity_point(), omega);
    DMatrix comp = ev.eval_matrix(*prog.reps[size_t(comp_rep)].expr);

    DMatrix linear = lift(CMatrix::identity(4));
    DMatrix shift(4, 1);
    bool include_det = false;
    if (include_coordinates) {
        const Expr& coord = *prog.reps[size_t(coord_rep)].expr;
        if (coord.kind != ExprKind::Affine)
            throw eval_error("coordinate rep '" + prog.reps[size_t(coord_rep)].name +
                             "' is not of affine form");
        linear = ev.eval_matrix(*coord.kids[0]);
        shift = ev.eval_matrix(*coord.kids[1]);
        include_det = true;
    }
    DMatrix family = space.pullback(linear, shift, comp, include_det);
    return dot_part(family);
}

inline double default_tol(RelationMode mode, bool translation_param) {
    switch (mode) {
        case RelationMode::Spacetime:
            return translation_param ? 1e-10 : 1e-9;
        case RelationMode::Bundle:
            return translation_param ? 1e-12 : 1e-10;
        default:
            return 1e-12;
    }
}

}  // namespace detail

/// [OP] verify_local: compare the dual derivative of the pullback family
/// against the assembled right side Delta id + intrinsic + flow transport.
/// For catalog spins the intrinsic matrices come from the closed-form
/// tables; otherwise from the component rep's extracted generator.
inline VerificationReport verify_local(const std::string& name, const RepProgram& prog,
                                       RelationMode mode, std::optional<Spin> spin,
                                       const VerifyOptions& opt) {
    detail::Timer timer;
    VerificationReport report;
    report.name = name;
    report.mode = to_string(mode);

    const int comp_rep = detail::find_rep(prog, RepKind::Component);
    if (comp_rep < 0) throw eval_error("program has no component rep");
    const int coord_rep = detail::find_rep(prog, RepKind::Coordinate);
    const bool coordinates = mode == RelationMode::Spacetime;
    if (coordinates && coord_rep < 0)
        throw eval_error("spacetime relation needs a coordinate rep");
    if (spin && prog.params.size() != 10)
        throw eval_error(
            "catalog spins expect ten parameters: six rotations then four "
            "translations");

    const CMatrix comp_id =
        eval_rep<Complex>(prog, comp_rep, prog.identity_point());
    PolySpace space(opt.degree, comp_id.rows());
    const Complex rescale =
        opt.physical_rescale ? Complex(0.0, 1.0) : Complex(1.0, 0.0);

    for (size_t omega = 0; omega < prog.params.size(); ++omega) {
        const std::string& pname = prog.params[omega].name;
        const bool translation_param = spin.has_value() && omega >= 6;

        CMatrix lhs = detail::pullback_derivative(prog, space, coord_rep, int(comp_rep),
                                                  int(omega), coordinates);

        CMatrix intrinsic;
        if (spin) {
            intrinsic = translation_param
                            ? CMatrix(space.ncomp(), space.ncomp())
                            : spin_entry(*spin).intrinsic[omega];
        } else {
            intrinsic = generator(prog, comp_rep, int(omega)).matrix;
        }

        CMatrix rhs = space.component_action(intrinsic);
        if (coordinates) {
            AffineFlowData flow = affine_flow(prog, coord_rep, int(omega));
            CMatrix linear(4, 4);
            std::vector<Complex> shift(4);
            for (int r = 0; r < 4; ++r) {
                shift[size_t(r)] = flow.shift_part[size_t(r)];
                for (int c = 0; c < 4; ++c) linear(r, c) = flow.linear_part(r, c);
            }
            rhs += space.flow_transport(linear, shift);
            rhs += Complex(flow.delta(), 0.0) * CMatrix::identity(space.dim());

            report.add("delta:" + pname, std::abs(flow.delta()),
                       opt.tolerance_override.value_or(1e-12));
            report.add("delta-agreement:" + pname,
                       std::abs(flow.delta_det - flow.delta_trace),
                       opt.tolerance_override.value_or(1e-10));
        }

        lhs = rescale * lhs;
        rhs = rescale * rhs;
        detail::require_finite(lhs, name);
        detail::require_finite(rhs, name);

        const double tol = opt.tolerance_override.value_or(
            detail::default_tol(mode, translation_param));
        report.add(pname, max_abs_diff(lhs, rhs), tol);
    }

    report.ms = timer.ms();
    return report;
}

/// [OP] verify_translation_with_H: the generalized translation relation with
/// explicit component mixing, checked before the usual H = 0 assumption.
/// `h_data[mu]` is the mixing matrix entering D(1, a) = exp(a^mu H_mu).
inline VerificationReport verify_translation_with_H(const std::string& name,
                                                    const RepProgram& prog,
                                                    const std::vector<CMatrix>& h_data,
                                                    const VerifyOptions& opt) {
    detail::Timer timer;
    VerificationReport report;
    report.name = name;
    report.mode = "spacetime";

    const int comp_rep = detail::find_rep(prog, RepKind::Component);
    const int coord_rep = detail::find_rep(prog, RepKind::Coordinate);
    if (comp_rep < 0 || coord_rep < 0)
        throw eval_error("translation relation needs coordinate and component reps");
    if (h_data.size() != prog.params.size())
        throw eval_error("need one mixing matrix per translation parameter");

    const CMatrix comp_id = eval_rep<Complex>(prog, comp_rep, prog.identity_point());
    PolySpace space(opt.degree, comp_id.rows());
    const Complex rescale =
        opt.physical_rescale ? Complex(0.0, 1.0) : Complex(1.0, 0.0);

    for (size_t mu = 0; mu < prog.params.size(); ++mu) {
        CMatrix lhs = detail::pullback_derivative(prog, space, coord_rep, comp_rep,
                                                  int(mu), true);
        CMatrix rhs = space.partial_matrix(int(mu));
        rhs += space.component_action(h_data[mu]);
        lhs = rescale * lhs;
        rhs = rescale * rhs;
        detail::require_finite(lhs, name);
        detail::require_finite(rhs, name);
        report.add(prog.params[mu].name, max_abs_diff(lhs, rhs),
                   opt.tolerance_override.value_or(1e-10));
    }

    report.ms = timer.ms();
    return report;
}

/// [OP] verify_global_charge: the finite conjugation identity on the
/// truncated number-operator space (five sampled group parameters) and the
/// local charge commutator.
inline VerificationReport verify_global_charge(const std::string& name,
                                               RelationMode mode,
                                               const VerifyOptions& opt) {
    detail::Timer timer;
    VerificationReport report;
    report.name = name;
    report.mode = to_string(mode);

    if (opt.unit_charge == 0.0) throw eval_error("unit charge must be nonzero");
    const Complex i(0.0, 1.0);

    if (mode == RelationMode::FockGlobal) {
        FockSpace fock(opt.cutoff, opt.charge);
        std::mt19937_64 rng(opt.seed);
        std::uniform_real_distribution<double> dist(-2.0, 2.0);
        for (int k = 0; k < 5; ++k) {
            double b = dist(rng);
            Complex theta = opt.charge * b / (i * opt.unit_charge);
            CMatrix conj = fock.conjugation(theta);
            CMatrix expected = std::exp(-theta) * fock.annihilation();
            detail::require_finite(conj, name);
            char label[48];
            std::snprintf(label, sizeof(label), "b=%.6f", b);
            report.add(label, max_abs_diff(conj, expected),
                       opt.tolerance_override.value_or(1e-12));
        }
    } else {
        std::vector<double> charges = {0.0, 1.0, 2.0, -1.0};
        if (std::find(charges.begin(), charges.end(), opt.charge) == charges.end())
            charges.push_back(opt.charge);
        for (double q : charges) {
            FockSpace fock(opt.cutoff, q);
            CMatrix lhs = commutator(fock.charge(), fock.annihilation());
            CMatrix rhs = Complex(-q, 0.0) * fock.annihilation();
            char label[32];
            std::snprintf(label, sizeof(label), "q=%g", q);
            report.add(label, max_abs_diff(lhs, rhs),
                       opt.tolerance_override.value_or(1e-13));
        }
    }

    report.ms = timer.ms();
    return report;
}

/// [OP] verify_frame_independence: the combination I_w phi is unchanged by
/// constant invertible frame changes. Components and intrinsics transform
/// oppositely; we push the transformed action back and compare.
inline VerificationReport verify_frame_independence(const std::string& name, Spin spin,
                                                    const VerifyOptions& opt,
                                                    int changes = 20) {
    detail::Timer timer;
    VerificationReport report;
    report.name = name;
    report.mode = "bundle";

    const SpinCatalogEntry& entry = spin_entry(spin);
    const int n = entry.dimension;
    std::mt19937_64 rng(opt.seed + size_t(spin) * 977);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);

    auto random_frame = [&]() {
        while (true) {
            CMatrix a(n, n);
            for (int r = 0; r < n; ++r)
                for (int c = 0; c < n; ++c) a(r, c) = Complex(dist(rng), dist(rng));
            try {
                FrameChange f(std::move(a));
                return f;
            } catch (const eval_error&) {
                continue;  // singular or ill-conditioned draw, try again
            }
        }
    };

    for (int k = 0; k < changes; ++k) {
        FrameChange frame = random_frame();
        double worst = 0.0;
        for (const CMatrix& intrinsic : entry.intrinsic) {
            CMatrix transformed = frame.a_inv * intrinsic * frame.a;
            for (int sample = 0; sample < 20; ++sample) {
                CMatrix phi(n, 1);
                for (int r = 0; r < n; ++r) phi(r, 0) = Complex(dist(rng), dist(rng));
                CMatrix original = intrinsic * phi;
                CMatrix pushed = frame.a * (transformed * (frame.a_inv * phi));
                worst = std::max(worst, max_abs_diff(pushed, original));
            }
        }
        report.add("A#" + std::to_string(k), worst,
                   opt.tolerance_override.value_or(1e-10));
    }

    report.ms = timer.ms();
    return report;
}

/// Expansion of every pairwise commutator in the span of the generators.
struct ClosureResult {
    double max_residual = 0.0;  // worst distance from the span
    int rank = 0;
    bool full_rank = true;
    // coefficients[p][q][g]: [G_p, G_q] = sum_g coeff * G_g (valid if full_rank)
    std::vector<std::vector<std::vector<Complex>>> coefficients;
};

/// [OP] algebra_closure: least-squares expansion of commutators in the
/// generator span via Gram-Schmidt projection; rank-deficient generator
/// sets are reported, not failed.
inline ClosureResult algebra_closure(const std::vector<CMatrix>& gens) {
    ClosureResult result;
    const size_t g = gens.size();
    if (g == 0) return result;
    const int n = gens[0].rows();
    const size_t len = size_t(n) * n;

    auto vec = [&](const CMatrix& m) {
        std::vector<Complex> v(len);
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c) v[size_t(r) * n + c] = m(r, c);
        return v;
    };
    auto dot = [&](const std::vector<Complex>& a, const std::vector<Complex>& b) {
        Complex s{};
        for (size_t k = 0; k < len; ++k) s += std::conj(a[k]) * b[k];
        return s;
    };

    // Modified Gram-Schmidt over the vectorized generators.
    std::vector<std::vector<Complex>> basis;
    double scale = 0.0;
    for (const auto& m : gens) scale = std::max(scale, m.max_abs());
    for (const auto& m : gens) {
        std::vector<Complex> v = vec(m);
        for (const auto& q : basis) {
            Complex c = dot(q, v);
            for (size_t k = 0; k < len; ++k) v[k] -= c * q[k];
        }
        double norm = std::sqrt(dot(v, v).real());
        if (norm > 1e-9 * std::max(scale, 1.0)) {
            for (auto& x : v) x /= norm;
            basis.push_back(std::move(v));
        }
    }
    result.rank = int(basis.size());
    result.full_rank = basis.size() == g;

    // Gram matrix for recovering coefficients in the original generators.
    CMatrix gram_inv;
    std::vector<std::vector<Complex>> gen_vecs;
    for (const auto& m : gens) gen_vecs.push_back(vec(m));
    if (result.full_rank) {
        CMatrix gram(int(g), int(g));
        for (size_t p = 0; p < g; ++p)
            for (size_t q = 0; q < g; ++q) gram(int(p), int(q)) = dot(gen_vecs[p], gen_vecs[q]);
        gram_inv = gram.inverse();
    }

    result.coefficients.resize(g, std::vector<std::vector<Complex>>(g));
    for (size_t p = 0; p < g; ++p) {
        for (size_t q = 0; q < g; ++q) {
            CMatrix bracket = commutator(gens[p], gens[q]);
            std::vector<Complex> w = vec(bracket);
            std::vector<Complex> remainder = w;
            for (const auto& b : basis) {
                Complex c = dot(b, remainder);
                for (size_t k = 0; k < len; ++k) remainder[k] -= c * b[k];
            }
            double res = 0.0;
            for (const auto& x : remainder) res = std::max(res, std::abs(x));
            result.max_residual = std::max(result.max_residual, res);

            if (result.full_rank) {
                std::vector<Complex> rhs(g);
                for (size_t a = 0; a < g; ++a) rhs[a] = dot(gen_vecs[a], w);
                std::vector<Complex> coeff(g);
                for (size_t a = 0; a < g; ++a)
                    for (size_t b = 0; b < g; ++b)
                        coeff[a] += gram_inv(int(a), int(b)) * rhs[b];
                result.coefficients[p][q] = std::move(coeff);
            }
        }
    }
    return result;
}

}  // namespace hrel
