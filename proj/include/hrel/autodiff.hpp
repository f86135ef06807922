#pragma once

#include <string>
#include <vector>

#include "hrel/eval.hpp"
#include "hrel/validate.hpp"

namespace hrel {

enum class GeneratorMethod { Dual, FiniteDifference };

/// Infinitesimal generator of a rep along one group parameter: the partial
/// derivative of the rep matrix at the identity point.
struct Generator {
    CMatrix matrix;
    int param_index = -1;
    std::string rep_name;
    GeneratorMethod method = GeneratorMethod::Dual;
};

/// [OP] generator: exact dual-number derivative of the rep at the identity
/// point along parameter `omega`.
inline Generator generator(const RepProgram& prog, int rep_index, int omega) {
    if (omega < 0 || size_t(omega) >= prog.params.size())
        throw eval_error("parameter index out of range");
    DMatrix m = eval_rep<DualComplex>(prog, rep_index, prog.identity_point(), omega);
    return {dot_part(m), omega, prog.reps[size_t(rep_index)].name, GeneratorMethod::Dual};
}

struct FdCrosscheck {
    Generator estimate;       // central-difference generator
    double discrepancy = 0.0; // max-entry distance to the dual generator
    double step = 0.0;
};

/// [OP] fd_crosscheck: central finite difference around the identity point,
/// an independent check on the dual-number route.
inline FdCrosscheck fd_crosscheck(const RepProgram& prog, int rep_index, int omega,
                                  double step = 1e-6) {
    if (step < 1e-9 || step > 1e-2)
        throw eval_error("finite-difference step must lie in [1e-9, 1e-2]");
    ParamPoint plus = prog.identity_point();
    ParamPoint minus = plus;
    plus.values[size_t(omega)] += step;
    minus.values[size_t(omega)] -= step;

    CMatrix up = eval_rep<Complex>(prog, rep_index, plus);
    CMatrix down = eval_rep<Complex>(prog, rep_index, minus);
    CMatrix est = Complex(1.0 / (2.0 * step), 0.0) * (up - down);

    Generator dual = generator(prog, rep_index, omega);
    FdCrosscheck r;
    r.estimate = {est, omega, prog.reps[size_t(rep_index)].name,
                  GeneratorMethod::FiniteDifference};
    r.discrepancy = max_abs_diff(est, dual.matrix);
    r.step = step;
    return r;
}

/// [OP] second_derivative_bracket: matrix commutator of two extracted
/// generators, the Lie-algebra side of the group's closure.
inline CMatrix second_derivative_bracket(const RepProgram& prog, int rep_index,
                                         int omega_a, int omega_b) {
    return commutator(generator(prog, rep_index, omega_a).matrix,
                      generator(prog, rep_index, omega_b).matrix);
}

/// First-order data of an affine coordinate family H_b(r) = M(b) r + v(b)
/// at the identity: the Jacobian-determinant derivative (two routes) and
/// the coordinate flow r -> linear_part * r + shift_part.
struct AffineFlowData {
    double delta_det = 0.0;    // derivative of det of the Jacobian of H_b
    double delta_trace = 0.0;  // trace of linear_part; must agree with delta_det
    Matrix<double> linear_part;
    std::vector<double> shift_part;

    double delta() const { return delta_det; }

    std::vector<double> flow(const std::vector<double>& r) const {
        std::vector<double> out(shift_part);
        for (int k = 0; k < linear_part.rows(); ++k)
            for (int j = 0; j < linear_part.cols(); ++j)
                out[size_t(k)] += linear_part(k, j) * r[size_t(j)];
        return out;
    }
};

namespace detail {

inline double require_real(const Complex& c, const char* what) {
    if (std::abs(c.imag()) > 1e-12)
        throw eval_error(std::string(what) + " has a non-real entry");
    return c.real();
}

}  // namespace detail

/// [OP] affine_flow: extract AffineFlowData from a coordinate rep declared
/// via affine(M(b), v(b)). The determinant derivative is computed both by
/// dual differentiation of det and by the trace of the linear part; the two
/// routes must agree within 1e-10.
inline AffineFlowData affine_flow(const RepProgram& prog, int rep_index, int omega) {
    const RepDecl& rep = prog.reps.at(size_t(rep_index));
    if (rep.kind != RepKind::Coordinate)
        throw eval_error("affine_flow needs a coordinate rep");
    if (rep.expr->kind != ExprKind::Affine)
        throw eval_error("coordinate rep '" + rep.name +
                         "' is not of affine form (general nonlinear coordinate "
                         "maps are unsupported)");

    Evaluator<DualComplex> ev(prog, prog.identity_point(), omega);
    DMatrix m = ev.eval_matrix(*rep.expr->kids[0]);
    DMatrix v = ev.eval_matrix(*rep.expr->kids[1]);
    const int n = m.rows();

    AffineFlowData out;
    out.linear_part = Matrix<double>(n, n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c)
            out.linear_part(r, c) =
                detail::require_real(m(r, c).dot, "coordinate flow linear part");
    out.shift_part.resize(size_t(n));
    for (int r = 0; r < n; ++r)
        out.shift_part[size_t(r)] =
            detail::require_real(v(r, 0).dot, "coordinate flow shift part");

    DualComplex det = m.det();
    out.delta_det = detail::require_real(det.dot, "Jacobian determinant derivative");
    out.delta_trace = 0.0;
    for (int r = 0; r < n; ++r) out.delta_trace += out.linear_part(r, r);

    if (std::abs(out.delta_det - out.delta_trace) > 1e-10)
        throw numeric_error("determinant-derivative routes disagree for rep '" +
                            rep.name + "': det route " + std::to_string(out.delta_det) +
                            ", trace route " + std::to_string(out.delta_trace));
    return out;
}

}  // namespace hrel
