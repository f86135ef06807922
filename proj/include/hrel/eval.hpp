#pragma once

#include <optional>
#include <vector>

#include "hrel/ast.hpp"
#include "hrel/matexp.hpp"
#include "hrel/matrix.hpp"
#include "hrel/minkowski.hpp"

namespace hrel {

/// Evaluation result: either a scalar or a matrix.
template <typename S>
struct Value {
    bool is_scalar = true;
    S s{};
    Matrix<S> m;

    static Value scalar(S v) {
        Value r;
        r.is_scalar = true;
        r.s = v;
        return r;
    }
    static Value matrix(Matrix<S> v) {
        Value r;
        r.is_scalar = false;
        r.m = std::move(v);
        return r;
    }
};

/// Evaluates expressions of a validated program at a parameter point.
/// The scalar kind decides what is computed: plain Complex gives the value,
/// DualComplex with an active parameter gives value plus exact partial
/// derivative with respect to that parameter.
template <typename S>
class Evaluator {
public:
    Evaluator(const RepProgram& prog, const ParamPoint& at, int active_param = -1)
        : prog_(prog), binding_cache_(prog.bindings.size()) {
        if (at.values.size() != prog.params.size())
            throw eval_error("parameter point length does not match program");
        param_values_.reserve(at.values.size());
        for (size_t k = 0; k < at.values.size(); ++k)
            param_values_.push_back(seed(at.values[k], int(k) == active_param));
    }

    Value<S> eval(const Expr& e) const {
        switch (e.kind) {
            case ExprKind::Number:
                return Value<S>::scalar(scalar_traits<S>::make(e.number));
            case ExprKind::ImagUnit:
                return Value<S>::scalar(scalar_traits<S>::from_complex(Complex(0.0, 1.0)));
            case ExprKind::ParamRef:
                return Value<S>::scalar(param_values_[size_t(e.ref)]);
            case ExprKind::BindingRef: {
                auto& slot = binding_cache_[size_t(e.ref)];
                if (!slot) slot = eval(*prog_.bindings[size_t(e.ref)].expr);
                return *slot;
            }
            case ExprKind::MatrixLit: {
                Matrix<S> m(e.lit_rows, e.lit_cols);
                for (int r = 0; r < e.lit_rows; ++r)
                    for (int c = 0; c < e.lit_cols; ++c) {
                        Value<S> v = eval(*e.kids[size_t(r) * e.lit_cols + c]);
                        if (!v.is_scalar)
                            throw eval_error("matrix literal entry is not a scalar",
                                             e.span);
                        m(r, c) = v.s;
                    }
                return Value<S>::matrix(std::move(m));
            }
            case ExprKind::IdN:
                return Value<S>::matrix(Matrix<S>::identity(e.arg));
            case ExprKind::Eta4:
                return Value<S>::matrix(from_complex(minkowski_eta()));
            case ExprKind::Gamma:
                return Value<S>::matrix(from_complex(gamma_matrix(e.arg)));
            case ExprKind::Neg: {
                Value<S> v = eval(*e.kids[0]);
                if (v.is_scalar) return Value<S>::scalar(-v.s);
                return Value<S>::matrix(-v.m);
            }
            case ExprKind::Exp: {
                Value<S> v = eval(*e.kids[0]);
                if (v.is_scalar) return Value<S>::scalar(scalar_traits<S>::exp(v.s));
                if (!v.m.square()) throw eval_error("exp of non-square matrix", e.span);
                return Value<S>::matrix(matexp(v.m));
            }
            case ExprKind::Inv: {
                Value<S> v = eval(*e.kids[0]);
                if (v.is_scalar)
                    return Value<S>::scalar(scalar_traits<S>::make(1.0) / v.s);
                if (!v.m.square()) throw eval_error("inv of non-square matrix", e.span);
                try {
                    return Value<S>::matrix(v.m.inverse());
                } catch (const eval_error& err) {
                    throw eval_error(err.what(), e.span);
                }
            }
            case ExprKind::Det: {
                Value<S> v = eval(*e.kids[0]);
                if (v.is_scalar) return v;
                if (!v.m.square()) throw eval_error("det of non-square matrix", e.span);
                return Value<S>::scalar(v.m.det());
            }
            case ExprKind::Tr: {
                Value<S> v = eval(*e.kids[0]);
                if (v.is_scalar) return v;
                if (!v.m.square()) throw eval_error("tr of non-square matrix", e.span);
                return Value<S>::scalar(v.m.trace());
            }
            case ExprKind::Transpose: {
                Value<S> v = eval(*e.kids[0]);
                if (v.is_scalar) return v;
                return Value<S>::matrix(v.m.transpose());
            }
            case ExprKind::Add:
            case ExprKind::Sub: {
                Value<S> a = eval(*e.kids[0]);
                Value<S> b = eval(*e.kids[1]);
                bool add = e.kind == ExprKind::Add;
                if (a.is_scalar && b.is_scalar)
                    return Value<S>::scalar(add ? a.s + b.s : a.s - b.s);
                if (!a.is_scalar && !b.is_scalar) {
                    if (a.m.rows() != b.m.rows() || a.m.cols() != b.m.cols())
                        throw eval_error("matrix sum dimension mismatch", e.span);
                    return Value<S>::matrix(add ? a.m + b.m : a.m - b.m);
                }
                throw eval_error("cannot add a scalar and a matrix", e.span);
            }
            case ExprKind::Mul: {
                Value<S> a = eval(*e.kids[0]);
                Value<S> b = eval(*e.kids[1]);
                if (a.is_scalar && b.is_scalar) return Value<S>::scalar(a.s * b.s);
                if (a.is_scalar) return Value<S>::matrix(a.s * b.m);
                if (b.is_scalar) return Value<S>::matrix(a.m * b.s);
                if (a.m.cols() != b.m.rows())
                    throw eval_error("matrix product dimension mismatch", e.span);
                return Value<S>::matrix(a.m * b.m);
            }
            case ExprKind::Affine: {
                Matrix<S> linear = eval_matrix(*e.kids[0]);
                Matrix<S> shift = eval_matrix(*e.kids[1]);
                if (!linear.square())
                    throw eval_error("affine linear part must be square", e.span);
                if (shift.cols() != 1 || shift.rows() != linear.rows())
                    throw eval_error("affine shift must be a column of matching size",
                                     e.span);
                const int n = linear.rows();
                Matrix<S> h(n + 1, n + 1);
                for (int r = 0; r < n; ++r) {
                    for (int c = 0; c < n; ++c) h(r, c) = linear(r, c);
                    h(r, n) = shift(r, 0);
                }
                h(n, n) = scalar_traits<S>::make(1.0);
                return Value<S>::matrix(std::move(h));
            }
        }
        throw eval_error("unreachable expression kind");
    }

    /// Evaluate an expression that must produce a matrix.
    Matrix<S> eval_matrix(const Expr& e) const {
        Value<S> v = eval(e);
        if (v.is_scalar) throw eval_error("expected a matrix-valued expression", e.span);
        return std::move(v.m);
    }

private:
    static S seed(double v, bool active) {
        if constexpr (std::is_same_v<S, DualComplex>) {
            return DualComplex(Complex(v, 0.0), Complex(active ? 1.0 : 0.0, 0.0));
        } else {
            (void)active;
            return scalar_traits<S>::make(v);
        }
    }

    static Matrix<S> from_complex(const CMatrix& m) {
        Matrix<S> r(m.rows(), m.cols());
        for (int i = 0; i < m.rows(); ++i)
            for (int j = 0; j < m.cols(); ++j)
                r(i, j) = scalar_traits<S>::from_complex(m(i, j));
        return r;
    }

    const RepProgram& prog_;
    std::vector<S> param_values_;
    mutable std::vector<std::optional<Value<S>>> binding_cache_;
};

/// [OP] eval_expr: evaluate one expression at a point with the given scalar
/// kind; a DualComplex evaluation carries the partial derivative along
/// `active_param`.
template <typename S>
Value<S> eval_expr(const RepProgram& prog, const Expr& e, const ParamPoint& at,
                   int active_param = -1) {
    Evaluator<S> ev(prog, at, active_param);
    return ev.eval(e);
}

/// Evaluate a rep by index; result is the rep's matrix (homogeneous form
/// for affine coordinate reps).
template <typename S>
Matrix<S> eval_rep(const RepProgram& prog, int rep_index, const ParamPoint& at,
                   int active_param = -1) {
    Evaluator<S> ev(prog, at, active_param);
    return ev.eval_matrix(*prog.reps[size_t(rep_index)].expr);
}

}  // namespace hrel
