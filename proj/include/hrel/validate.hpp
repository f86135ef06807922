#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hrel/eval.hpp"

namespace hrel {

struct Diagnostic {
    std::string message;
    SourceSpan span;
};

namespace detail {

struct Shape {
    bool scalar = true;
    int rows = 0, cols = 0;
    static Shape sc() { return {}; }
    static Shape mat(int r, int c) { return {false, r, c}; }
};

class ShapeChecker {
public:
    ShapeChecker(const RepProgram& p, std::vector<Diagnostic>& out)
        : prog_(p), diags_(out), binding_shapes_(p.bindings.size()) {}

    std::optional<Shape> check(const Expr& e) {
        switch (e.kind) {
            case ExprKind::Number:
            case ExprKind::ImagUnit:
            case ExprKind::ParamRef:
                return Shape::sc();
            case ExprKind::BindingRef: {
                auto& slot = binding_shapes_[size_t(e.ref)];
                if (!slot) slot = check(*prog_.bindings[size_t(e.ref)].expr);
                return *slot;
            }
            case ExprKind::MatrixLit: {
                bool ok = true;
                for (const auto& kid : e.kids) {
                    auto s = check(*kid);
                    if (!s) return std::nullopt;
                    if (!s->scalar) {
                        emit("matrix literal entry is not a scalar", kid->span);
                        ok = false;
                    }
                }
                if (!ok) return std::nullopt;
                return Shape::mat(e.lit_rows, e.lit_cols);
            }
            case ExprKind::IdN:
                return Shape::mat(e.arg, e.arg);
            case ExprKind::Eta4:
            case ExprKind::Gamma:
                return Shape::mat(4, 4);
            case ExprKind::Neg:
                return check(*e.kids[0]);
            case ExprKind::Exp: {
                auto s = check(*e.kids[0]);
                if (!s) return std::nullopt;
                if (!s->scalar && s->rows != s->cols) {
                    emit("exp applies only to square matrices", e.span);
                    return std::nullopt;
                }
                return s;
            }
            case ExprKind::Inv: {
                auto s = check(*e.kids[0]);
                if (!s) return std::nullopt;
                if (!s->scalar && s->rows != s->cols) {
                    emit("inv applies only to square matrices", e.span);
                    return std::nullopt;
                }
                return s;
            }
            case ExprKind::Det:
            case ExprKind::Tr: {
                auto s = check(*e.kids[0]);
                if (!s) return std::nullopt;
                if (!s->scalar && s->rows != s->cols) {
                    emit(e.kind == ExprKind::Det ? "det applies only to square matrices"
                                                 : "tr applies only to square matrices",
                         e.span);
                    return std::nullopt;
                }
                return Shape::sc();
            }
            case ExprKind::Transpose: {
                auto s = check(*e.kids[0]);
                if (!s) return std::nullopt;
                if (s->scalar) return s;
                return Shape::mat(s->cols, s->rows);
            }
            case ExprKind::Add:
            case ExprKind::Sub: {
                auto a = check(*e.kids[0]);
                auto b = check(*e.kids[1]);
                if (!a || !b) return std::nullopt;
                if (a->scalar != b->scalar) {
                    emit("cannot add a scalar and a matrix", e.span);
                    return std::nullopt;
                }
                if (!a->scalar && (a->rows != b->rows || a->cols != b->cols)) {
                    emit("matrix sum dimension mismatch (" + dims(*a) + " vs " + dims(*b) +
                             ")",
                         e.span);
                    return std::nullopt;
                }
                return a;
            }
            case ExprKind::Mul: {
                auto a = check(*e.kids[0]);
                auto b = check(*e.kids[1]);
                if (!a || !b) return std::nullopt;
                if (a->scalar && b->scalar) return Shape::sc();
                if (a->scalar) return b;
                if (b->scalar) return a;
                if (a->cols != b->rows) {
                    emit("matrix product dimension mismatch (" + dims(*a) + " times " +
                             dims(*b) + ")",
                         e.span);
                    return std::nullopt;
                }
                return Shape::mat(a->rows, b->cols);
            }
            case ExprKind::Affine: {
                auto m = check(*e.kids[0]);
                auto v = check(*e.kids[1]);
                if (!m || !v) return std::nullopt;
                if (m->scalar || m->rows != m->cols) {
                    emit("affine linear part must be a square matrix", e.span);
                    return std::nullopt;
                }
                if (v->scalar || v->cols != 1 || v->rows != m->rows) {
                    emit("affine shift must be a " + std::to_string(m->rows) +
                             "x1 column",
                         e.span);
                    return std::nullopt;
                }
                return Shape::mat(m->rows + 1, m->cols + 1);
            }
        }
        return std::nullopt;
    }

private:
    void emit(std::string msg, SourceSpan at) { diags_.push_back({std::move(msg), at}); }
    static std::string dims(const Shape& s) {
        return std::to_string(s.rows) + "x" + std::to_string(s.cols);
    }

    const RepProgram& prog_;
    std::vector<Diagnostic>& diags_;
    std::vector<std::optional<std::optional<Shape>>> binding_shapes_;
};

}  // namespace detail

/// [OP] validate_program: dimension-check every expression and confirm that
/// each rep evaluates to the identity matrix at the identity point (within
/// 1e-12 entrywise). Returns an empty list on success.
inline std::vector<Diagnostic> validate_program(const RepProgram& p) {
    std::vector<Diagnostic> diags;
    detail::ShapeChecker checker(p, diags);

    std::vector<std::optional<detail::Shape>> rep_shapes;
    for (const auto& b : p.bindings) checker.check(*b.expr);
    for (const auto& r : p.reps) {
        auto s = checker.check(*r.expr);
        if (s && s->scalar)
            diags.push_back({"rep '" + r.name + "' must be matrix-valued", r.span});
        rep_shapes.push_back(s);
    }
    if (!diags.empty()) return diags;

    const ParamPoint b0 = p.identity_point();
    for (size_t k = 0; k < p.reps.size(); ++k) {
        const auto& r = p.reps[k];
        try {
            Evaluator<Complex> ev(p, b0);
            CMatrix m = ev.eval_matrix(*r.expr);
            if (!m.square()) {
                diags.push_back({"rep '" + r.name + "' is not square", r.span});
                continue;
            }
            double dev = max_abs_diff(m, CMatrix::identity(m.rows()));
            if (dev > 1e-12)
                diags.push_back({"rep '" + r.name +
                                     "' does not evaluate to the identity at the "
                                     "identity point (max deviation " +
                                     std::to_string(dev) + ")",
                                 r.span});
        } catch (const eval_error& err) {
            diags.push_back({"rep '" + r.name + "': " + err.what(),
                             err.span.line ? err.span : r.span});
        } catch (const numeric_error& err) {
            diags.push_back({"rep '" + r.name + "': " + err.what(), r.span});
        }
    }
    return diags;
}

}  // namespace hrel
