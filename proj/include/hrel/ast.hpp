#pragma once

#include <memory>
#include <string>
#include <vector>

#include "hrel/errors.hpp"

namespace hrel {

enum class ExprKind {
    Number,      // real literal
    ImagUnit,    // i
    ParamRef,    // group parameter, by index
    BindingRef,  // earlier let-binding, by index
    MatrixLit,   // rectangular rows of scalar expressions
    IdN,         // id(n) identity matrix
    Eta4,        // eta4() metric diag(-1,1,1,1)
    Gamma,       // gamma0()..gamma3()
    Neg,
    Exp,
    Inv,
    Det,
    Tr,
    Transpose,
    Add,
    Sub,
    Mul,         // matrix product or scalar scaling, resolved by shapes
    Affine,      // affine(M, v): the map r -> M r + v, held as the
                 // homogeneous (n+1)x(n+1) matrix [[M, v], [0, 1]]
};

struct Expr;
using ExprPtr = std::unique_ptr<Expr>;

struct Expr {
    ExprKind kind;
    SourceSpan span;
    double number = 0.0;              // Number
    int ref = -1;                     // ParamRef / BindingRef index
    int arg = 0;                      // IdN dimension, Gamma index
    int lit_rows = 0, lit_cols = 0;   // MatrixLit shape
    std::string name;                 // identifier text for refs
    std::vector<ExprPtr> kids;        // children, row-major for MatrixLit
};

enum class RepKind { Coordinate, Component, State };

inline const char* to_string(RepKind k) {
    switch (k) {
        case RepKind::Coordinate: return "coordinate";
        case RepKind::Component: return "component";
        case RepKind::State: return "state";
    }
    return "?";
}

struct ParamDecl {
    std::string name;
    double identity_value = 0.0;
    SourceSpan span;
};

struct BindingDecl {
    std::string name;
    ExprPtr expr;
    SourceSpan span;
};

struct RepDecl {
    std::string name;
    RepKind kind = RepKind::Component;
    ExprPtr expr;
    SourceSpan span;
};

/// A point b in group-parameter space; values follow program parameter order.
struct ParamPoint {
    std::vector<double> values;
};

struct RepProgram {
    std::vector<ParamDecl> params;
    std::vector<BindingDecl> bindings;
    std::vector<RepDecl> reps;

    ParamPoint identity_point() const {
        ParamPoint p;
        p.values.reserve(params.size());
        for (const auto& d : params) p.values.push_back(d.identity_value);
        return p;
    }

    int param_index(const std::string& name) const {
        for (size_t k = 0; k < params.size(); ++k)
            if (params[k].name == name) return int(k);
        return -1;
    }

    int rep_index(const std::string& name) const {
        for (size_t k = 0; k < reps.size(); ++k)
            if (reps[k].name == name) return int(k);
        return -1;
    }
};

inline bool expr_equal(const Expr& a, const Expr& b) {
    if (a.kind != b.kind || a.number != b.number || a.ref != b.ref || a.arg != b.arg ||
        a.lit_rows != b.lit_rows || a.lit_cols != b.lit_cols || a.kids.size() != b.kids.size())
        return false;
    for (size_t k = 0; k < a.kids.size(); ++k)
        if (!expr_equal(*a.kids[k], *b.kids[k])) return false;
    return true;
}

inline bool program_equal(const RepProgram& a, const RepProgram& b) {
    if (a.params.size() != b.params.size() || a.bindings.size() != b.bindings.size() ||
        a.reps.size() != b.reps.size())
        return false;
    for (size_t k = 0; k < a.params.size(); ++k)
        if (a.params[k].name != b.params[k].name ||
            a.params[k].identity_value != b.params[k].identity_value)
            return false;
    for (size_t k = 0; k < a.bindings.size(); ++k)
        if (a.bindings[k].name != b.bindings[k].name ||
            !expr_equal(*a.bindings[k].expr, *b.bindings[k].expr))
            return false;
    for (size_t k = 0; k < a.reps.size(); ++k)
        if (a.reps[k].name != b.reps[k].name || a.reps[k].kind != b.reps[k].kind ||
            !expr_equal(*a.reps[k].expr, *b.reps[k].expr))
            return false;
    return true;
}

}  // namespace hrel
