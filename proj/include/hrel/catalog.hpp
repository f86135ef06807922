#pragma once

#include <array>
#include <functional>
#include <string>

#include "hrel/matexp.hpp"
#include "hrel/minkowski.hpp"

namespace hrel {

enum class Spin { Scalar, Vector, Spinor };

inline const char* to_string(Spin s) {
    switch (s) {
        case Spin::Scalar: return "scalar";
        case Spin::Vector: return "vector";
        case Spin::Spinor: return "spinor";
    }
    return "?";
}

/// The six independent antisymmetric index pairs, in catalog order. A
/// ten-parameter Poincare program lists its rotation parameters in this
/// order followed by the four translations.
inline const std::array<std::pair<int, int>, 6>& omega_pairs() {
    static const std::array<std::pair<int, int>, 6> pairs = {
        {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};
    return pairs;
}

/// Vector-representation so(1,3) basis matrix:
/// (K_{mu nu})^sigma_rho = delta^sigma_mu eta_{nu rho} - delta^sigma_nu eta_{mu rho}.
inline CMatrix vector_generator(int mu, int nu) {
    CMatrix k(4, 4);
    for (int rho = 0; rho < 4; ++rho) {
        k(mu, rho) += minkowski_eta()(nu, rho);
        k(nu, rho) -= minkowski_eta()(mu, rho);
    }
    return k;
}

/// Spinor intrinsic generator (1/4)[gamma_mu, gamma_nu], i.e. -(1/2) i
/// sigma_{mu nu} with sigma_{mu nu} = (i/2)[gamma_mu, gamma_nu].
inline CMatrix spinor_generator(int mu, int nu) {
    CMatrix c = commutator(gamma_matrix(mu), gamma_matrix(nu));
    return Complex(0.25, 0.0) * c;
}

/// Intrinsic generators per spin, indexed by the six (mu, nu) pairs.
struct SpinCatalogEntry {
    Spin spin;
    int dimension;
    std::array<CMatrix, 6> intrinsic;
};

inline const SpinCatalogEntry& spin_entry(Spin s) {
    static const std::array<SpinCatalogEntry, 3> entries = [] {
        std::array<SpinCatalogEntry, 3> e;
        e[0].spin = Spin::Scalar;
        e[0].dimension = 1;
        for (auto& m : e[0].intrinsic) m = CMatrix(1, 1);
        e[1].spin = Spin::Vector;
        e[1].dimension = 4;
        e[2].spin = Spin::Spinor;
        e[2].dimension = 4;
        for (size_t k = 0; k < 6; ++k) {
            auto [mu, nu] = omega_pairs()[k];
            e[1].intrinsic[k] = vector_generator(mu, nu);
            e[2].intrinsic[k] = spinor_generator(mu, nu);
        }
        return e;
    }();
    return entries[size_t(s)];
}

/// Intrinsic generator for an arbitrary ordered index pair, using
/// antisymmetry for pairs outside the catalog order.
inline CMatrix intrinsic_generator(Spin s, int mu, int nu) {
    const auto& entry = spin_entry(s);
    for (size_t k = 0; k < 6; ++k) {
        auto [a, b] = omega_pairs()[k];
        if (a == mu && b == nu) return entry.intrinsic[k];
        if (a == nu && b == mu) return -entry.intrinsic[k];
    }
    return CMatrix(entry.dimension, entry.dimension);  // mu == nu
}

/// [OP] lorentz_from_omega: exponentiate the antisymmetric parameters into
/// a proper orthochronous Lorentz matrix, Lambda = exp(sum_w w^{mu nu} K_{mu nu})
/// over the six ordered pairs.
inline CMatrix lorentz_from_omega(const std::array<double, 6>& omega) {
    CMatrix gen(4, 4);
    for (size_t k = 0; k < 6; ++k) {
        auto [mu, nu] = omega_pairs()[k];
        gen += Complex(omega[k], 0.0) * vector_generator(mu, nu);
    }
    return matexp(gen);
}

/// [OP] component_rep: finite component transformation for the given spin;
/// translations never enter (the translation intrinsic data is zero).
inline CMatrix component_rep(Spin s, const std::array<double, 6>& omega) {
    const auto& entry = spin_entry(s);
    CMatrix gen(entry.dimension, entry.dimension);
    for (size_t k = 0; k < 6; ++k)
        gen += Complex(omega[k], 0.0) * entry.intrinsic[k];
    return matexp(gen);
}

/// A U(1)-type internal transformation: I(b) = id * exp(f(b) - f(b0)), the
/// phase case being f(b) = -(q / (i e)) b.
struct PhaseCatalogEntry {
    double q = 1.0;          // charge
    double e = 1.0;          // unit charge, nonzero
    double b0 = 0.0;         // identity parameter value
    std::function<Complex(double)> f;  // optional general exponent family

    PhaseCatalogEntry() = default;
    PhaseCatalogEntry(double charge, double unit) : q(charge), e(unit) {}

    /// Exponent coefficient of the state-side operator: U(b) = exp(c b Q1)
    /// with c = 1/(i e).
    Complex state_exponent_coefficient() const {
        return 1.0 / (Complex(0.0, 1.0) * e);
    }

    /// Derivative of the component factor at b0: f'(b0), which is
    /// -q/(i e) for the pure phase case.
    Complex component_generator() const {
        if (f) {
            const double h = 1e-6;
            return (f(b0 + h) - f(b0 - h)) / (2.0 * h);
        }
        return -q * state_exponent_coefficient();
    }
};

/// [OP] phase_rep: 1x1 component matrix of the phase transformation.
inline CMatrix phase_rep(const PhaseCatalogEntry& entry, double b) {
    if (entry.e == 0.0) throw eval_error("phase transformation needs a nonzero unit charge");
    CMatrix m(1, 1);
    if (entry.f) m(0, 0) = std::exp(entry.f(b) - entry.f(entry.b0));
    else m(0, 0) = std::exp(-entry.q / (Complex(0.0, 1.0) * entry.e) * (b - entry.b0));
    return m;
}

/// Shipped rep-file names, relative to the catalog directory.
inline const std::array<const char*, 6>& catalog_files() {
    static const std::array<const char*, 6> files = {
        "poincare_scalar.rep", "poincare_vector.rep", "poincare_spinor.rep",
        "phase_u1.rep",        "dilation_affine.rep", "poincare_full.rep"};
    return files;
}

/// Two-component program whose component rep depends on the translations
/// explicitly through nilpotent mixing matrices: the generalized translation
/// relation before the usual translation-invariance assumption is imposed.
inline const char* translation_mixing_program() {
    return R"(# Translations with explicit component mixing H_mu.
param a0 = 0; param a1 = 0; param a2 = 0; param a3 = 0;
let H0 = [[0, 1], [0, 0]];
rep H : coordinate = affine(id(4), [[a0], [a1], [a2], [a3]]);
rep D : component = exp(a0*H0);
)";
}

}  // namespace hrel
