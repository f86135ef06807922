#pragma once

#include <array>

#include "hrel/matrix.hpp"

namespace hrel {

/// Lorentzian metric, signature (-+++).
inline const CMatrix& minkowski_eta() {
    static const CMatrix eta = [] {
        CMatrix m(4, 4);
        m(0, 0) = -1.0;
        m(1, 1) = 1.0;
        m(2, 2) = 1.0;
        m(3, 3) = 1.0;
        return m;
    }();
    return eta;
}

inline double eta_sign(int mu) { return mu == 0 ? -1.0 : 1.0; }

/// Dirac-basis gamma matrices scaled by i so that the Clifford relation
/// {gamma_mu, gamma_nu} = 2 eta_{mu nu} id holds with the (-+++) metric.
inline const CMatrix& gamma_matrix(int mu) {
    static const std::array<CMatrix, 4> gammas = [] {
        const Complex i(0.0, 1.0);
        CMatrix s1(2, 2), s2(2, 2), s3(2, 2);
        s1(0, 1) = 1.0;  s1(1, 0) = 1.0;
        s2(0, 1) = -i;   s2(1, 0) = i;
        s3(0, 0) = 1.0;  s3(1, 1) = -1.0;

        auto block = [&](const CMatrix& tl, const CMatrix& tr, const CMatrix& bl,
                         const CMatrix& br) {
            CMatrix m(4, 4);
            for (int r = 0; r < 2; ++r)
                for (int c = 0; c < 2; ++c) {
                    m(r, c) = tl(r, c);
                    m(r, c + 2) = tr(r, c);
                    m(r + 2, c) = bl(r, c);
                    m(r + 2, c + 2) = br(r, c);
                }
            return m;
        };

        CMatrix id2 = CMatrix::identity(2);
        CMatrix zero2(2, 2);
        std::array<CMatrix, 4> g = {
            block(id2, zero2, zero2, -1.0 * id2),  // standard Dirac gamma^0
            block(zero2, s1, -1.0 * s1, zero2),
            block(zero2, s2, -1.0 * s2, zero2),
            block(zero2, s3, -1.0 * s3, zero2),
        };
        for (auto& m : g) m *= i;
        return g;
    }();
    return gammas[mu];
}

}  // namespace hrel
