#pragma once

#include <cmath>

#include "hrel/matrix.hpp"

namespace hrel {

/// Matrix exponential by scaling-and-squaring with the order-13 Pade
/// approximant (Higham 2005 coefficients, squaring threshold 5.37 on the
/// 1-norm). The algorithm is generic over the scalar kind, so running it on
/// dual-complex matrices yields the exact derivative of the exponential
/// along the active parameter.
template <typename S>
Matrix<S> matexp(const Matrix<S>& input) {
    if (!input.square()) throw eval_error("exp of non-square matrix");
    if (!input.all_finite()) throw numeric_error("matexp: non-finite entry in input");

    static const double b[14] = {
        64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
        1187353796428800.0,  129060195264000.0,   10559470521600.0,
        670442572800.0,      33522128640.0,       1323241920.0,
        40840800.0,          960960.0,            16380.0,
        182.0,               1.0};
    constexpr double squaring_threshold = 5.37;

    const int n = input.rows();
    Matrix<S> a = input;

    int squarings = 0;
    const double norm = a.one_norm();
    if (norm > squaring_threshold) {
        squarings = int(std::ceil(std::log2(norm / squaring_threshold)));
        a *= scalar_traits<S>::make(std::ldexp(1.0, -squarings));
    }

    const Matrix<S> id = Matrix<S>::identity(n);
    const Matrix<S> a2 = a * a;
    const Matrix<S> a4 = a2 * a2;
    const Matrix<S> a6 = a2 * a4;

    auto c = [&](int k) { return scalar_traits<S>::make(b[k]); };

    Matrix<S> u = a6 * (c(13) * a6 + c(11) * a4 + c(9) * a2);
    u += c(7) * a6 + c(5) * a4 + c(3) * a2 + c(1) * id;
    u = a * u;

    Matrix<S> v = a6 * (c(12) * a6 + c(10) * a4 + c(8) * a2);
    v += c(6) * a6 + c(4) * a4 + c(2) * a2 + c(0) * id;

    Matrix<S> r = (v - u).inverse() * (v + u);
    for (int i = 0; i < squarings; ++i) r = r * r;
    return r;
}

}  // namespace hrel
