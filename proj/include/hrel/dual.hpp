#pragma once

#include <cmath>
#include <complex>

namespace hrel {

using Complex = std::complex<double>;

/// First-order dual number: value plus the derivative along one active
/// parameter. Arithmetic propagates the derivative part exactly, so any
/// computation built from these ops yields machine-exact first derivatives.
template <typename T>
struct Dual {
    T val{};
    T dot{};

    Dual() = default;
    Dual(const T& v) : val(v) {}
    Dual(const T& v, const T& d) : val(v), dot(d) {}

    Dual& operator+=(const Dual& o) {
        val += o.val;
        dot += o.dot;
        return *this;
    }
    Dual& operator-=(const Dual& o) {
        val -= o.val;
        dot -= o.dot;
        return *this;
    }
    Dual& operator*=(const Dual& o) {
        dot = dot * o.val + val * o.dot;
        val *= o.val;
        return *this;
    }
    Dual& operator/=(const Dual& o) {
        // (a/b)' = (a'b - ab') / b^2
        dot = (dot * o.val - val * o.dot) / (o.val * o.val);
        val /= o.val;
        return *this;
    }
};

template <typename T>
Dual<T> operator+(Dual<T> a, const Dual<T>& b) { return a += b; }
template <typename T>
Dual<T> operator-(Dual<T> a, const Dual<T>& b) { return a -= b; }
template <typename T>
Dual<T> operator*(Dual<T> a, const Dual<T>& b) { return a *= b; }
template <typename T>
Dual<T> operator/(Dual<T> a, const Dual<T>& b) { return a /= b; }
template <typename T>
Dual<T> operator-(const Dual<T>& a) { return Dual<T>(-a.val, -a.dot); }

template <typename T>
bool operator==(const Dual<T>& a, const Dual<T>& b) {
    return a.val == b.val && a.dot == b.dot;
}

using DualComplex = Dual<Complex>;

/// Uniform access to the scalar kinds the evaluator is generic over.
template <typename S>
struct scalar_traits;

template <>
struct scalar_traits<double> {
    static double make(double re) { return re; }
    static Complex value(double s) { return Complex(s, 0.0); }
    static double abs_value(double s) { return std::abs(s); }
    static double exp(double s) { return std::exp(s); }
    static bool finite(double s) { return std::isfinite(s); }
};

template <>
struct scalar_traits<Complex> {
    static Complex make(double re) { return Complex(re, 0.0); }
    static Complex from_complex(const Complex& c) { return c; }
    static Complex value(const Complex& s) { return s; }
    static double abs_value(const Complex& s) { return std::abs(s); }
    static Complex exp(const Complex& s) { return std::exp(s); }
    static bool finite(const Complex& s) {
        return std::isfinite(s.real()) && std::isfinite(s.imag());
    }
};

template <>
struct scalar_traits<DualComplex> {
    static DualComplex make(double re) { return DualComplex(Complex(re, 0.0)); }
    static DualComplex from_complex(const Complex& c) { return DualComplex(c); }
    static Complex value(const DualComplex& s) { return s.val; }
    static double abs_value(const DualComplex& s) { return std::abs(s.val); }
    static DualComplex exp(const DualComplex& s) {
        Complex e = std::exp(s.val);
        return DualComplex(e, e * s.dot);
    }
    static bool finite(const DualComplex& s) {
        return std::isfinite(s.val.real()) && std::isfinite(s.val.imag()) &&
               std::isfinite(s.dot.real()) && std::isfinite(s.dot.imag());
    }
};

}  // namespace hrel
