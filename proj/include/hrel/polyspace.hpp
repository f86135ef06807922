#pragma once

#include <array>
#include <map>
#include <vector>

#include "hrel/matrix.hpp"
#include "hrel/minkowski.hpp"

namespace hrel {

/// Degree-truncated polynomial field components on R^4. Monomials x^alpha
/// with |alpha| <= degree are enumerated degree block by degree block, each
/// block in descending lexicographic order of (a0, a1, a2, a3); a field with
/// N components uses the component-major index comp * monomial_count + mono.
/// Partial derivatives, the orbital rotation operators and affine pullbacks
/// all map this space into itself exactly, so relation residuals measure
/// floating-point noise only.
class PolySpace {
public:
    using Exponents = std::array<int, 4>;

    PolySpace(int degree, int ncomp) : degree_(degree), ncomp_(ncomp) {
        for (int total = 0; total <= degree; ++total)
            for (int a0 = total; a0 >= 0; --a0)
                for (int a1 = total - a0; a1 >= 0; --a1)
                    for (int a2 = total - a0 - a1; a2 >= 0; --a2) {
                        Exponents e{a0, a1, a2, total - a0 - a1 - a2};
                        index_[e] = int(monomials_.size());
                        monomials_.push_back(e);
                    }
    }

    int degree() const { return degree_; }
    int ncomp() const { return ncomp_; }
    int monomial_count() const { return int(monomials_.size()); }
    int dim() const { return ncomp_ * monomial_count(); }
    const Exponents& monomial(int idx) const { return monomials_[size_t(idx)]; }

    int index_of(const Exponents& e) const {
        auto it = index_.find(e);
        if (it == index_.end())
            throw numeric_error("monomial outside the truncated basis");
        return it->second;
    }

    int global_index(int comp, int mono) const { return comp * monomial_count() + mono; }

    /// Exact matrix of d/dx^mu on the monomial basis of one component.
    CMatrix partial_mono(int mu) const {
        const int m = monomial_count();
        CMatrix out(m, m);
        for (int col = 0; col < m; ++col) {
            Exponents e = monomials_[size_t(col)];
            if (e[size_t(mu)] == 0) continue;
            double power = e[size_t(mu)];
            e[size_t(mu)] -= 1;
            out(index_of(e), col) = power;
        }
        return out;
    }

    /// [OP] partial_matrix: d/dx^mu acting componentwise on the full space.
    CMatrix partial_matrix(int mu) const { return blockwise(partial_mono(mu)); }

    /// First-order operator sum_k (L_{kj} x^j + s_k) d/dx^k on one component.
    /// This is the transport term of the local relation for the coordinate
    /// flow h(r) = L r + s; it never leaves the truncated basis.
    CMatrix flow_transport_mono(const CMatrix& linear, const std::vector<Complex>& shift) const {
        const int m = monomial_count();
        CMatrix out(m, m);
        for (int col = 0; col < m; ++col) {
            const Exponents e = monomials_[size_t(col)];
            for (int k = 0; k < 4; ++k) {
                if (e[size_t(k)] == 0) continue;
                Complex power(double(e[size_t(k)]), 0.0);
                Exponents lowered = e;
                lowered[size_t(k)] -= 1;
                if (shift[size_t(k)] != 0.0)
                    out(index_of(lowered), col) += power * shift[size_t(k)];
                for (int j = 0; j < 4; ++j) {
                    if (linear(k, j) == 0.0) continue;
                    Exponents raised = lowered;
                    raised[size_t(j)] += 1;
                    out(index_of(raised), col) += power * linear(k, j);
                }
            }
        }
        return out;
    }

    CMatrix flow_transport(const CMatrix& linear, const std::vector<Complex>& shift) const {
        return blockwise(flow_transport_mono(linear, shift));
    }

    /// [OP] rotation_matrix: the orbital operator x_mu d_nu - x_nu d_mu
    /// (indices lowered with eta = diag(-1,1,1,1)) plus the intrinsic matrix
    /// acting on the component index.
    CMatrix rotation_matrix(int mu, int nu, const CMatrix& intrinsic) const {
        CMatrix linear(4, 4);
        for (int lam = 0; lam < 4; ++lam) {
            linear(nu, lam) += minkowski_eta()(mu, lam);  // x_mu d_nu
            linear(mu, lam) -= minkowski_eta()(nu, lam);  // -x_nu d_mu
        }
        CMatrix out = flow_transport(linear, std::vector<Complex>(4));
        out += component_action(intrinsic);
        return out;
    }

    /// Intrinsic matrix acting on the component index only.
    CMatrix component_action(const CMatrix& intrinsic) const {
        if (intrinsic.rows() != ncomp_ || intrinsic.cols() != ncomp_)
            throw eval_error("intrinsic matrix dimension does not match component count");
        const int m = monomial_count();
        CMatrix out(dim(), dim());
        for (int i = 0; i < ncomp_; ++i)
            for (int j = 0; j < ncomp_; ++j) {
                if (intrinsic(i, j) == 0.0) continue;
                for (int k = 0; k < m; ++k)
                    out(global_index(i, k), global_index(j, k)) = intrinsic(i, j);
            }
        return out;
    }

    /// Expand the substituted monomial prod_mu (M_mu . x + v_mu)^{alpha_mu}
    /// into basis coefficients. Exact: an affine substitution preserves the
    /// total degree, so the truncated basis is never left.
    template <typename S>
    std::vector<S> substitute_monomial(const Exponents& alpha, const Matrix<S>& linear,
                                       const Matrix<S>& shift) const {
        const int m = monomial_count();
        std::vector<S> p(size_t(m));
        p[size_t(index_of({0, 0, 0, 0}))] = scalar_traits<S>::make(1.0);
        std::vector<S> q(size_t(m));
        for (int mu = 0; mu < 4; ++mu) {
            for (int rep = 0; rep < alpha[size_t(mu)]; ++rep) {
                std::fill(q.begin(), q.end(), S{});
                for (int idx = 0; idx < m; ++idx) {
                    const S& coeff = p[size_t(idx)];
                    if (is_zero(coeff)) continue;
                    const Exponents e = monomials_[size_t(idx)];
                    q[size_t(idx)] += coeff * shift(mu, 0);
                    for (int nu = 0; nu < 4; ++nu) {
                        Exponents raised = e;
                        raised[size_t(nu)] += 1;
                        q[size_t(index_of(raised))] += coeff * linear(mu, nu);
                    }
                }
                std::swap(p, q);
            }
        }
        return p;
    }

    /// [OP] pullback: exact matrix of phi_i(x) -> detfac * comp_{ij} phi_j(M x + v)
    /// on the full space. Generic over the scalar kind, so evaluating with
    /// dual-complex inputs differentiates the whole operator family.
    template <typename S>
    Matrix<S> pullback(const Matrix<S>& linear, const Matrix<S>& shift,
                       const Matrix<S>& comp, bool include_det) const {
        if (linear.rows() != 4 || linear.cols() != 4 || shift.rows() != 4 ||
            shift.cols() != 1)
            throw eval_error("pullback needs a 4x4 linear part and a 4x1 shift");
        if (comp.rows() != ncomp_ || comp.cols() != ncomp_)
            throw eval_error("component matrix dimension does not match component count");
        const int m = monomial_count();
        S detfac = include_det ? linear.det() : scalar_traits<S>::make(1.0);

        Matrix<S> out(dim(), dim());
        for (int mono = 0; mono < m; ++mono) {
            std::vector<S> coeffs = substitute_monomial(monomials_[size_t(mono)], linear, shift);
            for (int beta = 0; beta < m; ++beta) {
                const S c = detfac * coeffs[size_t(beta)];
                for (int i = 0; i < ncomp_; ++i)
                    for (int j = 0; j < ncomp_; ++j)
                        out(global_index(i, beta), global_index(j, mono)) +=
                            comp(i, j) * c;
            }
        }
        return out;
    }

private:
    template <typename S>
    static bool is_zero(const S& s) {
        if constexpr (std::is_same_v<S, DualComplex>)
            return s.val == 0.0 && s.dot == 0.0;
        else
            return s == scalar_traits<S>::make(0.0);
    }

    CMatrix blockwise(const CMatrix& mono_op) const {
        const int m = monomial_count();
        CMatrix out(dim(), dim());
        for (int c = 0; c < ncomp_; ++c)
            for (int a = 0; a < m; ++a)
                for (int b = 0; b < m; ++b) {
                    if (mono_op(a, b) == 0.0) continue;
                    out(global_index(c, a), global_index(c, b)) = mono_op(a, b);
                }
        return out;
    }

    int degree_;
    int ncomp_;
    std::vector<Exponents> monomials_;
    std::map<Exponents, int> index_;
};

/// Pullback with provenance, as produced from a parsed program by the
/// verifier: the operator matrix plus the pieces it was assembled from.
template <typename S>
struct PullbackOperator {
    Matrix<S> matrix;
    Matrix<S> coordinate_linear;  // M(b)
    Matrix<S> coordinate_shift;   // v(b)
    Matrix<S> component;          // I(b) or D(Lambda, a)
    S det_factor{};
    bool includes_det = false;
};

}  // namespace hrel
