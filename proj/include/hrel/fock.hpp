#pragma once

#include "hrel/matexp.hpp"

namespace hrel {

/// Number-operator-truncated bosonic mode: annihilation, number and charge
/// operators on span{|0>, ..., |n_max>}. The ladder structure makes the
/// truncation benign for every identity checked here: [N, a] = -a holds
/// exactly and conjugation by exp(theta N) scales a by exp(-theta) exactly.
class FockSpace {
public:
    explicit FockSpace(int cutoff, double charge = 1.0) : cutoff_(cutoff), q_(charge) {
        const int n = cutoff + 1;
        a_ = CMatrix(n, n);
        for (int k = 1; k <= cutoff; ++k) a_(k - 1, k) = std::sqrt(double(k));
        nop_ = a_.transpose() * a_;  // diagonal diag(0, 1, ..., n_max)
    }

    int cutoff() const { return cutoff_; }
    double charge_value() const { return q_; }
    int dim() const { return cutoff_ + 1; }

    const CMatrix& annihilation() const { return a_; }
    CMatrix creation() const { return a_.transpose(); }
    const CMatrix& number() const { return nop_; }

    /// Charge operator Q1 = q * N, diagonal with entries q * n.
    CMatrix charge() const { return Complex(q_, 0.0) * nop_; }

    /// [OP] fock_conjugation: exp(theta N) a exp(-theta N), computed through
    /// the actual matrix exponentials; equals exp(-theta) a exactly.
    CMatrix conjugation(Complex theta) const {
        CMatrix left = matexp(CMatrix(theta * nop_));
        CMatrix right = matexp(CMatrix(-theta * nop_));
        return left * a_ * right;
    }

private:
    int cutoff_;
    double q_;
    CMatrix a_;
    CMatrix nop_;
};

}  // namespace hrel
