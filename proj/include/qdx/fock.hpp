#pragma once

#include <Eigen/Dense>
#include <complex>

namespace qdx {

using Complex = std::complex<double>;
using FieldOperator = Eigen::MatrixXcd;
using FieldVector = Eigen::VectorXcd;

/// Truncated photon number basis {|0>, ..., |dim-1>}.
struct FockSpace {
    int dim;

    explicit FockSpace(int d);
};

/// dim = ceil(|alpha|^2 + 10 sqrt(|alpha|^2 + 1)) + 5; keeps alpha=1 at 25.
int default_fock_dim(Complex alpha);

/// <j-1|a|j> = sqrt(j).
FieldOperator annihilation_operator(const FockSpace& space);

FieldOperator number_operator(const FockSpace& space);

/// Poisson tail mass sum_{j>=dim} e^{-|alpha|^2} |alpha|^{2j} / j!.
double coherent_tail_mass(Complex alpha, int dim);

/// Glauber coherent state in the truncated basis, c_j = e^{-|a|^2/2} a^j/sqrt(j!).
/// Throws TruncationTooSmall when the tail mass exceeds tol.
FieldVector coherent_vector(Complex alpha, const FockSpace& space,
                            double tol = 1e-12);

} // namespace qdx
