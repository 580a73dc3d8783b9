#include "qdx/fock.hpp"

#include <cmath>

#include "qdx/errors.hpp"

namespace qdx {

FockSpace::FockSpace(int d) : dim(d) {
    if (d < 2)
        throw ConfigError("FockSpace dimension must be >= 2");
}

int default_fock_dim(Complex alpha) {
    const double nbar = std::norm(alpha);
    return static_cast<int>(std::ceil(nbar + 10.0 * std::sqrt(nbar + 1.0))) + 5;
}

FieldOperator annihilation_operator(const FockSpace& space) {
    FieldOperator a = FieldOperator::Zero(space.dim, space.dim);
    for (int j = 1; j < space.dim; ++j)
        a(j - 1, j) = std::sqrt(static_cast<double>(j));
    return a;
}

FieldOperator number_operator(const FockSpace& space) {
    FieldOperator n = FieldOperator::Zero(space.dim, space.dim);
    for (int j = 0; j < space.dim; ++j)
        n(j, j) = static_cast<double>(j);
    return n;
}

double coherent_tail_mass(Complex alpha, int dim) {
    const double nbar = std::norm(alpha);
    double term = std::exp(-nbar);  // Poisson weight at j = 0
    double head = 0.0;
    for (int j = 0; j < dim; ++j) {
        head += term;
        term *= nbar / (j + 1);
    }
    return std::max(0.0, 1.0 - head);
}

FieldVector coherent_vector(Complex alpha, const FockSpace& space, double tol) {
    const double tail = coherent_tail_mass(alpha, space.dim);
    if (tail > tol)
        throw TruncationTooSmall("coherent-state tail mass " +
                                 std::to_string(tail) +
                                 " exceeds tolerance; raise fock_dim");
    FieldVector c(space.dim);
    c(0) = std::exp(-0.5 * std::norm(alpha));
    for (int j = 1; j < space.dim; ++j)
        c(j) = c(j - 1) * alpha / std::sqrt(static_cast<double>(j));
    return c;
}

} // namespace qdx
