#pragma once

#include <random>

#include "gsk/symplectic.hpp"

namespace gsk {

using Rng = std::mt19937_64;

// symmetric matrix with entries uniform in [-box, box]
Mat random_symmetric(int n, double box, Rng& rng);
// Haar-distributed m×m unitary, via QR of a complex Gaussian matrix
CMat random_unitary(int m, Rng& rng);
// orthogonal symplectic with ||O - I|| exactly eps (eps <= 2)
SymplecticMatrix random_orthogonal_symplectic(int m, double eps, Rng& rng);
// Haar orthogonal symplectic
SymplecticMatrix random_orthogonal_symplectic(int m, Rng& rng);
// positive symplectic with ||P - I|| exactly eps
SymplecticMatrix random_positive_symplectic(int m, double eps, Rng& rng);
// exp(t Ω A) for a random symmetric A, t tuned so that ||S - I|| equals eps
SymplecticMatrix random_symplectic(int m, double eps, Rng& rng);

}  // namespace gsk
