#pragma once

// Independent reference computations used to cross-check the main pipeline.
// Nothing here shares code paths with the recursions they validate.

#include "qpvi/numeric.hpp"
#include "qpvi/qseries.hpp"

#include <vector>

namespace qpvi::oracle {

// alpha_n = phi_n(0) where phi_n is the monic minimizer of <p, p> over
// degree-n monic p, solved from the Toeplitz normal equations by dense LU.
std::vector<Complex> toeplitz_alpha(const MomentTable& t, int N);

// (z; q)_oo as exp(sum_i log(1 - z q^i)), principal logs, summed until the
// terms fall below tol.
Complex qpoch_log_series(const Complex& z, const Real& q, const Real& tol);

}  // namespace qpvi::oracle
