#pragma once

#include <Eigen/Core>
#include <complex>
#include <span>

#include "plurirand/multiindex.hpp"

namespace plurirand {

using Cpx = std::complex<double>;

// log(sum exp(values)); -inf entries are skipped, empty or all -inf gives -inf.
double log_sum_exp(std::span<const double> values);

// log|sum_i exp(log_mag[i]) * phase[i]| for unit phases, computed after
// factoring out the largest magnitude. Returns -inf when the rescaled sum
// cancels to zero in working precision.
double log_abs_complex_sum(std::span<const double> log_mag,
                           std::span<const Cpx> phase);

// Values z^nu for every nu in the order, filled by the degree-graded parent
// recurrence (one complex multiply per entry).
Eigen::VectorXcd eval_monomials(std::span<const Cpx> z,
                                const MultiIndexOrder& order);

// Monomials split into log-magnitude and unit phase, same recurrence.
// Entries with a zero coordinate raised to a positive power get log_mag -inf.
struct MonomialLogEval {
  Eigen::VectorXd log_mag;
  Eigen::VectorXcd phase;
};
MonomialLogEval eval_monomials_log(std::span<const Cpx> z,
                                   const MultiIndexOrder& order);

// log|sum_nu coeffs[nu] z^nu| via per-term magnitude rescaling; safe for
// |z| up to ~10 and degrees up to ~500 where direct evaluation overflows.
// Throws std::invalid_argument on a coeffs/order length mismatch.
double log_abs_eval(const Eigen::VectorXcd& coeffs, const MultiIndexOrder& order,
                    std::span<const Cpx> z);

}  // namespace plurirand
