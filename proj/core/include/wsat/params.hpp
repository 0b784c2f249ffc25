#pragma once

#include <cstdint>
#include <stdexcept>

namespace wsat {

/// Parameters of the random instance model W(n,p,k,d)(d'): every d-subset of
/// the n variables becomes a hyperedge independently with probability p, and
/// each hyperedge receives one clause drawn uniformly from the sign patterns
/// with at least dprime negated literals. dprime = 1 is the base model.
///
/// Either p is given directly or it is derived from the threshold
/// coefficient c as p = c*ln(n)/n^(d-dprime) (natural logarithm). Whichever
/// was given is authoritative; the other is derived and recorded.
struct RandomModelParams {
  int n = 0;
  int d = 2;
  int dprime = 1;
  int k = 0;
  double p = 0.0;
  double c = 0.0;
  bool c_authoritative = false;
  std::uint64_t seed = 0;

  bool operator==(const RandomModelParams&) const = default;
};

/// c equivalent of an explicit edge probability p.
double coefficient_from_probability(double p, int n, int d, int dprime);

/// Edge probability for threshold coefficient c; throws std::invalid_argument
/// if the result leaves [0, 1].
double probability_from_coefficient(double c, int n, int d, int dprime);

/// Build params from an explicit edge probability. Validates ranges.
RandomModelParams params_with_p(int n, int d, int dprime, int k, double p,
                                std::uint64_t seed);

/// Build params from a threshold coefficient c. Validates ranges, including
/// that the derived p does not exceed 1.
RandomModelParams params_with_c(int n, int d, int dprime, int k, double c,
                                std::uint64_t seed);

/// Range checks shared by the two factories; throws std::invalid_argument.
void validate_model_shape(int n, int d, int dprime, int k);

} // namespace wsat
