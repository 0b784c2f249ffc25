#include "wsat/params.hpp"

#include <cmath>
#include <string>

namespace wsat {

namespace {

double power(double base, int exp) {
  double r = 1.0;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

} // namespace

void validate_model_shape(int n, int d, int dprime, int k) {
  if (d < 2) throw std::invalid_argument("clause arity d must be at least 2");
  if (dprime < 1 || dprime > d)
    throw std::invalid_argument("dprime must satisfy 1 <= dprime <= d");
  if (n < d) throw std::invalid_argument("need at least d variables");
  if (k < 0 || k > n)
    throw std::invalid_argument("weight target k must lie in [0, n]");
}

double coefficient_from_probability(double p, int n, int d, int dprime) {
  return p * power(static_cast<double>(n), d - dprime) /
         std::log(static_cast<double>(n));
}

double probability_from_coefficient(double c, int n, int d, int dprime) {
  if (c < 0.0) throw std::invalid_argument("coefficient c must be nonnegative");
  const double p =
      c * std::log(static_cast<double>(n)) / power(static_cast<double>(n), d - dprime);
  if (!(p >= 0.0 && p <= 1.0))
    throw std::invalid_argument("derived edge probability " + std::to_string(p) +
                                " leaves [0, 1]; lower c or raise n");
  return p;
}

RandomModelParams params_with_p(int n, int d, int dprime, int k, double p,
                                std::uint64_t seed) {
  validate_model_shape(n, d, dprime, k);
  if (!(p >= 0.0 && p <= 1.0))
    throw std::invalid_argument("edge probability p must lie in [0, 1]");
  RandomModelParams params;
  params.n = n;
  params.d = d;
  params.dprime = dprime;
  params.k = k;
  params.p = p;
  params.c = coefficient_from_probability(p, n, d, dprime);
  params.c_authoritative = false;
  params.seed = seed;
  return params;
}

RandomModelParams params_with_c(int n, int d, int dprime, int k, double c,
                                std::uint64_t seed) {
  validate_model_shape(n, d, dprime, k);
  RandomModelParams params;
  params.n = n;
  params.d = d;
  params.dprime = dprime;
  params.k = k;
  params.p = probability_from_coefficient(c, n, d, dprime);
  params.c = c;
  params.c_authoritative = true;
  params.seed = seed;
  return params;
}

} // namespace wsat
