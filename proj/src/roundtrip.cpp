#include "trigmoment/roundtrip.hpp"

#include <algorithm>
#include <cmath>

namespace trigmoment {

RoundtripReport oracle_roundtrip(int atoms, int N, int d, std::uint64_t seed, int zeta_samples) {
  if (atoms < 1 || N < 1 || d < 1) throw std::invalid_argument("atoms, N and d must be positive");
  RoundtripReport r{atoms, N, d, seed};
  std::mt19937_64 rng(seed);

  const AtomicMeasure truth = random_atomic_measure(atoms, N, rng);
  const MomentSequence s = moments_of(truth, d);
  const IsometryModel model = build_isometry(build_model_space(build_toeplitz(s)));
  r.rank = model.rank();
  r.delta = model.delta();

  const SchurParameter f = SchurParameter::constant(random_unitary(model.delta(), rng));
  const AtomicMeasure solution = atomic_measure(model, f);
  const ResidualReport res = verify_moments(solution, s, kRoundtripMomentTol);
  r.moment_residual = *std::max_element(res.residuals.begin(), res.residuals.end());
  r.weight_residual = max_abs(solution.total() - s[0]);

  std::uniform_real_distribution<double> radius(0.0, 1.0);
  std::uniform_real_distribution<double> angle(0.0, kTwoPi);
  for (int i = 0; i < zeta_samples; ++i) {
    // sqrt gives points uniform in the disk of radius 0.95.
    const Complex z = std::polar(0.95 * std::sqrt(radius(rng)), angle(rng));
    const double err = max_abs(transform_eval(model, f, z) - measure_transform(solution, z));
    r.transform_residual = std::max(r.transform_residual, err);
  }
  r.pass = r.moment_residual < kRoundtripMomentTol && r.transform_residual < kRoundtripTransformTol;
  return r;
}

}  // namespace trigmoment
