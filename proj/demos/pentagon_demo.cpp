// Walks through the pentagon instance: parameters, bounds, a 2-error-correcting
// code of length 9, and one decode with two channel errors.

#include <iostream>

#include "ecic/ecic.hpp"

int main() {
  using namespace ecic;
  const Field F = make_field(2);
  const Instance inst = pentagon_instance();

  const auto params = instance_params(inst, F);
  std::cout << "alpha = " << params.alpha.alpha << ", kappa_2 = " << params.kappa.kappa << '\n';

  const auto b = bounds_report(inst, F, 2);
  std::cout << "bounds for delta = 2: " << *b.lower << " <= N <= " << *b.upper << '\n';

  const LinearIndexCode code(inst, F, pentagon_matrix());
  std::cout << "length 9 matrix corrects " << *correction_radius(code) << " errors\n";

  const Vector x{1, 0, 1, 1, 0};
  const Vector e{0, 1, 0, 0, 0, 0, 1, 0, 0};
  for (const auto& o : simulate_round(code, x, e, 2))
    std::cout << "receiver " << o.receiver + 1 << " decodes " << o.recovered
              << (*o.success ? "" : " (wrong)") << '\n';
}
