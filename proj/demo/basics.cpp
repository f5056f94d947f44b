// A short tour: polynomials, harmonics, integration and the degenerate
// window at m = 2, n = 1.

#include <superh/superh.hpp>

#include <iostream>

using namespace superh;

int main() {
  const int m = 2, n = 1;

  const SuperPolynomial f = parse_polynomial("2*x1^2 - xg1*xg2", m, n);
  std::cout << "f           = " << to_string(f) << "\n";
  std::cout << "R^2         = " << to_string(r2(m, n)) << "\n";
  std::cout << "nabla^2 f   = " << to_string(nabla2(m, n)(f)) << "\n";
  std::cout << "L_12 x1     = " << to_string(osp_generator(1, 2, m, n)(SuperPolynomial::x(0))) << "\n\n";

  for (int k = 0; k <= 3; ++k)
    std::cout << "dim H_" << k << " = " << dim_Hk(m, n, k) << ", dim L_(" << k << ") = " << simple_dim(m, n, k)
              << (in_window(m, n, k) ? "  (window)" : "") << "\n";

  std::cout << "\nharmonic basis of H_2:\n";
  for (const auto& h : harmonic_basis(m, n, 2).basis()) std::cout << "  " << to_string(h) << "\n";

  const SuperPolynomial g = parse_polynomial("x1^2 + 3*xg1*xg2", 3, 1);
  std::cout << "\nintegral of " << to_string(g) << " over the supersphere in R^{3|2}:\n";
  std::cout << "  Pizzetti  " << pizzetti(g, 3, 1).str() << "\n";
  std::cout << "  phi-sharp " << supersphere_integral_phi(g, 3, 1).str() << "\n";

  const RepSpace H2 = rep_space({SpaceKind::Hk, m, n, 2});
  std::cout << "\nH_2 is " << to_string(analyze_irreducibility(H2).verdict);
  std::cout << ", indecomposable: " << (indecomposability_witness(H2).verified ? "yes" : "not shown") << "\n";
  const Subspace S = submodule_closure(H2.rep, {H2.coordinates(r2(m, n))});
  std::cout << "submodule generated by R^2 has dimension " << S.dim() << "\n";

  const auto br = branching(m, n, 2);
  std::cout << "\nrestriction of L_(2) to osp(1|2): ";
  for (std::size_t i = 0; i < br.ls.size(); ++i)
    std::cout << (i ? " + " : "") << "L_(" << br.ls[i] << ") [" << br.dims[i] << "]";
  std::cout << "\n";
}
