// Walkthrough at p = 3, d = 3: B matrices, the unit families and the spectrum
// of the partially transposed permutation rho(2).
#include <cstdio>

#include "wbalg/wbalg.hpp"

using namespace wbalg;

int main() {
  const int p = 3, d = 3;

  std::printf("irreps of S(3) at d = 3\n");
  for (const auto& mu : enumerate_partitions(p))
    std::printf("  %-10s d_mu = %lld  m_mu = %lld\n", mu.str().c_str(), static_cast<long long>(dim_irrep(mu)),
                static_cast<long long>(multiplicity(mu, d)));

  const auto b = B_matrix(Partition({2, 1}), Partition({2, 1}), d);
  std::printf("\nB for mu = nu = (2,1): alphas");
  for (const auto& a : b.alphas) std::printf(" %s", a.str().c_str());
  std::printf("\n");
  for (int r = 0; r < b.size(); ++r) {
    for (int c = 0; c < b.size(); ++c) std::printf("  %9.5f", b.entries(r, c));
    std::printf("\n");
  }
  std::printf("eigenvalues %.6f %.6f, singular: %s\n", b.eig(0), b.eig(1), b.singular ? "yes" : "no");

  const UnitFamily fam(p, d);
  int top = 0;
  for (const auto& l : fam.labels()) top += l.ideal == Ideal::top;
  const auto comp = composition_residual(fam);
  std::printf("\n%d units in M(p), %d in M(p-1); composition residual %.2e over %ld products\n", top,
              fam.size() - top, comp.max_residual, comp.products);

  const auto analytic = spectrum_table(p, d, SpectrumMethod::analytic, p - 1);
  const auto brute = spectrum_table(p, d, SpectrumMethod::brute, p - 1);
  std::printf("\nspectrum of rho(2):\n");
  for (const auto& [e, m] : analytic.binned()) std::printf("  %10.6f  x %ld\n", e, m);
  std::printf("  kernel dimension %ld, analytic vs brute %.2e\n", analytic.kernel_dimension,
              compare_spectra(analytic, brute));

  std::printf("\n%s", fig7_layout(p, d).text.c_str());
  return 0;
}
