#pragma once

#include <vector>

#include "szilard/fock_basis.hpp"
#include "szilard/sparse.hpp"

namespace szilard {

/// I_ijkl = int_0^l phi_i phi_j phi_k phi_l dx for hard-wall sine modes,
/// in closed form. Vanishes when i+j+k+l is odd.
double delta_matrix_element(int i, int j, int k, int l, double length = 1.0);

/// Diagonal of sum_k eps_k n_k.
std::vector<double> noninteracting_energies(const FockBasis& basis, const ModeBasis& modes);

/// Coupling-free contact operator V = 1/2 sum_ijkl I_ijkl a+_i a+_j a_l a_k,
/// restricted to `basis` (states leaving the basis are dropped). The full
/// Hamiltonian is diag(noninteracting_energies) + g V.
CsrMatrix assemble_interaction(const FockBasis& basis, const ModeBasis& modes);

CsrMatrix assemble_hamiltonian(const FockBasis& basis, double g, const ModeBasis& modes);

}  // namespace szilard
