#pragma once

#include "qgtlab/basis.hpp"
#include "qgtlab/model.hpp"
#include "qgtlab/sparse.hpp"

namespace qgt {

// Sector-restricted Hamiltonian H(params).
//
// Spin convention: the XXZ family uses spin-1/2 operators S = sigma/2,
//   H = J sum_i [S^x_i S^x_{i+1} + S^y_i S^y_{i+1} + lambda S^z_i S^z_{i+1}] - h sum_i S^z_i ;
// TFIM and RotatedXY use Pauli matrices,
//   H_TFIM = -J sum_i sigma^x_i sigma^x_{i+1} - h sum_i sigma^z_i ,
//   H_RXY(h, phi) = U(phi) H_TFIM(h) U(phi)^dagger with U(phi) = exp(-i phi/2 sum_i sigma^z_i);
// the qubit is H = -(sigma^z cos(theta) + sin(theta)(sigma^x cos(phi) + sigma^y sin(phi)))/2.
SparseOperator build_hamiltonian(const ModelSpec& spec, const SymmetrySector& sector);

// dH/d(params[mu]) in the same sector and basis ordering.
SparseOperator build_perturbation(const ModelSpec& spec, const SymmetrySector& sector, int mu);

}  // namespace qgt
