// Rational Chow groups of the smooth toric variety of a unimodular fan by
// generators and relations, divisor multiplication by the standard
// smooth-toric rewriting, Minkowski-weight evaluation, the numerical
// pairing and its radical.

#ifndef TRIH_CHOW_HPP
#define TRIH_CHOW_HPP

#include "trih/fans.hpp"
#include "trih/table.hpp"

#include <vector>

namespace trih {

struct ChowPresentation {
    int p = 0;
    std::vector<int> generators;   // indices of the p-cones of the fan
    QMat relations;                // rows: (tau in Λ(p-1), m in basis of M ∩ tau^⊥)
    int dim = 0;                   // #generators - rank(relations)
};

ChowPresentation ch_group(const Fan& fan, int p);

// A class in CH^k as coordinates over the k-cone generators.
using ChowClass = QVec;

// x_rho · [V(sigma)] for every generator, standard rewriting:
//   rho ∉ sigma, rho+sigma a cone  -> [V(rho+sigma)]
//   rho ∉ sigma, otherwise         -> 0
//   rho ∈ sigma                    -> rewrite x_rho by a character m with
//                                     <m,u_rho> = 1 vanishing on the other
//                                     rays of sigma, then recurse
// m_variant selects among equivalent characters (0: least-index pivoting);
// the class modulo relations must not depend on it.
ChowClass multiply_by_divisor(const Fan& fan, int ray, int k, const ChowClass& c,
                              int m_variant = 0);

// Σ c_sigma w(sigma); requires w balanced (well-definedness).
Rational evaluate(const Fan& fan, const MinkowskiWeight& w, const ChowClass& c);

struct PairingData {
    int p = 0;
    std::vector<int> basis_p;      // cone indices: least-index basis of CH^p
    std::vector<int> basis_q;      // basis of CH^{d-p}
    QMat full;                     // pairing on all generators
    QMat basis_matrix;             // pairing on the chosen bases
    int rank = 0;                  // = dim CH^p / Num^p
    int num_dim = 0;               // dim Num^p
};

// B[i][j] = (Λ,w)(α_i · β_j) via iterated divisor multiplication;
// Num^p is the left radical.
PairingData pairing_and_num(const TropicalFanCycle& c, int p);

// (p,p) -> dim CH^p/Num^p, off-diagonal zero.
DimensionTable predicted_ih(const TropicalFanCycle& c);

// b_{2k} for a complete unimodular fan from the f-vector; throws if the fan
// is not complete.
std::vector<Integer> singular_betti(const Fan& fan);

}  // namespace trih

#endif
