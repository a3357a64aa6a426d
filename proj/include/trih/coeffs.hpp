// The three coefficient systems on cells of a canonical compactification:
//
//   f_pw      weighted multi-tangent coefficients: on a top cell P the space
//             Λ^p Tan_Q P, on lower cells the quotient of the direct sum over
//             adjacent top cells by slot identifications and the weighted
//             balancing relations;
//   f_pw_dual their duals (smooth cells only);
//   f_ikmz    ambient p-forms Λ^p(M ∩ σ_R^⊥)⊗Q modulo the joint kernel of
//             the evaluation maps to the adjacent top tangent spaces.
//
// Tangent spaces of top cells are coordinatized by their cone's rays, which
// form a lattice basis (unimodularity). Λ^p then has the monomial basis
// indexed by p-subsets of the ray set in lexicographic order; this basis is
// adapted to the flag Tan σ_S ⊆ pr^{-1}(Tan S) ⊆ Tan P of every face S
// simultaneously, which makes the filtration degrees v and u subset counts.

#ifndef TRIH_COEFFS_HPP
#define TRIH_COEFFS_HPP

#include "trih/compactified.hpp"
#include "trih/qlinalg.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <tuple>
#include <vector>

namespace trih {

enum class CoefKind { f_pw, f_pw_dual, f_ikmz };

struct CoefSpace {
    QuotientSpace space;         // presentation over the big ambient space
    std::vector<int> tops;       // adjacent top cells, increasing id (f_pw/f_pw_dual)
    int block_dim = 0;           // per-slot dimension C(d,p)
    int p = 0;
    std::vector<IVec> mbasis;    // f_ikmz only: lattice basis of M ∩ σ_R^⊥

    int dim() const { return space.dim(); }
    int slot_offset(int slot) const { return slot * block_dim; }
};

struct FiltrationDegrees {
    int v = 0;
    int u = 0;
};

// p-subsets of a sorted set, lexicographic.
std::vector<std::vector<int>> subsets_of(const std::vector<int>& elems, int p);

// sign of e_A ∧ e_B as a multiple of e_{A ∪ B}; 0 if not disjoint
int wedge_sign(const std::vector<int>& a, const std::vector<int>& b);

// Λ^p of a linear map given by its matrix (rows = target coords): the
// C(rows,p) x C(cols,p) matrix of p x p minors.
QMat exterior_power_matrix(const QMat& m, int p);

// contraction Λ^q A ⊗ Λ^p A^∨ -> Λ^{q-p} A over the monomial bases of an
// n-dimensional space and its dual basis
QVec contraction(const QVec& omega, int q, const QVec& phi, int p, int n);

// Relations inside ⊕_{P ⊇ R} Λ^p Tan P defining F_{p,w}(R) for a
// codimension-one cell R. lift_variant chooses among equivalent canonical
// lift families ṽ_{P,Q}; the span must not depend on it.
Subspace codim1_relation_space(const CompactifiedCellComplex& x, int R, int p,
                               int lift_variant = 0);

class CoefficientTable {
public:
    explicit CoefficientTable(const CompactifiedCellComplex& x) : x_(&x) {}

    const CompactifiedCellComplex& complex() const { return *x_; }

    // memoized per (kind, cell, p); safe for concurrent readers
    const CoefSpace& get(CoefKind kind, int cell, int p) const;

    const CoefSpace& f_pw(int cell, int p) const { return get(CoefKind::f_pw, cell, p); }
    const CoefSpace& f_pw_dual(int cell, int p) const;   // smooth cells only
    const CoefSpace& f_ikmz(int cell, int p) const { return get(CoefKind::f_ikmz, cell, p); }

    // F_{p,w}(S1) -> F_{p,w}(S2) for S2 a face of S1 (restriction toward
    // deeper cells); dim(S2) x dim(S1)
    const QMat& iota(int p, int from, int to) const;

    // F^{p,w}(Q) -> F^{p,w}(P) for Q a face of P, dual to iota
    QMat dual_restriction(int p, int from, int to) const;

    // F^p(R1) -> F^p(R2) for R1 a face of R2
    QMat ikmz_map(int p, int from, int to) const;

    // monomial basis of Λ^p Tan for the cone's ray set (cached)
    const std::vector<std::vector<int>>& monomials(int cone, int p) const;

private:
    const CompactifiedCellComplex* x_;
    mutable std::mutex mu_;
    mutable std::map<std::tuple<int, int, int>, std::unique_ptr<CoefSpace>> memo_;
    mutable std::map<std::tuple<int, int, int>, std::unique_ptr<QMat>> iota_memo_;
    mutable std::map<std::pair<int, int>, std::unique_ptr<std::vector<std::vector<int>>>>
        monomial_memo_;

    std::unique_ptr<CoefSpace> build(CoefKind kind, int cell, int p) const;
};

// v = largest j with α in Λ^j(Tan σ_S) ∧ Λ^{p-j}(Tan P),
// u = likewise for pr^{-1}(Tan S); α in monomial coordinates of the top
// cell P, which S must be a face of. Throws on α = 0.
FiltrationDegrees vu_degrees(const CompactifiedCellComplex& x, int top_cell, int s_cell,
                             const QVec& alpha, int p);

// The subspace of Λ^p Tan P of coefficients allowed at the singular stratum
// S for a (p,q)-chain cell meeting rel.int S in dimension k.
Subspace allowed_subspace(const CompactifiedCellComplex& x, int top_cell, int s_cell,
                          int p, int q, int k);

struct FilWedge {
    Subspace fil;                          // Fil_S^k of Λ^{d-p} Tan P
    std::vector<std::vector<int>> fil_monomials;   // basis of Fil^{-k+dim S+2dim σ_S}
    std::vector<std::vector<int>> quo_monomials;   // basis of Λ^p / Fil^{k+1}
    QMat pairing;                          // wedge into Λ^d ≅ Q
};

// Fil_S^k F_{d-p,w}(P) together with the wedge pairing
// Fil^{-k+dim S+2dim σ_S} x (Λ^p / Fil^{k+1}) -> Λ^d.
FilWedge fil_and_wedge(const CompactifiedCellComplex& x, int top_cell, int s_cell,
                       int p, int k);

}  // namespace trih

#endif
