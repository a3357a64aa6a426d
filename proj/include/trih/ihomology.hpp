// Cellular chain and cochain complexes on a canonical compactification,
// tropical cohomology, the allowable (IC) subcomplex and tropical
// intersection homology.
//
// Homological grading: C_{p,q} has one block F_{p,w}(carrier Δ) per q-cell Δ
// of the chosen structure. Tables are reported in cohomological labels,
// IH^{p,q} = IH_{d-p,d-q}.

#ifndef TRIH_IHOMOLOGY_HPP
#define TRIH_IHOMOLOGY_HPP

#include "trih/coeffs.hpp"
#include "trih/table.hpp"

#include <string>
#include <vector>

namespace trih {

struct ChainComplexQ {
    std::vector<int> dims;                  // q = 0..d
    std::vector<QMat> bnd;                  // bnd[q]: C_q -> C_{q-1}, q >= 1
    // block labels: for each q, for each coordinate, the chain cell it sits on
    std::vector<std::vector<int>> labels;

    std::vector<int> homology_dims() const;
};

enum class Structure { native, barycentric };

ChainStructure make_structure(const CompactifiedCellComplex& x, Structure s);

// C_{p,q} = ⊕_{Δ in T_q} F_{p,w}(R_Δ) with the signed coefficient boundary;
// aborts if the assembled boundary fails ∂∘∂ = 0.
ChainComplexQ chain_complex(const CoefficientTable& table, const ChainStructure& s, int p);

// cellular tropical cohomology with F^p coefficients; returns dim H^{p,q}
// for q = 0..d
std::vector<int> tropical_cohomology(const CoefficientTable& table, const ChainStructure& s,
                                     int p);
DimensionTable hcoh_table(const CoefficientTable& table);

struct IcComplex {
    std::vector<int> dims;                  // dim IC_{p,q}
    std::vector<QMat> allowed;              // rows span A_q inside C_q
    std::vector<QMat> ic_basis;             // rows span IC_q inside C_q
    std::vector<QMat> bnd;                  // IC_q -> IC_{q-1} in the IC bases

    std::vector<int> homology_dims() const;
};

// allowable chains with allowable boundary
IcComplex ic_complex(const CoefficientTable& table, const ChainStructure& s, int p);

// cohomological table: entry (p,q) is dim IH_{d-p,d-q}
DimensionTable ih_table(const CoefficientTable& table, const ChainStructure& s);
DimensionTable ih_table(const CompactifiedCellComplex& x, Structure s = Structure::barycentric);

struct FundamentalClass {
    QVec chain;                             // element of C_{d,d} (native structure)
    bool closed = false;
    bool allowable = false;
};

// Σ_P w_P 1_{Λ^d Tan_Z P} [P] with the orientation generators of the cells
FundamentalClass fundamental_class(const CompactifiedCellComplex& x);

struct CheckLine {
    std::string name;
    bool pass = false;
    std::string details;
};

// dim IH^{p,q} == dim IH^{d-p,d-q} everywhere
std::vector<CheckLine> verify_duality(const CompactifiedCellComplex& x);

// native cubical structure against the barycentric subdivision, strata held
// fixed at the native cells
std::vector<CheckLine> verify_subdivision(const CompactifiedCellComplex& x);

// parallelism cap, from TRIH_THREADS (default 1)
int thread_budget();

}  // namespace trih

#endif
