// Canonical compactification of a tropical fan cycle as a finite regular
// cell complex.
//
// Cells are cone pairs (tau, sigma) with tau a face of sigma: the closure of
// the image of sigma in the boundary stratum of sedentarity tau. Each closed
// cell is combinatorially a cube of dimension dim sigma - dim tau whose free
// directions are the rays of sigma not in tau, kept in global ray-index
// order; that ordered list is the cell's orientation. The boundary of a cell
// is sum_i (-1)^i (face with i-th free ray sent to infinity - face with i-th
// free ray sent to 0).

#ifndef TRIH_COMPACTIFIED_HPP
#define TRIH_COMPACTIFIED_HPP

#include "trih/fans.hpp"

#include <map>
#include <utility>
#include <vector>

namespace trih {

struct CCell {
    int tau = 0;     // sedentarity cone (index into fan.cones)
    int sigma = 0;   // tau is a face of sigma
};

class CompactifiedCellComplex {
public:
    TropicalFanCycle cycle;
    std::vector<CCell> cells;                        // sorted by (dim, tau, sigma)
    std::map<std::pair<int, int>, int> index;        // (tau, sigma) -> cell id
    int origin_cone = -1;                            // index of {} in fan.cones

    int d() const { return cycle.dim; }
    int dim(int cell) const;
    std::vector<int> cells_of_dim(int q) const;
    std::vector<int> free_rays(int cell) const;      // sigma(1) \ tau(1), sorted

    // tau = 0 and dim >= d-1 (the strata where the coefficient systems are
    // plain); everything else plays the role of singular strata
    bool is_smooth(int cell) const;
    std::vector<int> singular_cells() const;

    bool is_face(int a, int b) const;                // a is a face of b
    // signed codimension-one faces, cubical convention
    std::vector<std::pair<int, int>> boundary(int cell) const;
    // all faces of the closed cell, including itself
    std::vector<int> closed_faces(int cell) const;

    // smooth d-cells P with `cell` a face of P, increasing cell id
    std::vector<int> tops_containing(int cell) const;
    Integer weight(int top_cell) const;

    std::string cell_name(int cell) const;           // "(tau|sigma)"
};

CompactifiedCellComplex canonical_compactification(const TropicalFanCycle& c);

// Structural regularity-at-infinity check: every cell has its full cube of
// faces present (3^k of them) and lies under a mobile (sedentarity-0) cell.
// True for every canonical compactification; false for hand-damaged input.
bool is_regular_at_infinity(const CompactifiedCellComplex& x);

// Cells are pairs of cells; agrees with canonical_compactification of the
// product cycle cell-for-cell, which the construction asserts.
CompactifiedCellComplex product_complex(const CompactifiedCellComplex& a,
                                        const CompactifiedCellComplex& b);

// A cell structure supporting (p,q)-chains: either the native cubical cells
// or the simplices of the barycentric subdivision (chains in the face
// poset). `carrier` is the native cell whose relative interior contains the
// chain cell's interior; `strata` lists the singular native cells S whose
// relative interior the closed chain cell meets, with
// k = dim(cell ∩ rel.int S).
struct ChainCell {
    int carrier = -1;
    std::vector<std::pair<int, int>> faces;    // (chain-cell id in dim q-1, sign)
    std::vector<std::pair<int, int>> strata;   // (native singular cell S, k)
    std::vector<int> poset_chain;              // barycentric only: the flag
};

struct ChainStructure {
    const CompactifiedCellComplex* x = nullptr;
    bool barycentric = false;
    std::vector<std::vector<ChainCell>> by_q;  // q = 0..d

    int num_cells(int q) const {
        return (q < 0 || q >= (int)by_q.size()) ? 0 : (int)by_q[q].size();
    }
    long euler_characteristic() const;
};

ChainStructure native_structure(const CompactifiedCellComplex& x);

// Order complex of the face poset; simplices are flags C_0 < ... < C_q with
// carrier the top of the flag.
ChainStructure barycentric_subdivision(const CompactifiedCellComplex& x);

// Barycentric subdivision of the barycentric subdivision: flags of flags.
// Used to confirm that the IH tables have stabilized after one refinement.
ChainStructure second_barycentric_subdivision(const CompactifiedCellComplex& x);

}  // namespace trih

#endif
