// Unimodular simplicial fans, tropical fan cycles and Minkowski weights.
//
// Cones are stored as sorted ray-index sets. Because every cone is
// simplicial, the face lattice is exactly the family of subsets of the
// maximal ray sets, which build_fan generates and dedups. Fans are
// immutable after construction.

#ifndef TRIH_FANS_HPP
#define TRIH_FANS_HPP

#include "trih/qlinalg.hpp"

#include <map>
#include <string>
#include <vector>

namespace trih {

using ConeKey = std::vector<int>;   // sorted ray indices

class Fan {
public:
    int rank = 0;                          // lattice rank n
    std::vector<IVec> rays;                // primitive, pairwise distinct
    std::vector<ConeKey> cones;            // all cones incl. {}, sorted by (dim, lex)
    std::vector<int> maximal;              // indices into cones

    int cone_index(const ConeKey& c) const;       // -1 if absent
    int dim(int cone) const { return (int)cones[cone].size(); }
    int dimension() const;                        // max cone dim
    std::vector<int> cones_of_dim(int k) const;
    bool has_cone(const ConeKey& c) const { return cone_index(c) >= 0; }
    std::string cone_name(int cone) const;        // "{r0,r2}" for output

    // rays of the cone as rational row vectors (a lattice basis of its span)
    QMat ray_matrix(int cone) const;
};

// Face closure + combinatorial fan axioms + unimodularity. Throws
// std::invalid_argument with a message on invalid input.
Fan build_fan(int rank, const std::vector<IVec>& rays,
              const std::vector<ConeKey>& maximal_cones);

// Exact geometric certification cone(A) ∩ cone(B) = cone(A ∩ B) via
// Fourier–Motzkin feasibility; intended for rank <= 6.
void check_fan_geometric(const Fan& f);

struct MinkowskiWeight {
    int k = 0;                              // cone dimension carrying weights
    std::map<int, Integer> weights;         // cone index -> weight (zeros allowed)
};

struct TropicalFanCycle {
    Fan fan;                                // pure of dimension dim
    int dim = 0;
    std::map<int, Integer> weights;         // maximal cone index -> positive weight

    MinkowskiWeight as_minkowski_weight() const;
};

struct BalanceReport {
    bool balanced = true;
    std::vector<int> violations;            // offending (k-1)-cone indices
};

// Balancing at every (k-1)-cone: sum of weighted primitive normal vectors
// lies in the tangent lattice of the cone.
BalanceReport is_balanced(const Fan& fan, const MinkowskiWeight& w);
BalanceReport is_balanced(const TropicalFanCycle& c);

// Validates purity, weight positivity and balancing; throws on failure.
TropicalFanCycle make_cycle(Fan fan, std::map<int, Integer> weights);

struct StarFan {
    Fan fan;                                // fan in N / span(sigma)
    std::vector<IVec> projection;           // (n-k) x n integer matrix rows
    std::map<int, int> cone_map;            // old cone index (⊇ sigma) -> new cone index
};

// Star fan at a cone: images of the cones containing it in the quotient
// lattice, rays re-primitivized.
StarFan star_fan(const Fan& f, int cone);

// Stellar subdivision at a primitive ray in the relative interior of some
// cone; weights are inherited from parents.
TropicalFanCycle stellar_subdivision(const TropicalFanCycle& c, const IVec& new_ray);

TropicalFanCycle product(const TropicalFanCycle& a, const TropicalFanCycle& b);

// Cycle of dimension d - dim(sigma) in N/span(sigma).
TropicalFanCycle restrict_to_stratum(const TropicalFanCycle& c, int cone);

// True iff |support| = R^n: pure n-dimensional and every (n-1)-cone is a
// facet of exactly two maximal cones (valid for geometrically consistent
// fans, which build_fan assumes).
bool is_complete(const Fan& f);

// Membership of a rational point in the support of the cycle's fan.
bool support_contains(const Fan& f, const QVec& point);

}  // namespace trih

#endif
