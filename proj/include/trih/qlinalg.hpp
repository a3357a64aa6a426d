// Exact rational and integer linear algebra kernel.
//
// Everything here is pure and immutable after construction: matrices are
// dense row-major over arbitrary-precision rationals, subspaces are stored
// in reduced row echelon form so that equality of subspaces is equality of
// representations, and quotient spaces carry an explicit section (lift).

#ifndef TRIH_QLINALG_HPP
#define TRIH_QLINALG_HPP

#include <boost/multiprecision/gmp.hpp>

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace trih {

using Integer = boost::multiprecision::mpz_int;
// Always in lowest terms with positive denominator (GMP canonical form),
// so equality is structural.
using Rational = boost::multiprecision::mpq_rational;

using IVec = std::vector<Integer>;
using QVec = std::vector<Rational>;

// Dense rational matrix, row-major.
class QMat {
public:
    QMat() = default;
    QMat(int rows, int cols) : rows_(rows), cols_(cols), a_((size_t)rows * cols) {}

    static QMat identity(int n);
    static QMat from_rows(const std::vector<QVec>& rows, int cols);

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    Rational& at(int i, int j) { return a_[(size_t)i * cols_ + j]; }
    const Rational& at(int i, int j) const { return a_[(size_t)i * cols_ + j]; }

    QVec row(int i) const;
    QMat transpose() const;
    QMat mul(const QMat& other) const;
    QVec apply(const QVec& v) const;           // matrix * column vector
    QMat vstack(const QMat& below) const;

    bool operator==(const QMat& other) const = default;

private:
    int rows_ = 0, cols_ = 0;
    std::vector<Rational> a_;
};

struct RrefResult {
    QMat mat;
    std::vector<int> pivots;   // strictly increasing pivot column indices
};

// Unique reduced row echelon form; pivoting by first nonzero column.
RrefResult rref(const QMat& m);
int rank(const QMat& m);

// A linear subspace of Q^ambient_dim; basis rows are the RREF of any
// spanning set, which makes the representation canonical.
class Subspace {
public:
    Subspace() = default;
    static Subspace zero(int ambient_dim);
    static Subspace full(int ambient_dim);
    static Subspace span(const QMat& rows);    // rows need not be independent

    int ambient_dim() const { return ambient_dim_; }
    int dim() const { return basis_.rows(); }
    const QMat& basis() const { return basis_; }

    bool contains(const QVec& v) const;
    bool contains(const Subspace& other) const;
    bool operator==(const Subspace& other) const = default;

private:
    int ambient_dim_ = 0;
    QMat basis_;   // dim() x ambient_dim(), in RREF, no zero rows
};

// Rows of the result span {x : m x = 0}; dim = cols - rank.
Subspace kernel_basis(const QMat& m);

// (sum, intersection); throws on ambient dimension mismatch.
std::pair<Subspace, Subspace> sum_intersect(const Subspace& a, const Subspace& b);

// One solution x of m x = b, or nullopt if inconsistent.
std::optional<QVec> solve(const QMat& m, const QVec& b);

// Presentation of ambient/killed with explicit project and lift.
// project(lift(c)) == c and lift(project(v)) - v lies in killed.
class QuotientSpace {
public:
    QuotientSpace() = default;
    QuotientSpace(Subspace ambient, Subspace killed);

    int dim() const { return reps_.rows(); }
    int space_dim() const { return ambient_.ambient_dim(); }
    const Subspace& ambient() const { return ambient_; }
    const Subspace& killed() const { return killed_; }
    const QMat& reps() const { return reps_; }   // dim() rows, lifts of the basis

    QVec project(const QVec& v) const;   // v must lie in ambient
    QVec lift(const QVec& coords) const;

private:
    Subspace ambient_, killed_;
    QMat reps_;        // chosen complement rows: killed ⊕ span(reps) = ambient
    QMat proj_;        // dim() x space_dim(): project(v) = proj_ * v on ambient
};

// ---- integer lattice helpers ----

// v / gcd(entries); throws on the zero vector.
IVec primitive_vector(const IVec& v);
Integer content(const IVec& v);

// True iff the rays extend to a Z-basis of the lattice: the Smith normal
// form of the ray matrix has full row rank with all invariant factors 1.
bool is_unimodular(const std::vector<IVec>& rays);

// Invariant factors of an integer matrix (Smith normal form diagonal,
// without transform matrices).
std::vector<Integer> smith_invariants(std::vector<IVec> m, int cols);

// Z-basis of {x in Z^cols : m x = 0}. Kernels of integer matrices are
// saturated, so this is a basis of the full kernel lattice.
std::vector<IVec> lattice_kernel_basis(const std::vector<IVec>& m, int cols);

// ---- small conversions ----

QVec to_rational(const IVec& v);

// Canonical "n" or "n/d" rendering.
std::string to_string(const Rational& r);

}  // namespace trih

#endif
