#include "trih/qlinalg.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace trih {

QMat QMat::identity(int n) {
    QMat m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

QMat QMat::from_rows(const std::vector<QVec>& rows, int cols) {
    QMat m((int)rows.size(), cols);
    for (int i = 0; i < (int)rows.size(); ++i) {
        if ((int)rows[i].size() != cols) throw std::invalid_argument("row length mismatch");
        for (int j = 0; j < cols; ++j) m.at(i, j) = rows[i][j];
    }
    return m;
}

QVec QMat::row(int i) const {
    QVec r(cols_);
    for (int j = 0; j < cols_; ++j) r[j] = at(i, j);
    return r;
}

QMat QMat::transpose() const {
    QMat t(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
    return t;
}

QMat QMat::mul(const QMat& other) const {
    if (cols_ != other.rows()) throw std::invalid_argument("mul: dimension mismatch");
    QMat r(rows_, other.cols());
    for (int i = 0; i < rows_; ++i)
        for (int k = 0; k < cols_; ++k) {
            if (at(i, k) == 0) continue;
            for (int j = 0; j < other.cols(); ++j) {
                if (other.at(k, j) == 0) continue;
                r.at(i, j) += at(i, k) * other.at(k, j);
            }
        }
    return r;
}

QVec QMat::apply(const QVec& v) const {
    if ((int)v.size() != cols_) throw std::invalid_argument("apply: dimension mismatch");
    QVec r(rows_);
    for (int i = 0; i < rows_; ++i) {
        Rational s = 0;
        for (int j = 0; j < cols_; ++j)
            if (at(i, j) != 0 && v[j] != 0) s += at(i, j) * v[j];
        r[i] = s;
    }
    return r;
}

QMat QMat::vstack(const QMat& below) const {
    if (rows_ == 0) return below;
    if (below.rows() == 0) return *this;
    if (cols_ != below.cols()) throw std::invalid_argument("vstack: width mismatch");
    QMat r(rows_ + below.rows(), cols_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) r.at(i, j) = at(i, j);
    for (int i = 0; i < below.rows(); ++i)
        for (int j = 0; j < cols_; ++j) r.at(rows_ + i, j) = below.at(i, j);
    return r;
}

RrefResult rref(const QMat& m) {
    QMat a = m;
    std::vector<int> pivots;
    int r = 0;
    for (int c = 0; c < a.cols() && r < a.rows(); ++c) {
        int pr = -1;
        for (int i = r; i < a.rows(); ++i)
            if (a.at(i, c) != 0) { pr = i; break; }
        if (pr < 0) continue;
        if (pr != r)
            for (int j = 0; j < a.cols(); ++j) std::swap(a.at(pr, j), a.at(r, j));
        Rational inv = a.at(r, c);
        for (int j = c; j < a.cols(); ++j) a.at(r, j) /= inv;
        for (int i = 0; i < a.rows(); ++i) {
            if (i == r || a.at(i, c) == 0) continue;
            Rational f = a.at(i, c);
            for (int j = c; j < a.cols(); ++j) a.at(i, j) -= f * a.at(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    return {std::move(a), std::move(pivots)};
}

int rank(const QMat& m) { return (int)rref(m).pivots.size(); }

Subspace Subspace::zero(int ambient_dim) {
    Subspace s;
    s.ambient_dim_ = ambient_dim;
    s.basis_ = QMat(0, ambient_dim);
    return s;
}

Subspace Subspace::full(int ambient_dim) {
    Subspace s;
    s.ambient_dim_ = ambient_dim;
    s.basis_ = QMat::identity(ambient_dim);
    return s;
}

Subspace Subspace::span(const QMat& rows) {
    Subspace s;
    s.ambient_dim_ = rows.cols();
    RrefResult r = rref(rows);
    QMat b((int)r.pivots.size(), rows.cols());
    for (int i = 0; i < (int)r.pivots.size(); ++i)
        for (int j = 0; j < rows.cols(); ++j) b.at(i, j) = r.mat.at(i, j);
    s.basis_ = std::move(b);
    return s;
}

bool Subspace::contains(const QVec& v) const {
    if ((int)v.size() != ambient_dim_) throw std::invalid_argument("contains: dimension mismatch");
    // reduce v against the RREF basis
    QVec w = v;
    for (int i = 0; i < basis_.rows(); ++i) {
        int pc = -1;
        for (int j = 0; j < ambient_dim_; ++j)
            if (basis_.at(i, j) != 0) { pc = j; break; }
        if (pc < 0) continue;
        if (w[pc] == 0) continue;
        Rational f = w[pc];   // pivot is 1
        for (int j = 0; j < ambient_dim_; ++j) w[j] -= f * basis_.at(i, j);
    }
    for (const Rational& x : w)
        if (x != 0) return false;
    return true;
}

bool Subspace::contains(const Subspace& other) const {
    for (int i = 0; i < other.basis_.rows(); ++i)
        if (!contains(other.basis_.row(i))) return false;
    return true;
}

Subspace kernel_basis(const QMat& m) {
    RrefResult r = rref(m);
    int n = m.cols();
    std::vector<bool> is_pivot(n, false);
    for (int p : r.pivots) is_pivot[p] = true;
    std::vector<QVec> rows;
    for (int c = 0; c < n; ++c) {
        if (is_pivot[c]) continue;
        QVec v(n, Rational(0));
        v[c] = 1;
        for (int i = 0; i < (int)r.pivots.size(); ++i)
            v[r.pivots[i]] = -r.mat.at(i, c);
        rows.push_back(std::move(v));
    }
    return Subspace::span(QMat::from_rows(rows, n));
}

std::pair<Subspace, Subspace> sum_intersect(const Subspace& a, const Subspace& b) {
    if (a.ambient_dim() != b.ambient_dim())
        throw std::invalid_argument("sum_intersect: ambient dimension mismatch");
    Subspace sum = Subspace::span(a.basis().vstack(b.basis()));
    // Zassenhaus: kernel of [A^T | B^T] gives intersection coefficients.
    int da = a.dim(), db = b.dim(), n = a.ambient_dim();
    QMat stacked(n, da + db);
    for (int j = 0; j < da; ++j)
        for (int i = 0; i < n; ++i) stacked.at(i, j) = a.basis().at(j, i);
    for (int j = 0; j < db; ++j)
        for (int i = 0; i < n; ++i) stacked.at(i, da + j) = -b.basis().at(j, i);
    Subspace ker = kernel_basis(stacked);
    std::vector<QVec> rows;
    for (int i = 0; i < ker.dim(); ++i) {
        QVec v(n, Rational(0));
        for (int j = 0; j < da; ++j) {
            const Rational& c = ker.basis().at(i, j);
            if (c == 0) continue;
            for (int k = 0; k < n; ++k) v[k] += c * a.basis().at(j, k);
        }
        rows.push_back(std::move(v));
    }
    Subspace inter = Subspace::span(QMat::from_rows(rows, n));
    return {sum, inter};
}

std::optional<QVec> solve(const QMat& m, const QVec& b) {
    if ((int)b.size() != m.rows()) throw std::invalid_argument("solve: dimension mismatch");
    QMat aug(m.rows(), m.cols() + 1);
    for (int i = 0; i < m.rows(); ++i) {
        for (int j = 0; j < m.cols(); ++j) aug.at(i, j) = m.at(i, j);
        aug.at(i, m.cols()) = b[i];
    }
    RrefResult r = rref(aug);
    for (int p : r.pivots)
        if (p == m.cols()) return std::nullopt;   // inconsistent
    QVec x(m.cols(), Rational(0));
    for (int i = 0; i < (int)r.pivots.size(); ++i)
        x[r.pivots[i]] = r.mat.at(i, m.cols());
    return x;
}

QuotientSpace::QuotientSpace(Subspace ambient, Subspace killed)
    : ambient_(std::move(ambient)), killed_(std::move(killed)) {
    if (!ambient_.contains(killed_))
        throw std::invalid_argument("QuotientSpace: killed not contained in ambient");
    // Complement: ambient basis rows whose pivots are not pivots of killed.
    std::vector<QVec> comp;
    {
        RrefResult kr = rref(killed_.basis());
        std::vector<bool> kp(ambient_.ambient_dim(), false);
        for (int p : kr.pivots) kp[p] = true;
        // reduce ambient basis rows against killed, keep independent remainders
        QMat work = killed_.basis();
        for (int i = 0; i < ambient_.basis().rows(); ++i) {
            QMat trial = work.vstack(QMat::from_rows({ambient_.basis().row(i)}, ambient_.ambient_dim()));
            if (rank(trial) > work.rows()) {
                comp.push_back(ambient_.basis().row(i));
                work = Subspace::span(trial).basis();
            }
        }
    }
    reps_ = QMat::from_rows(comp, ambient_.ambient_dim());
    if (reps_.rows() != ambient_.dim() - killed_.dim())
        throw std::logic_error("QuotientSpace: complement dimension mismatch");
    // precompute the projection matrix: extend (killed | reps) by unit rows
    // to a basis of the full space, invert, and keep the reps coordinates
    int n = ambient_.ambient_dim();
    QMat square = killed_.basis().vstack(reps_);
    if (square.rows() < n) {
        QMat work = Subspace::span(square).basis();
        std::vector<QVec> extra;
        for (int j = 0; j < n && square.rows() + (int)extra.size() < n; ++j) {
            QVec unit(n, Rational(0));
            unit[j] = 1;
            QMat trial = work.vstack(QMat::from_rows({unit}, n));
            if (rank(trial) > work.rows()) {
                extra.push_back(unit);
                work = Subspace::span(trial).basis();
            }
        }
        square = square.vstack(QMat::from_rows(extra, n));
    }
    if (square.rows() != n) throw std::logic_error("QuotientSpace: basis completion failed");
    // invert square^T: rref of [square^T | I]
    QMat aug(n, 2 * n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) aug.at(i, j) = square.at(j, i);
        aug.at(i, n + i) = 1;
    }
    RrefResult r = rref(aug);
    proj_ = QMat(reps_.rows(), n);
    for (int i = 0; i < reps_.rows(); ++i)
        for (int j = 0; j < n; ++j) proj_.at(i, j) = r.mat.at(killed_.dim() + i, n + j);
}

QVec QuotientSpace::project(const QVec& v) const {
    if (ambient_.dim() < ambient_.ambient_dim() && !ambient_.contains(v))
        throw std::invalid_argument("QuotientSpace::project: vector outside ambient");
    return proj_.apply(v);
}

QVec QuotientSpace::lift(const QVec& coords) const {
    if ((int)coords.size() != reps_.rows())
        throw std::invalid_argument("QuotientSpace::lift: bad coordinate length");
    QVec v(space_dim(), Rational(0));
    for (int i = 0; i < reps_.rows(); ++i) {
        if (coords[i] == 0) continue;
        for (int j = 0; j < space_dim(); ++j) v[j] += coords[i] * reps_.at(i, j);
    }
    return v;
}

Integer content(const IVec& v) {
    Integer g = 0;
    for (const Integer& x : v) g = boost::multiprecision::gcd(g, x);
    return g;
}

IVec primitive_vector(const IVec& v) {
    Integer g = content(v);
    if (g == 0) throw std::invalid_argument("primitive_vector: zero vector");
    IVec r(v.size());
    for (size_t i = 0; i < v.size(); ++i) r[i] = v[i] / g;
    return r;
}

std::vector<Integer> smith_invariants(std::vector<IVec> m, int cols) {
    int rows = (int)m.size();
    std::vector<Integer> inv;
    int top = 0, left = 0;
    while (top < rows && left < cols) {
        // find a nonzero entry of minimal absolute value in the working block
        int pr = -1, pc = -1;
        Integer best = 0;
        for (int i = top; i < rows; ++i)
            for (int j = left; j < cols; ++j) {
                if (m[i][j] == 0) continue;
                Integer a = abs(m[i][j]);
                if (pr < 0 || a < best) { best = a; pr = i; pc = j; }
            }
        if (pr < 0) break;
        std::swap(m[top], m[pr]);
        if (pc != left)
            for (int i = 0; i < rows; ++i) std::swap(m[i][pc], m[i][left]);
        bool clean = false;
        while (!clean) {
            clean = true;
            for (int i = top + 1; i < rows; ++i) {
                if (m[i][left] == 0) continue;
                Integer q = m[i][left] / m[top][left];
                for (int j = left; j < cols; ++j) m[i][j] -= q * m[top][j];
                if (m[i][left] != 0) {
                    std::swap(m[top], m[i]);
                    clean = false;
                }
            }
            for (int j = left + 1; j < cols; ++j) {
                if (m[top][j] == 0) continue;
                Integer q = m[top][j] / m[top][left];
                for (int i = top; i < rows; ++i) m[i][j] -= q * m[i][left];
                if (m[top][j] != 0) {
                    for (int i = 0; i < rows; ++i) std::swap(m[i][j], m[i][left]);
                    clean = false;
                }
            }
        }
        inv.push_back(abs(m[top][left]));
        ++top;
        ++left;
    }
    // normalize to a divisibility chain
    for (size_t i = 0; i < inv.size(); ++i)
        for (size_t j = i + 1; j < inv.size(); ++j) {
            Integer g = boost::multiprecision::gcd(inv[i], inv[j]);
            if (g == 0) continue;
            Integer l = inv[i] / g * inv[j];
            inv[i] = g;
            inv[j] = l;
        }
    return inv;
}

bool is_unimodular(const std::vector<IVec>& rays) {
    if (rays.empty()) throw std::invalid_argument("is_unimodular: no rays");
    int cols = (int)rays[0].size();
    std::vector<Integer> inv = smith_invariants(rays, cols);
    if ((int)inv.size() != (int)rays.size()) return false;   // not full row rank
    for (const Integer& d : inv)
        if (d != 1) return false;
    return true;
}

std::vector<IVec> lattice_kernel_basis(const std::vector<IVec>& m, int cols) {
    // Column reduction m U = H with U unimodular; kernel basis = columns of U
    // under zero columns of H.
    std::vector<IVec> h = m;
    if (h.empty()) h.push_back(IVec(cols, 0));   // treat empty matrix as one zero row
    int hrows = (int)h.size();
    std::vector<IVec> u(cols, IVec(cols, 0));
    for (int j = 0; j < cols; ++j) u[j][j] = 1;   // u[j] = column j as a vector

    auto col_is_zero = [&](int j) {
        for (int i = 0; i < hrows; ++i)
            if (h[i][j] != 0) return false;
        return true;
    };

    int lead = 0;
    for (int r = 0; r < hrows && lead < cols; ++r) {
        while (true) {
            int pc = -1;
            Integer best = 0;
            for (int j = lead; j < cols; ++j) {
                if (h[r][j] == 0) continue;
                Integer a = abs(h[r][j]);
                if (pc < 0 || a < best) { best = a; pc = j; }
            }
            if (pc < 0) break;
            if (pc != lead) {
                for (int i = 0; i < hrows; ++i) std::swap(h[i][pc], h[i][lead]);
                std::swap(u[pc], u[lead]);
            }
            bool reduced = true;
            for (int j = lead + 1; j < cols; ++j) {
                if (h[r][j] == 0) continue;
                Integer q = h[r][j] / h[r][lead];
                for (int i = 0; i < hrows; ++i) h[i][j] -= q * h[i][lead];
                for (int k = 0; k < cols; ++k) u[j][k] -= q * u[lead][k];
                if (h[r][j] != 0) reduced = false;
            }
            if (reduced) break;
        }
        if (h[r][lead] != 0) ++lead;
    }
    std::vector<IVec> ker;
    for (int j = 0; j < cols; ++j)
        if (col_is_zero(j)) ker.push_back(u[j]);
    return ker;
}

QVec to_rational(const IVec& v) {
    QVec r(v.size());
    for (size_t i = 0; i < v.size(); ++i) r[i] = Rational(v[i]);
    return r;
}


std::string to_string(const Rational& r) {
    std::ostringstream os;
    os << numerator(r);
    if (denominator(r) != 1) os << "/" << denominator(r);
    return os.str();
}

}  // namespace trih
