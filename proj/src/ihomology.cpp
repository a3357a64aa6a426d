#include "trih/ihomology.hpp"

#include <algorithm>
#include <cstdlib>
#include <future>
#include <sstream>
#include <stdexcept>

namespace trih {

namespace {

bool is_zero(const QMat& m) {
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j)
            if (m.at(i, j) != 0) return false;
    return true;
}

}  // namespace

int thread_budget() {
    const char* env = std::getenv("TRIH_THREADS");
    if (!env) return 1;
    int n = std::atoi(env);
    return n < 1 ? 1 : n;
}

std::vector<int> ChainComplexQ::homology_dims() const {
    int top = (int)dims.size() - 1;
    std::vector<int> h(top + 1, 0);
    std::vector<int> rk(top + 2, 0);
    for (int q = 1; q <= top; ++q) rk[q] = rank(bnd[q]);
    for (int q = 0; q <= top; ++q) h[q] = dims[q] - rk[q] - rk[q + 1];
    return h;
}

ChainStructure make_structure(const CompactifiedCellComplex& x, Structure s) {
    return s == Structure::native ? native_structure(x) : barycentric_subdivision(x);
}

ChainComplexQ chain_complex(const CoefficientTable& table, const ChainStructure& s, int p) {
    const CompactifiedCellComplex& x = table.complex();
    int d = x.d();
    ChainComplexQ cc;
    cc.dims.assign(d + 1, 0);
    cc.labels.resize(d + 1);
    std::vector<std::vector<int>> offset(d + 1);
    for (int q = 0; q <= d; ++q) {
        for (int i = 0; i < s.num_cells(q); ++i) {
            offset[q].push_back(cc.dims[q]);
            int fdim = table.f_pw(s.by_q[q][i].carrier, p).dim();
            for (int c = 0; c < fdim; ++c) cc.labels[q].push_back(i);
            cc.dims[q] += fdim;
        }
    }
    cc.bnd.resize(d + 1);
    for (int q = 1; q <= d; ++q) {
        QMat m(cc.dims[q - 1], cc.dims[q]);
        for (int i = 0; i < s.num_cells(q); ++i) {
            const ChainCell& cell = s.by_q[q][i];
            int src = cell.carrier;
            int nsrc = table.f_pw(src, p).dim();
            for (auto [fi, sign] : cell.faces) {
                int dst = s.by_q[q - 1][fi].carrier;
                if (dst == src) {
                    for (int c = 0; c < nsrc; ++c)
                        m.at(offset[q - 1][fi] + c, offset[q][i] + c) += Rational(sign);
                } else {
                    const QMat& io = table.iota(p, src, dst);
                    for (int r = 0; r < io.rows(); ++r)
                        for (int c = 0; c < nsrc; ++c) {
                            if (io.at(r, c) == 0) continue;
                            m.at(offset[q - 1][fi] + r, offset[q][i] + c) +=
                                Rational(sign) * io.at(r, c);
                        }
                }
            }
        }
        cc.bnd[q] = std::move(m);
    }
    for (int q = 2; q <= d; ++q)
        if (!is_zero(cc.bnd[q - 1].mul(cc.bnd[q])))
            throw std::logic_error("chain_complex: boundary squared is nonzero");
    return cc;
}

std::vector<int> tropical_cohomology(const CoefficientTable& table, const ChainStructure& s,
                                     int p) {
    const CompactifiedCellComplex& x = table.complex();
    int d = x.d();
    std::vector<int> dims(d + 1, 0);
    std::vector<std::vector<int>> offset(d + 1);
    for (int q = 0; q <= d; ++q)
        for (int i = 0; i < s.num_cells(q); ++i) {
            offset[q].push_back(dims[q]);
            dims[q] += table.f_ikmz(s.by_q[q][i].carrier, p).dim();
        }
    // delta^q : C^q -> C^{q+1}, assembled from the face maps upward
    std::vector<QMat> delta(d + 1);
    for (int q = 1; q <= d; ++q) {
        QMat m(dims[q], dims[q - 1]);
        for (int i = 0; i < s.num_cells(q); ++i) {
            const ChainCell& cell = s.by_q[q][i];
            for (auto [fi, sign] : cell.faces) {
                int src = s.by_q[q - 1][fi].carrier;
                if (src == cell.carrier) {
                    int n = table.f_ikmz(src, p).dim();
                    for (int c = 0; c < n; ++c)
                        m.at(offset[q][i] + c, offset[q - 1][fi] + c) += Rational(sign);
                } else {
                    QMat io = table.ikmz_map(p, src, cell.carrier);
                    for (int r = 0; r < io.rows(); ++r)
                        for (int c = 0; c < io.cols(); ++c) {
                            if (io.at(r, c) == 0) continue;
                            m.at(offset[q][i] + r, offset[q - 1][fi] + c) +=
                                Rational(sign) * io.at(r, c);
                        }
                }
            }
        }
        delta[q] = std::move(m);
    }
    for (int q = 2; q <= d; ++q)
        if (!is_zero(delta[q].mul(delta[q - 1])))
            throw std::logic_error("tropical_cohomology: differential squared is nonzero");
    std::vector<int> h(d + 1, 0);
    std::vector<int> rk(d + 2, 0);
    for (int q = 1; q <= d; ++q) rk[q] = rank(delta[q]);
    for (int q = 0; q <= d; ++q) h[q] = dims[q] - rk[q] - rk[q + 1];
    return h;
}

DimensionTable hcoh_table(const CoefficientTable& table) {
    const CompactifiedCellComplex& x = table.complex();
    ChainStructure s = native_structure(x);
    DimensionTable t(x.d());
    for (int p = 0; p <= x.d(); ++p) {
        std::vector<int> h = tropical_cohomology(table, s, p);
        for (int q = 0; q <= x.d(); ++q) t.set(p, q, h[q]);
    }
    return t;
}

std::vector<int> IcComplex::homology_dims() const {
    int top = (int)dims.size() - 1;
    std::vector<int> h(top + 1, 0);
    std::vector<int> rk(top + 2, 0);
    for (int q = 1; q <= top; ++q) rk[q] = rank(bnd[q]);
    for (int q = 0; q <= top; ++q) h[q] = dims[q] - rk[q] - rk[q + 1];
    return h;
}

IcComplex ic_complex(const CoefficientTable& table, const ChainStructure& s, int p) {
    // Everything here is block-sparse: A_q is a direct sum of per-cell
    // allowed subspaces, and the boundary couples a cell only to its faces.
    // The computation stays in per-cell "allowed coordinates" so that no
    // large dense product is ever formed.
    const CompactifiedCellComplex& x = table.complex();
    int d = x.d();

    IcComplex ic;
    ic.allowed.resize(d + 1);
    ic.ic_basis.resize(d + 1);
    ic.bnd.resize(d + 1);
    ic.dims.assign(d + 1, 0);

    // per-cell allowed bases (rows, in F(carrier) coordinates) and their
    // in-block annihilators
    std::vector<std::vector<QMat>> allowed_cell(d + 1), ann_cell(d + 1);
    std::vector<std::vector<int>> fdim(d + 1), foff(d + 1), aoff(d + 1);
    std::vector<int> adim(d + 1, 0), cdim(d + 1, 0);
    for (int q = 0; q <= d; ++q) {
        for (int i = 0; i < s.num_cells(q); ++i) {
            const ChainCell& cell = s.by_q[q][i];
            const CoefSpace& f = table.f_pw(cell.carrier, p);
            Subspace ok = Subspace::full(f.dim());
            for (auto [scell, k] : cell.strata) {
                std::vector<QVec> cols;
                for (int slot = 0; slot < (int)f.tops.size(); ++slot) {
                    Subspace va = allowed_subspace(x, f.tops[slot], scell, p, q, k);
                    for (int r = 0; r < va.dim(); ++r) {
                        QVec big(f.tops.size() * f.block_dim, Rational(0));
                        for (int c = 0; c < f.block_dim; ++c)
                            big[slot * f.block_dim + c] = va.basis().at(r, c);
                        cols.push_back(f.space.project(big));
                    }
                }
                Subspace pushed = Subspace::span(QMat::from_rows(cols, f.dim()));
                ok = sum_intersect(ok, pushed).second;
                if (ok.dim() == 0) break;
            }
            foff[q].push_back(cdim[q]);
            aoff[q].push_back(adim[q]);
            cdim[q] += f.dim();
            adim[q] += ok.dim();
            ann_cell[q].push_back(kernel_basis(ok.basis()).basis());
            allowed_cell[q].push_back(ok.basis());
        }
        // expose A_q in chain coordinates (block placement, no products)
        QMat a(adim[q], cdim[q]);
        for (int i = 0; i < s.num_cells(q); ++i)
            for (int r = 0; r < allowed_cell[q][i].rows(); ++r)
                for (int c = 0; c < allowed_cell[q][i].cols(); ++c)
                    a.at(aoff[q][i] + r, foff[q][i] + c) = allowed_cell[q][i].at(r, c);
        ic.allowed[q] = std::move(a);
    }

    // boundary of one allowed basis vector of cell i in degree q, expressed
    // per (q-1)-cell in F coordinates
    auto boundary_blocks = [&](int q, int i, const QVec& fvec) {
        std::map<int, QVec> out;   // (q-1)-cell index -> F-coordinates
        const ChainCell& cell = s.by_q[q][i];
        for (auto [fi, sign] : cell.faces) {
            int src = cell.carrier;
            int dst = s.by_q[q - 1][fi].carrier;
            QVec w = (dst == src) ? fvec : table.iota(p, src, dst).apply(fvec);
            auto it = out.find(fi);
            if (it == out.end()) {
                for (auto& v : w) v *= sign;
                out.emplace(fi, std::move(w));
            } else {
                for (size_t c = 0; c < w.size(); ++c) it->second[c] += Rational(sign) * w[c];
            }
        }
        return out;
    };

    // IC_q = kernel of the composed map A_q -> ⊕ blocks / Allowed(q-1);
    // K_q rows are IC bases in A_q coordinates
    std::vector<QMat> K(d + 1);
    for (int q = 0; q <= d; ++q) {
        if (q == 0) {
            K[0] = QMat::identity(adim[0]);
        } else {
            int ann_total = 0;
            std::vector<int> ann_off;
            for (int j = 0; j < s.num_cells(q - 1); ++j) {
                ann_off.push_back(ann_total);
                ann_total += ann_cell[q - 1][j].rows();
            }
            QMat test(ann_total, adim[q]);
            for (int i = 0; i < s.num_cells(q); ++i) {
                for (int r = 0; r < allowed_cell[q][i].rows(); ++r) {
                    int col = aoff[q][i] + r;
                    auto blocks = boundary_blocks(q, i, allowed_cell[q][i].row(r));
                    for (auto& [fi, w] : blocks) {
                        const QMat& ann = ann_cell[q - 1][fi];
                        for (int ar = 0; ar < ann.rows(); ++ar) {
                            Rational dot = 0;
                            for (int c = 0; c < ann.cols(); ++c)
                                if (ann.at(ar, c) != 0 && w[c] != 0) dot += ann.at(ar, c) * w[c];
                            test.at(ann_off[fi] + ar, col) += dot;
                        }
                    }
                }
            }
            K[q] = kernel_basis(test).basis();
        }
        ic.dims[q] = K[q].rows();
        // expose the IC basis in chain coordinates
        QMat basis(K[q].rows(), cdim[q]);
        for (int r = 0; r < K[q].rows(); ++r)
            for (int i = 0; i < s.num_cells(q); ++i)
                for (int br = 0; br < allowed_cell[q][i].rows(); ++br) {
                    const Rational& coef = K[q].at(r, aoff[q][i] + br);
                    if (coef == 0) continue;
                    for (int c = 0; c < allowed_cell[q][i].cols(); ++c)
                        basis.at(r, foff[q][i] + c) += coef * allowed_cell[q][i].at(br, c);
                }
        ic.ic_basis[q] = std::move(basis);
    }

    // boundary in the IC bases: express ∂(K_q row) in A_{q-1} coordinates by
    // per-block solves, then in K_{q-1} coordinates by one batched solve
    for (int q = 1; q <= d; ++q) {
        QMat targets(adim[q - 1], ic.dims[q]);   // columns: boundaries in A-coords
        for (int r = 0; r < K[q].rows(); ++r) {
            std::map<int, QVec> total;   // (q-1)-cell -> F-coords of the boundary
            for (int i = 0; i < s.num_cells(q); ++i) {
                for (int br = 0; br < allowed_cell[q][i].rows(); ++br) {
                    const Rational& coef = K[q].at(r, aoff[q][i] + br);
                    if (coef == 0) continue;
                    auto blocks = boundary_blocks(q, i, allowed_cell[q][i].row(br));
                    for (auto& [fi, w] : blocks) {
                        auto it = total.find(fi);
                        if (it == total.end()) {
                            QVec scaled = w;
                            for (auto& v : scaled) v *= coef;
                            total.emplace(fi, std::move(scaled));
                        } else {
                            for (size_t c = 0; c < w.size(); ++c)
                                it->second[c] += coef * w[c];
                        }
                    }
                }
            }
            for (auto& [fi, w] : total) {
                bool nonzero = false;
                for (const Rational& v : w)
                    if (v != 0) nonzero = true;
                if (!nonzero) continue;
                auto y = solve(allowed_cell[q - 1][fi].transpose(), w);
                if (!y) throw std::logic_error("ic_complex: boundary leaves the IC complex");
                for (int c = 0; c < (int)y->size(); ++c)
                    targets.at(aoff[q - 1][fi] + c, r) = (*y)[c];
            }
        }
        // batched solve K_{q-1}^T z = targets
        QMat aug(adim[q - 1], ic.dims[q - 1] + ic.dims[q]);
        for (int i = 0; i < adim[q - 1]; ++i) {
            for (int j = 0; j < ic.dims[q - 1]; ++j) aug.at(i, j) = K[q - 1].at(j, i);
            for (int j = 0; j < ic.dims[q]; ++j) aug.at(i, ic.dims[q - 1] + j) = targets.at(i, j);
        }
        RrefResult rr = rref(aug);
        QMat m(ic.dims[q - 1], ic.dims[q]);
        for (int pi = 0; pi < (int)rr.pivots.size(); ++pi) {
            int col = rr.pivots[pi];
            if (col >= ic.dims[q - 1])
                throw std::logic_error("ic_complex: boundary outside the IC span");
            for (int j = 0; j < ic.dims[q]; ++j)
                m.at(col, j) = rr.mat.at(pi, ic.dims[q - 1] + j);
        }
        ic.bnd[q] = std::move(m);
    }
    return ic;
}

DimensionTable ih_table(const CoefficientTable& table, const ChainStructure& s) {
    const CompactifiedCellComplex& x = table.complex();
    int d = x.d();
    DimensionTable t(d);
    int threads = thread_budget();
    std::vector<std::vector<int>> per_p(d + 1);
    if (threads <= 1) {
        for (int p = 0; p <= d; ++p) per_p[p] = ic_complex(table, s, p).homology_dims();
    } else {
        std::vector<std::future<std::vector<int>>> futs(d + 1);
        for (int p = 0; p <= d; ++p)
            futs[p] = std::async(std::launch::async, [&table, &s, p] {
                return ic_complex(table, s, p).homology_dims();
            });
        for (int p = 0; p <= d; ++p) per_p[p] = futs[p].get();
    }
    // IH^{p,q} := IH_{d-p, d-q}
    for (int p = 0; p <= d; ++p)
        for (int q = 0; q <= d; ++q) t.set(p, q, per_p[d - p][d - q]);
    return t;
}

DimensionTable ih_table(const CompactifiedCellComplex& x, Structure s) {
    CoefficientTable table(x);
    ChainStructure st = make_structure(x, s);
    return ih_table(table, st);
}

FundamentalClass fundamental_class(const CompactifiedCellComplex& x) {
    CoefficientTable table(x);
    ChainStructure s = native_structure(x);
    int d = x.d();
    ChainComplexQ cc = chain_complex(table, s, d);
    FundamentalClass fc;
    fc.chain.assign(cc.dims[d], Rational(0));
    int off = 0;
    for (int i = 0; i < s.num_cells(d); ++i) {
        int carrier = s.by_q[d][i].carrier;
        const CoefSpace& f = table.f_pw(carrier, d);
        if (f.dim() != 1) throw std::logic_error("fundamental_class: top coefficient not a line");
        // orientation generator: the all-rays monomial in ray-index order
        fc.chain[off] = Rational(x.weight(carrier));
        off += f.dim();
    }
    if (d == 0) {
        fc.closed = true;
    } else {
        QVec b = cc.bnd[d].apply(fc.chain);
        fc.closed = std::all_of(b.begin(), b.end(), [](const Rational& v) { return v == 0; });
    }
    IcComplex ic = ic_complex(table, s, d);
    fc.allowable = Subspace::span(ic.allowed[d]).contains(fc.chain);
    return fc;
}

std::vector<CheckLine> verify_duality(const CompactifiedCellComplex& x) {
    DimensionTable t = ih_table(x, Structure::barycentric);
    std::vector<CheckLine> out;
    for (int p = 0; p <= t.d; ++p)
        for (int q = 0; q <= t.d; ++q) {
            if (p > t.d - p || (p == t.d - p && q > t.d - q)) continue;
            CheckLine line;
            std::ostringstream name;
            name << "IH^{" << p << "," << q << "} = IH^{" << t.d - p << "," << t.d - q << "}";
            line.name = name.str();
            line.pass = t.at(p, q) == t.at(t.d - p, t.d - q);
            std::ostringstream det;
            det << t.at(p, q) << " vs " << t.at(t.d - p, t.d - q);
            line.details = det.str();
            out.push_back(line);
        }
    return out;
}

std::vector<CheckLine> verify_subdivision(const CompactifiedCellComplex& x) {
    DimensionTable tn = ih_table(x, Structure::native);
    DimensionTable tb = ih_table(x, Structure::barycentric);
    std::vector<CheckLine> out;
    for (int p = 0; p <= tn.d; ++p)
        for (int q = 0; q <= tn.d; ++q) {
            CheckLine line;
            std::ostringstream name;
            name << "native IH^{" << p << "," << q << "} = barycentric";
            line.name = name.str();
            line.pass = tn.at(p, q) == tb.at(p, q);
            std::ostringstream det;
            det << tn.at(p, q) << " vs " << tb.at(p, q);
            line.details = det.str();
            out.push_back(line);
        }
    return out;
}

}  // namespace trih
