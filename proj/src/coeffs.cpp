#include "trih/coeffs.hpp"

#include <algorithm>
#include <stdexcept>

namespace trih {

std::vector<std::vector<int>> subsets_of(const std::vector<int>& elems, int p) {
    std::vector<std::vector<int>> out;
    if (p < 0 || p > (int)elems.size()) return out;
    std::vector<int> idx(p);
    for (int i = 0; i < p; ++i) idx[i] = i;
    while (true) {
        std::vector<int> t(p);
        for (int i = 0; i < p; ++i) t[i] = elems[idx[i]];
        out.push_back(t);
        int i = p - 1;
        while (i >= 0 && idx[i] == (int)elems.size() - p + i) --i;
        if (i < 0) break;
        ++idx[i];
        for (int j = i + 1; j < p; ++j) idx[j] = idx[j - 1] + 1;
    }
    if (p == 0) out = {std::vector<int>{}};
    return out;
}

int wedge_sign(const std::vector<int>& a, const std::vector<int>& b) {
    long inversions = 0;
    for (int x : b) {
        for (int y : a) {
            if (y == x) return 0;
            if (y > x) ++inversions;
        }
    }
    return inversions % 2 == 0 ? 1 : -1;
}

namespace {

int subset_index(const std::vector<std::vector<int>>& subsets, const std::vector<int>& t) {
    for (int i = 0; i < (int)subsets.size(); ++i)
        if (subsets[i] == t) return i;
    return -1;
}

Rational minor_det(const QMat& m, const std::vector<int>& rows, const std::vector<int>& cols) {
    int p = (int)rows.size();
    QMat sub(p, p);
    for (int i = 0; i < p; ++i)
        for (int j = 0; j < p; ++j) sub.at(i, j) = m.at(rows[i], cols[j]);
    // exact Gaussian determinant
    Rational det = 1;
    for (int c = 0; c < p; ++c) {
        int pr = -1;
        for (int i = c; i < p; ++i)
            if (sub.at(i, c) != 0) { pr = i; break; }
        if (pr < 0) return 0;
        if (pr != c) {
            for (int j = 0; j < p; ++j) std::swap(sub.at(pr, j), sub.at(c, j));
            det = -det;
        }
        det *= sub.at(c, c);
        for (int i = c + 1; i < p; ++i) {
            if (sub.at(i, c) == 0) continue;
            Rational f = sub.at(i, c) / sub.at(c, c);
            for (int j = c; j < p; ++j) sub.at(i, j) -= f * sub.at(c, j);
        }
    }
    return det;
}

// wedge v ∧ e_U inside Λ^{|U|+1} of a space with ordered basis `rays`;
// v given in coordinates over `rays`
QVec wedge_vector_monomial(const QVec& v, const std::vector<int>& u,
                           const std::vector<int>& rays,
                           const std::vector<std::vector<int>>& target_monomials) {
    QVec out(target_monomials.size(), Rational(0));
    for (int i = 0; i < (int)rays.size(); ++i) {
        if (v[i] == 0) continue;
        std::vector<int> single{rays[i]};
        int sign = wedge_sign(single, u);
        if (sign == 0) continue;
        std::vector<int> t = u;
        t.push_back(rays[i]);
        std::sort(t.begin(), t.end());
        int ti = subset_index(target_monomials, t);
        if (ti < 0) throw std::logic_error("wedge_vector_monomial: missing monomial");
        out[ti] += Rational(sign) * v[i];
    }
    return out;
}

}  // namespace

QMat exterior_power_matrix(const QMat& m, int p) {
    auto rows_idx = [&](int n) {
        std::vector<int> v(n);
        for (int i = 0; i < n; ++i) v[i] = i;
        return v;
    };
    std::vector<std::vector<int>> rs = subsets_of(rows_idx(m.rows()), p);
    std::vector<std::vector<int>> cs = subsets_of(rows_idx(m.cols()), p);
    QMat out((int)rs.size(), (int)cs.size());
    for (int i = 0; i < (int)rs.size(); ++i)
        for (int j = 0; j < (int)cs.size(); ++j) out.at(i, j) = minor_det(m, rs[i], cs[j]);
    return out;
}

QVec contraction(const QVec& omega, int q, const QVec& phi, int p, int n) {
    if (p > q) throw std::invalid_argument("contraction: p > q");
    std::vector<int> ground(n);
    for (int i = 0; i < n; ++i) ground[i] = i;
    auto qs = subsets_of(ground, q);
    auto ps = subsets_of(ground, p);
    auto rs = subsets_of(ground, q - p);
    if ((int)omega.size() != (int)qs.size() || (int)phi.size() != (int)ps.size())
        throw std::invalid_argument("contraction: coordinate length mismatch");
    QVec out(rs.size(), Rational(0));
    for (int i = 0; i < (int)qs.size(); ++i) {
        if (omega[i] == 0) continue;
        for (int j = 0; j < (int)ps.size(); ++j) {
            if (phi[j] == 0) continue;
            const std::vector<int>& t = qs[i];
            const std::vector<int>& s = ps[j];
            if (!std::includes(t.begin(), t.end(), s.begin(), s.end())) continue;
            std::vector<int> rest;
            std::set_difference(t.begin(), t.end(), s.begin(), s.end(),
                                std::back_inserter(rest));
            // sign of the shuffle moving the s-factors to the front of t
            long moves = 0;
            for (int a = 0; a < (int)s.size(); ++a) {
                int pos = (int)(std::lower_bound(t.begin(), t.end(), s[a]) - t.begin());
                moves += pos - a;
            }
            int sign = moves % 2 == 0 ? 1 : -1;
            out[subset_index(rs, rest)] += Rational(sign) * omega[i] * phi[j];
        }
    }
    return out;
}

Subspace codim1_relation_space(const CompactifiedCellComplex& x, int R, int p,
                               int lift_variant) {
    if (x.dim(R) != x.d() - 1)
        throw std::invalid_argument("codim1_relation_space: not a codimension-one cell");
    const Fan& fan = x.cycle.fan;
    std::vector<int> tops = x.tops_containing(R);
    const CCell& rc = x.cells[R];
    std::vector<std::vector<std::vector<int>>> mono;   // per top: monomial basis
    for (int t : tops) mono.push_back(subsets_of(fan.cones[x.cells[t].sigma], p));
    int block = mono.empty() ? 0 : (int)mono[0].size();
    int big = (int)tops.size() * block;

    std::vector<QVec> rel;
    if (x.is_smooth(R)) {
        const ConeKey& sig1 = fan.cones[rc.sigma];   // (d-1)-cone, sedentarity 0
        // (i) slot identifications of Λ^p Tan Q
        for (const auto& b : subsets_of(sig1, p)) {
            for (int j = 1; j < (int)tops.size(); ++j) {
                QVec v(big, Rational(0));
                v[0 * block + subset_index(mono[0], b)] = 1;
                v[j * block + subset_index(mono[j], b)] = -1;
                rel.push_back(std::move(v));
            }
        }
        // (ii) weighted balancing relations with one canonical lift family
        if (p >= 1) {
            // raw sum of weighted extra rays
            IVec s(fan.rank, Integer(0));
            std::vector<int> extra(tops.size());
            std::vector<Integer> w(tops.size());
            for (int j = 0; j < (int)tops.size(); ++j) {
                const ConeKey& sp = fan.cones[x.cells[tops[j]].sigma];
                int e = -1;
                for (int r : sp)
                    if (!std::binary_search(sig1.begin(), sig1.end(), r)) e = r;
                extra[j] = e;
                w[j] = x.weight(tops[j]);
                for (int c = 0; c < fan.rank; ++c) s[c] += w[j] * fan.rays[e][c];
            }
            auto y = solve(fan.ray_matrix(rc.sigma).transpose(), to_rational(s));
            if (!y) throw std::logic_error("codim1_relation_space: balancing defect");
            // lift coordinates per top, over that top's ray basis
            std::vector<QVec> lift(tops.size());
            for (int j = 0; j < (int)tops.size(); ++j) {
                const ConeKey& sp = fan.cones[x.cells[tops[j]].sigma];
                QVec v(sp.size(), Rational(0));
                for (int a = 0; a < (int)sp.size(); ++a)
                    if (sp[a] == extra[j]) v[a] = 1;
                lift[j] = std::move(v);
            }
            // distribute the correction -y (coordinates over sig1) onto one
            // or two tops depending on the variant; any choice spans the
            // same relation space
            auto add_correction = [&](int j, const Rational& scale) {
                const ConeKey& sp = fan.cones[x.cells[tops[j]].sigma];
                for (int a = 0; a < (int)sp.size(); ++a) {
                    auto it = std::find(sig1.begin(), sig1.end(), sp[a]);
                    if (it == sig1.end()) continue;
                    int bi = (int)(it - sig1.begin());
                    lift[j][a] += scale * (*y)[bi];
                }
            };
            if (lift_variant == 0 || tops.size() == 1) {
                add_correction(0, Rational(-1) / Rational(w[0]));
            } else {
                int last = (int)tops.size() - 1;
                add_correction(last, Rational(-2) / Rational(w[last]));
                add_correction(0, Rational(1) / Rational(w[0]));
            }
            for (const auto& u : subsets_of(sig1, p - 1)) {
                QVec v(big, Rational(0));
                for (int j = 0; j < (int)tops.size(); ++j) {
                    const ConeKey& sp = fan.cones[x.cells[tops[j]].sigma];
                    QVec wedge = wedge_vector_monomial(lift[j], u, sp, mono[j]);
                    for (int c = 0; c < block; ++c)
                        v[j * block + c] += Rational(w[j]) * wedge[c];
                }
                rel.push_back(std::move(v));
            }
        }
    } else {
        // sedentary codimension-one cell (rho, sigma): unique top cell,
        // kernel of Λ^p Tan σ -> Λ^p(Tan σ / Tan rho)
        if (tops.size() != 1)
            throw std::logic_error("codim1_relation_space: sedentary cell with several tops");
        const ConeKey& tau = fan.cones[rc.tau];
        if (tau.size() != 1)
            throw std::logic_error("codim1_relation_space: sedentarity is not a ray");
        for (int i = 0; i < block; ++i) {
            if (!std::binary_search(mono[0][i].begin(), mono[0][i].end(), tau[0])) continue;
            QVec v(big, Rational(0));
            v[i] = 1;
            rel.push_back(std::move(v));
        }
    }
    return Subspace::span(QMat::from_rows(rel, big));
}

const std::vector<std::vector<int>>& CoefficientTable::monomials(int cone, int p) const {
    std::lock_guard<std::mutex> lk(mu_);
    auto key = std::make_pair(cone, p);
    auto it = monomial_memo_.find(key);
    if (it == monomial_memo_.end()) {
        auto v = std::make_unique<std::vector<std::vector<int>>>(
            subsets_of(x_->cycle.fan.cones[cone], p));
        it = monomial_memo_.emplace(key, std::move(v)).first;
    }
    return *it->second;
}

std::unique_ptr<CoefSpace> CoefficientTable::build(CoefKind kind, int cell, int p) const {
    const CompactifiedCellComplex& x = *x_;
    const Fan& fan = x.cycle.fan;
    auto sp = std::make_unique<CoefSpace>();
    sp->p = p;

    if (kind == CoefKind::f_pw || kind == CoefKind::f_pw_dual) {
        if (p < 0 || p > x.d()) throw std::invalid_argument("f_pw: p out of range");
        sp->tops = x.tops_containing(cell);
        sp->block_dim = (int)subsets_of(fan.cones[x.cells[sp->tops[0]].sigma], p).size();
        int big = (int)sp->tops.size() * sp->block_dim;
        // killed = sum of the codimension-one relation spaces over all
        // (d-1)-cells R having `cell` as a face
        std::vector<QVec> killed_rows;
        for (int R : x.cells_of_dim(x.d() - 1)) {
            if (!x.is_face(cell, R)) continue;
            std::vector<int> rtops = x.tops_containing(R);
            std::vector<int> slot_of(rtops.size());
            for (int j = 0; j < (int)rtops.size(); ++j) {
                auto it = std::find(sp->tops.begin(), sp->tops.end(), rtops[j]);
                if (it == sp->tops.end())
                    throw std::logic_error("f_pw: top of face not a top of cell");
                slot_of[j] = (int)(it - sp->tops.begin());
            }
            Subspace ker = codim1_relation_space(x, R, p);
            for (int i = 0; i < ker.dim(); ++i) {
                QVec v(big, Rational(0));
                for (int j = 0; j < (int)rtops.size(); ++j)
                    for (int c = 0; c < sp->block_dim; ++c)
                        v[slot_of[j] * sp->block_dim + c] =
                            ker.basis().at(i, j * sp->block_dim + c);
                killed_rows.push_back(std::move(v));
            }
        }
        Subspace killed = Subspace::span(QMat::from_rows(killed_rows, big));
        if (kind == CoefKind::f_pw) {
            sp->space = QuotientSpace(Subspace::full(big), killed);
        } else {
            if (!x.is_smooth(cell))
                throw std::invalid_argument("f_pw_dual: cell not in the smooth part");
            Subspace ann = killed.dim() == 0 ? Subspace::full(big)
                                             : kernel_basis(killed.basis());
            sp->space = QuotientSpace(ann, Subspace::zero(big));
        }
        return sp;
    }

    // IKMZ coefficients
    const CCell& c = x.cells[cell];
    std::vector<IVec> tau_rows;
    for (int r : fan.cones[c.tau]) tau_rows.push_back(fan.rays[r]);
    sp->mbasis = lattice_kernel_basis(tau_rows, fan.rank);
    int s = (int)sp->mbasis.size();
    std::vector<int> ground(s);
    for (int i = 0; i < s; ++i) ground[i] = i;
    int amb = (int)subsets_of(ground, p).size();
    sp->tops = x.tops_containing(cell);
    QMat stacked(0, amb);
    for (int t : sp->tops) {
        const ConeKey& sig = fan.cones[x.cells[t].sigma];
        QMat eval((int)sig.size(), s);   // rows: dual-ray coords, cols: mbasis
        for (int i = 0; i < (int)sig.size(); ++i)
            for (int j = 0; j < s; ++j) {
                Integer dot = 0;
                for (int k = 0; k < fan.rank; ++k)
                    dot += sp->mbasis[j][k] * fan.rays[sig[i]][k];
                eval.at(i, j) = Rational(dot);
            }
        stacked = stacked.vstack(exterior_power_matrix(eval, p));
    }
    Subspace joint_kernel =
        stacked.rows() == 0 ? Subspace::full(amb) : kernel_basis(stacked);
    sp->space = QuotientSpace(Subspace::full(amb), joint_kernel);
    sp->block_dim = amb;
    return sp;
}

const CoefSpace& CoefficientTable::get(CoefKind kind, int cell, int p) const {
    {
        std::lock_guard<std::mutex> lk(mu_);
        auto it = memo_.find({(int)kind, cell, p});
        if (it != memo_.end()) return *it->second;
    }
    auto built = build(kind, cell, p);
    std::lock_guard<std::mutex> lk(mu_);
    auto [it, inserted] = memo_.emplace(std::make_tuple((int)kind, cell, p), std::move(built));
    return *it->second;
}

const CoefSpace& CoefficientTable::f_pw_dual(int cell, int p) const {
    return get(CoefKind::f_pw_dual, cell, p);
}

const QMat& CoefficientTable::iota(int p, int from, int to) const {
    {
        std::lock_guard<std::mutex> lk(mu_);
        auto it = iota_memo_.find({p, from, to});
        if (it != iota_memo_.end()) return *it->second;
    }
    const CompactifiedCellComplex& x = *x_;
    if (!x.is_face(to, from)) throw std::invalid_argument("iota: target is not a face");
    const CoefSpace& a = f_pw(from, p);
    const CoefSpace& b = f_pw(to, p);
    auto m = std::make_unique<QMat>(b.dim(), a.dim());
    for (int i = 0; i < a.dim(); ++i) {
        QVec coords(a.dim(), Rational(0));
        coords[i] = 1;
        QVec lifted = a.space.lift(coords);
        QVec embedded(b.tops.size() * b.block_dim, Rational(0));
        for (int j = 0; j < (int)a.tops.size(); ++j) {
            auto it = std::find(b.tops.begin(), b.tops.end(), a.tops[j]);
            if (it == b.tops.end()) throw std::logic_error("iota: slot embedding failure");
            int slot = (int)(it - b.tops.begin());
            for (int c = 0; c < a.block_dim; ++c)
                embedded[slot * b.block_dim + c] = lifted[j * a.block_dim + c];
        }
        QVec out = b.space.project(embedded);
        for (int r = 0; r < b.dim(); ++r) m->at(r, i) = out[r];
    }
    std::lock_guard<std::mutex> lk(mu_);
    auto [it, inserted] = iota_memo_.emplace(std::make_tuple(p, from, to), std::move(m));
    return *it->second;
}

QMat CoefficientTable::dual_restriction(int p, int from, int to) const {
    const CompactifiedCellComplex& x = *x_;
    if (!x.is_face(from, to))
        throw std::invalid_argument("dual_restriction: source is not a face of target");
    const CoefSpace& a = f_pw_dual(from, p);
    const CoefSpace& b = f_pw_dual(to, p);
    QMat m(b.dim(), a.dim());
    for (int i = 0; i < a.dim(); ++i) {
        QVec coords(a.dim(), Rational(0));
        coords[i] = 1;
        QVec f = a.space.lift(coords);   // functional on the big space of `from`
        // restrict to the tops of `to` (a sub-direct-sum)
        QVec g(b.tops.size() * b.block_dim, Rational(0));
        for (int j = 0; j < (int)b.tops.size(); ++j) {
            auto it = std::find(a.tops.begin(), a.tops.end(), b.tops[j]);
            if (it == a.tops.end()) throw std::logic_error("dual_restriction: missing slot");
            int slot = (int)(it - a.tops.begin());
            for (int c = 0; c < b.block_dim; ++c)
                g[j * b.block_dim + c] = f[slot * a.block_dim + c];
        }
        QVec out = b.space.project(g);
        for (int r = 0; r < b.dim(); ++r) m.at(r, i) = out[r];
    }
    return m;
}

QMat CoefficientTable::ikmz_map(int p, int from, int to) const {
    const CompactifiedCellComplex& x = *x_;
    if (!x.is_face(from, to))
        throw std::invalid_argument("ikmz_map: source is not a face of target");
    const CoefSpace& a = f_ikmz(from, p);
    const CoefSpace& b = f_ikmz(to, p);
    // express a.mbasis inside span(b.mbasis): exact integral solve
    QMat bmat((int)b.mbasis.size(), x.cycle.fan.rank);
    for (int i = 0; i < (int)b.mbasis.size(); ++i)
        for (int j = 0; j < x.cycle.fan.rank; ++j) bmat.at(i, j) = Rational(b.mbasis[i][j]);
    QMat change((int)b.mbasis.size(), (int)a.mbasis.size());
    for (int i = 0; i < (int)a.mbasis.size(); ++i) {
        auto sol = solve(bmat.transpose(), to_rational(a.mbasis[i]));
        if (!sol) throw std::logic_error("ikmz_map: inclusion of character lattices failed");
        for (int r = 0; r < (int)b.mbasis.size(); ++r) change.at(r, i) = (*sol)[r];
    }
    QMat big = exterior_power_matrix(change, p);
    QMat m(b.dim(), a.dim());
    for (int i = 0; i < a.dim(); ++i) {
        QVec coords(a.dim(), Rational(0));
        coords[i] = 1;
        QVec out = b.space.project(big.apply(a.space.lift(coords)));
        for (int r = 0; r < b.dim(); ++r) m.at(r, i) = out[r];
    }
    return m;
}

FiltrationDegrees vu_degrees(const CompactifiedCellComplex& x, int top_cell, int s_cell,
                             const QVec& alpha, int p) {
    if (!x.is_face(s_cell, top_cell))
        throw std::invalid_argument("vu_degrees: S is not a face of P");
    const Fan& fan = x.cycle.fan;
    const ConeKey& sig = fan.cones[x.cells[top_cell].sigma];
    const ConeKey& tau = fan.cones[x.cells[s_cell].tau];
    const ConeKey& sig_s = fan.cones[x.cells[s_cell].sigma];
    auto mono = subsets_of(sig, p);
    if (alpha.size() != mono.size())
        throw std::invalid_argument("vu_degrees: coordinate length mismatch");
    FiltrationDegrees deg{p, p};
    bool nonzero = false;
    for (int i = 0; i < (int)mono.size(); ++i) {
        if (alpha[i] == 0) continue;
        nonzero = true;
        int cv = 0, cu = 0;
        for (int r : mono[i]) {
            if (std::binary_search(tau.begin(), tau.end(), r)) ++cv;
            if (std::binary_search(sig_s.begin(), sig_s.end(), r)) ++cu;
        }
        deg.v = std::min(deg.v, cv);
        deg.u = std::min(deg.u, cu);
    }
    if (!nonzero) throw std::invalid_argument("vu_degrees: degrees of zero are undefined");
    return deg;
}

Subspace allowed_subspace(const CompactifiedCellComplex& x, int top_cell, int s_cell,
                          int p, int q, int k) {
    if (x.is_smooth(s_cell))
        throw std::invalid_argument("allowed_subspace: S must be a singular stratum");
    if (!x.is_face(s_cell, top_cell))
        throw std::invalid_argument("allowed_subspace: S is not a face of P");
    const Fan& fan = x.cycle.fan;
    const ConeKey& sig = fan.cones[x.cells[top_cell].sigma];
    const ConeKey& tau = fan.cones[x.cells[s_cell].tau];
    const ConeKey& sig_s = fan.cones[x.cells[s_cell].sigma];
    int dim_sed = (int)tau.size();
    int dim_s = x.dim(s_cell);
    auto mono = subsets_of(sig, p);
    int n = (int)mono.size();
    if (dim_sed == 0 && q - k == x.d() - dim_s) return Subspace::full(n);
    std::vector<QVec> rows;
    for (int i = 0; i < n; ++i) {
        int a = 0, b = 0;
        for (int r : mono[i]) {
            if (std::binary_search(tau.begin(), tau.end(), r)) ++a;
            if (std::binary_search(sig_s.begin(), sig_s.end(), r)) ++b;
        }
        int rhs = std::max(2, p + dim_sed - b + 1);
        if (q - k + a >= rhs) {
            QVec v(n, Rational(0));
            v[i] = 1;
            rows.push_back(std::move(v));
        }
    }
    return Subspace::span(QMat::from_rows(rows, n));
}

FilWedge fil_and_wedge(const CompactifiedCellComplex& x, int top_cell, int s_cell,
                       int p, int k) {
    if (!x.is_face(s_cell, top_cell))
        throw std::invalid_argument("fil_and_wedge: S is not a face of P");
    const Fan& fan = x.cycle.fan;
    const ConeKey& sig = fan.cones[x.cells[top_cell].sigma];
    const ConeKey& tau = fan.cones[x.cells[s_cell].tau];
    const ConeKey& sig_s = fan.cones[x.cells[s_cell].sigma];
    int d = x.d();
    int bound = x.dim(s_cell) + 2 * (int)tau.size();

    auto vu_sum = [&](const std::vector<int>& t) {
        int a = 0, b = 0;
        for (int r : t) {
            if (std::binary_search(tau.begin(), tau.end(), r)) ++a;
            if (std::binary_search(sig_s.begin(), sig_s.end(), r)) ++b;
        }
        return a + b;
    };

    FilWedge fw;
    auto mono_dp = subsets_of(sig, d - p);
    auto mono_p = subsets_of(sig, p);
    std::vector<QVec> fil_rows;
    for (int i = 0; i < (int)mono_dp.size(); ++i)
        if (vu_sum(mono_dp[i]) >= k) {
            QVec v(mono_dp.size(), Rational(0));
            v[i] = 1;
            fil_rows.push_back(std::move(v));
        }
    fw.fil = Subspace::span(QMat::from_rows(fil_rows, (int)mono_dp.size()));
    for (const auto& t : mono_dp)
        if (vu_sum(t) >= -k + bound) fw.fil_monomials.push_back(t);
    for (const auto& t : mono_p)
        if (vu_sum(t) < k + 1) fw.quo_monomials.push_back(t);
    fw.pairing = QMat((int)fw.fil_monomials.size(), (int)fw.quo_monomials.size());
    for (int i = 0; i < (int)fw.fil_monomials.size(); ++i)
        for (int j = 0; j < (int)fw.quo_monomials.size(); ++j)
            fw.pairing.at(i, j) = Rational(wedge_sign(fw.fil_monomials[i], fw.quo_monomials[j]));
    return fw;
}

}  // namespace trih
