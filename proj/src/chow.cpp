#include "trih/chow.hpp"

#include <algorithm>
#include <stdexcept>

namespace trih {

namespace {

bool is_subset(const ConeKey& a, const ConeKey& b) {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

Integer dot(const IVec& a, const IVec& b) {
    Integer s = 0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

Integer binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    Integer r = 1;
    for (int i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
    return r;
}

}  // namespace

ChowPresentation ch_group(const Fan& fan, int p) {
    if (p < 0) throw std::invalid_argument("ch_group: negative degree");
    ChowPresentation pres;
    pres.p = p;
    pres.generators = fan.cones_of_dim(p);
    int n = (int)pres.generators.size();
    std::vector<QVec> rows;
    if (p >= 1) {
        for (int tau : fan.cones_of_dim(p - 1)) {
            std::vector<IVec> tau_rows;
            for (int r : fan.cones[tau]) tau_rows.push_back(fan.rays[r]);
            std::vector<IVec> mbasis = lattice_kernel_basis(tau_rows, fan.rank);
            for (const IVec& m : mbasis) {
                QVec row(n, Rational(0));
                bool nonzero = false;
                for (int gi = 0; gi < n; ++gi) {
                    int sigma = pres.generators[gi];
                    if (!is_subset(fan.cones[tau], fan.cones[sigma])) continue;
                    // the extra ray of sigma over tau lifts the primitive
                    // normal generator
                    for (int r : fan.cones[sigma]) {
                        if (std::binary_search(fan.cones[tau].begin(), fan.cones[tau].end(), r))
                            continue;
                        Integer v = dot(m, fan.rays[r]);
                        if (v != 0) nonzero = true;
                        row[gi] = Rational(v);
                    }
                }
                if (nonzero) rows.push_back(std::move(row));
            }
        }
    }
    pres.relations = QMat::from_rows(rows, n);
    pres.dim = n - rank(pres.relations);
    return pres;
}

ChowClass multiply_by_divisor(const Fan& fan, int ray, int k, const ChowClass& c,
                              int m_variant) {
    std::vector<int> gens = fan.cones_of_dim(k);
    std::vector<int> out_gens = fan.cones_of_dim(k + 1);
    if ((int)c.size() != (int)gens.size())
        throw std::invalid_argument("multiply_by_divisor: class length mismatch");
    ChowClass out(out_gens.size(), Rational(0));

    auto case_outside = [&](int rho, int sigma, const Rational& coef) {
        // rho not a ray of sigma: [V(rho+sigma)] or 0
        ConeKey key = fan.cones[sigma];
        key.push_back(rho);
        std::sort(key.begin(), key.end());
        int ci = fan.cone_index(key);
        if (ci < 0) return;
        for (int gi = 0; gi < (int)out_gens.size(); ++gi)
            if (out_gens[gi] == ci) out[gi] += coef;
    };

    for (int gi = 0; gi < (int)gens.size(); ++gi) {
        if (c[gi] == 0) continue;
        int sigma = gens[gi];
        const ConeKey& sk = fan.cones[sigma];
        bool inside = std::binary_search(sk.begin(), sk.end(), ray);
        if (!inside) {
            case_outside(ray, sigma, c[gi]);
            continue;
        }
        // rewrite x_rho using a character m with <m,u_rho> = 1 and
        // <m,u_rho'> = 0 for the other rays of sigma
        QMat sys((int)sk.size(), fan.rank);
        QVec rhs(sk.size(), Rational(0));
        for (int i = 0; i < (int)sk.size(); ++i) {
            for (int j = 0; j < fan.rank; ++j) sys.at(i, j) = Rational(fan.rays[sk[i]][j]);
            if (sk[i] == ray) rhs[i] = 1;
        }
        if (m_variant != 0) {
            // same system with the coordinates reversed: a different
            // canonical solution of the same constraints
            QMat rev((int)sk.size(), fan.rank);
            for (int i = 0; i < (int)sk.size(); ++i)
                for (int j = 0; j < fan.rank; ++j) rev.at(i, j) = sys.at(i, fan.rank - 1 - j);
            auto mrev = solve(rev, rhs);
            if (!mrev) throw std::logic_error("multiply_by_divisor: no character");
            QVec m(fan.rank);
            for (int j = 0; j < fan.rank; ++j) m[j] = (*mrev)[fan.rank - 1 - j];
            for (int rho2 = 0; rho2 < (int)fan.rays.size(); ++rho2) {
                if (std::binary_search(sk.begin(), sk.end(), rho2)) continue;
                Rational coef = 0;
                for (int j = 0; j < fan.rank; ++j) coef += m[j] * Rational(fan.rays[rho2][j]);
                if (coef != 0) case_outside(rho2, sigma, -coef * c[gi]);
            }
            continue;
        }
        auto m = solve(sys, rhs);
        if (!m) throw std::logic_error("multiply_by_divisor: no character");
        for (int rho2 = 0; rho2 < (int)fan.rays.size(); ++rho2) {
            if (std::binary_search(sk.begin(), sk.end(), rho2)) continue;
            Rational coef = 0;
            for (int j = 0; j < fan.rank; ++j) coef += (*m)[j] * Rational(fan.rays[rho2][j]);
            if (coef != 0) case_outside(rho2, sigma, -coef * c[gi]);
        }
    }
    return out;
}

Rational evaluate(const Fan& fan, const MinkowskiWeight& w, const ChowClass& c) {
    BalanceReport rep = is_balanced(fan, w);
    if (!rep.balanced) throw std::invalid_argument("evaluate: weight is not balanced");
    std::vector<int> gens = fan.cones_of_dim(w.k);
    if ((int)c.size() != (int)gens.size())
        throw std::invalid_argument("evaluate: class length mismatch");
    Rational s = 0;
    for (int gi = 0; gi < (int)gens.size(); ++gi) {
        auto it = w.weights.find(gens[gi]);
        if (it == w.weights.end()) continue;
        s += c[gi] * Rational(it->second);
    }
    return s;
}

PairingData pairing_and_num(const TropicalFanCycle& cyc, int p) {
    const Fan& fan = cyc.fan;
    int d = cyc.dim;
    if (p < 0 || p > d) throw std::invalid_argument("pairing_and_num: degree out of range");
    MinkowskiWeight w = cyc.as_minkowski_weight();
    PairingData pd;
    pd.p = p;
    std::vector<int> gp = fan.cones_of_dim(p);
    std::vector<int> gq = fan.cones_of_dim(d - p);
    pd.full = QMat((int)gp.size(), (int)gq.size());
    for (int i = 0; i < (int)gp.size(); ++i) {
        for (int j = 0; j < (int)gq.size(); ++j) {
            // α_i · β_j as iterated divisor multiplication on [V(σ_j)]
            ChowClass c(gq.size(), Rational(0));
            c[j] = 1;
            int k = d - p;
            for (int r : fan.cones[gp[i]]) {
                c = multiply_by_divisor(fan, r, k, c);
                ++k;
            }
            pd.full.at(i, j) = evaluate(fan, w, c);
        }
    }
    // least-index generator bases of CH^p and CH^{d-p}
    auto pick_basis = [&](int deg, std::vector<int>& out) {
        ChowPresentation pres = ch_group(fan, deg);
        QuotientSpace qs(Subspace::full((int)pres.generators.size()),
                         Subspace::span(pres.relations));
        // reps rows are unit vectors on the chosen generators
        for (int i = 0; i < qs.reps().rows(); ++i)
            for (int j = 0; j < qs.reps().cols(); ++j)
                if (qs.reps().at(i, j) != 0) {
                    out.push_back(pres.generators[j]);
                    break;
                }
    };
    pick_basis(p, pd.basis_p);
    pick_basis(d - p, pd.basis_q);
    pd.basis_matrix = QMat((int)pd.basis_p.size(), (int)pd.basis_q.size());
    auto index_in = [](const std::vector<int>& v, int x) {
        return (int)(std::find(v.begin(), v.end(), x) - v.begin());
    };
    for (int i = 0; i < (int)pd.basis_p.size(); ++i)
        for (int j = 0; j < (int)pd.basis_q.size(); ++j)
            pd.basis_matrix.at(i, j) =
                pd.full.at(index_in(gp, pd.basis_p[i]), index_in(gq, pd.basis_q[j]));
    pd.rank = rank(pd.full);
    pd.num_dim = (int)pd.basis_p.size() - pd.rank;
    return pd;
}

DimensionTable predicted_ih(const TropicalFanCycle& c) {
    DimensionTable t(c.dim);
    for (int p = 0; p <= c.dim; ++p) t.set(p, p, pairing_and_num(c, p).rank);
    return t;
}

std::vector<Integer> singular_betti(const Fan& fan) {
    if (!is_complete(fan)) throw std::invalid_argument("singular_betti: fan is not complete");
    int n = fan.rank;
    std::vector<Integer> b(n + 1, Integer(0));
    for (int k = 0; k <= n; ++k) {
        Integer h = 0;
        for (int i = k; i <= n; ++i) {
            Integer term = binomial(i, k) * Integer(fan.cones_of_dim(n - i).size());
            if ((i - k) % 2 == 0) h += term;
            else h -= term;
        }
        b[k] = h;
    }
    return b;
}

}  // namespace trih
