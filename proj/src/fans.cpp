#include "trih/fans.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace trih {

namespace {

std::string key_to_string(const ConeKey& c) {
    std::ostringstream os;
    os << "{";
    for (size_t i = 0; i < c.size(); ++i) {
        if (i) os << ",";
        os << c[i];
    }
    os << "}";
    return os.str();
}

bool is_subset(const ConeKey& a, const ConeKey& b) {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

ConeKey intersect_keys(const ConeKey& a, const ConeKey& b) {
    ConeKey r;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r));
    return r;
}

}  // namespace

int Fan::cone_index(const ConeKey& c) const {
    for (int i = 0; i < (int)cones.size(); ++i)
        if (cones[i] == c) return i;
    return -1;
}

int Fan::dimension() const {
    int d = 0;
    for (const ConeKey& c : cones) d = std::max(d, (int)c.size());
    return d;
}

std::vector<int> Fan::cones_of_dim(int k) const {
    std::vector<int> out;
    for (int i = 0; i < (int)cones.size(); ++i)
        if ((int)cones[i].size() == k) out.push_back(i);
    return out;
}

std::string Fan::cone_name(int cone) const { return key_to_string(cones[cone]); }

QMat Fan::ray_matrix(int cone) const {
    const ConeKey& c = cones[cone];
    QMat m((int)c.size(), rank);
    for (int i = 0; i < (int)c.size(); ++i)
        for (int j = 0; j < rank; ++j) m.at(i, j) = Rational(rays[c[i]][j]);
    return m;
}

Fan build_fan(int rank, const std::vector<IVec>& rays,
              const std::vector<ConeKey>& maximal_cones) {
    if (rank < 0) throw std::invalid_argument("build_fan: negative rank");
    for (const IVec& r : rays) {
        if ((int)r.size() != rank) throw std::invalid_argument("build_fan: ray length != rank");
        if (content(r) == 0) throw std::invalid_argument("build_fan: zero ray");
        if (primitive_vector(r) != r) throw std::invalid_argument("build_fan: non-primitive ray");
    }
    for (size_t i = 0; i < rays.size(); ++i)
        for (size_t j = i + 1; j < rays.size(); ++j)
            if (rays[i] == rays[j]) throw std::invalid_argument("build_fan: duplicate ray");

    std::vector<ConeKey> maxs;
    for (ConeKey c : maximal_cones) {
        std::sort(c.begin(), c.end());
        if (std::adjacent_find(c.begin(), c.end()) != c.end())
            throw std::invalid_argument("build_fan: repeated ray index in cone");
        for (int i : c)
            if (i < 0 || i >= (int)rays.size())
                throw std::invalid_argument("build_fan: ray index out of range");
        maxs.push_back(c);
    }
    for (size_t i = 0; i < maxs.size(); ++i)
        for (size_t j = 0; j < maxs.size(); ++j)
            if (i != j && is_subset(maxs[i], maxs[j]))
                throw std::invalid_argument("build_fan: maximal cone " + key_to_string(maxs[i]) +
                                            " is a face of " + key_to_string(maxs[j]));

    for (const ConeKey& c : maxs) {
        if (c.empty()) continue;
        std::vector<IVec> cr;
        for (int i : c) cr.push_back(rays[i]);
        if (!is_unimodular(cr))
            throw std::invalid_argument("build_fan: non-unimodular cone " + key_to_string(c));
    }

    // face closure: all subsets of maximal ray sets (simplicial cones)
    std::set<ConeKey> face_set;
    face_set.insert(ConeKey{});
    for (const ConeKey& c : maxs) {
        int k = (int)c.size();
        for (int mask = 0; mask < (1 << k); ++mask) {
            ConeKey f;
            for (int b = 0; b < k; ++b)
                if (mask & (1 << b)) f.push_back(c[b]);
            face_set.insert(f);
        }
    }
    std::vector<ConeKey> cones(face_set.begin(), face_set.end());
    std::sort(cones.begin(), cones.end(), [](const ConeKey& a, const ConeKey& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    });

    // ray-set intersections are subsets, hence listed; nothing more to check
    // combinatorially. Geometric consistency is check_fan_geometric's job.
    Fan f;
    f.rank = rank;
    f.rays = rays;
    f.cones = std::move(cones);
    for (const ConeKey& c : maxs) f.maximal.push_back(f.cone_index(c));
    std::sort(f.maximal.begin(), f.maximal.end());
    return f;
}

MinkowskiWeight TropicalFanCycle::as_minkowski_weight() const {
    MinkowskiWeight w;
    w.k = dim;
    w.weights = weights;
    return w;
}

BalanceReport is_balanced(const Fan& fan, const MinkowskiWeight& w) {
    BalanceReport rep;
    if (w.k == 0) return rep;
    auto weight_of = [&](int cone) -> Integer {
        auto it = w.weights.find(cone);
        return it == w.weights.end() ? Integer(0) : it->second;
    };
    for (int q : fan.cones_of_dim(w.k - 1)) {
        IVec sum(fan.rank, Integer(0));
        for (int p : fan.cones_of_dim(w.k)) {
            if (!is_subset(fan.cones[q], fan.cones[p])) continue;
            Integer wp = weight_of(p);
            if (wp == 0) continue;
            // extra ray of p over q lifts the primitive normal direction
            for (int ri : fan.cones[p]) {
                if (std::binary_search(fan.cones[q].begin(), fan.cones[q].end(), ri)) continue;
                for (int j = 0; j < fan.rank; ++j) sum[j] += wp * fan.rays[ri][j];
            }
        }
        // membership of sum in Tan_Z q: rational solve then integrality
        QMat qt = fan.ray_matrix(q).transpose();
        auto c = solve(qt, to_rational(sum));
        bool ok = c.has_value();
        if (ok)
            for (const Rational& x : *c)
                if (denominator(x) != 1) ok = false;
        if (!ok) {
            rep.balanced = false;
            rep.violations.push_back(q);
        }
    }
    return rep;
}

BalanceReport is_balanced(const TropicalFanCycle& c) {
    return is_balanced(c.fan, c.as_minkowski_weight());
}

TropicalFanCycle make_cycle(Fan fan, std::map<int, Integer> weights) {
    TropicalFanCycle c;
    c.dim = fan.dimension();
    for (int m : fan.maximal)
        if (fan.dim(m) != c.dim)
            throw std::invalid_argument("make_cycle: fan not pure-dimensional");
    for (int m : fan.maximal) {
        auto it = weights.find(m);
        if (it == weights.end())
            throw std::invalid_argument("make_cycle: missing weight on " + fan.cone_name(m));
        if (it->second < 1)
            throw std::invalid_argument("make_cycle: weight must be >= 1 on " + fan.cone_name(m));
    }
    if ((int)weights.size() != (int)fan.maximal.size())
        throw std::invalid_argument("make_cycle: weight on a non-maximal cone");
    c.fan = std::move(fan);
    c.weights = std::move(weights);
    BalanceReport rep = is_balanced(c);
    if (!rep.balanced) {
        std::string msg = "make_cycle: balancing fails at";
        for (int q : rep.violations) msg += " " + c.fan.cone_name(q);
        throw std::invalid_argument(msg);
    }
    return c;
}

StarFan star_fan(const Fan& f, int cone) {
    if (cone < 0 || cone >= (int)f.cones.size())
        throw std::invalid_argument("star_fan: cone not in fan");
    const ConeKey& sigma = f.cones[cone];
    int k = (int)sigma.size();

    std::vector<IVec> sigma_rows;
    for (int ri : sigma) sigma_rows.push_back(f.rays[ri]);
    std::vector<IVec> proj = lattice_kernel_basis(sigma_rows, f.rank);
    int qrank = (int)proj.size();
    if (qrank != f.rank - k) throw std::logic_error("star_fan: projection rank mismatch");

    auto project = [&](const IVec& v) {
        IVec out(qrank, Integer(0));
        for (int i = 0; i < qrank; ++i)
            for (int j = 0; j < f.rank; ++j) out[i] += proj[i][j] * v[j];
        return out;
    };

    // images of rays of cones containing sigma, re-primitivized and deduped
    std::vector<IVec> new_rays;
    std::map<int, int> ray_map;   // old ray index -> new ray index
    std::vector<ConeKey> new_max;
    std::vector<ConeKey> old_of_new_max;
    for (int ci : f.maximal) {
        if (!is_subset(sigma, f.cones[ci])) continue;
        ConeKey img;
        for (int ri : f.cones[ci]) {
            if (std::binary_search(sigma.begin(), sigma.end(), ri)) continue;
            if (!ray_map.count(ri)) {
                IVec p = primitive_vector(project(f.rays[ri]));
                int found = -1;
                for (int t = 0; t < (int)new_rays.size(); ++t)
                    if (new_rays[t] == p) { found = t; break; }
                if (found < 0) {
                    new_rays.push_back(p);
                    found = (int)new_rays.size() - 1;
                }
                ray_map[ri] = found;
            }
            img.push_back(ray_map[ri]);
        }
        std::sort(img.begin(), img.end());
        new_max.push_back(img);
        old_of_new_max.push_back(f.cones[ci]);
    }
    StarFan s;
    s.fan = build_fan(qrank, new_rays, new_max);
    s.projection = std::move(proj);
    // map every old cone containing sigma to its image cone
    for (int ci = 0; ci < (int)f.cones.size(); ++ci) {
        if (!is_subset(sigma, f.cones[ci])) continue;
        ConeKey img;
        for (int ri : f.cones[ci]) {
            if (std::binary_search(sigma.begin(), sigma.end(), ri)) continue;
            img.push_back(ray_map.at(ri));
        }
        std::sort(img.begin(), img.end());
        int ni = s.fan.cone_index(img);
        if (ni < 0) throw std::logic_error("star_fan: image cone missing");
        s.cone_map[ci] = ni;
    }
    return s;
}

TropicalFanCycle stellar_subdivision(const TropicalFanCycle& c, const IVec& new_ray) {
    const Fan& f = c.fan;
    if (content(new_ray) == 0 || primitive_vector(new_ray) != new_ray)
        throw std::invalid_argument("stellar_subdivision: ray must be primitive");
    // locate the unique cone with new_ray in its relative interior
    int sigma0 = -1;
    for (int ci = 0; ci < (int)f.cones.size(); ++ci) {
        if (f.cones[ci].empty()) continue;
        auto x = solve(f.ray_matrix(ci).transpose(), to_rational(new_ray));
        if (!x) continue;
        bool all_pos = true;
        for (const Rational& v : *x)
            if (v <= 0) { all_pos = false; break; }
        if (all_pos) { sigma0 = ci; break; }
    }
    if (sigma0 < 0) throw std::invalid_argument("stellar_subdivision: ray not in support");

    std::vector<IVec> rays = f.rays;
    int u_idx = -1;
    for (int i = 0; i < (int)rays.size(); ++i)
        if (rays[i] == new_ray) u_idx = i;
    if (u_idx < 0) {
        rays.push_back(new_ray);
        u_idx = (int)rays.size() - 1;
    }

    const ConeKey& s0 = f.cones[sigma0];
    std::vector<ConeKey> new_max;
    std::vector<Integer> new_w;
    for (int mi : f.maximal) {
        const ConeKey& m = f.cones[mi];
        if (!is_subset(s0, m)) {
            new_max.push_back(m);
            new_w.push_back(c.weights.at(mi));
            continue;
        }
        for (int r : s0) {
            if (r == u_idx) {   // subdividing at an existing ray: piece = m itself
                new_max.push_back(m);
                new_w.push_back(c.weights.at(mi));
                continue;
            }
            ConeKey piece;
            for (int x : m)
                if (x != r) piece.push_back(x);
            piece.push_back(u_idx);
            std::sort(piece.begin(), piece.end());
            new_max.push_back(piece);
            new_w.push_back(c.weights.at(mi));
        }
    }
    // dedupe pieces (subdividing at an existing ray reproduces cones)
    std::vector<ConeKey> uniq;
    std::vector<Integer> uniq_w;
    for (size_t i = 0; i < new_max.size(); ++i) {
        bool seen = false;
        for (size_t j = 0; j < uniq.size(); ++j)
            if (uniq[j] == new_max[i]) {
                if (uniq_w[j] != new_w[i])
                    throw std::logic_error("stellar_subdivision: weight conflict");
                seen = true;
            }
        if (!seen) {
            uniq.push_back(new_max[i]);
            uniq_w.push_back(new_w[i]);
        }
    }
    Fan nf = build_fan(f.rank, rays, uniq);
    std::map<int, Integer> w;
    for (size_t i = 0; i < uniq.size(); ++i) w[nf.cone_index(uniq[i])] = uniq_w[i];
    return make_cycle(std::move(nf), std::move(w));
}

TropicalFanCycle product(const TropicalFanCycle& a, const TropicalFanCycle& b) {
    int n1 = a.fan.rank, n2 = b.fan.rank;
    std::vector<IVec> rays;
    for (const IVec& r : a.fan.rays) {
        IVec v(n1 + n2, Integer(0));
        for (int j = 0; j < n1; ++j) v[j] = r[j];
        rays.push_back(v);
    }
    for (const IVec& r : b.fan.rays) {
        IVec v(n1 + n2, Integer(0));
        for (int j = 0; j < n2; ++j) v[n1 + j] = r[j];
        rays.push_back(v);
    }
    int off = (int)a.fan.rays.size();
    std::vector<ConeKey> maxs;
    std::vector<Integer> ws;
    for (int ma : a.fan.maximal)
        for (int mb : b.fan.maximal) {
            ConeKey c = a.fan.cones[ma];
            for (int i : b.fan.cones[mb]) c.push_back(off + i);
            std::sort(c.begin(), c.end());
            maxs.push_back(c);
            ws.push_back(a.weights.at(ma) * b.weights.at(mb));
        }
    Fan nf = build_fan(n1 + n2, rays, maxs);
    std::map<int, Integer> w;
    for (size_t i = 0; i < maxs.size(); ++i) w[nf.cone_index(maxs[i])] = ws[i];
    return make_cycle(std::move(nf), std::move(w));
}

TropicalFanCycle restrict_to_stratum(const TropicalFanCycle& c, int cone) {
    if (cone < 0 || cone >= (int)c.fan.cones.size())
        throw std::invalid_argument("restrict_to_stratum: cone not in fan");
    if (c.fan.dim(cone) > c.dim)
        throw std::invalid_argument("restrict_to_stratum: cone dimension exceeds cycle dimension");
    StarFan s = star_fan(c.fan, cone);
    std::map<int, Integer> w;
    for (int mi : c.fan.maximal) {
        if (!s.cone_map.count(mi)) continue;
        int ni = s.cone_map.at(mi);
        if (w.count(ni)) throw std::logic_error("restrict_to_stratum: two maximal preimages");
        w[ni] = c.weights.at(mi);
    }
    return make_cycle(std::move(s.fan), std::move(w));
}

bool is_complete(const Fan& f) {
    if (f.rank == 0) return !f.cones.empty();
    if (f.dimension() != f.rank) return false;
    for (int m : f.maximal)
        if (f.dim(m) != f.rank) return false;
    for (int q : f.cones_of_dim(f.rank - 1)) {
        int count = 0;
        for (int m : f.maximal)
            if (is_subset(f.cones[q], f.cones[m])) ++count;
        if (count != 2) return false;
    }
    return !f.maximal.empty();
}

bool support_contains(const Fan& f, const QVec& point) {
    bool zero = true;
    for (const Rational& x : point)
        if (x != 0) zero = false;
    if (zero) return true;
    for (int m : f.maximal) {
        if (f.cones[m].empty()) continue;
        auto x = solve(f.ray_matrix(m).transpose(), point);
        if (!x) continue;
        bool ok = true;
        for (const Rational& v : *x)
            if (v < 0) { ok = false; break; }
        if (ok) return true;
    }
    return false;
}

// ---- Fourier-Motzkin geometric certification ----

namespace {

// inequality sum_k c[k] x[k] + d >= 0
struct Ineq {
    QVec c;
    Rational d;
};

void normalize(Ineq& q) {
    Rational scale = 0;
    for (const Rational& x : q.c)
        if (x != 0) { scale = abs(x); break; }
    if (scale == 0 && q.d != 0) scale = abs(q.d);
    if (scale == 0) return;
    for (Rational& x : q.c) x /= scale;
    q.d /= scale;
}

bool fm_feasible(std::vector<Ineq> sys, int nvars) {
    for (int v = 0; v < nvars; ++v) {
        std::vector<Ineq> pos, neg, rest;
        for (Ineq& q : sys) {
            if (q.c[v] > 0) pos.push_back(std::move(q));
            else if (q.c[v] < 0) neg.push_back(std::move(q));
            else rest.push_back(std::move(q));
        }
        for (const Ineq& p : pos)
            for (const Ineq& n : neg) {
                // eliminate x_v: p/p.c[v] + n/(-n.c[v])
                Ineq q;
                q.c.assign(p.c.size(), Rational(0));
                Rational a = p.c[v], b = -n.c[v];
                for (size_t k = 0; k < p.c.size(); ++k) q.c[k] = p.c[k] / a + n.c[k] / b;
                q.c[v] = 0;
                q.d = p.d / a + n.d / b;
                normalize(q);
                rest.push_back(std::move(q));
            }
        // dedupe
        std::sort(rest.begin(), rest.end(), [](const Ineq& a, const Ineq& b) {
            if (a.c != b.c) return a.c < b.c;
            return a.d < b.d;
        });
        rest.erase(std::unique(rest.begin(), rest.end(), [](const Ineq& a, const Ineq& b) {
                       return a.c == b.c && a.d == b.d;
                   }),
                   rest.end());
        sys = std::move(rest);
    }
    for (const Ineq& q : sys)
        if (q.d < 0) return false;
    return true;
}

}  // namespace

void check_fan_geometric(const Fan& f) {
    if (f.rank > 6)
        throw std::invalid_argument("check_fan_geometric: intended only for rank <= 6");
    for (size_t ai = 0; ai < f.maximal.size(); ++ai)
        for (size_t bi = ai + 1; bi < f.maximal.size(); ++bi) {
            const ConeKey& A = f.cones[f.maximal[ai]];
            const ConeKey& B = f.cones[f.maximal[bi]];
            ConeKey common = intersect_keys(A, B);
            int na = (int)A.size(), nb = (int)B.size();
            int nvars = na + nb;
            std::vector<Ineq> sys;
            auto push = [&](QVec c, Rational d) {
                Ineq q{std::move(c), std::move(d)};
                normalize(q);
                sys.push_back(std::move(q));
            };
            for (int i = 0; i < nvars; ++i) {
                QVec c(nvars, Rational(0));
                c[i] = 1;
                push(std::move(c), 0);   // x_i >= 0
            }
            for (int j = 0; j < f.rank; ++j) {   // sum lambda a - sum mu b = 0
                QVec c(nvars, Rational(0));
                for (int i = 0; i < na; ++i) c[i] = Rational(f.rays[A[i]][j]);
                for (int i = 0; i < nb; ++i) c[na + i] = -Rational(f.rays[B[i]][j]);
                QVec cneg(nvars);
                for (int i = 0; i < nvars; ++i) cneg[i] = -c[i];
                push(std::move(c), 0);
                push(std::move(cneg), 0);
            }
            {
                // some coordinate outside the common face is positive: sum = 1
                QVec c(nvars, Rational(0));
                bool any = false;
                for (int i = 0; i < na; ++i)
                    if (!std::binary_search(common.begin(), common.end(), A[i])) {
                        c[i] = 1;
                        any = true;
                    }
                for (int i = 0; i < nb; ++i)
                    if (!std::binary_search(common.begin(), common.end(), B[i])) {
                        c[na + i] = 1;
                        any = true;
                    }
                if (!any) continue;   // A == B == common, nothing to check
                QVec cneg(nvars);
                for (int i = 0; i < nvars; ++i) cneg[i] = -c[i];
                push(std::move(c), -1);
                push(std::move(cneg), 1);
            }
            if (fm_feasible(std::move(sys), nvars))
                throw std::invalid_argument("geometric check: cones " + key_to_string(A) +
                                            " and " + key_to_string(B) +
                                            " intersect outside their common face");
        }
}

}  // namespace trih
