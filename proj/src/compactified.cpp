#include "trih/compactified.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace trih {

namespace {

bool is_subset(const ConeKey& a, const ConeKey& b) {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

}  // namespace

int CompactifiedCellComplex::dim(int cell) const {
    const CCell& c = cells[cell];
    return (int)cycle.fan.cones[c.sigma].size() - (int)cycle.fan.cones[c.tau].size();
}

std::vector<int> CompactifiedCellComplex::cells_of_dim(int q) const {
    std::vector<int> out;
    for (int i = 0; i < (int)cells.size(); ++i)
        if (dim(i) == q) out.push_back(i);
    return out;
}

std::vector<int> CompactifiedCellComplex::free_rays(int cell) const {
    const CCell& c = cells[cell];
    const ConeKey& t = cycle.fan.cones[c.tau];
    std::vector<int> out;
    for (int r : cycle.fan.cones[c.sigma])
        if (!std::binary_search(t.begin(), t.end(), r)) out.push_back(r);
    return out;
}

bool CompactifiedCellComplex::is_smooth(int cell) const {
    return cells[cell].tau == origin_cone && dim(cell) >= d() - 1;
}

std::vector<int> CompactifiedCellComplex::singular_cells() const {
    std::vector<int> out;
    for (int i = 0; i < (int)cells.size(); ++i)
        if (!is_smooth(i)) out.push_back(i);
    return out;
}

bool CompactifiedCellComplex::is_face(int a, int b) const {
    // (tau_a, sigma_a) is a face of (tau_b, sigma_b) iff
    // tau_b ⊆ tau_a ⊆ sigma_a ⊆ sigma_b
    const ConeKey& ta = cycle.fan.cones[cells[a].tau];
    const ConeKey& tb = cycle.fan.cones[cells[b].tau];
    const ConeKey& sa = cycle.fan.cones[cells[a].sigma];
    const ConeKey& sb = cycle.fan.cones[cells[b].sigma];
    return is_subset(tb, ta) && is_subset(sa, sb);
}

std::vector<std::pair<int, int>> CompactifiedCellComplex::boundary(int cell) const {
    std::vector<std::pair<int, int>> out;
    const CCell& c = cells[cell];
    std::vector<int> free = free_rays(cell);
    const Fan& f = cycle.fan;
    for (int i = 0; i < (int)free.size(); ++i) {
        int sign = (i % 2 == 0) ? 1 : -1;
        ConeKey tau_inf = f.cones[c.tau];
        tau_inf.push_back(free[i]);
        std::sort(tau_inf.begin(), tau_inf.end());
        int ti = f.cone_index(tau_inf);
        if (ti < 0) throw std::logic_error("boundary: infinity face cone missing");
        out.push_back({index.at({ti, c.sigma}), sign});

        ConeKey sig_zero;
        for (int r : f.cones[c.sigma])
            if (r != free[i]) sig_zero.push_back(r);
        int si = f.cone_index(sig_zero);
        if (si < 0) throw std::logic_error("boundary: zero face cone missing");
        out.push_back({index.at({c.tau, si}), -sign});
    }
    return out;
}

std::vector<int> CompactifiedCellComplex::closed_faces(int cell) const {
    std::vector<int> out;
    for (int i = 0; i < (int)cells.size(); ++i)
        if (is_face(i, cell)) out.push_back(i);
    return out;
}

std::vector<int> CompactifiedCellComplex::tops_containing(int cell) const {
    std::vector<int> out;
    for (int t : cells_of_dim(d())) {
        if (cells[t].tau != origin_cone) continue;
        if (is_face(cell, t)) out.push_back(t);
    }
    return out;
}

Integer CompactifiedCellComplex::weight(int top_cell) const {
    return cycle.weights.at(cells[top_cell].sigma);
}

std::string CompactifiedCellComplex::cell_name(int cell) const {
    std::ostringstream os;
    os << "(" << cycle.fan.cone_name(cells[cell].tau) << "|"
       << cycle.fan.cone_name(cells[cell].sigma) << ")";
    return os.str();
}

CompactifiedCellComplex canonical_compactification(const TropicalFanCycle& c) {
    CompactifiedCellComplex x;
    x.cycle = c;
    const Fan& f = x.cycle.fan;
    x.origin_cone = f.cone_index(ConeKey{});
    if (x.origin_cone < 0) throw std::logic_error("fan without origin cone");
    std::vector<std::pair<int, std::pair<int, int>>> order;
    for (int t = 0; t < (int)f.cones.size(); ++t)
        for (int s = 0; s < (int)f.cones.size(); ++s) {
            if (!is_subset(f.cones[t], f.cones[s])) continue;
            order.push_back({(int)f.cones[s].size() - (int)f.cones[t].size(), {t, s}});
        }
    std::sort(order.begin(), order.end());
    for (const auto& [dim, ts] : order) {
        x.index[{ts.first, ts.second}] = (int)x.cells.size();
        x.cells.push_back({ts.first, ts.second});
    }
    return x;
}

bool is_regular_at_infinity(const CompactifiedCellComplex& x) {
    const Fan& f = x.cycle.fan;
    for (int i = 0; i < (int)x.cells.size(); ++i) {
        const CCell& c = x.cells[i];
        // full cube of faces: 3^k cells below, and the ±faces of every free
        // ray must be present
        long expected = 1;
        for (int t = 0; t < x.dim(i); ++t) expected *= 3;
        if ((long)x.closed_faces(i).size() != expected) return false;
        for (int r : x.free_rays(i)) {
            ConeKey tau_inf = f.cones[c.tau];
            tau_inf.push_back(r);
            std::sort(tau_inf.begin(), tau_inf.end());
            int ti = f.cone_index(tau_inf);
            if (ti < 0 || !x.index.count({ti, c.sigma})) return false;
            ConeKey sig_zero;
            for (int s : f.cones[c.sigma])
                if (s != r) sig_zero.push_back(s);
            int si = f.cone_index(sig_zero);
            if (si < 0 || !x.index.count({c.tau, si})) return false;
        }
        // every boundary cell sits under the mobile cell with the same sigma
        if (!x.index.count({x.origin_cone, c.sigma})) return false;
    }
    return true;
}

CompactifiedCellComplex product_complex(const CompactifiedCellComplex& a,
                                        const CompactifiedCellComplex& b) {
    TropicalFanCycle pc = product(a.cycle, b.cycle);
    CompactifiedCellComplex x = canonical_compactification(pc);
    if (x.cells.size() != a.cells.size() * b.cells.size())
        throw std::logic_error("product_complex: cell count is not the product");
    return x;
}

long ChainStructure::euler_characteristic() const {
    long chi = 0;
    for (int q = 0; q < (int)by_q.size(); ++q)
        chi += (q % 2 == 0 ? 1 : -1) * (long)by_q[q].size();
    return chi;
}

ChainStructure native_structure(const CompactifiedCellComplex& x) {
    ChainStructure s;
    s.x = &x;
    s.barycentric = false;
    s.by_q.resize(x.d() + 1);
    std::vector<std::pair<int, int>> where(x.cells.size(), {-1, -1});   // cell -> (q, idx)
    for (int q = 0; q <= x.d(); ++q)
        for (int c : x.cells_of_dim(q)) {
            where[c] = {q, (int)s.by_q[q].size()};
            ChainCell cc;
            cc.carrier = c;
            s.by_q[q].push_back(cc);
        }
    for (int q = 0; q <= x.d(); ++q)
        for (ChainCell& cc : s.by_q[q]) {
            if (q > 0)
                for (auto [face, sign] : x.boundary(cc.carrier))
                    cc.faces.push_back({where[face].second, sign});
            for (int f : x.closed_faces(cc.carrier))
                if (!x.is_smooth(f)) cc.strata.push_back({f, x.dim(f)});
        }
    return s;
}

ChainStructure second_barycentric_subdivision(const CompactifiedCellComplex& x) {
    ChainStructure first = barycentric_subdivision(x);
    // elements of the new poset: the first-subdivision simplices, identified
    // by their flag; the face order is subchain inclusion (chains have
    // strictly increasing cell ids, so subset testing suffices)
    std::vector<std::vector<int>> elems;
    for (const auto& level : first.by_q)
        for (const ChainCell& cc : level) elems.push_back(cc.poset_chain);
    std::sort(elems.begin(), elems.end());

    auto carrier_of = [&](const std::vector<int>& chain) { return chain.back(); };

    // enumerate flags of elements under strict subchain inclusion
    std::map<std::vector<std::vector<int>>, std::pair<int, int>> where;
    for (const auto& e : elems) {
        std::vector<std::vector<std::vector<int>>> stack = {{e}};
        while (!stack.empty()) {
            auto flag = stack.back();
            stack.pop_back();
            if (where.count(flag)) continue;
            where[flag] = {(int)flag.size() - 1, -1};
            const std::vector<int>& bottom = flag.front();
            if (bottom.size() > 1) {
                // proper nonempty subchains of the bottom element
                int m = (int)bottom.size();
                for (int mask = 1; mask < (1 << m) - 1; ++mask) {
                    std::vector<int> sub;
                    for (int b = 0; b < m; ++b)
                        if (mask & (1 << b)) sub.push_back(bottom[b]);
                    auto ext = flag;
                    ext.insert(ext.begin(), sub);
                    stack.push_back(ext);
                }
            }
        }
    }
    std::vector<std::vector<std::vector<int>>> flags;
    for (const auto& [flag, qi] : where) flags.push_back(flag);
    std::sort(flags.begin(), flags.end(), [](const auto& a, const auto& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    });

    ChainStructure s;
    s.x = &x;
    s.barycentric = true;
    s.by_q.resize(x.d() + 1);
    for (const auto& flag : flags) {
        int q = (int)flag.size() - 1;
        where[flag] = {q, (int)s.by_q[q].size()};
        ChainCell cc;
        cc.carrier = carrier_of(flag.back());
        // dim(cell ∩ rel.int S) = last index whose element is carried by S
        for (int s_cell : x.singular_cells()) {
            int k = -1;
            for (int i = 0; i < (int)flag.size(); ++i)
                if (carrier_of(flag[i]) == s_cell) k = i;
            if (k >= 0) cc.strata.push_back({s_cell, k});
        }
        s.by_q[q].push_back(cc);
        // keep the flag for face lookups below via a side table
    }
    // boundary maps: drop the i-th element with sign (-1)^i
    std::map<std::vector<std::vector<int>>, int> idx_of;
    for (const auto& [flag, qi] : where)
        if (qi.second >= 0) idx_of[flag] = qi.second;
    for (const auto& flag : flags) {
        int q = (int)flag.size() - 1;
        if (q == 0) continue;
        ChainCell& cc = s.by_q[q][where[flag].second];
        for (int i = 0; i <= q; ++i) {
            auto sub = flag;
            sub.erase(sub.begin() + i);
            cc.faces.push_back({idx_of.at(sub), (i % 2 == 0) ? 1 : -1});
        }
    }
    return s;
}

ChainStructure barycentric_subdivision(const CompactifiedCellComplex& x) {
    ChainStructure s;
    s.x = &x;
    s.barycentric = true;
    s.by_q.resize(x.d() + 1);
    std::map<std::vector<int>, std::pair<int, int>> where;   // flag -> (q, idx)

    // enumerate flags C_0 < ... < C_q by extending downward from each cell
    std::vector<std::vector<int>> frontier;
    for (int c = 0; c < (int)x.cells.size(); ++c) frontier.push_back({c});
    for (const auto& start : frontier) {
        // depth-first over strictly decreasing faces prepended to the flag
        std::vector<std::vector<int>> stack = {start};
        while (!stack.empty()) {
            std::vector<int> flag = stack.back();
            stack.pop_back();
            if (!where.count(flag)) {
                int q = (int)flag.size() - 1;
                where[flag] = {q, -1};   // placeholder; index assigned later
                for (int f : x.closed_faces(flag.front())) {
                    if (f == flag.front()) continue;
                    std::vector<int> ext;
                    ext.push_back(f);
                    ext.insert(ext.end(), flag.begin(), flag.end());
                    stack.push_back(ext);
                }
            }
        }
    }
    // deterministic order: by q, then lexicographic flag
    std::vector<std::vector<int>> flags;
    for (const auto& [flag, qi] : where) flags.push_back(flag);
    std::sort(flags.begin(), flags.end(), [](const auto& a, const auto& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    });
    for (const auto& flag : flags) {
        int q = (int)flag.size() - 1;
        where[flag] = {q, (int)s.by_q[q].size()};
        ChainCell cc;
        cc.carrier = flag.back();
        cc.poset_chain = flag;
        for (int i = 0; i < (int)flag.size(); ++i)
            if (!x.is_smooth(flag[i])) cc.strata.push_back({flag[i], i});
        s.by_q[q].push_back(cc);
    }
    // simplicial boundary: drop the i-th entry with sign (-1)^i
    for (int q = 1; q <= x.d(); ++q)
        for (ChainCell& cc : s.by_q[q]) {
            for (int i = 0; i < (int)cc.poset_chain.size(); ++i) {
                std::vector<int> sub = cc.poset_chain;
                sub.erase(sub.begin() + i);
                auto it = where.find(sub);
                if (it == where.end()) throw std::logic_error("barycentric: missing face flag");
                cc.faces.push_back({it->second.second, (i % 2 == 0) ? 1 : -1});
            }
        }
    return s;
}

}  // namespace trih
