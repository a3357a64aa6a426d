// (p,q)-indexed tables of nonnegative dimensions, 0 outside [0,d]^2.

#ifndef TRIH_TABLE_HPP
#define TRIH_TABLE_HPP

#include <vector>

namespace trih {

struct DimensionTable {
    int d = 0;
    std::vector<std::vector<int>> v;   // (d+1) x (d+1)

    DimensionTable() = default;
    explicit DimensionTable(int dim) : d(dim), v(dim + 1, std::vector<int>(dim + 1, 0)) {}

    int at(int p, int q) const {
        if (p < 0 || q < 0 || p > d || q > d) return 0;
        return v[p][q];
    }
    void set(int p, int q, int value) { v[p][q] = value; }

    bool operator==(const DimensionTable& other) const = default;

    bool is_diagonal() const {
        for (int p = 0; p <= d; ++p)
            for (int q = 0; q <= d; ++q)
                if (p != q && v[p][q] != 0) return false;
        return true;
    }
    bool is_symmetric_under_duality() const {
        for (int p = 0; p <= d; ++p)
            for (int q = 0; q <= d; ++q)
                if (v[p][q] != v[d - p][d - q]) return false;
        return true;
    }
};

inline DimensionTable convolve(const DimensionTable& a, const DimensionTable& b) {
    DimensionTable out(a.d + b.d);
    for (int p = 0; p <= out.d; ++p)
        for (int q = 0; q <= out.d; ++q) {
            int s = 0;
            for (int p1 = 0; p1 <= a.d; ++p1)
                for (int q1 = 0; q1 <= a.d; ++q1)
                    s += a.at(p1, q1) * b.at(p - p1, q - q1);
            out.set(p, q, s);
        }
    return out;
}

}  // namespace trih

#endif
