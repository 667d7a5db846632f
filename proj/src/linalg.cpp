#include "sb/linalg.hpp"

#include <algorithm>

namespace sb::linalg {

Row zero_row(const FieldContextPtr& ctx, int n) {
    return Row(static_cast<std::size_t>(n), ctx->zero());
}

bool is_zero_row(const Row& r) {
    return std::all_of(r.begin(), r.end(), [](const FieldElement& v) { return v.is_zero(); });
}

std::vector<int> rref(Matrix& m) {
    std::vector<int> pivots;
    if (m.empty()) return pivots;
    const std::size_t rows = m.size();
    const std::size_t cols = m[0].size();
    std::size_t row = 0;
    for (std::size_t col = 0; col < cols && row < rows; ++col) {
        std::size_t sel = rows;
        for (std::size_t r = row; r < rows; ++r) {
            if (!m[r][col].is_zero()) {
                sel = r;
                break;
            }
        }
        if (sel == rows) continue;
        std::swap(m[sel], m[row]);
        const FieldElement inv = m[row][col].inv();
        for (std::size_t c = 0; c < cols; ++c) m[row][c] *= inv;
        for (std::size_t r = 0; r < rows; ++r) {
            if (r == row || m[r][col].is_zero()) continue;
            const FieldElement f = m[r][col];
            for (std::size_t c = 0; c < cols; ++c) {
                m[r][c] -= f * m[row][c];
            }
        }
        pivots.push_back(static_cast<int>(col));
        ++row;
    }
    return pivots;
}

Matrix echelon_basis(Matrix m, std::vector<int>* pivots) {
    std::vector<int> piv = rref(m);
    m.resize(piv.size());
    if (pivots) *pivots = std::move(piv);
    return m;
}

int rank(Matrix m) {
    return static_cast<int>(rref(m).size());
}

Matrix kernel(const Matrix& m, const FieldContextPtr& ctx, int ncols) {
    Matrix red = m;
    std::vector<int> piv = rref(red);
    std::vector<bool> is_pivot(ncols, false);
    for (int c : piv) is_pivot[c] = true;
    Matrix out;
    for (int freec = 0; freec < ncols; ++freec) {
        if (is_pivot[freec]) continue;
        Row v = zero_row(ctx, ncols);
        v[freec] = ctx->one();
        for (std::size_t r = 0; r < piv.size(); ++r) {
            v[piv[r]] = -red[r][freec];
        }
        out.push_back(std::move(v));
    }
    rref(out);  // canonical basis
    return out;
}

std::optional<Row> solve(Matrix a, Row b) {
    const std::size_t rows = a.size();
    const std::size_t cols = rows ? a[0].size() : 0;
    for (std::size_t r = 0; r < rows; ++r) a[r].push_back(b[r]);
    Matrix aug = std::move(a);
    std::vector<int> piv = rref(aug);
    if (!piv.empty() && piv.back() == static_cast<int>(cols)) return std::nullopt;
    const FieldContextPtr& ctx = b.empty() ? FieldContextPtr() : b[0].context();
    Row x = zero_row(ctx, static_cast<int>(cols));
    for (std::size_t r = 0; r < piv.size(); ++r) {
        x[piv[r]] = aug[r][cols];
    }
    return x;
}

}  // namespace sb::linalg
