#include "sb/projgeom.hpp"

#include <algorithm>
#include <map>

namespace sb {

namespace {

void check_context(const FieldContextPtr& a, const FieldContextPtr& b) {
    if (!a || !b || !a->same_field(*b)) {
        fail("ContextMismatch", "objects live in different field contexts");
    }
}

// Reduce v modulo the echelon rows (zeroes the pivot coordinates).
linalg::Row reduce_mod_rows(linalg::Row v, const linalg::Matrix& rows,
                            const std::vector<int>& pivots) {
    for (std::size_t r = 0; r < rows.size(); ++r) {
        const FieldElement f = v[pivots[r]];
        if (f.is_zero()) continue;
        for (std::size_t c = 0; c < v.size(); ++c) v[c] -= f * rows[r][c];
    }
    return v;
}

}  // namespace

ProjPoint::ProjPoint(FieldContextPtr ctx, std::vector<FieldElement> coords)
    : ctx_(std::move(ctx)), coords_(std::move(coords)) {
    if (coords_.empty()) fail("MalformedInput", "projective point needs coordinates");
    int first = -1;
    for (std::size_t i = 0; i < coords_.size(); ++i) {
        if (!coords_[i].is_zero()) {
            first = static_cast<int>(i);
            break;
        }
    }
    if (first < 0) fail("MalformedInput", "projective point has all coordinates zero");
    if (!coords_[first].is_one()) {
        const FieldElement s = coords_[first].inv();
        for (auto& c : coords_) c *= s;
    }
}

ProjPoint ProjPoint::frobenius(int e) const {
    std::vector<FieldElement> c;
    c.reserve(coords_.size());
    for (const auto& v : coords_) c.push_back(v.frobenius(e));
    return ProjPoint(ctx_, std::move(c));
}

bool ProjPoint::operator<(const ProjPoint& rhs) const {
    for (std::size_t i = 0; i < std::min(coords_.size(), rhs.coords_.size()); ++i) {
        if (coords_[i].coeffs() != rhs.coords_[i].coeffs()) {
            return coords_[i].coeffs() < rhs.coords_[i].coeffs();
        }
    }
    return coords_.size() < rhs.coords_.size();
}

std::string ProjPoint::str() const {
    std::string out = "[";
    for (std::size_t i = 0; i < coords_.size(); ++i) {
        if (i) out += ":";
        out += coords_[i].str();
    }
    return out + "]";
}

LinSubspace::LinSubspace(FieldContextPtr ctx, linalg::Matrix basis, std::vector<int> pivots)
    : ctx_(std::move(ctx)), basis_(std::move(basis)), pivots_(std::move(pivots)) {}

LinSubspace LinSubspace::from_rows(FieldContextPtr ctx, linalg::Matrix rows) {
    std::vector<int> pivots;
    linalg::Matrix basis = linalg::echelon_basis(std::move(rows), &pivots);
    if (basis.empty()) fail("MalformedInput", "subspace needs at least one nonzero row");
    return LinSubspace(std::move(ctx), std::move(basis), std::move(pivots));
}

LinSubspace LinSubspace::of_point(const ProjPoint& p) {
    return from_rows(p.context(), {p.coords()});
}

LinSubspace LinSubspace::full_space(FieldContextPtr ctx, int ambient_dim) {
    linalg::Matrix rows;
    for (int i = 0; i <= ambient_dim; ++i) {
        linalg::Row r = linalg::zero_row(ctx, ambient_dim + 1);
        r[i] = ctx->one();
        rows.push_back(std::move(r));
    }
    return from_rows(std::move(ctx), std::move(rows));
}

bool LinSubspace::contains(const ProjPoint& p) const {
    if (p.ambient_dim() != ambient_dim()) fail("AmbientMismatch", "ambient dimensions differ");
    return linalg::is_zero_row(reduce_mod_rows(p.coords(), basis_, pivots_));
}

LinSubspace LinSubspace::frobenius(int e) const {
    linalg::Matrix rows;
    rows.reserve(basis_.size());
    for (const auto& row : basis_) {
        linalg::Row r;
        r.reserve(row.size());
        for (const auto& v : row) r.push_back(v.frobenius(e));
        rows.push_back(std::move(r));
    }
    return from_rows(ctx_, std::move(rows));
}

ProjPoint LinSubspace::frame_coords(const ProjPoint& p) const {
    if (p.ambient_dim() != ambient_dim()) fail("AmbientMismatch", "ambient dimensions differ");
    // Solve sum_j u_j row_j = p.
    const int ncols = static_cast<int>(basis_.size());
    linalg::Matrix a(static_cast<std::size_t>(ambient_dim() + 1), linalg::zero_row(ctx_, ncols));
    for (int i = 0; i <= ambient_dim(); ++i) {
        for (int j = 0; j < ncols; ++j) a[i][j] = basis_[j][i];
    }
    auto u = linalg::solve(std::move(a), p.coords());
    if (!u) fail("PointNotOnSubspace", "point does not lie on the subspace");
    return ProjPoint(ctx_, std::move(*u));
}

ProjPoint LinSubspace::point_from_frame(const ProjPoint& u) const {
    if (u.ambient_dim() != dim()) fail("AmbientMismatch", "frame coordinate length mismatch");
    linalg::Row v = linalg::zero_row(ctx_, ambient_dim() + 1);
    for (std::size_t j = 0; j < basis_.size(); ++j) {
        for (std::size_t c = 0; c < v.size(); ++c) v[c] += u[static_cast<int>(j)] * basis_[j][c];
    }
    return ProjPoint(ctx_, std::move(v));
}

std::vector<std::vector<int>> monomial_exponents(int nvars, int degree) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur(nvars, 0);
    // graded-lex, x0 heaviest: first exponent descending, recurse on the rest
    auto rec = [&](auto&& self, int pos, int remaining) -> void {
        if (pos == nvars - 1) {
            cur[pos] = remaining;
            out.push_back(cur);
            return;
        }
        for (int e = remaining; e >= 0; --e) {
            cur[pos] = e;
            self(self, pos + 1, remaining - e);
        }
    };
    rec(rec, 0, degree);
    return out;
}

std::int64_t num_monomials(int nvars, int degree) {
    // C(nvars-1+degree, degree)
    std::int64_t r = 1;
    for (int i = 1; i <= degree; ++i) {
        r = r * (nvars - 1 + i) / i;
    }
    return r;
}

bool Form::is_zero() const {
    return std::all_of(coeffs.begin(), coeffs.end(),
                       [](const FieldElement& c) { return c.is_zero(); });
}

FieldElement Form::eval(const std::vector<FieldElement>& x) const {
    const auto exps = monomial_exponents(nvars, degree);
    FieldElement acc = ctx->zero();
    for (std::size_t k = 0; k < exps.size(); ++k) {
        if (coeffs[k].is_zero()) continue;
        FieldElement term = coeffs[k];
        for (int v = 0; v < nvars; ++v) {
            for (int e = 0; e < exps[k][v]; ++e) term *= x[v];
        }
        acc += term;
    }
    return acc;
}

LinSubspace span(const std::vector<SpanItem>& items) {
    if (items.empty()) fail("MalformedInput", "span of an empty list");
    FieldContextPtr ctx;
    int ambient = -1;
    linalg::Matrix rows;
    for (const auto& item : items) {
        if (std::holds_alternative<ProjPoint>(item)) {
            const auto& p = std::get<ProjPoint>(item);
            if (!ctx) {
                ctx = p.context();
                ambient = p.ambient_dim();
            }
            check_context(ctx, p.context());
            if (p.ambient_dim() != ambient) fail("AmbientMismatch", "ambient dimensions differ");
            rows.push_back(p.coords());
        } else {
            const auto& l = std::get<LinSubspace>(item);
            if (!ctx) {
                ctx = l.context();
                ambient = l.ambient_dim();
            }
            check_context(ctx, l.context());
            if (l.ambient_dim() != ambient) fail("AmbientMismatch", "ambient dimensions differ");
            for (const auto& r : l.basis()) rows.push_back(r);
        }
    }
    return LinSubspace::from_rows(ctx, std::move(rows));
}

std::optional<LinSubspace> meet(const LinSubspace& a, const LinSubspace& b) {
    check_context(a.context(), b.context());
    if (a.ambient_dim() != b.ambient_dim()) fail("AmbientMismatch", "ambient dimensions differ");
    const int n = a.ambient_dim() + 1;
    const auto& ctx = a.context();
    // U cap W is the annihilator of ann(U) + ann(W).
    linalg::Matrix ann_a = linalg::kernel(a.basis(), ctx, n);
    linalg::Matrix ann_b = linalg::kernel(b.basis(), ctx, n);
    for (auto& r : ann_b) ann_a.push_back(std::move(r));
    linalg::Matrix result = linalg::kernel(ann_a, ctx, n);
    if (result.empty()) return std::nullopt;
    return LinSubspace::from_rows(ctx, std::move(result));
}

ProjPoint project_from(const LinSubspace& center, const ProjPoint& x) {
    check_context(center.context(), x.context());
    if (center.ambient_dim() != x.ambient_dim()) fail("AmbientMismatch", "ambient dimensions differ");
    linalg::Row v = reduce_mod_rows(x.coords(), center.basis(), center.pivots());
    if (linalg::is_zero_row(v)) fail("PointInCenter", "point lies on the projection center");
    linalg::Row img;
    std::vector<bool> is_pivot(v.size(), false);
    for (int p : center.pivots()) is_pivot[p] = true;
    for (std::size_t c = 0; c < v.size(); ++c) {
        if (!is_pivot[c]) img.push_back(v[c]);
    }
    return ProjPoint(x.context(), std::move(img));
}

LinSubspace project_subspace_from(const LinSubspace& center, const LinSubspace& s) {
    check_context(center.context(), s.context());
    if (center.ambient_dim() != s.ambient_dim()) fail("AmbientMismatch", "ambient dimensions differ");
    std::vector<bool> is_pivot(static_cast<std::size_t>(center.ambient_dim()) + 1, false);
    for (int p : center.pivots()) is_pivot[p] = true;
    linalg::Matrix rows;
    for (const auto& row : s.basis()) {
        linalg::Row v = reduce_mod_rows(row, center.basis(), center.pivots());
        if (linalg::is_zero_row(v)) continue;
        linalg::Row img;
        for (std::size_t c = 0; c < v.size(); ++c) {
            if (!is_pivot[c]) img.push_back(v[c]);
        }
        rows.push_back(std::move(img));
    }
    if (rows.empty()) fail("PointInCenter", "subspace is contained in the projection center");
    return LinSubspace::from_rows(s.context(), std::move(rows));
}

bool is_general_for(const ProjPoint& p, const std::vector<LinSubspace>& subspaces, int n) {
    if (static_cast<int>(subspaces.size()) != n + 1) {
        fail("MalformedInput", "is_general_for expects n+1 subspaces");
    }
    for (const auto& l : subspaces) {
        check_context(p.context(), l.context());
        if (l.ambient_dim() != p.ambient_dim()) fail("AmbientMismatch", "ambient dimensions differ");
    }
    if (n == 0) return true;  // the empty sub-collection spans nothing
    for (std::size_t skip = 0; skip < subspaces.size(); ++skip) {
        linalg::Matrix rows;
        for (std::size_t i = 0; i < subspaces.size(); ++i) {
            if (i == skip) continue;
            for (const auto& r : subspaces[i].basis()) rows.push_back(r);
        }
        LinSubspace sp = LinSubspace::from_rows(p.context(), std::move(rows));
        if (sp.contains(p)) return false;
    }
    return true;
}

std::pair<LinSubspace, std::vector<ProjPoint>> transversal_with_components(
    const ProjPoint& p, const std::vector<LinSubspace>& subspaces) {
    if (subspaces.empty()) fail("MalformedInput", "transversal needs at least one subspace");
    const auto& ctx = p.context();
    const int ambient = p.ambient_dim();
    int total = 0;
    for (const auto& l : subspaces) {
        check_context(ctx, l.context());
        if (l.ambient_dim() != ambient) fail("AmbientMismatch", "ambient dimensions differ");
        total += l.dim() + 1;
    }
    if (total != ambient + 1) {
        fail("BadDimensionSum", "sum of (1+dim L_i) must equal 1+N");
    }
    // Stack all basis rows; spanning makes this square and invertible, so the
    // ambient space is the direct sum of the subspaces.
    linalg::Matrix rows;
    for (const auto& l : subspaces) {
        for (const auto& r : l.basis()) rows.push_back(r);
    }
    if (linalg::rank(rows) != ambient + 1) {
        fail("NotSpanning", "subspaces do not jointly span the ambient space");
    }
    // Solve p = sum_k c_k row_k.
    linalg::Matrix a(static_cast<std::size_t>(ambient + 1), linalg::zero_row(ctx, ambient + 1));
    for (int i = 0; i <= ambient; ++i) {
        for (int k = 0; k <= ambient; ++k) a[i][k] = rows[k][i];
    }
    auto sol = linalg::solve(std::move(a), p.coords());
    if (!sol) fail("NotSpanning", "decomposition failed");  // unreachable after rank check
    // Per-subspace components of p.
    std::vector<ProjPoint> components;
    linalg::Matrix comp_rows;
    int offset = 0;
    for (const auto& l : subspaces) {
        linalg::Row v = linalg::zero_row(ctx, ambient + 1);
        for (int j = 0; j <= l.dim(); ++j) {
            const FieldElement& c = (*sol)[offset + j];
            for (int col = 0; col <= ambient; ++col) v[col] += c * l.basis()[j][col];
        }
        offset += l.dim() + 1;
        if (linalg::is_zero_row(v)) {
            fail("NotGeneral", "point lies in the span of a proper sub-collection");
        }
        components.emplace_back(ctx, v);
        comp_rows.push_back(std::move(v));
    }
    LinSubspace m = LinSubspace::from_rows(ctx, std::move(comp_rows));
    return {std::move(m), std::move(components)};
}

LinSubspace transversal(const ProjPoint& p, const std::vector<LinSubspace>& subspaces) {
    return transversal_with_components(p, subspaces).first;
}

ProjPoint segre(const ProjPoint& x, const ProjPoint& y) {
    check_context(x.context(), y.context());
    linalg::Row out;
    out.reserve(static_cast<std::size_t>(x.ambient_dim() + 1) * (y.ambient_dim() + 1));
    for (int i = 0; i <= x.ambient_dim(); ++i) {
        for (int j = 0; j <= y.ambient_dim(); ++j) out.push_back(x[i] * y[j]);
    }
    return ProjPoint(x.context(), std::move(out));
}

ProjPoint veronese(const ProjPoint& x, int r) {
    if (r < 1) fail("MalformedInput", "veronese degree must be >= 1");
    const auto exps = monomial_exponents(x.ambient_dim() + 1, r);
    linalg::Row out;
    out.reserve(exps.size());
    for (const auto& e : exps) {
        FieldElement v = x.context()->one();
        for (int i = 0; i <= x.ambient_dim(); ++i) {
            for (int k = 0; k < e[i]; ++k) v *= x[i];
        }
        out.push_back(v);
    }
    return ProjPoint(x.context(), std::move(out));
}

namespace {

// Homogeneous multiplication in nvars variables: (deg da) * (deg db).
linalg::Row hom_mul(const linalg::Row& a, int da, const linalg::Row& b, int db, int nvars,
                    const FieldContextPtr& ctx) {
    const auto exps_a = monomial_exponents(nvars, da);
    const auto exps_b = monomial_exponents(nvars, db);
    const auto exps_o = monomial_exponents(nvars, da + db);
    std::map<std::vector<int>, int> index;
    for (std::size_t k = 0; k < exps_o.size(); ++k) index[exps_o[k]] = static_cast<int>(k);
    linalg::Row out = linalg::zero_row(ctx, static_cast<int>(exps_o.size()));
    for (std::size_t i = 0; i < exps_a.size(); ++i) {
        if (a[i].is_zero()) continue;
        for (std::size_t j = 0; j < exps_b.size(); ++j) {
            if (b[j].is_zero()) continue;
            std::vector<int> e(nvars);
            for (int v = 0; v < nvars; ++v) e[v] = exps_a[i][v] + exps_b[j][v];
            out[index[e]] += a[i] * b[j];
        }
    }
    return out;
}

}  // namespace

Form restrict_form(const Form& f, const LinSubspace& l) {
    check_context(f.ctx, l.context());
    if (f.nvars != l.ambient_dim() + 1) fail("AmbientMismatch", "form/subspace variable mismatch");
    const auto& ctx = f.ctx;
    const int svars = l.dim() + 1;
    const auto ambient_exps = monomial_exponents(f.nvars, f.degree);
    linalg::Row out = linalg::zero_row(ctx, static_cast<int>(num_monomials(svars, f.degree)));
    // Linear forms: x_j restricted = sum_i basis[i][j] u_i.
    std::vector<linalg::Row> linear(static_cast<std::size_t>(f.nvars));
    for (int j = 0; j < f.nvars; ++j) {
        linalg::Row lin = linalg::zero_row(ctx, svars);
        for (int i = 0; i < svars; ++i) lin[i] = l.basis()[i][j];
        linear[j] = std::move(lin);
    }
    for (std::size_t k = 0; k < ambient_exps.size(); ++k) {
        if (f.coeffs[k].is_zero()) continue;
        linalg::Row term = {ctx->one()};
        int deg = 0;
        for (int j = 0; j < f.nvars; ++j) {
            for (int e = 0; e < ambient_exps[k][j]; ++e) {
                term = hom_mul(term, deg, linear[j], 1, svars, ctx);
                ++deg;
            }
        }
        // deg == f.degree
        for (std::size_t i = 0; i < out.size(); ++i) out[i] += f.coeffs[k] * term[i];
    }
    return Form{ctx, svars, f.degree, std::move(out)};
}

FormBasis restricted_form_space(const FieldContextPtr& ctx, int ambient_dim, int degree,
                                const std::vector<FormConstraint>& constraints) {
    const int nvars = ambient_dim + 1;
    const auto ambient_exps = monomial_exponents(nvars, degree);
    const int M = static_cast<int>(ambient_exps.size());
    linalg::Matrix cond;  // rows: linear conditions on the M coefficients
    for (const auto& cs : constraints) {
        if (cs.section.is_zero()) {
            fail("DegenerateConstraint", "constraint section is identically zero");
        }
        if (cs.section.nvars != cs.subspace.dim() + 1 || cs.section.degree != degree) {
            fail("MalformedInput", "constraint section has incompatible shape");
        }
        check_context(ctx, cs.subspace.context());
        const int mi = static_cast<int>(num_monomials(cs.section.nvars, degree));
        // Column a of R holds the restriction of the a-th ambient monomial.
        linalg::Matrix restr(static_cast<std::size_t>(mi), linalg::zero_row(ctx, M));
        for (int a = 0; a < M; ++a) {
            linalg::Row unit = linalg::zero_row(ctx, M);
            unit[a] = ctx->one();
            Form mono{ctx, nvars, degree, unit};
            Form res = restrict_form(mono, cs.subspace);
            for (int j = 0; j < mi; ++j) restr[j][a] = res.coeffs[j];
        }
        int jstar = -1;
        for (int j = 0; j < mi; ++j) {
            if (!cs.section.coeffs[j].is_zero()) {
                jstar = j;
                break;
            }
        }
        // Proportionality to s: s[j*] * (Rf)[j] - s[j] * (Rf)[j*] = 0 for j != j*.
        for (int j = 0; j < mi; ++j) {
            if (j == jstar) continue;
            linalg::Row row = linalg::zero_row(ctx, M);
            for (int a = 0; a < M; ++a) {
                row[a] = cs.section.coeffs[jstar] * restr[j][a] -
                         cs.section.coeffs[j] * restr[jstar][a];
            }
            cond.push_back(std::move(row));
        }
    }
    linalg::Matrix basis = linalg::kernel(cond, ctx, M);
    return FormBasis{ctx, ambient_dim, degree, std::move(basis)};
}

ProjPoint apply_forms(const FormBasis& w, const ProjPoint& x) {
    check_context(w.ctx, x.context());
    if (x.ambient_dim() != w.ambient_dim) fail("AmbientMismatch", "ambient dimensions differ");
    linalg::Row vals;
    vals.reserve(w.basis.size());
    bool all_zero = true;
    for (int i = 0; i < w.dim(); ++i) {
        FieldElement v = w.form(i).eval(x.coords());
        all_zero = all_zero && v.is_zero();
        vals.push_back(std::move(v));
    }
    if (vals.empty() || all_zero) {
        fail("IndeterminacyLocus", "all basis forms vanish at the point");
    }
    return ProjPoint(w.ctx, std::move(vals));
}

std::vector<FieldElement> grass_big_cell(const LinSubspace& l) {
    const int m = l.dim();
    for (int i = 0; i <= m; ++i) {
        if (l.pivots()[i] != i) {
            fail("NotInBigCell", "subspace pivots are not {0..m}");
        }
    }
    std::vector<FieldElement> out;
    for (int r = 0; r <= m; ++r) {
        for (int c = m + 1; c <= l.ambient_dim(); ++c) out.push_back(l.basis()[r][c]);
    }
    return out;
}

LinSubspace grass_from_cell(const FieldContextPtr& ctx, const std::vector<FieldElement>& coords,
                            int m, int n) {
    const int width = n - m;
    if (static_cast<int>(coords.size()) != (m + 1) * width) {
        fail("MalformedInput", "big-cell coordinate count mismatch");
    }
    linalg::Matrix rows;
    for (int r = 0; r <= m; ++r) {
        linalg::Row row = linalg::zero_row(ctx, n + 1);
        row[r] = ctx->one();
        for (int c = 0; c < width; ++c) row[m + 1 + c] = coords[r * width + c];
        rows.push_back(std::move(row));
    }
    return LinSubspace::from_rows(ctx, std::move(rows));
}

std::vector<FieldElement> bundle_fiber_coords(const LinSubspace& l, const ProjPoint& p) {
    if (!l.contains(p)) fail("PointNotOnSubspace", "point is not on the subspace");
    const int m = l.dim();
    if (m == 0) return {};
    LinSubspace img = project_subspace_from(LinSubspace::of_point(p), l);
    return grass_big_cell(img);  // NotInBigCell propagates
}

LinSubspace bundle_fiber_from_coords(const ProjPoint& p, const std::vector<FieldElement>& coords,
                                     int m) {
    const int n = p.ambient_dim();
    if (m == 0) {
        if (!coords.empty()) fail("MalformedInput", "expected empty coordinate tuple");
        return LinSubspace::of_point(p);
    }
    if (static_cast<int>(coords.size()) != m * (n - m)) {
        fail("MalformedInput", "bundle coordinate count mismatch");
    }
    LinSubspace quotient = grass_from_cell(p.context(), coords, m - 1, n - 1);
    int pivot = 0;
    while (p[pivot].is_zero()) ++pivot;
    linalg::Matrix rows = {p.coords()};
    for (const auto& qrow : quotient.basis()) {
        linalg::Row lift = linalg::zero_row(p.context(), n + 1);
        int src = 0;
        for (int c = 0; c <= n; ++c) {
            if (c == pivot) continue;
            lift[c] = qrow[src++];
        }
        rows.push_back(std::move(lift));
    }
    return LinSubspace::from_rows(p.context(), std::move(rows));
}

}  // namespace sb
