#include "sb/weil.hpp"

#include <algorithm>
#include <numeric>

namespace sb {

namespace {

// Expansion of ambient elements in the basis {b_i * t^j : i < e, j < d} of
// F_{p^(e*d)} over F_p, where {b_i} is the echelon basis of the subfield
// F_{p^e}. Used to split an extension element into d base-field scalars.
class TowerExpansion {
public:
    TowerExpansion(const FieldContextPtr& ctx, int e, int d) : ctx_(ctx), e_(e), d_(d) {
        const int D = ctx->degree();
        sub_basis_ = subfield_basis(ctx, e);
        const FieldElement t = ctx->gen();
        products_.reserve(static_cast<std::size_t>(e) * d);
        FieldElement tpow = ctx->one();
        for (int j = 0; j < d; ++j) {
            for (int i = 0; i < e; ++i) products_.push_back(sub_basis_[i] * tpow);
            tpow *= t;
        }
        // Solve the D x D system over F_p once per expansion call; D is small.
        (void)D;
    }

    // y = sum_j c_j t^j with c_j in the subfield; returns (c_0, ..., c_{d-1}).
    std::vector<FieldElement> expand(const FieldElement& y) const {
        const int D = ctx_->degree();
        const std::uint64_t p = ctx_->characteristic();
        // Augmented Gaussian elimination over F_p.
        std::vector<std::vector<std::uint64_t>> m(
            static_cast<std::size_t>(D), std::vector<std::uint64_t>(static_cast<std::size_t>(D) + 1, 0));
        for (int col = 0; col < D; ++col) {
            const auto& c = products_[col].coeffs();
            for (int row = 0; row < D; ++row) m[row][col] = c[row];
        }
        for (int row = 0; row < D; ++row) m[row][D] = y.coeffs()[row];
        std::vector<std::uint64_t> sol(static_cast<std::size_t>(D), 0);
        int r = 0;
        std::vector<int> pivcol;
        for (int col = 0; col < D && r < D; ++col) {
            int sel = -1;
            for (int i = r; i < D; ++i) {
                if (m[i][col] != 0) {
                    sel = i;
                    break;
                }
            }
            if (sel < 0) continue;
            std::swap(m[sel], m[r]);
            const std::uint64_t inv = [&] {
                std::uint64_t acc = 1, b = m[r][col], ee = p - 2;
                while (ee) {
                    if (ee & 1) acc = acc * b % p;
                    b = b * b % p;
                    ee >>= 1;
                }
                return acc;
            }();
            for (int c2 = col; c2 <= D; ++c2) m[r][c2] = m[r][c2] * inv % p;
            for (int i = 0; i < D; ++i) {
                if (i == r || m[i][col] == 0) continue;
                const std::uint64_t f = m[i][col];
                for (int c2 = col; c2 <= D; ++c2) {
                    m[i][c2] = (m[i][c2] + p - f * m[r][c2] % p) % p;
                }
            }
            pivcol.push_back(col);
            ++r;
        }
        for (std::size_t i = 0; i < pivcol.size(); ++i) sol[pivcol[i]] = m[i][D];
        // Reassemble the d subfield scalars.
        std::vector<FieldElement> out;
        out.reserve(d_);
        for (int j = 0; j < d_; ++j) {
            FieldElement c = ctx_->zero();
            for (int i = 0; i < e_; ++i) {
                const std::uint64_t a = sol[static_cast<std::size_t>(j) * e_ + i];
                if (a == 0) continue;
                c += ctx_->element({a}) * sub_basis_[i];
            }
            out.push_back(std::move(c));
        }
        return out;
    }

private:
    FieldContextPtr ctx_;
    int e_;
    int d_;
    std::vector<FieldElement> sub_basis_;
    std::vector<FieldElement> products_;
};

void require_tower_top(const FieldContextPtr& ctx, int base_e, int d) {
    if (base_e < 1 || d < 1 || ctx->degree() != base_e * d) {
        fail("PreconditionFailed",
             "the ambient field must realize the top of the tower (degree = base_e * d)");
    }
}

[[noreturn]] void rethrow_staged(const Error& e, const std::string& stage) {
    throw Error(e.code(), "stage " + stage + ": " + e.what());
}

}  // namespace

ConjugateTuple ConjugateTuple::make(int base_e, int d, ProjPoint point) {
    const FieldContextPtr& ctx = point.context();
    if (base_e < 1 || d < 1 || ctx->degree() % (base_e * d) != 0) {
        fail("BadSubfieldDegree", "base_e * d must divide the ambient degree");
    }
    for (const auto& c : point.coords()) {
        if (!c.in_subfield(base_e * d)) {
            fail("MalformedInput", "tuple coordinates must lie in F_{p^(base_e*d)}");
        }
    }
    return ConjugateTuple{ctx, base_e, d, std::move(point)};
}

std::vector<ProjPoint> conjugates(const ConjugateTuple& t) {
    std::vector<ProjPoint> out;
    out.reserve(t.d);
    ProjPoint cur = t.point;
    for (int i = 0; i < t.d; ++i) {
        out.push_back(cur);
        if (i + 1 < t.d) cur = cur.frobenius(t.base_e);
    }
    return out;
}

LinSubspace conjugate_span(const ConjugateTuple& t) {
    const auto orbit = conjugates(t);
    linalg::Matrix rows;
    for (const auto& p : orbit) rows.push_back(p.coords());
    if (linalg::rank(rows) != t.d) {
        fail("DegenerateOrbit", "the conjugates are linearly dependent");
    }
    LinSubspace l = LinSubspace::from_rows(t.ctx, std::move(rows));
    for (const auto& row : l.basis()) {
        for (const auto& v : row) {
            if (!v.in_subfield(t.base_e)) {
                fail("InternalError", "conjugate span basis is not Frobenius-stable");
            }
        }
    }
    return l;
}

std::vector<FieldElement> weil_param_forward(const ConjugateTuple& t) {
    require_tower_top(t.ctx, t.base_e, t.d);
    if (t.point[0].is_zero()) {
        fail("OutsideChart", "coordinate 0 vanishes; the canonical chart misses the point");
    }
    const int s = t.point.ambient_dim();
    TowerExpansion tower(t.ctx, t.base_e, t.d);
    std::vector<FieldElement> out;
    out.reserve(static_cast<std::size_t>(s) * t.d);
    // Canonical representative has coordinate 0 equal to 1.
    for (int i = 1; i <= s; ++i) {
        for (auto& c : tower.expand(t.point[i])) out.push_back(std::move(c));
    }
    return out;
}

ConjugateTuple weil_param_inverse(const FieldContextPtr& ctx, int base_e, int d,
                                  const std::vector<FieldElement>& coords) {
    require_tower_top(ctx, base_e, d);
    if (d <= 0 || coords.size() % static_cast<std::size_t>(d) != 0) {
        fail("MalformedInput", "coordinate count must be a multiple of d");
    }
    const int s = static_cast<int>(coords.size()) / d;
    for (const auto& c : coords) {
        if (!c.in_subfield(base_e)) fail("MalformedInput", "affine scalars must be base-field");
    }
    const FieldElement t = ctx->gen();
    linalg::Row pt;
    pt.push_back(ctx->one());
    for (int i = 0; i < s; ++i) {
        FieldElement y = ctx->zero();
        FieldElement tpow = ctx->one();
        for (int j = 0; j < d; ++j) {
            y += coords[static_cast<std::size_t>(i) * d + j] * tpow;
            tpow *= t;
        }
        pt.push_back(std::move(y));
    }
    return ConjugateTuple::make(base_e, d, ProjPoint(ctx, std::move(pt)));
}

WeilProductImage weil_product_forward(const ConjugateTuple& t) {
    require_tower_top(t.ctx, t.base_e, t.d);
    const int m = t.d - 1;
    const int n = t.point.ambient_dim();
    if (m >= n) fail("PreconditionFailed", "requires extension degree m+1 with m < n");
    LinSubspace l = conjugate_span(t);  // DegenerateOrbit
    ProjPoint u = l.frame_coords(t.point);
    if (u[0].is_zero()) fail("OutsideChart", "orbit point misses the canonical frame chart");
    // u is canonical, so u[0] == 1; expand the ratios in the tower basis.
    TowerExpansion tower(t.ctx, t.base_e, t.d);
    std::vector<std::vector<FieldElement>> exp(static_cast<std::size_t>(m));
    for (int i = 1; i <= m; ++i) exp[i - 1] = tower.expand(u[i]);
    linalg::Row w_coords;
    w_coords.push_back(t.ctx->one());
    for (int i = 1; i <= m; ++i) w_coords.push_back(exp[i - 1][0]);
    ProjPoint w(t.ctx, std::move(w_coords));
    ProjPoint x = l.point_from_frame(w);
    std::vector<FieldElement> a = bundle_fiber_coords(l, x);  // NotInBigCell
    for (int i = 1; i <= m; ++i) {
        for (int j = 1; j <= m; ++j) a.push_back(exp[i - 1][j]);
    }
    return WeilProductImage{std::move(x), std::move(a)};
}

ConjugateTuple weil_product_inverse(const ProjPoint& x, const std::vector<FieldElement>& a,
                                    int d, int base_e) {
    const FieldContextPtr& ctx = x.context();
    require_tower_top(ctx, base_e, d);
    const int m = d - 1;
    const int n = x.ambient_dim();
    if (m >= n) fail("PreconditionFailed", "requires extension degree m+1 with m < n");
    if (static_cast<int>(a.size()) != m * n) {
        fail("MalformedInput", "affine part must have length m*n");
    }
    for (const auto& c : x.coords()) {
        if (!c.in_subfield(base_e)) fail("MalformedInput", "x must be base-field rational");
    }
    for (const auto& c : a) {
        if (!c.in_subfield(base_e)) fail("MalformedInput", "affine scalars must be base-field");
    }
    const int fiber_len = m * (n - m);
    std::vector<FieldElement> fiber(a.begin(), a.begin() + fiber_len);
    LinSubspace l = bundle_fiber_from_coords(x, fiber, m);
    ProjPoint w = l.frame_coords(x);
    if (w[0].is_zero()) fail("OutsideChart", "x misses the frame chart of the reconstructed span");
    const FieldElement t = ctx->gen();
    linalg::Row u;
    u.push_back(ctx->one());
    for (int i = 1; i <= m; ++i) {
        FieldElement y = w[i];
        FieldElement tpow = ctx->one();
        for (int j = 1; j <= m; ++j) {
            tpow *= t;
            y += a[static_cast<std::size_t>(fiber_len) + static_cast<std::size_t>(i - 1) * m +
                   (j - 1)] *
                 tpow;
        }
        u.push_back(std::move(y));
    }
    ProjPoint p0 = l.point_from_frame(ProjPoint(ctx, std::move(u)));
    ConjugateTuple out = ConjugateTuple::make(base_e, d, std::move(p0));
    LinSubspace back = conjugate_span(out);  // DegenerateOrbit on the non-general locus
    if (back != l) fail("InternalError", "reconstructed span mismatch");
    return out;
}

ProductMapConfig make_product_config(std::uint64_t q, int n, int m) {
    if (n < 1 || m < 1 || m >= n) {
        fail("PreconditionFailed", "requires 1 <= m < n");
    }
    if (std::gcd(m + 1, n + 1) != 1) {
        fail("PreconditionFailed", "requires gcd(m+1, n+1) = 1");
    }
    // Factor q = p^e.
    if (q < 2) fail("MalformedInput", "q must be a prime power >= 2");
    std::uint64_t p = q;
    for (std::uint64_t f = 2; f * f <= q; ++f) {
        if (q % f == 0) {
            p = f;
            break;
        }
    }
    int e = 0;
    std::uint64_t acc = 1;
    while (acc < q) {
        acc *= p;
        ++e;
    }
    if (acc != q) fail("MalformedInput", "q must be a prime power");
    FieldContextPtr ctx = FieldContext::make(p, e * (m + 1));

    // Deterministic split point: lexicographically smallest point of
    // P^m(F_{q^{m+1}}) (serialized coordinates) with independent orbit.
    const std::uint64_t order = ctx->order();
    double count = 0;
    double pw = 1;
    for (int i = 0; i <= m; ++i) {
        count += pw;
        pw *= static_cast<double>(order);
    }
    if (count > 200000.0) fail("PreconditionFailed", "configuration too large to enumerate");
    std::vector<ProjPoint> points;
    // Canonical points: leading 1 at position k, free coordinates after it.
    for (int k = m; k >= 0; --k) {
        const int free = m - k;
        std::uint64_t total = 1;
        for (int i = 0; i < free; ++i) total *= order;
        for (std::uint64_t idx = 0; idx < total; ++idx) {
            linalg::Row c = linalg::zero_row(ctx, m + 1);
            c[k] = ctx->one();
            std::uint64_t v = idx;
            for (int i = k + 1; i <= m; ++i) {
                c[i] = ctx->element_at(v % order);
                v /= order;
            }
            points.emplace_back(ctx, std::move(c));
        }
    }
    std::sort(points.begin(), points.end());
    std::optional<ProjPoint> chosen;
    for (const auto& cand : points) {
        ConjugateTuple t = ConjugateTuple::make(e, m + 1, cand);
        linalg::Matrix rows;
        for (const auto& pt : conjugates(t)) rows.push_back(pt.coords());
        if (linalg::rank(rows) == m + 1) {
            chosen = cand;
            break;
        }
    }
    if (!chosen) fail("DegenerateOrbit", "no point of P^m has an independent orbit");

    const int big_n = (n + 1) * (m + 1) - 1;
    // Segre image of P^n x {split point}: row i carries the point in block i.
    linalg::Matrix rows;
    for (int i = 0; i <= n; ++i) {
        linalg::Row r = linalg::zero_row(ctx, big_n + 1);
        for (int j = 0; j <= m; ++j) r[i * (m + 1) + j] = (*chosen)[j];
        rows.push_back(std::move(r));
    }
    LinSubspace slice = LinSubspace::from_rows(ctx, std::move(rows));
    std::vector<LinSubspace> conj;
    linalg::Matrix all_rows;
    for (int k = 0; k <= m; ++k) {
        LinSubspace lk = slice.frobenius(e * k);
        for (const auto& r : lk.basis()) all_rows.push_back(r);
        conj.push_back(std::move(lk));
    }
    if (linalg::rank(all_rows) != big_n + 1) {
        fail("DegenerateOrbit", "conjugate slices do not span the ambient space");
    }
    return ProductMapConfig{ctx,  q, e, n, m, big_n, *chosen, std::move(slice), std::move(conj)};
}

OrbitTransversal conjugate_transversal(const ProjPoint& x, const ProductMapConfig& cfg) {
    if (x.ambient_dim() != cfg.big_n) fail("AmbientMismatch", "x must live in P^N");
    for (const auto& c : x.coords()) {
        if (!c.in_subfield(cfg.base_e)) fail("MalformedInput", "x must be base-field rational");
    }
    if (!is_general_for(x, cfg.slice_conjugates, cfg.m)) {
        fail("NotGeneral", "x lies in the span of a proper sub-collection of conjugate slices");
    }
    LinSubspace space = transversal(x, cfg.slice_conjugates);
    std::vector<ProjPoint> pts;
    for (const auto& lk : cfg.slice_conjugates) {
        auto mt = meet(space, lk);
        if (!mt || mt->dim() != 0) {
            fail("UnexpectedMeetDimension", "transversal does not meet a conjugate in one point");
        }
        pts.emplace_back(cfg.ctx, mt->basis()[0]);
    }
    return OrbitTransversal{std::move(space), std::move(pts)};
}

ProductMapImage product_map_forward(const ProjPoint& x, const ProductMapConfig& cfg,
                                    ProductMapTrace* trace) {
    OrbitTransversal ot = [&] {
        try {
            return conjugate_transversal(x, cfg);
        } catch (const Error& e) {
            rethrow_staged(e, "conjugate-transversal");
        }
    }();
    if (trace) {
        trace->transversal_space = ot.space;
        trace->orbit_points = ot.pts;
    }
    try {
        ProjPoint u = cfg.slice.frame_coords(ot.pts[0]);
        if (trace) trace->frame_point = u;
        ConjugateTuple t = ConjugateTuple::make(cfg.base_e, cfg.m + 1, std::move(u));
        WeilProductImage wp = weil_product_forward(t);
        ProjPoint x2 = ot.space.frame_coords(x);
        return ProductMapImage{std::move(wp.x), std::move(wp.a), std::move(x2)};
    } catch (const Error& e) {
        rethrow_staged(e, "weil-product");
    }
}

ProjPoint product_map_inverse(const ProductMapImage& image, const ProductMapConfig& cfg) {
    if (image.x1.ambient_dim() != cfg.n || image.x2.ambient_dim() != cfg.m ||
        static_cast<int>(image.a.size()) != cfg.n * cfg.m) {
        fail("MalformedInput", "image components have wrong dimensions");
    }
    ConjugateTuple t = [&] {
        try {
            return weil_product_inverse(image.x1, image.a, cfg.m + 1, cfg.base_e);
        } catch (const Error& e) {
            rethrow_staged(e, "weil-product");
        }
    }();
    try {
        ProjPoint p0 = cfg.slice.point_from_frame(t.point);
        linalg::Matrix rows;
        ProjPoint cur = p0;
        for (int k = 0; k <= cfg.m; ++k) {
            rows.push_back(cur.coords());
            if (k < cfg.m) cur = cur.frobenius(cfg.base_e);
        }
        if (linalg::rank(rows) != cfg.m + 1) {
            fail("DegenerateOrbit", "reconstructed orbit does not span a transversal");
        }
        LinSubspace space = LinSubspace::from_rows(cfg.ctx, std::move(rows));
        return space.point_from_frame(image.x2);
    } catch (const Error& e) {
        rethrow_staged(e, "conjugate-transversal");
    }
}

}  // namespace sb
