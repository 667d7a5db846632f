#include "sb/field.hpp"

#include <algorithm>
#include <atomic>

namespace sb {

namespace {

std::atomic<std::uint64_t> g_field_size_bound{1ull << 20};

bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (std::uint64_t d = 3; d * d <= n; d += 2) {
        if (n % d == 0) return false;
    }
    return true;
}

std::uint64_t mod_inv(std::uint64_t a, std::uint64_t p) {
    // p prime, a != 0 mod p
    std::uint64_t r = 1, b = a % p, e = p - 2;
    while (e) {
        if (e & 1) r = r * b % p;
        b = b * b % p;
        e >>= 1;
    }
    return r;
}

using Poly = std::vector<std::uint64_t>;  // dense, constant term first

void trim(Poly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

Poly poly_mul(const Poly& a, const Poly& b, std::uint64_t p) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) {
            r[i + j] = (r[i + j] + a[i] * b[j]) % p;
        }
    }
    return r;
}

// f mod m, m monic of degree >= 1
Poly poly_mod(Poly f, const Poly& m, std::uint64_t p) {
    trim(f);
    const std::size_t dm = m.size() - 1;
    while (f.size() > dm) {
        const std::uint64_t lead = f.back();
        const std::size_t shift = f.size() - 1 - dm;
        if (lead != 0) {
            for (std::size_t i = 0; i <= dm; ++i) {
                std::uint64_t sub = lead * m[i] % p;
                std::uint64_t& c = f[shift + i];
                c = (c + p - sub) % p;
            }
        }
        f.pop_back();
        trim(f);
        if (f.size() <= dm) break;
    }
    trim(f);
    return f;
}

bool poly_divides(const Poly& g, const Poly& f, std::uint64_t p) {
    // g monic
    return poly_mod(f, g, p).empty();
}

// Exhaustive trial division by every monic polynomial of degree <= deg(f)/2.
bool poly_is_irreducible(const Poly& f, std::uint64_t p) {
    const int d = static_cast<int>(f.size()) - 1;
    if (d == 1) return true;
    for (int dg = 1; dg <= d / 2; ++dg) {
        std::uint64_t count = 1;
        for (int i = 0; i < dg; ++i) count *= p;
        for (std::uint64_t n = 0; n < count; ++n) {
            Poly g(dg + 1, 0);
            std::uint64_t v = n;
            for (int i = 0; i < dg; ++i) {
                g[i] = v % p;
                v /= p;
            }
            g[dg] = 1;
            if (poly_divides(g, f, p)) return false;
        }
    }
    return true;
}

}  // namespace

std::uint64_t field_size_bound() { return g_field_size_bound.load(); }
void set_field_size_bound(std::uint64_t bound) { g_field_size_bound.store(bound); }

FieldContext::FieldContext(std::uint64_t p, int degree, std::vector<std::uint64_t> modulus)
    : p_(p), degree_(degree), modulus_(std::move(modulus)) {
    order_ = 1;
    for (int i = 0; i < degree_; ++i) order_ *= p_;
}

FieldContextPtr FieldContext::make(std::uint64_t p, int degree, int max_degree) {
    if (!is_prime_u64(p)) fail("NotPrime", "characteristic " + std::to_string(p) + " is not prime");
    if (degree < 1 || degree > max_degree) {
        fail("DegreeTooLarge", "extension degree " + std::to_string(degree) +
                                   " outside [1, " + std::to_string(max_degree) + "]");
    }
    std::uint64_t order = 1;
    const std::uint64_t bound = field_size_bound();
    for (int i = 0; i < degree; ++i) {
        order *= p;
        if (order > bound) {
            fail("DegreeTooLarge", "field size exceeds bound " + std::to_string(bound) +
                                       " (override with SB_MAX_FIELD)");
        }
    }
    // Lexicographically smallest monic irreducible: enumerate lower
    // coefficients as base-p digits, constant term least significant.
    std::uint64_t span = 1;
    for (int i = 0; i < degree; ++i) span *= p;
    for (std::uint64_t n = 0; n < span; ++n) {
        Poly f(degree + 1, 0);
        std::uint64_t v = n;
        for (int i = 0; i < degree; ++i) {
            f[i] = v % p;
            v /= p;
        }
        f[degree] = 1;
        if (poly_is_irreducible(f, p)) {
            return FieldContextPtr(new FieldContext(p, degree, std::move(f)));
        }
    }
    fail("DegreeTooLarge", "no irreducible modulus found");  // unreachable
}

FieldElement FieldContext::zero() const {
    return FieldElement(shared_from_this(), std::vector<std::uint64_t>(degree_, 0));
}

FieldElement FieldContext::one() const {
    std::vector<std::uint64_t> c(degree_, 0);
    c[0] = 1 % p_;
    return FieldElement(shared_from_this(), std::move(c));
}

FieldElement FieldContext::gen() const {
    std::vector<std::uint64_t> c(degree_, 0);
    if (degree_ > 1) c[1] = 1;
    return FieldElement(shared_from_this(), std::move(c));
}

FieldElement FieldContext::element(std::vector<std::uint64_t> coeffs) const {
    if (static_cast<int>(coeffs.size()) > degree_) {
        fail("MalformedInput", "coefficient vector longer than field degree");
    }
    coeffs.resize(degree_, 0);
    for (auto& c : coeffs) c %= p_;
    return FieldElement(shared_from_this(), std::move(coeffs));
}

FieldElement FieldContext::element_at(std::uint64_t n) const {
    std::vector<std::uint64_t> c(degree_, 0);
    for (int i = 0; i < degree_; ++i) {
        c[i] = n % p_;
        n /= p_;
    }
    return FieldElement(shared_from_this(), std::move(c));
}

FieldElement::FieldElement(FieldContextPtr ctx, std::vector<std::uint64_t> coeffs)
    : ctx_(std::move(ctx)), c_(std::move(coeffs)) {}

void FieldElement::check_compatible(const FieldElement& rhs) const {
    if (!ctx_ || !rhs.ctx_ || !ctx_->same_field(*rhs.ctx_)) {
        fail("ContextMismatch", "operands live in different field contexts");
    }
}

bool FieldElement::is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](std::uint64_t v) { return v == 0; });
}

bool FieldElement::is_one() const {
    if (c_.empty() || c_[0] != 1 % ctx_->characteristic()) return false;
    for (std::size_t i = 1; i < c_.size(); ++i) {
        if (c_[i] != 0) return false;
    }
    return true;
}

std::uint64_t FieldElement::index() const {
    std::uint64_t n = 0;
    for (std::size_t i = c_.size(); i-- > 0;) n = n * ctx_->characteristic() + c_[i];
    return n;
}

FieldElement FieldElement::operator+(const FieldElement& rhs) const {
    check_compatible(rhs);
    const std::uint64_t p = ctx_->characteristic();
    std::vector<std::uint64_t> r(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i) r[i] = (c_[i] + rhs.c_[i]) % p;
    return FieldElement(ctx_, std::move(r));
}

FieldElement FieldElement::operator-(const FieldElement& rhs) const {
    check_compatible(rhs);
    const std::uint64_t p = ctx_->characteristic();
    std::vector<std::uint64_t> r(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i) r[i] = (c_[i] + p - rhs.c_[i]) % p;
    return FieldElement(ctx_, std::move(r));
}

FieldElement FieldElement::operator-() const {
    const std::uint64_t p = ctx_->characteristic();
    std::vector<std::uint64_t> r(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i) r[i] = (p - c_[i]) % p;
    return FieldElement(ctx_, std::move(r));
}

FieldElement FieldElement::operator*(const FieldElement& rhs) const {
    check_compatible(rhs);
    const std::uint64_t p = ctx_->characteristic();
    Poly prod = poly_mul(c_, rhs.c_, p);
    Poly red = poly_mod(std::move(prod), ctx_->modulus(), p);
    red.resize(ctx_->degree(), 0);
    return FieldElement(ctx_, std::move(red));
}

FieldElement FieldElement::inv() const {
    if (is_zero()) fail("DivisionByZero", "inverse of zero");
    // Extended Euclid in F_p[t] against the modulus.
    const std::uint64_t p = ctx_->characteristic();
    Poly r0 = ctx_->modulus(), r1 = c_;
    trim(r1);
    Poly s0 = {}, s1 = {1};
    while (!r1.empty()) {
        // divide r0 by r1
        Poly q;
        Poly rem = r0;
        trim(rem);
        const std::uint64_t lead_inv = mod_inv(r1.back(), p);
        if (rem.size() >= r1.size()) q.assign(rem.size() - r1.size() + 1, 0);
        while (rem.size() >= r1.size() && !rem.empty()) {
            std::uint64_t coef = rem.back() * lead_inv % p;
            std::size_t shift = rem.size() - r1.size();
            q[shift] = coef;
            for (std::size_t i = 0; i < r1.size(); ++i) {
                std::uint64_t sub = coef * r1[i] % p;
                rem[shift + i] = (rem[shift + i] + p - sub) % p;
            }
            trim(rem);
            if (rem.size() < r1.size()) break;
        }
        // (r0, r1) <- (r1, rem); (s0, s1) <- (s1, s0 - q*s1)
        Poly qs = poly_mul(q, s1, p);
        Poly s2 = s0;
        if (s2.size() < qs.size()) s2.resize(qs.size(), 0);
        for (std::size_t i = 0; i < qs.size(); ++i) s2[i] = (s2[i] + p - qs[i]) % p;
        trim(s2);
        r0 = std::move(r1);
        r1 = std::move(rem);
        s0 = std::move(s1);
        s1 = std::move(s2);
    }
    // r0 = gcd (a nonzero constant since the modulus is irreducible)
    const std::uint64_t scale = mod_inv(r0[0], p);
    for (auto& v : s0) v = v * scale % p;
    s0 = poly_mod(std::move(s0), ctx_->modulus(), p);
    s0.resize(ctx_->degree(), 0);
    return FieldElement(ctx_, std::move(s0));
}

FieldElement FieldElement::pow(std::uint64_t k) const {
    FieldElement base = *this;
    FieldElement acc = ctx_->one();
    while (k) {
        if (k & 1) acc = acc * base;
        base = base * base;
        k >>= 1;
    }
    return acc;
}

FieldElement FieldElement::frobenius(int e) const {
    // e-fold application of x -> x^p avoids forming p^e.
    FieldElement r = *this;
    const std::uint64_t p = ctx_->characteristic();
    for (int i = 0; i < e; ++i) r = r.pow(p);
    return r;
}

bool FieldElement::in_subfield(int e) const {
    if (e < 1 || ctx_->degree() % e != 0) {
        fail("BadSubfieldDegree", std::to_string(e) + " does not divide extension degree " +
                                      std::to_string(ctx_->degree()));
    }
    return frobenius(e) == *this;
}

bool FieldElement::operator==(const FieldElement& rhs) const {
    check_compatible(rhs);
    return c_ == rhs.c_;
}

std::string FieldElement::str() const {
    if (is_zero()) return "0";
    std::string out;
    for (std::size_t i = c_.size(); i-- > 0;) {
        if (c_[i] == 0) continue;
        if (!out.empty()) out += "+";
        if (i == 0) {
            out += std::to_string(c_[i]);
        } else {
            if (c_[i] != 1) out += std::to_string(c_[i]) + "*";
            out += (i == 1) ? "t" : "t^" + std::to_string(i);
        }
    }
    return out;
}

std::vector<FieldElement> subfield_basis(const FieldContextPtr& ctx, int e) {
    if (e < 1 || ctx->degree() % e != 0) {
        fail("BadSubfieldDegree", "subfield degree must divide the extension degree");
    }
    const int D = ctx->degree();
    const std::uint64_t p = ctx->characteristic();
    // Columns of M = matrix of (x -> x^(p^e) - x) on the F_p-basis {t^i}.
    std::vector<std::vector<std::uint64_t>> M(D, std::vector<std::uint64_t>(D, 0));
    for (int j = 0; j < D; ++j) {
        std::vector<std::uint64_t> basis_vec(D, 0);
        basis_vec[j] = 1;
        FieldElement img = FieldElement(ctx, basis_vec).frobenius(e);
        for (int i = 0; i < D; ++i) {
            std::uint64_t v = img.coeffs()[i];
            if (i == j) v = (v + p - 1) % p;
            M[i][j] = v;
        }
    }
    // Gaussian elimination mod p; collect the reduced kernel basis.
    std::vector<int> pivot_col;
    int row = 0;
    for (int col = 0; col < D && row < D; ++col) {
        int sel = -1;
        for (int r = row; r < D; ++r) {
            if (M[r][col] != 0) {
                sel = r;
                break;
            }
        }
        if (sel < 0) continue;
        std::swap(M[sel], M[row]);
        const std::uint64_t inv = mod_inv(M[row][col], p);
        for (int c = 0; c < D; ++c) M[row][c] = M[row][c] * inv % p;
        for (int r = 0; r < D; ++r) {
            if (r == row || M[r][col] == 0) continue;
            const std::uint64_t f = M[r][col];
            for (int c = 0; c < D; ++c) {
                M[r][c] = (M[r][c] + p - f * M[row][c] % p) % p;
            }
        }
        pivot_col.push_back(col);
        ++row;
    }
    std::vector<FieldElement> out;
    std::vector<bool> is_pivot(D, false);
    for (int c : pivot_col) is_pivot[c] = true;
    for (int freec = 0; freec < D; ++freec) {
        if (is_pivot[freec]) continue;
        std::vector<std::uint64_t> v(D, 0);
        v[freec] = 1;
        for (std::size_t r = 0; r < pivot_col.size(); ++r) {
            v[pivot_col[r]] = (p - M[r][freec]) % p;
        }
        out.emplace_back(ctx, std::move(v));
    }
    return out;
}

}  // namespace sb
