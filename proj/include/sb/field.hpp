#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "sb/error.hpp"

namespace sb {

class FieldElement;
class FieldContext;
using FieldContextPtr = std::shared_ptr<const FieldContext>;

// Upper bound on p^degree accepted by FieldContext::make. The CLI overrides
// it from the SB_MAX_FIELD environment variable at startup.
std::uint64_t field_size_bound();
void set_field_size_bound(std::uint64_t bound);

// F_{p^D} realized as F_p[t]/(modulus) with the lexicographically smallest
// monic irreducible modulus of degree D (coefficients enumerated constant
// term first). The choice is a pure function of (p, D), so two contexts are
// interchangeable iff (p, D) agree. Towers k < K are handled by placing all
// fields inside one ambient context and carving subfields out as
// Frobenius-fixed sets.
class FieldContext : public std::enable_shared_from_this<FieldContext> {
public:
    static constexpr int kDefaultMaxDegree = 12;

    static FieldContextPtr make(std::uint64_t p, int degree,
                                int max_degree = kDefaultMaxDegree);

    std::uint64_t characteristic() const { return p_; }
    int degree() const { return degree_; }
    // Monic, length degree+1, constant term first.
    const std::vector<std::uint64_t>& modulus() const { return modulus_; }
    std::uint64_t order() const { return order_; }  // p^degree

    FieldElement zero() const;
    FieldElement one() const;
    FieldElement gen() const;  // the class of t (for degree 1: 0)

    // Coefficients constant term first; shorter vectors are zero-padded,
    // entries reduced mod p. Length above `degree` is rejected.
    FieldElement element(std::vector<std::uint64_t> coeffs) const;
    // Base-p digit expansion of n; inverse of FieldElement::index().
    // Enumerating n = 0 .. order()-1 lists every element exactly once.
    FieldElement element_at(std::uint64_t n) const;

    bool same_field(const FieldContext& other) const {
        return p_ == other.p_ && degree_ == other.degree_;
    }

private:
    FieldContext(std::uint64_t p, int degree, std::vector<std::uint64_t> modulus);

    std::uint64_t p_;
    int degree_;
    std::uint64_t order_;
    std::vector<std::uint64_t> modulus_;
};

class FieldElement {
public:
    FieldElement() = default;
    FieldElement(FieldContextPtr ctx, std::vector<std::uint64_t> coeffs);

    const FieldContextPtr& context() const { return ctx_; }
    // Length == context degree, constant term first, entries in [0, p).
    const std::vector<std::uint64_t>& coeffs() const { return c_; }

    bool is_zero() const;
    bool is_one() const;
    std::uint64_t index() const;  // base-p value of the coefficient vector

    FieldElement operator+(const FieldElement& rhs) const;
    FieldElement operator-(const FieldElement& rhs) const;
    FieldElement operator*(const FieldElement& rhs) const;
    FieldElement operator-() const;
    FieldElement& operator+=(const FieldElement& rhs) { return *this = *this + rhs; }
    FieldElement& operator-=(const FieldElement& rhs) { return *this = *this - rhs; }
    FieldElement& operator*=(const FieldElement& rhs) { return *this = *this * rhs; }

    FieldElement inv() const;                 // DivisionByZero on 0
    FieldElement pow(std::uint64_t k) const;  // x^k, x^0 = 1

    // x^(p^e); a field automorphism fixing exactly F_{p^e} when e | degree.
    FieldElement frobenius(int e) const;
    // true iff frobenius(e) == *this; requires e | degree (BadSubfieldDegree).
    bool in_subfield(int e) const;

    bool operator==(const FieldElement& rhs) const;
    bool operator!=(const FieldElement& rhs) const { return !(*this == rhs); }
    // Lexicographic on the coefficient vector; used for canonical orderings.
    bool operator<(const FieldElement& rhs) const { return c_ < rhs.c_; }

    std::string str() const;  // "0", "1", "t", "t+1", ... for diagnostics

private:
    void check_compatible(const FieldElement& rhs) const;

    FieldContextPtr ctx_;
    std::vector<std::uint64_t> c_;
};

// F_p-basis of the subfield fixed by frobenius(e), e | degree; the basis is
// the reduced row echelon kernel basis of x -> x^(p^e) - x, so it is
// deterministic. Size of the result is e.
std::vector<FieldElement> subfield_basis(const FieldContextPtr& ctx, int e);

}  // namespace sb
