#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "sb/error.hpp"

namespace sb {

// Brauer classes over the rationals, modeled as finite lists of local
// invariants in Q/Z subject to reciprocity (the invariants sum to 0 mod 1).
// Model assumptions, stated up front: every finite abelian group of classes
// is realizable this way, and index equals period, which makes the index of
// a class computable. Everything downstream (minimal dimensions, the
// decision procedure) relies on that equality.

struct Place {
    bool real = false;
    std::uint64_t prime = 0;  // meaningful when !real

    static Place finite(std::uint64_t p) { return Place{false, p}; }
    static Place archimedean() { return Place{true, 0}; }

    // Finite primes ascending, the real place last.
    friend bool operator<(const Place& a, const Place& b) {
        if (a.real != b.real) return !a.real;
        return a.prime < b.prime;
    }
    friend bool operator==(const Place& a, const Place& b) {
        return a.real == b.real && (a.real || a.prime == b.prime);
    }
};

// Reduced fraction in [0, 1) representing an element of Q/Z.
struct InvariantFraction {
    std::int64_t num = 0;
    std::int64_t den = 1;

    static InvariantFraction reduce(std::int64_t num, std::int64_t den);
    InvariantFraction plus(const InvariantFraction& rhs) const;
    InvariantFraction negated() const;
    InvariantFraction times(std::int64_t k) const;
    bool is_zero() const { return num == 0; }

    friend bool operator==(const InvariantFraction& a, const InvariantFraction& b) {
        return a.num == b.num && a.den == b.den;
    }
    friend bool operator<(const InvariantFraction& a, const InvariantFraction& b) {
        return a.num * b.den < b.num * a.den;
    }
};

class BrauerClass {
public:
    using Entry = std::pair<Place, InvariantFraction>;

    BrauerClass() = default;  // the trivial class

    // Validates: primality of finite places, no duplicates, the real
    // invariant in {0, 1/2}, and reciprocity. Zero entries are dropped and
    // places sorted, so representations are canonical.
    static BrauerClass make(std::vector<Entry> entries);
    static BrauerClass trivial() { return BrauerClass(); }

    const std::vector<Entry>& invariants() const { return inv_; }
    bool is_trivial() const { return inv_.empty(); }
    InvariantFraction at(const Place& p) const;

    friend bool operator==(const BrauerClass& a, const BrauerClass& b) { return a.inv_ == b.inv_; }
    friend bool operator!=(const BrauerClass& a, const BrauerClass& b) { return !(a == b); }
    friend bool operator<(const BrauerClass& a, const BrauerClass& b);

    std::string str() const;

private:
    static BrauerClass from_raw(std::vector<Entry> entries);  // canonicalize, no validation
    std::vector<Entry> inv_;

    friend BrauerClass tensor(const BrauerClass&, const BrauerClass&);
    friend BrauerClass inverse(const BrauerClass&);
    friend BrauerClass power(const BrauerClass&, std::int64_t);
};

BrauerClass tensor(const BrauerClass& a, const BrauerClass& b);
BrauerClass inverse(const BrauerClass& a);
BrauerClass power(const BrauerClass& a, std::int64_t k);

// Order in the Brauer group: the lcm of the invariant denominators.
std::int64_t period(const BrauerClass& a);
// Equal to the period in this model.
std::int64_t index_of(const BrauerClass& a);
// Dimension of the minimal variety in the class: index - 1.
std::int64_t min_dimension(const BrauerClass& a);

// beta = k * alpha for some k in [0, period(alpha)).
bool in_subgroup(const BrauerClass& beta, const BrauerClass& alpha);
bool same_subgroup(const BrauerClass& a, const BrauerClass& b);

// Closure of the generators under tensor; SubgroupTooLarge past the bound.
std::set<BrauerClass> subgroup_generated(const std::vector<BrauerClass>& gens,
                                         std::size_t bound = 1000000);

// One class per prime dividing the period; the p-part is e_p * alpha for
// the CRT idempotent e_p. Parts recombine to alpha and lie in <alpha>.
std::vector<BrauerClass> primary_decompose(const BrauerClass& a);

// Smallest (lex) positive a, c with a*u + c*v = 1 mod N, for a coprime
// factorization N = u*v with u, v >= 2.
std::pair<std::int64_t, std::int64_t> crt_coefficients(std::int64_t u, std::int64_t v,
                                                       std::int64_t n);

struct SBVariety {
    BrauerClass cls;
    std::int64_t dim = 0;

    // index(cls) must divide dim+1.
    static SBVariety make(BrauerClass cls, std::int64_t dim);
    bool is_minimal() const { return index_of(cls) == dim + 1; }

    friend bool operator==(const SBVariety& a, const SBVariety& b) {
        return a.dim == b.dim && a.cls == b.cls;
    }
    friend bool operator<(const SBVariety& a, const SBVariety& b) {
        if (a.cls != b.cls) return a.cls < b.cls;
        return a.dim < b.dim;
    }
};

enum class Verdict { Birational, NotBirational, Unknown };

struct VerdictResult {
    Verdict verdict;
    std::string reason;
};

// The decision trichotomy: NotBirational when the generated subgroups
// differ; Birational when they agree and the variety is non-minimal, or
// minimal with an index having at least two distinct prime factors;
// Unknown for the minimal prime-power case. DimensionMismatch when the
// dimensions differ.
VerdictResult birational_verdict(const SBVariety& p, const SBVariety& q);

// Products are stably birational iff the two factor lists generate the same
// subgroup.
bool stably_birational_products(const std::vector<SBVariety>& ps,
                                const std::vector<SBVariety>& qs);

}  // namespace sb
