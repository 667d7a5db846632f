#include "sb/brauer.hpp"

#include <algorithm>
#include <numeric>

namespace sb {

namespace {

bool is_prime_i64(std::uint64_t n) {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (std::uint64_t d = 3; d * d <= n; d += 2) {
        if (n % d == 0) return false;
    }
    return true;
}

std::int64_t mod_pos(std::int64_t a, std::int64_t m) {
    std::int64_t r = a % m;
    return r < 0 ? r + m : r;
}

}  // namespace

InvariantFraction InvariantFraction::reduce(std::int64_t num, std::int64_t den) {
    if (den <= 0) fail("MalformedInput", "fraction denominator must be positive");
    num = mod_pos(num, den);
    const std::int64_t g = std::gcd(num, den);
    return InvariantFraction{num / g, den / g};
}

InvariantFraction InvariantFraction::plus(const InvariantFraction& rhs) const {
    const std::int64_t g = std::gcd(den, rhs.den);
    const std::int64_t common = den / g * rhs.den;
    return reduce(num * (common / den) + rhs.num * (common / rhs.den), common);
}

InvariantFraction InvariantFraction::negated() const {
    return reduce(-num, den);
}

InvariantFraction InvariantFraction::times(std::int64_t k) const {
    return reduce(num * mod_pos(k, den), den);
}

BrauerClass BrauerClass::from_raw(std::vector<Entry> entries) {
    std::vector<Entry> kept;
    for (auto& e : entries) {
        if (!e.second.is_zero()) kept.push_back(std::move(e));
    }
    std::sort(kept.begin(), kept.end(),
              [](const Entry& a, const Entry& b) { return a.first < b.first; });
    BrauerClass out;
    out.inv_ = std::move(kept);
    return out;
}

BrauerClass BrauerClass::make(std::vector<Entry> entries) {
    std::vector<Entry> reduced;
    for (const auto& [place, frac] : entries) {
        if (!place.real && !is_prime_i64(place.prime)) {
            fail("NotPrime", "finite place " + std::to_string(place.prime) + " is not prime");
        }
        InvariantFraction f = InvariantFraction::reduce(frac.num, frac.den);
        if (place.real && !(f.is_zero() || (f.num == 1 && f.den == 2))) {
            fail("RealInvariantInvalid", "real invariant must be 0 or 1/2");
        }
        reduced.emplace_back(place, f);
    }
    for (std::size_t i = 0; i < reduced.size(); ++i) {
        for (std::size_t j = i + 1; j < reduced.size(); ++j) {
            if (reduced[i].first == reduced[j].first) {
                fail("DuplicatePlace", "a place appears twice");
            }
        }
    }
    InvariantFraction sum{0, 1};
    for (const auto& [place, frac] : reduced) sum = sum.plus(frac);
    if (!sum.is_zero()) {
        fail("ReciprocityViolated", "local invariants do not sum to 0 mod 1");
    }
    return from_raw(std::move(reduced));
}

InvariantFraction BrauerClass::at(const Place& p) const {
    for (const auto& [place, frac] : inv_) {
        if (place == p) return frac;
    }
    return InvariantFraction{0, 1};
}

bool operator<(const BrauerClass& a, const BrauerClass& b) {
    const auto key = [](const BrauerClass::Entry& e) {
        return std::tuple<bool, std::uint64_t, std::int64_t, std::int64_t>(
            e.first.real, e.first.prime, e.second.num, e.second.den);
    };
    return std::lexicographical_compare(
        a.inv_.begin(), a.inv_.end(), b.inv_.begin(), b.inv_.end(),
        [&](const BrauerClass::Entry& x, const BrauerClass::Entry& y) { return key(x) < key(y); });
}

std::string BrauerClass::str() const {
    if (inv_.empty()) return "0";
    std::string out = "{";
    for (std::size_t i = 0; i < inv_.size(); ++i) {
        if (i) out += ", ";
        out += inv_[i].first.real ? "real" : std::to_string(inv_[i].first.prime);
        out += ": " + std::to_string(inv_[i].second.num) + "/" + std::to_string(inv_[i].second.den);
    }
    return out + "}";
}

BrauerClass tensor(const BrauerClass& a, const BrauerClass& b) {
    std::vector<BrauerClass::Entry> entries = a.inv_;
    for (const auto& [place, frac] : b.inv_) {
        bool found = false;
        for (auto& e : entries) {
            if (e.first == place) {
                e.second = e.second.plus(frac);
                found = true;
                break;
            }
        }
        if (!found) entries.emplace_back(place, frac);
    }
    return BrauerClass::from_raw(std::move(entries));
}

BrauerClass inverse(const BrauerClass& a) {
    std::vector<BrauerClass::Entry> entries;
    for (const auto& [place, frac] : a.inv_) entries.emplace_back(place, frac.negated());
    return BrauerClass::from_raw(std::move(entries));
}

BrauerClass power(const BrauerClass& a, std::int64_t k) {
    std::vector<BrauerClass::Entry> entries;
    for (const auto& [place, frac] : a.inv_) entries.emplace_back(place, frac.times(k));
    return BrauerClass::from_raw(std::move(entries));
}

std::int64_t period(const BrauerClass& a) {
    std::int64_t l = 1;
    for (const auto& [place, frac] : a.invariants()) l = std::lcm(l, frac.den);
    return l;
}

std::int64_t index_of(const BrauerClass& a) { return period(a); }

std::int64_t min_dimension(const BrauerClass& a) { return index_of(a) - 1; }

bool in_subgroup(const BrauerClass& beta, const BrauerClass& alpha) {
    const std::int64_t n = period(alpha);
    for (std::int64_t k = 0; k < n; ++k) {
        if (power(alpha, k) == beta) return true;
    }
    return false;
}

bool same_subgroup(const BrauerClass& a, const BrauerClass& b) {
    return in_subgroup(b, a) && in_subgroup(a, b);
}

std::set<BrauerClass> subgroup_generated(const std::vector<BrauerClass>& gens, std::size_t bound) {
    std::set<BrauerClass> closure;
    closure.insert(BrauerClass::trivial());
    std::vector<BrauerClass> frontier(closure.begin(), closure.end());
    while (!frontier.empty()) {
        std::vector<BrauerClass> next;
        for (const auto& cur : frontier) {
            for (const auto& g : gens) {
                BrauerClass cand = tensor(cur, g);
                if (closure.insert(cand).second) {
                    if (closure.size() > bound) {
                        fail("SubgroupTooLarge", "subgroup closure exceeds the configured bound");
                    }
                    next.push_back(std::move(cand));
                }
            }
        }
        frontier = std::move(next);
    }
    return closure;
}

std::vector<BrauerClass> primary_decompose(const BrauerClass& a) {
    const std::int64_t n = period(a);
    if (n == 1) return {};
    std::vector<std::pair<std::int64_t, std::int64_t>> prime_powers;  // (p, p^v)
    std::int64_t rest = n;
    for (std::int64_t p = 2; p * p <= rest; ++p) {
        if (rest % p) continue;
        std::int64_t pw = 1;
        while (rest % p == 0) {
            rest /= p;
            pw *= p;
        }
        prime_powers.emplace_back(p, pw);
    }
    if (rest > 1) prime_powers.emplace_back(rest, rest);
    std::sort(prime_powers.begin(), prime_powers.end());
    if (prime_powers.size() == 1) return {a};
    std::vector<BrauerClass> parts;
    for (const auto& [p, pw] : prime_powers) {
        // CRT idempotent: e = 1 mod p^v, e = 0 mod n/p^v.
        const std::int64_t rest_n = n / pw;
        std::int64_t e = 0;
        for (std::int64_t k = 0; k < pw; ++k) {
            const std::int64_t cand = k * rest_n;
            if (mod_pos(cand, pw) == 1 % pw) {
                e = cand;
                break;
            }
        }
        parts.push_back(power(a, e));
    }
    return parts;
}

std::pair<std::int64_t, std::int64_t> crt_coefficients(std::int64_t u, std::int64_t v,
                                                       std::int64_t n) {
    if (u < 2 || v < 2 || u * v != n) {
        fail("BadFactorization", "requires u, v >= 2 with u*v = N");
    }
    if (std::gcd(u, v) != 1) fail("NotCoprime", "u and v must be coprime");
    for (std::int64_t a = 1; a <= n; ++a) {
        for (std::int64_t c = 1; c <= n; ++c) {
            if (mod_pos(a * u + c * v, n) == 1) {
                // Forced by the congruence; asserted for safety.
                if (std::gcd(a, v) != 1 || std::gcd(c, u) != 1) {
                    fail("InternalError", "coefficient coprimality failed");
                }
                return {a, c};
            }
        }
    }
    fail("InternalError", "no coefficients found");  // unreachable (u, v coprime)
}

SBVariety SBVariety::make(BrauerClass cls, std::int64_t dim) {
    if (dim < 0) fail("MalformedInput", "dimension must be nonnegative");
    const std::int64_t ind = index_of(cls);
    if ((dim + 1) % ind != 0) {
        fail("MalformedInput", "index " + std::to_string(ind) + " must divide dim+1 = " +
                                   std::to_string(dim + 1));
    }
    return SBVariety{std::move(cls), dim};
}

namespace {

int distinct_prime_factors(std::int64_t n) {
    int count = 0;
    for (std::int64_t p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            ++count;
            while (n % p == 0) n /= p;
        }
    }
    if (n > 1) ++count;
    return count;
}

}  // namespace

VerdictResult birational_verdict(const SBVariety& p, const SBVariety& q) {
    if (p.dim != q.dim) fail("DimensionMismatch", "varieties must have equal dimension");
    if (!same_subgroup(p.cls, q.cls)) {
        return {Verdict::NotBirational, "the classes generate different subgroups"};
    }
    const std::int64_t ind = index_of(p.cls);
    if (ind < p.dim + 1) {
        return {Verdict::Birational, "non-minimal: common minimal core with a projective factor"};
    }
    const int primes = distinct_prime_factors(ind);
    if (primes >= 2) {
        return {Verdict::Birational, "minimal with composite index: coprime factor exchange"};
    }
    if (ind == 1) {
        // dim 0 and both classes trivial: the varieties are equal points.
        return {Verdict::Birational, "trivial classes in dimension zero"};
    }
    return {Verdict::Unknown, "minimal with prime-power index: open case"};
}

bool stably_birational_products(const std::vector<SBVariety>& ps,
                                const std::vector<SBVariety>& qs) {
    std::vector<BrauerClass> gp, gq;
    for (const auto& v : ps) gp.push_back(v.cls);
    for (const auto& v : qs) gq.push_back(v.cls);
    return subgroup_generated(gp) == subgroup_generated(gq);
}

}  // namespace sb
