#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "sb/projgeom.hpp"

namespace sb {

// Points of Weil restrictions along F_{q^d} / F_q, stored as a single
// extension-field point standing for its full Frobenius orbit. The ambient
// context realizes the top of the tower: ctx.degree = base_e * d for the
// parametrization maps below.
struct ConjugateTuple {
    FieldContextPtr ctx;
    int base_e = 1;  // base field F_{p^base_e}
    int d = 1;       // extension degree
    ProjPoint point; // coordinates in F_{p^(base_e*d)}

    static ConjugateTuple make(int base_e, int d, ProjPoint point);
};

// The Frobenius orbit (p0, s p0, ..., s^{d-1} p0), s = x -> x^(p^base_e).
std::vector<ProjPoint> conjugates(const ConjugateTuple& t);

// Span of the orbit; requires the d conjugates independent
// (DegenerateOrbit otherwise). The echelon basis is Frobenius-stable, i.e.
// defined over the base field.
LinSubspace conjugate_span(const ConjugateTuple& t);

// Dehomogenize at index 0 (OutsideChart when that coordinate vanishes) and
// expand the s ratios in the basis {1, t, ..., t^{d-1}} of the extension
// over the base field: s*d base-field scalars. Requires base_e*d == degree.
std::vector<FieldElement> weil_param_forward(const ConjugateTuple& t);
ConjugateTuple weil_param_inverse(const FieldContextPtr& ctx, int base_e, int d,
                                  const std::vector<FieldElement>& coords);

// Birational parametrization of the Weil restriction of P^n along a
// degree-(m+1) extension: orbit -> (x in P^n over the base field, mn affine
// base-field scalars). The affine part is the pointed-span bundle chart
// around x followed by the Weil expansion of the orbit point in the span's
// echelon frame. Gates: DegenerateOrbit, OutsideChart, NotInBigCell.
struct WeilProductImage {
    ProjPoint x;
    std::vector<FieldElement> a;  // length m*n
};
WeilProductImage weil_product_forward(const ConjugateTuple& t);
ConjugateTuple weil_product_inverse(const ProjPoint& x, const std::vector<FieldElement>& a,
                                    int d, int base_e);

// Configuration for the product birational equivalence
// P^N ~ P^n x A^{nm} x P^m, N = (n+1)(m+1)-1, over F_q with the splitting
// extension F_{q^(m+1)}. Requires gcd(m+1, n+1) = 1 and m < n.
struct ProductMapConfig {
    FieldContextPtr ctx;       // ambient F_{p^(base_e*(m+1))}
    std::uint64_t q = 0;       // base field size p^base_e
    int base_e = 1;
    int n = 0;
    int m = 0;
    int big_n = 0;             // N = (n+1)(m+1)-1
    ProjPoint split_point;     // deterministic point of P^m(F_{q^{m+1}}) with spanning orbit
    LinSubspace slice;         // Segre image of P^n x {split_point} in P^N
    std::vector<LinSubspace> slice_conjugates;  // m+1 conjugates of the slice
};
ProductMapConfig make_product_config(std::uint64_t q, int n, int m);

// The transversal through a base-field rational point x meeting every
// conjugate slice, plus the meeting points (a Frobenius orbit).
struct OrbitTransversal {
    LinSubspace space;          // dimension m, defined over the base field
    std::vector<ProjPoint> pts; // pts[i] = the single point of meet(space, slice^(s^i))
};
OrbitTransversal conjugate_transversal(const ProjPoint& x, const ProductMapConfig& cfg);

struct ProductMapImage {
    ProjPoint x1;                 // P^n over the base field
    std::vector<FieldElement> a;  // n*m base-field scalars
    ProjPoint x2;                 // P^m over the base field
};

struct ProductMapTrace {
    std::optional<LinSubspace> transversal_space;
    std::vector<ProjPoint> orbit_points;
    std::optional<ProjPoint> frame_point;  // pts[0] in the slice frame
};

// Composite of the transversal step, the Weil-product parametrization of
// the slice, and the transversal frame. Gate errors carry the pipeline
// stage in their message.
ProductMapImage product_map_forward(const ProjPoint& x, const ProductMapConfig& cfg,
                                    ProductMapTrace* trace = nullptr);
ProjPoint product_map_inverse(const ProductMapImage& image, const ProductMapConfig& cfg);

}  // namespace sb
