#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "sb/field.hpp"
#include "sb/linalg.hpp"

namespace sb {

// Projective linear algebra over a finite field. Subspaces are kept in
// reduced row echelon form, which makes representations canonical: two
// subspaces are equal iff their matrices are equal. All rational maps here
// are defined on explicit dense opens; leaving the open raises a tagged
// Error instead of switching charts.

class ProjPoint {
public:
    // Canonicalizes so the first nonzero coordinate is 1.
    ProjPoint(FieldContextPtr ctx, std::vector<FieldElement> coords);

    const FieldContextPtr& context() const { return ctx_; }
    int ambient_dim() const { return static_cast<int>(coords_.size()) - 1; }
    const std::vector<FieldElement>& coords() const { return coords_; }
    const FieldElement& operator[](int i) const { return coords_[i]; }

    ProjPoint frobenius(int e) const;

    bool operator==(const ProjPoint& rhs) const { return coords_ == rhs.coords_; }
    bool operator!=(const ProjPoint& rhs) const { return !(*this == rhs); }
    // Lexicographic on the serialized coordinates (coefficient vectors).
    bool operator<(const ProjPoint& rhs) const;

    std::string str() const;

private:
    FieldContextPtr ctx_;
    std::vector<FieldElement> coords_;
};

class LinSubspace {
public:
    // Spans the given rows; dependent rows collapse. All-zero input is
    // rejected (MalformedInput).
    static LinSubspace from_rows(FieldContextPtr ctx, linalg::Matrix rows);
    static LinSubspace of_point(const ProjPoint& p);
    static LinSubspace full_space(FieldContextPtr ctx, int ambient_dim);

    const FieldContextPtr& context() const { return ctx_; }
    int ambient_dim() const { return static_cast<int>(basis_[0].size()) - 1; }
    int dim() const { return static_cast<int>(basis_.size()) - 1; }  // projective
    const linalg::Matrix& basis() const { return basis_; }
    const std::vector<int>& pivots() const { return pivots_; }

    bool contains(const ProjPoint& p) const;
    LinSubspace frobenius(int e) const;

    // Coordinates of p in the echelon frame (rows as a basis of L = P^dim).
    // PointNotOnSubspace if p is not on L.
    ProjPoint frame_coords(const ProjPoint& p) const;
    // Inverse: the point sum_i u_i * row_i.
    ProjPoint point_from_frame(const ProjPoint& u) const;

    bool operator==(const LinSubspace& rhs) const { return basis_ == rhs.basis_; }
    bool operator!=(const LinSubspace& rhs) const { return !(*this == rhs); }

private:
    LinSubspace(FieldContextPtr ctx, linalg::Matrix basis, std::vector<int> pivots);

    FieldContextPtr ctx_;
    linalg::Matrix basis_;
    std::vector<int> pivots_;
};

// Homogeneous form of fixed degree in `nvars` variables; coefficients are
// indexed by monomial_exponents(nvars, degree).
struct Form {
    FieldContextPtr ctx;
    int nvars = 0;
    int degree = 0;
    std::vector<FieldElement> coeffs;

    bool is_zero() const;
    FieldElement eval(const std::vector<FieldElement>& x) const;
};

// Basis of a subspace of degree-`degree` forms on P^ambient_dim.
struct FormBasis {
    FieldContextPtr ctx;
    int ambient_dim = 0;
    int degree = 0;
    linalg::Matrix basis;  // rows are coefficient vectors, reduced echelon

    int dim() const { return static_cast<int>(basis.size()); }
    Form form(int i) const { return Form{ctx, ambient_dim + 1, degree, basis[i]}; }
};

struct FormConstraint {
    LinSubspace subspace;
    Form section;  // nonzero degree-r form in the subspace's frame variables
};

// Degree-r exponent vectors in nvars variables, graded-lex: x0^r first.
std::vector<std::vector<int>> monomial_exponents(int nvars, int degree);
std::int64_t num_monomials(int nvars, int degree);  // C(nvars-1+degree, degree)

using SpanItem = std::variant<ProjPoint, LinSubspace>;

// Smallest linear subspace containing all items.
LinSubspace span(const std::vector<SpanItem>& items);

// Intersection, or nullopt when the subspaces are disjoint.
std::optional<LinSubspace> meet(const LinSubspace& a, const LinSubspace& b);

// Linear projection with center L; the image keeps the non-pivot
// coordinates of L's echelon form, after reducing x modulo L's rows.
ProjPoint project_from(const LinSubspace& center, const ProjPoint& x);
// Same map applied to a subspace not contained in the center.
LinSubspace project_subspace_from(const LinSubspace& center, const LinSubspace& s);

// p general for the configuration: not contained in the span of any n of
// the subspaces (|subspaces| must be n+1).
bool is_general_for(const ProjPoint& p, const std::vector<LinSubspace>& subspaces, int n);

// The unique n-dimensional subspace through p meeting every L_i, for
// complementary configurations: sum (1+dim L_i) = 1+N, jointly spanning.
// Computed through the direct-sum decomposition of p's vector.
LinSubspace transversal(const ProjPoint& p, const std::vector<LinSubspace>& subspaces);
// Also returns the decomposition components [p_i] = M cap L_i.
std::pair<LinSubspace, std::vector<ProjPoint>> transversal_with_components(
    const ProjPoint& p, const std::vector<LinSubspace>& subspaces);

// z_ij = x_i * y_j in row-major order.
ProjPoint segre(const ProjPoint& x, const ProjPoint& y);

// All degree-r monomials of x, graded-lex.
ProjPoint veronese(const ProjPoint& x, int r);

// Degree-r forms on P^N whose restriction to each constraint subspace is
// proportional to the given section; the kernel of the induced linear
// system, reduced echelon.
FormBasis restricted_form_space(const FieldContextPtr& ctx, int ambient_dim, int degree,
                                const std::vector<FormConstraint>& constraints);

// [w_1(x) : ... : w_M(x)]; IndeterminacyLocus when all basis forms vanish.
ProjPoint apply_forms(const FormBasis& w, const ProjPoint& x);

// Restriction of an ambient form to a subspace, in frame variables.
Form restrict_form(const Form& f, const LinSubspace& l);

// Big-cell Grassmannian coordinates: requires pivots exactly {0..m}; the
// coordinates are the non-pivot entries of the echelon matrix, row-major.
std::vector<FieldElement> grass_big_cell(const LinSubspace& l);
LinSubspace grass_from_cell(const FieldContextPtr& ctx, const std::vector<FieldElement>& coords,
                            int m, int n);

// Pointed-subspace encoding: L (dim m, containing p) as big-cell
// coordinates of L/p inside P^n/p. Length m*(n-m).
std::vector<FieldElement> bundle_fiber_coords(const LinSubspace& l, const ProjPoint& p);
LinSubspace bundle_fiber_from_coords(const ProjPoint& p, const std::vector<FieldElement>& coords,
                                     int m);

}  // namespace sb
