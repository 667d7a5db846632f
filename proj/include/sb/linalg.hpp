#pragma once

#include <optional>
#include <vector>

#include "sb/field.hpp"

namespace sb::linalg {

using Row = std::vector<FieldElement>;
using Matrix = std::vector<Row>;

// In-place reduced row echelon form; returns the pivot columns in order.
// Zero rows sink to the bottom and are not removed.
std::vector<int> rref(Matrix& m);

// RREF + drop zero rows; pivots returned through `pivots` when non-null.
Matrix echelon_basis(Matrix m, std::vector<int>* pivots = nullptr);

int rank(Matrix m);

// Reduced basis of { v : m * v = 0 } as rows of length ncols.
Matrix kernel(const Matrix& m, const FieldContextPtr& ctx, int ncols);

// One solution of A x = b (free variables set to 0), or nullopt.
std::optional<Row> solve(Matrix a, Row b);

Row zero_row(const FieldContextPtr& ctx, int n);
bool is_zero_row(const Row& r);

}  // namespace sb::linalg
