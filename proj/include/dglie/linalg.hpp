#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "dglie/rational.hpp"

namespace dglie {

// Sparse vector: (index, coefficient) pairs sorted by index, no zeros.
using SVec = std::vector<std::pair<int, Rat>>;

SVec svec_from(const QVec& v);
QVec svec_dense(const SVec& v, int dim);
void svec_add_scaled(SVec& a, const Rat& c, const SVec& b);  // a += c*b

// Column-major exact matrix: cols[j] is the image of the j-th domain basis
// vector, expressed in a codomain of dimension `rows`.
struct QMat {
    int rows = 0;
    std::vector<QVec> cols;

    QMat() = default;
    QMat(int rows_, int ncols) : rows(rows_), cols(ncols, QVec(rows_, Rat(0))) {}
    int ncols() const { return static_cast<int>(cols.size()); }
    static QMat identity(int n);
};

QVec mat_apply(const QMat& m, const QVec& x);
QMat mat_mul(const QMat& a, const QMat& b);
bool mat_is_zero(const QMat& m);
QMat mat_add(const QMat& a, const QMat& b);
QMat mat_sub(const QMat& a, const QMat& b);

// Particular solution of M x = b with free variables set to zero, from the
// reduced echelon form of [M | b]; pivot order is leftmost column first.
// Returns nullopt when b is not in the image.
std::optional<QVec> solve(const QMat& m, const QVec& b);

// Reusable factorization: one elimination, then O(n^2) per right-hand side,
// with the same reduced-echelon particular solutions as solve().
class LUSolver {
public:
    explicit LUSolver(const QMat& m);
    std::optional<QVec> solve(const QVec& b) const;
    int rank() const { return static_cast<int>(pivot_col_.size()); }

private:
    int rows_ = 0, cols_ = 0;
    std::vector<QVec> transform_;  // row operations applied to the identity
    std::vector<int> pivot_col_;   // per reduced row, in row order
};

// Basis of ker M in reduced echelon form (one vector per free column, in
// column order).
std::vector<QVec> kernel_basis(const QMat& m);

int rank(const QMat& m);

// Extends `span` (independent vectors) to a basis of the ambient space by
// greedily picking ambient unit vectors in index order. Throws on dependent
// input.
std::vector<QVec> complement(const std::vector<QVec>& span, int ambient_dim);

// Row-echelon accumulator over sparse rows with an optional transform that
// expresses every reduced row as a combination of the accepted input vectors.
// Used both as a plain span (membership, rank) and as a basis bookkeeping
// device for the tensor-algebra realization of free Lie algebras.
class SpanIndex {
public:
    explicit SpanIndex(bool track_combos = false) : track_(track_combos) {}

    // Adds v as a new generator if independent of the current span.
    // Returns the generator index or -1 if dependent.
    int add(const SVec& v);

    // Reduces v against the span; returns true iff v lies in the span.
    bool contains(const SVec& v) const;

    // Coordinates of v over the accepted generators (requires tracking).
    // nullopt if v is outside the span.
    std::optional<SVec> coords(const SVec& v) const;

    int size() const { return ngen_; }
    const std::map<int, int>& pivots() const { return pivot_row_; }
    // Reduced rows (read-only view), in insertion order.
    const std::vector<SVec>& rows() const { return rows_; }

private:
    bool track_;
    int ngen_ = 0;
    std::vector<SVec> rows_;    // reduced rows, leading coefficient 1
    std::vector<SVec> combos_;  // rows_[r] == sum combos_[r][g] * gen_g
    std::map<int, int> pivot_row_;

    // v -> (residue, combo of accepted generators making up v - residue)
    void reduce(SVec& v, SVec* combo) const;
};

}  // namespace dglie
