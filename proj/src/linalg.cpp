#include "dglie/linalg.hpp"

#include <algorithm>

#include "dglie/common.hpp"

namespace dglie {

Rat rat_parse(const std::string& s) {
    if (s.empty()) throw Error("empty rational literal");
    std::string t = s;
    bool neg = false;
    size_t pos = 0;
    if (t[0] == '-' || t[0] == '+') {
        neg = (t[0] == '-');
        pos = 1;
    }
    auto slash = t.find('/', pos);
    std::string num = t.substr(pos, slash == std::string::npos ? std::string::npos : slash - pos);
    std::string den = slash == std::string::npos ? "1" : t.substr(slash + 1);
    if (num.empty() || den.empty() ||
        num.find_first_not_of("0123456789") != std::string::npos ||
        den.find_first_not_of("0123456789") != std::string::npos)
        throw Error("bad rational literal '" + s + "'");
    mpz_class nz(num), dz(den);
    if (dz == 0) throw Error("zero denominator in '" + s + "'");
    Rat r{nz, dz};
    r.canonicalize();
    if (neg) r = -r;
    return r;
}

SVec svec_from(const QVec& v) {
    SVec out;
    for (int i = 0; i < static_cast<int>(v.size()); ++i)
        if (sgn(v[i]) != 0) out.emplace_back(i, v[i]);
    return out;
}

QVec svec_dense(const SVec& v, int dim) {
    QVec out(dim, Rat(0));
    for (auto& [i, c] : v) out.at(i) = c;
    return out;
}

void svec_add_scaled(SVec& a, const Rat& c, const SVec& b) {
    if (sgn(c) == 0) return;
    SVec out;
    out.reserve(a.size() + b.size());
    size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
            out.push_back(a[i++]);
        } else if (i == a.size() || b[j].first < a[i].first) {
            out.emplace_back(b[j].first, c * b[j].second);
            ++j;
        } else {
            Rat s = a[i].second + c * b[j].second;
            if (sgn(s) != 0) out.emplace_back(a[i].first, s);
            ++i;
            ++j;
        }
    }
    a = std::move(out);
}

QMat QMat::identity(int n) {
    QMat m(n, n);
    for (int i = 0; i < n; ++i) m.cols[i][i] = 1;
    return m;
}

QVec mat_apply(const QMat& m, const QVec& x) {
    if (static_cast<int>(x.size()) != m.ncols())
        throw DimensionError("mat_apply: size mismatch");
    QVec out(m.rows, Rat(0));
    for (int j = 0; j < m.ncols(); ++j) {
        if (sgn(x[j]) == 0) continue;
        for (int i = 0; i < m.rows; ++i)
            if (sgn(m.cols[j][i]) != 0) out[i] += x[j] * m.cols[j][i];
    }
    return out;
}

QMat mat_mul(const QMat& a, const QMat& b) {
    QMat out(a.rows, b.ncols());
    for (int j = 0; j < b.ncols(); ++j) out.cols[j] = mat_apply(a, b.cols[j]);
    return out;
}

bool mat_is_zero(const QMat& m) {
    for (auto& c : m.cols)
        for (auto& x : c)
            if (sgn(x) != 0) return false;
    return true;
}

QMat mat_add(const QMat& a, const QMat& b) {
    if (a.rows != b.rows || a.ncols() != b.ncols()) throw DimensionError("mat_add: shape mismatch");
    QMat out = a;
    for (int j = 0; j < out.ncols(); ++j)
        for (int i = 0; i < out.rows; ++i) out.cols[j][i] += b.cols[j][i];
    return out;
}

QMat mat_sub(const QMat& a, const QMat& b) {
    if (a.rows != b.rows || a.ncols() != b.ncols()) throw DimensionError("mat_sub: shape mismatch");
    QMat out = a;
    for (int j = 0; j < out.ncols(); ++j)
        for (int i = 0; i < out.rows; ++i) out.cols[j][i] -= b.cols[j][i];
    return out;
}

namespace {

// Dense row-reduction of the augmented system; rows = matrix rows over the
// column list. Returns reduced rows plus pivot column per row.
struct DenseEchelon {
    std::vector<QVec> rows;
    std::vector<int> pivot_col;
};

DenseEchelon echelon(const QMat& m, const QVec* aug) {
    int nc = m.ncols() + (aug ? 1 : 0);
    DenseEchelon e;
    for (int i = 0; i < m.rows; ++i) {
        QVec row(nc, Rat(0));
        for (int j = 0; j < m.ncols(); ++j) row[j] = m.cols[j][i];
        if (aug) row[m.ncols()] = (*aug)[i];
        e.rows.push_back(std::move(row));
    }
    int r = 0;
    for (int c = 0; c < nc && r < static_cast<int>(e.rows.size()); ++c) {
        int piv = -1;
        for (int i = r; i < static_cast<int>(e.rows.size()); ++i)
            if (sgn(e.rows[i][c]) != 0) { piv = i; break; }
        if (piv < 0) continue;
        std::swap(e.rows[r], e.rows[piv]);
        Rat inv = e.rows[r][c];
        for (int j = c; j < nc; ++j) e.rows[r][j] /= inv;
        for (int i = 0; i < static_cast<int>(e.rows.size()); ++i) {
            if (i == r || sgn(e.rows[i][c]) == 0) continue;
            Rat f = e.rows[i][c];
            for (int j = c; j < nc; ++j) e.rows[i][j] -= f * e.rows[r][j];
        }
        e.pivot_col.push_back(c);
        ++r;
    }
    e.rows.resize(r);
    return e;
}

}  // namespace

std::optional<QVec> solve(const QMat& m, const QVec& b) {
    if (static_cast<int>(b.size()) != m.rows)
        throw DimensionError("solve: right-hand side lives in the wrong ambient space");
    DenseEchelon e = echelon(m, &b);
    QVec x(m.ncols(), Rat(0));
    for (size_t r = 0; r < e.rows.size(); ++r) {
        if (e.pivot_col[r] == m.ncols()) return std::nullopt;  // pivot in augmented column
        x[e.pivot_col[r]] = e.rows[r][m.ncols()];
    }
    return x;
}

LUSolver::LUSolver(const QMat& m) : rows_(m.rows), cols_(m.ncols()) {
    // Gauss-Jordan on [M | I], keeping every row so the zero rows provide
    // consistency checks on later right-hand sides.
    std::vector<QVec> r(rows_, QVec(cols_, Rat(0)));
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) r[i][j] = m.cols[j][i];
    transform_.assign(rows_, QVec(rows_, Rat(0)));
    for (int i = 0; i < rows_; ++i) transform_[i][i] = 1;
    int rank = 0;
    for (int c = 0; c < cols_ && rank < rows_; ++c) {
        int piv = -1;
        for (int i = rank; i < rows_; ++i)
            if (sgn(r[i][c]) != 0) { piv = i; break; }
        if (piv < 0) continue;
        std::swap(r[rank], r[piv]);
        std::swap(transform_[rank], transform_[piv]);
        Rat inv = r[rank][c];
        for (auto& x : r[rank]) x /= inv;
        for (auto& x : transform_[rank]) x /= inv;
        for (int i = 0; i < rows_; ++i) {
            if (i == rank || sgn(r[i][c]) == 0) continue;
            Rat f = r[i][c];
            for (int j = 0; j < cols_; ++j)
                if (sgn(r[rank][j]) != 0) r[i][j] -= f * r[rank][j];
            for (int j = 0; j < rows_; ++j)
                if (sgn(transform_[rank][j]) != 0) transform_[i][j] -= f * transform_[rank][j];
        }
        pivot_col_.push_back(c);
        ++rank;
    }
}

std::optional<QVec> LUSolver::solve(const QVec& b) const {
    if (static_cast<int>(b.size()) != rows_)
        throw DimensionError("LUSolver: right-hand side lives in the wrong ambient space");
    QVec x(cols_, Rat(0));
    int rank = static_cast<int>(pivot_col_.size());
    for (int i = 0; i < rows_; ++i) {
        Rat c(0);
        for (int j = 0; j < rows_; ++j)
            if (sgn(transform_[i][j]) != 0 && sgn(b[j]) != 0) c += transform_[i][j] * b[j];
        if (i < rank) {
            x[pivot_col_[i]] = c;
        } else if (sgn(c) != 0) {
            return std::nullopt;
        }
    }
    return x;
}

std::vector<QVec> kernel_basis(const QMat& m) {
    DenseEchelon e = echelon(m, nullptr);
    std::vector<bool> is_pivot(m.ncols(), false);
    for (int c : e.pivot_col) is_pivot[c] = true;
    std::vector<QVec> out;
    for (int c = 0; c < m.ncols(); ++c) {
        if (is_pivot[c]) continue;
        QVec v(m.ncols(), Rat(0));
        v[c] = 1;
        for (size_t r = 0; r < e.rows.size(); ++r) v[e.pivot_col[r]] = -e.rows[r][c];
        out.push_back(std::move(v));
    }
    return out;
}

int rank(const QMat& m) { return static_cast<int>(echelon(m, nullptr).rows.size()); }

std::vector<QVec> complement(const std::vector<QVec>& span, int ambient_dim) {
    SpanIndex idx;
    for (auto& v : span) {
        if (static_cast<int>(v.size()) != ambient_dim)
            throw DimensionError("complement: vector outside ambient space");
        if (idx.add(svec_from(v)) < 0) throw Error("complement: span vectors are dependent");
    }
    std::vector<QVec> out;
    for (int i = 0; i < ambient_dim && idx.size() < ambient_dim; ++i) {
        SVec e{{i, Rat(1)}};
        if (idx.add(e) >= 0) {
            QVec unit(ambient_dim, Rat(0));
            unit[i] = 1;
            out.push_back(std::move(unit));
        }
    }
    return out;
}

void SpanIndex::reduce(SVec& v, SVec* combo) const {
    // Repeatedly cancel the leading entry while it matches a pivot.
    bool progress = true;
    while (progress && !v.empty()) {
        progress = false;
        for (size_t t = 0; t < v.size();) {
            auto it = pivot_row_.find(v[t].first);
            if (it == pivot_row_.end()) { ++t; continue; }
            int r = it->second;
            Rat c = v[t].second;
            svec_add_scaled(v, -c, rows_[r]);
            if (combo && track_) svec_add_scaled(*combo, c, combos_[r]);
            progress = true;
            // restart scan from the beginning of the (changed) vector
            t = 0;
        }
    }
}

int SpanIndex::add(const SVec& v) {
    SVec w = v;
    SVec combo;  // w == (original v) - sum combo[g]*gen_g
    reduce(w, &combo);
    if (w.empty()) return -1;
    int gen = ngen_++;
    Rat lead = w.front().second;
    for (auto& [i, c] : w) c /= lead;
    SVec row_combo;
    if (track_) {
        // rows_[new] = (v - sum combo*gen)/lead, and v is generator `gen`.
        row_combo.emplace_back(gen, Rat(1) / lead);
        for (auto& [g, c] : combo) {
            Rat cc = -c / lead;
            if (sgn(cc) != 0) row_combo.emplace_back(g, cc);
        }
        std::sort(row_combo.begin(), row_combo.end(),
                  [](auto& a, auto& b) { return a.first < b.first; });
    }
    int pivot = w.front().first;
    int rid = static_cast<int>(rows_.size());
    // Back-substitute the new pivot into existing rows to keep full reduction.
    for (size_t r = 0; r < rows_.size(); ++r) {
        Rat c(0);
        for (auto& [i, cc] : rows_[r])
            if (i == pivot) { c = cc; break; }
        if (sgn(c) == 0) continue;
        svec_add_scaled(rows_[r], -c, w);
        if (track_) svec_add_scaled(combos_[r], -c, row_combo);
    }
    rows_.push_back(std::move(w));
    if (track_) combos_.push_back(std::move(row_combo));
    pivot_row_[pivot] = rid;
    return gen;
}

bool SpanIndex::contains(const SVec& v) const {
    SVec w = v;
    reduce(w, nullptr);
    return w.empty();
}

std::optional<SVec> SpanIndex::coords(const SVec& v) const {
    if (!track_) throw Error("SpanIndex::coords requires combo tracking");
    SVec w = v;
    SVec combo;
    reduce(w, &combo);
    if (!w.empty()) return std::nullopt;
    return combo;
}

}  // namespace dglie
