#include "mackey/zmat.hpp"

#include <algorithm>
#include <sstream>

namespace mackey {

ZMat::ZMat(int rows, int cols, std::initializer_list<long long> entries) : ZMat(rows, cols) {
    require((int)entries.size() == rows * cols, errc::shape_mismatch, "matrix literal size");
    int i = 0;
    for (long long e : entries) a_[i++] = e;
}

ZMat ZMat::identity(int n) {
    ZMat m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

bool ZMat::is_zero() const {
    for (const auto& x : a_)
        if (x != 0) return false;
    return true;
}

bool ZMat::is_identity() const {
    if (rows_ != cols_) return false;
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j)
            if (at(i, j) != (i == j ? 1 : 0)) return false;
    return true;
}

ZMat ZMat::operator*(const ZMat& o) const {
    require(cols_ == o.rows_, errc::shape_mismatch, "matrix product");
    ZMat r(rows_, o.cols_);
    for (int i = 0; i < rows_; ++i)
        for (int k = 0; k < cols_; ++k) {
            const Int& x = at(i, k);
            if (x == 0) continue;
            for (int j = 0; j < o.cols_; ++j) {
                const Int& y = o.at(k, j);
                if (y != 0) r.at(i, j) += x * y;
            }
        }
    return r;
}

ZMat ZMat::operator+(const ZMat& o) const {
    require(rows_ == o.rows_ && cols_ == o.cols_, errc::shape_mismatch, "matrix sum");
    ZMat r(rows_, cols_);
    for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] + o.a_[i];
    return r;
}

ZMat ZMat::operator-(const ZMat& o) const {
    require(rows_ == o.rows_ && cols_ == o.cols_, errc::shape_mismatch, "matrix difference");
    ZMat r(rows_, cols_);
    for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] - o.a_[i];
    return r;
}

ZMat ZMat::operator-() const {
    ZMat r(rows_, cols_);
    for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = -a_[i];
    return r;
}

ZMat ZMat::transposed() const {
    ZMat r(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
    return r;
}

ZMat ZMat::col(int c) const {
    ZMat r(rows_, 1);
    for (int i = 0; i < rows_; ++i) r.at(i, 0) = at(i, c);
    return r;
}

ZMat ZMat::hcat(const ZMat& o) const {
    require(rows_ == o.rows_, errc::shape_mismatch, "hcat");
    ZMat r(rows_, cols_ + o.cols_);
    for (int i = 0; i < rows_; ++i) {
        for (int j = 0; j < cols_; ++j) r.at(i, j) = at(i, j);
        for (int j = 0; j < o.cols_; ++j) r.at(i, cols_ + j) = o.at(i, j);
    }
    return r;
}

ZMat ZMat::block_diag(const ZMat& o) const {
    ZMat r(rows_ + o.rows_, cols_ + o.cols_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) r.at(i, j) = at(i, j);
    for (int i = 0; i < o.rows_; ++i)
        for (int j = 0; j < o.cols_; ++j) r.at(rows_ + i, cols_ + j) = o.at(i, j);
    return r;
}

void ZMat::swap_rows(int i, int j) {
    if (i == j) return;
    for (int c = 0; c < cols_; ++c) std::swap(at(i, c), at(j, c));
}

void ZMat::swap_cols(int i, int j) {
    if (i == j) return;
    for (int r = 0; r < rows_; ++r) std::swap(at(r, i), at(r, j));
}

std::string ZMat::str() const {
    std::ostringstream os;
    for (int i = 0; i < rows_; ++i) {
        for (int j = 0; j < cols_; ++j) {
            if (j) os << ',';
            os << at(i, j);
        }
        if (i + 1 < rows_) os << ';';
    }
    return os.str();
}

std::vector<Int> Snf::nontrivial() const {
    std::vector<Int> out;
    for (const auto& x : diag)
        if (x >= 2) out.push_back(x);
    return out;
}

namespace {

// Row/column operations applied to d while keeping the invariants
// u*m*v = d, uinv*u = 1, vinv*v = 1. Untracked transforms stay empty.
struct SnfWork {
    ZMat d, u, v, uinv, vinv;
    SnfFlags f;

    void row_swap(int i, int j) {
        d.swap_rows(i, j);
        if (f.u) u.swap_rows(i, j);
        if (f.uinv) uinv.swap_cols(i, j);
    }
    void col_swap(int i, int j) {
        d.swap_cols(i, j);
        if (f.v) v.swap_cols(i, j);
        if (f.vinv) vinv.swap_rows(i, j);
    }
    void row_negate(int i) {
        for (int c = 0; c < d.cols(); ++c) d.at(i, c) = -d.at(i, c);
        if (f.u)
            for (int c = 0; c < u.cols(); ++c) u.at(i, c) = -u.at(i, c);
        if (f.uinv)
            for (int r = 0; r < uinv.rows(); ++r) uinv.at(r, i) = -uinv.at(r, i);
    }
    // row j += q * row i
    void row_addmul(int j, int i, const Int& q) {
        if (q == 0) return;
        for (int c = 0; c < d.cols(); ++c) {
            const Int& x = d.at(i, c);
            if (x != 0) d.at(j, c) += q * x;
        }
        if (f.u)
            for (int c = 0; c < u.cols(); ++c) {
                const Int& x = u.at(i, c);
                if (x != 0) u.at(j, c) += q * x;
            }
        if (f.uinv)
            for (int r = 0; r < uinv.rows(); ++r) {
                const Int& x = uinv.at(r, j);
                if (x != 0) uinv.at(r, i) -= q * x;
            }
    }
    // col j += q * col i
    void col_addmul(int j, int i, const Int& q) {
        if (q == 0) return;
        for (int r = 0; r < d.rows(); ++r) {
            const Int& x = d.at(r, i);
            if (x != 0) d.at(r, j) += q * x;
        }
        if (f.v)
            for (int r = 0; r < v.rows(); ++r) {
                const Int& x = v.at(r, i);
                if (x != 0) v.at(r, j) += q * x;
            }
        if (f.vinv)
            for (int c = 0; c < vinv.cols(); ++c) {
                const Int& x = vinv.at(j, c);
                if (x != 0) vinv.at(i, c) -= q * x;
            }
    }
};

Int iabs(const Int& x) { return x < 0 ? Int(-x) : x; }

} // namespace

Snf snf(const ZMat& m, SnfFlags flags) {
    const int rows = m.rows(), cols = m.cols();
    SnfWork w;
    w.d = m;
    w.f = flags;
    if (flags.u) w.u = ZMat::identity(rows);
    if (flags.uinv) w.uinv = ZMat::identity(rows);
    if (flags.v) w.v = ZMat::identity(cols);
    if (flags.vinv) w.vinv = ZMat::identity(cols);
    const int nmin = std::min(rows, cols);

    int s = 0;
    while (s < nmin) {
        // smallest nonzero entry of the trailing submatrix; units end the scan
        int pr = -1, pc = -1;
        Int best = 0;
        for (int i = s; i < rows && best != 1; ++i)
            for (int j = s; j < cols; ++j) {
                const Int& x = w.d.at(i, j);
                if (x == 0) continue;
                Int ax = iabs(x);
                if (pr < 0 || ax < best) {
                    best = ax;
                    pr = i;
                    pc = j;
                    if (best == 1) break;
                }
            }
        if (pr < 0) break; // trailing block is zero
        w.row_swap(s, pr);
        w.col_swap(s, pc);
        if (w.d.at(s, s) < 0) w.row_negate(s);

        bool dirty = false;
        for (int i = s + 1; i < rows; ++i) {
            if (w.d.at(i, s) == 0) continue;
            Int q = w.d.at(i, s) / w.d.at(s, s);
            w.row_addmul(i, s, -q);
            if (w.d.at(i, s) != 0) dirty = true;
        }
        for (int j = s + 1; j < cols; ++j) {
            if (w.d.at(s, j) == 0) continue;
            Int q = w.d.at(s, j) / w.d.at(s, s);
            w.col_addmul(j, s, -q);
            if (w.d.at(s, j) != 0) dirty = true;
        }
        if (dirty) continue; // smaller remainders appeared, pick a new pivot

        // enforce divisibility of the trailing block by the pivot
        bool fixed = true;
        if (w.d.at(s, s) != 1) {
            for (int i = s + 1; i < rows && fixed; ++i)
                for (int j = s + 1; j < cols && fixed; ++j)
                    if (w.d.at(i, j) % w.d.at(s, s) != 0) {
                        w.row_addmul(s, i, 1);
                        fixed = false;
                    }
        }
        if (fixed) ++s;
    }

    Snf out;
    out.u = std::move(w.u);
    out.v = std::move(w.v);
    out.uinv = std::move(w.uinv);
    out.vinv = std::move(w.vinv);
    out.d = std::move(w.d);
    out.have = flags;
    out.diag.resize(nmin);
    for (int i = 0; i < nmin; ++i) {
        out.diag[i] = out.d.at(i, i);
        if (out.diag[i] != 0) out.rank = i + 1;
    }
    return out;
}

Int det_bareiss(ZMat m) {
    require(m.rows() == m.cols(), errc::shape_mismatch, "determinant of non square matrix");
    const int n = m.rows();
    if (n == 0) return 1;
    Int prev = 1;
    int sign = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (m.at(k, k) == 0) {
            int p = -1;
            for (int i = k + 1; i < n; ++i)
                if (m.at(i, k) != 0) {
                    p = i;
                    break;
                }
            if (p < 0) return 0;
            m.swap_rows(k, p);
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j) {
                Int num = m.at(i, j) * m.at(k, k) - m.at(i, k) * m.at(k, j);
                m.at(i, j) = num / prev; // exact by Sylvester's identity
            }
        prev = m.at(k, k);
    }
    return sign > 0 ? m.at(n - 1, n - 1) : Int(-m.at(n - 1, n - 1));
}

ZMat kernel_basis(const ZMat& m, const Snf& s) {
    const int n = m.cols();
    const int nmin = std::min(m.rows(), n);
    std::vector<int> free_cols;
    for (int j = 0; j < n; ++j)
        if (j >= nmin || s.d.at(j, j) == 0) free_cols.push_back(j);
    ZMat k(n, (int)free_cols.size());
    for (int c = 0; c < (int)free_cols.size(); ++c)
        for (int r = 0; r < n; ++r) k.at(r, c) = s.v.at(r, free_cols[c]);
    return k;
}

ZMat kernel_basis(const ZMat& m) { return kernel_basis(m, snf(m, SnfFlags::kernel_only())); }

ZMat lattice_basis(const ZMat& m, const Snf& s) {
    ZMat b(m.rows(), s.rank);
    for (int j = 0; j < s.rank; ++j)
        for (int i = 0; i < m.rows(); ++i) b.at(i, j) = s.uinv.at(i, j) * s.d.at(j, j);
    return b;
}

ZMat lattice_basis(const ZMat& m) {
    SnfFlags f = SnfFlags::none();
    f.uinv = true;
    return lattice_basis(m, snf(m, f));
}

std::optional<ZMat> solve(const ZMat& m, const Snf& s, const ZMat& b) {
    require(b.rows() == m.rows(), errc::shape_mismatch, "solve rhs");
    ZMat y = s.u * b;
    const int nmin = std::min(m.rows(), m.cols());
    ZMat xh(m.cols(), b.cols());
    for (int c = 0; c < b.cols(); ++c) {
        for (int i = 0; i < m.rows(); ++i) {
            const Int& di = i < nmin ? s.d.at(i, i) : Int(0);
            if (di == 0) {
                if (y.at(i, c) != 0) return std::nullopt;
            } else {
                if (y.at(i, c) % di != 0) return std::nullopt;
                if (i < m.cols()) xh.at(i, c) = y.at(i, c) / di;
            }
        }
    }
    return s.v * xh;
}

std::optional<ZMat> solve(const ZMat& m, const ZMat& b) { return solve(m, snf(m, SnfFlags::solve_only()), b); }

bool solvable(const ZMat& m, const Snf& s, const ZMat& b) {
    require(b.rows() == m.rows(), errc::shape_mismatch, "solvable rhs");
    ZMat y = s.u * b;
    const int nmin = std::min(m.rows(), m.cols());
    for (int c = 0; c < b.cols(); ++c)
        for (int i = 0; i < m.rows(); ++i) {
            const Int& di = i < nmin ? s.d.at(i, i) : Int(0);
            if (di == 0) {
                if (y.at(i, c) != 0) return false;
            } else if (y.at(i, c) % di != 0) {
                return false;
            }
        }
    return true;
}

} // namespace mackey
