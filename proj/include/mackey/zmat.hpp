#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

#include "mackey/errors.hpp"

namespace mackey {

using Int = boost::multiprecision::cpp_int;

// Dense integer matrix, row major. Everything downstream (presentations,
// homomorphisms, Smith certificates) is built on this.
class ZMat {
public:
    ZMat() : rows_(0), cols_(0) {}
    ZMat(int rows, int cols) : rows_(rows), cols_(cols), a_((std::size_t)rows * cols) {}
    ZMat(int rows, int cols, std::initializer_list<long long> entries);

    static ZMat identity(int n);
    static ZMat zero(int rows, int cols) { return ZMat(rows, cols); }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    Int& at(int r, int c) { return a_[(std::size_t)r * cols_ + c]; }
    const Int& at(int r, int c) const { return a_[(std::size_t)r * cols_ + c]; }

    bool operator==(const ZMat& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_; }
    bool operator!=(const ZMat& o) const { return !(*this == o); }

    bool is_zero() const;
    bool is_identity() const;

    ZMat operator*(const ZMat& o) const;
    ZMat operator+(const ZMat& o) const;
    ZMat operator-(const ZMat& o) const;
    ZMat operator-() const;

    ZMat transposed() const;
    ZMat col(int c) const;

    // [this | o] side by side.
    ZMat hcat(const ZMat& o) const;
    // diag(this, o) as a block matrix.
    ZMat block_diag(const ZMat& o) const;

    void swap_rows(int i, int j);
    void swap_cols(int i, int j);

    std::string str() const;

private:
    int rows_, cols_;
    std::vector<Int> a_;
};

// U*M*V = D with U, V unimodular and D diagonal, d1 | d2 | ... >= 0.
// Transform matrices are tracked on demand; relation matrices can be wide,
// and tracking V across thousands of columns is the dominating cost.
struct SnfFlags {
    bool u = true, v = true, uinv = true, vinv = true;
    static SnfFlags all() { return SnfFlags{}; }
    static SnfFlags none() { return SnfFlags{false, false, false, false}; }
    static SnfFlags solve_only() { return SnfFlags{true, true, false, false}; }
    static SnfFlags membership() { return SnfFlags{true, false, false, false}; }
    static SnfFlags kernel_only() { return SnfFlags{false, true, false, false}; }
    static SnfFlags decompose() { return SnfFlags{true, false, true, false}; }
};

struct Snf {
    ZMat u, v, uinv, vinv, d;
    SnfFlags have;
    int rank = 0;                  // number of nonzero diagonal entries
    std::vector<Int> diag;         // all min(m,n) diagonal entries of d
    std::vector<Int> nontrivial() const; // diagonal entries >= 2
};

Snf snf(const ZMat& m, SnfFlags flags = SnfFlags::all());

// Determinant by fraction free elimination; used by the independent
// certificate checker, so it deliberately avoids the Smith machinery.
Int det_bareiss(ZMat m);

// Basis of { x : M x = 0 } as matrix columns (a lattice basis).
ZMat kernel_basis(const ZMat& m, const Snf& s);
ZMat kernel_basis(const ZMat& m);

// Basis of the column lattice of M.
ZMat lattice_basis(const ZMat& m, const Snf& s);
ZMat lattice_basis(const ZMat& m);

// One integer solution X of M X = B, if any. Needs u and v.
std::optional<ZMat> solve(const ZMat& m, const Snf& s, const ZMat& b);
std::optional<ZMat> solve(const ZMat& m, const ZMat& b);

// Whether M X = B has an integer solution. Needs u only.
bool solvable(const ZMat& m, const Snf& s, const ZMat& b);

} // namespace mackey
