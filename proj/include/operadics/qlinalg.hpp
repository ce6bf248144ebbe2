#pragma once
#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

namespace operadics {

using Q = mpq_class;

// Dense exact rational matrix, row-major. Sizes here stay small enough that
// dense Gauss-Jordan is the right tool; the sparse types below take over for
// the large boundary matrices.
struct QMat {
    int rows = 0, cols = 0;
    std::vector<Q> a;

    QMat() = default;
    QMat(int r, int c) : rows(r), cols(c), a((size_t)r * c) {}

    Q& at(int i, int j) { return a[(size_t)i * cols + j]; }
    const Q& at(int i, int j) const { return a[(size_t)i * cols + j]; }

    static QMat identity(int n);
    static QMat zero(int r, int c) { return QMat(r, c); }

    bool is_zero() const;
    QMat operator*(const QMat& o) const;
    QMat operator+(const QMat& o) const;
    QMat operator-(const QMat& o) const;
    bool operator==(const QMat& o) const;
    QMat transpose() const;
    QMat scaled(const Q& c) const;

    // Stack o to the right / below.
    QMat hstack(const QMat& o) const;
    QMat vstack(const QMat& o) const;

    std::string str() const; // debug formatting
};

struct RrefResult {
    QMat R;
    std::vector<int> pivot_cols; // one per pivot row, ascending
    int rank = 0;
};

RrefResult rref(QMat m);
int rank_q(const QMat& m);

// Columnwise solve A X = B; nullopt if inconsistent.
std::optional<QMat> solve_linear(const QMat& A, const QMat& B);

// Columns form a basis of ker(A).
QMat nullspace(const QMat& A);

// Column-space data: pivot columns of A form a basis of im(A).
std::vector<int> column_space_pivots(const QMat& A);

// Sparse matrix over F_p for certified rank bounds. rank_p <= rank over Q,
// so vanishing F_p-Betti numbers certify vanishing rational ones.
struct SparseMatP {
    long long p = 0;
    int rows = 0, cols = 0;
    // Each row: sorted (col, val) with val in [1, p).
    std::vector<std::vector<std::pair<int, long long>>> row;

    SparseMatP() = default;
    SparseMatP(int r, int c, long long prime) : p(prime), rows(r), cols(c), row(r) {}
    void add(int i, int j, long long v); // accumulates, reduces mod p
    void finalize();                     // sort rows, drop zeros
};

int sparse_rank_modp(SparseMatP m);

// Sparse exact rational rank (for medium matrices where dense is wasteful).
struct SparseMatQ {
    int rows = 0, cols = 0;
    std::vector<std::vector<std::pair<int, Q>>> row;

    SparseMatQ() = default;
    SparseMatQ(int r, int c) : rows(r), cols(c), row(r) {}
    void add(int i, int j, const Q& v);
    void finalize();
};

int sparse_rank_q(SparseMatQ m);

// Column-major sparse rational matrix: the standard representation for
// differentials and chain maps. Stays sparse end to end; converts to QMat
// only when a small dense solve is genuinely needed.
struct SpQ {
    int rows = 0, cols = 0;
    std::vector<std::vector<std::pair<int, Q>>> col; // per column: sorted (row, coef)

    SpQ() = default;
    SpQ(int r, int c) : rows(r), cols(c), col(c) {}

    static SpQ identity(int n);
    static SpQ zero(int r, int c) { return SpQ(r, c); }
    static SpQ from_dense(const QMat& m);
    QMat to_dense() const;

    void add(int i, int j, const Q& v); // accumulate entry (kept unsorted until normalize)
    void normalize();                   // sort columns, combine duplicates, drop zeros
    bool is_zero() const;
    long long nnz() const;

    SpQ operator*(const SpQ& o) const;
    SpQ operator+(const SpQ& o) const;
    SpQ operator-(const SpQ& o) const;
    bool operator==(const SpQ& o) const;
    SpQ scaled(const Q& c) const;
    SpQ transpose() const;

    // y = this * x for a dense column vector x.
    std::vector<Q> apply(const std::vector<Q>& x) const;

    // Ranks: exact and modular (rank over F_p is a lower bound for rank over Q).
    int rank_exact() const;
    int rank_modp(long long p) const;
};

} // namespace operadics
