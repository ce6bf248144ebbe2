#include "operadics/qlinalg.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <sstream>

namespace operadics {

QMat QMat::identity(int n) {
    QMat m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

bool QMat::is_zero() const {
    for (auto& x : a)
        if (x != 0) return false;
    return true;
}

QMat QMat::operator*(const QMat& o) const {
    assert(cols == o.rows);
    QMat r(rows, o.cols);
    for (int i = 0; i < rows; ++i)
        for (int k = 0; k < cols; ++k) {
            const Q& v = at(i, k);
            if (v == 0) continue;
            for (int j = 0; j < o.cols; ++j) {
                const Q& w = o.at(k, j);
                if (w != 0) r.at(i, j) += v * w;
            }
        }
    return r;
}

QMat QMat::operator+(const QMat& o) const {
    assert(rows == o.rows && cols == o.cols);
    QMat r(rows, cols);
    for (size_t i = 0; i < a.size(); ++i) r.a[i] = a[i] + o.a[i];
    return r;
}

QMat QMat::operator-(const QMat& o) const {
    assert(rows == o.rows && cols == o.cols);
    QMat r(rows, cols);
    for (size_t i = 0; i < a.size(); ++i) r.a[i] = a[i] - o.a[i];
    return r;
}

bool QMat::operator==(const QMat& o) const {
    return rows == o.rows && cols == o.cols && a == o.a;
}

QMat QMat::transpose() const {
    QMat r(cols, rows);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) r.at(j, i) = at(i, j);
    return r;
}

QMat QMat::scaled(const Q& c) const {
    QMat r(rows, cols);
    for (size_t i = 0; i < a.size(); ++i) r.a[i] = a[i] * c;
    return r;
}

QMat QMat::hstack(const QMat& o) const {
    assert(rows == o.rows);
    QMat r(rows, cols + o.cols);
    for (int i = 0; i < rows; ++i) {
        for (int j = 0; j < cols; ++j) r.at(i, j) = at(i, j);
        for (int j = 0; j < o.cols; ++j) r.at(i, cols + j) = o.at(i, j);
    }
    return r;
}

QMat QMat::vstack(const QMat& o) const {
    assert(cols == o.cols);
    QMat r(rows + o.rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) r.at(i, j) = at(i, j);
    for (int i = 0; i < o.rows; ++i)
        for (int j = 0; j < cols; ++j) r.at(rows + i, j) = o.at(i, j);
    return r;
}

std::string QMat::str() const {
    std::ostringstream os;
    for (int i = 0; i < rows; ++i) {
        os << (i == 0 ? "[" : " ");
        for (int j = 0; j < cols; ++j) os << at(i, j).get_str() << (j + 1 < cols ? " " : "");
        os << (i + 1 < rows ? ";\n" : "]");
    }
    return os.str();
}

RrefResult rref(QMat m) {
    RrefResult res;
    int r = 0;
    for (int c = 0; c < m.cols && r < m.rows; ++c) {
        int piv = -1;
        for (int i = r; i < m.rows; ++i)
            if (m.at(i, c) != 0) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        if (piv != r)
            for (int j = 0; j < m.cols; ++j) std::swap(m.at(piv, j), m.at(r, j));
        Q inv = 1 / m.at(r, c);
        for (int j = c; j < m.cols; ++j) m.at(r, j) *= inv;
        for (int i = 0; i < m.rows; ++i) {
            if (i == r) continue;
            Q f = m.at(i, c);
            if (f == 0) continue;
            for (int j = c; j < m.cols; ++j) m.at(i, j) -= f * m.at(r, j);
        }
        res.pivot_cols.push_back(c);
        ++r;
    }
    res.rank = r;
    res.R = std::move(m);
    return res;
}

int rank_q(const QMat& m) { return rref(m).rank; }

std::optional<QMat> solve_linear(const QMat& A, const QMat& B) {
    assert(A.rows == B.rows);
    RrefResult rr = rref(A.hstack(B));
    // Inconsistent iff some pivot lands in the B-block.
    for (int c : rr.pivot_cols)
        if (c >= A.cols) return std::nullopt;
    QMat X(A.cols, B.cols);
    for (int k = 0; k < (int)rr.pivot_cols.size(); ++k) {
        int c = rr.pivot_cols[k];
        for (int j = 0; j < B.cols; ++j) X.at(c, j) = rr.R.at(k, A.cols + j);
    }
    return X;
}

QMat nullspace(const QMat& A) {
    RrefResult rr = rref(A);
    std::vector<char> is_pivot(A.cols, 0);
    for (int c : rr.pivot_cols) is_pivot[c] = 1;
    std::vector<int> free_cols;
    for (int c = 0; c < A.cols; ++c)
        if (!is_pivot[c]) free_cols.push_back(c);
    QMat N(A.cols, (int)free_cols.size());
    for (int k = 0; k < (int)free_cols.size(); ++k) {
        int fc = free_cols[k];
        N.at(fc, k) = 1;
        for (int pr = 0; pr < rr.rank; ++pr) N.at(rr.pivot_cols[pr], k) = -rr.R.at(pr, fc);
    }
    return N;
}

std::vector<int> column_space_pivots(const QMat& A) { return rref(A).pivot_cols; }

void SparseMatP::add(int i, int j, long long v) {
    v %= p;
    if (v < 0) v += p;
    if (v == 0) return;
    row[i].push_back({j, v});
}

void SparseMatP::finalize() {
    for (auto& r : row) {
        std::sort(r.begin(), r.end());
        std::vector<std::pair<int, long long>> out;
        for (auto& [c, v] : r) {
            if (!out.empty() && out.back().first == c) {
                out.back().second = (out.back().second + v) % p;
                if (out.back().second == 0) out.pop_back();
            } else if (v % p != 0) {
                out.push_back({c, v % p});
            }
        }
        r = std::move(out);
    }
}

namespace {

long long modpow(long long b, long long e, long long p) {
    long long r = 1;
    b %= p;
    while (e) {
        if (e & 1) r = (__int128)r * b % p;
        b = (__int128)b * b % p;
        e >>= 1;
    }
    return r;
}

// Shared elimination skeleton for the two sparse rank routines. Row-major
// structural elimination with a smallest-row / rarest-column pivot heuristic
// to keep fill-in tolerable on boundary matrices (which have few entries per
// row and plenty of unit coefficients).
template <class Field>
int sparse_rank_impl(int rows, int cols, std::vector<std::vector<std::pair<int, typename Field::Elt>>>& row,
                     Field F) {
    using Elt = typename Field::Elt;
    std::vector<int> col_count(cols, 0);
    std::vector<char> row_active(rows, 1), col_done(cols, 0);
    for (int i = 0; i < rows; ++i)
        for (auto& [c, v] : row[i]) ++col_count[c];

    // Bucket rows by nnz so "pick a smallest active row" stays cheap.
    auto row_nnz = [&](int i) { return (int)row[i].size(); };
    std::multimap<int, int> by_size;
    std::vector<std::multimap<int, int>::iterator> where(rows);
    for (int i = 0; i < rows; ++i) where[i] = by_size.insert({row_nnz(i), i});

    // col -> active rows containing it (lazily cleaned).
    std::vector<std::vector<int>> col_rows(cols);
    for (int i = 0; i < rows; ++i)
        for (auto& [c, v] : row[i]) col_rows[c].push_back(i);

    int rank = 0;
    while (!by_size.empty()) {
        auto it = by_size.begin();
        int r = it->second;
        by_size.erase(it);
        if (!row_active[r]) continue;
        // Drop stale (eliminated-column) entries already removed; rows are kept clean.
        if (row[r].empty()) {
            row_active[r] = 0;
            continue;
        }
        // Pivot column: the rarest remaining column of this row.
        int pc = -1, best = INT32_MAX;
        for (auto& [c, v] : row[r])
            if (!col_done[c] && col_count[c] < best) {
                best = col_count[c];
                pc = c;
            }
        assert(pc >= 0);
        ++rank;
        row_active[r] = 0;
        col_done[pc] = 1;
        // Normalize pivot row so the pivot has coefficient 1.
        Elt pv{};
        for (auto& [c, v] : row[r])
            if (c == pc) pv = v;
        Elt pinv = F.inv(pv);
        for (auto& [c, v] : row[r]) v = F.mul(v, pinv);

        // Eliminate pc from every other active row containing it.
        std::vector<int> targets;
        targets.swap(col_rows[pc]);
        for (int t : targets) {
            if (t == r || !row_active[t]) continue;
            Elt coef{};
            bool has = false;
            for (auto& [c, v] : row[t])
                if (c == pc) {
                    coef = v;
                    has = true;
                    break;
                }
            if (!has) continue;
            // row[t] -= coef * row[r], merged over sorted columns.
            std::vector<std::pair<int, Elt>> out;
            out.reserve(row[t].size() + row[r].size());
            size_t i = 0, j = 0;
            while (i < row[t].size() || j < row[r].size()) {
                if (j == row[r].size() || (i < row[t].size() && row[t][i].first < row[r][j].first)) {
                    out.push_back(row[t][i++]);
                } else if (i == row[t].size() || row[r][j].first < row[t][i].first) {
                    Elt nv = F.neg(F.mul(coef, row[r][j].second));
                    if (!F.is_zero(nv)) {
                        out.push_back({row[r][j].first, nv});
                        ++col_count[row[r][j].first];
                        col_rows[row[r][j].first].push_back(t);
                    }
                    ++j;
                } else {
                    Elt nv = F.sub(row[t][i].second, F.mul(coef, row[r][j].second));
                    if (!F.is_zero(nv))
                        out.push_back({row[t][i].first, nv});
                    else
                        --col_count[row[t][i].first];
                    ++i;
                    ++j;
                }
            }
            row[t] = std::move(out);
            int sz = row_nnz(t);
            where[t] = by_size.insert({sz, t});
            if (row[t].empty()) row_active[t] = 0;
        }
        for (auto& [c, v] : row[r]) --col_count[c];
        row[r].clear();
        row[r].shrink_to_fit();
    }
    return rank;
}

struct FieldP {
    using Elt = long long;
    long long p;
    Elt mul(Elt a, Elt b) const { return (__int128)a * b % p; }
    Elt sub(Elt a, Elt b) const {
        Elt r = (a - b) % p;
        return r < 0 ? r + p : r;
    }
    Elt neg(Elt a) const { return a == 0 ? 0 : p - a; }
    Elt inv(Elt a) const { return modpow(a, p - 2, p); }
    bool is_zero(Elt a) const { return a % p == 0; }
};

struct FieldQ {
    using Elt = Q;
    Elt mul(const Elt& a, const Elt& b) const { return a * b; }
    Elt sub(const Elt& a, const Elt& b) const { return a - b; }
    Elt neg(const Elt& a) const { return -a; }
    Elt inv(const Elt& a) const { return 1 / a; }
    bool is_zero(const Elt& a) const { return a == 0; }
};

} // namespace

int sparse_rank_modp(SparseMatP m) {
    m.finalize();
    return sparse_rank_impl(m.rows, m.cols, m.row, FieldP{m.p});
}

void SparseMatQ::add(int i, int j, const Q& v) {
    if (v == 0) return;
    row[i].push_back({j, v});
}

void SparseMatQ::finalize() {
    for (auto& r : row) {
        std::sort(r.begin(), r.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        std::vector<std::pair<int, Q>> out;
        for (auto& [c, v] : r) {
            if (!out.empty() && out.back().first == c) {
                out.back().second += v;
                if (out.back().second == 0) out.pop_back();
            } else if (v != 0) {
                out.push_back({c, v});
            }
        }
        r = std::move(out);
    }
}

int sparse_rank_q(SparseMatQ m) {
    m.finalize();
    return sparse_rank_impl(m.rows, m.cols, m.row, FieldQ{});
}

SpQ SpQ::identity(int n) {
    SpQ m(n, n);
    for (int i = 0; i < n; ++i) m.col[i].push_back({i, Q(1)});
    return m;
}

SpQ SpQ::from_dense(const QMat& d) {
    SpQ m(d.rows, d.cols);
    for (int j = 0; j < d.cols; ++j)
        for (int i = 0; i < d.rows; ++i)
            if (d.at(i, j) != 0) m.col[j].push_back({i, d.at(i, j)});
    return m;
}

QMat SpQ::to_dense() const {
    QMat d(rows, cols);
    for (int j = 0; j < cols; ++j)
        for (auto& [i, v] : col[j]) d.at(i, j) += v;
    return d;
}

void SpQ::add(int i, int j, const Q& v) {
    assert(i >= 0 && i < rows && j >= 0 && j < cols);
    if (v == 0) return;
    col[j].push_back({i, v});
}

void SpQ::normalize() {
    for (auto& c : col) {
        std::sort(c.begin(), c.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        std::vector<std::pair<int, Q>> out;
        for (auto& [i, v] : c) {
            if (!out.empty() && out.back().first == i) {
                out.back().second += v;
                if (out.back().second == 0) out.pop_back();
            } else if (v != 0) {
                out.push_back({i, v});
            }
        }
        c = std::move(out);
    }
}

bool SpQ::is_zero() const {
    for (auto& c : col)
        for (auto& [i, v] : c)
            if (v != 0) return false;
    return true;
}

long long SpQ::nnz() const {
    long long n = 0;
    for (auto& c : col) n += (long long)c.size();
    return n;
}

SpQ SpQ::operator*(const SpQ& o) const {
    assert(cols == o.rows);
    SpQ r(rows, o.cols);
    std::vector<Q> scratch(rows, Q(0));
    std::vector<int> touched;
    for (int j = 0; j < o.cols; ++j) {
        touched.clear();
        for (auto& [k, bv] : o.col[j]) {
            for (auto& [i, av] : col[k]) {
                if (scratch[i] == 0) touched.push_back(i);
                scratch[i] += av * bv;
            }
        }
        std::sort(touched.begin(), touched.end());
        for (int i : touched) {
            if (scratch[i] != 0) r.col[j].push_back({i, scratch[i]});
            scratch[i] = 0;
        }
    }
    return r;
}

SpQ SpQ::operator+(const SpQ& o) const {
    assert(rows == o.rows && cols == o.cols);
    SpQ r(rows, cols);
    for (int j = 0; j < cols; ++j) {
        for (auto& e : col[j]) r.col[j].push_back(e);
        for (auto& e : o.col[j]) r.col[j].push_back(e);
    }
    r.normalize();
    return r;
}

SpQ SpQ::operator-(const SpQ& o) const {
    assert(rows == o.rows && cols == o.cols);
    SpQ r(rows, cols);
    for (int j = 0; j < cols; ++j) {
        for (auto& e : col[j]) r.col[j].push_back(e);
        for (auto& [i, v] : o.col[j]) r.col[j].push_back({i, -v});
    }
    r.normalize();
    return r;
}

bool SpQ::operator==(const SpQ& o) const {
    if (rows != o.rows || cols != o.cols) return false;
    SpQ a = *this, b = o;
    a.normalize();
    b.normalize();
    return a.col == b.col;
}

SpQ SpQ::scaled(const Q& c) const {
    SpQ r(rows, cols);
    if (c == 0) return r;
    for (int j = 0; j < cols; ++j)
        for (auto& [i, v] : col[j]) r.col[j].push_back({i, v * c});
    return r;
}

SpQ SpQ::transpose() const {
    SpQ r(cols, rows);
    for (int j = 0; j < cols; ++j)
        for (auto& [i, v] : col[j]) r.col[i].push_back({j, v});
    r.normalize();
    return r;
}

std::vector<Q> SpQ::apply(const std::vector<Q>& x) const {
    assert((int)x.size() == cols);
    std::vector<Q> y(rows, Q(0));
    for (int j = 0; j < cols; ++j) {
        if (x[j] == 0) continue;
        for (auto& [i, v] : col[j]) y[i] += v * x[j];
    }
    return y;
}

int SpQ::rank_exact() const {
    SparseMatQ m(rows, cols);
    for (int j = 0; j < cols; ++j)
        for (auto& [i, v] : col[j]) m.add(i, j, v);
    return sparse_rank_q(std::move(m));
}

int SpQ::rank_modp(long long p) const {
    SparseMatP m(rows, cols, p);
    for (int j = 0; j < cols; ++j)
        for (auto& [i, v] : col[j]) {
            // Reduce an exact rational mod p; denominators are units unless p
            // divides one, which the caller avoids by choice of prime.
            mpz_class num = v.get_num(), den = v.get_den();
            long long n = mpz_fdiv_ui(num.get_mpz_t(), (unsigned long)p);
            long long d = mpz_fdiv_ui(den.get_mpz_t(), (unsigned long)p);
            assert(d != 0 && "prime divides a denominator; pick another prime");
            long long dinv = modpow(d, p - 2, p);
            m.add(i, j, (long long)((__int128)n * dinv % p));
        }
    return sparse_rank_modp(std::move(m));
}

} // namespace operadics
