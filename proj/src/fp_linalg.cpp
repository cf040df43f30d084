#include "thomtwist/fp_linalg.hpp"

#include <sstream>
#include <stdexcept>

namespace tt {

FpMat::FpMat(int p, int rows, int cols) : p_(p), rows_(rows), cols_(cols) {
    if (p != 2 && p != 3) throw std::invalid_argument("FpMat: prime must be 2 or 3");
    if (rows < 0 || cols < 0) throw std::invalid_argument("FpMat: negative shape");
    if (p == 2) {
        wpr_ = (cols + 63) / 64;
        w_.assign(static_cast<size_t>(rows) * wpr_, 0);
    } else {
        b_.assign(static_cast<size_t>(rows) * cols, 0);
    }
}

FpMat FpMat::identity(int p, int n) {
    FpMat m(p, n, n);
    for (int i = 0; i < n; ++i) m.set(i, i, 1);
    return m;
}

FpMat FpMat::from_rows(int p, const std::vector<FpVec>& rows, int cols) {
    FpMat m(p, static_cast<int>(rows.size()), cols);
    for (size_t i = 0; i < rows.size(); ++i) {
        if (static_cast<int>(rows[i].size()) != cols)
            throw std::invalid_argument("FpMat::from_rows: row length mismatch");
        m.set_row(static_cast<int>(i), rows[i]);
    }
    return m;
}

int FpMat::get(int i, int j) const {
    if (p_ == 2) return static_cast<int>((w_[static_cast<size_t>(i) * wpr_ + j / 64] >> (j % 64)) & 1u);
    return b_[static_cast<size_t>(i) * cols_ + j];
}

void FpMat::set(int i, int j, int v) {
    v = ((v % p_) + p_) % p_;
    if (p_ == 2) {
        uint64_t& word = w_[static_cast<size_t>(i) * wpr_ + j / 64];
        uint64_t bit = uint64_t{1} << (j % 64);
        if (v) word |= bit; else word &= ~bit;
    } else {
        b_[static_cast<size_t>(i) * cols_ + j] = static_cast<uint8_t>(v);
    }
}

FpVec FpMat::row(int i) const {
    FpVec r(cols_);
    for (int j = 0; j < cols_; ++j) r[j] = static_cast<uint8_t>(get(i, j));
    return r;
}

void FpMat::set_row(int i, const FpVec& v) {
    for (int j = 0; j < cols_; ++j) set(i, j, v[j]);
}

void FpMat::add_scaled_row(int dst, int src, int c) {
    c = ((c % p_) + p_) % p_;
    if (c == 0) return;
    if (p_ == 2) {
        uint64_t* d = &w_[static_cast<size_t>(dst) * wpr_];
        const uint64_t* s = &w_[static_cast<size_t>(src) * wpr_];
        for (int k = 0; k < wpr_; ++k) d[k] ^= s[k];
    } else {
        uint8_t* d = &b_[static_cast<size_t>(dst) * cols_];
        const uint8_t* s = &b_[static_cast<size_t>(src) * cols_];
        for (int k = 0; k < cols_; ++k) d[k] = static_cast<uint8_t>((d[k] + c * s[k]) % 3);
    }
}

void FpMat::swap_rows(int i, int j) {
    if (i == j) return;
    if (p_ == 2) {
        for (int k = 0; k < wpr_; ++k)
            std::swap(w_[static_cast<size_t>(i) * wpr_ + k], w_[static_cast<size_t>(j) * wpr_ + k]);
    } else {
        for (int k = 0; k < cols_; ++k)
            std::swap(b_[static_cast<size_t>(i) * cols_ + k], b_[static_cast<size_t>(j) * cols_ + k]);
    }
}

void FpMat::scale_row(int i, int c) {
    c = ((c % p_) + p_) % p_;
    if (c == 1) return;
    if (p_ == 2) {
        if (c == 0)
            for (int k = 0; k < wpr_; ++k) w_[static_cast<size_t>(i) * wpr_ + k] = 0;
        return;
    }
    for (int k = 0; k < cols_; ++k) {
        uint8_t& e = b_[static_cast<size_t>(i) * cols_ + k];
        e = static_cast<uint8_t>((e * c) % 3);
    }
}

FpVec FpMat::mul_vec(const FpVec& x) const {
    if (static_cast<int>(x.size()) != cols_)
        throw std::invalid_argument("FpMat::mul_vec: size mismatch");
    FpVec out(rows_, 0);
    for (int i = 0; i < rows_; ++i) {
        int acc = 0;
        for (int j = 0; j < cols_; ++j) acc += get(i, j) * x[j];
        out[i] = static_cast<uint8_t>(acc % p_);
    }
    return out;
}

FpMat FpMat::mul(const FpMat& rhs) const {
    if (p_ != rhs.p_ || cols_ != rhs.rows_)
        throw std::invalid_argument("FpMat::mul: shape or prime mismatch");
    FpMat out(p_, rows_, rhs.cols_);
    for (int i = 0; i < rows_; ++i)
        for (int k = 0; k < cols_; ++k) {
            int a = get(i, k);
            if (a == 0) continue;
            // out.row(i) += a * rhs.row(k); for p = 2 this is a word-wide XOR
            if (p_ == 2) {
                uint64_t* d = &out.w_[static_cast<size_t>(i) * out.wpr_];
                const uint64_t* s = &rhs.w_[static_cast<size_t>(k) * rhs.wpr_];
                for (int t = 0; t < out.wpr_; ++t) d[t] ^= s[t];
            } else {
                for (int j = 0; j < rhs.cols_; ++j)
                    out.set(i, j, out.get(i, j) + a * rhs.get(k, j));
            }
        }
    return out;
}

FpMat FpMat::add(const FpMat& rhs) const {
    if (p_ != rhs.p_ || rows_ != rhs.rows_ || cols_ != rhs.cols_)
        throw std::invalid_argument("FpMat::add: shape or prime mismatch");
    FpMat out(p_, rows_, cols_);
    if (p_ == 2) {
        for (size_t t = 0; t < w_.size(); ++t) out.w_[t] = w_[t] ^ rhs.w_[t];
    } else {
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) out.set(i, j, get(i, j) + rhs.get(i, j));
    }
    return out;
}

FpMat FpMat::transpose() const {
    FpMat out(p_, cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) out.set(j, i, get(i, j));
    return out;
}

FpMat FpMat::vstack(const FpMat& below) const {
    if (below.rows_ == 0) return *this;
    if (rows_ == 0) return below;
    if (p_ != below.p_ || cols_ != below.cols_)
        throw std::invalid_argument("FpMat::vstack: shape or prime mismatch");
    FpMat out(p_, rows_ + below.rows_, cols_);
    for (int i = 0; i < rows_; ++i) out.set_row(i, row(i));
    for (int i = 0; i < below.rows_; ++i) out.set_row(rows_ + i, below.row(i));
    return out;
}

bool FpMat::operator==(const FpMat& o) const {
    if (p_ != o.p_ || rows_ != o.rows_ || cols_ != o.cols_) return false;
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j)
            if (get(i, j) != o.get(i, j)) return false;
    return true;
}

bool FpMat::is_zero() const {
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j)
            if (get(i, j) != 0) return false;
    return true;
}

std::string FpMat::to_string() const {
    std::ostringstream os;
    for (int i = 0; i < rows_; ++i) {
        for (int j = 0; j < cols_; ++j) os << get(i, j) << (j + 1 == cols_ ? "" : " ");
        os << '\n';
    }
    return os.str();
}

RrefResult rref(const FpMat& m) {
    RrefResult res;
    res.reduced = m;
    FpMat& a = res.reduced;
    int r = 0;
    for (int col = 0; col < a.cols() && r < a.rows(); ++col) {
        int pivot = -1;
        for (int i = r; i < a.rows(); ++i)
            if (a.get(i, col) != 0) { pivot = i; break; }
        if (pivot < 0) continue;
        a.swap_rows(r, pivot);
        int inv = fp_inv(a.prime(), a.get(r, col));
        a.scale_row(r, inv);
        for (int i = 0; i < a.rows(); ++i) {
            if (i == r) continue;
            int c = a.get(i, col);
            if (c) a.add_scaled_row(i, r, fp_neg(a.prime(), c));
        }
        res.pivots.push_back(col);
        ++r;
    }
    res.rank = r;
    return res;
}

int rank(const FpMat& m) {
    // Forward elimination only; cheaper than full rref when the basis is unused.
    FpMat a = m;
    int r = 0;
    for (int col = 0; col < a.cols() && r < a.rows(); ++col) {
        int pivot = -1;
        for (int i = r; i < a.rows(); ++i)
            if (a.get(i, col) != 0) { pivot = i; break; }
        if (pivot < 0) continue;
        a.swap_rows(r, pivot);
        int inv = fp_inv(a.prime(), a.get(r, col));
        a.scale_row(r, inv);
        for (int i = r + 1; i < a.rows(); ++i) {
            int c = a.get(i, col);
            if (c) a.add_scaled_row(i, r, fp_neg(a.prime(), c));
        }
        ++r;
    }
    return r;
}

FpMat kernel_basis(const FpMat& m) {
    const int p = m.prime();
    RrefResult rr = rref(m);
    std::vector<int> free_cols;
    {
        size_t pi = 0;
        for (int c = 0; c < m.cols(); ++c) {
            if (pi < rr.pivots.size() && rr.pivots[pi] == c) { ++pi; continue; }
            free_cols.push_back(c);
        }
    }
    FpMat out(p, static_cast<int>(free_cols.size()), m.cols());
    for (size_t k = 0; k < free_cols.size(); ++k) {
        int fc = free_cols[k];
        out.set(static_cast<int>(k), fc, 1);
        for (size_t r = 0; r < rr.pivots.size(); ++r)
            out.set(static_cast<int>(k), rr.pivots[r], fp_neg(p, rr.reduced.get(static_cast<int>(r), fc)));
    }
    return out;
}

std::optional<FpVec> solve(const FpMat& m, const FpVec& b) {
    if (static_cast<int>(b.size()) != m.rows())
        throw std::invalid_argument("solve: rhs length must equal row count");
    // Eliminate on [m | b] and read a particular solution off the pivots.
    FpMat aug(m.prime(), m.rows(), m.cols() + 1);
    for (int i = 0; i < m.rows(); ++i) {
        for (int j = 0; j < m.cols(); ++j) aug.set(i, j, m.get(i, j));
        aug.set(i, m.cols(), b[i]);
    }
    RrefResult rr = rref(aug);
    for (int pc : rr.pivots)
        if (pc == m.cols()) return std::nullopt;  // row (0 ... 0 | 1): inconsistent
    FpVec x(m.cols(), 0);
    for (size_t r = 0; r < rr.pivots.size(); ++r)
        x[rr.pivots[r]] = static_cast<uint8_t>(rr.reduced.get(static_cast<int>(r), m.cols()));
    return x;
}

FpVec vec_add(int p, const FpVec& a, const FpVec& b) {
    if (a.size() != b.size()) throw std::invalid_argument("vec_add: size mismatch");
    FpVec out(a.size());
    for (size_t i = 0; i < a.size(); ++i) out[i] = static_cast<uint8_t>((a[i] + b[i]) % p);
    return out;
}

FpVec vec_scale(int p, int c, const FpVec& a) {
    c = ((c % p) + p) % p;
    FpVec out(a.size());
    for (size_t i = 0; i < a.size(); ++i) out[i] = static_cast<uint8_t>((c * a[i]) % p);
    return out;
}

bool vec_is_zero(const FpVec& a) {
    for (uint8_t v : a)
        if (v) return false;
    return true;
}

}  // namespace tt
