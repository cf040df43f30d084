#pragma once
// Exact linear algebra over the prime fields F_2 and F_3.
//
// Storage: F_2 rows are bit-packed into 64-bit words (row ops are word-wide
// XORs); F_3 rows are byte arrays. The public contract is plain scalar
// matrices regardless of storage. Elimination is deterministic (leftmost
// pivot, first nonzero row) so every downstream basis choice is reproducible.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace tt {

using FpVec = std::vector<uint8_t>;  // entries in [0, p); prime carried by context

inline int fp_add(int p, int a, int b) { return (a + b) % p; }
inline int fp_mul(int p, int a, int b) { return (a * b) % p; }
inline int fp_neg(int p, int a) { return (p - a % p) % p; }
// Inverse of a nonzero residue; for p in {2, 3} every nonzero element is self-inverse.
inline int fp_inv(int p, int a) { return (p == 2) ? 1 : (a == 1 ? 1 : 2); }

class FpMat {
  public:
    FpMat() = default;
    FpMat(int p, int rows, int cols);

    static FpMat identity(int p, int n);
    static FpMat from_rows(int p, const std::vector<FpVec>& rows, int cols);

    int prime() const { return p_; }
    int rows() const { return rows_; }
    int cols() const { return cols_; }
    bool empty() const { return rows_ == 0 || cols_ == 0; }

    int get(int i, int j) const;
    void set(int i, int j, int v);

    FpVec row(int i) const;
    void set_row(int i, const FpVec& v);

    // dst += c * src (row operation)
    void add_scaled_row(int dst, int src, int c);
    void swap_rows(int i, int j);
    void scale_row(int i, int c);

    FpVec mul_vec(const FpVec& x) const;   // this * x, |x| = cols
    FpMat mul(const FpMat& rhs) const;     // this * rhs
    FpMat add(const FpMat& rhs) const;     // entrywise sum, same shape
    FpMat transpose() const;
    FpMat vstack(const FpMat& below) const;

    bool operator==(const FpMat& o) const;
    bool is_zero() const;
    std::string to_string() const;

  private:
    int p_ = 2;
    int rows_ = 0, cols_ = 0;
    int wpr_ = 0;                  // words per row (p = 2)
    std::vector<uint64_t> w_;      // p = 2 storage, bit-packed
    std::vector<uint8_t> b_;       // p = 3 storage, one byte per entry
};

struct RrefResult {
    FpMat reduced;
    std::vector<int> pivots;  // strictly increasing pivot column indices
    int rank = 0;
};

// Unique reduced row-echelon form.
RrefResult rref(const FpMat& m);

// Rank without keeping the reduced matrix.
int rank(const FpMat& m);

// Rows form a basis of { x : m * x = 0 }; row count = cols - rank(m).
FpMat kernel_basis(const FpMat& m);

// One solution of m * x = b, or nullopt when b is outside the column space.
// |b| must equal m.rows(); a mismatch is a contract violation (throws).
std::optional<FpVec> solve(const FpMat& m, const FpVec& b);

FpVec vec_add(int p, const FpVec& a, const FpVec& b);
FpVec vec_scale(int p, int c, const FpVec& a);
bool vec_is_zero(const FpVec& a);

}  // namespace tt
