#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

namespace wb {

using Int = mpz_class;
using IntVector = std::vector<Int>;

// Dense row-major integer matrix. Shapes with zero rows or columns are valid.
class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols);
    IntMatrix(std::initializer_list<std::initializer_list<long>> rows);

    static IntMatrix identity(std::size_t n);
    static IntMatrix from_rows(const std::vector<IntVector>& rows, std::size_t cols = 0);
    static IntMatrix from_columns(const std::vector<IntVector>& cols, std::size_t rows);
    static IntMatrix diagonal(const IntVector& d);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Int& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const Int& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    IntMatrix transpose() const;
    IntMatrix operator*(const IntMatrix& o) const;
    IntVector operator*(const IntVector& v) const;
    IntMatrix operator+(const IntMatrix& o) const;
    IntMatrix operator-(const IntMatrix& o) const;
    IntMatrix operator-() const;
    IntMatrix& operator+=(const IntMatrix& o);
    bool operator==(const IntMatrix& o) const;
    bool is_zero() const;

    IntMatrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
    void set_block(std::size_t r0, std::size_t c0, const IntMatrix& b);
    void add_block(std::size_t r0, std::size_t c0, const IntMatrix& b);
    IntVector column(std::size_t j) const;
    IntVector row(std::size_t i) const;
    IntMatrix select_columns(const std::vector<std::size_t>& idx) const;
    IntMatrix select_rows(const std::vector<std::size_t>& idx) const;

    void swap_rows(std::size_t i, std::size_t k);
    void swap_cols(std::size_t j, std::size_t k);
    // row i += q * row k
    void add_row_multiple(std::size_t i, std::size_t k, const Int& q);
    // col j += q * col k
    void add_col_multiple(std::size_t j, std::size_t k, const Int& q);
    void negate_row(std::size_t i);
    void negate_col(std::size_t j);

    std::string to_string() const;
    std::vector<std::vector<long>> to_long() const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Int> a_;
};

IntMatrix hstack(const IntMatrix& a, const IntMatrix& b);
IntMatrix vstack(const IntMatrix& a, const IntMatrix& b);
IntMatrix block_diagonal(const IntMatrix& a, const IntMatrix& b);
IntMatrix power(const IntMatrix& m, unsigned k);

// One row per line, integers separated by whitespace.
IntMatrix parse_matrix(std::string_view text);

Int determinant(const IntMatrix& m);

}  // namespace wb
