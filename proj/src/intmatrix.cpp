#include "workbench/intmatrix.hpp"

#include <sstream>
#include <utility>

#include "workbench/error.hpp"

namespace wb {

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> rows) {
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    a_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
        if (r.size() != cols_) throw Error(ErrorCode::invalid, "ragged matrix literal");
        for (long x : r) a_.emplace_back(x);
    }
}

IntMatrix IntMatrix::identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<IntVector>& rows, std::size_t cols) {
    std::size_t c = rows.empty() ? cols : rows[0].size();
    IntMatrix m(rows.size(), c);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != c) throw Error(ErrorCode::invalid, "ragged matrix rows");
        for (std::size_t j = 0; j < c; ++j) m(i, j) = rows[i][j];
    }
    return m;
}

IntMatrix IntMatrix::from_columns(const std::vector<IntVector>& cols, std::size_t rows) {
    IntMatrix m(rows, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
        if (cols[j].size() != rows) throw Error(ErrorCode::invalid, "column length mismatch");
        for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
    }
    return m;
}

IntMatrix IntMatrix::diagonal(const IntVector& d) {
    IntMatrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
}

IntMatrix IntMatrix::transpose() const {
    IntMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

IntMatrix IntMatrix::operator*(const IntMatrix& o) const {
    if (cols_ != o.rows_) throw Error(ErrorCode::invalid, "matrix product shape mismatch");
    IntMatrix r(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const Int& x = (*this)(i, k);
            if (x == 0) continue;
            for (std::size_t j = 0; j < o.cols_; ++j) r(i, j) += x * o(k, j);
        }
    return r;
}

IntVector IntMatrix::operator*(const IntVector& v) const {
    if (cols_ != v.size()) throw Error(ErrorCode::invalid, "matrix-vector shape mismatch");
    IntVector r(rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) r[i] += (*this)(i, k) * v[k];
    return r;
}

IntMatrix IntMatrix::operator+(const IntMatrix& o) const {
    IntMatrix r = *this;
    r += o;
    return r;
}

IntMatrix& IntMatrix::operator+=(const IntMatrix& o) {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw Error(ErrorCode::invalid, "matrix sum shape mismatch");
    for (std::size_t i = 0; i < a_.size(); ++i) a_[i] += o.a_[i];
    return *this;
}

IntMatrix IntMatrix::operator-(const IntMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw Error(ErrorCode::invalid, "matrix difference shape mismatch");
    IntMatrix r = *this;
    for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] -= o.a_[i];
    return r;
}

IntMatrix IntMatrix::operator-() const {
    IntMatrix r = *this;
    for (auto& x : r.a_) x = -x;
    return r;
}

bool IntMatrix::operator==(const IntMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
}

bool IntMatrix::is_zero() const {
    for (const auto& x : a_)
        if (x != 0) return false;
    return true;
}

IntMatrix IntMatrix::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    if (r0 + nr > rows_ || c0 + nc > cols_) throw Error(ErrorCode::invalid, "block out of range");
    IntMatrix b(nr, nc);
    for (std::size_t i = 0; i < nr; ++i)
        for (std::size_t j = 0; j < nc; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
    return b;
}

void IntMatrix::set_block(std::size_t r0, std::size_t c0, const IntMatrix& b) {
    if (r0 + b.rows_ > rows_ || c0 + b.cols_ > cols_) throw Error(ErrorCode::invalid, "block out of range");
    for (std::size_t i = 0; i < b.rows_; ++i)
        for (std::size_t j = 0; j < b.cols_; ++j) (*this)(r0 + i, c0 + j) = b(i, j);
}

void IntMatrix::add_block(std::size_t r0, std::size_t c0, const IntMatrix& b) {
    if (r0 + b.rows_ > rows_ || c0 + b.cols_ > cols_) throw Error(ErrorCode::invalid, "block out of range");
    for (std::size_t i = 0; i < b.rows_; ++i)
        for (std::size_t j = 0; j < b.cols_; ++j) (*this)(r0 + i, c0 + j) += b(i, j);
}

IntVector IntMatrix::column(std::size_t j) const {
    IntVector v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
}

IntVector IntMatrix::row(std::size_t i) const {
    return IntVector(a_.begin() + i * cols_, a_.begin() + (i + 1) * cols_);
}

IntMatrix IntMatrix::select_columns(const std::vector<std::size_t>& idx) const {
    IntMatrix r(rows_, idx.size());
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < idx.size(); ++j) r(i, j) = (*this)(i, idx[j]);
    return r;
}

IntMatrix IntMatrix::select_rows(const std::vector<std::size_t>& idx) const {
    IntMatrix r(idx.size(), cols_);
    for (std::size_t i = 0; i < idx.size(); ++i)
        for (std::size_t j = 0; j < cols_; ++j) r(i, j) = (*this)(idx[i], j);
    return r;
}

void IntMatrix::swap_rows(std::size_t i, std::size_t k) {
    if (i == k) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(i, j), (*this)(k, j));
}

void IntMatrix::swap_cols(std::size_t j, std::size_t k) {
    if (j == k) return;
    for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, j), (*this)(i, k));
}

void IntMatrix::add_row_multiple(std::size_t i, std::size_t k, const Int& q) {
    if (q == 0) return;
    for (std::size_t j = 0; j < cols_; ++j)
        if ((*this)(k, j) != 0) (*this)(i, j) += q * (*this)(k, j);
}

void IntMatrix::add_col_multiple(std::size_t j, std::size_t k, const Int& q) {
    if (q == 0) return;
    for (std::size_t i = 0; i < rows_; ++i)
        if ((*this)(i, k) != 0) (*this)(i, j) += q * (*this)(i, k);
}

void IntMatrix::negate_row(std::size_t i) {
    for (std::size_t j = 0; j < cols_; ++j) (*this)(i, j) = -(*this)(i, j);
}

void IntMatrix::negate_col(std::size_t j) {
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = -(*this)(i, j);
}

std::string IntMatrix::to_string() const {
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < rows_; ++i) {
        if (i) os << ',';
        os << '[';
        for (std::size_t j = 0; j < cols_; ++j) {
            if (j) os << ',';
            os << (*this)(i, j).get_str();
        }
        os << ']';
    }
    os << ']';
    return os.str();
}

std::vector<std::vector<long>> IntMatrix::to_long() const {
    std::vector<std::vector<long>> r(rows_, std::vector<long>(cols_));
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) {
            if (!(*this)(i, j).fits_slong_p()) throw Error(ErrorCode::invalid, "entry exceeds machine integer");
            r[i][j] = (*this)(i, j).get_si();
        }
    return r;
}

IntMatrix hstack(const IntMatrix& a, const IntMatrix& b) {
    if (a.rows() != b.rows()) throw Error(ErrorCode::invalid, "hstack row mismatch");
    IntMatrix r(a.rows(), a.cols() + b.cols());
    r.set_block(0, 0, a);
    r.set_block(0, a.cols(), b);
    return r;
}

IntMatrix vstack(const IntMatrix& a, const IntMatrix& b) {
    if (a.cols() != b.cols()) throw Error(ErrorCode::invalid, "vstack column mismatch");
    IntMatrix r(a.rows() + b.rows(), a.cols());
    r.set_block(0, 0, a);
    r.set_block(a.rows(), 0, b);
    return r;
}

IntMatrix block_diagonal(const IntMatrix& a, const IntMatrix& b) {
    IntMatrix r(a.rows() + b.rows(), a.cols() + b.cols());
    r.set_block(0, 0, a);
    r.set_block(a.rows(), a.cols(), b);
    return r;
}

IntMatrix power(const IntMatrix& m, unsigned k) {
    IntMatrix r = IntMatrix::identity(m.rows());
    for (unsigned i = 0; i < k; ++i) r = r * m;
    return r;
}

IntMatrix parse_matrix(std::string_view text) {
    std::vector<IntVector> rows;
    std::istringstream in{std::string(text)};
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        IntVector row;
        std::string tok;
        while (ls >> tok) {
            Int x;
            if (x.set_str(tok, 10) != 0) throw Error(ErrorCode::parse, "bad matrix entry '" + tok + "'");
            row.push_back(x);
        }
        if (!row.empty()) rows.push_back(std::move(row));
    }
    return IntMatrix::from_rows(rows);
}

Int determinant(const IntMatrix& m) {
    if (m.rows() != m.cols()) throw Error(ErrorCode::invalid, "determinant of non-square matrix");
    std::size_t n = m.rows();
    if (n == 0) return 1;
    IntMatrix a = m;
    Int prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a(k, k) == 0) {
            std::size_t p = k + 1;
            while (p < n && a(p, k) == 0) ++p;
            if (p == n) return 0;
            a.swap_rows(k, p);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) {
                Int t = a(i, j) * a(k, k) - a(i, k) * a(k, j);
                mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
                a(i, j) = t;
            }
        prev = a(k, k);
    }
    return sign * a(n - 1, n - 1);
}

}  // namespace wb
