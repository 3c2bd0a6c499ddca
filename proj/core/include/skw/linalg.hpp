#pragma once

#include <vector>

#include "skw/ffield.hpp"

namespace skw {

// Dense row-major matrix over a finite field. Sizes here are tiny (at most a
// few hundred), so plain Gaussian elimination is used throughout.
class Matrix {
public:
    Matrix() = default;
    Matrix(const FieldSpec* F, size_t rows, size_t cols)
        : F_(F), rows_(rows), cols_(cols), a_(rows * cols, F->zero())
    {
    }

    const FieldSpec* field() const { return F_; }
    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }

    FieldElem& at(size_t i, size_t j) { return a_[i * cols_ + j]; }
    const FieldElem& at(size_t i, size_t j) const { return a_[i * cols_ + j]; }

    static Matrix identity(const FieldSpec* F, size_t n);
    static Matrix from_rows(const FieldSpec* F, const std::vector<std::vector<FieldElem>>& rows);

    Matrix mul(const Matrix& o) const;
    std::vector<FieldElem> mul_vec(const std::vector<FieldElem>& v) const;
    Matrix add(const Matrix& o) const;
    Matrix scaled(const FieldElem& s) const;
    Matrix transpose() const;
    void append_row(const std::vector<FieldElem>& row);

    size_t rank() const;
    Matrix inverse() const; // throws SingularGram-free BadArgument on singular
    // basis of the right nullspace {v : A v = 0}, as rows
    Matrix right_nullspace() const;
    // reduced row echelon form (in place copy)
    Matrix rref() const;

    bool operator==(const Matrix& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_; }

private:
    const FieldSpec* F_ = nullptr;
    size_t rows_ = 0, cols_ = 0;
    std::vector<FieldElem> a_;
};

// rank of the stacked matrix [A; B]
size_t stacked_rank(const Matrix& A, const Matrix& B);
// row spaces equal?
bool same_row_space(const Matrix& A, const Matrix& B);
// row space of A contained in row space of B?
bool row_space_contained(const Matrix& A, const Matrix& B);

} // namespace skw
