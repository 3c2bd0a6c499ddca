#include "skw/linalg.hpp"

namespace skw {

Matrix Matrix::identity(const FieldSpec* F, size_t n)
{
    Matrix m(F, n, n);
    for (size_t i = 0; i < n; ++i) m.at(i, i) = F->one();
    return m;
}

Matrix Matrix::from_rows(const FieldSpec* F, const std::vector<std::vector<FieldElem>>& rows)
{
    size_t cols = rows.empty() ? 0 : rows[0].size();
    Matrix m(F, rows.size(), cols);
    for (size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != cols) raise(ErrorKind::BadArgument, "ragged rows");
        for (size_t j = 0; j < cols; ++j) m.at(i, j) = rows[i][j];
    }
    return m;
}

void Matrix::append_row(const std::vector<FieldElem>& row)
{
    if (rows_ == 0 && cols_ == 0) cols_ = row.size();
    if (row.size() != cols_) raise(ErrorKind::BadArgument, "row length mismatch");
    a_.insert(a_.end(), row.begin(), row.end());
    ++rows_;
}

Matrix Matrix::mul(const Matrix& o) const
{
    if (cols_ != o.rows_) raise(ErrorKind::BadArgument, "dimension mismatch");
    Matrix r(F_, rows_, o.cols_);
    for (size_t i = 0; i < rows_; ++i)
        for (size_t k = 0; k < cols_; ++k) {
            const FieldElem& aik = at(i, k);
            if (aik.is_zero()) continue;
            for (size_t j = 0; j < o.cols_; ++j)
                r.at(i, j) = F_->add(r.at(i, j), F_->mul(aik, o.at(k, j)));
        }
    return r;
}

std::vector<FieldElem> Matrix::mul_vec(const std::vector<FieldElem>& v) const
{
    if (v.size() != cols_) raise(ErrorKind::BadArgument, "dimension mismatch");
    std::vector<FieldElem> r(rows_, F_->zero());
    for (size_t i = 0; i < rows_; ++i)
        for (size_t j = 0; j < cols_; ++j)
            if (!at(i, j).is_zero() && !v[j].is_zero())
                r[i] = F_->add(r[i], F_->mul(at(i, j), v[j]));
    return r;
}

Matrix Matrix::add(const Matrix& o) const
{
    if (rows_ != o.rows_ || cols_ != o.cols_) raise(ErrorKind::BadArgument, "dimension mismatch");
    Matrix r(F_, rows_, cols_);
    for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = F_->add(a_[i], o.a_[i]);
    return r;
}

Matrix Matrix::scaled(const FieldElem& s) const
{
    Matrix r(F_, rows_, cols_);
    for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = F_->mul(a_[i], s);
    return r;
}

Matrix Matrix::transpose() const
{
    Matrix r(F_, cols_, rows_);
    for (size_t i = 0; i < rows_; ++i)
        for (size_t j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
    return r;
}

Matrix Matrix::rref() const
{
    Matrix m = *this;
    size_t lead = 0;
    for (size_t r = 0; r < m.rows_ && lead < m.cols_; ++r) {
        size_t i = r;
        while (i < m.rows_ && m.at(i, lead).is_zero()) ++i;
        if (i == m.rows_) {
            ++lead;
            --r;
            continue;
        }
        for (size_t j = 0; j < m.cols_; ++j) std::swap(m.at(i, j), m.at(r, j));
        FieldElem piv = F_->inv(m.at(r, lead));
        for (size_t j = 0; j < m.cols_; ++j) m.at(r, j) = F_->mul(m.at(r, j), piv);
        for (size_t k = 0; k < m.rows_; ++k) {
            if (k == r || m.at(k, lead).is_zero()) continue;
            FieldElem fac = m.at(k, lead);
            for (size_t j = 0; j < m.cols_; ++j)
                m.at(k, j) = F_->sub(m.at(k, j), F_->mul(fac, m.at(r, j)));
        }
        ++lead;
    }
    return m;
}

size_t Matrix::rank() const
{
    Matrix m = rref();
    size_t rk = 0;
    for (size_t i = 0; i < m.rows_; ++i) {
        bool nz = false;
        for (size_t j = 0; j < m.cols_; ++j)
            if (!m.at(i, j).is_zero()) {
                nz = true;
                break;
            }
        if (nz) ++rk;
    }
    return rk;
}

Matrix Matrix::inverse() const
{
    if (rows_ != cols_) raise(ErrorKind::BadArgument, "inverse of non-square matrix");
    size_t n = rows_;
    Matrix aug(F_, n, 2 * n);
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j < n; ++j) aug.at(i, j) = at(i, j);
        aug.at(i, n + i) = F_->one();
    }
    aug = aug.rref();
    for (size_t i = 0; i < n; ++i)
        if (!(aug.at(i, i) == F_->one()))
            raise(ErrorKind::BadArgument, "matrix is singular");
    Matrix inv(F_, n, n);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) inv.at(i, j) = aug.at(i, n + j);
    return inv;
}

Matrix Matrix::right_nullspace() const
{
    Matrix m = rref();
    std::vector<int> pivot_of_col(cols_, -1);
    size_t r = 0;
    for (size_t i = 0; i < rows_; ++i) {
        size_t j = 0;
        while (j < cols_ && m.at(i, j).is_zero()) ++j;
        if (j < cols_) pivot_of_col[j] = int(i), ++r;
    }
    Matrix ns(F_, 0, cols_);
    for (size_t j = 0; j < cols_; ++j) {
        if (pivot_of_col[j] >= 0) continue;
        std::vector<FieldElem> v(cols_, F_->zero());
        v[j] = F_->one();
        for (size_t jj = 0; jj < cols_; ++jj) {
            if (pivot_of_col[jj] >= 0)
                v[jj] = F_->neg(m.at(size_t(pivot_of_col[jj]), j));
        }
        ns.append_row(v);
    }
    return ns;
}

size_t stacked_rank(const Matrix& A, const Matrix& B)
{
    Matrix s(A.field(), 0, A.cols());
    for (size_t i = 0; i < A.rows(); ++i) {
        std::vector<FieldElem> row;
        for (size_t j = 0; j < A.cols(); ++j) row.push_back(A.at(i, j));
        s.append_row(row);
    }
    for (size_t i = 0; i < B.rows(); ++i) {
        std::vector<FieldElem> row;
        for (size_t j = 0; j < B.cols(); ++j) row.push_back(B.at(i, j));
        s.append_row(row);
    }
    return s.rank();
}

bool same_row_space(const Matrix& A, const Matrix& B)
{
    size_t ra = A.rank(), rb = B.rank();
    if (ra != rb) return false;
    return stacked_rank(A, B) == ra;
}

bool row_space_contained(const Matrix& A, const Matrix& B)
{
    return stacked_rank(A, B) == B.rank();
}

} // namespace skw
