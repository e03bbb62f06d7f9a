#pragma once

#include "leibniz/matrix.hpp"
#include "leibniz/subspace.hpp"

#include <stdexcept>
#include <vector>

namespace leibniz {

/// Square operator on algebra coordinates; column j is the image of basis
/// vector j. Flattened (row-major) it is a point of Q^{n^2}, which is how
/// operator subspaces are canonicalized and compared.
class LinearOperator {
public:
    explicit LinearOperator(std::size_t dim) : matrix_(dim, dim) {}

    explicit LinearOperator(Matrix m) : matrix_(std::move(m))
    {
        if (matrix_.rows() != matrix_.cols())
            throw std::invalid_argument("operator matrix must be square");
    }

    static LinearOperator from_flat(std::size_t dim, const Vec& flat)
    {
        if (flat.size() != dim * dim)
            throw std::invalid_argument("flattened operator has wrong length");
        Matrix m(dim, dim);
        for (std::size_t r = 0; r < dim; ++r)
            for (std::size_t c = 0; c < dim; ++c)
                m.at(r, c) = flat[r * dim + c];
        return LinearOperator(std::move(m));
    }

    std::size_t dim() const { return matrix_.rows(); }
    const Matrix& matrix() const { return matrix_; }
    Matrix& matrix() { return matrix_; }

    Vec apply(const Vec& v) const { return matrix_.mul(v); }

    Vec flatten() const
    {
        Vec flat;
        flat.reserve(dim() * dim());
        for (std::size_t r = 0; r < dim(); ++r)
            for (std::size_t c = 0; c < dim(); ++c)
                flat.push_back(matrix_.at(r, c));
        return flat;
    }

    LinearOperator commutator(const LinearOperator& o) const
    {
        if (dim() != o.dim())
            throw std::invalid_argument("operator dimension mismatch");
        Matrix ab = matrix_.mul(o.matrix_);
        const Matrix ba = o.matrix_.mul(matrix_);
        for (std::size_t r = 0; r < dim(); ++r)
            for (std::size_t c = 0; c < dim(); ++c)
                ab.at(r, c) -= ba.at(r, c);
        return LinearOperator(std::move(ab));
    }

    bool operator==(const LinearOperator& o) const { return matrix_ == o.matrix_; }

private:
    Matrix matrix_;
};

/// Rank-one operator v -> l(v) w.
inline LinearOperator rank_one(const Vec& w, const Vec& l)
{
    if (w.size() != l.size())
        throw std::invalid_argument("rank-one factor dimension mismatch");
    const std::size_t n = w.size();
    Matrix m(n, n);
    for (std::size_t r = 0; r < n; ++r)
        if (!is_zero(w[r]))
            for (std::size_t c = 0; c < n; ++c)
                m.at(r, c) = w[r] * l[c];
    return LinearOperator(std::move(m));
}

/// A linear space of operators, stored RREF-canonically in flattened form.
class OperatorSubspace {
public:
    OperatorSubspace() : op_dim_(0) {}

    explicit OperatorSubspace(std::size_t op_dim) : op_dim_(op_dim) {}

    static OperatorSubspace from_spanning(std::size_t op_dim, const std::vector<LinearOperator>& ops)
    {
        std::vector<Vec> flats;
        flats.reserve(ops.size());
        for (const auto& op : ops) {
            if (op.dim() != op_dim)
                throw std::invalid_argument("operator dimension mismatch");
            flats.push_back(op.flatten());
        }
        OperatorSubspace s(op_dim);
        s.flat_ = SubspaceBasis::from_spanning(op_dim * op_dim, flats);
        return s;
    }

    static OperatorSubspace from_flat(std::size_t op_dim, const SubspaceBasis& flat)
    {
        if (flat.ambient_dim() != op_dim * op_dim)
            throw std::invalid_argument("flattened ambient dimension mismatch");
        OperatorSubspace s(op_dim);
        s.flat_ = flat;
        return s;
    }

    std::size_t operator_dim() const { return op_dim_; }
    std::size_t dim() const { return flat_.dim(); }
    const SubspaceBasis& flat() const { return flat_; }

    std::vector<LinearOperator> basis() const
    {
        std::vector<LinearOperator> ops;
        ops.reserve(flat_.dim());
        for (const Vec& v : flat_.vectors())
            ops.push_back(LinearOperator::from_flat(op_dim_, v));
        return ops;
    }

    bool contains(const LinearOperator& op) const { return flat_.contains(op.flatten()); }

    bool operator==(const OperatorSubspace& o) const
    {
        return op_dim_ == o.op_dim_ && flat_ == o.flat_;
    }

private:
    std::size_t op_dim_;
    SubspaceBasis flat_;
};

} // namespace leibniz
