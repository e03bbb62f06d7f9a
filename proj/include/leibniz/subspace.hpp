#pragma once

#include "leibniz/matrix.hpp"

#include <stdexcept>
#include <vector>

namespace leibniz {

/// A subspace of Q^ambient held as an RREF-canonical list of independent row
/// vectors. Two SubspaceBasis objects span the same space iff they compare equal.
class SubspaceBasis {
public:
    SubspaceBasis() : ambient_(0) {}

    explicit SubspaceBasis(std::size_t ambient_dim) : ambient_(ambient_dim) {}

    /// Canonicalizes an arbitrary spanning set: RREF, zero rows dropped.
    static SubspaceBasis from_spanning(std::size_t ambient_dim, const std::vector<Vec>& spanning)
    {
        SubspaceBasis s(ambient_dim);
        if (spanning.empty())
            return s;
        const RrefResult r = rref(Matrix::from_rows(spanning, ambient_dim));
        for (std::size_t i = 0; i < r.rank; ++i)
            s.vectors_.push_back(r.reduced.row(i));
        return s;
    }

    static SubspaceBasis full(std::size_t ambient_dim)
    {
        SubspaceBasis s(ambient_dim);
        for (std::size_t i = 0; i < ambient_dim; ++i) {
            Vec v = zero_vec(ambient_dim);
            v[i] = 1;
            s.vectors_.push_back(std::move(v));
        }
        return s;
    }

    std::size_t ambient_dim() const { return ambient_; }
    std::size_t dim() const { return vectors_.size(); }
    const std::vector<Vec>& vectors() const { return vectors_; }

    bool operator==(const SubspaceBasis& o) const
    {
        return ambient_ == o.ambient_ && vectors_ == o.vectors_;
    }

    bool contains(const Vec& v) const
    {
        if (v.size() != ambient_)
            throw std::invalid_argument("ambient dimension mismatch");
        if (is_zero_vec(v))
            return true;
        std::vector<Vec> rows = vectors_;
        rows.push_back(v);
        return rref(Matrix::from_rows(rows, ambient_)).rank == dim();
    }

    /// Annihilator { a : <v, a> = 0 for every v in the span }.
    SubspaceBasis annihilator() const
    {
        if (vectors_.empty())
            return full(ambient_);
        return from_spanning(ambient_, nullspace(Matrix::from_rows(vectors_, ambient_)));
    }

private:
    std::size_t ambient_;
    std::vector<Vec> vectors_;
};

inline bool subspace_contains(const SubspaceBasis& outer, const SubspaceBasis& inner)
{
    if (outer.ambient_dim() != inner.ambient_dim())
        throw std::invalid_argument("ambient dimension mismatch");
    std::vector<Vec> rows = outer.vectors();
    for (const Vec& v : inner.vectors())
        rows.push_back(v);
    if (rows.empty())
        return true;
    return rref(Matrix::from_rows(rows, outer.ambient_dim())).rank == outer.dim();
}

inline bool subspace_equal(const SubspaceBasis& a, const SubspaceBasis& b)
{
    if (a.ambient_dim() != b.ambient_dim())
        throw std::invalid_argument("ambient dimension mismatch");
    return a.vectors() == b.vectors();
}

} // namespace leibniz
