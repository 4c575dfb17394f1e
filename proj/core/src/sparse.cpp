#include "qgtlab/sparse.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>

#include "qgtlab/errors.hpp"

namespace qgt {

SparseOperator SparseOperator::from_triplets(std::size_t dimension,
                                             std::vector<Triplet> triplets, bool hermitian) {
    for (const Triplet& t : triplets)
        if (t.row >= dimension || t.col >= dimension)
            throw DimensionMismatch("triplet index outside the operator dimension");

    std::sort(triplets.begin(), triplets.end(), [](const Triplet& a, const Triplet& b) {
        return a.row != b.row ? a.row < b.row : a.col < b.col;
    });

    SparseOperator op;
    op.dimension_ = dimension;
    op.hermitian_ = hermitian;
    op.offsets_.assign(dimension + 1, 0);
    op.columns_.reserve(triplets.size());
    op.values_.reserve(triplets.size());

    std::size_t i = 0;
    for (std::size_t row = 0; row < dimension; ++row) {
        while (i < triplets.size() && triplets[i].row == row) {
            const std::uint32_t col = triplets[i].col;
            Complex sum = triplets[i].value;
            ++i;
            while (i < triplets.size() && triplets[i].row == row && triplets[i].col == col) {
                sum += triplets[i].value;
                ++i;
            }
            if (sum != Complex{0.0, 0.0}) {
                op.columns_.push_back(col);
                op.values_.push_back(sum);
            }
        }
        op.offsets_[row + 1] = static_cast<std::int64_t>(op.columns_.size());
    }

    op.is_real_ = std::all_of(op.values_.begin(), op.values_.end(),
                              [](const Complex& v) { return v.imag() == 0.0; });
    if (op.is_real_) {
        op.real_values_.resize(op.values_.size());
        for (std::size_t k = 0; k < op.values_.size(); ++k)
            op.real_values_[k] = op.values_[k].real();
    }

#ifndef NDEBUG
    if (hermitian && dimension <= 4096) assert(op.hermiticity_defect() <= 1e-13);
#endif
    return op;
}

void SparseOperator::apply(const Complex* x, Complex* y) const {
    for (std::size_t row = 0; row < dimension_; ++row) {
        Complex sum{0.0, 0.0};
        for (std::int64_t k = offsets_[row]; k < offsets_[row + 1]; ++k)
            sum += values_[k] * x[columns_[k]];
        y[row] = sum;
    }
}

void SparseOperator::apply_real(const double* x, double* y) const {
    assert(is_real_);
    for (std::size_t row = 0; row < dimension_; ++row) {
        double sum = 0.0;
        for (std::int64_t k = offsets_[row]; k < offsets_[row + 1]; ++k)
            sum += real_values_[k] * x[columns_[k]];
        y[row] = sum;
    }
}

Eigen::VectorXcd SparseOperator::apply(const Eigen::Ref<const Eigen::VectorXcd>& x) const {
    if (static_cast<std::size_t>(x.size()) != dimension_)
        throw DimensionMismatch("vector length " + std::to_string(x.size()) +
                                " does not match operator dimension " +
                                std::to_string(dimension_));
    Eigen::VectorXcd y(dimension_);
    apply(x.data(), y.data());
    return y;
}

double SparseOperator::hermiticity_defect() const {
    // Walk A and look up the transposed entry with a binary search per element.
    double defect = 0.0;
    for (std::size_t row = 0; row < dimension_; ++row) {
        for (std::int64_t k = offsets_[row]; k < offsets_[row + 1]; ++k) {
            const std::uint32_t col = columns_[k];
            const auto begin = columns_.begin() + offsets_[col];
            const auto end = columns_.begin() + offsets_[col + 1];
            const auto it = std::lower_bound(begin, end, static_cast<std::uint32_t>(row));
            Complex transposed{0.0, 0.0};
            if (it != end && *it == row) transposed = values_[it - columns_.begin()];
            defect = std::max(defect, std::abs(values_[k] - std::conj(transposed)));
        }
    }
    return defect;
}

Eigen::MatrixXcd SparseOperator::dense() const {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dimension_, dimension_);
    for (std::size_t row = 0; row < dimension_; ++row)
        for (std::int64_t k = offsets_[row]; k < offsets_[row + 1]; ++k)
            m(row, columns_[k]) += values_[k];
    return m;
}

}  // namespace qgt
