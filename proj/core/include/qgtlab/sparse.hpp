#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include <Eigen/Core>

namespace qgt {

using Complex = std::complex<double>;

struct Triplet {
    std::uint32_t row;
    std::uint32_t col;
    Complex value;
};

// Compressed-sparse-row operator on a sector basis. Immutable after construction;
// apply() is safe to call concurrently from many threads.
class SparseOperator {
public:
    SparseOperator() = default;

    // Duplicate (row, col) entries are summed; exact zeros are dropped.
    static SparseOperator from_triplets(std::size_t dimension, std::vector<Triplet> triplets,
                                        bool hermitian);

    std::size_t dimension() const { return dimension_; }
    std::size_t nnz() const { return values_.size(); }
    bool hermitian() const { return hermitian_; }
    bool is_real() const { return is_real_; }

    const std::vector<std::int64_t>& row_offsets() const { return offsets_; }
    const std::vector<std::uint32_t>& col_indices() const { return columns_; }
    const std::vector<Complex>& values() const { return values_; }

    // y = A x. Row sums are accumulated in a fixed order, so results are
    // bitwise reproducible.
    Eigen::VectorXcd apply(const Eigen::Ref<const Eigen::VectorXcd>& x) const;
    void apply(const Complex* x, Complex* y) const;

    // Fast path for real-valued operators (requires is_real()).
    void apply_real(const double* x, double* y) const;

    // max |A - A^dagger| over all entries.
    double hermiticity_defect() const;

    Eigen::MatrixXcd dense() const;

private:
    std::size_t dimension_ = 0;
    std::vector<std::int64_t> offsets_;
    std::vector<std::uint32_t> columns_;
    std::vector<Complex> values_;
    std::vector<double> real_values_;  // populated when is_real_
    bool hermitian_ = false;
    bool is_real_ = false;
};

}  // namespace qgt
