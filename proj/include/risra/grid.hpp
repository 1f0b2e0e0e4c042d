#ifndef RISRA_GRID_HPP_
#define RISRA_GRID_HPP_

#include <cstddef>
#include <span>
#include <vector>

namespace risra {

/// Dense row-major devices x slots matrix of reals.
class Grid
{
public:
    Grid() = default;
    Grid(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill)
    {
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::span<const double> row(std::size_t r) const
    {
        return {data_.data() + r * cols_, cols_};
    }
    std::span<double> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }

    std::span<const double> values() const { return data_; }
    std::span<double> values() { return data_; }

    bool operator==(const Grid&) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

/// gamma_k(s): per-device, per-slot linear SNR.
using SnrMatrix = Grid;

} // namespace risra

#endif /* RISRA_GRID_HPP_ */
