#pragma once

#include <Eigen/Core>

#include <cmath>

namespace gcproi {

/// Neumaier-compensated accumulator.
template <typename Scalar>
class CompensatedSum {
public:
    CompensatedSum& operator+=(Scalar x)
    {
        using std::abs;
        const Scalar t = sum_ + x;
        if (abs(sum_) >= abs(x)) {
            carry_ += (sum_ - t) + x;
        } else {
            carry_ += (x - t) + sum_;
        }
        sum_ = t;
        return *this;
    }

    Scalar value() const { return sum_ + carry_; }

private:
    Scalar sum_{0};
    Scalar carry_{0};
};

/// Compensated sum of each column, accumulated top to bottom.
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, 1, Derived::ColsAtCompileTime>
compensated_colwise_sum(const Eigen::MatrixBase<Derived>& m)
{
    using Scalar = typename Derived::Scalar;
    Eigen::Matrix<Scalar, 1, Derived::ColsAtCompileTime> out(1, m.cols());
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
        CompensatedSum<Scalar> acc;
        for (Eigen::Index i = 0; i < m.rows(); ++i) acc += m(i, j);
        out(0, j) = acc.value();
    }
    return out;
}

/// Compensated sum of each row, accumulated left to right.
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Derived::RowsAtCompileTime, 1>
compensated_rowwise_sum(const Eigen::MatrixBase<Derived>& m)
{
    using Scalar = typename Derived::Scalar;
    Eigen::Matrix<Scalar, Derived::RowsAtCompileTime, 1> out(m.rows(), 1);
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        CompensatedSum<Scalar> acc;
        for (Eigen::Index j = 0; j < m.cols(); ++j) acc += m(i, j);
        out(i, 0) = acc.value();
    }
    return out;
}

template <typename Derived>
typename Derived::Scalar compensated_sum(const Eigen::DenseBase<Derived>& v)
{
    CompensatedSum<typename Derived::Scalar> acc;
    for (Eigen::Index i = 0; i < v.size(); ++i) acc += v.derived().coeff(i);
    return acc.value();
}

} // namespace gcproi
