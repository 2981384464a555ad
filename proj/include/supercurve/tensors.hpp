#pragma once

#include <Eigen/Core>

namespace supercurve {

// Small dense rank-3/rank-4 tensors with runtime dimensions. Target manifolds
// here have dim <= 4, so flat Eigen storage is all that is needed.

class Tensor3 {
public:
    Tensor3() = default;
    Tensor3(int d0, int d1, int d2) : d0_(d0), d1_(d1), d2_(d2), v_(Eigen::VectorXd::Zero(d0 * d1 * d2)) {}

    double& operator()(int a, int i, int j) { return v_[(a * d1_ + i) * d2_ + j]; }
    double operator()(int a, int i, int j) const { return v_[(a * d1_ + i) * d2_ + j]; }

    void setZero() { v_.setZero(); }
    int dim0() const { return d0_; }
    int dim1() const { return d1_; }
    int dim2() const { return d2_; }

    // slice (a, :, :) as a matrix copy
    Eigen::MatrixXd slice(int a) const {
        Eigen::MatrixXd m(d1_, d2_);
        for (int i = 0; i < d1_; ++i)
            for (int j = 0; j < d2_; ++j) m(i, j) = (*this)(a, i, j);
        return m;
    }
    void set_slice(int a, const Eigen::MatrixXd& m) {
        for (int i = 0; i < d1_; ++i)
            for (int j = 0; j < d2_; ++j) (*this)(a, i, j) = m(i, j);
    }

private:
    int d0_ = 0, d1_ = 0, d2_ = 0;
    Eigen::VectorXd v_;
};

class Tensor4 {
public:
    Tensor4() = default;
    Tensor4(int d0, int d1, int d2, int d3)
        : d0_(d0), d1_(d1), d2_(d2), d3_(d3), v_(Eigen::VectorXd::Zero(d0 * d1 * d2 * d3)) {}

    double& operator()(int a, int b, int i, int j) { return v_[((a * d1_ + b) * d2_ + i) * d3_ + j]; }
    double operator()(int a, int b, int i, int j) const { return v_[((a * d1_ + b) * d2_ + i) * d3_ + j]; }

    void setZero() { v_.setZero(); }
    int dim0() const { return d0_; }

private:
    int d0_ = 0, d1_ = 0, d2_ = 0, d3_ = 0;
    Eigen::VectorXd v_;
};

}  // namespace supercurve
