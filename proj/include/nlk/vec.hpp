#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <vector>

#include "nlk/errors.hpp"

namespace nlk {

inline constexpr int kMaxDim = 8;

/// Fixed-capacity d-vector. All hot loops run on these; no heap traffic.
class Vec {
  public:
    Vec() : dim_(0) { data_.fill(0.0); }
    explicit Vec(int d, double fill = 0.0) : dim_(d) {
        if (d < 0 || d > kMaxDim) throw InvalidParameter("Vec dimension out of range");
        data_.fill(0.0);
        for (int i = 0; i < d; ++i) data_[i] = fill;
    }
    Vec(std::initializer_list<double> xs) : dim_(static_cast<int>(xs.size())) {
        if (dim_ > kMaxDim) throw InvalidParameter("Vec dimension out of range");
        data_.fill(0.0);
        int i = 0;
        for (double x : xs) data_[i++] = x;
    }
    static Vec from(const std::vector<double>& xs) {
        Vec v(static_cast<int>(xs.size()));
        for (std::size_t i = 0; i < xs.size(); ++i) v[static_cast<int>(i)] = xs[i];
        return v;
    }
    static Vec unit(int d, int axis) {
        Vec v(d);
        v[axis] = 1.0;
        return v;
    }

    int dim() const { return dim_; }
    double& operator[](int i) { return data_[static_cast<std::size_t>(i)]; }
    double operator[](int i) const { return data_[static_cast<std::size_t>(i)]; }

    std::vector<double> to_std() const { return {data_.begin(), data_.begin() + dim_}; }

    Vec& operator+=(const Vec& o) {
        for (int i = 0; i < dim_; ++i) data_[i] += o.data_[i];
        return *this;
    }
    Vec& operator-=(const Vec& o) {
        for (int i = 0; i < dim_; ++i) data_[i] -= o.data_[i];
        return *this;
    }
    Vec& operator*=(double c) {
        for (int i = 0; i < dim_; ++i) data_[i] *= c;
        return *this;
    }
    friend Vec operator+(Vec a, const Vec& b) { return a += b; }
    friend Vec operator-(Vec a, const Vec& b) { return a -= b; }
    friend Vec operator*(double c, Vec a) { return a *= c; }
    friend Vec operator*(Vec a, double c) { return a *= c; }
    friend Vec operator-(Vec a) {
        for (int i = 0; i < a.dim_; ++i) a.data_[i] = -a.data_[i];
        return a;
    }
    friend bool operator==(const Vec& a, const Vec& b) {
        if (a.dim_ != b.dim_) return false;
        for (int i = 0; i < a.dim_; ++i)
            if (a.data_[i] != b.data_[i]) return false;
        return true;
    }

  private:
    std::array<double, kMaxDim> data_;
    int dim_;
};

inline double dot(const Vec& a, const Vec& b) {
    double s = 0.0;
    for (int i = 0; i < a.dim(); ++i) s += a[i] * b[i];
    return s;
}

inline double norm_sq(const Vec& a) { return dot(a, a); }
inline double norm(const Vec& a) { return std::sqrt(norm_sq(a)); }

/// Fixed-capacity d x d matrix (row major).
class Mat {
  public:
    Mat() : dim_(0) { data_.fill(0.0); }
    explicit Mat(int d, double fill = 0.0) : dim_(d) {
        if (d < 0 || d > kMaxDim) throw InvalidParameter("Mat dimension out of range");
        data_.fill(0.0);
        for (int i = 0; i < d * d; ++i) data_[i] = fill;
    }
    static Mat identity(int d) {
        Mat m(d);
        for (int i = 0; i < d; ++i) m(i, i) = 1.0;
        return m;
    }

    int dim() const { return dim_; }
    double& operator()(int i, int j) { return data_[static_cast<std::size_t>(i * dim_ + j)]; }
    double operator()(int i, int j) const { return data_[static_cast<std::size_t>(i * dim_ + j)]; }

    Vec apply(const Vec& x) const {
        Vec y(dim_);
        for (int i = 0; i < dim_; ++i) {
            double s = 0.0;
            for (int j = 0; j < dim_; ++j) s += (*this)(i, j) * x[j];
            y[i] = s;
        }
        return y;
    }

    bool is_skew() const {
        for (int i = 0; i < dim_; ++i)
            for (int j = 0; j < dim_; ++j)
                if ((*this)(i, j) != -(*this)(j, i)) return false;
        return true;
    }

    /// <A z, z> evaluated through the symmetrized coefficients A_ij + A_ji.
    /// Skew matrices cancel term by term, so the result is an exact zero.
    double quadratic_form(const Vec& z) const {
        double s = 0.0;
        for (int i = 0; i < dim_; ++i) {
            s += (*this)(i, i) * z[i] * z[i];
            for (int j = i + 1; j < dim_; ++j) s += ((*this)(i, j) + (*this)(j, i)) * (z[i] * z[j]);
        }
        return s;
    }

  private:
    std::array<double, kMaxDim * kMaxDim> data_;
    int dim_;
};

} // namespace nlk
