#pragma once

#include <collapse/core/errors.hpp>

#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <vector>

namespace collapse {

template <class T>
class BasicVec {
public:
    BasicVec() = default;
    explicit BasicVec(std::size_t dim) : c_(dim, T(0)) {}
    BasicVec(std::initializer_list<T> values) : c_(values) {}
    explicit BasicVec(std::vector<T> values) : c_(std::move(values)) {}

    std::size_t size() const { return c_.size(); }
    T& operator[](std::size_t i) { return c_[i]; }
    const T& operator[](std::size_t i) const { return c_[i]; }
    const std::vector<T>& components() const { return c_; }

    BasicVec& operator+=(const BasicVec& o) {
        check(o);
        for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
        return *this;
    }
    BasicVec& operator-=(const BasicVec& o) {
        check(o);
        for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
        return *this;
    }
    BasicVec& operator*=(const T& s) {
        for (auto& x : c_) x *= s;
        return *this;
    }
    BasicVec& operator/=(const T& s) {
        for (auto& x : c_) x /= s;
        return *this;
    }

    // this += s * o
    BasicVec& add_scaled(const T& s, const BasicVec& o) {
        check(o);
        for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += s * o.c_[i];
        return *this;
    }

    friend BasicVec operator+(BasicVec a, const BasicVec& b) { return a += b; }
    friend BasicVec operator-(BasicVec a, const BasicVec& b) { return a -= b; }
    friend BasicVec operator-(BasicVec a) {
        for (auto& x : a.c_) x = -x;
        return a;
    }
    friend BasicVec operator*(BasicVec a, const T& s) { return a *= s; }
    friend BasicVec operator*(const T& s, BasicVec a) { return a *= s; }
    friend BasicVec operator/(BasicVec a, const T& s) { return a /= s; }
    friend bool operator==(const BasicVec& a, const BasicVec& b) { return a.c_ == b.c_; }

    friend T dot(const BasicVec& a, const BasicVec& b) {
        a.check(b);
        T s(0);
        for (std::size_t i = 0; i < a.c_.size(); ++i) s += a.c_[i] * b.c_[i];
        return s;
    }
    friend T norm2(const BasicVec& a) { return dot(a, a); }
    friend T norm(const BasicVec& a) {
        using std::sqrt;
        return sqrt(norm2(a));
    }

    static BasicVec zero(std::size_t dim) { return BasicVec(dim); }
    static BasicVec axis(std::size_t dim, std::size_t k) {
        BasicVec e(dim);
        e[k] = T(1);
        return e;
    }

private:
    void check(const BasicVec& o) const {
        if (o.c_.size() != c_.size()) throw InvalidArgument("vector dimension mismatch");
    }
    std::vector<T> c_;
};

template <class U, class T>
BasicVec<U> vec_cast(const BasicVec<T>& v) {
    std::vector<U> out;
    out.reserve(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out.push_back(static_cast<U>(v[i]));
    return BasicVec<U>(std::move(out));
}

using VecD = BasicVec<double>;

}  // namespace collapse
