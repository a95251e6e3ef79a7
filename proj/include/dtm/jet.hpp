#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "dtm/bell.hpp"

namespace dtm {

// Truncated Taylor expansion about a fixed point: coefficient k stores the
// k-th derivative divided by k!.  Immutable once constructed; the stored
// order is coeffs().size() - 1.  Floating-point instantiations reject
// non-finite entries at construction.
template <typename T>
class basic_jet {
public:
    basic_jet(T expansion_point, std::vector<T> coefficients)
        : t0_(std::move(expansion_point)), coeffs_(std::move(coefficients)) {
        if (coeffs_.empty())
            throw std::invalid_argument("jet: at least the order-0 coefficient is required");
        if constexpr (std::is_floating_point_v<T>) {
            if (!std::isfinite(t0_))
                throw std::invalid_argument("jet: expansion point must be finite");
            for (const T& c : coeffs_)
                if (!std::isfinite(c))
                    throw std::invalid_argument("jet: coefficients must be finite");
        }
    }

    int order() const { return static_cast<int>(coeffs_.size()) - 1; }
    const T& t0() const { return t0_; }
    const std::vector<T>& coeffs() const { return coeffs_; }
    const T& operator[](int k) const { return coeffs_[static_cast<std::size_t>(k)]; }

private:
    T t0_;
    std::vector<T> coeffs_;
};

using jet = basic_jet<double>;

namespace detail {

template <typename T>
void require_same_frame(const char* who, const basic_jet<T>& a, const basic_jet<T>& b) {
    if (!(a.t0() == b.t0()))
        throw std::invalid_argument(std::string(who) + ": expansion points differ");
    if (a.order() != b.order())
        throw std::invalid_argument(std::string(who) + ": orders differ");
}

}  // namespace detail

// Coefficient-wise sum; both operands must share expansion point and order.
template <typename T>
basic_jet<T> add(const basic_jet<T>& a, const basic_jet<T>& b) {
    detail::require_same_frame("add", a, b);
    std::vector<T> c(a.coeffs());
    for (int k = 0; k <= b.order(); ++k) c[k] += b[k];
    return basic_jet<T>(a.t0(), std::move(c));
}

// Coefficient-wise scaling by a constant.
template <typename T>
basic_jet<T> scale(const T& factor, const basic_jet<T>& a) {
    std::vector<T> c(a.coeffs());
    for (T& x : c) x *= factor;
    return basic_jet<T>(a.t0(), std::move(c));
}

// Truncated product: coefficient k of the result is the convolution
// sum_{j=0}^{k} a_j * b_{k-j}.
template <typename T>
basic_jet<T> cauchy_product(const basic_jet<T>& a, const basic_jet<T>& b) {
    detail::require_same_frame("cauchy_product", a, b);
    int n = a.order();
    std::vector<T> c(n + 1, T(0));
    for (int k = 0; k <= n; ++k) {
        T s(0);
        for (int j = 0; j <= k; ++j) s += a[j] * b[k - j];
        c[k] = s;
    }
    return basic_jet<T>(a.t0(), std::move(c));
}

// Product of m jets as a left fold of pairwise truncated products.
template <typename T>
basic_jet<T> m_fold_product(const std::vector<basic_jet<T>>& factors) {
    if (factors.empty())
        throw std::invalid_argument("m_fold_product: at least one factor is required");
    basic_jet<T> acc = factors.front();
    for (std::size_t i = 1; i < factors.size(); ++i)
        acc = cauchy_product(acc, factors[i]);
    return acc;
}

// Coefficients of the n-th derivative of the underlying function, as a jet
// of order (order - n): result_k = (k+1)(k+2)...(k+n) * a_{k+n}.
template <typename T>
basic_jet<T> derivative_shift(const basic_jet<T>& a, int n) {
    if (n < 1)
        throw std::invalid_argument("derivative_shift: n must be at least 1");
    if (n > a.order())
        throw std::invalid_argument("derivative_shift: n exceeds the jet order");
    std::vector<T> c;
    c.reserve(a.order() - n + 1);
    for (int k = 0; k + n <= a.order(); ++k) {
        T v = a[k + n];
        for (int j = k + 1; j <= k + n; ++j) v *= T(j);
        c.push_back(std::move(v));
    }
    return basic_jet<T>(a.t0(), std::move(c));
}

// Jet of the monomial t^n about `about`: coefficient k is C(n,k) * about^(n-k)
// for k <= n and zero beyond.  About the origin this is the unit impulse at
// index n (when n <= order).
template <typename T>
basic_jet<T> monomial(int n, int order, const T& about = T(0)) {
    if (n < 0 || order < 0)
        throw std::invalid_argument("monomial: n and order must be non-negative");
    std::vector<T> c(order + 1, T(0));
    T binom(1);
    for (int k = 0; k <= n && k <= order; ++k) {
        if (k > 0) binom = binom * T(n - k + 1) / T(k);
        c[k] = binom * detail::pow_int(about, n - k);
    }
    return basic_jet<T>(about, std::move(c));
}

// Truncated evaluation sum_{k=0}^{order} a_k (t - t0)^k by Horner's scheme.
template <typename T>
T eval_truncated(const basic_jet<T>& a, const T& t) {
    T dt = t - a.t0();
    T acc = a[a.order()];
    for (int k = a.order() - 1; k >= 0; --k) acc = acc * dt + a[k];
    return acc;
}

}  // namespace dtm
