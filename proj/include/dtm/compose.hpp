#pragma once

#include <cmath>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <type_traits>
#include <utility>
#include <vector>

#include "dtm/bell.hpp"
#include "dtm/jet.hpp"

namespace dtm {

// Whether two expansion points are close enough to be treated as equal.
// Floating-point instantiations use a mixed absolute/relative tolerance;
// exact number types compare exactly.
template <typename T>
bool expansion_points_match(const T& a, const T& b) {
    if constexpr (std::is_floating_point_v<T>) {
        T diff = a < b ? b - a : a - b;
        T mag = std::abs(a) < std::abs(b) ? std::abs(b) : std::abs(a);
        return diff <= T(1e-12) * (T(1) + mag);
    } else {
        return a == b;
    }
}

// Incremental composition h = f(g): outer coefficients are fixed up front,
// inner coefficients arrive one at a time, and each push returns the next
// composite coefficient
//     H(0) = F(0),
//     H(k) = sum_{l=1}^{k} F(l) * Bhat_{k,l}(G(1), ..., G(k-l+1)).
// The ordinary Bell rows over the inner tail are grown one row per push and
// cached, so computing all of H(0..N) costs O(N^3) total.  Earlier outputs
// never change when further inner coefficients arrive.
template <typename T>
class composition_stream {
public:
    // `outer` must be expanded about the inner function's value, i.e.
    // outer.t0() must match the first pushed coefficient G(0).
    explicit composition_stream(const basic_jet<T>& outer)
        : outer_point_(outer.t0()), outer_(outer.coeffs()) {}

    // Number of inner coefficients consumed so far.
    int pushed() const { return static_cast<int>(inner_.size()); }

    // Consumes G(k) for the next k and returns H(k).  Throws
    // std::invalid_argument when the outer expansion is too short or, on
    // the first push, when G(0) does not match the outer expansion point.
    T push(const T& g_k) {
        int k = pushed();
        if (k >= static_cast<int>(outer_.size()))
            throw std::invalid_argument(
                "composition_stream: outer expansion has order " +
                std::to_string(outer_.size() - 1) +
                ", cannot produce coefficient " + std::to_string(k));
        if (k == 0) {
            if (!expansion_points_match(outer_point_, g_k))
                throw std::invalid_argument(mismatch_message(g_k));
            inner_.push_back(g_k);
            rows_.push_back({T(1)});
            return outer_[0];
        }
        inner_.push_back(g_k);
        std::vector<T> row(k + 1, T(0));
        for (int l = 1; l <= k; ++l) {
            T s(0);
            for (int i = 1; i <= k - l + 1; ++i)
                s += T(i * l) / T(k) * inner_[i] * rows_[k - i][l - 1];
            row[l] = s;
        }
        rows_.push_back(std::move(row));
        T h(0);
        for (int l = 1; l <= k; ++l) h += outer_[l] * rows_[k][l];
        return h;
    }

private:
    std::string mismatch_message(const T& g0) const {
        std::ostringstream os;
        os << "composition_stream: outer expansion point " << outer_point_
           << " does not match inner value " << g0;
        return os.str();
    }

    T outer_point_;
    std::vector<T> outer_;
    std::vector<T> inner_;
    std::vector<std::vector<T>> rows_;
};

// Whole-jet composition h = f(g); both jets must have the same order and
// outer.t0() must match inner[0].
template <typename T>
basic_jet<T> compose(const basic_jet<T>& outer, const basic_jet<T>& inner) {
    if (outer.order() != inner.order())
        throw std::invalid_argument("compose: outer and inner orders differ");
    composition_stream<T> stream(outer);
    std::vector<T> h;
    h.reserve(inner.order() + 1);
    for (int k = 0; k <= inner.order(); ++k) h.push_back(stream.push(inner[k]));
    return basic_jet<T>(inner.t0(), std::move(h));
}

// The same composition routed through exponential Bell polynomials over the
// derivative sequence g_m = m! * G(m):
//     k! * H(k) = sum_{l=1}^{k} l! * F(l) * B_{k,l}(g_1, ..., g_{k-l+1}).
// Used as an independent cross-check of compose().
template <typename T>
basic_jet<T> compose_via_exponential(const basic_jet<T>& outer,
                                     const basic_jet<T>& inner) {
    if (outer.order() != inner.order())
        throw std::invalid_argument("compose_via_exponential: orders differ");
    if (!expansion_points_match(outer.t0(), inner[0]))
        throw std::invalid_argument(
            "compose_via_exponential: outer expansion point does not match inner value");
    int n = inner.order();
    std::vector<T> scaled;  // m! * G(m) for m = 1..n
    scaled.reserve(n);
    T mfact(1);
    for (int m = 1; m <= n; ++m) {
        mfact *= T(m);
        scaled.push_back(mfact * inner[m]);
    }
    bell_table<T> table(bell_kind::exponential, std::move(scaled), n);
    std::vector<T> h(n + 1, T(0));
    h[0] = outer[0];
    T kfact(1);
    for (int k = 1; k <= n; ++k) {
        kfact *= T(k);
        T s(0);
        T lfact(1);
        for (int l = 1; l <= k; ++l) {
            lfact *= T(l);
            s += lfact * outer[l] * table.at(k, l);
        }
        h[k] = s / kfact;
    }
    return basic_jet<T>(inner.t0(), std::move(h));
}

// Single composite coefficient H(k) from exactly the inner prefix
// G(0..k) it depends on.
template <typename T>
T composite_coefficient(const basic_jet<T>& outer, const std::vector<T>& inner_prefix,
                        int k) {
    if (k < 0) throw std::invalid_argument("composite_coefficient: negative k");
    if (static_cast<int>(inner_prefix.size()) != k + 1)
        throw std::invalid_argument("composite_coefficient: prefix must hold exactly G(0..k)");
    if (outer.order() < k)
        throw std::invalid_argument("composite_coefficient: outer order below k");
    composition_stream<T> stream(outer);
    T h(0);
    for (const T& g : inner_prefix) h = stream.push(g);
    return h;
}

}  // namespace dtm
