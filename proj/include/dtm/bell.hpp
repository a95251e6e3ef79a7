#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace dtm {

namespace detail {

// n! accumulated in the coefficient type, so rational instantiations stay
// exact and floating-point instantiations round only once per factor.
template <typename T>
T factorial_as(int n) {
    T f(1);
    for (int i = 2; i <= n; ++i) f *= T(i);
    return f;
}

// x^n for non-negative integer n by repeated multiplication.
template <typename T>
T pow_int(const T& x, int n) {
    T p(1);
    for (int i = 0; i < n; ++i) p *= x;
    return p;
}

}  // namespace detail

// One multiplicity vector (j_1, ..., j_{k-l+1}) describing a partition of k
// into l parts: j_i counts the parts of size i, so sum(j_i) = degree and
// sum(i*j_i) = weight.
struct partition_vector {
    std::vector<int> multiplicities;
    int weight = 0;
    int degree = 0;
};

// All multiplicity vectors with weight k and degree l, in descending
// lexicographic order on (j_1, j_2, ...).  For l = 0 the result is a single
// empty-support vector when k = 0 and no vectors otherwise.
// Throws std::invalid_argument when k < 0, l < 0 or l > k.
std::vector<partition_vector> enumerate_partitions(int k, int l);

enum class bell_kind { exponential, ordinary };

// Triangular table of partial Bell polynomial values B_{k,l} over a fixed
// input sequence, for all 0 <= l <= k <= order.  The exponential kind
// satisfies the two-index recurrence
//     B_{k,l} = sum_{i=1}^{k-l+1} C(k-1, i-1) * x_i * B_{k-i, l-1}
// and the ordinary kind
//     B_{k,l} = sum_{i=1}^{k-l+1} (i*l/k) * x_i * B_{k-i, l-1},
// both anchored at B_{0,0} = 1 and B_{k,0} = 0 for k >= 1.
template <typename T>
class bell_table {
public:
    // `inputs` supplies x_1, x_2, ... and must provide at least `order`
    // entries.  The full table is filled eagerly in O(order^3) operations.
    bell_table(bell_kind kind, std::vector<T> inputs, int order)
        : kind_(kind), order_(order), inputs_(std::move(inputs)) {
        if (order_ < 0)
            throw std::invalid_argument("bell_table: order must be non-negative");
        if (static_cast<int>(inputs_.size()) < order_)
            throw std::invalid_argument(
                "bell_table: need at least `order` input entries, got " +
                std::to_string(inputs_.size()));
        rows_.reserve(order_ + 1);
        rows_.push_back({T(1)});
        if (kind_ == bell_kind::exponential)
            fill_exponential();
        else
            fill_ordinary();
    }

    bell_kind kind() const { return kind_; }
    int order() const { return order_; }
    const std::vector<T>& inputs() const { return inputs_; }

    // Value of B_{k,l}; returns 0 for l > k (no partition of k into more
    // than k positive parts).  Throws std::out_of_range outside the table.
    T at(int k, int l) const {
        if (k < 0 || l < 0 || k > order_ || l > order_)
            throw std::out_of_range("bell_table: index outside table");
        if (l > k) return T(0);
        return rows_[k][l];
    }

private:
    void fill_exponential() {
        std::vector<T> binom{T(1)};  // row C(k-1, .) of Pascal's triangle
        for (int k = 1; k <= order_; ++k) {
            std::vector<T> row(k + 1, T(0));
            for (int l = 1; l <= k; ++l) {
                T s(0);
                for (int i = 1; i <= k - l + 1; ++i)
                    s += binom[i - 1] * inputs_[i - 1] * rows_[k - i][l - 1];
                row[l] = s;
            }
            rows_.push_back(std::move(row));
            std::vector<T> next(k + 1, T(1));
            for (int j = 1; j < k; ++j) next[j] = binom[j - 1] + binom[j];
            binom = std::move(next);
        }
    }

    void fill_ordinary() {
        for (int k = 1; k <= order_; ++k) {
            std::vector<T> row(k + 1, T(0));
            for (int l = 1; l <= k; ++l) {
                T s(0);
                for (int i = 1; i <= k - l + 1; ++i)
                    s += T(i * l) / T(k) * inputs_[i - 1] * rows_[k - i][l - 1];
                row[l] = s;
            }
            rows_.push_back(std::move(row));
        }
    }

    bell_kind kind_;
    int order_;
    std::vector<T> inputs_;
    std::vector<std::vector<T>> rows_;
};

namespace detail {

template <typename T>
void check_bell_args(const char* who, int k, int l, std::size_t have) {
    if (k < 0 || l < 0)
        throw std::invalid_argument(std::string(who) + ": k and l must be non-negative");
    if (l > k)
        throw std::invalid_argument(std::string(who) + ": l exceeds k");
    if (l >= 1 && static_cast<int>(have) < k - l + 1)
        throw std::invalid_argument(std::string(who) + ": need x_1..x_" +
                                    std::to_string(k - l + 1) + ", got " +
                                    std::to_string(have) + " entries");
}

// Pads the inputs to length k so a full table can be built; the padded
// entries can only influence cells outside the dependency cone of (k, l).
template <typename T>
T bell_single_value(bell_kind kind, int k, int l, const std::vector<T>& xs) {
    if (l == 0) return k == 0 ? T(1) : T(0);
    std::vector<T> padded(xs.begin(), xs.begin() + std::min<std::size_t>(xs.size(), k));
    padded.resize(k, T(0));
    return bell_table<T>(kind, std::move(padded), k).at(k, l);
}

}  // namespace detail

// Partial exponential Bell polynomial B_{k,l}(x_1, ..., x_{k-l+1}) evaluated
// from the explicit partition sum
//     sum over weight-k degree-l multiplicity vectors of
//     k! / (j_1! ... j_{k-l+1}!) * prod_i (x_i / i!)^{j_i}.
// Each term's numeric coefficient is formed as a single exact-integer
// quotient, so rational instantiations are exact.
template <typename T>
T bell_exp_explicit(int k, int l, const std::vector<T>& xs) {
    detail::check_bell_args<T>("bell_exp_explicit", k, l, xs.size());
    if (l == 0) return k == 0 ? T(1) : T(0);
    T total(0);
    for (const partition_vector& p : enumerate_partitions(k, l)) {
        T denom(1);
        T mono(1);
        for (std::size_t idx = 0; idx < p.multiplicities.size(); ++idx) {
            int j = p.multiplicities[idx];
            if (j == 0) continue;
            int i = static_cast<int>(idx) + 1;
            denom *= detail::factorial_as<T>(j) *
                     detail::pow_int(detail::factorial_as<T>(i), j);
            mono *= detail::pow_int(xs[idx], j);
        }
        total += detail::factorial_as<T>(k) / denom * mono;
    }
    return total;
}

// B_{k,l} (exponential) by the two-index recurrence; agrees with
// bell_exp_explicit on every input.
template <typename T>
T bell_exp_recurrence(int k, int l, const std::vector<T>& xs) {
    detail::check_bell_args<T>("bell_exp_recurrence", k, l, xs.size());
    return detail::bell_single_value(bell_kind::exponential, k, l, xs);
}

// Partial ordinary Bell polynomial over x-hat inputs by its recurrence.
template <typename T>
T bell_ord_recurrence(int k, int l, const std::vector<T>& xhats) {
    detail::check_bell_args<T>("bell_ord_recurrence", k, l, xhats.size());
    return detail::bell_single_value(bell_kind::ordinary, k, l, xhats);
}

// Exponential value obtained from the ordinary kind through the scaling
// identity B_{k,l}(x) = (k!/l!) * Bhat_{k,l}(x_i / i!).
template <typename T>
T exp_from_ord(int k, int l, const std::vector<T>& xs) {
    detail::check_bell_args<T>("exp_from_ord", k, l, xs.size());
    if (l == 0) return k == 0 ? T(1) : T(0);
    std::vector<T> scaled;
    scaled.reserve(xs.size());
    T fact(1);
    for (std::size_t idx = 0; idx < xs.size(); ++idx) {
        fact *= T(static_cast<int>(idx) + 1);
        scaled.push_back(xs[idx] / fact);
    }
    T ratio(1);  // k!/l!
    for (int i = l + 1; i <= k; ++i) ratio *= T(i);
    return ratio * detail::bell_single_value(bell_kind::ordinary, k, l, scaled);
}

}  // namespace dtm
