#include "dtm/bell.hpp"

namespace dtm {

namespace {

// Depth-first enumeration choosing j_1 first, largest value first, which
// yields descending lexicographic order on (j_1, j_2, ...).
void emit_partitions(int slot, int slots, int rem_degree, int rem_weight,
                     std::vector<int>& j, std::vector<partition_vector>& out) {
    if (slot == slots) {
        if (rem_degree == 0 && rem_weight == 0) {
            partition_vector p;
            p.multiplicities = j;
            for (int i = 0; i < slots; ++i) {
                p.degree += j[i];
                p.weight += (i + 1) * j[i];
            }
            out.push_back(std::move(p));
        }
        return;
    }
    int size = slot + 1;  // part size recorded by this slot
    int max_j = rem_degree;
    if (size * max_j > rem_weight) max_j = rem_weight / size;
    for (int v = max_j; v >= 0; --v) {
        // The d parts still to place use sizes between size+1 and slots, so
        // the leftover weight w must lie in [d*(size+1), d*slots].
        int d = rem_degree - v;
        int w = rem_weight - size * v;
        if (w < d * (size + 1) || w > d * slots) continue;
        j[slot] = v;
        emit_partitions(slot + 1, slots, d, w, j, out);
        j[slot] = 0;
    }
}

}  // namespace

std::vector<partition_vector> enumerate_partitions(int k, int l) {
    if (k < 0 || l < 0)
        throw std::invalid_argument("enumerate_partitions: k and l must be non-negative");
    if (l > k)
        throw std::invalid_argument("enumerate_partitions: l exceeds k");
    std::vector<partition_vector> out;
    int slots = k - l + 1;
    if (l == 0) {
        if (k == 0) out.push_back(partition_vector{std::vector<int>{}, 0, 0});
        return out;
    }
    std::vector<int> j(slots, 0);
    emit_partitions(0, slots, l, k, j, out);
    return out;
}

}  // namespace dtm
