#include "cagl/weight_index.hpp"

#include <bit>

namespace cagl {

void weight_index::reset(std::size_t capacity) {
    cap_ = capacity;
    positive_ = 0;
    tree_.assign(cap_ + 1, 0.0);
    weight_.assign(cap_ + 1, 0.0);
}

void weight_index::set(node_id id, double w) {
    if (id == 0 || id > cap_)
        raise(errc::invalid_node_id, "weight index id " + std::to_string(id) + " out of range");
    check_weight(w);
    double old = weight_[id];
    if (old > 0.0 && w == 0.0) --positive_;
    if (old == 0.0 && w > 0.0) ++positive_;
    weight_[id] = w;
    double delta = w - old;
    for (std::size_t i = id; i <= cap_; i += i & (0 - i)) tree_[i] += delta;
}

double weight_index::get(node_id id) const {
    if (id == 0 || id > cap_)
        raise(errc::invalid_node_id, "weight index id " + std::to_string(id) + " out of range");
    return weight_[id];
}

node_id weight_index::find_by_prefix(double target) const {
    if (positive_ == 0) raise(errc::all_weights_zero, "no positive weight to sample");

    std::size_t pos = 0;
    std::size_t step = cap_ == 0 ? 0 : std::bit_floor(cap_);
    double rest = target;
    for (; step > 0; step >>= 1) {
        std::size_t next = pos + step;
        if (next <= cap_ && tree_[next] <= rest) {
            pos = next;
            rest -= tree_[next];
        }
    }
    std::size_t id = pos + 1;

    // Floating-point slack at the upper boundary (target >= total) or a
    // landing on a zero-weight slot is resolved toward the nearest positive
    // weight; positive_ > 0 guarantees one exists.
    if (id > cap_) id = cap_;
    while (id <= cap_ && weight_[id] <= 0.0) ++id;
    if (id > cap_) {
        id = cap_;
        while (id >= 1 && weight_[id] <= 0.0) --id;
    }
    return static_cast<node_id>(id);
}

} // namespace cagl
