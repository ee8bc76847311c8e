// Sorted vector of distinct vertex indices.  Everything downstream (class
// families, tiles, tuples) leans on the sortedness invariant.
#pragma once

#include <algorithm>
#include <initializer_list>
#include <string>
#include <vector>

#include "equitile/errors.hpp"

namespace equitile {

class VertexSet {
public:
    VertexSet() = default;
    VertexSet(std::initializer_list<int> xs) : v_(xs) { normalize(); }
    explicit VertexSet(std::vector<int> xs) : v_(std::move(xs)) { normalize(); }

    static VertexSet range(int lo, int hi) {  // [lo, hi)
        std::vector<int> xs;
        xs.reserve(static_cast<std::size_t>(hi > lo ? hi - lo : 0));
        for (int i = lo; i < hi; ++i) xs.push_back(i);
        return VertexSet(std::move(xs));
    }

    bool contains(int x) const { return std::binary_search(v_.begin(), v_.end(), x); }
    int size() const { return static_cast<int>(v_.size()); }
    bool empty() const { return v_.empty(); }

    void insert(int x) {
        auto it = std::lower_bound(v_.begin(), v_.end(), x);
        if (it == v_.end() || *it != x) v_.insert(it, x);
    }

    void erase(int x) {
        auto it = std::lower_bound(v_.begin(), v_.end(), x);
        if (it != v_.end() && *it == x) v_.erase(it);
    }

    VertexSet with(int x) const {
        VertexSet r = *this;
        r.insert(x);
        return r;
    }

    VertexSet without(int x) const {
        VertexSet r = *this;
        r.erase(x);
        return r;
    }

    VertexSet unite(const VertexSet& other) const {
        std::vector<int> out;
        out.reserve(v_.size() + other.v_.size());
        std::set_union(v_.begin(), v_.end(), other.v_.begin(), other.v_.end(),
                       std::back_inserter(out));
        return VertexSet(std::move(out));
    }

    VertexSet minus(const VertexSet& other) const {
        std::vector<int> out;
        std::set_difference(v_.begin(), v_.end(), other.v_.begin(), other.v_.end(),
                            std::back_inserter(out));
        return VertexSet(std::move(out));
    }

    bool intersects(const VertexSet& other) const {
        auto a = v_.begin();
        auto b = other.v_.begin();
        while (a != v_.end() && b != other.v_.end()) {
            if (*a < *b) ++a;
            else if (*b < *a) ++b;
            else return true;
        }
        return false;
    }

    const std::vector<int>& items() const { return v_; }
    int operator[](std::size_t i) const { return v_[i]; }
    auto begin() const { return v_.begin(); }
    auto end() const { return v_.end(); }
    bool operator==(const VertexSet& o) const = default;

    std::string to_string() const {
        std::string s = "{";
        for (std::size_t i = 0; i < v_.size(); ++i) {
            if (i) s += ',';
            s += std::to_string(v_[i]);
        }
        return s + "}";
    }

private:
    void normalize() {
        std::sort(v_.begin(), v_.end());
        auto dup = std::adjacent_find(v_.begin(), v_.end());
        if (dup != v_.end())
            throw precondition_error("vertex set has duplicate entry " + std::to_string(*dup));
    }

    std::vector<int> v_;
};

}  // namespace equitile
