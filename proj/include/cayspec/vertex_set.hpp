#pragma once

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "cayspec/int128.hpp"

namespace cayspec {

// Subset of the vertices of a graph, stored as a bitset over the fixed
// enumeration order, with the cardinality kept alongside.
class VertexSet {
public:
    VertexSet() : n_(0), count_(0) {}
    explicit VertexSet(u64 universe)
        : n_(universe), count_(0), words_((universe + 63) / 64, 0) {}

    static VertexSet full(u64 universe) {
        VertexSet s(universe);
        for (u64 i = 0; i < universe; ++i) s.insert(i);
        return s;
    }

    static VertexSet of(u64 universe, const std::vector<u64>& members) {
        VertexSet s(universe);
        for (u64 v : members) s.insert(v);
        return s;
    }

    u64 universe() const { return n_; }
    u64 count() const { return count_; }
    bool empty() const { return count_ == 0; }

    bool contains(u64 v) const {
        return v < n_ && (words_[v >> 6] >> (v & 63)) & 1;
    }

    void insert(u64 v) {
        check_range(v);
        u64& w = words_[v >> 6];
        u64 bit = u64(1) << (v & 63);
        if (!(w & bit)) {
            w |= bit;
            ++count_;
        }
    }

    void erase(u64 v) {
        check_range(v);
        u64& w = words_[v >> 6];
        u64 bit = u64(1) << (v & 63);
        if (w & bit) {
            w &= ~bit;
            --count_;
        }
    }

    VertexSet operator&(const VertexSet& o) const { return combine(o, [](u64 a, u64 b) { return a & b; }); }
    VertexSet operator|(const VertexSet& o) const { return combine(o, [](u64 a, u64 b) { return a | b; }); }
    // Set difference (this minus o).
    VertexSet minus(const VertexSet& o) const { return combine(o, [](u64 a, u64 b) { return a & ~b; }); }

    VertexSet complement() const {
        VertexSet r(n_);
        for (std::size_t i = 0; i < words_.size(); ++i) r.words_[i] = ~words_[i];
        r.trim();
        r.recount();
        return r;
    }

    bool disjoint_with(const VertexSet& o) const {
        require_same_universe(o);
        for (std::size_t i = 0; i < words_.size(); ++i)
            if (words_[i] & o.words_[i]) return false;
        return true;
    }

    // |this & o| without materializing the intersection.
    u64 intersection_count(const VertexSet& o) const {
        require_same_universe(o);
        u64 c = 0;
        for (std::size_t i = 0; i < words_.size(); ++i)
            c += u64(std::popcount(words_[i] & o.words_[i]));
        return c;
    }

    friend bool operator==(const VertexSet& a, const VertexSet& b) {
        return a.n_ == b.n_ && a.words_ == b.words_;
    }
    friend bool operator!=(const VertexSet& a, const VertexSet& b) { return !(a == b); }

    template <class F>
    void for_each(F&& f) const {
        for (std::size_t i = 0; i < words_.size(); ++i) {
            u64 w = words_[i];
            while (w) {
                unsigned bit = unsigned(std::countr_zero(w));
                f(u64(i) * 64 + bit);
                w &= w - 1;
            }
        }
    }

    std::vector<u64> members() const {
        std::vector<u64> out;
        out.reserve(count_);
        for_each([&](u64 v) { out.push_back(v); });
        return out;
    }

    void require_same_universe(const VertexSet& o) const {
        if (n_ != o.n_) throw std::invalid_argument("VertexSet: universes differ");
    }

private:
    void check_range(u64 v) const {
        if (v >= n_) throw std::invalid_argument("VertexSet: vertex out of range");
    }

    template <class Op>
    VertexSet combine(const VertexSet& o, Op op) const {
        require_same_universe(o);
        VertexSet r(n_);
        for (std::size_t i = 0; i < words_.size(); ++i) r.words_[i] = op(words_[i], o.words_[i]);
        r.recount();
        return r;
    }

    void trim() {
        if (n_ & 63) words_.back() &= (u64(1) << (n_ & 63)) - 1;
    }

    void recount() {
        count_ = 0;
        for (u64 w : words_) count_ += u64(std::popcount(w));
    }

    u64 n_;
    u64 count_;
    std::vector<u64> words_;
};

}  // namespace cayspec
