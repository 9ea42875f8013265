#pragma once

#include <complex>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "cayspec/int128.hpp"

namespace cayspec {

// Element of a finite abelian group Z/n_1 x ... x Z/n_k, stored as one
// residue per factor, always reduced to [0, n_j).
struct Element {
    std::vector<std::uint32_t> residues;

    friend bool operator==(const Element& a, const Element& b) { return a.residues == b.residues; }
    friend bool operator!=(const Element& a, const Element& b) { return !(a == b); }
    // Lexicographic on residue vectors; this is also the enumeration order.
    friend bool operator<(const Element& a, const Element& b) { return a.residues < b.residues; }
};

// A character of the group, indexed by an element t of the (isomorphic)
// dual group: chi_t(g) = exp(2*pi*i * sum_j t_j g_j / n_j).
struct CharacterIndex {
    Element t;
};

// Immutable product-of-cyclic-groups descriptor.  Elements are enumerated
// lexicographically on their residue vectors; the resulting index in
// [0, order) is the public, stable vertex numbering used by bitsets and
// adjacency structures throughout the library.
class Group {
public:
    explicit Group(std::vector<std::uint32_t> moduli) : moduli_(std::move(moduli)) {
        if (moduli_.empty()) throw std::invalid_argument("Group: modulus list is empty");
        order_ = 1;
        for (std::uint32_t m : moduli_) {
            if (m == 0) throw std::invalid_argument("Group: modulus must be >= 1");
            order_ *= u64(m);
            if (order_ > (u64(1) << 32)) throw std::invalid_argument("Group: order too large");
        }
        strides_.assign(moduli_.size(), 1);
        for (std::size_t j = moduli_.size(); j-- > 1;)
            strides_[j - 1] = strides_[j] * moduli_[j];
        exponent_ = 1;
        for (std::uint32_t m : moduli_) exponent_ = std::lcm(exponent_, u64(m));
    }

    const std::vector<std::uint32_t>& moduli() const { return moduli_; }
    std::size_t factor_count() const { return moduli_.size(); }
    u64 order() const { return order_; }
    // lcm of the moduli; every character image order divides this.
    u64 exponent() const { return exponent_; }

    Element zero() const { return Element{std::vector<std::uint32_t>(moduli_.size(), 0)}; }

    // Builds an element from arbitrary integers, reducing each into range.
    Element element(const std::vector<i64>& coords) const {
        if (coords.size() != moduli_.size())
            throw std::invalid_argument("Group: coordinate count does not match modulus count");
        Element e;
        e.residues.resize(coords.size());
        for (std::size_t j = 0; j < coords.size(); ++j) {
            i64 m = moduli_[j];
            i64 r = coords[j] % m;
            if (r < 0) r += m;
            e.residues[j] = std::uint32_t(r);
        }
        return e;
    }

    bool contains(const Element& a) const {
        if (a.residues.size() != moduli_.size()) return false;
        for (std::size_t j = 0; j < moduli_.size(); ++j)
            if (a.residues[j] >= moduli_[j]) return false;
        return true;
    }

    void require_member(const Element& a) const {
        if (!contains(a)) throw std::invalid_argument("Group: element does not belong to this group");
    }

    Element add(const Element& a, const Element& b) const {
        require_member(a);
        require_member(b);
        Element r;
        r.residues.resize(moduli_.size());
        for (std::size_t j = 0; j < moduli_.size(); ++j) {
            std::uint32_t s = a.residues[j] + b.residues[j];
            if (s >= moduli_[j]) s -= moduli_[j];
            r.residues[j] = s;
        }
        return r;
    }

    Element negate(const Element& a) const {
        require_member(a);
        Element r;
        r.residues.resize(moduli_.size());
        for (std::size_t j = 0; j < moduli_.size(); ++j)
            r.residues[j] = a.residues[j] == 0 ? 0 : moduli_[j] - a.residues[j];
        return r;
    }

    Element sub(const Element& a, const Element& b) const { return add(a, negate(b)); }

    u64 index_of(const Element& a) const {
        require_member(a);
        u64 idx = 0;
        for (std::size_t j = 0; j < moduli_.size(); ++j) idx += strides_[j] * a.residues[j];
        return idx;
    }

    Element element_at(u64 index) const {
        if (index >= order_) throw std::invalid_argument("Group: element index out of range");
        Element e;
        e.residues.resize(moduli_.size());
        for (std::size_t j = 0; j < moduli_.size(); ++j) {
            e.residues[j] = std::uint32_t(index / strides_[j]);
            index %= strides_[j];
        }
        return e;
    }

    bool is_trivial(const CharacterIndex& t) const {
        require_member(t.t);
        for (std::uint32_t r : t.t.residues)
            if (r != 0) return false;
        return true;
    }

    // chi_t(g) = exp(2*pi*i * sum_j t_j g_j / n_j); unit modulus by
    // construction, multiplicative up to floating error.
    std::complex<double> character_value(const CharacterIndex& t, const Element& g) const {
        require_member(t.t);
        require_member(g);
        double turns = 0.0;  // angle in units of full revolutions
        for (std::size_t j = 0; j < moduli_.size(); ++j) {
            u64 prod = u64(t.t.residues[j]) * g.residues[j] % moduli_[j];
            turns += double(prod) / double(moduli_[j]);
        }
        const double two_pi = 6.283185307179586476925286766559;
        return {std::cos(two_pi * turns), std::sin(two_pi * turns)};
    }

    // m = |image of chi_t| = lcm_j n_j / gcd(t_j, n_j); 1 exactly for the
    // trivial character.
    u64 character_image_order(const CharacterIndex& t) const {
        require_member(t.t);
        u64 m = 1;
        for (std::size_t j = 0; j < moduli_.size(); ++j)
            m = std::lcm(m, u64(moduli_[j]) / std::gcd(u64(t.t.residues[j]), u64(moduli_[j])));
        return m;
    }

    // rho(g) = sum_j (m t_j / n_j) g_j  mod m, in exact integer arithmetic;
    // satisfies chi_t(g) = exp(2*pi*i * rho(g) / m) and is a surjective
    // homomorphism onto Z/mZ.  Undefined (and rejected) for trivial t.
    u64 rho(const CharacterIndex& t, const Element& g) const {
        RhoMap map = rho_map(t);
        require_member(g);
        return map(g);
    }

    // Precomputed rho for repeated evaluation over one character.
    struct RhoMap {
        u64 m = 1;
        std::vector<u64> weights;  // m * t_j / n_j, each an exact integer

        u64 operator()(const Element& g) const {
            u64 acc = 0;
            for (std::size_t j = 0; j < weights.size(); ++j)
                acc = (acc + weights[j] * g.residues[j] % m) % m;
            return acc;
        }
    };

    RhoMap rho_map(const CharacterIndex& t) const {
        if (is_trivial(t))
            throw std::invalid_argument("Group: rho is undefined for the trivial character");
        RhoMap map;
        map.m = character_image_order(t);
        map.weights.resize(moduli_.size());
        for (std::size_t j = 0; j < moduli_.size(); ++j) {
            // m * t_j is divisible by n_j because the order of t_j in
            // Z/n_j divides m.
            u64 prod = map.m * u64(t.t.residues[j]);
            map.weights[j] = prod / moduli_[j] % map.m;
        }
        return map;
    }

private:
    std::vector<std::uint32_t> moduli_;
    std::vector<u64> strides_;
    u64 order_;
    u64 exponent_;
};

inline Group make_group(const std::vector<std::uint32_t>& moduli) { return Group(moduli); }

}  // namespace cayspec
