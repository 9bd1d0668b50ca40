#pragma once

// Arithmetic for the module M = Z_m^r over the scalar ring Z_m, plus
// sequence primitives (translate, scale, canonical form).
//
// Elements are stored as encoded indices in [0, m^r); the encoding puts
// the first coordinate in the most significant position, so the numeric
// order on indices coincides with lexicographic order on coordinate
// vectors. This order is fixed: certificates reference canonical forms.

#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace wzs {

using Elem = int;    // encoded element index in [0, |M|)
using Scalar = int;  // residue in [0, m)
using Sequence = std::vector<Elem>;

struct NonUnitScalar : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct BadModuleSpec : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

class ModuleSpec {
public:
    ModuleSpec(int modulus, int rank) : m_(modulus), r_(rank) {
        if (modulus < 2) throw BadModuleSpec("modulus must be >= 2");
        if (rank < 1) throw BadModuleSpec("rank must be >= 1");
        std::int64_t card = 1;
        for (int i = 0; i < rank; ++i) {
            card *= modulus;
            if (card > (std::int64_t{1} << 30))
                throw BadModuleSpec("cardinality m^r too large");
        }
        card_ = card;
    }

    int modulus() const { return m_; }
    int rank() const { return r_; }
    std::int64_t cardinality() const { return card_; }

    std::vector<int> coords_of(Elem e) const {
        std::vector<int> c(static_cast<std::size_t>(r_));
        for (int i = r_ - 1; i >= 0; --i) {
            c[static_cast<std::size_t>(i)] = e % m_;
            e /= m_;
        }
        return c;
    }

    Elem elem_of(std::span<const int> coords) const {
        if (static_cast<int>(coords.size()) != r_)
            throw BadModuleSpec("coordinate count does not match rank");
        Elem e = 0;
        for (int c : coords) {
            int red = c % m_;
            if (red < 0) red += m_;
            e = e * m_ + red;
        }
        return e;
    }

    Elem add(Elem a, Elem b) const {
        Elem out = 0, p = 1;
        // componentwise mod-m addition on the mixed-radix encoding
        for (int i = 0; i < r_; ++i) {
            int ca = a % m_, cb = b % m_;
            out += ((ca + cb) % m_) * p;
            a /= m_; b /= m_; p *= m_;
        }
        return out;
    }

    Elem neg(Elem a) const {
        Elem out = 0, p = 1;
        for (int i = 0; i < r_; ++i) {
            int ca = a % m_;
            out += ((m_ - ca) % m_) * p;
            a /= m_; p *= m_;
        }
        return out;
    }

    Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }

    Elem scale_elem(Scalar u, Elem a) const {
        Elem out = 0, p = 1;
        for (int i = 0; i < r_; ++i) {
            int ca = a % m_;
            out += ((ca * u) % m_) * p;
            a /= m_; p *= m_;
        }
        return out;
    }

    Scalar reduce(long long v) const {
        long long red = v % m_;
        if (red < 0) red += m_;
        return static_cast<Scalar>(red);
    }

    Scalar mul(Scalar a, Scalar b) const { return (a * b) % m_; }
    Scalar add_scalar(Scalar a, Scalar b) const { return (a + b) % m_; }

    bool is_unit(Scalar u) const { return std::gcd(u, m_) == 1; }

    std::vector<Scalar> units() const {
        std::vector<Scalar> us;
        for (int u = 1; u < m_; ++u)
            if (is_unit(u)) us.push_back(u);
        return us;
    }

    Scalar unit_inverse(Scalar u) const {
        if (!is_unit(u)) throw NonUnitScalar("no inverse: gcd(u,m) != 1");
        for (int v = 1; v < m_; ++v)
            if ((u * v) % m_ == 1) return v;
        throw NonUnitScalar("no inverse found");  // unreachable
    }

    bool operator==(const ModuleSpec&) const = default;

private:
    int m_, r_;
    std::int64_t card_;
};

inline Sequence translate(const ModuleSpec& mod, const Sequence& s, Elem x) {
    Sequence out(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) out[i] = mod.add(s[i], x);
    return out;
}

inline Sequence scale(const ModuleSpec& mod, const Sequence& s, Scalar u) {
    if (!mod.is_unit(u)) throw NonUnitScalar("scale requires a unit scalar");
    Sequence out(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) out[i] = mod.scale_elem(u, s[i]);
    return out;
}

inline std::string to_string(const ModuleSpec& mod, const Sequence& s) {
    std::string out = "(";
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (i) out += ",";
        auto c = mod.coords_of(s[i]);
        if (mod.rank() == 1) {
            out += std::to_string(c[0]);
        } else {
            for (std::size_t j = 0; j < c.size(); ++j) {
                if (j) out += ":";
                out += std::to_string(c[j]);
            }
        }
    }
    out += ")";
    return out;
}

}  // namespace wzs
