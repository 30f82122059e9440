#include "imds/gf2m.hpp"

#include <bit>
#include <cstdio>
#include <stdexcept>

namespace imds {

static int poly_degree(std::uint32_t p) {
    return std::bit_width(p) - 1; // -1 for p == 0
}

std::uint32_t poly_mod(std::uint32_t a, std::uint32_t b) {
    if (b == 0)
        throw std::invalid_argument("poly_mod: division by zero polynomial");
    int db = poly_degree(b);
    while (poly_degree(a) >= db)
        a ^= b << (poly_degree(a) - db);
    return a;
}

bool is_irreducible(std::uint32_t poly, int degree) {
    if (degree < 1 || degree > Field::max_degree)
        throw std::invalid_argument("is_irreducible: degree out of range 1..16");
    if (poly_degree(poly) != degree)
        throw std::invalid_argument("is_irreducible: poly degree mismatch");
    // Trial division by every polynomial of degree 1..degree/2. A reducible
    // polynomial has a factor in that range; degree 1..3 have none to try
    // except x and x+1 etc., and the loop handles them uniformly.
    for (int d = 1; d <= degree / 2; ++d) {
        for (std::uint32_t f = 1u << d; f < (2u << d); ++f) {
            if (poly_mod(poly, f) == 0)
                return false;
        }
    }
    return true;
}

std::uint32_t default_poly(int degree) {
    // m <= 8 are the classical choices (0x11B is the AES polynomial);
    // the rest are the usual lowest-weight irreducibles.
    static const std::uint32_t table[17] = {
        0,
        0x2,     // x
        0x7,     // x^2+x+1
        0xB,     // x^3+x+1
        0x13,    // x^4+x+1
        0x25,    // x^5+x^2+1
        0x43,    // x^6+x+1
        0x83,    // x^7+x+1
        0x11B,   // x^8+x^4+x^3+x+1
        0x203,   // x^9+x+1
        0x409,   // x^10+x^3+1
        0x805,   // x^11+x^2+1
        0x1009,  // x^12+x^3+1
        0x201B,  // x^13+x^4+x^3+x+1
        0x4021,  // x^14+x^5+1
        0x8003,  // x^15+x+1
        0x1002B, // x^16+x^5+x^3+x+1
    };
    if (degree < 1 || degree > Field::max_degree)
        throw std::invalid_argument("default_poly: degree out of range 1..16");
    return table[degree];
}

Field::Field(int degree, std::uint32_t poly) : m_(degree), poly_(poly) {
    if (degree < 1 || degree > max_degree)
        throw std::invalid_argument("Field: degree out of range 1..16");
    if (poly_degree(poly) != degree)
        throw std::invalid_argument("Field: reduction poly degree != field degree");
    if (!is_irreducible(poly, degree))
        throw std::invalid_argument("Field: reduction polynomial is reducible");
    if (m_ <= 8)
        build_tables();
}

Elem Field::mul_notable(Elem a, Elem b) const {
    std::uint32_t acc = 0;
    std::uint32_t x = a;
    for (std::uint32_t y = b; y; y >>= 1) {
        if (y & 1)
            acc ^= x;
        x <<= 1;
    }
    for (int bit = 2 * m_ - 2; bit >= m_; --bit) {
        if (acc >> bit & 1)
            acc ^= poly_ << (bit - m_);
    }
    return static_cast<Elem>(acc);
}

void Field::build_tables() {
    const std::uint32_t n = order() - 1; // group order
    // Find a generator of the multiplicative group by direct trial.
    for (std::uint32_t g = 2; g <= n; ++g) {
        std::vector<Elem> exp(n, 0);
        Elem v = 1;
        std::uint32_t i = 0;
        for (; i < n; ++i) {
            exp[i] = v;
            v = mul_notable(v, static_cast<Elem>(g));
            if (v == 1) {
                ++i;
                break;
            }
        }
        if (i != n)
            continue; // order of g too small
        exp_.assign(2 * n, 0);
        log_.assign(order(), 0);
        inv_.assign(order(), 0);
        for (std::uint32_t j = 0; j < n; ++j) {
            exp_[j] = exp[j];
            exp_[j + n] = exp[j];
            log_[exp[j]] = static_cast<std::uint16_t>(j);
        }
        for (std::uint32_t a = 1; a < order(); ++a)
            inv_[a] = exp_[(n - log_[a]) % n];
        tabled_ = true;
        return;
    }
    // GF(2): the group is trivial, {1}.
    if (m_ == 1) {
        exp_.assign(2, 1);
        log_.assign(2, 0);
        inv_.assign(2, 0);
        inv_[1] = 1;
        tabled_ = true;
        return;
    }
    throw std::logic_error("Field: no generator found (unreachable for a field)");
}

Elem Field::inv_by_euclid(Elem a) const {
    if (a == 0)
        throw std::domain_error("inv: zero has no inverse");
    // Extended Euclid over GF(2)[x]: maintain r = s * a (mod poly).
    std::uint32_t r0 = poly_, r1 = a;
    std::uint32_t s0 = 0, s1 = 1;
    while (r1 != 0) {
        int shift = poly_degree(r0) - poly_degree(r1);
        if (shift < 0) {
            std::swap(r0, r1);
            std::swap(s0, s1);
            continue;
        }
        r0 ^= r1 << shift;
        s0 ^= s1 << shift;
    }
    // r0 is now the gcd, a nonzero constant (= 1) since poly is irreducible.
    return static_cast<Elem>(poly_mod(s0, poly_));
}

Elem Field::inv_by_pow(Elem a) const {
    if (a == 0)
        throw std::domain_error("inv: zero has no inverse");
    return pow(a, order() - 2);
}

Elem Field::inv(Elem a) const {
    if (a == 0)
        throw std::domain_error("inv: zero has no inverse");
    if (tabled_)
        return inv_[a];
    return inv_by_euclid(a);
}

Elem Field::pow(Elem a, std::uint64_t e) const {
    Elem result = 1;
    Elem base = a;
    while (e) {
        if (e & 1)
            result = mul(result, base);
        base = mul(base, base);
        e >>= 1;
    }
    return result;
}

FieldPtr make_field(int degree) {
    return std::make_shared<const Field>(degree, default_poly(degree));
}

FieldPtr make_field(int degree, std::uint32_t poly) {
    return std::make_shared<const Field>(degree, poly);
}

std::string field_name(const Field& f) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "GF(2^%d)/0x%X", f.degree(), f.poly());
    return buf;
}

} // namespace imds
