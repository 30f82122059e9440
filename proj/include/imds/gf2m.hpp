#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace imds {

// An element of GF(2^m), stored as the bit pattern of a polynomial of
// degree < m over GF(2). Only values below 2^m are valid for a given field.
using Elem = std::uint16_t;

// True iff `poly` (interpreted as a polynomial over GF(2), bit i = coeff of
// x^i) is irreducible. Requires deg(poly) == degree, 1 <= degree <= 16.
// Checks divisibility by every polynomial of degree 1..degree/2.
bool is_irreducible(std::uint32_t poly, int degree);

// Canonical reduction polynomial for GF(2^m), 1 <= m <= 16. Low-weight
// irreducible of exact degree m; e.g. m=3 -> 0xB (x^3+x+1), m=8 -> 0x11B.
std::uint32_t default_poly(int degree);

// Remainder of polynomial division over GF(2).
std::uint32_t poly_mod(std::uint32_t a, std::uint32_t b);

// Arithmetic context for GF(2^m) with a fixed reduction polynomial.
// For m <= 8 construction builds log/antilog and inverse tables; larger
// fields always go through the carry-less multiply path.
class Field {
public:
    static constexpr int max_degree = 16;

    // Throws std::invalid_argument unless 1 <= degree <= 16, deg(poly) ==
    // degree and poly is irreducible.
    Field(int degree, std::uint32_t poly);

    int degree() const { return m_; }
    std::uint32_t poly() const { return poly_; }
    std::uint32_t order() const { return 1u << m_; }
    bool valid(Elem a) const { return a < order(); }

    static Elem add(Elem a, Elem b) { return a ^ b; }

    // Table lookup for m <= 8, otherwise mul_notable.
    Elem mul(Elem a, Elem b) const {
        if (tabled_) {
            if (a == 0 || b == 0)
                return 0;
            return exp_[log_[a] + log_[b]];
        }
        return mul_notable(a, b);
    }

    // Carry-less multiply then reduction; independent of the tables.
    Elem mul_notable(Elem a, Elem b) const;

    // Multiplicative inverse; throws std::domain_error on 0.
    Elem inv(Elem a) const;
    Elem inv_by_euclid(Elem a) const;   // extended Euclid on polynomials
    Elem inv_by_pow(Elem a) const;      // a^(2^m - 2)

    // Square-and-multiply. pow(a, 0) == 1 for every a, including 0.
    Elem pow(Elem a, std::uint64_t e) const;

    bool operator==(const Field& o) const {
        return m_ == o.m_ && poly_ == o.poly_;
    }

private:
    int m_;
    std::uint32_t poly_;
    bool tabled_ = false;
    std::vector<Elem> exp_;          // exp_[i] = g^i, doubled to skip the mod
    std::vector<std::uint16_t> log_; // log_[a] for a >= 1
    std::vector<Elem> inv_;

    void build_tables();
};

using FieldPtr = std::shared_ptr<const Field>;

FieldPtr make_field(int degree);                      // default polynomial
FieldPtr make_field(int degree, std::uint32_t poly);

// "GF(2^3)/0xB" -- used in reports and log lines.
std::string field_name(const Field& f);

} // namespace imds
