#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace ainf {

class Scalar;

// Coefficient field: the rationals (characteristic 0) or GF(p).
class Field {
public:
    Field() = default;

    static Field rationals() { return Field(); }
    static Field gf(std::uint32_t p);
    // Accepts "Q", "GF(p)", "GF:p" and "GF p".
    static Field parse(std::string_view text);

    bool is_rational() const { return p_ == 0; }
    std::uint32_t characteristic() const { return p_; }
    std::string name() const;

    Scalar zero() const;
    Scalar one() const;
    Scalar from_int(long long v) const;
    Scalar coerce(const Scalar& s) const;
    // Integers, fractions "a/b" and exact decimals such as "-0.125".
    Scalar parse_scalar(std::string_view text) const;

    friend bool operator==(const Field& a, const Field& b) { return a.p_ == b.p_; }
    friend bool operator!=(const Field& a, const Field& b) { return a.p_ != b.p_; }

private:
    explicit Field(std::uint32_t p) : p_(p) {}
    std::uint32_t p_ = 0;
};

bool is_prime(std::uint64_t n);

class FieldMismatch : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// An exact field element. Rationals keep an int64 numerator/denominator and
// spill to GMP on overflow; GF(p) elements are residues in [0, p).
// A rational operand meets a GF(p) operand by reduction mod p.
class Scalar {
public:
    Scalar() = default;
    Scalar(long long v) : n_(v) {}  // NOLINT: implicit integer constants are convenient
    Scalar(int v) : n_(v) {}        // NOLINT

    static Scalar rational(const mpq_class& q);
    static Scalar rational(long long num, long long den);
    static Scalar residue(long long v, std::uint32_t p);

    std::uint32_t characteristic() const { return p_; }
    bool is_zero() const { return big_ ? false : n_ == 0; }
    bool is_one() const { return !big_ && n_ == 1 && (p_ != 0 || d_ == 1); }
    bool is_integer() const;

    Scalar inverse() const;
    Scalar operator-() const;

    Scalar& operator+=(const Scalar& o);
    Scalar& operator-=(const Scalar& o);
    Scalar& operator*=(const Scalar& o);
    Scalar& operator/=(const Scalar& o);

    friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
    friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
    friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
    friend bool operator==(const Scalar& a, const Scalar& b);
    friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

    // Reduces a rational into GF(p); throws if the denominator is divisible by p.
    Scalar mod(std::uint32_t p) const;
    mpq_class to_mpq() const;  // rationals only
    std::uint32_t residue_value() const { return static_cast<std::uint32_t>(n_); }
    std::string str() const;

    Scalar(const Scalar& o);
    Scalar(Scalar&& o) noexcept = default;
    Scalar& operator=(const Scalar& o);
    Scalar& operator=(Scalar&& o) noexcept = default;
    ~Scalar() = default;

private:
    // Brings o into this element's field; returns a converted copy when needed.
    const Scalar& aligned(const Scalar& o, Scalar& tmp);
    void normalize_big();
    void set_big(mpq_class q);

    std::uint32_t p_ = 0;
    std::int64_t n_ = 0;
    std::int64_t d_ = 1;
    std::unique_ptr<mpq_class> big_;
};

std::ostream& operator<<(std::ostream& os, const Scalar& s);
std::ostream& operator<<(std::ostream& os, const Field& f);

}  // namespace ainf
