#include "ainf/field.hpp"

#include <cctype>
#include <limits>
#include <ostream>
#include <sstream>

namespace ainf {

namespace {

using i128 = __int128;
using u128 = unsigned __int128;

u128 gcd128(u128 a, u128 b) {
    while (b != 0) {
        u128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

u128 abs128(i128 v) { return v < 0 ? static_cast<u128>(-v) : static_cast<u128>(v); }

bool fits64(i128 v) {
    return v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max();
}

mpq_class to_mpq128(i128 num, i128 den) {
    // Split through strings only when the values leave 64 bits; rare.
    auto conv = [](i128 v) {
        bool neg = v < 0;
        u128 u = abs128(v);
        std::string digits;
        if (u == 0) digits = "0";
        while (u != 0) {
            digits.push_back(static_cast<char>('0' + static_cast<int>(u % 10)));
            u /= 10;
        }
        if (neg) digits.push_back('-');
        return mpz_class(std::string(digits.rbegin(), digits.rend()), 10);
    };
    mpq_class q(conv(num), conv(den));
    q.canonicalize();
    return q;
}

std::uint32_t mod_inverse(std::uint32_t a, std::uint32_t p) {
    std::int64_t t = 0, nt = 1, r = p, nr = a;
    while (nr != 0) {
        std::int64_t q = r / nr;
        std::int64_t tmp = t - q * nt;
        t = nt;
        nt = tmp;
        tmp = r - q * nr;
        r = nr;
        nr = tmp;
    }
    if (r != 1) throw std::domain_error("element not invertible mod " + std::to_string(p));
    if (t < 0) t += p;
    return static_cast<std::uint32_t>(t);
}

std::uint32_t reduce_mod(const mpz_class& z, std::uint32_t p) {
    mpz_class r;
    mpz_fdiv_r_ui(r.get_mpz_t(), z.get_mpz_t(), p);
    return static_cast<std::uint32_t>(r.get_ui());
}

}  // namespace

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

Field Field::gf(std::uint32_t p) {
    if (!is_prime(p)) throw std::invalid_argument("GF(p) needs a prime p, got " + std::to_string(p));
    return Field(p);
}

Field Field::parse(std::string_view text) {
    std::string t;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) t.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
    if (t == "Q" || t == "QQ") return rationals();
    if (t.rfind("GF", 0) == 0) {
        std::string rest = t.substr(2);
        if (!rest.empty() && (rest.front() == '(' || rest.front() == ':')) rest.erase(rest.begin());
        if (!rest.empty() && rest.back() == ')') rest.pop_back();
        if (rest.empty() || rest.find_first_not_of("0123456789") != std::string::npos)
            throw std::invalid_argument("bad field: " + std::string(text));
        return gf(static_cast<std::uint32_t>(std::stoul(rest)));
    }
    throw std::invalid_argument("bad field: " + std::string(text));
}

std::string Field::name() const { return p_ == 0 ? "Q" : "GF(" + std::to_string(p_) + ")"; }

Scalar Field::zero() const { return p_ == 0 ? Scalar() : Scalar::residue(0, p_); }
Scalar Field::one() const { return from_int(1); }
Scalar Field::from_int(long long v) const { return p_ == 0 ? Scalar(v) : Scalar::residue(v, p_); }

Scalar Field::coerce(const Scalar& s) const {
    if (s.characteristic() == p_) return s;
    if (s.characteristic() != 0) throw FieldMismatch("cannot move a GF element into " + name());
    return s.mod(p_);
}

Scalar Field::parse_scalar(std::string_view text) const {
    std::string t;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) t.push_back(c);
    if (t.empty()) throw std::invalid_argument("empty scalar");
    mpq_class q;
    auto dot = t.find('.');
    auto slash = t.find('/');
    try {
        if (dot != std::string::npos) {
            if (slash != std::string::npos) throw std::invalid_argument("mixed decimal/fraction");
            bool neg = t[0] == '-';
            std::string body = (t[0] == '-' || t[0] == '+') ? t.substr(1) : t;
            dot = body.find('.');
            std::string ip = body.substr(0, dot), fp = body.substr(dot + 1);
            if ((ip + fp).empty() || (ip + fp).find_first_not_of("0123456789") != std::string::npos)
                throw std::invalid_argument("bad decimal");
            mpz_class num(ip + fp, 10);
            mpz_class den;
            mpz_ui_pow_ui(den.get_mpz_t(), 10, fp.size());
            q = mpq_class(num, den);
            q.canonicalize();
            if (neg) q = -q;
        } else {
            if (t[0] == '+') t.erase(t.begin());
            if (q.set_str(t, 10) != 0) throw std::invalid_argument("bad number");
            if (slash != std::string::npos && mpz_sgn(q.get_den_mpz_t()) == 0)
                throw std::invalid_argument("zero denominator");
            q.canonicalize();
        }
    } catch (const std::invalid_argument&) {
        throw std::invalid_argument("cannot parse scalar '" + std::string(text) + "'");
    }
    return coerce(Scalar::rational(q));
}

Scalar::Scalar(const Scalar& o) : p_(o.p_), n_(o.n_), d_(o.d_) {
    if (o.big_) big_ = std::make_unique<mpq_class>(*o.big_);
}

Scalar& Scalar::operator=(const Scalar& o) {
    if (this == &o) return *this;
    p_ = o.p_;
    n_ = o.n_;
    d_ = o.d_;
    big_ = o.big_ ? std::make_unique<mpq_class>(*o.big_) : nullptr;
    return *this;
}

Scalar Scalar::rational(const mpq_class& q) {
    Scalar s;
    s.set_big(q);
    return s;
}

Scalar Scalar::rational(long long num, long long den) {
    if (den == 0) throw std::domain_error("zero denominator");
    mpq_class q(mpz_class(static_cast<long>(num)), mpz_class(static_cast<long>(den)));
    q.canonicalize();
    return rational(q);
}

Scalar Scalar::residue(long long v, std::uint32_t p) {
    Scalar s;
    s.p_ = p;
    long long r = v % static_cast<long long>(p);
    if (r < 0) r += p;
    s.n_ = r;
    return s;
}

void Scalar::set_big(mpq_class q) {
    p_ = 0;
    if (q.get_num().fits_slong_p() && q.get_den().fits_slong_p()) {
        n_ = q.get_num().get_si();
        d_ = q.get_den().get_si();
        big_.reset();
    } else {
        n_ = 1;
        d_ = 1;
        big_ = std::make_unique<mpq_class>(std::move(q));
    }
}

void Scalar::normalize_big() {
    if (big_) set_big(*big_);
}

bool Scalar::is_integer() const {
    if (p_ != 0) return true;
    if (big_) return big_->get_den() == 1;
    return d_ == 1;
}

Scalar Scalar::mod(std::uint32_t p) const {
    if (p_ == p) return *this;
    if (p_ != 0) throw FieldMismatch("cannot move between GF(" + std::to_string(p_) + ") and GF(" + std::to_string(p) + ")");
    if (p == 0) return *this;
    std::uint32_t num, den;
    if (big_) {
        num = reduce_mod(big_->get_num(), p);
        den = reduce_mod(big_->get_den(), p);
    } else {
        long long r = n_ % static_cast<long long>(p);
        if (r < 0) r += p;
        num = static_cast<std::uint32_t>(r);
        den = static_cast<std::uint32_t>(d_ % p);
    }
    if (den == 0) throw std::domain_error("denominator vanishes mod " + std::to_string(p));
    return residue(static_cast<long long>((static_cast<std::uint64_t>(num) * mod_inverse(den, p)) % p), p);
}

mpq_class Scalar::to_mpq() const {
    if (p_ != 0) throw FieldMismatch("not a rational");
    if (big_) return *big_;
    return mpq_class(mpz_class(static_cast<long>(n_)), mpz_class(static_cast<long>(d_)));
}

const Scalar& Scalar::aligned(const Scalar& o, Scalar& tmp) {
    if (p_ == o.p_) return o;
    if (p_ == 0) {
        *this = mod(o.p_);
        return o;
    }
    tmp = o.mod(p_);
    return tmp;
}

Scalar Scalar::operator-() const {
    Scalar r(*this);
    if (p_ != 0) {
        if (r.n_ != 0) r.n_ = p_ - r.n_;
    } else if (big_) {
        *r.big_ = -*r.big_;
    } else if (n_ == std::numeric_limits<std::int64_t>::min()) {
        r.set_big(-to_mpq());
    } else {
        r.n_ = -n_;
    }
    return r;
}

Scalar& Scalar::operator+=(const Scalar& o_in) {
    Scalar tmp;
    const Scalar& o = aligned(o_in, tmp);
    if (p_ != 0) {
        n_ = static_cast<std::int64_t>((static_cast<std::uint64_t>(n_) + static_cast<std::uint64_t>(o.n_)) % p_);
        return *this;
    }
    if (big_ || o.big_) {
        set_big(to_mpq() + o.to_mpq());
        return *this;
    }
    if (d_ == 1 && o.d_ == 1) {
        i128 s = static_cast<i128>(n_) + o.n_;
        if (fits64(s)) {
            n_ = static_cast<std::int64_t>(s);
            return *this;
        }
    }
    i128 num = static_cast<i128>(n_) * o.d_ + static_cast<i128>(o.n_) * d_;
    i128 den = static_cast<i128>(d_) * o.d_;
    u128 g = gcd128(abs128(num), static_cast<u128>(den));
    if (g > 1) {
        num /= static_cast<i128>(g);
        den /= static_cast<i128>(g);
    }
    if (num == 0) den = 1;
    if (fits64(num) && fits64(den)) {
        n_ = static_cast<std::int64_t>(num);
        d_ = static_cast<std::int64_t>(den);
    } else {
        set_big(to_mpq128(num, den));
    }
    return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) { return *this += -o; }

Scalar& Scalar::operator*=(const Scalar& o_in) {
    Scalar tmp;
    const Scalar& o = aligned(o_in, tmp);
    if (p_ != 0) {
        n_ = static_cast<std::int64_t>((static_cast<std::uint64_t>(n_) * static_cast<std::uint64_t>(o.n_)) % p_);
        return *this;
    }
    if (big_ || o.big_) {
        set_big(to_mpq() * o.to_mpq());
        return *this;
    }
    if (d_ == 1 && o.d_ == 1) {
        i128 prod = static_cast<i128>(n_) * o.n_;
        if (fits64(prod)) {
            n_ = static_cast<std::int64_t>(prod);
            return *this;
        }
        set_big(to_mpq128(prod, 1));
        return *this;
    }
    i128 num = static_cast<i128>(n_) * o.n_;
    i128 den = static_cast<i128>(d_) * o.d_;
    u128 g = gcd128(abs128(num), static_cast<u128>(den));
    if (g > 1) {
        num /= static_cast<i128>(g);
        den /= static_cast<i128>(g);
    }
    if (num == 0) den = 1;
    if (fits64(num) && fits64(den)) {
        n_ = static_cast<std::int64_t>(num);
        d_ = static_cast<std::int64_t>(den);
    } else {
        set_big(to_mpq128(num, den));
    }
    return *this;
}

Scalar Scalar::inverse() const {
    if (is_zero()) throw std::domain_error("division by zero");
    if (p_ != 0) return residue(mod_inverse(static_cast<std::uint32_t>(n_), p_), p_);
    if (big_) return rational(1 / *big_);
    Scalar r;
    if (n_ == std::numeric_limits<std::int64_t>::min()) return rational(1 / to_mpq());
    r.n_ = n_ < 0 ? -d_ : d_;
    r.d_ = n_ < 0 ? -n_ : n_;
    return r;
}

Scalar& Scalar::operator/=(const Scalar& o_in) {
    Scalar tmp;
    const Scalar& o = aligned(o_in, tmp);
    return *this *= o.inverse();
}

bool operator==(const Scalar& a, const Scalar& b) {
    if (a.p_ != b.p_) {
        if (a.p_ != 0 && b.p_ != 0) return false;
        return a.p_ == 0 ? a.mod(b.p_) == b : a == b.mod(a.p_);
    }
    if (a.p_ != 0) return a.n_ == b.n_;
    if (a.big_ || b.big_) return a.to_mpq() == b.to_mpq();
    return a.n_ == b.n_ && a.d_ == b.d_;
}

std::string Scalar::str() const {
    if (p_ != 0) return std::to_string(n_);
    if (big_) return big_->get_str();
    if (d_ == 1) return std::to_string(n_);
    return std::to_string(n_) + "/" + std::to_string(d_);
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.str(); }
std::ostream& operator<<(std::ostream& os, const Field& f) { return os << f.name(); }

}  // namespace ainf
