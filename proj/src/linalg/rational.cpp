#include "chainlab/rational.hpp"

#include <limits>
#include <ostream>
#include <stdexcept>

namespace chainlab {

namespace {

using i128 = __int128;
using u128 = unsigned __int128;

u128 uabs(i128 v) { return v < 0 ? u128(-v) : u128(v); }

u128 gcd128(u128 a, u128 b)
{
    while (b) {
        u128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

bool fits64(i128 v)
{
    return v >= i128(std::numeric_limits<int64_t>::min() + 1) &&
           v <= i128(std::numeric_limits<int64_t>::max());
}

mpz_class to_mpz(i128 v)
{
    bool neg = v < 0;
    u128 u = uabs(v);
    mpz_class hi(static_cast<unsigned long>(uint64_t(u >> 64)));
    mpz_class lo(static_cast<unsigned long>(uint64_t(u)));
    mpz_class r = (hi << 64) + lo;
    return neg ? mpz_class(-r) : r;
}

} // namespace

Rational::Rational(long long n, long long d)
{
    if (d == 0)
        throw std::domain_error("Rational: zero denominator");
    i128 nn = n, dd = d;
    if (dd < 0) {
        nn = -nn;
        dd = -dd;
    }
    u128 g = gcd128(uabs(nn), u128(dd));
    if (g > 1) {
        nn /= i128(g);
        dd /= i128(g);
    }
    if (fits64(nn) && fits64(dd)) {
        num_ = int64_t(nn);
        den_ = int64_t(dd);
    } else {
        mpq_class q(to_mpz(nn), to_mpz(dd));
        q.canonicalize();
        set_big(std::move(q));
    }
}

Rational::Rational(const mpq_class& q)
{
    mpq_class c = q;
    c.canonicalize();
    set_big(std::move(c));
}

Rational::Rational(const Rational& o) : num_(o.num_), den_(o.den_)
{
    if (o.big_)
        big_ = std::make_unique<mpq_class>(*o.big_);
}

Rational& Rational::operator=(const Rational& o)
{
    if (this == &o)
        return *this;
    num_ = o.num_;
    den_ = o.den_;
    if (o.big_)
        big_ = std::make_unique<mpq_class>(*o.big_);
    else
        big_.reset();
    return *this;
}

void Rational::set_big(mpq_class q)
{
    big_ = std::make_unique<mpq_class>(std::move(q));
    normalize_big();
}

void Rational::normalize_big()
{
    if (!big_)
        return;
    const mpz_class& n = big_->get_num();
    const mpz_class& d = big_->get_den();
    if (n.fits_slong_p() && d.fits_slong_p()) {
        long nv = n.get_si();
        long dv = d.get_si();
        if (nv != std::numeric_limits<long>::min()) {
            num_ = nv;
            den_ = dv;
            big_.reset();
        }
    }
}

Rational Rational::parse(const std::string& text)
{
    mpq_class q;
    if (q.set_str(text, 10) != 0)
        throw std::invalid_argument("Rational: cannot parse '" + text + "'");
    if (q.get_den() == 0)
        throw std::domain_error("Rational: zero denominator");
    return Rational(q);
}

int Rational::sign() const
{
    if (big_)
        return sgn(*big_);
    return num_ > 0 ? 1 : (num_ < 0 ? -1 : 0);
}

mpq_class Rational::to_mpq() const
{
    if (big_)
        return *big_;
    return mpq_class(mpz_class(static_cast<long>(num_)), mpz_class(static_cast<long>(den_)));
}

std::string Rational::str() const
{
    if (big_)
        return big_->get_str();
    if (den_ == 1)
        return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
}

std::string Rational::num_str() const
{
    return big_ ? big_->get_num().get_str() : std::to_string(num_);
}

std::string Rational::den_str() const
{
    return big_ ? big_->get_den().get_str() : std::to_string(den_);
}

double Rational::to_double() const
{
    if (big_)
        return big_->get_d();
    return double(num_) / double(den_);
}

Rational Rational::operator-() const
{
    if (big_ || num_ == INT64_MIN)
        return Rational(mpq_class(-to_mpq()));
    Rational r;
    r.num_ = -num_;
    r.den_ = den_;
    return r;
}

Rational& Rational::operator+=(const Rational& o)
{
    if (!big_ && !o.big_) {
        if (den_ == 1 && o.den_ == 1) {
            i128 s = i128(num_) + o.num_;
            if (fits64(s)) {
                num_ = int64_t(s);
                return *this;
            }
        }
        i128 n = i128(num_) * o.den_ + i128(o.num_) * den_;
        i128 d = i128(den_) * o.den_;
        u128 g = gcd128(uabs(n), u128(d));
        if (g > 1) {
            n /= i128(g);
            d /= i128(g);
        }
        if (n == 0)
            d = 1;
        if (fits64(n) && fits64(d)) {
            num_ = int64_t(n);
            den_ = int64_t(d);
            return *this;
        }
        mpq_class q(to_mpz(n), to_mpz(d));
        set_big(std::move(q));
        return *this;
    }
    mpq_class q = to_mpq() + o.to_mpq();
    set_big(std::move(q));
    return *this;
}

Rational& Rational::operator-=(const Rational& o)
{
    return *this += -o;
}

Rational& Rational::operator*=(const Rational& o)
{
    if (!big_ && !o.big_) {
        if (num_ == 0 || o.num_ == 0) {
            num_ = 0;
            den_ = 1;
            return *this;
        }
        u128 g1 = gcd128(uabs(num_), u128(o.den_));
        u128 g2 = gcd128(uabs(o.num_), u128(den_));
        i128 n = (i128(num_) / i128(g1)) * (i128(o.num_) / i128(g2));
        i128 d = (i128(den_) / i128(g2)) * (i128(o.den_) / i128(g1));
        if (fits64(n) && fits64(d)) {
            num_ = int64_t(n);
            den_ = int64_t(d);
            return *this;
        }
        mpq_class q(to_mpz(n), to_mpz(d));
        set_big(std::move(q));
        return *this;
    }
    mpq_class q = to_mpq() * o.to_mpq();
    set_big(std::move(q));
    return *this;
}

Rational Rational::inverse() const
{
    if (is_zero())
        throw std::domain_error("Rational: inverse of zero");
    if (!big_ && num_ != INT64_MIN) {
        Rational r;
        r.num_ = num_ < 0 ? -den_ : den_;
        r.den_ = num_ < 0 ? -num_ : num_;
        return r;
    }
    mpq_class q = 1 / to_mpq();
    return Rational(q);
}

Rational& Rational::operator/=(const Rational& o)
{
    return *this *= o.inverse();
}

void Rational::add_mul(const Rational& b, const Rational& c)
{
    if (b.is_zero() || c.is_zero())
        return;
    if (!big_ && !b.big_ && !c.big_ && den_ == 1 && b.den_ == 1 && c.den_ == 1) {
        i128 s = i128(num_) + i128(b.num_) * c.num_;
        if (fits64(s)) {
            num_ = int64_t(s);
            return;
        }
    }
    Rational t = b;
    t *= c;
    *this += t;
}

bool operator==(const Rational& a, const Rational& b)
{
    if (!a.big_ && !b.big_)
        return a.num_ == b.num_ && a.den_ == b.den_;
    return a.to_mpq() == b.to_mpq();
}

bool operator<(const Rational& a, const Rational& b)
{
    if (!a.big_ && !b.big_)
        return i128(a.num_) * b.den_ < i128(b.num_) * a.den_;
    return a.to_mpq() < b.to_mpq();
}

std::ostream& operator<<(std::ostream& os, const Rational& r)
{
    return os << r.str();
}

Rational factorial(int n)
{
    Rational r(1);
    for (int i = 2; i <= n; ++i)
        r *= Rational(i);
    return r;
}

Rational binomial_q(long long n, long long k)
{
    if (k < 0 || n < 0 || k > n)
        return Rational(0);
    Rational r(1);
    for (long long i = 1; i <= k; ++i)
        r = r * Rational(n - k + i) / Rational(i);
    return r;
}

} // namespace chainlab
