#include "chainlab/expr.hpp"

#include <cctype>

namespace chainlab {

namespace {

using Named = std::map<std::map<std::string, int>, Rational>;

void add_into(Named& a, const Named& b, const Rational& s)
{
    for (const auto& [m, c] : b) {
        Rational& slot = a[m];
        slot += s * c;
        if (slot.is_zero())
            a.erase(m);
    }
}

Named mul(const Named& a, const Named& b)
{
    Named out;
    for (const auto& [ma, ca] : a)
        for (const auto& [mb, cb] : b) {
            auto m = ma;
            for (const auto& [v, e] : mb)
                m[v] += e;
            Rational& slot = out[m];
            slot += ca * cb;
            if (slot.is_zero())
                out.erase(m);
        }
    return out;
}

Named constant(const Rational& c)
{
    Named n;
    if (!c.is_zero())
        n[{}] = c;
    return n;
}

class Parser {
public:
    explicit Parser(const std::string& s) : s_(s) {}

    Named parse()
    {
        Named e = expr();
        skip();
        if (pos_ != s_.size())
            fail("unexpected character");
        return e;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const
    {
        throw ParseError(msg + " at position " + std::to_string(pos_) + " in '" + s_ + "'");
    }

    void skip()
    {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])))
            ++pos_;
    }

    bool accept(char c)
    {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    Named expr()
    {
        Named acc = term();
        while (true) {
            if (accept('+'))
                add_into(acc, term(), Rational(1));
            else if (accept('-'))
                add_into(acc, term(), Rational(-1));
            else
                return acc;
        }
    }

    Named term()
    {
        Named acc = unary();
        while (true) {
            if (accept('*')) {
                acc = mul(acc, unary());
            } else if (accept('/')) {
                Named d = unary();
                if (d.size() != 1 || !d.begin()->first.empty())
                    fail("division by a non-constant");
                Rational inv = d.begin()->second.inverse();
                for (auto& [m, c] : acc)
                    c *= inv;
            } else {
                return acc;
            }
        }
    }

    Named unary()
    {
        if (accept('-')) {
            Named n = unary();
            for (auto& [m, c] : n)
                c = -c;
            return n;
        }
        if (accept('+'))
            return unary();
        return power();
    }

    Named power()
    {
        Named base = atom();
        if (accept('^')) {
            skip();
            std::size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
                ++pos_;
            if (start == pos_)
                fail("expected a nonnegative integer exponent");
            int e = std::stoi(s_.substr(start, pos_ - start));
            Named out = constant(Rational(1));
            for (int i = 0; i < e; ++i)
                out = mul(out, base);
            return out;
        }
        return base;
    }

    Named atom()
    {
        skip();
        if (pos_ >= s_.size())
            fail("unexpected end of input");
        char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            Named e = expr();
            if (!accept(')'))
                fail("expected ')'");
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
                ++pos_;
            return constant(Rational::parse(s_.substr(start, pos_ - start)));
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos_;
            while (pos_ < s_.size() &&
                   (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
                ++pos_;
            Named n;
            n[{{s_.substr(start, pos_ - start), 1}}] = Rational(1);
            return n;
        }
        fail("unexpected character");
    }

    std::string s_;
    std::size_t pos_ = 0;
};

} // namespace

ParsedPoly parse_polynomial(const std::string& text)
{
    Named n = Parser(text).parse();
    ParsedPoly out;
    std::map<std::string, int> idx;
    for (const auto& [m, c] : n)
        for (const auto& [v, e] : m)
            idx[v] = 0;
    for (auto& [v, i] : idx) {
        i = static_cast<int>(out.vars.size());
        out.vars.push_back(v);
    }
    for (const auto& [m, c] : n) {
        Monomial mono(out.vars.size(), 0);
        for (const auto& [v, e] : m)
            mono[idx[v]] = e;
        out.terms[mono] = c;
    }
    return out;
}

PolyElement parse_polynomial(const std::string& text, AlgebraPtr alg)
{
    ParsedPoly p = parse_polynomial(text);
    std::vector<int> where;
    for (const auto& v : p.vars) {
        if (!alg->has(v))
            throw ParseError("unknown variable '" + v + "'");
        int i = alg->index_of(v);
        if (alg->generators()[i].odd)
            throw ParseError("variable '" + v + "' is odd");
        where.push_back(i);
    }
    PolyElement out(alg);
    for (const auto& [m, c] : p.terms) {
        Monomial mono(alg->ngens(), 0);
        for (std::size_t i = 0; i < m.size(); ++i)
            mono[where[i]] = m[i];
        out.add_term(mono, c);
    }
    return out;
}

} // namespace chainlab
