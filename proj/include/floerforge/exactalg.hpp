#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace ff {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

enum class Field { GF2, Q };

std::string field_name(Field f);
Field parse_field(const std::string& s);

Rational parse_rational(const std::string& s);
std::string rational_to_string(const Rational& r);

// A half-integer stored as twice its value, so parity checks stay exact.
class HalfInt {
public:
    constexpr HalfInt() = default;
    constexpr HalfInt(int64_t integer) : d_(2 * integer) {}
    static constexpr HalfInt from_doubled(int64_t d) {
        HalfInt h;
        h.d_ = d;
        return h;
    }
    static HalfInt parse(const std::string& s);

    constexpr int64_t doubled() const { return d_; }
    constexpr bool is_integer() const { return d_ % 2 == 0; }
    int64_t floor() const;
    Rational value() const { return Rational(d_) / 2; }
    std::string str() const;

    constexpr HalfInt operator+(HalfInt o) const { return from_doubled(d_ + o.d_); }
    constexpr HalfInt operator-(HalfInt o) const { return from_doubled(d_ - o.d_); }
    constexpr HalfInt operator-() const { return from_doubled(-d_); }
    HalfInt& operator+=(HalfInt o) { d_ += o.d_; return *this; }
    HalfInt& operator-=(HalfInt o) { d_ -= o.d_; return *this; }
    constexpr HalfInt times(int64_t k) const { return from_doubled(d_ * k); }

    constexpr auto operator<=>(const HalfInt&) const = default;

private:
    int64_t d_ = 0;
};

HalfInt half(int64_t doubled);

// Field arithmetic on rational carriers; GF(2) values are kept in {0,1}.
struct Arith {
    Field f;
    Rational norm(const Rational& a) const;
    Rational add(const Rational& a, const Rational& b) const;
    Rational sub(const Rational& a, const Rational& b) const;
    Rational mul(const Rational& a, const Rational& b) const;
    Rational neg(const Rational& a) const;
    Rational inv(const Rational& a) const;
};

class FieldScalar {
public:
    FieldScalar(Field f = Field::Q, const Rational& v = 0);
    static FieldScalar parse(Field f, const std::string& s);

    Field field() const { return f_; }
    const Rational& value() const { return v_; }
    bool is_zero() const { return v_ == 0; }
    std::string str() const { return rational_to_string(v_); }

    FieldScalar operator+(const FieldScalar& o) const;
    FieldScalar operator-(const FieldScalar& o) const;
    FieldScalar operator*(const FieldScalar& o) const;
    FieldScalar operator-() const;
    FieldScalar inverse() const;
    bool operator==(const FieldScalar& o) const { return f_ == o.f_ && v_ == o.v_; }

private:
    void check(const FieldScalar& o) const;
    Field f_;
    Rational v_;
};

using SparseVec = std::map<size_t, Rational>;

class SparseMatrix {
public:
    SparseMatrix(size_t rows, size_t cols, Field f) : rows_(rows), cols_(cols), f_(f) {}

    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }
    Field field() const { return f_; }
    void set(size_t r, size_t c, const Rational& v);
    void add(size_t r, size_t c, const Rational& v);
    Rational get(size_t r, size_t c) const;
    const std::map<std::pair<size_t, size_t>, Rational>& entries() const { return e_; }
    std::vector<SparseVec> row_vectors() const;

private:
    size_t rows_, cols_;
    Field f_;
    std::map<std::pair<size_t, size_t>, Rational> e_;
};

struct RankKernel {
    size_t rank = 0;
    std::vector<SparseVec> kernel;
};

RankKernel rank_and_kernel(const SparseMatrix& m);
size_t rank_of(const SparseMatrix& m);

// Row echelon helper shared by the homology code: rows are reduced in place.
// Returns pivot column for each surviving row.
struct Echelon {
    std::vector<SparseVec> rows;
    std::vector<size_t> pivots;
};
Echelon echelon(std::vector<SparseVec> rows, Field f);

class LaurentPoly {
public:
    using Exps = std::array<int64_t, 2>;  // doubled exponents

    LaurentPoly() : vars_({"t"}) {}
    explicit LaurentPoly(std::vector<std::string> vars);
    static LaurentPoly constant(const Rational& c, std::vector<std::string> vars = {"t"});
    static LaurentPoly monomial(const Rational& c, HalfInt e, const std::string& var = "t");
    static LaurentPoly monomial2(const Rational& c, HalfInt e1, HalfInt e2,
                                 std::vector<std::string> vars = {"t1", "t2"});

    size_t nvars() const { return vars_.size(); }
    const std::vector<std::string>& vars() const { return vars_; }
    const std::map<Exps, Rational, std::greater<Exps>>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add_term(const Exps& e, const Rational& c);
    Rational coeff(HalfInt e) const;
    Rational coeff2(HalfInt e1, HalfInt e2) const;
    std::optional<HalfInt> top_degree() const;
    std::optional<HalfInt> bottom_degree() const;

    LaurentPoly operator+(const LaurentPoly& o) const;
    LaurentPoly operator-(const LaurentPoly& o) const;
    LaurentPoly operator-() const;
    LaurentPoly scaled(const Rational& c) const;
    bool operator==(const LaurentPoly& o) const;

    // t -> t^k for a one-variable polynomial
    LaurentPoly substitute_power(int64_t k) const;
    LaurentPoly renamed(const std::string& var) const;
    Rational evaluate_at_one() const;
    bool is_odd() const;      // p(-x) = -p(x) on integer exponents
    bool is_antisymmetric() const;  // p(t^{-1}) = -p(t)

    std::string str() const;

private:
    std::vector<std::string> vars_;
    std::map<Exps, Rational, std::greater<Exps>> terms_;
};

LaurentPoly laurent_mul(const LaurentPoly& p, const LaurentPoly& q);
LaurentPoly laurent_pow(const LaurentPoly& p, unsigned k);
LaurentPoly parse_laurent(const std::string& s, const std::string& var = "t");

struct RewriteResult {
    bool ok = false;
    LaurentPoly q{{"u"}};
    LaurentPoly residual{{"t"}};
};

RewriteResult rewrite_in_z(const LaurentPoly& p);
// q(u) evaluated at u = t - t^{-1}
LaurentPoly substitute_z(const LaurentPoly& q);

}  // namespace ff
