#include <gtest/gtest.h>

#include <random>

#include "slval/exactnum.hpp"

using slval::CauchySolution;
using slval::Scalar;

namespace {

Scalar q(long p, long r = 1) { return Scalar::fraction(p, r); }
Scalar rt2(mpq_class a, mpq_class b) { return Scalar(std::move(a), std::move(b), 2); }

Scalar random_element(std::mt19937_64& g, long d) {
  std::uniform_int_distribution<long> num(-20, 20), den(1, 9);
  return Scalar(mpq_class(num(g), den(g)), mpq_class(num(g), den(g)), d);
}

}  // namespace

TEST(Scalar, ArithmeticExamples) {
  EXPECT_EQ(q(1, 2) + q(1, 3), q(5, 6));
  EXPECT_EQ(rt2(1, 1) * rt2(1, -1), q(-1));
  EXPECT_EQ(-Scalar(0), Scalar(0));
  EXPECT_EQ((-Scalar(0)).str(), "0");
}

TEST(Scalar, SignExamples) {
  EXPECT_EQ(rt2(3, -2).sign(), 1);
  EXPECT_EQ(Scalar(0).sign(), 0);
  EXPECT_EQ(rt2(1, -1).sign(), -1);
  EXPECT_EQ(rt2(-3, 2).sign(), -1);
  EXPECT_EQ(rt2(-1, 1).sign(), 1);
}

TEST(Scalar, CanonicalFormIsStructural) {
  EXPECT_EQ(Scalar(mpq_class(2, 4)), q(1, 2));
  // b = 0 forgets the field, so rationals compare equal across contexts.
  EXPECT_EQ(rt2(3, 0), Scalar(3));
  EXPECT_TRUE(rt2(3, 0).is_rational());
  EXPECT_EQ(Scalar::root(2) * Scalar::root(2), Scalar(2));
  EXPECT_TRUE((Scalar::root(2) * Scalar::root(2)).is_rational());
}

TEST(Scalar, Errors) {
  EXPECT_THROW(q(1) / Scalar(0), slval::DivisionByZero);
  EXPECT_THROW(Scalar::fraction(1, 0), slval::DivisionByZero);
  EXPECT_THROW(Scalar::root(2) + Scalar::root(3), slval::FieldMismatch);
  EXPECT_THROW(Scalar(mpq_class(1), mpq_class(1), 4), slval::DomainError);
  EXPECT_THROW(Scalar(mpq_class(1), mpq_class(1), 1), slval::DomainError);
  // Rational scalars combine with any field.
  EXPECT_NO_THROW(Scalar::root(3) + q(1, 2));
}

TEST(Scalar, DivisionInQuadraticField) {
  const Scalar x = rt2(1, 1);
  EXPECT_EQ(Scalar(1) / x, rt2(-1, 1));  // 1/(1+sqrt2) = sqrt2 - 1
  EXPECT_EQ(x / x, Scalar(1));
}

TEST(Scalar, FieldAxiomsOnRandomTriples) {
  std::mt19937_64 g(7);
  for (long d : {0L, 2L, 3L, 5L}) {
    for (int i = 0; i < 200; ++i) {
      const Scalar a = d ? random_element(g, d) : Scalar(mpq_class(static_cast<long>(g() % 41) - 20, 1 + g() % 9));
      const Scalar b = d ? random_element(g, d) : Scalar(mpq_class(static_cast<long>(g() % 41) - 20, 1 + g() % 9));
      const Scalar c = d ? random_element(g, d) : Scalar(mpq_class(static_cast<long>(g() % 41) - 20, 1 + g() % 9));
      EXPECT_EQ((a + b) + c, a + (b + c));
      EXPECT_EQ((a * b) * c, a * (b * c));
      EXPECT_EQ(a + b, b + a);
      EXPECT_EQ(a * b, b * a);
      EXPECT_EQ(a * (b + c), a * b + a * c);
      EXPECT_EQ(a - a, Scalar(0));
      if (!b.is_zero()) {
        EXPECT_EQ((a / b) * b, a);
      }
      // Sign is multiplicative and respects sums of like-signed terms.
      EXPECT_EQ((a * b).sign(), a.sign() * b.sign());
      if (a.sign() == b.sign()) {
        EXPECT_EQ((a + b).sign(), a.sign());
      }
      // Ordering agrees with subtraction.
      EXPECT_EQ(a < b, (b - a).sign() > 0);
    }
  }
}

TEST(Scalar, TextRoundTrip) {
  for (const char* s : {"3", "-1/2", "0", "1/2+3/4*sqrt(2)", "1/2-3/4*sqrt(2)", "0+1*sqrt(5)", "-7-1*sqrt(3)"}) {
    EXPECT_EQ(Scalar::parse(s).str(), s) << s;
  }
  EXPECT_EQ(Scalar::parse("sqrt(2)"), Scalar::root(2));
  EXPECT_EQ(Scalar::parse("-sqrt(2)"), -Scalar::root(2));
  EXPECT_EQ(Scalar::parse("2/4"), q(1, 2));
  EXPECT_EQ(Scalar::parse("1+sqrt(2)"), rt2(1, 1));
  EXPECT_EQ(Scalar::parse("3/2*sqrt(2)"), rt2(0, mpq_class(3, 2)));
  EXPECT_EQ(Scalar::parse("1+0*sqrt(2)"), Scalar(1));
  std::mt19937_64 g(11);
  for (int i = 0; i < 100; ++i) {
    const Scalar x = random_element(g, 7);
    EXPECT_EQ(Scalar::parse(x.str()), x);
  }
}

TEST(Scalar, ParseRejectsMalformedInput) {
  for (const char* s : {"", "abc", "1/0", "1.5", "1/2+", "sqrt(4)", "sqrt(x)", "1+2*sqrt(2", "--1", "1 /2"}) {
    EXPECT_ANY_THROW(Scalar::parse(s)) << s;
  }
}

TEST(Cauchy, Examples) {
  EXPECT_EQ(CauchySolution::linear(3)(q(1, 2)), q(3, 2));
  EXPECT_EQ(CauchySolution::rational_part()(Scalar(mpq_class(5, 7), mpq_class(2), 2)), q(5, 7));
  EXPECT_EQ(CauchySolution::rational_part()(Scalar(0)), Scalar(0));
  EXPECT_EQ(slval::cauchy_eval(CauchySolution::linear(2), q(1)), q(2));
}

TEST(Cauchy, DomainIsNonNegative) {
  EXPECT_THROW(CauchySolution::linear(1)(q(-1)), slval::DomainError);
  EXPECT_THROW(CauchySolution::rational_part()(rt2(1, -1)), slval::DomainError);
  EXPECT_NO_THROW(CauchySolution::rational_part()(rt2(-1, 1)));
}

TEST(Cauchy, AdditivityAndRationalPartNonLinearity) {
  std::mt19937_64 g(3);
  const auto fs = {CauchySolution::linear(q(-2, 3)), CauchySolution::rational_part()};
  for (const auto& f : fs) {
    for (int i = 0; i < 200; ++i) {
      const Scalar x = abs(random_element(g, 2));
      const Scalar y = abs(random_element(g, 2));
      EXPECT_EQ(f(x + y), f(x) + f(y));
    }
  }
  const auto rp = CauchySolution::rational_part();
  EXPECT_EQ(rp(Scalar::root(2)), Scalar(0));
  EXPECT_NE(rp(Scalar::root(2)), Scalar::root(2) * rp(Scalar(1)));
}
