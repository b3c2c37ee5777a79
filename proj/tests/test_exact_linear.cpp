#include <gtest/gtest.h>

#include <numeric>
#include <random>

#include "reldend/lincomb.hpp"
#include "reldend/scalar.hpp"

using namespace reldend;

namespace {

// Independent fraction arithmetic on small machine integers.
struct Frac {
  long n, d;
  Frac(long n_, long d_) : n(n_), d(d_) {
    if (d < 0) n = -n, d = -d;
    long g = std::gcd(n < 0 ? -n : n, d);
    if (g > 1) n /= g, d /= g;
  }
  Frac operator+(const Frac& o) const { return {n * o.d + o.n * d, d * o.d}; }
  Frac operator*(const Frac& o) const { return {n * o.n, d * o.d}; }
  [[nodiscard]] std::string str() const { return std::to_string(n) + "/" + std::to_string(d); }
};

}  // namespace

TEST(Scalar, ParseAndPrint) {
  EXPECT_EQ(Scalar::parse("3").str(), "3/1");
  EXPECT_EQ(Scalar::parse("0").str(), "0/1");
  EXPECT_EQ(Scalar::parse("-4/6").str(), "-2/3");
  EXPECT_EQ(Scalar::parse("+5/10").str(), "1/2");
  EXPECT_EQ(Scalar(6, -4).str(), "-3/2");
  EXPECT_THROW(Scalar::parse(""), MalformedInput);
  EXPECT_THROW(Scalar::parse("1/0"), MalformedInput);
  EXPECT_THROW(Scalar::parse("1/-2"), MalformedInput);
  EXPECT_THROW(Scalar::parse("x"), MalformedInput);
  EXPECT_THROW(Scalar::parse("1 /2"), MalformedInput);
}

TEST(Scalar, DivisionByZeroIsAContractViolation) {
  EXPECT_THROW(Scalar(1) / Scalar(0), ContractViolation);
  EXPECT_EQ((Scalar(1) / Scalar(3)).str(), "1/3");
}

TEST(Scalar, ArithmeticAgreesWithMachineFractions) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<long> num(-50, 50), den(1, 30);
  for (int i = 0; i < 2000; ++i) {
    long a = num(rng), b = den(rng), c = num(rng), d = den(rng);
    Frac x(a, b), y(c, d);
    EXPECT_EQ((Scalar(a, b) + Scalar(c, d)).str(), (x + y).str());
    EXPECT_EQ((Scalar(a, b) * Scalar(c, d)).str(), (x * y).str());
    EXPECT_EQ(Scalar::parse(Scalar(a, b).str()), Scalar(a, b));
  }
}

TEST(Scalar, LargeValuesStayExact) {
  Scalar big(1);
  for (int i = 0; i < 40; ++i) big *= Scalar(1000000007);
  Scalar back = big;
  for (int i = 0; i < 40; ++i) back /= Scalar(1000000007);
  EXPECT_EQ(back, Scalar(1));
  EXPECT_EQ(Scalar::parse(big.str()), big);
}

TEST(LinComb, ZeroCoefficientsAreNeverStored) {
  LinComb<int> a{{1, Scalar(2)}, {2, Scalar(0)}};
  EXPECT_EQ(a.size(), 1u);
  a.add_term(1, Scalar(-2));
  EXPECT_TRUE(a.is_zero());
  EXPECT_TRUE((Scalar(0) * LinComb<int>(3)).is_zero());
}

TEST(LinComb, VectorSpaceLawsOnRandomCombinations) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<long> coeff(-5, 5), basis(0, 6), den(1, 4);
  auto random_lc = [&] {
    LinComb<int> a;
    for (int i = 0; i < 5; ++i) a.add_term(static_cast<int>(basis(rng)), Scalar(coeff(rng), den(rng)));
    return a;
  };
  for (int i = 0; i < 300; ++i) {
    auto a = random_lc(), b = random_lc(), c = random_lc();
    Scalar k(coeff(rng), den(rng)), l(coeff(rng), den(rng));
    EXPECT_EQ(a + b, b + a);
    EXPECT_EQ((a + b) + c, a + (b + c));
    EXPECT_EQ(k * (a + b), k * a + k * b);
    EXPECT_EQ((k + l) * a, k * a + l * a);
    EXPECT_TRUE((a - a).is_zero());
    EXPECT_EQ(-(-a), a);
    for (const auto& [basis_el, value] : a + b) {
      EXPECT_FALSE(value.is_zero());
      EXPECT_EQ(value, a.coefficient(basis_el) + b.coefficient(basis_el));
    }
  }
}

TEST(LinComb, BilinearExtension) {
  auto f = [](const int& i, const int& j) { return LinComb<int>(i * 10 + j); };
  LinComb<int> a{{1, Scalar(2)}, {2, Scalar(1)}};
  LinComb<int> b{{3, Scalar(1, 2)}};
  auto r = lc_bilinear_extend(f, a, b);
  EXPECT_EQ(r, (LinComb<int>{{13, Scalar(1)}, {23, Scalar(1, 2)}}));
  EXPECT_TRUE(lc_bilinear_extend(f, a, LinComb<int>{}).is_zero());
}

TEST(LinComb, JsonRoundTripAndText) {
  LinComb<int> a{{2, Scalar(-1, 3)}, {0, Scalar(5)}};
  auto j = lc_to_json(a, [](int i) { return i; });
  EXPECT_EQ(j.dump(), R"([["5/1",0],["-1/3",2]])");
  auto back = lc_from_json<int>(j, [](const nlohmann::json& v) { return v.get<int>(); });
  EXPECT_EQ(back, a);
  EXPECT_EQ(lc_to_string(a, [](int i) { return "e" + std::to_string(i); }), "5/1 * e0 - 1/3 * e2");
  EXPECT_EQ(lc_to_string(LinComb<int>{}, [](int) { return std::string(); }), "0");
  EXPECT_THROW(lc_from_json<int>(nlohmann::json::parse(R"([["1/1"]])"), [](const nlohmann::json& v) { return v.get<int>(); }),
               MalformedInput);
}
