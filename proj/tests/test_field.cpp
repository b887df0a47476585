#include <doctest.h>

#include <random>
#include <set>
#include <stdexcept>

#include "oracles.hpp"
#include "psbent/field.hpp"

using namespace psbent;

namespace {
GFElem E(std::uint32_t b) { return GFElem{b}; }
}  // namespace

TEST_CASE("construction accepts irreducible and rejects reducible polynomials") {
  CHECK_NOTHROW(FieldCtx(2, 0b111));
  CHECK_NOTHROW(FieldCtx(3, 0b1011));
  try {
    FieldCtx bad(2, 0b110);
    FAIL("x^2 + x accepted");
  } catch (const std::invalid_argument& e) {
    CHECK(std::string(e.what()).find("factor x") != std::string::npos);
  }
  CHECK_THROWS_AS(FieldCtx(3, 0b111), std::invalid_argument);  // wrong degree
  CHECK_THROWS_AS(FieldCtx(4, 0b10101), std::invalid_argument);  // (x^2+x+1)^2
  CHECK_THROWS_AS(FieldCtx(0), std::invalid_argument);
  CHECK_THROWS_AS(FieldCtx(17), std::invalid_argument);
  CHECK_THROWS_AS(FieldCtx(9), std::invalid_argument);  // no default above 8
  CHECK_NOTHROW(FieldCtx(9, 0x211));                    // x^9 + x^4 + 1
}

TEST_CASE("default polynomials") {
  CHECK(FieldCtx(2).reduction_poly() == 0x7);
  CHECK(FieldCtx(3).reduction_poly() == 0xB);
  CHECK(FieldCtx(4).reduction_poly() == 0x13);
  CHECK(FieldCtx(5).reduction_poly() == 0x25);
  CHECK(FieldCtx(6).reduction_poly() == 0x43);
  CHECK(FieldCtx(7).reduction_poly() == 0x83);
  CHECK(FieldCtx(8).reduction_poly() == 0x11B);
  CHECK(poly_to_string(0x13) == "x^4+x+1");
  CHECK(poly_degree(0) == -1);
  CHECK(poly_degree(0x11B) == 8);
}

TEST_CASE("multiplication examples") {
  const FieldCtx k2(2), k3(3);
  CHECK(k2.mul(E(0b10), E(0b10)) == E(0b11));
  CHECK(k3.mul(E(0b010), E(0b101)) == E(0b001));
  for (std::uint32_t a = 0; a < 8; ++a) CHECK(k3.mul(E(1), E(a)) == E(a));
}

TEST_CASE("multiplication matches long-division oracle") {
  for (int k = 1; k <= 6; ++k) {
    const FieldCtx ctx(k);
    for (std::uint32_t a = 0; a < ctx.order(); ++a) {
      for (std::uint32_t b = 0; b < ctx.order(); ++b) {
        REQUIRE(ctx.mul(E(a), E(b)).bits == oracle::gf_mul(a, b, ctx.reduction_poly(), k));
      }
    }
  }
  std::mt19937_64 rng(3);
  for (int k : {8, 11, 16}) {
    const FieldCtx ctx(k, k == 8 ? std::optional<std::uint32_t>{} : std::optional<std::uint32_t>{k == 11 ? 0x805u : 0x1002Bu});
    for (int i = 0; i < 2000; ++i) {
      const auto a = static_cast<std::uint32_t>(rng() % ctx.order());
      const auto b = static_cast<std::uint32_t>(rng() % ctx.order());
      REQUIRE(ctx.mul(E(a), E(b)).bits == oracle::gf_mul(a, b, ctx.reduction_poly(), k));
    }
  }
}

TEST_CASE("inverse and division") {
  const FieldCtx k2(2), k3(3);
  CHECK(k2.inv(E(0b10)) == E(0b11));
  CHECK(k3.inv(E(0b010)) == E(0b101));
  CHECK_THROWS_AS(k2.inv(E(0)), std::domain_error);
  CHECK(k2.div_conv(E(1), E(0)) == E(0));
  CHECK(k2.div_conv(E(1), E(0b10)) == E(0b11));
  for (int k = 1; k <= 8; ++k) {
    const FieldCtx ctx(k);
    for (std::uint32_t a = 1; a < ctx.order(); ++a) {
      REQUIRE(ctx.mul(E(a), ctx.inv(E(a))) == E(1));
      REQUIRE(ctx.div_conv(E(a), E(a)) == E(1));
      if (k <= 5) REQUIRE(ctx.inv(E(a)).bits == oracle::gf_inv(a, ctx.reduction_poly(), k));
    }
  }
}

TEST_CASE("pow agrees with repeated multiplication") {
  const FieldCtx ctx(5);
  for (std::uint32_t a = 0; a < ctx.order(); ++a) {
    GFElem acc(1);
    for (std::uint64_t e = 0; e < 40; ++e) {
      REQUIRE(ctx.pow(E(a), e) == acc);
      acc = ctx.mul(acc, E(a));
    }
  }
}

TEST_CASE("trace properties") {
  const FieldCtx k2(2), k3(3);
  CHECK(k2.trace(E(0b10)) == 1);
  CHECK(k3.trace(E(1)) == 1);
  for (int k = 1; k <= 8; ++k) {
    const FieldCtx ctx(k);
    CHECK(ctx.trace(E(0)) == 0);
    std::uint32_t zeros = 0;
    for (std::uint32_t a = 0; a < ctx.order(); ++a) {
      REQUIRE(ctx.trace(E(a)) == ctx.trace_by_frobenius(E(a)));
      REQUIRE(ctx.trace(ctx.square(E(a))) == ctx.trace(E(a)));
      REQUIRE(ctx.trace(E(a)) == oracle::gf_trace(a, ctx.reduction_poly(), k));
      zeros += ctx.trace(E(a)) == 0;
    }
    CHECK(zeros == ctx.order() / 2);
  }
}

TEST_CASE("trace pairing is symmetric, bilinear and nondegenerate") {
  const FieldCtx k2(2);
  CHECK(k2.trace_pairing(E(1), E(0b10), E(0b10), E(1)) == 0);
  for (int k = 2; k <= 3; ++k) {
    const FieldCtx ctx(k);
    const std::uint32_t q = ctx.order();
    const std::uint32_t mask = q - 1;
    for (Point p = 0; p < q * q; ++p) {
      bool has_one = false;
      for (Point r = 0; r < q * q; ++r) {
        const GFElem x(p & mask), y(static_cast<std::uint32_t>(p >> k));
        const GFElem xp(r & mask), yp(static_cast<std::uint32_t>(r >> k));
        const int v = ctx.trace_pairing(x, y, xp, yp);
        REQUIRE(v == ctx.trace_pairing(xp, yp, x, y));
        REQUIRE(v == oracle::trace_pairing(p, r, ctx.reduction_poly(), k));
        REQUIRE(v == oracle::dot(r, ctx.gram_index_map(p)));
        if (p == 0) REQUIRE(v == 0);
        has_one = has_one || v == 1;
      }
      CHECK(has_one == (p != 0));
    }
  }
}

TEST_CASE("gram matrix") {
  const FieldCtx k2(2);
  // [[0,1],[1,1]] with bit j of row i = Tr(x^(i+j))
  CHECK(k2.gram_row(0) == 0b10);
  CHECK(k2.gram_row(1) == 0b11);
  for (int k = 1; k <= 8; ++k) {
    const FieldCtx ctx(k);
    for (int i = 0; i < k; ++i) {
      for (int j = 0; j < k; ++j) {
        REQUIRE(((ctx.gram_row(i) >> j) & 1u) == ((ctx.gram_row(j) >> i) & 1u));
      }
    }
    for (std::uint32_t v = 0; v < ctx.order(); ++v) {
      REQUIRE(ctx.gram_inverse_apply(ctx.gram_apply(v)) == v);
    }
    if (k <= 4) {
      const std::uint64_t full = std::uint64_t{1} << (2 * k);
      std::set<std::uint64_t> image;
      for (std::uint64_t u = 0; u < full; ++u) {
        REQUIRE(ctx.gram_index_map_inverse(ctx.gram_index_map(u)) == u);
        image.insert(ctx.gram_index_map(u));
      }
      CHECK(image.size() == full);
      CHECK(ctx.gram_index_map(0) == 0);
    }
  }
}
