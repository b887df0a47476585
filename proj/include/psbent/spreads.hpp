#pragma once

#include <compare>
#include <span>
#include <string>
#include <vector>

#include "psbent/boolfun.hpp"
#include "psbent/field.hpp"

namespace psbent {

/// A line of the Desarguesian spread: E_a = {(x, xa)} or E_inf = {(0, y)}.
/// Orders finite lines by element value, infinity last.
struct SpreadLine {
  bool is_infinity = false;
  GFElem slope{};

  static SpreadLine finite(GFElem a) { return SpreadLine{false, a}; }
  static SpreadLine finite(std::uint32_t a) { return SpreadLine{false, GFElem{a}}; }
  static SpreadLine infinity() { return SpreadLine{true, GFElem{}}; }

  friend auto operator<=>(const SpreadLine&, const SpreadLine&) = default;
};

std::string to_string(const SpreadLine& line);
/// Parses "inf" or a decimal/hex ("0x..") element value.
SpreadLine parse_spread_line(const std::string& text, const FieldCtx& ctx);

/// A subset of the Desarguesian spread, kept sorted and duplicate free.
class SpreadSelection {
 public:
  /// Throws std::invalid_argument on duplicates or elements outside the field.
  SpreadSelection(const FieldCtx& ctx, std::vector<SpreadLine> lines);

  const FieldCtx& field() const { return ctx_; }
  const std::vector<SpreadLine>& lines() const { return lines_; }
  std::size_t size() const { return lines_.size(); }
  bool contains(const SpreadLine& line) const;

  /// {E^perp : E in this selection}.
  SpreadSelection dual() const;

 private:
  FieldCtx ctx_;
  std::vector<SpreadLine> lines_;
};

/// All 2^k + 1 lines in canonical order.
std::vector<SpreadLine> desarguesian(const FieldCtx& ctx);

/// Point indices bits(x) + 2^k bits(y) of a line, ascending.
std::vector<Point> line_points(const FieldCtx& ctx, const SpreadLine& line);

/// Trace-form orthogonal complement: E_a -> E_{1/a}, E_0 <-> E_inf.
SpreadLine line_dual(const FieldCtx& ctx, const SpreadLine& line);

/// Support = union of the 2^(k-1) selected lines minus the origin.
TruthTable ps_minus(const SpreadSelection& sel);
/// Support = union of the 2^(k-1) + 1 selected lines (origin included).
TruthTable ps_plus(const SpreadSelection& sel);

/// f(x, y) = g(x / y) with x / 0 = 0. g must be balanced with g(0) = 0.
TruthTable psap_from_g(const FieldCtx& ctx, const TruthTable& g);
/// {E_{1/u} : g(u) = 1}; ps_minus of it equals psap_from_g(ctx, g).
SpreadSelection selection_from_g(const FieldCtx& ctx, const TruthTable& g);
/// Throws std::invalid_argument unless g is a valid PS_ap generator on k variables.
void check_psap_generator(const FieldCtx& ctx, const TruthTable& g);

/// A k-dimensional subspace of F_2^n given by a basis, with its point set.
struct Subspace {
  std::vector<Point> basis;
  std::vector<Point> points;
};

/// Standard dot-product orthogonal complement, found by exhaustive search.
std::vector<Point> orthogonal_complement(int n, std::span<const Point> points);

/// Validates the subspaces (dimension n/2, pairwise trivially intersecting).
/// The error message names the offending pair.
std::vector<Subspace> make_partial_spread(int n, std::span<const std::vector<Point>> bases);

/// PS- or PS+ function (chosen by the subspace count) over arbitrary
/// bit-vector subspaces.
TruthTable ps_general(int n, std::span<const std::vector<Point>> bases);

/// Self-duality criterion for a 2^(k-1)-line selection: E_1 absent, E_0 and
/// E_inf both present or both absent, E_a present iff E_{1/a} present.
bool is_selfdual_selection(const SpreadSelection& sel);

}  // namespace psbent
