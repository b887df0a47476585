#include "psbent/spreads.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace psbent {

namespace {

Point pack(const FieldCtx& ctx, GFElem x, GFElem y) {
  return Point{x.bits} | (Point{y.bits} << ctx.degree());
}

void require_size(const SpreadSelection& sel, std::size_t want, const char* what) {
  if (sel.size() != want) {
    throw std::invalid_argument(std::string(what) + " needs " + std::to_string(want) +
                                " spread lines, got " + std::to_string(sel.size()));
  }
}

std::size_t half_order(const FieldCtx& ctx) { return std::size_t{1} << (ctx.degree() - 1); }

TruthTable union_of_lines(const SpreadSelection& sel, bool keep_origin) {
  const FieldCtx& ctx = sel.field();
  TruthTable f(2 * ctx.degree());
  for (const auto& line : sel.lines()) {
    for (Point p : line_points(ctx, line)) f.set(p, true);
  }
  f.set(0, keep_origin);
  return f;
}

}  // namespace

std::string to_string(const SpreadLine& line) {
  return line.is_infinity ? "inf" : std::to_string(line.slope.bits);
}

SpreadLine parse_spread_line(const std::string& text, const FieldCtx& ctx) {
  if (text == "inf" || text == "infinity") return SpreadLine::infinity();
  std::size_t used = 0;
  unsigned long v = 0;
  try {
    v = std::stoul(text, &used, 0);
  } catch (const std::exception&) {
    throw std::invalid_argument("malformed spread line '" + text + "'");
  }
  if (used != text.size()) throw std::invalid_argument("malformed spread line '" + text + "'");
  if (v >= ctx.order()) {
    throw std::invalid_argument("spread line slope " + text + " is not in GF(2^" +
                                std::to_string(ctx.degree()) + ")");
  }
  return SpreadLine::finite(static_cast<std::uint32_t>(v));
}

SpreadSelection::SpreadSelection(const FieldCtx& ctx, std::vector<SpreadLine> lines)
    : ctx_(ctx), lines_(std::move(lines)) {
  for (auto& l : lines_) {
    if (l.is_infinity) {
      l.slope = GFElem{};
    } else if (l.slope.bits >= ctx_.order()) {
      throw std::invalid_argument("spread line slope outside the field");
    }
  }
  std::sort(lines_.begin(), lines_.end());
  if (std::adjacent_find(lines_.begin(), lines_.end()) != lines_.end()) {
    throw std::invalid_argument("spread selection contains a duplicate line");
  }
}

bool SpreadSelection::contains(const SpreadLine& line) const {
  return std::binary_search(lines_.begin(), lines_.end(), line);
}

SpreadSelection SpreadSelection::dual() const {
  std::vector<SpreadLine> d;
  d.reserve(lines_.size());
  for (const auto& l : lines_) d.push_back(line_dual(ctx_, l));
  return SpreadSelection(ctx_, std::move(d));
}

std::vector<SpreadLine> desarguesian(const FieldCtx& ctx) {
  std::vector<SpreadLine> lines;
  lines.reserve(ctx.order() + 1);
  for (std::uint32_t a = 0; a < ctx.order(); ++a) lines.push_back(SpreadLine::finite(a));
  lines.push_back(SpreadLine::infinity());
  return lines;
}

std::vector<Point> line_points(const FieldCtx& ctx, const SpreadLine& line) {
  std::vector<Point> pts;
  pts.reserve(ctx.order());
  for (std::uint32_t t = 0; t < ctx.order(); ++t) {
    if (line.is_infinity) {
      pts.push_back(pack(ctx, GFElem{0}, GFElem{t}));
    } else {
      pts.push_back(pack(ctx, GFElem{t}, ctx.mul(GFElem{t}, line.slope)));
    }
  }
  std::sort(pts.begin(), pts.end());
  return pts;
}

SpreadLine line_dual(const FieldCtx& ctx, const SpreadLine& line) {
  if (line.is_infinity) return SpreadLine::finite(0u);
  if (line.slope.bits == 0) return SpreadLine::infinity();
  return SpreadLine::finite(ctx.inv(line.slope));
}

TruthTable ps_minus(const SpreadSelection& sel) {
  require_size(sel, half_order(sel.field()), "PS- construction");
  return union_of_lines(sel, false);
}

TruthTable ps_plus(const SpreadSelection& sel) {
  require_size(sel, half_order(sel.field()) + 1, "PS+ construction");
  return union_of_lines(sel, true);
}

void check_psap_generator(const FieldCtx& ctx, const TruthTable& g) {
  if (g.num_vars() != ctx.degree()) {
    throw std::invalid_argument("g must have k = " + std::to_string(ctx.degree()) + " variables");
  }
  if (!tt_is_balanced(g)) throw std::invalid_argument("g must be balanced");
  if (g(0)) throw std::invalid_argument("g must satisfy g(0) = 0");
}

TruthTable psap_from_g(const FieldCtx& ctx, const TruthTable& g) {
  check_psap_generator(ctx, g);
  const int k = ctx.degree();
  const Point mask = (Point{1} << k) - 1;
  return TruthTable::from_function(2 * k, [&](Point idx) {
    const GFElem x{static_cast<std::uint32_t>(idx & mask)};
    const GFElem y{static_cast<std::uint32_t>(idx >> k)};
    return g(ctx.div_conv(x, y).bits);
  });
}

SpreadSelection selection_from_g(const FieldCtx& ctx, const TruthTable& g) {
  check_psap_generator(ctx, g);
  std::vector<SpreadLine> lines;
  for (std::uint32_t u = 1; u < ctx.order(); ++u) {
    if (g(u)) lines.push_back(SpreadLine::finite(ctx.inv(GFElem{u})));
  }
  return SpreadSelection(ctx, std::move(lines));
}

std::vector<Point> orthogonal_complement(int n, std::span<const Point> points) {
  std::vector<Point> out;
  for (Point x = 0; x < (Point{1} << n); ++x) {
    const bool orth = std::all_of(points.begin(), points.end(),
                                  [&](Point p) { return (std::popcount(p & x) & 1) == 0; });
    if (orth) out.push_back(x);
  }
  return out;
}

std::vector<Subspace> make_partial_spread(int n, std::span<const std::vector<Point>> bases) {
  if (n < 2 || n % 2 != 0 || n > TruthTable::kMaxVars) {
    throw std::invalid_argument("partial spreads need even n in [2, 24]");
  }
  const int k = n / 2;
  std::vector<Subspace> subs;
  for (std::size_t i = 0; i < bases.size(); ++i) {
    const auto& basis = bases[i];
    for (Point b : basis) {
      if (b >> n) throw std::invalid_argument("subspace " + std::to_string(i + 1) +
                                              " has a vector outside F_2^n");
    }
    if (static_cast<int>(basis.size()) != k || gf2_rank(basis) != k) {
      throw std::invalid_argument("subspace " + std::to_string(i + 1) +
                                  " is not spanned by " + std::to_string(k) +
                                  " independent vectors");
    }
    auto pts = span_points(basis);
    std::sort(pts.begin(), pts.end());
    subs.push_back(Subspace{basis, std::move(pts)});
  }
  for (std::size_t i = 0; i < subs.size(); ++i) {
    for (std::size_t j = i + 1; j < subs.size(); ++j) {
      std::vector<Point> common;
      std::set_intersection(subs[i].points.begin(), subs[i].points.end(), subs[j].points.begin(),
                            subs[j].points.end(), std::back_inserter(common));
      if (common.size() != 1) {
        throw std::invalid_argument("subspaces " + std::to_string(i + 1) + " and " +
                                    std::to_string(j + 1) + " intersect beyond the origin");
      }
    }
  }
  return subs;
}

TruthTable ps_general(int n, std::span<const std::vector<Point>> bases) {
  const auto subs = make_partial_spread(n, bases);
  const std::size_t half = std::size_t{1} << (n / 2 - 1);
  if (subs.size() != half && subs.size() != half + 1) {
    throw std::invalid_argument("PS functions on n = " + std::to_string(n) + " need " +
                                std::to_string(half) + " or " + std::to_string(half + 1) +
                                " subspaces, got " + std::to_string(subs.size()));
  }
  TruthTable f(n);
  for (const auto& s : subs) {
    for (Point p : s.points) f.set(p, true);
  }
  f.set(0, subs.size() == half + 1);
  return f;
}

bool is_selfdual_selection(const SpreadSelection& sel) {
  const FieldCtx& ctx = sel.field();
  require_size(sel, half_order(ctx), "self-duality criterion");
  if (sel.contains(SpreadLine::finite(1u))) return false;
  if (sel.contains(SpreadLine::finite(0u)) != sel.contains(SpreadLine::infinity())) return false;
  for (std::uint32_t a = 2; a < ctx.order(); ++a) {
    const auto line = SpreadLine::finite(a);
    if (sel.contains(line) != sel.contains(SpreadLine::finite(ctx.inv(GFElem{a})))) return false;
  }
  return true;
}

}  // namespace psbent
