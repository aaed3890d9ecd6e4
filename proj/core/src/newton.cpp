#include "dtl/errors.hpp"
#include "dtl/puiseux.hpp"

#include <algorithm>
#include <set>

namespace dtl {

namespace {

struct Pt {
  std::int64_t x;
  Rational y;
};

// Lower convex hull; collinear interior points are dropped.
std::vector<Pt> lower_hull(std::vector<Pt> pts) {
  std::sort(pts.begin(), pts.end(), [](const Pt& a, const Pt& b) { return a.x < b.x; });
  std::vector<Pt> h;
  for (const auto& p : pts) {
    while (h.size() >= 2) {
      const Pt& a = h[h.size() - 2];
      const Pt& b = h.back();
      // drop b unless it lies strictly below segment a-p
      Rational cross = (b.y - a.y) * Rational(p.x - a.x) - (p.y - a.y) * Rational(b.x - a.x);
      if (cross >= 0)
        h.pop_back();
      else
        break;
    }
    h.push_back(p);
  }
  return h;
}

Rational hull_value_at(const std::vector<Pt>& h, std::int64_t x) {
  for (std::size_t i = 0; i + 1 < h.size(); ++i) {
    if (x >= h[i].x && x <= h[i + 1].x) {
      Rational s = (h[i + 1].y - h[i].y) / Rational(h[i + 1].x - h[i].x);
      return h[i].y + s * Rational(x - h[i].x);
    }
  }
  return h.front().y;
}

std::int64_t qpow(std::int64_t q, int i) {
  std::int64_t r = 1;
  for (int k = 0; k < i; ++k) r *= q;
  return r;
}

}  // namespace

NewtonPolygon newton_polygon(const std::map<std::int64_t, PuiseuxApprox>& coeffs) {
  std::vector<Pt> certified;
  std::vector<Pt> uncertain;
  for (const auto& [k, c] : coeffs) {
    if (!c.empty())
      certified.push_back({k, c.valuation().value()});
    else if (c.prec().finite())
      uncertain.push_back({k, c.prec().value()});
  }
  if (certified.size() < 2)
    throw InsufficientPrecision("Newton polygon needs two certified coefficients");
  auto h = lower_hull(certified);
  for (const auto& u : uncertain) {
    if (u.x < h.front().x || u.x > h.back().x)
      throw InsufficientPrecision("coefficient at exponent " + std::to_string(u.x) +
                                  " is zero to precision outside the certified hull");
    if (u.y < hull_value_at(h, u.x))
      throw InsufficientPrecision("coefficient at exponent " + std::to_string(u.x) +
                                  " is zero to precision below the hull");
  }
  NewtonPolygon np;
  for (std::size_t i = h.size() - 1; i > 0; --i) {
    const Pt& a = h[i - 1];
    const Pt& b = h[i];
    Rational slope = -(b.y - a.y) / Rational(b.x - a.x);
    np.segments.push_back({slope, b.x - a.x, a.x, b.x});
  }
  return np;
}

PuiseuxApprox eval_additive(const AdditivePoly& poly, const PuiseuxApprox& x) {
  PuiseuxApprox acc = poly.constant;
  for (const auto& [i, c] : poly.coeffs) acc = acc + c * x.twist(i);
  return acc;
}

namespace {

PuiseuxApprox eval_homogeneous(const AdditivePoly& poly, const PuiseuxApprox& x) {
  PuiseuxApprox acc;
  for (const auto& [i, c] : poly.coeffs) acc = acc + c * x.twist(i);
  return acc;
}

struct Certified {
  int i;
  std::int64_t qi;
  Rational ord;
  FieldElem lead;
};

std::vector<Certified> certified_coeffs(const AdditivePoly& poly, std::int64_t q) {
  std::vector<Certified> out;
  for (const auto& [i, c] : poly.coeffs) {
    if (c.empty()) continue;
    out.push_back({i, qpow(q, i), c.valuation().value(), c.lead_coeff()});
  }
  if (out.empty()) throw InsufficientPrecision("additive part is zero to precision");
  return out;
}

// Ord of the distance to the nearest root when the residual has ord R.
Rational nearest_root_gap(const std::vector<Certified>& cs, const Rational& R) {
  Rational best = (R - cs.front().ord) / Rational(cs.front().qi);
  for (const auto& c : cs) best = std::max(best, (R - c.ord) / Rational(c.qi));
  return best;
}

// One refinement loop: drives the residual of x toward zero. The correction
// always targets the nearest root, so the leading behavior of x is kept.
PuiseuxApprox refine(const AdditivePoly& poly, const std::vector<Certified>& cs, PuiseuxApprox x,
                     PuiseuxApprox res) {
  const Certified* linear = nullptr;
  for (const auto& c : cs)
    if (c.qi == 1) linear = &c;
  for (int iter = 0; iter < 64; ++iter) {
    const XRational target = precision_cap(x.effective_ord());
    if (res.empty()) {
      if (res.prec().is_inf()) return x;
      XRational gap = XRational(nearest_root_gap(cs, res.prec().value()));
      return x.truncate(min(gap, target));
    }
    const Rational R = res.valuation().value();
    const Rational gap = nearest_root_gap(cs, R);
    if (XRational(gap) >= target) return x.truncate(target);
    // Leftmost Newton segment of P_hom(Y) + res: hull slope from (0, R).
    Rational w = gap;
    std::int64_t far = 0;
    for (const auto& c : cs)
      if ((R - c.ord) / Rational(c.qi) == w) far = std::max(far, c.qi);
    PuiseuxApprox Y;
    if (far == 1 && linear) {
      Y = -(res / poly.coeffs.at(linear->i));
    } else {
      std::vector<std::pair<int, FieldElem>> terms;
      for (const auto& c : cs)
        if (c.ord + w * Rational(c.qi) == R) terms.emplace_back(c.i, c.lead);
      auto roots = additive_roots(res.lead_coeff(), terms, false);
      Y = PuiseuxApprox::monomial(roots.front(), -w);
    }
    x = x + Y;
    res = res + eval_homogeneous(poly, Y);
  }
  throw PrecisionExhausted("additive root refinement did not reach the target precision");
}

// Leading-term solutions for one Newton segment [qa, qb] with root ord w.
std::vector<FieldElem> residue_roots(const std::vector<Certified>& cs, const PuiseuxApprox& constant,
                                     const NewtonSegment& seg, bool full_kernel) {
  std::vector<std::pair<int, FieldElem>> terms;
  // Points on the segment satisfy ord + w*q^i = common value.
  Rational level;
  bool have = false;
  for (const auto& c : cs) {
    if (c.qi == seg.x_right) {
      level = c.ord + seg.slope * Rational(c.qi);
      have = true;
    }
  }
  if (!have) throw std::logic_error("segment endpoint without coefficient");
  for (const auto& c : cs)
    if (c.qi >= seg.x_left && c.qi <= seg.x_right && c.ord + seg.slope * Rational(c.qi) == level)
      terms.emplace_back(c.i, c.lead);
  FieldElem c0 = FieldElem::zero(terms.front().second.desc());
  if (seg.x_left == 0) c0 = constant.lead_coeff();
  return additive_roots(c0, terms, full_kernel);
}

}  // namespace

std::vector<PuiseuxApprox> solve_additive(const AdditivePoly& poly, RootStrategy strategy) {
  if (poly.coeffs.empty()) throw std::invalid_argument("solve_additive: empty additive part");
  FieldDesc base;
  bool have_field = false;
  for (const auto& [i, c] : poly.coeffs)
    if (c.has_field()) {
      base = have_field ? FieldDesc::common(base, c.field()) : c.field();
      have_field = true;
    }
  if (!have_field) throw InsufficientPrecision("additive part is zero");
  const std::int64_t q = base.q();
  auto cs = certified_coeffs(poly, q);

  std::map<std::int64_t, PuiseuxApprox> pts;
  for (const auto& [i, c] : poly.coeffs) pts[qpow(q, i)] = c;
  const bool has_constant = !poly.constant.is_exact_zero();
  if (has_constant) pts[0] = poly.constant;

  if (strategy == RootStrategy::max_valuation_root) {
    if (!has_constant) return {PuiseuxApprox::zero(base)};
    if (poly.constant.empty()) {
      Rational gap = nearest_root_gap(cs, poly.constant.prec().value());
      return {PuiseuxApprox::zero(base, XRational(gap))};
    }
    auto np = newton_polygon(pts);
    const auto& top = np.segments.back();
    if (top.x_left != 0) throw std::logic_error("top segment does not start at the constant");
    if (top.length > 1)
      throw AmbiguousMaxRoot("top Newton segment has length " + std::to_string(top.length));
    return {refine(poly, cs, PuiseuxApprox::zero(base), poly.constant)};
  }

  if (strategy == RootStrategy::kernel_basis && has_constant)
    throw std::invalid_argument("kernel_basis requires a homogeneous additive polynomial");

  if (cs.size() == 1 && !has_constant) return {};
  auto np = newton_polygon(pts);
  std::vector<PuiseuxApprox> out;
  for (const auto& seg : np.segments) {
    if (strategy == RootStrategy::all_slope_leaders) {
      auto roots = residue_roots(cs, poly.constant, seg, false);
      FieldElem y = roots.front();
      for (const auto& r : roots)
        if (!r.is_zero()) {
          y = r;
          break;
        }
      PuiseuxApprox x = PuiseuxApprox::monomial(y, -seg.slope);
      out.push_back(refine(poly, cs, x, eval_additive(poly, x)));
      continue;
    }
    // kernel_basis: F_q-basis of the residue kernel, each lifted to a root.
    auto roots = residue_roots(cs, poly.constant, seg, true);
    std::vector<FieldElem> basis;
    std::vector<FieldElem> span;
    span.push_back(FieldElem::zero(roots.front().desc()));
    FieldDesc F = roots.front().desc();
    for (const auto& y : roots) {
      if (std::find(span.begin(), span.end(), y) != span.end()) continue;
      basis.push_back(y);
      std::vector<FieldElem> grown;
      for (std::int64_t a = 0; a < q; ++a) {
        // F_q scalars: the F_q elements of F are the (q-1)-th roots of unity and 0
        FieldElem s = a == 0 ? FieldElem::zero(F)
                             : FieldElem(F, static_cast<std::int32_t>((a - 1) * ((F.order() - 1) / (q - 1))));
        for (const auto& v : span) grown.push_back(v + s * y);
      }
      std::sort(grown.begin(), grown.end(), [](const FieldElem& u, const FieldElem& v) { return u.lex_less(v); });
      grown.erase(std::unique(grown.begin(), grown.end()), grown.end());
      span = std::move(grown);
    }
    for (const auto& y : basis) {
      PuiseuxApprox x = PuiseuxApprox::monomial(y, -seg.slope);
      out.push_back(refine(poly, cs, x, eval_additive(poly, x)));
    }
  }
  return out;
}

PuiseuxApprox carlitz_period(FieldDesc base, const Rational& prec) {
  const std::int64_t q = base.q();
  const Rational ord(-q, q - 1);
  // Relative precision needed: prec - ord; work one unit above it.
  PrecisionScope scope(prec - ord + 1);
  PuiseuxApprox minus_theta = PuiseuxApprox::monomial(FieldElem::from_int(base, -1), Rational(1));
  PuiseuxApprox value = PuiseuxApprox::theta_pow(base, Rational(1)) * minus_theta.nth_root(q - 1);
  const Rational rel = prec - ord;
  for (int i = 1;; ++i) {
    std::int64_t qi = qpow(q, i);
    if (Rational(qi - 1) >= rel) break;
    PuiseuxApprox factor = PuiseuxApprox::from_int(base, 1) - PuiseuxApprox::theta_pow(base, Rational(1 - qi));
    value = value * factor.inv();
  }
  return value.truncate(XRational(prec));
}

}  // namespace dtl
