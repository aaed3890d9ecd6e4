#include "dtl/twisted_ops.hpp"

#include "dtl/errors.hpp"

#include <algorithm>

namespace dtl {

namespace {

FieldDesc field_of(const TateApprox& x) {
  for (const auto& [nu, a] : x.coeffs())
    if (a.has_field()) return a.field();
  return FieldDesc();
}

}  // namespace

TwistedPoly TwistedPoly::constant(const TateApprox& a, TwistVar var) { return monomial(a, 0, var); }

TwistedPoly TwistedPoly::monomial(const TateApprox& a, int i, TwistVar var) {
  TwistedPoly r(var, a.s(), a.tdeg());
  r.set(i, a);
  return r;
}

TateApprox TwistedPoly::coeff(int i) const {
  auto it = c_.find(i);
  return it == c_.end() ? TateApprox(s_, tdeg_) : it->second;
}

void TwistedPoly::set(int i, const TateApprox& a) {
  if (i < 0) throw std::invalid_argument("negative twist degree");
  if (a.empty())
    c_.erase(i);
  else
    c_[i] = a;
}

TwistedPoly TwistedPoly::operator+(const TwistedPoly& o) const {
  if (var_ != o.var_) throw MixedVariable("adding tau and sigma polynomials");
  TwistedPoly r(var_, s_, std::min(tdeg_, o.tdeg_));
  for (const auto& [i, a] : c_) r.set(i, a.with_tdeg(r.tdeg_));
  for (const auto& [i, a] : o.c_) r.set(i, r.coeff(i).with_tdeg(r.tdeg_) + a);
  return r;
}

TwistedPoly TwistedPoly::operator-() const {
  TwistedPoly r = *this;
  for (auto& [i, a] : r.c_) a = -a;
  return r;
}

TwistedPoly TwistedPoly::operator-(const TwistedPoly& o) const { return *this + (-o); }

TwistedPoly TwistedPoly::operator*(const TwistedPoly& o) const {
  if (var_ != o.var_) throw MixedVariable("multiplying tau and sigma polynomials");
  TwistedPoly r(var_, s_, std::min(tdeg_, o.tdeg_));
  const int dir = direction();
  for (const auto& [i, a] : c_)
    for (const auto& [j, b] : o.c_) r.set(i + j, r.coeff(i + j).with_tdeg(r.tdeg_) + a * b.twist(dir * i));
  return r;
}

TwistedPoly TwistedPoly::scale(const TateApprox& a) const { return constant(a, var_) * *this; }

bool TwistedPoly::equals_to_precision(const TwistedPoly& o) const {
  const TwistedPoly d = *this - o;
  return std::all_of(d.c_.begin(), d.c_.end(), [](const auto& kv) { return kv.second.is_zero_to_precision(); });
}

TauSeriesTrunc::TauSeriesTrunc(int N, int s, int tdeg)
    : N_(N), s_(s), tdeg_(tdeg), c_(static_cast<std::size_t>(N + 1), TateApprox(s, tdeg)) {}

TauSeriesTrunc TauSeriesTrunc::from_poly(const TwistedPoly& f, int N) {
  if (f.var() != TwistVar::tau) throw MixedVariable("tau-series from a sigma polynomial");
  TauSeriesTrunc r(N, f.s(), f.tdeg());
  for (const auto& [i, a] : f.coeffs())
    if (i <= N) r[i] = a;
  return r;
}

TauSeriesTrunc TauSeriesTrunc::operator+(const TauSeriesTrunc& o) const {
  TauSeriesTrunc r(std::min(N_, o.N_), s_, std::min(tdeg_, o.tdeg_));
  for (int i = 0; i <= r.N_; ++i) r[i] = (*this)[i] + o[i];
  return r;
}

TauSeriesTrunc TauSeriesTrunc::operator-(const TauSeriesTrunc& o) const {
  TauSeriesTrunc r(std::min(N_, o.N_), s_, std::min(tdeg_, o.tdeg_));
  for (int i = 0; i <= r.N_; ++i) r[i] = (*this)[i] - o[i];
  return r;
}

TauSeriesTrunc TauSeriesTrunc::operator*(const TauSeriesTrunc& o) const {
  TauSeriesTrunc r(std::min(N_, o.N_), s_, std::min(tdeg_, o.tdeg_));
  for (int i = 0; i <= r.N_; ++i) {
    if ((*this)[i].empty()) continue;
    for (int j = 0; i + j <= r.N_; ++j) {
      if (o[j].empty()) continue;
      r[i + j] += (*this)[i] * o[j].twist(i);
    }
  }
  return r;
}

bool TauSeriesTrunc::equals_to_precision(const TauSeriesTrunc& o) const {
  const TauSeriesTrunc d = *this - o;
  return std::all_of(d.c_.begin(), d.c_.end(), [](const TateApprox& a) { return a.is_zero_to_precision(); });
}

TwistedPoly tw_mul(const TwistedPoly& a, const TwistedPoly& b) { return a * b; }
TauSeriesTrunc tw_mul(const TauSeriesTrunc& a, const TauSeriesTrunc& b) { return a * b; }

TwistedPoly star(const TwistedPoly& f) {
  if (f.var() != TwistVar::tau) throw MixedVariable("star expects a tau polynomial");
  TwistedPoly r(TwistVar::sigma, f.s(), f.tdeg());
  for (const auto& [i, a] : f.coeffs()) r.set(i, a.twist(-i));
  return r;
}

TateApprox apply(const TwistedPoly& f, const TateApprox& x) {
  TateApprox acc(x.s(), std::min(x.tdeg(), f.tdeg()));
  for (const auto& [i, a] : f.coeffs()) acc += a * x.twist(f.direction() * i);
  return acc;
}

TateApprox apply(const TauSeriesTrunc& f, const TateApprox& x, const Rational& prec, const CoeffOrdBound& bound) {
  const XRational P(prec);
  TateApprox acc(x.s(), std::min(x.tdeg(), f.tdeg()));
  const XRational xo = x.gauss_ord();
  if (xo.is_inf()) return acc.truncate_prec(min(P, x.min_prec()));
  TateApprox last;
  for (int i = 0; i <= f.N(); ++i) {
    if (f[i].empty()) continue;
    last = (f[i] * x.twist(i)).truncate_prec(P);
    acc += last;
  }
  if (bound) {
    const std::int64_t q = field_of(x).q();
    // bound(i) + q^i Ord(x) is eventually increasing; check a window past N.
    Rational qi(1);
    for (int i = 0; i <= f.N(); ++i) qi *= q;
    for (int i = f.N() + 1; i <= f.N() + 16; ++i) {
      qi *= q;
      if (bound(i) + qi * xo.value() < prec)
        throw TailNotNegligible("dropped tau-series term " + std::to_string(i) + " may reach the requested precision");
    }
  } else if (!last.is_zero_to_precision()) {
    throw TailNotNegligible("last stored tau-series term does not vanish to the requested precision");
  }
  return acc;
}

TateApprox delta0(const TwistedPoly& h) {
  if (h.var() != TwistVar::sigma) throw MixedVariable("delta0 expects a sigma polynomial");
  return h.coeff(0);
}

TateApprox delta1(const TwistedPoly& h) {
  if (h.var() != TwistVar::sigma) throw MixedVariable("delta1 expects a sigma polynomial");
  TateApprox acc(h.s(), h.tdeg());
  for (const auto& [i, a] : h.coeffs()) acc += a.twist(i);
  return acc;
}

}  // namespace dtl
