#pragma once

#include "dtl/tate.hpp"

#include <functional>
#include <map>
#include <vector>

namespace dtl {

enum class TwistVar { tau, sigma };

// sum_i a_i v^i with v f = f^(1) v (tau) or v f = f^(-1) v (sigma).
class TwistedPoly {
 public:
  TwistedPoly(TwistVar var = TwistVar::tau, int s = 1, int tdeg = 0) : var_(var), s_(s), tdeg_(tdeg) {}
  static TwistedPoly constant(const TateApprox& a, TwistVar var = TwistVar::tau);
  // a * v^i
  static TwistedPoly monomial(const TateApprox& a, int i, TwistVar var = TwistVar::tau);

  TwistVar var() const { return var_; }
  int s() const { return s_; }
  int tdeg() const { return tdeg_; }
  const std::map<int, TateApprox>& coeffs() const { return c_; }
  TateApprox coeff(int i) const;
  void set(int i, const TateApprox& a);
  int degree() const { return c_.empty() ? -1 : c_.rbegin()->first; }
  // twist applied when v moves past a coefficient: +1 for tau, -1 for sigma
  int direction() const { return var_ == TwistVar::tau ? 1 : -1; }

  TwistedPoly operator+(const TwistedPoly& o) const;
  TwistedPoly operator-(const TwistedPoly& o) const;
  TwistedPoly operator-() const;
  TwistedPoly operator*(const TwistedPoly& o) const;
  // Left multiplication by a coefficient.
  TwistedPoly scale(const TateApprox& a) const;
  bool equals_to_precision(const TwistedPoly& o) const;

 private:
  TwistVar var_;
  int s_, tdeg_;
  std::map<int, TateApprox> c_;
};

// sum_{i <= N} a_i tau^i modulo tau^(N+1).
class TauSeriesTrunc {
 public:
  TauSeriesTrunc(int N = 0, int s = 1, int tdeg = 0);
  static TauSeriesTrunc from_poly(const TwistedPoly& f, int N);

  int N() const { return N_; }
  int s() const { return s_; }
  int tdeg() const { return tdeg_; }
  const std::vector<TateApprox>& coeffs() const { return c_; }
  const TateApprox& operator[](int i) const { return c_[static_cast<std::size_t>(i)]; }
  TateApprox& operator[](int i) { return c_[static_cast<std::size_t>(i)]; }

  TauSeriesTrunc operator+(const TauSeriesTrunc& o) const;
  TauSeriesTrunc operator-(const TauSeriesTrunc& o) const;
  TauSeriesTrunc operator*(const TauSeriesTrunc& o) const;
  bool equals_to_precision(const TauSeriesTrunc& o) const;

 private:
  int N_, s_, tdeg_;
  std::vector<TateApprox> c_;
};

TwistedPoly tw_mul(const TwistedPoly& a, const TwistedPoly& b);
TauSeriesTrunc tw_mul(const TauSeriesTrunc& a, const TauSeriesTrunc& b);

// f* = sum f_i^(-i) sigma^i.
TwistedPoly star(const TwistedPoly& f);

// sum a_i x^(i) (x^(-i) for sigma).
TateApprox apply(const TwistedPoly& f, const TateApprox& x);

// Lower bound on ord of the i-th coefficient, valid for every i > N.
using CoeffOrdBound = std::function<Rational(int i)>;

// sum_{i <= N} a_i x^(i) to absolute precision prec. Without a bound the last
// stored summand must already vanish to prec; with one, every dropped summand
// bound(i) + q^i Ord(x) must reach prec.
TateApprox apply(const TauSeriesTrunc& f, const TateApprox& x, const Rational& prec,
                 const CoeffOrdBound& bound = {});

TateApprox delta0(const TwistedPoly& h);
TateApprox delta1(const TwistedPoly& h);

}  // namespace dtl
