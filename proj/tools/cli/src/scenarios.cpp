#include "dtl/derham.hpp"
#include "dtl/errors.hpp"
#include "dtl_app/app.hpp"

#include <chrono>
#include <functional>
#include <map>

namespace dtl::app {

namespace {

struct RetryRequest {
  std::string what;
};

struct Ctx {
  const ScenarioConfig& cfg;
  Report& rep;
  DrinfeldModule phi;
  Rational P;  // working precision of this attempt
  bool can_retry;

  FieldDesc f() const { return phi.base(); }
  int s() const { return phi.s(); }
  int tdeg() const { return phi.tdeg(); }
  TateApprox C(const PuiseuxApprox& a) const { return TateApprox::constant(s(), tdeg(), a); }
  PuiseuxApprox th(const Rational& k) const { return PuiseuxApprox::theta_pow(f(), k); }
  Rational target() const { return P * 3 / 4; }

  void add(const IdentityCheck& c, std::string subject = {}) {
    rep.checks.push_back({c.name, std::move(subject), c.residual_ord, c.pass, {}});
  }
  void add(std::string name, std::string subject, bool pass, XRational ord = XRational::infinity(),
           std::string detail = {}) {
    rep.checks.push_back({std::move(name), std::move(subject), ord, pass, std::move(detail)});
  }
  // Runs fn; a library error becomes a failed check named `name`.
  void stage(const std::string& name, const std::function<void()>& fn, const std::string& subject = {}) {
    try {
      fn();
    } catch (const Error& e) {
      if (can_retry && (e.kind() == "UncertifiedTail" || e.kind() == "PrecisionExhausted")) throw RetryRequest{e.what()};
      add(name, subject, false, XRational(Rational(0)), e.what());
    }
  }
  std::vector<TateApprox> periods() const {
    return periods_from_torsion(phi, theta_torsion(phi), P - 5);
  }
};

std::string idx(const char* k, std::size_t i) { return std::string(k) + "=" + std::to_string(i); }

json derived_convergence(const DrinfeldModule& phi) {
  const ConvergenceData cd = convergence_data(phi);
  return {{"k_phi", cd.k_phi}, {"C_phi", render(cd.C_phi)}, {"eps_ord", render(cd.eps_ord)}};
}

void merge(json& into, const json& from) {
  for (const auto& [k, v] : from.items()) into[k] = v;
}

TauSeriesTrunc series_of(const std::vector<TateApprox>& c, int N, int s, int tdeg) {
  TauSeriesTrunc out(N, s, tdeg);
  for (int i = 0; i <= N; ++i) out[i] = c[static_cast<std::size_t>(i)];
  return out;
}

IdentityCheck series_check(std::string name, const TauSeriesTrunc& res) {
  IdentityCheck out{std::move(name), XRational::infinity(), true};
  XRational bad = XRational::infinity();
  for (int i = 0; i <= res.N(); ++i) {
    const IdentityCheck c = make_check("", res[i]);
    out.pass = out.pass && c.pass;
    out.residual_ord = min(out.residual_ord, c.residual_ord);
    if (!c.pass) bad = min(bad, c.residual_ord);
  }
  if (!out.pass) out.residual_ord = bad;
  return out;
}

// ------------------------------------------------------------------ suites

void carlitz_suite(Ctx& c) {
  const int N = c.cfg.caps.tau_order;
  const FieldDesc f = c.f();
  c.stage("exp/log closed forms", [&] {
    const auto al = exp_coeffs(c.phi, N, SeriesMethod::recursion);
    const auto be = log_coeffs(c.phi, N, SeriesMethod::recursion);
    for (int i = 0; i <= N; ++i) {
      PuiseuxApprox Di = PuiseuxApprox::from_int(f, 1), Li = PuiseuxApprox::from_int(f, 1);
      for (int k = 0; k < i; ++k) Di *= bracket(f, i - k).twist(k);
      for (int j = 1; j <= i; ++j) Li *= -bracket(f, j);
      const auto I = static_cast<std::size_t>(i);
      c.add(make_check("exp coefficient = 1/D_i", al[I] - c.C(Di.inv())), idx("i", I));
      c.add(make_check("log coefficient = (-1)^i/L_i", be[I] - c.C(Li.inv())), idx("i", I));
    }
  });
  c.stage("Carlitz period", [&] {
    const PuiseuxApprox pi = carlitz_period(f, c.P);
    c.add(make_check("exp(pi) = 0", exp_eval(c.phi, c.C(pi), c.target())));
    const int zd = c.cfg.caps.zdeg;
    const TateZApprox Om = Omega(f, c.s(), c.tdeg(), zd, c.P);
    c.add(make_check("Omega^(-1) = (z - theta) Omega",
                     Om.twist(-1) - TateZApprox::z_minus(c.C(c.th(1)), zd, Radius::theta_disc) * Om));
    c.add(make_check("Omega(theta) pi = -1", Om.evaluate(c.th(1)).scale(pi) + c.phi.one()));
    c.rep.derived["pi_ord"] = render(pi.valuation());
  });
  c.stage("convergence data", [&] { merge(c.rep.derived, derived_convergence(c.phi)); });
}

void explog_suite(Ctx& c) {
  const int N = c.cfg.caps.tau_order;
  const int s = c.s(), D = c.tdeg();
  c.stage("partition formula", [&] {
    const auto ar = exp_coeffs(c.phi, N, SeriesMethod::recursion), ap = exp_coeffs(c.phi, N, SeriesMethod::partition);
    const auto br = log_coeffs(c.phi, N, SeriesMethod::recursion), bp = log_coeffs(c.phi, N, SeriesMethod::partition);
    for (int i = 0; i <= N; ++i) {
      const auto I = static_cast<std::size_t>(i);
      c.add(make_check("exp coefficient: partition = recursion", ar[I] - ap[I]), idx("i", I));
      c.add(make_check("log coefficient: partition = recursion", br[I] - bp[I]), idx("i", I));
      if (i >= 1 && !ar[I].is_zero_to_precision())
        c.add("Ord alpha_i >= coefficient bound", idx("i", I),
              ar[I].gauss_ord() >= XRational(exp_coeff_bound(c.phi, i)), ar[I].gauss_ord());
    }
  });
  c.stage("functional equations", [&] {
    const ExpLogData d = exp_log_data(c.phi, N, SeriesMethod::recursion);
    const TauSeriesTrunc E = series_of(d.alphas, N, s, D), L = series_of(d.betas, N, s, D);
    const TauSeriesTrunc Th = TauSeriesTrunc::from_poly(TwistedPoly::constant(c.phi.theta()), N);
    const TauSeriesTrunc Pt = TauSeriesTrunc::from_poly(c.phi.phi_theta(), N);
    const TauSeriesTrunc one = TauSeriesTrunc::from_poly(TwistedPoly::constant(c.phi.one()), N);
    c.add(series_check("exp theta = phi_theta exp", tw_mul(E, Th) - tw_mul(Pt, E)));
    c.add(series_check("log phi_theta = theta log", tw_mul(L, Pt) - tw_mul(Th, L)));
    c.add(series_check("exp log = 1", tw_mul(E, L) - one));
  });
  c.stage("log inverts exp on the eps ball", [&] {
    const ConvergenceData cd = convergence_data(c.phi);
    const Rational k(floor_int(cd.eps_ord) + 1);
    TateApprox x = c.C(c.th(-k));
    if (D >= 1) x += TateApprox::variable(s, D, 1, c.f()).scale(c.th(-k - 1));
    const TateApprox e = exp_eval(c.phi, x, c.target());
    c.add("exp is isometric on the eps ball", "", e.gauss_ord() == x.gauss_ord(), e.gauss_ord());
    const Rational t = c.target() / 2;
    c.add(make_check("log(exp(x)) = x", log_eval(c.phi, e, t) - x.truncate_prec(XRational(t))));
    merge(c.rep.derived, derived_convergence(c.phi));
  });
}

void agf_checks(Ctx& c, const TateApprox& lam, const std::string& subject, bool period) {
  const AndersonGF f = agf(c.phi, lam, c.cfg.caps.pole_count);
  c.add(make_check("Res_{z=theta} f_lambda = -lambda", f.residue_at_theta() + lam), subject);
  const int zd = c.cfg.caps.zdeg;
  const TateApprox ex = period ? TateApprox(c.s(), c.tdeg()) : exp_eval(c.phi, lam, c.P);
  const TateZApprox delta = agf_delta(c.phi, f, zd) - TateZApprox::from_tate(ex, zd, Radius::unit_disc);
  c.add(make_check("Delta_phi(f_lambda) = exp(lambda)", delta), subject);
  c.add(check_agf_series(c.phi, f, lam, std::min(zd, 4), c.target() / 2), subject);
  c.rep.derived["pole_count"][subject] = f.N() + 1;
}

void agf_suite(Ctx& c) {
  c.stage("periods", [&] {
    const auto lam = c.periods();
    for (std::size_t k = 0; k < lam.size(); ++k)
      c.stage("AGF of a period", [&] { agf_checks(c, lam[k], idx("lambda", k + 1), true); }, idx("lambda", k + 1));
  });
  if (c.cfg.params.contains("lambdas")) {
    std::size_t k = 0;
    for (const auto& t : c.cfg.params.at("lambdas")) {
      const std::string subj = idx("sample", ++k);
      c.stage("AGF of a sample", [&] { agf_checks(c, build_element(t, c.f(), c.s(), c.tdeg()), subj, false); }, subj);
    }
  }
}

// Frame with periods, Theta and Psi; checks recorded along the way.
ZFrameData full_frame(Ctx& c, bool record) {
  ZFrameData fr = build_frame(c.phi, c.cfg.caps.zdeg);
  if (record) c.add(check_det_phi(fr));
  build_theta(c.phi, fr, c.periods(), c.cfg.caps.pole_count);
  const RatReport rep = psi_and_rat_check(fr);
  if (record) {
    for (const auto& x : rep.checks) c.add(x);
    c.rep.derived["psi_norm_ord"] = render(rep.psi_norm_ord);
  }
  return fr;
}

void frame_suite(Ctx& c) {
  c.stage("frame", [&] {
    ZFrameData fr = full_frame(c, true);
    c.add(check_theta_functional(fr));
    const IdentityCheck dt = check_det_theta_omega(c.phi, fr, c.target() / 2);
    c.add(dt);
    for (std::size_t k = 0; k < fr.periods.size(); ++k) {
      const std::string subj = idx("lambda", k + 1);
      const FrameVector g = g_lambda(c.phi, fr, fr.agfs[k]);
      const ZMatrix row{g.entries};
      const ZMatrix lhs = zmat_mul(zmat_twist(row, -1), zmat_with_radius(fr.Phi, Radius::theta_disc));
      c.add(make_check("g_lambda^(-1) Phi = g_lambda", zmat_sub(lhs, row)), subj);
      c.add(make_check("D0(g_lambda) = lambda", D0(g) - fr.periods[k]), subj);
      c.add(make_check("Theta_k1(theta) = -lambda_k", theta_col1_at_theta(c.phi, fr, static_cast<int>(k)) +
                                                          fr.periods[k]),
            subj);
    }
  });
}

void derham_suite(Ctx& c) {
  c.stage("Legendre relation", [&] {
    const auto lam = c.periods();
    const LegendreReport rep = legendre_check(c.phi, lam, c.target() * 5 / 6, c.cfg.caps.pole_count);
    for (const auto& x : rep.dr.checks) c.add(x);
    c.add(rep.constancy.check);
    if (rep.rank2_legendre) c.add(*rep.rank2_legendre);
    if (rep.constancy.constant) c.rep.derived["legendre_constant"] = rep.constancy.constant->to_string();
    c.rep.derived["det_pi_ord"] = render(rep.dr.det.gauss_ord());

    const TwistedPoly m = TwistedPoly::monomial(c.phi.one(), 1) + TwistedPoly::monomial(c.C(c.th(-1)), 2);
    const Biderivation inner = Biderivation::inner(c.phi, m);
    for (std::size_t k = 0; k < lam.size(); ++k)
      c.add(make_check("F_eta(lambda) = 0 for strictly inner eta", quasi_periodic_eval(inner, c.phi, lam[k], c.target() / 2)),
            idx("lambda", k + 1));
  });
  c.stage("quasi-periodic operators", [&] {
    const int N = c.cfg.caps.tau_order;
    const TateApprox zero(c.s(), c.tdeg());
    std::vector<std::pair<std::string, std::vector<TateApprox>>> as = {{"a=theta", {zero, c.phi.one()}},
                                                                       {"a=theta^2", {zero, zero, c.phi.one()}}};
    if (c.tdeg() >= 1) as.push_back({"a=t1 theta", {zero, TateApprox::variable(c.s(), c.tdeg(), 1, c.f())}});
    for (int j = 0; j < c.phi.r(); ++j)
      for (const auto& [name, a] : as)
        c.add(check_quasi_periodic(Biderivation::delta(c.phi, j), c.phi, a, N), idx("delta", static_cast<std::size_t>(j)) + " " + name);
  });
  c.stage("de Rham coordinates", [&] {
    const int r = c.phi.r();
    const TateApprox zero(c.s(), c.tdeg());
    for (int j = 0; j < r; ++j) {
      const auto co = derham_coords(Biderivation::delta(c.phi, j), c.phi);
      TateApprox res = zero;
      bool ok = true;
      for (int k = 0; k < r; ++k) {
        const TateApprox d = co[static_cast<std::size_t>(k)] - (k == j ? c.phi.one() : zero);
        ok = ok && d.is_zero_to_precision();
      }
      c.add("coords(delta^j) = e_j", idx("j", static_cast<std::size_t>(j)), ok);
    }
    const TwistedPoly m = TwistedPoly::monomial(c.C(c.th(1)), 1) + TwistedPoly::monomial(c.phi.one(), 3);
    bool zero_ok = true;
    for (const auto& x : derham_coords(Biderivation::inner(c.phi, m), c.phi)) zero_ok = zero_ok && x.is_zero_to_precision();
    c.add("coords(strictly inner) = 0", "", zero_ok);

    TwistedPoly e1(TwistVar::tau, c.s(), c.tdeg()), e2 = e1;
    e1.set(1, c.C(c.th(1)));
    e1.set(r + 2, c.phi.one());
    e2.set(r + 1, c.C(c.th(-1)));
    const TateApprox f1 = c.C(c.th(2)) + c.phi.one(), f2 = c.C(c.th(-1));
    const auto lhs = derham_coords(Biderivation{e1}.scale(f1) + Biderivation{e2}.scale(f2), c.phi);
    const auto c1 = derham_coords({e1}, c.phi), c2 = derham_coords({e2}, c.phi);
    bool lin = true;
    for (int k = 0; k < r; ++k) {
      const auto K = static_cast<std::size_t>(k);
      lin = lin && lhs[K].equals_to_precision(f1 * c1[K] + f2 * c2[K]);
    }
    c.add("coords are T_s-linear", "", lin);
  });
}

void torsion_periods(Ctx& c) {
  c.stage("theta torsion", [&] {
    const auto tor = theta_torsion(c.phi);
    c.rep.derived["torsion_rank"] = tor.size();
    json chains = json::array();
    for (std::size_t k = 0; k < tor.size(); ++k) {
      const std::string subj = idx("F", k + 1);
      c.add(make_check("phi_theta(F) = 0", apply(c.phi.phi_theta(), tor[k])), subj);
      if (c.s() == 1) {
        json chain = json::array();
        for (int i = 0; i <= c.tdeg(); ++i) chain.push_back(render(tor[k].coeff({i}).valuation()));
        chains.push_back(std::move(chain));
      }
      const TateApprox lam = (c.phi.theta() * log_eval(c.phi, tor[k], c.P - 4)).truncate_prec(XRational(c.P - 5));
      c.add(make_check("exp(theta log F) = 0", exp_eval(c.phi, lam, c.target())), subj);
      c.rep.derived["lambda_ord"].push_back(render(lam.gauss_ord()));
    }
    if (c.s() == 1) c.rep.derived["ord_chain"] = chains;
  });
}

void exp_inverse_demo(Ctx& c) {
  const Rational goal = c.cfg.params.contains("target_prec") ? parse_rational(c.cfg.params.at("target_prec"))
                                                             : Rational(30);
  c.stage("frame", [&] {
    ZFrameData fr = full_frame(c, false);
    std::vector<TateApprox> inputs;
    if (c.cfg.params.contains("h0"))
      for (const auto& t : c.cfg.params.at("h0")) inputs.push_back(build_element(t, c.f(), c.s(), c.tdeg()));
    else
      inputs.push_back(c.phi.one());
    for (std::size_t k = 0; k < inputs.size(); ++k) {
      const std::string subj = idx("h0", k + 1);
      c.stage("exp(xi) = h0", [&] {
        const ExpInverseResult res = exp_inverse(c.phi, fr, inputs[k], goal);
        XRational ord = res.residual.min_prec();
        if (!res.residual.is_zero_to_precision()) ord = res.residual.gauss_ord();
        c.add("exp(xi) = h0", subj, res.pass, ord);
        c.rep.derived["split_index"][subj] = res.split_index;
        c.rep.derived["xi_ord"][subj] = render(res.xi.gauss_ord());
      }, subj);
    }
  });
}

void criteria_report(Ctx& c) {
  c.stage("phi[theta] is free of rank r", [&] {
    const auto tor = theta_torsion(c.phi);
    c.add("phi[theta] is free of rank r", "", static_cast<int>(tor.size()) == c.phi.r());
  });
  c.stage("det Theta is a unit", [&] {
    ZFrameData fr = full_frame(c, false);
    c.add("det Theta is a unit", "", is_unit(fr.det_theta));
    c.stage("det Pi is a unit", [&] {
      const DeRhamMatrix dr = derham_matrix(c.phi, fr.periods, c.target() / 2, c.cfg.caps.pole_count);
      c.add("det Pi is a unit", "", is_unit(dr.det), dr.det.gauss_ord());
    });
  });
}

const std::map<std::string, std::function<void(Ctx&)>>& registry() {
  static const std::map<std::string, std::function<void(Ctx&)>> r = {
      {"carlitz_suite", carlitz_suite}, {"explog_suite", explog_suite},       {"agf_suite", agf_suite},
      {"frame_suite", frame_suite},     {"derham_suite", derham_suite},       {"torsion_periods", torsion_periods},
      {"exp_inverse_demo", exp_inverse_demo}, {"criteria_report", criteria_report}};
  return r;
}

}  // namespace

Report run_scenario(const ScenarioConfig& cfg) {
  const auto& fn = registry().at(cfg.scenario);
  json inputs{{"module", cfg.module},
              {"caps",
               {{"prec", render(cfg.caps.prec)},
                {"tdeg", cfg.caps.tdeg},
                {"zdeg", cfg.caps.zdeg},
                {"tau_order", cfg.caps.tau_order},
                {"pole_count", cfg.caps.pole_count}}},
              {"params", cfg.params}};
  if (cfg.retry_prec_factor) inputs["retry_prec_factor"] = render(*cfg.retry_prec_factor);

  Rational P = cfg.caps.prec;
  for (int attempt = 1;; ++attempt) {
    Report rep;
    rep.scenario = cfg.scenario;
    rep.inputs = inputs;
    rep.attempts = attempt;
    rep.prec_used = P;
    const bool can_retry = attempt == 1 && cfg.retry_prec_factor.has_value();
    PrecisionScope scope(P);
    Ctx ctx{cfg, rep, build_module(cfg.module, cfg.caps.tdeg), P, can_retry};
    try {
      fn(ctx);
      return rep;
    } catch (const RetryRequest&) {
      P = Rational(ceil_int(P * *cfg.retry_prec_factor));
    }
  }
}

}  // namespace dtl::app
